//! Command-line dispatch, artifact persistence, and exit codes.
//!
//! Run commands (`verify`, `connlace`, `anomalous`) produce a report plus a
//! JSON-lines certificate file and re-validate everything in-process before
//! exiting: 0 means zero unresolved cases and every certificate checked out,
//! 2 means the run completed but something is unresolved or invalid, 1 is an
//! i/o or usage failure. `validate-certs` applies the same contract to
//! artifacts read back from disk, using only group tables and raw vertex
//! sequences.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::gensets::irredundant_classes;
use crate::graphs::cayley_graph;
use crate::groups::{are_isomorphic, catalog::Catalog, close_generators, structure, FiniteGroup};
use crate::hamilton::{
    find_hamiltonian_cycle, find_hamiltonian_path, SearchBudget, SearchOutcome,
};
use crate::pipeline::{verify_anomalous, verify_kp, verify_prop13};
use crate::report::{
    read_certificates, read_report, write_certificates, write_report, Certificate, ReportError,
    RunConfig, VerificationReport,
};
use crate::revalidate::revalidate;

#[derive(Parser, Debug)]
#[command(
    name = "cayham",
    about = "Certified hamiltonicity verification for Cayley graphs of order kp",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Knobs shared by every command that runs searches. Flags beat the
/// environment, the environment beats the built-in defaults.
#[derive(Args, Clone, Debug)]
struct CommonOpts {
    /// Master seed; each case derives its own stream deterministically.
    #[arg(long, env = "CAYHAM_SEED", default_value_t = RunConfig::default().seed)]
    seed: u64,
    /// Heuristic budget per search instance, in deterministic step-milliseconds.
    #[arg(long = "budget-ms", env = "CAYHAM_BUDGET_MS",
          default_value_t = RunConfig::default().time_limit_ms)]
    budget_ms: u64,
    /// Quotient hamiltonian cycles sampled per voltage argument.
    #[arg(long, default_value_t = RunConfig::default().sample_count)]
    sample_count: usize,
    /// Discharged cases are spot-checked at every admissible prime up to this.
    #[arg(long, default_value_t = RunConfig::default().spot_prime_cap)]
    spot_prime_cap: u64,
    /// Worker threads for case fan-out; 0 means available parallelism.
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

impl CommonOpts {
    fn config(&self, k_max: u64, p_cap: u64) -> RunConfig {
        RunConfig {
            k_max,
            p_cap,
            seed: self.seed,
            time_limit_ms: self.budget_ms,
            sample_count: self.sample_count,
            spot_prime_cap: self.spot_prime_cap,
        }
    }

    /// Runs `f` on a private worker pool so repeated in-process invocations
    /// (tests, library callers) never fight over the global one.
    fn pooled<T: Send>(&self, f: impl FnOnce() -> T + Send) -> T {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads)
            .build()
            .expect("worker pool construction")
            .install(f)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the built-in group catalog, or identify a permutation group.
    Catalog {
        /// Restrict the listing to one order.
        #[arg(long)]
        order: Option<usize>,
        /// Semicolon-separated permutation generators, each a comma-separated
        /// image list (e.g. "1,2,0;1,0,2"); closes them into a group and
        /// names its isomorphism class.
        #[arg(long)]
        identify: Option<String>,
    },
    /// Census of irredundant generating-set classes for every group of one order.
    Gensets {
        order: usize,
    },
    /// Search one Cayley graph for a hamiltonian cycle or path.
    Hamcheck {
        /// Group order in the catalog.
        #[arg(long)]
        order: usize,
        /// Catalog index within the order.
        #[arg(long, default_value_t = 0)]
        index: usize,
        /// Comma-separated generator representatives (element indices).
        #[arg(long)]
        gens: String,
        /// Required edge "u:v"; may be repeated.
        #[arg(long = "require")]
        required: Vec<String>,
        /// Search for a hamiltonian path with endpoints "u:v" instead of a cycle.
        #[arg(long)]
        path: Option<String>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Classify small connected Cayley graphs as hamiltonian connected or laceable.
    Connlace {
        #[arg(long = "max-order", default_value_t = 16)]
        max_order: usize,
        /// Report output path; certificates land next to it as JSON lines.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run the full order-kp verification sweep.
    Verify {
        #[arg(long = "k-max", default_value_t = RunConfig::default().k_max)]
        k_max: u64,
        #[arg(long = "p-cap", default_value_t = RunConfig::default().p_cap)]
        p_cap: u64,
        /// Report output path; certificates land next to it as JSON lines.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run only the small-prime sweeps for one k.
    Anomalous {
        #[arg(long)]
        k: u64,
        /// Report output path; certificates land next to it as JSON lines.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Re-validate a stored report and its certificate file from raw data.
    ValidateCerts {
        report: PathBuf,
        /// Certificate file; defaults to the one the report names.
        #[arg(long)]
        certs: Option<PathBuf>,
    },
}

/// Parses `argv` and dispatches. Returns the process exit code instead of
/// exiting so tests can drive it in-process.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version are "errors" to clap but successes to us.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match cli.command {
        Command::Catalog { order, identify } => cmd_catalog(order, identify),
        Command::Gensets { order } => cmd_gensets(order),
        Command::Hamcheck {
            order,
            index,
            gens,
            required,
            path,
            common,
        } => cmd_hamcheck(order, index, &gens, &required, path.as_deref(), &common),
        Command::Connlace {
            max_order,
            out,
            common,
        } => {
            let config = common.config(RunConfig::default().k_max, RunConfig::default().p_cap);
            let (report, certs) = common.pooled(|| verify_prop13(max_order, &config));
            finish_run("connlace", report, certs, out.as_deref())
        }
        Command::Verify {
            k_max,
            p_cap,
            out,
            common,
        } => {
            let config = common.config(k_max, p_cap);
            let (report, certs) = common.pooled(|| verify_kp(&config));
            finish_run("verify", report, certs, out.as_deref())
        }
        Command::Anomalous { k, out, common } => {
            let config = common.config(k, RunConfig::default().p_cap);
            let sweep = common.pooled(|| verify_anomalous(k, &config));
            let report =
                VerificationReport::assemble(config, sweep.records, sweep.certs.len());
            finish_run("anomalous", report, sweep.certs, out.as_deref())
        }
        Command::ValidateCerts { report, certs } => cmd_validate(&report, certs.as_deref()),
    }
}

fn cmd_catalog(order: Option<usize>, identify: Option<String>) -> i32 {
    let catalog = Catalog::builtin();
    if let Some(spec) = identify {
        return match identify_group(&spec) {
            Ok(g) => {
                let verdict = catalog
                    .entries(g.order())
                    .iter()
                    .find(|e| are_isomorphic(&e.group, &g))
                    .map(|e| format!("isomorphic to {}", e.name))
                    .unwrap_or_else(|| "no catalog entry of this order".into());
                println!("order {}: {}", g.order(), verdict);
                0
            }
            Err(e) => {
                eprintln!("error: {e}");
                1
            }
        };
    }
    let orders: Vec<usize> = match order {
        Some(n) => vec![n],
        None => catalog.orders().collect(),
    };
    let mut missing = false;
    for n in orders {
        let entries = catalog.entries(n);
        if entries.is_empty() {
            eprintln!("order {n} is not in the catalog");
            missing = true;
            continue;
        }
        println!("order {n}: {} classes", entries.len());
        for (i, e) in entries.iter().enumerate() {
            let s = structure(&e.group);
            println!(
                "  {n}#{i} {}  abelian={} |center|={} exponent={}",
                e.name,
                s.is_abelian,
                s.center.len(),
                e.group.exponent()
            );
        }
    }
    if missing {
        1
    } else {
        0
    }
}

/// "1,2,0;1,0,2" -> closed group table. Degree is the image-list length.
fn identify_group(spec: &str) -> Result<FiniteGroup, String> {
    let gens: Vec<Vec<usize>> = spec
        .split(';')
        .map(|perm| {
            perm.split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| format!("bad image {t:?}")))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    let degree = gens.first().map(|g| g.len()).unwrap_or(0);
    close_generators(degree, &gens, 10_000).map_err(|e| e.to_string())
}

fn cmd_gensets(order: usize) -> i32 {
    let catalog = Catalog::builtin();
    let entries = catalog.entries(order);
    if entries.is_empty() {
        eprintln!("order {order} is not in the catalog");
        return 1;
    }
    for (i, e) in entries.iter().enumerate() {
        let classes = irredundant_classes(&e.group);
        println!("{order}#{i} {}: {} irredundant classes", e.name, classes.len());
        for c in &classes {
            println!("  {}  valence {}", c.key(), c.valence());
        }
    }
    0
}

fn parse_pair(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected u:v, got {s:?}"))?;
    let u = a.trim().parse().map_err(|_| format!("bad vertex {a:?}"))?;
    let v = b.trim().parse().map_err(|_| format!("bad vertex {b:?}"))?;
    Ok((u, v))
}

fn cmd_hamcheck(
    order: usize,
    index: usize,
    gens: &str,
    required: &[String],
    path: Option<&str>,
    common: &CommonOpts,
) -> i32 {
    let catalog = Catalog::builtin();
    let Some(g) = catalog.group(order, index) else {
        eprintln!("no catalog group {order}#{index}");
        return 1;
    };
    let conn: Vec<usize> = match gens
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()
    {
        Ok(v) => v,
        Err(_) => {
            eprintln!("bad --gens {gens:?}");
            return 1;
        }
    };
    if conn.iter().any(|&s| s == 0 || s >= order) {
        eprintln!("generators must be non-identity element indices below {order}");
        return 1;
    }
    let graph = cayley_graph(g, &conn);
    let budget = SearchBudget {
        seed: common.seed,
        time_limit_ms: common.budget_ms,
        ..SearchBudget::default()
    };
    let outcome = if let Some(ep) = path {
        let (from, to) = match parse_pair(ep) {
            Ok(p) => p,
            Err(e) => {
                eprintln!("bad --path: {e}");
                return 1;
            }
        };
        find_hamiltonian_path(&graph, from, to, &budget)
    } else {
        let mut req = Vec::new();
        for r in required {
            match parse_pair(r) {
                Ok(p) => req.push(p),
                Err(e) => {
                    eprintln!("bad --require: {e}");
                    return 1;
                }
            }
        }
        find_hamiltonian_cycle(&graph, &req, &budget)
    };
    match outcome {
        SearchOutcome::Found(seq) => {
            let words: Vec<String> = seq.iter().map(|v| v.to_string()).collect();
            println!("found: {}", words.join(" "));
            0
        }
        SearchOutcome::ProvenNone => {
            println!("none: exhaustive search ruled it out");
            2
        }
        SearchOutcome::Undecided => {
            println!("undecided: budget exhausted");
            2
        }
    }
}

/// Writes artifacts when asked, re-validates in-process, prints the summary,
/// and folds everything into the exit code.
fn finish_run(
    label: &str,
    mut report: VerificationReport,
    certs: Vec<Certificate>,
    out: Option<&Path>,
) -> i32 {
    if let Some(path) = out {
        if let Err(e) = write_artifacts(&mut report, &certs, path) {
            eprintln!("error writing artifacts: {e}");
            return 1;
        }
        println!("wrote {}", path.display());
    }
    let summary = revalidate(&report, &certs);
    println!(
        "{label}: {} cases, {} resolved, {} unresolved, {} certificates ({} re-validated, {} failed)",
        report.cases.len(),
        report.summary.resolved,
        report.summary.unresolved,
        certs.len(),
        summary.checked - summary.failed,
        summary.failed
    );
    for c in report.unresolved_cases().take(20) {
        println!(
            "  unresolved: k={} {}#{} class={} notes={:?}",
            c.k, c.quotient.order, c.quotient.index, c.genset_class, c.notes
        );
    }
    for r in summary.results.iter().filter(|r| !r.ok).take(10) {
        println!("  bad certificate {}: {}", r.id, r.detail);
    }
    if report.is_success() && summary.all_good() && summary.missing_refs == 0 {
        0
    } else {
        2
    }
}

fn write_artifacts(
    report: &mut VerificationReport,
    certs: &[Certificate],
    out: &Path,
) -> Result<(), ReportError> {
    let stem = out
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("report");
    let certs_name = format!("{stem}.certs.jsonl");
    write_certificates(&out.with_file_name(certs_name.as_str()), certs)?;
    report.certificate_file = Some(certs_name);
    write_report(out, report)
}

fn cmd_validate(report_path: &Path, certs_path: Option<&Path>) -> i32 {
    let report = match read_report(report_path) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error reading report: {e}");
            return 1;
        }
    };
    let certs_file = match certs_path {
        Some(p) => p.to_path_buf(),
        None => match &report.certificate_file {
            Some(name) => report_path
                .parent()
                .unwrap_or_else(|| Path::new("."))
                .join(name),
            None => {
                eprintln!("report names no certificate file; pass --certs");
                return 1;
            }
        },
    };
    let certs = match read_certificates(&certs_file) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error reading certificates: {e}");
            return 1;
        }
    };
    if !report.consistent() {
        println!("summary counts disagree with the case list");
        return 2;
    }
    let summary = revalidate(&report, &certs);
    println!(
        "validate-certs: {} cases ({} unresolved), {} certificates checked, {} failed, {} dangling references",
        report.cases.len(),
        report.summary.unresolved,
        summary.checked,
        summary.failed,
        summary.missing_refs
    );
    for r in summary.results.iter().filter(|r| !r.ok).take(20) {
        println!("  bad certificate {}: {}", r.id, r.detail);
    }
    if report.is_success() && summary.all_good() && summary.missing_refs == 0 {
        0
    } else {
        2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_error_is_nonzero() {
        assert_eq!(run(["cayham", "no-such-command"]), 1);
        assert_eq!(run(["cayham", "verify", "--k-max", "not-a-number"]), 1);
    }

    #[test]
    fn help_exits_clean() {
        assert_eq!(run(["cayham", "--help"]), 0);
    }

    #[test]
    fn gensets_unknown_order_fails() {
        assert_eq!(run(["cayham", "gensets", "17"]), 1);
    }

    #[test]
    fn gensets_six_lists_both_groups() {
        assert_eq!(run(["cayham", "gensets", "6"]), 0);
    }

    #[test]
    fn identify_names_symmetric_group() {
        // (0 1 2) and (0 1) generate S3.
        assert_eq!(
            run(["cayham", "catalog", "--identify", "1,2,0;1,0,2"]),
            0
        );
    }

    #[test]
    fn hamcheck_finds_cycle_on_z5() {
        // Prime order: any non-identity element generates.
        assert_eq!(
            run(["cayham", "hamcheck", "--order", "5", "--gens", "1"]),
            0
        );
    }

    #[test]
    fn hamcheck_disconnected_graph_reports_none() {
        // Catalog Z6 labels an order-3 element as 1; alone it spans half.
        assert_eq!(
            run(["cayham", "hamcheck", "--order", "6", "--gens", "1"]),
            2
        );
    }

    #[test]
    fn hamcheck_rejects_identity_generator() {
        assert_eq!(
            run(["cayham", "hamcheck", "--order", "6", "--gens", "0"]),
            1
        );
    }

    #[test]
    fn anomalous_small_k_is_clean() {
        assert_eq!(run(["cayham", "anomalous", "--k", "2"]), 0);
    }
}
