use cayham::pipeline::verify_kp;
use cayham::report::RunConfig;
use cayham::revalidate::revalidate;

fn main() {
    let k_max: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    let config = RunConfig { k_max, ..RunConfig::default() };
    let t0 = std::time::Instant::now();
    let (report, certs) = verify_kp(&config);
    println!(
        "k_max={k_max}: {} cases, {} unresolved, {} certs in {:.1?}",
        report.cases.len(),
        report.summary.unresolved,
        certs.len(),
        t0.elapsed()
    );
    for c in report.unresolved_cases() {
        println!(
            "  UNRESOLVED k={} {}#{} {} class={} chi={:?} method={:?} notes={:?}",
            c.k, c.quotient.order, c.quotient.index, c.quotient.name,
            c.genset_class, c.character, c.method, c.notes
        );
    }
    let t1 = std::time::Instant::now();
    let summary = revalidate(&report, &certs);
    println!(
        "revalidate: {} checked, {} failed, {} missing refs in {:.1?}",
        summary.checked, summary.failed, summary.missing_refs, t1.elapsed()
    );
    for r in summary.results.iter().filter(|r| !r.ok).take(10) {
        println!("  BAD cert {}: {}", r.id, r.detail);
    }
}
