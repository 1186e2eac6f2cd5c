//! The proof ledger: case records, certificates, and their JSON persistence.
//!
//! A verification run produces one `VerificationReport` (a JSON document)
//! plus a JSON-lines file of `Certificate`s. Certificates reference groups
//! only through `GroupRef`, so an independent checker can rebuild every
//! graph from raw table data without touching any search code. Reports are
//! deterministic byte for byte except for the `generated_at` stamp, which
//! `same_content` ignores.

use crate::groups::GroupRef;
use serde::{Deserialize, Serialize};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use thiserror::Error;

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed report: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported report version {0}")]
    Version(u32),
}

/// Knobs that pin a run. Two runs with equal configs must produce reports
/// that agree under `same_content`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub k_max: u64,
    pub p_cap: u64,
    pub seed: u64,
    /// Heuristic search budget per instance, in deterministic step-milliseconds.
    pub time_limit_ms: u64,
    /// Quotient hamiltonian cycles sampled per voltage argument.
    pub sample_count: usize,
    /// Discharged cases are spot-checked at every admissible prime up to this.
    pub spot_prime_cap: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            k_max: 12,
            p_cap: 500,
            seed: 0x00c5_11e5,
            time_limit_ms: 2_000,
            sample_count: 20,
            spot_prime_cap: 37,
        }
    }
}

/// Catalog coordinates plus the human-readable name of a group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientId {
    pub order: usize,
    pub index: usize,
    pub name: String,
}

/// A linear character pinned by its order and exponent vector: element g
/// maps to ζ_m^exponents[g].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterId {
    pub order: u64,
    pub exponents: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Irredundant,
    Redundant,
    Anomalous,
    ConnLace,
}

/// How a case was resolved (or why it was set aside).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "detail", rename_all = "snake_case")]
pub enum Method {
    SpecialCase(String),
    VoltageMatrix,
    RedundantDirect,
    RedundantVoltage,
    Valence2Voltage,
    DirectSearch,
    Discharged(String),
    Skipped(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseStatus {
    Resolved,
    Unresolved,
}

/// Outcome at one concrete prime: either every enumerated lift carries a
/// validated certificate, or the prime is honestly unresolved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeOutcome {
    pub p: u64,
    pub certified: bool,
    /// Number of lifts covered at this prime (0 for vacuous checks).
    pub lifts: usize,
    pub cert_ids: Vec<u64>,
    /// Index (within this prime's enumeration) of the lift that defeats
    /// the symbolic matrix argument mod p, when one exists.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intended_lift: Option<usize>,
}

/// The resolution status of one (quotient, generating-set class, character)
/// case, or of one direct-search / survey instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub k: u64,
    pub quotient: QuotientId,
    pub genset_class: String,
    pub branch: Branch,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub character: Option<CharacterId>,
    pub method: Method,
    /// Decimal gcd bound on the voltage norms, when a matrix argument ran.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub residual_primes: Vec<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub prime_outcomes: Vec<PrimeOutcome>,
    /// Certificates not tied to a single prime (survey paths, universal
    /// construction samples).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cert_ids: Vec<u64>,
    pub status: CaseStatus,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CaseRecord {
    /// Deterministic ordering key for report assembly.
    pub fn sort_key(&self) -> (u64, usize, usize, u8, String, Vec<u64>, String) {
        let branch_rank = match self.branch {
            Branch::ConnLace => 0,
            Branch::Anomalous => 1,
            Branch::Irredundant => 2,
            Branch::Redundant => 3,
        };
        (
            self.k,
            self.quotient.order,
            self.quotient.index,
            branch_rank,
            self.genset_class.clone(),
            self.character
                .as_ref()
                .map(|c| c.exponents.clone())
                .unwrap_or_default(),
            format!("{:?}", self.method),
        )
    }

    pub fn all_cert_ids(&self) -> impl Iterator<Item = u64> + '_ {
        self.cert_ids
            .iter()
            .copied()
            .chain(self.prime_outcomes.iter().flat_map(|o| o.cert_ids.iter().copied()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertKind {
    Cycle,
    Path,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertConstraints {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub required_edges: Vec<(u32, u32)>,
    /// For paths: (from, to); must match the first and last vertex.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endpoints: Option<(u32, u32)>,
}

/// An independently checkable witness: a vertex sequence in the Cayley
/// graph of `group` on the connection set `genset` (representatives; the
/// checker symmetrises).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub id: u64,
    pub group: GroupRef,
    pub genset: Vec<usize>,
    pub kind: CertKind,
    pub vertices: Vec<u32>,
    #[serde(default, skip_serializing_if = "constraints_empty")]
    pub constraints: CertConstraints,
    pub origin: String,
}

fn constraints_empty(c: &CertConstraints) -> bool {
    c.required_edges.is_empty() && c.endpoints.is_none()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub resolved: usize,
    pub unresolved: usize,
    pub certificates: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub version: u32,
    /// Unix seconds at assembly; the one field excluded from comparisons.
    pub generated_at: u64,
    pub config: RunConfig,
    pub cases: Vec<CaseRecord>,
    pub summary: Summary,
    /// Relative path of the certificate JSON-lines file, if any was written.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate_file: Option<String>,
}

impl VerificationReport {
    /// Sorts the cases, recounts the summary, and stamps the report. Cert
    /// ids are expected to be final already.
    pub fn assemble(config: RunConfig, mut cases: Vec<CaseRecord>, certificates: usize) -> Self {
        cases.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        let resolved = cases.iter().filter(|c| c.status == CaseStatus::Resolved).count();
        let unresolved = cases.len() - resolved;
        VerificationReport {
            version: REPORT_VERSION,
            generated_at: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            config,
            cases,
            summary: Summary {
                resolved,
                unresolved,
                certificates,
            },
            certificate_file: None,
        }
    }

    pub fn unresolved_cases(&self) -> impl Iterator<Item = &CaseRecord> {
        self.cases.iter().filter(|c| c.status == CaseStatus::Unresolved)
    }

    pub fn is_success(&self) -> bool {
        self.summary.unresolved == 0
    }

    /// Structural equality ignoring the timestamp.
    pub fn same_content(&self, other: &VerificationReport) -> bool {
        self.version == other.version
            && self.config == other.config
            && self.cases == other.cases
            && self.summary == other.summary
            && self.certificate_file == other.certificate_file
    }

    /// Summary counts recomputed from the case list; must match `summary`.
    pub fn consistent(&self) -> bool {
        let resolved = self.cases.iter().filter(|c| c.status == CaseStatus::Resolved).count();
        resolved == self.summary.resolved && self.cases.len() - resolved == self.summary.unresolved
    }
}

pub fn write_report(path: &Path, report: &VerificationReport) -> Result<(), ReportError> {
    let mut out = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut out, report)?;
    out.write_all(b"\n")?;
    Ok(())
}

pub fn read_report(path: &Path) -> Result<VerificationReport, ReportError> {
    let report: VerificationReport = serde_json::from_reader(BufReader::new(File::open(path)?))?;
    if report.version != REPORT_VERSION {
        return Err(ReportError::Version(report.version));
    }
    Ok(report)
}

/// One certificate per line, in id order.
pub fn write_certificates(path: &Path, certs: &[Certificate]) -> Result<(), ReportError> {
    let mut out = BufWriter::new(File::create(path)?);
    for cert in certs {
        serde_json::to_writer(&mut out, cert)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_certificates(path: &Path) -> Result<Vec<Certificate>, ReportError> {
    let mut certs = Vec::new();
    for line in BufReader::new(File::open(path)?).lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        certs.push(serde_json::from_str(&line)?);
    }
    Ok(certs)
}
