//! Versioned machine-readable run reports. Every decision field is optional
//! and present only when the run actually computed it; the timing block is
//! the one part excluded from byte-for-byte reproducibility.

use serde::Serialize;
use std::collections::BTreeMap;

use crate::complex::HomologySummary;
use crate::oracle::{ConformanceReport, Violation};
use crate::spectral::VerifierOutcome;

pub const REPORT_SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Serialize)]
pub struct InstanceInfo {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    pub n_bits: u32,
    pub vertices: usize,
    pub edges: usize,
    pub signed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StageRecord {
    pub name: String,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
    pub output_n_bits: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_vertices: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_edges: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub artifacts: Vec<String>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Decisions {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homology: Option<HomologySummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti_nonzero: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hodge_kernel_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub balanced_component: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bipartite_component: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signed_kernel_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signless_kernel_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verifier: Option<VerifierOutcome>,
}

/// Pairwise agreement among the decision procedures that ran.
#[derive(Debug, Clone, Serialize)]
pub struct AgreementMatrix {
    pub procedures: Vec<String>,
    pub answers: Vec<bool>,
    pub all_agree: bool,
}

impl AgreementMatrix {
    pub fn new(entries: Vec<(String, bool)>) -> Self {
        let all_agree = entries.windows(2).all(|w| w[0].1 == w[1].1);
        let (procedures, answers) = entries.into_iter().unzip();
        Self {
            procedures,
            answers,
            all_agree,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleCallCounts {
    pub adj: u64,
    pub sign: u64,
}

/// One crosscheck line: oracle-assembled kernel dimensions (both diagonal
/// conventions) against the exact Betti number.
#[derive(Debug, Clone, Serialize)]
pub struct CrosscheckRow {
    pub n: usize,
    pub p: usize,
    pub edges: Vec<(usize, usize)>,
    pub betti: usize,
    pub construction_kernel_dim: usize,
    pub sign_count_kernel_dim: usize,
    pub adj_count_kernel_dim: usize,
    pub sign_count_agrees: bool,
    pub adj_count_agrees: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CrosscheckSummary {
    pub instances: usize,
    pub sign_count_disagreements: usize,
    pub adj_count_disagreements: usize,
    /// Rows where some oracle-assembled kernel differs from the Betti
    /// number (discrepancies are data, not failures).
    pub discrepancies: Vec<CrosscheckRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub total_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub command: String,
    pub instance: InstanceInfo,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub stages: Vec<StageRecord>,
    pub decisions: Decisions,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<AgreementMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conformance: Option<ConformanceReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_calls: Option<OracleCallCounts>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub crosscheck: Option<CrosscheckSummary>,
    pub timing: Timing,
}

impl Report {
    pub fn new(command: &str, instance: InstanceInfo) -> Self {
        Self {
            schema_version: REPORT_SCHEMA_VERSION,
            command: command.to_string(),
            instance,
            stages: Vec::new(),
            decisions: Decisions::default(),
            agreement: None,
            conformance: None,
            violations: Vec::new(),
            warnings: Vec::new(),
            oracle_calls: None,
            crosscheck: None,
            timing: Timing { total_ms: 0.0 },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
