//! Structured reports and their deterministic text rendering.
//!
//! Every command emits one self-describing report: the invocation, the
//! budgets in force, and one row per code with both distances, their
//! provenance, and a derivation trace. `runtime_ms` is the only
//! non-deterministic field; reruns with identical flags differ in nothing
//! else, and the text rendering omits timing entirely.

use cssprop::{DistanceValue, QuantumParams};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowSource {
    /// Parameters obtained by rule arithmetic from a seed.
    TheoremBound,
    /// Distances enumerated to completion by an engine.
    Verified,
    /// Distances supplied as external inputs and taken on trust.
    Ingested,
}

impl RowSource {
    fn label(self) -> &'static str {
        match self {
            RowSource::TheoremBound => "theorem",
            RowSource::Verified => "verified",
            RowSource::Ingested => "ingested",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StarKind {
    /// A declared distance exceeds what the reduction rules guarantee.
    ExceedsRuleBound,
    /// The tabulated distance is flagged as exceeding the
    /// Gilbert-Varshamov existence bound; the comparison is not computed
    /// here.
    ExceedsGvBound,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub q: u64,
    pub n: u32,
    pub k: u32,
    pub d1: DistanceValue,
    pub d2: DistanceValue,
    pub source: RowSource,
    /// Externally declared distance when it differs from the bound shown.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub declared_d: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub star: Option<StarKind>,
    pub trace: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ReportRow {
    pub fn from_params(p: &QuantumParams, source: RowSource, trace: String) -> Self {
        ReportRow {
            q: p.q,
            n: p.n,
            k: p.k,
            d1: p.d1,
            d2: p.d2,
            source,
            declared_d: None,
            star: None,
            trace,
            note: None,
        }
    }

    pub fn params_display(&self) -> String {
        let d = self.d1.value.min(self.d2.value);
        format!("[[{},{},{}]]_{}", self.n, self.k, d, self.q)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BudgetInfo {
    pub max_codewords: u64,
    /// None when the wall-clock cap is disabled.
    pub max_seconds: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixBlock {
    pub label: String,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub version: String,
    pub seed: u64,
    pub threads: usize,
    pub budget: BudgetInfo,
    pub runtime_ms: u64,
    pub rows: Vec<ReportRow>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrices: Option<Vec<MatrixBlock>>,
}

impl Report {
    pub fn new(command: String, seed: u64, threads: usize, budget: BudgetInfo) -> Self {
        Report {
            command,
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            threads,
            budget,
            runtime_ms: 0,
            rows: Vec::new(),
            notes: Vec::new(),
            matrices: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// The deterministic text form: everything except timing.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# cssprop {}\n", self.command));
        for note in &self.notes {
            out.push_str(&format!("# {note}\n"));
        }
        for row in &self.rows {
            let d1 = format_distance("d1", &row.d1);
            let d2 = format_distance("d2", &row.d2);
            let mut line = format!(
                "{:<16} {:<9} {:<9} {:<9} {}",
                row.params_display(),
                d1,
                d2,
                row.source.label(),
                row.trace
            );
            if let Some(note) = &row.note {
                line = format!("{line}  # {note}");
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        if let Some(blocks) = &self.matrices {
            for block in blocks {
                out.push_str(&format!("# generator matrix: {}\n", block.label));
                out.push_str(&block.text);
            }
        }
        out
    }
}

fn format_distance(label: &str, d: &DistanceValue) -> String {
    if d.is_verified() {
        format!("{label}={}", d.value)
    } else {
        format!("{label}>={}", d.value)
    }
}
