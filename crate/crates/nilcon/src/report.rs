//! Report records and how they are rendered.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;

pub const SCHEMA: &str = "nilcon-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

/// A computed value. Non-finite floats are stored as text so that the JSON
/// form round-trips.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Bool(bool),
    Int(i64),
    Float(f64),
    Text(String),
    Floats(Vec<f64>),
    Texts(Vec<String>),
}

impl Value {
    pub fn float(x: f64) -> Value {
        if x.is_finite() {
            Value::Float(x)
        } else {
            Value::Text(x.to_string())
        }
    }

    pub fn floats(xs: &[f64]) -> Value {
        if xs.iter().all(|x| x.is_finite()) {
            Value::Floats(xs.to_vec())
        } else {
            Value::Texts(xs.iter().map(|x| x.to_string()).collect())
        }
    }

    fn render(&self) -> String {
        match self {
            Value::Bool(b) => b.to_string(),
            Value::Int(i) => i.to_string(),
            Value::Float(x) => compact(*x),
            Value::Text(s) => s.clone(),
            Value::Floats(xs) => format!("[{}]", xs.iter().map(|x| compact(*x)).collect::<Vec<_>>().join(", ")),
            Value::Texts(xs) => format!("[{}]", xs.join("; ")),
        }
    }
}

fn compact(x: f64) -> String {
    if x != 0.0 && (x.abs() < 1e-3 || x.abs() >= 1e6) {
        format!("{x:.6e}")
    } else {
        x.to_string()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimRecord {
    pub claim: String,
    /// Human-readable statement of what was checked.
    pub reference: String,
    pub values: BTreeMap<String, Value>,
    pub verdict: Verdict,
    /// Absolute or relative tolerance actually applied; `None` for exact checks.
    pub tolerance: Option<f64>,
}

impl ClaimRecord {
    pub fn new(claim: &str, reference: &str, verdict: Verdict) -> Self {
        ClaimRecord { claim: claim.to_string(), reference: reference.to_string(), values: BTreeMap::new(), verdict, tolerance: None }
    }

    pub fn check(claim: &str, reference: &str, ok: bool) -> Self {
        Self::new(claim, reference, if ok { Verdict::Pass } else { Verdict::Fail })
    }

    pub fn with(mut self, key: &str, value: Value) -> Self {
        self.values.insert(key.to_string(), value);
        self
    }

    pub fn tolerance(mut self, tol: f64) -> Self {
        self.tolerance = Some(tol);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisRecord {
    pub index: usize,
    pub directive: String,
    pub seed: u64,
    pub rows: Vec<ClaimRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: String,
    pub version: String,
    pub input_sha256: String,
    pub seed: u64,
    pub samples: u64,
    pub tol_scale: f64,
    pub analyses: Vec<AnalysisRecord>,
}

impl AnalysisReport {
    pub fn rows(&self) -> impl Iterator<Item = &ClaimRecord> {
        self.analyses.iter().flat_map(|a| a.rows.iter())
    }

    pub fn all_pass(&self) -> bool {
        self.rows().all(|r| r.verdict == Verdict::Pass)
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.rows().filter(|r| r.verdict == v).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "nilcon {}  input sha256 {}", self.version, self.input_sha256);
        let _ = writeln!(out, "seed {}  samples {}  tolerance scale {}", self.seed, self.samples, self.tol_scale);
        for a in &self.analyses {
            let _ = writeln!(out, "\n[{}] analyze {}  (seed {})", a.index, a.directive, a.seed);
            for r in &a.rows {
                let tag = match r.verdict {
                    Verdict::Pass => "PASS",
                    Verdict::Fail => "FAIL",
                    Verdict::Skipped => "SKIP",
                };
                let tol = r.tolerance.map(|t| format!("  (tolerance {})", compact(t))).unwrap_or_default();
                let _ = writeln!(out, "  {tag} {}: {}{tol}", r.claim, r.reference);
                for (k, v) in &r.values {
                    let _ = writeln!(out, "       {k} = {}", v.render());
                }
            }
        }
        let _ = writeln!(
            out,
            "\n{} passed, {} failed, {} skipped",
            self.count(Verdict::Pass),
            self.count(Verdict::Fail),
            self.count(Verdict::Skipped)
        );
        out
    }

    /// One line per numeric entry, lists expanded with their position.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["analysis", "directive", "claim", "key", "position", "value"]).expect("in-memory writes succeed");
        for a in &self.analyses {
            for r in &a.rows {
                for (k, v) in &r.values {
                    let index = a.index.to_string();
                    let mut emit = |pos: String, x: String| {
                        w.write_record([index.as_str(), a.directive.as_str(), r.claim.as_str(), k.as_str(), pos.as_str(), x.as_str()])
                            .expect("in-memory writes succeed");
                    };
                    match v {
                        Value::Int(i) => emit(String::new(), i.to_string()),
                        Value::Float(x) => emit(String::new(), x.to_string()),
                        Value::Floats(xs) => {
                            for (i, x) in xs.iter().enumerate() {
                                emit(i.to_string(), x.to_string());
                            }
                        }
                        _ => {}
                    }
                }
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory writes succeed")).expect("csv is utf-8")
    }
}
