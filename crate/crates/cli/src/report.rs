//! Report structure, JSON encoding and the plain-text table view.

use crate::args::Request;
use nhlab::koszul::HomologyTable;
use nhlab::rational::format_rational;
use nhlab::rootsys::Weight;
use serde::Serialize;
use serde_json::{json, Value};

pub const VERSION: &str = "nh-lab/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Mismatch,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Mismatch => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorInfo {
    pub module: String,
    pub message: String,
}

/// Library or cache failure, tagged with the module it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExecError {
    pub module: &'static str,
    pub message: String,
    pub resource: bool,
}

impl From<nhlab::Error> for ExecError {
    fn from(e: nhlab::Error) -> Self {
        ExecError {
            module: e.module(),
            message: e.to_string(),
            resource: e.is_resource(),
        }
    }
}

/// Request fields that determine the output. Thread count and output format
/// are left out so they cannot change any byte of the JSON.
#[derive(Debug, Clone, Serialize)]
pub struct RequestEcho {
    pub command: &'static str,
    #[serde(rename = "type", skip_serializing_if = "Option::is_none")]
    pub type_label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<String>>,
    /// Unshifted lowest weight `lambda + rho`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parabolic: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_dim: Option<usize>,
}

impl RequestEcho {
    pub fn new(req: &Request, mu: Option<&Weight>) -> Self {
        RequestEcho {
            command: req.command.as_str(),
            type_label: req.system.map(|s| s.cartan.to_string()),
            rank: req.system.map(|s| s.rank),
            lambda: req.lambda.as_ref().map(weight_json),
            mu: mu.map(weight_json),
            parabolic: req.parabolic.as_ref().map(|p| p.iter().map(|i| i + 1).collect()),
            chain: req.chain.as_ref().map(|c| c.iter().map(|i| i + 1).collect()),
            max_dim: req.max_dim,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub version: &'static str,
    pub request: RequestEcho,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    pub results: Value,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn weight_json(w: &Weight) -> Vec<String> {
    w.coords().iter().map(format_rational).collect()
}

/// `[{degree, weight, mult}]` sorted by degree, then weight.
pub fn table_json(t: &HomologyTable) -> Value {
    Value::Array(
        t.entries
            .iter()
            .map(|((p, w), m)| json!({"degree": p, "weight": weight_json(w), "mult": m}))
            .collect(),
    )
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => match s.strip_suffix("/1") {
            Some(int) => int.to_string(),
            None => s.clone(),
        },
        Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_string) => {
            format!("({})", items.iter().map(compact).collect::<Vec<_>>().join(","))
        }
        Value::Array(items) => format!("[{}]", items.iter().map(compact).collect::<Vec<_>>().join(", ")),
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| format!("{k}={}", compact(v)))
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}

fn is_homology_table(v: &Value) -> bool {
    matches!(v, Value::Array(items) if !items.is_empty() && items.iter().all(|e| {
        e.get("degree").is_some() && e.get("weight").is_some() && e.get("mult").is_some()
    }))
}

/// Degrees as rows, weights as columns.
fn grid(name: &str, v: &Value) -> String {
    let items = v.as_array().expect("table");
    let mut weights: Vec<String> = Vec::new();
    let mut max_degree = 0;
    for e in items {
        let w = compact(&e["weight"]);
        if !weights.contains(&w) {
            weights.push(w);
        }
        max_degree = max_degree.max(e["degree"].as_u64().unwrap_or(0));
    }
    let width = weights.iter().map(String::len).max().unwrap_or(1).max(4);
    let mut out = format!("{name}:\n{:>6}", "p");
    for w in &weights {
        out += &format!(" {w:>width$}");
    }
    out.push('\n');
    for p in 0..=max_degree {
        out += &format!("{p:>6}");
        for w in &weights {
            let cell = items
                .iter()
                .find(|e| e["degree"].as_u64() == Some(p) && compact(&e["weight"]) == *w)
                .map_or(".".to_string(), |e| e["mult"].to_string());
            out += &format!(" {cell:>width$}");
        }
        out.push('\n');
    }
    out
}

pub fn render_table(report: &Report) -> String {
    let req = &report.request;
    let mut out = format!("nh-lab {}", req.command);
    if let (Some(t), Some(r)) = (&req.type_label, req.rank) {
        out += &format!(" {t}{r}");
    }
    if let Some(l) = &req.lambda {
        out += &format!(" lambda={}", compact(&json!(l)));
    }
    if let Some(m) = &req.mu {
        out += &format!(" mu={}", compact(&json!(m)));
    }
    if let Some(p) = &req.parabolic {
        out += &format!(" parabolic={p:?}");
    }
    out += &format!("\nstatus: {}\n", compact(&json!(report.status)));
    if let Some(e) = &report.error {
        out += &format!("error ({}): {}\n", e.module, e.message);
    }
    if let Value::Object(map) = &report.results {
        for (k, v) in map {
            if is_homology_table(v) {
                out += &grid(k, v);
            } else if let Value::Array(items) = v {
                if items.iter().any(Value::is_object) {
                    out += &format!("{k}:\n");
                    for e in items {
                        out += &format!("  {}\n", compact(e));
                    }
                } else {
                    out += &format!("{k}: {}\n", compact(v));
                }
            } else {
                out += &format!("{k}: {}\n", compact(v));
            }
        }
    }
    out
}
