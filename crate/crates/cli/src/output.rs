use std::fmt::Write as _;
use std::path::Path;

use anyhow::Context;
use ncstab_core::report::ratio_string;
use ncstab_core::testconfig::WeightTable;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A check ran and reported a failure.
    Failed,
    /// The engine could not decide over the base field.
    Unresolved,
}

/// A command result: the JSON report, its human rendering and the status.
pub struct Output {
    pub json: Value,
    pub text: String,
    pub status: Status,
}

impl Output {
    pub fn ok(json: Value, text: String) -> Self {
        Self {
            json,
            text,
            status: Status::Ok,
        }
    }

    pub fn with_status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }
}

/// Writes `doc` to `path` if given; otherwise the document itself is the
/// human output.
pub fn document(doc: Value, path: Option<&Path>) -> anyhow::Result<Output> {
    let pretty = serde_json::to_string_pretty(&doc)? + "\n";
    match path {
        Some(p) => {
            std::fs::write(p, &pretty).with_context(|| format!("writing {}", p.display()))?;
            Ok(Output::ok(doc, format!("wrote {}\n", p.display())))
        }
        None => Ok(Output::ok(doc, pretty)),
    }
}

pub fn weight_table_text(t: &WeightTable) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:>3} {:>6} {:>8} {:>10}  chain", "n", "dim", "w(n)", "F(n)");
    for r in &t.rows {
        let chain: Vec<String> = r.chain_dims.iter().map(|d| d.to_string()).collect();
        let _ = writeln!(
            s,
            "{:>3} {:>6} {:>8} {:>10}  [{}]",
            r.degree,
            r.piece_dim,
            r.weight,
            ratio_string(&r.futaki),
            chain.join(", ")
        );
    }
    s
}
