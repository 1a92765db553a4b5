use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use sepalg::linalg::Matrix;
use sepalg::schema::{matrix_doc, vector_doc};
use sepalg::Field;

/// The outcome of one command. Two runs with the same arguments serialize to
/// the same bytes, so no timing is recorded.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    /// What was certified, in words.
    pub check: String,
    pub field: String,
    pub inputs: BTreeMap<String, String>,
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub witnesses: Value,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &str, check: &str, field: impl ToString) -> Self {
        Report {
            command: command.to_string(),
            check: check.to_string(),
            field: field.to_string(),
            inputs: BTreeMap::new(),
            verdict: String::new(),
            witnesses: Value::Null,
            notes: Vec::new(),
        }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}: {}", self.command, self.check);
        let _ = writeln!(out, "field: {}", self.field);
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "{k}: {v}");
        }
        let _ = writeln!(out, "verdict: {}", self.verdict);
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        if !self.witnesses.is_null() {
            let body = serde_json::to_string_pretty(&self.witnesses).expect("witnesses serialize");
            let _ = writeln!(out, "witnesses:");
            for line in body.lines() {
                let _ = writeln!(out, "  {line}");
            }
        }
        out
    }
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn vector<F: Field>(v: &[F]) -> Value {
    json!(vector_doc(v))
}

pub fn matrix<F: Field>(m: &Matrix<F>) -> Value {
    json!(matrix_doc(m))
}

/// `sum x_i (x) y_i` as a list of `[x_i, y_i]`.
pub fn pairs<F: Field>(p: &[(Vec<F>, Vec<F>)]) -> Value {
    Value::Array(p.iter().map(|(x, y)| json!([vector(x), vector(y)])).collect())
}
