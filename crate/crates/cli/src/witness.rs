//! Reloading saved reports and re-checking their witnesses from scratch.

use std::sync::Arc;

use serde_json::Value;

use sepalg::bimodule::evaluation_map;
use sepalg::frobenius::{hom_bimodule, FrobeniusDatum};
use sepalg::linalg::{add_vectors, zero_vector, Matrix};
use sepalg::separability::{multiplication_map, SeparabilityElement};
use sepalg::{Error, Field, Result};

use crate::input::{dispatch, FieldTask, Inputs};
use crate::report::Report;

fn bad(what: &str) -> Error {
    Error::Parse(format!("report witness: {what}"))
}

pub fn parse_vector<F: Field>(v: &Value) -> Result<Vec<F>> {
    v.as_array()
        .ok_or_else(|| bad("expected an array of scalars"))?
        .iter()
        .map(|s| F::parse_exact(s.as_str().ok_or_else(|| bad("scalars are strings"))?))
        .collect()
}

pub fn parse_matrix<F: Field>(v: &Value, cols: usize) -> Result<Matrix<F>> {
    let rows = v
        .as_array()
        .ok_or_else(|| bad("expected a list of rows"))?
        .iter()
        .map(parse_vector::<F>)
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(cols, &rows)
}

fn parse_pairs<F: Field>(v: &Value) -> Result<Vec<(Vec<F>, Vec<F>)>> {
    v.as_array()
        .ok_or_else(|| bad("expected a list of pairs"))?
        .iter()
        .map(|p| match p.as_array().map(Vec::as_slice) {
            Some([x, y]) => Ok((parse_vector(x)?, parse_vector(y)?)),
            _ => Err(bad("pairs have two entries")),
        })
        .collect()
}

fn characteristic(field: &str) -> Result<u64> {
    match field {
        "Q" => Ok(0),
        f => f
            .strip_prefix('F')
            .and_then(|p| p.parse().ok())
            .ok_or_else(|| bad("unknown field label")),
    }
}

pub fn revalidate_file(path: &str) -> Result<Report> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    let report: Report = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    revalidate(&report)
}

/// Rebuilds the inputs of `report` and checks its witness.
pub fn revalidate(report: &Report) -> Result<Report> {
    let p = characteristic(&report.field)?;
    let checked = dispatch(p, Recheck { report })??;
    let mut out = Report::new("revalidate", "witness re-validation", &report.field)
        .input("command", &report.command)
        .input("verdict", &report.verdict);
    for (k, v) in &report.inputs {
        out = out.input(k, v);
    }
    out.verdict = if checked { "pass" } else { "no witness" }.into();
    Ok(out)
}

struct Recheck<'a> {
    report: &'a Report,
}

impl FieldTask for Recheck<'_> {
    type Output = Result<bool>;

    fn run<F: Field>(self) -> Result<bool> {
        let r = self.report;
        let w = &r.witnesses;
        let mut inputs = Inputs::<F>::new();
        let fail = |msg: String| Error::InvalidMap(format!("witness does not re-validate: {msg}"));
        match (r.command.as_str(), r.inputs.get("bimodule"), r.inputs.get("extension")) {
            ("check-separable" | "sep-element", Some(b), _) => {
                let el = if r.command == "check-separable" {
                    &w["element"]
                } else {
                    w
                };
                if el.is_null() {
                    return Ok(false);
                }
                let mut m = inputs.bimodule(b)?;
                if let Some(n) = r.inputs.get("power") {
                    let n: usize = n.parse().map_err(|_| bad("power"))?;
                    m = m.power(n).sum;
                }
                let coords = parse_vector::<F>(&el["coords"])?;
                SeparabilityElement::new(Arc::new(evaluation_map(&m)?), coords).map_err(|e| fail(e.to_string()))?;
                Ok(true)
            }
            ("check-separable", None, Some(e)) => {
                if w["element"].is_null() {
                    return Ok(false);
                }
                let ext = inputs.extension(e)?;
                let pairs = parse_pairs::<F>(&w["element"])?;
                let (tensor, mu) = multiplication_map(&ext)?;
                let mut x = zero_vector::<F>(tensor.dim());
                for (a, b) in &pairs {
                    x = add_vectors(&x, &tensor.class(a, b));
                }
                if mu.matrix.apply(&x) != ext.top.unit() {
                    return Err(fail("multiplication does not send e to 1".into()));
                }
                let t = &tensor.bimodule;
                for i in 0..ext.top.dim() {
                    if t.left_action()[i].apply(&x) != t.right_action()[i].apply(&x) {
                        return Err(fail(format!("b{i} e != e b{i}")));
                    }
                }
                Ok(true)
            }
            ("frobenius-check", _, Some(e)) => {
                if w["E"].is_null() {
                    return Ok(false);
                }
                let ext = inputs.extension(e)?;
                let hom = hom_bimodule(&ext)?;
                let d = FrobeniusDatum {
                    e: parse_matrix::<F>(&w["E"], ext.top.dim())?,
                    phi: parse_matrix::<F>(&w["phi"], ext.top.dim())?,
                    dual_bases: if w["dual_bases"].is_null() {
                        None
                    } else {
                        Some(parse_pairs(&w["dual_bases"])?)
                    },
                    hom,
                };
                d.validate(&ext).map_err(|e| fail(e.to_string()))?;
                Ok(true)
            }
            (c, _, _) => Err(Error::Unsupported(format!("no witness re-validation for {c}"))),
        }
    }
}
