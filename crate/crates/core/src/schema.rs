//! JSON documents for algebras, extensions, modules and bimodules.
//!
//! Scalars are strings (`"3"`, `"-1/2"`) so values survive round trips
//! exactly; matrices are lists of rows. Documents refer to algebras by name.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, RingExtension};
use crate::bimodule::{Bimodule, LeftModule};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::fixtures::{Catalog, NamedModule};
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDoc {
    pub char: u64,
}

pub type MatrixDoc = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub name: String,
    pub dim: usize,
    pub unit: Vec<String>,
    /// `structure[i][j][k]`: coefficient of `b_k` in `b_i b_j`.
    pub structure: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionDoc {
    pub name: String,
    pub base: String,
    pub top: String,
    /// `dim top x dim base`; column `j` is the image of `b_j`.
    pub map: MatrixDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub name: String,
    pub algebra: String,
    pub dim: usize,
    pub action: Vec<MatrixDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleDoc {
    pub name: String,
    pub algebra: String,
    pub right_algebra: String,
    pub dim: usize,
    pub action: Vec<MatrixDoc>,
    /// `right_action[j]` is the matrix of `m -> m b_j`.
    pub right_action: Vec<MatrixDoc>,
}

/// A self-contained collection over one field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogDoc {
    pub field: FieldDoc,
    #[serde(default)]
    pub algebras: Vec<AlgebraDoc>,
    #[serde(default)]
    pub extensions: Vec<ExtensionDoc>,
    #[serde(default)]
    pub bimodules: Vec<BimoduleDoc>,
    #[serde(default)]
    pub modules: Vec<ModuleDoc>,
}

impl CatalogDoc {
    /// Parses JSON, reporting the path of the first shape error.
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| Error::Schema {
            path: e.path().to_string(),
            message: e.inner().to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn field_spec(&self) -> Result<FieldSpec> {
        let spec = FieldSpec::new(self.field.char).map_err(|e| schema("field.char", e.to_string()))?;
        Ok(spec)
    }
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.into(),
        message: message.into(),
    }
}

fn scalar<F: Field>(path: &str, s: &str) -> Result<F> {
    F::parse_exact(s).map_err(|e| schema(path, e.to_string()))
}

fn vector<F: Field>(path: &str, v: &[String], len: usize) -> Result<Vec<F>> {
    if v.len() != len {
        return Err(schema(path, format!("{} entries, expected {len}", v.len())));
    }
    v.iter()
        .enumerate()
        .map(|(i, s)| scalar(&format!("{path}[{i}]"), s))
        .collect()
}

fn matrix<F: Field>(path: &str, m: &MatrixDoc, rows: usize, cols: usize) -> Result<Matrix<F>> {
    if m.len() != rows {
        return Err(schema(path, format!("{} rows, expected {rows}", m.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (i, row) in m.iter().enumerate() {
        data.extend(vector::<F>(&format!("{path}[{i}]"), row, cols)?);
    }
    Matrix::new(rows, cols, data).map_err(|e| schema(path, e.to_string()))
}

fn matrices<F: Field>(path: &str, ms: &[MatrixDoc], count: usize, dim: usize) -> Result<Vec<Matrix<F>>> {
    if ms.len() != count {
        return Err(schema(
            path,
            format!("{} matrices, expected one per basis element ({count})", ms.len()),
        ));
    }
    ms.iter()
        .enumerate()
        .map(|(i, m)| matrix(&format!("{path}[{i}]"), m, dim, dim))
        .collect()
}

pub fn matrix_doc<F: Field>(m: &Matrix<F>) -> MatrixDoc {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(ToString::to_string).collect())
        .collect()
}

pub fn vector_doc<F: Field>(v: &[F]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn algebra_doc<F: Field>(name: &str, a: &Algebra<F>) -> AlgebraDoc {
    let n = a.dim();
    AlgebraDoc {
        name: name.to_string(),
        dim: n,
        unit: vector_doc(a.unit()),
        structure: (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| a.constant(i, j, k).to_string()).collect())
                    .collect()
            })
            .collect(),
    }
}

pub fn algebra_from_doc<F: Field>(path: &str, d: &AlgebraDoc) -> Result<Algebra<F>> {
    let n = d.dim;
    let unit = vector(&format!("{path}.unit"), &d.unit, n)?;
    if d.structure.len() != n {
        return Err(schema(
            format!("{path}.structure"),
            format!("{} entries, expected {n}", d.structure.len()),
        ));
    }
    let mut flat = Vec::with_capacity(n * n * n);
    for (i, row) in d.structure.iter().enumerate() {
        let p = format!("{path}.structure[{i}]");
        if row.len() != n {
            return Err(schema(p, format!("{} entries, expected {n}", row.len())));
        }
        for (j, v) in row.iter().enumerate() {
            flat.extend(vector::<F>(&format!("{p}[{j}]"), v, n)?);
        }
    }
    let alg = Algebra::from_flat(n, flat, unit).map_err(|e| schema(path, e.to_string()))?;
    alg.validate()
        .map_err(|v| schema(format!("{path}.structure"), format!("not an algebra: {v}")))?;
    Ok(alg.with_name(d.name.clone()))
}

/// Serializes a catalog. Algebras of modules and bimodules must be in the
/// catalog (compared by structure).
pub fn catalog_doc<F: Field>(c: &Catalog<F>) -> Result<CatalogDoc> {
    let name_of = |a: &Algebra<F>| -> Result<String> {
        c.algebras
            .iter()
            .find(|(_, b)| **b == *a)
            .map(|(n, _)| n.clone())
            .ok_or_else(|| Error::Precondition(format!("algebra {} is not in the catalog", a.label())))
    };
    let mut extensions = Vec::new();
    for (name, e) in &c.extensions {
        extensions.push(ExtensionDoc {
            name: name.clone(),
            base: name_of(&e.base)?,
            top: name_of(&e.top)?,
            map: matrix_doc(&e.map),
        });
    }
    let mut bimodules = Vec::new();
    for (name, b) in &c.bimodules {
        bimodules.push(BimoduleDoc {
            name: name.clone(),
            algebra: name_of(b.left_algebra())?,
            right_algebra: name_of(b.right_algebra())?,
            dim: b.dim(),
            action: b.left_action().iter().map(matrix_doc).collect(),
            right_action: b.right_action().iter().map(matrix_doc).collect(),
        });
    }
    let mut modules = Vec::new();
    for (alg, ms) in &c.modules {
        for m in ms {
            modules.push(ModuleDoc {
                name: m.name.clone(),
                algebra: alg.clone(),
                dim: m.module.dim(),
                action: m.module.action().iter().map(matrix_doc).collect(),
            });
        }
    }
    Ok(CatalogDoc {
        field: FieldDoc {
            char: F::CHARACTERISTIC,
        },
        algebras: c.algebras.iter().map(|(n, a)| algebra_doc(n, a)).collect(),
        extensions,
        bimodules,
        modules,
    })
}

/// Builds and validates every object of a document over `F`.
pub fn catalog_from_doc<F: Field>(d: &CatalogDoc) -> Result<Catalog<F>> {
    if d.field.char != F::CHARACTERISTIC {
        return Err(schema(
            "field.char",
            format!(
                "document is over characteristic {}, expected {}",
                d.field.char,
                F::CHARACTERISTIC
            ),
        ));
    }
    let mut algebras: Vec<(String, Arc<Algebra<F>>)> = Vec::new();
    for (i, a) in d.algebras.iter().enumerate() {
        let path = format!("algebras[{i}]");
        if algebras.iter().any(|(n, _)| *n == a.name) {
            return Err(schema(
                format!("{path}.name"),
                format!("duplicate algebra {:?}", a.name),
            ));
        }
        algebras.push((a.name.clone(), Arc::new(algebra_from_doc(&path, a)?)));
    }
    let lookup = |path: String, name: &str| -> Result<Arc<Algebra<F>>> {
        algebras
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, a)| a.clone())
            .ok_or_else(|| schema(path, format!("unknown algebra {name:?}")))
    };
    let mut extensions = Vec::new();
    for (i, e) in d.extensions.iter().enumerate() {
        let path = format!("extensions[{i}]");
        let base = lookup(format!("{path}.base"), &e.base)?;
        let top = lookup(format!("{path}.top"), &e.top)?;
        let map = matrix(&format!("{path}.map"), &e.map, top.dim(), base.dim())?;
        let ext = RingExtension::new(base, top, map).map_err(|err| schema(&path, err.to_string()))?;
        extensions.push((e.name.clone(), ext));
    }
    let mut bimodules = Vec::new();
    for (i, b) in d.bimodules.iter().enumerate() {
        let path = format!("bimodules[{i}]");
        let left = lookup(format!("{path}.algebra"), &b.algebra)?;
        let right = lookup(format!("{path}.right_algebra"), &b.right_algebra)?;
        let la = matrices(&format!("{path}.action"), &b.action, left.dim(), b.dim)?;
        let ra = matrices(&format!("{path}.right_action"), &b.right_action, right.dim(), b.dim)?;
        let bm = Bimodule::new(left, right, b.dim, la, ra).map_err(|err| schema(&path, err.to_string()))?;
        bimodules.push((b.name.clone(), bm));
    }
    let mut modules: Vec<(String, Vec<NamedModule<F>>)> =
        algebras.iter().map(|(n, _)| (n.clone(), Vec::new())).collect();
    for (i, m) in d.modules.iter().enumerate() {
        let path = format!("modules[{i}]");
        let alg = lookup(format!("{path}.algebra"), &m.algebra)?;
        let action = matrices(&format!("{path}.action"), &m.action, alg.dim(), m.dim)?;
        let module = LeftModule::from_parts(alg, m.dim, action);
        module.validate().map_err(|err| schema(&path, err.to_string()))?;
        let slot = modules.iter_mut().find(|(n, _)| *n == m.algebra).expect("algebra slot");
        slot.1.push(NamedModule {
            name: m.name.clone(),
            module,
        });
    }
    Ok(Catalog {
        algebras,
        extensions,
        bimodules,
        modules,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::fixtures::load_catalog;

    type Q = Rational;

    #[test]
    fn round_trip_q_catalog() {
        let c = load_catalog::<Q>();
        let doc = catalog_doc(&c).unwrap();
        let text = doc.to_json();
        let back = CatalogDoc::from_json(&text).unwrap();
        assert_eq!(back, doc);
        let c2 = catalog_from_doc::<Q>(&back).unwrap();
        assert_eq!(catalog_doc(&c2).unwrap().to_json(), text);
        for ((n1, b1), (n2, b2)) in c.bimodules.iter().zip(&c2.bimodules) {
            assert_eq!(n1, n2);
            assert_eq!(b1, b2);
        }
    }

    #[test]
    fn wrong_entry_count_names_the_path() {
        let mut doc = catalog_doc(&load_catalog::<Q>()).unwrap();
        doc.algebras[1].unit.pop();
        match catalog_from_doc::<Q>(&doc).unwrap_err() {
            Error::Schema { path, .. } => assert_eq!(path, "algebras[1].unit"),
            e => panic!("{e}"),
        }
    }

    #[test]
    fn non_associative_constants_are_rejected() {
        let mut doc = catalog_doc(&load_catalog::<Q>()).unwrap();
        let idx = doc.algebras.iter().position(|a| a.name == "M2Q").unwrap();
        // e12 e12 = e12 breaks (e12 e12) e21 = e12 (e12 e21)
        doc.algebras[idx].structure[1][1] = vec!["0".into(), "1".into(), "0".into(), "0".into()];
        let err = catalog_from_doc::<Q>(&doc).unwrap_err();
        match err {
            Error::Schema { path, message } => {
                assert_eq!(path, format!("algebras[{idx}].structure"));
                assert!(
                    message.starts_with("not an algebra: (b") && message.contains(" != b"),
                    "{message}"
                );
            }
            e => panic!("{e}"),
        }
    }

    #[test]
    fn shape_errors_carry_a_path() {
        let err =
            CatalogDoc::from_json(r#"{"field": {"char": 0}, "algebras": [{"name": "x", "dim": "two"}]}"#).unwrap_err();
        match err {
            Error::Schema { path, .. } => assert_eq!(path, "algebras[0].dim"),
            e => panic!("{e}"),
        }
    }
}
