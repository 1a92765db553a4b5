//! Resolution of `fixtures:NAME`, `PATH#NAME` and `PATH` references, and
//! dispatch on the characteristic of the inputs.

use std::collections::BTreeMap;
use std::sync::Arc;

use sepalg::algebra::{Algebra, RingExtension};
use sepalg::bimodule::{Bimodule, LeftModule};
use sepalg::fixtures::{load_catalog, Catalog, NamedModule};
use sepalg::schema::{catalog_from_doc, CatalogDoc};
use sepalg::{Error, Field, Result, F2, F3, F5, F7, Q};

/// Characteristics with a concrete scalar type.
pub const SUPPORTED: [u64; 5] = [0, 2, 3, 5, 7];

/// Work that runs over whichever field the inputs live in.
pub trait FieldTask {
    type Output;
    fn run<F: Field>(self) -> Self::Output;
}

pub fn dispatch<T: FieldTask>(characteristic: u64, task: T) -> Result<T::Output> {
    Ok(match characteristic {
        0 => task.run::<Q>(),
        2 => task.run::<F2>(),
        3 => task.run::<F3>(),
        5 => task.run::<F5>(),
        7 => task.run::<F7>(),
        p => {
            return Err(Error::Unsupported(format!(
                "characteristic {p}; supported: 0, 2, 3, 5, 7"
            )))
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Algebra,
    Extension,
    Bimodule,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Source {
    Fixtures(String),
    File { path: String, name: Option<String> },
}

fn parse_ref(r: &str) -> Source {
    if let Some(name) = r.strip_prefix("fixtures:") {
        return Source::Fixtures(name.to_string());
    }
    if let Some((path, name)) = r.rsplit_once('#') {
        return Source::File {
            path: path.to_string(),
            name: Some(name.to_string()),
        };
    }
    if r.ends_with(".json") {
        return Source::File {
            path: r.to_string(),
            name: None,
        };
    }
    Source::Fixtures(r.to_string())
}

fn read_doc(path: &str) -> Result<CatalogDoc> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    CatalogDoc::from_json(&text).map_err(|e| match e {
        Error::Schema { path: p, message } => Error::Schema {
            path: format!("{path}: {p}"),
            message,
        },
        e => e,
    })
}

struct HasFixture<'a>(Kind, &'a str);

impl FieldTask for HasFixture<'_> {
    type Output = bool;
    fn run<F: Field>(self) -> bool {
        let c = load_catalog::<F>();
        let HasFixture(kind, name) = self;
        match kind {
            Kind::Algebra => c.algebra(name).is_some(),
            Kind::Extension => c.extension(name).is_some(),
            Kind::Bimodule => c.bimodule(name).is_some(),
        }
    }
}

fn fixture_field(kind: Kind, name: &str) -> Result<Option<u64>> {
    for p in SUPPORTED {
        if dispatch(p, HasFixture(kind, name))? {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Picks the field of a command from its references, or from `--field`.
pub fn field_of(refs: &[(Kind, &str)], forced: Option<u64>) -> Result<u64> {
    let mut found: Option<(u64, String)> = forced.map(|p| (p, "--field".to_string()));
    for (kind, r) in refs {
        let p = match parse_ref(r) {
            Source::File { path, .. } => read_doc(&path)?.field.char,
            Source::Fixtures(name) => match found {
                // a forced or earlier field decides where fixtures come from
                Some((p, _)) => p,
                None => {
                    fixture_field(*kind, &name)?.ok_or_else(|| Error::Parse(format!("no fixture named {name:?}")))?
                }
            },
        };
        match &found {
            Some((q, from)) if *q != p => {
                return Err(Error::AlgebraMismatch(format!(
                    "{r} is over characteristic {p} but {from} is over {q}"
                )))
            }
            Some(_) => {}
            None => found = Some((p, r.to_string())),
        }
    }
    Ok(found.map_or(0, |(p, _)| p))
}

/// Fixtures plus any catalog documents named on the command line.
pub struct Inputs<F> {
    pub fixtures: Catalog<F>,
    files: BTreeMap<String, Catalog<F>>,
}

impl<F: Field> Default for Inputs<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Field> Inputs<F> {
    pub fn new() -> Self {
        Inputs {
            fixtures: load_catalog::<F>(),
            files: BTreeMap::new(),
        }
    }

    fn catalog(&mut self, src: &Source) -> Result<(&Catalog<F>, Option<String>)> {
        match src {
            Source::Fixtures(name) => Ok((&self.fixtures, Some(name.clone()))),
            Source::File { path, name } => {
                if !self.files.contains_key(path) {
                    let doc = read_doc(path)?;
                    let cat = catalog_from_doc::<F>(&doc).map_err(|e| match e {
                        Error::Schema { path: p, message } => Error::Schema {
                            path: format!("{path}: {p}"),
                            message,
                        },
                        e => e,
                    })?;
                    self.files.insert(path.clone(), cat);
                }
                Ok((&self.files[path], name.clone()))
            }
        }
    }

    fn pick<'a, T>(items: &'a [(String, T)], name: Option<String>, what: &str, r: &str) -> Result<&'a T> {
        match name {
            Some(n) => items
                .iter()
                .find(|(k, _)| *k == n)
                .map(|(_, v)| v)
                .ok_or_else(|| Error::Parse(format!("no {what} named {n:?} in {r}"))),
            None if items.len() == 1 => Ok(&items[0].1),
            None => Err(Error::Parse(format!(
                "{r} holds {} {what}s; select one with {r}#NAME",
                items.len()
            ))),
        }
    }

    pub fn algebra(&mut self, r: &str) -> Result<Arc<Algebra<F>>> {
        let (c, name) = self.catalog(&parse_ref(r))?;
        Self::pick(&c.algebras, name, "algebra", r).cloned()
    }

    pub fn extension(&mut self, r: &str) -> Result<RingExtension<F>> {
        let (c, name) = self.catalog(&parse_ref(r))?;
        Self::pick(&c.extensions, name, "extension", r).cloned()
    }

    pub fn bimodule(&mut self, r: &str) -> Result<Bimodule<F>> {
        let (c, name) = self.catalog(&parse_ref(r))?;
        Self::pick(&c.bimodules, name, "bimodule", r).cloned()
    }

    /// Modules listed for the algebra `r` in the catalog it comes from.
    pub fn modules(&mut self, r: &str) -> Result<Vec<NamedModule<F>>> {
        let src = parse_ref(r);
        let alg = self.algebra(r)?;
        let (c, _) = self.catalog(&src)?;
        let list = c
            .modules
            .iter()
            .find(|(n, _)| c.algebra(n).is_some_and(|a| **a == *alg))
            .map(|(_, ms)| ms.clone())
            .unwrap_or_default();
        Ok(list)
    }

    pub fn module(&mut self, algebra: &str, name: &str) -> Result<LeftModule<F>> {
        self.modules(algebra)?
            .into_iter()
            .find(|m| m.name == name)
            .map(|m| m.module)
            .ok_or_else(|| Error::Parse(format!("no module named {name:?} over {algebra}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn references() {
        assert_eq!(parse_ref("fixtures:Q->QC2"), Source::Fixtures("Q->QC2".into()));
        assert_eq!(parse_ref("A2"), Source::Fixtures("A2".into()));
        assert_eq!(
            parse_ref("x.json#A2"),
            Source::File {
                path: "x.json".into(),
                name: Some("A2".into())
            }
        );
    }

    #[test]
    fn fixture_fields() {
        assert_eq!(field_of(&[(Kind::Extension, "fixtures:Q->QC2")], None).unwrap(), 0);
        assert_eq!(field_of(&[(Kind::Extension, "fixtures:F2->F2C2")], None).unwrap(), 2);
        assert!(field_of(&[(Kind::Algebra, "fixtures:nope")], None).is_err());
    }
}
