use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::algebra::{primitive_idempotents, radical, Algebra};
use crate::bimodule::LeftModule;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Echelon, Matrix, SubspaceBasis};

pub const DEFAULT_CUTOFF: usize = 16;

/// Projective dimension, or the cutoff it exceeds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProjDim {
    Finite(usize),
    Exceeds(usize),
}

impl ProjDim {
    pub fn finite(self) -> Option<usize> {
        match self {
            ProjDim::Finite(n) => Some(n),
            ProjDim::Exceeds(_) => None,
        }
    }
}

impl fmt::Display for ProjDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjDim::Finite(n) => write!(f, "{n}"),
            ProjDim::Exceeds(c) => write!(f, ">{c}"),
        }
    }
}

impl Serialize for ProjDim {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ProjDim::Finite(n) => s.serialize_u64(*n as u64),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

/// Dominant dimension, or a lower bound at the cutoff.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DomDim {
    Finite(usize),
    AtLeast(usize),
}

impl fmt::Display for DomDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomDim::Finite(n) => write!(f, "{n}"),
            DomDim::AtLeast(c) => write!(f, "\u{2265}{c}"),
        }
    }
}

impl Serialize for DomDim {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            DomDim::Finite(n) => s.serialize_u64(*n as u64),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

/// The indecomposable projectives `A e_i`, one per simple module, with the
/// radical used to compute tops.
#[derive(Clone, Debug)]
pub struct Projectives<F> {
    pub algebra: Arc<Algebra<F>>,
    pub idempotents: Vec<Vec<F>>,
    pub modules: Vec<LeftModule<F>>,
    /// `A e_i` as subspaces of `A`.
    pub bases: Vec<SubspaceBasis<F>>,
    pub radical: SubspaceBasis<F>,
}

impl<F: Field> Projectives<F> {
    pub fn new(algebra: &Arc<Algebra<F>>) -> Result<Self> {
        let idempotents = primitive_idempotents(algebra)?
            .representatives()
            .into_iter()
            .cloned()
            .collect();
        Self::with_idempotents(algebra, idempotents)
    }

    pub fn with_idempotents(algebra: &Arc<Algebra<F>>, idempotents: Vec<Vec<F>>) -> Result<Self> {
        let regular = LeftModule::regular(algebra.clone());
        let mut modules = Vec::new();
        let mut bases = Vec::new();
        for e in &idempotents {
            let basis = SubspaceBasis::span(algebra.dim(), algebra.right_matrix(e).columns());
            modules.push(regular.submodule(&basis)?.0);
            bases.push(basis);
        }
        Ok(Projectives {
            algebra: algebra.clone(),
            idempotents,
            modules,
            bases,
            radical: radical(algebra)?.basis,
        })
    }

    /// `J X` as a subspace of `X`.
    pub fn radical_of(&self, x: &LeftModule<F>) -> SubspaceBasis<F> {
        SubspaceBasis::span(x.dim(), self.radical.vectors.iter().flat_map(|j| x.act(j).columns()))
    }

    /// Minimal projective cover `P -> X`: generators lift a basis of each
    /// `e_i (X / J X)`.
    pub fn cover(&self, x: &LeftModule<F>) -> Result<Cover<F>> {
        if x.algebra() != &self.algebra {
            return Err(Error::AlgebraMismatch("module over another algebra".into()));
        }
        let jx = self.radical_of(x);
        let mut summands = Vec::new();
        let mut blocks = Vec::new();
        let mut module = LeftModule::zero(self.algebra.clone());
        for (i, e) in self.idempotents.iter().enumerate() {
            let ex = SubspaceBasis::span(x.dim(), x.act(e).columns());
            let mut ech: Echelon<F> = ex.intersection(&jx).echelon();
            for v in &ex.vectors {
                if ech.insert(v.clone()) {
                    let cols: Vec<Vec<F>> = self.bases[i].vectors.iter().map(|a| x.act(a).apply(v)).collect();
                    blocks.push(Matrix::from_columns(x.dim(), &cols));
                    summands.push(i);
                    module = module.direct_sum(&self.modules[i])?;
                }
            }
        }
        let map = if blocks.is_empty() {
            Matrix::zeros(x.dim(), 0)
        } else {
            Matrix::hstack(&blocks.iter().collect::<Vec<_>>())
        };
        if map.rank() != x.dim() {
            return Err(Error::Coherence("projective cover is not surjective".into()));
        }
        Ok(Cover { module, summands, map })
    }

    /// Whether `X` is projective: its projective cover is an isomorphism.
    pub fn is_projective(&self, x: &LeftModule<F>) -> Result<bool> {
        Ok(self.cover(x)?.module.dim() == x.dim())
    }
}

/// A projective cover `P -> X`, `P` the sum of `A e_i` for `i` in
/// `summands`.
#[derive(Clone, Debug)]
pub struct Cover<F> {
    pub module: LeftModule<F>,
    pub summands: Vec<usize>,
    pub map: Matrix<F>,
}

/// `... -> P_1 -> P_0 -> X -> 0`, computed up to a cutoff.
#[derive(Clone, Debug)]
pub struct ProjectiveResolution<F> {
    pub module: LeftModule<F>,
    pub terms: Vec<LeftModule<F>>,
    /// Indices of the indecomposable projectives in each term.
    pub summands: Vec<Vec<usize>>,
    /// `d_0: P_0 -> X`, then `d_i: P_i -> P_{i-1}`.
    pub differentials: Vec<Matrix<F>>,
    /// The last syzygy vanished before the cutoff.
    pub complete: bool,
    pub cutoff: usize,
}

impl<F: Field> ProjectiveResolution<F> {
    pub fn proj_dim(&self) -> ProjDim {
        if self.complete {
            ProjDim::Finite(self.terms.len().saturating_sub(1))
        } else {
            ProjDim::Exceeds(self.cutoff)
        }
    }

    /// Exactness at every computed stage and minimality
    /// `d_{i+1}(P_{i+1}) in J P_i`.
    pub fn verify(&self, proj: &Projectives<F>) -> Result<()> {
        let d = &self.differentials;
        if let Some(d0) = d.first() {
            if d0.rank() != self.module.dim() {
                return Err(Error::Coherence("P_0 -> X is not onto".into()));
            }
        }
        for (i, di) in d.iter().enumerate() {
            let source = &self.terms[i];
            let target = if i == 0 { &self.module } else { &self.terms[i - 1] };
            if !source.is_hom(target, di) {
                return Err(Error::Coherence(format!("d_{i} is not A-linear")));
            }
            if let Some(next) = d.get(i + 1) {
                if !(di * next).is_zero() || next.rank() + di.rank() != source.dim() {
                    return Err(Error::Coherence(format!("resolution is not exact at P_{i}")));
                }
                let rad = proj.radical_of(source);
                if !next.columns().iter().all(|c| rad.contains(c)) {
                    return Err(Error::Coherence(format!("d_{} is not minimal", i + 1)));
                }
            } else if self.complete && di.rank() != source.dim() {
                return Err(Error::Coherence("last differential is not injective".into()));
            }
        }
        Ok(())
    }
}

/// Minimal projective resolution with terms `P_0, ..., P_cutoff` at most.
pub fn minimal_resolution<F: Field>(
    proj: &Projectives<F>,
    x: &LeftModule<F>,
    cutoff: usize,
) -> Result<ProjectiveResolution<F>> {
    let mut terms = Vec::new();
    let mut summands = Vec::new();
    let mut differentials = Vec::new();
    let mut omega = x.clone();
    let mut emb = Matrix::identity(x.dim());
    let mut complete = x.dim() == 0;
    for _ in 0..=cutoff {
        if complete {
            break;
        }
        let cover = proj.cover(&omega)?;
        differentials.push(&emb * &cover.map);
        let kernel = cover.map.kernel();
        complete = kernel.is_zero();
        let (syzygy, k) = cover.module.submodule(&kernel)?;
        terms.push(cover.module);
        summands.push(cover.summands);
        omega = syzygy;
        emb = k;
    }
    let res = ProjectiveResolution {
        module: x.clone(),
        terms,
        summands,
        differentials,
        complete,
        cutoff,
    };
    res.verify(proj)?;
    Ok(res)
}

pub fn proj_dim<F: Field>(proj: &Projectives<F>, x: &LeftModule<F>, cutoff: usize) -> Result<ProjDim> {
    Ok(minimal_resolution(proj, x, cutoff)?.proj_dim())
}

pub fn is_projective<F: Field>(x: &LeftModule<F>) -> Result<bool> {
    Projectives::new(x.algebra())?.is_projective(x)
}

/// `D X = Hom_k(X, k)` as a left module over the opposite algebra.
fn dual_module<F: Field>(x: &LeftModule<F>, op: &Arc<Algebra<F>>) -> LeftModule<F> {
    LeftModule::from_parts(op.clone(), x.dim(), x.action().iter().map(Matrix::transpose).collect())
}

/// `0 -> X -> I_0 -> I_1 -> ...`, the dual of a minimal projective
/// resolution of `D X` over the opposite algebra.
#[derive(Clone, Debug)]
pub struct InjectiveResolution<F> {
    pub terms: Vec<LeftModule<F>>,
    pub complete: bool,
}

pub fn injective_resolution<F: Field>(x: &LeftModule<F>, cutoff: usize) -> Result<InjectiveResolution<F>> {
    let a = x.algebra();
    let op = Arc::new(a.opposite());
    let proj_op = Projectives::new(&op)?;
    let res = minimal_resolution(&proj_op, &dual_module(x, &op), cutoff)?;
    let terms = res.terms.iter().map(|q| dual_module(q, a)).collect();
    Ok(InjectiveResolution {
        terms,
        complete: res.complete,
    })
}

/// Number of leading projective terms in the minimal injective resolution
/// of `A`, or `>= cutoff`.
pub fn dom_dim<F: Field>(a: &Arc<Algebra<F>>, cutoff: usize) -> Result<DomDim> {
    let proj = Projectives::new(a)?;
    let inj = injective_resolution(&LeftModule::regular(a.clone()), cutoff)?;
    for (j, term) in inj.terms.iter().enumerate().take(cutoff) {
        if !proj.is_projective(term)? {
            return Ok(DomDim::Finite(j));
        }
    }
    Ok(DomDim::AtLeast(cutoff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rational};
    use crate::fixtures::{a2, load_catalog};

    type Q = Rational;

    #[test]
    fn a2_simple_has_projective_dimension_one() {
        let q = load_catalog::<Q>();
        let a = q.algebra("A2").unwrap();
        let proj = Projectives::new(a).unwrap();
        let s1 = q.module("A2", "S1").unwrap();
        let res = minimal_resolution(&proj, s1, DEFAULT_CUTOFF).unwrap();
        assert_eq!(res.proj_dim(), ProjDim::Finite(1));
        assert_eq!(res.terms.iter().map(LeftModule::dim).collect::<Vec<_>>(), vec![2, 1]);
        for name in ["S2", "P1", "P2", "reg"] {
            let m = q.module("A2", name).unwrap();
            assert_eq!(
                proj_dim(&proj, m, DEFAULT_CUTOFF).unwrap(),
                ProjDim::Finite(0),
                "{name}"
            );
        }
    }

    #[test]
    fn dual_numbers_have_periodic_resolution() {
        let q = load_catalog::<Q>();
        let a = q.algebra("Qx2").unwrap();
        let proj = Projectives::new(a).unwrap();
        let s = q.module("Qx2", "S1").unwrap();
        let res = minimal_resolution(&proj, s, 5).unwrap();
        assert_eq!(res.proj_dim(), ProjDim::Exceeds(5));
        assert!(res.terms.iter().all(|t| t.dim() == 2));
        assert_eq!(proj_dim(&proj, s, DEFAULT_CUTOFF).unwrap().to_string(), ">16");
    }

    #[test]
    fn dominant_dimensions() {
        let q = load_catalog::<Q>();
        assert_eq!(
            dom_dim(q.algebra("A2").unwrap(), DEFAULT_CUTOFF).unwrap(),
            DomDim::Finite(1)
        );
        assert_eq!(dom_dim(q.algebra("M2Q").unwrap(), 4).unwrap(), DomDim::AtLeast(4));
        assert_eq!(dom_dim(q.algebra("QC2").unwrap(), 4).unwrap(), DomDim::AtLeast(4));
        let f2 = load_catalog::<Fp<2>>();
        assert_eq!(dom_dim(f2.algebra("F2C2").unwrap(), 4).unwrap(), DomDim::AtLeast(4));
    }

    #[test]
    fn vertex_idempotents_give_the_same_covers() {
        let pa = a2::<Q>();
        let idem = vec![pa.vertex_element(0), pa.vertex_element(1)];
        let a = Arc::new(pa.algebra);
        let proj = Projectives::with_idempotents(&a, idem).unwrap();
        let dims: Vec<usize> = proj.modules.iter().map(LeftModule::dim).collect();
        assert_eq!(dims, vec![2, 1]);
    }
}
