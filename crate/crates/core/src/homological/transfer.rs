use crate::algebra::{linear_combination, RingExtension};
use crate::bimodule::{hom_space, is_fgp, regular_bimodules, HomKind, LeftModule, Side};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::fixtures::NamedModule;
use crate::linalg::{solve_rows, Matrix};
use crate::separability::extension_is_separable;

use super::resolution::{dom_dim, proj_dim, DomDim, ProjDim, Projectives};
use super::{split_counit, Adjunction, ApproximationWitness, Factorization};

/// `pd_R(Y) <= pd_T(Y) + pd_R(T)` for a `T`-module `Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChangeOfRings {
    pub restricted: ProjDim,
    pub over_top: ProjDim,
    pub top_over_base: ProjDim,
}

impl ChangeOfRings {
    /// `None` when a dimension ran past the cutoff.
    pub fn holds(&self) -> Option<bool> {
        let (r, t, rt) = (
            self.restricted.finite()?,
            self.over_top.finite()?,
            self.top_over_base.finite()?,
        );
        Some(r <= t + rt)
    }
}

pub fn change_of_rings_check<F: Field>(
    ext: &RingExtension<F>,
    y: &LeftModule<F>,
    cutoff: usize,
) -> Result<ChangeOfRings> {
    let base = Projectives::new(&ext.base)?;
    let top = Projectives::new(&ext.top)?;
    Ok(ChangeOfRings {
        restricted: proj_dim(&base, &y.restrict(ext)?, cutoff)?,
        over_top: proj_dim(&top, y, cutoff)?,
        top_over_base: proj_dim(&base, &LeftModule::regular(ext.top.clone()).restrict(ext)?, cutoff)?,
    })
}

/// One catalog entry of the `P^infinity` transfer check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductionItem {
    pub module: String,
    /// `"base"` or `"top"`.
    pub over: &'static str,
    pub proj_dim: ProjDim,
    /// `pd_T(T (x)_R X)` for base modules; `pd_R(Y)` for top modules.
    pub other: ProjDim,
    /// The inequality for this entry.
    pub bound: Option<bool>,
    /// Top modules: `Y` splits off `T (x)_R Y`.
    pub summand: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductionReport {
    pub top_over_base: ProjDim,
    pub items: Vec<InductionItem>,
}

impl InductionReport {
    pub fn holds(&self) -> bool {
        self.items
            .iter()
            .all(|i| i.bound != Some(false) && (i.over == "base" || i.summand))
    }
}

/// For a separable extension `R -> T` with `T_R` projective and
/// `pd(_R T)` finite: induction does not raise projective dimension of
/// base modules, and every top module of finite projective dimension splits
/// off an induced module and satisfies the change-of-rings bound.
pub fn verify_induction_bounds<F: Field>(
    ext: &RingExtension<F>,
    base_catalog: &[NamedModule<F>],
    top_catalog: &[NamedModule<F>],
    cutoff: usize,
) -> Result<InductionReport> {
    let sep = extension_is_separable(ext)?;
    let Some(e) = sep.bimodule.element.clone() else {
        return Err(Error::Precondition("extension is not separable".into()));
    };
    let regs = regular_bimodules(ext);
    if is_fgp(&regs.top_base, Side::Right)?.is_none() {
        return Err(Error::Precondition("T is not projective over R on the right".into()));
    }
    let base = Projectives::new(&ext.base)?;
    let top = Projectives::new(&ext.top)?;
    let top_over_base = proj_dim(&base, &LeftModule::regular(ext.top.clone()).restrict(ext)?, cutoff)?;
    let Some(rt) = top_over_base.finite() else {
        return Err(Error::Precondition(format!("pd(_R T) {top_over_base}")));
    };
    let adj = Adjunction::new(regs.top_base.clone());
    let mut items = Vec::new();
    for x in base_catalog {
        let pd = proj_dim(&base, &x.module, cutoff)?;
        let Some(m) = pd.finite() else { continue };
        let induced = proj_dim(&top, &adj.induce(&x.module)?.module, cutoff)?;
        items.push(InductionItem {
            module: x.name.clone(),
            over: "base",
            proj_dim: pd,
            other: induced,
            bound: induced.finite().map(|n| n <= m),
            summand: false,
        });
    }
    for y in top_catalog {
        let pd = proj_dim(&top, &y.module, cutoff)?;
        let Some(n) = pd.finite() else { continue };
        let restricted = proj_dim(&base, &y.module.restrict(ext)?, cutoff)?;
        let summand = split_counit(&e, &y.module).is_ok();
        items.push(InductionItem {
            module: y.name.clone(),
            over: "top",
            proj_dim: pd,
            other: restricted,
            bound: restricted.finite().map(|r| r <= n + rt),
            summand,
        });
    }
    Ok(InductionReport { top_over_base, items })
}

/// Supremum of the finite projective dimensions over a catalog: a lower
/// bound for the finitistic dimension, never claimed to equal it.
pub fn findim_lower_bound<F: Field>(proj: &Projectives<F>, catalog: &[NamedModule<F>], cutoff: usize) -> Result<usize> {
    let mut best = 0;
    for m in catalog {
        if let ProjDim::Finite(n) = proj_dim(proj, &m.module, cutoff)? {
            best = best.max(n);
        }
    }
    Ok(best)
}

/// The same invariant computed on both sides of an extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DimComparison<T> {
    pub base: T,
    pub top: T,
}

impl<T: PartialEq> DimComparison<T> {
    pub fn agree(&self) -> bool {
        self.base == self.top
    }
}

/// Finitistic lower bounds over the given catalogs of base and top modules.
pub fn compare_findim<F: Field>(
    ext: &RingExtension<F>,
    base_catalog: &[NamedModule<F>],
    top_catalog: &[NamedModule<F>],
    cutoff: usize,
) -> Result<DimComparison<usize>> {
    Ok(DimComparison {
        base: findim_lower_bound(&Projectives::new(&ext.base)?, base_catalog, cutoff)?,
        top: findim_lower_bound(&Projectives::new(&ext.top)?, top_catalog, cutoff)?,
    })
}

pub fn compare_dom_dim<F: Field>(ext: &RingExtension<F>, cutoff: usize) -> Result<DimComparison<DomDim>> {
    Ok(DimComparison {
        base: dom_dim(&ext.base, cutoff)?,
        top: dom_dim(&ext.top, cutoff)?,
    })
}

/// `P(g)(m) = sum x_i g(y_i m)` for a base-linear `g: X -> Y` between top
/// modules and a separability element `sum x_i (x) y_i`. Checks that `P(g)`
/// is top-linear and that `P(g) = g` when `g` already is.
pub fn separable_retraction<F: Field>(
    ext: &RingExtension<F>,
    element: &[(Vec<F>, Vec<F>)],
    x: &LeftModule<F>,
    y: &LeftModule<F>,
    g: &Matrix<F>,
) -> Result<Matrix<F>> {
    if !x.restrict(ext)?.is_hom(&y.restrict(ext)?, g) {
        return Err(Error::Precondition("g is not linear over the base".into()));
    }
    let mut p = Matrix::zeros(y.dim(), x.dim());
    for (xi, yi) in element {
        p = &p + &(&(&y.act(xi) * g) * &x.act(yi));
    }
    if !x.is_hom(y, &p) {
        return Err(Error::Coherence("P(g) is not linear over the top".into()));
    }
    if x.is_hom(y, g) && p != *g {
        return Err(Error::Coherence("P(g) != g for a top-linear g".into()));
    }
    Ok(p)
}

/// A test map `g: Z -> C` with its source.
pub type TestMap<F> = (String, LeftModule<F>, Matrix<F>);

/// Base-linear `h: Z -> C1` with `g = f h` for each test map, or `None`
/// when some test map does not factor over the base.
pub fn restricted_factorizations<F: Field>(
    ext: &RingExtension<F>,
    f: &Matrix<F>,
    c1: &LeftModule<F>,
    tests: &[TestMap<F>],
) -> Result<Option<Vec<Matrix<F>>>> {
    let c1r = c1.restrict(ext)?.to_bimodule();
    let mut out = Vec::with_capacity(tests.len());
    for (_, z, g) in tests {
        let basis = hom_space(&z.restrict(ext)?.to_bimodule(), &c1r, HomKind::Left)?;
        let images: Vec<Matrix<F>> = basis.iter().map(|h| f * h).collect();
        let rows = (0..g.rows())
            .flat_map(|i| (0..g.cols()).map(move |j| (i, j)))
            .map(|(i, j)| {
                let row: Vec<F> = images.iter().map(|m| m[(i, j)].clone()).collect();
                (row, g[(i, j)].clone())
            });
        match solve_rows(basis.len(), rows) {
            Ok(sol) => out.push(linear_combination(c1.dim(), z.dim(), &sol.particular, &basis)),
            Err(Error::Inconsistent) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    Ok(Some(out))
}

/// For a top-linear `f: C1 -> C` and base-level factorizations
/// `g = f h`, returns `phi = P(h)` with `g = f phi` over the top.
pub fn reflect_approximation<F: Field>(
    ext: &RingExtension<F>,
    element: &[(Vec<F>, Vec<F>)],
    f: &Matrix<F>,
    c1: &LeftModule<F>,
    c: &LeftModule<F>,
    tests: &[TestMap<F>],
    hs: &[Matrix<F>],
) -> Result<ApproximationWitness<F>> {
    if hs.len() != tests.len() {
        return Err(Error::Precondition("a base-level factorization is missing".into()));
    }
    if !c1.is_hom(c, f) {
        return Err(Error::InvalidMap("f is not linear over the top".into()));
    }
    let mut factorizations = Vec::with_capacity(tests.len());
    for ((name, z, g), h) in tests.iter().zip(hs) {
        if !z.is_hom(c, g) {
            return Err(Error::InvalidMap(format!("test map {name} is not linear over the top")));
        }
        if &(f * h) != g {
            return Err(Error::Precondition(format!("h does not factor {name} over the base")));
        }
        let phi = separable_retraction(ext, element, z, c1, h)?;
        factorizations.push(Factorization {
            test: name.clone(),
            psi: g.clone(),
            phi,
        });
    }
    let w = ApproximationWitness {
        arrow: f.clone(),
        factorizations,
    };
    w.validate()?;
    Ok(w)
}
