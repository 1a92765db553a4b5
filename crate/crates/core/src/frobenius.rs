//! Frobenius data of an extension `S -> R`: the bimodule `Hom_S(R, S)`,
//! isomorphisms `R -> Hom_S(R, S)`, the map `E = phi(1)` as an
//! approximation, and non-degeneracy.
//!
//! `Hom_S(R, S)` consists of right `S`-linear maps, with
//! `(s f)(r) = s f(r)` and `(f r')(r) = f(r' r)`.

use std::sync::Arc;

use crate::algebra::{linear_combination, Algebra, RingExtension};
use crate::bimodule::{hom_space, intertwiners, random_invertible, Bimodule, BimoduleMap, HomKind};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::fixtures::standard_modules;
use crate::homological::{ApproximationWitness, Factorization};
use crate::linalg::{kernel_of_rows, solve_rows, unit_vector, CoordinateMap, Matrix, SubspaceBasis};
use crate::search::{Search, SearchConfig};
use crate::separability::HomBimodule;

fn coordinate_map<F: Field>(maps: &[Matrix<F>], ambient: usize) -> CoordinateMap<F> {
    CoordinateMap::new(&SubspaceBasis {
        ambient_dim: ambient,
        vectors: maps.iter().map(|f| f.entries().to_vec()).collect(),
    })
}

/// `r -> r i(s_j)` on `R`, one matrix per basis element of `S`.
fn right_base_actions<F: Field>(ext: &RingExtension<F>) -> Vec<Matrix<F>> {
    (0..ext.base.dim())
        .map(|j| ext.top.right_matrix(&ext.map.column(j)))
        .collect()
}

/// `Hom_S(R, S)` as an `(S, R)`-bimodule.
pub fn hom_bimodule<F: Field>(ext: &RingExtension<F>) -> Result<HomBimodule<F>> {
    let (s, r) = (&ext.base, &ext.top);
    let on_r = right_base_actions(ext);
    let pairs: Vec<_> = s
        .generators()
        .iter()
        .map(|&g| (&on_r[g], &s.right_regular()[g]))
        .collect();
    let maps = intertwiners(r.dim(), s.dim(), &pairs);
    let coords = coordinate_map(&maps, s.dim() * r.dim());
    let d = maps.len();
    let act = |op: &dyn Fn(&Matrix<F>) -> Matrix<F>| -> Result<Matrix<F>> {
        let cols = maps
            .iter()
            .map(|f| coords.coordinates(op(f).entries()))
            .collect::<Result<Vec<_>>>()
            .map_err(|_| Error::Coherence("action leaves Hom_S(R, S)".into()))?;
        Ok(Matrix::from_columns(d, &cols))
    };
    let la = s
        .left_regular()
        .iter()
        .map(|l| act(&|f| l * f))
        .collect::<Result<Vec<_>>>()?;
    let ra = r
        .left_regular()
        .iter()
        .map(|l| act(&|f| f * l))
        .collect::<Result<Vec<_>>>()?;
    let bimodule = Bimodule::new(s.clone(), r.clone(), d, la, ra)?;
    Ok(HomBimodule { bimodule, maps })
}

fn hom_coordinates<F: Field>(hom: &HomBimodule<F>, ext: &RingExtension<F>, f: &Matrix<F>) -> Result<Vec<F>> {
    coordinate_map(&hom.maps, ext.base.dim() * ext.top.dim()).coordinates(f.entries())
}

fn hom_map<F: Field>(hom: &HomBimodule<F>, ext: &RingExtension<F>, c: &[F]) -> Matrix<F> {
    linear_combination(ext.base.dim(), ext.top.dim(), c, &hom.maps)
}

/// `_S R_R`.
pub fn regular_sr<F: Field>(ext: &RingExtension<F>) -> Result<Bimodule<F>> {
    Bimodule::regular(ext.top.clone()).restrict_left(ext)
}

/// A Frobenius isomorphism `phi: _S R_R -> Hom_S(R, S)` with `E = phi(1)`
/// and, when they exist, dual bases `sum x_i E(y_i r) = r = sum E(r x_i) y_i`.
#[derive(Clone, Debug)]
pub struct FrobeniusDatum<F> {
    pub hom: HomBimodule<F>,
    /// Columns are coordinates of `phi(b_j)` in the basis of `hom`.
    pub phi: Matrix<F>,
    /// `S.dim x R.dim`.
    pub e: Matrix<F>,
    pub dual_bases: Option<Vec<(Vec<F>, Vec<F>)>>,
}

impl<F: Field> FrobeniusDatum<F> {
    pub fn validate(&self, ext: &RingExtension<F>) -> Result<()> {
        let src = Arc::new(regular_sr(ext)?);
        BimoduleMap::new(src, Arc::new(self.hom.bimodule.clone()), self.phi.clone())?;
        if self.phi.inverse().is_none() {
            return Err(Error::Precondition("phi is not invertible".into()));
        }
        if hom_map(&self.hom, ext, &self.phi.apply(ext.top.unit())) != self.e {
            return Err(Error::Precondition("E != phi(1)".into()));
        }
        if let Some(db) = &self.dual_bases {
            if !check_dual_bases(ext, &self.e, db) {
                return Err(Error::Precondition("dual bases identity fails".into()));
            }
        }
        Ok(())
    }
}

/// Searches the `(S, R)`-bimodule maps `R -> Hom_S(R, S)` for an invertible
/// one.
pub fn frobenius_iso<F: Field>(ext: &RingExtension<F>, cfg: &SearchConfig) -> Result<Search<FrobeniusDatum<F>>> {
    let hom = hom_bimodule(ext)?;
    let src = regular_sr(ext)?;
    if hom.bimodule.dim() != src.dim() {
        return Ok(Search::None);
    }
    let space = hom_space(&src, &hom.bimodule, HomKind::Bi)?;
    let phi = match random_invertible(&space, cfg) {
        Search::Found(p) => p,
        Search::None => return Ok(Search::None),
        Search::Inconclusive => return Ok(Search::Inconclusive),
    };
    let e = hom_map(&hom, ext, &phi.apply(ext.top.unit()));
    for j in 0..ext.top.dim() {
        let want = hom_coordinates(&hom, ext, &(&e * &ext.top.left_regular()[j]))?;
        if phi.column(j) != want {
            return Err(Error::Coherence(format!("phi(b{j}) != E b{j}")));
        }
    }
    let dual_bases = solve_dual_bases(ext, &e)?;
    let datum = FrobeniusDatum {
        hom,
        phi,
        e,
        dual_bases,
    };
    datum.validate(ext)?;
    Ok(Search::Found(datum))
}

/// Dual bases with `x_i = b_i`, solved jointly for the `y_i`.
pub fn solve_dual_bases<F: Field>(ext: &RingExtension<F>, e: &Matrix<F>) -> Result<Option<Vec<(Vec<F>, Vec<F>)>>> {
    let r = &ext.top;
    let n = r.dim();
    let ie = &ext.map * e;
    let mut rows = Vec::new();
    for rho in 0..n {
        let br = r.basis_element(rho);
        // sum_i b_i i(E(y_i r)) = r
        let blocks: Vec<Matrix<F>> = (0..n)
            .map(|i| &(&r.left_regular()[i] * &ie) * &r.right_matrix(&br))
            .collect();
        for p in 0..n {
            let row: Vec<F> = (0..n * n).map(|k| blocks[k / n][(p, k % n)].clone()).collect();
            rows.push((row, if p == rho { F::one() } else { F::zero() }));
        }
        // sum_i i(E(r b_i)) y_i = r
        let blocks: Vec<Matrix<F>> = (0..n)
            .map(|i| r.left_matrix(&ie.apply(&r.left_regular()[rho].column(i))))
            .collect();
        for p in 0..n {
            let row: Vec<F> = (0..n * n).map(|k| blocks[k / n][(p, k % n)].clone()).collect();
            rows.push((row, if p == rho { F::one() } else { F::zero() }));
        }
    }
    match solve_rows(n * n, rows) {
        Ok(sol) => Ok(Some(
            (0..n)
                .map(|i| (unit_vector(n, i), sol.particular[i * n..(i + 1) * n].to_vec()))
                .filter(|(_, y)| y.iter().any(|c| !c.is_zero()))
                .collect(),
        )),
        Err(Error::Inconsistent) => Ok(None),
        Err(err) => Err(err),
    }
}

pub fn check_dual_bases<F: Field>(ext: &RingExtension<F>, e: &Matrix<F>, pairs: &[(Vec<F>, Vec<F>)]) -> bool {
    let r = &ext.top;
    let ie = &ext.map * e;
    (0..r.dim()).all(|rho| {
        let br = r.basis_element(rho);
        let mut left = r.zero();
        let mut right = r.zero();
        for (x, y) in pairs {
            left = r.add(&left, &r.mul(x, &ie.apply(&r.mul(y, &br))));
            right = r.add(&right, &r.mul(&ie.apply(&r.mul(&br, x)), y));
        }
        left == br && right == br
    })
}

/// Whether `E: R -> S` is an `S`-bimodule map.
pub fn is_base_bimodule_map<F: Field>(ext: &RingExtension<F>, e: &Matrix<F>) -> bool {
    let s = &ext.base;
    let on_r = right_base_actions(ext);
    s.generators().iter().all(|&g| {
        let is = ext.map.column(g);
        e * &ext.top.left_matrix(&is) == &s.left_regular()[g] * e && e * &on_r[g] == &s.right_regular()[g] * e
    })
}

/// Test objects for the approximation property of `E`, recorded by name.
#[derive(Clone, Debug)]
pub struct TestFamily<F> {
    /// Right `R`-modules as `(k, R)`-bimodules.
    pub right_modules: Vec<(String, Bimodule<F>)>,
    /// `(S, R)`-bimodules.
    pub bimodules: Vec<(String, Bimodule<F>)>,
}

/// `N*` for the standard left `R`-modules `N`, the right regular module,
/// and the bimodules `_S R_R`, `Hom_S(R, S)` and their sum.
pub fn default_test_family<F: Field>(ext: &RingExtension<F>) -> Result<TestFamily<F>> {
    let r = &ext.top;
    let k = Arc::new(Algebra::<F>::ground());
    let mut right_modules = Vec::new();
    for m in standard_modules(r, None)? {
        let module = &m.module;
        if module.dim() == 0 {
            continue;
        }
        let ra = module.action().iter().map(Matrix::transpose).collect();
        let b = Bimodule::new(
            k.clone(),
            r.clone(),
            module.dim(),
            vec![Matrix::identity(module.dim())],
            ra,
        )?;
        right_modules.push((format!("{}*", m.name), b));
    }
    let rr = Bimodule::regular(r.clone()).restrict_left(&RingExtension::scalars(r.clone()))?;
    right_modules.push(("R_R".to_string(), rr));
    let sr = regular_sr(ext)?;
    let hom = hom_bimodule(ext)?.bimodule;
    let sum = sr.direct_sum(&hom)?.sum;
    Ok(TestFamily {
        right_modules,
        bimodules: vec![
            ("S_R_R".into(), sr),
            ("Hom_S(R,S)".into(), hom),
            ("S_R_R+Hom_S(R,S)".into(), sum),
        ],
    })
}

/// Factorizations `psi = E h` of every basis map `psi` from a test object
/// into `S`, with the test objects that admit none.
#[derive(Clone, Debug)]
pub struct EApproximation<F> {
    pub witness: ApproximationWitness<F>,
    pub counterexamples: Vec<String>,
}

impl<F> EApproximation<F> {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

fn factor_all<F: Field>(
    e: &Matrix<F>,
    name: &str,
    x: &Bimodule<F>,
    target: &Bimodule<F>,
    through: &Bimodule<F>,
    kind: HomKind,
    out: &mut Vec<Factorization<F>>,
    bad: &mut Vec<String>,
) -> Result<()> {
    let psis = hom_space(x, target, kind)?;
    let hs = hom_space(x, through, kind)?;
    let images: Vec<Matrix<F>> = hs.iter().map(|h| e * h).collect();
    for (k, psi) in psis.into_iter().enumerate() {
        let rows = (0..psi.rows())
            .flat_map(|i| (0..psi.cols()).map(move |j| (i, j)))
            .map(|(i, j)| {
                (
                    images.iter().map(|m| m[(i, j)].clone()).collect::<Vec<F>>(),
                    psi[(i, j)].clone(),
                )
            });
        match solve_rows(hs.len(), rows) {
            Ok(sol) => out.push(Factorization {
                test: format!("{name}#{k}"),
                phi: linear_combination(through.dim(), x.dim(), &sol.particular, &hs),
                psi,
            }),
            Err(Error::Inconsistent) => bad.push(format!("{name}#{k}")),
            Err(err) => return Err(err),
        }
    }
    Ok(())
}

/// Checks that `E` is a right approximation of `S_S` against the right
/// modules of the family and of `_S S_S` against its bimodules.
pub fn verify_e_approximation<F: Field>(
    ext: &RingExtension<F>,
    e: &Matrix<F>,
    family: &TestFamily<F>,
) -> Result<EApproximation<F>> {
    if !is_base_bimodule_map(ext, e) {
        return Err(Error::Precondition("E is not an S-bimodule map".into()));
    }
    let (s, r) = (&ext.base, &ext.top);
    let s_right = Bimodule::regular(s.clone()).restrict_left(&RingExtension::scalars(s.clone()))?;
    let r_right = Bimodule::regular(r.clone())
        .restrict_left(&RingExtension::scalars(r.clone()))?
        .restrict_right(ext)?;
    let s_bi = Bimodule::regular(s.clone());
    let r_bi = regular_sr(ext)?.restrict_right(ext)?;
    let mut factorizations = Vec::new();
    let mut counterexamples = Vec::new();
    for (name, x) in &family.right_modules {
        let xs = x.restrict_right(ext)?;
        factor_all(
            e,
            name,
            &xs,
            &s_right,
            &r_right,
            HomKind::Right,
            &mut factorizations,
            &mut counterexamples,
        )?;
    }
    for (name, x) in &family.bimodules {
        let xs = x.restrict_right(ext)?;
        factor_all(
            e,
            name,
            &xs,
            &s_bi,
            &r_bi,
            HomKind::Bi,
            &mut factorizations,
            &mut counterexamples,
        )?;
    }
    let witness = ApproximationWitness {
        arrow: e.clone(),
        factorizations,
    };
    witness.validate()?;
    Ok(EApproximation {
        witness,
        counterexamples,
    })
}

/// `{x : E(x r) = 0 for all r}`, the largest right ideal in `ker E`.
pub fn max_right_ideal_in_ker<F: Field>(ext: &RingExtension<F>, e: &Matrix<F>) -> SubspaceBasis<F> {
    let r = &ext.top;
    let rows = (0..r.dim()).flat_map(|rho| (e * &r.right_matrix(&r.basis_element(rho))).row_vectors());
    kernel_of_rows(r.dim(), rows.collect::<Vec<_>>())
}

/// `{E h : h in End_S(R_S)}` compared with all of `Hom_S(R, S)`.
#[derive(Clone, Debug)]
pub struct EaReport<F> {
    pub endomorphisms: usize,
    pub span: SubspaceBasis<F>,
    pub hom_dim: usize,
}

impl<F: Field> EaReport<F> {
    pub fn equal(&self) -> bool {
        self.span.dim() == self.hom_dim
    }
}

pub fn ea_subspace<F: Field>(ext: &RingExtension<F>, e: &Matrix<F>) -> Result<EaReport<F>> {
    let n = ext.top.dim();
    let on_r = right_base_actions(ext);
    let pairs: Vec<_> = ext.base.generators().iter().map(|&g| (&on_r[g], &on_r[g])).collect();
    let a = intertwiners(n, n, &pairs);
    let hom = hom_bimodule(ext)?;
    let ambient = ext.base.dim() * n;
    let span = SubspaceBasis::span(ambient, a.iter().map(|h| (e * h).entries().to_vec()));
    let full = SubspaceBasis::span(ambient, hom.maps.iter().map(|f| f.entries().to_vec()));
    if !full.contains_subspace(&span) {
        return Err(Error::Coherence("E h is not right S-linear".into()));
    }
    Ok(EaReport {
        endomorphisms: a.len(),
        span,
        hom_dim: hom.maps.len(),
    })
}

/// `x -> E m_x` from `_S R_R` into `Hom_S(R, S)`, in coordinates, checked to
/// be a bimodule map.
pub fn alpha_map<F: Field>(ext: &RingExtension<F>, e: &Matrix<F>) -> Result<(HomBimodule<F>, Matrix<F>)> {
    let hom = hom_bimodule(ext)?;
    let cols = (0..ext.top.dim())
        .map(|j| hom_coordinates(&hom, ext, &(e * &ext.top.left_regular()[j])))
        .collect::<Result<Vec<_>>>()
        .map_err(|_| Error::Precondition("E is not right S-linear".into()))?;
    let alpha = Matrix::from_columns(hom.maps.len(), &cols);
    BimoduleMap::new(
        Arc::new(regular_sr(ext)?),
        Arc::new(hom.bimodule.clone()),
        alpha.clone(),
    )
    .map_err(|err| Error::Precondition(format!("x -> E m_x: {err}")))?;
    Ok((hom, alpha))
}

/// From an isomorphism `alpha: _S R_R -> Hom_S(R, S)`: `a` with
/// `alpha(1) = E m_a`, `b = alpha^-1(E)`, and `E1 = E m_a`.
#[derive(Clone, Debug)]
pub struct Nondegenerate<F> {
    pub a: Vec<F>,
    pub b: Vec<F>,
    pub e1: Matrix<F>,
    pub ab_is_one: bool,
    pub ba_is_one: bool,
    pub kernel_ideal: SubspaceBasis<F>,
}

impl<F: Field> Nondegenerate<F> {
    pub fn holds(&self) -> bool {
        self.ab_is_one && self.ba_is_one && self.kernel_ideal.is_zero()
    }
}

pub fn make_nondegenerate<F: Field>(
    ext: &RingExtension<F>,
    e: &Matrix<F>,
    alpha: &Matrix<F>,
) -> Result<Nondegenerate<F>> {
    let r = &ext.top;
    let hom = hom_bimodule(ext)?;
    BimoduleMap::new(
        Arc::new(regular_sr(ext)?),
        Arc::new(hom.bimodule.clone()),
        alpha.clone(),
    )
    .map_err(|err| Error::Precondition(format!("alpha: {err}")))?;
    let inv = alpha
        .inverse()
        .ok_or_else(|| Error::Precondition("alpha is not invertible".into()))?;
    let e_coords = hom_coordinates(&hom, ext, e).map_err(|_| Error::Precondition("E is not in Hom_S(R, S)".into()))?;
    let b = inv.apply(&e_coords);
    let e1 = hom_map(&hom, ext, &alpha.apply(r.unit()));
    // E m_a = alpha(1), linear in a
    let maps: Vec<Matrix<F>> = r.left_regular().iter().map(|l| e * l).collect();
    let rows = (0..e1.rows())
        .flat_map(|i| (0..e1.cols()).map(move |j| (i, j)))
        .map(|(i, j)| {
            (
                maps.iter().map(|m| m[(i, j)].clone()).collect::<Vec<F>>(),
                e1[(i, j)].clone(),
            )
        });
    let a = match solve_rows(r.dim(), rows) {
        Ok(sol) => sol.particular,
        Err(Error::Inconsistent) => return Err(Error::Precondition("alpha(1) is not of the form E m_a".into())),
        Err(err) => return Err(err),
    };
    let one = r.unit().to_vec();
    Ok(Nondegenerate {
        ab_is_one: r.mul(&a, &b) == one,
        ba_is_one: r.mul(&b, &a) == one,
        kernel_ideal: max_right_ideal_in_ker(ext, &e1),
        a,
        b,
        e1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    type Q = Rational;

    fn q(n: i64) -> Q {
        Q::from_i64(n)
    }

    #[test]
    fn hom_dimensions() {
        let k = Arc::new(Algebra::<Q>::ground());
        assert_eq!(hom_bimodule(&RingExtension::identity(k.clone())).unwrap().maps.len(), 1);
        let c2 = RingExtension::scalars(Arc::new(Algebra::<Q>::cyclic_group(2)));
        assert_eq!(hom_bimodule(&c2).unwrap().maps.len(), 2);
        let m2 = RingExtension::scalars(Arc::new(Algebra::matrix_algebra(&k, 2)));
        assert_eq!(hom_bimodule(&m2).unwrap().maps.len(), 4);
    }

    #[test]
    fn group_algebra_is_frobenius() {
        let ext = RingExtension::scalars(Arc::new(Algebra::<Q>::cyclic_group(2)));
        let d = frobenius_iso(&ext, &SearchConfig::default()).unwrap().found().unwrap();
        assert!(d.dual_bases.is_some());
        assert!(max_right_ideal_in_ker(&ext, &d.e).is_zero());
        assert!(ea_subspace(&ext, &d.e).unwrap().equal());
    }

    #[test]
    fn kernel_ideal_by_hand() {
        let ext = RingExtension::scalars(Arc::new(Algebra::<Q>::cyclic_group(2)));
        // E(a + b g) = a + b kills the ideal spanned by 1 - g
        let e = Matrix::from_rows(2, &[vec![q(1), q(1)]]).unwrap();
        let k = max_right_ideal_in_ker(&ext, &e);
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&[q(1), q(-1)]));
        let zero = Matrix::zeros(1, 2);
        assert_eq!(max_right_ideal_in_ker(&ext, &zero).dim(), 2);
        assert!(!ea_subspace(&ext, &zero).unwrap().equal());
    }

    #[test]
    fn twisted_alpha() {
        let c2 = Arc::new(Algebra::<Q>::cyclic_group(2));
        let ext = RingExtension::scalars(c2.clone());
        let e = Matrix::from_rows(2, &[vec![q(1), q(0)]]).unwrap();
        let (_, alpha) = alpha_map(&ext, &e).unwrap();
        // alpha'(x) = alpha(u x) for the unit u = 1 + 2g
        let u = vec![q(1), q(2)];
        let twisted = &alpha * &c2.left_matrix(&u);
        let nd = make_nondegenerate(&ext, &e, &twisted).unwrap();
        assert!(nd.holds());
        assert_eq!(nd.a, u);
        assert_eq!(c2.mul(&nd.a, &nd.b), c2.unit().to_vec());
    }
}
