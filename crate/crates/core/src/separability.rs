//! Separability elements, separable and biseparable bimodules, separable
//! and split extensions, faithful Casimir elements, and the transport of
//! separability elements through tensor products, Hom, sums and powers.

use std::sync::Arc;

use crate::algebra::{linear_combination, RingExtension};
use crate::bimodule::{
    dual_right, evaluation_map, hom_space, intertwiners, is_fgp, is_split_epi, regular_bimodules, tensor_over,
    Bimodule, BimoduleMap, DualBasis, HomKind, Pairing, Side, SplitEpi, TensorProduct,
};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{
    add_vectors, kernel_of_rows, solve_rows, unit_vector, zero_vector, CoordinateMap, Matrix, SubspaceBasis,
};
use crate::search::{Search, SearchConfig};

/// `e` in `M (x)_R *M` with `u_M(e) = 1` and `t e = e t` for all `t`,
/// stored by its quotient coordinates.
#[derive(Clone, Debug)]
pub struct SeparabilityElement<F> {
    pub pairing: Arc<Pairing<F>>,
    pub coords: Vec<F>,
}

impl<F: Field> SeparabilityElement<F> {
    /// Wraps and checks coordinates.
    pub fn new(pairing: Arc<Pairing<F>>, coords: Vec<F>) -> Result<Self> {
        let e = SeparabilityElement { pairing, coords };
        e.validate()?;
        Ok(e)
    }

    pub fn module(&self) -> &Bimodule<F> {
        &self.pairing.module
    }

    /// Checks `u_M(e) = 1` and `t e = e t` on every basis element of `T`.
    pub fn validate(&self) -> Result<()> {
        let p = &self.pairing;
        if self.coords.len() != p.tensor.dim() {
            return Err(Error::Dimension("separability element of the wrong length".into()));
        }
        let t = p.module.left_algebra();
        if p.evaluation.matrix.apply(&self.coords) != t.unit() {
            return Err(Error::Precondition("u_M(e) != 1".into()));
        }
        for i in 0..t.dim() {
            let l = p.tensor_module.left_action()[i].apply(&self.coords);
            let r = p.tensor_module.right_action()[i].apply(&self.coords);
            if l != r {
                return Err(Error::Precondition(format!("t{i} e != e t{i}")));
            }
        }
        Ok(())
    }

    /// The lift `sum_a e_a (x) f_a`.
    pub fn lifted(&self) -> Vec<(Vec<F>, Matrix<F>)> {
        self.pairing.lifted(&self.coords)
    }
}

fn pairing<F: Field>(m: &Bimodule<F>) -> Result<Arc<Pairing<F>>> {
    Ok(Arc::new(evaluation_map(m)?))
}

/// `u(e) = 1` and `(L_t - R_t) e = 0` for generators `t`, in quotient
/// coordinates. Returns the elimination-first solution.
pub fn separability_element<F: Field>(p: &Arc<Pairing<F>>) -> Result<Option<SeparabilityElement<F>>> {
    let q = p.tensor.dim();
    let t = p.module.left_algebra();
    let unit_rows = (0..t.dim()).map(|i| (p.evaluation.matrix.row(i).to_vec(), t.unit()[i].clone()));
    let central = t.generators().iter().flat_map(|&g| {
        let d = &p.tensor_module.left_action()[g] - &p.tensor_module.right_action()[g];
        d.row_vectors().into_iter().map(|r| (r, F::zero()))
    });
    match solve_rows(q, unit_rows.chain(central)) {
        Ok(sol) => Ok(Some(SeparabilityElement::new(p.clone(), sol.particular)?)),
        Err(Error::Inconsistent) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Both routes to separability with their witnesses.
#[derive(Clone, Debug)]
pub struct SeparabilityReport<F> {
    pub pairing: Arc<Pairing<F>>,
    /// Whether `u_M` splits, with the section.
    pub split: SplitEpi<F>,
    /// Element from the direct linear solve.
    pub element: Option<SeparabilityElement<F>>,
    /// `psi(1)` for the section `psi`.
    pub section_element: Option<SeparabilityElement<F>>,
    /// `t -> t e`, embedding `T` as a direct summand of `M (x)_R *M`.
    pub summand: Option<Matrix<F>>,
}

impl<F: Field> SeparabilityReport<F> {
    pub fn separable(&self) -> bool {
        self.element.is_some()
    }
}

/// Decides separability by splitting `u_M` and by solving for an element;
/// disagreement is reported as [`Error::Coherence`].
pub fn is_separable<F: Field>(m: &Bimodule<F>) -> Result<SeparabilityReport<F>> {
    let p = pairing(m)?;
    separability_report(p)
}

pub fn separability_report<F: Field>(p: Arc<Pairing<F>>) -> Result<SeparabilityReport<F>> {
    let split = is_split_epi(&p.evaluation)?;
    let element = separability_element(&p)?;
    let section_element = match split.section() {
        Some(psi) => {
            let x = psi.apply(p.module.left_algebra().unit());
            Some(
                SeparabilityElement::new(p.clone(), x)
                    .map_err(|e| Error::Coherence(format!("section does not give an element: {e}")))?,
            )
        }
        None => None,
    };
    if section_element.is_some() != element.is_some() {
        return Err(Error::Coherence(format!(
            "u_M split = {}, element solver = {}",
            section_element.is_some(),
            element.is_some()
        )));
    }
    let summand = element.as_ref().map(|e| {
        let t = p.module.left_algebra();
        let cols: Vec<Vec<F>> = (0..t.dim())
            .map(|i| p.tensor_module.left_action()[i].apply(&e.coords))
            .collect();
        Matrix::from_columns(p.tensor.dim(), &cols)
    });
    if let Some(s) = &summand {
        if !(&p.evaluation.matrix * s).is_identity() {
            return Err(Error::Coherence("t -> t e is not split by u_M".into()));
        }
    }
    Ok(SeparabilityReport {
        pairing: p,
        split,
        element,
        section_element,
        summand,
    })
}

/// Trace of the implication from a split pairing `phi: M (x)_R X -> T` to a
/// separability element: `phi = u_M (id (x) phi1)` with
/// `phi1(x)(m) = phi(m (x) x)`.
#[derive(Clone, Debug)]
pub struct SplitPairingTrace<F> {
    /// `X -> *M`, as a `dim *M x dim X` matrix.
    pub phi1: Matrix<F>,
    pub section: Matrix<F>,
    pub element: SeparabilityElement<F>,
}

/// For an `(R, T)`-bimodule `X` and a bimodule map `phi` out of
/// `M (x)_R X` (given on the quotient coordinates of `tensor`); `None` when
/// `phi` does not split.
pub fn verify_split_pairing<F: Field>(
    m: &Bimodule<F>,
    x: &Bimodule<F>,
    tensor: &TensorProduct<F>,
    phi: &BimoduleMap<F>,
) -> Result<Option<SplitPairingTrace<F>>> {
    phi.validate()?;
    let SplitEpi::Section(section) = is_split_epi(phi)? else {
        return Ok(None);
    };
    let p = pairing(m)?;
    let t = m.left_algebra();
    // phi1(x_b) = (m -> phi(m (x) x_b))
    let mut cols = Vec::with_capacity(x.dim());
    for b in 0..x.dim() {
        let xb = unit_vector(x.dim(), b);
        let f = Matrix::from_columns(
            t.dim(),
            &(0..m.dim())
                .map(|a| phi.matrix.apply(&tensor.class(&unit_vector(m.dim(), a), &xb)))
                .collect::<Vec<_>>(),
        );
        cols.push(
            p.dual
                .coordinates(&f)
                .map_err(|_| Error::Coherence("phi(- (x) x) is not T-linear".into()))?,
        );
    }
    let phi1 = Matrix::from_columns(p.dual.dim(), &cols);
    BimoduleMap::new(Arc::new(x.clone()), Arc::new(p.dual.bimodule.clone()), phi1.clone())
        .map_err(|e| Error::Coherence(format!("phi1 is not a bimodule map: {e}")))?;
    let id_phi1 = tensor.induced(&p.tensor, &Matrix::identity(m.dim()), &phi1);
    if &p.evaluation.matrix * &id_phi1 != phi.matrix {
        return Err(Error::Coherence("phi != u_M (id (x) phi1)".into()));
    }
    let e = id_phi1.apply(&section.apply(t.unit()));
    let element = SeparabilityElement::new(p, e).map_err(|e| Error::Coherence(format!("transported element: {e}")))?;
    Ok(Some(SplitPairingTrace { phi1, section, element }))
}

/// `x` in the Casimir space whose right annihilator in `T` is zero.
pub fn faithful_casimir<F: Field>(p: &Pairing<F>, cfg: &SearchConfig) -> Result<Search<Vec<F>>> {
    let q = p.tensor.dim();
    let t = p.module.left_algebra();
    let rows = t
        .generators()
        .iter()
        .flat_map(|&g| (&p.tensor_module.left_action()[g] - &p.tensor_module.right_action()[g]).row_vectors());
    let casimir = kernel_of_rows(q, rows.collect::<Vec<_>>());
    if casimir.is_zero() {
        return Ok(Search::None);
    }
    // x -> (t -> x t)
    let ann = |x: &[F]| -> Matrix<F> {
        let cols: Vec<Vec<F>> = p.tensor_module.right_action().iter().map(|r| r.apply(x)).collect();
        Matrix::from_columns(q, &cols)
    };
    let faithful = |x: &[F]| ann(x).rank() == t.dim();
    if let Some(x) = casimir.vectors.iter().find(|x| faithful(x)) {
        return Ok(Search::Found(x.clone()));
    }
    // a common annihilator kills every Casimir element
    let stacked: Vec<Vec<F>> = casimir.vectors.iter().flat_map(|x| ann(x).row_vectors()).collect();
    if !kernel_of_rows(t.dim(), stacked).is_zero() || casimir.dim() == 1 {
        return Ok(Search::None);
    }
    let d = casimir.dim();
    if let Some(all) = SearchConfig::exhaustive::<F>(d, 4096) {
        return Ok(all
            .into_iter()
            .map(|c| crate::linalg::combine(q, &c, &casimir.vectors))
            .find(|x| faithful(x))
            .map_or(Search::None, Search::Found));
    }
    Ok(cfg
        .candidates::<F>(d)
        .map(|c| crate::linalg::combine(q, &c, &casimir.vectors))
        .find(|x| faithful(x))
        .map_or(Search::Inconclusive, Search::Found))
}

/// `M` and `M*` separable, `M` finitely generated projective on both sides.
#[derive(Clone, Debug)]
pub struct BiseparabilityReport<F> {
    pub module: SeparabilityReport<F>,
    pub dual: SeparabilityReport<F>,
    pub left_fgp: Option<DualBasis<F>>,
    pub right_fgp: Option<DualBasis<F>>,
}

impl<F: Field> BiseparabilityReport<F> {
    pub fn biseparable(&self) -> bool {
        self.module.separable() && self.dual.separable() && self.left_fgp.is_some() && self.right_fgp.is_some()
    }
}

pub fn is_biseparable<F: Field>(m: &Bimodule<F>) -> Result<BiseparabilityReport<F>> {
    let module = is_separable(m)?;
    let star = dual_right(m)?;
    let dual = is_separable(&star.bimodule)?;
    Ok(BiseparabilityReport {
        module,
        dual,
        left_fgp: is_fgp(m, Side::Left)?,
        right_fgp: is_fgp(m, Side::Right)?,
    })
}

/// Separability of `S -> A` by two routes: `_A A_S` as a separable
/// bimodule, and a splitting of the multiplication `A (x)_S A -> A`.
#[derive(Clone, Debug)]
pub struct ExtensionSeparability<F> {
    pub bimodule: SeparabilityReport<F>,
    pub multiplication: SplitEpi<F>,
    /// `sum x_i (x) y_i` with `sum x_i y_i = 1` and `a e = e a`.
    pub element: Option<Vec<(Vec<F>, Vec<F>)>>,
}

impl<F: Field> ExtensionSeparability<F> {
    pub fn separable(&self) -> bool {
        self.element.is_some()
    }
}

/// `A (x)_S A` and the multiplication map.
pub fn multiplication_map<F: Field>(ext: &RingExtension<F>) -> Result<(TensorProduct<F>, BimoduleMap<F>)> {
    let regs = regular_bimodules(ext);
    let tensor = tensor_over(&regs.top_base, &regs.base_top)?;
    let a = &ext.top;
    let n = a.dim();
    let full = Matrix::from_fn(n, n * n, |k, col| a.constant(col / n, col % n, k).clone());
    let mu = tensor
        .descend(&full)
        .ok_or_else(|| Error::Coherence("multiplication does not descend to A (x)_S A".into()))?;
    let map = BimoduleMap::new(
        Arc::new(tensor.bimodule.clone()),
        Arc::new(Bimodule::regular(a.clone())),
        mu,
    )?;
    Ok((tensor, map))
}

pub fn extension_is_separable<F: Field>(ext: &RingExtension<F>) -> Result<ExtensionSeparability<F>> {
    let regs = regular_bimodules(ext);
    let bimodule = is_separable(&regs.top_base)?;
    let (tensor, mu) = multiplication_map(ext)?;
    let multiplication = is_split_epi(&mu)?;
    if multiplication.section().is_some() != bimodule.separable() {
        return Err(Error::Coherence(format!(
            "_A A_S separable = {}, multiplication splits = {}",
            bimodule.separable(),
            multiplication.section().is_some()
        )));
    }
    let element = multiplication.section().map(|psi| {
        let n = ext.top.dim();
        let full = tensor.lift(&psi.apply(ext.top.unit()));
        (0..n)
            .filter_map(|a| {
                let y = full[a * n..(a + 1) * n].to_vec();
                (!y.iter().all(|c| c.is_zero())).then(|| (unit_vector(n, a), y))
            })
            .collect()
    });
    Ok(ExtensionSeparability {
        bimodule,
        multiplication,
        element,
    })
}

/// Splitness of `S -> A` by two routes: an `S`-bimodule retraction
/// `rho: A -> S` with `rho(1) = 1`, and separability of `_S A_A`.
#[derive(Clone, Debug)]
pub struct ExtensionSplit<F> {
    pub retraction: Option<Matrix<F>>,
    pub bimodule: SeparabilityReport<F>,
}

impl<F: Field> ExtensionSplit<F> {
    pub fn split(&self) -> bool {
        self.retraction.is_some()
    }
}

/// An `S`-bimodule map `rho: _S A_S -> _S S_S` with `rho(1) = 1`.
pub fn bimodule_retraction<F: Field>(ext: &RingExtension<F>) -> Result<Option<Matrix<F>>> {
    let regs = regular_bimodules(ext);
    let (a, s) = (&regs.base_base, &regs.base_regular);
    let basis = hom_space(a, s, HomKind::Bi)?;
    let unit = ext.top.unit();
    let rows = (0..s.dim()).map(|i| {
        let row: Vec<F> = basis.iter().map(|h| h.apply(unit)[i].clone()).collect();
        (row, ext.base.unit()[i].clone())
    });
    match solve_rows(basis.len(), rows) {
        Ok(sol) => Ok(Some(linear_combination(s.dim(), a.dim(), &sol.particular, &basis))),
        Err(Error::Inconsistent) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn extension_is_split<F: Field>(ext: &RingExtension<F>) -> Result<ExtensionSplit<F>> {
    let retraction = bimodule_retraction(ext)?;
    let regs = regular_bimodules(ext);
    let bimodule = is_separable(&regs.base_top)?;
    if bimodule.separable() != retraction.is_some() {
        return Err(Error::Coherence(format!(
            "retraction exists = {}, _S A_A separable = {}",
            retraction.is_some(),
            bimodule.separable()
        )));
    }
    Ok(ExtensionSplit { retraction, bimodule })
}

/// Transports `e_M` and `e_N` to `M (x)_R N`: `sum (m_i (x) n_j) (x) h_ij`
/// with `h_ij(m (x) n) = f_i(m g_j(n))`.
pub fn sep_element_tensor<F: Field>(
    e_m: &SeparabilityElement<F>,
    e_n: &SeparabilityElement<F>,
) -> Result<(TensorProduct<F>, SeparabilityElement<F>)> {
    let (m, n) = (e_m.module(), e_n.module());
    let mn = tensor_over(m, n)?;
    let p = pairing(&mn.bimodule)?;
    let t = m.left_algebra();
    let (dm, dn) = (m.dim(), n.dim());
    let mut coords = zero_vector::<F>(p.tensor.dim());
    for (mi, fi) in e_m.lifted() {
        for (nj, gj) in e_n.lifted() {
            // h on e_a (x) e_b = f_i(e_a g_j(e_b))
            let full = Matrix::from_fn(t.dim(), dm * dn, |row, col| {
                let (a, b) = (col / dn, col % dn);
                let r = gj.column(b);
                let v = m.act_right(&r).column(a);
                fi.apply(&v)[row].clone()
            });
            let h = mn
                .descend(&full)
                .ok_or_else(|| Error::Coherence("h_ij is not balanced over R".into()))?;
            let hc = p
                .dual
                .coordinates(&h)
                .map_err(|_| Error::Coherence("h_ij is not T-linear".into()))?;
            let x = mn.class(&mi, &nj);
            coords = add_vectors(&coords, &p.tensor.class(&x, &hc));
        }
    }
    let e = SeparabilityElement::new(p, coords)
        .map_err(|err| Error::Coherence(format!("transport failed invariants: {err}")))?;
    Ok((mn, e))
}

/// Pushes `e` for `M` into `M + N`: `sum i(m_k) (x) f_k p_M`.
pub fn sep_element_directsum<F: Field>(e: &SeparabilityElement<F>, n: &Bimodule<F>) -> Result<SeparabilityElement<F>> {
    let m = e.module();
    let sum = m.direct_sum(n)?;
    let p = pairing(&sum.sum)?;
    let mut pairs = Vec::new();
    for (mk, fk) in e.lifted() {
        pairs.push((sum.inclusions[0].apply(&mk), &fk * &sum.projections[0]));
    }
    let coords = p
        .class_of(&pairs)
        .map_err(|_| Error::Coherence("f p_M is not in *(M + N)".into()))?;
    SeparabilityElement::new(p, coords).map_err(|err| Error::Coherence(format!("transport failed invariants: {err}")))
}

/// The `(a, b)` component `sum p_a(m_k) (x) f_k i_b` of an element for
/// `M^n`, as coordinates in `M (x)_R *M`.
pub fn power_component<F: Field>(
    e: &SeparabilityElement<F>,
    target: &Pairing<F>,
    n: usize,
    a: usize,
    b: usize,
) -> Result<Vec<F>> {
    let m = &target.module;
    let pow = m.power(n);
    let pairs: Vec<(Vec<F>, Matrix<F>)> = e
        .lifted()
        .into_iter()
        .map(|(mk, fk)| (pow.projections[a].apply(&mk), &fk * &pow.inclusions[b]))
        .collect();
    target
        .class_of(&pairs)
        .map_err(|_| Error::Coherence("f i_b is not in *M".into()))
}

/// Recovers an element for `M` from one for `M^n` as the sum of the
/// diagonal components.
pub fn sep_element_from_power<F: Field>(
    e: &SeparabilityElement<F>,
    m: &Bimodule<F>,
    n: usize,
) -> Result<SeparabilityElement<F>> {
    if e.module() != &m.power(n).sum {
        return Err(Error::Precondition("element is not for the n-th power".into()));
    }
    let p = pairing(m)?;
    let mut coords = zero_vector::<F>(p.tensor.dim());
    for a in 0..n {
        coords = add_vectors(&coords, &power_component(e, &p, n, a, a)?);
    }
    SeparabilityElement::new(p, coords).map_err(|err| Error::Coherence(format!("extraction failed invariants: {err}")))
}

/// An element for `M^n` built by repeated direct-sum transport.
pub fn sep_element_to_power<F: Field>(e: &SeparabilityElement<F>, n: usize) -> Result<SeparabilityElement<F>> {
    let m = e.module().clone();
    if n == 1 {
        return Ok(e.clone());
    }
    let rest = m.power(n - 1).sum;
    sep_element_directsum(e, &rest)
}

/// The criterion for `M (x)_R N` to be separable: the evaluation
/// `N (x)_S Hom_R(N, *M) -> *M` splits as an `(R, T)`-bimodule map.
#[derive(Clone, Debug)]
pub struct TensorCriterion<F> {
    pub evaluation_split: SplitEpi<F>,
    pub tensor: SeparabilityReport<F>,
}

/// For separable `_T M_R` and any `_R N_S`. A split evaluation without a
/// separable tensor product is a [`Error::Coherence`].
pub fn tensor_criterion<F: Field>(m: &Bimodule<F>, n: &Bimodule<F>) -> Result<TensorCriterion<F>> {
    if !is_separable(m)?.separable() {
        return Err(Error::Precondition("M is not separable".into()));
    }
    let star = crate::bimodule::dual_left(m)?.bimodule;
    // Hom_R(N, *M) with (s h)(n) = h(n s) and (h t)(n) = h(n) t
    let maps = hom_space(n, &star, HomKind::Left)?;
    let d = maps.len();
    let basis = SubspaceBasis {
        ambient_dim: n.dim() * star.dim(),
        vectors: maps.iter().map(|f| f.entries().to_vec()).collect(),
    };
    let coords = CoordinateMap::new(&basis);
    let act = |op: &dyn Fn(&Matrix<F>) -> Matrix<F>| -> Result<Matrix<F>> {
        let cols = maps
            .iter()
            .map(|f| coords.coordinates(op(f).entries()))
            .collect::<Result<Vec<_>>>()
            .map_err(|_| Error::Coherence("action leaves Hom_R(N, *M)".into()))?;
        Ok(Matrix::from_columns(d, &cols))
    };
    let la = n
        .right_action()
        .iter()
        .map(|r| act(&|f| f * r))
        .collect::<Result<Vec<_>>>()?;
    let ra = star
        .right_action()
        .iter()
        .map(|r| act(&|f| r * f))
        .collect::<Result<Vec<_>>>()?;
    let hom = Bimodule::new(n.right_algebra().clone(), m.left_algebra().clone(), d, la, ra)?;
    let tensor = tensor_over(n, &hom)?;
    let (dn, dh) = (n.dim(), d);
    let full = Matrix::from_fn(star.dim(), dn * dh, |row, col| maps[col % dh][(row, col / dh)].clone());
    let ev = tensor
        .descend(&full)
        .ok_or_else(|| Error::Coherence("evaluation is not balanced over S".into()))?;
    let ev = BimoduleMap::new(Arc::new(tensor.bimodule.clone()), Arc::new(star), ev)?;
    let evaluation_split = is_split_epi(&ev)?;
    let mn = tensor_over(m, n)?;
    let report = is_separable(&mn.bimodule)?;
    if evaluation_split.section().is_some() && !report.separable() {
        return Err(Error::Coherence(
            "split evaluation but M (x)_R N is not separable".into(),
        ));
    }
    Ok(TensorCriterion {
        evaluation_split,
        tensor: report,
    })
}

/// `N = Hom_R(X, M)` as a `(T, S)`-bimodule, `(t f)(x) = t f(x)`,
/// `(f s)(x) = f(s x)`.
#[derive(Clone, Debug)]
pub struct HomBimodule<F> {
    pub bimodule: Bimodule<F>,
    pub maps: Vec<Matrix<F>>,
}

pub fn hom_over_right<F: Field>(x: &Bimodule<F>, m: &Bimodule<F>) -> Result<HomBimodule<F>> {
    if x.right_algebra() != m.right_algebra() {
        return Err(Error::AlgebraMismatch(
            "Hom_R(X, M) needs a common right algebra".into(),
        ));
    }
    let pairs: Vec<_> = x
        .right_algebra()
        .generators()
        .iter()
        .map(|&g| (&x.right_action()[g], &m.right_action()[g]))
        .collect();
    let maps = intertwiners(x.dim(), m.dim(), &pairs);
    let d = maps.len();
    let basis = SubspaceBasis {
        ambient_dim: x.dim() * m.dim(),
        vectors: maps.iter().map(|f| f.entries().to_vec()).collect(),
    };
    let coords = CoordinateMap::new(&basis);
    let act = |op: &dyn Fn(&Matrix<F>) -> Matrix<F>| -> Result<Matrix<F>> {
        let cols = maps
            .iter()
            .map(|f| coords.coordinates(op(f).entries()))
            .collect::<Result<Vec<_>>>()
            .map_err(|_| Error::Coherence("action leaves Hom_R(X, M)".into()))?;
        Ok(Matrix::from_columns(d, &cols))
    };
    let la = m
        .left_action()
        .iter()
        .map(|l| act(&|f| l * f))
        .collect::<Result<Vec<_>>>()?;
    let ra = x
        .left_action()
        .iter()
        .map(|l| act(&|f| f * l))
        .collect::<Result<Vec<_>>>()?;
    let bimodule = Bimodule::new(m.left_algebra().clone(), x.left_algebra().clone(), d, la, ra)?;
    Ok(HomBimodule { bimodule, maps })
}

/// Result of the Hom transfer check.
#[derive(Clone, Debug)]
pub struct HomTransferReport<F> {
    pub hom: HomBimodule<F>,
    /// Section of the evaluation `N (x)_S X -> M`.
    pub evaluation_split: SplitEpi<F>,
    pub report: SeparabilityReport<F>,
    /// The statement of the result names `Hom_R(M, X)`; the object carrying
    /// the `(T, S)`-structure, and the one checked here, is `Hom_R(X, M)`.
    pub note: &'static str,
}

/// For separable `_T M_R` and biseparable `_S X_R`, certifies that
/// `Hom_R(X, M)` is a separable `(T, S)`-bimodule.
pub fn check_hom_transfer<F: Field>(m: &Bimodule<F>, x: &Bimodule<F>) -> Result<HomTransferReport<F>> {
    if !is_separable(m)?.separable() {
        return Err(Error::Precondition("M is not separable".into()));
    }
    if !is_biseparable(x)?.biseparable() {
        return Err(Error::Precondition("X is not biseparable".into()));
    }
    let hom = hom_over_right(x, m)?;
    let tensor = tensor_over(&hom.bimodule, x)?;
    let (dn, dx) = (hom.bimodule.dim(), x.dim());
    let full = Matrix::from_fn(m.dim(), dn * dx, |row, col| {
        let (k, b) = (col / dx, col % dx);
        hom.maps[k][(row, b)].clone()
    });
    let ev = tensor
        .descend(&full)
        .ok_or_else(|| Error::Coherence("evaluation is not balanced over S".into()))?;
    let ev = BimoduleMap::new(Arc::new(tensor.bimodule.clone()), Arc::new(m.clone()), ev)?;
    let evaluation_split = is_split_epi(&ev)?;
    if evaluation_split.section().is_none() {
        return Err(Error::Coherence("evaluation N (x)_S X -> M does not split".into()));
    }
    let report = is_separable(&hom.bimodule)?;
    if !report.separable() {
        return Err(Error::Coherence("Hom_R(X, M) is not separable".into()));
    }
    Ok(HomTransferReport {
        hom,
        evaluation_split,
        report,
        note: "statement names Hom_R(M, X); checked Hom_R(X, M), the object of the proof",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::field::{Fp, Rational};

    type Q = Rational;

    fn over_scalars<F: Field>(a: Algebra<F>) -> Bimodule<F> {
        let ext = RingExtension::scalars(Arc::new(a));
        regular_bimodules(&ext).top_base
    }

    #[test]
    fn regular_bimodule_is_separable() {
        let r = Bimodule::regular(Arc::new(Algebra::<Q>::cyclic_group(2)));
        let rep = is_separable(&r).unwrap();
        assert!(rep.separable());
        let e = rep.element.unwrap();
        assert_eq!(e.coords.len(), 2);
    }

    #[test]
    fn maschke_over_q_and_f2() {
        let q = is_separable(&over_scalars(Algebra::<Q>::cyclic_group(2))).unwrap();
        assert!(q.separable());
        assert!(matches!(q.split, SplitEpi::Section(_)));
        let f2 = is_separable(&over_scalars(Algebra::<Fp<2>>::cyclic_group(2))).unwrap();
        assert!(!f2.separable());
        assert_eq!(f2.split, SplitEpi::NoSection);
    }

    #[test]
    fn group_algebra_element_is_half_sum() {
        let m = over_scalars(Algebra::<Q>::cyclic_group(2));
        let e = is_separable(&m).unwrap().element.unwrap();
        // u(e) = 1 and the lift pairs each g with a functional
        let total: Vec<Q> = e
            .lifted()
            .iter()
            .map(|(mi, fi)| fi.apply(mi))
            .fold(vec![Q::from_i64(0); 2], |a, b| add_vectors(&a, &b));
        assert_eq!(total, vec![Q::from_i64(1), Q::from_i64(0)]);
    }

    #[test]
    fn dual_numbers_are_not_separable() {
        let m = over_scalars(Algebra::<Q>::truncated_polynomial(2));
        assert!(!is_separable(&m).unwrap().separable());
        assert!(!is_biseparable(&m).unwrap().biseparable());
    }

    #[test]
    fn matrix_algebra_over_q_is_biseparable() {
        let k = Algebra::<Q>::ground();
        let m = over_scalars(Algebra::matrix_algebra(&k, 2));
        assert!(is_biseparable(&m).unwrap().biseparable());
    }

    #[test]
    fn extension_verdicts() {
        let c2 = RingExtension::scalars(Arc::new(Algebra::<Q>::cyclic_group(2)));
        assert!(extension_is_separable(&c2).unwrap().separable());
        assert!(extension_is_split(&c2).unwrap().split());
        let c2f = RingExtension::scalars(Arc::new(Algebra::<Fp<2>>::cyclic_group(2)));
        assert!(!extension_is_separable(&c2f).unwrap().separable());
        assert!(extension_is_split(&c2f).unwrap().split());
        let dual = RingExtension::scalars(Arc::new(Algebra::<Q>::truncated_polynomial(2)));
        assert!(!extension_is_separable(&dual).unwrap().separable());
        assert!(extension_is_split(&dual).unwrap().split());
    }

    #[test]
    fn zero_bimodule_has_no_casimir() {
        let k = Arc::new(Algebra::<Q>::ground());
        let z = Bimodule::zero(k.clone(), k);
        let p = evaluation_map(&z).unwrap();
        assert_eq!(faithful_casimir(&p, &SearchConfig::default()).unwrap(), Search::None);
    }

    #[test]
    fn power_round_trip() {
        let m = over_scalars(Algebra::<Q>::cyclic_group(2));
        let e = is_separable(&m).unwrap().element.unwrap();
        for n in [1, 2, 3] {
            let en = sep_element_to_power(&e, n).unwrap();
            sep_element_from_power(&en, &m, n).unwrap();
        }
    }
}
