//! The adjunction `F = M (x)_R -`, `G = Hom_T(M, -)` of a bimodule, counit
//! approximations, projective and injective resolutions, and the transfer
//! of homological data along separable extensions.

mod resolution;
mod transfer;

pub use resolution::{
    dom_dim, injective_resolution, is_projective, minimal_resolution, proj_dim, DomDim, InjectiveResolution, ProjDim,
    ProjectiveResolution, Projectives, DEFAULT_CUTOFF,
};
pub use transfer::{
    change_of_rings_check, compare_dom_dim, compare_findim, findim_lower_bound, reflect_approximation,
    restricted_factorizations, separable_retraction, verify_induction_bounds, ChangeOfRings, DimComparison,
    InductionItem, InductionReport,
};

use std::sync::Arc;

use crate::bimodule::{hom_space, intertwiners, tensor_over, Bimodule, HomKind, LeftModule, TensorProduct};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::fixtures::NamedModule;
use crate::linalg::{unit_vector, CoordinateMap, Matrix, SubspaceBasis};
use crate::separability::SeparabilityElement;

/// `F(X) = M (x)_R X` with its tensor presentation.
#[derive(Clone, Debug)]
pub struct Induced<F> {
    pub module: LeftModule<F>,
    pub tensor: TensorProduct<F>,
}

/// `G(Y) = Hom_T(M, Y)` with `(r f)(m) = f(m r)`.
#[derive(Clone, Debug)]
pub struct HomModule<F> {
    pub module: LeftModule<F>,
    /// Basis maps, `dim Y x dim M`.
    pub maps: Vec<Matrix<F>>,
    coords: CoordinateMap<F>,
}

impl<F: Field> HomModule<F> {
    pub fn coordinates(&self, f: &Matrix<F>) -> Result<Vec<F>> {
        self.coords.coordinates(f.entries())
    }

    pub fn map(&self, c: &[F]) -> Matrix<F> {
        let (r, k) = self.maps.first().map_or((0, 0), |m| (m.rows(), m.cols()));
        crate::algebra::linear_combination(r, k, c, &self.maps)
    }
}

/// A factorization `psi = f phi` through the arrow of a witness.
#[derive(Clone, Debug)]
pub struct Factorization<F> {
    pub test: String,
    pub psi: Matrix<F>,
    pub phi: Matrix<F>,
}

/// An arrow `f: X1 -> X` together with factorizations of test maps.
#[derive(Clone, Debug)]
pub struct ApproximationWitness<F> {
    pub arrow: Matrix<F>,
    pub factorizations: Vec<Factorization<F>>,
}

impl<F: Field> ApproximationWitness<F> {
    pub fn validate(&self) -> Result<()> {
        for fac in &self.factorizations {
            if &self.arrow * &fac.phi != fac.psi {
                return Err(Error::Coherence(format!(
                    "factorization of {} does not compose",
                    fac.test
                )));
            }
        }
        Ok(())
    }
}

/// The counit `FG(Y) -> Y` with the objects it is built from.
#[derive(Clone, Debug)]
pub struct Counit<F> {
    pub g: HomModule<F>,
    pub fg: Induced<F>,
    pub map: Matrix<F>,
}

/// The unit `X -> GF(X)`.
#[derive(Clone, Debug)]
pub struct Unit<F> {
    pub f: Induced<F>,
    pub gf: HomModule<F>,
    pub map: Matrix<F>,
}

/// Splitting `u^N v^N = id` of the counit at `N` from a separability element.
#[derive(Clone, Debug)]
pub struct CounitSplitting<F> {
    pub counit: Counit<F>,
    pub section: Matrix<F>,
}

/// The adjoint pair of a `(T, R)`-bimodule `M`.
#[derive(Clone, Debug)]
pub struct Adjunction<F> {
    pub bimodule: Arc<Bimodule<F>>,
}

impl<F: Field> Adjunction<F> {
    pub fn new(m: Bimodule<F>) -> Self {
        Adjunction { bimodule: Arc::new(m) }
    }

    /// `F(X)` for a left `R`-module `X`.
    pub fn induce(&self, x: &LeftModule<F>) -> Result<Induced<F>> {
        if x.algebra() != self.bimodule.right_algebra() {
            return Err(Error::AlgebraMismatch(
                "F expects a module over the right algebra of M".into(),
            ));
        }
        let tensor = tensor_over(&self.bimodule, &x.to_bimodule())?;
        let module = tensor.bimodule.left_module();
        Ok(Induced { module, tensor })
    }

    /// `G(Y)` for a left `T`-module `Y`.
    pub fn restrict_hom(&self, y: &LeftModule<F>) -> Result<HomModule<F>> {
        let m = &self.bimodule;
        if y.algebra() != m.left_algebra() {
            return Err(Error::AlgebraMismatch(
                "G expects a module over the left algebra of M".into(),
            ));
        }
        let pairs: Vec<_> = m
            .left_algebra()
            .generators()
            .iter()
            .map(|&g| (&m.left_action()[g], &y.action()[g]))
            .collect();
        let maps = intertwiners(m.dim(), y.dim(), &pairs);
        let basis = SubspaceBasis {
            ambient_dim: m.dim() * y.dim(),
            vectors: maps.iter().map(|f| f.entries().to_vec()).collect(),
        };
        let coords = CoordinateMap::new(&basis);
        let d = maps.len();
        let action = m
            .right_action()
            .iter()
            .map(|r| {
                let cols = maps
                    .iter()
                    .map(|f| coords.coordinates((f * r).entries()))
                    .collect::<Result<Vec<_>>>()
                    .map_err(|_| Error::Coherence("f(- r) is not T-linear".into()))?;
                Ok(Matrix::from_columns(d, &cols))
            })
            .collect::<Result<Vec<_>>>()?;
        let module = LeftModule::from_parts(m.right_algebra().clone(), d, action);
        Ok(HomModule { module, maps, coords })
    }

    fn counit_from(&self, g: HomModule<F>, y: &LeftModule<F>) -> Result<Counit<F>> {
        let fg = self.induce(&g.module)?;
        let dm = self.bimodule.dim();
        let dg = g.maps.len();
        let full = Matrix::from_fn(y.dim(), dm * dg, |row, col| g.maps[col % dg][(row, col / dg)].clone());
        let map = fg
            .tensor
            .descend(&full)
            .ok_or_else(|| Error::Coherence("counit is not balanced over R".into()))?;
        Ok(Counit { g, fg, map })
    }

    /// `epsilon_Y(m (x) f) = f(m)`.
    pub fn counit(&self, y: &LeftModule<F>) -> Result<Counit<F>> {
        let g = self.restrict_hom(y)?;
        self.counit_from(g, y)
    }

    /// `eta_X(x)(m) = m (x) x`.
    pub fn unit(&self, x: &LeftModule<F>) -> Result<Unit<F>> {
        let f = self.induce(x)?;
        let gf = self.restrict_hom(&f.module)?;
        let map = self.unit_into(&f, &gf, x.dim())?;
        Ok(Unit { f, gf, map })
    }

    fn unit_into(&self, f: &Induced<F>, gf: &HomModule<F>, dx: usize) -> Result<Matrix<F>> {
        let dm = self.bimodule.dim();
        let cols = (0..dx)
            .map(|b| {
                let xb = unit_vector(dx, b);
                let cols: Vec<Vec<F>> = (0..dm).map(|a| f.tensor.class(&unit_vector(dm, a), &xb)).collect();
                gf.coordinates(&Matrix::from_columns(f.module.dim(), &cols))
            })
            .collect::<Result<Vec<_>>>()
            .map_err(|_| Error::Coherence("m -> m (x) x is not T-linear".into()))?;
        Ok(Matrix::from_columns(gf.maps.len(), &cols))
    }

    /// `G(h) = h o -` from `G(Y1)` to `G(Y2)`.
    fn g_of(&self, h: &Matrix<F>, source: &HomModule<F>, target: &HomModule<F>) -> Result<Matrix<F>> {
        let cols = source
            .maps
            .iter()
            .map(|f| target.coordinates(&(h * f)))
            .collect::<Result<Vec<_>>>()
            .map_err(|_| Error::Coherence("G(h) leaves the Hom space".into()))?;
        Ok(Matrix::from_columns(target.maps.len(), &cols))
    }

    /// Checks `epsilon_F(X) F(eta_X) = id` and `G(epsilon_Y) eta_G(Y) = id`.
    pub fn check_triangles(&self, x: &LeftModule<F>, y: &LeftModule<F>) -> Result<()> {
        let unit = self.unit(x)?;
        let counit = self.counit_from(unit.gf.clone(), &unit.f.module)?;
        let f_eta = unit
            .f
            .tensor
            .induced(&counit.fg.tensor, &Matrix::identity(self.bimodule.dim()), &unit.map);
        if !(&counit.map * &f_eta).is_identity() {
            return Err(Error::Coherence("epsilon F o F eta != id".into()));
        }
        let counit = self.counit(y)?;
        let gfg = self.restrict_hom(&counit.fg.module)?;
        let eta = self.unit_into(&counit.fg, &gfg, counit.g.maps.len())?;
        let g_eps = self.g_of(&counit.map, &gfg, &counit.g)?;
        if !(&g_eps * &eta).is_identity() {
            return Err(Error::Coherence("G epsilon o eta G != id".into()));
        }
        Ok(())
    }

    /// For a `T`-map `f: F(C) -> Y`, returns `phi = F(G(f) eta_C)` with
    /// `f = epsilon_Y phi`, and the counit used.
    pub fn factor_through_counit(
        &self,
        c: &LeftModule<F>,
        y: &LeftModule<F>,
        f: &Matrix<F>,
    ) -> Result<(Matrix<F>, Counit<F>)> {
        let counit = self.counit(y)?;
        let phi = self.factor_with(c, y, f, &counit)?;
        Ok((phi, counit))
    }

    fn factor_with(
        &self,
        c: &LeftModule<F>,
        y: &LeftModule<F>,
        f: &Matrix<F>,
        counit: &Counit<F>,
    ) -> Result<Matrix<F>> {
        let unit = self.unit(c)?;
        if !unit.f.module.is_hom(y, f) {
            return Err(Error::InvalidMap("f is not a T-linear map out of F(C)".into()));
        }
        let gf = self.g_of(f, &unit.gf, &counit.g)?;
        let comp = &gf * &unit.map;
        let phi = unit
            .f
            .tensor
            .induced(&counit.fg.tensor, &Matrix::identity(self.bimodule.dim()), &comp);
        if &counit.map * &phi != *f {
            return Err(Error::Coherence("f != epsilon_Y F(G(f) eta_C)".into()));
        }
        Ok(phi)
    }

    /// Factors every basis map `F(C) -> Y` through the counit at `Y`.
    pub fn approximate(&self, y: &LeftModule<F>, catalog: &[NamedModule<F>]) -> Result<ApproximationWitness<F>> {
        let counit = self.counit(y)?;
        let mut factorizations = Vec::new();
        for c in catalog {
            let fc = self.induce(&c.module)?;
            for (k, psi) in hom_space(&fc.module.to_bimodule(), &y.to_bimodule(), HomKind::Left)?
                .into_iter()
                .enumerate()
            {
                let phi = self.factor_with(&c.module, y, &psi, &counit)?;
                factorizations.push(Factorization {
                    test: format!("{}#{k}", c.name),
                    psi,
                    phi,
                });
            }
        }
        let w = ApproximationWitness {
            arrow: counit.map,
            factorizations,
        };
        w.validate()?;
        Ok(w)
    }
}

/// `u^N` and `v^N(x) = sum m_j (x) (f_j . x)` for a separable `M` and a
/// left `T`-module `N`; verifies `T`-linearity and `u^N v^N = id`.
pub fn split_counit<F: Field>(e: &SeparabilityElement<F>, n: &LeftModule<F>) -> Result<CounitSplitting<F>> {
    e.validate()?;
    let adj = Adjunction {
        bimodule: e.pairing.module.clone(),
    };
    let counit = adj.counit(n)?;
    let m = &adj.bimodule;
    let lifted = e.lifted();
    let mut cols = Vec::with_capacity(n.dim());
    for b in 0..n.dim() {
        let x = unit_vector(n.dim(), b);
        let mut acc = crate::linalg::zero_vector::<F>(counit.fg.module.dim());
        for (mj, fj) in &lifted {
            // (m)(f_j . x) = f_j(m) x
            let fx: Vec<Vec<F>> = (0..m.dim()).map(|a| n.act(&fj.column(a)).apply(&x)).collect();
            let g = counit
                .g
                .coordinates(&Matrix::from_columns(n.dim(), &fx))
                .map_err(|_| Error::Coherence("f_j . x is not T-linear".into()))?;
            acc = crate::linalg::add_vectors(&acc, &counit.fg.tensor.class(mj, &g));
        }
        cols.push(acc);
    }
    let section = Matrix::from_columns(counit.fg.module.dim(), &cols);
    if !n.is_hom(&counit.fg.module, &section) {
        return Err(Error::Coherence("v^N is not T-linear".into()));
    }
    if !(&counit.map * &section).is_identity() {
        return Err(Error::Coherence("u^N v^N != id".into()));
    }
    Ok(CounitSplitting { counit, section })
}
