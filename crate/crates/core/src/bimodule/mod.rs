//! Modules and bimodules given by action matrices, with duals, tensor
//! products, Hom spaces and the split-epi and isomorphism solvers.

mod dual;
mod hom;
mod iso;
mod tensor;

pub use dual::{dual_left, dual_right, evaluation_map, is_fgp, DualBasis, DualBimodule, Pairing, Side};
pub use hom::{conjugated_map, hom_space, intertwiners, is_split_epi, HomKind, SplitEpi};
pub use iso::{is_isomorphic, random_invertible};
pub use tensor::{tensor_over, TensorProduct};

use std::sync::Arc;

use crate::algebra::{linear_combination, Algebra, RingExtension};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

/// A left module over `algebra`, with `action[i]` the matrix of `b_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftModule<F> {
    algebra: Arc<Algebra<F>>,
    dim: usize,
    action: Vec<Matrix<F>>,
}

impl<F: Field> LeftModule<F> {
    pub fn new(algebra: Arc<Algebra<F>>, action: Vec<Matrix<F>>) -> Result<Self> {
        let dim = action.first().map_or(0, Matrix::rows);
        let m = LeftModule::from_parts(algebra, dim, action);
        m.validate()?;
        Ok(m)
    }

    /// Builds a module with zero-dimensional or unchecked data; prefer
    /// [`LeftModule::new`].
    pub fn from_parts(algebra: Arc<Algebra<F>>, dim: usize, action: Vec<Matrix<F>>) -> Self {
        LeftModule { algebra, dim, action }
    }

    pub fn zero(algebra: Arc<Algebra<F>>) -> Self {
        let action = (0..algebra.dim()).map(|_| Matrix::zeros(0, 0)).collect();
        LeftModule {
            algebra,
            dim: 0,
            action,
        }
    }

    pub fn regular(algebra: Arc<Algebra<F>>) -> Self {
        let action = algebra.left_regular().to_vec();
        LeftModule {
            dim: algebra.dim(),
            algebra,
            action,
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[Matrix<F>] {
        &self.action
    }

    /// Matrix of an arbitrary algebra element.
    pub fn act(&self, t: &[F]) -> Matrix<F> {
        linear_combination(self.dim, self.dim, t, &self.action)
    }

    pub fn validate(&self) -> Result<()> {
        check_representation(&self.algebra, self.dim, &self.action, false).map_err(Error::InvalidModule)
    }

    pub fn to_bimodule(&self) -> Bimodule<F> {
        let k = Arc::new(Algebra::ground());
        Bimodule {
            left: self.algebra.clone(),
            right: k,
            dim: self.dim,
            left_action: self.action.clone(),
            right_action: vec![Matrix::identity(self.dim)],
        }
    }

    /// Restriction along `i: S -> T` to an `S`-module.
    pub fn restrict(&self, ext: &RingExtension<F>) -> Result<Self> {
        if *ext.top != *self.algebra {
            return Err(Error::AlgebraMismatch(
                "restriction along an extension of another algebra".into(),
            ));
        }
        let action = (0..ext.base.dim()).map(|s| self.act(&ext.map.column(s))).collect();
        Ok(LeftModule::from_parts(ext.base.clone(), self.dim, action))
    }

    /// The submodule spanned by `basis` (columns of the returned embedding),
    /// which must be invariant.
    pub fn submodule(&self, basis: &crate::linalg::SubspaceBasis<F>) -> Result<(Self, Matrix<F>)> {
        let coords = basis.coordinates();
        let emb = basis.as_columns();
        let mut action = Vec::with_capacity(self.action.len());
        for a in &self.action {
            let cols = basis
                .vectors
                .iter()
                .map(|v| coords.coordinates(&a.apply(v)))
                .collect::<Result<Vec<_>>>()
                .map_err(|_| Error::InvalidModule("subspace is not a submodule".into()))?;
            action.push(Matrix::from_columns(basis.dim(), &cols));
        }
        Ok((LeftModule::from_parts(self.algebra.clone(), basis.dim(), action), emb))
    }

    /// The quotient by an invariant subspace, with its projection.
    pub fn quotient(&self, sub: &crate::linalg::SubspaceBasis<F>) -> (Self, crate::linalg::Quotient<F>) {
        let qt = crate::linalg::quotient(self.dim, sub.vectors.iter().cloned());
        let action = self
            .action
            .iter()
            .map(|a| &(&qt.projection * a) * &qt.section)
            .collect();
        (LeftModule::from_parts(self.algebra.clone(), qt.dim(), action), qt)
    }

    /// Transports the module structure along an invertible matrix `p`:
    /// the new action is `p^-1 L p`.
    pub fn conjugate(&self, p: &Matrix<F>) -> Result<Self> {
        let inv = p
            .inverse()
            .ok_or_else(|| Error::InvalidMap("basis change is singular".into()))?;
        let action = self.action.iter().map(|a| &(&inv * a) * p).collect();
        Ok(LeftModule::from_parts(self.algebra.clone(), self.dim, action))
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch(
                "direct sum of modules over different algebras".into(),
            ));
        }
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| Matrix::block_diag(&[a, b]))
            .collect();
        Ok(LeftModule::from_parts(
            self.algebra.clone(),
            self.dim + other.dim,
            action,
        ))
    }

    /// Whether `f: self -> target` is a module map.
    pub fn is_hom(&self, target: &Self, f: &Matrix<F>) -> bool {
        f.rows() == target.dim
            && f.cols() == self.dim
            && self
                .algebra
                .generators()
                .iter()
                .all(|&g| &target.action[g] * f == f * &self.action[g])
    }
}

/// A `(T, R)`-bimodule. `left_action[i]` is `m -> t_i m` and
/// `right_action[j]` is `m -> m r_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule<F> {
    left: Arc<Algebra<F>>,
    right: Arc<Algebra<F>>,
    dim: usize,
    left_action: Vec<Matrix<F>>,
    right_action: Vec<Matrix<F>>,
}

impl<F: Field> Bimodule<F> {
    pub fn new(
        left: Arc<Algebra<F>>,
        right: Arc<Algebra<F>>,
        dim: usize,
        left_action: Vec<Matrix<F>>,
        right_action: Vec<Matrix<F>>,
    ) -> Result<Self> {
        let b = Bimodule::from_parts(left, right, dim, left_action, right_action);
        b.validate()?;
        Ok(b)
    }

    pub fn from_parts(
        left: Arc<Algebra<F>>,
        right: Arc<Algebra<F>>,
        dim: usize,
        left_action: Vec<Matrix<F>>,
        right_action: Vec<Matrix<F>>,
    ) -> Self {
        Bimodule {
            left,
            right,
            dim,
            left_action,
            right_action,
        }
    }

    pub fn zero(left: Arc<Algebra<F>>, right: Arc<Algebra<F>>) -> Self {
        let la = (0..left.dim()).map(|_| Matrix::zeros(0, 0)).collect();
        let ra = (0..right.dim()).map(|_| Matrix::zeros(0, 0)).collect();
        Bimodule::from_parts(left, right, 0, la, ra)
    }

    /// `_T T_T`.
    pub fn regular(alg: Arc<Algebra<F>>) -> Self {
        Bimodule {
            dim: alg.dim(),
            left_action: alg.left_regular().to_vec(),
            right_action: alg.right_regular().to_vec(),
            left: alg.clone(),
            right: alg,
        }
    }

    pub fn left_algebra(&self) -> &Arc<Algebra<F>> {
        &self.left
    }

    pub fn right_algebra(&self) -> &Arc<Algebra<F>> {
        &self.right
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_action(&self) -> &[Matrix<F>] {
        &self.left_action
    }

    pub fn right_action(&self) -> &[Matrix<F>] {
        &self.right_action
    }

    pub fn act_left(&self, t: &[F]) -> Matrix<F> {
        linear_combination(self.dim, self.dim, t, &self.left_action)
    }

    pub fn act_right(&self, r: &[F]) -> Matrix<F> {
        linear_combination(self.dim, self.dim, r, &self.right_action)
    }

    /// Checks both representation identities and that the actions commute.
    pub fn validate(&self) -> Result<()> {
        check_representation(&self.left, self.dim, &self.left_action, false)
            .map_err(|m| Error::InvalidModule(format!("left action: {m}")))?;
        check_representation(&self.right, self.dim, &self.right_action, true)
            .map_err(|m| Error::InvalidModule(format!("right action: {m}")))?;
        for &g in self.left.generators() {
            for &h in self.right.generators() {
                let (l, r) = (&self.left_action[g], &self.right_action[h]);
                if l * r != r * l {
                    return Err(Error::InvalidModule(format!("left t{g} and right r{h} do not commute")));
                }
            }
        }
        Ok(())
    }

    /// The underlying left module.
    pub fn left_module(&self) -> LeftModule<F> {
        LeftModule::from_parts(self.left.clone(), self.dim, self.left_action.clone())
    }

    /// The underlying right module as a left module over the opposite
    /// algebra (same basis, `r` acting by `m -> m r`).
    pub fn right_module_op(&self) -> LeftModule<F> {
        LeftModule::from_parts(Arc::new(self.right.opposite()), self.dim, self.right_action.clone())
    }

    /// `_{S}M_{R}` from `_{T}M_{R}` along `i: S -> T`.
    pub fn restrict_left(&self, ext: &RingExtension<F>) -> Result<Self> {
        if *ext.top != *self.left {
            return Err(Error::AlgebraMismatch(
                "left restriction along an unrelated extension".into(),
            ));
        }
        let la = (0..ext.base.dim()).map(|s| self.act_left(&ext.map.column(s))).collect();
        Ok(Bimodule::from_parts(
            ext.base.clone(),
            self.right.clone(),
            self.dim,
            la,
            self.right_action.clone(),
        ))
    }

    /// `_{T}M_{S}` from `_{T}M_{R}` along `i: S -> R`.
    pub fn restrict_right(&self, ext: &RingExtension<F>) -> Result<Self> {
        if *ext.top != *self.right {
            return Err(Error::AlgebraMismatch(
                "right restriction along an unrelated extension".into(),
            ));
        }
        let ra = (0..ext.base.dim())
            .map(|s| self.act_right(&ext.map.column(s)))
            .collect();
        Ok(Bimodule::from_parts(
            self.left.clone(),
            ext.base.clone(),
            self.dim,
            self.left_action.clone(),
            ra,
        ))
    }

    /// Transports the structure along an invertible basis change `p`.
    pub fn conjugate(&self, p: &Matrix<F>) -> Result<Self> {
        let inv = p
            .inverse()
            .ok_or_else(|| Error::InvalidMap("basis change is singular".into()))?;
        let conj = |a: &Matrix<F>| &(&inv * a) * p;
        Ok(Bimodule::from_parts(
            self.left.clone(),
            self.right.clone(),
            self.dim,
            self.left_action.iter().map(conj).collect(),
            self.right_action.iter().map(conj).collect(),
        ))
    }

    /// The smallest sub-bimodule containing `vectors`.
    pub fn generated(&self, vectors: impl IntoIterator<Item = Vec<F>>) -> crate::linalg::SubspaceBasis<F> {
        let mut span = crate::linalg::SubspaceBasis::span(self.dim, vectors);
        loop {
            let images: Vec<Vec<F>> = span
                .vectors
                .iter()
                .flat_map(|v| {
                    self.left_action
                        .iter()
                        .chain(&self.right_action)
                        .map(move |a| a.apply(v))
                })
                .collect();
            let next = crate::linalg::SubspaceBasis::span(self.dim, span.vectors.iter().cloned().chain(images));
            if next.dim() == span.dim() {
                return span;
            }
            span = next;
        }
    }

    /// The sub-bimodule on an invariant subspace, with its embedding.
    pub fn submodule(&self, basis: &crate::linalg::SubspaceBasis<F>) -> Result<(Self, Matrix<F>)> {
        let coords = basis.coordinates();
        let restrict = |a: &Matrix<F>| -> Result<Matrix<F>> {
            let cols = basis
                .vectors
                .iter()
                .map(|v| coords.coordinates(&a.apply(v)))
                .collect::<Result<Vec<_>>>()
                .map_err(|_| Error::InvalidModule("subspace is not a sub-bimodule".into()))?;
            Ok(Matrix::from_columns(basis.dim(), &cols))
        };
        let la = self.left_action.iter().map(restrict).collect::<Result<Vec<_>>>()?;
        let ra = self.right_action.iter().map(restrict).collect::<Result<Vec<_>>>()?;
        Ok((
            Bimodule::from_parts(self.left.clone(), self.right.clone(), basis.dim(), la, ra),
            basis.as_columns(),
        ))
    }

    /// The quotient by an invariant subspace.
    pub fn quotient(&self, sub: &crate::linalg::SubspaceBasis<F>) -> (Self, crate::linalg::Quotient<F>) {
        let qt = crate::linalg::quotient(self.dim, sub.vectors.iter().cloned());
        let push = |a: &Matrix<F>| &(&qt.projection * a) * &qt.section;
        let la = self.left_action.iter().map(push).collect();
        let ra = self.right_action.iter().map(push).collect();
        (
            Bimodule::from_parts(self.left.clone(), self.right.clone(), qt.dim(), la, ra),
            qt,
        )
    }

    /// `M + N` with block-diagonal actions (basis of `M` first).
    pub fn direct_sum(&self, other: &Self) -> Result<DirectSum<F>> {
        if self.left != other.left || self.right != other.right {
            return Err(Error::AlgebraMismatch(
                "direct sum of bimodules over different algebras".into(),
            ));
        }
        let la = self
            .left_action
            .iter()
            .zip(&other.left_action)
            .map(|(a, b)| Matrix::block_diag(&[a, b]))
            .collect();
        let ra = self
            .right_action
            .iter()
            .zip(&other.right_action)
            .map(|(a, b)| Matrix::block_diag(&[a, b]))
            .collect();
        let sum = Bimodule::from_parts(self.left.clone(), self.right.clone(), self.dim + other.dim, la, ra);
        Ok(DirectSum::new(sum, &[self.dim, other.dim]))
    }

    /// `M^n`.
    pub fn power(&self, n: usize) -> DirectSum<F> {
        let la = self.left_action.iter().map(|a| Matrix::identity(n).kron(a)).collect();
        let ra = self.right_action.iter().map(|a| Matrix::identity(n).kron(a)).collect();
        let sum = Bimodule::from_parts(self.left.clone(), self.right.clone(), self.dim * n, la, ra);
        DirectSum::new(sum, &vec![self.dim; n])
    }
}

/// A direct sum with its inclusions and projections.
#[derive(Clone, Debug)]
pub struct DirectSum<F> {
    pub sum: Bimodule<F>,
    pub inclusions: Vec<Matrix<F>>,
    pub projections: Vec<Matrix<F>>,
}

impl<F: Field> DirectSum<F> {
    fn new(sum: Bimodule<F>, dims: &[usize]) -> Self {
        let total: usize = dims.iter().sum();
        let mut inclusions = Vec::new();
        let mut projections = Vec::new();
        let mut offset = 0;
        for &d in dims {
            let mut inc = Matrix::zeros(total, d);
            inc.set_block(offset, 0, &Matrix::identity(d));
            projections.push(inc.transpose());
            inclusions.push(inc);
            offset += d;
        }
        DirectSum {
            sum,
            inclusions,
            projections,
        }
    }
}

/// A linear map between bimodules that intertwines both actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleMap<F> {
    pub source: Arc<Bimodule<F>>,
    pub target: Arc<Bimodule<F>>,
    pub matrix: Matrix<F>,
}

impl<F: Field> BimoduleMap<F> {
    pub fn new(source: Arc<Bimodule<F>>, target: Arc<Bimodule<F>>, matrix: Matrix<F>) -> Result<Self> {
        let map = BimoduleMap { source, target, matrix };
        map.validate()?;
        Ok(map)
    }

    pub fn identity(m: Arc<Bimodule<F>>) -> Self {
        let matrix = Matrix::identity(m.dim());
        BimoduleMap {
            source: m.clone(),
            target: m,
            matrix,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (s, t, f) = (&self.source, &self.target, &self.matrix);
        if s.left != t.left || s.right != t.right {
            return Err(Error::AlgebraMismatch(
                "map between bimodules over different algebras".into(),
            ));
        }
        if f.rows() != t.dim || f.cols() != s.dim {
            return Err(Error::InvalidMap(format!(
                "matrix is {}x{}, expected {}x{}",
                f.rows(),
                f.cols(),
                t.dim,
                s.dim
            )));
        }
        for &g in s.left.generators() {
            if &t.left_action[g] * f != f * &s.left_action[g] {
                return Err(Error::InvalidMap(format!("does not commute with left t{g}")));
            }
        }
        for &g in s.right.generators() {
            if &t.right_action[g] * f != f * &s.right_action[g] {
                return Err(Error::InvalidMap(format!("does not commute with right r{g}")));
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

/// The bimodules `_R R_S`, `_S R_R`, `_S R_S` and `_S S_S` of an extension.
#[derive(Clone, Debug)]
pub struct RegularBimodules<F> {
    pub top_base: Bimodule<F>,
    pub base_top: Bimodule<F>,
    pub base_base: Bimodule<F>,
    pub base_regular: Bimodule<F>,
}

pub fn regular_bimodules<F: Field>(ext: &RingExtension<F>) -> RegularBimodules<F> {
    let reg = Bimodule::regular(ext.top.clone());
    let top_base = reg.restrict_right(ext).expect("extension top");
    let base_top = reg.restrict_left(ext).expect("extension top");
    let base_base = top_base.restrict_left(ext).expect("extension top");
    RegularBimodules {
        top_base,
        base_top,
        base_base,
        base_regular: Bimodule::regular(ext.base.clone()),
    }
}

/// Checks that `a_i` is a representation of `alg` (an anti-representation
/// when `right` is set). Products are only tested against generators,
/// which suffices once the unit acts as the identity.
fn check_representation<F: Field>(
    alg: &Algebra<F>,
    dim: usize,
    a: &[Matrix<F>],
    right: bool,
) -> std::result::Result<(), String> {
    let n = alg.dim();
    if a.len() != n {
        return Err(format!("{} action matrices for an algebra of dimension {n}", a.len()));
    }
    if let Some(i) = a.iter().position(|m| m.rows() != dim || m.cols() != dim) {
        return Err(format!("action matrix {i} is not {dim}x{dim}"));
    }
    if !linear_combination(dim, dim, alg.unit(), a).is_identity() {
        return Err("the unit does not act as the identity".into());
    }
    for i in 0..n {
        for &g in alg.generators() {
            // left: a(b_i b_g) = a_i a_g ; right: a(b_i b_g) = a_g a_i
            let prod = alg.mul(&alg.basis_element(i), &alg.basis_element(g));
            let expected = linear_combination(dim, dim, &prod, a);
            let actual = if right { &a[g] * &a[i] } else { &a[i] * &a[g] };
            if expected != actual {
                return Err(format!("action fails on the product b{i} b{g}"));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    type Q = Rational;

    fn m2() -> Arc<Algebra<Q>> {
        Arc::new(Algebra::matrix_algebra(&Algebra::ground(), 2))
    }

    #[test]
    fn regular_bimodules_validate() {
        let k = Arc::new(Algebra::<Q>::ground());
        assert!(Bimodule::regular(k).validate().is_ok());
        let ext = RingExtension::scalars(m2());
        let regs = regular_bimodules(&ext);
        assert_eq!(regs.base_base.dim(), 4);
        assert!(regs.base_base.left_action()[0].is_identity());
        for b in [&regs.top_base, &regs.base_top, &regs.base_base, &regs.base_regular] {
            b.validate().unwrap();
        }
        let c2 = RingExtension::scalars(Arc::new(Algebra::<Q>::cyclic_group(2)));
        regular_bimodules(&c2).base_top.validate().unwrap();
    }

    #[test]
    fn non_commuting_actions_rejected() {
        let c2 = Arc::new(Algebra::<Q>::cyclic_group(2));
        let g = c2.left_regular()[1].clone();
        // g acting on both sides commutes, but a shear on the right does not
        let shear = Matrix::from_rows(
            2,
            &[
                vec![Q::from_i64(1), Q::from_i64(1)],
                vec![Q::from_i64(0), Q::from_i64(1)],
            ],
        )
        .unwrap();
        let bad = Bimodule::new(
            c2.clone(),
            Arc::new(Algebra::truncated_polynomial(2)),
            2,
            vec![Matrix::identity(2), g],
            vec![Matrix::identity(2), &shear - &Matrix::identity(2)],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn power_matches_kron_oracle() {
        let m = Bimodule::regular(Arc::new(Algebra::<Q>::cyclic_group(2)));
        let p = m.power(3);
        assert_eq!(p.sum.dim(), 6);
        p.sum.validate().unwrap();
        for (i, a) in m.left_action().iter().enumerate() {
            assert_eq!(p.sum.left_action()[i], Matrix::identity(3).kron(a));
            let ds = m.direct_sum(&m).unwrap();
            assert_eq!(ds.sum.left_action()[i], Matrix::block_diag(&[a, a]));
        }
        assert!((&p.projections[1] * &p.inclusions[1]).is_identity());
        assert!((&p.projections[0] * &p.inclusions[2]).is_zero());
    }
}
