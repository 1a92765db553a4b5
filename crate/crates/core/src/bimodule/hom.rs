use std::sync::Arc;

use super::{Bimodule, BimoduleMap};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{kernel_of_rows, solve_rows, zero_vector, Matrix};

/// Which actions a Hom space must respect.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HomKind {
    Left,
    Right,
    Bi,
}

/// Rows of the linear system `f A = B f` in the unknown `f` (`n_t x n_s`,
/// vectorized row-major).
pub(crate) fn commutation_rows<'a, F: Field>(a: &'a Matrix<F>, b: &'a Matrix<F>) -> impl Iterator<Item = Vec<F>> + 'a {
    let (n_s, n_t) = (a.rows(), b.rows());
    (0..n_t).flat_map(move |i| {
        (0..n_s).map(move |j| {
            let mut row = zero_vector::<F>(n_t * n_s);
            for k in 0..n_s {
                let x = &a[(k, j)];
                if !x.is_zero() {
                    row[i * n_s + k] = row[i * n_s + k].add_ref(x);
                }
            }
            for k in 0..n_t {
                let x = &b[(i, k)];
                if !x.is_zero() {
                    row[k * n_s + j] = row[k * n_s + j].sub_ref(x);
                }
            }
            row
        })
    })
}

pub(crate) fn unvec<F: Field>(rows: usize, cols: usize, v: Vec<F>) -> Matrix<F> {
    Matrix::new(rows, cols, v).expect("vectorized matrix")
}

/// Basis of `{f : f A_i = B_i f for all i}` for `f` of shape `n_t x n_s`.
pub fn intertwiners<F: Field>(n_s: usize, n_t: usize, pairs: &[(&Matrix<F>, &Matrix<F>)]) -> Vec<Matrix<F>> {
    let rows = pairs.iter().flat_map(|(a, b)| commutation_rows(a, b));
    kernel_of_rows(n_t * n_s, rows)
        .vectors
        .into_iter()
        .map(|v| unvec(n_t, n_s, v))
        .collect()
}

/// Action pairs `(A_g, B_g)` over generators for the requested side(s).
pub(crate) fn constraint_pairs<'a, F: Field>(
    m: &'a Bimodule<F>,
    n: &'a Bimodule<F>,
    kind: HomKind,
) -> Result<Vec<(&'a Matrix<F>, &'a Matrix<F>)>> {
    let mut pairs = Vec::new();
    if matches!(kind, HomKind::Left | HomKind::Bi) {
        if m.left_algebra() != n.left_algebra() {
            return Err(Error::AlgebraMismatch("left algebras differ".into()));
        }
        for &g in m.left_algebra().generators() {
            pairs.push((&m.left_action()[g], &n.left_action()[g]));
        }
    }
    if matches!(kind, HomKind::Right | HomKind::Bi) {
        if m.right_algebra() != n.right_algebra() {
            return Err(Error::AlgebraMismatch("right algebras differ".into()));
        }
        for &g in m.right_algebra().generators() {
            pairs.push((&m.right_action()[g], &n.right_action()[g]));
        }
    }
    Ok(pairs)
}

/// Basis of the maps `M -> N` commuting with the requested actions, as
/// `dim N x dim M` matrices. All constraints go through one elimination.
pub fn hom_space<F: Field>(m: &Bimodule<F>, n: &Bimodule<F>, kind: HomKind) -> Result<Vec<Matrix<F>>> {
    let pairs = constraint_pairs(m, n, kind)?;
    Ok(intertwiners(m.dim(), n.dim(), &pairs))
}

/// Outcome of [`is_split_epi`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitEpi<F> {
    /// A bimodule map `psi` with `phi psi = id`.
    Section(Matrix<F>),
    NotEpi,
    NoSection,
}

impl<F> SplitEpi<F> {
    pub fn section(&self) -> Option<&Matrix<F>> {
        match self {
            SplitEpi::Section(s) => Some(s),
            _ => None,
        }
    }
}

/// Decides whether `phi` splits as a bimodule map by solving for a section
/// `psi` in one linear system: intertwining constraints plus `phi psi = id`.
pub fn is_split_epi<F: Field>(phi: &BimoduleMap<F>) -> Result<SplitEpi<F>> {
    let (m, n) = (phi.source.dim(), phi.target.dim());
    if phi.rank() < n {
        return Ok(SplitEpi::NotEpi);
    }
    let pairs = constraint_pairs(&phi.target, &phi.source, HomKind::Bi)?;
    // psi is m x n; (phi psi)[i][j] = sum_k phi[i][k] psi[k][j]
    let identity_rows = (0..n).flat_map(|i| {
        (0..n).map(move |j| {
            let mut row = zero_vector::<F>(m * n);
            for k in 0..m {
                row[k * n + j] = phi.matrix[(i, k)].clone();
            }
            (row, if i == j { F::one() } else { F::zero() })
        })
    });
    let rows = pairs
        .iter()
        .flat_map(|(a, b)| commutation_rows(a, b).map(|r| (r, F::zero())))
        .chain(identity_rows);
    match solve_rows(m * n, rows) {
        Ok(sol) => {
            let psi = unvec(m, n, sol.particular);
            debug_assert!((&phi.matrix * &psi).is_identity());
            Ok(SplitEpi::Section(psi))
        }
        Err(Error::Inconsistent) => Ok(SplitEpi::NoSection),
        Err(e) => Err(e),
    }
}

/// `phi` transported along basis changes of its source and target; used to
/// re-solve split-epi questions with a different elimination order.
pub fn conjugated_map<F: Field>(
    phi: &BimoduleMap<F>,
    p_source: &Matrix<F>,
    p_target: &Matrix<F>,
) -> Result<BimoduleMap<F>> {
    let source = Arc::new(phi.source.conjugate(p_source)?);
    let target = Arc::new(phi.target.conjugate(p_target)?);
    let inv_t = p_target
        .inverse()
        .ok_or_else(|| Error::InvalidMap("basis change is singular".into()))?;
    let matrix = &(&inv_t * &phi.matrix) * p_source;
    BimoduleMap::new(source, target, matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::bimodule::LeftModule;
    use crate::field::Rational;

    type Q = Rational;

    #[test]
    fn scalars_of_the_field() {
        let k = Arc::new(Algebra::<Q>::ground());
        let r = Bimodule::regular(k);
        assert_eq!(hom_space(&r, &r, HomKind::Bi).unwrap().len(), 1);
    }

    #[test]
    fn schur_for_column_module() {
        let m2 = Arc::new(Algebra::<Q>::matrix_algebra(&Algebra::ground(), 2));
        let col = crate::fixtures::column_module(&m2);
        let b = col.to_bimodule();
        assert_eq!(hom_space(&b, &b, HomKind::Left).unwrap().len(), 1);
        let reg = LeftModule::regular(m2).to_bimodule();
        assert_eq!(hom_space(&b, &reg, HomKind::Left).unwrap().len(), 2);
    }

    #[test]
    fn identity_splits() {
        let c2 = Arc::new(Algebra::<Q>::cyclic_group(2));
        let r = Arc::new(Bimodule::regular(c2));
        let id = BimoduleMap::identity(r);
        assert_eq!(is_split_epi(&id).unwrap(), SplitEpi::Section(Matrix::identity(2)));
        let zero = BimoduleMap::new(id.source.clone(), id.target.clone(), Matrix::zeros(2, 2)).unwrap();
        assert_eq!(is_split_epi(&zero).unwrap(), SplitEpi::NotEpi);
    }

    #[test]
    fn mismatched_algebras() {
        let a = Bimodule::regular(Arc::new(Algebra::<Q>::cyclic_group(2)));
        let b = Bimodule::regular(Arc::new(Algebra::<Q>::truncated_polynomial(2)));
        assert!(matches!(
            hom_space(&a, &b, HomKind::Left),
            Err(Error::AlgebraMismatch(_))
        ));
    }
}
