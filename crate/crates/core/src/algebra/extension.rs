use std::sync::Arc;

use super::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

/// A unital algebra homomorphism `S -> R`; `map` has the images of the basis
/// of `S` as its columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingExtension<F> {
    pub base: Arc<Algebra<F>>,
    pub top: Arc<Algebra<F>>,
    pub map: Matrix<F>,
}

impl<F: Field> RingExtension<F> {
    /// Checks that `map` is unital and multiplicative.
    pub fn new(base: Arc<Algebra<F>>, top: Arc<Algebra<F>>, map: Matrix<F>) -> Result<Self> {
        if map.rows() != top.dim() || map.cols() != base.dim() {
            return Err(Error::InvalidExtension(format!(
                "map is {}x{}, expected {}x{}",
                map.rows(),
                map.cols(),
                top.dim(),
                base.dim()
            )));
        }
        if map.apply(base.unit()) != top.unit() {
            return Err(Error::InvalidExtension("i(1) != 1".into()));
        }
        for i in 0..base.dim() {
            let ii = map.column(i);
            for j in 0..base.dim() {
                let lhs = map.apply(&base.mul(&base.basis_element(i), &base.basis_element(j)));
                let rhs = top.mul(&ii, &map.column(j));
                if lhs != rhs {
                    return Err(Error::InvalidExtension(format!("i(s{i} s{j}) != i(s{i}) i(s{j})")));
                }
            }
        }
        Ok(RingExtension { base, top, map })
    }

    /// The structure map `k -> R`.
    pub fn scalars(top: Arc<Algebra<F>>) -> Self {
        let map = Matrix::from_columns(top.dim(), &[top.unit().to_vec()]);
        RingExtension::new(Arc::new(Algebra::ground()), top, map).expect("unit map")
    }

    pub fn identity(alg: Arc<Algebra<F>>) -> Self {
        let map = Matrix::identity(alg.dim());
        RingExtension::new(alg.clone(), alg, map).expect("identity map")
    }

    /// The diagonal embedding `A -> M_n(A)`, `a -> a I`.
    pub fn diagonal(base: Arc<Algebra<F>>, n: usize) -> Self {
        let top = Algebra::matrix_algebra(&base, n);
        let d = base.dim();
        let map = Matrix::from_fn(top.dim(), d, |row, col| {
            let (pq, i) = (row / d, row % d);
            let (p, q) = (pq / n, pq % n);
            if p == q && i == col {
                F::one()
            } else {
                F::zero()
            }
        });
        RingExtension::new(base, Arc::new(top), map).expect("diagonal embedding")
    }

    /// Image of an element of the base.
    pub fn image(&self, s: &[F]) -> Vec<F> {
        self.map.apply(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    type Q = Rational;

    #[test]
    fn identity_and_diagonal() {
        let k = Arc::new(Algebra::<Q>::ground());
        let id = RingExtension::identity(k.clone());
        assert_eq!(id.map, Matrix::identity(1));
        let d = RingExtension::diagonal(k, 2);
        assert_eq!(d.top.dim(), 4);
        assert_eq!(d.image(&[Q::from_i64(1)]), d.top.unit());
    }

    #[test]
    fn group_element_to_shifted_nilpotent_fails() {
        let c2 = Arc::new(Algebra::<Q>::cyclic_group(2));
        let dual = Arc::new(Algebra::<Q>::truncated_polynomial(2));
        // 1 -> 1, g -> x + 1
        let map = Matrix::from_columns(
            2,
            &[
                vec![Q::from_i64(1), Q::from_i64(0)],
                vec![Q::from_i64(1), Q::from_i64(1)],
            ],
        );
        let err = RingExtension::new(c2, dual, map).unwrap_err();
        assert!(matches!(err, Error::InvalidExtension(_)));
    }
}
