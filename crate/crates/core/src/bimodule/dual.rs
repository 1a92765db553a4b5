use std::sync::Arc;

use super::hom::{hom_space, HomKind};
use super::tensor::{tensor_over, TensorProduct};
use super::{Bimodule, BimoduleMap};
use crate::algebra::linear_combination;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{solve_rows, zero_vector, CoordinateMap, Matrix, SubspaceBasis};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// A dual `*M = Hom_T(M, T)` or `M* = Hom_R(M, R)` of a `(T, R)`-bimodule,
/// as an `(R, T)`-bimodule on a basis of functionals.
#[derive(Clone, Debug)]
pub struct DualBimodule<F> {
    pub bimodule: Bimodule<F>,
    /// Basis functionals, each `dim(codomain algebra) x dim M`.
    pub functionals: Vec<Matrix<F>>,
    pub side: Side,
    coords: CoordinateMap<F>,
}

impl<F: Field> DualBimodule<F> {
    fn new(
        functionals: Vec<Matrix<F>>,
        side: Side,
        left: Arc<crate::algebra::Algebra<F>>,
        right: Arc<crate::algebra::Algebra<F>>,
        left_op: impl Fn(usize, &Matrix<F>) -> Matrix<F>,
        right_op: impl Fn(usize, &Matrix<F>) -> Matrix<F>,
    ) -> Result<Self> {
        let d = functionals.len();
        let ambient = functionals.first().map_or(0, |f| f.rows() * f.cols());
        let basis = SubspaceBasis {
            ambient_dim: ambient,
            vectors: functionals.iter().map(|f| f.entries().to_vec()).collect(),
        };
        let coords = CoordinateMap::new(&basis);
        let act = |op: &dyn Fn(usize, &Matrix<F>) -> Matrix<F>, i: usize| -> Result<Matrix<F>> {
            let cols = functionals
                .iter()
                .map(|f| coords.coordinates(op(i, f).entries()))
                .collect::<Result<Vec<_>>>()
                .map_err(|_| Error::Coherence("dual action leaves the functional space".into()))?;
            Ok(Matrix::from_columns(d, &cols))
        };
        let la = (0..left.dim()).map(|i| act(&left_op, i)).collect::<Result<Vec<_>>>()?;
        let ra = (0..right.dim())
            .map(|i| act(&right_op, i))
            .collect::<Result<Vec<_>>>()?;
        let bimodule = Bimodule::new(left, right, d, la, ra)?;
        Ok(DualBimodule {
            bimodule,
            functionals,
            side,
            coords,
        })
    }

    /// The functional with the given coordinates.
    pub fn functional(&self, c: &[F]) -> Matrix<F> {
        let (rows, cols) = self.functionals.first().map_or((0, 0), |f| (f.rows(), f.cols()));
        linear_combination(rows, cols, c, &self.functionals)
    }

    /// Coordinates of a functional in the basis.
    pub fn coordinates(&self, f: &Matrix<F>) -> Result<Vec<F>> {
        if self.functionals.is_empty() {
            return if f.is_zero() {
                Ok(Vec::new())
            } else {
                Err(Error::Inconsistent)
            };
        }
        self.coords.coordinates(f.entries())
    }

    pub fn dim(&self) -> usize {
        self.functionals.len()
    }
}

/// `*M = Hom_T(M, T)` with `(r f)(m) = f(m r)` and `(f t)(m) = f(m) t`.
pub fn dual_left<F: Field>(m: &Bimodule<F>) -> Result<DualBimodule<F>> {
    let t = m.left_algebra().clone();
    let reg = Bimodule::regular(t.clone());
    let functionals = hom_space(m, &reg, HomKind::Left)?;
    DualBimodule::new(
        functionals,
        Side::Left,
        m.right_algebra().clone(),
        t.clone(),
        |r, f| f * &m.right_action()[r],
        |i, f| &t.right_regular()[i] * f,
    )
}

/// `M* = Hom_R(M, R)` with `(r g)(m) = r g(m)` and `(g t)(m) = g(t m)`.
pub fn dual_right<F: Field>(m: &Bimodule<F>) -> Result<DualBimodule<F>> {
    let r = m.right_algebra().clone();
    let reg = Bimodule::regular(r.clone());
    let functionals = hom_space(m, &reg, HomKind::Right)?;
    DualBimodule::new(
        functionals,
        Side::Right,
        r.clone(),
        m.left_algebra().clone(),
        |i, g| &r.left_regular()[i] * g,
        |i, g| g * &m.left_action()[i],
    )
}

/// `M`, `*M`, `M (x)_R *M` and the evaluation `u_M(m (x) f) = f(m)`.
#[derive(Clone, Debug)]
pub struct Pairing<F> {
    pub module: Arc<Bimodule<F>>,
    pub dual: DualBimodule<F>,
    pub tensor: TensorProduct<F>,
    pub tensor_module: Arc<Bimodule<F>>,
    pub evaluation: BimoduleMap<F>,
}

impl<F: Field> Pairing<F> {
    /// `t x` for a class `x` of the tensor product.
    pub fn left_mul(&self, t: &[F], x: &[F]) -> Vec<F> {
        self.tensor_module.act_left(t).apply(x)
    }

    /// `x t`.
    pub fn right_mul(&self, x: &[F], t: &[F]) -> Vec<F> {
        self.tensor_module.act_right(t).apply(x)
    }

    /// `sum_a e_a (x) f_a` grouped by basis vectors of `M`: the lift of a
    /// class as pairs `(m, f)`.
    pub fn lifted(&self, x: &[F]) -> Vec<(Vec<F>, Matrix<F>)> {
        let full = self.tensor.lift(x);
        let d = self.dual.dim();
        (0..self.module.dim())
            .filter_map(|a| {
                let c = &full[a * d..(a + 1) * d];
                if c.iter().all(|v| v.is_zero()) {
                    return None;
                }
                Some((
                    crate::linalg::unit_vector(self.module.dim(), a),
                    self.dual.functional(c),
                ))
            })
            .collect()
    }

    /// The class of `sum m_i (x) f_i`.
    pub fn class_of(&self, pairs: &[(Vec<F>, Matrix<F>)]) -> Result<Vec<F>> {
        let mut acc = zero_vector::<F>(self.tensor.dim());
        for (m, f) in pairs {
            let c = self.dual.coordinates(f)?;
            acc = crate::linalg::add_vectors(&acc, &self.tensor.class(m, &c));
        }
        Ok(acc)
    }
}

/// Builds the evaluation map `u_M: M (x)_R *M -> T`, checking that it is
/// well defined and a `T`-bimodule map.
pub fn evaluation_map<F: Field>(m: &Bimodule<F>) -> Result<Pairing<F>> {
    let dual = dual_left(m)?;
    let tensor = tensor_over(m, &dual.bimodule)?;
    let t = m.left_algebra();
    let d = dual.dim();
    let full = Matrix::from_fn(t.dim(), m.dim() * d, |row, col| {
        let (a, k) = (col / d, col % d);
        dual.functionals[k][(row, a)].clone()
    });
    let u = tensor
        .descend(&full)
        .ok_or_else(|| Error::Coherence("evaluation does not vanish on tensor relations".into()))?;
    let tensor_module = Arc::new(tensor.bimodule.clone());
    let evaluation = BimoduleMap::new(tensor_module.clone(), Arc::new(Bimodule::regular(t.clone())), u)
        .map_err(|e| Error::Coherence(format!("evaluation map: {e}")))?;
    Ok(Pairing {
        module: Arc::new(m.clone()),
        dual,
        tensor,
        tensor_module,
        evaluation,
    })
}

/// Dual-basis witness `m = sum_i f_i(m) m_i` (left) or `m = sum_i m_i g_i(m)`
/// (right), with `m_i` the standard basis of `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualBasis<F> {
    pub side: Side,
    pub functionals: Vec<Matrix<F>>,
}

impl<F: Field> DualBasis<F> {
    pub fn verify(&self, m: &Bimodule<F>) -> bool {
        let n = m.dim();
        (0..n).all(|a| {
            let mut acc = zero_vector::<F>(n);
            for (i, f) in self.functionals.iter().enumerate() {
                let ring = f.column(a);
                let action = match self.side {
                    Side::Left => m.act_left(&ring),
                    Side::Right => m.act_right(&ring),
                };
                acc = crate::linalg::add_vectors(&acc, &action.column(i));
            }
            acc == crate::linalg::unit_vector(n, a)
        })
    }
}

/// Finitely generated projective on the given side, witnessed by a dual
/// basis; `None` when the dual-basis equations are infeasible.
pub fn is_fgp<F: Field>(m: &Bimodule<F>, side: Side) -> Result<Option<DualBasis<F>>> {
    let (ring, hom, actions) = match side {
        Side::Left => {
            let t = m.left_algebra().clone();
            let h = hom_space(m, &Bimodule::regular(t.clone()), HomKind::Left)?;
            (t, h, m.left_action())
        }
        Side::Right => {
            let r = m.right_algebra().clone();
            let h = hom_space(m, &Bimodule::regular(r.clone()), HomKind::Right)?;
            (r, h, m.right_action())
        }
    };
    let n = m.dim();
    let h = hom.len();
    let rd = ring.dim();
    // unknown c[i][k]: f_i = sum_k c_ik H_k ; equation (a, p):
    // sum_{i,k} c_ik sum_l H_k[l][a] A_l[p][i] = delta_{ap}
    let rows = (0..n).flat_map(|a| {
        let hom = &hom;
        (0..n).map(move |p| {
            let mut row = zero_vector::<F>(n * h);
            for i in 0..n {
                for (k, hk) in hom.iter().enumerate() {
                    let mut s = F::zero();
                    for l in 0..rd {
                        let x = &hk[(l, a)];
                        if !x.is_zero() {
                            s = s.add_ref(&x.mul_ref(&actions[l][(p, i)]));
                        }
                    }
                    row[i * h + k] = s;
                }
            }
            (row, if a == p { F::one() } else { F::zero() })
        })
    });
    match solve_rows(n * h, rows) {
        Ok(sol) => {
            let (rows, cols) = (rd, n);
            let functionals = (0..n)
                .map(|i| linear_combination(rows, cols, &sol.particular[i * h..(i + 1) * h], &hom))
                .collect();
            let basis = DualBasis { side, functionals };
            debug_assert!(basis.verify(m));
            Ok(Some(basis))
        }
        Err(Error::Inconsistent) => Ok(None),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::field::Rational;

    type Q = Rational;

    #[test]
    fn dual_of_regular_is_regular() {
        let c2 = Arc::new(Algebra::<Q>::cyclic_group(2));
        let r = Bimodule::regular(c2);
        assert_eq!(dual_left(&r).unwrap().dim(), 2);
        assert_eq!(dual_right(&r).unwrap().dim(), 2);
        let p = evaluation_map(&r).unwrap();
        assert_eq!(p.tensor.dim(), 2);
        assert_eq!(p.evaluation.rank(), 2);
    }

    #[test]
    fn column_module_duals() {
        let m2 = Arc::new(Algebra::<Q>::matrix_algebra(&Algebra::ground(), 2));
        let col = crate::fixtures::column_bimodule(&m2);
        assert_eq!(dual_left(&col).unwrap().dim(), 2);
        assert_eq!(dual_right(&col).unwrap().dim(), 2);
        let p = evaluation_map(&col).unwrap();
        assert_eq!(p.evaluation.rank(), 4);
        assert!(is_fgp(&col, Side::Left).unwrap().is_some());
        assert!(is_fgp(&col, Side::Right).unwrap().is_some());
    }

    #[test]
    fn non_projective_module_has_no_dual_basis() {
        // the trivial module k over k[x]/x^2
        let a = Arc::new(Algebra::<Q>::truncated_polynomial(2));
        let k = Arc::new(Algebra::<Q>::ground());
        let triv = Bimodule::new(
            a,
            k,
            1,
            vec![Matrix::identity(1), Matrix::zeros(1, 1)],
            vec![Matrix::identity(1)],
        )
        .unwrap();
        assert!(is_fgp(&triv, Side::Left).unwrap().is_none());
        assert!(is_fgp(&triv, Side::Right).unwrap().is_some());
    }
}
