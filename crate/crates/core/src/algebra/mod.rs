//! Finite-dimensional associative unital algebras given by structure
//! constants, together with their standard constructors.

mod extension;
mod idempotents;
mod poly;
mod quiver;
mod radical;

pub use extension::RingExtension;
pub use idempotents::{primitive_idempotents, IdempotentDecomposition};
pub use poly::{minimal_polynomial, Polynomial};
pub use quiver::{Path, PathAlgebra, QuiverPresentation};
pub use radical::{radical, Radical};

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{axpy, quotient, unit_vector, zero_vector, CoordinateMap, Matrix, Quotient, SubspaceBasis};

/// A failed algebra law, naming the offending basis indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Associativity { i: usize, j: usize, k: usize },
    LeftUnit { i: usize },
    RightUnit { i: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Associativity { i, j, k } => {
                write!(f, "(b{i} b{j}) b{k} != b{i} (b{j} b{k})")
            }
            Violation::LeftUnit { i } => write!(f, "1 * b{i} != b{i}"),
            Violation::RightUnit { i } => write!(f, "b{i} * 1 != b{i}"),
        }
    }
}

/// An associative unital algebra with basis `b_0..b_{n-1}` and
/// `b_i b_j = sum_k c[i][j][k] b_k`.
#[derive(Clone)]
pub struct Algebra<F> {
    name: Option<String>,
    dim: usize,
    /// `c[(i * n + j) * n + k]`
    structure: Vec<F>,
    unit: Vec<F>,
    left: Vec<Matrix<F>>,
    right: Vec<Matrix<F>>,
    generators: OnceLock<Vec<usize>>,
}

impl<F: PartialEq> PartialEq for Algebra<F> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.unit == other.unit && self.structure == other.structure
    }
}

impl<F: Eq> Eq for Algebra<F> {}

impl<F> fmt::Debug for Algebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .finish()
    }
}

impl<F: Field> Algebra<F> {
    /// Builds an algebra from nested structure constants `c[i][j][k]` and
    /// checks the associativity and unit laws.
    pub fn new(structure: Vec<Vec<Vec<F>>>, unit: Vec<F>) -> Result<Self> {
        let n = structure.len();
        let mut flat = Vec::with_capacity(n * n * n);
        for (i, row) in structure.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidAlgebra(format!(
                    "structure[{i}] has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, v) in row.into_iter().enumerate() {
                if v.len() != n {
                    return Err(Error::InvalidAlgebra(format!(
                        "structure[{i}][{j}] has {} entries, expected {n}",
                        v.len()
                    )));
                }
                flat.extend(v);
            }
        }
        let alg = Self::from_flat(n, flat, unit)?;
        alg.validate().map_err(|v| Error::InvalidAlgebra(v.to_string()))?;
        Ok(alg)
    }

    /// Builds an algebra from flat constants without checking the algebra
    /// laws; use [`Algebra::validate`] afterwards.
    pub fn from_flat(dim: usize, structure: Vec<F>, unit: Vec<F>) -> Result<Self> {
        if structure.len() != dim * dim * dim {
            return Err(Error::InvalidAlgebra(format!(
                "{} structure constants for dimension {dim}",
                structure.len()
            )));
        }
        if unit.len() != dim {
            return Err(Error::InvalidAlgebra(format!(
                "unit has {} coordinates, expected {dim}",
                unit.len()
            )));
        }
        let c = |i: usize, j: usize, k: usize| structure[(i * dim + j) * dim + k].clone();
        // left[i] column j = b_i b_j ; right[i] column j = b_j b_i
        let left = (0..dim).map(|i| Matrix::from_fn(dim, dim, |k, j| c(i, j, k))).collect();
        let right = (0..dim).map(|i| Matrix::from_fn(dim, dim, |k, j| c(j, i, k))).collect();
        Ok(Algebra {
            name: None,
            dim,
            structure,
            unit,
            left,
            right,
            generators: OnceLock::new(),
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn label(&self) -> String {
        self.name
            .clone()
            .unwrap_or_else(|| format!("algebra(dim {})", self.dim))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[F] {
        &self.unit
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &F {
        &self.structure[(i * self.dim + j) * self.dim + k]
    }

    pub fn structure(&self) -> &[F] {
        &self.structure
    }

    pub fn basis_element(&self, i: usize) -> Vec<F> {
        unit_vector(self.dim, i)
    }

    pub fn zero(&self) -> Vec<F> {
        zero_vector(self.dim)
    }

    /// Checks associativity on all basis triples and both unit laws.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                let bij = self.left[i].column(j);
                for k in 0..n {
                    // (b_i b_j) b_k versus b_i (b_j b_k)
                    let lhs = self.right[k].apply(&bij);
                    let bjk = self.left[j].column(k);
                    let rhs = self.left[i].apply(&bjk);
                    if lhs != rhs {
                        return Err(Violation::Associativity { i, j, k });
                    }
                }
            }
        }
        for i in 0..n {
            let bi = self.basis_element(i);
            if self.mul(&self.unit, &bi) != bi {
                return Err(Violation::LeftUnit { i });
            }
            if self.mul(&bi, &self.unit) != bi {
                return Err(Violation::RightUnit { i });
            }
        }
        Ok(())
    }

    pub fn mul(&self, x: &[F], y: &[F]) -> Vec<F> {
        self.left_matrix(x).apply(y)
    }

    pub fn add(&self, x: &[F], y: &[F]) -> Vec<F> {
        crate::linalg::add_vectors(x, y)
    }

    /// Matrix of `y -> x y`.
    pub fn left_matrix(&self, x: &[F]) -> Matrix<F> {
        combine_matrices(self.dim, x, &self.left)
    }

    /// Matrix of `y -> y x`.
    pub fn right_matrix(&self, x: &[F]) -> Matrix<F> {
        combine_matrices(self.dim, x, &self.right)
    }

    /// Left multiplication matrices of the basis elements.
    pub fn left_regular(&self) -> &[Matrix<F>] {
        &self.left
    }

    /// Right multiplication matrices of the basis elements.
    pub fn right_regular(&self) -> &[Matrix<F>] {
        &self.right
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| self.left[i] == self.right[i])
    }

    pub fn power(&self, x: &[F], e: usize) -> Vec<F> {
        let mut acc = self.unit.clone();
        for _ in 0..e {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// Indices of basis elements generating the algebra (together with 1).
    /// Intertwining conditions only need to be imposed on these.
    pub fn generators(&self) -> &[usize] {
        self.generators.get_or_init(|| {
            let mut chosen: Vec<usize> = Vec::new();
            let mut closure = self.generated_subalgebra(&chosen);
            for i in 0..self.dim {
                if closure.dim() == self.dim {
                    break;
                }
                if !closure.contains(&self.basis_element(i)) {
                    chosen.push(i);
                    closure = self.generated_subalgebra(&chosen);
                }
            }
            chosen
        })
    }

    /// Subalgebra generated by the given basis elements.
    pub fn generated_subalgebra(&self, gens: &[usize]) -> SubspaceBasis<F> {
        let mut ech = crate::linalg::Echelon::new(self.dim);
        let mut span: Vec<Vec<F>> = Vec::new();
        for v in std::iter::once(self.unit.clone()).chain(gens.iter().map(|&g| self.basis_element(g))) {
            if ech.insert(v.clone()) {
                span.push(v);
            }
        }
        let mut frontier = span.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for x in &frontier {
                for &g in gens {
                    let y = self.right[g].apply(x);
                    if ech.insert(y.clone()) {
                        next.push(y.clone());
                        span.push(y);
                    }
                }
            }
            frontier = next;
        }
        SubspaceBasis {
            ambient_dim: self.dim,
            vectors: span,
        }
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground() -> Self {
        Self::from_flat(1, vec![F::one()], vec![F::one()])
            .expect("ground field")
            .with_name(F::spec().to_string())
    }

    /// `k[x]/(x^n)` with basis `1, x, ..., x^{n-1}`.
    pub fn truncated_polynomial(n: usize) -> Self {
        assert!(n >= 1);
        let mut c = vec![F::zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                if i + j < n {
                    c[(i * n + j) * n + i + j] = F::one();
                }
            }
        }
        Self::from_flat(n, c, unit_vector(n, 0)).expect("truncated polynomial algebra")
    }

    /// Group algebra of the cyclic group of order `n`, basis `1, g, ..., g^{n-1}`.
    pub fn cyclic_group(n: usize) -> Self {
        assert!(n >= 1);
        let mut c = vec![F::zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                c[(i * n + j) * n + (i + j) % n] = F::one();
            }
        }
        Self::from_flat(n, c, unit_vector(n, 0)).expect("cyclic group algebra")
    }

    /// `M_n(A)` with basis `E_pq (x) a_i` at index `(p n + q) dim(A) + i`.
    pub fn matrix_algebra(a: &Self, n: usize) -> Self {
        let d = a.dim;
        let dim = n * n * d;
        let idx = |p: usize, q: usize, i: usize| (p * n + q) * d + i;
        let mut c = vec![F::zero(); dim * dim * dim];
        for p in 0..n {
            for q in 0..n {
                for s in 0..n {
                    for i in 0..d {
                        for j in 0..d {
                            let x = idx(p, q, i);
                            let y = idx(q, s, j);
                            for k in 0..d {
                                let v = a.constant(i, j, k);
                                if !v.is_zero() {
                                    c[(x * dim + y) * dim + idx(p, s, k)] = v.clone();
                                }
                            }
                        }
                    }
                }
            }
        }
        let mut unit = zero_vector(dim);
        for p in 0..n {
            for i in 0..d {
                unit[idx(p, p, i)] = a.unit[i].clone();
            }
        }
        Self::from_flat(dim, c, unit).expect("matrix algebra")
    }

    /// `A x B` with the basis of `A` first.
    pub fn direct_product(a: &Self, b: &Self) -> Self {
        let (da, db) = (a.dim, b.dim);
        let dim = da + db;
        let mut c = vec![F::zero(); dim * dim * dim];
        for i in 0..da {
            for j in 0..da {
                for k in 0..da {
                    c[(i * dim + j) * dim + k] = a.constant(i, j, k).clone();
                }
            }
        }
        for i in 0..db {
            for j in 0..db {
                for k in 0..db {
                    c[((da + i) * dim + da + j) * dim + da + k] = b.constant(i, j, k).clone();
                }
            }
        }
        let mut unit = a.unit.clone();
        unit.extend(b.unit.iter().cloned());
        Self::from_flat(dim, c, unit).expect("direct product")
    }

    /// The opposite algebra: same basis, `c'[i][j][k] = c[j][i][k]`.
    pub fn opposite(&self) -> Self {
        let n = self.dim;
        let mut c = vec![F::zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c[(i * n + j) * n + k] = self.constant(j, i, k).clone();
                }
            }
        }
        let mut op = Self::from_flat(n, c, self.unit.clone()).expect("opposite algebra");
        op.name = self.name.as_ref().map(|s| format!("{s}^op"));
        op
    }

    /// The subalgebra (possibly with a different unit, e.g. a corner `eAe`)
    /// spanned by `basis`, as a new algebra together with the embedding
    /// matrix whose columns are the basis vectors.
    pub fn subalgebra(&self, basis: &SubspaceBasis<F>, unit: &[F]) -> Result<(Self, Matrix<F>)> {
        let coords = CoordinateMap::new(basis);
        let m = basis.dim();
        let mut c = Vec::with_capacity(m * m * m);
        for x in &basis.vectors {
            for y in &basis.vectors {
                let xy = self.mul(x, y);
                let v = coords
                    .coordinates(&xy)
                    .map_err(|_| Error::InvalidAlgebra("subspace is not closed under multiplication".into()))?;
                c.extend(v);
            }
        }
        let u = coords
            .coordinates(unit)
            .map_err(|_| Error::InvalidAlgebra("unit outside the subspace".into()))?;
        let sub = Self::from_flat(m, c, u)?;
        sub.validate()
            .map_err(|v| Error::InvalidAlgebra(format!("subalgebra: {v}")))?;
        Ok((sub, basis.as_columns()))
    }

    /// The corner algebra `eAe` for an idempotent `e`.
    pub fn corner(&self, e: &[F]) -> Result<(Self, Matrix<F>)> {
        let le = self.left_matrix(e);
        let re = self.right_matrix(e);
        let proj = &le * &re;
        let basis = SubspaceBasis::span(self.dim, proj.columns());
        self.subalgebra(&basis, e)
    }

    /// Quotient by a two-sided ideal, with the linear projection and section.
    pub fn quotient_by_ideal(&self, ideal: &SubspaceBasis<F>) -> Result<(Self, Quotient<F>)> {
        let qt = quotient(self.dim, ideal.vectors.iter().cloned());
        let m = qt.dim();
        let sec = qt.section.columns();
        let mut c = Vec::with_capacity(m * m * m);
        for x in &sec {
            for y in &sec {
                c.extend(qt.projection.apply(&self.mul(x, y)));
            }
        }
        let unit = qt.projection.apply(&self.unit);
        let alg = Self::from_flat(m, c, unit)?;
        alg.validate()
            .map_err(|v| Error::InvalidAlgebra(format!("quotient by a non-ideal: {v}")))?;
        Ok((alg, qt))
    }

    /// Center `{x : x b = b x for all b}`.
    pub fn center(&self) -> SubspaceBasis<F> {
        let n = self.dim;
        let rows = self.generators().iter().flat_map(|&g| {
            // x b_g - b_g x = (R_g - L_g) x
            let m = &self.right[g] - &self.left[g];
            m.row_vectors()
        });
        crate::linalg::kernel_of_rows(n, rows.collect::<Vec<_>>())
    }

    pub fn into_arc(self) -> Arc<Self> {
        Arc::new(self)
    }
}

fn combine_matrices<F: Field>(n: usize, coeffs: &[F], mats: &[Matrix<F>]) -> Matrix<F> {
    let mut data = zero_vector::<F>(n * n);
    for (c, m) in coeffs.iter().zip(mats) {
        axpy(&mut data, c, m.entries());
    }
    Matrix::new(n, n, data).expect("square")
}

/// `sum_i coeffs[i] * mats[i]` for matrices of a common shape.
pub fn linear_combination<F: Field>(rows: usize, cols: usize, coeffs: &[F], mats: &[Matrix<F>]) -> Matrix<F> {
    let mut data = zero_vector::<F>(rows * cols);
    for (c, m) in coeffs.iter().zip(mats) {
        axpy(&mut data, c, m.entries());
    }
    Matrix::new(rows, cols, data).expect("shape")
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
    fn ground_field_validates() {
        let k = Algebra::<Q>::ground();
        assert_eq!(k.dim(), 1);
        assert_eq!(k.validate(), Ok(()));
    }

    #[test]
    fn matrix_algebra_m2() {
        let m2 = Algebra::matrix_algebra(&Algebra::<Q>::ground(), 2);
        assert_eq!(m2.dim(), 4);
        assert_eq!(m2.validate(), Ok(()));
        // E_12 E_21 = E_11 with indices (p n + q)
        assert_eq!(m2.mul(&m2.basis_element(1), &m2.basis_element(2)), m2.basis_element(0));
        assert!(!m2.is_commutative());
        assert_eq!(m2.center().dim(), 1);
    }

    #[test]
    fn direct_product_unit() {
        let k = Algebra::<Q>::ground();
        let kk = Algebra::direct_product(&k, &k);
        assert_eq!(kk.unit(), &[q(1), q(1)]);
        assert_eq!(kk.validate(), Ok(()));
    }

    #[test]
    fn opposite_constants_are_transposed() {
        let m2 = Algebra::matrix_algebra(&Algebra::<Q>::ground(), 2);
        let op = m2.opposite();
        assert_eq!(op.validate(), Ok(()));
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    assert_eq!(op.constant(i, j, k), m2.constant(j, i, k));
                }
            }
        }
    }

    #[test]
    fn perturbed_group_algebra_is_rejected() {
        let c2 = Algebra::<Q>::cyclic_group(2);
        assert_eq!(c2.validate(), Ok(()));
        let mut s = c2.structure().to_vec();
        // coefficient of b0 in b0 * b0 perturbed
        s[0] = q(2);
        let bad = Algebra::from_flat(2, s, c2.unit().to_vec()).unwrap();
        assert_eq!(bad.validate(), Err(Violation::Associativity { i: 0, j: 0, k: 1 }));
    }

    #[test]
    fn generators_generate() {
        let m2 = Algebra::matrix_algebra(&Algebra::<Q>::truncated_polynomial(2), 2);
        let g = m2.generators();
        assert_eq!(m2.generated_subalgebra(g).dim(), m2.dim());
        assert!(g.len() < m2.dim());
    }

    #[test]
    fn corner_of_matrix_algebra() {
        let m2 = Algebra::matrix_algebra(&Algebra::<Q>::ground(), 2);
        let (c, emb) = m2.corner(&m2.basis_element(0)).unwrap();
        assert_eq!(c.dim(), 1);
        assert_eq!(emb.column(0), m2.basis_element(0));
    }
}
