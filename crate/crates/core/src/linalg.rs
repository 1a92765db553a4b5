//! Exact linear algebra: dense matrices, streaming row echelon forms,
//! kernels, particular solutions, quotients and Kronecker products.
//!
//! Elimination always takes the first nonzero entry as the pivot. There are
//! no tolerances: every identity checked here holds exactly or not at all.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::Field;

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    pub fn scalar(n: usize, c: &F) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    /// Builds a matrix from its rows; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: &[Vec<F>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r.iter().cloned());
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Self {
        let cols = columns.len();
        let mut m = Self::zeros(rows, cols);
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column {j} has wrong length");
            for (i, x) in c.iter().enumerate() {
                m.data[i * cols + j] = x.clone();
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<F> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.data[i * self.cols + j].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.mul_ref(c)).collect(),
        }
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols, "apply: vector length mismatch");
        let mut out = vec![F::zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = &self.data[i * self.cols + j];
                if !a.is_zero() {
                    *o = o.add_ref(&a.mul_ref(x));
                }
            }
        }
        out
    }

    /// Kronecker product with the left factor's index major.
    pub fn kron(&self, other: &Self) -> Self {
        let (r2, c2) = (other.rows, other.cols);
        let mut m = Self::zeros(self.rows * r2, self.cols * c2);
        let cols = m.cols;
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = &self[(i1, j1)];
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..r2 {
                    for j2 in 0..c2 {
                        let b = &other[(i2, j2)];
                        if !b.is_zero() {
                            m.data[(i1 * r2 + i2) * cols + j1 * c2 + j2] = a.mul_ref(b);
                        }
                    }
                }
            }
        }
        m
    }

    pub fn hstack(blocks: &[&Self]) -> Self {
        let rows = blocks.first().map_or(0, |b| b.rows);
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack: row mismatch");
            m.set_block(0, off, b);
            off += b.cols;
        }
        m
    }

    pub fn vstack(blocks: &[&Self]) -> Self {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack: column mismatch");
            data.extend(b.data.iter().cloned());
        }
        Matrix { rows, cols, data }
    }

    pub fn block_diag(blocks: &[&Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            m.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.cols);
        for i in 0..self.rows {
            ech.insert(self.row(i).to_vec());
        }
        ech.rank()
    }

    /// Basis of `{x : A x = 0}`.
    pub fn kernel(&self) -> SubspaceBasis<F> {
        kernel_of_rows(self.cols, self.row_vectors())
    }

    /// One particular solution of `A x = b` together with a kernel basis.
    pub fn solve(&self, b: &[F]) -> Result<Solution<F>> {
        assert_eq!(b.len(), self.rows, "solve: right-hand side length mismatch");
        solve_rows(self.cols, (0..self.rows).map(|i| (self.row(i).to_vec(), b[i].clone())))
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut ech = Echelon::new(2 * n);
        for i in 0..n {
            let mut row = self.row(i).to_vec();
            row.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            ech.insert(row);
        }
        let rref = ech.finish();
        if rref.pivots.len() < n || rref.pivots.iter().any(|&p| p >= n) {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for (row, &p) in rref.rows.iter().zip(&rref.pivots) {
            for (c, v) in row {
                if *c >= n {
                    inv[(p, c - n)] = v.clone();
                }
            }
        }
        Some(inv)
    }

    /// Determinant by exact elimination.
    pub fn determinant(&self) -> F {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = F::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return F::zero();
            };
            if piv != col {
                for j in 0..n {
                    a.data.swap(piv * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[(col, col)].clone();
            det = det.mul_ref(&p);
            let pinv = p.inverse().expect("nonzero pivot");
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].mul_ref(&pinv);
                for j in col..n {
                    let v = a[(col, j)].clone();
                    a.data[r * n + j].sub_mul_assign(&f, &v);
                }
            }
        }
        det
    }

    /// Integer power of a square matrix.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc.add_ref(&self[(i, i)]))
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Field> Mul for &Matrix<F> {
    type Output = Matrix<F>;
    fn mul(self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix product {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + j];
                    if !b.is_zero() {
                        let o: &mut F = &mut out.data[i * rhs.cols + j];
                        *o = o.add_ref(&a.mul_ref(b));
                    }
                }
            }
        }
        out
    }
}

impl<F: Field> Add for &Matrix<F> {
    type Output = Matrix<F>;
    fn add(self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.add_ref(b)).collect(),
        }
    }
}

impl<F: Field> Sub for &Matrix<F> {
    type Output = Matrix<F>;
    fn sub(self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference shape");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.sub_ref(b)).collect(),
        }
    }
}

impl<F: Field> Neg for &Matrix<F> {
    type Output = Matrix<F>;
    fn neg(self) -> Matrix<F> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a.clone()).collect(),
        }
    }
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:?}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

// ---------------------------------------------------------------------------
// vectors

pub fn zero_vector<F: Field>(n: usize) -> Vec<F> {
    vec![F::zero(); n]
}

pub fn unit_vector<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = zero_vector(n);
    v[i] = F::one();
    v
}

pub fn is_zero_vector<F: Field>(v: &[F]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn add_vectors<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.add_ref(y)).collect()
}

pub fn sub_vectors<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.sub_ref(y)).collect()
}

pub fn scale_vector<F: Field>(c: &F, v: &[F]) -> Vec<F> {
    v.iter().map(|x| c.mul_ref(x)).collect()
}

/// `acc += c * v`
pub fn axpy<F: Field>(acc: &mut [F], c: &F, v: &[F]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = a.add_ref(&c.mul_ref(x));
        }
    }
}

/// Linear combination `sum_i coeffs[i] * vectors[i]`.
pub fn combine<F: Field>(len: usize, coeffs: &[F], vectors: &[Vec<F>]) -> Vec<F> {
    let mut out = zero_vector(len);
    for (c, v) in coeffs.iter().zip(vectors) {
        axpy(&mut out, c, v);
    }
    out
}

/// Tensor product of coordinate vectors, left factor major.
pub fn kron_vectors<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x.mul_ref(y));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// echelon forms

type SparseRow<F> = Vec<(usize, F)>;

fn sparse_get<F: Field>(row: &SparseRow<F>, col: usize) -> F {
    match row.binary_search_by_key(&col, |(c, _)| *c) {
        Ok(i) => row[i].1.clone(),
        Err(_) => F::zero(),
    }
}

/// `a -= c * b` on sorted sparse rows.
fn sparse_sub_scaled<F: Field>(a: &SparseRow<F>, c: &F, b: &SparseRow<F>) -> SparseRow<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|x| x.0);
        let cb = b.get(j).map(|x| x.0);
        match (ca, cb) {
            (Some(x), Some(y)) if x == y => {
                let mut v = a[i].1.clone();
                v.sub_mul_assign(c, &b[j].1);
                if !v.is_zero() {
                    out.push((x, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push(a[i].clone());
                i += 1;
            }
            (Some(x), None) => {
                out.push((x, a[i].1.clone()));
                i += 1;
            }
            (_, Some(y)) => {
                out.push((y, -(c.mul_ref(&b[j].1))));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Incremental row echelon form. Rows are inserted one at a time; each new
/// row is reduced against the existing pivots and, if nonzero, normalized so
/// that its pivot (first nonzero entry) is 1.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    cols: usize,
    rows: Vec<SparseRow<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(cols: usize) -> Self {
        Echelon {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Reduces `v` in place against the stored rows.
    pub fn reduce(&self, v: &mut [F]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (col, x) in row {
                v[*col].sub_mul_assign(&c, x);
            }
        }
    }

    pub fn contains(&self, v: &[F]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        is_zero_vector(&w)
    }

    /// Inserts a row, returning `true` when it was independent of the rows
    /// already present.
    pub fn insert(&mut self, mut v: Vec<F>) -> bool {
        assert_eq!(v.len(), self.cols, "echelon: row length mismatch");
        if self.rows.len() == self.cols {
            return false;
        }
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inverse().expect("nonzero pivot");
        let row: SparseRow<F> = v
            .into_iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(c, x)| (c, x.mul_ref(&inv)))
            .collect();
        self.rows.push(row);
        self.pivots.push(p);
        true
    }

    /// Back-substitutes to the reduced row echelon form.
    pub fn finish(mut self) -> Rref<F> {
        for i in (0..self.rows.len()).rev() {
            let p = self.pivots[i];
            let (head, tail) = self.rows.split_at_mut(i);
            let pivot_row = &tail[0];
            for row in head.iter_mut() {
                let c = sparse_get(row, p);
                if !c.is_zero() {
                    *row = sparse_sub_scaled(row, &c, pivot_row);
                }
            }
        }
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let rows = order.iter().map(|&i| self.rows[i].clone()).collect();
        let pivots = order.iter().map(|&i| self.pivots[i]).collect();
        Rref {
            cols: self.cols,
            rows,
            pivots,
        }
    }
}

/// Reduced row echelon form: pivot columns ascending, each pivot 1 and the
/// only nonzero entry in its column.
#[derive(Clone, Debug)]
pub struct Rref<F> {
    cols: usize,
    rows: Vec<SparseRow<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Rref<F> {
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dense_rows(&self) -> Vec<Vec<F>> {
        self.rows
            .iter()
            .map(|r| {
                let mut v = zero_vector(self.cols);
                for (c, x) in r {
                    v[*c] = x.clone();
                }
                v
            })
            .collect()
    }

    pub fn kernel(&self) -> SubspaceBasis<F> {
        self.kernel_restricted(self.cols)
    }

    /// Kernel of the first `n` columns (pivots are assumed to lie below `n`).
    fn kernel_restricted(&self, n: usize) -> SubspaceBasis<F> {
        let mut is_pivot = vec![false; n];
        for &p in &self.pivots {
            if p < n {
                is_pivot[p] = true;
            }
        }
        let vectors = (0..n)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut x = zero_vector(n);
                x[f] = F::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    let c = sparse_get(row, f);
                    if !c.is_zero() {
                        x[p] = -c;
                    }
                }
                x
            })
            .collect();
        SubspaceBasis {
            ambient_dim: n,
            vectors,
        }
    }
}

/// Kernel of the matrix whose rows are produced by `rows`. Rows are streamed
/// through a single elimination.
pub fn kernel_of_rows<F: Field>(cols: usize, rows: impl IntoIterator<Item = Vec<F>>) -> SubspaceBasis<F> {
    let mut ech = Echelon::new(cols);
    for r in rows {
        if ech.rank() == cols {
            break;
        }
        ech.insert(r);
    }
    ech.finish().kernel()
}

/// Solves the system whose equations `row . x = rhs` are streamed through a
/// single elimination.
pub fn solve_rows<F: Field>(unknowns: usize, rows: impl IntoIterator<Item = (Vec<F>, F)>) -> Result<Solution<F>> {
    let n = unknowns;
    let mut ech = Echelon::new(n + 1);
    for (mut row, rhs) in rows {
        assert_eq!(row.len(), n, "solve: equation length mismatch");
        row.push(rhs);
        ech.insert(row);
    }
    let rref = ech.finish();
    if rref.pivots.contains(&n) {
        return Err(Error::Inconsistent);
    }
    let mut x = vec![F::zero(); n];
    for (row, &p) in rref.rows.iter().zip(&rref.pivots) {
        x[p] = sparse_get(row, n);
    }
    let kernel = rref.kernel_restricted(n);
    Ok(Solution { particular: x, kernel })
}

/// Result of [`Matrix::solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution<F> {
    pub particular: Vec<F>,
    pub kernel: SubspaceBasis<F>,
}

// ---------------------------------------------------------------------------
// subspaces

/// A linearly independent list of vectors in `F^ambient_dim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubspaceBasis<F> {
    pub ambient_dim: usize,
    pub vectors: Vec<Vec<F>>,
}

impl<F: Field> SubspaceBasis<F> {
    pub fn zero(ambient_dim: usize) -> Self {
        SubspaceBasis {
            ambient_dim,
            vectors: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        SubspaceBasis {
            ambient_dim,
            vectors: (0..ambient_dim).map(|i| unit_vector(ambient_dim, i)).collect(),
        }
    }

    /// Checks independence by rank.
    pub fn from_independent(ambient_dim: usize, vectors: Vec<Vec<F>>) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != ambient_dim) {
            return Err(Error::Dimension("subspace vector of wrong length".into()));
        }
        let mut ech = Echelon::new(ambient_dim);
        for v in &vectors {
            if !ech.insert(v.clone()) {
                return Err(Error::Dimension("subspace vectors are dependent".into()));
            }
        }
        Ok(SubspaceBasis { ambient_dim, vectors })
    }

    /// Reduced echelon basis of the span of arbitrary vectors.
    pub fn span(ambient_dim: usize, vectors: impl IntoIterator<Item = Vec<F>>) -> Self {
        let mut ech = Echelon::new(ambient_dim);
        for v in vectors {
            ech.insert(v);
        }
        SubspaceBasis {
            ambient_dim,
            vectors: ech.finish().dense_rows(),
        }
    }

    /// Independent subset of the given vectors (first-come), preserving them
    /// as given rather than echelonizing.
    pub fn independent_subset(ambient_dim: usize, vectors: impl IntoIterator<Item = Vec<F>>) -> Self {
        let mut ech = Echelon::new(ambient_dim);
        let mut kept = Vec::new();
        for v in vectors {
            if ech.insert(v.clone()) {
                kept.push(v);
            }
        }
        SubspaceBasis {
            ambient_dim,
            vectors: kept,
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_zero(&self) -> bool {
        self.vectors.is_empty()
    }

    /// The basis vectors as the columns of an `ambient_dim x dim` matrix.
    pub fn as_columns(&self) -> Matrix<F> {
        Matrix::from_columns(self.ambient_dim, &self.vectors)
    }

    pub fn echelon(&self) -> Echelon<F> {
        let mut ech = Echelon::new(self.ambient_dim);
        for v in &self.vectors {
            ech.insert(v.clone());
        }
        ech
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.echelon().contains(v)
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        let ech = self.echelon();
        other.vectors.iter().all(|v| ech.contains(v))
    }

    pub fn sum(&self, other: &Self) -> Self {
        Self::span(self.ambient_dim, self.vectors.iter().chain(&other.vectors).cloned())
    }

    pub fn intersection(&self, other: &Self) -> Self {
        // x = A a = B b  <=>  [A | -B] (a, b) = 0
        let a = self.as_columns();
        let b = other.as_columns();
        let m = Matrix::hstack(&[&a, &(-&b)]);
        let ker = m.kernel();
        let vectors = ker
            .vectors
            .iter()
            .map(|k| a.apply(&k[..self.dim()]))
            .collect::<Vec<_>>();
        Self::span(self.ambient_dim, vectors)
    }

    pub fn coordinates(&self) -> CoordinateMap<F> {
        CoordinateMap::new(self)
    }
}

/// Extracts coordinates with respect to a fixed independent basis.
#[derive(Clone, Debug)]
pub struct CoordinateMap<F> {
    ambient_dim: usize,
    dim: usize,
    reduced: Vec<SparseRow<F>>,
    pivots: Vec<usize>,
    /// `coords = transform^T * v[pivots]`
    transform: Matrix<F>,
}

impl<F: Field> CoordinateMap<F> {
    pub fn new(basis: &SubspaceBasis<F>) -> Self {
        let (d, h) = (basis.ambient_dim, basis.dim());
        let mut ech = Echelon::new(d + h);
        for (i, v) in basis.vectors.iter().enumerate() {
            let mut row = v.clone();
            row.extend((0..h).map(|j| if i == j { F::one() } else { F::zero() }));
            ech.insert(row);
        }
        let rref = ech.finish();
        assert!(
            rref.pivots.iter().all(|&p| p < d) && rref.rank() == h,
            "coordinate basis is not independent"
        );
        let mut reduced = Vec::with_capacity(h);
        let mut transform = Matrix::zeros(h, h);
        for (k, row) in rref.rows.iter().enumerate() {
            let mut r = Vec::new();
            for (c, x) in row {
                if *c < d {
                    r.push((*c, x.clone()));
                } else {
                    transform[(k, c - d)] = x.clone();
                }
            }
            reduced.push(r);
        }
        CoordinateMap {
            ambient_dim: d,
            dim: h,
            reduced,
            pivots: rref.pivots,
            transform,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinates of `v`, or [`Error::Inconsistent`] when `v` is outside
    /// the span.
    pub fn coordinates(&self, v: &[F]) -> Result<Vec<F>> {
        assert_eq!(v.len(), self.ambient_dim, "coordinates: length mismatch");
        let d: Vec<F> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut check = zero_vector::<F>(self.ambient_dim);
        for (row, c) in self.reduced.iter().zip(&d) {
            if c.is_zero() {
                continue;
            }
            for (col, x) in row {
                check[*col] = check[*col].add_ref(&c.mul_ref(x));
            }
        }
        if check.as_slice() != v {
            return Err(Error::Inconsistent);
        }
        let mut out: Vec<F> = zero_vector(self.dim);
        for (k, dk) in d.iter().enumerate() {
            if dk.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let t = &self.transform[(k, j)];
                if !t.is_zero() {
                    *o = o.add_ref(&dk.mul_ref(t));
                }
            }
        }
        Ok(out)
    }
}

/// A quotient `F^n / span(relations)` with a retained section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient<F> {
    /// `q x n`, full row rank, kernel = span(relations).
    pub projection: Matrix<F>,
    /// `n x q`, unit vectors on the non-pivot coordinates.
    pub section: Matrix<F>,
}

impl<F: Field> Quotient<F> {
    pub fn dim(&self) -> usize {
        self.projection.rows()
    }
}

/// Quotient of the ambient space by the span of `relations`. The section
/// picks the standard basis vectors complementary to the elimination pivots.
pub fn quotient<F: Field>(ambient_dim: usize, relations: impl IntoIterator<Item = Vec<F>>) -> Quotient<F> {
    let mut ech = Echelon::new(ambient_dim);
    for r in relations {
        if ech.rank() == ambient_dim {
            break;
        }
        ech.insert(r);
    }
    let rref = ech.finish();
    let mut pivot_row = vec![None; ambient_dim];
    for (k, &p) in rref.pivots.iter().enumerate() {
        pivot_row[p] = Some(k);
    }
    let complement: Vec<usize> = (0..ambient_dim).filter(|&c| pivot_row[c].is_none()).collect();
    let mut position = vec![usize::MAX; ambient_dim];
    for (i, &c) in complement.iter().enumerate() {
        position[c] = i;
    }
    let q = complement.len();
    let mut projection = Matrix::zeros(q, ambient_dim);
    let mut section = Matrix::zeros(ambient_dim, q);
    for (i, &c) in complement.iter().enumerate() {
        projection[(i, c)] = F::one();
        section[(c, i)] = F::one();
    }
    for (row, &p) in rref.rows.iter().zip(&rref.pivots) {
        for (c, x) in row {
            if *c != p {
                projection[(position[*c], p)] = -x.clone();
            }
        }
    }
    Quotient { projection, section }
}
