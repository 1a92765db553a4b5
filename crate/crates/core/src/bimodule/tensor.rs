use super::Bimodule;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{kron_vectors, quotient, Matrix, Quotient};

/// `M (x)_R N` realized as a quotient of `M (x)_k N`, whose basis vector
/// `m_a (x) n_b` has index `a * dim N + b`.
#[derive(Clone, Debug)]
pub struct TensorProduct<F> {
    pub bimodule: Bimodule<F>,
    pub quotient: Quotient<F>,
    pub left_dim: usize,
    pub right_dim: usize,
}

impl<F: Field> TensorProduct<F> {
    /// Class of `m (x) n`.
    pub fn class(&self, m: &[F], n: &[F]) -> Vec<F> {
        self.quotient.projection.apply(&kron_vectors(m, n))
    }

    /// Class of an element of `M (x)_k N`.
    pub fn project(&self, v: &[F]) -> Vec<F> {
        self.quotient.projection.apply(v)
    }

    /// Canonical lift of a class to `M (x)_k N`.
    pub fn lift(&self, x: &[F]) -> Vec<F> {
        self.quotient.section.apply(x)
    }

    /// `f (x) g` from this tensor product to `target`.
    pub fn induced(&self, target: &TensorProduct<F>, f: &Matrix<F>, g: &Matrix<F>) -> Matrix<F> {
        let k = f.kron(g);
        &(&target.quotient.projection * &k) * &self.quotient.section
    }

    /// A map out of `M (x)_k N` that vanishes on the relations, pushed down
    /// to the quotient; `None` when it does not vanish.
    pub fn descend(&self, full: &Matrix<F>) -> Option<Matrix<F>> {
        let down = full * &self.quotient.section;
        (&down * &self.quotient.projection == *full).then_some(down)
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }
}

/// `M (x)_R N` for a `(T, R)`-bimodule `M` and an `(R, S)`-bimodule `N`.
/// Relations `m r (x) n - m (x) r n` are imposed for generators `r` of `R`.
pub fn tensor_over<F: Field>(m: &Bimodule<F>, n: &Bimodule<F>) -> Result<TensorProduct<F>> {
    if m.right_algebra() != n.left_algebra() {
        return Err(Error::AlgebraMismatch(
            "middle algebras of the tensor product differ".into(),
        ));
    }
    let (dm, dn) = (m.dim(), n.dim());
    let im = Matrix::identity(dm);
    let in_ = Matrix::identity(dn);
    let mut relations = Vec::new();
    for &g in m.right_algebra().generators() {
        let rel = &m.right_action()[g].kron(&in_) - &im.kron(&n.left_action()[g]);
        relations.extend(rel.columns().into_iter().filter(|c| c.iter().any(|x| !x.is_zero())));
    }
    let qt = quotient(dm * dn, relations.iter().cloned());
    let rel_matrix = Matrix::from_columns(dm * dn, &relations);
    let push = |full: Matrix<F>| -> Result<Matrix<F>> {
        if !relations.is_empty() && !(&(&qt.projection * &full) * &rel_matrix).is_zero() {
            return Err(Error::Coherence("action does not descend to the tensor product".into()));
        }
        Ok(&(&qt.projection * &full) * &qt.section)
    };
    let left_action = m
        .left_action()
        .iter()
        .map(|a| push(a.kron(&in_)))
        .collect::<Result<Vec<_>>>()?;
    let right_action = n
        .right_action()
        .iter()
        .map(|a| push(im.kron(a)))
        .collect::<Result<Vec<_>>>()?;
    let bimodule = Bimodule::from_parts(
        m.left_algebra().clone(),
        n.right_algebra().clone(),
        qt.dim(),
        left_action,
        right_action,
    );
    Ok(TensorProduct {
        bimodule,
        quotient: qt,
        left_dim: dm,
        right_dim: dn,
    })
}
