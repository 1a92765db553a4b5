use super::hom::{hom_space, HomKind};
use super::Bimodule;
use crate::algebra::linear_combination;
use crate::error::Result;
use crate::field::Field;
use crate::linalg::Matrix;
use crate::search::{Search, SearchConfig};

/// Search space sizes up to which finite fields are enumerated exhaustively.
const EXHAUSTIVE_LIMIT: usize = 4096;

/// An invertible element of the span of `basis` (square matrices). Exact
/// `None` when the span is zero, one-dimensional, or small enough to
/// enumerate; otherwise randomized with [`Search::Inconclusive`] on failure.
pub fn random_invertible<F: Field>(basis: &[Matrix<F>], cfg: &SearchConfig) -> Search<Matrix<F>> {
    let Some(first) = basis.first() else {
        return Search::None;
    };
    let (rows, cols) = (first.rows(), first.cols());
    if rows != cols {
        return Search::None;
    }
    if let Some(m) = basis.iter().find(|m| !m.determinant().is_zero()) {
        return Search::Found(m.clone());
    }
    if basis.len() == 1 {
        return Search::None;
    }
    if let Some(all) = SearchConfig::exhaustive::<F>(basis.len(), EXHAUSTIVE_LIMIT) {
        return all
            .into_iter()
            .map(|c| linear_combination(rows, cols, &c, basis))
            .find(|m| !m.determinant().is_zero())
            .map_or(Search::None, Search::Found);
    }
    cfg.candidates::<F>(basis.len())
        .map(|c| linear_combination(rows, cols, &c, basis))
        .find(|m| !m.determinant().is_zero())
        .map_or(Search::Inconclusive, Search::Found)
}

/// An invertible bimodule map `M -> N`, a certified "no", or inconclusive.
pub fn is_isomorphic<F: Field>(m: &Bimodule<F>, n: &Bimodule<F>, cfg: &SearchConfig) -> Result<Search<Matrix<F>>> {
    if m.dim() != n.dim() || m.left_algebra() != n.left_algebra() || m.right_algebra() != n.right_algebra() {
        return Ok(Search::None);
    }
    if m.dim() == 0 {
        return Ok(Search::Found(Matrix::zeros(0, 0)));
    }
    let hom = hom_space(m, n, HomKind::Bi)?;
    Ok(random_invertible(&hom, cfg))
}
