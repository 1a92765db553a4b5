//! Seeded randomized search over linear combinations of basis vectors.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::Field;

/// Controls every randomized search in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub seed: u64,
    /// Rounds of the expanding coefficient window; round `r` draws from
    /// `-2^r..=2^r`.
    pub rounds: u32,
    /// Trials per round.
    pub trials: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 42,
            rounds: 8,
            trials: 16,
        }
    }
}

/// Outcome of a search that cannot always decide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    /// Certified absence.
    None,
    /// Budget exhausted without a certificate either way.
    Inconclusive,
}

impl<T> Search<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Search<U> {
        match self {
            Search::Found(t) => Search::Found(f(t)),
            Search::None => Search::None,
            Search::Inconclusive => Search::Inconclusive,
        }
    }
}

impl SearchConfig {
    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    /// Coefficient vectors of length `n` in the expanding window, in the
    /// order they are tried.
    pub fn candidates<F: Field>(&self, n: usize) -> impl Iterator<Item = Vec<F>> {
        let mut rng = self.rng();
        let trials = self.trials.max(1);
        (0..self.rounds).flat_map(move |round| {
            let bound = 1i64 << round;
            (0..trials)
                .map(|_| {
                    (0..n)
                        .map(|_| F::from_i64(rng.gen_range(-bound..=bound)))
                        .collect::<Vec<F>>()
                })
                .collect::<Vec<_>>()
        })
    }

    /// Every coefficient vector, when the field is finite and there are at
    /// most `limit` of them.
    pub fn exhaustive<F: Field>(n: usize, limit: usize) -> Option<Vec<Vec<F>>> {
        let elements = F::elements()?;
        let total = elements.len().checked_pow(n as u32)?;
        if total > limit {
            return None;
        }
        let mut out = Vec::with_capacity(total);
        for mut code in 0..total {
            let mut v = Vec::with_capacity(n);
            for _ in 0..n {
                v.push(elements[code % elements.len()].clone());
                code /= elements.len();
            }
            out.push(v);
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rational};

    #[test]
    fn candidates_are_deterministic() {
        let c = SearchConfig::default();
        let a: Vec<Vec<Rational>> = c.candidates(3).take(20).collect();
        let b: Vec<Vec<Rational>> = c.candidates(3).take(20).collect();
        assert_eq!(a, b);
        assert_eq!(c.candidates::<Rational>(2).count(), 8 * 16);
    }

    #[test]
    fn exhaustive_enumeration() {
        let all = SearchConfig::exhaustive::<Fp<2>>(3, 100).unwrap();
        assert_eq!(all.len(), 8);
        assert!(SearchConfig::exhaustive::<Rational>(1, 100).is_none());
        assert!(SearchConfig::exhaustive::<Fp<3>>(10, 100).is_none());
    }
}
