//! Univariate polynomials, used for minimal polynomials and root finding
//! while splitting semisimple algebras.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Algebra;
use crate::field::{Field, Rational};
use crate::linalg::{CoordinateMap, Echelon, SubspaceBasis};

/// Coefficients low degree first, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial<F>(Vec<F>);

impl<F: Field> Polynomial<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial(coeffs)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.0
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, t: &F) -> F {
        self.0.iter().rev().fold(F::zero(), |acc, c| acc.mul_ref(t).add_ref(c))
    }

    /// Value at an algebra element, by Horner's rule.
    pub fn eval_in(&self, alg: &Algebra<F>, x: &[F]) -> Vec<F> {
        let mut acc = alg.zero();
        for c in self.0.iter().rev() {
            acc = alg.mul(&acc, x);
            for (a, u) in acc.iter_mut().zip(alg.unit()) {
                *a = a.add_ref(&c.mul_ref(u));
            }
        }
        acc
    }

    /// Quotient by `t - root`; the remainder is discarded.
    pub fn div_linear(&self, root: &F) -> Self {
        let n = self.0.len();
        if n <= 1 {
            return Polynomial(Vec::new());
        }
        let mut q = vec![F::zero(); n - 1];
        let mut carry = F::zero();
        for i in (1..n).rev() {
            carry = self.0[i].add_ref(&carry.mul_ref(root));
            q[i - 1] = carry.clone();
        }
        Polynomial::new(q)
    }

    /// Some root in the field, if one exists. Prime fields are searched
    /// exhaustively; over the rationals the rational root theorem is used.
    pub fn find_root(&self) -> Option<F> {
        if self.degree()? == 0 {
            return None;
        }
        if let Some(elements) = F::elements() {
            return elements.into_iter().find(|t| self.eval(t).is_zero());
        }
        let coeffs: Option<Vec<Rational>> = self.0.iter().map(|c| c.to_rational()).collect();
        rational_root(&coeffs?).and_then(|r| F::from_rational(&r))
    }
}

fn rational_root(coeffs: &[Rational]) -> Option<Rational> {
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    if ints[0].is_zero() {
        return Some(Rational::zero());
    }
    let lead = ints.last()?.abs();
    let constant = ints[0].abs();
    let eval = |r: &Rational| {
        ints.iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * r + Rational::from_integer(c.clone()))
    };
    for p in divisors(&constant)? {
        for q in divisors(&lead)? {
            for sign in [1, -1] {
                let r = Rational::new(BigInt::from(sign) * &p, q.clone());
                if eval(&r).is_zero() {
                    return Some(r);
                }
            }
        }
    }
    None
}

/// Positive divisors by trial division; gives up on very large integers.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.to_u64()?;
    if n > 1 << 40 {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// Minimal polynomial of `x`, made monic.
pub fn minimal_polynomial<F: Field>(alg: &Algebra<F>, x: &[F]) -> Polynomial<F> {
    let n = alg.dim();
    let mut ech = Echelon::new(n);
    let mut powers = vec![alg.unit().to_vec()];
    ech.insert(powers[0].clone());
    loop {
        let next = alg.mul(powers.last().expect("nonempty"), x);
        if ech.contains(&next) {
            let basis = SubspaceBasis {
                ambient_dim: n,
                vectors: powers.clone(),
            };
            let coords = CoordinateMap::new(&basis)
                .coordinates(&next)
                .expect("dependent power lies in the span");
            let mut c: Vec<F> = coords.into_iter().map(|v| -v).collect();
            c.push(F::one());
            return Polynomial::new(c);
        }
        ech.insert(next.clone());
        powers.push(next);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;

    type Q = Rational;

    fn poly(c: &[i64]) -> Polynomial<Q> {
        Polynomial::new(c.iter().map(|&v| Q::from_i64(v)).collect())
    }

    #[test]
    fn rational_roots() {
        // 2t^2 - 3t + 1 = (2t - 1)(t - 1)
        let p = poly(&[1, -3, 2]);
        let r = p.find_root().unwrap();
        assert!(p.eval(&r).is_zero());
        assert_eq!(poly(&[1, 0, 1]).find_root(), None);
        assert_eq!(poly(&[0, 1]).find_root(), Some(Q::zero()));
    }

    #[test]
    fn division_by_linear_factor() {
        let p = poly(&[-1, 0, 1]);
        assert_eq!(p.div_linear(&Q::one()), poly(&[1, 1]));
    }

    #[test]
    fn minimal_polynomial_of_group_element() {
        let c2 = Algebra::<Q>::cyclic_group(2);
        let m = minimal_polynomial(&c2, &c2.basis_element(1));
        assert_eq!(m, poly(&[-1, 0, 1]));
        assert!(is_zero(&m.eval_in(&c2, &c2.basis_element(1))));
    }

    #[test]
    fn roots_in_prime_field() {
        type F3 = Fp<3>;
        let p = Polynomial::new(vec![F3::from_i64(1), F3::zero(), F3::one()]);
        assert_eq!(p.find_root(), None);
        let p = Polynomial::new(vec![F3::from_i64(-1), F3::zero(), F3::one()]);
        assert!(p.find_root().is_some());
    }

    fn is_zero(v: &[Q]) -> bool {
        v.iter().all(|x| x.is_zero())
    }
}
