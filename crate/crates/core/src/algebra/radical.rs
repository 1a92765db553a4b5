//! The Jacobson radical via trace forms.

use super::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{kernel_of_rows, Matrix, SubspaceBasis};

/// The radical together with its nilpotency index (the least `k` with
/// `J^k = 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Radical<F> {
    pub basis: SubspaceBasis<F>,
    pub nilpotency: usize,
}

/// Computes the Jacobson radical. In characteristic 0 it is the kernel of
/// the trace form `(x, y) -> tr(L_{xy})`; in characteristic `p` the
/// iterated trace functionals on integer lifts are used. The result is
/// checked to be a nilpotent two-sided ideal.
pub fn radical<F: Field>(alg: &Algebra<F>) -> Result<Radical<F>> {
    let basis = if F::CHARACTERISTIC == 0 {
        trace_form_kernel(alg)
    } else {
        modular_radical(alg)
    };
    check_ideal(alg, &basis)?;
    let nilpotency =
        nilpotency_index(alg, &basis).ok_or_else(|| Error::Coherence("computed radical is not nilpotent".into()))?;
    Ok(Radical { basis, nilpotency })
}

fn trace_form_kernel<F: Field>(alg: &Algebra<F>) -> SubspaceBasis<F> {
    let n = alg.dim();
    let traces: Vec<F> = alg.left_regular().iter().map(Matrix::trace).collect();
    // row i: x -> tr(L_{x b_i}) = sum_j x_j sum_k c_{ji}^k tr(L_k)
    let rows = (0..n).map(|i| {
        (0..n)
            .map(|j| {
                (0..n).fold(F::zero(), |acc, k| {
                    acc.add_ref(&alg.constant(j, i, k).mul_ref(&traces[k]))
                })
            })
            .collect::<Vec<F>>()
    });
    kernel_of_rows(n, rows.collect::<Vec<_>>())
}

fn modular_radical<F: Field>(alg: &Algebra<F>) -> SubspaceBasis<F> {
    let n = alg.dim();
    let p = F::CHARACTERISTIC as u128;
    let mut levels = 0;
    let mut pk = p;
    while pk <= n as u128 {
        levels += 1;
        pk *= p;
    }
    let mut current = SubspaceBasis::full(n);
    let mut pj: u128 = 1;
    for _ in 0..=levels {
        if current.is_zero() {
            break;
        }
        let modulus = pj * p;
        let g = |x: &[F]| -> F {
            let lift: Vec<u128> = alg
                .left_matrix(x)
                .entries()
                .iter()
                .map(|c| c.residue().expect("prime field") as u128)
                .collect();
            let t = trace_of_power(n, &lift, pj, modulus);
            F::from_i64((t / pj) as i64)
        };
        let d = current.dim();
        let rows: Vec<Vec<F>> = (0..n)
            .map(|i| {
                let bi = alg.basis_element(i);
                current.vectors.iter().map(|v| g(&alg.mul(v, &bi))).collect()
            })
            .collect();
        let ker = kernel_of_rows(d, rows);
        let vectors = ker
            .vectors
            .iter()
            .map(|a| crate::linalg::combine(n, a, &current.vectors))
            .collect::<Vec<_>>();
        current = SubspaceBasis::span(n, vectors);
        pj *= p;
    }
    current
}

/// `tr(M^e) mod modulus` for a square integer matrix.
fn trace_of_power(n: usize, m: &[u128], mut e: u128, modulus: u128) -> u128 {
    let mul = |a: &[u128], b: &[u128]| -> Vec<u128> {
        let mut out = vec![0u128; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = a[i * n + k];
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] = (out[i * n + j] + x * b[k * n + j]) % modulus;
                }
            }
        }
        out
    };
    let mut base: Vec<u128> = m.iter().map(|x| x % modulus).collect();
    let mut acc: Vec<u128> = (0..n * n).map(|i| u128::from(i % (n + 1) == 0)).collect();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        base = mul(&base, &base);
        e >>= 1;
    }
    (0..n).fold(0, |t, i| (t + acc[i * n + i]) % modulus)
}

fn check_ideal<F: Field>(alg: &Algebra<F>, ideal: &SubspaceBasis<F>) -> Result<()> {
    let ech = ideal.echelon();
    for v in &ideal.vectors {
        for i in 0..alg.dim() {
            let b = alg.basis_element(i);
            if !ech.contains(&alg.mul(&b, v)) || !ech.contains(&alg.mul(v, &b)) {
                return Err(Error::Coherence("computed radical is not a two-sided ideal".into()));
            }
        }
    }
    Ok(())
}

/// Least `k` with `I^k = 0`, if it is at most `dim + 1`.
pub(crate) fn nilpotency_index<F: Field>(alg: &Algebra<F>, ideal: &SubspaceBasis<F>) -> Option<usize> {
    let n = alg.dim();
    let mut power = SubspaceBasis::full(n);
    for k in 0..=n + 1 {
        if power.is_zero() {
            return Some(k);
        }
        let products = power
            .vectors
            .iter()
            .flat_map(|x| ideal.vectors.iter().map(move |y| (x, y)))
            .map(|(x, y)| alg.mul(x, y))
            .collect::<Vec<_>>();
        power = SubspaceBasis::span(n, products);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rational};

    type Q = Rational;

    #[test]
    fn matrix_algebra_is_semisimple() {
        let m2 = Algebra::matrix_algebra(&Algebra::<Q>::ground(), 2);
        assert!(radical(&m2).unwrap().basis.is_zero());
    }

    #[test]
    fn dual_numbers() {
        let a = Algebra::<Q>::truncated_polynomial(2);
        let r = radical(&a).unwrap();
        assert_eq!(r.basis.vectors, vec![a.basis_element(1)]);
        assert_eq!(r.nilpotency, 2);
    }

    #[test]
    fn group_algebra_in_characteristic_two() {
        let a = Algebra::<Fp<2>>::cyclic_group(2);
        let r = radical(&a).unwrap();
        assert_eq!(r.basis.dim(), 1);
        assert!(r.basis.contains(&[Fp::new(1), Fp::new(1)]));
    }

    #[test]
    fn group_algebra_in_characteristic_three_is_semisimple() {
        let a = Algebra::<Fp<3>>::cyclic_group(2);
        assert!(radical(&a).unwrap().basis.is_zero());
        let a = Algebra::<Fp<3>>::cyclic_group(3);
        assert_eq!(radical(&a).unwrap().basis.dim(), 2);
    }

    #[test]
    fn truncated_polynomials_mod_p() {
        let a = Algebra::<Fp<2>>::truncated_polynomial(4);
        let r = radical(&a).unwrap();
        assert_eq!(r.basis.dim(), 3);
        assert_eq!(r.nilpotency, 4);
    }
}
