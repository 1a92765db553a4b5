//! Complete sets of primitive orthogonal idempotents, found in the split
//! semisimple quotient `A/J` and lifted back through the radical.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::minimal_polynomial;
use super::radical::radical;
use super::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{add_vectors, combine, is_zero_vector, sub_vectors, Matrix, SubspaceBasis};

const SPLIT_SEED: u64 = 0x5eed;
const RANDOM_TRIALS: usize = 64;

/// Primitive orthogonal idempotents summing to one, grouped by the simple
/// factor of `A/J` each belongs to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentDecomposition<F> {
    pub idempotents: Vec<Vec<F>>,
    /// `blocks[i]` is the simple factor containing the image of `idempotents[i]`.
    pub blocks: Vec<usize>,
    /// Matrix size of each simple factor.
    pub block_sizes: Vec<usize>,
}

impl<F> IdempotentDecomposition<F> {
    /// One idempotent per simple factor, for building projective covers.
    pub fn representatives(&self) -> Vec<&Vec<F>> {
        (0..self.block_sizes.len())
            .map(|b| {
                let i = self.blocks.iter().position(|&x| x == b).expect("nonempty block");
                &self.idempotents[i]
            })
            .collect()
    }
}

pub fn primitive_idempotents<F: Field>(alg: &Algebra<F>) -> Result<IdempotentDecomposition<F>> {
    let rad = radical(alg)?;
    let (top, qt) = alg.quotient_by_ideal(&rad.basis)?;
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);

    let mut idempotents_top = Vec::new();
    let mut blocks = Vec::new();
    let mut block_sizes = Vec::new();
    for (b, central) in central_idempotents(&top, &mut rng)?.into_iter().enumerate() {
        let (block, emb) = top.corner(&central)?;
        let size = integer_sqrt(block.dim())
            .ok_or_else(|| Error::NotSplitOverField(format!("simple factor of dimension {}", block.dim())))?;
        let local = split_simple(&block, size, &mut rng)?;
        for e in local {
            idempotents_top.push(emb.apply(&e));
            blocks.push(b);
        }
        block_sizes.push(size);
    }

    // lift through the radical one corner at a time
    let mut remaining = alg.unit().to_vec();
    let mut idempotents = Vec::with_capacity(idempotents_top.len());
    let last = idempotents_top.len() - 1;
    for (i, e) in idempotents_top.iter().enumerate() {
        if i == last {
            idempotents.push(remaining.clone());
            break;
        }
        let x = qt.section.apply(e);
        let x = alg.mul(&alg.mul(&remaining, &x), &remaining);
        let lifted = newton_lift(alg, x, rad.nilpotency)?;
        remaining = sub_vectors(&remaining, &lifted);
        idempotents.push(lifted);
    }

    let decomposition = IdempotentDecomposition {
        idempotents,
        blocks,
        block_sizes,
    };
    verify(alg, &decomposition)?;
    Ok(decomposition)
}

/// `x <- 3x^2 - 2x^3` until exactly idempotent.
fn newton_lift<F: Field>(alg: &Algebra<F>, mut x: Vec<F>, nilpotency: usize) -> Result<Vec<F>> {
    let three = F::from_i64(3);
    let two = F::from_i64(2);
    for _ in 0..=nilpotency + 1 {
        let x2 = alg.mul(&x, &x);
        if x2 == x {
            return Ok(x);
        }
        let x3 = alg.mul(&x2, &x);
        x = x2
            .iter()
            .zip(&x3)
            .map(|(a, b)| three.mul_ref(a).sub_ref(&two.mul_ref(b)))
            .collect();
    }
    Err(Error::Coherence("idempotent lifting did not converge".into()))
}

fn verify<F: Field>(alg: &Algebra<F>, d: &IdempotentDecomposition<F>) -> Result<()> {
    let mut sum = alg.zero();
    for (i, e) in d.idempotents.iter().enumerate() {
        sum = add_vectors(&sum, e);
        for (j, f) in d.idempotents.iter().enumerate() {
            let ef = alg.mul(e, f);
            let expected = if i == j { e.clone() } else { alg.zero() };
            if ef != expected {
                return Err(Error::Coherence(format!("idempotents {i} and {j} are not orthogonal")));
            }
        }
    }
    if sum != alg.unit() {
        return Err(Error::Coherence("idempotents do not sum to one".into()));
    }
    Ok(())
}

fn integer_sqrt(n: usize) -> Option<usize> {
    (0..=n).find(|r| r * r >= n).filter(|r| r * r == n)
}

fn random_element<F: Field>(n: usize, rng: &mut ChaCha8Rng, basis: &[Vec<F>]) -> Vec<F> {
    let coeffs: Vec<F> = (0..basis.len()).map(|_| F::from_i64(rng.gen_range(-3..=3))).collect();
    combine(n, &coeffs, basis)
}

/// The primitive central idempotents of a semisimple algebra.
fn central_idempotents<F: Field>(alg: &Algebra<F>, rng: &mut ChaCha8Rng) -> Result<Vec<Vec<F>>> {
    let center = alg.center();
    if center.dim() == 1 {
        return Ok(vec![alg.unit().to_vec()]);
    }
    let n = alg.dim();
    let candidates = center
        .vectors
        .clone()
        .into_iter()
        .chain((0..RANDOM_TRIALS).map(|_| random_element(n, rng, &center.vectors)));
    for z in candidates {
        let m = minimal_polynomial(alg, &z);
        if m.degree() < Some(2) {
            continue;
        }
        let Some(root) = m.find_root() else {
            return Err(Error::NotSplitOverField(
                "center contains a proper field extension".into(),
            ));
        };
        let q = m.div_linear(&root);
        let scale = q
            .eval(&root)
            .inverse()
            .ok_or_else(|| Error::Coherence("repeated eigenvalue in a semisimple center".into()))?;
        let e: Vec<F> = q.eval_in(alg, &z).iter().map(|c| c.mul_ref(&scale)).collect();
        let f = sub_vectors(alg.unit(), &e);
        let mut out = Vec::new();
        for part in [e, f] {
            let (corner, emb) = alg.corner(&part)?;
            for c in central_idempotents(&corner, rng)? {
                out.push(emb.apply(&c));
            }
        }
        return Ok(out);
    }
    Err(Error::NotSplitOverField("could not split the center".into()))
}

/// Primitive idempotents of a simple algebra assumed to be `M_size(k)`.
fn split_simple<F: Field>(alg: &Algebra<F>, size: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Vec<F>>> {
    if alg.dim() == 1 {
        return Ok(vec![alg.unit().to_vec()]);
    }
    let n = alg.dim();
    let basis: Vec<Vec<F>> = (0..n).map(|i| alg.basis_element(i)).collect();
    let candidates = basis
        .clone()
        .into_iter()
        .chain((0..RANDOM_TRIALS).map(|_| random_element(n, rng, &basis)));
    for b in candidates {
        let m = minimal_polynomial(alg, &b);
        if m.degree() < Some(2) {
            continue;
        }
        let Some(root) = m.find_root() else { continue };
        let z: Vec<F> = b
            .iter()
            .zip(alg.unit())
            .map(|(x, u)| x.sub_ref(&root.mul_ref(u)))
            .collect();
        let Some(e) = left_identity_of_right_ideal(alg, &z) else {
            continue;
        };
        let f = sub_vectors(alg.unit(), &e);
        let mut out = Vec::new();
        for part in [e, f] {
            let (corner, emb) = alg.corner(&part)?;
            let k = integer_sqrt(corner.dim())
                .ok_or_else(|| Error::NotSplitOverField(format!("corner of dimension {}", corner.dim())))?;
            for c in split_simple(&corner, k, rng)? {
                out.push(emb.apply(&c));
            }
        }
        if out.len() != size {
            return Err(Error::NotSplitOverField(
                "simple factor is not a full matrix algebra".into(),
            ));
        }
        return Ok(out);
    }
    Err(Error::NotSplitOverField(
        "no zero divisor found in a simple factor".into(),
    ))
}

/// For a zero divisor `z`, an idempotent `e` with `eI = I` for the right
/// ideal `I = zA`; `None` when `z` is invertible or zero.
fn left_identity_of_right_ideal<F: Field>(alg: &Algebra<F>, z: &[F]) -> Option<Vec<F>> {
    let n = alg.dim();
    if is_zero_vector(z) {
        return None;
    }
    let ideal = SubspaceBasis::span(n, alg.left_matrix(z).columns());
    if ideal.dim() == n {
        return None;
    }
    // e = sum a_k v_k with e v_j = v_j for all j
    let d = ideal.dim();
    let mut blocks = Vec::with_capacity(d);
    let mut rhs = Vec::with_capacity(d * n);
    for v in &ideal.vectors {
        let rv = alg.right_matrix(v);
        let cols: Vec<Vec<F>> = ideal.vectors.iter().map(|u| rv.apply(u)).collect();
        blocks.push(Matrix::from_columns(n, &cols));
        rhs.extend(v.iter().cloned());
    }
    let refs: Vec<&Matrix<F>> = blocks.iter().collect();
    let system = Matrix::vstack(&refs);
    let sol = system.solve(&rhs).ok()?;
    Some(combine(n, &sol.particular, &ideal.vectors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PathAlgebra, QuiverPresentation};
    use crate::field::{Fp, Rational};
    use num_traits::Zero;

    type Q = Rational;

    fn half() -> Q {
        Q::parse_exact("1/2").unwrap()
    }

    #[test]
    fn product_of_fields() {
        let k = Algebra::<Q>::ground();
        let kk = Algebra::direct_product(&k, &k);
        let d = primitive_idempotents(&kk).unwrap();
        let mut es = d.idempotents.clone();
        es.sort_by_key(|e| e[0].is_zero());
        assert_eq!(
            es,
            vec![
                vec![Q::from_i64(1), Q::from_i64(0)],
                vec![Q::from_i64(0), Q::from_i64(1)]
            ]
        );
    }

    #[test]
    fn group_algebra_c2() {
        let c2 = Algebra::<Q>::cyclic_group(2);
        let d = primitive_idempotents(&c2).unwrap();
        let mut es = d.idempotents.clone();
        es.sort_by(|a, b| b[1].cmp(&a[1]));
        assert_eq!(es, vec![vec![half(), half()], vec![half(), -half()]]);
    }

    #[test]
    fn a2_trivial_paths() {
        let pa = PathAlgebra::new(&QuiverPresentation::<Q>::new(2, vec![(0, 1)])).unwrap();
        let d = primitive_idempotents(&pa.algebra).unwrap();
        assert_eq!(d.idempotents.len(), 2);
        assert_eq!(d.block_sizes, vec![1, 1]);
        for e in &d.idempotents {
            let (corner, _) = pa.algebra.corner(e).unwrap();
            assert_eq!(corner.dim(), 1);
        }
    }

    #[test]
    fn matrix_algebras_split() {
        let m3 = Algebra::matrix_algebra(&Algebra::<Q>::ground(), 3);
        let d = primitive_idempotents(&m3).unwrap();
        assert_eq!(d.idempotents.len(), 3);
        assert_eq!(d.block_sizes, vec![3]);
        let pa = PathAlgebra::new(&QuiverPresentation::<Q>::new(2, vec![(0, 1)])).unwrap();
        let m2a2 = Algebra::matrix_algebra(&pa.algebra, 2);
        let d = primitive_idempotents(&m2a2).unwrap();
        assert_eq!(d.idempotents.len(), 4);
        assert_eq!(d.block_sizes, vec![2, 2]);
    }

    #[test]
    fn local_algebra_in_characteristic_two() {
        let a = Algebra::<Fp<2>>::cyclic_group(2);
        let d = primitive_idempotents(&a).unwrap();
        assert_eq!(d.idempotents, vec![a.unit().to_vec()]);
    }

    #[test]
    fn non_split_field_extension() {
        // Q[x]/(x^2 + 1)
        let n = 2;
        let mut c = vec![Q::from_i64(0); 8];
        let idx = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
        c[idx(0, 0, 0)] = Q::from_i64(1);
        c[idx(0, 1, 1)] = Q::from_i64(1);
        c[idx(1, 0, 1)] = Q::from_i64(1);
        c[idx(1, 1, 0)] = Q::from_i64(-1);
        let a = Algebra::from_flat(2, c, vec![Q::from_i64(1), Q::from_i64(0)]).unwrap();
        assert!(matches!(primitive_idempotents(&a), Err(Error::NotSplitOverField(_))));
    }
}
