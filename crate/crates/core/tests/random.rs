use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sepalg::bimodule::{conjugated_map, is_split_epi};
use sepalg::fixtures::{load_catalog, random_bimodules};
use sepalg::linalg::Matrix;
use sepalg::separability::is_separable;
use sepalg::{Field, Q};

/// A product of elementary matrices, so both it and its inverse stay integral.
fn unimodular(rng: &mut ChaCha8Rng, n: usize) -> Matrix<Q> {
    let mut p = Matrix::<Q>::identity(n);
    for _ in 0..2 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i != j {
            let c = Q::from_i64(rng.gen_range(-1..=1));
            let e = Matrix::from_fn(n, n, |r, s| {
                if r == s {
                    Q::from_i64(1)
                } else if (r, s) == (i, j) {
                    c.clone()
                } else {
                    Q::from_i64(0)
                }
            });
            p = &p * &e;
        }
    }
    p
}

#[test]
fn both_routes_agree_on_random_bimodules() {
    let cat = load_catalog::<Q>();
    let sample = random_bimodules(&cat, 60, 6, 42);
    let mut verdicts = [0usize; 2];
    for (name, m) in &sample {
        let rep = is_separable(m).unwrap_or_else(|e| panic!("{name}: {e}"));
        if let Some(e) = &rep.element {
            e.validate().unwrap();
        }
        verdicts[rep.separable() as usize] += 1;
    }
    // the sample must exercise both outcomes
    assert!(verdicts[0] > 0 && verdicts[1] > 0, "{verdicts:?}");
}

#[test]
fn splitting_survives_basis_changes() {
    let cat = load_catalog::<Q>();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (name, m) in random_bimodules(&cat, 12, 4, 9) {
        let rep = is_separable(&m).unwrap();
        let u = &rep.pairing.evaluation;
        let ps = unimodular(&mut rng, u.source.dim());
        let pt = unimodular(&mut rng, u.target.dim());
        let moved = conjugated_map(u, &ps, &pt).unwrap();
        let again = is_split_epi(&moved).unwrap();
        assert_eq!(again.section().is_some(), rep.separable(), "{name}");
    }
}
