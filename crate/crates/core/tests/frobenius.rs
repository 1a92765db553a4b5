use sepalg::field::Rational;
use sepalg::fixtures::load_catalog;
use sepalg::frobenius::*;
use sepalg::linalg::Matrix;
use sepalg::search::SearchConfig;

type Q = Rational;

const FROBENIUS: [&str; 4] = ["Q->Q", "Q->QC2", "Q->M2Q", "Q->QxQ"];

#[test]
fn frobenius_data_on_the_catalog() {
    let q = load_catalog::<Q>();
    let cfg = SearchConfig::default();
    for name in FROBENIUS {
        let ext = q.extension(name).unwrap();
        let d = frobenius_iso(ext, &cfg)
            .unwrap()
            .found()
            .unwrap_or_else(|| panic!("{name}"));
        d.validate(ext).unwrap();
        assert!(d.dual_bases.is_some(), "{name}");
        assert!(max_right_ideal_in_ker(ext, &d.e).is_zero(), "{name}");
        assert!(ea_subspace(ext, &d.e).unwrap().equal(), "{name}");
        let family = default_test_family(ext).unwrap();
        let approx = verify_e_approximation(ext, &d.e, &family).unwrap();
        assert!(approx.holds(), "{name}: {:?}", approx.counterexamples);
        assert!(!approx.witness.factorizations.is_empty());
        let (_, alpha) = alpha_map(ext, &d.e).unwrap();
        assert!(alpha.inverse().is_some());
        let nd = make_nondegenerate(ext, &d.e, &d.phi).unwrap();
        assert!(nd.holds(), "{name}");
    }
}

#[test]
fn zero_map_is_no_approximation() {
    let q = load_catalog::<Q>();
    let ext = q.extension("Q->QC2").unwrap();
    let zero = Matrix::zeros(1, 2);
    let approx = verify_e_approximation(ext, &zero, &default_test_family(ext).unwrap()).unwrap();
    assert!(!approx.holds());
}

#[test]
fn matrix_algebra_trace_form() {
    let q = load_catalog::<Q>();
    let ext = q.extension("Q->M2Q").unwrap();
    // the trace E_pq -> delta_pq is non-degenerate
    let one = Q::from_integer(1.into());
    let zero = Q::from_integer(0.into());
    let tr = Matrix::from_rows(4, &[vec![one.clone(), zero.clone(), zero, one]]).unwrap();
    assert!(max_right_ideal_in_ker(ext, &tr).is_zero());
    assert!(ea_subspace(ext, &tr).unwrap().equal());
    assert!(solve_dual_bases(ext, &tr).unwrap().is_some());
}

#[test]
fn dual_numbers_are_frobenius_but_not_separable() {
    let q = load_catalog::<Q>();
    let ext = q.extension("Q->Qx2").unwrap();
    let d = frobenius_iso(ext, &SearchConfig::default()).unwrap().found().unwrap();
    assert!(d.dual_bases.is_some());
    assert!(!sepalg::separability::extension_is_separable(ext).unwrap().separable());
}
