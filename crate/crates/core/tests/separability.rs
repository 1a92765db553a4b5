use std::sync::Arc;

use sepalg::bimodule::{dual_right, evaluation_map, is_isomorphic, Bimodule};
use sepalg::field::{Fp, Rational};
use sepalg::fixtures::load_catalog;
use sepalg::linalg::SubspaceBasis;
use sepalg::search::{Search, SearchConfig};
use sepalg::separability::*;

type Q = Rational;

#[test]
fn catalog_verdicts_are_coherent() {
    let q = load_catalog::<Q>();
    let want = [
        ("Q-reg", true),
        ("QC2-reg", true),
        ("Qx2-reg", true),
        ("QC2_Q", true),
        ("Qx2_Q", false),
        ("M2Q_Q", true),
        ("QxQ_Q", true),
        ("M2A2_A2", true),
        ("M2Q-col", true),
        ("M2Q-row", true),
    ];
    for (name, sep) in want {
        let m = q.bimodule(name).unwrap_or_else(|| panic!("{name}"));
        let rep = is_separable(m).unwrap();
        assert_eq!(rep.separable(), sep, "{name}");
    }
    let f2 = load_catalog::<Fp<2>>();
    assert!(!is_separable(f2.bimodule("F2C2_F2").unwrap()).unwrap().separable());
    assert!(is_separable(f2.bimodule("F2C2-reg").unwrap()).unwrap().separable());
}

#[test]
fn every_catalog_bimodule_decides() {
    for (name, m) in &load_catalog::<Q>().bimodules {
        is_separable(m).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn split_pairing_through_the_dual() {
    let q = load_catalog::<Q>();
    for name in ["QC2_Q", "M2Q-col", "Qx2_Q"] {
        let m = q.bimodule(name).unwrap();
        let p = evaluation_map(m).unwrap();
        let x = p.dual.bimodule.clone();
        let trace = verify_split_pairing(m, &x, &p.tensor, &p.evaluation).unwrap();
        assert_eq!(trace.is_some(), is_separable(m).unwrap().separable(), "{name}");
        if let Some(t) = trace {
            assert!(t.phi1.is_identity());
        }
    }
}

#[test]
fn tensor_transport() {
    let q = load_catalog::<Q>();
    let m = q.bimodule("M2Q-col").unwrap();
    let n = q.bimodule("Q-reg").unwrap();
    let em = is_separable(m).unwrap().element.unwrap();
    let en = is_separable(n).unwrap().element.unwrap();
    let (mn, e) = sep_element_tensor(&em, &en).unwrap();
    assert_eq!(mn.dim(), 2);
    e.validate().unwrap();

    let a = q.bimodule("QC2_Q").unwrap();
    let b = q.bimodule("M2Q-row").unwrap();
    let ea = is_separable(a).unwrap().element.unwrap();
    let bb = q.bimodule("Q-reg").unwrap();
    let eb = is_separable(bb).unwrap().element.unwrap();
    sep_element_tensor(&ea, &eb).unwrap();
    assert!(is_separable(b).unwrap().separable());
}

#[test]
fn direct_sum_and_powers() {
    let q = load_catalog::<Q>();
    let m = q.bimodule("QC2_Q").unwrap();
    let e = is_separable(m).unwrap().element.unwrap();
    let other = Bimodule::regular(Arc::new(sepalg::algebra::Algebra::cyclic_group(2)))
        .restrict_right(q.extension("Q->QC2").unwrap())
        .unwrap();
    sep_element_directsum(&e, &other).unwrap();
    for n in [2, 3] {
        let en = sep_element_to_power(&e, n).unwrap();
        let back = sep_element_from_power(&en, m, n).unwrap();
        back.validate().unwrap();
        let pow = m.power(n).sum;
        assert!(is_separable(&pow).unwrap().separable());
    }
    let dual = q.bimodule("Qx2_Q").unwrap();
    assert!(!is_separable(&dual.power(2).sum).unwrap().separable());
}

#[test]
fn hom_transfer() {
    let q = load_catalog::<Q>();
    let m = q.bimodule("QC2_Q").unwrap();
    for x in ["QC2_Q", "Q-reg", "M2Q_Q"] {
        let x = q.bimodule(x).unwrap();
        let rep = check_hom_transfer(m, x).unwrap();
        assert!(rep.report.separable());
    }
}

#[test]
fn biseparability() {
    let q = load_catalog::<Q>();
    assert!(is_biseparable(q.bimodule("QC2_Q").unwrap()).unwrap().biseparable());
    assert!(!is_biseparable(q.bimodule("Qx2_Q").unwrap()).unwrap().biseparable());
    let star = dual_right(q.bimodule("M2Q-col").unwrap()).unwrap();
    is_separable(&star.bimodule).unwrap();
}

#[test]
fn faithful_casimir_matches_embedding() {
    let q = load_catalog::<Q>();
    let cfg = SearchConfig::default();
    for name in ["QC2_Q", "M2Q_Q", "Qx2_Q", "Q-reg", "M2Q-col"] {
        let m = q.bimodule(name).unwrap();
        let p = evaluation_map(m).unwrap();
        let found = faithful_casimir(&p, &cfg).unwrap();
        if let Search::Found(x) = &found {
            // T x is a copy of T inside M (x) *M
            let t = m.left_algebra();
            let tx = SubspaceBasis::span(
                p.tensor.dim(),
                p.tensor_module.right_action().iter().map(|r| r.apply(x)),
            );
            assert_eq!(tx.dim(), t.dim(), "{name}");
            let reg = Bimodule::regular(t.clone());
            let _ = is_isomorphic(&reg, &reg, &cfg).unwrap();
        }
        assert_ne!(found, Search::Inconclusive, "{name}");
    }
}

#[test]
fn tensor_criterion_for_separable_factors() {
    let q = load_catalog::<Q>();
    let pairs = [
        ("QC2_Q", "Q-reg"),
        ("M2Q-col", "M2Q-row"),
        ("M2Q-row", "M2Q-col"),
        ("QC2-reg", "QC2-reg"),
    ];
    for (a, b) in pairs {
        let c = tensor_criterion(q.bimodule(a).unwrap(), q.bimodule(b).unwrap()).unwrap();
        assert!(c.evaluation_split.section().is_some(), "{a} {b}");
        assert!(c.tensor.separable());
    }
}
