use std::sync::Arc;

use proptest::prelude::*;
use sepalg::algebra::RingExtension;
use sepalg::bimodule::{hom_space, HomKind, LeftModule};
use sepalg::field::Rational;
use sepalg::fixtures::{column_bimodule, column_module, load_catalog, Catalog};
use sepalg::homological::*;
use sepalg::linalg::Matrix;
use sepalg::separability::{extension_is_separable, is_separable};

type Q = Rational;

fn catalog() -> Catalog<Q> {
    load_catalog::<Q>()
}

fn combo(basis: &[Matrix<Q>], coeffs: &[i64]) -> Matrix<Q> {
    let (r, c) = (basis[0].rows(), basis[0].cols());
    let cs: Vec<Q> = coeffs.iter().map(|&x| Q::from_integer(x.into())).collect();
    sepalg::algebra::linear_combination(r, c, &cs, basis)
}

#[test]
fn induction_bounds_on_the_matrix_extension() {
    let q = catalog();
    let ext = q.extension("A2->M2A2").unwrap();
    let report = verify_induction_bounds(ext, q.modules("A2"), q.modules("M2A2"), DEFAULT_CUTOFF).unwrap();
    assert!(report.holds(), "{report:?}");
    assert_eq!(report.top_over_base, ProjDim::Finite(0));
    let s1 = report
        .items
        .iter()
        .find(|i| i.over == "base" && i.module == "S1")
        .unwrap();
    assert_eq!((s1.proj_dim, s1.other), (ProjDim::Finite(1), ProjDim::Finite(1)));
}

#[test]
fn induction_bounds_need_separability() {
    let f2 = load_catalog::<sepalg::field::Fp<2>>();
    let ext = f2.extension("F2->F2C2").unwrap();
    let err = verify_induction_bounds(ext, f2.modules("F2"), f2.modules("F2C2"), 4).unwrap_err();
    assert!(matches!(err, sepalg::Error::Precondition(_)));
}

#[test]
fn change_of_rings_bounds() {
    let q = catalog();
    let ext = q.extension("A2->M2A2").unwrap();
    for m in q.modules("M2A2") {
        let c = change_of_rings_check(ext, &m.module, DEFAULT_CUTOFF).unwrap();
        assert_eq!(c.holds(), Some(true), "{}", m.name);
    }
    let dual = q.extension("Q->Qx2").unwrap();
    let s = q.module("Qx2", "S1").unwrap();
    let c = change_of_rings_check(dual, s, 4).unwrap();
    assert_eq!(c.holds(), None);
}

#[test]
fn finitistic_and_dominant_dimensions_agree_across_the_matrix_extension() {
    let q = catalog();
    let ext = q.extension("A2->M2A2").unwrap();
    let f = compare_findim(ext, q.modules("A2"), q.modules("M2A2"), DEFAULT_CUTOFF).unwrap();
    assert_eq!(f, DimComparison { base: 1, top: 1 });
    let d = compare_dom_dim(ext, 4).unwrap();
    assert_eq!(
        d,
        DimComparison {
            base: DomDim::Finite(1),
            top: DomDim::Finite(1)
        }
    );
    let qx2 = Projectives::new(q.algebra("Qx2").unwrap()).unwrap();
    assert_eq!(findim_lower_bound(&qx2, &q.modules("Qx2")[..1], 8).unwrap(), 0);
}

#[test]
fn counit_approximation_for_the_column_module() {
    let q = catalog();
    let m2 = q.algebra("M2Q").unwrap();
    let adj = Adjunction::new(column_bimodule(m2));
    let y = column_module(m2);
    let cat = q.modules("Q");
    let w = adj.approximate(&y, cat).unwrap();
    assert!(!w.factorizations.is_empty());
    w.validate().unwrap();
    assert!(adj.approximate(&y, &[]).unwrap().factorizations.is_empty());
    let c = adj.counit(&y).unwrap();
    assert!(c.map.inverse().is_some());
}

#[test]
fn counit_splits_on_catalog_modules() {
    let q = catalog();
    for (name, m) in &q.bimodules {
        let rep = is_separable(m).unwrap();
        let Some(e) = rep.element else { continue };
        for n in q.modules(&m.left_algebra().label()) {
            let s = split_counit(&e, &n.module).unwrap_or_else(|err| panic!("{name} {}: {err}", n.name));
            assert!((&s.counit.map * &s.section).is_identity());
        }
    }
}

#[test]
fn separable_retraction_on_group_algebra_modules() {
    let q = catalog();
    let ext = q.extension("Q->QC2").unwrap();
    let sep = extension_is_separable(ext).unwrap();
    let element = sep.element.unwrap();
    let reg = LeftModule::regular(ext.top.clone());
    let zero = Matrix::zeros(2, 2);
    assert_eq!(separable_retraction(ext, &element, &reg, &reg, &zero).unwrap(), zero);
    let g = Matrix::from_rows(
        2,
        &[
            vec![Q::from_integer(1.into()), Q::from_integer(0.into())],
            vec![Q::from_integer(0.into()), Q::from_integer(0.into())],
        ],
    )
    .unwrap();
    let p = separable_retraction(ext, &element, &reg, &reg, &g).unwrap();
    assert!(reg.is_hom(&reg, &p));
}

#[test]
fn reflection_of_an_approximation() {
    let q = catalog();
    let ext = q.extension("Q->QC2").unwrap();
    let element = extension_is_separable(ext).unwrap().element.unwrap();
    let reg = LeftModule::regular(ext.top.clone());
    let sum = reg.direct_sum(&reg).unwrap();
    // f: A + A -> A, (a, b) -> a + b g
    let g = ext.top.basis_element(1);
    let f = Matrix::hstack(&[&Matrix::identity(2), &ext.top.right_matrix(&g)]);
    assert!(sum.is_hom(&reg, &f));
    let tests: Vec<_> = q
        .modules("QC2")
        .iter()
        .flat_map(|c| {
            hom_space(&c.module.to_bimodule(), &reg.to_bimodule(), HomKind::Left)
                .unwrap()
                .into_iter()
                .enumerate()
                .map(|(k, m)| (format!("{}#{k}", c.name), c.module.clone(), m))
                .collect::<Vec<_>>()
        })
        .collect();
    let hs = restricted_factorizations(ext, &f, &sum, &tests).unwrap().unwrap();
    let w = reflect_approximation(ext, &element, &f, &sum, &reg, &tests, &hs).unwrap();
    assert_eq!(w.factorizations.len(), tests.len());
    let id = Matrix::identity(2);
    let w = reflect_approximation(ext, &element, &id, &reg, &reg, &[], &[]).unwrap();
    assert!(w.factorizations.is_empty());
}

#[test]
fn triangles_for_catalog_adjunctions() {
    let q = catalog();
    for name in ["QC2_Q", "M2Q-col", "M2A2_A2", "Qx2_Q"] {
        let m = q.bimodule(name).unwrap();
        let adj = Adjunction::new(m.clone());
        let xs = q.modules(&m.right_algebra().label());
        let ys = q.modules(&m.left_algebra().label());
        for (x, y) in xs.iter().zip(ys.iter().cycle()) {
            adj.check_triangles(&x.module, &y.module)
                .unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn counit_factors_random_maps(coeffs in proptest::collection::vec(-5i64..=5, 4)) {
        let q = catalog();
        let m2 = q.algebra("M2Q").unwrap();
        let adj = Adjunction::new(column_bimodule(m2));
        let c = LeftModule::regular(Arc::new(sepalg::algebra::Algebra::<Q>::ground()));
        let c = c.direct_sum(&c).unwrap();
        let fc = adj.induce(&c).unwrap();
        let y = column_module(m2).direct_sum(&column_module(m2)).unwrap();
        let basis = hom_space(&fc.module.to_bimodule(), &y.to_bimodule(), HomKind::Left).unwrap();
        let f = combo(&basis, &coeffs[..basis.len().min(4)]);
        let (phi, counit) = adj.factor_through_counit(&c, &y, &f).unwrap();
        prop_assert_eq!(&counit.map * &phi, f);
    }

    #[test]
    fn retraction_is_top_linear(entries in proptest::collection::vec(-4i64..=4, 4)) {
        let q = catalog();
        let ext: &RingExtension<Q> = q.extension("Q->QC2").unwrap();
        let element = extension_is_separable(ext).unwrap().element.unwrap();
        let reg = LeftModule::regular(ext.top.clone());
        let g = Matrix::new(2, 2, entries.iter().map(|&x| Q::from_integer(x.into())).collect()).unwrap();
        let p = separable_retraction(ext, &element, &reg, &reg, &g).unwrap();
        prop_assert!(reg.is_hom(&reg, &p));
        let again = separable_retraction(ext, &element, &reg, &reg, &p).unwrap();
        prop_assert_eq!(again, p);
    }
}
