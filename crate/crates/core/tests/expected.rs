use sepalg::fixtures::{expected_verdicts, load_catalog, Oracle, Property};
use sepalg::frobenius::frobenius_iso;
use sepalg::homological::{dom_dim, proj_dim, Projectives, DEFAULT_CUTOFF};
use sepalg::search::{Search, SearchConfig};
use sepalg::separability::{extension_is_separable, extension_is_split, is_biseparable, is_separable};
use sepalg::{Field, F2, Q};

fn yes(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn reproduce<F: Field>() {
    let cat = load_catalog::<F>();
    let rows = expected_verdicts::<F>();
    assert!(rows.iter().any(|r| r.oracle == Oracle::Construction));
    for r in rows {
        let live = match r.property {
            Property::Separable => yes(extension_is_separable(cat.extension(r.fixture).unwrap())
                .unwrap()
                .element
                .is_some()),
            Property::Split => yes(extension_is_split(cat.extension(r.fixture).unwrap()).unwrap().split()),
            Property::Frobenius => {
                let found = frobenius_iso(cat.extension(r.fixture).unwrap(), &SearchConfig::default()).unwrap();
                assert!(!matches!(found, Search::Inconclusive), "{}", r.fixture);
                yes(matches!(found, Search::Found(_)))
            }
            Property::BimoduleSeparable => yes(is_separable(cat.bimodule(r.fixture).unwrap()).unwrap().separable()),
            Property::Biseparable => yes(is_biseparable(cat.bimodule(r.fixture).unwrap()).unwrap().biseparable()),
            Property::ProjDim => {
                let (alg, module) = r.fixture.split_once('/').unwrap();
                let proj = Projectives::new(cat.algebra(alg).unwrap()).unwrap();
                proj_dim(&proj, cat.module(alg, module).unwrap(), DEFAULT_CUTOFF)
                    .unwrap()
                    .to_string()
            }
            Property::DomDim => dom_dim(cat.algebra(r.fixture).unwrap(), DEFAULT_CUTOFF)
                .unwrap()
                .to_string(),
        };
        assert_eq!(live, r.value, "{} {:?}", r.fixture, r.property);
    }
}

#[test]
fn rational_table_is_reproduced() {
    reproduce::<Q>();
}

#[test]
fn f2_table_is_reproduced() {
    reproduce::<F2>();
}
