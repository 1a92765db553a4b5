//! The curated catalog of algebras, extensions, bimodules and modules that
//! the checks run against.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{primitive_idempotents, radical, Algebra, PathAlgebra, QuiverPresentation, RingExtension};
use crate::bimodule::{dual_left, dual_right, Bimodule, LeftModule};
use crate::error::Result;
use crate::field::Field;
use crate::linalg::{Matrix, SubspaceBasis};

/// `Q^2` as a left `M_2(k)`-module; `E_pq` (basis index `2p + q`) sends
/// `e_q` to `e_p`.
pub fn column_module<F: Field>(m2: &Arc<Algebra<F>>) -> LeftModule<F> {
    let action = (0..4)
        .map(|i| {
            let (p, q) = (i / 2, i % 2);
            Matrix::from_fn(2, 2, |r, c| if r == p && c == q { F::one() } else { F::zero() })
        })
        .collect();
    LeftModule::new(m2.clone(), action).expect("column module")
}

/// `k^2` as an `(M_2(k), k)`-bimodule.
pub fn column_bimodule<F: Field>(m2: &Arc<Algebra<F>>) -> Bimodule<F> {
    column_module(m2).to_bimodule()
}

/// Row vectors `k^2` as a `(k, M_2(k))`-bimodule: `e_p E_pq = e_q`.
pub fn row_bimodule<F: Field>(m2: &Arc<Algebra<F>>) -> Bimodule<F> {
    let right = (0..4)
        .map(|i| {
            let (p, q) = (i / 2, i % 2);
            Matrix::from_fn(2, 2, |r, c| if r == q && c == p { F::one() } else { F::zero() })
        })
        .collect();
    Bimodule::new(
        Arc::new(Algebra::ground()),
        m2.clone(),
        2,
        vec![Matrix::identity(2)],
        right,
    )
    .expect("row bimodule")
}

/// The quiver `1 -> 2` without relations.
pub fn a2<F: Field>() -> PathAlgebra<F> {
    PathAlgebra::new(&QuiverPresentation::new(2, vec![(0, 1)])).expect("A2 path algebra")
}

/// `k[x]/(x^2)` as the path algebra of a loop with `x^2 = 0`.
pub fn dual_numbers<F: Field>() -> Algebra<F> {
    Algebra::truncated_polynomial(2)
}

/// A named left module over a named algebra.
#[derive(Clone, Debug)]
pub struct NamedModule<F> {
    pub name: String,
    pub module: LeftModule<F>,
}

/// Fixtures over one field. Names follow the field label: `Q`, `QC2`, ...
#[derive(Clone, Debug)]
pub struct Catalog<F> {
    pub algebras: Vec<(String, Arc<Algebra<F>>)>,
    pub extensions: Vec<(String, RingExtension<F>)>,
    pub bimodules: Vec<(String, Bimodule<F>)>,
    /// Simples, indecomposable projectives and radicals per algebra.
    pub modules: Vec<(String, Vec<NamedModule<F>>)>,
}

impl<F: Field> Catalog<F> {
    pub fn algebra(&self, name: &str) -> Option<&Arc<Algebra<F>>> {
        self.algebras.iter().find(|(n, _)| n == name).map(|(_, a)| a)
    }

    pub fn extension(&self, name: &str) -> Option<&RingExtension<F>> {
        self.extensions.iter().find(|(n, _)| n == name).map(|(_, e)| e)
    }

    pub fn bimodule(&self, name: &str) -> Option<&Bimodule<F>> {
        self.bimodules.iter().find(|(n, _)| n == name).map(|(_, b)| b)
    }

    pub fn modules(&self, algebra: &str) -> &[NamedModule<F>] {
        self.modules
            .iter()
            .find(|(n, _)| n == algebra)
            .map_or(&[], |(_, m)| m.as_slice())
    }

    pub fn module(&self, algebra: &str, name: &str) -> Option<&LeftModule<F>> {
        self.modules(algebra).iter().find(|m| m.name == name).map(|m| &m.module)
    }
}

/// The catalog for the field `F`: the full list in characteristic 0, the
/// group-algebra family in characteristic `p`.
pub fn load_catalog<F: Field>() -> Catalog<F> {
    let k = F::spec().to_string();
    let ground = Arc::new(Algebra::<F>::ground().with_name(k.clone()));
    let group = Arc::new(Algebra::<F>::cyclic_group(2).with_name(format!("{k}C2")));
    let mut algebras = vec![(k.clone(), ground.clone()), (format!("{k}C2"), group.clone())];
    let mut extensions = vec![
        (format!("{k}->{k}"), RingExtension::identity(ground.clone())),
        (format!("{k}->{k}C2"), RingExtension::scalars(group.clone())),
    ];
    // vertex idempotents of path algebras, by name
    let mut vertex_idempotents: Vec<(String, Vec<Vec<F>>)> = Vec::new();

    if F::CHARACTERISTIC == 0 {
        let dual = Arc::new(dual_numbers::<F>().with_name(format!("{k}x2")));
        let m2 = Arc::new(Algebra::matrix_algebra(&ground, 2).with_name(format!("M2{k}")));
        let kk = Arc::new(Algebra::direct_product(&ground, &ground).with_name(format!("{k}x{k}")));
        let pa = a2::<F>();
        vertex_idempotents.push(("A2".into(), vec![pa.vertex_element(0), pa.vertex_element(1)]));
        let a2 = Arc::new(pa.algebra.with_name("A2"));
        let diag = RingExtension::diagonal(a2.clone(), 2);
        let m2a2 = Arc::new((*diag.top).clone().with_name("M2A2"));
        let diag = RingExtension::new(a2.clone(), m2a2.clone(), diag.map).expect("diagonal embedding");
        algebras.extend([
            (format!("{k}x2"), dual.clone()),
            (format!("M2{k}"), m2.clone()),
            (format!("{k}x{k}"), kk.clone()),
            ("A2".into(), a2),
            ("M2A2".into(), m2a2),
        ]);
        extensions.extend([
            (format!("{k}->M2{k}"), RingExtension::scalars(m2)),
            (format!("{k}->{k}x2"), RingExtension::scalars(dual)),
            (format!("{k}->{k}x{k}"), RingExtension::scalars(kk)),
            ("A2->M2A2".into(), diag),
        ]);
    }

    let mut bimodules = Vec::new();
    for (name, alg) in &algebras {
        bimodules.push((format!("{name}-reg"), Bimodule::regular(alg.clone())));
    }
    for (name, ext) in &extensions {
        if ext.base == ext.top {
            continue;
        }
        let (base, top) = name.split_once("->").expect("extension name");
        let m = Bimodule::regular(ext.top.clone())
            .restrict_right(ext)
            .expect("restriction");
        bimodules.push((format!("{top}_{base}"), m));
    }
    if let Some(m2) = algebras
        .iter()
        .find(|(n, _)| *n == format!("M2{k}"))
        .map(|(_, a)| a.clone())
    {
        let col = column_bimodule(&m2);
        let star = dual_right(&col).expect("dual").bimodule;
        let left_star = dual_left(&col).expect("dual").bimodule;
        bimodules.push((format!("M2{k}-col"), col));
        bimodules.push((format!("M2{k}-row"), row_bimodule(&m2)));
        bimodules.push((format!("M2{k}-col*"), star));
        bimodules.push((format!("*M2{k}-col"), left_star));
    }

    let modules = algebras
        .iter()
        .map(|(name, alg)| {
            let idem = vertex_idempotents
                .iter()
                .find(|(n, _)| n == name)
                .map(|(_, v)| v.clone());
            (name.clone(), standard_modules(alg, idem).expect("standard modules"))
        })
        .collect();

    Catalog {
        algebras,
        extensions,
        bimodules,
        modules,
    }
}

/// `P_i = A e_i`, `S_i = P_i / rad P_i`, `rad P_i` (when nonzero) and the
/// radical `J` of `A` as a left module (when nonzero). Idempotents are one
/// per simple module; `None` computes them.
pub fn standard_modules<F: Field>(
    alg: &Arc<Algebra<F>>,
    idempotents: Option<Vec<Vec<F>>>,
) -> Result<Vec<NamedModule<F>>> {
    let idempotents = match idempotents {
        Some(v) => v,
        None => primitive_idempotents(alg)?
            .representatives()
            .into_iter()
            .cloned()
            .collect(),
    };
    let rad = radical(alg)?.basis;
    let regular = LeftModule::regular(alg.clone());
    let mut simples = Vec::new();
    let mut projectives = Vec::new();
    let mut radicals = Vec::new();
    for (i, e) in idempotents.iter().enumerate() {
        let label = i + 1;
        let p = SubspaceBasis::span(alg.dim(), alg.right_matrix(e).columns());
        let (proj, _) = regular.submodule(&p)?;
        // rad P = J e, in coordinates of P
        let je = SubspaceBasis::span(alg.dim(), rad.vectors.iter().map(|x| alg.mul(x, e)));
        let coords = p.coordinates();
        let je_local = SubspaceBasis::span(
            p.dim(),
            je.vectors
                .iter()
                .map(|v| coords.coordinates(v).expect("J e lies in A e")),
        );
        let (simple, _) = proj.quotient(&je_local);
        if !je_local.is_zero() {
            let (rp, _) = proj.submodule(&je_local)?;
            radicals.push(NamedModule {
                name: format!("radP{label}"),
                module: rp,
            });
        }
        simples.push(NamedModule {
            name: format!("S{label}"),
            module: simple,
        });
        projectives.push(NamedModule {
            name: format!("P{label}"),
            module: proj,
        });
    }
    let mut out = simples;
    out.extend(projectives);
    out.extend(radicals);
    if !rad.is_zero() {
        let (j, _) = regular.submodule(&rad)?;
        out.push(NamedModule {
            name: "rad".into(),
            module: j,
        });
    }
    out.push(NamedModule {
        name: "reg".into(),
        module: regular,
    });
    Ok(out)
}

fn random_scalar<F: Field>(rng: &mut ChaCha8Rng) -> F {
    F::from_i64(rng.gen_range(-3..=3))
}

fn random_invertible<F: Field>(rng: &mut ChaCha8Rng, n: usize) -> Matrix<F> {
    loop {
        let p = Matrix::from_fn(n, n, |_, _| random_scalar::<F>(rng));
        if !p.determinant().is_zero() {
            return p;
        }
    }
}

/// Seeded random bimodules of dimension `1..=max_dim` built from the catalog
/// by sub-bimodules, quotients, direct sums, restriction along extensions and
/// modules viewed as bimodules, each finished with a random change of basis.
pub fn random_bimodules<F: Field>(
    catalog: &Catalog<F>,
    count: usize,
    max_dim: usize,
    seed: u64,
) -> Vec<(String, Bimodule<F>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<(String, Bimodule<F>)> = catalog
        .bimodules
        .iter()
        .filter(|(_, b)| b.dim() <= max_dim && b.dim() > 0)
        .cloned()
        .collect();
    for (alg, mods) in &catalog.modules {
        for m in mods.iter().filter(|m| m.module.dim() <= max_dim && m.module.dim() > 0) {
            pool.push((format!("{alg}:{}", m.name), m.module.to_bimodule()));
        }
    }
    for (name, ext) in &catalog.extensions {
        if ext.base == ext.top || ext.top.dim() > max_dim {
            continue;
        }
        let reg = Bimodule::regular(ext.top.clone());
        if let (Ok(r), Ok(l)) = (reg.restrict_right(ext), reg.restrict_left(ext)) {
            pool.push((format!("{name}:left"), l));
            pool.push((format!("{name}:right"), r));
        }
    }
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let (name, x) = pool[rng.gen_range(0..pool.len())].clone();
        let (label, b) = match rng.gen_range(0..3) {
            0 => {
                let v = (0..x.dim()).map(|_| random_scalar::<F>(&mut rng)).collect();
                let sub = x.generated([v]);
                if sub.is_zero() || sub.dim() == x.dim() {
                    continue;
                }
                if rng.gen_bool(0.5) {
                    (format!("sub({name})"), x.submodule(&sub).expect("invariant").0)
                } else {
                    (format!("quot({name})"), x.quotient(&sub).0)
                }
            }
            1 => {
                let partners: Vec<&(String, Bimodule<F>)> = pool
                    .iter()
                    .filter(|(_, y)| {
                        y.left_algebra() == x.left_algebra()
                            && y.right_algebra() == x.right_algebra()
                            && y.dim() + x.dim() <= max_dim
                    })
                    .collect();
                if partners.is_empty() {
                    continue;
                }
                let (n2, y) = partners[rng.gen_range(0..partners.len())];
                (format!("{name}+{n2}"), x.direct_sum(y).expect("same algebras").sum)
            }
            _ => (name, x),
        };
        let p = random_invertible::<F>(&mut rng, b.dim());
        let b = b.conjugate(&p).expect("invertible");
        out.push((format!("rand{}:{label}", out.len()), b));
    }
    out
}

/// Which solver an expected verdict is compared against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    /// Extension: a separability element exists.
    Separable,
    /// Extension: the base is a bimodule direct summand of the top.
    Split,
    /// Extension: a Frobenius isomorphism exists.
    Frobenius,
    /// Bimodule: `u_M` splits.
    BimoduleSeparable,
    Biseparable,
    /// `ALGEBRA/MODULE`: projective dimension at the default cutoff.
    ProjDim,
    /// Algebra: dominant dimension at the default cutoff.
    DomDim,
}

/// How an expected value was first established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Oracle {
    /// Known from the construction of the fixture, independent of the solvers.
    Construction,
    /// Recorded from a solver run whose witness was checked.
    Pinned,
}

#[derive(Clone, Copy, Debug)]
pub struct Expected {
    pub fixture: &'static str,
    pub property: Property,
    pub value: &'static str,
    pub oracle: Oracle,
}

const fn row(fixture: &'static str, property: Property, value: &'static str, oracle: Oracle) -> Expected {
    Expected {
        fixture,
        property,
        value,
        oracle,
    }
}

use Oracle::{Construction as Known, Pinned};
use Property::*;

const EXPECTED_Q: &[Expected] = &[
    // char 0 does not divide |C2|; e = (1 (x) 1 + g (x) g) / 2
    row("Q->QC2", Separable, "yes", Known),
    row("Q->QC2", Split, "yes", Known),
    row("Q->QC2", Frobenius, "yes", Known),
    row("Q->M2Q", Separable, "yes", Known),
    row("Q->M2Q", Frobenius, "yes", Known),
    row("Q->QxQ", Separable, "yes", Known),
    // Q[x]/(x^2) has a nonzero radical, so it is not separable, but 1 spans a complement to x
    row("Q->Qx2", Separable, "no", Known),
    row("Q->Qx2", Split, "yes", Known),
    row("Q->Qx2", Frobenius, "yes", Known),
    row("A2->M2A2", Separable, "yes", Known),
    row("A2->M2A2", Split, "yes", Pinned),
    row("A2->M2A2", Frobenius, "yes", Pinned),
    // a regular bimodule has M (x) *M = T
    row("Q-reg", BimoduleSeparable, "yes", Known),
    row("QC2-reg", BimoduleSeparable, "yes", Known),
    row("Qx2-reg", BimoduleSeparable, "yes", Known),
    row("A2-reg", BimoduleSeparable, "yes", Known),
    row("M2A2-reg", BimoduleSeparable, "yes", Known),
    row("QC2_Q", BimoduleSeparable, "yes", Known),
    row("Qx2_Q", BimoduleSeparable, "no", Known),
    row("M2Q_Q", BimoduleSeparable, "yes", Known),
    row("QxQ_Q", BimoduleSeparable, "yes", Known),
    row("M2A2_A2", BimoduleSeparable, "yes", Known),
    row("M2Q-col", BimoduleSeparable, "yes", Known),
    row("M2Q-row", BimoduleSeparable, "yes", Pinned),
    row("M2Q-col*", BimoduleSeparable, "yes", Pinned),
    row("*M2Q-col", BimoduleSeparable, "yes", Pinned),
    row("QC2_Q", Biseparable, "yes", Pinned),
    row("Qx2_Q", Biseparable, "no", Known),
    row("M2Q-col", Biseparable, "yes", Pinned),
    row("M2A2_A2", Biseparable, "yes", Pinned),
    // 0 -> P2 -> P1 -> S1 -> 0
    row("A2/S1", ProjDim, "1", Known),
    row("A2/P1", ProjDim, "0", Known),
    // the syzygies of the simple over Q[x]/(x^2) repeat
    row("Qx2/S1", ProjDim, ">16", Known),
    row("A2", DomDim, "1", Pinned),
];

const EXPECTED_F2: &[Expected] = &[
    // 2 = 0 kills the averaging element
    row("F2->F2C2", Separable, "no", Known),
    row("F2->F2C2", Split, "yes", Pinned),
    row("F2->F2C2", Frobenius, "yes", Known),
    row("F2C2-reg", BimoduleSeparable, "yes", Known),
    row("F2C2_F2", BimoduleSeparable, "no", Known),
    row("F2C2/S1", ProjDim, ">16", Known),
];

/// Expected verdicts over `F`; every row is re-derived by the test suite.
pub fn expected_verdicts<F: Field>() -> &'static [Expected] {
    match F::CHARACTERISTIC {
        0 => EXPECTED_Q,
        2 => EXPECTED_F2,
        _ => &[],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rational};

    #[test]
    fn catalog_contents() {
        let q = load_catalog::<Rational>();
        let f2 = load_catalog::<Fp<2>>();
        assert!(q.algebras.len() + f2.algebras.len() >= 8);
        for (_, a) in q.algebras.iter() {
            assert_eq!(a.validate(), Ok(()));
        }
        for (_, a) in f2.algebras.iter() {
            assert_eq!(a.validate(), Ok(()));
        }
        for (_, b) in &q.bimodules {
            b.validate().unwrap();
        }
        assert!(q.extension("Q->QC2").is_some());
        let r = random_bimodules(&q, 30, 6, 7);
        assert_eq!(r.len(), 30);
        for (name, b) in &r {
            assert!(b.dim() >= 1 && b.dim() <= 6, "{name}");
            b.validate().unwrap();
        }
        assert!(f2.extension("F2->F2C2").is_some());
        assert!(q.bimodule("QC2_Q").is_some());
        assert!(q.bimodule("M2Q-col").is_some());
    }

    #[test]
    fn a2_modules() {
        let q = load_catalog::<Rational>();
        let dims: Vec<(String, usize)> = q
            .modules("A2")
            .iter()
            .map(|m| (m.name.clone(), m.module.dim()))
            .collect();
        let want = [
            ("S1", 1),
            ("S2", 1),
            ("P1", 2),
            ("P2", 1),
            ("radP1", 1),
            ("rad", 1),
            ("reg", 3),
        ];
        assert_eq!(dims, want.iter().map(|(n, d)| (n.to_string(), *d)).collect::<Vec<_>>());
        for m in q.modules("M2A2") {
            m.module.validate().unwrap();
        }
    }
}
