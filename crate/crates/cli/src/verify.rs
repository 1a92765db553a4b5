//! Executable checks of the separability and approximation results, each
//! swept over the catalog or run on the inputs named on the command line.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use sepalg::algebra::{linear_combination, RingExtension};
use sepalg::bimodule::{evaluation_map, hom_space, Bimodule, HomKind, LeftModule};
use sepalg::fixtures::{random_bimodules, NamedModule};
use sepalg::frobenius::{
    alpha_map, default_test_family, ea_subspace, frobenius_iso, make_nondegenerate, max_right_ideal_in_ker,
    verify_e_approximation,
};
use sepalg::homological::{
    change_of_rings_check, compare_dom_dim, compare_findim, reflect_approximation, restricted_factorizations,
    separable_retraction, split_counit, verify_induction_bounds, Adjunction, Projectives,
};
use sepalg::linalg::{Matrix, SubspaceBasis};
use sepalg::search::Search;
use sepalg::separability::{
    check_hom_transfer, extension_is_separable, faithful_casimir, is_biseparable, is_separable, sep_element_directsum,
    sep_element_from_power, sep_element_tensor, sep_element_to_power, tensor_criterion, SeparabilityElement,
};
use sepalg::{Error, Field, Result};

use crate::input::Inputs;
use crate::report::{yes_no, Report};
use crate::{Options, VerifyArgs};

/// Random bimodules added to the catalog in the coherence sweep.
pub const RANDOM_BIMODULES: usize = 50;
/// Largest dimension of a random bimodule.
pub const RANDOM_MAX_DIM: usize = 6;
/// Random maps drawn for each of the map-level checks.
pub const RANDOM_MAPS: usize = 100;

pub struct CheckInfo {
    /// The identifier accepted by `--thm`.
    pub id: &'static str,
    /// A descriptive alias, also accepted by `--thm`.
    pub slug: &'static str,
    pub summary: &'static str,
}

pub const CHECKS: [CheckInfo; 14] = [
    CheckInfo {
        id: "2.2",
        slug: "separability-coherence",
        summary: "element solver and splitting of u_M agree",
    },
    CheckInfo {
        id: "2.4",
        slug: "tensor-criterion",
        summary: "split N (x) Hom_R(N, *M) -> *M gives a separable M (x) N",
    },
    CheckInfo {
        id: "2.5",
        slug: "tensor-transport",
        summary: "separability elements transport to tensor products",
    },
    CheckInfo {
        id: "2.6",
        slug: "hom-transfer",
        summary: "Hom_R(X, M) is separable for separable M and biseparable X",
    },
    CheckInfo {
        id: "2.7",
        slug: "sum-transport",
        summary: "separability elements transport to direct sums",
    },
    CheckInfo {
        id: "2.8",
        slug: "power-extraction",
        summary: "elements for M and M^n determine each other",
    },
    CheckInfo {
        id: "L2.2",
        slug: "faithful-casimir",
        summary: "separable bimodules carry faithful Casimir elements",
    },
    CheckInfo {
        id: "L3.1",
        slug: "counit-splitting",
        summary: "triangle identities, split counits, counit factorizations",
    },
    CheckInfo {
        id: "P3.2",
        slug: "induction-bounds",
        summary: "projective dimension along separable extensions",
    },
    CheckInfo {
        id: "3.3",
        slug: "dominant-dimension",
        summary: "dominant dimension across biseparable extensions",
    },
    CheckInfo {
        id: "3.4",
        slug: "finitistic-dimension",
        summary: "finitistic lower bounds across biseparable extensions",
    },
    CheckInfo {
        id: "P4.1",
        slug: "reflected-approximation",
        summary: "separable retraction and reflected approximations",
    },
    CheckInfo {
        id: "P4.4",
        slug: "frobenius-approximation",
        summary: "E = phi(1) factors every test map",
    },
    CheckInfo {
        id: "4.6",
        slug: "nondegenerate-expectation",
        summary: "EA equality and non-degeneracy of E",
    },
];

pub fn lookup(id: &str) -> Option<&'static CheckInfo> {
    CHECKS.iter().find(|c| c.id == id || c.slug == id)
}

pub fn listing() -> String {
    CHECKS
        .iter()
        .map(|c| format!("{:<5} {:<26} {}\n", c.id, c.slug, c.summary))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct Case {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

/// Maps a case computation to a status: coherence errors fail the case,
/// unmet preconditions skip it, anything else aborts the check.
fn case(name: impl Into<String>, r: Result<(Status, String)>) -> Result<Case> {
    let name = name.into();
    match r {
        Ok((status, detail)) => Ok(Case { name, status, detail }),
        Err(Error::Coherence(m)) => Ok(Case {
            name,
            status: Status::Fail,
            detail: m,
        }),
        Err(Error::Precondition(m)) => Ok(Case {
            name,
            status: Status::Skip,
            detail: m,
        }),
        Err(e) => Err(e),
    }
}

fn pass(detail: impl Into<String>) -> Result<(Status, String)> {
    Ok((Status::Pass, detail.into()))
}

fn require(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Coherence(what()))
    }
}

/// Witness failures are bugs, not unmet preconditions.
fn coherent<T>(r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Coherence(m) => Error::Coherence(m),
        e => Error::Coherence(e.to_string()),
    })
}

pub fn overall(cases: &[Case]) -> &'static str {
    if cases.iter().any(|c| c.status == Status::Fail) {
        "fail"
    } else if cases.iter().any(|c| c.status == Status::Inconclusive) {
        "inconclusive"
    } else if cases.iter().all(|c| c.status == Status::Skip) {
        "not-applicable"
    } else {
        "pass"
    }
}

/// Bimodules of the catalog with their separability elements.
struct Entry<F> {
    name: String,
    module: Bimodule<F>,
    element: Option<SeparabilityElement<F>>,
}

struct Ctx<'a, F> {
    inputs: &'a mut Inputs<F>,
    args: &'a VerifyArgs,
    opts: &'a Options,
    entries: Option<Arc<Vec<Entry<F>>>>,
}

impl<F: Field> Ctx<'_, F> {
    fn entries(&mut self) -> Result<Arc<Vec<Entry<F>>>> {
        if let Some(e) = &self.entries {
            return Ok(e.clone());
        }
        let mut out = Vec::new();
        for (name, m) in &self.inputs.fixtures.bimodules {
            let rep = coherent(is_separable(m))?;
            out.push(Entry {
                name: name.clone(),
                module: m.clone(),
                element: rep.element,
            });
        }
        let e = Arc::new(out);
        self.entries = Some(e.clone());
        Ok(e)
    }

    /// The named bimodule with its element, or every catalog entry.
    fn subjects(&mut self, r: &Option<String>, max_dim: usize) -> Result<Vec<Entry<F>>> {
        if let Some(r) = r {
            let m = self.inputs.bimodule(r)?;
            let element = coherent(is_separable(&m))?.element;
            return Ok(vec![Entry {
                name: r.clone(),
                module: m,
                element,
            }]);
        }
        Ok(self
            .entries()?
            .iter()
            .filter(|e| e.module.dim() <= max_dim)
            .map(|e| Entry {
                name: e.name.clone(),
                module: e.module.clone(),
                element: e.element.clone(),
            })
            .collect())
    }

    fn extensions(&mut self) -> Result<Vec<(String, RingExtension<F>)>> {
        match &self.args.extension {
            Some(r) => Ok(vec![(r.clone(), self.inputs.extension(r)?)]),
            None => Ok(self
                .inputs
                .fixtures
                .extensions
                .iter()
                .filter(|(_, e)| e.base != e.top)
                .cloned()
                .collect()),
        }
    }

    fn modules_over(&self, alg: &sepalg::algebra::Algebra<F>) -> Vec<NamedModule<F>> {
        let c = &self.inputs.fixtures;
        c.modules
            .iter()
            .find(|(n, _)| c.algebra(n).is_some_and(|a| **a == *alg))
            .map(|(_, ms)| ms.clone())
            .unwrap_or_default()
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.opts.search.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

fn random_combination<F: Field>(rng: &mut ChaCha8Rng, basis: &[Matrix<F>]) -> Matrix<F> {
    let (r, c) = (basis[0].rows(), basis[0].cols());
    let coeffs: Vec<F> = basis.iter().map(|_| F::from_i64(rng.gen_range(-3..=3))).collect();
    linear_combination(r, c, &coeffs, basis)
}

pub fn verify<F: Field>(inputs: &mut Inputs<F>, args: &VerifyArgs, opts: &Options) -> Result<Report> {
    let mut ctx = Ctx {
        inputs,
        args,
        opts,
        entries: None,
    };
    let mut report = Report::new("verify", "", F::spec()).input("seed", opts.search.seed);
    for (k, v) in [
        ("bimodule", &args.bimodule),
        ("with", &args.with),
        ("extension", &args.extension),
    ] {
        if let Some(v) = v {
            report = report.input(k, v);
        }
    }
    if let Some(n) = args.n {
        report = report.input("n", n);
    }
    let selected: Vec<&CheckInfo> = match &args.thm {
        Some(id) => vec![lookup(id).ok_or_else(|| Error::Parse(format!("unknown check {id:?}; see verify --list")))?],
        None => CHECKS.iter().collect(),
    };
    let mut results = Vec::new();
    let mut all = Vec::new();
    for info in &selected {
        let cases = run_check(&mut ctx, info.slug)?;
        let verdict = overall(&cases);
        results.push(json!({ "id": info.id, "check": info.slug, "verdict": verdict, "cases": cases }));
        all.push(Case {
            name: info.slug.to_string(),
            status: match verdict {
                "fail" => Status::Fail,
                "inconclusive" => Status::Inconclusive,
                "not-applicable" => Status::Skip,
                _ => Status::Pass,
            },
            detail: String::new(),
        });
    }
    report.check = match &args.thm {
        Some(_) => selected[0].summary.to_string(),
        None => "every check".to_string(),
    };
    if let Some(id) = &args.thm {
        report = report.input("thm", id);
    }
    if selected.iter().any(|c| c.slug == "hom-transfer") {
        report
            .notes
            .push("hom-transfer certifies Hom_R(X, M); Hom_R(M, X) carries no natural T-S structure".into());
    }
    report.verdict = overall(&all).to_string();
    report.witnesses = json!({ "checks": results });
    Ok(report)
}

fn run_check<F: Field>(ctx: &mut Ctx<'_, F>, slug: &str) -> Result<Vec<Case>> {
    match slug {
        "separability-coherence" => separability_coherence(ctx),
        "tensor-criterion" => tensor_pairs(ctx, false),
        "tensor-transport" => tensor_pairs(ctx, true),
        "hom-transfer" => hom_transfer(ctx),
        "sum-transport" => sum_transport(ctx),
        "power-extraction" => power_extraction(ctx),
        "faithful-casimir" => casimir(ctx),
        "counit-splitting" => counit_splitting(ctx),
        "induction-bounds" => induction_bounds(ctx),
        "dominant-dimension" => across_extension(ctx, true),
        "finitistic-dimension" => across_extension(ctx, false),
        "reflected-approximation" => reflected_approximation(ctx),
        "frobenius-approximation" => frobenius(ctx, false),
        "nondegenerate-expectation" => frobenius(ctx, true),
        other => Err(Error::Parse(format!("unknown check {other}"))),
    }
}

fn coherence_case<F: Field>(name: &str, m: &Bimodule<F>) -> Result<Case> {
    case(
        name,
        (|| {
            let rep = is_separable(m)?;
            if let Some(e) = &rep.element {
                coherent(e.validate())?;
            }
            if let Some(e) = &rep.section_element {
                coherent(e.validate())?;
            }
            pass(format!("separable: {}", yes_no(rep.separable())))
        })(),
    )
}

fn separability_coherence<F: Field>(ctx: &mut Ctx<'_, F>) -> Result<Vec<Case>> {
    if let Some(r) = &ctx.args.bimodule {
        let m = ctx.inputs.bimodule(r)?;
        return Ok(vec![coherence_case(r, &m)?]);
    }
    let mut cases = Vec::new();
    for (name, m) in &ctx.inputs.fixtures.bimodules {
        cases.push(coherence_case(name, m)?);
    }
    let random = random_bimodules(
        &ctx.inputs.fixtures,
        RANDOM_BIMODULES,
        RANDOM_MAX_DIM,
        ctx.opts.search.seed,
    );
    for (name, m) in &random {
        cases.push(coherence_case(name, m)?);
    }
    Ok(cases)
}

/// Pairs `(M, N)` with `M` separable and `M (x)_R N` defined.
fn tensor_pairs<F: Field>(ctx: &mut Ctx<'_, F>, transport: bool) -> Result<Vec<Case>> {
    let ms = ctx.subjects(&ctx.args.bimodule.clone(), 4)?;
    let ns = ctx.subjects(&ctx.args.with.clone(), 4)?;
    let mut cases = Vec::new();
    for m in &ms {
        for n in &ns {
            if m.module.right_algebra() != n.module.left_algebra() || m.module.dim() * n.module.dim() > 8 {
                continue;
            }
            let name = format!("{} (x) {}", m.name, n.name);
            let r = (|| {
                let Some(em) = &m.element else {
                    return Err(Error::Precondition(format!("{} is not separable", m.name)));
                };
                if transport {
                    let Some(en) = &n.element else {
                        return Err(Error::Precondition(format!("{} is not separable", n.name)));
                    };
                    let (mn, e) = sep_element_tensor(em, en)?;
                    coherent(e.validate())?;
                    pass(format!(
                        "element of length {} for a module of dimension {}",
                        e.coords.len(),
                        mn.dim()
                    ))
                } else {
                    let c = tensor_criterion(&m.module, &n.module)?;
                    pass(format!(
                        "evaluation splits: {}, tensor separable: {}",
                        yes_no(c.evaluation_split.section().is_some()),
                        yes_no(c.tensor.separable())
                    ))
                }
            })();
            cases.push(case(name, r)?);
        }
    }
    Ok(cases)
}

fn hom_transfer<F: Field>(ctx: &mut Ctx<'_, F>) -> Result<Vec<Case>> {
    let ms = ctx.subjects(&ctx.args.bimodule.clone(), 4)?;
    let xs = ctx.subjects(&ctx.args.with.clone(), 4)?;
    let mut biseparable = Vec::new();
    for x in &xs {
        biseparable.push(coherent(is_biseparable(&x.module))?.biseparable());
    }
    let mut cases = Vec::new();
    for m in ms.iter().filter(|m| m.element.is_some()) {
        for (x, _) in xs.iter().zip(&biseparable).filter(|(_, b)| **b) {
            if m.module.right_algebra() != x.module.right_algebra() {
                continue;
            }
            let r = (|| {
                let rep = check_hom_transfer(&m.module, &x.module)?;
                coherent(rep.report.element.as_ref().expect("separable").validate())?;
                pass(format!("Hom_R(X, M) has dimension {}", rep.hom.bimodule.dim()))
            })();
            cases.push(case(format!("Hom({}, {})", x.name, m.name), r)?);
        }
    }
    Ok(cases)
}

fn sum_transport<F: Field>(ctx: &mut Ctx<'_, F>) -> Result<Vec<Case>> {
    let ms = ctx.subjects(&ctx.args.bimodule.clone(), 4)?;
    let ns = ctx.subjects(&ctx.args.with.clone(), 4)?;
    let mut cases = Vec::new();
    for m in &ms {
        let Some(e) = &m.element else { continue };
        for n in &ns {
            if m.module.left_algebra() != n.module.left_algebra()
                || m.module.right_algebra() != n.module.right_algebra()
            {
                continue;
            }
            let r = (|| {
                let s = sep_element_directsum(e, &n.module)?;
                coherent(s.validate())?;
                let direct = coherent(is_separable(s.module()))?;
                require(direct.separable(), || "solver finds no element for M + N".into())?;
                pass("element validates")
            })();
            cases.push(case(format!("{} + {}", m.name, n.name), r)?);
        }
    }
    Ok(cases)
}

fn power_extraction<F: Field>(ctx: &mut Ctx<'_, F>) -> Result<Vec<Case>> {
    let ms = ctx.subjects(&ctx.args.bimodule.clone(), 4)?;
    let powers = match ctx.args.n {
        Some(n) if n >= 1 => vec![n],
        Some(_) => return Err(Error::Parse("--n must be at least 1".into())),
        None => vec![2, 3],
    };
    let mut cases = Vec::new();
    for m in &ms {
        for &n in &powers {
            if ctx.args.bimodule.is_none() && m.module.dim() * n > 6 {
                continue;
            }
            let r = (|| {
                let pow = m.module.power(n).sum;
                let rep = coherent(is_separable(&pow))?;
                require(rep.separable() == m.element.is_some(), || {
                    format!(
                        "M separable: {}, M^{n} separable: {}",
                        yes_no(m.element.is_some()),
                        yes_no(rep.separable())
                    )
                })?;
                let Some(e) = &m.element else {
                    return pass("neither M nor M^n is separable");
                };
                let up = sep_element_to_power(e, n)?;
                coherent(up.validate())?;
                let back = sep_element_from_power(&up, &m.module, n)?;
                coherent(back.validate())?;
                // extraction also works on the element the solver finds for M^n
                let solved = rep.element.as_ref().expect("separable");
                let from_solver = sep_element_from_power(solved, &m.module, n)?;
                coherent(from_solver.validate())?;
                pass("round trip validates")
            })();
            cases.push(case(format!("{}^{n}", m.name), r)?);
        }
    }
    Ok(cases)
}

fn casimir<F: Field>(ctx: &mut Ctx<'_, F>) -> Result<Vec<Case>> {
    let ms = ctx.subjects(&ctx.args.bimodule.clone(), 6)?;
    let cfg = ctx.opts.search;
    let mut cases = Vec::new();
    for m in &ms {
        let r = (|| {
            let p = evaluation_map(&m.module)?;
            match faithful_casimir(&p, &cfg)? {
                Search::Found(x) => {
                    let t = m.module.left_algebra();
                    for i in 0..t.dim() {
                        require(
                            p.tensor_module.left_action()[i].apply(&x) == p.tensor_module.right_action()[i].apply(&x),
                            || format!("t{i} x != x t{i}"),
                        )?;
                    }
                    let tx = SubspaceBasis::span(
                        p.tensor.dim(),
                        p.tensor_module.right_action().iter().map(|r| r.apply(&x)),
                    );
                    require(tx.dim() == t.dim(), || "x t = 0 for some t != 0".into())?;
                    pass("faithful Casimir element found")
                }
                Search::None => {
                    require(m.element.is_none(), || {
                        "separable but no faithful Casimir element".into()
                    })?;
                    pass("no faithful Casimir element")
                }
                Search::Inconclusive => Ok((Status::Inconclusive, "search budget exhausted".into())),
            }
        })();
        cases.push(case(m.name.clone(), r)?);
    }
    Ok(cases)
}

fn counit_splitting<F: Field>(ctx: &mut Ctx<'_, F>) -> Result<Vec<Case>> {
    let ms = ctx.subjects(&ctx.args.bimodule.clone(), 4)?;
    let mut rng = ctx.rng(31);
    let mut cases = Vec::new();
    let mut triples = Vec::new();
    for m in &ms {
        let xs = ctx.modules_over(m.module.right_algebra());
        let ys = ctx.modules_over(m.module.left_algebra());
        let adj = Adjunction::new(m.module.clone());
        let r = (|| {
            for x in xs.iter().filter(|x| x.module.dim() <= 4) {
                for y in ys.iter().filter(|y| y.module.dim() <= 4) {
                    coherent(adj.check_triangles(&x.module, &y.module))?;
                }
            }
            pass(format!("{} x {} module pairs", xs.len(), ys.len()))
        })();
        cases.push(case(format!("triangles {}", m.name), r)?);
        if let Some(e) = &m.element {
            let r = (|| {
                for y in &ys {
                    let s = coherent(split_counit(e, &y.module))?;
                    require((&s.counit.map * &s.section).is_identity(), || {
                        format!("u^N v^N != id for {}", y.name)
                    })?;
                }
                pass(format!("u^N v^N = id for {} modules", ys.len()))
            })();
            cases.push(case(format!("split counit {}", m.name), r)?);
        }
        for x in xs.iter().filter(|x| x.module.dim() <= 3) {
            for y in ys.iter().filter(|y| y.module.dim() <= 4) {
                triples.push((m.name.clone(), adj.clone(), x.clone(), y.clone()));
            }
        }
    }
    // random maps F(C) -> Y, spread over the admissible triples
    let mut usable = Vec::new();
    for (name, adj, c, y) in &triples {
        let fc = adj.induce(&c.module)?;
        let basis = hom_space(&fc.module.to_bimodule(), &y.module.to_bimodule(), HomKind::Left)?;
        if !basis.is_empty() {
            usable.push((name, adj, c, y, basis));
        }
    }
    if usable.is_empty() {
        return Ok(cases);
    }
    let mut done = 0;
    let r = (|| {
        for k in 0..RANDOM_MAPS {
            let (_, adj, c, y, basis) = &usable[k % usable.len()];
            let f = random_combination(&mut rng, basis);
            let (phi, counit) = coherent(adj.factor_through_counit(&c.module, &y.module, &f))?;
            require(&counit.map * &phi == f, || format!("counit does not reproduce map {k}"))?;
            done += 1;
        }
        pass(format!("{done} random maps over {} triples", usable.len()))
    })();
    cases.push(case("counit factorizations", r)?);
    Ok(cases)
}

fn induction_bounds<F: Field>(ctx: &mut Ctx<'_, F>) -> Result<Vec<Case>> {
    let cutoff = ctx.opts.cutoff;
    let mut cases = Vec::new();
    for (name, ext) in ctx.extensions()? {
        let base = ctx.modules_over(&ext.base);
        let top = ctx.modules_over(&ext.top);
        let r = (|| {
            let rep = verify_induction_bounds(&ext, &base, &top, cutoff)?;
            require(rep.holds(), || {
                format!(
                    "{:?}",
                    rep.items
                        .iter()
                        .find(|i| i.bound == Some(false) || (i.over == "top" && !i.summand))
                )
            })?;
            pass(format!("{} modules, pd(_R T) = {}", rep.items.len(), rep.top_over_base))
        })();
        cases.push(case(format!("induction {name}"), r)?);
        let r = (|| {
            let mut computable = 0;
            for y in &top {
                let c = change_of_rings_check(&ext, &y.module, cutoff)?;
                match c.holds() {
                    Some(true) => computable += 1,
                    Some(false) => {
                        return Err(Error::Coherence(format!(
                            "pd_R {} = {} > {} + {}",
                            y.name, c.restricted, c.over_top, c.top_over_base
                        )))
                    }
                    None => {}
                }
            }
            pass(format!("{computable} of {} triples computable", top.len()))
        })();
        cases.push(case(format!("change of rings {name}"), r)?);
    }
    Ok(cases)
}

fn across_extension<F: Field>(ctx: &mut Ctx<'_, F>, dominant: bool) -> Result<Vec<Case>> {
    let cutoff = ctx.opts.cutoff;
    let mut cases = Vec::new();
    for (name, ext) in ctx.extensions()? {
        let top_base = Bimodule::regular(ext.top.clone()).restrict_right(&ext)?;
        let base = ctx.modules_over(&ext.base);
        let top = ctx.modules_over(&ext.top);
        let r = (|| {
            if !coherent(is_biseparable(&top_base))?.biseparable() {
                return Err(Error::Precondition("T is not biseparable over R".into()));
            }
            if dominant {
                let d = compare_dom_dim(&ext, cutoff)?;
                require(d.agree(), || format!("dom.dim R = {}, dom.dim T = {}", d.base, d.top))?;
                pass(format!("dom.dim of both: {}", d.base))
            } else {
                let d = compare_findim(&ext, &base, &top, cutoff)?;
                require(d.agree(), || format!("findim R >= {}, findim T >= {}", d.base, d.top))?;
                pass(format!("findim of both at least {}", d.base))
            }
        })();
        cases.push(case(name, r)?);
    }
    Ok(cases)
}

fn reflected_approximation<F: Field>(ctx: &mut Ctx<'_, F>) -> Result<Vec<Case>> {
    let mut rng = ctx.rng(41);
    let mut cases = Vec::new();
    for (name, ext) in ctx.extensions()? {
        let Some(element) = coherent(extension_is_separable(&ext))?.element else {
            cases.push(case(
                name,
                Err(Error::Precondition("extension is not separable".into())),
            )?);
            continue;
        };
        let top: Vec<NamedModule<F>> = ctx
            .modules_over(&ext.top)
            .into_iter()
            .filter(|m| m.module.dim() <= 6)
            .collect();
        let mut spaces: Vec<(&LeftModule<F>, &LeftModule<F>, Vec<Matrix<F>>, Vec<Matrix<F>>)> = Vec::new();
        for x in &top {
            for y in &top {
                let xr = x.module.restrict(&ext)?.to_bimodule();
                let yr = y.module.restrict(&ext)?.to_bimodule();
                let base = hom_space(&xr, &yr, HomKind::Left)?;
                let over_top = hom_space(&x.module.to_bimodule(), &y.module.to_bimodule(), HomKind::Left)?;
                if !base.is_empty() {
                    spaces.push((&x.module, &y.module, base, over_top));
                }
            }
        }
        let r = (|| {
            if spaces.is_empty() {
                return Err(Error::Precondition(
                    "no base-linear maps between catalog modules".into(),
                ));
            }
            for k in 0..RANDOM_MAPS {
                let (x, y, base, _) = &spaces[k % spaces.len()];
                let g = random_combination(&mut rng, base);
                let p = separable_retraction(&ext, &element, x, y, &g)?;
                let again = separable_retraction(&ext, &element, x, y, &p)?;
                require(again == p, || format!("P(P(g)) != P(g) for map {k}"))?;
            }
            // P fixes maps that are already top-linear
            let fixed: Vec<_> = spaces.iter().filter(|s| !s.3.is_empty()).collect();
            for k in 0..RANDOM_MAPS {
                let (x, y, _, over_top) = fixed[k % fixed.len()];
                let h = random_combination(&mut rng, over_top);
                require(separable_retraction(&ext, &element, x, y, &h)? == h, || {
                    format!("P(h) != h for top-linear map {k}")
                })?;
            }
            pass(format!("{RANDOM_MAPS} idempotent, {RANDOM_MAPS} fixed"))
        })();
        cases.push(case(format!("retraction {name}"), r)?);
        let cover_of = Projectives::new(&ext.top)?;
        for c in &top {
            let r = (|| {
                let cover = cover_of.cover(&c.module)?;
                let tests: Vec<_> = top
                    .iter()
                    .flat_map(|z| {
                        hom_space(&z.module.to_bimodule(), &c.module.to_bimodule(), HomKind::Left)
                            .unwrap_or_default()
                            .into_iter()
                            .enumerate()
                            .map(|(k, g)| (format!("{}#{k}", z.name), z.module.clone(), g))
                            .collect::<Vec<_>>()
                    })
                    .collect();
                let mut closed = Vec::new();
                let mut hs = Vec::new();
                for t in &tests {
                    if let Some(h) =
                        restricted_factorizations(&ext, &cover.map, &cover.module, std::slice::from_ref(t))?
                    {
                        closed.push(t.clone());
                        hs.extend(h);
                    }
                }
                let w = coherent(reflect_approximation(
                    &ext,
                    &element,
                    &cover.map,
                    &cover.module,
                    &c.module,
                    &closed,
                    &hs,
                ))?;
                pass(format!(
                    "{} of {} diagrams factor over the base and close",
                    w.factorizations.len(),
                    tests.len()
                ))
            })();
            cases.push(case(format!("reflect {name} {}", c.name), r)?);
        }
    }
    Ok(cases)
}

fn frobenius<F: Field>(ctx: &mut Ctx<'_, F>, nondegenerate: bool) -> Result<Vec<Case>> {
    let cfg = ctx.opts.search;
    let mut exts = ctx.extensions()?;
    if ctx.args.extension.is_none() {
        // the trivial extension is Frobenius too
        exts.extend(
            ctx.inputs
                .fixtures
                .extensions
                .iter()
                .filter(|(_, e)| e.base == e.top)
                .cloned(),
        );
    }
    let mut cases = Vec::new();
    for (name, ext) in exts {
        let r = (|| {
            let d = match frobenius_iso(&ext, &cfg)? {
                Search::Found(d) => d,
                Search::None => return Err(Error::Precondition("not a Frobenius extension".into())),
                Search::Inconclusive => {
                    return Ok((Status::Inconclusive, "no invertible map found within budget".into()))
                }
            };
            coherent(d.validate(&ext))?;
            if nondegenerate {
                require(max_right_ideal_in_ker(&ext, &d.e).is_zero(), || {
                    "ker E contains a right ideal".into()
                })?;
                require(ea_subspace(&ext, &d.e)?.equal(), || "E R != Hom_S(R, S)".into())?;
                let (_, alpha) = alpha_map(&ext, &d.e)?;
                require(alpha.inverse().is_some(), || "alpha is not invertible".into())?;
                let nd = coherent(make_nondegenerate(&ext, &d.e, &d.phi))?;
                require(nd.ab_is_one && nd.ba_is_one, || "ab = 1 = ba fails".into())?;
                require(nd.kernel_ideal.is_zero(), || "kernel ideal of E1 is not zero".into())?;
                pass("E non-degenerate, E R = Hom_S(R, S), ab = 1 = ba")
            } else {
                let family = default_test_family(&ext)?;
                let approx = coherent(verify_e_approximation(&ext, &d.e, &family))?;
                require(approx.holds(), || {
                    format!("unfactored: {}", approx.counterexamples.join(", "))
                })?;
                pass(format!(
                    "{} test maps factor through E",
                    approx.witness.factorizations.len()
                ))
            }
        })();
        cases.push(case(name, r)?);
    }
    Ok(cases)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_and_slugs_resolve() {
        for c in &CHECKS {
            assert_eq!(lookup(c.id).unwrap().slug, c.slug);
            assert_eq!(lookup(c.slug).unwrap().id, c.id);
        }
        assert!(lookup("9.9").is_none());
    }

    #[test]
    fn verdict_of_cases() {
        let c = |status| Case {
            name: String::new(),
            status,
            detail: String::new(),
        };
        assert_eq!(overall(&[c(Status::Pass), c(Status::Skip)]), "pass");
        assert_eq!(overall(&[c(Status::Pass), c(Status::Fail)]), "fail");
        assert_eq!(overall(&[c(Status::Skip)]), "not-applicable");
        assert_eq!(overall(&[c(Status::Inconclusive), c(Status::Pass)]), "inconclusive");
    }
}
