use serde_json::{json, Value};

use sepalg::bimodule::{is_fgp, regular_bimodules, Side, SplitEpi};
use sepalg::fixtures::Catalog;
use sepalg::frobenius::{ea_subspace, frobenius_iso, make_nondegenerate, max_right_ideal_in_ker, FrobeniusDatum};
use sepalg::homological::{dom_dim, minimal_resolution, Adjunction, Projectives};
use sepalg::schema::catalog_doc;
use sepalg::search::Search;
use sepalg::separability::{
    extension_is_separable, extension_is_split, is_biseparable, is_separable, sep_element_to_power,
    SeparabilityElement, SeparabilityReport,
};
use sepalg::{Error, Field, FieldSpec, Result};

use crate::input::{dispatch, field_of, FieldTask, Inputs, Kind};
use crate::report::{matrix, pairs, vector, yes_no, Report};
use crate::{Command, FixturesCommand, Options, Target};

pub enum Output {
    Report(Report),
    Raw(String),
}

pub fn execute(cmd: &Command, opts: &Options) -> Result<Output> {
    let refs = references(cmd);
    let p = match cmd {
        Command::Revalidate { report } => return crate::witness::revalidate_file(report).map(Output::Report),
        Command::Verify(v) if v.list => return Ok(Output::Raw(crate::verify::listing())),
        _ => field_of(&refs, opts.field)?,
    };
    dispatch(p, Job { cmd, opts })?
}

fn opt(k: Kind, r: &Option<String>) -> Option<(Kind, &str)> {
    r.as_deref().map(|s| (k, s))
}

fn references(cmd: &Command) -> Vec<(Kind, &str)> {
    match cmd {
        Command::CheckSeparable(Target { bimodule, extension }) => {
            [opt(Kind::Bimodule, bimodule), opt(Kind::Extension, extension)]
                .into_iter()
                .flatten()
                .collect()
        }
        Command::SepElement { bimodule, .. }
        | Command::CheckBiseparable { bimodule }
        | Command::Approximate { bimodule, .. } => vec![(Kind::Bimodule, bimodule.as_str())],
        Command::CheckExtension { extension }
        | Command::FrobeniusCheck { extension }
        | Command::Nondegenerate { extension } => vec![(Kind::Extension, extension.as_str())],
        Command::Projdim { algebra, .. } | Command::Domdim { algebra } => vec![(Kind::Algebra, algebra.as_str())],
        Command::Verify(v) => [
            opt(Kind::Bimodule, &v.bimodule),
            opt(Kind::Bimodule, &v.with),
            opt(Kind::Extension, &v.extension),
        ]
        .into_iter()
        .flatten()
        .collect(),
        Command::Fixtures(_) | Command::Revalidate { .. } => Vec::new(),
    }
}

struct Job<'a> {
    cmd: &'a Command,
    opts: &'a Options,
}

impl FieldTask for Job<'_> {
    type Output = Result<Output>;

    fn run<F: Field>(self) -> Result<Output> {
        let mut inputs = Inputs::<F>::new();
        let o = self.opts;
        let r = match self.cmd {
            Command::CheckSeparable(Target { bimodule: Some(b), .. }) => check_separable_bimodule(&mut inputs, b)?,
            Command::CheckSeparable(Target { extension: Some(e), .. }) => check_separable_extension(&mut inputs, e)?,
            Command::CheckSeparable(_) => return Err(Error::Parse("give --bimodule or --extension".into())),
            Command::SepElement { bimodule, power } => sep_element(&mut inputs, bimodule, *power)?,
            Command::CheckBiseparable { bimodule } => check_biseparable(&mut inputs, bimodule)?,
            Command::CheckExtension { extension } => check_extension(&mut inputs, extension, o)?,
            Command::Projdim { algebra, module } => projdim(&mut inputs, algebra, module, o)?,
            Command::Domdim { algebra } => domdim(&mut inputs, algebra, o)?,
            Command::Approximate { bimodule, module } => approximate(&mut inputs, bimodule, module)?,
            Command::FrobeniusCheck { extension } => frobenius_check(&mut inputs, extension, o)?,
            Command::Nondegenerate { extension } => nondegenerate(&mut inputs, extension, o)?,
            Command::Verify(v) => crate::verify::verify(&mut inputs, v, o)?,
            Command::Fixtures(FixturesCommand::List) => return Ok(Output::Raw(list(&inputs.fixtures))),
            Command::Fixtures(FixturesCommand::Export) => {
                return Ok(Output::Raw(catalog_doc(&inputs.fixtures)?.to_json() + "\n"))
            }
            Command::Revalidate { .. } => unreachable!("handled before dispatch"),
        };
        Ok(Output::Report(r))
    }
}

fn field<F: Field>() -> FieldSpec {
    F::spec()
}

fn split_label<F>(s: &SplitEpi<F>) -> &'static str {
    match s {
        SplitEpi::Section(_) => "section",
        SplitEpi::NotEpi => "not-epi",
        SplitEpi::NoSection => "no-section",
    }
}

/// Coordinates in `M (x)_R *M` plus the lift `sum e_a (x) f_a`.
pub fn element_json<F: Field>(e: &SeparabilityElement<F>) -> Value {
    let terms: Vec<Value> = e
        .lifted()
        .iter()
        .map(|(m, f)| json!({ "m": vector(m), "f": matrix(f) }))
        .collect();
    json!({ "coords": vector(&e.coords), "terms": terms })
}

fn separability_json<F: Field>(rep: &SeparabilityReport<F>) -> Value {
    let mut w = json!({ "evaluation": split_label(&rep.split) });
    if let Some(s) = rep.split.section() {
        w["section"] = matrix(s);
    }
    if let Some(e) = &rep.element {
        w["element"] = element_json(e);
    }
    w
}

fn check_separable_bimodule<F: Field>(inputs: &mut Inputs<F>, r: &str) -> Result<Report> {
    let m = inputs.bimodule(r)?;
    let rep = is_separable(&m)?;
    let mut out = Report::new("check-separable", "separable bimodule", field::<F>()).input("bimodule", r);
    out.verdict = yes_no(rep.separable()).into();
    out.witnesses = separability_json(&rep);
    Ok(out)
}

fn check_separable_extension<F: Field>(inputs: &mut Inputs<F>, r: &str) -> Result<Report> {
    let ext = inputs.extension(r)?;
    let sep = extension_is_separable(&ext)?;
    let split = extension_is_split(&ext)?;
    let mut out = Report::new("check-separable", "separable extension", field::<F>()).input("extension", r);
    out.verdict = yes_no(sep.separable()).into();
    let mut w = json!({ "separable": yes_no(sep.separable()), "split": yes_no(split.split()) });
    if let Some(e) = &sep.element {
        w["element"] = pairs(e);
    }
    if let Some(p) = &split.retraction {
        w["retraction"] = matrix(p);
    }
    out.witnesses = w;
    Ok(out)
}

fn sep_element<F: Field>(inputs: &mut Inputs<F>, r: &str, power: Option<usize>) -> Result<Report> {
    let m = inputs.bimodule(r)?;
    let rep = is_separable(&m)?;
    let mut out = Report::new("sep-element", "separability element", field::<F>()).input("bimodule", r);
    let Some(e) = rep.element else {
        out.verdict = "no".into();
        out.notes.push("u_M does not split, so no element exists".into());
        return Ok(out);
    };
    out.verdict = "yes".into();
    match power {
        Some(n) if n >= 1 => {
            out = out.input("power", n);
            out.witnesses = element_json(&sep_element_to_power(&e, n)?);
        }
        Some(_) => return Err(Error::Parse("--power must be at least 1".into())),
        None => out.witnesses = element_json(&e),
    }
    Ok(out)
}

fn check_biseparable<F: Field>(inputs: &mut Inputs<F>, r: &str) -> Result<Report> {
    let m = inputs.bimodule(r)?;
    let rep = is_biseparable(&m)?;
    let mut out = Report::new("check-biseparable", "biseparable bimodule", field::<F>()).input("bimodule", r);
    out.verdict = yes_no(rep.biseparable()).into();
    out.witnesses = json!({
        "separable": yes_no(rep.module.separable()),
        "dual_separable": yes_no(rep.dual.separable()),
        "projective_left": yes_no(rep.left_fgp.is_some()),
        "projective_right": yes_no(rep.right_fgp.is_some()),
    });
    Ok(out)
}

fn frobenius_json<F: Field>(d: &FrobeniusDatum<F>) -> Value {
    let mut w = json!({ "E": matrix(&d.e), "phi": matrix(&d.phi) });
    if let Some(db) = &d.dual_bases {
        w["dual_bases"] = pairs(db);
    }
    w
}

fn search_label<T>(s: &Search<T>) -> &'static str {
    match s {
        Search::Found(_) => "yes",
        Search::None => "no",
        Search::Inconclusive => "inconclusive",
    }
}

fn check_extension<F: Field>(inputs: &mut Inputs<F>, r: &str, o: &Options) -> Result<Report> {
    let ext = inputs.extension(r)?;
    let sep = extension_is_separable(&ext)?;
    let split = extension_is_split(&ext)?;
    let frob = frobenius_iso(&ext, &o.search)?;
    let regs = regular_bimodules(&ext);
    let mut out = Report::new("check-extension", "extension properties", field::<F>()).input("extension", r);
    out.verdict = if matches!(frob, Search::Inconclusive) {
        "inconclusive".into()
    } else {
        "computed".into()
    };
    out.witnesses = json!({
        "separable": yes_no(sep.separable()),
        "split": yes_no(split.split()),
        "frobenius": search_label(&frob),
        "top_projective_over_base": yes_no(is_fgp(&regs.top_base, Side::Right)?.is_some()),
    });
    Ok(out)
}

fn projdim<F: Field>(inputs: &mut Inputs<F>, a: &str, module: &str, o: &Options) -> Result<Report> {
    let alg = inputs.algebra(a)?;
    let x = inputs.module(a, module)?;
    let proj = Projectives::new(&alg)?;
    let res = minimal_resolution(&proj, &x, o.cutoff)?;
    res.verify(&proj)?;
    let mut out = Report::new("projdim", "projective dimension", field::<F>())
        .input("algebra", a)
        .input("module", module)
        .input("cutoff", o.cutoff);
    out.verdict = res.proj_dim().to_string();
    out.witnesses = json!({
        "term_dims": res.terms.iter().map(|t| t.dim()).collect::<Vec<_>>(),
        "summands": res.summands,
        "complete": res.complete,
    });
    Ok(out)
}

fn domdim<F: Field>(inputs: &mut Inputs<F>, a: &str, o: &Options) -> Result<Report> {
    let alg = inputs.algebra(a)?;
    let d = dom_dim(&alg, o.cutoff)?;
    let mut out = Report::new("domdim", "dominant dimension", field::<F>())
        .input("algebra", a)
        .input("cutoff", o.cutoff);
    out.verdict = d.to_string();
    Ok(out)
}

fn approximate<F: Field>(inputs: &mut Inputs<F>, r: &str, module: &str) -> Result<Report> {
    let m = inputs.bimodule(r)?;
    let t = m.left_algebra().label();
    let y = inputs.module(&t, module)?;
    let tests = inputs.modules(&m.right_algebra().label())?;
    let adj = Adjunction::new(m);
    let w = adj.approximate(&y, &tests)?;
    let mut out = Report::new("approximate", "counit approximation", field::<F>())
        .input("bimodule", r)
        .input("module", module);
    out.verdict = "pass".into();
    out.witnesses = json!({
        "counit": matrix(&w.arrow),
        "factorizations": w.factorizations.iter().map(|f| json!({
            "test": f.test, "psi": matrix(&f.psi), "phi": matrix(&f.phi)
        })).collect::<Vec<_>>(),
    });
    Ok(out)
}

fn frobenius_check<F: Field>(inputs: &mut Inputs<F>, r: &str, o: &Options) -> Result<Report> {
    let ext = inputs.extension(r)?;
    let found = frobenius_iso(&ext, &o.search)?;
    let mut out = Report::new("frobenius-check", "Frobenius extension", field::<F>())
        .input("extension", r)
        .input("seed", o.search.seed);
    out.verdict = search_label(&found).into();
    if let Search::Found(d) = &found {
        out.witnesses = frobenius_json(d);
    }
    Ok(out)
}

fn nondegenerate<F: Field>(inputs: &mut Inputs<F>, r: &str, o: &Options) -> Result<Report> {
    let ext = inputs.extension(r)?;
    let mut out = Report::new("nondegenerate", "non-degenerate conditional expectation", field::<F>())
        .input("extension", r)
        .input("seed", o.search.seed);
    let d = match frobenius_iso(&ext, &o.search)? {
        Search::Found(d) => d,
        other => {
            out.verdict = search_label(&other).into();
            out.notes
                .push("no Frobenius isomorphism, so no expectation to test".into());
            return Ok(out);
        }
    };
    let kernel = max_right_ideal_in_ker(&ext, &d.e);
    let ea = ea_subspace(&ext, &d.e)?;
    let nd = make_nondegenerate(&ext, &d.e, &d.phi)?;
    out.verdict = yes_no(kernel.is_zero() && ea.equal() && nd.holds()).into();
    out.witnesses = json!({
        "E": matrix(&d.e),
        "kernel_ideal_dim": kernel.dim(),
        "EA_equals_hom": ea.equal(),
        "a": vector(&nd.a),
        "b": vector(&nd.b),
        "E1": matrix(&nd.e1),
        "ab_is_one": nd.ab_is_one,
        "ba_is_one": nd.ba_is_one,
    });
    Ok(out)
}

fn list<F: Field>(c: &Catalog<F>) -> String {
    let mut out = String::new();
    let names = |xs: Vec<&String>| xs.into_iter().map(String::as_str).collect::<Vec<_>>().join(" ");
    out += &format!("field: {}\n", F::spec());
    out += &format!("algebras: {}\n", names(c.algebras.iter().map(|(n, _)| n).collect()));
    out += &format!("extensions: {}\n", names(c.extensions.iter().map(|(n, _)| n).collect()));
    out += &format!("bimodules: {}\n", names(c.bimodules.iter().map(|(n, _)| n).collect()));
    for (a, ms) in &c.modules {
        out += &format!("modules over {a}: {}\n", names(ms.iter().map(|m| &m.name).collect()));
    }
    out
}
