//! Acceptance suite: one PASS/FAIL line per criterion, each under a minute.

use std::time::{Duration, Instant};

use serde_json::Value;

use sepalg::bimodule::Bimodule;
use sepalg::fixtures::{load_catalog, Catalog};
use sepalg::homological::{compare_dom_dim, compare_findim, DEFAULT_CUTOFF};
use sepalg::separability::{
    extension_is_separable, is_separable, sep_element_from_power, sep_element_to_power, SeparabilityElement,
};
use sepalg::{Field, F2, Q};
use sepalg_cli::run;

const LIMIT: Duration = Duration::from_secs(60);

type Check = fn() -> Result<String, String>;

fn sepalg(args: &[&str]) -> (i32, String) {
    let out = run(std::iter::once("sepalg").chain(args.iter().copied()));
    (out.code, out.stdout + &out.stderr)
}

fn json(args: &[&str]) -> Result<Value, String> {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out) = sepalg(&full);
    let v: Value = serde_json::from_str(&out).map_err(|e| format!("{args:?}: {e}"))?;
    if code != 0 {
        return Err(format!("{args:?} exited {code}: {}", v["error"]));
    }
    Ok(v)
}

fn expect(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

/// Cases of a single `verify --thm` check, after asserting its verdict.
fn verify_cases(args: &[&str], verdict: &str) -> Result<Vec<Value>, String> {
    let mut full = vec!["verify"];
    full.extend_from_slice(args);
    let r = json(&full)?;
    let check = &r["witnesses"]["checks"][0];
    expect(check["verdict"] == verdict, || {
        format!("{args:?}: verdict {}", check["verdict"])
    })?;
    Ok(check["cases"].as_array().cloned().unwrap_or_default())
}

fn passed(cases: &[Value]) -> usize {
    cases.iter().filter(|c| c["status"] == "pass").count()
}

fn coherence() -> Result<String, String> {
    let mut total = 0;
    for field in ["0", "2"] {
        let cases = verify_cases(&["--field", field, "--thm", "2.2"], "pass")?;
        let random = cases
            .iter()
            .filter(|c| c["name"].as_str().unwrap().starts_with("rand"))
            .count();
        // the F2 catalog is small; its sweep is extra coverage
        let catalog_min = if field == "0" { 8 } else { 1 };
        expect(random >= 50 && cases.len() - random >= catalog_min, || {
            format!("char {field}: {random} random, {} total", cases.len())
        })?;
        expect(passed(&cases) == cases.len(), || "a case did not pass".into())?;
        total += cases.len();
    }
    // saved elements re-validate from the report alone
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cat: Catalog<Q> = load_catalog();
    let mut revalidated = 0;
    for (name, _) in &cat.bimodules {
        let r = json(&["check-separable", "--bimodule", &format!("fixtures:{name}")])?;
        let path = dir.path().join("r.json");
        std::fs::write(&path, r.to_string()).map_err(|e| e.to_string())?;
        let back = json(&["revalidate", path.to_str().unwrap()])?;
        let want = if r["verdict"] == "yes" { "pass" } else { "no witness" };
        expect(back["verdict"] == want, || format!("{name}: {}", back["verdict"]))?;
        revalidated += (want == "pass") as usize;
    }
    Ok(format!(
        "{total} bimodules agree, {revalidated} saved elements re-validate"
    ))
}

fn route_agreement<F: Field>(cat: &Catalog<F>) -> Result<usize, String> {
    for (name, ext) in &cat.extensions {
        let direct = extension_is_separable(ext)
            .map_err(|e| e.to_string())?
            .element
            .is_some();
        let top = Bimodule::regular(ext.top.clone())
            .restrict_right(ext)
            .map_err(|e| e.to_string())?;
        let via = is_separable(&top).map_err(|e| e.to_string())?.separable();
        expect(direct == via, || {
            format!("{name}: extension {direct}, bimodule T_R {via}")
        })?;
    }
    Ok(cat.extensions.len())
}

fn maschke() -> Result<String, String> {
    let qc2 = json(&["check-separable", "--extension", "fixtures:Q->QC2"])?;
    expect(qc2["verdict"] == "yes", || "Q->QC2 not separable".into())?;
    let f2 = json(&["check-separable", "--extension", "fixtures:F2->F2C2"])?;
    expect(f2["verdict"] == "no", || "F2->F2C2 separable".into())?;
    let dual = json(&["check-extension", "--extension", "fixtures:Q->Qx2"])?;
    expect(
        dual["witnesses"]["separable"] == "no" && dual["witnesses"]["split"] == "yes",
        || format!("Q->Qx2: {}", dual["witnesses"]),
    )?;
    let n = route_agreement(&load_catalog::<Q>())? + route_agreement(&load_catalog::<F2>())?;
    Ok(format!("expected verdicts; both routes agree on {n} extensions"))
}

fn transport() -> Result<String, String> {
    let mut n = 0;
    for thm in ["2.5", "2.7", "2.8"] {
        let cases = verify_cases(&["--thm", thm], "pass")?;
        expect(passed(&cases) > 0, || format!("{thm}: nothing checked"))?;
        n += passed(&cases);
    }
    for p in [2, 3] {
        let cases = verify_cases(&["--thm", "2.8", "--n", &p.to_string()], "pass")?;
        expect(
            cases
                .iter()
                .all(|c| c["name"].as_str().unwrap().ends_with(&format!("^{p}"))),
            || "wrong power".into(),
        )?;
    }
    // M -> M^n -> M returns the element it started from
    let cat: Catalog<Q> = load_catalog();
    let mut exact = 0;
    for (name, m) in cat.bimodules.iter().filter(|(_, m)| m.dim() <= 3) {
        let Some(e) = is_separable(m).map_err(|e| e.to_string())?.element else {
            continue;
        };
        for p in [2, 3] {
            let up = sep_element_to_power(&e, p).map_err(|e| e.to_string())?;
            let back: SeparabilityElement<Q> = sep_element_from_power(&up, m, p).map_err(|e| e.to_string())?;
            let again = sep_element_from_power(&sep_element_to_power(&back, p).map_err(|e| e.to_string())?, m, p)
                .map_err(|e| e.to_string())?;
            expect(again.coords == back.coords, || {
                format!("{name}^{p}: round trip not idempotent")
            })?;
            exact += 1;
        }
    }
    Ok(format!("{n} transport cases, {exact} idempotent power round trips"))
}

fn hom_transfer() -> Result<String, String> {
    let cases = verify_cases(&["--thm", "2.6"], "pass")?;
    expect(!cases.is_empty() && passed(&cases) == cases.len(), || {
        "skipped or failed pairs".into()
    })?;
    Ok(format!("{} (separable M, biseparable X) pairs", cases.len()))
}

fn counit() -> Result<String, String> {
    let cases = verify_cases(&["--thm", "L3.1"], "pass")?;
    let maps = cases
        .iter()
        .find(|c| c["name"] == "counit factorizations")
        .and_then(|c| c["detail"].as_str()?.split(' ').next()?.parse::<usize>().ok())
        .unwrap_or(0);
    expect(maps >= 100, || format!("{maps} random maps"))?;
    let splits = cases
        .iter()
        .filter(|c| c["name"].as_str().unwrap().starts_with("split counit"))
        .count();
    expect(splits > 0, || "no split counits checked".into())?;
    Ok(format!(
        "triangles, {splits} split counits, {maps} exact factorizations"
    ))
}

fn homological() -> Result<String, String> {
    let pd = json(&["projdim", "--algebra", "fixtures:A2", "--module", "S1"])?;
    expect(pd["verdict"] == "1", || format!("pd S1 = {}", pd["verdict"]))?;
    let inf = json(&["projdim", "--algebra", "fixtures:Qx2", "--module", "S1"])?;
    expect(inf["verdict"] == format!(">{DEFAULT_CUTOFF}"), || {
        format!("pd over Qx2 = {}", inf["verdict"])
    })?;
    let dd = json(&["domdim", "--algebra", "fixtures:A2"])?;
    expect(dd["verdict"] == "1", || format!("dom.dim A2 = {}", dd["verdict"]))?;
    let cat: Catalog<Q> = load_catalog();
    let ext = cat.extension("A2->M2A2").ok_or("missing A2->M2A2")?;
    let d = compare_dom_dim(ext, DEFAULT_CUTOFF).map_err(|e| e.to_string())?;
    expect(d.agree() && d.base.to_string() == "1", || {
        format!("dom.dim {} vs {}", d.base, d.top)
    })?;
    let f = compare_findim(ext, cat.modules("A2"), cat.modules("M2A2"), DEFAULT_CUTOFF).map_err(|e| e.to_string())?;
    expect(f.agree() && f.base.to_string() == "1", || {
        format!("findim {} vs {}", f.base, f.top)
    })?;
    let cases = verify_cases(&["--thm", "P3.2"], "pass")?;
    let cor = cases
        .iter()
        .filter(|c| c["name"].as_str().unwrap().starts_with("change of rings") && c["status"] == "pass")
        .count();
    expect(cor > 0, || "change of rings unchecked".into())?;
    Ok(format!(
        "A2 and M2A2 share dom.dim 1 and findim 1; change of rings on {cor} extensions"
    ))
}

fn frobenius() -> Result<String, String> {
    for ext in ["Q->QC2", "Q->M2Q", "Q->QxQ"] {
        let r = json(&["frobenius-check", "--extension", &format!("fixtures:{ext}")])?;
        expect(r["verdict"] == "yes", || format!("{ext}: {}", r["verdict"]))?;
        let nd = json(&["nondegenerate", "--extension", &format!("fixtures:{ext}")])?;
        let w = &nd["witnesses"];
        expect(
            w["ab_is_one"] == true
                && w["ba_is_one"] == true
                && w["kernel_ideal_dim"] == 0
                && w["EA_equals_hom"] == true,
            || format!("{ext}: {w}"),
        )?;
    }
    let p44 = verify_cases(&["--thm", "P4.4"], "pass")?;
    let p46 = verify_cases(&["--thm", "4.6"], "pass")?;
    let p41 = verify_cases(&["--thm", "P4.1"], "pass")?;
    let retractions = p41
        .iter()
        .filter(|c| c["name"].as_str().unwrap().starts_with("retraction"))
        .count();
    expect(
        retractions >= 1
            && p41
                .iter()
                .filter(|c| c["detail"] == "100 idempotent, 100 fixed")
                .count()
                == retractions,
        || "retraction sweep incomplete".into(),
    )?;
    let reflected = p41
        .iter()
        .filter(|c| c["name"].as_str().unwrap().starts_with("reflect"))
        .count();
    Ok(format!(
        "{} expectations factor test maps, {} non-degenerate, {retractions}x100 retractions, {reflected} reflected diagrams",
        passed(&p44),
        passed(&p46)
    ))
}

fn determinism() -> Result<String, String> {
    let mut bytes = 0;
    for field in ["0", "2"] {
        let a = sepalg(&["--json", "--field", field, "verify"]);
        let b = sepalg(&["--json", "--field", field, "verify"]);
        expect(a.0 == 0 && a == b, || {
            format!("char {field}: runs differ or exit {}", a.0)
        })?;
        bytes += a.1.len();
    }
    Ok(format!("{bytes} bytes identical across runs"))
}

fn main() {
    let criteria: [(&str, Check); 8] = [
        ("separability-coherence", coherence),
        ("maschke", maschke),
        ("transport", transport),
        ("hom-transfer", hom_transfer),
        ("counit-splitting", counit),
        ("homological-bounds", homological),
        ("frobenius", frobenius),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let result = match result {
            Ok(d) if took > LIMIT => Err(format!("{d}, but over the time limit")),
            r => r,
        };
        match result {
            Ok(detail) => println!("PASS {name:<24} {detail} ({:.1}s)", took.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL {name:<24} {why} ({:.1}s)", took.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
