//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit when any
//! criterion fails. Tolerances are pinned here.

use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64;

use holimit::cauchy::{cauchy_reproduce, dominated_bound, pompeiu_reproduce};
use holimit::cli::suites::{classifier_params, pompeiu_cutoff, run_suite, Context, POMPEIU_PROBE};
use holimit::cli::{Check, ExperimentConfig};
use holimit::geometry::{circle_contour, Disc};
use holimit::osgood::{classify_holomorphy, Verdict};
use holimit::runge::{build_example_sequence_best_effort, ExampleSequence, FitOptions};

const J_MAX: usize = 6;
const DEGREE_CAP: usize = 160;
const BUILD_BUDGET: Duration = Duration::from_secs(30);
const VERIFY_BUDGET: Duration = Duration::from_secs(120);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

struct Line {
    n: usize,
    pass: bool,
    detail: String,
}

fn summarize(checks: &[Check]) -> (bool, String) {
    let pass = !checks.is_empty() && checks.iter().all(|c| c.pass);
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("{} {}", c.name, serde_json::to_string(&c.measured).unwrap_or_default()))
        .collect();
    let detail = if failed.is_empty() {
        format!("{} checks", checks.len())
    } else {
        format!("failed: {}", failed.join("; "))
    };
    (pass, detail)
}

fn criterion_1(ex: &ExampleSequence, elapsed: Duration) -> Line {
    let mut pass = elapsed < BUILD_BUDGET && ex.entries.len() == J_MAX;
    let mut parts = Vec::new();
    for e in &ex.entries {
        let eps = 1.0 / e.j as f64;
        let mut errs = Vec::new();
        for id in ["S", "T"] {
            let Some(cert) = e.polynomial.certificate(id) else {
                pass = false;
                errs.push(format!("{id}=missing"));
                continue;
            };
            let half = e
                .polynomial
                .sup_error(&cert.region, cert.target, cert.validation_spacing / 2.0)
                .unwrap_or(f64::INFINITY);
            pass &= cert.measured_sup_error < eps && half < eps;
            errs.push(format!("{id}={:.4}/{:.4}", cert.measured_sup_error, half));
        }
        parts.push(format!("j={} deg={} {} (<{:.4})", e.j, e.polynomial.degree(), errs.join(" "), eps));
    }
    Line {
        n: 1,
        pass,
        detail: format!("{}; build {:.1}s (<30s)", parts.join(", "), elapsed.as_secs_f64()),
    }
}

fn criterion_2(ex: &ExampleSequence) -> Line {
    let mut pass = true;
    let mut parts = Vec::new();
    for e in &ex.entries {
        let eps = 1.0 / e.j as f64;
        let t = e.polynomial.eval(c(0.5, 0.5)).norm();
        let s = (e.polynomial.eval(c(0.3, 0.0)) - 1.0).norm();
        pass &= t < eps && s < eps;
        parts.push(format!("j={}: {t:.4}, {s:.4} (<{eps:.4})", e.j));
    }
    Line { n: 2, pass, detail: parts.join(", ") }
}

fn criterion_3(ctx: &Context, ex: &ExampleSequence) -> Line {
    let run = || -> holimit::Result<(bool, String)> {
        let mut map_cfg = ctx.config.analyze.map.clone();
        map_cfg.half_width = 0.9;
        map_cfg.cells = 64;
        let params = classifier_params(&map_cfg, ex.j_max)?;
        let map = classify_holomorphy(&ex.to_sequence()?, &params)?;
        let off = map.exceptional_off_axes().len();
        let frac = map.regular_fraction();
        Ok((
            off == 0 && frac >= 0.90,
            format!(
                "64x64 on [-0.9,0.9]^2: exceptional off the axis bands {off} (=0), fraction {frac:.4} (>=0.90), exceptional {}, sequence certified {}",
                map.count(Verdict::Exceptional),
                ex.all_certified()
            ),
        ))
    };
    let (pass, detail) = run().unwrap_or_else(|e| (false, format!("error: {e}")));
    Line { n: 3, pass, detail }
}

fn criterion_6() -> Line {
    let run = || -> holimit::Result<(bool, String)> {
        let k = circle_contour(c(0.0, 0.0), 1.0, 256)?;
        let p = |z: Complex64| z.powu(4) - 3.0 * z * z + c(0.5, 2.0) * z - 1.0;
        let v: Vec<Complex64> = k.nodes().iter().map(|&z| p(z)).collect();
        let mut worst: f64 = 0.0;
        for w in [c(0.0, 0.0), c(0.5, 0.1), c(-0.3, -0.6), c(0.1, 0.8)] {
            worst = worst.max((cauchy_reproduce(&v, &k, w)? - p(w)).norm());
        }
        let r: Vec<Complex64> = k.nodes().iter().map(|&z| 1.0 / (z - 2.0)).collect();
        let res = (cauchy_reproduce(&r, &k, c(0.0, 0.0))? + 0.5).norm();
        Ok((
            worst <= 1e-10 && res <= 1e-10,
            format!("polynomial max error {worst:.2e} (<=1e-10), residue error {res:.2e} (<=1e-10)"),
        ))
    };
    let (pass, detail) = run().unwrap_or_else(|e| (false, format!("error: {e}")));
    Line { n: 6, pass, detail }
}

fn criterion_7() -> Line {
    let run = || -> holimit::Result<(bool, String)> {
        let cut = pompeiu_cutoff();
        let z = POMPEIU_PROBE;
        let err = |f: &dyn Fn(Complex64) -> Complex64, n| -> holimit::Result<f64> {
            Ok((pompeiu_reproduce(f, &cut, z, n)? - f(z)).norm())
        };
        let one = |_: Complex64| c(1.0, 0.0);
        let id = |w: Complex64| w;
        let (e1, ez) = (err(&one, 400)?, err(&id, 400)?);
        let (r1, rz) = (err(&one, 800)? / e1, err(&id, 800)? / ez);
        let b = dominated_bound(|_| 1.0, &cut, &Disc::new(c(0.0, 0.0), 0.3)?, 400)?;
        let halves = |r: f64| (0.4..=0.6).contains(&r);
        Ok((
            e1 <= 1e-3 && ez <= 1e-3 && halves(r1) && halves(rz) && b >= 1.0 - 1e-3,
            format!(
                "errors at 400x400 {e1:.2e}, {ez:.2e} (<=1e-3); refinement ratios {r1:.3}, {rz:.3} (in [0.4,0.6]); dominated bound {b:.4} (>=0.999)"
            ),
        ))
    };
    let (pass, detail) = run().unwrap_or_else(|e| (false, format!("error: {e}")));
    Line { n: 7, pass, detail }
}

fn criterion_12() -> Line {
    let dir = std::env::temp_dir().join(format!("holimit-acceptance-{}", std::process::id()));
    let start = Instant::now();
    let status = Command::new(env!("CARGO_BIN_EXE_holimit"))
        .args(["verify", "--parallel", "1", "--out"])
        .arg(&dir)
        .output();
    let elapsed = start.elapsed();
    let _ = std::fs::remove_dir_all(&dir);
    match status {
        Ok(out) => {
            let code = out.status.code().unwrap_or(-1);
            Line {
                n: 12,
                pass: code == 0 && elapsed < VERIFY_BUDGET,
                detail: format!("verify --parallel 1: {:.1}s (<120s), exit code {code} (=0)", elapsed.as_secs_f64()),
            }
        }
        Err(e) => Line { n: 12, pass: false, detail: format!("cannot run verify: {e}") },
    }
}

fn main() {
    let start = Instant::now();
    let built = build_example_sequence_best_effort(J_MAX, DEGREE_CAP, &FitOptions::default());
    let elapsed = start.elapsed();
    let ex = match built {
        Ok(ex) => ex,
        Err(e) => {
            println!("criterion 1: FAIL: example build error: {e}");
            std::process::exit(1);
        }
    };
    let ctx = Context::new(ExperimentConfig::default()).with_example(ex.clone());
    let suite = |n: usize, names: &[&str], filter: &dyn Fn(&Check) -> bool| {
        let checks: Vec<Check> = names.iter().flat_map(|s| run_suite(&ctx, s)).filter(|c| filter(c)).collect();
        let (pass, detail) = summarize(&checks);
        Line { n, pass, detail }
    };
    let all = |_: &Check| true;
    let lines = vec![
        criterion_1(&ex, elapsed),
        criterion_2(&ex),
        criterion_3(&ctx, &ex),
        suite(4, &["baire"], &all),
        suite(5, &["remark-bound"], &all),
        criterion_6(),
        criterion_7(),
        suite(8, &["schlicht"], &all),
        suite(9, &["realanalytic"], &all),
        suite(10, &["scv"], &|c| !c.name.starts_with("scv-line") && c.name != "scv-disc-family"),
        suite(11, &["harmonic"], &|c| c.name != "harmonic-poisson-family" && !c.name.ends_with("-certified")),
        criterion_12(),
    ];
    let mut failed = 0;
    for l in &lines {
        println!("criterion {:>2}: {}: {}", l.n, if l.pass { "PASS" } else { "FAIL" }, l.detail);
        failed += usize::from(!l.pass);
    }
    println!("{} of {} criteria pass", lines.len() - failed, lines.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
