//! The verification suites. Each suite returns its checks; errors inside a
//! suite become failing checks so one broken suite never hides the others.

use std::sync::OnceLock;

use num_complex::Complex64;

use super::config::{ExperimentConfig, MapConfig};
use super::report::Check;
use crate::cauchy::{
    cauchy_reproduce, dominated_bound, pompeiu_reproduce, verify_remark_bound, CutoffFunction, RemarkSetup,
};
use crate::error::{Error, Result};
use crate::geometry::{circle_contour, CellGrid, Disc, Grid, PlanarSet};
use crate::harmonic::{boundary_angles, classify_harmonicity, mean_value_residual, poisson_extend, poisson_family};
use crate::osgood::{
    bounded_index_map, classify_holomorphy, find_dense_ball, montel_diagonal, schlicht_growth_check,
    ClassifierParams, HolomorphyMap, Verdict, DEFAULT_K_CAP, DEFAULT_MIN_TAIL,
};
use crate::realanalytic::{
    check_factorial_bound, classify_analytic, derivative_table, estimate_derivatives, exp_partial_sum, minimal_k,
    sqrt_shift, taylor_limit_coeffs, AnalyticVerdict, SpectralSettings,
};
use crate::runge::{build_example_sequence_best_effort, store::load_sequence, ExampleSequence, FitOptions};
use crate::scv::{
    analyze_line, constant2, coordinate_disc_consistency, disc_uniform_convergence, hartogs_check,
    product_geometric, torus_reproduce, C2Point,
};
use crate::sequence::{constant, geometric_partial_sums, koebe, koebe_partial_sums, FunctionSequence};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Shared state of one run: the configuration and the lazily built example
/// sequence.
pub struct Context {
    pub config: ExperimentConfig,
    example: OnceLock<std::result::Result<ExampleSequence, String>>,
}

impl Context {
    pub fn new(config: ExperimentConfig) -> Self {
        Context {
            config,
            example: OnceLock::new(),
        }
    }

    /// Loads `example.sequence_dir` when set, otherwise builds the best-effort
    /// sequence once.
    pub fn example(&self) -> Result<&ExampleSequence> {
        self.example
            .get_or_init(|| {
                let e = &self.config.example;
                match &e.sequence_dir {
                    Some(dir) => load_sequence(dir).map_err(|err| err.to_string()),
                    None => build_example_sequence_best_effort(e.j_max, e.degree_cap, &FitOptions::default())
                        .map_err(|err| err.to_string()),
                }
            })
            .as_ref()
            .map_err(|msg| Error::invalid(msg.clone()))
    }

    /// Seeds the example cache with an already built sequence.
    pub fn with_example(self, seq: ExampleSequence) -> Self {
        let _ = self.example.set(Ok(seq));
        self
    }
}

fn guard(name: &str, f: impl FnOnce() -> Result<Vec<Check>>) -> Vec<Check> {
    f().unwrap_or_else(|e| vec![Check::error(name, e)])
}

pub fn run_suite(ctx: &Context, suite: &str) -> Vec<Check> {
    match suite {
        "cauchy" => guard("cauchy", || cauchy_suite(ctx)),
        "remark-bound" => guard("remark-bound", || remark_suite(ctx)),
        "pompeiu" => guard("pompeiu", || pompeiu_suite(ctx)),
        "dominated" => guard("dominated", || dominated_suite(ctx)),
        "schlicht" => guard("schlicht", || schlicht_suite(ctx)),
        "baire" => guard("baire", || baire_suite(ctx)),
        "montel" => guard("montel", || montel_suite(ctx)),
        "realanalytic" => guard("realanalytic", || realanalytic_suite(ctx)),
        "scv" => guard("scv", || scv_suite(ctx)),
        "harmonic" => guard("harmonic", || harmonic_suite(ctx)),
        other => vec![Check::error(other, "unknown suite")],
    }
}

fn cauchy_suite(ctx: &Context) -> Result<Vec<Check>> {
    let n = ctx.config.verify.cauchy_nodes;
    let contour = circle_contour(c(0.0, 0.0), 1.0, n)?;
    let p = |z: Complex64| z * z * z - c(0.0, 2.0) * z * z + 0.5 * z + c(1.0, -1.0);
    let values: Vec<Complex64> = contour.nodes().iter().map(|&z| p(z)).collect();
    let mut worst: f64 = 0.0;
    for w in [c(0.0, 0.0), c(0.3, -0.2), c(-0.5, 0.4), c(0.1, 0.7)] {
        worst = worst.max((cauchy_reproduce(&values, &contour, w)? - p(w)).norm());
    }
    let poly = Check::new("cauchy-polynomial-reproduction", worst <= 1e-10)
        .measure("max_error", worst)
        .threshold("max_error", 1e-10)
        .threshold("nodes", n);
    let values: Vec<Complex64> = contour.nodes().iter().map(|&z| 1.0 / (z - 2.0)).collect();
    let got = cauchy_reproduce(&values, &contour, c(0.0, 0.0))?;
    let err = (got - c(-0.5, 0.0)).norm();
    let residue = Check::new("cauchy-residue-oracle", err <= 1e-10)
        .measure("value", got)
        .measure("error", err)
        .threshold("error", 1e-10);
    Ok(vec![poly, residue])
}

fn remark_suite(ctx: &Context) -> Result<Vec<Check>> {
    let ex = ctx.example()?;
    let seq = ex.to_sequence()?;
    let r = &ctx.config.verify.remark;
    let j_max = seq.j_max();
    let pairs: Vec<(usize, usize)> = (r.first_index..=j_max)
        .flat_map(|l| (l + 1..=j_max).map(move |m| (l, m)))
        .collect();
    if pairs.is_empty() {
        return Ok(vec![Check::new("remark-bound", false)
            .note(format!("no pairs with indices >= {} up to j_max = {j_max}", r.first_index))]);
    }
    let setup = RemarkSetup {
        center: r.center,
        radius: r.radius,
        contour_nodes: r.contour_nodes,
        delta: r.delta,
        eps_star: r.eps_star,
        tail_start: r.first_index - 1,
        pairs,
        spacing: r.spacing,
    };
    let reports = verify_remark_bound(&seq, &setup)?;
    let violations = reports.iter().filter(|x| !x.holds()).count();
    Ok(vec![Check::new("remark-bound", violations == 0)
        .measure("violations", violations)
        .measure("reports", &reports)
        .threshold("violations", 0)])
}

/// Cutoff, probe and refinement used by the Pompeiu checks.
pub const POMPEIU_PROBE: Complex64 = Complex64::new(0.2, 0.1);

pub fn pompeiu_cutoff() -> CutoffFunction {
    CutoffFunction::new(c(0.0, 0.0), 0.6, 0.8).expect("static cutoff")
}

fn pompeiu_suite(ctx: &Context) -> Result<Vec<Check>> {
    let n = ctx.config.verify.pompeiu_n;
    let cut = pompeiu_cutoff();
    let one = |_: Complex64| c(1.0, 0.0);
    let id = |z: Complex64| z;
    let e1 = (pompeiu_reproduce(one, &cut, POMPEIU_PROBE, n)? - 1.0).norm();
    let ez = (pompeiu_reproduce(id, &cut, POMPEIU_PROBE, n)? - POMPEIU_PROBE).norm();
    let e1_fine = (pompeiu_reproduce(one, &cut, POMPEIU_PROBE, 2 * n)? - 1.0).norm();
    let ez_fine = (pompeiu_reproduce(id, &cut, POMPEIU_PROBE, 2 * n)? - POMPEIU_PROBE).norm();
    let (r1, rz) = (e1_fine / e1, ez_fine / ez);
    let halves = |r: f64| (0.4..=0.6).contains(&r);
    Ok(vec![
        Check::new("pompeiu-reproduction", e1 <= 1e-3 && ez <= 1e-3)
            .measure("error_one", e1)
            .measure("error_identity", ez)
            .threshold("error", 1e-3)
            .threshold("n", n),
        Check::new("pompeiu-refinement-halves", halves(r1) && halves(rz))
            .measure("ratio_one", r1)
            .measure("ratio_identity", rz)
            .threshold("ratio_min", 0.4)
            .threshold("ratio_max", 0.6),
        Check::new("pompeiu-refinement-decreases", r1 < 1.0 && rz < 1.0)
            .measure("ratio_one", r1)
            .measure("ratio_identity", rz)
            .threshold("ratio_max", 1.0),
    ])
}

fn dominated_suite(ctx: &Context) -> Result<Vec<Check>> {
    let n = ctx.config.verify.pompeiu_n;
    let cut = pompeiu_cutoff();
    let k = Disc::new(c(0.0, 0.0), 0.3)?;
    let b1 = dominated_bound(|_| 1.0, &cut, &k, n)?;
    let be = dominated_bound(|z| z.exp().norm(), &cut, &k, n)?;
    let sup_exp = k.sample(0.01)?.iter().map(|z| z.exp().norm()).fold(0.0, f64::max);
    Ok(vec![
        Check::new("dominated-constant", b1 >= 1.0 - 1e-3)
            .measure("bound", b1)
            .threshold("bound_min", 1.0 - 1e-3),
        Check::new("dominated-exponential", be >= sup_exp)
            .measure("bound", be)
            .measure("sup_on_k", sup_exp),
    ])
}

fn schlicht_suite(_ctx: &Context) -> Result<Vec<Check>> {
    let radii: Vec<f64> = (1..=9).map(|k| k as f64 / 10.0).collect();
    let mut worst: f64 = 0.0;
    for &r in &radii {
        worst = worst.max(schlicht_growth_check(koebe, &[r], 1)?.max_violation.abs());
    }
    let fine: Vec<f64> = (1..=19).map(|k| k as f64 / 20.0).collect();
    let id = schlicht_growth_check(|z| z, &fine, 64)?;
    let seq = koebe_partial_sums(200, 0.8)?;
    let params = ClassifierParams::new(CellGrid::square(0.8, 16)?, vec![(150, 200)]);
    let map = classify_holomorphy(&seq, &params)?;
    let exc = map.count(Verdict::Exceptional);
    Ok(vec![
        Check::new("schlicht-koebe-saturation", worst <= 1e-12)
            .measure("max_gap", worst)
            .threshold("max_gap", 1e-12),
        Check::new("schlicht-identity", id.max_violation <= 0.0)
            .measure("max_violation", id.max_violation)
            .threshold("max_violation", 0.0),
        Check::new("schlicht-koebe-partial-sums", exc == 0 && map.count(Verdict::Regular) > 0)
            .measure("exceptional_cells", exc)
            .measure("holomorphic_cells", map.count(Verdict::Regular))
            .measure("outside_cells", map.count(Verdict::Outside))
            .threshold("exceptional_cells", 0),
    ])
}

fn baire_suite(ctx: &Context) -> Result<Vec<Check>> {
    let seq = ctx.example()?.to_sequence()?;
    let n = ctx.config.verify.baire_nodes;
    let decomp = bounded_index_map(&seq, &Grid::square(0.9, n)?, DEFAULT_K_CAP)?;
    let inv = decomp.check_invariants();
    let ball = find_dense_ball(&decomp);
    let mut checks = vec![Check::new("baire-invariants", inv.is_ok())
        .measure("divergent_nodes", decomp.divergent_count())
        .measure("max_level", decomp.max_level())
        .note(inv.err().unwrap_or_else(|| "nesting and covering hold".into()))];
    checks.push(match ball {
        Ok(b) => Check::new("baire-dense-ball", true)
            .measure("center", b.center)
            .measure("radius", b.radius)
            .measure("k", b.k),
        Err(e) => Check::error("baire-dense-ball", e),
    });
    Ok(checks)
}

fn montel_suite(_ctx: &Context) -> Result<Vec<Check>> {
    let seq = geometric_partial_sums(30)?;
    let pts = Disc::new(c(0.0, 0.0), 0.5)?.sample(0.1)?;
    let samples = vec![pts.clone(), pts.clone(), pts];
    let tols = [1e-1, 1e-2, 1e-3];
    let d = montel_diagonal(&seq, &samples, &tols, DEFAULT_MIN_TAIL)?;
    let within = d.deviations.iter().zip(&d.tolerances).all(|(a, b)| a <= b);
    let expected = vec![4usize, 7, 10];
    let k = constant(c(1.0, 0.0), 3)?;
    let short = montel_diagonal(&k, &vec![vec![c(0.0, 0.0)]; 3], &tols, DEFAULT_MIN_TAIL)?;
    Ok(vec![
        Check::new("montel-geometric-oracle", d.indices == expected && within && !d.truncated)
            .measure("indices", &d.indices)
            .measure("deviations", &d.deviations)
            .threshold("indices", expected),
        Check::new("montel-truncation", short.truncated && short.indices == vec![1])
            .measure("indices", &short.indices)
            .measure("truncated", short.truncated),
    ])
}

fn realanalytic_suite(ctx: &Context) -> Result<Vec<Check>> {
    let cfg = &ctx.config.realanalytic;
    let spectral = SpectralSettings {
        interval: (-1.0, 1.0),
        degree: cfg.spectral_degree,
    };
    let exp = exp_partial_sum(cfg.exp_j_max)?;
    let table = derivative_table(&exp, cfg.exp_j_max, &cfg.centers, cfg.taylor_order, &spectral, true)?;
    let bound = check_factorial_bound(&table, cfg.k, cfg.r)?;
    let taylor = cfg
        .centers
        .iter()
        .map(|&x| taylor_limit_coeffs(&exp, x, cfg.taylor_order, cfg.tail, &spectral, cfg.variation_tol))
        .collect::<Result<Vec<_>>>()?;
    let verdicts = classify_analytic(&taylor, cfg.decay_tol);
    let analytic = verdicts
        .iter()
        .all(|v| matches!(v, AnalyticVerdict::Analytic { radius } if *radius >= cfg.r / 2.0));

    let mut growth = Vec::new();
    for &j in &cfg.sqrt_j_values {
        let t = derivative_table(&sqrt_shift(j)?, j, &cfg.centers, 2, &spectral, true)?;
        let (k, witness) = minimal_k(&t, 1.0)?;
        growth.push((j, k, (j as f64).sqrt(), witness));
    }
    let grows = growth.iter().all(|&(_, k, s, _)| k >= 0.9 * s);
    let ratios: Vec<f64> = growth.iter().map(|&(_, k, s, _)| k / s).collect();
    let sqrt_fam = sqrt_shift(cfg.tail.1.max(cfg.exp_j_max))?;
    let sqrt_taylor = taylor_limit_coeffs(&sqrt_fam, 0.0, cfg.taylor_order, cfg.tail, &spectral, cfg.variation_tol)?;
    let sqrt_verdict = classify_analytic(std::slice::from_ref(&sqrt_taylor), cfg.decay_tol)[0];

    let spec_exp = derivative_table(&exp, cfg.exp_j_max, &cfg.centers, cfg.taylor_order, &spectral, false)?;
    let mut spectral_gap: f64 = 0.0;
    for (a, b) in table.values.iter().flatten().flatten().zip(spec_exp.values.iter().flatten().flatten()) {
        spectral_gap = spectral_gap.max((a - b).abs());
    }
    let check_j = cfg.spectral_check_j_max;
    let sq = sqrt_shift(check_j)?;
    let closed = derivative_table(&sq, check_j, &cfg.centers, 2, &spectral, true)?;
    let spec = derivative_table(&sq, check_j, &cfg.centers, 2, &spectral, false)?;
    for (a, b) in closed.values.iter().flatten().flatten().zip(spec.values.iter().flatten().flatten()) {
        spectral_gap = spectral_gap.max((a - b).abs());
    }
    let quarter = estimate_derivatives(|x| (x * x + 0.25).sqrt(), (-1.0, 1.0), &[0.0], 2, 32)?;
    let oracle_gap = (quarter[0][2] - 2.0).abs();

    Ok(vec![
        Check::new("realanalytic-exp-factorial-bound", bound.pass)
            .measure("worst_ratio", bound.worst_ratio)
            .measure("witness", bound.worst_witness)
            .threshold("k", cfg.k)
            .threshold("r", cfg.r),
        Check::new("realanalytic-exp-analytic", analytic)
            .measure("verdicts", &verdicts)
            .threshold("radius_min", cfg.r / 2.0),
        Check::new("realanalytic-sqrt-k-growth", grows)
            .measure("j", growth.iter().map(|g| g.0).collect::<Vec<_>>())
            .measure("minimal_k", growth.iter().map(|g| g.1).collect::<Vec<_>>())
            .measure("k_over_sqrt_j", ratios)
            .threshold("k_over_sqrt_j_min", 0.9),
        Check::new("realanalytic-sqrt-not-analytic", sqrt_verdict == AnalyticVerdict::NotAnalytic)
            .measure("verdict", sqrt_verdict)
            .measure("variation", &sqrt_taylor.variation),
        Check::new("realanalytic-spectral-vs-closed-form", spectral_gap <= 1e-6 && oracle_gap <= 1e-6)
            .measure("max_gap", spectral_gap)
            .measure("sqrt_quarter_second_derivative_gap", oracle_gap)
            .threshold("max_gap", 1e-6),
    ])
}

fn scv_suite(ctx: &Context) -> Result<Vec<Check>> {
    let cfg = &ctx.config.scv;
    let o = C2Point { z1: c(0.0, 0.0), z2: c(0.0, 0.0) };
    let radii = (cfg.radius, cfg.radius);
    let geo = |p: C2Point| 1.0 / (1.0 - p.z1 * p.z2);
    let half = C2Point { z1: c(0.5, 0.0), z2: c(0.5, 0.0) };
    let torus = torus_reproduce(geo, o, radii, cfg.torus_nodes, half)?;
    let torus_err = (torus - 4.0 / 3.0).norm();

    let seq = product_geometric(cfg.j_max, cfg.radius)?;
    let mut consistency: f64 = 0.0;
    for &r in &cfg.consistency_radii {
        consistency = consistency.max(coordinate_disc_consistency(&seq, r, &cfg.tail_pairs)?);
    }

    let poly = hartogs_check(|p| p.z1 * p.z1 + p.z2.powu(3), o, radii, cfg.torus_nodes, &cfg.probes)?;
    let geo_rep = hartogs_check(geo, o, radii, cfg.torus_nodes, &cfg.probes)?;
    let holo_ok = [&poly, &geo_rep].iter().all(|r| r.separately_holomorphic() && r.jointly_holomorphic());
    let re = hartogs_check(|p| c(p.z1.re, 0.0), o, radii, cfg.torus_nodes, &cfg.probes[..1])?;

    let mut checks = vec![
        Check::new("scv-torus-oracle", torus_err <= 1e-8)
            .measure("value", torus)
            .measure("error", torus_err)
            .threshold("error", 1e-8),
        Check::new("scv-coordinate-disc-consistency", consistency <= 1e-12)
            .measure("max_gap", consistency)
            .threshold("max_gap", 1e-12),
        Check::new("scv-hartogs-holomorphic", holo_ok && poly.implication_holds && geo_rep.implication_holds)
            .measure("polynomial", &poly)
            .measure("geometric", &geo_rep)
            .threshold("per_variable", poly.per_variable_tol)
            .threshold("joint", poly.joint_tol),
        Check::new("scv-hartogs-counterexample", re.per_variable.0 > 0.1)
            .measure("per_variable_z1", re.per_variable.0)
            .threshold("per_variable_min", 0.1),
    ];
    for (i, line) in cfg.lines.iter().enumerate() {
        let map = line_map(&seq, line, cfg.line_cells, &cfg.tail_pairs)?;
        let exc = map.count(Verdict::Exceptional);
        checks.push(
            Check::new(format!("scv-line-{i}"), exc == 0)
                .measure("exceptional_cells", exc)
                .measure("holomorphic_cells", map.count(Verdict::Regular))
                .threshold("exceptional_cells", 0),
        );
    }
    let k = constant2(c(1.0, -2.0), cfg.j_max, cfg.radius)?;
    let mut reports = Vec::new();
    for (i, spec) in cfg.discs.iter().enumerate() {
        let disc = spec.build(&seq.domain(), ctx.config.seed, i)?;
        let rep = disc_uniform_convergence(&seq, &disc, cfg.disc_tol, &cfg.tail_pairs)?;
        let kr = disc_uniform_convergence(&k, &disc, cfg.disc_tol, &cfg.tail_pairs)?;
        reports.push((rep, kr));
    }
    let discs_ok = reports.iter().all(|(a, b)| {
        a.pass && b.pass && b.deviation == 0.0 && a.limit_residual.is_some_and(|r| r < 1e-8)
    });
    checks.push(
        Check::new("scv-disc-family", discs_ok)
            .measure("product_geometric", reports.iter().map(|r| &r.0).collect::<Vec<_>>())
            .measure("constant", reports.iter().map(|r| &r.1).collect::<Vec<_>>())
            .threshold("tol", cfg.disc_tol)
            .note("checked family only"),
    );
    Ok(checks)
}

/// Holomorphy map of a restricted line sequence on a square of half-width
/// just inside the bidisc radius.
pub fn line_map(
    seq: &crate::scv::Seq2,
    line: &crate::scv::ComplexLine,
    cells: usize,
    tail_pairs: &[(usize, usize)],
) -> Result<HolomorphyMap> {
    let half = match seq.domain() {
        crate::scv::ProductDomain::Polydisc { radii, .. } => radii.0.min(radii.1),
        crate::scv::ProductDomain::Box { z1, .. } => 0.5 * z1.x.width().min(z1.y.width()),
    };
    let params = ClassifierParams::new(CellGrid::square(0.95 * half, cells)?, tail_pairs.to_vec());
    analyze_line(seq, line, &params)
}

/// Default tail pairs: the last two or three members.
pub fn default_pairs(j_max: usize) -> Vec<(usize, usize)> {
    match j_max {
        0 | 1 => vec![],
        2 => vec![(1, 2)],
        _ => vec![(j_max - 2, j_max), (j_max - 1, j_max)],
    }
}

pub fn classifier_params(map: &MapConfig, j_max: usize) -> Result<ClassifierParams> {
    let pairs = map.tail_pairs.clone().unwrap_or_else(|| default_pairs(j_max));
    if pairs.is_empty() {
        return Err(Error::Config("the classifier needs at least one tail pair (j_max >= 2)".into()));
    }
    let mut p = ClassifierParams::new(CellGrid::square(map.half_width, map.cells)?, pairs);
    p.accept_tol = map.accept_tol;
    p.reject_tol = map.reject_tol;
    p.contour_nodes = map.contour_nodes;
    Ok(p)
}

/// The certification precondition shared by the example-map checks.
pub fn certified_check(name: &str, ex: &ExampleSequence) -> Check {
    let uncertified: Vec<usize> = ex.entries.iter().filter(|e| !e.certified).map(|e| e.j).collect();
    Check::new(name, uncertified.is_empty())
        .measure("uncertified_j", &uncertified)
        .note("maps of the example are meaningful only for a certified sequence")
}

/// Axis-band containment and regular fraction of a map of the example.
pub fn example_map_checks(prefix: &str, map: &HolomorphyMap, min_fraction: Option<f64>) -> Vec<Check> {
    let off = map.exceptional_off_axes().len();
    let mut out = vec![Check::new(format!("{prefix}-axis-band-containment"), off == 0)
        .measure("exceptional_cells", map.count(Verdict::Exceptional))
        .measure("exceptional_off_axes", off)
        .threshold("exceptional_off_axes", 0)];
    if let Some(min) = min_fraction {
        let frac = map.regular_fraction();
        out.push(
            Check::new(format!("{prefix}-fraction"), frac >= min)
                .measure("fraction", frac)
                .measure("undetermined_cells", map.count(Verdict::Undetermined))
                .threshold("fraction_min", min),
        );
    }
    out
}

fn harmonic_suite(ctx: &Context) -> Result<Vec<Check>> {
    let cfg = &ctx.config.harmonic;
    let o = c(0.0, 0.0);
    let cos1: Vec<f64> = boundary_angles(cfg.poisson_nodes).map(f64::cos).collect();
    let px = poisson_extend(&cos1, o, 1.0, c(0.3, 0.0))?;
    let mv = mean_value_residual(|z| z.norm_sqr(), o, 0.5, 64)?;
    let mut checks = vec![
        Check::new("harmonic-poisson-oracle", (px - 0.3).abs() <= 1e-8)
            .measure("value", px)
            .threshold("error", 1e-8),
        Check::new("harmonic-mean-value-oracle", (mv - 0.25).abs() <= 1e-12)
            .measure("value", mv)
            .threshold("error", 1e-12),
    ];
    let pf = poisson_family(cfg.poisson_j_max, 1.0, cfg.poisson_nodes)?;
    let pmap = classify_harmonicity(&pf, &ClassifierParams::new(CellGrid::square(0.6, 12)?, default_pairs(cfg.poisson_j_max)))?;
    checks.push(
        Check::new("harmonic-poisson-family", pmap.count(Verdict::Exceptional) == 0)
            .measure("exceptional_cells", pmap.count(Verdict::Exceptional))
            .measure("harmonic_cells", pmap.count(Verdict::Regular)),
    );
    let ex = ctx.example()?;
    let map = classify_harmonicity(&ex.to_sequence()?, &classifier_params(&cfg.map, ex.j_max)?)?;
    let mut contained = example_map_checks("harmonic-example", &map, None);
    contained.push(certified_check("harmonic-example-certified", ex));
    checks.extend(contained);
    Ok(checks)
}

/// A built-in family for `analyze`.
pub fn builtin_family(family: super::config::Family, j_max: usize) -> Result<FunctionSequence> {
    use super::config::Family;
    match family {
        Family::Constant => constant(c(1.0, 0.0), j_max),
        Family::Koebe => koebe_partial_sums(j_max, 0.8),
        Family::Geometric => geometric_partial_sums(j_max),
        Family::Example => Err(Error::invalid("the example family is loaded, not built in")),
    }
}
