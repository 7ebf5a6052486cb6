//! The two-level approximation example: polynomials `f_j` close to `1` on a
//! cross `S_j` and close to `0` on four squares `T_j`, converging pointwise to
//! the indicator of the axes.
//!
//! Polynomials come from discrete least squares in an Arnoldi-orthogonalized
//! basis, driven toward the minimax solution by Lawson reweighting, with the
//! degree escalated until a sampled sup-error certificate meets the target.

pub mod arnoldi;
pub mod minimax;
pub mod store;

use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{build_square_domain, sample_region, CPoint, CompactRegion, Rect, Segment};
use crate::sequence::FunctionSequence;

pub use arnoldi::ArnoldiBasis;

fn check_index(j: usize) -> Result<f64> {
    if j < 1 {
        return Err(Error::invalid("j must be at least 1"));
    }
    Ok(1.0 / (j as f64 + 2.0))
}

/// The cross `{re = 0, |im| <= 1 - 1/(j+2)} ∪ {im = 0, |re| <= 1 - 1/(j+2)}`.
pub fn build_s(j: usize) -> Result<CompactRegion> {
    let gap = check_index(j)?;
    let half = 1.0 - gap;
    CompactRegion::new(
        Vec::new(),
        vec![
            Segment::vertical(0.0, -half, half)?,
            Segment::horizontal(0.0, -half, half)?,
        ],
    )
}

/// Four closed squares `1/(j+2) <= |re|, |im| <= 1 - 1/(j+2)`, one per quadrant.
pub fn build_t(j: usize) -> Result<CompactRegion> {
    let gap = check_index(j)?;
    let (lo, hi) = (gap, 1.0 - gap);
    let rects = [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)]
        .iter()
        .map(|&(sx, sy): &(f64, f64)| {
            let (x0, x1) = if sx > 0.0 { (lo, hi) } else { (-hi, -lo) };
            let (y0, y1) = if sy > 0.0 { (lo, hi) } else { (-hi, -lo) };
            Rect::new(x0, x1, y0, y1)
        })
        .collect::<Result<Vec<_>>>()?;
    CompactRegion::new(rects, Vec::new())
}

/// Pointwise limit of the example: `1` on the axes, `0` elsewhere in the open
/// square `|re|, |im| < 1`.
pub fn limit_example(z: CPoint) -> Result<Complex64> {
    if !(z.re.abs() < 1.0 && z.im.abs() < 1.0) {
        return Err(Error::OutOfDomain(z));
    }
    let on_axes = z.re == 0.0 || z.im == 0.0;
    Ok(Complex64::new(if on_axes { 1.0 } else { 0.0 }, 0.0))
}

/// Sampled sup-error record on one named region. Heuristic: the supremum is
/// taken over a lattice, not enclosed rigorously.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub region_id: String,
    pub region: CompactRegion,
    pub target: Complex64,
    pub validation_spacing: f64,
    pub measured_sup_error: f64,
}

/// A polynomial `p(z) = Σ c_k q_k(z^power)` in an Arnoldi basis, together
/// with its sup-error certificates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertifiedPolynomial {
    /// The fit runs in `w = z^power`; `power = 4` under quarter-turn symmetry.
    pub power: u32,
    pub fit_nodes: Vec<CPoint>,
    pub basis: ArnoldiBasis,
    pub coefficients: Vec<Complex64>,
    pub certificates: Vec<Certificate>,
}

impl CertifiedPolynomial {
    /// A constant polynomial with no certificates.
    pub fn constant(c: Complex64) -> Self {
        let (basis, _) = ArnoldiBasis::build(&[Complex64::new(0.0, 0.0)], 0).expect("degree 0");
        CertifiedPolynomial {
            power: 1,
            fit_nodes: Vec::new(),
            basis,
            coefficients: vec![c],
            certificates: Vec::new(),
        }
    }

    /// Degree in `z`.
    pub fn degree(&self) -> usize {
        self.power as usize * (self.coefficients.len() - 1)
    }

    pub fn eval(&self, z: CPoint) -> Complex64 {
        self.basis.eval(&self.coefficients, z.powu(self.power))
    }

    /// Max of `|p - target|` over `sample_region(region, spacing)`.
    pub fn sup_error(&self, region: &CompactRegion, target: Complex64, spacing: f64) -> Result<f64> {
        Ok(sample_region(region, spacing)?
            .iter()
            .map(|&z| (self.eval(z) - target).norm())
            .fold(0.0, f64::max))
    }

    /// Recomputes a certificate on its recorded sampling.
    pub fn reverify(&self, cert: &Certificate) -> Result<f64> {
        self.sup_error(&cert.region, cert.target, cert.validation_spacing)
    }

    pub fn certificate(&self, region_id: &str) -> Option<&Certificate> {
        self.certificates.iter().find(|c| c.region_id == region_id)
    }

    /// Largest recorded sup error.
    pub fn worst_error(&self) -> f64 {
        self.certificates
            .iter()
            .map(|c| c.measured_sup_error)
            .fold(0.0, f64::max)
    }
}

/// Best attempt returned when the degree cap is reached.
#[derive(Debug, Clone)]
pub struct ApproximationFailure {
    pub eps: f64,
    pub degree_cap: usize,
    pub best: CertifiedPolynomial,
}

impl fmt::Display for ApproximationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "degree cap {} reached without sup error < {}; best degree {} with errors",
            self.degree_cap,
            self.eps,
            self.best.degree()
        )?;
        for c in &self.best.certificates {
            write!(f, " {}={:.6}", c.region_id, c.measured_sup_error)?;
        }
        Ok(())
    }
}

/// How coefficients are chosen at a fixed degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitMethod {
    /// Least squares with Lawson reweighting toward the minimax fit.
    Lawson,
    /// Exact discrete minimax on the fit nodes (second-order cone program).
    Minimax,
}

/// Tuning knobs of [`fit_two_level_with`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FitOptions {
    /// Fit pitch; defaults to one eighth of the distance between the sets.
    pub fit_spacing: Option<f64>,
    /// Degree increment of the escalation schedule.
    pub degree_step: usize,
    pub method: FitMethod,
    /// Lawson reweighting sweeps per degree. Zero gives plain least squares.
    pub lawson_iterations: usize,
    /// Relative change below which certificate refinement stops.
    pub refine_tolerance: f64,
    pub max_refinements: usize,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            fit_spacing: None,
            degree_step: 8,
            method: FitMethod::Minimax,
            lawson_iterations: 30,
            refine_tolerance: 0.05,
            max_refinements: 3,
        }
    }
}

/// Degrees tried in order: `0, step, 2 step, …`, ending at `cap`.
pub fn degree_schedule(cap: usize, step: usize) -> Vec<usize> {
    let step = step.max(1);
    let mut out: Vec<usize> = (0..=cap).step_by(step).collect();
    if out.last() != Some(&cap) {
        out.push(cap);
    }
    out
}

/// Fits `p ≈ 1` on `s` and `p ≈ 0` on `t` with sup errors below `eps`.
pub fn fit_two_level(
    s: &CompactRegion,
    t: &CompactRegion,
    eps: f64,
    degree_cap: usize,
) -> Result<CertifiedPolynomial> {
    fit_two_level_with(s, t, eps, degree_cap, &FitOptions::default())
}

struct Target<'a> {
    id: &'static str,
    region: &'a CompactRegion,
    value: Complex64,
}

pub fn fit_two_level_with(
    s: &CompactRegion,
    t: &CompactRegion,
    eps: f64,
    degree_cap: usize,
    opts: &FitOptions,
) -> Result<CertifiedPolynomial> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::invalid(format!("eps {eps} must be > 0")));
    }
    let gap = s.distance_to_region(t);
    if !(gap > 0.0) {
        return Err(Error::invalid("S and T must be disjoint"));
    }
    let fit_spacing = opts.fit_spacing.unwrap_or(gap / 8.0);
    if !(fit_spacing > 0.0) {
        return Err(Error::invalid("fit spacing must be > 0"));
    }
    let targets = [
        Target { id: "S", region: s, value: Complex64::new(1.0, 0.0) },
        Target { id: "T", region: t, value: Complex64::new(0.0, 0.0) },
    ];

    // Under quarter-turn symmetry the best approximant is a polynomial in z^4,
    // so fitting on one fundamental sector loses nothing.
    let symmetric = s.is_quarter_turn_invariant(1e-12) && t.is_quarter_turn_invariant(1e-12);
    let power: u32 = if symmetric { 4 } else { 1 };
    let in_sector = |z: &CPoint| !symmetric || (z.re > 0.0 && z.im >= 0.0) || *z == Complex64::new(0.0, 0.0);

    let mut fit_nodes = Vec::new();
    let mut rhs = Vec::new();
    for tg in &targets {
        for z in sample_region(tg.region, fit_spacing)?.into_iter().filter(in_sector) {
            fit_nodes.push(z);
            rhs.push(tg.value);
        }
    }
    let w_nodes: Vec<Complex64> = fit_nodes.iter().map(|z| z.powu(power)).collect();
    // With conjugation symmetry as well, the basis built on the conjugation
    // closed node set has real recurrence coefficients, real coefficients
    // are optimal, and conjugate rows carry equal residuals. The minimax
    // solve then needs only the rows with Im w >= 0.
    let mirrored = s.is_conjugation_invariant(1e-12) && t.is_conjugation_invariant(1e-12);
    let half_rows: Vec<usize> = (0..w_nodes.len())
        .filter(|&i| !mirrored || w_nodes[i].im >= -1e-12 * w_nodes[i].norm())
        .collect();
    let max_n = (degree_cap / power as usize).min(w_nodes.len() - 1);
    let (basis_full, q_full) = ArnoldiBasis::build(&w_nodes, max_n)?;
    let b = DVector::from_vec(rhs);

    let validation_spacing = fit_spacing / 2.0;
    let validation: Vec<Vec<CPoint>> = targets
        .iter()
        .map(|tg| sample_region(tg.region, validation_spacing))
        .collect::<Result<_>>()?;

    let mut weights = vec![1.0 / b.len() as f64; b.len()];
    let mut best: Option<(f64, CertifiedPolynomial)> = None;
    let mut tried = Vec::new();
    for d in degree_schedule(degree_cap, opts.degree_step) {
        let n = (d / power as usize).min(max_n);
        if tried.contains(&n) {
            continue;
        }
        tried.push(n);
        let q = q_full.columns(0, n + 1).into_owned();
        let coefficients = match opts.method {
            FitMethod::Lawson => lawson(&q, &b, &mut weights, opts.lawson_iterations)?,
            FitMethod::Minimax => {
                let qh = q.select_rows(half_rows.iter());
                let bh = b.select_rows(half_rows.iter());
                minimax::minimax(&qh, &bh, mirrored)?
            }
        };
        let mut poly = CertifiedPolynomial {
            power,
            fit_nodes: fit_nodes.clone(),
            basis: basis_full.truncated(n),
            coefficients,
            certificates: Vec::new(),
        };
        let errors: Vec<f64> = targets
            .iter()
            .zip(&validation)
            .map(|(tg, pts)| pts.iter().map(|&z| (poly.eval(z) - tg.value).norm()).fold(0.0, f64::max))
            .collect();
        let worst = errors.iter().cloned().fold(0.0, f64::max);
        poly.certificates = targets
            .iter()
            .zip(&errors)
            .map(|(tg, &e)| Certificate {
                region_id: tg.id.to_string(),
                region: tg.region.clone(),
                target: tg.value,
                validation_spacing,
                measured_sup_error: e,
            })
            .collect();
        if worst < eps {
            refine_certificates(&mut poly, opts)?;
            if poly.worst_error() < eps {
                return Ok(poly);
            }
        }
        if best.as_ref().is_none_or(|(e, _)| worst < *e) {
            best = Some((worst, poly));
        }
    }
    let (_, best) = best.expect("schedule is nonempty");
    Err(Error::Approximation {
        j: None,
        failure: Box::new(ApproximationFailure { eps, degree_cap, best }),
    })
}

/// Weighted least squares with Lawson reweighting `w_i <- w_i |r_i|`.
/// Returns the iterate with the smallest max residual on the nodes.
fn lawson(
    q: &DMatrix<Complex64>,
    b: &DVector<Complex64>,
    weights: &mut [f64],
    iterations: usize,
) -> Result<Vec<Complex64>> {
    let mut best: Option<(f64, DVector<Complex64>)> = None;
    for _ in 0..=iterations {
        let mut a = q.clone();
        let mut rhs = b.clone();
        for (i, &w) in weights.iter().enumerate() {
            let s = Complex64::new(w.sqrt(), 0.0);
            a.row_mut(i).scale_mut(w.sqrt());
            rhs[i] *= s;
        }
        let c = arnoldi::least_squares(a, &rhs)?;
        let r = q * &c - b;
        let err = r.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if best.as_ref().is_none_or(|(e, _)| err < *e) {
            best = Some((err, c));
        }
        let mut total = 0.0;
        for (w, ri) in weights.iter_mut().zip(r.iter()) {
            *w *= ri.norm();
            total += *w;
        }
        if !(total > 0.0) {
            break;
        }
        weights.iter_mut().for_each(|w| *w /= total);
    }
    Ok(best.expect("at least one sweep").1.iter().cloned().collect())
}

/// Halves each certificate's pitch until the measured sup error changes by
/// less than the refine tolerance.
fn refine_certificates(poly: &mut CertifiedPolynomial, opts: &FitOptions) -> Result<()> {
    let mut certs = std::mem::take(&mut poly.certificates);
    for cert in &mut certs {
        for _ in 0..opts.max_refinements {
            let spacing = cert.validation_spacing / 2.0;
            let err = poly.sup_error(&cert.region, cert.target, spacing)?;
            let change = (err - cert.measured_sup_error).abs();
            cert.validation_spacing = spacing;
            cert.measured_sup_error = err;
            if change < opts.refine_tolerance * err {
                break;
            }
        }
    }
    poly.certificates = certs;
    Ok(())
}

/// One member of the constructed example sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExampleEntry {
    pub j: usize,
    /// True when every certificate is below `1/j`.
    pub certified: bool,
    pub polynomial: CertifiedPolynomial,
}

/// The sequence `f_1, …, f_{j_max}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExampleSequence {
    pub j_max: usize,
    pub degree_cap: usize,
    pub entries: Vec<ExampleEntry>,
}

impl ExampleSequence {
    pub fn all_certified(&self) -> bool {
        self.entries.iter().all(|e| e.certified)
    }

    pub fn entry(&self, j: usize) -> Option<&ExampleEntry> {
        self.entries.iter().find(|e| e.j == j)
    }

    /// The entries as an evaluable sequence on the square.
    pub fn to_sequence(&self) -> Result<FunctionSequence> {
        let polys: Vec<CertifiedPolynomial> =
            self.entries.iter().map(|e| e.polynomial.clone()).collect();
        Ok(FunctionSequence::new(
            self.j_max,
            "two-level polynomial example",
            move |j, z| polys[j - 1].eval(z),
        )?
        .with_domain(build_square_domain()))
    }
}

fn build_entry(j: usize, degree_cap: usize, opts: &FitOptions) -> Result<ExampleEntry> {
    let (s, t) = (build_s(j)?, build_t(j)?);
    match fit_two_level_with(&s, &t, 1.0 / j as f64, degree_cap, opts) {
        Ok(polynomial) => Ok(ExampleEntry { j, certified: true, polynomial }),
        Err(Error::Approximation { failure, .. }) => Ok(ExampleEntry {
            j,
            certified: false,
            polynomial: failure.best,
        }),
        Err(e) => Err(e),
    }
}

/// Builds every `f_j`, keeping the best uncertified attempt where the degree
/// cap is too small. Entries are built in parallel.
pub fn build_example_sequence_best_effort(
    j_max: usize,
    degree_cap: usize,
    opts: &FitOptions,
) -> Result<ExampleSequence> {
    if j_max < 1 {
        return Err(Error::invalid("j_max must be at least 1"));
    }
    let entries = (1..=j_max)
        .into_par_iter()
        .map(|j| build_entry(j, degree_cap, opts))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExampleSequence { j_max, degree_cap, entries })
}

/// Builds every `f_j` and fails with the first uncertified index.
pub fn build_example_sequence(j_max: usize, degree_cap: usize) -> Result<ExampleSequence> {
    let seq = build_example_sequence_best_effort(j_max, degree_cap, &FitOptions::default())?;
    if let Some(bad) = seq.entries.iter().find(|e| !e.certified) {
        return Err(Error::Approximation {
            j: Some(bad.j),
            failure: Box::new(ApproximationFailure {
                eps: 1.0 / bad.j as f64,
                degree_cap,
                best: bad.polynomial.clone(),
            }),
        });
    }
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::PlanarSet;

    fn c(re: f64, im: f64) -> CPoint {
        Complex64::new(re, im)
    }

    #[test]
    fn cross_half_length() {
        let s = build_s(1).unwrap();
        for seg in s.segments() {
            assert!((seg.extent.hi() - 2.0 / 3.0).abs() < 1e-15);
        }
        let s2 = build_s(2).unwrap();
        assert!(s2.contains(c(0.74, 0.0)));
        assert!(!s2.contains(c(0.76, 0.0)));
        assert!(!s.contains(c(0.5, 0.5)));
        assert!(build_s(0).is_err());
        assert!(build_t(0).is_err());
    }

    #[test]
    fn squares_and_disjointness() {
        let t = build_t(1).unwrap();
        let q1 = t.rects()[0];
        for v in [q1.x.lo(), q1.y.lo()] {
            assert!((v - 1.0 / 3.0).abs() < 1e-15);
        }
        for v in [q1.x.hi(), q1.y.hi()] {
            assert!((v - 2.0 / 3.0).abs() < 1e-15);
        }
        assert!(build_t(3).unwrap().contains(c(0.5, 0.5)));
        for j in 1..=8 {
            let (s, t) = (build_s(j).unwrap(), build_t(j).unwrap());
            assert!(s.distance_to_region(&t) >= 1.0 / (j as f64 + 2.0) - 1e-15);
            let h = 1.0 / (16.0 * (j as f64 + 2.0));
            assert!(sample_region(&s, h).unwrap().iter().all(|&z| !t.contains(z)));
            assert!(sample_region(&t, h).unwrap().iter().all(|&z| !s.contains(z)));
            assert!(sample_region(&s, 0.01).unwrap().iter().all(|z| z.re == 0.0 || z.im == 0.0));
        }
    }

    #[test]
    fn limit_values() {
        assert_eq!(limit_example(c(0.5, 0.5)).unwrap().re, 0.0);
        assert_eq!(limit_example(c(0.3, 0.0)).unwrap().re, 1.0);
        assert_eq!(limit_example(c(0.0, 0.0)).unwrap().re, 1.0);
        assert!(matches!(limit_example(c(1.0, 0.0)), Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn schedule_shape() {
        assert_eq!(degree_schedule(0, 8), vec![0]);
        assert_eq!(degree_schedule(4, 8), vec![0, 4]);
        assert_eq!(degree_schedule(20, 8), vec![0, 8, 16, 20]);
    }

    #[test]
    fn degenerate_tolerance_is_met_by_a_constant() {
        let (s, t) = (build_s(1).unwrap(), build_t(1).unwrap());
        let p = fit_two_level(&s, &t, 1.0, 0).unwrap();
        assert_eq!(p.degree(), 0);
        assert!((p.eval(c(0.1, 0.2)) - 0.5).norm() < 1e-6);
        for cert in &p.certificates {
            assert!(cert.measured_sup_error < 1.0);
            assert!((p.reverify(cert).unwrap() - cert.measured_sup_error).abs() <= 1e-12);
        }
    }

    #[test]
    fn overlapping_sets_are_rejected() {
        let s = build_s(1).unwrap();
        assert!(matches!(fit_two_level(&s, &s, 0.5, 8), Err(Error::InvalidArgument(_))));
        assert!(fit_two_level(&s, &build_t(1).unwrap(), 0.0, 8).is_err());
    }

    #[test]
    fn cap_too_small_reports_best_attempt() {
        let (s, t) = (build_s(2).unwrap(), build_t(2).unwrap());
        match fit_two_level(&s, &t, 0.2, 4) {
            Err(Error::Approximation { failure, .. }) => {
                assert!(failure.best.degree() <= 4);
                assert!(failure.best.worst_error() >= 0.2);
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }
}
