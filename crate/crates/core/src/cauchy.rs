//! Contour and area integral machinery: Cauchy reproduction, the Lusin split
//! of a contour with its uniform-convergence bound, and the Cauchy–Pompeiu
//! area representation with a smooth radial cutoff.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{circle_contour, CPoint, Disc, PlanarSet, QuadratureContour};
use crate::sequence::FunctionSequence;

/// `(1/2πi) Σ w_i f_i / (ζ_i - w)` for `w` inside the contour at least one
/// node spacing away from it.
pub fn cauchy_reproduce(values: &[Complex64], contour: &QuadratureContour, w: CPoint) -> Result<Complex64> {
    if values.len() != contour.len() {
        return Err(Error::invalid(format!(
            "{} values for {} contour nodes",
            values.len(),
            contour.len()
        )));
    }
    if !contour.encloses(w) || contour.distance_to_curve(w) < contour.node_spacing() {
        return Err(Error::invalid(format!(
            "{w} is not inside the contour by at least one node spacing"
        )));
    }
    let mut it = values.iter();
    Ok(contour.integrate(|z| it.next().expect("lengths match") / (z - w)))
}

/// Partition of contour nodes by tail convergence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LusinSplit {
    pub eps_star: f64,
    pub tail_start: usize,
    pub good_nodes: Vec<usize>,
    pub bad_nodes: Vec<usize>,
    /// Arc length carried by the good nodes.
    pub measure_good: f64,
    pub measure_bad: f64,
    pub total_length: f64,
    /// Per node, `max |f_l - f_m|` over the tested pairs.
    pub node_deviation: Vec<f64>,
}

impl LusinSplit {
    /// True when no node converges within `eps_star`; the bound is then
    /// vacuous on the good set.
    pub fn is_degenerate(&self) -> bool {
        self.good_nodes.is_empty()
    }
}

/// Node `i` is good iff `max |f_l(ζ_i) - f_m(ζ_i)| <= eps_star` over the pairs.
pub fn lusin_split(
    seq: &FunctionSequence,
    contour: &QuadratureContour,
    eps_star: f64,
    tail_start: usize,
    pairs: &[(usize, usize)],
) -> Result<LusinSplit> {
    seq.check_pairs(pairs)?;
    if pairs.is_empty() {
        return Err(Error::invalid("need at least one pair"));
    }
    if pairs.iter().any(|&(l, m)| l <= tail_start || m <= tail_start) {
        return Err(Error::invalid(format!("pair indices must exceed J = {tail_start}")));
    }
    let mut split = LusinSplit {
        eps_star,
        tail_start,
        good_nodes: Vec::new(),
        bad_nodes: Vec::new(),
        measure_good: 0.0,
        measure_bad: 0.0,
        total_length: contour.arc_length(),
        node_deviation: Vec::with_capacity(contour.len()),
    };
    for (i, (&z, w)) in contour.nodes().iter().zip(contour.weights()).enumerate() {
        let mut dev: f64 = 0.0;
        for &(l, m) in pairs {
            dev = dev.max((seq.eval(l, z)? - seq.eval(m, z)?).norm());
        }
        split.node_deviation.push(dev);
        if dev <= eps_star {
            split.good_nodes.push(i);
            split.measure_good += w.norm();
        } else {
            split.bad_nodes.push(i);
            split.measure_bad += w.norm();
        }
    }
    Ok(split)
}

/// `eps_star |E| / (2π δ) + measure_bad · 2k / (2π δ)`.
pub fn remark_bound(eps_star: f64, measure_good: f64, measure_bad: f64, k: f64, delta: f64) -> Result<f64> {
    if !(delta > 0.0) {
        return Err(Error::invalid(format!("delta {delta} must be > 0")));
    }
    if k < 0.0 {
        return Err(Error::invalid("k must be >= 0"));
    }
    Ok((eps_star * measure_good + measure_bad * 2.0 * k) / (2.0 * PI * delta))
}

/// One bound-versus-measurement comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RemarkBoundReport {
    pub pair: (usize, usize),
    pub measured_max: f64,
    pub bound: f64,
    pub delta: f64,
    pub eps_star: f64,
    pub measure_bad: f64,
    pub k: f64,
}

impl RemarkBoundReport {
    pub fn holds(&self) -> bool {
        self.measured_max <= self.bound
    }
}

/// Settings of [`verify_remark_bound`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RemarkSetup {
    pub center: CPoint,
    pub radius: f64,
    pub contour_nodes: usize,
    /// `K` is the concentric closed disc of radius `radius - delta`.
    pub delta: f64,
    pub eps_star: f64,
    pub tail_start: usize,
    pub pairs: Vec<(usize, usize)>,
    /// Pitch of the `K` samples.
    pub spacing: f64,
}

/// Splits the circle, takes `k` as the largest `|f_j|` (all `j`) on the bad
/// nodes, and compares each pair's measured `max_K |f_l - f_m|` with the bound.
pub fn verify_remark_bound(seq: &FunctionSequence, setup: &RemarkSetup) -> Result<Vec<RemarkBoundReport>> {
    if !(setup.delta > 0.0 && setup.delta < setup.radius) {
        return Err(Error::invalid("need 0 < delta < radius"));
    }
    let contour = circle_contour(setup.center, setup.radius, setup.contour_nodes)?;
    let k_disc = Disc::new(setup.center, setup.radius - setup.delta)?;
    let k_samples = k_disc.sample(setup.spacing)?;
    let mut out = Vec::with_capacity(setup.pairs.len());
    for &pair in &setup.pairs {
        let split = lusin_split(seq, &contour, setup.eps_star, setup.tail_start, &[pair])?;
        let mut k: f64 = 0.0;
        for &i in &split.bad_nodes {
            let z = contour.nodes()[i];
            for j in 1..=seq.j_max() {
                k = k.max(seq.eval(j, z)?.norm());
            }
        }
        let bound = remark_bound(setup.eps_star, split.measure_good, split.measure_bad, k, setup.delta)?;
        let mut measured: f64 = 0.0;
        for &z in &k_samples {
            measured = measured.max((seq.eval(pair.0, z)? - seq.eval(pair.1, z)?).norm());
        }
        out.push(RemarkBoundReport {
            pair,
            measured_max: measured,
            bound,
            delta: setup.delta,
            eps_star: setup.eps_star,
            measure_bad: split.measure_bad,
            k,
        });
    }
    Ok(out)
}

/// Radial cutoff: `φ = 1` for `|ζ - c| <= inner`, `φ = 0` for `|ζ - c| >= outer`,
/// with a quintic smoothstep ramp (C² at both seams) in between.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CutoffFunction {
    pub center: CPoint,
    pub inner: f64,
    pub outer: f64,
}

impl CutoffFunction {
    pub fn new(center: CPoint, inner: f64, outer: f64) -> Result<Self> {
        if !(inner > 0.0 && outer > inner && outer.is_finite()) {
            return Err(Error::invalid("need 0 < inner < outer"));
        }
        Ok(CutoffFunction { center, inner, outer })
    }

    fn ramp(&self, rho: f64) -> f64 {
        ((rho - self.inner) / (self.outer - self.inner)).clamp(0.0, 1.0)
    }

    pub fn phi(&self, z: CPoint) -> f64 {
        let t = self.ramp((z - self.center).norm());
        1.0 - t * t * t * (10.0 - 15.0 * t + 6.0 * t * t)
    }

    /// `∂φ/∂ρ`, zero outside the open ramp.
    fn phi_prime(&self, rho: f64) -> f64 {
        if rho <= self.inner || rho >= self.outer {
            return 0.0;
        }
        let t = self.ramp(rho);
        -30.0 * t * t * (1.0 - t) * (1.0 - t) / (self.outer - self.inner)
    }

    /// `∂̄φ = (1/2)(∂_x + i ∂_y) φ = φ'(ρ) (ζ - c) / (2ρ)`.
    pub fn dbar(&self, z: CPoint) -> Complex64 {
        let d = z - self.center;
        let rho = d.norm();
        if rho == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        d * (self.phi_prime(rho) / (2.0 * rho))
    }

    /// Bound on `|∂̄φ|`: `max |s'| / (2 · ramp width)` with `max |s'| = 15/8`.
    pub fn dbar_bound(&self) -> f64 {
        15.0 / 16.0 / (self.outer - self.inner)
    }

    /// Midpoint cells of an `n × n` grid on the support box whose centers lie
    /// in the open ramp, in row-major order, as `(ζ, ∂̄φ(ζ))`.
    fn ramp_cells(&self, n: usize) -> Result<(Vec<(CPoint, Complex64)>, f64)> {
        if n < 2 {
            return Err(Error::invalid("quadrature needs n >= 2"));
        }
        let h = 2.0 * self.outer / n as f64;
        let x0 = self.center.re - self.outer;
        let y0 = self.center.im - self.outer;
        let mut cells = Vec::new();
        for iy in 0..n {
            for ix in 0..n {
                let z = Complex64::new(x0 + (ix as f64 + 0.5) * h, y0 + (iy as f64 + 0.5) * h);
                let rho = (z - self.center).norm();
                if rho > self.inner && rho < self.outer {
                    cells.push((z, self.dbar(z)));
                }
            }
        }
        Ok((cells, h * h))
    }
}

/// `f(z) = (1/π) ∬ f(ζ) ∂̄φ(ζ) / (z - ζ) dA(ζ)` by the midpoint rule on an
/// `n × n` grid over the support box.
pub fn pompeiu_reproduce(
    f: impl Fn(CPoint) -> Complex64,
    cutoff: &CutoffFunction,
    z: CPoint,
    n: usize,
) -> Result<Complex64> {
    if (z - cutoff.center).norm() >= cutoff.inner {
        return Err(Error::invalid(format!("{z} is not in the region where φ = 1")));
    }
    let (cells, area) = cutoff.ramp_cells(n)?;
    let sum: Complex64 = cells.iter().map(|&(zeta, d)| f(zeta) * d / (z - zeta)).sum();
    Ok(sum * area / PI)
}

/// `B = (1/π) ∬ g(ζ) |∂̄φ(ζ)| / dist(K, ζ) dA(ζ)`, which dominates
/// `sup_K |f|` for every holomorphic `f` with `|f| <= g` on the support.
pub fn dominated_bound(
    g: impl Fn(CPoint) -> f64,
    cutoff: &CutoffFunction,
    k: &impl PlanarSet,
    n: usize,
) -> Result<f64> {
    if k.farthest_from(cutoff.center) >= cutoff.inner {
        return Err(Error::invalid("K must lie strictly inside the region where φ = 1"));
    }
    let (cells, area) = cutoff.ramp_cells(n)?;
    let sum: f64 = cells
        .iter()
        .map(|&(zeta, d)| g(zeta) * d.norm() / k.distance(zeta))
        .sum();
    Ok(sum * area / PI)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rectangle_contour;
    use crate::geometry::Rect;
    use crate::sequence::constant;

    fn c(re: f64, im: f64) -> CPoint {
        Complex64::new(re, im)
    }

    fn reproduce(f: impl Fn(CPoint) -> Complex64, k: &QuadratureContour, w: CPoint) -> Complex64 {
        let v: Vec<_> = k.nodes().iter().map(|&z| f(z)).collect();
        cauchy_reproduce(&v, k, w).unwrap()
    }

    #[test]
    fn oracle_cases() {
        let k = circle_contour(c(0.0, 0.0), 1.0, 256).unwrap();
        assert!(reproduce(|z| z * z, &k, c(0.0, 0.0)).norm() < 1e-12);
        let w = c(0.3, 0.2);
        assert!((reproduce(|z| z * z, &k, w) - w * w).norm() < 1e-10);
        assert!((reproduce(|z| 1.0 / (z - 2.0), &k, c(0.0, 0.0)) + 0.5).norm() < 1e-10);
    }

    #[test]
    fn points_near_or_outside_the_contour_are_rejected() {
        let k = circle_contour(c(0.0, 0.0), 1.0, 64).unwrap();
        let v = vec![Complex64::new(1.0, 0.0); 64];
        assert!(cauchy_reproduce(&v, &k, c(1.5, 0.0)).is_err());
        assert!(cauchy_reproduce(&v, &k, c(0.999, 0.0)).is_err());
        assert!(cauchy_reproduce(&v[..10], &k, c(0.0, 0.0)).is_err());
    }

    #[test]
    fn rectangle_contour_reproduces_to_its_tolerance() {
        let k = rectangle_contour(Rect::new(-1.0, 1.0, -1.0, 1.0).unwrap(), 4000).unwrap();
        let w = c(0.2, -0.1);
        assert!((reproduce(|z| z * z + 1.0, &k, w) - (w * w + 1.0)).norm() < 1e-5);
    }

    #[test]
    fn remark_bound_arithmetic() {
        assert_eq!(remark_bound(0.0, 1.0, 0.0, 3.0, 0.5).unwrap(), 0.0);
        let b = remark_bound(0.01, 2.0 * PI, 0.0, 5.0, 0.5).unwrap();
        assert!((b - 0.02).abs() < 1e-15);
        assert!(remark_bound(0.1, 1.0, 1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn constant_sequence_split_is_all_good() {
        let seq = constant(c(2.0, 1.0), 6).unwrap();
        let k = circle_contour(c(0.0, 0.0), 0.5, 64).unwrap();
        let s = lusin_split(&seq, &k, 1e-9, 2, &[(3, 6), (4, 5)]).unwrap();
        assert_eq!(s.good_nodes.len(), 64);
        assert_eq!(s.measure_bad, 0.0);
        assert!((s.measure_good + s.measure_bad - s.total_length).abs() < 1e-12);
        assert!(lusin_split(&seq, &k, 1e-9, 4, &[(3, 6)]).is_err());
    }

    #[test]
    fn cutoff_profile() {
        let phi = CutoffFunction::new(c(0.0, 0.0), 0.6, 0.8).unwrap();
        assert_eq!(phi.phi(c(0.3, 0.0)), 1.0);
        assert_eq!(phi.phi(c(0.0, 0.9)), 0.0);
        assert_eq!(phi.dbar(c(0.5, 0.0)).norm(), 0.0);
        assert_eq!(phi.dbar(c(0.85, 0.0)).norm(), 0.0);
        let peak = phi.dbar(c(0.7, 0.0)).norm();
        assert!((peak - phi.dbar_bound()).abs() < 1e-12);
        assert!(CutoffFunction::new(c(0.0, 0.0), 0.8, 0.6).is_err());
    }

    #[test]
    fn dbar_matches_finite_differences() {
        let phi = CutoffFunction::new(c(0.1, -0.2), 0.5, 0.9).unwrap();
        let z = c(0.6, 0.3);
        let h = 1e-6;
        let dx = (phi.phi(z + h) - phi.phi(z - h)) / (2.0 * h);
        let dy = (phi.phi(z + c(0.0, h)) - phi.phi(z - c(0.0, h))) / (2.0 * h);
        let fd = Complex64::new(dx, dy) * 0.5;
        assert!((fd - phi.dbar(z)).norm() < 1e-8);
    }

    #[test]
    fn pompeiu_reproduces_low_degree_functions() {
        let phi = CutoffFunction::new(c(0.0, 0.0), 0.6, 0.8).unwrap();
        let one = pompeiu_reproduce(|_| c(1.0, 0.0), &phi, c(0.0, 0.0), 400).unwrap();
        assert!((one - 1.0).norm() < 1e-3);
        let w = c(0.2, 0.1);
        assert!((pompeiu_reproduce(|z| z, &phi, w, 400).unwrap() - w).norm() < 1e-3);
        assert!(pompeiu_reproduce(|z| z * z, &phi, c(0.0, 0.0), 400).unwrap().norm() < 1e-3);
        assert!(pompeiu_reproduce(|z| z, &phi, c(0.7, 0.0), 400).is_err());
    }

    #[test]
    fn dominated_bound_cases() {
        let phi = CutoffFunction::new(c(0.0, 0.0), 0.6, 0.8).unwrap();
        let k = Disc::new(c(0.0, 0.0), 0.3).unwrap();
        assert_eq!(dominated_bound(|_| 0.0, &phi, &k, 200).unwrap(), 0.0);
        assert!(dominated_bound(|_| 1.0, &phi, &k, 400).unwrap() >= 1.0 - 1e-3);
        let singular = dominated_bound(|z| 1.0 / (z - 1.0).norm().sqrt(), &phi, &k, 400).unwrap();
        assert!(singular.is_finite() && singular > 0.0);
        let touching = Disc::new(c(0.0, 0.0), 0.6).unwrap();
        assert!(dominated_bound(|_| 1.0, &phi, &touching, 100).is_err());
    }
}
