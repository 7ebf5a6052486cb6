//! Factorial derivative bounds, Taylor-coefficient limits and a real
//! analyticity classifier for one-variable real families.
//!
//! Derivatives come from Chebyshev interpolants unless a family supplies
//! closed forms.

use std::f64::consts::PI;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Highest derivative order supported by the spectral estimates.
pub const MAX_ORDER: usize = 8;

/// Chebyshev interpolant of degree `n` on `[a, b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Chebyshev {
    a: f64,
    b: f64,
    coeffs: Vec<f64>,
}

impl Chebyshev {
    /// Interpolates `f` at the `n + 1` Chebyshev extreme points.
    pub fn interpolate(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> Result<Self> {
        if !(a < b && a.is_finite() && b.is_finite()) {
            return Err(Error::invalid(format!("degenerate interval [{a}, {b}]")));
        }
        if n == 0 {
            return Err(Error::invalid("interpolation degree must be positive"));
        }
        let nf = n as f64;
        let values: Vec<f64> = (0..=n)
            .map(|k| f(0.5 * (a + b) + 0.5 * (b - a) * (PI * k as f64 / nf).cos()))
            .collect();
        let coeffs = (0..=n)
            .map(|m| {
                let s: f64 = values
                    .iter()
                    .enumerate()
                    .map(|(k, v)| {
                        let end = if k == 0 || k == n { 0.5 } else { 1.0 };
                        end * v * (PI * (m * k) as f64 / nf).cos()
                    })
                    .sum();
                let end = if m == 0 || m == n { 0.5 } else { 1.0 };
                2.0 / nf * end * s
            })
            .collect();
        Ok(Chebyshev { a, b, coeffs })
    }

    pub fn eval(&self, x: f64) -> f64 {
        let t = (2.0 * x - self.a - self.b) / (self.b - self.a);
        // Clenshaw recurrence.
        let (mut b1, mut b2) = (0.0, 0.0);
        for &c in self.coeffs.iter().skip(1).rev() {
            let b0 = 2.0 * t * b1 - b2 + c;
            b2 = b1;
            b1 = b0;
        }
        t * b1 - b2 + self.coeffs[0]
    }

    pub fn derivative(&self) -> Chebyshev {
        let n = self.coeffs.len() - 1;
        let mut d = vec![0.0; n.max(1)];
        if n >= 1 {
            let mut next = 0.0; // d_{k+1}
            let mut next2 = 0.0; // d_{k+2}
            for k in (0..n).rev() {
                let dk = next2 + 2.0 * (k + 1) as f64 * self.coeffs[k + 1];
                d[k] = dk;
                next2 = next;
                next = dk;
            }
            d[0] *= 0.5;
        }
        let scale = 2.0 / (self.b - self.a);
        Chebyshev {
            a: self.a,
            b: self.b,
            coeffs: d.into_iter().map(|c| c * scale).collect(),
        }
    }
}

/// `f^{(l)}(x)` for `l = 0..=max_order` at each center, from a degree-`n`
/// Chebyshev interpolant on `interval`. Rows follow `centers`.
pub fn estimate_derivatives(
    f: impl Fn(f64) -> f64,
    interval: (f64, f64),
    centers: &[f64],
    max_order: usize,
    n: usize,
) -> Result<Vec<Vec<f64>>> {
    if max_order > MAX_ORDER {
        return Err(Error::invalid(format!(
            "derivative order {max_order} exceeds the supported {MAX_ORDER}"
        )));
    }
    if max_order > n {
        return Err(Error::invalid("derivative order exceeds the interpolation degree"));
    }
    let mut p = Chebyshev::interpolate(f, interval.0, interval.1, n)?;
    let mut rows = vec![Vec::with_capacity(max_order + 1); centers.len()];
    for _ in 0..=max_order {
        for (row, &x) in rows.iter_mut().zip(centers) {
            row.push(p.eval(x));
        }
        p = p.derivative();
    }
    Ok(rows)
}

type RealFn = dyn Fn(usize, f64) -> f64 + Send + Sync;
type DerivFn = dyn Fn(usize, f64, usize) -> Option<f64> + Send + Sync;

/// A real family `f_j`, `1 <= j <= j_max`, with optional closed-form
/// derivatives `(j, x, l) -> f_j^{(l)}(x)`.
#[derive(Clone)]
pub struct RealFamily {
    pub name: String,
    pub j_max: usize,
    f: Arc<RealFn>,
    closed_form: Option<Arc<DerivFn>>,
}

impl std::fmt::Debug for RealFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RealFamily")
            .field("name", &self.name)
            .field("j_max", &self.j_max)
            .finish()
    }
}

impl RealFamily {
    pub fn new(
        name: impl Into<String>,
        j_max: usize,
        f: impl Fn(usize, f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        if j_max == 0 {
            return Err(Error::invalid("a family needs j_max >= 1"));
        }
        Ok(RealFamily {
            name: name.into(),
            j_max,
            f: Arc::new(f),
            closed_form: None,
        })
    }

    pub fn with_closed_form(
        mut self,
        d: impl Fn(usize, f64, usize) -> Option<f64> + Send + Sync + 'static,
    ) -> Self {
        self.closed_form = Some(Arc::new(d));
        self
    }

    pub fn eval(&self, j: usize, x: f64) -> f64 {
        (self.f)(j, x)
    }

    /// Closed-form `f_j^{(l)}(x)`, when the family provides it.
    pub fn closed_form(&self, j: usize, x: f64, l: usize) -> Option<f64> {
        self.closed_form.as_ref().and_then(|d| d(j, x, l))
    }

    fn check_index(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.j_max {
            return Err(Error::invalid(format!("index {j} outside 1..={}", self.j_max)));
        }
        Ok(())
    }
}

/// `f_j(x) = sqrt(x^2 + 1/j)`, converging to `|x|`.
pub fn sqrt_shift(j_max: usize) -> Result<RealFamily> {
    Ok(RealFamily::new("sqrt-shift", j_max, |j, x| (x * x + 1.0 / j as f64).sqrt())?
        .with_closed_form(|j, x, l| {
            let c = 1.0 / j as f64;
            let s = (x * x + c).sqrt();
            match l {
                0 => Some(s),
                1 => Some(x / s),
                2 => Some(c / (s * s * s)),
                _ => None,
            }
        }))
}

/// `f_j(x) = Σ_{k=0}^{j} x^k / k!`, converging to `e^x`.
pub fn exp_partial_sum(j_max: usize) -> Result<RealFamily> {
    let sum = |j: usize, x: f64, l: usize| -> f64 {
        let mut term = 1.0;
        let mut s = 0.0;
        for k in l..=j {
            s += term;
            term *= x / (k - l + 1) as f64;
        }
        s
    };
    Ok(RealFamily::new("exp-partial-sum", j_max, move |j, x| sum(j, x, 0))?
        .with_closed_form(move |j, x, l| Some(if l > j { 0.0 } else { sum(j, x, l) })))
}

/// `f_j(x) = Σ_{k=0}^{j} x^k`, converging to `1/(1 - x)` on `|x| < 1`.
pub fn geometric_partial_sum(j_max: usize) -> Result<RealFamily> {
    Ok(RealFamily::new("geometric-partial-sum", j_max, |j, x| {
        (0..=j).fold((0.0, 1.0), |(s, p), _| (s + p, p * x)).0
    })?
    .with_closed_form(|j, x, l| {
        // d^l/dx^l x^k = k!/(k-l)! x^{k-l}
        let mut s = 0.0;
        for k in l..=j {
            let falling: f64 = ((k - l + 1)..=k).map(|i| i as f64).product();
            s += falling * x.powi((k - l) as i32);
        }
        Some(s)
    }))
}

/// The same polynomial `Σ c_k x^k` for every `j`.
pub fn polynomial(coeffs: Vec<f64>, j_max: usize) -> Result<RealFamily> {
    let c2 = coeffs.clone();
    Ok(RealFamily::new("polynomial", j_max, move |_, x| {
        coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    })?
    .with_closed_form(move |_, x, l| {
        let mut s = 0.0;
        for (k, c) in c2.iter().enumerate().skip(l) {
            let falling: f64 = ((k - l + 1)..=k).map(|i| i as f64).product();
            s += c * falling * x.powi((k - l) as i32);
        }
        Some(s)
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DerivativeMethod {
    ClosedForm,
    SpectralInterpolant,
}

/// `values[j - 1][c][l] = f_j^{(l)}(centers[c])`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DerivativeTable {
    pub family: String,
    pub interval: (f64, f64),
    pub centers: Vec<f64>,
    pub max_order: usize,
    pub j_max: usize,
    pub method: DerivativeMethod,
    pub values: Vec<Vec<Vec<f64>>>,
}

/// Settings for derivative estimation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectralSettings {
    pub interval: (f64, f64),
    pub degree: usize,
}

impl Default for SpectralSettings {
    fn default() -> Self {
        SpectralSettings {
            interval: (-1.0, 1.0),
            degree: 64,
        }
    }
}

/// Tabulates derivatives for `j = 1..=j_max`; closed forms are used when the
/// family has them for every requested order, spectral estimates otherwise.
pub fn derivative_table(
    family: &RealFamily,
    j_max: usize,
    centers: &[f64],
    max_order: usize,
    spectral: &SpectralSettings,
    prefer_closed_form: bool,
) -> Result<DerivativeTable> {
    family.check_index(j_max)?;
    let closed = prefer_closed_form
        && (0..=max_order).all(|l| family.closed_form(1, centers.first().copied().unwrap_or(0.0), l).is_some());
    let values = (1..=j_max)
        .map(|j| {
            if closed {
                Ok(centers
                    .iter()
                    .map(|&x| (0..=max_order).map(|l| family.closed_form(j, x, l).expect("checked")).collect())
                    .collect())
            } else {
                estimate_derivatives(|x| family.eval(j, x), spectral.interval, centers, max_order, spectral.degree)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DerivativeTable {
        family: family.name.clone(),
        interval: spectral.interval,
        centers: centers.to_vec(),
        max_order,
        j_max,
        method: if closed { DerivativeMethod::ClosedForm } else { DerivativeMethod::SpectralInterpolant },
        values,
    })
}

fn factorial(l: usize) -> f64 {
    (1..=l).map(|i| i as f64).product()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub j: usize,
    pub x: f64,
    pub order: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FactorialBoundReport {
    pub k: f64,
    pub r: f64,
    /// `max |f_j^{(l)}(x)| R^l / (K l!)` over the table.
    pub worst_ratio: f64,
    pub worst_witness: Witness,
    pub pass: bool,
}

/// Smallest `K` with `|f_j^{(l)}(x)| <= K l! / R^l` on the whole table.
pub fn minimal_k(table: &DerivativeTable, r: f64) -> Result<(f64, Witness)> {
    if !(r > 0.0) {
        return Err(Error::invalid("R must be > 0"));
    }
    let mut best = (0.0, Witness { j: 1, x: table.centers[0], order: 0 });
    for (ji, per_center) in table.values.iter().enumerate() {
        for (ci, row) in per_center.iter().enumerate() {
            for (l, v) in row.iter().enumerate() {
                let need = v.abs() * r.powi(l as i32) / factorial(l);
                if need > best.0 {
                    best = (need, Witness { j: ji + 1, x: table.centers[ci], order: l });
                }
            }
        }
    }
    Ok(best)
}

/// Checks `|f_j^{(l)}(x)| <= K l! / R^l` over the table.
pub fn check_factorial_bound(table: &DerivativeTable, k: f64, r: f64) -> Result<FactorialBoundReport> {
    if !(k > 0.0) {
        return Err(Error::invalid("K must be > 0"));
    }
    let (need, witness) = minimal_k(table, r)?;
    let worst_ratio = need / k;
    Ok(FactorialBoundReport {
        k,
        r,
        worst_ratio,
        worst_witness: witness,
        pass: worst_ratio <= 1.0,
    })
}

/// Taylor data `α_l` of the limit at one center.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaylorLimit {
    pub center: f64,
    /// `f_{j_last}^{(l)}(center)`.
    pub alphas: Vec<f64>,
    /// Spread of `f_j^{(l)}(center)` across the tail window.
    pub variation: Vec<f64>,
    pub converged: Vec<bool>,
}

/// `α_l` for `l = 0..=order` from the tail window `tail.0..=tail.1`.
/// An order is flagged non-convergent when its spread exceeds
/// `tol · max(1, |α_l|)`.
pub fn taylor_limit_coeffs(
    family: &RealFamily,
    center: f64,
    order: usize,
    tail: (usize, usize),
    spectral: &SpectralSettings,
    tol: f64,
) -> Result<TaylorLimit> {
    if tail.0 > tail.1 {
        return Err(Error::invalid("empty tail window"));
    }
    family.check_index(tail.0)?;
    family.check_index(tail.1)?;
    let rows = (tail.0..=tail.1)
        .map(|j| {
            if let Some(v) = (0..=order).map(|l| family.closed_form(j, center, l)).collect::<Option<Vec<f64>>>() {
                Ok(v)
            } else {
                Ok(estimate_derivatives(|x| family.eval(j, x), spectral.interval, &[center], order, spectral.degree)?
                    .remove(0))
            }
        })
        .collect::<Result<Vec<Vec<f64>>>>()?;
    let alphas = rows.last().expect("nonempty window").clone();
    let variation: Vec<f64> = (0..=order)
        .map(|l| {
            let (lo, hi) = rows
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| (lo.min(r[l]), hi.max(r[l])));
            hi - lo
        })
        .collect();
    let converged = variation
        .iter()
        .zip(&alphas)
        .map(|(v, a)| *v <= tol * a.abs().max(1.0))
        .collect();
    Ok(TaylorLimit { center, alphas, variation, converged })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum AnalyticVerdict {
    /// Radius estimate `1 / limsup (|α_l| / l!)^{1/l}`; infinite when every
    /// `α_l`, `l >= 1`, vanishes.
    Analytic { radius: f64 },
    NotAnalytic,
    Undetermined { radius: f64 },
}

/// Orders needed before a radius estimate is attempted.
pub const MIN_ORDERS: usize = 5;

/// Classifies each center from its Taylor data. The limsup is approximated by
/// the maximum over the upper half of the available orders.
pub fn classify_analytic(coeffs: &[TaylorLimit], decay_tol: f64) -> Vec<AnalyticVerdict> {
    coeffs
        .iter()
        .map(|t| {
            if t.converged.iter().any(|c| !c) {
                return AnalyticVerdict::NotAnalytic;
            }
            let l_max = t.alphas.len().saturating_sub(1);
            let scale = t.alphas.iter().fold(1.0f64, |m, a| m.max(a.abs()));
            let root = ((l_max + 1) / 2).max(1)..=l_max;
            let growth = root
                .filter(|&l| t.alphas[l].abs() > 1e-12 * scale)
                .map(|l| (t.alphas[l].abs() / factorial(l)).powf(1.0 / l as f64))
                .fold(0.0f64, f64::max);
            let nonzero = t.alphas.iter().skip(1).any(|a| a.abs() > 1e-12 * scale);
            let radius = if nonzero && growth > 0.0 { 1.0 / growth } else { f64::INFINITY };
            if t.alphas.len() < MIN_ORDERS {
                AnalyticVerdict::Undetermined { radius }
            } else if radius >= decay_tol {
                AnalyticVerdict::Analytic { radius }
            } else {
                AnalyticVerdict::Undetermined { radius }
            }
        })
        .collect()
}
