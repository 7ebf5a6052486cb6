//! Two-variable checks: restriction to complex lines, analytic discs,
//! iterated Cauchy integrals over the distinguished boundary of a bidisc and
//! separate versus joint holomorphy.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cauchy::cauchy_reproduce;
use crate::error::{Error, Result};
use crate::geometry::{circle_contour, ensure_finite, CPoint, Disc, Domain, Rect};
use crate::osgood::{classify_holomorphy, ClassifierParams, HolomorphyMap};
use crate::sequence::FunctionSequence;

/// A point `(z1, z2)` of `C^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct C2Point {
    pub z1: Complex64,
    pub z2: Complex64,
}

impl C2Point {
    pub fn new(z1: Complex64, z2: Complex64) -> Result<Self> {
        ensure_finite(z1)?;
        ensure_finite(z2)?;
        Ok(C2Point { z1, z2 })
    }

    pub fn norm(&self) -> f64 {
        (self.z1.norm_sqr() + self.z2.norm_sqr()).sqrt()
    }

    fn coord(&self, k: usize) -> Complex64 {
        if k == 0 {
            self.z1
        } else {
            self.z2
        }
    }
}

fn c2(z1: Complex64, z2: Complex64) -> C2Point {
    C2Point { z1, z2 }
}

/// The line `t ↦ base + t·direction` with `|direction| = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LineRepr")]
pub struct ComplexLine {
    base: C2Point,
    direction: C2Point,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LineRepr {
    base: C2Point,
    direction: C2Point,
}

impl TryFrom<LineRepr> for ComplexLine {
    type Error = Error;

    fn try_from(r: LineRepr) -> Result<Self> {
        ComplexLine::new(r.base, r.direction)
    }
}

impl ComplexLine {
    /// Normalizes `direction`; a zero direction is rejected.
    pub fn new(base: C2Point, direction: C2Point) -> Result<Self> {
        let base = C2Point::new(base.z1, base.z2)?;
        let direction = C2Point::new(direction.z1, direction.z2)?;
        let n = direction.norm();
        if !(n > 0.0) {
            return Err(Error::invalid("a complex line needs a nonzero direction"));
        }
        Ok(ComplexLine {
            base,
            direction: c2(direction.z1 / n, direction.z2 / n),
        })
    }

    /// The line `z2 = c`, parametrized by `z1`.
    pub fn horizontal(z2: Complex64) -> Result<Self> {
        Self::new(c2(Complex64::new(0.0, 0.0), z2), c2(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)))
    }

    pub fn base(&self) -> C2Point {
        self.base
    }

    pub fn direction(&self) -> C2Point {
        self.direction
    }

    pub fn at(&self, t: Complex64) -> C2Point {
        c2(self.base.z1 + t * self.direction.z1, self.base.z2 + t * self.direction.z2)
    }
}

const BOUNDARY_SLACK: f64 = 1e-12;

/// Product domains in `C^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProductDomain {
    /// Closed polydisc `|z_k - c_k| <= r_k`.
    Polydisc { center: C2Point, radii: (f64, f64) },
    /// Product of two closed rectangles.
    Box { z1: Rect, z2: Rect },
}

impl ProductDomain {
    pub fn bidisc(radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::invalid(format!("radius {radius} must be > 0")));
        }
        Ok(ProductDomain::Polydisc {
            center: c2(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)),
            radii: (radius, radius),
        })
    }

    pub fn contains(&self, p: C2Point) -> bool {
        match self {
            // Relative slack absorbs rounding of points placed on the boundary.
            ProductDomain::Polydisc { center, radii } => {
                (p.z1 - center.z1).norm() <= radii.0 * (1.0 + BOUNDARY_SLACK)
                    && (p.z2 - center.z2).norm() <= radii.1 * (1.0 + BOUNDARY_SLACK)
            }
            ProductDomain::Box { z1, z2 } => z1.contains(p.z1) && z2.contains(p.z2),
        }
    }

    /// The set of `t` with `a_k + t b_k` in the k-th factor.
    fn factor_preimage(&self, k: usize, a: Complex64, b: Complex64) -> Piece {
        match self {
            ProductDomain::Polydisc { center, radii } => {
                let (c, r) = (center.coord(k), if k == 0 { radii.0 } else { radii.1 });
                if b == Complex64::new(0.0, 0.0) {
                    return if (a - c).norm() <= r { Piece::All } else { Piece::Empty };
                }
                Piece::Disc((c - a) / b, r / b.norm())
            }
            ProductDomain::Box { z1, z2 } => {
                let rect = if k == 0 { z1 } else { z2 };
                if b == Complex64::new(0.0, 0.0) {
                    return if rect.contains(a) { Piece::All } else { Piece::Empty };
                }
                // Counterclockwise corners stay counterclockwise under a
                // similarity.
                let ccw = [
                    Complex64::new(rect.x.lo(), rect.y.lo()),
                    Complex64::new(rect.x.hi(), rect.y.lo()),
                    Complex64::new(rect.x.hi(), rect.y.hi()),
                    Complex64::new(rect.x.lo(), rect.y.hi()),
                ];
                Piece::Polygon(ccw.iter().map(|z| (z - a) / b).collect())
            }
        }
    }
}

#[derive(Debug, Clone)]
enum Piece {
    All,
    Empty,
    Disc(Complex64, f64),
    Polygon(Vec<Complex64>),
}

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

/// Sutherland-Hodgman clip of `subject` by the convex counterclockwise `clip`.
fn clip_polygon(subject: &[Complex64], clip: &[Complex64]) -> Vec<Complex64> {
    let mut out = subject.to_vec();
    for i in 0..clip.len() {
        let (p, q) = (clip[i], clip[(i + 1) % clip.len()]);
        let inside = |z: Complex64| cross(q - p, z - p) >= -1e-12 * (q - p).norm();
        let input = std::mem::take(&mut out);
        for k in 0..input.len() {
            let (s, e) = (input[k], input[(k + 1) % input.len()]);
            let (si, ei) = (inside(s), inside(e));
            if si {
                out.push(s);
            }
            if si != ei {
                let d = e - s;
                let denom = cross(q - p, d);
                if denom != 0.0 {
                    out.push(s + d * (cross(q - p, p - s) / denom));
                }
            }
        }
        if out.is_empty() {
            break;
        }
    }
    out
}

fn pieces_meet(a: &Piece, b: &Piece) -> bool {
    match (a, b) {
        (Piece::Empty, _) | (_, Piece::Empty) => false,
        (Piece::All, _) | (_, Piece::All) => true,
        (Piece::Disc(c1, r1), Piece::Disc(c2, r2)) => (c1 - c2).norm() <= r1 + r2,
        (Piece::Polygon(p), Piece::Polygon(q)) => !clip_polygon(p, q).is_empty(),
        // Factor types never mix within one product domain.
        _ => unreachable!("mixed product domain"),
    }
}

/// Preimage of a product domain under a line parametrization.
#[derive(Debug, Clone, Copy)]
pub struct LineDomain {
    pub line: ComplexLine,
    pub domain: ProductDomain,
}

impl Domain for LineDomain {
    fn contains_point(&self, t: CPoint) -> bool {
        self.domain.contains(self.line.at(t))
    }
    // The preimage is convex, so the default corner test is exact.
}

type Evaluator2 = dyn Fn(usize, C2Point) -> Complex64 + Send + Sync;

/// A two-variable family `f_j`, `1 <= j <= j_max`, on a product domain.
#[derive(Clone)]
pub struct Seq2 {
    eval: Arc<Evaluator2>,
    j_max: usize,
    description: String,
    domain: ProductDomain,
}

impl fmt::Debug for Seq2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Seq2")
            .field("j_max", &self.j_max)
            .field("description", &self.description)
            .field("domain", &self.domain)
            .finish()
    }
}

impl Seq2 {
    pub fn new(
        j_max: usize,
        description: impl Into<String>,
        domain: ProductDomain,
        eval: impl Fn(usize, C2Point) -> Complex64 + Send + Sync + 'static,
    ) -> Result<Self> {
        if j_max == 0 {
            return Err(Error::invalid("a sequence needs j_max >= 1"));
        }
        Ok(Seq2 {
            eval: Arc::new(eval),
            j_max,
            description: description.into(),
            domain,
        })
    }

    pub fn j_max(&self) -> usize {
        self.j_max
    }

    pub fn domain(&self) -> ProductDomain {
        self.domain
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn eval(&self, j: usize, p: C2Point) -> Result<Complex64> {
        if j == 0 || j > self.j_max {
            return Err(Error::invalid(format!("index {j} outside 1..={}", self.j_max)));
        }
        let v = (self.eval)(j, p);
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::Evaluation {
                index: j,
                point: p.z1,
                reason: format!("non-finite value {v} at z2 = {}", p.z2),
            })
        }
    }
}

/// `f_j ≡ c` on the bidisc of the given radius.
pub fn constant2(c: Complex64, j_max: usize, radius: f64) -> Result<Seq2> {
    Seq2::new(j_max, format!("constant {c}"), ProductDomain::bidisc(radius)?, move |_, _| c)
}

/// `f_j = Σ_{k=0}^{j} (z1 z2)^k` on the bidisc of the given radius `< 1`.
pub fn product_geometric(j_max: usize, radius: f64) -> Result<Seq2> {
    if radius >= 1.0 {
        return Err(Error::invalid("the product geometric family needs a radius below 1"));
    }
    Seq2::new(j_max, "product geometric sums", ProductDomain::bidisc(radius)?, |j, p| {
        let w = p.z1 * p.z2;
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        for _ in 0..j {
            term *= w;
            sum += term;
        }
        sum
    })
}

/// `g_j(z1, z2) = f_j(z1)` on `box_z1 × box_z2`.
pub fn lift(seq: &FunctionSequence, z1: Rect, z2: Rect) -> Result<Seq2> {
    let inner = seq.clone();
    Seq2::new(
        seq.j_max(),
        format!("lift of {}", seq.description()),
        ProductDomain::Box { z1, z2 },
        move |j, p| inner.eval_unchecked(j, p.z1),
    )
}

/// The one-variable sequence `(j, t) ↦ f_j(a + t b)` on the preimage of the
/// domain.
pub fn restrict_to_line(seq: &Seq2, line: &ComplexLine) -> Result<FunctionSequence> {
    let (a, b) = (line.base(), line.direction());
    let p1 = seq.domain.factor_preimage(0, a.z1, b.z1);
    let p2 = seq.domain.factor_preimage(1, a.z2, b.z2);
    if !pieces_meet(&p1, &p2) {
        return Err(Error::invalid("the line misses the domain"));
    }
    let inner = seq.clone();
    let l = *line;
    Ok(FunctionSequence::new(
        seq.j_max,
        format!("{} on a complex line", seq.description),
        move |j, t| (inner.eval)(j, l.at(t)),
    )?
    .with_domain(LineDomain { line: *line, domain: seq.domain }))
}

/// Holomorphy map of the restriction to `line`.
pub fn analyze_line(seq: &Seq2, line: &ComplexLine, params: &ClassifierParams) -> Result<HolomorphyMap> {
    classify_holomorphy(&restrict_to_line(seq, line)?, params)
}

/// Iterated trapezoidal Cauchy integral over the torus `|ζ_k - c_k| = r_k`
/// with `n` nodes per circle.
pub fn torus_reproduce(
    f: impl Fn(C2Point) -> Complex64 + Sync,
    center: C2Point,
    radii: (f64, f64),
    n: usize,
    w: C2Point,
) -> Result<Complex64> {
    if !(radii.0 > 0.0 && radii.1 > 0.0) {
        return Err(Error::invalid("torus radii must be > 0"));
    }
    if !((w.z1 - center.z1).norm() < radii.0 && (w.z2 - center.z2).norm() < radii.1) {
        return Err(Error::invalid("probe is not strictly inside the polydisc"));
    }
    let k1 = circle_contour(center.z1, radii.0, n)?;
    let k2 = circle_contour(center.z2, radii.1, n)?;
    let to_unit = Complex64::new(0.0, 2.0 * PI);
    let inner: Vec<(Complex64, Complex64)> = k2
        .nodes()
        .iter()
        .zip(k2.weights())
        .map(|(z, wt)| (*z, wt / to_unit / (z - w.z2)))
        .collect();
    Ok(k1
        .nodes()
        .par_iter()
        .zip(k1.weights().par_iter())
        .map(|(z1, wt1)| {
            let outer = wt1 / to_unit / (z1 - w.z1);
            outer * inner.iter().map(|(z2, wt2)| wt2 * f(c2(*z1, *z2))).sum::<Complex64>()
        })
        .sum())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HartogsReport {
    /// Max over probes of the one-variable Cauchy errors in `z1` and `z2`.
    pub per_variable: (f64, f64),
    pub joint: f64,
    pub per_variable_tol: f64,
    pub joint_tol: f64,
    pub probes: usize,
    /// Small per-variable residuals came with a small joint residual.
    pub implication_holds: bool,
}

impl HartogsReport {
    pub fn separately_holomorphic(&self) -> bool {
        self.per_variable.0 < self.per_variable_tol && self.per_variable.1 < self.per_variable_tol
    }

    pub fn jointly_holomorphic(&self) -> bool {
        self.joint < self.joint_tol
    }
}

pub const HARTOGS_PER_VARIABLE_TOL: f64 = 1e-8;
pub const HARTOGS_JOINT_TOL: f64 = 1e-6;

/// Separate and joint Cauchy reproduction errors of `f` at `probes`.
pub fn hartogs_check(
    f: impl Fn(C2Point) -> Complex64 + Sync,
    center: C2Point,
    radii: (f64, f64),
    n: usize,
    probes: &[C2Point],
) -> Result<HartogsReport> {
    if probes.is_empty() {
        return Err(Error::invalid("no probes"));
    }
    let k1 = circle_contour(center.z1, radii.0, n)?;
    let k2 = circle_contour(center.z2, radii.1, n)?;
    let (mut e1, mut e2, mut joint) = (0.0f64, 0.0f64, 0.0f64);
    for p in probes {
        let exact = f(*p);
        let v1: Vec<Complex64> = k1.nodes().iter().map(|&z| f(c2(z, p.z2))).collect();
        let v2: Vec<Complex64> = k2.nodes().iter().map(|&z| f(c2(p.z1, z))).collect();
        e1 = e1.max((cauchy_reproduce(&v1, &k1, p.z1)? - exact).norm());
        e2 = e2.max((cauchy_reproduce(&v2, &k2, p.z2)? - exact).norm());
        joint = joint.max((torus_reproduce(&f, center, radii, n, *p)? - exact).norm());
    }
    let mut report = HartogsReport {
        per_variable: (e1, e2),
        joint,
        per_variable_tol: HARTOGS_PER_VARIABLE_TOL,
        joint_tol: HARTOGS_JOINT_TOL,
        probes: probes.len(),
        implication_holds: true,
    };
    report.implication_holds = !report.separately_holomorphic() || report.jointly_holomorphic();
    Ok(report)
}

/// A polynomial analytic disc `ζ ↦ (p1(ζ), p2(ζ))`, coefficients in
/// increasing degree, with its closed-disc samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyticDisc {
    pub name: String,
    pub p1: Vec<Complex64>,
    pub p2: Vec<Complex64>,
    pub samples: Vec<Complex64>,
}

/// Closed-disc sampling used by the disc constructors.
pub const DISC_RINGS: usize = 8;
pub const DISC_PER_RING: usize = 32;

fn horner(p: &[Complex64], z: Complex64) -> Complex64 {
    p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

impl AnalyticDisc {
    /// Fails unless every sample image lies in `domain`.
    pub fn new(name: impl Into<String>, p1: Vec<Complex64>, p2: Vec<Complex64>, domain: &ProductDomain) -> Result<Self> {
        if p1.is_empty() || p2.is_empty() {
            return Err(Error::invalid("disc components need at least one coefficient"));
        }
        let unit = Disc::new(Complex64::new(0.0, 0.0), 1.0)?;
        let disc = AnalyticDisc {
            name: name.into(),
            p1,
            p2,
            samples: unit.polar_samples(DISC_RINGS, DISC_PER_RING),
        };
        if let Some(z) = disc.samples.iter().find(|&&z| !domain.contains(disc.eval(z))) {
            return Err(Error::invalid(format!("disc image leaves the domain at ζ = {z}")));
        }
        Ok(disc)
    }

    /// `ζ ↦ (c ζ, 0)` or `(0, c ζ)`.
    pub fn coordinate(c: f64, second_axis: bool, domain: &ProductDomain) -> Result<Self> {
        let z = Complex64::new(0.0, 0.0);
        let lin = vec![z, Complex64::new(c, 0.0)];
        let (p1, p2) = if second_axis { (vec![z], lin) } else { (lin, vec![z]) };
        Self::new(format!("coordinate c = {c}{}", if second_axis { " (z2)" } else { "" }), p1, p2, domain)
    }

    /// `ζ ↦ (c ζ, c ζ)`.
    pub fn diagonal(c: f64, domain: &ProductDomain) -> Result<Self> {
        let lin = vec![Complex64::new(0.0, 0.0), Complex64::new(c, 0.0)];
        Self::new(format!("diagonal c = {c}"), lin.clone(), lin, domain)
    }

    /// Random polynomial disc through `center`: degree `degree`, each
    /// component moving at most `scale` from the center on the closed disc.
    pub fn random(seed: u64, degree: usize, scale: f64, center: C2Point, domain: &ProductDomain) -> Result<Self> {
        if degree == 0 {
            return Err(Error::invalid("random discs need degree >= 1"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut component = |c0: Complex64| {
            let mut p = vec![c0];
            for _ in 0..degree {
                let r = scale / degree as f64 * rng.random::<f64>();
                let theta = 2.0 * PI * rng.random::<f64>();
                p.push(Complex64::from_polar(r, theta));
            }
            p
        };
        let p1 = component(center.z1);
        let p2 = component(center.z2);
        Self::new(format!("random seed {seed} degree {degree}"), p1, p2, domain)
    }

    pub fn eval(&self, z: Complex64) -> C2Point {
        c2(horner(&self.p1, z), horner(&self.p2, z))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscReport {
    pub disc: String,
    pub deviation: f64,
    pub tol: f64,
    pub pass: bool,
    /// Cauchy reproduction error of the last composed member on the circle of
    /// radius 0.9 at interior probes; only computed on a pass.
    pub limit_residual: Option<f64>,
}

/// Per-sample tail deviations `max_pairs |f_l∘φ - f_m∘φ|`.
pub fn disc_deviations(seq: &Seq2, disc: &AnalyticDisc, tail_pairs: &[(usize, usize)]) -> Result<Vec<f64>> {
    disc.samples
        .iter()
        .map(|&z| {
            let p = disc.eval(z);
            tail_pairs.iter().try_fold(0.0f64, |m, &(l, k)| {
                Ok(m.max((seq.eval(l, p)? - seq.eval(k, p)?).norm()))
            })
        })
        .collect()
}

/// Uniform convergence of `f_j ∘ φ` on the closed disc over `tail_pairs`.
pub fn disc_uniform_convergence(
    seq: &Seq2,
    disc: &AnalyticDisc,
    tol: f64,
    tail_pairs: &[(usize, usize)],
) -> Result<DiscReport> {
    if tail_pairs.is_empty() {
        return Err(Error::invalid("no tail pairs"));
    }
    if let Some(z) = disc.samples.iter().find(|&&z| !seq.domain.contains(disc.eval(z))) {
        return Err(Error::invalid(format!("disc image leaves the domain at ζ = {z}")));
    }
    let deviation = disc_deviations(seq, disc, tail_pairs)?.into_iter().fold(0.0, f64::max);
    let pass = deviation <= tol;
    let limit_residual = if pass {
        let j = seq.j_max;
        let contour = circle_contour(Complex64::new(0.0, 0.0), 0.9, 64)?;
        let values = contour
            .nodes()
            .iter()
            .map(|&z| seq.eval(j, disc.eval(z)))
            .collect::<Result<Vec<_>>>()?;
        let mut worst: f64 = 0.0;
        for probe in [Complex64::new(0.0, 0.0), Complex64::new(0.4, 0.0), Complex64::new(-0.2, 0.5)] {
            let exact = seq.eval(j, disc.eval(probe))?;
            worst = worst.max((cauchy_reproduce(&values, &contour, probe)? - exact).norm());
        }
        Some(worst)
    } else {
        None
    };
    Ok(DiscReport {
        disc: disc.name.clone(),
        deviation,
        tol,
        pass,
        limit_residual,
    })
}

/// Largest gap between the tail deviations of the coordinate disc
/// `ζ ↦ (c ζ, 0)` and those of the restriction to the line `z2 = 0` at the
/// shared points `t = c ζ`.
pub fn coordinate_disc_consistency(seq: &Seq2, c: f64, tail_pairs: &[(usize, usize)]) -> Result<f64> {
    let disc = AnalyticDisc::coordinate(c, false, &seq.domain)?;
    let on_disc = disc_deviations(seq, &disc, tail_pairs)?;
    let restricted = restrict_to_line(seq, &ComplexLine::horizontal(Complex64::new(0.0, 0.0))?)?;
    let mut worst: f64 = 0.0;
    for (&z, d) in disc.samples.iter().zip(on_disc) {
        let t = Complex64::new(c, 0.0) * z;
        let on_line = tail_pairs.iter().try_fold(0.0f64, |m, &(l, k)| {
            Ok::<f64, Error>(m.max((restricted.eval(l, t)? - restricted.eval(k, t)?).norm()))
        })?;
        worst = worst.max((on_line - d).abs());
    }
    Ok(worst)
}

/// Disc families named in configurations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DiscSpec {
    Coordinate {
        c: f64,
        #[serde(default)]
        second_axis: bool,
    },
    Diagonal { c: f64 },
    Random { degree: usize, scale: f64 },
}

impl DiscSpec {
    /// Random discs draw from `seed` offset by their position in the family.
    pub fn build(&self, domain: &ProductDomain, seed: u64, position: usize) -> Result<AnalyticDisc> {
        match *self {
            DiscSpec::Coordinate { c, second_axis } => AnalyticDisc::coordinate(c, second_axis, domain),
            DiscSpec::Diagonal { c } => AnalyticDisc::diagonal(c, domain),
            DiscSpec::Random { degree, scale } => {
                let center = match domain {
                    ProductDomain::Polydisc { center, .. } => *center,
                    ProductDomain::Box { z1, z2 } => c2(z1.center(), z2.center()),
                };
                AnalyticDisc::random(seed.wrapping_add(position as u64), degree, scale, center, domain)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::CellGrid;
    use crate::osgood::Verdict;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn origin() -> C2Point {
        c2(c(0.0, 0.0), c(0.0, 0.0))
    }

    #[test]
    fn direction_is_normalized() {
        let l = ComplexLine::new(origin(), c2(c(3.0, 0.0), c(0.0, 4.0))).unwrap();
        assert!((l.direction().norm() - 1.0).abs() < 1e-15);
        assert!(ComplexLine::new(origin(), origin()).is_err());
    }

    #[test]
    fn restriction_oracles() {
        let seq = product_geometric(30, 0.9).unwrap();
        let on_axis = restrict_to_line(&seq, &ComplexLine::horizontal(c(0.0, 0.0)).unwrap()).unwrap();
        for j in [1, 5, 30] {
            assert_eq!(on_axis.eval(j, c(0.4, -0.3)).unwrap(), c(1.0, 0.0));
        }
        let s = 1.0 / 2f64.sqrt();
        let diag = ComplexLine::new(origin(), c2(c(s, 0.0), c(s, 0.0))).unwrap();
        let r = restrict_to_line(&seq, &diag).unwrap();
        let t = c(0.5, 0.3);
        let q = t * t / 2.0;
        let closed = (1.0 - q.powu(31)) / (1.0 - q);
        assert!((r.eval(30, t).unwrap() - closed).norm() < 1e-12);
        let lifted = lift(&crate::sequence::powers(4).unwrap(), Rect::new(-1.0, 1.0, -1.0, 1.0).unwrap(), Rect::new(-1.0, 1.0, -1.0, 1.0).unwrap()).unwrap();
        let r = restrict_to_line(&lifted, &ComplexLine::horizontal(c(0.0, 0.0)).unwrap()).unwrap();
        assert_eq!(r.eval(3, c(0.5, 0.5)).unwrap(), c(0.5, 0.5).powu(3));
    }

    #[test]
    fn missing_lines_are_rejected() {
        let seq = product_geometric(5, 0.6).unwrap();
        assert!(restrict_to_line(&seq, &ComplexLine::horizontal(c(0.7, 0.0)).unwrap()).is_err());
        let far = ComplexLine::new(c2(c(2.0, 0.0), c(0.0, 0.0)), c2(c(0.0, 0.0), c(1.0, 0.0))).unwrap();
        assert!(restrict_to_line(&seq, &far).is_err());
        let b = Rect::new(-0.5, 0.5, -0.5, 0.5).unwrap();
        let boxed = lift(&crate::sequence::powers(3).unwrap(), b, b).unwrap();
        let skew = ComplexLine::new(c2(c(0.0, 0.0), c(0.8, 0.0)), c2(c(1.0, 0.0), c(1.0, 0.0))).unwrap();
        assert!(restrict_to_line(&boxed, &skew).is_ok());
        let off = ComplexLine::new(c2(c(0.0, 0.0), c(3.0, 0.0)), c2(c(1.0, 0.0), c(1.0, 0.0))).unwrap();
        assert!(restrict_to_line(&boxed, &off).is_err());
    }

    #[test]
    fn product_family_on_a_line_is_regular() {
        let seq = product_geometric(60, 0.6).unwrap();
        let line = ComplexLine::horizontal(c(0.5, 0.0)).unwrap();
        let params = ClassifierParams::new(CellGrid::square(0.55, 8).unwrap(), vec![(40, 60)]);
        let map = analyze_line(&seq, &line, &params).unwrap();
        assert_eq!(map.count(Verdict::Exceptional), 0);
        assert!(map.count(Verdict::Regular) > 0);
    }

    #[test]
    fn torus_oracles() {
        let f = |p: C2Point| p.z1 * p.z2;
        let r = (0.6, 0.6);
        assert!(torus_reproduce(f, origin(), r, 64, origin()).unwrap().norm() < 1e-10);
        let w = c2(c(0.3, 0.0), c(0.2, 0.0));
        assert!((torus_reproduce(f, origin(), r, 64, w).unwrap() - 0.06).norm() < 1e-10);
        let g = |p: C2Point| 1.0 / (1.0 - p.z1 * p.z2);
        let w = c2(c(0.5, 0.0), c(0.5, 0.0));
        assert!((torus_reproduce(g, origin(), r, 128, w).unwrap() - 4.0 / 3.0).norm() < 1e-8);
        assert!(torus_reproduce(g, origin(), r, 128, c2(c(0.6, 0.0), c(0.0, 0.0))).is_err());
    }

    #[test]
    fn hartogs_examples() {
        let probes = [c2(c(0.3, 0.0), c(0.2, 0.0)), c2(c(-0.1, 0.25), c(0.1, -0.3))];
        let r = (0.6, 0.6);
        let poly = hartogs_check(|p| p.z1 * p.z1 + p.z2.powu(3), origin(), r, 128, &probes).unwrap();
        assert!(poly.per_variable.0 < 1e-10 && poly.per_variable.1 < 1e-10 && poly.joint < 1e-10);
        let geo = hartogs_check(|p| 1.0 / (1.0 - p.z1 * p.z2), origin(), r, 128, &probes).unwrap();
        assert!(geo.separately_holomorphic() && geo.jointly_holomorphic() && geo.implication_holds);
        let re = hartogs_check(|p| c(p.z1.re, 0.0), origin(), r, 128, &probes[..1]).unwrap();
        assert!(re.per_variable.0 > 0.1, "{re:?}");
    }

    #[test]
    fn disc_examples() {
        let seq = product_geometric(40, 0.8).unwrap();
        let d = seq.domain();
        let coord = AnalyticDisc::coordinate(0.6, false, &d).unwrap();
        let rep = disc_uniform_convergence(&seq, &coord, 1e-6, &[(20, 40)]).unwrap();
        assert!(rep.pass && rep.deviation == 0.0);
        assert!(rep.limit_residual.unwrap() < 1e-12);
        let diag = AnalyticDisc::diagonal(0.7, &d).unwrap();
        let rep = disc_uniform_convergence(&seq, &diag, 1e-4, &[(20, 40)]).unwrap();
        assert!(rep.pass);
        assert!(rep.deviation <= 0.49f64.powi(21) / (1.0 - 0.49) + 1e-15);
        assert!(AnalyticDisc::diagonal(0.9, &d).is_err());
        let k = constant2(c(2.0, 1.0), 5, 0.9).unwrap();
        let rep = disc_uniform_convergence(&k, &diag, 0.0, &[(1, 5)]).unwrap();
        assert!(rep.pass && rep.deviation == 0.0);
    }

    #[test]
    fn coordinate_discs_match_lines() {
        let seq = product_geometric(40, 0.8).unwrap();
        for cc in [0.2, 0.5, 0.8] {
            assert!(coordinate_disc_consistency(&seq, cc, &[(20, 40), (10, 30)]).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn random_discs_are_seeded() {
        let d = ProductDomain::bidisc(0.8).unwrap();
        let a = AnalyticDisc::random(7, 3, 0.7, origin(), &d).unwrap();
        let b = AnalyticDisc::random(7, 3, 0.7, origin(), &d).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, AnalyticDisc::random(8, 3, 0.7, origin(), &d).unwrap());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            #[test]
            fn torus_reproduces_polynomials(
                coeffs in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 25),
                w1 in (-0.3..0.3f64, -0.3..0.3f64),
                w2 in (-0.3..0.3f64, -0.3..0.3f64),
            ) {
                let f = |p: C2Point| {
                    let mut s = Complex64::new(0.0, 0.0);
                    for (idx, &(re, im)) in coeffs.iter().enumerate() {
                        s += Complex64::new(re, im) * p.z1.powu((idx / 5) as u32) * p.z2.powu((idx % 5) as u32);
                    }
                    s
                };
                let w = c2(Complex64::new(w1.0, w1.1), Complex64::new(w2.0, w2.1));
                let center = c2(Complex64::new(0.05, 0.0), Complex64::new(0.0, -0.05));
                let got = torus_reproduce(f, center, (0.7, 0.7), 128, w).unwrap();
                prop_assert!((got - f(w)).norm() < 1e-10);
            }
        }
    }
}
