//! Planar geometry shared by every analysis module.
//!
//! Points are plain [`Complex64`] values. Compact sets are unions of closed
//! axis-aligned rectangles and axis-parallel segments ([`CompactRegion`]) or
//! closed discs ([`Disc`]). Open sets such as the square `U` are represented
//! by their closure; consumers keep an explicit interior margin.

use std::collections::HashSet;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the plane. Both coordinates must be finite.
pub type CPoint = Complex64;

/// Returns an error unless both coordinates of `p` are finite.
pub fn ensure_finite(p: CPoint) -> Result<CPoint> {
    if p.re.is_finite() && p.im.is_finite() {
        Ok(p)
    } else {
        Err(Error::invalid(format!("non-finite point {p}")))
    }
}

/// Closed interval `[lo, hi]` with `lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(Error::invalid(format!("non-finite interval [{lo}, {hi}]")));
        }
        if lo > hi {
            return Err(Error::invalid(format!("interval [{lo}, {hi}] has lo > hi")));
        }
        Ok(Interval { lo, hi })
    }

    /// Degenerate interval `[t, t]`.
    pub fn point(t: f64) -> Self {
        Interval { lo: t, hi: t }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }

    /// Distance from `t` to the interval (zero inside).
    pub fn gap_to(&self, t: f64) -> f64 {
        (self.lo - t).max(t - self.hi).max(0.0)
    }

    fn gap_between(&self, other: &Interval) -> f64 {
        (self.lo - other.hi).max(other.lo - self.hi).max(0.0)
    }

    /// Deterministic lattice with pitch at most `spacing`, endpoints included.
    fn lattice(&self, spacing: f64) -> Vec<f64> {
        let width = self.width();
        if width == 0.0 {
            return vec![self.lo];
        }
        let n = (width / spacing).ceil().max(1.0) as usize;
        (0..=n)
            .map(|k| {
                if k == n {
                    self.hi
                } else {
                    (self.lo + width * (k as f64 / n as f64)).clamp(self.lo, self.hi)
                }
            })
            .collect()
    }
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = Error;

    fn try_from(v: [f64; 2]) -> Result<Self> {
        Interval::new(v[0], v[1])
    }
}

impl From<Interval> for [f64; 2] {
    fn from(i: Interval) -> Self {
        [i.lo, i.hi]
    }
}

/// Closed axis-aligned rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Rect {
    pub x: Interval,
    pub y: Interval,
}

impl Rect {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Result<Self> {
        Ok(Rect {
            x: Interval::new(x0, x1)?,
            y: Interval::new(y0, y1)?,
        })
    }

    pub fn contains(&self, p: CPoint) -> bool {
        self.x.contains(p.re) && self.y.contains(p.im)
    }

    pub fn distance(&self, p: CPoint) -> f64 {
        self.x.gap_to(p.re).hypot(self.y.gap_to(p.im))
    }

    pub fn center(&self) -> CPoint {
        Complex64::new(
            0.5 * (self.x.lo + self.x.hi),
            0.5 * (self.y.lo + self.y.hi),
        )
    }

    pub fn corners(&self) -> [CPoint; 4] {
        [
            Complex64::new(self.x.lo, self.y.lo),
            Complex64::new(self.x.hi, self.y.lo),
            Complex64::new(self.x.hi, self.y.hi),
            Complex64::new(self.x.lo, self.y.hi),
        ]
    }

    fn gap_to_rect(&self, other: &Rect) -> f64 {
        self.x
            .gap_between(&other.x)
            .hypot(self.y.gap_between(&other.y))
    }
}

/// Direction an axis-parallel segment runs along.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    /// Horizontal: the segment runs along the real direction at `im = offset`.
    Re,
    /// Vertical: the segment runs along the imaginary direction at `re = offset`.
    Im,
}

/// Closed axis-parallel segment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Segment {
    pub axis: Axis,
    pub offset: f64,
    pub extent: Interval,
}

impl Segment {
    pub fn horizontal(im: f64, re_lo: f64, re_hi: f64) -> Result<Self> {
        Ok(Segment {
            axis: Axis::Re,
            offset: im,
            extent: Interval::new(re_lo, re_hi)?,
        })
    }

    pub fn vertical(re: f64, im_lo: f64, im_hi: f64) -> Result<Self> {
        Ok(Segment {
            axis: Axis::Im,
            offset: re,
            extent: Interval::new(im_lo, im_hi)?,
        })
    }

    /// The segment as a degenerate rectangle.
    pub fn as_rect(&self) -> Rect {
        match self.axis {
            Axis::Re => Rect {
                x: self.extent,
                y: Interval::point(self.offset),
            },
            Axis::Im => Rect {
                x: Interval::point(self.offset),
                y: self.extent,
            },
        }
    }

    pub fn endpoints(&self) -> [CPoint; 2] {
        match self.axis {
            Axis::Re => [
                Complex64::new(self.extent.lo, self.offset),
                Complex64::new(self.extent.hi, self.offset),
            ],
            Axis::Im => [
                Complex64::new(self.offset, self.extent.lo),
                Complex64::new(self.offset, self.extent.hi),
            ],
        }
    }
}

/// Common interface of the compact sets used as `K`, `S_j`, `T_j`, discs.
pub trait PlanarSet {
    fn contains(&self, p: CPoint) -> bool;

    /// Euclidean distance from `p` to the set, exact and zero iff `contains(p)`.
    fn distance(&self, p: CPoint) -> f64;

    /// Largest distance from `c` to a point of the set.
    fn farthest_from(&self, c: CPoint) -> f64;

    /// Deterministic sample of the set with pitch at most `spacing`.
    fn sample(&self, spacing: f64) -> Result<Vec<CPoint>>;
}

/// Declared domain of a function sequence. Only membership is needed:
/// analyzers skip cells that the domain does not contain.
pub trait Domain: Send + Sync + std::fmt::Debug {
    fn contains_point(&self, p: CPoint) -> bool;

    /// Conservative rectangle containment; exact for convex domains.
    fn contains_rect(&self, r: &Rect) -> bool {
        r.corners().iter().all(|&c| self.contains_point(c))
    }
}

/// Finite union of closed rectangles and axis-parallel segments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RegionRepr", into = "RegionRepr")]
pub struct CompactRegion {
    rects: Vec<Rect>,
    segments: Vec<Segment>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RegionRepr {
    #[serde(default)]
    rects: Vec<Rect>,
    #[serde(default)]
    segments: Vec<Segment>,
}

impl TryFrom<RegionRepr> for CompactRegion {
    type Error = Error;

    fn try_from(r: RegionRepr) -> Result<Self> {
        CompactRegion::new(r.rects, r.segments)
    }
}

impl From<CompactRegion> for RegionRepr {
    fn from(r: CompactRegion) -> Self {
        RegionRepr {
            rects: r.rects,
            segments: r.segments,
        }
    }
}

impl CompactRegion {
    pub fn new(rects: Vec<Rect>, segments: Vec<Segment>) -> Result<Self> {
        if rects.is_empty() && segments.is_empty() {
            return Err(Error::invalid("a region needs at least one component"));
        }
        if segments.iter().any(|s| !s.offset.is_finite()) {
            return Err(Error::invalid("non-finite segment offset"));
        }
        Ok(CompactRegion { rects, segments })
    }

    pub fn from_rect(rect: Rect) -> Self {
        CompactRegion {
            rects: vec![rect],
            segments: Vec::new(),
        }
    }

    pub fn rects(&self) -> &[Rect] {
        &self.rects
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    fn boxes(&self) -> impl Iterator<Item = Rect> + '_ {
        self.rects
            .iter()
            .copied()
            .chain(self.segments.iter().map(Segment::as_rect))
    }

    /// Exact distance between two regions (zero when they meet).
    pub fn distance_to_region(&self, other: &CompactRegion) -> f64 {
        self.boxes()
            .flat_map(|a| other.boxes().map(move |b| a.gap_to_rect(&b)))
            .fold(f64::INFINITY, f64::min)
    }

    /// Smallest axis-aligned rectangle containing the region.
    pub fn bounding_rect(&self) -> Rect {
        let mut it = self.boxes();
        let first = it.next().expect("regions are nonempty");
        it.fold(first, |acc, b| Rect {
            x: Interval {
                lo: acc.x.lo.min(b.x.lo),
                hi: acc.x.hi.max(b.x.hi),
            },
            y: Interval {
                lo: acc.y.lo.min(b.y.lo),
                hi: acc.y.hi.max(b.y.hi),
            },
        })
    }

    /// Image of the region under `z -> i z`.
    pub fn quarter_turn(&self) -> CompactRegion {
        let rects = self
            .rects
            .iter()
            .map(|r| Rect {
                x: Interval {
                    lo: -r.y.hi,
                    hi: -r.y.lo,
                },
                y: r.x,
            })
            .collect();
        let segments = self
            .segments
            .iter()
            .map(|s| match s.axis {
                Axis::Re => Segment {
                    axis: Axis::Im,
                    offset: -s.offset,
                    extent: s.extent,
                },
                Axis::Im => Segment {
                    axis: Axis::Re,
                    offset: s.offset,
                    extent: Interval {
                        lo: -s.extent.hi,
                        hi: -s.extent.lo,
                    },
                },
            })
            .collect();
        CompactRegion { rects, segments }
    }

    /// Image of the region under `z -> conj(z)`.
    pub fn conjugate(&self) -> CompactRegion {
        let flip = |i: Interval| Interval { lo: -i.hi, hi: -i.lo };
        CompactRegion {
            rects: self.rects.iter().map(|r| Rect { x: r.x, y: flip(r.y) }).collect(),
            segments: self
                .segments
                .iter()
                .map(|s| match s.axis {
                    Axis::Re => Segment { offset: -s.offset, ..*s },
                    Axis::Im => Segment { extent: flip(s.extent), ..*s },
                })
                .collect(),
        }
    }

    /// True when the component list is mapped onto itself by `z -> i z`.
    pub fn is_quarter_turn_invariant(&self, tol: f64) -> bool {
        self.same_components(&self.quarter_turn(), tol)
    }

    /// True when the component list is mapped onto itself by `z -> conj(z)`.
    pub fn is_conjugation_invariant(&self, tol: f64) -> bool {
        self.same_components(&self.conjugate(), tol)
    }

    fn same_components(&self, other: &CompactRegion, tol: f64) -> bool {
        let close = |a: &Rect, b: &Rect| {
            (a.x.lo - b.x.lo).abs() <= tol
                && (a.x.hi - b.x.hi).abs() <= tol
                && (a.y.lo - b.y.lo).abs() <= tol
                && (a.y.hi - b.y.hi).abs() <= tol
        };
        let covers = |from: &CompactRegion, to: &CompactRegion| {
            from.rects
                .iter()
                .all(|a| to.rects.iter().any(|b| close(a, b)))
                && from.segments.iter().all(|a| {
                    to.segments
                        .iter()
                        .any(|b| a.axis == b.axis && close(&a.as_rect(), &b.as_rect()))
                })
        };
        covers(other, self) && covers(self, other)
    }
}

impl PlanarSet for CompactRegion {
    fn contains(&self, p: CPoint) -> bool {
        self.boxes().any(|b| b.contains(p))
    }

    fn distance(&self, p: CPoint) -> f64 {
        self.boxes()
            .map(|b| b.distance(p))
            .fold(f64::INFINITY, f64::min)
    }

    fn farthest_from(&self, c: CPoint) -> f64 {
        self.boxes()
            .flat_map(|b| b.corners())
            .map(|q| (q - c).norm())
            .fold(0.0, f64::max)
    }

    fn sample(&self, spacing: f64) -> Result<Vec<CPoint>> {
        sample_region(self, spacing)
    }
}

impl Domain for CompactRegion {
    fn contains_point(&self, p: CPoint) -> bool {
        self.contains(p)
    }

    fn contains_rect(&self, r: &Rect) -> bool {
        self.boxes()
            .any(|b| r.corners().iter().all(|&c| b.contains(c)))
    }
}

/// Closed disc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Disc {
    pub center: CPoint,
    pub radius: f64,
}

impl Disc {
    pub fn new(center: CPoint, radius: f64) -> Result<Self> {
        ensure_finite(center)?;
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::invalid(format!("disc radius {radius} must be > 0")));
        }
        Ok(Disc { center, radius })
    }

    /// Polar lattice over the closed disc: the center plus `rings` circles of
    /// `per_ring` points each, the last ring on the boundary.
    pub fn polar_samples(&self, rings: usize, per_ring: usize) -> Vec<CPoint> {
        let mut out = vec![self.center];
        for r in 1..=rings {
            let rho = self.radius * r as f64 / rings as f64;
            for k in 0..per_ring {
                let theta = 2.0 * PI * k as f64 / per_ring as f64;
                out.push(self.center + Complex64::from_polar(rho, theta));
            }
        }
        out
    }
}

impl PlanarSet for Disc {
    fn contains(&self, p: CPoint) -> bool {
        (p - self.center).norm() <= self.radius
    }

    fn distance(&self, p: CPoint) -> f64 {
        ((p - self.center).norm() - self.radius).max(0.0)
    }

    fn farthest_from(&self, c: CPoint) -> f64 {
        (c - self.center).norm() + self.radius
    }

    /// Square lattice points inside the disc plus boundary points.
    fn sample(&self, spacing: f64) -> Result<Vec<CPoint>> {
        if !(spacing > 0.0 && spacing.is_finite()) {
            return Err(Error::invalid(format!("spacing {spacing} must be > 0")));
        }
        let r = self.radius;
        let axis = Interval { lo: -r, hi: r }.lattice(spacing);
        let mut out: Vec<CPoint> = axis
            .iter()
            .flat_map(|&y| axis.iter().map(move |&x| Complex64::new(x, y)))
            .filter(|d| d.norm() <= r)
            .map(|d| self.center + d)
            .collect();
        let n = ((2.0 * PI * r / spacing).ceil() as usize).max(8);
        out.extend((0..n).map(|k| {
            self.center + Complex64::from_polar(r, 2.0 * PI * k as f64 / n as f64)
        }));
        Ok(out)
    }
}

impl Domain for Disc {
    fn contains_point(&self, p: CPoint) -> bool {
        self.contains(p)
    }
}

/// The closed square `[-1, 1]^2`, closure of the open square `U`.
pub fn build_square_domain() -> CompactRegion {
    CompactRegion::from_rect(Rect::new(-1.0, 1.0, -1.0, 1.0).expect("static bounds"))
}

/// Deterministic sampling of a region with pitch at most `spacing`.
///
/// Rectangles get a full tensor lattice (corners included) and segments a
/// collinear lattice (endpoints included). Exact duplicates are dropped,
/// keeping first occurrence order.
pub fn sample_region(region: &CompactRegion, spacing: f64) -> Result<Vec<CPoint>> {
    if !(spacing > 0.0 && spacing.is_finite()) {
        return Err(Error::invalid(format!("spacing {spacing} must be > 0")));
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut push = |p: CPoint| {
        if seen.insert((p.re.to_bits(), p.im.to_bits())) {
            out.push(p);
        }
    };
    for r in region.rects() {
        let xs = r.x.lattice(spacing);
        for y in r.y.lattice(spacing) {
            for &x in &xs {
                push(Complex64::new(x, y));
            }
        }
    }
    for s in region.segments() {
        for t in s.extent.lattice(spacing) {
            push(match s.axis {
                Axis::Re => Complex64::new(t, s.offset),
                Axis::Im => Complex64::new(s.offset, t),
            });
        }
    }
    Ok(out)
}

/// Uniform node grid, row-major (`im` outer, `re` inner).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64, nx: usize, ny: usize) -> Result<Self> {
        let g = Grid {
            x_min,
            x_max,
            y_min,
            y_max,
            nx,
            ny,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn square(half_width: f64, n: usize) -> Result<Self> {
        Grid::new(-half_width, half_width, -half_width, half_width, n, n)
    }

    pub fn validate(&self) -> Result<()> {
        if self.nx < 2 || self.ny < 2 {
            return Err(Error::invalid("a grid needs at least 2 nodes per direction"));
        }
        if !(self.x_min < self.x_max && self.y_min < self.y_max) {
            return Err(Error::invalid("grid bounds must be strictly ordered"));
        }
        Ok(())
    }

    pub fn hx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.nx - 1) as f64
    }

    pub fn hy(&self) -> f64 {
        (self.y_max - self.y_min) / (self.ny - 1) as f64
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn node(&self, ix: usize, iy: usize) -> CPoint {
        let x = if ix + 1 == self.nx {
            self.x_max
        } else {
            self.x_min + ix as f64 * self.hx()
        };
        let y = if iy + 1 == self.ny {
            self.y_max
        } else {
            self.y_min + iy as f64 * self.hy()
        };
        Complex64::new(x, y)
    }

    pub fn nodes(&self) -> Vec<CPoint> {
        (0..self.ny)
            .flat_map(|iy| (0..self.nx).map(move |ix| (ix, iy)))
            .map(|(ix, iy)| self.node(ix, iy))
            .collect()
    }
}

/// A box split into `nx * ny` congruent closed cells, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl CellGrid {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64, nx: usize, ny: usize) -> Result<Self> {
        let g = CellGrid {
            x_min,
            x_max,
            y_min,
            y_max,
            nx,
            ny,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn square(half_width: f64, n: usize) -> Result<Self> {
        CellGrid::new(-half_width, half_width, -half_width, half_width, n, n)
    }

    pub fn validate(&self) -> Result<()> {
        if self.nx == 0 || self.ny == 0 {
            return Err(Error::invalid("a cell grid needs at least one cell"));
        }
        if !(self.x_min < self.x_max && self.y_min < self.y_max) {
            return Err(Error::invalid("cell grid bounds must be strictly ordered"));
        }
        Ok(())
    }

    pub fn hx(&self) -> f64 {
        (self.x_max - self.x_min) / self.nx as f64
    }

    pub fn hy(&self) -> f64 {
        (self.y_max - self.y_min) / self.ny as f64
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn cell(&self, ix: usize, iy: usize) -> Rect {
        let x0 = self.x_min + ix as f64 * self.hx();
        let y0 = self.y_min + iy as f64 * self.hy();
        Rect {
            x: Interval {
                lo: x0,
                hi: x0 + self.hx(),
            },
            y: Interval {
                lo: y0,
                hi: y0 + self.hy(),
            },
        }
    }

    /// `(ix, iy)` pairs in row-major order.
    pub fn indices(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.ny).flat_map(move |iy| (0..self.nx).map(move |ix| (ix, iy)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ContourKind {
    Circle { center: CPoint, radius: f64 },
    Rectangle { rect: Rect },
}

/// Positively oriented closed contour with trapezoid weights for `∮ · dζ`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureContour {
    nodes: Vec<CPoint>,
    weights: Vec<Complex64>,
    kind: ContourKind,
    spacing: f64,
}

pub const MIN_CIRCLE_NODES: usize = 16;
const CLOSURE_TOL: f64 = 1e-12;
const CIRCLE_WINDING_TOL: f64 = 1e-10;
const RECT_WINDING_TOL: f64 = 1e-6;

impl QuadratureContour {
    pub fn nodes(&self) -> &[CPoint] {
        &self.nodes
    }

    pub fn weights(&self) -> &[Complex64] {
        &self.weights
    }

    pub fn kind(&self) -> ContourKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Largest distance between consecutive nodes.
    pub fn node_spacing(&self) -> f64 {
        self.spacing
    }

    /// Total arc length, `Σ |w_i|`.
    pub fn arc_length(&self) -> f64 {
        self.weights.iter().map(|w| w.norm()).sum()
    }

    /// `(1/2πi) Σ w_i g(ζ_i)`.
    pub fn integrate(&self, mut g: impl FnMut(CPoint) -> Complex64) -> Complex64 {
        let sum: Complex64 = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&z, &w)| w * g(z))
            .sum();
        sum / Complex64::new(0.0, 2.0 * PI)
    }

    /// Winding number about `c` by quadrature of `1/(ζ - c)`.
    pub fn winding_about(&self, c: CPoint) -> Complex64 {
        self.integrate(|z| 1.0 / (z - c))
    }

    /// Distance from `w` to the contour curve (exact for circles and rectangles).
    pub fn distance_to_curve(&self, w: CPoint) -> f64 {
        match self.kind {
            ContourKind::Circle { center, radius } => ((w - center).norm() - radius).abs(),
            ContourKind::Rectangle { rect } => {
                if rect.contains(w) {
                    (w.re - rect.x.lo)
                        .min(rect.x.hi - w.re)
                        .min(w.im - rect.y.lo)
                        .min(rect.y.hi - w.im)
                } else {
                    rect.distance(w)
                }
            }
        }
    }

    /// True when `w` lies in the open region bounded by the contour.
    pub fn encloses(&self, w: CPoint) -> bool {
        match self.kind {
            ContourKind::Circle { center, radius } => (w - center).norm() < radius,
            ContourKind::Rectangle { rect } => {
                rect.x.lo < w.re && w.re < rect.x.hi && rect.y.lo < w.im && w.im < rect.y.hi
            }
        }
    }

    fn check_closure(&self, scale: f64) -> Result<()> {
        let total: Complex64 = self.weights.iter().sum();
        if total.norm() > CLOSURE_TOL * scale.max(1.0) {
            return Err(Error::invalid(format!(
                "contour not closed: |Σ w| = {:e}",
                total.norm()
            )));
        }
        Ok(())
    }
}

/// Equispaced trapezoid contour on a circle.
pub fn circle_contour(center: CPoint, radius: f64, n: usize) -> Result<QuadratureContour> {
    ensure_finite(center)?;
    if n < MIN_CIRCLE_NODES {
        return Err(Error::invalid(format!(
            "circle contour needs at least {MIN_CIRCLE_NODES} nodes, got {n}"
        )));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::invalid(format!("radius {radius} must be > 0")));
    }
    let step = Complex64::new(0.0, 2.0 * PI / n as f64);
    let (nodes, weights) = (0..n)
        .map(|k| {
            let offset = Complex64::from_polar(radius, 2.0 * PI * k as f64 / n as f64);
            (center + offset, step * offset)
        })
        .unzip();
    let contour = QuadratureContour {
        nodes,
        weights,
        kind: ContourKind::Circle { center, radius },
        spacing: 2.0 * radius * (PI / n as f64).sin(),
    };
    contour.check_closure(radius)?;
    let wind = contour.winding_about(center);
    if (wind - 1.0).norm() > CIRCLE_WINDING_TOL {
        return Err(Error::invalid(format!("winding check failed: {wind}")));
    }
    Ok(contour)
}

/// Composite trapezoid contour on the boundary of `rect`, counterclockwise.
///
/// Each edge carries `per_edge + 1` nodes; corners appear once per adjacent
/// edge with half weight.
pub fn rectangle_contour(rect: Rect, per_edge: usize) -> Result<QuadratureContour> {
    if rect.x.width() <= 0.0 || rect.y.width() <= 0.0 {
        return Err(Error::invalid("rectangle contour needs positive width and height"));
    }
    if per_edge == 0 {
        return Err(Error::invalid("per_edge must be positive"));
    }
    let c = rect.corners();
    let mut nodes = Vec::with_capacity(4 * (per_edge + 1));
    let mut weights = Vec::with_capacity(4 * (per_edge + 1));
    let mut spacing: f64 = 0.0;
    for e in 0..4 {
        let (a, b) = (c[e], c[(e + 1) % 4]);
        let h = (b - a) / per_edge as f64;
        spacing = spacing.max(h.norm());
        for k in 0..=per_edge {
            let node = if k == per_edge { b } else { a + h * k as f64 };
            let scale = if k == 0 || k == per_edge { 0.5 } else { 1.0 };
            nodes.push(node);
            weights.push(h * scale);
        }
    }
    let contour = QuadratureContour {
        nodes,
        weights,
        kind: ContourKind::Rectangle { rect },
        spacing,
    };
    contour.check_closure(rect.x.width() + rect.y.width())?;
    let wind = contour.winding_about(rect.center());
    if (wind - 1.0).norm() > RECT_WINDING_TOL {
        return Err(Error::invalid(format!(
            "winding check failed with {per_edge} nodes per edge: {wind}"
        )));
    }
    Ok(contour)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> CPoint {
        Complex64::new(re, im)
    }

    #[test]
    fn square_domain_membership_and_distance() {
        let u = build_square_domain();
        assert!(u.contains(c(0.0, 0.0)));
        assert!(u.contains(c(0.99, 0.99)));
        assert!(!u.contains(c(1.01, 0.0)));
        assert_eq!(u.distance(c(2.0, 0.0)), 1.0);
    }

    #[test]
    fn segment_sampling_includes_endpoints() {
        let r = CompactRegion::new(vec![], vec![Segment::horizontal(0.0, -1.0, 1.0).unwrap()])
            .unwrap();
        let pts = sample_region(&r, 1.0).unwrap();
        assert_eq!(pts, vec![c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn coarse_rect_sampling_is_corners() {
        let r = CompactRegion::from_rect(Rect::new(0.0, 1.0, 0.0, 1.0).unwrap());
        let pts = sample_region(&r, 2.0).unwrap();
        assert_eq!(pts.len(), 4);
        for corner in [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0), c(1.0, 1.0)] {
            assert!(pts.contains(&corner));
        }
    }

    #[test]
    fn sampling_rejects_bad_spacing() {
        let u = build_square_domain();
        assert!(sample_region(&u, 0.0).is_err());
        assert!(sample_region(&u, -1.0).is_err());
        assert!(sample_region(&u, f64::NAN).is_err());
    }

    #[test]
    fn interval_rejects_reversed_bounds() {
        assert!(Interval::new(1.0, 0.0).is_err());
        assert!(CompactRegion::new(vec![], vec![]).is_err());
    }

    #[test]
    fn circle_contour_invariants() {
        let k = circle_contour(c(0.0, 0.0), 1.0, 64).unwrap();
        let sum: Complex64 = k.weights().iter().sum();
        assert!(sum.norm() <= 1e-12);
        assert!((k.winding_about(c(0.0, 0.0)) - 1.0).norm() <= 1e-12);
        assert!(circle_contour(c(0.0, 0.0), 1.0, 15).is_err());
        assert!(circle_contour(c(0.0, 0.0), 0.0, 64).is_err());
    }

    #[test]
    fn circle_contour_reproduces_identity() {
        let k = circle_contour(c(0.5, 0.0), 0.25, 128).unwrap();
        let w = c(0.5, 0.0);
        let v = k.integrate(|z| z / (z - w));
        assert_abs_diff_eq!(v.re, 0.5, epsilon = 1e-10);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-10);
    }

    #[test]
    fn rectangle_contour_winding() {
        let rect = Rect::new(-1.0, 1.0, -0.5, 0.5).unwrap();
        let k = rectangle_contour(rect, 2000).unwrap();
        assert!((k.winding_about(c(0.0, 0.0)) - 1.0).norm() <= 1e-6);
        assert_abs_diff_eq!(k.arc_length(), 6.0, epsilon = 1e-12);
        assert!(rectangle_contour(rect, 4).is_err());
    }

    #[test]
    fn region_json_shape() {
        let r = CompactRegion::new(
            vec![Rect::new(0.0, 1.0, 2.0, 3.0).unwrap()],
            vec![Segment::vertical(0.0, -1.0, 1.0).unwrap()],
        )
        .unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(
            s,
            r#"{"rects":[{"x":[0.0,1.0],"y":[2.0,3.0]}],"segments":[{"axis":"im","offset":0.0,"extent":[-1.0,1.0]}]}"#
        );
        let back: CompactRegion = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        assert!(serde_json::from_str::<CompactRegion>(r#"{"rects":[],"segments":[]}"#).is_err());
        assert!(serde_json::from_str::<CompactRegion>(r#"{"rects":[{"x":[1,0],"y":[0,1]}]}"#).is_err());
        assert!(serde_json::from_str::<CompactRegion>(r#"{"rect":[]}"#).is_err());
    }

    #[test]
    fn quarter_turn_symmetry() {
        let cross = CompactRegion::new(
            vec![],
            vec![
                Segment::horizontal(0.0, -0.5, 0.5).unwrap(),
                Segment::vertical(0.0, -0.5, 0.5).unwrap(),
            ],
        )
        .unwrap();
        assert!(cross.is_quarter_turn_invariant(1e-12));
        let lopsided = CompactRegion::from_rect(Rect::new(0.0, 1.0, 0.0, 0.5).unwrap());
        assert!(!lopsided.is_quarter_turn_invariant(1e-12));
    }

    #[test]
    fn region_distance_is_exact() {
        let a = CompactRegion::from_rect(Rect::new(0.0, 1.0, 0.0, 1.0).unwrap());
        let b = CompactRegion::new(vec![], vec![Segment::vertical(3.0, 5.0, 6.0).unwrap()]).unwrap();
        assert_abs_diff_eq!(a.distance_to_region(&b), 2.0_f64.hypot(4.0), epsilon = 1e-15);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn region() -> impl Strategy<Value = CompactRegion> {
            let rect = (-2.0..2.0f64, 0.0..1.0f64, -2.0..2.0f64, 0.0..1.0f64)
                .prop_map(|(x, w, y, h)| Rect::new(x, x + w, y, y + h).unwrap());
            let seg = (any::<bool>(), -2.0..2.0f64, -2.0..2.0f64, 0.0..1.5f64).prop_map(
                |(horiz, off, lo, len)| {
                    if horiz {
                        Segment::horizontal(off, lo, lo + len).unwrap()
                    } else {
                        Segment::vertical(off, lo, lo + len).unwrap()
                    }
                },
            );
            (prop::collection::vec(rect, 0..3), prop::collection::vec(seg, 1..3))
                .prop_map(|(r, s)| CompactRegion::new(r, s).unwrap())
        }

        proptest! {
            #[test]
            fn distance_zero_iff_contained(r in region(), x in -3.0..3.0f64, y in -3.0..3.0f64) {
                let p = Complex64::new(x, y);
                prop_assert_eq!(r.contains(p), r.distance(p) == 0.0);
            }

            #[test]
            fn samples_lie_in_region_and_are_deterministic(r in region(), h in 0.05..0.7f64) {
                let a = sample_region(&r, h).unwrap();
                let b = sample_region(&r, h).unwrap();
                prop_assert_eq!(&a, &b);
                for p in &a {
                    prop_assert!(r.contains(*p), "{} escaped", p);
                }
                for s in r.segments() {
                    for e in s.endpoints() {
                        prop_assert!(a.contains(&e));
                    }
                }
            }
        }
    }
}
