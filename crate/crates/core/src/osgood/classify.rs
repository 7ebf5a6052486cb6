//! Per-cell classification of a sequence's pointwise limit.
//!
//! Each cell gets two diagnostics: the tail uniform-Cauchy deviation
//! `max |f_l - f_m|` over the cell, and a reproduction residual of the last
//! member on the inscribed circle (Cauchy formula for holomorphy, mean value
//! for harmonicity).

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cauchy::cauchy_reproduce;
use crate::error::{Error, Result};
use crate::geometry::{circle_contour, CPoint, CellGrid, CompactRegion, PlanarSet, Rect};
use crate::sequence::FunctionSequence;

/// `max |f_l(z) - f_m(z)|` over samples of `region` at pitch `spacing`.
pub fn uniform_cauchy_deviation(
    seq: &FunctionSequence,
    region: &impl PlanarSet,
    l: usize,
    m: usize,
    spacing: f64,
) -> Result<f64> {
    seq.check_pairs(&[(l, m)])?;
    let mut worst: f64 = 0.0;
    for z in region.sample(spacing)? {
        worst = worst.max((seq.eval(l, z)? - seq.eval(m, z)?).norm());
    }
    Ok(worst)
}

/// The regularity property a map certifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Holomorphic,
    Harmonic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Both diagnostics below the acceptance tolerance.
    Regular,
    /// Some diagnostic above the rejection tolerance.
    Exceptional,
    Undetermined,
    /// Cell not contained in the sequence's domain; not classified.
    Outside,
}

impl Verdict {
    pub fn label(self, property: Property) -> &'static str {
        match (self, property) {
            (Verdict::Regular, Property::Holomorphic) => "holomorphic",
            (Verdict::Regular, Property::Harmonic) => "harmonic",
            (Verdict::Exceptional, _) => "exceptional",
            (Verdict::Undetermined, _) => "undetermined",
            (Verdict::Outside, _) => "outside",
        }
    }
}

/// Classifier settings shared by the holomorphic and harmonic maps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifierParams {
    pub cells: CellGrid,
    pub tail_pairs: Vec<(usize, usize)>,
    #[serde(default = "default_accept")]
    pub accept_tol: f64,
    #[serde(default = "default_reject")]
    pub reject_tol: f64,
    /// Nodes on each inscribed circle.
    #[serde(default = "default_contour_nodes")]
    pub contour_nodes: usize,
    /// Samples per cell side for the tail deviation.
    #[serde(default = "default_samples")]
    pub samples_per_side: usize,
    /// Circles smaller than this leave the cell undetermined.
    #[serde(default = "default_min_radius")]
    pub min_radius: f64,
}

fn default_accept() -> f64 {
    1e-3
}
fn default_reject() -> f64 {
    1e-1
}
fn default_contour_nodes() -> usize {
    64
}
fn default_samples() -> usize {
    5
}
fn default_min_radius() -> f64 {
    1e-6
}

impl ClassifierParams {
    pub fn new(cells: CellGrid, tail_pairs: Vec<(usize, usize)>) -> Self {
        ClassifierParams {
            cells,
            tail_pairs,
            accept_tol: default_accept(),
            reject_tol: default_reject(),
            contour_nodes: default_contour_nodes(),
            samples_per_side: default_samples(),
            min_radius: default_min_radius(),
        }
    }

    pub fn validate(&self, seq: &FunctionSequence) -> Result<()> {
        self.cells.validate()?;
        if self.tail_pairs.is_empty() {
            return Err(Error::invalid("at least one tail pair is required"));
        }
        seq.check_pairs(&self.tail_pairs)?;
        if !(self.accept_tol > 0.0 && self.accept_tol < self.reject_tol) {
            return Err(Error::invalid("need 0 < accept_tol < reject_tol"));
        }
        if self.samples_per_side < 2 {
            return Err(Error::invalid("samples_per_side must be at least 2"));
        }
        Ok(())
    }
}

/// Diagnostics of one cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellReport {
    pub ix: usize,
    pub iy: usize,
    pub center: CPoint,
    pub tail_deviation: f64,
    /// Reproduction residual of `f_{j_max}` on the inscribed circle.
    pub reproduction_residual: f64,
    /// Residual budget for the limit: reproduction residual plus twice the
    /// tail deviation (point value and circle average each move by at most
    /// the deviation).
    pub residual: f64,
    pub verdict: Verdict,
}

/// Classified cell grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellMap {
    pub property: Property,
    pub cells: CellGrid,
    pub accept_tol: f64,
    pub reject_tol: f64,
    pub tail_pairs: Vec<(usize, usize)>,
    /// Row-major over `cells`.
    pub reports: Vec<CellReport>,
}

/// Map produced by the holomorphy classifier.
pub type HolomorphyMap = CellMap;

impl CellMap {
    pub fn count(&self, verdict: Verdict) -> usize {
        self.reports.iter().filter(|r| r.verdict == verdict).count()
    }

    /// Cells inside the domain.
    pub fn classified(&self) -> usize {
        self.reports.len() - self.count(Verdict::Outside)
    }

    /// Fraction of classified cells with a regular verdict.
    pub fn regular_fraction(&self) -> f64 {
        let n = self.classified();
        if n == 0 {
            return 0.0;
        }
        self.count(Verdict::Regular) as f64 / n as f64
    }

    pub fn cell_rect(&self, r: &CellReport) -> Rect {
        self.cells.cell(r.ix, r.iy)
    }

    /// Exceptional cells that miss the one-cell dilation of both axes.
    pub fn exceptional_off_axes(&self) -> Vec<&CellReport> {
        let (hx, hy) = (self.cells.hx(), self.cells.hy());
        self.reports
            .iter()
            .filter(|r| r.verdict == Verdict::Exceptional)
            .filter(|r| {
                let c = self.cell_rect(r);
                let near_im_axis = c.x.lo() - hx <= 0.0 && 0.0 <= c.x.hi() + hx;
                let near_re_axis = c.y.lo() - hy <= 0.0 && 0.0 <= c.y.hi() + hy;
                !(near_im_axis || near_re_axis)
            })
            .collect()
    }
}

impl fmt::Display for CellMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}x{} cells: {} {}, {} exceptional, {} undetermined, {} outside",
            self.cells.nx,
            self.cells.ny,
            self.count(Verdict::Regular),
            Verdict::Regular.label(self.property),
            self.count(Verdict::Exceptional),
            self.count(Verdict::Undetermined),
            self.count(Verdict::Outside)
        )
    }
}

/// Residual of a reproduction test for `f_j` on the circle `(center, radius)`.
pub(crate) type ResidualFn<'a> =
    dyn Fn(&FunctionSequence, usize, CPoint, f64, usize) -> Result<f64> + Sync + 'a;

pub(crate) fn classify_cells(
    seq: &FunctionSequence,
    params: &ClassifierParams,
    property: Property,
    residual_fn: &ResidualFn<'_>,
) -> Result<CellMap> {
    params.validate(seq)?;
    let cells = params.cells;
    let indices: Vec<(usize, usize)> = cells.indices().collect();
    let reports = indices
        .par_iter()
        .map(|&(ix, iy)| classify_cell(seq, params, ix, iy, residual_fn))
        .collect::<Result<Vec<_>>>()?;
    Ok(CellMap {
        property,
        cells,
        accept_tol: params.accept_tol,
        reject_tol: params.reject_tol,
        tail_pairs: params.tail_pairs.clone(),
        reports,
    })
}

fn classify_cell(
    seq: &FunctionSequence,
    params: &ClassifierParams,
    ix: usize,
    iy: usize,
    residual_fn: &ResidualFn<'_>,
) -> Result<CellReport> {
    let rect = params.cells.cell(ix, iy);
    let center = rect.center();
    let mut report = CellReport {
        ix,
        iy,
        center,
        tail_deviation: f64::NAN,
        reproduction_residual: f64::NAN,
        residual: f64::NAN,
        verdict: Verdict::Outside,
    };
    if seq.domain().is_some_and(|d| !d.contains_rect(&rect)) {
        return Ok(report);
    }
    let region = CompactRegion::from_rect(rect);
    let spacing = rect.x.width().max(rect.y.width()) / (params.samples_per_side - 1) as f64;
    let mut tail: f64 = 0.0;
    for &(l, m) in &params.tail_pairs {
        tail = tail.max(uniform_cauchy_deviation(seq, &region, l, m, spacing)?);
    }
    report.tail_deviation = tail;
    let radius = 0.5 * rect.x.width().min(rect.y.width());
    if radius < params.min_radius {
        report.verdict = Verdict::Undetermined;
        return Ok(report);
    }
    let reproduction = residual_fn(seq, seq.j_max(), center, radius, params.contour_nodes)?;
    report.reproduction_residual = reproduction;
    report.residual = reproduction + 2.0 * tail;
    report.verdict = if tail <= params.accept_tol && report.residual <= params.accept_tol {
        Verdict::Regular
    } else if tail > params.reject_tol || report.residual > params.reject_tol {
        Verdict::Exceptional
    } else {
        Verdict::Undetermined
    };
    Ok(report)
}

/// `|f_j(c) - (1/2πi) ∮ f_j(ζ)/(ζ - c) dζ|` on the circle of the given radius.
pub(crate) fn cauchy_residual(
    seq: &FunctionSequence,
    j: usize,
    center: CPoint,
    radius: f64,
    nodes: usize,
) -> Result<f64> {
    let contour = circle_contour(center, radius, nodes)?;
    let values = contour
        .nodes()
        .iter()
        .map(|&z| seq.eval(j, z))
        .collect::<Result<Vec<_>>>()?;
    let reproduced = cauchy_reproduce(&values, &contour, center)?;
    Ok((seq.eval(j, center)? - reproduced).norm())
}

/// Classifies every cell for holomorphy of the pointwise limit.
pub fn classify_holomorphy(seq: &FunctionSequence, params: &ClassifierParams) -> Result<HolomorphyMap> {
    classify_cells(seq, params, Property::Holomorphic, &cauchy_residual)
}
