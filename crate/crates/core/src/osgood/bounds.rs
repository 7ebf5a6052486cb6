//! Hypothesis checks: uniform boundedness and the schlicht growth bound.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{CPoint, Domain, PlanarSet};
use crate::osgood::classify::{classify_holomorphy, ClassifierParams, Verdict};
use crate::sequence::FunctionSequence;

/// Outcome of [`check_uniform_bound`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniformBoundReport {
    pub bound: f64,
    /// `max_z |f_j(z)|` over the samples, per index `j = 1..=j_max`.
    pub sup_by_index: Vec<f64>,
    pub measured_sup: f64,
    pub hypothesis_holds: bool,
    /// Exceptional cells inside the region; only computed when the
    /// hypothesis holds.
    pub exceptional_cells: Option<usize>,
    pub classified_cells: Option<usize>,
}

impl UniformBoundReport {
    /// True when the hypothesis fails or the conclusion (no exceptional
    /// cells) holds.
    pub fn consistent(&self) -> bool {
        !self.hypothesis_holds || self.exceptional_cells == Some(0)
    }
}

/// Samples `max |f_j| <= bound` on `region`; when it holds, runs the
/// classifier on the cells inside the region.
pub fn check_uniform_bound<R: PlanarSet + Domain>(
    seq: &FunctionSequence,
    region: &R,
    bound: f64,
    spacing: f64,
    params: &ClassifierParams,
) -> Result<UniformBoundReport> {
    if !(bound > 0.0) {
        return Err(Error::invalid("the bound M must be > 0"));
    }
    let pts = region.sample(spacing)?;
    let sup_by_index: Vec<f64> = (1..=seq.j_max())
        .map(|j| {
            pts.iter()
                .map(|&z| seq.eval_unchecked(j, z).norm())
                .fold(0.0, f64::max)
        })
        .collect();
    let measured_sup = sup_by_index.iter().cloned().fold(0.0, f64::max);
    let hypothesis_holds = measured_sup <= bound;
    let (mut exceptional_cells, mut classified_cells) = (None, None);
    if hypothesis_holds {
        let map = classify_holomorphy(seq, params)?;
        let inside: Vec<_> = map
            .reports
            .iter()
            .filter(|r| r.verdict != Verdict::Outside && region.contains_rect(&map.cell_rect(r)))
            .collect();
        classified_cells = Some(inside.len());
        exceptional_cells = Some(inside.iter().filter(|r| r.verdict == Verdict::Exceptional).count());
    }
    Ok(UniformBoundReport {
        bound,
        sup_by_index,
        measured_sup,
        hypothesis_holds,
        exceptional_cells,
        classified_cells,
    })
}

/// Largest sampled value of `|f(z)| - |z| (1 - |z|)^{-2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthCheck {
    pub max_violation: f64,
    pub witness: CPoint,
}

impl GrowthCheck {
    pub fn holds(&self) -> bool {
        self.max_violation <= 0.0
    }
}

/// Growth bound of normalized univalent maps, sampled on circles of the
/// given radii at `angles` equispaced angles starting from 0.
pub fn schlicht_growth_check(
    f: impl Fn(CPoint) -> Complex64,
    radii: &[f64],
    angles: usize,
) -> Result<GrowthCheck> {
    if radii.is_empty() || radii.iter().any(|r| !(*r > 0.0 && *r < 1.0)) {
        return Err(Error::invalid("radii must lie in (0, 1)"));
    }
    if angles == 0 {
        return Err(Error::invalid("need at least one angle"));
    }
    let mut best = GrowthCheck {
        max_violation: f64::NEG_INFINITY,
        witness: Complex64::new(0.0, 0.0),
    };
    for &r in radii {
        let bound = r / ((1.0 - r) * (1.0 - r));
        for k in 0..angles {
            let z = Complex64::from_polar(r, 2.0 * std::f64::consts::PI * k as f64 / angles as f64);
            let v = f(z).norm() - bound;
            if v > best.max_violation {
                best = GrowthCheck { max_violation: v, witness: z };
            }
        }
    }
    Ok(best)
}
