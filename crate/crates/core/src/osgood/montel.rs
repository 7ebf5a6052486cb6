//! Greedy diagonal subsequences with shrinking tail diameters.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::CPoint;
use crate::sequence::FunctionSequence;

/// Minimum tail length behind each selected index, so that `j_max` alone
/// never counts as a converged tail.
pub const DEFAULT_MIN_TAIL: usize = 3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagonalSubsequence {
    /// Strictly increasing selected indices, one per satisfied level.
    pub indices: Vec<usize>,
    /// Tail diameter `max_{j <= l, m <= j_max} |f_l - f_m|` at each selected index.
    pub deviations: Vec<f64>,
    pub tolerances: Vec<f64>,
    /// True when `j_max` ran out before every level was satisfied.
    pub truncated: bool,
}

/// For level `r`, selects the smallest index `j_r > j_{r-1}` whose tail
/// `j_r..=j_max` (at least `min_tail` members) has diameter at most
/// `tolerances[r]` on `samples[r]`.
pub fn montel_diagonal(
    seq: &FunctionSequence,
    samples: &[Vec<CPoint>],
    tolerances: &[f64],
    min_tail: usize,
) -> Result<DiagonalSubsequence> {
    if samples.len() != tolerances.len() || samples.is_empty() {
        return Err(Error::invalid("need one sample list per tolerance"));
    }
    if tolerances.iter().any(|t| !(*t > 0.0)) || tolerances.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::invalid("tolerances must be positive and strictly decreasing"));
    }
    for pair in samples.windows(2) {
        let bigger: HashSet<(u64, u64)> =
            pair[1].iter().map(|z| (z.re.to_bits(), z.im.to_bits())).collect();
        if !pair[0].iter().all(|z| bigger.contains(&(z.re.to_bits(), z.im.to_bits()))) {
            return Err(Error::invalid("sample lists must be nested"));
        }
    }
    let j_max = seq.j_max();
    let min_tail = min_tail.max(1);
    let mut out = DiagonalSubsequence {
        indices: Vec::new(),
        deviations: Vec::new(),
        tolerances: tolerances.to_vec(),
        truncated: false,
    };
    let mut prev = 0;
    for (pts, &tol) in samples.iter().zip(tolerances) {
        let diam = tail_diameters(seq, pts)?;
        let last_start = (j_max + 1).saturating_sub(min_tail);
        let pick = (prev + 1..=last_start).find(|&j| diam[j] <= tol);
        match pick {
            Some(j) => {
                out.indices.push(j);
                out.deviations.push(diam[j]);
                prev = j;
            }
            None => {
                out.truncated = true;
                break;
            }
        }
    }
    Ok(out)
}

/// `diam[j] = max over samples and j <= l, m <= j_max of |f_l - f_m|`.
fn tail_diameters(seq: &FunctionSequence, pts: &[CPoint]) -> Result<Vec<f64>> {
    let j_max = seq.j_max();
    let mut diam = vec![0.0f64; j_max + 2];
    for &z in pts {
        let vals = (1..=j_max).map(|j| seq.eval(j, z)).collect::<Result<Vec<_>>>()?;
        // Growing the tail from the back adds one member at a time.
        let mut running: f64 = 0.0;
        for j in (1..=j_max).rev() {
            let v = vals[j - 1];
            for w in &vals[j..] {
                running = running.max((v - w).norm());
            }
            diam[j] = diam[j].max(running);
        }
    }
    Ok(diam)
}
