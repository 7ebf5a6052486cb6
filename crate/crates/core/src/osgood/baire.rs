//! Baire level sets `S_k = {z : |f_j(z)| <= k for all j}` on a node grid.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{CPoint, Grid};
use crate::sequence::FunctionSequence;

/// Default divergence threshold.
pub const DEFAULT_K_CAP: u64 = 1_000_000;

/// Per-node level `k(z) = ceil(max_j |f_j(z)|)`, or `None` above `k_cap`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaireDecomposition {
    pub grid: Grid,
    pub k_cap: u64,
    /// Row-major, aligned with `grid.nodes()`.
    pub k_of: Vec<Option<u64>>,
    pub max_modulus: Vec<f64>,
}

impl BaireDecomposition {
    /// Membership of every node in `S_k`.
    pub fn level_set(&self, k: u64) -> Vec<bool> {
        self.k_of.iter().map(|v| v.is_some_and(|kz| kz <= k)).collect()
    }

    pub fn divergent_count(&self) -> usize {
        self.k_of.iter().filter(|v| v.is_none()).count()
    }

    pub fn max_level(&self) -> Option<u64> {
        self.k_of.iter().flatten().copied().max()
    }

    /// Checks `S_k ⊆ S_{k+1}` for every level up to the largest observed one,
    /// and that the levels plus the divergent nodes cover the grid.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        if self.k_of.len() != self.grid.len() {
            return Err("level map does not match the grid".into());
        }
        let top = self.max_level().unwrap_or(0);
        let mut prev = self.level_set(0);
        for k in 1..=top.min(self.k_cap) {
            let next = self.level_set(k);
            if let Some(i) = prev.iter().zip(&next).position(|(a, b)| *a && !*b) {
                return Err(format!("node {i} is in S_{} but not in S_{k}", k - 1));
            }
            prev = next;
        }
        let covered = prev
            .iter()
            .zip(&self.k_of)
            .all(|(inside, k)| *inside || k.is_none());
        if !covered {
            return Err("levels and divergent nodes do not cover the grid".into());
        }
        Ok(())
    }
}

/// Computes the level of every grid node over `j = 1..=j_max`.
pub fn bounded_index_map(seq: &FunctionSequence, grid: &Grid, k_cap: u64) -> Result<BaireDecomposition> {
    grid.validate()?;
    let nodes = grid.nodes();
    if let Some(domain) = seq.domain() {
        if let Some(&z) = nodes.iter().find(|&&z| !domain.contains_point(z)) {
            return Err(Error::OutOfDomain(z));
        }
    }
    let max_modulus = nodes
        .par_iter()
        .map(|&z| max_modulus(seq, z))
        .collect::<Result<Vec<f64>>>()?;
    let k_of = max_modulus
        .iter()
        .map(|&m| (m <= k_cap as f64).then(|| m.ceil() as u64))
        .collect();
    let decomp = BaireDecomposition {
        grid: *grid,
        k_cap,
        k_of,
        max_modulus,
    };
    debug_assert!(decomp.check_invariants().is_ok());
    Ok(decomp)
}

fn max_modulus(seq: &FunctionSequence, z: CPoint) -> Result<f64> {
    let mut m: f64 = 0.0;
    for j in 1..=seq.j_max() {
        let v = seq.eval_unchecked(j, z).norm();
        if v.is_nan() {
            return Err(Error::Evaluation {
                index: j,
                point: z,
                reason: "NaN value".into(),
            });
        }
        m = m.max(v);
    }
    Ok(m)
}

/// A grid-aligned disc inside one Baire level set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DenseBall {
    pub center: Complex64,
    pub radius: f64,
    pub k: u64,
    /// Center node `(ix, iy)` and radius in node steps.
    pub center_index: (usize, usize),
    pub node_radius: usize,
}

/// Finds a disc of nodes (at least a 3×3 block) inside a single `S_k`.
///
/// Ties resolve by smallest `k`, then largest radius, then the smallest
/// center in `(re, im)` order.
pub fn find_dense_ball(decomp: &BaireDecomposition) -> Result<DenseBall> {
    let g = &decomp.grid;
    let (nx, ny) = (g.nx, g.ny);
    let level = |ix: usize, iy: usize| decomp.k_of[iy * nx + ix];
    // Disc of index radius rho around (cx, cy); None if any node diverges.
    let disc_level = |cx: usize, cy: usize, rho: usize| -> Option<u64> {
        let r2 = (rho * rho) as isize;
        let mut k = 0;
        for dy in -(rho as isize)..=rho as isize {
            for dx in -(rho as isize)..=rho as isize {
                if dx * dx + dy * dy <= r2 {
                    let ix = (cx as isize + dx) as usize;
                    let iy = (cy as isize + dy) as usize;
                    k = k.max(level(ix, iy)?);
                }
            }
        }
        Some(k)
    };
    let mut best: Option<(u64, usize, CPoint, (usize, usize))> = None;
    for cy in 0..ny {
        for cx in 0..nx {
            let room = cx.min(cy).min(nx - 1 - cx).min(ny - 1 - cy);
            // rho = 2 is the smallest radius whose disc holds a 3×3 block.
            for rho in 2..=room {
                let Some(k) = disc_level(cx, cy, rho) else { break };
                let center = g.node(cx, cy);
                let better = match &best {
                    None => true,
                    Some((bk, brho, bc, _)) => {
                        (k, std::cmp::Reverse(rho)) < (*bk, std::cmp::Reverse(*brho))
                            || (k == *bk
                                && rho == *brho
                                && (center.re, center.im) < (bc.re, bc.im))
                    }
                };
                if better {
                    best = Some((k, rho, center, (cx, cy)));
                }
            }
        }
    }
    let (k, rho, center, idx) =
        best.ok_or_else(|| Error::NotFound("no disc of nodes lies in a single level set".into()))?;
    Ok(DenseBall {
        center,
        radius: rho as f64 * g.hx().min(g.hy()),
        k,
        center_index: idx,
        node_radius: rho,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::{constant, index_valued};

    #[test]
    fn constant_levels() {
        let seq = constant(Complex64::new(3.0, 0.0), 5).unwrap();
        let g = Grid::square(1.0, 9).unwrap();
        let d = bounded_index_map(&seq, &g, 10).unwrap();
        assert!(d.k_of.iter().all(|k| *k == Some(3)));
        assert!(d.check_invariants().is_ok());
    }

    #[test]
    fn unbounded_nodes_are_flagged() {
        let seq = index_valued(8).unwrap();
        let g = Grid::square(1.0, 9).unwrap();
        let d = bounded_index_map(&seq, &g, 5).unwrap();
        assert_eq!(d.divergent_count(), g.len());
        assert!(matches!(find_dense_ball(&d), Err(Error::NotFound(_))));
    }

    #[test]
    fn zero_sequence_gives_the_whole_grid_disc() {
        let seq = constant(Complex64::new(0.0, 0.0), 3).unwrap();
        let g = Grid::square(1.0, 11).unwrap();
        let d = bounded_index_map(&seq, &g, 10).unwrap();
        let ball = find_dense_ball(&d).unwrap();
        assert_eq!(ball.k, 0);
        assert_eq!(ball.node_radius, 5);
        assert!(ball.center.norm() < 1e-15);
        assert!((ball.radius - 1.0).abs() < 1e-12);
    }

    #[test]
    fn smallest_level_wins() {
        // |f| = 5 on the left half, 1 on the right half.
        let seq = FunctionSequence::new(2, "step", |_, z| {
            Complex64::new(if z.re < 0.0 { 5.0 } else { 1.0 }, 0.0)
        })
        .unwrap();
        let g = Grid::square(1.0, 21).unwrap();
        let d = bounded_index_map(&seq, &g, 10).unwrap();
        let ball = find_dense_ball(&d).unwrap();
        assert_eq!(ball.k, 1);
        assert!(ball.center.re - ball.radius >= -1e-12);
    }
}
