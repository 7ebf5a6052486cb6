//! Bounded-index level sets `S_k = {z : |f_j(z)| <= k for all j}` and the
//! dense ball the Baire argument extracts from them.
//!
//! Run with `cargo run --release --example baire_levels`.

use num_complex::Complex64;

use holimit::geometry::Grid;
use holimit::osgood::{bounded_index_map, find_dense_ball, DEFAULT_K_CAP};
use holimit::sequence::FunctionSequence;

fn main() -> holimit::Result<()> {
    // Bounded near the origin, unbounded in j outside the unit disc.
    let seq = FunctionSequence::new(12, "z^j + 1", |j, z: Complex64| z.powu(j as u32) + 1.0)?;
    let grid = Grid::square(1.5, 41)?;
    let decomp = bounded_index_map(&seq, &grid, DEFAULT_K_CAP)?;
    decomp.check_invariants().map_err(holimit::Error::Config)?;
    for k in 1..=decomp.max_level().unwrap_or(0).min(8) {
        let n = decomp.level_set(k).iter().filter(|b| **b).count();
        println!("S_{k}: {n} of {} nodes", grid.len());
    }
    println!("divergent nodes: {}", decomp.divergent_count());
    let ball = find_dense_ball(&decomp)?;
    println!("dense ball: center {}, radius {:.3}, level k = {}", ball.center, ball.radius, ball.k);
    Ok(())
}
