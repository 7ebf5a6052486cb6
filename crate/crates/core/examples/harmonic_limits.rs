//! Mean-value residuals, Poisson extension and a harmonicity map of Poisson
//! extensions of converging boundary data.
//!
//! Run with `cargo run --release --example harmonic_limits`.

use num_complex::Complex64;

use holimit::geometry::CellGrid;
use holimit::harmonic::{boundary_angles, classify_harmonicity, mean_value_residual, poisson_extend, poisson_family};
use holimit::osgood::ClassifierParams;

fn main() -> holimit::Result<()> {
    let o = Complex64::new(0.0, 0.0);
    let data: Vec<f64> = boundary_angles(256).map(|t| (2.0 * t).cos()).collect();
    let w = Complex64::new(0.5, 0.0);
    println!("Poisson extension of cos 2t at 0.5: {:.12}", poisson_extend(&data, o, 1.0, w)?);
    println!("mean-value residual of |z|^2, r = 0.5: {:.12}", mean_value_residual(|z| z.norm_sqr(), o, 0.5, 64)?);
    println!("mean-value residual of Re z^2, r = 0.5: {:.1e}", mean_value_residual(|z| (z * z).re, o, 0.5, 64)?);

    let seq = poisson_family(40, 1.0, 256)?;
    let params = ClassifierParams::new(CellGrid::square(0.9, 16)?, vec![(30, 40)]);
    println!("Poisson family: {}", classify_harmonicity(&seq, &params)?);
    Ok(())
}
