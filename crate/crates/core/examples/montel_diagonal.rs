//! Greedy diagonal subsequence whose tails shrink below a decreasing list of
//! tolerances on nested samples.
//!
//! Run with `cargo run --release --example montel_diagonal`.

use num_complex::Complex64;

use holimit::geometry::{Disc, PlanarSet};
use holimit::osgood::{montel_diagonal, DEFAULT_MIN_TAIL};
use holimit::sequence::geometric_partial_sums;

fn main() -> holimit::Result<()> {
    let seq = geometric_partial_sums(60)?;
    let pts = Disc::new(Complex64::new(0.0, 0.0), 0.5)?.sample(0.1)?;
    let tols = [1e-1, 1e-2, 1e-3, 1e-4, 1e-6];
    let d = montel_diagonal(&seq, &vec![pts; tols.len()], &tols, DEFAULT_MIN_TAIL)?;
    for ((j, dev), tol) in d.indices.iter().zip(&d.deviations).zip(&d.tolerances) {
        println!("j = {j:>2}: tail diameter {dev:.3e} <= {tol:.0e}");
    }
    Ok(())
}
