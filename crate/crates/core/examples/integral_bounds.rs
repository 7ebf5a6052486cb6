//! Contour and area integral tools: Cauchy reproduction, the Lusin-type
//! remark bound, Cauchy-Pompeiu reproduction with a smooth cutoff and the
//! dominated bound.
//!
//! Run with `cargo run --release --example integral_bounds`.

use num_complex::Complex64;

use holimit::cauchy::{
    cauchy_reproduce, dominated_bound, pompeiu_reproduce, verify_remark_bound, CutoffFunction, RemarkSetup,
};
use holimit::geometry::{circle_contour, Disc};
use holimit::sequence::geometric_partial_sums;

fn main() -> holimit::Result<()> {
    let o = Complex64::new(0.0, 0.0);
    let contour = circle_contour(o, 1.0, 256)?;
    let values: Vec<Complex64> = contour.nodes().iter().map(|&z| 1.0 / (z - 2.0)).collect();
    println!("Cauchy reproduction of 1/(z-2) at 0: {}", cauchy_reproduce(&values, &contour, o)?);

    let seq = geometric_partial_sums(40)?;
    let setup = RemarkSetup {
        center: o,
        radius: 0.8,
        contour_nodes: 128,
        delta: 0.2,
        eps_star: 1e-3,
        tail_start: 19,
        pairs: vec![(20, 30), (30, 40)],
        spacing: 0.05,
    };
    for r in verify_remark_bound(&seq, &setup)? {
        println!("pair {:?}: measured {:.3e} <= bound {:.3e}: {}", r.pair, r.measured_max, r.bound, r.holds());
    }

    let cut = CutoffFunction::new(o, 0.6, 0.8)?;
    let z = Complex64::new(0.2, 0.1);
    for n in [100, 200, 400, 800] {
        let err = (pompeiu_reproduce(|w| w * w, &cut, z, n)? - z * z).norm();
        println!("Pompeiu n = {n:>3}: error {err:.3e}");
    }
    let k = Disc::new(o, 0.3)?;
    println!("dominated bound with g = 1: {:.6}", dominated_bound(|_| 1.0, &cut, &k, 400)?);
    Ok(())
}
