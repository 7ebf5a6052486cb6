//! Classifies cells of the Koebe partial sums and of `1/(1 + z^2j)`, printing each map as text (`#` exceptional, `.` holomorphic,
//! `?` undetermined, blank outside the domain).
//!
//! Run with `cargo run --release --example holomorphy_map`.

use num_complex::Complex64;

use holimit::geometry::CellGrid;
use holimit::osgood::{classify_holomorphy, ClassifierParams, HolomorphyMap, Verdict};
use holimit::sequence::{koebe_partial_sums, FunctionSequence};

fn draw(map: &HolomorphyMap) {
    let nx = map.cells.nx;
    for iy in (0..map.cells.ny).rev() {
        let row: String = (0..nx)
            .map(|ix| match map.reports[iy * nx + ix].verdict {
                Verdict::Regular => '.',
                Verdict::Exceptional => '#',
                Verdict::Undetermined => '?',
                Verdict::Outside => ' ',
            })
            .collect();
        println!("  {row}");
    }
    println!("  {map}, holomorphic fraction {:.3}", map.regular_fraction());
}

fn main() -> holimit::Result<()> {
    let koebe = koebe_partial_sums(200, 0.8)?;
    let params = ClassifierParams::new(CellGrid::square(0.8, 24)?, vec![(150, 200)]);
    println!("Koebe partial sums on |z| <= 0.8:");
    draw(&classify_holomorphy(&koebe, &params)?);

    // Limit 1 inside the unit circle and 0 outside; the jump is the
    // exceptional set.
    let ring = FunctionSequence::new(40, "1/(1 + z^2j)", |j, z: Complex64| 1.0 / (1.0 + z.powu(2 * j as u32)))?;
    let params = ClassifierParams::new(CellGrid::square(1.5, 24)?, vec![(30, 40)]);
    println!("1/(1 + z^2j) on [-1.5, 1.5]^2:");
    draw(&classify_holomorphy(&ring, &params)?);
    Ok(())
}
