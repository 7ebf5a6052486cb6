//! Two-variable tools on the bidisc: restriction to complex lines, analytic
//! discs, the iterated Cauchy integral and separate versus joint holomorphy.
//!
//! Run with `cargo run --release --example several_variables`.

use num_complex::Complex64;

use holimit::geometry::CellGrid;
use holimit::osgood::ClassifierParams;
use holimit::scv::{
    analyze_line, disc_uniform_convergence, hartogs_check, product_geometric, torus_reproduce, AnalyticDisc,
    C2Point, ComplexLine,
};

fn main() -> holimit::Result<()> {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let o = C2Point::new(c(0.0, 0.0), c(0.0, 0.0))?;
    let w = C2Point::new(c(0.5, 0.0), c(0.5, 0.0))?;
    let v = torus_reproduce(|p| 1.0 / (1.0 - p.z1 * p.z2), o, (0.6, 0.6), 128, w)?;
    println!("torus reproduction of 1/(1 - z1 z2) at (0.5, 0.5): {v}");

    let seq = product_geometric(60, 0.6)?;
    let line = ComplexLine::horizontal(c(0.5, 0.0))?;
    let params = ClassifierParams::new(CellGrid::square(0.55, 10)?, vec![(40, 60)]);
    println!("line z2 = 0.5: {}", analyze_line(&seq, &line, &params)?);

    let domain = seq.domain();
    for disc in [
        AnalyticDisc::coordinate(0.6, false, &domain)?,
        AnalyticDisc::diagonal(0.55, &domain)?,
        AnalyticDisc::random(7, 3, 0.5, o, &domain)?,
    ] {
        let r = disc_uniform_convergence(&seq, &disc, 1e-4, &[(40, 60)])?;
        println!("{}: deviation {:.2e}, pass {}", r.disc, r.deviation, r.pass);
    }

    let probes = [C2Point::new(c(0.3, 0.0), c(0.2, 0.0))?];
    let holo = hartogs_check(|p| p.z1 * p.z1 + p.z2.powu(3), o, (0.6, 0.6), 128, &probes)?;
    let re = hartogs_check(|p| c(p.z1.re, 0.0), o, (0.6, 0.6), 128, &probes)?;
    println!("z1^2 + z2^3: per-variable {:?}, joint {:.1e}", holo.per_variable, holo.joint);
    println!("Re z1: per-variable {:?}, joint {:.1e}", re.per_variable, re.joint);
    Ok(())
}
