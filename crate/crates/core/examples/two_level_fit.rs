//! Builds the two-level polynomial sequence and prints its certificates.
//!
//! Run with `cargo run --release --example two_level_fit -- [j_max] [degree_cap]`.

use std::time::Instant;

use holimit::runge::{build_example_sequence_best_effort, FitOptions};

fn main() -> holimit::Result<()> {
    let mut args = std::env::args().skip(1);
    let j_max: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(6);
    let cap: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(160);
    let start = Instant::now();
    let seq = build_example_sequence_best_effort(j_max, cap, &FitOptions::default())?;
    println!("built j = 1..{j_max} (cap {cap}) in {:.2?}", start.elapsed());
    println!("{:>3} {:>7} {:>10} {:>12} {:>12} {:>10}", "j", "degree", "1/j", "sup|f-1| S", "sup|f| T", "certified");
    for e in &seq.entries {
        let p = &e.polynomial;
        let err = |id: &str| p.certificate(id).map_or(f64::NAN, |c| c.measured_sup_error);
        println!(
            "{:>3} {:>7} {:>10.6} {:>12.6} {:>12.6} {:>10}",
            e.j,
            p.degree(),
            1.0 / e.j as f64,
            err("S"),
            err("T"),
            e.certified
        );
    }
    Ok(())
}
