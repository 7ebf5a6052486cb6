//! Factorial derivative bounds and Taylor-coefficient limits for two real
//! families: exponential partial sums (analytic limit) and
//! `sqrt(x^2 + 1/j)` (limit `|x|`).
//!
//! Run with `cargo run --release --example real_analytic`.

use holimit::realanalytic::{
    check_factorial_bound, classify_analytic, derivative_table, exp_partial_sum, minimal_k, sqrt_shift,
    taylor_limit_coeffs, SpectralSettings,
};

fn main() -> holimit::Result<()> {
    let spectral = SpectralSettings::default();
    let centers = [-0.5, 0.0, 0.5];
    let exp = exp_partial_sum(24)?;
    let table = derivative_table(&exp, 24, &centers, 4, &spectral, true)?;
    let rep = check_factorial_bound(&table, 3.0, 1.0)?;
    println!("exp partial sums, K = 3, R = 1: worst ratio {:.3}, pass {}", rep.worst_ratio, rep.pass);
    let taylor = centers
        .iter()
        .map(|&x| taylor_limit_coeffs(&exp, x, 4, (16, 24), &spectral, 1e-6))
        .collect::<holimit::Result<Vec<_>>>()?;
    for (x, v) in centers.iter().zip(classify_analytic(&taylor, 0.1)) {
        println!("  x = {x:>4}: {v:?}");
    }

    for j in [4, 16, 64] {
        let t = derivative_table(&sqrt_shift(j)?, j, &centers, 2, &spectral, true)?;
        let (k, w) = minimal_k(&t, 1.0)?;
        println!("sqrt(x^2 + 1/j), J = {j:>2}: minimal K {k:.3} (sqrt J = {:.3}) at {w:?}", (j as f64).sqrt());
    }
    let sq = taylor_limit_coeffs(&sqrt_shift(12)?, 0.0, 4, (8, 12), &spectral, 1e-6)?;
    println!("sqrt family at 0: {:?}", classify_analytic(&[sq], 0.1)[0]);
    Ok(())
}
