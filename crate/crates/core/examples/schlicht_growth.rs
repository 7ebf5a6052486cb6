//! Growth bound `|f(z)| <= |z| / (1 - |z|)^2` for schlicht maps: the Koebe
//! function attains it on the positive axis.
//!
//! Run with `cargo run --release --example schlicht_growth`.

use holimit::osgood::schlicht_growth_check;
use holimit::sequence::koebe;

fn main() -> holimit::Result<()> {
    for r in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let k = schlicht_growth_check(koebe, &[r], 64)?;
        let id = schlicht_growth_check(|z| z, &[r], 64)?;
        println!(
            "r = {r}: Koebe gap {:.1e} at {}, identity slack {:.4}",
            k.max_violation, k.witness, -id.max_violation
        );
    }
    let rotated = schlicht_growth_check(|z| 2.0 * z, &[0.2], 16)?;
    println!("2z violates the bound by {:.4}", rotated.max_violation);
    Ok(())
}
