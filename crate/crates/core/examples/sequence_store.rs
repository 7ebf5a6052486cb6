//! Saves a short two-level sequence, reloads it and writes its holomorphy map
//! as CSV and plain PGM next to a 17-digit JSON summary.
//!
//! Run with `cargo run --release --example sequence_store -- [dir]`.

use std::path::PathBuf;

use holimit::export::{write_json, write_map};
use holimit::geometry::CellGrid;
use holimit::osgood::{classify_holomorphy, ClassifierParams};
use holimit::runge::store::{load_sequence, save_sequence, Manifest};
use holimit::runge::{build_example_sequence_best_effort, FitOptions};

fn main() -> holimit::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("holimit-store"));
    let built = build_example_sequence_best_effort(2, 32, &FitOptions::default())?;
    save_sequence(&built, &dir.join("sequence"))?;
    let loaded = load_sequence(&dir.join("sequence"))?;
    assert_eq!(loaded, built);
    let params = ClassifierParams::new(CellGrid::square(0.9, 32)?, vec![(1, 2)]);
    let map = classify_holomorphy(&loaded.to_sequence()?, &params)?;
    write_map(&dir, &map)?;
    write_json(&dir.join("manifest-copy.json"), &Manifest::of(&loaded))?;
    println!("wrote {}", dir.display());
    Ok(())
}
