//! On-disk layout of a constructed sequence: one `f_<j>.json` per entry plus
//! `manifest.json`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::runge::{ExampleEntry, ExampleSequence};

pub const MANIFEST: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestEntry {
    pub j: usize,
    pub file: String,
    pub degree: usize,
    pub certified: bool,
    pub sup_error_s: f64,
    pub sup_error_t: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub j_max: usize,
    pub degree_cap: usize,
    /// Certificates are sampled suprema, not rigorous enclosures.
    pub certificates_heuristic: bool,
    pub entries: Vec<ManifestEntry>,
}

fn sup(entry: &ExampleEntry, id: &str) -> f64 {
    entry
        .polynomial
        .certificate(id)
        .map_or(f64::NAN, |c| c.measured_sup_error)
}

impl Manifest {
    pub fn of(seq: &ExampleSequence) -> Self {
        Manifest {
            j_max: seq.j_max,
            degree_cap: seq.degree_cap,
            certificates_heuristic: true,
            entries: seq
                .entries
                .iter()
                .map(|e| ManifestEntry {
                    j: e.j,
                    file: format!("f_{}.json", e.j),
                    degree: e.polynomial.degree(),
                    certified: e.certified,
                    sup_error_s: sup(e, "S"),
                    sup_error_t: sup(e, "T"),
                })
                .collect(),
        }
    }
}

/// Writes the sequence into `dir`, creating it if needed.
pub fn save_sequence(seq: &ExampleSequence, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    let manifest = Manifest::of(seq);
    for (entry, meta) in seq.entries.iter().zip(&manifest.entries) {
        fs::write(dir.join(&meta.file), serde_json::to_vec(entry)?)?;
    }
    fs::write(dir.join(MANIFEST), serde_json::to_vec_pretty(&manifest)?)?;
    Ok(())
}

/// Reads a sequence written by [`save_sequence`].
pub fn load_sequence(dir: &Path) -> Result<ExampleSequence> {
    let manifest_path = dir.join(MANIFEST);
    if !manifest_path.is_file() {
        return Err(Error::NotFound(format!("{}", manifest_path.display())));
    }
    let manifest: Manifest = serde_json::from_slice(&fs::read(&manifest_path)?)?;
    let mut entries = Vec::with_capacity(manifest.entries.len());
    for (k, meta) in manifest.entries.iter().enumerate() {
        if meta.j != k + 1 {
            return Err(Error::Config(format!("manifest entry {k} has j = {}", meta.j)));
        }
        let entry: ExampleEntry = serde_json::from_slice(&fs::read(dir.join(&meta.file))?)?;
        if entry.j != meta.j {
            return Err(Error::Config(format!("{} holds j = {}", meta.file, entry.j)));
        }
        entries.push(entry);
    }
    if entries.len() != manifest.j_max {
        return Err(Error::Config("manifest j_max does not match its entries".into()));
    }
    Ok(ExampleSequence {
        j_max: manifest.j_max,
        degree_cap: manifest.degree_cap,
        entries,
    })
}
