//! Experiment configuration: one JSON document with a block per command.
//! Every field has a default; unknown keys are rejected.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scv::{C2Point, ComplexLine, DiscSpec};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub example: ExampleConfig,
    pub analyze: AnalyzeConfig,
    pub verify: VerifyConfig,
    pub scv: ScvConfig,
    pub harmonic: HarmonicConfig,
    pub realanalytic: RealAnalyticConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            seed: 0,
            example: ExampleConfig::default(),
            analyze: AnalyzeConfig::default(),
            verify: VerifyConfig::default(),
            scv: ScvConfig::default(),
            harmonic: HarmonicConfig::default(),
            realanalytic: RealAnalyticConfig::default(),
        }
    }
}

/// The two-level polynomial sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExampleConfig {
    pub j_max: usize,
    pub degree_cap: usize,
    /// Load a saved sequence instead of building one.
    pub sequence_dir: Option<PathBuf>,
}

impl Default for ExampleConfig {
    fn default() -> Self {
        ExampleConfig {
            j_max: 6,
            degree_cap: 160,
            sequence_dir: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// The two-level polynomial sequence of the `example` block.
    Example,
    Constant,
    Koebe,
    Geometric,
}

/// Cell classifier settings shared by the map-producing commands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MapConfig {
    pub half_width: f64,
    pub cells: usize,
    /// Defaults to the last two or three members when absent.
    pub tail_pairs: Option<Vec<(usize, usize)>>,
    pub accept_tol: f64,
    pub reject_tol: f64,
    pub contour_nodes: usize,
}

impl Default for MapConfig {
    fn default() -> Self {
        MapConfig {
            half_width: 0.9,
            cells: 64,
            tail_pairs: None,
            accept_tol: 1e-3,
            reject_tol: 1e-1,
            contour_nodes: 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalyzeConfig {
    pub family: Family,
    pub map: MapConfig,
    pub min_fraction: f64,
    /// Members of the built-in families.
    pub family_j_max: usize,
}

impl Default for AnalyzeConfig {
    fn default() -> Self {
        AnalyzeConfig {
            family: Family::Example,
            map: MapConfig::default(),
            min_fraction: 0.9,
            family_j_max: 200,
        }
    }
}

pub const ALL_SUITES: [&str; 10] = [
    "cauchy",
    "remark-bound",
    "pompeiu",
    "dominated",
    "schlicht",
    "baire",
    "montel",
    "realanalytic",
    "scv",
    "harmonic",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyConfig {
    pub suites: Vec<String>,
    pub pompeiu_n: usize,
    pub cauchy_nodes: usize,
    pub baire_nodes: usize,
    pub remark: RemarkConfig,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            suites: ALL_SUITES.iter().map(|s| s.to_string()).collect(),
            pompeiu_n: 400,
            cauchy_nodes: 256,
            baire_nodes: 64,
            remark: RemarkConfig::default(),
        }
    }
}

/// Circle and compact set of the remark-bound suite; pairs are all `(l, m)`
/// with `first_index <= l < m <= j_max`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RemarkConfig {
    pub center: Complex64,
    pub radius: f64,
    pub delta: f64,
    pub eps_star: f64,
    pub contour_nodes: usize,
    pub first_index: usize,
    pub spacing: f64,
}

impl Default for RemarkConfig {
    fn default() -> Self {
        RemarkConfig {
            center: Complex64::new(0.0, 0.0),
            radius: 0.5,
            delta: 0.1,
            eps_star: 0.05,
            contour_nodes: 256,
            first_index: 4,
            spacing: 0.02,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScvConfig {
    pub radius: f64,
    pub j_max: usize,
    pub tail_pairs: Vec<(usize, usize)>,
    pub lines: Vec<ComplexLine>,
    pub line_cells: usize,
    pub discs: Vec<DiscSpec>,
    pub disc_tol: f64,
    pub torus_nodes: usize,
    pub probes: Vec<C2Point>,
    pub consistency_radii: Vec<f64>,
}

impl Default for ScvConfig {
    fn default() -> Self {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        ScvConfig {
            radius: 0.6,
            j_max: 60,
            tail_pairs: vec![(40, 60)],
            lines: vec![ComplexLine::horizontal(c(0.5, 0.0)).expect("static line")],
            line_cells: 8,
            discs: vec![
                DiscSpec::Coordinate { c: 0.3, second_axis: false },
                DiscSpec::Coordinate { c: 0.6, second_axis: false },
                DiscSpec::Coordinate { c: 0.6, second_axis: true },
                DiscSpec::Diagonal { c: 0.55 },
                DiscSpec::Random { degree: 3, scale: 0.5 },
            ],
            disc_tol: 1e-4,
            torus_nodes: 128,
            probes: vec![
                C2Point { z1: c(0.3, 0.0), z2: c(0.2, 0.0) },
                C2Point { z1: c(-0.1, 0.25), z2: c(0.1, -0.3) },
                C2Point { z1: c(0.0, -0.35), z2: c(-0.3, 0.1) },
            ],
            consistency_radii: vec![0.2, 0.4, 0.55],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HarmonicFamily {
    Example,
    Poisson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HarmonicConfig {
    /// Family mapped by the `harmonic` command.
    pub family: HarmonicFamily,
    pub map: MapConfig,
    pub poisson_nodes: usize,
    pub poisson_j_max: usize,
}

impl Default for HarmonicConfig {
    fn default() -> Self {
        HarmonicConfig {
            family: HarmonicFamily::Poisson,
            map: MapConfig::default(),
            poisson_nodes: 256,
            poisson_j_max: 40,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RealAnalyticConfig {
    pub centers: Vec<f64>,
    pub exp_j_max: usize,
    pub k: f64,
    pub r: f64,
    pub sqrt_j_values: Vec<usize>,
    pub tail: (usize, usize),
    pub taylor_order: usize,
    pub decay_tol: f64,
    pub variation_tol: f64,
    pub spectral_degree: usize,
    /// Largest index of the square-root family compared against closed forms.
    pub spectral_check_j_max: usize,
}

impl Default for RealAnalyticConfig {
    fn default() -> Self {
        RealAnalyticConfig {
            centers: vec![-0.5, 0.0, 0.5],
            exp_j_max: 24,
            k: 3.0,
            r: 1.0,
            sqrt_j_values: vec![1, 2, 4, 8, 16, 32, 64],
            tail: (16, 24),
            taylor_order: 4,
            decay_tol: 0.1,
            variation_tol: 1e-6,
            spectral_degree: 128,
            spectral_check_j_max: 16,
        }
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

fn pairs_ok(pairs: &[(usize, usize)], j_max: usize, what: &str) -> Result<()> {
    for &(l, m) in pairs {
        if l == 0 || m == 0 || l > j_max || m > j_max || l == m {
            return Err(bad(format!("{what}: pair ({l}, {m}) outside 1..={j_max} or degenerate")));
        }
    }
    Ok(())
}

impl MapConfig {
    fn validate(&self, what: &str) -> Result<()> {
        if !(self.half_width > 0.0 && self.half_width.is_finite()) {
            return Err(bad(format!("{what}.half_width must be > 0")));
        }
        if !(1..=1024).contains(&self.cells) {
            return Err(bad(format!("{what}.cells must lie in 1..=1024")));
        }
        if !(self.accept_tol > 0.0 && self.reject_tol >= self.accept_tol) {
            return Err(bad(format!("{what}: need 0 < accept_tol <= reject_tol")));
        }
        if self.contour_nodes < 32 {
            return Err(bad(format!("{what}.contour_nodes must be >= 32")));
        }
        Ok(())
    }
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| bad(format!("cannot read {}: {e}", path.display())))?;
        let cfg: ExperimentConfig =
            serde_json::from_str(&text).map_err(|e| bad(format!("{}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Range checks beyond what the types enforce.
    pub fn validate(&self) -> Result<()> {
        let e = &self.example;
        if !(1..=64).contains(&e.j_max) {
            return Err(bad("example.j_max must lie in 1..=64"));
        }
        if e.degree_cap > 1000 {
            return Err(bad("example.degree_cap must be <= 1000"));
        }
        self.analyze.map.validate("analyze.map")?;
        if !(0.0..=1.0).contains(&self.analyze.min_fraction) {
            return Err(bad("analyze.min_fraction must lie in [0, 1]"));
        }
        if self.analyze.family_j_max < 2 {
            return Err(bad("analyze.family_j_max must be >= 2"));
        }
        let v = &self.verify;
        if v.suites.is_empty() {
            return Err(bad("empty suite selection"));
        }
        if let Some(s) = v.suites.iter().find(|s| !ALL_SUITES.contains(&s.as_str())) {
            return Err(bad(format!("unknown suite {s:?}; known: {}", ALL_SUITES.join(", "))));
        }
        if !(2..=4000).contains(&v.pompeiu_n) {
            return Err(bad("verify.pompeiu_n must lie in 2..=4000"));
        }
        if v.cauchy_nodes < 16 || v.baire_nodes < 2 {
            return Err(bad("verify.cauchy_nodes must be >= 16 and verify.baire_nodes >= 2"));
        }
        let r = &v.remark;
        if !(r.radius > 0.0 && r.delta > 0.0 && r.delta < r.radius && r.eps_star > 0.0 && r.spacing > 0.0) {
            return Err(bad("verify.remark: need radius > delta > 0, eps_star > 0, spacing > 0"));
        }
        if r.first_index < 2 || r.contour_nodes < 16 {
            return Err(bad("verify.remark: need first_index >= 2 and contour_nodes >= 16"));
        }
        let s = &self.scv;
        if !(s.radius > 0.0 && s.radius < 1.0) {
            return Err(bad("scv.radius must lie in (0, 1)"));
        }
        if s.j_max < 2 {
            return Err(bad("scv.j_max must be >= 2"));
        }
        pairs_ok(&s.tail_pairs, s.j_max, "scv.tail_pairs")?;
        if s.tail_pairs.is_empty() || s.probes.is_empty() {
            return Err(bad("scv needs tail pairs and probes"));
        }
        if !(1..=256).contains(&s.line_cells) || s.torus_nodes < 16 || !(s.disc_tol > 0.0) {
            return Err(bad("scv: line_cells in 1..=256, torus_nodes >= 16, disc_tol > 0"));
        }
        let h = &self.harmonic;
        h.map.validate("harmonic.map")?;
        if h.poisson_nodes < 32 || h.poisson_j_max < 2 {
            return Err(bad("harmonic: poisson_nodes >= 32 and poisson_j_max >= 2"));
        }
        let ra = &self.realanalytic;
        if ra.centers.is_empty() || ra.centers.iter().any(|c| !(c.abs() < 1.0)) {
            return Err(bad("realanalytic.centers must be nonempty and inside (-1, 1)"));
        }
        if !(ra.k > 0.0 && ra.r > 0.0 && ra.decay_tol > 0.0 && ra.variation_tol > 0.0) {
            return Err(bad("realanalytic: k, r, decay_tol and variation_tol must be > 0"));
        }
        if ra.exp_j_max < ra.tail.1 || ra.tail.0 == 0 || ra.tail.0 > ra.tail.1 {
            return Err(bad("realanalytic.tail must lie in 1..=exp_j_max"));
        }
        if ra.sqrt_j_values.is_empty() || ra.sqrt_j_values.contains(&0) {
            return Err(bad("realanalytic.sqrt_j_values must be positive"));
        }
        if ra.taylor_order > crate::realanalytic::MAX_ORDER || ra.spectral_degree < 8 || ra.spectral_check_j_max == 0 {
            return Err(bad("realanalytic: taylor_order <= 8, spectral_degree >= 8, spectral_check_j_max >= 1"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate_and_round_trip() {
        let cfg = ExperimentConfig::default();
        cfg.validate().unwrap();
        let text = serde_json::to_string(&cfg).unwrap();
        let back: ExperimentConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn unknown_keys_and_empty_suites_are_rejected() {
        assert!(serde_json::from_str::<ExperimentConfig>(r#"{"sead": 1}"#).is_err());
        assert!(serde_json::from_str::<ExperimentConfig>(r#"{"example": {"jmax": 1}}"#).is_err());
        let cfg: ExperimentConfig = serde_json::from_str(r#"{"verify": {"suites": []}}"#).unwrap();
        assert!(cfg.validate().is_err());
        let cfg: ExperimentConfig = serde_json::from_str(r#"{"verify": {"suites": ["nope"]}}"#).unwrap();
        assert!(cfg.validate().is_err());
    }
}
