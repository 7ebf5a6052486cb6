//! Command-line front end: configuration, orchestration and report files.
//!
//! Exit codes: 0 all checks pass, 2 some check fails, 3 configuration or
//! input error, 4 approximation failure while building the example.

pub mod config;
pub mod report;
pub mod suites;

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::error::{Error, Result};
use crate::export::{write_json, write_map};
use crate::harmonic::{classify_harmonicity, poisson_family};
use crate::osgood::classify_holomorphy;
use crate::runge::store::save_sequence;
use crate::runge::{build_example_sequence_best_effort, FitOptions};
use crate::scv::product_geometric;
pub use config::ExperimentConfig;
use config::{Family, HarmonicFamily};
pub use report::{Check, RunReport};
use suites::{certified_check, classifier_params, example_map_checks, run_suite, Context};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILURE: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;
pub const EXIT_APPROXIMATION: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "holimit", version, about = "Pointwise limits of holomorphic sequences, checked numerically")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// JSON experiment configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    /// Overrides the configured random seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Comma-separated suite names for `verify`.
    #[arg(long, global = true, value_delimiter = ',')]
    pub suite: Option<Vec<String>>,
    /// Worker threads for cell and sequence work.
    #[arg(long, global = true)]
    pub parallel: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Build and save the two-level polynomial sequence.
    ExampleBuild,
    /// Holomorphy map of the example or a built-in family.
    Analyze,
    /// Run the verification suites.
    Verify,
    /// Two-variable suite plus a line map.
    Scv,
    /// Harmonic suite plus a harmonicity map.
    Harmonic,
    /// Real-analytic suite.
    Realanalytic,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::ExampleBuild => "example-build",
            Command::Analyze => "analyze",
            Command::Verify => "verify",
            Command::Scv => "scv",
            Command::Harmonic => "harmonic",
            Command::Realanalytic => "realanalytic",
        }
    }
}

/// Config file plus flag overrides, validated.
pub fn resolve_config(cli: &Cli) -> Result<ExperimentConfig> {
    let mut cfg = match &cli.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(s) = &cli.suite {
        cfg.verify.suites = s.iter().map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect();
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Outcome of a command: the report plus whether the example build failed.
pub struct Outcome {
    pub report: RunReport,
    pub approximation_failure: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.approximation_failure {
            EXIT_APPROXIMATION
        } else if self.report.passed() {
            EXIT_PASS
        } else {
            EXIT_CHECK_FAILURE
        }
    }
}

/// Runs one command and writes its files into `out`.
pub fn execute(command: Command, cfg: ExperimentConfig, out: &Path) -> Result<Outcome> {
    std::fs::create_dir_all(out)?;
    let ctx = Context::new(cfg.clone());
    let mut approximation_failure = false;
    let checks = match command {
        Command::ExampleBuild => {
            let e = &cfg.example;
            let seq = build_example_sequence_best_effort(e.j_max, e.degree_cap, &FitOptions::default())?;
            save_sequence(&seq, &out.join("sequence"))?;
            approximation_failure = !seq.all_certified();
            seq.entries
                .iter()
                .map(|entry| {
                    let p = &entry.polynomial;
                    let sup = |id: &str| p.certificate(id).map(|c| c.measured_sup_error);
                    Check::new(format!("certificate-j{}", entry.j), entry.certified)
                        .measure("degree", p.degree())
                        .measure("sup_error_s", sup("S"))
                        .measure("sup_error_t", sup("T"))
                        .threshold("eps", 1.0 / entry.j as f64)
                })
                .collect()
        }
        Command::Analyze => analyze(&ctx, out)?,
        Command::Verify => {
            let mut all = Vec::new();
            for s in &cfg.verify.suites {
                all.extend(run_suite(&ctx, s));
            }
            all
        }
        Command::Scv => {
            let s = &cfg.scv;
            if let Some(line) = s.lines.first() {
                let seq = product_geometric(s.j_max, s.radius)?;
                write_map(out, &suites::line_map(&seq, line, s.line_cells, &s.tail_pairs)?)?;
            }
            run_suite(&ctx, "scv")
        }
        Command::Harmonic => {
            let h = &cfg.harmonic;
            let (seq, params) = match h.family {
                HarmonicFamily::Poisson => {
                    let seq = poisson_family(h.poisson_j_max, 1.0, h.poisson_nodes)?;
                    let p = classifier_params(&h.map, seq.j_max())?;
                    (seq, p)
                }
                HarmonicFamily::Example => {
                    let ex = ctx.example()?;
                    (ex.to_sequence()?, classifier_params(&h.map, ex.j_max)?)
                }
            };
            write_map(out, &classify_harmonicity(&seq, &params)?)?;
            run_suite(&ctx, "harmonic")
        }
        Command::Realanalytic => run_suite(&ctx, "realanalytic"),
    };
    let report = RunReport {
        command: command.name().into(),
        config: cfg,
        checks,
    };
    write_json(&out.join("report.json"), &report)?;
    Ok(Outcome { report, approximation_failure })
}

fn analyze(ctx: &Context, out: &Path) -> Result<Vec<Check>> {
    let a = &ctx.config.analyze;
    let mut checks = Vec::new();
    let (seq, is_example) = match a.family {
        Family::Example => {
            let ex = ctx.example()?;
            checks.push(certified_check("analyze-input-certified", ex));
            (ex.to_sequence()?, true)
        }
        other => (suites::builtin_family(other, a.family_j_max)?, false),
    };
    let params = classifier_params(&a.map, seq.j_max())?;
    let map = classify_holomorphy(&seq, &params)?;
    write_map(out, &map)?;
    if is_example {
        checks.extend(example_map_checks("analyze", &map, Some(a.min_fraction)));
    } else {
        let frac = map.regular_fraction();
        checks.push(
            Check::new("analyze-fraction", frac >= a.min_fraction)
                .measure("fraction", frac)
                .measure("exceptional_cells", map.count(crate::osgood::Verdict::Exceptional))
                .threshold("fraction_min", a.min_fraction),
        );
    }
    Ok(checks)
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Approximation { .. } => EXIT_APPROXIMATION,
        _ => EXIT_CONFIG,
    }
}

/// Parses nothing; runs an already parsed command line and returns the exit
/// code. Diagnostics go to stderr.
pub fn run(cli: Cli) -> i32 {
    if let Some(n) = cli.parallel {
        if n == 0 {
            eprintln!("error: --parallel must be >= 1");
            return EXIT_CONFIG;
        }
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let cfg = match resolve_config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_CONFIG;
        }
    };
    let start = Instant::now();
    match execute(cli.command, cfg, &cli.out) {
        Ok(outcome) => {
            for c in &outcome.report.checks {
                eprintln!("{} {}", if c.pass { "PASS" } else { "FAIL" }, c.name);
            }
            eprintln!(
                "{}: {} checks, {} failed, {:.1} s",
                cli.command.name(),
                outcome.report.checks.len(),
                outcome.report.failures().count(),
                start.elapsed().as_secs_f64()
            );
            outcome.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}
