//! Command-line front end. JSON goes to stdout, a short summary to stderr.
//!
//! Exit codes: 0 when every check passes, 1 on a verification failure,
//! 2 on usage, parse, or unknown-target errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::catalog::{self, Target};
use crate::error::{Error, Result};
use crate::poly::parse_rational;
use crate::ratmap::{PointOnVariety, VarietyRegistry};
use crate::sphere_maps::sphere_dim;
use crate::topo;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "regmaps", version, about = "Build, evaluate, verify and measure regular maps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Exact sample points for identity and membership checks.
    #[arg(long, global = true, default_value_t = 20)]
    pub trials: usize,
    /// Samples for denominator checks and Monte Carlo degrees.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub samples: usize,
    /// Also write the JSON output to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Registry file with custom varieties for map files.
    #[arg(long, global = true)]
    pub varieties: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit the map JSON of a target.
    Build { target: String },
    /// Evaluate a target exactly and in floating point.
    Eval {
        target: String,
        /// Comma-separated rational coordinates; defaults to the base point.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Run the generic and target-specific verification suites.
    Verify { target: String },
    /// Compose targets left to right as `t1 ∘ t2 ∘ ...`.
    Compose {
        #[arg(required = true, num_args = 2..)]
        targets: Vec<String>,
    },
    /// Winding number on S^1, Monte Carlo degree on S^n with n >= 2.
    Degree { target: String },
    /// Radon-Hurwitz number `a_p`, or the verdict for a pair `m k`.
    Rh { p: u64, k: Option<u64> },
}

struct Outcome {
    json: Value,
    summary: String,
    passed: bool,
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::UnknownTarget(_)
        | Error::Parse(_)
        | Error::InvalidArgument(_)
        | Error::InvalidJMapInput(_)
        | Error::Json(_)
        | Error::Io(_)
        | Error::NotOnVariety { .. }
        | Error::VarietyMismatch { .. }
        | Error::RegistryMismatch
        | Error::UnknownVariable(_)
        | Error::MissingAssignment(_)
        | Error::OverlappingBlocks(_)
        | Error::NoSampler(_) => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}

fn load_varieties(path: &Option<PathBuf>) -> Result<VarietyRegistry> {
    match path {
        Some(p) => VarietyRegistry::from_json(&serde_json::from_str(&std::fs::read_to_string(p)?)?),
        None => Ok(VarietyRegistry::new()),
    }
}

fn parse_point(s: &str) -> Result<Vec<crate::poly::Rational>> {
    s.split(',').map(|c| parse_rational(c.trim())).collect()
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let reg = load_varieties(&cli.varieties)?;
    let resolve = |t: &str| catalog::resolve(t, &reg);
    match &cli.command {
        Command::Build { target } => {
            let t = resolve(target)?;
            Ok(Outcome {
                summary: format!("built {} : {} -> {}", target, t.map.domain().name(), t.map.codomain().name()),
                json: t.to_json(),
                passed: true,
            })
        }
        Command::Eval { target, point } => {
            let t = resolve(target)?;
            let dom = t.map.domain();
            let p = match point {
                Some(s) => PointOnVariety::new(dom, parse_point(s)?)?,
                None => PointOnVariety::base_point(dom)?,
            };
            let image = t.map.evaluate(&p)?;
            Ok(Outcome {
                summary: format!("{} maps ({}) to ({})", target, p.to_strings().join(", "), image.to_strings().join(", ")),
                json: json!({
                    "target": target,
                    "point": p.to_strings(),
                    "exact": image.to_strings(),
                    "float": image.to_f64(),
                }),
                passed: true,
            })
        }
        Command::Verify { target } => {
            let t = resolve(target)?;
            let reports = catalog::verify(&t, cli.trials, cli.samples, cli.seed)?;
            let passed = reports.iter().all(|r| r.passed);
            let summary = reports
                .iter()
                .map(|r| format!("{} {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.check, r.detail))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Outcome {
                json: json!({
                    "target": target,
                    "seed": cli.seed,
                    "trials": cli.trials,
                    "samples": cli.samples,
                    "passed": passed,
                    "reports": reports,
                }),
                summary,
                passed,
            })
        }
        Command::Compose { targets } => {
            let maps = targets.iter().map(|t| resolve(t)).collect::<Result<Vec<Target>>>()?;
            let mut acc = maps.last().expect("at least two targets").map.clone();
            for t in maps.iter().rev().skip(1) {
                acc = t.map.compose(&acc)?;
            }
            Ok(Outcome {
                summary: format!("composed {} : {} -> {}", targets.join(" o "), acc.domain().name(), acc.codomain().name()),
                json: acc.to_json(),
                passed: true,
            })
        }
        Command::Degree { target } => {
            let t = resolve(target)?;
            if sphere_dim(t.map.domain()) == Some(1) {
                let w = topo::winding(&t.map)?;
                Ok(Outcome {
                    json: json!({ "target": target, "method": "winding", "rounded": w }),
                    summary: format!("winding number of {target}: {w}"),
                    passed: true,
                })
            } else {
                let d = topo::degree_mc(&t.map, cli.samples, cli.seed)?;
                let mut json = serde_json::to_value(&d)?;
                json["target"] = json!(target);
                json["method"] = json!("monte_carlo");
                Ok(Outcome {
                    summary: format!(
                        "degree of {target}: {} (estimate {:.6} +/- {:.6}, {})",
                        d.rounded,
                        d.estimate,
                        d.half_width,
                        if d.conclusive { "conclusive" } else { "inconclusive" }
                    ),
                    json,
                    passed: d.conclusive,
                })
            }
        }
        Command::Rh { p, k } => match k {
            None => {
                let q = topo::radon_hurwitz(*p)?;
                Ok(Outcome {
                    summary: format!("a_{} = {}", q.p, q.a_p),
                    json: serde_json::to_value(&q)?,
                    passed: true,
                })
            }
            Some(k) => {
                let v = topo::check_codim_pair(*p, *k)?;
                Ok(Outcome {
                    summary: format!(
                        "k = {} {} -1 mod a_{} = {}",
                        v.k,
                        if v.holds { "is" } else { "is not" },
                        v.m + 2,
                        v.a_m_plus_2
                    ),
                    json: serde_json::to_value(&v)?,
                    passed: true,
                })
            }
        },
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let text = serde_json::to_string_pretty(&o.json).expect("JSON values serialize");
            let _ = writeln!(out, "{text}");
            let _ = writeln!(err, "{}", o.summary);
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, format!("{text}\n")) {
                    let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                    return EXIT_USAGE;
                }
            }
            if o.passed {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code_for(&e)
        }
    }
}
