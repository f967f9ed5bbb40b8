//! Command-line front end.
//!
//! Exit codes: `0` success (or a YES decision), `1` a NO decision, a failed
//! verification, or an inconclusive construction, `2` invalid input.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::Error;
use crate::graph::{format_digits, GraphKind, StarGraph};
use crate::oracle::{construct, verify_instance, OracleOptions};
use crate::roots::{classify, enumerate_delta_reps_cached};
use crate::solver::{decide, enumerate_dimensions, series_for};
use crate::tables::{regenerate, verify};
use crate::transition::{AlgebraCharacter, AlgebraDimension};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "dynkin-spectral",
    version,
    about = "Spectral problem on extended Dynkin graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether a tuple with the given character exists in dimension --dim.
    Decide {
        #[arg(long)]
        graph: String,
        /// Character JSON file (`-` for stdin).
        #[arg(long)]
        chi: PathBuf,
        /// Generalized dimension, e.g. "1,1,1,1;2".
        #[arg(long)]
        dim: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// List every admissible dimension with n_0 up to --max-n0.
    Enumerate {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        chi: PathBuf,
        #[arg(long)]
        max_n0: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Print the C-series of a vertex.
    Orbit {
        #[arg(long)]
        graph: String,
        /// Vertex label (0 is the center).
        #[arg(long)]
        vertex: usize,
        /// Also list the first S orbit elements d_0, …, d_{S-1}.
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// List the δ-series representatives with their classification.
    Roots {
        #[arg(long)]
        graph: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Regenerate the reference tables.
    Tables {
        #[arg(long)]
        graph: String,
    },
    /// Compare regenerated tables with the shipped fixtures (all graphs if --graph is omitted).
    Verify {
        #[arg(long)]
        graph: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Numerically construct a Hermitian tuple.
    Construct {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        chi: PathBuf,
        #[arg(long)]
        dim: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20_000)]
        max_iters: usize,
        #[arg(long, default_value_t = 8)]
        restarts: u64,
        #[arg(long, default_value_t = 1e-8)]
        sum_tol: f64,
        #[arg(long, default_value_t = 1e-8)]
        spec_tol: f64,
    },
}

/// Input problems; each has its own message.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed character JSON in {path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("character is for {found} but --graph is {expected}")]
    GraphMismatch { expected: GraphKind, found: GraphKind },
}

fn read_chi(path: &PathBuf, kind: GraphKind) -> Result<AlgebraCharacter, CliError> {
    let name = path.display().to_string();
    let text = if name == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|source| CliError::Io {
        path: name.clone(),
        source,
    })?;
    // Core validation errors (bad rationals, ordering) surface with their own message.
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: name.clone(),
        source,
    })?;
    if let Some(g) = value.get("graph").and_then(|g| g.as_str()) {
        let found: GraphKind = g.parse()?;
        if found != kind {
            return Err(CliError::GraphMismatch { expected: kind, found });
        }
    }
    let raw: RawCharacter = serde_json::from_value(value).map_err(|source| CliError::Json { path: name, source })?;
    let arms = raw
        .arms
        .iter()
        .map(|a| {
            a.iter()
                .map(|s| crate::rational::parse(s))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AlgebraCharacter::new(kind, arms, crate::rational::parse(&raw.gamma)?)?)
}

#[derive(serde::Deserialize)]
struct RawCharacter {
    arms: Vec<Vec<String>>,
    gamma: String,
}

fn graph(s: &str) -> Result<GraphKind, CliError> {
    Ok(s.parse()?)
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if code == EXIT_OK {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let io = |e: std::io::Error| CliError::Io {
        path: "<stdout>".into(),
        source: e,
    };
    match cmd {
        Command::Decide {
            graph: g,
            chi,
            dim,
            format,
        } => {
            let kind = graph(&g)?;
            let chi = read_chi(&chi, kind)?;
            let n = AlgebraDimension::parse(kind, &dim)?;
            let d = decide(&chi, &n)?;
            match format {
                Format::Json => emit(out, &d).map_err(io)?,
                Format::Text => {
                    let verdict = if d.is_yes() { "yes" } else { "no" };
                    writeln!(out, "{verdict} ({:?}): {}", d.mode, d.reason).map_err(io)?;
                    if let Some(w) = d.witness {
                        writeln!(out, "witness: t = {}, k = {}, τ = {}", w.t, w.k, w.tau).map_err(io)?;
                    }
                    for e in &d.evidence {
                        let mark = if e.holds { "ok  " } else { "FAIL" };
                        writeln!(out, "{mark} {}  ({} vs {})", e.inequality, e.lhs, e.rhs).map_err(io)?;
                    }
                }
            }
            Ok(if d.is_yes() { EXIT_OK } else { EXIT_NO })
        }
        Command::Enumerate {
            graph: g,
            chi,
            max_n0,
            format,
        } => {
            let kind = graph(&g)?;
            let chi = read_chi(&chi, kind)?;
            let list = enumerate_dimensions(&chi, max_n0);
            match format {
                Format::Json => emit(out, &list).map_err(io)?,
                Format::Text => {
                    for d in &list {
                        let w = d.witness.map_or_else(
                            || "hyperplane".to_string(),
                            |w| format!("t={} k={} τ={}", w.t, w.k, w.tau),
                        );
                        writeln!(out, "{}  {w}", d.dimension).map_err(io)?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Orbit {
            graph: g,
            vertex,
            steps,
            format,
        } => {
            let kind = graph(&g)?;
            let s = series_for(kind, vertex)?;
            let elements: Vec<String> = (0..steps.unwrap_or(0))
                .map(|k| format_digits(&s.orbit_element(k)))
                .collect();
            match format {
                Format::Json => {
                    let mut v = serde_json::to_value(s).expect("series serializes");
                    if steps.is_some() {
                        v["elements"] = json!(elements);
                    }
                    emit(out, &v).map_err(io)?;
                }
                Format::Text => {
                    writeln!(out, "C_{}: {}", s.vertex, s.digit_strings().join(", ")).map_err(io)?;
                    writeln!(
                        out,
                        "ε = {}, k_t = {}, first map {}c",
                        s.epsilon,
                        s.threshold,
                        s.start_parity.symbol()
                    )
                    .map_err(io)?;
                    for (k, e) in elements.iter().enumerate() {
                        writeln!(out, "d_{k} = {e}").map_err(io)?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Roots { graph: g, format } => {
            let kind = graph(&g)?;
            let sg = StarGraph::new(kind);
            let set = enumerate_delta_reps_cached(kind);
            let rows: Vec<_> = set.reps.iter().map(|v| classify(&sg, v)).collect();
            match format {
                Format::Json => emit(out, &json!({ "graph": kind, "count": rows.len(), "reps": rows })).map_err(io)?,
                Format::Text => {
                    writeln!(out, "{kind}: {} δ-series representatives", rows.len()).map_err(io)?;
                    writeln!(out, "{:<16} {:>3} {:>6} {:>8}", "root", "q", "defect", "regular").map_err(io)?;
                    for r in &rows {
                        writeln!(out, "{:<16} {:>3} {:>6} {:>8}", r.root, r.q, r.defect, r.is_regular).map_err(io)?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Tables { graph: g } => {
            let kind = graph(&g)?;
            write!(out, "{}", regenerate(kind)?).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Verify { graph: g, format } => {
            let kinds = match g {
                Some(g) => vec![graph(&g)?],
                None => GraphKind::ALL.to_vec(),
            };
            let reports = kinds.iter().map(|&k| verify(k)).collect::<Result<Vec<_>, _>>()?;
            match format {
                Format::Json => emit(out, &reports).map_err(io)?,
                Format::Text => {
                    for r in &reports {
                        write!(out, "{r}").map_err(io)?;
                    }
                }
            }
            Ok(if reports.iter().all(|r| r.passed()) {
                EXIT_OK
            } else {
                EXIT_NO
            })
        }
        Command::Construct {
            graph: g,
            chi,
            dim,
            seed,
            max_iters,
            restarts,
            sum_tol,
            spec_tol,
        } => {
            let kind = graph(&g)?;
            let chi = read_chi(&chi, kind)?;
            let n = AlgebraDimension::parse(kind, &dim)?;
            let opts = OracleOptions {
                seed,
                max_iters,
                restarts,
                sum_tol,
                spec_tol,
            };
            match construct(&chi, &n, &opts)? {
                Some(inst) => {
                    let report = verify_instance(&inst, &chi, &n, &opts)?;
                    emit(out, &inst).map_err(io)?;
                    let _ = writeln!(
                        err,
                        "seed {}, {} iterations, sum residual {:.3e}, spectrum deviation {:.3e}",
                        inst.seed, inst.iterations, report.sum_residual, report.spectrum
                    );
                    Ok(EXIT_OK)
                }
                None => {
                    writeln!(out, "inconclusive").map_err(io)?;
                    Ok(EXIT_NO)
                }
            }
        }
    }
}
