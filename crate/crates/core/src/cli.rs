//! The `ndmm` command line.
//!
//! Exit codes are shared by every subcommand: 0 success, 1 evaluation or
//! validation failure, 2 bad usage, 66 input file unreadable, 74 output not
//! writable.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::document::{parse_problem, ProblemDocument};
use crate::engine::{evaluate, EvaluationConfig};
use crate::plot::{render, PlotData, PlotMode, PlotSpec};
use crate::report::{evaluation_json, evaluation_text, sensitivity_json, sensitivity_text};
use crate::sensitivity::k_sensitivity;
use crate::service::{shutdown_signal, ServeConfig, Server, DEFAULT_PORT};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NO_INPUT: i32 = 66;
pub const EXIT_IO: i32 = 74;

#[derive(Debug, Parser)]
#[command(name = "ndmm", version, about = "Decision matrix scoring with indeterminate ratings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Mode {
    Bands,
    Lines,
}

#[derive(Debug, clap::Args)]
pub struct Bounds {
    /// Lower substitution bound for I (default: file defaults, else 0)
    #[arg(long, allow_negative_numbers = true)]
    pub i_min: Option<f64>,
    /// Upper substitution bound for I (default: file defaults, else 1)
    #[arg(long, allow_negative_numbers = true)]
    pub i_max: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a problem file; prints one diagnostic per line on failure
    Validate { file: PathBuf },
    /// Score, de-neutrosophy and rank the alternatives
    Evaluate {
        file: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
        /// Risk parameter for crisp-vs-interval contentions
        #[arg(long, allow_negative_numbers = true)]
        k: Option<f64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Winner as a function of k
    Sensitivity {
        file: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Write an SVG chart of the scores
    Plot {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
        /// Used only to highlight the selected alternative
        #[arg(long, allow_negative_numbers = true)]
        k: Option<f64>,
        #[arg(long, value_enum, default_value = "bands")]
        mode: Mode,
    },
    /// Run the HTTP service
    Serve {
        #[arg(long, default_value_t = DEFAULT_PORT)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        /// Directory for persisted problems (one JSON file each)
        #[arg(long, env = "NDMM_DATA_DIR")]
        data_dir: Option<PathBuf>,
        /// Directory with the built web UI, served at /
        #[arg(long, env = "NDMM_STATIC_DIR")]
        static_dir: Option<PathBuf>,
    },
}

struct Failure {
    code: i32,
    lines: Vec<String>,
}

impl Failure {
    fn new(code: i32, line: impl Into<String>) -> Self {
        Failure { code, lines: vec![line.into()] }
    }
}

type CmdResult = Result<(), Failure>;

fn load(path: &Path, err: &mut dyn Write) -> Result<ProblemDocument, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_NO_INPUT, format!("cannot read {}: {e}", path.display())))?;
    let parsed = parse_problem(&text).map_err(|e| Failure {
        code: EXIT_FAILURE,
        lines: e.diagnostics().into_iter().map(|d| format!("{}: {d}", path.display())).collect(),
    })?;
    for w in &parsed.warnings {
        let _ = writeln!(err, "warning: {}: {w}", path.display());
    }
    Ok(parsed.document)
}

fn config(doc: &ProblemDocument, bounds: &Bounds, k: Option<f64>) -> Result<EvaluationConfig, Failure> {
    let base = doc.defaults.unwrap_or_default();
    let cfg = EvaluationConfig {
        i_min: bounds.i_min.unwrap_or(base.i_min),
        i_max: bounds.i_max.unwrap_or(base.i_max),
        k: k.unwrap_or(base.k),
    };
    cfg.check().map_err(|e| Failure::new(EXIT_USAGE, format!("error: {e}")))?;
    Ok(cfg)
}

fn engine_failure(e: impl std::fmt::Display) -> Failure {
    Failure::new(EXIT_FAILURE, format!("error: {e}"))
}

fn run_command(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Validate { file } => {
            let doc = load(&file, err)?;
            let _ = writeln!(
                out,
                "{}: ok ({} criteria, {} alternatives)",
                file.display(),
                doc.problem.criterion_count(),
                doc.problem.alternative_count()
            );
        }
        Command::Evaluate { file, bounds, k, format } => {
            let doc = load(&file, err)?;
            let cfg = config(&doc, &bounds, k)?;
            let result = evaluate(&doc.problem, &cfg).map_err(engine_failure)?;
            let text = match format {
                Format::Text => evaluation_text(&doc.problem, &result),
                Format::Json => evaluation_json(&doc.problem, &cfg, &result),
            };
            let _ = out.write_all(text.as_bytes());
        }
        Command::Sensitivity { file, bounds, format } => {
            let doc = load(&file, err)?;
            let cfg = config(&doc, &bounds, None)?;
            let s = k_sensitivity(&doc.problem, cfg.i_min, cfg.i_max).map_err(engine_failure)?;
            let text = match format {
                Format::Text => sensitivity_text(&doc.problem, &s),
                Format::Json => sensitivity_json(&doc.problem, &s),
            };
            let _ = out.write_all(text.as_bytes());
        }
        Command::Plot { file, out: path, bounds, k, mode } => {
            let doc = load(&file, err)?;
            let cfg = config(&doc, &bounds, k)?;
            let result = evaluate(&doc.problem, &cfg).map_err(engine_failure)?;
            let data = PlotData {
                title: &doc.title,
                ids: doc.problem.alternatives.iter().map(|a| a.id.as_str()).collect(),
                scores: &result.neutro_scores,
                intervals: &result.intervals,
                selected: Some(result.selected_index),
                i_min: cfg.i_min,
                i_max: cfg.i_max,
            };
            let mode = match mode {
                Mode::Bands => PlotMode::Bands,
                Mode::Lines => PlotMode::Lines,
            };
            let svg = render(&data, &PlotSpec::default(), mode);
            fs::write(&path, svg)
                .map_err(|e| Failure::new(EXIT_IO, format!("cannot write {}: {e}", path.display())))?;
            let _ = writeln!(out, "wrote {}", path.display());
        }
        Command::Serve { port, host, data_dir, static_dir } => {
            let cfg = ServeConfig { host, port, data_dir, static_dir };
            let runtime = tokio::runtime::Runtime::new()
                .map_err(|e| Failure::new(EXIT_FAILURE, format!("error: {e}")))?;
            runtime.block_on(async {
                let server = Server::bind(&cfg)
                    .await
                    .map_err(|e| Failure::new(EXIT_FAILURE, format!("error: cannot start service: {e}")))?;
                for s in &server.skipped {
                    let _ = writeln!(err, "warning: skipped {s}");
                }
                let addr =
                    server.local_addr().map_err(|e| Failure::new(EXIT_FAILURE, format!("error: {e}")))?;
                let _ = writeln!(out, "listening on http://{addr}");
                let _ = out.flush();
                server
                    .run_until(shutdown_signal())
                    .await
                    .map_err(|e| Failure::new(EXIT_FAILURE, format!("error: {e}")))
            })?;
        }
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match run_command(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            for line in f.lines {
                let _ = writeln!(err, "{line}");
            }
            f.code
        }
    }
}

pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
