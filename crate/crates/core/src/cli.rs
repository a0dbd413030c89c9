//! Command-line front end. [`run`] is the whole program minus process exit.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::corpus::run_paper_claims;
use crate::dot::to_dot;
use crate::error::Error;
use crate::formula::parse;
use crate::kripke::{format_model_text, parse_model_text, AgentSet, ModelFile, PointedModel};
use crate::semantics::satisfies;
use crate::transforms::{apply_eee, apply_reading_event, apply_see, apply_sse, ReadingAssignment};
use crate::translate::{translate, translate_traced};
use crate::validity::{check_validity, Outcome, SearchBounds};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "epicomm", version, about = "Epistemic models with group communication")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Op {
    Eee,
    See,
    Sse,
    Read,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Demo {
    Paper,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a formula at a world.
    Check {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        world: String,
        #[arg(long)]
        formula: String,
    },
    /// Apply a communication update and print the resulting model.
    Transform {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_enum)]
        op: Op,
        /// Sending group (see, sse).
        #[arg(long)]
        agents: Option<String>,
        /// Topic formula (sse).
        #[arg(long)]
        topic: Option<String>,
        /// Reading assignment such as `a:a,b;b:b` (read).
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Translate a formula into the static language.
    Translate {
        #[arg(long)]
        formula: String,
        #[arg(long)]
        trace: bool,
        /// Full agent roster; defaults to the agents of the formula.
        #[arg(long)]
        agents: Option<String>,
    },
    /// Search bounded model spaces for a countermodel.
    Validity {
        #[arg(long)]
        formula: String,
        #[arg(long)]
        max_worlds: usize,
        #[arg(long)]
        agents: String,
        #[arg(long)]
        atoms: String,
        #[arg(long, requires = "seed")]
        sample: Option<usize>,
        #[arg(long, requires = "sample")]
        seed: Option<u64>,
    },
    /// Run the built-in claims ledger.
    Demo {
        #[arg(value_enum)]
        which: Demo,
    },
    /// Print a model in Graphviz format.
    Dot {
        #[arg(long)]
        model: PathBuf,
    },
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type CmdResult = std::result::Result<i32, Failure>;

fn list(text: &str) -> Vec<String> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect()
}

fn load(path: &Path) -> std::result::Result<ModelFile, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(parse_model_text(&text)?)
}

fn io(e: std::io::Error) -> Failure {
    Failure::Usage(format!("write failed: {e}"))
}

/// Runs the program on `args` (including the program name) and returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error [{}]: {e}", e.code());
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Check { model, world, formula } => {
            let file = load(&model)?;
            let f = parse(&formula)?;
            let pm = PointedModel::at(&file.model, &world)?;
            let holds = satisfies(&pm, &f)?;
            writeln!(out, "{holds}").map_err(io)?;
            Ok(if holds { EXIT_OK } else { EXIT_FALSE })
        }
        Command::Transform { model, op, agents, topic, alpha, out: target } => {
            let file = load(&model)?;
            let m = &file.model;
            let group = || {
                agents
                    .as_deref()
                    .map(AgentSet::parse_list)
                    .ok_or_else(|| Failure::Usage("--agents is required for this operation".into()))
            };
            let result = match op {
                Op::Eee => apply_eee(m),
                Op::See => apply_see(m, &group()?)?,
                Op::Sse => {
                    let topic = topic
                        .as_deref()
                        .ok_or_else(|| Failure::Usage("--topic is required for sse".into()))?;
                    apply_sse(m, &group()?, &parse(topic)?)?
                }
                Op::Read => {
                    let spec = alpha
                        .as_deref()
                        .ok_or_else(|| Failure::Usage("--alpha is required for read".into()))?;
                    apply_reading_event(m, &ReadingAssignment::parse(spec)?)?
                }
            };
            let text = format_model_text(&result, file.point);
            match target {
                Some(path) => fs::write(&path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
                None => write!(out, "{text}").map_err(io)?,
            }
            Ok(EXIT_OK)
        }
        Command::Translate { formula, trace, agents } => {
            let f = parse(&formula)?;
            let roster = match agents {
                Some(list) => AgentSet::parse_list(&list),
                None => f.agents(),
            };
            if trace {
                let (t, steps) = translate_traced(&f, &roster)?;
                write!(out, "{}", steps.render()).map_err(io)?;
                writeln!(out, "{t}").map_err(io)?;
            } else {
                writeln!(out, "{}", translate(&f, &roster)?).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Validity { formula, max_worlds, agents, atoms, sample, seed } => {
            let f = parse(&formula)?;
            let agents = list(&agents);
            let atoms = list(&atoms);
            let agents: Vec<&str> = agents.iter().map(String::as_str).collect();
            let atoms: Vec<&str> = atoms.iter().map(String::as_str).collect();
            let mut bounds = SearchBounds::exhaustive(max_worlds, &agents, &atoms);
            if let (Some(count), Some(seed)) = (sample, seed) {
                bounds = bounds.sampled(count, seed);
            }
            let verdict = check_validity(&f, &bounds)?;
            match verdict.outcome {
                Outcome::ValidUpToBound => {
                    writeln!(out, "valid up to bound ({} models checked)", verdict.models_checked).map_err(io)?;
                    Ok(EXIT_OK)
                }
                Outcome::Countermodel(pm) => {
                    writeln!(out, "countermodel after {} models:", verdict.models_checked).map_err(io)?;
                    write!(out, "{}", format_model_text(&pm.model, Some(pm.point))).map_err(io)?;
                    Ok(EXIT_FALSE)
                }
            }
        }
        Command::Demo { which: Demo::Paper } => {
            let report = run_paper_claims();
            write!(out, "{report}").map_err(io)?;
            Ok(if report.all_passed() { EXIT_OK } else { EXIT_FALSE })
        }
        Command::Dot { model } => {
            let file = load(&model)?;
            write!(out, "{}", to_dot(&file.model, file.point)).map_err(io)?;
            Ok(EXIT_OK)
        }
    }
}
