use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::config::{parse_config, ModuleExpr, SessionConfig, SideName, TaskConfig};
use crate::error::HopfmodError;
use crate::report::{error_report, sha256_hex, Report, Status};
use crate::tasks::run_all;
use crate::verify::verify_examples;

#[derive(Debug, Parser)]
#[command(
    name = "hopfmod",
    version,
    about = "Modules over kG ⊗ k[L]: tensor products, duals, supports, orbits"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct Common {
    /// Session configuration (JSON).
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Extension degree e of the point field GF(p^e).
    #[arg(long = "ext", value_name = "E", default_value_t = 1)]
    pub ext: u32,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub verbose: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the Hopf algebra axioms of A.
    HopfCheck {
        #[command(flatten)]
        common: Common,
    },
    /// Tensor product of two modules and the support formula.
    Tensor {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: String,
        #[arg(long = "with")]
        with: String,
    },
    Dual {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: String,
    },
    Projective {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: String,
    },
    Support {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: String,
    },
    Complexity {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: String,
    },
    /// Projectivity and complexity of tensor powers.
    Profile {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 3)]
        nmax: usize,
    },
    /// Orbits of L×1, 1×L and L×L on points × L.
    Orbits {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = parse_side)]
        side: Option<SideName>,
    },
    /// Whether the candidate lies in the ideal generated by --module.
    Membership {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: String,
        #[arg(long = "with")]
        with: String,
        #[arg(long, value_parser = parse_side)]
        side: SideName,
    },
    /// Run the built-in example assertions.
    #[command(name = "verify-paper-examples")]
    VerifyExamples {
        #[command(flatten)]
        common: Common,
    },
    /// Run every task listed in the configuration.
    Run {
        #[command(flatten)]
        common: Common,
    },
}

fn parse_side(s: &str) -> Result<SideName, String> {
    match s {
        "left" => Ok(SideName::Left),
        "right" => Ok(SideName::Right),
        "two-sided" => Ok(SideName::TwoSided),
        _ => Err(format!("expected left, right or two-sided, got {s:?}")),
    }
}

/// `NAME` or an inline JSON module expression.
fn module_arg(text: &str) -> Result<ModuleExpr, HopfmodError> {
    if text.trim_start().starts_with('{') {
        serde_json::from_str(text)
            .map_err(|e| HopfmodError::usage(format!("bad module expression {text:?}: {e}")))
    } else {
        Ok(ModuleExpr::Name(text.to_string()))
    }
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::HopfCheck { common }
            | Command::Tensor { common, .. }
            | Command::Dual { common, .. }
            | Command::Projective { common, .. }
            | Command::Support { common, .. }
            | Command::Complexity { common, .. }
            | Command::Profile { common, .. }
            | Command::Orbits { common, .. }
            | Command::Membership { common, .. }
            | Command::VerifyExamples { common }
            | Command::Run { common } => common,
        }
    }

    fn task(&self) -> Result<Option<TaskConfig>, HopfmodError> {
        let e = self.common().ext;
        Ok(Some(match self {
            Command::HopfCheck { .. } => TaskConfig::HopfCheck,
            Command::Tensor { module, with, .. } => TaskConfig::Tensor {
                left: module_arg(module)?,
                right: module_arg(with)?,
                e,
            },
            Command::Dual { module, .. } => TaskConfig::Dual {
                module: module_arg(module)?,
                e,
            },
            Command::Projective { module, .. } => TaskConfig::Projective {
                module: module_arg(module)?,
            },
            Command::Support { module, .. } => TaskConfig::Support {
                module: module_arg(module)?,
                e,
            },
            Command::Complexity { module, .. } => TaskConfig::Complexity {
                module: module_arg(module)?,
            },
            Command::Profile { module, nmax, .. } => TaskConfig::Profile {
                module: module_arg(module)?,
                nmax: *nmax,
                e,
            },
            Command::Orbits { side, .. } => TaskConfig::Orbits { e, side: *side },
            Command::Membership {
                module, with, side, ..
            } => TaskConfig::Membership {
                generator: module_arg(module)?,
                candidate: module_arg(with)?,
                side: *side,
                e,
            },
            Command::VerifyExamples { .. } | Command::Run { .. } => return Ok(None),
        }))
    }
}

fn read_config(path: Option<&Path>) -> Result<SessionConfig, HopfmodError> {
    let path = path.ok_or_else(|| HopfmodError::usage("--config FILE is required"))?;
    let text = fs::read_to_string(path).map_err(|source| HopfmodError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_config(&text)
}

fn build_report(command: &Command) -> Result<Report, HopfmodError> {
    if let Command::VerifyExamples { .. } = command {
        return Ok(verify_examples());
    }
    let mut session = read_config(command.common().config.as_deref())?;
    let tasks = match command.task()? {
        Some(task) => {
            // Validate the ad hoc task against the session like configured ones.
            let mut file = session.file.clone();
            file.tasks = vec![task];
            session = SessionConfig::from_file(file)?;
            session.file.tasks.clone()
        }
        None => session.file.tasks.clone(),
    };
    let results = run_all(&session, &tasks)?;
    Ok(Report::new(sha256_hex(&session.canonical_json()), results))
}

/// Runs a parsed command; returns the report text and the exit code.
pub fn execute(command: &Command) -> (String, i32) {
    match build_report(command) {
        Ok(report) => {
            if command.common().verbose {
                for r in &report.results {
                    eprintln!("{:<40} {}", r.task, if r.pass { "pass" } else { "FAIL" });
                }
            }
            (report.to_json_string(), report.status.exit_code())
        }
        Err(err) => {
            eprintln!("error: {err}");
            (error_report(&err), Status::Error.exit_code())
        }
    }
}

/// Entry point for the binary.
pub fn main_with_args(args: impl IntoIterator<Item = String>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let (text, code) = execute(&cli.command);
    match &cli.command.common().out {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("error: {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{text}"),
    }
    code
}
