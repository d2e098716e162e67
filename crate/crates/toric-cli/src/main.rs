//! Command-line front end: parses fan and bundle files, dispatches the
//! library computations, and emits deterministic reports (text or a single
//! JSON document).
//!
//! Exit codes: 0 success, 1 internal error, 2 mathematical failure (e.g. a
//! violated resolution hypothesis or an undecided compatibility check),
//! 3 parse error, 4 validation error.

mod commands;
mod files;

use std::path::PathBuf;
use std::process::exit;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitKind {
    Internal = 1,
    Math = 2,
    Parse = 3,
    Validation = 4,
}

#[derive(Debug)]
pub struct CliError {
    pub kind: ExitKind,
    pub message: String,
}

impl CliError {
    pub fn math(message: String) -> Self {
        Self {
            kind: ExitKind::Math,
            message,
        }
    }

    pub fn validation(message: String) -> Self {
        Self {
            kind: ExitKind::Validation,
            message,
        }
    }

    pub fn parse(message: String) -> Self {
        Self {
            kind: ExitKind::Parse,
            message,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "toric",
    version,
    about = "Exact computations on toric varieties: fans, Chow groups, equivariant sheaf filtrations, and rank-2 Euler-type resolutions"
)]
struct Cli {
    #[command(subcommand)]
    command: TopCommand,
}

#[derive(Subcommand)]
enum TopCommand {
    /// Fan combinatorics: summary, dual cones, face lattices.
    Fan {
        #[command(subcommand)]
        command: FanCommand,
    },
    /// Homogeneous coordinate ring data.
    Cox {
        #[command(subcommand)]
        command: CoxCommand,
    },
    /// Equivariant sheaf data given by filtrations.
    Sheaf {
        #[command(subcommand)]
        command: SheafCommand,
    },
    /// Euler-type resolutions of rank-2 bundles on smooth complete surfaces.
    Euler {
        #[command(subcommand)]
        command: EulerCommand,
    },
}

#[derive(Subcommand)]
enum FanCommand {
    /// Rays, cones, smoothness, completeness and the Chow group.
    Info {
        fan: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Dual cone of a cone given by ray indices.
    Dual {
        fan: PathBuf,
        /// Comma-separated ray indices; "-" or "" for the zero cone.
        #[arg(long, allow_hyphen_values = true)]
        cone: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// All faces of a cone given by ray indices.
    Faces {
        fan: PathBuf,
        /// Comma-separated ray indices; "-" or "" for the zero cone.
        #[arg(long, allow_hyphen_values = true)]
        cone: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum CoxCommand {
    /// Variables, chart monomials, the irrelevant ideal and the grading.
    Info {
        fan: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum SheafCommand {
    /// Validate bundle data and decide bundle-compatibility per cone.
    Check {
        fan: PathBuf,
        bundle: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Global section degrees and dimensions.
    Sections {
        fan: PathBuf,
        bundle: PathBuf,
        /// Degree box "a..b" (all coordinates) or "a..b,c..d" (per
        /// coordinate); derived from the data when omitted.
        #[arg(long = "box", allow_hyphen_values = true)]
        degree_box: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Degree window of the induced family on one cone's chart.
    Window {
        fan: PathBuf,
        bundle: PathBuf,
        /// Comma-separated ray indices; "-" or "" for the zero cone.
        #[arg(long, allow_hyphen_values = true)]
        cone: String,
        /// Degree box "a..b" or "a..b,c..d"; derived when omitted.
        #[arg(long = "box", allow_hyphen_values = true)]
        degree_box: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum EulerCommand {
    /// Build and verify the Euler-type resolution of rank-2 bundle data.
    Resolve {
        fan: PathBuf,
        bundle: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Verify a stored resolution against bundle data.
    Verify {
        fan: PathBuf,
        bundle: PathBuf,
        resolution: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    print!("{}", e);
                    exit(0);
                }
                _ => {
                    eprint!("{}", e);
                    exit(ExitKind::Parse as i32);
                }
            }
        }
    };
    match run(cli) {
        Ok((rendered, code)) => {
            print!("{}", rendered);
            exit(code);
        }
        Err(err) => {
            eprintln!("error: {}", err.message);
            exit(err.kind as i32);
        }
    }
}

fn run(cli: Cli) -> Result<(String, i32), CliError> {
    let out = match cli.command {
        TopCommand::Fan { command } => match command {
            FanCommand::Info { fan, format } => commands::fan_info(&fan)?.render(format),
            FanCommand::Dual { fan, cone, format } => {
                commands::fan_dual(&fan, &cone)?.render(format)
            }
            FanCommand::Faces { fan, cone, format } => {
                commands::fan_faces(&fan, &cone)?.render(format)
            }
        },
        TopCommand::Cox { command } => match command {
            CoxCommand::Info { fan, format } => commands::cox_info(&fan)?.render(format),
        },
        TopCommand::Sheaf { command } => match command {
            SheafCommand::Check {
                fan,
                bundle,
                format,
            } => commands::sheaf_check(&fan, &bundle)?.render(format),
            SheafCommand::Sections {
                fan,
                bundle,
                degree_box,
                format,
            } => commands::sheaf_sections(&fan, &bundle, degree_box.as_deref())?.render(format),
            SheafCommand::Window {
                fan,
                bundle,
                cone,
                degree_box,
                format,
            } => commands::sheaf_window(&fan, &bundle, &cone, degree_box.as_deref())?
                .render(format),
        },
        TopCommand::Euler { command } => match command {
            EulerCommand::Resolve {
                fan,
                bundle,
                format,
            } => commands::euler_resolve(&fan, &bundle)?.render(format),
            EulerCommand::Verify {
                fan,
                bundle,
                resolution,
                format,
            } => commands::euler_verify(&fan, &bundle, &resolution)?.render(format),
        },
    };
    Ok(out)
}
