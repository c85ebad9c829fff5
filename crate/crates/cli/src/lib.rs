//! Command-line front end for `rathom-core`.
//!
//! ```text
//! rathom ranks --b2 K [--sig S] [--max N] [--method lie|closed|all]
//! rathom loops --b2 K --max N
//! rathom gauge --group G --b2 K [--form odd|even] [--c2 odd|even] --space SPACE [--max N]
//! rathom check --group G --b2 K --max N
//! rathom check --b2 K --max N
//! ```
//!
//! Every command accepts `--format table|json`. Exit codes: 0 on success,
//! 1 on a failed cross-check or internal error, 2 on invalid input, 3 when a
//! resource budget refuses the computation.

mod commands;
mod document;

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use document::Document;

#[derive(Debug, Parser)]
#[command(name = "rathom", version, about = "Exact rational homotopy of four-manifolds and gauge spaces")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Lie,
    Closed,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    Odd,
    Even,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpaceArg {
    GaugeGroup,
    Btilde,
    Bstar,
    LoopBtilde,
    LoopBstar,
}

#[derive(Debug, Clone, Args)]
pub struct FormArgs {
    /// Second Betti number of the four-manifold.
    #[arg(long, allow_hyphen_values = true)]
    pub b2: i64,

    /// Signature b2+ - b2-; defaults to b2 (positive definite).
    #[arg(long, allow_hyphen_values = true)]
    pub sig: Option<i64>,
}

#[derive(Debug, Clone, Args)]
pub struct BundleArgs {
    /// Structure group: SU<n>, Spin<n>, Sp<n>, G2, F4, E6, E7 or E8.
    #[arg(long)]
    pub group: String,

    #[arg(long, allow_hyphen_values = true)]
    pub b2: i64,

    /// Parity of the intersection form (needed for SU(2) loop spaces).
    #[arg(long, value_enum)]
    pub form: Option<ParityArg>,

    /// Parity of the second Chern number (needed for SU(2), even form, loop-bstar).
    #[arg(long, value_enum)]
    pub c2: Option<ParityArg>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rational homotopy ranks rk π_k(M) for 2 <= k <= max.
    Ranks {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long, default_value_t = 6)]
        max: u32,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// Hilbert series of the loop-space homology H_*(ΩM; Q).
    Loops {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long)]
        max: u32,
    },
    /// Cohomology or loop-space homology ring of a gauge space.
    Gauge {
        #[command(flatten)]
        bundle: BundleArgs,
        #[arg(long, value_enum)]
        space: SpaceArg,
        /// Highest generator degree; defaults to one that exhausts the group.
        #[arg(long)]
        max: Option<u32>,
        /// Compute loop rings even when the base is known not to be simply connected.
        #[arg(long)]
        assume_simply_connected: bool,
    },
    /// Cross-checks: rank methods against each other, or with --group the
    /// loop-space counts against the shifted cohomology counts.
    Check {
        #[arg(long)]
        group: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b2: i64,
        #[arg(long)]
        max: u32,
    },
}

/// Failure of a command, mapped onto an exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad input: exit 2.
    Input(String),
    /// Budget refusal: exit 3.
    Resource(String),
    /// Cross-check failed or internal error: exit 1. Carries the document
    /// that was produced, if any.
    Check(String, Option<Box<Document>>),
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => 2,
            Failure::Resource(_) => 3,
            Failure::Check(..) => 1,
        }
    }
}

impl From<rathom_core::Error> for Failure {
    fn from(e: rathom_core::Error) -> Self {
        use rathom_core::Error;
        match e {
            e if e.is_resource() => Failure::Resource(e.to_string()),
            Error::Domain(_) | Error::NotSimplyConnected { .. } => Failure::Input(e.to_string()),
            e => Failure::Check(e.to_string(), None),
        }
    }
}

/// Parses `argv` (including the program name), runs the command and writes
/// the result to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    if let Err(e) = rathom_core::gauge::self_check() {
        let _ = writeln!(err, "error: {e}");
        return 1;
    }
    let format = cli.format;
    match commands::dispatch(cli) {
        Ok(doc) => {
            let _ = write!(out, "{}", doc.render(format));
            0
        }
        Err(failure) => {
            let code = failure.exit_code();
            match failure {
                Failure::Input(msg) | Failure::Resource(msg) => {
                    let _ = writeln!(err, "error: {msg}");
                }
                Failure::Check(msg, doc) => {
                    if let Some(doc) = doc {
                        let _ = write!(out, "{}", doc.render(format));
                    }
                    let _ = writeln!(err, "error: {msg}");
                }
            }
            code
        }
    }
}
