mod commands;
mod workspace;

use std::fmt;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hvn_core::chartable::CharError;
use hvn_core::duality::DualityError;
use hvn_core::dynsys::DynError;
use hvn_core::formats::FormatError;
use hvn_core::group::GroupError;

#[derive(Parser)]
#[command(name = "hvn", version, about = "Finite Halmos-von Neumann classification")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized corpus sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
pub struct GroupRef {
    /// Cayley table file, `.perm` permutation file, or built-in id (C4, S3, D4, Q8, GL32, S3xC2, ...).
    #[arg(long)]
    group: Option<String>,
    /// Cyclic group of order n.
    #[arg(long)]
    cyclic: Option<usize>,
    /// Symmetric group on n points.
    #[arg(long)]
    symmetric: Option<usize>,
    /// Dihedral group of order 2n.
    #[arg(long)]
    dihedral: Option<usize>,
}

impl GroupRef {
    pub fn reference(&self) -> String {
        match (&self.group, self.cyclic, self.symmetric, self.dihedral) {
            (Some(g), ..) => g.clone(),
            (_, Some(n), ..) => format!("C{n}"),
            (_, _, Some(n), _) => format!("S{n}"),
            (_, _, _, Some(n)) => format!("D{n}"),
            _ => unreachable!("clap requires one group flag"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print and export the character table of a group.
    Chartable {
        #[command(flatten)]
        group: GroupRef,
        /// Write the canonical JSON export here.
        #[arg(long)]
        out: Option<String>,
    },
    /// Minimality, point spectrum and normality of a system.
    Classify {
        /// Action file.
        #[arg(long)]
        system: String,
    },
    /// Decide isomorphism of two systems over the same group.
    Iso {
        /// Two action files.
        #[arg(long, num_args = 1, required = true)]
        system: Vec<String>,
        /// Also run the brute-force search and require agreement.
        #[arg(long)]
        oracle: bool,
        /// Write the equivariant bijection here when one is found.
        #[arg(long)]
        certificate: Option<String>,
    },
    /// Run a verification suite over the built-in corpus.
    Verify {
        /// chartable, duality, envrot, meastop, hvn or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 24)]
        max_order: usize,
    },
    /// Search for coset actions with equal spectra that are not isomorphic.
    Gassmann {
        #[command(flatten)]
        group: GroupRef,
    },
}

/// An error with the exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        CliError { code: 3, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<CharError> for CliError {
    fn from(e: CharError) -> Self {
        match e {
            CharError::Internal(_) | CharError::NotRational(_) => CliError::internal(e.to_string()),
            _ => CliError::usage(e.to_string()),
        }
    }
}

impl From<DualityError> for CliError {
    fn from(e: DualityError) -> Self {
        match e {
            DualityError::Internal(_) => CliError::internal(e.to_string()),
            DualityError::Char(c) => c.into(),
            _ => CliError::usage(e.to_string()),
        }
    }
}

impl From<DynError> for CliError {
    fn from(e: DynError) -> Self {
        match e {
            DynError::Internal(_) => CliError::internal(e.to_string()),
            DynError::Char(c) => c.into(),
            DynError::Duality(d) => d.into(),
            _ => CliError::usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = std::panic::catch_unwind(|| commands::run(&cli));
    match run {
        Ok(Ok(code)) => ExitCode::from(code),
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
        Err(_) => ExitCode::from(3),
    }
}
