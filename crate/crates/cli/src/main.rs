//! `nsymm` command-line front end.
//!
//! Exit codes: 0 on success or a passing check, 1 on a failed verification, 2 on usage,
//! parse or shape errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "nsymm", version, about = "Exact computations in NSymm, QSymm and Hasse-Schmidt calculus")]
pub struct Cli {
    /// Largest degree any computation may reach.
    #[arg(long, global = true, default_value_t = nsymm::DEFAULT_MAX_DEGREE,
          value_parser = parse_max_degree)]
    pub max_degree: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Newton primitives and the expansion of Z_n in the P' basis.
    Newton {
        n: usize,
        #[arg(long, value_enum, default_value_t = NewtonVariant::Left)]
        variant: NewtonVariant,
    },
    /// Images of the generators under the exp/log isomorphism.
    Explog {
        n: usize,
        #[arg(long, value_enum, default_value_t = Direction::ZOfU)]
        direction: Direction,
    },
    /// Run an invariant suite up to --max-degree.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Convert or validate Hasse-Schmidt families stored as JSON.
    ///
    /// `hs example <taylor6|two-inner-derivs> [out_file]` writes a sample input file.
    Hs {
        #[arg(value_enum)]
        action: HsAction,
        /// Input family file, or the sample name for `example`.
        input: String,
        out_file: Option<PathBuf>,
    },
    /// Operations in QSymm on the monomial basis.
    ///
    /// Arguments are compositions such as `1,2` or rendered polynomials such as
    /// `M(1,2) + 2·M(3)`.
    Qsymm {
        #[command(subcommand)]
        op: QsymmOp,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NewtonVariant {
    Left,
    Right,
    Explicit,
    ZInP,
    ZInPViaC,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    ZOfU,
    UOfZ,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Primitivity,
    NewtonConsistency,
    Iso,
    QsymmHs,
    HopfLaws,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum HsAction {
    ExtractDelta,
    ExtractPartial,
    BuildFromDelta,
    BuildFromPartial,
    Validate,
    Example,
}

#[derive(Subcommand, Debug)]
pub enum QsymmOp {
    /// Quasi-shuffle product.
    Product { a: String, b: String },
    /// Deconcatenation coproduct.
    Deconcat { q: String },
    /// The HS component d_n.
    D { n: usize, q: String },
    /// Coefficient of M(n).
    Alpha { n: usize, q: String },
}

fn parse_max_degree(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
