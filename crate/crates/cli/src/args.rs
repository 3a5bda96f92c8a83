use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use markov_phi::necklace::Necklace;
use markov_phi::Evaluator;

use crate::bound;

#[derive(Debug, Parser)]
#[command(
    name = "markov-phi",
    version,
    about = "Exact Φ on necklaces, Markov numbers and the simple length spectrum"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalOpts,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Worker threads; defaults to the number of available cores.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..=1024))]
    pub workers: Option<u64>,
    /// Evaluate Φ with every evaluator and fail on any disagreement.
    #[arg(long, global = true)]
    pub verify: bool,
    /// Largest necklace length evaluated by subset enumeration.
    #[arg(long, global = true, default_value_t = markov_phi::phi::DEFAULT_LITERAL_CAP, value_parser = parse_literal_cap)]
    pub literal_cap: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvaluatorArg {
    Literal,
    Transfer,
    Oracle,
    All,
}

impl From<EvaluatorArg> for Evaluator {
    fn from(e: EvaluatorArg) -> Self {
        match e {
            EvaluatorArg::Literal => Evaluator::Literal,
            EvaluatorArg::Transfer => Evaluator::Transfer,
            EvaluatorArg::Oracle => Evaluator::Oracle,
            EvaluatorArg::All => Evaluator::All,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Φ, trace and geodesic length of a necklace.
    Phi {
        #[arg(value_parser = parse_necklace)]
        necklace: Necklace,
        #[arg(long, value_enum, default_value_t = EvaluatorArg::All)]
        evaluator: EvaluatorArg,
    },
    /// Necklace utilities.
    #[command(subcommand)]
    Necklace(NecklaceCommand),
    /// Markov numbers from the Markov tree.
    #[command(subcommand)]
    Markov(MarkovCommand),
    /// Simple length spectrum up to a Φ bound.
    Spectrum {
        #[arg(long, value_parser = bound::parse_phi_bound)]
        phi_bound: BigUint,
    },
    /// Bounded verification scans.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Debug, Subcommand)]
pub enum NecklaceCommand {
    /// Canonical form and domain membership.
    Check {
        #[arg(value_parser = parse_necklace)]
        necklace: Necklace,
    },
    /// The domain necklace with `x` entries `m` and `y` entries `m+1`.
    FromParams { x: u64, y: u64, m: u64 },
    /// Inverse of from-params.
    ToParams {
        #[arg(value_parser = parse_necklace)]
        necklace: Necklace,
    },
    /// Replace each entry n by n-1 zeros and a one, or undo it with --inverse.
    Theta {
        #[arg(value_parser = parse_necklace)]
        necklace: Necklace,
        #[arg(long)]
        inverse: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum MarkovCommand {
    /// Distinct Markov numbers up to the bound.
    Numbers {
        #[arg(long, value_parser = bound::parse_markov_bound)]
        bound: BigUint,
    },
    /// Markov numbers carried by more than one triple.
    Uniqueness {
        #[arg(long, value_parser = bound::parse_markov_bound)]
        bound: BigUint,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Look for two necklaces with the same Φ.
    Injectivity {
        #[arg(long, value_parser = bound::parse_phi_bound)]
        phi_bound: BigUint,
    },
    /// Compare the image of Φ with the Markov numbers.
    CrossCheck {
        #[arg(long, value_parser = bound::parse_phi_bound)]
        phi_bound: BigUint,
    },
}

fn parse_necklace(s: &str) -> Result<Necklace, String> {
    s.parse::<Necklace>().map_err(|e| e.to_string())
}

fn parse_literal_cap(s: &str) -> Result<usize, String> {
    let max = markov_phi::phi::MAX_MASK_LEN as usize;
    match s.parse::<usize>() {
        Ok(v) if v <= max => Ok(v),
        _ => Err(format!("expected an integer between 0 and {max}")),
    }
}
