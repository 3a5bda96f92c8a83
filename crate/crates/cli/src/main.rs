mod args;
mod bound;
mod report;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use markov_phi::markov;
use markov_phi::necklace::{Necklace, NecklaceError, NecklaceParams};
use markov_phi::par::{self, Exec};
use markov_phi::phi::{self, Evaluator, PhiConfig, PhiError};
use markov_phi::slword;
use markov_phi::spectrum::{self, ScanConfig, SpectrumError};

use args::{Cli, Command, Format, GlobalOpts, MarkovCommand, NecklaceCommand, VerifyCommand};
use report::{
    CheckReport, CrossCheckJson, EvaluatorValue, InjectivityJson, NecklaceRow, NumbersReport, ParamsReport, PhiReport,
    Report, SpectrumReport, ThetaReport, UniquenessReport,
};

const EXIT_USAGE: u8 = 1;
const EXIT_INCONSISTENCY: u8 = 2;
const EXIT_COUNTEREXAMPLE: u8 = 3;

enum Failure {
    Usage(String),
    Inconsistency(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<NecklaceError> for Failure {
    fn from(e: NecklaceError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<PhiError> for Failure {
    fn from(e: PhiError) -> Self {
        if e.is_inconsistency() {
            Failure::Inconsistency(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<SpectrumError> for Failure {
    fn from(e: SpectrumError) -> Self {
        match e {
            SpectrumError::Phi(e) => e.into(),
            e @ SpectrumError::EnumerationIncomplete { .. } => Failure::Inconsistency(e.to_string()),
        }
    }
}

/// What a successful run found, mapped to an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Finding {
    Nothing,
    Inconsistency,
    Counterexample,
}

impl Finding {
    fn code(self) -> u8 {
        match self {
            Finding::Nothing => 0,
            Finding::Inconsistency => EXIT_INCONSISTENCY,
            Finding::Counterexample => EXIT_COUNTEREXAMPLE,
        }
    }
}

struct Ctx<'a> {
    format: Format,
    phi: PhiConfig,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn emit<R: Report>(&mut self, r: &R) -> Result<(), Failure> {
        report::write(r, self.format, self.out)?;
        Ok(())
    }

    fn scan_config(&self) -> ScanConfig {
        ScanConfig {
            phi: self.phi,
            exec: Exec::Parallel,
        }
    }
}

fn multiplicity(n: &Necklace) -> u32 {
    match n.entries() {
        [0] | [1] => 6,
        _ => 12,
    }
}

fn run_phi(ctx: &mut Ctx, n: &Necklace, evaluator: Evaluator) -> Result<Finding, Failure> {
    let evaluator = if ctx.phi.verify { Evaluator::All } else { evaluator };
    let (value, values, finding) = match phi::evaluate(n, evaluator, &ctx.phi) {
        Ok(e) => (e.value, e.values, Finding::Nothing),
        Err(PhiError::Disagreement { values, .. }) => (values[0].1.clone(), values, Finding::Inconsistency),
        Err(e) => return Err(e.into()),
    };
    let trace = &value * 3u32;
    let length = slword::theta_length(&trace).map_err(|e| Failure::Inconsistency(e.to_string()))?;
    let report = PhiReport {
        row: NecklaceRow {
            necklace: n.to_string(),
            k: n.len(),
            sum_n: n.sum().to_string(),
            phi: value.to_string(),
            trace: trace.to_string(),
            length,
            multiplicity: multiplicity(n),
        },
        agree: finding == Finding::Nothing,
        evaluators: values
            .iter()
            .map(|(e, v)| EvaluatorValue {
                evaluator: e.to_string(),
                phi: v.to_string(),
            })
            .collect(),
    };
    ctx.emit(&report)?;
    Ok(finding)
}

fn run_necklace(ctx: &mut Ctx, cmd: NecklaceCommand) -> Result<Finding, Failure> {
    match cmd {
        NecklaceCommand::Check { necklace } => {
            let params = necklace.to_params();
            let violation = match &params {
                Err(NecklaceError::NotInDomain(v)) => Some(v.to_string()),
                Err(e) => Some(e.to_string()),
                Ok(_) => None,
            };
            ctx.emit(&CheckReport {
                necklace: necklace.to_string(),
                k: necklace.len(),
                primitive: necklace.is_primitive(),
                small_variation: necklace.is_small_variation(),
                in_domain: params.is_ok(),
                params: params.ok().map(Into::into),
                violation,
            })?;
        }
        NecklaceCommand::FromParams { x, y, m } => {
            let params = NecklaceParams::new(x, y, m)?;
            let n = Necklace::from_params(params)?;
            ctx.emit(&ParamsReport::new(&n, params))?;
        }
        NecklaceCommand::ToParams { necklace } => {
            let params = necklace.to_params()?;
            ctx.emit(&ParamsReport::new(&necklace, params))?;
        }
        NecklaceCommand::Theta { necklace, inverse } => {
            let output = if inverse {
                necklace.theta_inverse()?
            } else {
                necklace.theta()?
            };
            ctx.emit(&ThetaReport {
                input: necklace.to_string(),
                inverse,
                output: output.to_string(),
            })?;
        }
    }
    Ok(Finding::Nothing)
}

fn run_markov(ctx: &mut Ctx, cmd: MarkovCommand) -> Result<Finding, Failure> {
    match cmd {
        MarkovCommand::Numbers { bound } => {
            ctx.emit(&NumbersReport::new(&bound, &markov::markov_numbers(&bound)))?;
            Ok(Finding::Nothing)
        }
        MarkovCommand::Uniqueness { bound } => {
            let triples = markov::markov_triples(&bound).len();
            let collisions = markov::uniqueness_scan(&bound);
            ctx.emit(&UniquenessReport::new(&bound, triples, &collisions))?;
            Ok(if collisions.is_empty() {
                Finding::Nothing
            } else {
                Finding::Counterexample
            })
        }
    }
}

fn run_verify(ctx: &mut Ctx, cmd: VerifyCommand) -> Result<Finding, Failure> {
    match cmd {
        VerifyCommand::Injectivity { phi_bound } => {
            let r = spectrum::verify_injectivity(&phi_bound, &ctx.scan_config())?;
            ctx.emit(&InjectivityJson::from(&r))?;
            Ok(if r.collisions.is_empty() {
                Finding::Nothing
            } else {
                Finding::Counterexample
            })
        }
        VerifyCommand::CrossCheck { phi_bound } => {
            let r = spectrum::cross_check_markov(&phi_bound, &ctx.scan_config())?;
            ctx.emit(&CrossCheckJson::from(&r))?;
            Ok(if r.agrees() {
                Finding::Nothing
            } else {
                Finding::Inconsistency
            })
        }
    }
}

fn run(command: Command, global: &GlobalOpts, out: &mut dyn Write) -> Result<Finding, Failure> {
    let mut ctx = Ctx {
        format: global.format,
        phi: PhiConfig {
            literal_cap: global.literal_cap,
            verify: global.verify,
            exec: Exec::Parallel,
        },
        out,
    };
    match command {
        Command::Phi { necklace, evaluator } => run_phi(&mut ctx, &necklace, evaluator.into()),
        Command::Necklace(cmd) => run_necklace(&mut ctx, cmd),
        Command::Markov(cmd) => run_markov(&mut ctx, cmd),
        Command::Spectrum { phi_bound } => {
            let s = spectrum::simple_spectrum(&phi_bound, &ctx.scan_config())?;
            ctx.emit(&SpectrumReport::new(&phi_bound, &s))?;
            Ok(if s.ties.is_empty() {
                Finding::Nothing
            } else {
                Finding::Counterexample
            })
        }
        Command::Verify(cmd) => run_verify(&mut ctx, cmd),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let workers = cli
        .global
        .workers
        .map(|w| w as usize)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let Cli { command, global } = cli;
    let result = par::with_workers(workers, || {
        let stdout = io::stdout();
        let mut out = stdout.lock();
        let r = run(command, &global, &mut out);
        let _ = out.flush();
        r
    });
    match result {
        Ok(finding) => {
            match finding {
                Finding::Nothing => {}
                Finding::Inconsistency => eprintln!("markov-phi: inconsistency detected"),
                Finding::Counterexample => eprintln!("markov-phi: counterexample found"),
            }
            ExitCode::from(finding.code())
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("markov-phi: error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Inconsistency(msg)) => {
            eprintln!("markov-phi: inconsistency: {msg}");
            ExitCode::from(EXIT_INCONSISTENCY)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("markov-phi: error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_are_distinct() {
        assert_eq!(Finding::Nothing.code(), 0);
        assert_eq!(Finding::Inconsistency.code(), 2);
        assert_eq!(Finding::Counterexample.code(), 3);
        let disagreement = PhiError::Disagreement {
            necklace: "[1]".parse().unwrap(),
            values: Vec::new(),
        };
        assert!(matches!(Failure::from(disagreement), Failure::Inconsistency(_)));
        let capacity = PhiError::Capacity { k: 30, cap: 20 };
        assert!(matches!(Failure::from(capacity), Failure::Usage(_)));
    }
}
