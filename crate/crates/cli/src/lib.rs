//! Command-line front end for the copier-enhanced detection analyzer.
//!
//! Four commands: `eval` scores one parameter point, `sweep` emits a CSV
//! over a one-parameter grid, `montecarlo` cross-checks the exact
//! distributions against sampling, and `fig2` runs the canonical
//! efficiency-versus-copier-quality sweep preset.
//!
//! Exit codes: 0 success, 1 usage error, 2 capability or domain error,
//! 3 sampling inconsistent with the exact distribution.

use std::fmt;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qcopier::cascade::MAX_EXACT_LEVELS;
use qcopier::model::{CopierParams, DetectorParams, Symbol};

pub mod format;
pub mod report;
pub mod sweep;

pub use sweep::{SweepParameter, SweepSpec};

/// Everything that can end a run unsuccessfully, tagged with the exit
/// code contract of the binary.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// The invocation itself is wrong: unknown values, out-of-range
    /// flags, malformed sweep requests. Exit code 1.
    Usage(String),
    /// The request is well-formed but beyond what this build computes,
    /// or cannot be satisfied. Exit code 2.
    Capability(String),
    /// The sampled distribution strayed too far from the exact one.
    /// Exit code 3.
    SamplingInconsistent { distance: f64, bound: f64 },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Capability(_) => 2,
            CliError::SamplingInconsistent { .. } => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Capability(msg) => f.write_str(msg),
            CliError::SamplingInconsistent { distance, bound } => write!(
                f,
                "sampled distribution is inconsistent with the exact one: \
                 total variation {distance} exceeds the bound {bound}"
            ),
        }
    }
}

impl From<qcopier::Error> for CliError {
    fn from(err: qcopier::Error) -> Self {
        match err {
            qcopier::Error::DepthExceedsCap { .. } => CliError::Capability(err.to_string()),
            qcopier::Error::ParameterOutOfRange { .. }
            | qcopier::Error::NotNormalized { .. }
            | qcopier::Error::DegeneratePrior { .. }
            | qcopier::Error::NoTrials => CliError::Usage(err.to_string()),
            other => CliError::Capability(other.to_string()),
        }
    }
}

/// Exact simulator and information-theoretic analyzer for
/// copier-enhanced photodetection.
#[derive(Debug, Parser)]
#[command(name = "qcopier", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Score one parameter point: mutual information and effective
    /// efficiency.
    Eval {
        #[command(flatten)]
        params: PhysicalArgs,
        /// Number of copier levels (0 = bare detector, at most 4).
        #[arg(long, default_value_t = 1)]
        levels: u32,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Sweep one parameter and emit a CSV of effective efficiencies.
    Sweep {
        #[command(flatten)]
        params: PhysicalArgs,
        /// What to sweep, as name=start:stop:step (names: eps, eta, xi,
        /// mu, p).
        #[arg(long)]
        sweep: String,
        /// Comma-separated copier level counts, one CSV column each.
        #[arg(long, default_value = "1")]
        levels: String,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Sample the scheme and compare against the exact distribution.
    Montecarlo {
        #[command(flatten)]
        params: PhysicalArgs,
        /// Number of copier levels (exact comparison supports at most 4).
        #[arg(long, default_value_t = 1)]
        levels: u32,
        /// Number of sampled runs.
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        /// Seed of the deterministic sampler.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Symbol fed into the scheme.
        #[arg(long, value_enum, default_value_t = InputArg::Photon)]
        input: InputArg,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Preset sweep: copier quality from 0.5 to 1.0 in steps of 0.005,
    /// detector efficiency 0.6, no noise, levels 0 through 3.
    Fig2 {
        #[command(flatten)]
        output: OutputArg,
    },
}

/// The five physical scalars, with the canonical scenario as defaults.
#[derive(Debug, Args)]
pub struct PhysicalArgs {
    /// Detector quantum efficiency, in [0, 1].
    #[arg(long, default_value_t = 0.6, allow_negative_numbers = true)]
    pub eta: f64,
    /// Dark-count ratio: a detector fires on vacuum with probability
    /// eta * xi. In [0, 1].
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub xi: f64,
    /// Copier success probability, in [0, 1].
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub eps: f64,
    /// Copier failure shape, in [-1, 1]: -1 fails to vacuum, 0 to
    /// uniform noise, +1 to a photon pair.
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    pub mu: f64,
    /// Prior probability that the source emitted a photon, in (0, 1).
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub p: f64,
}

#[derive(Debug, Args)]
pub struct OutputArg {
    /// Where to write the result: a file path, or `stdout`.
    #[arg(long, default_value = "stdout")]
    pub output: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputArg {
    Photon,
    Vacuum,
}

impl From<InputArg> for Symbol {
    fn from(input: InputArg) -> Symbol {
        match input {
            InputArg::Photon => Symbol::Photon,
            InputArg::Vacuum => Symbol::Vacuum,
        }
    }
}

/// One fully specified parameter point, range-checked on construction
/// from flags so later model-type constructors cannot fail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    pub eta: f64,
    pub xi: f64,
    pub eps: f64,
    pub mu: f64,
    pub p: f64,
}

fn check_flag(flag: &str, value: f64, min: f64, max: f64) -> Result<f64, CliError> {
    if (min..=max).contains(&value) {
        Ok(value)
    } else {
        Err(CliError::Usage(format!(
            "{flag} must lie in [{min}, {max}] (got {value})"
        )))
    }
}

impl Scenario {
    /// Validates the physical flags. The prior is carried through
    /// unchecked; commands that score information call
    /// [`Scenario::require_scoring_prior`] first.
    pub fn from_flags(params: &PhysicalArgs) -> Result<Self, CliError> {
        Ok(Scenario {
            eta: check_flag("--eta", params.eta, 0.0, 1.0)?,
            xi: check_flag("--xi", params.xi, 0.0, 1.0)?,
            eps: check_flag("--eps", params.eps, 0.0, 1.0)?,
            mu: check_flag("--mu", params.mu, -1.0, 1.0)?,
            p: params.p,
        })
    }

    /// Mutual information distinguishes the two symbols only when both
    /// can occur, so scoring requires a prior strictly inside (0, 1).
    pub fn require_scoring_prior(&self) -> Result<(), CliError> {
        if self.p > 0.0 && self.p < 1.0 {
            Ok(())
        } else {
            Err(CliError::Usage(format!(
                "--p must lie strictly between 0 and 1 (got {})",
                self.p
            )))
        }
    }

    /// The same scenario with one parameter replaced by a sweep value.
    pub fn with(&self, parameter: SweepParameter, value: f64) -> Scenario {
        let mut next = *self;
        match parameter {
            SweepParameter::Eps => next.eps = value,
            SweepParameter::Eta => next.eta = value,
            SweepParameter::Xi => next.xi = value,
            SweepParameter::Mu => next.mu = value,
            SweepParameter::P => next.p = value,
        }
        next
    }

    pub fn copier(&self) -> CopierParams {
        CopierParams::new(self.eps, self.mu).expect("flags were range-checked")
    }

    pub fn detector(&self) -> DetectorParams {
        DetectorParams::new(self.eta, self.xi).expect("flags were range-checked")
    }

    /// Whether the closed-form efficiency recursion applies: it is exact
    /// only with zero dark counts and vacuum-shaped copier failures.
    pub fn has_closed_form(&self) -> bool {
        self.xi == 0.0 && self.mu == -1.0
    }
}

fn parse_levels_list(text: &str) -> Result<Vec<u32>, CliError> {
    let levels: Result<Vec<u32>, _> = text.split(',').map(|item| item.trim().parse()).collect();
    match levels {
        Ok(list) if !list.is_empty() => Ok(list),
        _ => Err(CliError::Usage(format!(
            "--levels must be a comma-separated list of non-negative integers (got `{text}`)"
        ))),
    }
}

fn write_output(target: &str, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    if target == "stdout" {
        stdout
            .write_all(text.as_bytes())
            .map_err(|err| CliError::Capability(format!("cannot write to stdout: {err}")))
    } else {
        std::fs::write(target, text)
            .map_err(|err| CliError::Capability(format!("cannot write {target}: {err}")))
    }
}

/// Executes one parsed invocation, writing reports to `stdout` unless an
/// `--output` path redirects them.
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Eval {
            params,
            levels,
            output,
        } => {
            let scenario = Scenario::from_flags(params)?;
            scenario.require_scoring_prior()?;
            if *levels > MAX_EXACT_LEVELS {
                return Err(CliError::Capability(format!(
                    "--levels {levels} exceeds the exact-evaluation maximum of {MAX_EXACT_LEVELS}"
                )));
            }
            let text = report::eval_report(&scenario, *levels)?;
            write_output(&output.output, &text, stdout)
        }
        Command::Sweep {
            params,
            sweep,
            levels,
            output,
        } => {
            let scenario = Scenario::from_flags(params)?;
            scenario.require_scoring_prior()?;
            let spec: SweepSpec = sweep
                .parse()
                .map_err(|err| CliError::Usage(format!("--sweep: {err}")))?;
            let levels = parse_levels_list(levels)?;
            let text = report::sweep_csv(&spec, &scenario, &levels)?;
            write_output(&output.output, &text, stdout)
        }
        Command::Montecarlo {
            params,
            levels,
            trials,
            seed,
            input,
            output,
        } => {
            let scenario = Scenario::from_flags(params)?;
            if *levels > MAX_EXACT_LEVELS {
                return Err(CliError::Capability(format!(
                    "--levels {levels} exceeds the exact-comparison maximum of \
                     {MAX_EXACT_LEVELS}; deeper trees can only be sampled, not verified"
                )));
            }
            if *trials == 0 {
                return Err(CliError::Usage("--trials must be at least 1".to_string()));
            }
            let comparison =
                report::montecarlo_report(&scenario, *levels, (*input).into(), *trials, *seed)?;
            write_output(&output.output, &comparison.text, stdout)?;
            if comparison.distance > comparison.bound {
                return Err(CliError::SamplingInconsistent {
                    distance: comparison.distance,
                    bound: comparison.bound,
                });
            }
            Ok(())
        }
        Command::Fig2 { output } => {
            let text = report::fig2_csv()?;
            write_output(&output.output, &text, stdout)
        }
    }
}
