//! Command layer: argument parsing, run configuration, dispatch and exit codes.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use cubicwa_core::field::prime_power;
use cubicwa_core::{make_field, Error, Gf, Limits};

pub mod report;
pub mod suites;

pub use report::{Format, Report, Verdict};

#[derive(Parser, Debug, Clone)]
#[command(name = "cubicwa", version, about = "Cubic hypersurfaces, quartic del Pezzo surfaces and weak approximation over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Exact identity F(phi) = 0 for seeded nodal cubics.
    CubicCensus,
    /// Conjugate-pair lines at every rational point of cubic surfaces.
    Conjline,
    /// Rational curves through pairs of points on a cubic threefold.
    Connect,
    /// Hyperplane census at smooth points of seeded quartic del Pezzo surfaces.
    Dp4Census,
    /// Planes with an inert residual triple on a split quartic del Pezzo surface.
    Dp4Plane,
    /// Line census and inert lines for plane cubics.
    PlaneCubicCensus,
    /// Section search against jet data.
    WaSearch,
    /// Quadratic descent of a section over the quadratic extension.
    WaDescend,
    /// Lift, search, descend and verify.
    WaPipeline,
    /// Every acceptance suite at full size.
    VerifySuite,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::CubicCensus => "cubic-census",
            Command::Conjline => "conjline",
            Command::Connect => "connect",
            Command::Dp4Census => "dp4-census",
            Command::Dp4Plane => "dp4-plane",
            Command::PlaneCubicCensus => "plane-cubic-census",
            Command::WaSearch => "wa-search",
            Command::WaDescend => "wa-descend",
            Command::WaPipeline => "wa-pipeline",
            Command::VerifySuite => "verify-suite",
        }
    }
}

#[derive(clap::Args, Debug, Clone, Default)]
pub struct Options {
    /// Field size (a prime power).
    #[arg(long, global = true)]
    pub q: Option<u64>,
    /// Field characteristic, with --m.
    #[arg(long, global = true)]
    pub p: Option<u64>,
    /// Field degree over the prime field, with --p.
    #[arg(long, global = true)]
    pub m: Option<u32>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true)]
    pub exhaustive: bool,
    #[arg(long, global = true)]
    pub dmax: Option<usize>,
    /// Jet order.
    #[arg(long = "N", global = true)]
    pub order: Option<usize>,
    #[arg(long, global = true, default_value_t = Limits::default().budget)]
    pub budget: u64,
    /// Largest extension degree used to certify smoothness.
    #[arg(long, global = true, default_value_t = Limits::default().ext_depth)]
    pub ext_depth: u32,
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Records)]
    pub format: Format,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// `fermat`, `random`, or a form document.
    #[arg(long, global = true)]
    pub surface: Option<String>,
    /// Form or quadric-pair document.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    #[arg(long, global = true)]
    pub model: Option<PathBuf>,
    #[arg(long, global = true)]
    pub jdata: Option<PathBuf>,
    #[arg(long, global = true)]
    pub section: Option<PathBuf>,
}

/// Everything a command needs besides its inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub seed: u64,
    pub limits: Limits,
    pub workers: Option<usize>,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            limits: Limits::default(),
            workers: None,
            format: Format::Records,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn from_options(o: &Options) -> RunConfig {
        RunConfig {
            seed: o.seed,
            limits: Limits {
                budget: o.budget,
                ext_depth: o.ext_depth,
            },
            workers: o.workers,
            format: o.format,
            out: o.out.clone(),
        }
    }

    pub fn echo(&self, r: &mut Report) {
        r.config("seed", self.seed)
            .config("budget", self.limits.budget)
            .config("ext_depth", self.limits.ext_depth);
    }
}

/// A run that produced no report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub error: Error,
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.error)
    }
}

impl std::error::Error for CliError {}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

impl CliError {
    /// Errors while reading or validating inputs.
    pub fn input(error: Error) -> CliError {
        let code = match error {
            Error::SizeExceeded { .. } => EXIT_BUDGET,
            _ => EXIT_INPUT,
        };
        CliError { code, error }
    }

    /// Errors raised while running a module operation.
    pub fn run(error: Error) -> CliError {
        let code = match error {
            Error::SizeExceeded { .. } => EXIT_BUDGET,
            Error::Parse { .. } | Error::InvalidInput(_) | Error::NonPrimeCharacteristic(_) | Error::CharTwoUnsupported => EXIT_INPUT,
            _ => EXIT_FAIL,
        };
        CliError { code, error }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::run(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// The field selected by `--q` or `--p/--m`, or `default` when neither is given.
pub fn field_from(o: &Options, default: u64) -> CliResult<Gf> {
    let from_pm = match (o.p, o.m) {
        (Some(p), m) => Some((p, m.unwrap_or(1))),
        (None, Some(_)) => return Err(CliError::input(Error::invalid("--m requires --p"))),
        (None, None) => None,
    };
    let (p, m) = match (o.q, from_pm) {
        (Some(q), None) => prime_power(q).ok_or_else(|| CliError::input(Error::invalid(format!("{q} is not a prime power"))))?,
        (None, Some(pm)) => pm,
        (Some(q), Some((p, m))) => {
            if p.checked_pow(m) != Some(q) {
                return Err(CliError::input(Error::invalid(format!("--q {q} disagrees with --p {p} --m {m}"))));
            }
            (p, m)
        }
        (None, None) => prime_power(default).expect("default field size"),
    };
    make_field(p, m).map_err(CliError::input)
}

pub fn read_input(path: &PathBuf) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::input(Error::invalid(format!("{}: {e}", path.display()))))
}

/// Dispatches a command and returns its report.
pub fn run(command: Command, o: &Options) -> CliResult<Report> {
    let cfg = RunConfig::from_options(o);
    let mut report = match command {
        Command::CubicCensus => suites::cubic_census(o, &cfg)?,
        Command::Conjline => suites::conjline(o, &cfg)?,
        Command::Connect => suites::connect(o, &cfg)?,
        Command::Dp4Census => suites::dp4_census(o, &cfg)?,
        Command::Dp4Plane => suites::dp4_plane(o, &cfg)?,
        Command::PlaneCubicCensus => suites::plane_cubic_census(o, &cfg)?,
        Command::WaSearch => suites::wa_search(o, &cfg)?,
        Command::WaDescend => suites::wa_descend(o, &cfg)?,
        Command::WaPipeline => suites::wa_pipeline(o, &cfg)?,
        Command::VerifySuite => suites::verify_suite(&cfg)?,
    };
    report.command = command.name().to_string();
    Ok(report)
}

/// Runs a command under a worker pool and writes its report; returns the exit code.
pub fn execute(cli: &Cli) -> i32 {
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.options.workers.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: worker pool: {e}");
            return EXIT_INPUT;
        }
    };
    let started = std::time::Instant::now();
    let outcome = pool.install(|| run(cli.command, &cli.options));
    eprintln!("{}: {:.2?}", cli.command.name(), started.elapsed());
    match outcome {
        Ok(report) => {
            let text = report.render(cli.options.format);
            let written = match &cli.options.out {
                Some(path) => std::fs::write(path, &text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return EXIT_INPUT;
            }
            report.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.code
        }
    }
}
