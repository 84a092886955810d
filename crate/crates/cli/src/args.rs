//! Command-line grammar and its validation into a [`Request`].

use clap::{Args, Parser, Subcommand, ValueEnum};
use nhlab::rational::{parse_rational, Q};
use nhlab::repbuilder::DEFAULT_MAX_DIM;
use nhlab::rootsys::{CartanType, Weight};
use std::num::NonZeroUsize;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "nh-lab", version, about = "Exact n-homology of finite-dimensional Lie algebra representations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,
    /// Worker threads for weight-block computations.
    #[arg(long, global = true, default_value = "1")]
    pub threads: NonZeroUsize,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Roots, Cartan matrix, rho and Weyl group order.
    Roots(SystemArgs),
    /// Irreducible module with lowest weight lambda + rho.
    Irrep(IrrepArgs),
    /// n-homology, checked against Kostant's theorem.
    Homology(ComplexArgs),
    /// n-cohomology.
    Cohomology(ComplexArgs),
    /// Homology against cohomology under the top exterior power shift.
    Duality(ComplexArgs),
    /// Kostant prediction only.
    Kostant(KostantArgs),
    /// Chains of simple roots and predicted homology of standard modules.
    Complexgroup(ChainArgs),
    /// Invariant suite over every system of rank at most 2.
    Selftest,
}

#[derive(Args, Debug)]
pub struct SystemArgs {
    /// Cartan type, A to G.
    #[arg(long = "type", value_name = "TYPE")]
    pub type_label: String,
    /// Rank of the root system.
    #[arg(long)]
    pub rank: usize,
}

#[derive(Args, Debug)]
pub struct LambdaArg {
    /// Shifted parameter in fundamental-weight coordinates, e.g. -2,-1/1.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_weight)]
    pub lambda: RationalList,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    /// Largest module dimension that may be constructed.
    #[arg(long, default_value_t = DEFAULT_MAX_DIM)]
    pub max_dim: usize,
    /// Directory for cached structure constants.
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct IrrepArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub lambda: LambdaArg,
    #[command(flatten)]
    pub build: BuildArgs,
}

#[derive(Args, Debug)]
pub struct ComplexArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub lambda: LambdaArg,
    /// 1-based simple roots of the Levi factor; omitted for the Borel.
    #[arg(long, value_parser = parse_indices, default_value = "")]
    pub parabolic: IndexList,
    #[command(flatten)]
    pub build: BuildArgs,
}

#[derive(Args, Debug)]
pub struct KostantArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub lambda: LambdaArg,
    #[arg(long, value_parser = parse_indices, default_value = "")]
    pub parabolic: IndexList,
    #[arg(long, default_value_t = DEFAULT_MAX_DIM)]
    pub max_dim: usize,
}

#[derive(Args, Debug)]
pub struct ChainArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    pub lambda: LambdaArg,
    /// 1-based positive-root indices; all chains are listed when omitted.
    #[arg(long, value_parser = parse_indices)]
    pub chain: Option<IndexList>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Table,
}

/// Comma-separated rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalList(pub Vec<Q>);

/// Comma-separated 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexList(pub Vec<usize>);

fn parse_weight(s: &str) -> Result<RationalList, String> {
    s.split(',')
        .map(|tok| parse_rational(tok.trim()).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()
        .map(RationalList)
}

fn parse_indices(s: &str) -> Result<IndexList, String> {
    if s.trim().is_empty() {
        return Ok(IndexList(Vec::new()));
    }
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|_| format!("malformed index {tok:?}"))
        })
        .collect::<Result<_, _>>()
        .map(IndexList)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Roots,
    Irrep,
    Homology,
    Cohomology,
    Duality,
    Kostant,
    Complexgroup,
    Selftest,
}

impl CommandKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CommandKind::Roots => "roots",
            CommandKind::Irrep => "irrep",
            CommandKind::Homology => "homology",
            CommandKind::Cohomology => "cohomology",
            CommandKind::Duality => "duality",
            CommandKind::Kostant => "kostant",
            CommandKind::Complexgroup => "complexgroup",
            CommandKind::Selftest => "selftest",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SystemSpec {
    pub cartan: CartanType,
    pub rank: usize,
}

/// A validated request. Index lists are 0-based here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Request {
    pub command: CommandKind,
    pub system: Option<SystemSpec>,
    pub lambda: Option<Weight>,
    pub parabolic: Option<Vec<usize>>,
    /// Positive-root indices.
    pub chain: Option<Vec<usize>>,
    pub output: OutputFormat,
    pub threads: NonZeroUsize,
    pub max_dim: Option<usize>,
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum UsageError {
    #[error(transparent)]
    Clap(#[from] clap::Error),
    #[error("{0}")]
    Invalid(String),
}

impl UsageError {
    /// `--help` and `--version` are reported through clap but are not
    /// failures.
    pub fn is_informational(&self) -> bool {
        matches!(self, UsageError::Clap(e) if matches!(
            e.kind(),
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
        ))
    }
}

fn system(args: &SystemArgs) -> Result<SystemSpec, UsageError> {
    let cartan: CartanType = args
        .type_label
        .parse()
        .map_err(|e: String| UsageError::Invalid(format!("--type: {e}")))?;
    if !cartan.is_valid_rank(args.rank) {
        let hint = match (args.rank, cartan.to_string().as_str()) {
            (1, "B" | "C") => " (use A1)",
            (2, "C") => " (use B2)",
            (3, "D") => " (use A3)",
            _ => "",
        };
        return Err(UsageError::Invalid(format!(
            "--rank: {cartan}{} is not a root system{hint}",
            args.rank
        )));
    }
    Ok(SystemSpec { cartan, rank: args.rank })
}

fn lambda(arg: &LambdaArg, sys: SystemSpec) -> Result<Weight, UsageError> {
    let coords = &arg.lambda.0;
    if coords.len() != sys.rank {
        return Err(UsageError::Invalid(format!(
            "--lambda: expected {} coordinates, found {}",
            sys.rank,
            coords.len()
        )));
    }
    Ok(Weight::new(coords.clone()))
}

fn one_based(flag: &str, indices: &[usize], bound: usize) -> Result<Vec<usize>, UsageError> {
    indices
        .iter()
        .map(|&i| {
            if i == 0 || i > bound {
                Err(UsageError::Invalid(format!("{flag}: index {i} out of range 1..={bound}")))
            } else {
                Ok(i - 1)
            }
        })
        .collect()
}

fn levi(indices: &[usize], sys: SystemSpec) -> Result<Vec<usize>, UsageError> {
    let mut out = one_based("--parabolic", indices, sys.rank)?;
    out.sort_unstable();
    if out.windows(2).any(|w| w[0] == w[1]) {
        return Err(UsageError::Invalid("--parabolic: repeated index".into()));
    }
    Ok(out)
}

fn num_positive(sys: SystemSpec) -> usize {
    let n = sys.rank;
    match sys.cartan {
        CartanType::A => n * (n + 1) / 2,
        CartanType::B | CartanType::C => n * n,
        CartanType::D => n * (n - 1),
        CartanType::E => [36, 63, 120][n - 6],
        CartanType::F => 24,
        CartanType::G => 6,
    }
}

pub fn parse<I, T>(argv: I) -> Result<Request, UsageError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    let mut req = Request {
        command: CommandKind::Selftest,
        system: None,
        lambda: None,
        parabolic: None,
        chain: None,
        output: cli.output,
        threads: cli.threads,
        max_dim: None,
        cache_dir: None,
    };
    match &cli.command {
        Cmd::Roots(a) => {
            req.command = CommandKind::Roots;
            req.system = Some(system(a)?);
        }
        Cmd::Irrep(a) => {
            let sys = system(&a.system)?;
            req.command = CommandKind::Irrep;
            req.system = Some(sys);
            req.lambda = Some(lambda(&a.lambda, sys)?);
            req.max_dim = Some(a.build.max_dim);
            req.cache_dir = a.build.cache_dir.clone();
        }
        Cmd::Homology(a) | Cmd::Cohomology(a) | Cmd::Duality(a) => {
            let sys = system(&a.system)?;
            req.command = match cli.command {
                Cmd::Homology(_) => CommandKind::Homology,
                Cmd::Cohomology(_) => CommandKind::Cohomology,
                _ => CommandKind::Duality,
            };
            req.system = Some(sys);
            req.lambda = Some(lambda(&a.lambda, sys)?);
            req.parabolic = Some(levi(&a.parabolic.0, sys)?);
            req.max_dim = Some(a.build.max_dim);
            req.cache_dir = a.build.cache_dir.clone();
        }
        Cmd::Kostant(a) => {
            let sys = system(&a.system)?;
            req.command = CommandKind::Kostant;
            req.system = Some(sys);
            req.lambda = Some(lambda(&a.lambda, sys)?);
            req.parabolic = Some(levi(&a.parabolic.0, sys)?);
            req.max_dim = Some(a.max_dim);
        }
        Cmd::Complexgroup(a) => {
            let sys = system(&a.system)?;
            req.command = CommandKind::Complexgroup;
            req.system = Some(sys);
            req.lambda = Some(lambda(&a.lambda, sys)?);
            req.chain = a
                .chain
                .as_ref()
                .map(|c| one_based("--chain", &c.0, num_positive(sys)))
                .transpose()?;
        }
        Cmd::Selftest => {}
    }
    Ok(req)
}
