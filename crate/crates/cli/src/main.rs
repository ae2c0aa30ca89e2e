mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use floorsum_core::{Error, Limits};

use output::Format;

#[derive(Parser, Debug)]
#[command(
    name = "floorsum",
    version,
    about = "Totient floor-sums S_{j,k}(x) and their asymptotics"
)]
pub struct Cli {
    /// Worker threads; defaults to the machine's parallelism.
    #[arg(long, global = true, env = "FLOORSUM_THREADS")]
    pub threads: Option<usize>,

    /// Largest table a single operation may allocate, in bytes.
    #[arg(long, global = true, default_value_t = 1u64 << 33)]
    pub memory_cap: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Report elapsed time as 0 so output is byte-for-byte reproducible.
    #[arg(long, global = true)]
    pub no_timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate S_{j,k}(x).
    Compute(ComputeArgs),
    /// Fit the growth exponent of |S − main term| on a geometric grid.
    Fit(FitArgs),
    /// Run a verification suite; exit 1 if any check fails.
    Verify(VerifyArgs),
    /// The main-term constant C(c′).
    Constant(ConstantArgs),
    /// The main term of S_{j,k}(x) and the exponent Θ.
    Mainterm(MaintermArgs),
    /// Φ(N) = Σφ(n) or M(N) = Σμ(n).
    Summatory(SummatoryArgs),
    /// Compare ψ(t) with its degree-H Vaaler approximation.
    PsiCheck(PsiCheckArgs),
    /// Dyadic sawtooth sums ℧_{δ,j,k}(x, W) against their power envelope.
    Mho(MhoArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Naive,
    Block,
    Hybrid,
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    #[arg(long)]
    pub j: f64,
    #[arg(long)]
    pub k: f64,
    #[arg(long, value_parser = parse_count)]
    pub x: u64,
    #[arg(long, value_enum, default_value_t = Method::Hybrid)]
    pub method: Method,
}

#[derive(Args, Debug)]
pub struct FitArgs {
    #[arg(long)]
    pub j: f64,
    #[arg(long)]
    pub k: f64,
    #[arg(long, value_parser = parse_count)]
    pub xmin: u64,
    #[arg(long, value_parser = parse_count)]
    pub xmax: u64,
    #[arg(long, default_value_t = 9)]
    pub points: usize,
    /// CSV destination.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Oracle,
    Decomposition,
    Sandwich,
    Vaaler,
    Walfisz,
    Floorpow,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 1.0)]
    pub j: f64,
    #[arg(long, default_value_t = 1.0)]
    pub k: f64,
    /// Sweep bound for oracle, sandwich and floorpow.
    #[arg(long, value_parser = parse_count)]
    pub xmax: Option<u64>,
    #[arg(long, value_parser = parse_count)]
    pub x: Option<u64>,
    /// Hyperbola split point; defaults to x^{1/3}.
    #[arg(long)]
    pub z: Option<f64>,
    /// Integer exponent j − k for the sandwich, real exponent for floorpow.
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long = "H", value_delimiter = ',', default_values_t = [4u32, 16, 64])]
    pub h: Vec<u32>,
    #[arg(long, default_value_t = 10_000)]
    pub grid: usize,
    #[arg(long, value_parser = parse_count, default_value = "10000000")]
    pub n: u64,
    /// Also print the report as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct ConstantArgs {
    /// c′ = k − j + 2 ≥ 2.
    #[arg(long = "c-prime")]
    pub c_prime: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub eps: f64,
}

#[derive(Args, Debug)]
pub struct MaintermArgs {
    #[arg(long)]
    pub j: f64,
    #[arg(long)]
    pub k: f64,
    #[arg(long, value_parser = parse_count)]
    pub x: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SummatoryKindArg {
    Phi,
    Mertens,
}

#[derive(Args, Debug)]
pub struct SummatoryArgs {
    #[arg(long, value_enum)]
    pub kind: SummatoryKindArg,
    #[arg(long, value_parser = parse_count)]
    pub n: u64,
}

#[derive(Args, Debug)]
pub struct PsiCheckArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub t: f64,
    #[arg(long = "H")]
    pub h: u32,
}

#[derive(Args, Debug)]
pub struct MhoArgs {
    #[arg(long, value_parser = parse_count)]
    pub x: u64,
    #[arg(long)]
    pub j: f64,
    #[arg(long)]
    pub k: f64,
    #[arg(long, default_value_t = 0)]
    pub delta: u8,
    /// Single dyadic block start W.
    #[arg(long, value_parser = parse_count, conflicts_with = "sweep")]
    pub w: Option<u64>,
    /// Sweep W = 2^lo, …, 2^hi, written `lo..hi`.
    #[arg(long, value_parser = parse_range)]
    pub sweep: Option<(u32, u32)>,
    #[arg(long, default_value_t = 0.0)]
    pub eps: f64,
}

/// Accepts plain integers and exact scientific forms such as `1e4`.
fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let v: f64 = s.parse().map_err(|_| format!("not a number: {s}"))?;
    if v.fract() != 0.0 || !(0.0..=u64::MAX as f64).contains(&v) || v >= 2f64.powi(53) {
        return Err(format!(
            "not an exactly representable non-negative integer: {s}"
        ));
    }
    Ok(v as u64)
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected lo..hi, got {s}"))?;
    let lo: u32 = lo.parse().map_err(|_| format!("bad lower bound in {s}"))?;
    let hi: u32 = hi.parse().map_err(|_| format!("bad upper bound in {s}"))?;
    if lo > hi || hi > 62 {
        return Err(format!("need lo <= hi <= 62, got {s}"));
    }
    Ok((lo, hi))
}

/// Why a command stopped; each maps to one exit code.
#[derive(Debug)]
pub enum Failure {
    Verification(String),
    Core(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Core(Error::Domain(_)) => 2,
            Failure::Core(Error::Capacity { .. } | Error::Precision { .. }) | Failure::Io(_) => 3,
            Failure::Core(Error::InsufficientData { .. }) => 4,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Verification(m) => format!("verification failed: {m}"),
            Failure::Core(e) => e.to_string(),
            Failure::Io(m) => format!("i/o error: {m}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = setup(&cli).and_then(|limits| commands::run(&cli, &limits));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("floorsum: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}

fn setup(cli: &Cli) -> Result<Limits, Failure> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(Error::Domain("--threads must be at least 1".into()).into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Failure::Io(e.to_string()))?;
    }
    Ok(Limits::default().with_memory_cap(cli.memory_cap)?)
}
