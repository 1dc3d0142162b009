mod commands;
mod config;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use config::RunConfig;

/// Environment variable holding the worker count. It changes speed only.
pub const THREADS_VAR: &str = "CLIFFWAVE_THREADS";

#[derive(Debug, Parser)]
#[command(name = "cliffwave", version, about = "Clifford-Gegenbauer wavelets and the continuous Clifford wavelet transform")]
struct Cli {
    /// TOML or JSON run configuration; its values override flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Symbolic wavelet construction and its integrals.
    #[command(subcommand)]
    Wavelet(WaveletCmd),
    /// Sampled fields.
    #[command(subcommand)]
    Field(FieldCmd),
    /// Forward and inverse transforms.
    #[command(subcommand)]
    Cwt(CwtCmd),
    /// Isometry, reconstruction and uncertainty checks.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Uncertainty checks over a nested family of regions.
    Sweep {
        #[arg(long)]
        field: PathBuf,
        #[arg(long, value_enum)]
        nest: NestArg,
        /// Dilation factors applied to the region.
        #[arg(long, value_delimiter = ',', default_value = "0.25,0.5,1,1.5,2")]
        factors: Vec<f64>,
        /// Configuration of the region file to dilate (default: the first).
        #[arg(long)]
        label: Option<String>,
    },
    /// Re-hashes the outputs listed in a run manifest.
    Manifest {
        dir: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum WaveletCmd {
    /// Both defining forms, their agreement and the integrability guards.
    Build,
    /// `∫ x^k psi dV` for `k = 0..=k_max`.
    Moments {
        #[arg(long, default_value_t = 3)]
        k_max: u32,
    },
    /// The admissibility constant by radial quadrature and, with `--grid`,
    /// on the sample grid.
    Admissibility {
        #[arg(long)]
        grid: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Source {
    Wavelet,
    Gaussian,
    Modulated,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum NestArg {
    #[value(name = "T", alias = "t")]
    T,
    #[value(name = "Omega", alias = "omega")]
    Omega,
}

#[derive(Debug, Subcommand)]
enum FieldCmd {
    /// Samples a test field on the `--dim`, `--n`, `--h` grid.
    Sample {
        #[arg(long, value_enum, default_value = "modulated")]
        source: Source,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        #[arg(long, default_value_t = 0.0)]
        k0: f64,
        /// Direction of the modulation in the e1 e2 plane, radians.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        angle: f64,
    },
    Norm {
        #[arg(long)]
        field: PathBuf,
    },
    Fft {
        #[arg(long)]
        field: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum CwtCmd {
    Forward {
        #[arg(long)]
        field: PathBuf,
        /// FFT path (default).
        #[arg(long, conflicts_with = "direct")]
        fast: bool,
        /// Full quadrature for every coefficient.
        #[arg(long)]
        direct: bool,
    },
    Inverse {
        #[arg(long)]
        coeffs: PathBuf,
        /// Field whose grid receives the reconstruction (default: the
        /// translation grid).
        #[arg(long)]
        like: Option<PathBuf>,
        #[arg(long)]
        direct: bool,
    },
}

#[derive(Debug, Subcommand)]
enum VerifyCmd {
    Plancherel {
        #[arg(long)]
        field: PathBuf,
        #[arg(long)]
        direct: bool,
    },
    Reconstruction {
        #[arg(long)]
        field: PathBuf,
        #[arg(long)]
        direct: bool,
    },
    DonohoStark {
        #[arg(long)]
        field: PathBuf,
    },
    #[command(name = "proposition41")]
    Proposition41 {
        #[arg(long)]
        field: PathBuf,
    },
}

/// Failure of a run: bad input (exit 2) or a check that did not hold
/// (exit 1).
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Check(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        Self::Input(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Check(_) => 1,
            Self::Input(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Input(m) => write!(f, "input error: {m}"),
            Self::Check(m) => write!(f, "check failed: {m}"),
        }
    }
}

impl From<cliffwave::Error> for CliError {
    fn from(e: cliffwave::Error) -> Self {
        Self::Input(e.to_string())
    }
}

fn init_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var(THREADS_VAR) {
        let n: usize = v.trim().parse().map_err(|_| CliError::input(format!("{THREADS_VAR}={v:?} is not a count")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::input(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}

fn run(cli: Cli) -> Result<(), CliError> {
    init_threads()?;
    let mut cfg = cli.run.clone();
    if let Some(path) = &cli.config {
        cfg.overlay(&RunConfig::load(path)?);
    }
    if let Command::Manifest { dir } = &cli.command {
        let bad = manifest::verify_dir(dir)?;
        if bad.is_empty() {
            println!("all outputs match their checksums");
            return Ok(());
        }
        for b in &bad {
            println!("{b}");
        }
        return Err(CliError::Check(format!("{} output(s) do not match the manifest", bad.len())));
    }
    let name = command_name(&cli.command);
    let mut run = manifest::Run::new(cfg.out_dir(), name, &cfg.to_json())?;
    let result = dispatch(&cli.command, &cfg, &mut run);
    let code = match &result {
        Ok(()) => 0,
        Err(e) => {
            run.warn(e.to_string());
            e.exit_code()
        }
    };
    run.finish(code)?;
    result
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Wavelet(w) => format!("wavelet {}", format!("{w:?}").split_whitespace().next().unwrap_or("").to_lowercase()),
        Command::Field(f) => format!("field {}", format!("{f:?}").split_whitespace().next().unwrap_or("").to_lowercase()),
        Command::Cwt(c) => format!("cwt {}", format!("{c:?}").split_whitespace().next().unwrap_or("").to_lowercase()),
        Command::Verify(v) => format!("verify {}", format!("{v:?}").split_whitespace().next().unwrap_or("").to_lowercase()),
        Command::Sweep { .. } => "sweep".into(),
        Command::Manifest { .. } => "manifest".into(),
    }
}

fn dispatch(c: &Command, cfg: &RunConfig, run: &mut manifest::Run) -> Result<(), CliError> {
    use commands::*;
    match c {
        Command::Wavelet(WaveletCmd::Build) => wavelet_build(cfg, run),
        Command::Wavelet(WaveletCmd::Moments { k_max }) => wavelet_moments(cfg, run, *k_max),
        Command::Wavelet(WaveletCmd::Admissibility { grid }) => wavelet_admissibility(cfg, run, *grid),
        Command::Field(FieldCmd::Sample { source, sigma, k0, angle }) => {
            let src = match source {
                Source::Wavelet => SampleSource::Wavelet,
                Source::Gaussian => SampleSource::Gaussian { sigma: *sigma },
                Source::Modulated => SampleSource::Modulated { sigma: *sigma, k0: *k0, angle: *angle },
            };
            field_sample(cfg, run, src)
        }
        Command::Field(FieldCmd::Norm { field }) => field_norm(run, field),
        Command::Field(FieldCmd::Fft { field }) => field_fft(run, field),
        Command::Cwt(CwtCmd::Forward { field, direct, .. }) => cwt_forward(cfg, run, field, RunConfig::method(*direct)),
        Command::Cwt(CwtCmd::Inverse { coeffs, like, direct }) => {
            cwt_inverse(cfg, run, coeffs, like.as_deref(), RunConfig::method(*direct))
        }
        Command::Verify(VerifyCmd::Plancherel { field, direct }) => verify_plancherel(cfg, run, field, RunConfig::method(*direct)),
        Command::Verify(VerifyCmd::Reconstruction { field, direct }) => {
            verify_reconstruction(cfg, run, field, RunConfig::method(*direct))
        }
        Command::Verify(VerifyCmd::DonohoStark { field }) => verify_uncertainty(cfg, run, field, UncertaintyKind::Full),
        Command::Verify(VerifyCmd::Proposition41 { field }) => {
            verify_uncertainty(cfg, run, field, UncertaintyKind::Proposition41)
        }
        Command::Sweep { field, nest, factors, label } => {
            let nest = match nest {
                NestArg::T => cliffwave::uncertainty::Nest::T,
                NestArg::Omega => cliffwave::uncertainty::Nest::Omega,
            };
            sweep(cfg, run, field, nest, factors, label.as_deref())
        }
        Command::Manifest { .. } => unreachable!("handled before the run starts"),
    }
}
