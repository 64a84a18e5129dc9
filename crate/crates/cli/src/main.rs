use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use orrsom_core::enclosure::Variant;
use orrsom_core::operator::Scheme;

mod commands;
mod config;

use config::{Format, ProfileSpec, RunConfig};

#[derive(Parser)]
#[command(name = "orrsom", version, about = "Orr-Sommerfeld spectra and eigenvalue enclosures on the half-line")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// blasius, constant:<c> or file:<path>
    #[arg(long, default_value = "blasius")]
    profile: ProfileSpec,
    /// Wave number.
    #[arg(long, default_value_t = 0.179)]
    a: f64,
    /// Reynolds number.
    #[arg(long = "R", default_value_t = 580.0)]
    r: f64,
    /// Collocation nodes of the coarse grid; the fine grid uses 2N.
    #[arg(long = "N", default_value_t = 128)]
    n: usize,
    /// Truncation length (also the profile plotting range).
    #[arg(long, default_value_t = 100.0)]
    xmax: f64,
    /// truncated or algebraic
    #[arg(long, default_value = "truncated")]
    scheme: Scheme,
    /// Map parameter L of the algebraic scheme.
    #[arg(long, default_value_t = 10.0)]
    map_param: f64,
    /// Region variants, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "thm33")]
    variant: Vec<Variant>,
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    jobs: Option<usize>,
    /// Relative membership slack, scaled by 1 + |λ|.
    #[arg(long, default_value_t = 1e-6)]
    slack: f64,
    #[arg(long, default_value_t = 1e-8)]
    residual_tol: f64,
    #[arg(long, default_value_t = 1e-4)]
    drift_tol: f64,
}

impl Common {
    fn config(&self) -> RunConfig {
        let map_param = match self.scheme {
            Scheme::TruncatedChebyshev => self.xmax,
            Scheme::AlgebraicMap => self.map_param,
        };
        RunConfig {
            profile: self.profile.clone(),
            a: self.a,
            r: self.r,
            n: self.n,
            scheme: self.scheme,
            x_max: self.xmax,
            map_param,
            residual_tol: self.residual_tol,
            drift_tol: self.drift_tol,
            slack: self.slack,
            variants: self.variant.clone(),
            out: self.out.clone(),
            format: self.format,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write profile.csv and bounds.json.
    Profile(Common),
    /// Solve at N and 2N, filter, write spectrum.json.
    Spectrum {
        #[command(flatten)]
        common: Common,
        /// Also write the bordered pencil at N as pencil_A.txt / pencil_B.txt.
        #[arg(long)]
        export_pencil: bool,
    },
    /// Write ray.csv, region_<variant>.csv and box.json.
    Enclosure(Common),
    /// Check every kept eigenvalue against the regions; exit 1 on any miss.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Verify a previously written spectrum.json instead of solving.
        #[arg(long)]
        spectrum_file: Option<PathBuf>,
    },
    /// Verify over a grid of (a, R) points; writes sweep.json.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', required = true)]
        a_list: Vec<f64>,
        #[arg(long = "R-list", value_delimiter = ',', required = true)]
        r_list: Vec<f64>,
    },
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Profile(c) => commands::profile(&c.config()).map(|_| true),
        Command::Spectrum { common, export_pencil } => commands::spectrum(&common.config(), export_pencil).map(|_| true),
        Command::Enclosure(c) => commands::enclosure(&c.config()).map(|_| true),
        Command::Verify { common, spectrum_file } => commands::verify(&common.config(), spectrum_file.as_deref()),
        Command::Sweep { common, a_list, r_list } => {
            commands::sweep(&common.config(), &a_list, &r_list, common.jobs).map(|_| true)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::new().filter_level(log::LevelFilter::Warn).parse_default_env().init();
    let cli = Cli::parse();
    if let Some(jobs) = match &cli.command {
        Command::Profile(c) | Command::Enclosure(c) => c.jobs,
        Command::Spectrum { common, .. } | Command::Verify { common, .. } | Command::Sweep { common, .. } => common.jobs,
    } {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            log::warn!("could not size the worker pool: {e}");
        }
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
