//! `gsp4`: evaluation and verification suites for Bessel models on GSp(4,ℝ).
//!
//! Exit codes: 0 when every check passes, 1 on a tolerance failure or a
//! numerical error, 2 on a usage error.

mod commands;
mod output;

use std::f64::consts::PI;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gsp4_core::group::ChartPoint;
use gsp4_core::nonsplit::BesselParams;
use gsp4_core::split::{Branch, SplitParams};
use num_complex::Complex64;
use thiserror::Error;

use commands::{Outcome, PointSet, Suite, TableSource, ZetaArgs};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] gsp4_core::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use gsp4_core::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(
                E::InvalidWeights { .. }
                | E::NotRepresentable { .. }
                | E::ParameterRegionUnsupported { .. }
                | E::ChartSingularity { .. }
                | E::DivergentRegion { .. },
            ) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "gsp4", version, about = "Bessel models on GSp(4,R): evaluation and verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Structural checks that need no parameters.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// The lowest weight non-split Bessel function.
    #[command(subcommand)]
    Bessel(BesselCmd),
    /// Climb from `(l, l')` towards `(l, l)` and check `N+` annihilation.
    Ladder(LadderArgs),
    /// The split formal solution.
    #[command(subcommand)]
    Split(SplitCmd),
    /// Archimedean zeta integral, closed form and optional quadrature.
    Zeta(ZetaCli),
    /// Integrability of `|B0|^p` over `R\G`.
    LpCheck(LpArgs),
}

#[derive(Debug, Subcommand)]
enum VerifyCmd {
    /// Recompute the 100 brackets of the complex basis and compare with the table.
    LieTable,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct Weights {
    #[arg(long)]
    l: i32,
    #[arg(long)]
    lp: i32,
    #[arg(long, default_value_t = 0)]
    m: i32,
    /// Torus exponent, e.g. `0.5`, `1-2i`.
    #[arg(long, default_value = "0", value_parser = parse_complex, allow_hyphen_values = true)]
    s: Complex64,
}

impl Weights {
    fn params(&self) -> Result<BesselParams, CliError> {
        Ok(BesselParams::new(self.l, self.lp, self.m, self.s)?)
    }
}

#[derive(Debug, Args)]
struct Sampling {
    /// Number of random points.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum BesselCmd {
    /// Value of `B0` at a chart point.
    #[command(allow_negative_numbers = true)]
    Eval {
        #[command(flatten)]
        w: Weights,
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        zeta: f64,
        #[arg(long, default_value_t = 0.0)]
        phi1: f64,
        #[arg(long, default_value_t = 0.0)]
        phi2: f64,
    },
    /// Run one verification suite, or all of them.
    #[command(allow_negative_numbers = true)]
    Verify {
        #[command(flatten)]
        w: Weights,
        #[arg(long, value_enum)]
        suite: Option<Suite>,
        #[command(flatten)]
        sampling: Sampling,
    },
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct LadderArgs {
    #[command(flatten)]
    w: Weights,
    /// Number of recursion steps; defaults to `(l - l') / 2`.
    #[arg(long)]
    k: Option<usize>,
    /// Write `lambda,zeta,phi1,phi2,re,im` rows for the sample points.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Off-axis points lose accuracy for k >= 3 near cos 2phi2 = 0.
    #[arg(long, value_enum, default_value = "grid")]
    points: PointSet,
    #[command(flatten)]
    sampling: Sampling,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BranchArg {
    Positive,
    Negative,
}

#[derive(Debug, Subcommand)]
enum SplitCmd {
    /// Growth table `beta,t,log_gap` along the witness ray, as CSV.
    #[command(allow_negative_numbers = true)]
    Demo {
        #[arg(long)]
        l: i32,
        #[arg(long)]
        lp: i32,
        #[arg(long, default_value_t = 50.0)]
        beta_max: f64,
        #[arg(long, default_value = "0", value_parser = parse_complex, allow_hyphen_values = true)]
        s1: Complex64,
        #[arg(long, default_value = "0", value_parser = parse_complex, allow_hyphen_values = true)]
        s2: Complex64,
        #[arg(long, default_value_t = PI / 4.0)]
        phi1: f64,
        #[arg(long, default_value_t = PI / 8.0)]
        phi2: f64,
        #[arg(long, value_enum, default_value = "positive")]
        branch: BranchArg,
    },
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct ZetaCli {
    #[arg(long)]
    l: i32,
    #[arg(long)]
    n: i32,
    #[arg(long = "D")]
    d: u32,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    s: Complex64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    r: Complex64,
    #[arg(long, default_value = "1", value_parser = parse_complex, allow_hyphen_values = true)]
    c1: Complex64,
    /// Also integrate numerically and report the relative error.
    #[arg(long)]
    quadrature: bool,
    #[arg(long, value_enum, default_value = "fitted")]
    table: TableSource,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct LpArgs {
    #[arg(long)]
    l: i32,
    #[arg(long)]
    lp: i32,
    #[arg(long, default_value_t = 0)]
    m: i32,
    #[arg(long)]
    p: f64,
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    s.trim().parse::<Complex64>().map_err(|e| format!("`{s}` is not a complex number: {e}"))
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("GSP4_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("GSP4_THREADS must be a positive integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn dispatch(cmd: Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Verify(VerifyCmd::LieTable) => commands::lie_table(),
        Command::Bessel(BesselCmd::Eval { w, lambda, zeta, phi1, phi2 }) => {
            commands::bessel_eval(w.params()?, ChartPoint::nonsplit(lambda, zeta, phi1, phi2))
        }
        Command::Bessel(BesselCmd::Verify { w, suite, sampling }) => {
            commands::bessel_verify(w.params()?, suite, sampling.samples, sampling.seed)
        }
        Command::Ladder(a) => commands::ladder_cmd(
            a.w.params()?,
            &commands::LadderArgs {
                k: a.k,
                points: a.points,
                samples: a.sampling.samples,
                seed: a.sampling.seed,
                csv_path: a.csv.as_deref(),
            },
        ),
        Command::Split(SplitCmd::Demo { l, lp, beta_max, s1, s2, phi1, phi2, branch }) => {
            let prm = SplitParams::new(l, lp, s1, s2)?;
            let branch = match branch {
                BranchArg::Positive => Branch::Positive,
                BranchArg::Negative => Branch::Negative,
            };
            let (out, summary) = commands::split_demo(prm, beta_max, (phi1, phi2), branch)?;
            eprint!("{summary}");
            Ok(out)
        }
        Command::Zeta(z) => commands::zeta(&ZetaArgs {
            l: z.l,
            n: z.n,
            d: z.d,
            s: z.s,
            r: z.r,
            c1: z.c1,
            quadrature: z.quadrature,
            table: z.table,
        }),
        Command::LpCheck(a) => commands::lp_check(a.l, a.lp, a.m, a.p),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| dispatch(cli.command));
    match result {
        Ok(out) => {
            let mut so = std::io::stdout().lock();
            if so.write_all(out.stdout.as_bytes()).and_then(|()| so.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
