//! `domekit`: bound tables, the annulus family, domes, laminations, earthquakes and
//! quasiconformal estimates from the command line.
//!
//! Exit status is 0 on success, 1 when a library module rejects the input and 2 on usage errors.

mod commands;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use domekit::hyperbolic::ExtComplex;
use output::{Format, Report};

#[derive(Parser, Debug)]
#[command(name = "domekit", version, about = "Domes, bending laminations and quasiconformal bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Debug)]
struct Global {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, env = "DOMEKIT_THREADS", global = true)]
    threads: Option<usize>,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Explicit bounds as functions of the injectivity radii.
    #[command(subcommand)]
    Bounds(BoundsCommand),
    /// The round annulus family.
    #[command(subcommand)]
    Annulus(AnnulusCommand),
    /// Domes of finitely punctured spheres.
    #[command(subcommand)]
    Dome(DomeCommand),
    /// Finite measured laminations.
    #[command(subcommand)]
    Lamination(LaminationCommand),
    /// Complex earthquakes.
    #[command(subcommand)]
    Earthquake(EarthquakeCommand),
    /// Angle scalings of crescents.
    #[command(subcommand)]
    Crescent(CrescentCommand),
    /// Grid estimates of Beltrami coefficients.
    #[command(subcommand)]
    Qc(QcCommand),
}

#[derive(Subcommand, Debug)]
enum BoundsCommand {
    /// Every bound available at one ν and/or ν̂.
    Eval {
        #[arg(long, required_unless_present = "nu_hat")]
        nu: Option<f64>,
        #[arg(long)]
        nu_hat: Option<f64>,
    },
    /// The bounds in ν over a grid.
    Table {
        #[arg(long)]
        nu_min: f64,
        #[arg(long)]
        nu_max: f64,
        #[arg(long, default_value_t = 50)]
        points: usize,
        /// Space the grid logarithmically.
        #[arg(long)]
        log: bool,
    },
}

#[derive(Subcommand, Debug)]
enum AnnulusCommand {
    /// Closed forms and bound verdicts over a grid of s.
    Table {
        #[arg(long)]
        s_min: f64,
        #[arg(long)]
        s_max: f64,
        #[arg(long, default_value_t = 50)]
        points: usize,
    },
}

#[derive(Subcommand, Debug)]
enum DomeCommand {
    /// Hull faces, edges and bending angles.
    Build {
        /// `{"points": [[re, im] | "inf", ...]}`
        #[arg(long)]
        input: PathBuf,
        /// Also write a triangulated mesh in the ball model.
        #[arg(long)]
        obj: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        level: usize,
    },
    /// Nearest point retraction of points of the domain.
    Retract {
        #[arg(long)]
        input: PathBuf,
        /// `re,im` or `inf`; may be repeated.
        #[arg(long = "z", required = true, allow_hyphen_values = true, value_parser = commands::parse_point)]
        z: Vec<ExtComplex>,
    },
    /// Injectivity radius of the dome at retracted points.
    InjRadius {
        #[arg(long)]
        input: PathBuf,
        /// Points of the domain whose retractions are used; may be repeated.
        #[arg(long = "z", required = true, allow_hyphen_values = true, value_parser = commands::parse_point)]
        z: Vec<ExtComplex>,
        #[arg(long, default_value_t = 40)]
        depth: usize,
    },
}

#[derive(Subcommand, Debug)]
enum LaminationCommand {
    /// Exact roundness, with an optional brute-force comparison.
    Roundness {
        /// `{"leaves": [[θ1, θ2], ...], "weights": [...]}`
        #[arg(long)]
        input: PathBuf,
        /// Random unit arcs for the brute-force comparison (0 to skip).
        #[arg(long, default_value_t = 0)]
        samples: usize,
        /// Hyperbolic radius of the sampling disk.
        #[arg(long, default_value_t = 4.0)]
        radius: f64,
    },
    /// Check that the leaves are disjoint and the weights positive.
    Validate {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum EarthquakeCommand {
    /// Boundary values of a complex earthquake.
    Trace {
        #[arg(long)]
        input: PathBuf,
        /// Complex parameter `x,y`.
        #[arg(long, allow_hyphen_values = true, value_parser = commands::parse_complex)]
        z: Complex64,
        /// Gap held fixed; defaults to the gap containing the origin.
        #[arg(long)]
        base: Option<usize>,
        #[arg(long, default_value_t = 360)]
        points: usize,
    },
}

#[derive(Subcommand, Debug)]
enum CrescentCommand {
    /// Dilatation of an angle scaling, optionally checked on a grid.
    Dilatation {
        #[arg(long, allow_hyphen_values = true, value_parser = commands::parse_complex)]
        w: Complex64,
        #[arg(long)]
        theta: f64,
        /// Also estimate the dilatation on an N×N log-polar grid.
        #[arg(long)]
        grid: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum QcCommand {
    /// Beltrami coefficient statistics of a named fixture.
    Estimate {
        /// One of identity, affine, conjugation, mobius, power, scaling.
        #[arg(long)]
        fixture: String,
        #[arg(long, default_value_t = 512)]
        grid: usize,
    },
}

enum Failure {
    Usage(String),
    Domain(commands::DomainError),
}

impl From<commands::DomainError> for Failure {
    fn from(e: commands::DomainError) -> Self {
        Failure::Domain(e)
    }
}

fn run(cli: Cli) -> Result<Report, Failure> {
    let seed = cli.global.seed;
    Ok(match cli.command {
        Command::Bounds(BoundsCommand::Eval { nu, nu_hat }) => commands::bounds_eval(nu, nu_hat)?,
        Command::Bounds(BoundsCommand::Table { nu_min, nu_max, points, log }) => {
            commands::bounds_table(nu_min, nu_max, points, log)?
        }
        Command::Annulus(AnnulusCommand::Table { s_min, s_max, points }) => commands::annulus_table(s_min, s_max, points)?,
        Command::Dome(DomeCommand::Build { input, obj, level }) => commands::dome_build(&input, obj.as_deref(), level)?,
        Command::Dome(DomeCommand::Retract { input, z }) => commands::dome_retract(&input, &z)?,
        Command::Dome(DomeCommand::InjRadius { input, z, depth }) => commands::dome_inj_radius(&input, &z, depth)?,
        Command::Lamination(LaminationCommand::Roundness { input, samples, radius }) => {
            commands::lamination_roundness(&input, samples, radius, seed)?
        }
        Command::Lamination(LaminationCommand::Validate { input }) => commands::lamination_validate(&input)?,
        Command::Earthquake(EarthquakeCommand::Trace { input, z, base, points }) => {
            commands::earthquake_trace(&input, z, base, points)?
        }
        Command::Crescent(CrescentCommand::Dilatation { w, theta, grid }) => commands::crescent_dilatation(w, theta, grid)?,
        Command::Qc(QcCommand::Estimate { fixture, grid }) => commands::qc_estimate(&fixture, grid)?
            .ok_or_else(|| Failure::Usage(format!("unknown fixture '{fixture}' for '--fixture'")))?,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let format = cli.global.format;
    if let Some(n) = cli.global.threads {
        if n == 0 {
            eprintln!("error: '--threads' must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().expect("pool is built once");
    }
    match run(cli) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(report.render(format).as_bytes());
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
