//! `gaudin`: compute, verify and export data of the three-point sl2 Gaudin
//! model from the command line.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod error;
mod plot;
mod verify;

use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "gaudin", version, about = "Spectral curves of the three-point sl2 Gaudin model")]
struct Cli {
    /// Starting precision of the root finder, in bits.
    #[arg(long, global = true, env = "GAUDIN_PRECISION", default_value_t = 128)]
    precision: u32,

    /// Last rung of the root finder's precision ladder, in bits.
    #[arg(long, global = true, default_value_t = 8192)]
    max_precision: u32,

    /// Aberth iterations per precision rung.
    #[arg(long, global = true, default_value_t = 500)]
    max_iter: usize,

    /// Monodromy loop radius as a fraction of the nearest-neighbour distance.
    #[arg(long, global = true, default_value_t = 1.0 / 3.0)]
    radius_factor: f64,

    /// Write the main artifact here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

/// Three highest weights and the number of lowerings.
#[derive(Args, Debug, Clone, Copy)]
pub struct Weights {
    pub m1: u32,
    pub m2: u32,
    pub m3: u32,
    #[arg(long)]
    pub r: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension of the singular subspace (the covering degree).
    Dim(Weights),
    /// Exact tridiagonal data; with --u also the numeric H1, H2, H3.
    Model {
        #[command(flatten)]
        w: Weights,
        /// Complex parameter as `re` or `re,im`.
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
    },
    /// Characteristic polynomial f(x, u); with --u its exact specialization.
    Curve {
        #[command(flatten)]
        w: Weights,
        /// Rational or decimal parameter, e.g. `3/4` or `-0.25`.
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
    },
    /// Discriminant of f with respect to x.
    Disc(Weights),
    /// Branch points with error radii.
    Branch(Weights),
    /// Branch structure, simplicity, monodromy and genus.
    Genus(Weights),
    /// Monodromy generators and the group they generate.
    Monodromy(Weights),
    /// SVG scatter of the branch points with a CSV sidecar.
    Ornament {
        #[command(flatten)]
        w: Weights,
        /// Second configuration drawn in blue, as `m1,m2,m3,r`.
        #[arg(long)]
        overlay: Option<String>,
    },
    /// Compare the closed forms with the tensor-product model for all
    /// weights up to the cap.
    Verify {
        #[arg(long, default_value_t = 4)]
        cap: u32,
        /// Perturb one coupling, given as `m1,m2,m3,r,r1` (fault injection).
        #[arg(long, hide = true)]
        corrupt_c2: Option<String>,
    },
    /// Branch points along m_i = s·M_i against the limit quadratic.
    Asymptote {
        #[command(flatten)]
        w: Weights,
        #[arg(long, value_delimiter = ',', required = true)]
        scales: Vec<u32>,
    },
}

pub struct Ctx {
    pub precision: u32,
    pub max_precision: u32,
    pub max_iter: usize,
    pub radius_factor: f64,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let ctx = Ctx {
        precision: cli.precision,
        max_precision: cli.max_precision,
        max_iter: cli.max_iter,
        radius_factor: cli.radius_factor,
        out: cli.out,
        format: cli.format,
    };
    match cli.command {
        Command::Dim(w) => commands::dim(&ctx, w),
        Command::Model { w, u } => commands::model(&ctx, w, u.as_deref()),
        Command::Curve { w, u } => commands::curve(&ctx, w, u.as_deref()),
        Command::Disc(w) => commands::disc(&ctx, w),
        Command::Branch(w) => commands::branch(&ctx, w),
        Command::Genus(w) => commands::genus(&ctx, w),
        Command::Monodromy(w) => commands::monodromy(&ctx, w),
        Command::Ornament { w, overlay } => commands::ornament(&ctx, w, overlay.as_deref()),
        Command::Verify { cap, corrupt_c2 } => verify::run(&ctx, cap, corrupt_c2.as_deref()),
        Command::Asymptote { w, scales } => commands::asymptote(&ctx, w, &scales),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.body());
            ExitCode::from(e.exit_code())
        }
    }
}
