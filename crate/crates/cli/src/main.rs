// `!(x > 0.0)` is used on purpose so that NaN parameters are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod error;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::ConfigFile;
use crate::error::CliError;

/// Vector-transform boundary toolkit.
///
/// Fields and angle grids use the VTF1 field-file format; masks and label
/// maps are PGM (P5) or grayscale PNG. Every output path is relative to
/// --out-dir and may not leave it.
#[derive(Parser, Debug)]
#[command(name = "vt", version)]
struct Cli {
    /// key = value file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Directory that receives all outputs.
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,

    /// Worker threads (0 = one per core).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Log progress to stderr (repeat for more detail).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Mask or label map to vector field.
    Transform(TransformArgs),
    /// Vector field to boundary strength and mask.
    Invert(InvertArgs),
    /// Score predictions against ground-truth masks.
    Eval(EvalArgs),
    /// Boundary orientation from a field, optionally scored against a reference.
    Direction(DirectionArgs),
    /// Straight-line proposals on the boundary.
    Lines(LinesArgs),
    /// Field-advection superpixels.
    Superpixels(SuperpixelArgs),
    /// Per-distance statistics of a field's divergence or a scalar image.
    Profile(ProfileArgs),
    /// Render a field, divergence or boundary image as PNG.
    Viz(VizArgs),
    /// Run built-in oracle and round-trip checks.
    Selftest(SelftestArgs),
}

#[derive(Args, Debug)]
#[group(id = "source", required = true, multiple = false)]
struct TransformSource {
    /// Boundary mask, nonzero = boundary.
    #[arg(long, group = "source")]
    mask: Option<PathBuf>,
    /// Label map; the boundary lies between differently labelled pixels.
    #[arg(long, group = "source")]
    labels: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TransformArgs {
    #[command(flatten)]
    source: TransformSource,
    #[arg(long, default_value = "field.vtf")]
    out: PathBuf,
    /// Also write the distance transform as a one-channel field file.
    #[arg(long)]
    dt: Option<PathBuf>,
    /// Also write the boundary mask the field encodes.
    #[arg(long)]
    band: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct InvertArgs {
    field: PathBuf,
    #[arg(long, default_value = "boundary.png")]
    out: PathBuf,
    /// Also write the boundary strength (one-channel field file).
    #[arg(long)]
    strength: Option<PathBuf>,
    /// Also write the support-lattice divergence (one-channel field file).
    #[arg(long)]
    divergence: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Csv,
    Kv,
}

#[derive(Args, Debug)]
struct EvalArgs {
    /// Predictions: field files are inverted, one-channel files and
    /// grayscale images are read as boundary strength.
    #[arg(long, num_args = 1..)]
    pred: Vec<PathBuf>,
    /// Ground-truth masks, paired with --pred in order.
    #[arg(long, num_args = 1..)]
    gt: Vec<PathBuf>,
    /// File of `prediction ground-truth` lines, relative to the file.
    #[arg(long)]
    pairs: Option<PathBuf>,
    /// Matching tolerance as a fraction of the image diagonal [default: 0.0025].
    #[arg(long)]
    tolerance_fraction: Option<f64>,
    /// Number of thresholds k/(n+1) in the ODS/OIS ladder [default: 99].
    #[arg(long)]
    ladder: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DirectionArgs {
    field: PathBuf,
    /// Pixels to report; defaults to the field's own inverted boundary.
    #[arg(long)]
    boundary: Option<PathBuf>,
    #[arg(long, default_value = "angles.vtf")]
    out: PathBuf,
    /// Reference field for an RMSE report.
    #[arg(long)]
    reference: Option<PathBuf>,
    /// Boundary of the reference; defaults to its inverted boundary.
    #[arg(long, requires = "reference")]
    reference_boundary: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct LinesArgs {
    field: PathBuf,
    #[arg(long)]
    boundary: Option<PathBuf>,
    /// Maximum local change of the field [default: 0.05].
    #[arg(long)]
    threshold: Option<f64>,
    #[arg(long, default_value = "lines.png")]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct SuperpixelArgs {
    field: PathBuf,
    #[arg(long, default_value = "superpixels.png")]
    out: PathBuf,
    /// Support divergence above which a pixel is a source [default: 1].
    #[arg(long)]
    source_threshold: Option<f64>,
    /// Advection step in pixels [default: 0.5].
    #[arg(long)]
    step_size: Option<f64>,
    /// [default: 500]
    #[arg(long)]
    max_steps: Option<usize>,
    /// DBSCAN radius in pixels [default: 2].
    #[arg(long)]
    eps: Option<f64>,
    /// [default: 4]
    #[arg(long)]
    min_samples: Option<usize>,
}

#[derive(Args, Debug)]
struct ProfileArgs {
    /// Field file (its divergence is profiled) or one-channel field file.
    values: PathBuf,
    #[arg(long)]
    gt: PathBuf,
    /// [default: 10]
    #[arg(long)]
    max_distance: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum VizKind {
    Auto,
    Field,
    Divergence,
    Boundary,
}

#[derive(Args, Debug)]
struct VizArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    kind: VizKind,
    #[arg(long, default_value = "viz.png")]
    out: PathBuf,
    /// Quiver arrow spacing for fields; 0 disables.
    #[arg(long)]
    quiver_stride: Option<usize>,
    /// Divergence magnitude mapped to full colour; defaults to the maximum.
    #[arg(long)]
    scale: Option<f64>,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    /// [default: 1]
    #[arg(long)]
    seed: Option<u64>,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let file = match &cli.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let jobs = file.pick(cli.jobs, "jobs", 0usize)?;
    if jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot size the worker pool: {e}")))?;
    }
    let out_dir = file.pick(cli.out_dir.clone(), "out_dir", PathBuf::from("."))?;
    let ctx = commands::Ctx { file, out_dir };
    match cli.command {
        Command::Transform(a) => commands::transform(&ctx, a),
        Command::Invert(a) => commands::invert(&ctx, a),
        Command::Eval(a) => commands::eval(&ctx, a),
        Command::Direction(a) => commands::direction(&ctx, a),
        Command::Lines(a) => commands::lines(&ctx, a),
        Command::Superpixels(a) => commands::superpixels(&ctx, a),
        Command::Profile(a) => commands::profile(&ctx, a),
        Command::Viz(a) => commands::viz(&ctx, a),
        Command::Selftest(a) => selftest::run(&ctx, a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("vt: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
