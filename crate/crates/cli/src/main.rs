use canyon::dataset::DistanceMetric;
use canyon::scan::Stacking;
use canyon::{Error, ErrorCategory};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

mod commands;

/// Container-canyon propagation toolkit: synthetic campaigns, scan
/// statistics, log-distance fits and coverage estimates.
#[derive(Debug, Parser)]
#[command(name = "canyon", version)]
struct Cli {
    /// TOML configuration file; flags override its values.
    #[arg(long, short, global = true)]
    config: Option<PathBuf>,

    /// Random seed for synthetic data.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a synthetic measurement campaign as CSV.
    Synth(SynthArgs),
    /// Per-angle spectrum statistics, gain CDFs and azimuth gain.
    Angular(AngularArgs),
    /// Spatial correlation along dense receiver lines.
    Spatial(SpatialArgs),
    /// Gain change caused by the vehicle.
    Vehicle(VehicleArgs),
    /// Log-distance fits with free and pinned slope.
    Fit(FitArgs),
    /// Coverage range from the link budget.
    Coverage(CoverageArgs),
    /// Canyon-model quantities for one geometry.
    Geometry(GeometryArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LayoutChoice {
    Uniform,
    Nonuniform,
    Both,
}

impl LayoutChoice {
    fn stackings(self) -> Vec<Stacking> {
        match self {
            LayoutChoice::Uniform => vec![Stacking::Uniform],
            LayoutChoice::Nonuniform => vec![Stacking::Nonuniform],
            LayoutChoice::Both => vec![Stacking::Uniform, Stacking::Nonuniform],
        }
    }
}

#[derive(Debug, Args)]
struct SynthArgs {
    /// Output CSV path.
    #[arg(long, short)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = LayoutChoice::Both)]
    layout: LayoutChoice,
    /// Skip the vehicle scans.
    #[arg(long)]
    no_vehicle: bool,
    /// Azimuth samples per scan.
    #[arg(long)]
    grid_size: Option<usize>,
    /// Receive-horn half-power beamwidth (deg).
    #[arg(long)]
    hpbw: Option<f64>,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Measurement CSV.
    #[arg(long, short)]
    input: PathBuf,
    /// Directory for the output tables.
    #[arg(long, short = 'o')]
    out_dir: PathBuf,
}

#[derive(Debug, Args)]
struct AngularArgs {
    #[command(flatten)]
    io: InputArgs,
    /// Histogram bin width (dB).
    #[arg(long)]
    bin_width: Option<f64>,
    /// Monte Carlo scans for the fully spread reference distribution.
    #[arg(long)]
    realizations: Option<usize>,
}

#[derive(Debug, Args)]
struct SpatialArgs {
    #[command(flatten)]
    io: InputArgs,
    /// Shortest uniformly spaced run accepted as a dense line.
    #[arg(long, default_value_t = 8)]
    min_points: usize,
    /// Largest position spacing (m) accepted as a dense line.
    #[arg(long, default_value_t = 0.5)]
    max_spacing: f64,
}

#[derive(Debug, Args)]
struct VehicleArgs {
    #[command(flatten)]
    io: InputArgs,
    #[arg(long)]
    bin_width: Option<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MetricChoice {
    Euclidean,
    Edge,
}

#[derive(Debug, Args)]
struct FitArgs {
    /// Measurement CSV; angle-averaged gains are fitted per configuration.
    #[arg(long, short, conflicts_with = "samples", required_unless_present = "samples")]
    input: Option<PathBuf>,
    /// Plain `distance_m,gain_db` CSV.
    #[arg(long)]
    samples: Option<PathBuf>,
    #[arg(long, short = 'o')]
    out_dir: PathBuf,
    /// Distance used as regressor for measurement CSV input.
    #[arg(long, value_enum)]
    distance: Option<MetricChoice>,
    /// Slope of the pinned fit (signed, e.g. -4).
    #[arg(long, allow_hyphen_values = true)]
    pinned_slope: Option<f64>,
}

#[derive(Debug, Args)]
struct CoverageArgs {
    /// Also write the figures as CSV here.
    #[arg(long, short = 'o')]
    out_dir: Option<PathBuf>,
    /// Slope of the gain model (signed).
    #[arg(long, allow_hyphen_values = true)]
    slope: Option<f64>,
    /// Intercept of the gain model (dB).
    #[arg(long, allow_hyphen_values = true)]
    intercept: Option<f64>,
}

#[derive(Debug, Args)]
struct GeometryArgs {
    /// Transmitter height above the canyon top (m).
    #[arg(long)]
    tx_height: f64,
    /// Canyon width (m).
    #[arg(long, default_value_t = 8.0)]
    width: f64,
    /// Horizontal distance from transmitter to the near edge (m).
    #[arg(long)]
    distance: f64,
    /// Receiver depth below the canyon top (m).
    #[arg(long)]
    rx_depth: f64,
    /// Azimuthal acceptance angle (rad).
    #[arg(long)]
    psi: Option<f64>,
    #[arg(long, short = 'o')]
    out_dir: Option<PathBuf>,
}

fn exit_code(err: &Error) -> u8 {
    match err.category() {
        ErrorCategory::Input => 2,
        ErrorCategory::Domain => 3,
        ErrorCategory::Data => 4,
        ErrorCategory::Io => 5,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(summary) => {
            print!("{summary}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("canyon: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

impl From<MetricChoice> for DistanceMetric {
    fn from(m: MetricChoice) -> Self {
        match m {
            MetricChoice::Euclidean => DistanceMetric::Euclidean,
            MetricChoice::Edge => DistanceMetric::Edge,
        }
    }
}
