use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use denclue::{Config, KernelFamily};

#[derive(Debug, Parser)]
#[command(
    name = "denclue",
    version,
    about = "DENCLUE clustering with SGD bandwidth selection"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a synthetic dataset as CSV (x,y,truth)
    Generate(GenerateArgs),
    /// Run the SGD bandwidth selector on a CSV file
    Select(SelectArgs),
    /// Cluster a CSV file; writes labels CSV, JSON report and SVG plot
    Cluster(ClusterArgs),
    /// Run the two-dataset, two-learning-rate, threshold-sweep protocol
    Experiment(ExperimentArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DatasetKind {
    Moons,
    Circles,
    Blobs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelArg {
    Paper,
    Standard,
}

impl From<KernelArg> for KernelFamily {
    fn from(k: KernelArg) -> Self {
        match k {
            KernelArg::Paper => KernelFamily::PaperGaussian,
            KernelArg::Standard => KernelFamily::StandardGaussian,
        }
    }
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or("expected two comma-separated numbers, e.g. 1,3")?;
    let a = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    Ok((a, b))
}

/// Blob centers, parsed from `x,y;x,y;...`.
#[derive(Debug, Clone, PartialEq)]
pub struct Centers(pub Vec<Vec<f64>>);

fn parse_centers(s: &str) -> Result<Centers, String> {
    s.split(';')
        .map(|c| {
            c.split(',')
                .map(|v| v.trim().parse::<f64>().map_err(|e| format!("{v:?}: {e}")))
                .collect()
        })
        .collect::<Result<_, _>>()
        .map(Centers)
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(value_enum)]
    pub kind: DatasetKind,
    /// Number of points (per center for blobs)
    #[arg(long, default_value_t = 200)]
    pub n: usize,
    #[arg(long, default_value_t = 0.05)]
    pub noise: f64,
    /// Inner and outer radius for circles
    #[arg(long, value_parser = parse_pair, default_value = "1,3")]
    pub radii: (f64, f64),
    /// Blob centers as `x,y;x,y;...`
    #[arg(long, value_parser = parse_centers, default_value = "0,0;3,3")]
    pub centers: Centers,
    /// Blob standard deviation
    #[arg(long, default_value_t = 0.3)]
    pub sigma: f64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(short, long)]
    pub output: PathBuf,
}

/// Pipeline settings shared by `select` and `cluster`.
#[derive(Debug, Clone, Args)]
pub struct ConfigArgs {
    /// SGD learning rate
    #[arg(long, default_value_t = 3e-3)]
    pub eta: f64,
    /// Initial bandwidth
    #[arg(long, default_value_t = 1.0)]
    pub h0: f64,
    #[arg(long, default_value_t = 5000)]
    pub sgd_steps: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-2)]
    pub merge_tol: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub outlier_threshold: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub conv_tol: f64,
    #[arg(long, default_value_t = 200)]
    pub max_climb_iters: usize,
    #[arg(long, value_enum, default_value_t = KernelArg::Paper)]
    pub kernel: KernelArg,
    /// Skip bandwidth selection and use this bandwidth
    #[arg(long)]
    pub fixed_h: Option<f64>,
}

impl ConfigArgs {
    pub fn to_config(&self) -> Config {
        Config {
            eta: self.eta,
            h0: self.h0,
            sgd_steps: self.sgd_steps,
            seed: self.seed,
            conv_tol: self.conv_tol,
            max_climb_iters: self.max_climb_iters,
            merge_tol: self.merge_tol,
            outlier_threshold: self.outlier_threshold,
            kernel_family: self.kernel.into(),
            fixed_h: self.fixed_h,
            ..Config::default()
        }
    }
}

#[derive(Debug, Args)]
pub struct SelectArgs {
    /// Input CSV with a header row
    pub input: PathBuf,
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Write the SGD trajectory (step,h,sampled_loss) here
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClusterArgs {
    /// Input CSV with a header row; a `truth` column is used only for ARI
    pub input: PathBuf,
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Labelled CSV path; the JSON report and SVG plot are written next to it
    #[arg(short, long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Threshold for Figs 1-4; Figs 5-6 use one hundredth of it
    #[arg(long, default_value_t = 1e-3)]
    pub outlier_threshold: f64,
    #[arg(long, default_value_t = 1.0)]
    pub h0: f64,
    #[arg(long, default_value_t = 5000)]
    pub sgd_steps: u64,
    #[arg(long, default_value_t = 1e-2)]
    pub merge_tol: f64,
    #[arg(long, value_enum, default_value_t = KernelArg::Paper)]
    pub kernel: KernelArg,
    /// Output directory for fig1.svg..fig6.svg and summary.csv
    #[arg(short, long)]
    pub output: PathBuf,
}
