use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::time::Instant;

use denclue::clustering::{Attractor, ClusterResult};
use denclue::{adjusted_rand_index, cluster, datagen, io, plot, select_bandwidth, Config};
use serde::Serialize;

use crate::args::{ClusterArgs, DatasetKind, GenerateArgs, SelectArgs};
use crate::error::{CliError, Result};

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)
            .map_err(|e| CliError::io(format!("creating {}", dir.display()), e))?;
    }
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::io(format!("creating {}", path.display()), e))
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| CliError::io(format!("reading {}", path.display()), e))
}

pub fn cmd_generate(args: &GenerateArgs) -> Result<PathBuf> {
    let data = match args.kind {
        DatasetKind::Moons => datagen::two_moons(args.n, args.noise, args.seed)?,
        DatasetKind::Circles => {
            datagen::concentric_circles(args.n, args.radii, args.noise, args.seed)?
        }
        DatasetKind::Blobs => datagen::blobs(args.n, &args.centers.0, args.sigma, args.seed)?,
    };
    io::write_points(create(&args.output)?, &data.dataset, "truth", &data.truth)?;
    Ok(args.output.clone())
}

#[derive(Debug, Serialize)]
pub struct SelectSummary {
    pub h_selected: f64,
    pub h0: f64,
    pub eta: f64,
    pub steps: u64,
}

pub fn cmd_select(args: &SelectArgs) -> Result<SelectSummary> {
    let input = io::read_points(open(&args.input)?)?;
    let cfg = args.config.to_config();
    let state = select_bandwidth(&input.dataset, &cfg)?;
    if let Some(out) = &args.output {
        io::write_trajectory(create(out)?, &state.trajectory)?;
    }
    Ok(SelectSummary {
        h_selected: state.h,
        h0: cfg.h0,
        eta: cfg.eta,
        steps: state.step,
    })
}

/// Contents of the JSON report written by `cluster`.
#[derive(Debug, Serialize)]
pub struct ClusterReport {
    pub h_selected: f64,
    pub n_clusters: usize,
    pub n_outliers: usize,
    pub ari_if_truth: Option<f64>,
    pub runtime_ms: f64,
    pub config: Config,
    pub attractors: Vec<Attractor>,
}

impl ClusterReport {
    pub fn new(result: &ClusterResult, truth: Option<&[i64]>, runtime_ms: f64) -> Self {
        ClusterReport {
            h_selected: result.bandwidth_used,
            n_clusters: result.labeling.n_clusters(),
            n_outliers: result.labeling.n_outliers(),
            ari_if_truth: truth.map(|t| adjusted_rand_index(&result.labeling.labels, t)),
            runtime_ms,
            config: result.config_echo.clone(),
            attractors: result.attractors.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ClusterOutputs {
    pub csv: PathBuf,
    pub json: PathBuf,
    pub svg: PathBuf,
}

impl ClusterOutputs {
    pub fn beside(csv: &Path) -> Self {
        ClusterOutputs {
            csv: csv.to_path_buf(),
            json: csv.with_extension("json"),
            svg: csv.with_extension("svg"),
        }
    }
}

pub fn cmd_cluster(args: &ClusterArgs) -> Result<(ClusterReport, ClusterOutputs)> {
    let input = io::read_points(open(&args.input)?)?;
    let cfg = args.config.to_config();
    let outputs = ClusterOutputs::beside(&args.output);
    if outputs.csv == outputs.json || outputs.csv == outputs.svg {
        return Err(CliError::Usage(
            "output path must not end in .json or .svg".into(),
        ));
    }
    let start = Instant::now();
    let result = cluster(&input.dataset, &cfg)?;
    let runtime_ms = start.elapsed().as_secs_f64() * 1e3;

    let report = ClusterReport::new(&result, input.truth.as_deref(), runtime_ms);
    io::write_points(
        create(&outputs.csv)?,
        &input.dataset,
        "label",
        &result.labeling.labels,
    )?;
    serde_json::to_writer_pretty(create(&outputs.json)?, &report)?;
    let title = format!(
        "h = {:.4}, {} clusters, {} outliers",
        report.h_selected, report.n_clusters, report.n_outliers
    );
    let svg = plot::scatter_svg(&input.dataset, &result.labeling.labels, &title);
    fs::write(&outputs.svg, svg)
        .map_err(|e| CliError::io(format!("writing {}", outputs.svg.display()), e))?;
    Ok((report, outputs))
}
