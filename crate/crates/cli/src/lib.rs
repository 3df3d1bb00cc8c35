//! Command implementations behind the `denclue` binary.

pub mod args;
pub mod commands;
pub mod error;
pub mod experiment;

use args::{Cli, Command};
use denclue::Config;
pub use error::{CliError, Result};

/// Runs one parsed command, printing a short summary to stdout.
pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate(a) => {
            let path = commands::cmd_generate(&a)?;
            println!("wrote {}", path.display());
        }
        Command::Select(a) => {
            let summary = commands::cmd_select(&a)?;
            println!("{}", serde_json::to_string(&summary)?);
        }
        Command::Cluster(a) => {
            let (report, out) = commands::cmd_cluster(&a)?;
            println!(
                "h = {:.6}, {} clusters, {} outliers{}",
                report.h_selected,
                report.n_clusters,
                report.n_outliers,
                report
                    .ari_if_truth
                    .map(|a| format!(", ARI = {a:.4}"))
                    .unwrap_or_default()
            );
            println!(
                "wrote {}, {}, {}",
                out.csv.display(),
                out.json.display(),
                out.svg.display()
            );
        }
        Command::Experiment(a) => {
            let base = Config {
                outlier_threshold: a.outlier_threshold,
                h0: a.h0,
                sgd_steps: a.sgd_steps,
                merge_tol: a.merge_tol,
                kernel_family: a.kernel.into(),
                ..Config::default()
            };
            let rows = experiment::cmd_experiment(&base, a.seed, &a.output)?;
            println!("{}", experiment::SUMMARY_HEADER);
            for r in rows {
                println!("{r}");
            }
        }
    }
    Ok(())
}
