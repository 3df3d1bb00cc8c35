//! Density-attractor (DENCLUE) clustering with a stochastic-gradient
//! bandwidth selector.
//!
//! The pipeline is: pick a kernel bandwidth with [`bandwidth::select_bandwidth`]
//! (or supply one), hill-climb every point to a local maximum of the kernel
//! density estimate, chain endpoints closer than `merge_tol` into clusters and
//! label clusters whose peak density is below `outlier_threshold` as `-1`.
//!
//! ```
//! use denclue::{cluster, datagen, Config};
//!
//! let data = datagen::blobs(15, &[[0.0, 0.0], [8.0, 8.0]], 0.3, 1).unwrap();
//! let result = cluster(&data.dataset, &Config { fixed_h: Some(1.0), ..Config::default() }).unwrap();
//! assert_eq!(result.labeling.n_clusters(), 2);
//! ```
//!
//! Per-point loops run on rayon when the default `parallel` feature is on.

pub mod bandwidth;
pub mod clustering;
pub mod datagen;
pub mod error;
pub mod exec;
pub mod io;
pub mod kernel;
pub mod metrics;
pub mod plot;
pub mod types;

pub use bandwidth::{select_bandwidth, BandwidthState};
pub use clustering::{cluster, cluster_with, ClusterResult};
pub use error::{Error, Result};
pub use exec::Execution;
pub use kernel::{KernelFamily, KernelParams};
pub use metrics::adjusted_rand_index;
pub use types::{validate_dataset, Config, Dataset, Labeling, Point, OUTLIER};
