//! Shared domain types: points, datasets, run configuration and labelings.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::KernelFamily;

/// A single observation. Owned counterpart of the `&[f64]` rows a
/// [`Dataset`] hands out.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Point(pub Vec<f64>);

impl Point {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl From<Vec<f64>> for Point {
    fn from(v: Vec<f64>) -> Self {
        Point(v)
    }
}

impl std::ops::Deref for Point {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// `N >= 1` finite points of a common dimension `M >= 1`, stored row-major.
///
/// Immutable once built; the only constructor is [`validate_dataset`], so a
/// `Dataset` value always satisfies its invariants. Per-coordinate bounds are
/// cached because the hill climber clamps into them.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    coords: Vec<f64>,
    dim: usize,
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Dataset {
    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> std::slice::ChunksExact<'_, f64> {
        self.coords.chunks_exact(self.dim)
    }

    /// Per-coordinate minimum over all points.
    pub fn lower_bounds(&self) -> &[f64] {
        &self.lower
    }

    /// Per-coordinate maximum over all points.
    pub fn upper_bounds(&self) -> &[f64] {
        &self.upper
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.points().map(<[f64]>::to_vec).collect()
    }

    /// Rows reordered so that row `k` of the result is row `order[k]` of `self`.
    ///
    /// # Panics
    ///
    /// If `order` is not a permutation of `0..len()`.
    pub fn permuted(&self, order: &[usize]) -> Dataset {
        assert_eq!(order.len(), self.len(), "order must be a permutation");
        let mut seen = vec![false; self.len()];
        let mut coords = Vec::with_capacity(self.coords.len());
        for &i in order {
            assert!(
                !std::mem::replace(&mut seen[i], true),
                "order must be a permutation"
            );
            coords.extend_from_slice(self.point(i));
        }
        Dataset {
            coords,
            dim: self.dim,
            lower: self.lower.clone(),
            upper: self.upper.clone(),
        }
    }

    pub(crate) fn check_dim(&self, found: usize) -> Result<()> {
        if found == self.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                found,
            })
        }
    }
}

/// Builds a [`Dataset`] from raw rows, preserving their order.
pub fn validate_dataset<R: AsRef<[f64]>>(rows: &[R]) -> Result<Dataset> {
    let first = rows.first().ok_or(Error::EmptyInput)?.as_ref();
    let dim = first.len();
    if dim == 0 {
        return Err(Error::InvalidParams(
            "points must have at least one coordinate".into(),
        ));
    }
    let mut coords = Vec::with_capacity(rows.len() * dim);
    let mut lower = vec![f64::INFINITY; dim];
    let mut upper = vec![f64::NEG_INFINITY; dim];
    for (row, r) in rows.iter().enumerate() {
        let r = r.as_ref();
        if r.len() != dim {
            return Err(Error::RaggedRows {
                row,
                expected: dim,
                found: r.len(),
            });
        }
        for (col, &v) in r.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite { row, col });
            }
            lower[col] = lower[col].min(v);
            upper[col] = upper[col].max(v);
        }
        coords.extend_from_slice(r);
    }
    Ok(Dataset {
        coords,
        dim,
        lower,
        upper,
    })
}

/// Run configuration shared by the selector and the clustering pipeline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Config {
    /// SGD learning rate.
    pub eta: f64,
    /// Initial bandwidth.
    pub h0: f64,
    pub sgd_steps: u64,
    pub seed: u64,
    /// Hill climbing stops once a step moves less than this.
    pub conv_tol: f64,
    pub max_climb_iters: usize,
    /// Endpoints closer than this are chained into one cluster.
    pub merge_tol: f64,
    /// Groups whose peak density is below this are outliers.
    pub outlier_threshold: f64,
    pub kernel_family: KernelFamily,
    pub h_min: f64,
    pub h_max: f64,
    /// Skip the selector and cluster with this bandwidth.
    pub fixed_h: Option<f64>,
    /// Keep the per-step `(step, h, loss)` records during selection.
    pub record_trajectory: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            eta: 3e-3,
            h0: 1.0,
            sgd_steps: 5000,
            seed: 42,
            conv_tol: 1e-6,
            max_climb_iters: 200,
            merge_tol: 1e-2,
            outlier_threshold: 1e-3,
            kernel_family: KernelFamily::PaperGaussian,
            h_min: 1e-4,
            h_max: 1e4,
            fixed_h: None,
            record_trajectory: true,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidConfig(format!(
                    "{name} must be positive and finite, got {v:?}"
                )))
            }
        };
        positive("eta", self.eta)?;
        positive("h0", self.h0)?;
        positive("conv_tol", self.conv_tol)?;
        positive("merge_tol", self.merge_tol)?;
        positive("h_min", self.h_min)?;
        positive("h_max", self.h_max)?;
        if !(self.h_min < self.h0 && self.h0 < self.h_max) {
            return Err(Error::InvalidConfig(format!(
                "need h_min < h0 < h_max, got {:?} / {:?} / {:?}",
                self.h_min, self.h0, self.h_max
            )));
        }
        if !(self.outlier_threshold >= 0.0 && self.outlier_threshold.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "outlier_threshold must be finite and >= 0, got {:?}",
                self.outlier_threshold
            )));
        }
        if self.max_climb_iters == 0 {
            return Err(Error::InvalidConfig("max_climb_iters must be >= 1".into()));
        }
        if let Some(h) = self.fixed_h {
            positive("fixed_h", h)?;
        }
        Ok(())
    }
}

/// Label reserved for outliers.
pub const OUTLIER: i64 = -1;

/// One label per point: `-1` for outliers, otherwise `0..K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labeling {
    pub labels: Vec<i64>,
}

impl Labeling {
    /// Renumbers non-negative labels by first appearance over point index.
    /// Negative labels all become [`OUTLIER`].
    pub fn canonical<I: IntoIterator<Item = i64>>(raw: I) -> Labeling {
        let mut map = std::collections::HashMap::new();
        let labels = raw
            .into_iter()
            .map(|l| {
                if l < 0 {
                    OUTLIER
                } else {
                    let next = map.len() as i64;
                    *map.entry(l).or_insert(next)
                }
            })
            .collect();
        Labeling { labels }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn n_clusters(&self) -> usize {
        self.labels
            .iter()
            .copied()
            .max()
            .map_or(0, |m| (m + 1).max(0) as usize)
    }

    pub fn n_outliers(&self) -> usize {
        self.labels.iter().filter(|&&l| l == OUTLIER).count()
    }
}
