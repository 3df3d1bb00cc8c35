//! SGD bandwidth selection for the hill-climbing kernel.
//!
//! For a sampled ordered pair `(x, p)` the per-pair loss is
//!
//! ```text
//! L(h) = |x - t1 p|^2,   t0 = |x - p|^2,   t1 = exp(-t0 h^-M)
//! ```
//!
//! and one SGD step moves `h` against its derivative:
//!
//! ```text
//! h <- h + eta * 2 M t0 t1 h^-(M+1) <x - t1 p, p>
//! ```
//!
//! The increment is exactly `-dL/dh`, so the selector descends the summed
//! pairwise loss `sum_{i != j} L(h; x_i, x_j)`. [`grid_search_oracle`]
//! minimizes the same sum by exhaustive evaluation and is the reference the
//! stochastic path is checked against.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::kernel::{self, KernelParams};
use crate::types::{Config, Dataset};

fn check_pair(x: &[f64], p: &[f64], dim: usize) -> Result<()> {
    for found in [x.len(), p.len()] {
        if found != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found,
            });
        }
    }
    Ok(())
}

fn check_h(h: f64) -> Result<()> {
    if h.is_finite() && h > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveBandwidth(h))
    }
}

/// `1 - t1`, exact to working precision even when `t1` is close to 1.
#[inline]
fn one_minus_t1(t0: f64, h: f64, dim: usize) -> f64 {
    -(-t0 * h.powi(-(dim as i32))).exp_m1()
}

/// Components of `x - t1 p`, written as `(x - p) + (1 - t1) p` so nearly
/// coincident pairs keep their significant digits.
#[inline]
fn residual(a: f64, b: f64, omt1: f64) -> f64 {
    (a - b) + omt1 * b
}

#[inline]
fn residual_sq(x: &[f64], p: &[f64], omt1: f64) -> f64 {
    x.iter()
        .zip(p)
        .map(|(&a, &b)| residual(a, b, omt1).powi(2))
        .sum()
}

/// `|x - t1 p|^2` for a single ordered pair.
pub fn pair_loss(x: &[f64], p: &[f64], h: f64, dim: usize) -> Result<f64> {
    check_pair(x, p, dim)?;
    check_h(h)?;
    let t0 = kernel::sq_dist(x, p);
    Ok(residual_sq(x, p, one_minus_t1(t0, h, dim)))
}

/// Intermediate quantities of one SGD step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GradientTerms {
    /// `|x - p|^2`
    pub t0: f64,
    /// `exp(-t0 h^-M)`
    pub t1: f64,
    /// `2 M t0 t1 h^-(M+1) <x - t1 p, p>`, i.e. `-dL/dh`.
    pub update: f64,
}

pub fn gradient_terms(x: &[f64], p: &[f64], h: f64, dim: usize) -> Result<GradientTerms> {
    check_pair(x, p, dim)?;
    check_h(h)?;
    let t0 = kernel::sq_dist(x, p);
    let omt1 = one_minus_t1(t0, h, dim);
    let t1 = 1.0 - omt1;
    let inv = h.powi(-(dim as i32 + 1));
    if !inv.is_finite() {
        return Err(Error::NonFiniteUpdate { h });
    }
    let inner: f64 = x
        .iter()
        .zip(p)
        .map(|(&a, &b)| residual(a, b, omt1) * b)
        .sum();
    let update = 2.0 * dim as f64 * t0 * t1 * inv * inner;
    if !update.is_finite() {
        return Err(Error::NonFiniteUpdate { h });
    }
    Ok(GradientTerms { t0, t1, update })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRecord {
    pub step: u64,
    /// Bandwidth after the step.
    pub h: f64,
    /// Loss of the sampled pair at the new `h`.
    pub sampled_loss: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandwidthState {
    pub h: f64,
    pub eta: f64,
    pub step: u64,
    pub h_min: f64,
    pub h_max: f64,
    pub record: bool,
    pub trajectory: Vec<TrajectoryRecord>,
}

impl BandwidthState {
    pub fn new(h0: f64, eta: f64, h_min: f64, h_max: f64) -> Self {
        BandwidthState {
            h: h0.clamp(h_min, h_max),
            eta,
            step: 0,
            h_min,
            h_max,
            record: true,
            trajectory: Vec::new(),
        }
    }

    pub fn from_config(cfg: &Config) -> Self {
        let mut s = BandwidthState::new(cfg.h0, cfg.eta, cfg.h_min, cfg.h_max);
        s.record = cfg.record_trajectory;
        s
    }

    /// Applies one clamped SGD step for the ordered pair `(x, p)`.
    ///
    /// On error the state is left untouched.
    pub fn sgd_update(&mut self, x: &[f64], p: &[f64], dim: usize) -> Result<GradientTerms> {
        let terms = gradient_terms(x, p, self.h, dim)?;
        self.h = (self.h + self.eta * terms.update).clamp(self.h_min, self.h_max);
        self.step += 1;
        if self.record {
            let t0 = terms.t0;
            self.trajectory.push(TrajectoryRecord {
                step: self.step,
                h: self.h,
                sampled_loss: residual_sq(x, p, one_minus_t1(t0, self.h, dim)),
            });
        }
        Ok(terms)
    }
}

/// Runs `cfg.sgd_steps` SGD steps on ordered pairs `(i, j)`, `i != j`, drawn
/// uniformly from a ChaCha8 stream seeded with `cfg.seed`.
///
/// A dataset with a single point has no pairs and returns `h0` unchanged.
pub fn select_bandwidth(ds: &Dataset, cfg: &Config) -> Result<BandwidthState> {
    cfg.validate()?;
    let mut state = BandwidthState::from_config(cfg);
    let n = ds.len();
    if n < 2 {
        return Ok(state);
    }
    if state.record {
        state.trajectory.reserve(cfg.sgd_steps as usize);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.sgd_steps {
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        state
            .sgd_update(ds.point(i), ds.point(j), ds.dim())
            .map_err(|e| match e {
                Error::NonFiniteUpdate { h } => Error::SelectionFailure {
                    step: state.step + 1,
                    h,
                },
                other => other,
            })?;
    }
    Ok(state)
}

/// `sum_{i != j} pair_loss(x_i, x_j, h)`.
pub fn total_pair_loss(ds: &Dataset, h: f64) -> Result<f64> {
    check_h(h)?;
    let dim = ds.dim();
    let mut total = 0.0;
    for (i, x) in ds.points().enumerate() {
        for (j, p) in ds.points().enumerate() {
            if i != j {
                total += residual_sq(x, p, one_minus_t1(kernel::sq_dist(x, p), h, dim));
            }
        }
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridSearch {
    pub h_best: f64,
    /// Total pairwise loss at each grid value, in grid order.
    pub losses: Vec<f64>,
}

/// Exhaustive minimization of [`total_pair_loss`] over `h_grid`. Ties go to
/// the smaller bandwidth.
pub fn grid_search_oracle(ds: &Dataset, h_grid: &[f64]) -> Result<GridSearch> {
    grid_search_oracle_with(ds, h_grid, Execution::default())
}

pub fn grid_search_oracle_with(
    ds: &Dataset,
    h_grid: &[f64],
    exec: Execution,
) -> Result<GridSearch> {
    if h_grid.is_empty() {
        return Err(Error::InvalidParams("bandwidth grid is empty".into()));
    }
    for &h in h_grid {
        check_h(h)?;
    }
    let losses = exec.try_map(h_grid.len(), |k| total_pair_loss(ds, h_grid[k]))?;
    let mut best = 0;
    for k in 1..h_grid.len() {
        let (l, b) = (losses[k], losses[best]);
        if l < b || (l == b && h_grid[k] < h_grid[best]) {
            best = k;
        }
    }
    Ok(GridSearch {
        h_best: h_grid[best],
        losses,
    })
}

/// `n` values evenly spaced in log scale over `[lo, hi]`, endpoints included.
pub fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            (0..n)
                .map(|k| (a + (b - a) * k as f64 / (n - 1) as f64).exp())
                .collect()
        }
    }
}

/// Diagnostic: `sum_i |x_i - sum_{j != i} k(x_i, x_j) x_j|^2`, the estimator
/// residual with the kernel sum taken inside the norm. Reported only; the
/// selector does not optimize it.
pub fn loo_objective(ds: &Dataset, kp: &KernelParams) -> Result<f64> {
    ds.check_dim(kp.dim())?;
    let mut total = 0.0;
    let mut est = vec![0.0; ds.dim()];
    for (i, x) in ds.points().enumerate() {
        est.iter_mut().for_each(|e| *e = 0.0);
        for (j, p) in ds.points().enumerate() {
            if i != j {
                let w = kernel::kernel_eval(x, p, kp)?;
                for (e, &c) in est.iter_mut().zip(p) {
                    *e += w * c;
                }
            }
        }
        total += kernel::sq_dist(x, &est);
    }
    Ok(total)
}
