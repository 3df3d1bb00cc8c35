//! Seeded synthetic datasets with ground-truth labels.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::types::{validate_dataset, Dataset};

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    pub dataset: Dataset,
    /// Generating component of each point, numbered from 0.
    pub truth: Vec<usize>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParams(msg.into())
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// Isotropic Gaussian clusters, `n_per` points around each center in center
/// order.
pub fn blobs<C: AsRef<[f64]>>(
    n_per: usize,
    centers: &[C],
    sigma: f64,
    seed: u64,
) -> Result<LabeledDataset> {
    if n_per == 0 {
        return Err(invalid("n_per must be at least 1"));
    }
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(invalid(format!("sigma must be positive, got {sigma}")));
    }
    if centers.is_empty() {
        return Err(invalid("need at least one center"));
    }
    let dim = centers[0].as_ref().len();
    if dim == 0 || centers.iter().any(|c| c.as_ref().len() != dim) {
        return Err(invalid("centers must share a non-zero dimension"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(n_per * centers.len());
    let mut truth = Vec::with_capacity(n_per * centers.len());
    for (label, c) in centers.iter().enumerate() {
        for _ in 0..n_per {
            rows.push(
                c.as_ref()
                    .iter()
                    .map(|&m| m + sigma * gaussian(&mut rng))
                    .collect::<Vec<_>>(),
            );
            truth.push(label);
        }
    }
    Ok(LabeledDataset {
        dataset: validate_dataset(&rows)?,
        truth,
    })
}

fn linspace_pi(k: usize, n: usize) -> f64 {
    if n == 1 {
        0.0
    } else {
        PI * k as f64 / (n - 1) as f64
    }
}

/// Two interleaved half circles of unit radius: the upper arc
/// `(cos t, sin t)` and the lower arc `(1 - cos t, 0.5 - sin t)`, `t` evenly
/// spaced over `[0, pi]`, each coordinate perturbed by `N(0, noise^2)`.
/// The first `n / 2` points form moon 0.
pub fn two_moons(n: usize, noise: f64, seed: u64) -> Result<LabeledDataset> {
    if n < 2 {
        return Err(invalid("two_moons needs n >= 2"));
    }
    if !(noise >= 0.0 && noise.is_finite()) {
        return Err(invalid(format!("noise must be >= 0, got {noise}")));
    }
    let n_upper = n / 2;
    let n_lower = n - n_upper;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(n);
    let mut truth = Vec::with_capacity(n);
    for k in 0..n_upper {
        let t = linspace_pi(k, n_upper);
        rows.push([t.cos(), t.sin()]);
        truth.push(0);
    }
    for k in 0..n_lower {
        let t = linspace_pi(k, n_lower);
        rows.push([1.0 - t.cos(), 0.5 - t.sin()]);
        truth.push(1);
    }
    if noise > 0.0 {
        for r in &mut rows {
            for c in r.iter_mut() {
                *c += noise * gaussian(&mut rng);
            }
        }
    }
    Ok(LabeledDataset {
        dataset: validate_dataset(&rows)?,
        truth,
    })
}

/// Two origin-centred circles with uniformly random angles and radial
/// `N(0, noise^2)` jitter. The first `n / 2` points lie on the inner circle
/// (label 0), the rest on the outer one (label 1).
pub fn concentric_circles(
    n: usize,
    radii: (f64, f64),
    noise: f64,
    seed: u64,
) -> Result<LabeledDataset> {
    let (inner, outer) = radii;
    if n < 2 {
        return Err(invalid("concentric_circles needs n >= 2"));
    }
    if !(inner > 0.0 && inner < outer && outer.is_finite()) {
        return Err(invalid(format!(
            "need 0 < r_inner < r_outer, got ({inner}, {outer})"
        )));
    }
    if !(noise >= 0.0 && noise.is_finite()) {
        return Err(invalid(format!("noise must be >= 0, got {noise}")));
    }
    let n_inner = n / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(n);
    let mut truth = Vec::with_capacity(n);
    for i in 0..n {
        let (r, label) = if i < n_inner { (inner, 0) } else { (outer, 1) };
        let angle = rng.random_range(0.0..2.0 * PI);
        let jitter = gaussian(&mut rng);
        let r = r + noise * jitter;
        rows.push([r * angle.cos(), r * angle.sin()]);
        truth.push(label);
    }
    Ok(LabeledDataset {
        dataset: validate_dataset(&rows)?,
        truth,
    })
}
