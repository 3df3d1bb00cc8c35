//! Gaussian kernels, the kernel density estimate and the fixed-point
//! hill-climbing (mean-shift) step.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::Dataset;

/// Which Gaussian scaling to use for `k(x, p) = exp(-|x - p|^2 * s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelFamily {
    /// `s = h^-M`: the bandwidth is raised to the data dimension. This is the
    /// kernel the SGD selector optimizes, so it is the default for clustering.
    #[default]
    PaperGaussian,
    /// `s = 1 / (2 h^2)`. Mean shift with this kernel never decreases density.
    StandardGaussian,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelParams {
    h: f64,
    dim: usize,
    family: KernelFamily,
    scale: f64,
}

impl KernelParams {
    pub fn new(h: f64, dim: usize, family: KernelFamily) -> Result<Self> {
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::NonPositiveBandwidth(h));
        }
        if dim == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        let scale = match family {
            KernelFamily::PaperGaussian => h.powi(-(dim as i32)),
            KernelFamily::StandardGaussian => 0.5 / (h * h),
        };
        Ok(KernelParams {
            h,
            dim,
            family,
            scale,
        })
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn family(&self) -> KernelFamily {
        self.family
    }

    /// Multiplier applied to the squared distance inside the exponent.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    #[inline]
    fn weight(&self, sq_dist: f64) -> f64 {
        (-sq_dist * self.scale).exp()
    }

    fn check(&self, found: usize) -> Result<()> {
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

#[inline]
pub fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

pub fn kernel_eval(x: &[f64], p: &[f64], kp: &KernelParams) -> Result<f64> {
    kp.check(x.len())?;
    kp.check(p.len())?;
    Ok(kp.weight(sq_dist(x, p)))
}

/// `(1/N) * sum_j k(x, x_j)`.
pub fn density(x: &[f64], ds: &Dataset, kp: &KernelParams) -> Result<f64> {
    kp.check(x.len())?;
    ds.check_dim(kp.dim)?;
    let total: f64 = ds.points().map(|p| kp.weight(sq_dist(x, p))).sum();
    Ok(total / ds.len() as f64)
}

/// Result of one fixed-point update.
#[derive(Debug, Clone, PartialEq)]
pub struct ClimbStep {
    pub position: Vec<f64>,
    /// Every kernel weight underflowed; `position` is the unchanged input.
    pub underflow: bool,
}

/// One mean-shift update: the kernel-weighted mean of the dataset around `x`.
pub fn climb_step(x: &[f64], ds: &Dataset, kp: &KernelParams) -> Result<ClimbStep> {
    kp.check(x.len())?;
    ds.check_dim(kp.dim)?;
    let mut acc = vec![0.0; kp.dim];
    let mut total = 0.0;
    for p in ds.points() {
        let w = kp.weight(sq_dist(x, p));
        total += w;
        for (a, &c) in acc.iter_mut().zip(p) {
            *a += w * c;
        }
    }
    if total < f64::MIN_POSITIVE {
        return Ok(ClimbStep {
            position: x.to_vec(),
            underflow: true,
        });
    }
    // rounding can push the weighted mean an ulp outside the data range
    for ((a, lo), hi) in acc.iter_mut().zip(ds.lower_bounds()).zip(ds.upper_bounds()) {
        *a = (*a / total).clamp(*lo, *hi);
    }
    Ok(ClimbStep {
        position: acc,
        underflow: false,
    })
}
