//! The DENCLUE pipeline: climb every point to its density attractor, chain
//! nearby attractors into clusters, and mark clusters whose peak density is
//! below the outlier threshold as noise.

use serde::Serialize;

use crate::bandwidth::{select_bandwidth, BandwidthState};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::kernel::{self, climb_step, density, KernelParams};
use crate::types::{Config, Dataset, Labeling, Point, OUTLIER};

/// Where a single hill climb ended.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClimbEndpoint {
    pub position: Vec<f64>,
    pub iterations: usize,
    /// Hit `max_iters`, or every kernel weight underflowed.
    pub stalled: bool,
}

/// Iterates [`climb_step`] from `start` until a step moves less than
/// `conv_tol` or `max_iters` steps have been taken.
pub fn hill_climb(
    start: &[f64],
    ds: &Dataset,
    kp: &KernelParams,
    conv_tol: f64,
    max_iters: usize,
) -> Result<ClimbEndpoint> {
    if conv_tol.is_nan() || conv_tol <= 0.0 || max_iters == 0 {
        return Err(Error::InvalidConfig(
            "hill climbing needs conv_tol > 0 and max_iters >= 1".into(),
        ));
    }
    let mut x = start.to_vec();
    for it in 1..=max_iters {
        let step = climb_step(&x, ds, kp)?;
        if step.underflow {
            return Ok(ClimbEndpoint {
                position: x,
                iterations: it,
                stalled: true,
            });
        }
        let moved = kernel::sq_dist(&x, &step.position).sqrt();
        x = step.position;
        if moved < conv_tol {
            return Ok(ClimbEndpoint {
                position: x,
                iterations: it,
                stalled: false,
            });
        }
    }
    Ok(ClimbEndpoint {
        position: x,
        iterations: max_iters,
        stalled: true,
    })
}

struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// Single-linkage grouping: `i` and `j` share a group iff a chain of
/// endpoints with consecutive distances `<= merge_tol` connects them.
/// Group ids are numbered by first appearance.
pub fn merge_attractors<P: AsRef<[f64]>>(endpoints: &[P], merge_tol: f64) -> Result<Vec<usize>> {
    if merge_tol.is_nan() || merge_tol <= 0.0 {
        return Err(Error::InvalidConfig(format!(
            "merge_tol must be positive, got {merge_tol}"
        )));
    }
    let Some(first) = endpoints.first() else {
        return Ok(Vec::new());
    };
    let dim = first.as_ref().len();
    if let Some(bad) = endpoints.iter().find(|e| e.as_ref().len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: bad.as_ref().len(),
        });
    }
    let n = endpoints.len();
    let tol_sq = merge_tol * merge_tol;
    let mut sets = DisjointSets::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if kernel::sq_dist(endpoints[i].as_ref(), endpoints[j].as_ref()) <= tol_sq {
                sets.union(i, j);
            }
        }
    }
    let roots: Vec<i64> = (0..n).map(|i| sets.find(i) as i64).collect();
    Ok(Labeling::canonical(roots)
        .labels
        .into_iter()
        .map(|l| l as usize)
        .collect())
}

/// A merged group of hill-climb endpoints.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Attractor {
    /// Highest-density endpoint among the members.
    pub position: Point,
    /// Density at `position`.
    pub density: f64,
    /// Sorted indices of the points that climbed into this group.
    pub member_indices: Vec<usize>,
    /// Largest climb length among the members.
    pub iterations: usize,
    /// No member converged; the group is always labelled as outliers.
    pub stalled: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterResult {
    pub labeling: Labeling,
    /// Groups ordered by their smallest member index.
    pub attractors: Vec<Attractor>,
    /// Index into `attractors` for every point.
    pub point_attractor: Vec<usize>,
    pub bandwidth_used: f64,
    /// Present unless `Config::fixed_h` bypassed the selector.
    #[serde(skip)]
    pub selection: Option<BandwidthState>,
    pub config_echo: Config,
}

impl ClusterResult {
    /// Labels this clustering would get under a different outlier threshold.
    /// Attractors and their densities are reused, so only the thresholding
    /// step is repeated.
    pub fn labeling_at(&self, outlier_threshold: f64) -> Labeling {
        label_groups(&self.attractors, &self.point_attractor, outlier_threshold)
    }
}

fn label_groups(attractors: &[Attractor], point_attractor: &[usize], threshold: f64) -> Labeling {
    Labeling::canonical(point_attractor.iter().map(|&g| {
        let a = &attractors[g];
        if a.stalled || a.density < threshold {
            OUTLIER
        } else {
            g as i64
        }
    }))
}

pub fn cluster(ds: &Dataset, cfg: &Config) -> Result<ClusterResult> {
    cluster_with(ds, cfg, Execution::default())
}

pub fn cluster_with(ds: &Dataset, cfg: &Config, exec: Execution) -> Result<ClusterResult> {
    cfg.validate()?;
    let (h, selection) = match cfg.fixed_h {
        Some(h) => (h, None),
        None => {
            let state = select_bandwidth(ds, cfg)?;
            (state.h, Some(state))
        }
    };
    let kp = KernelParams::new(h, ds.dim(), cfg.kernel_family)?;
    let endpoints = climb_all(ds, &kp, cfg.conv_tol, cfg.max_climb_iters, exec)?;
    let densities = exec.try_map(endpoints.len(), |i| {
        density(&endpoints[i].position, ds, &kp)
    })?;

    let converged: Vec<usize> = (0..endpoints.len())
        .filter(|&i| !endpoints[i].stalled)
        .collect();
    let positions: Vec<&[f64]> = converged
        .iter()
        .map(|&i| endpoints[i].position.as_slice())
        .collect();
    let converged_groups = merge_attractors(&positions, cfg.merge_tol)?;

    // raw group per point; stalled climbs join the nearest converged endpoint
    // when it is within merge_tol, otherwise they form their own group
    let n = ds.len();
    let mut raw = vec![0usize; n];
    for (&i, &g) in converged.iter().zip(&converged_groups) {
        raw[i] = g;
    }
    let mut next = converged_groups.iter().max().map_or(0, |m| m + 1);
    let tol_sq = cfg.merge_tol * cfg.merge_tol;
    for (i, e) in endpoints.iter().enumerate().filter(|(_, e)| e.stalled) {
        let nearest = converged
            .iter()
            .zip(&converged_groups)
            .map(|(&j, &g)| (kernel::sq_dist(&e.position, &endpoints[j].position), g))
            .min_by(|a, b| a.0.total_cmp(&b.0));
        raw[i] = match nearest {
            Some((d, g)) if d <= tol_sq => g,
            _ => {
                next += 1;
                next - 1
            }
        };
    }
    let point_attractor: Vec<usize> = Labeling::canonical(raw.iter().map(|&g| g as i64))
        .labels
        .into_iter()
        .map(|g| g as usize)
        .collect();

    let n_groups = point_attractor.iter().max().map_or(0, |m| m + 1);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); n_groups];
    for (i, &g) in point_attractor.iter().enumerate() {
        members[g].push(i);
    }
    let attractors: Vec<Attractor> = members
        .into_iter()
        .map(|member_indices| {
            let peak = member_indices
                .iter()
                .copied()
                .reduce(|best, i| {
                    if densities[i] > densities[best] {
                        i
                    } else {
                        best
                    }
                })
                .expect("groups are non-empty");
            Attractor {
                position: Point(endpoints[peak].position.clone()),
                density: densities[peak],
                iterations: member_indices
                    .iter()
                    .map(|&i| endpoints[i].iterations)
                    .max()
                    .unwrap_or(0),
                stalled: member_indices.iter().all(|&i| endpoints[i].stalled),
                member_indices,
            }
        })
        .collect();

    let labeling = label_groups(&attractors, &point_attractor, cfg.outlier_threshold);
    Ok(ClusterResult {
        labeling,
        attractors,
        point_attractor,
        bandwidth_used: h,
        selection,
        config_echo: cfg.clone(),
    })
}

/// Hill-climbs every point of `ds`. Each climb is independent, so this is
/// the loop that [`Execution::Parallel`] spreads across threads.
pub fn climb_all(
    ds: &Dataset,
    kp: &KernelParams,
    conv_tol: f64,
    max_iters: usize,
    exec: Execution,
) -> Result<Vec<ClimbEndpoint>> {
    exec.try_map(ds.len(), |i| {
        hill_climb(ds.point(i), ds, kp, conv_tol, max_iters)
    })
}
