use denclue::clustering::{climb_all, merge_attractors};
use denclue::{
    adjusted_rand_index, cluster, cluster_with, datagen, validate_dataset, Config, Execution,
    KernelFamily, KernelParams,
};
use proptest::prelude::*;

#[test]
fn separated_blobs_climb_to_two_places() {
    let data = datagen::blobs(10, &[[0.0, 0.0], [10.0, 10.0]], 0.2, 7).unwrap();
    let cfg = Config::default();
    let h = denclue::select_bandwidth(&data.dataset, &cfg).unwrap().h;
    let kp = KernelParams::new(h, 2, KernelFamily::PaperGaussian).unwrap();
    let ends = climb_all(
        &data.dataset,
        &kp,
        cfg.conv_tol,
        cfg.max_climb_iters,
        Execution::Sequential,
    )
    .unwrap();
    assert!(ends.iter().all(|e| !e.stalled));
    let positions: Vec<&[f64]> = ends.iter().map(|e| e.position.as_slice()).collect();
    let groups = merge_attractors(&positions, cfg.merge_tol).unwrap();
    assert_eq!(groups.iter().max(), Some(&1));
    // every endpoint is within merge_tol of the first endpoint of its group
    for (i, e) in ends.iter().enumerate() {
        let rep = groups.iter().position(|&g| g == groups[i]).unwrap();
        let d: f64 = e
            .position
            .iter()
            .zip(&ends[rep].position)
            .map(|(a, b)| (a - b).powi(2))
            .sum();
        assert!(d.sqrt() <= cfg.merge_tol);
    }
}

#[test]
fn separated_blobs_recover_truth() {
    let data = datagen::blobs(10, &[[0.0, 0.0], [10.0, 10.0]], 0.2, 11).unwrap();
    let cfg = Config {
        outlier_threshold: 0.0,
        ..Config::default()
    };
    let r = cluster(&data.dataset, &cfg).unwrap();
    assert_eq!(r.labeling.n_clusters(), 2);
    assert_eq!(adjusted_rand_index(&r.labeling.labels, &data.truth), 1.0);
    assert!(r.selection.is_some());
}

#[test]
fn schedules_give_identical_results() {
    let data = datagen::two_moons(120, 0.08, 3).unwrap();
    let cfg = Config {
        fixed_h: Some(0.35),
        ..Config::default()
    };
    let seq = cluster_with(&data.dataset, &cfg, Execution::Sequential).unwrap();
    let par = cluster_with(&data.dataset, &cfg, Execution::Parallel).unwrap();
    assert_eq!(seq, par);
}

#[test]
fn repeated_runs_are_identical() {
    let data = datagen::concentric_circles(80, (1.0, 2.5), 0.05, 5).unwrap();
    let a = cluster(&data.dataset, &Config::default()).unwrap();
    let b = cluster(&data.dataset, &Config::default()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn selection_failure_propagates() {
    let ds = validate_dataset(&[vec![1.0, 0.0], vec![0.5, 0.0]]).unwrap();
    let cfg = Config {
        h0: 1e-150,
        h_min: 1e-200,
        ..Config::default()
    };
    assert!(matches!(
        cluster(&ds, &cfg),
        Err(denclue::Error::SelectionFailure { step: 1, .. })
    ));
}

fn blob_rows() -> impl Strategy<Value = Vec<Vec<f64>>> {
    (1usize..4, 2usize..9, any::<u64>()).prop_map(|(k, n_per, seed)| {
        let centers: Vec<[f64; 2]> = (0..k)
            .map(|c| [c as f64 * 4.0, (c % 2) as f64 * 3.0])
            .collect();
        datagen::blobs(n_per, &centers, 0.5, seed)
            .unwrap()
            .dataset
            .to_rows()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn labels_partition_points(rows in blob_rows(), h in 0.2..3.0f64, xi in 0.0..0.5f64) {
        let ds = validate_dataset(&rows).unwrap();
        let r = cluster(&ds, &Config { fixed_h: Some(h), outlier_threshold: xi, ..Config::default() }).unwrap();
        let k = r.labeling.n_clusters() as i64;
        prop_assert_eq!(r.labeling.len(), ds.len());
        for l in 0..k {
            prop_assert!(r.labeling.labels.contains(&l));
        }
        prop_assert!(r.labeling.labels.iter().all(|&l| l == -1 || (0..k).contains(&l)));
        let mut seen = vec![0; ds.len()];
        for a in &r.attractors {
            for &i in &a.member_indices {
                seen[i] += 1;
            }
        }
        prop_assert!(seen.iter().all(|&c| c == 1));
        for (i, &l) in r.labeling.labels.iter().enumerate() {
            let a = &r.attractors[r.point_attractor[i]];
            if l == -1 && !a.stalled {
                prop_assert!(a.density < xi);
            } else if l >= 0 {
                prop_assert!(a.density >= xi);
            }
        }
    }

    #[test]
    fn attractors_stay_in_bounding_box(rows in blob_rows(), h in 0.1..5.0f64) {
        let ds = validate_dataset(&rows).unwrap();
        let r = cluster(&ds, &Config { fixed_h: Some(h), ..Config::default() }).unwrap();
        for a in &r.attractors {
            for (c, (lo, hi)) in a.position.iter().zip(ds.lower_bounds().iter().zip(ds.upper_bounds())) {
                prop_assert!(lo <= c && c <= hi);
            }
        }
    }

    #[test]
    fn permuting_rows_permutes_labels(rows in blob_rows(), h in 0.3..3.0f64, shuffle_seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let ds = validate_dataset(&rows).unwrap();
        let mut order: Vec<usize> = (0..ds.len()).collect();
        order.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(shuffle_seed));
        let cfg = Config { fixed_h: Some(h), ..Config::default() };
        let base = cluster(&ds, &cfg).unwrap();
        let shuffled = cluster(&ds.permuted(&order), &cfg).unwrap();
        let carried: Vec<i64> = order.iter().map(|&i| base.labeling.labels[i]).collect();
        prop_assert_eq!(adjusted_rand_index(&carried, &shuffled.labeling.labels), 1.0);
    }

    #[test]
    fn raising_threshold_adds_outliers(rows in blob_rows(), h in 0.2..3.0f64, mut xs in prop::collection::vec(0.0..1.0f64, 2..8)) {
        let ds = validate_dataset(&rows).unwrap();
        xs.sort_by(f64::total_cmp);
        let mut prev = 0;
        for xi in xs {
            let r = cluster(&ds, &Config { fixed_h: Some(h), outlier_threshold: xi, ..Config::default() }).unwrap();
            prop_assert!(r.labeling.n_outliers() >= prev);
            prev = r.labeling.n_outliers();
        }
    }
}
