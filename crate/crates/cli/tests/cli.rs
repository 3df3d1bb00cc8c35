use std::path::Path;
use std::process::{Command, Output};

use denclue::io::read_points;
use denclue_cli::experiment::{cmd_experiment, SummaryRow};

fn denclue(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_denclue"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn ok(out: &Output) {
    assert!(
        out.status.success(),
        "exit {:?}\nstdout: {}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
}

fn circle_count(svg: &str) -> usize {
    let doc = roxmltree::Document::parse(svg).expect("well-formed SVG");
    assert_eq!(doc.root_element().tag_name().name(), "svg");
    doc.descendants()
        .filter(|n| n.has_tag_name("circle"))
        .count()
}

#[test]
fn generate_writes_header_and_rows() {
    let dir = tempfile::tempdir().unwrap();
    ok(&denclue(
        &[
            "generate", "moons", "--n", "200", "--noise", "0.05", "--seed", "42", "-o", "d1.csv",
        ],
        dir.path(),
    ));
    let text = std::fs::read_to_string(dir.path().join("d1.csv")).unwrap();
    assert_eq!(text.lines().count(), 201);
    assert_eq!(text.lines().next(), Some("x,y,truth"));
    assert!(text.ends_with('\n') && !text.contains('\r'));
}

#[test]
fn generate_requires_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = denclue(&["generate", "moons"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn bad_generator_params_are_data_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = denclue(
        &["generate", "circles", "--radii", "3,1", "-o", "x.csv"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn cluster_round_trips_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    ok(&denclue(
        &[
            "generate", "circles", "--n", "200", "--radii", "1,3", "--seed", "42", "-o", "d2.csv",
        ],
        dir.path(),
    ));
    ok(&denclue(
        &["cluster", "d2.csv", "-o", "out/d2.csv"],
        dir.path(),
    ));

    let input = read_points(std::fs::File::open(dir.path().join("d2.csv")).unwrap()).unwrap();
    let output = read_points(std::fs::File::open(dir.path().join("out/d2.csv")).unwrap()).unwrap();
    assert_eq!(input.dataset, output.dataset);
    let labels = output.labels.expect("label column");
    assert_eq!(labels.len(), 200);

    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("out/d2.json")).unwrap())
            .unwrap();
    for key in [
        "h_selected",
        "n_clusters",
        "n_outliers",
        "ari_if_truth",
        "runtime_ms",
        "config",
    ] {
        assert!(report.get(key).is_some(), "missing {key}");
    }
    assert!(report["ari_if_truth"].is_number());
    assert_eq!(report["config"]["eta"], 3e-3);

    let svg = std::fs::read_to_string(dir.path().join("out/d2.svg")).unwrap();
    assert_eq!(circle_count(&svg), 200);
}

#[test]
fn learning_rates_and_fixed_bandwidth() {
    let dir = tempfile::tempdir().unwrap();
    ok(&denclue(
        &["generate", "blobs", "--n", "10", "-o", "b.csv"],
        dir.path(),
    ));
    let mut hs = Vec::new();
    for eta in ["3e-3", "6e-3"] {
        ok(&denclue(
            &["cluster", "b.csv", "--eta", eta, "-o", "r.csv"],
            dir.path(),
        ));
        let v: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(dir.path().join("r.json")).unwrap())
                .unwrap();
        hs.push(v["h_selected"].as_f64().unwrap());
    }
    assert_ne!(hs[0], hs[1]);

    ok(&denclue(
        &["cluster", "b.csv", "--fixed-h", "0.5", "-o", "f.csv"],
        dir.path(),
    ));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("f.json")).unwrap()).unwrap();
    assert_eq!(v["h_selected"], 0.5);
    assert_eq!(v["ari_if_truth"], 1.0);
}

#[test]
fn no_truth_column_means_null_ari() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("p.csv"), "x,y\n0,0\n0.1,0\n5,5\n").unwrap();
    ok(&denclue(
        &["cluster", "p.csv", "--fixed-h", "0.5", "-o", "p_out.csv"],
        dir.path(),
    ));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("p_out.json")).unwrap())
            .unwrap();
    assert!(v["ari_if_truth"].is_null());
    assert_eq!(v["n_clusters"], 2);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.csv"), "x,y\n1,2\n3,zz\n").unwrap();
    let out = denclue(&["cluster", "bad.csv", "-o", "o.csv"], dir.path());
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    std::fs::write(dir.path().join("pair.csv"), "x,y\n1,0\n0.5,0\n").unwrap();
    let out = denclue(
        &["cluster", "pair.csv", "--h0", "1e-150", "-o", "o.csv"],
        dir.path(),
    );
    assert_eq!(
        out.status.code(),
        Some(2),
        "h0 below h_min is a usage error"
    );

    let out = denclue(
        &["cluster", "pair.csv", "--merge-tol", "0", "-o", "o.csv"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));

    let out = denclue(&["cluster", "missing.csv", "-o", "o.csv"], dir.path());
    assert_eq!(out.status.code(), Some(1));

    let out = denclue(
        &[
            "cluster",
            "pair.csv",
            "--kernel",
            "epanechnikov",
            "-o",
            "o.csv",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn numeric_failure_exit_code() {
    use denclue_cli::CliError;
    let err = CliError::Core(denclue::Error::SelectionFailure { step: 3, h: 1e-200 });
    assert_eq!(err.exit_code(), 4);
    assert!(err.to_string().contains("step 3"));
}

#[test]
fn select_writes_trajectory() {
    let dir = tempfile::tempdir().unwrap();
    ok(&denclue(
        &["generate", "blobs", "--n", "10", "-o", "b.csv"],
        dir.path(),
    ));
    let out = denclue(
        &["select", "b.csv", "--sgd-steps", "250", "-o", "t.csv"],
        dir.path(),
    );
    ok(&out);
    let summary: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(summary["steps"], 250);
    let text = std::fs::read_to_string(dir.path().join("t.csv")).unwrap();
    assert_eq!(text.lines().next(), Some("step,h,sampled_loss"));
    assert_eq!(text.lines().count(), 251);
    let last_h: f64 = text
        .lines()
        .last()
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert_eq!(last_h, summary["h_selected"].as_f64().unwrap());
}

#[test]
fn experiment_outputs_and_figure_relations() {
    let dir = tempfile::tempdir().unwrap();
    ok(&denclue(&["experiment", "-o", "exp"], dir.path()));
    let exp = dir.path().join("exp");
    for k in 1..=6 {
        let svg = std::fs::read_to_string(exp.join(format!("fig{k}.svg"))).unwrap();
        assert_eq!(circle_count(&svg), 200);
    }
    let summary = std::fs::read_to_string(exp.join("summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 7);

    let rows = cmd_experiment(&denclue::Config::default(), 42, &dir.path().join("again")).unwrap();
    let get = |k: usize| -> &SummaryRow { &rows[k - 1] };
    assert!(get(2).n_clusters >= get(6).n_clusters);
    assert!(get(4).n_outliers >= get(6).n_outliers);
    let lines: Vec<String> = rows.iter().map(|r| r.to_string()).collect();
    assert_eq!(summary.lines().skip(1).collect::<Vec<_>>(), lines);
}
