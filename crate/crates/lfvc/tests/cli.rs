//! Command-line behavior: exit codes, outputs, and the config-file
//! alternative.

mod common;

use lfvc::cli::run_from;

fn lfvc(args: &[&str]) -> i32 {
    let mut argv = vec!["lfvc".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    run_from(argv)
}

#[test]
fn detect_writes_trace_and_communities() {
    let dir = tempfile::tempdir().unwrap();
    let karate = common::fixture("karate.edges");
    let out = dir.path().join("run");
    let code = lfvc(&[
        "detect",
        "--method",
        "lfvc-node",
        "--adaptive",
        "--out",
        out.to_str().unwrap(),
        karate.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let trace: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("trace.json")).unwrap()).unwrap();
    assert_eq!(trace["schema"], 1);
    assert_eq!(trace["mode"], "node");
    assert_eq!(trace["steps"].as_array().unwrap().len(), 1);
    let communities: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("communities.json")).unwrap())
            .unwrap();
    assert_eq!(communities["communities"].as_array().unwrap().len(), 2);
    assert_eq!(communities["removed"][0], 0);
}

#[test]
fn usage_errors_exit_1() {
    let karate = common::fixture("karate.edges");
    // Unknown method.
    assert_eq!(lfvc(&["detect", "--method", "nope", karate.to_str().unwrap()]), 1);
    // Conflicting budget flags.
    assert_eq!(
        lfvc(&["detect", "--q", "2", "--adaptive", karate.to_str().unwrap()]),
        1
    );
    // Unknown flag (clap-level usage error).
    assert_eq!(lfvc(&["detect", "--frobnicate", karate.to_str().unwrap()]), 1);
    // Descending ratio range.
    assert_eq!(lfvc(&["sweep", "--ratios", "5:1:0.5", "--trials", "1"]), 1);
    // Budget exceeding what the graph supports.
    assert_eq!(lfvc(&["detect", "--method", "lfvc-node", "--q", "33", karate.to_str().unwrap()]), 1);
}

#[test]
fn data_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    // Missing file.
    assert_eq!(lfvc(&["detect", "/no/such/file.edges"]), 2);
    // Malformed edge list.
    let bad = dir.path().join("bad.edges");
    std::fs::write(&bad, "0 1\nnot numbers\n").unwrap();
    assert_eq!(lfvc(&["detect", bad.to_str().unwrap()]), 2);
    // Self-loop.
    let loopy = dir.path().join("loop.edges");
    std::fs::write(&loopy, "0 0\n").unwrap();
    assert_eq!(lfvc(&["detect", loopy.to_str().unwrap()]), 2);
    // Node-count override too small for the ids in the file.
    let karate = common::fixture("karate.edges");
    assert_eq!(lfvc(&["detect", "--n", "10", karate.to_str().unwrap()]), 2);
}

#[test]
fn sweep_config_file_matches_flags() {
    let dir = tempfile::tempdir().unwrap();
    let by_flags = dir.path().join("flags.csv");
    let by_config = dir.path().join("config.csv");
    let code = lfvc(&[
        "sweep", "--n-in", "8", "--n-out", "24", "--c-out", "2", "--ratios", "3,5",
        "--trials", "2", "--seed", "11", "--detectors", "lfvc-node,modularity",
        "--out", by_flags.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let config = dir.path().join("sweep.json");
    std::fs::write(
        &config,
        serde_json::json!({
            "n_in": 8, "n_out": 24, "c_out": 2.0, "ratios": "3,5",
            "trials": 2, "seed": 11, "detectors": "lfvc-node,modularity",
            "out": by_config,
        })
        .to_string(),
    )
    .unwrap();
    assert_eq!(lfvc(&["sweep", "--config", config.to_str().unwrap()]), 0);
    assert_eq!(
        std::fs::read(&by_flags).unwrap(),
        std::fs::read(&by_config).unwrap()
    );
    // Unknown config keys are rejected.
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"trials": 2, "mystery": 1}"#).unwrap();
    assert_eq!(lfvc(&["sweep", "--config", bad.to_str().unwrap()]), 2);
}

#[test]
fn bounds_reports_tight_cliques() {
    let dir = tempfile::tempdir().unwrap();
    let two_k3 = dir.path().join("two_k3.edges");
    std::fs::write(&two_k3, "0 1\n1 2\n2 0\n3 4\n4 5\n5 3\n").unwrap();
    let out = dir.path().join("bounds.json");
    let code = lfvc(&["bounds", "--out", out.to_str().unwrap(), two_k3.to_str().unwrap()]);
    assert_eq!(code, 0);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["epsilon"], 2);
    assert_eq!(report["exact_bound"], 2);
    assert_eq!(report["psi"], 3);
    assert_eq!(report["exact_is_tight"], true);
    assert_eq!(report["psi_equals_traversal"], true);
    assert!((report["relaxed_bound"].as_f64().unwrap() - 2.0).abs() < 1e-9);
}

#[test]
fn evaluate_produces_reports() {
    let dir = tempfile::tempdir().unwrap();
    // Two triangles bridged through node 2; identical tastes inside each.
    let graph = dir.path().join("g.edges");
    std::fs::write(&graph, "0 1\n1 2\n2 0\n2 3\n3 4\n4 5\n5 3\n").unwrap();
    let prefs = dir.path().join("p.tsv");
    let mut rows = String::new();
    for u in 0..3 {
        rows.push_str(&format!("{u}\t0\t1\n"));
    }
    for u in 3..6 {
        rows.push_str(&format!("{u}\t1\t2\n"));
    }
    std::fs::write(&prefs, rows).unwrap();
    let out = dir.path().join("eval");
    let code = lfvc(&[
        "evaluate",
        "--prefs",
        prefs.to_str().unwrap(),
        "--q",
        "1",
        "--out",
        out.to_str().unwrap(),
        graph.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("evaluation.json")).unwrap())
            .unwrap();
    // Removing the bridge node leaves two same-taste communities: one
    // intact triangle (3 pairs) and one pair (1 pair).
    assert_eq!(report["removed"][0], 2);
    assert!((report["rscs"].as_f64().unwrap() - 4.0).abs() < 1e-9);
    let curve = std::fs::read_to_string(out.join("rscs_curve.csv")).unwrap();
    assert!(curve.starts_with("step,discovered_communities,rscs\n"));
    assert_eq!(curve.lines().count(), 3);
}

#[test]
fn centrality_csv_to_stdout_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("scores.csv");
    let karate = common::fixture("karate.edges");
    let code = lfvc(&[
        "centrality",
        "--kind",
        "degree",
        "--out",
        out.to_str().unwrap(),
        karate.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("node,score\n"));
    assert_eq!(csv.lines().count(), 35);
    assert!(csv.lines().nth(1).unwrap().starts_with("0,16"));
}

#[test]
fn empty_ratio_grid_fails() {
    assert_eq!(lfvc(&["sweep", "--ratios", "", "--trials", "1"]), 1);
}

#[test]
fn karate_modularity_matches_ground_truth_split() {
    // The two-way modularity split of the karate club is the documented
    // two-faction division.
    let dir = tempfile::tempdir().unwrap();
    let karate = common::fixture("karate.edges");
    let out = dir.path().join("mod");
    let code = lfvc(&[
        "detect",
        "--method",
        "modularity",
        "--g",
        "2",
        "--out",
        out.to_str().unwrap(),
        karate.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let communities: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("communities.json")).unwrap())
            .unwrap();
    let sides: Vec<Vec<usize>> = communities["communities"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_array().unwrap().iter().map(|v| v.as_u64().unwrap() as usize).collect())
        .collect();
    assert_eq!(sides.len(), 2);
    // Leading-eigenvector modularity puts these instructor/president
    // anchors on opposite sides.
    let side_of = |v: usize| sides.iter().position(|s| s.contains(&v)).unwrap();
    assert_ne!(side_of(0), side_of(33));
    assert_eq!(side_of(0), side_of(1));
    assert_eq!(side_of(33), side_of(32));
}
