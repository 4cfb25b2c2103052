use std::path::Path;
use std::process::{Command, Output};

use facetlab::io;
use tempfile::TempDir;

fn facetlab(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_facetlab"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

#[test]
fn octahedron_pipeline() {
    let dir = TempDir::new().unwrap();
    let o = facetlab(
        &[
            "gen",
            "cross-polytope",
            "--d",
            "2",
            "--p",
            "3",
            "-o",
            "oct.json",
        ],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let o = facetlab(&["graph", "oct.json", "--connectivity"], dir.path());
    let v = json(&o);
    assert_eq!(v["kappa"], 3);
    assert_eq!(v["order"], 8);
    assert_eq!(v["size"], 12);
    assert_eq!(v["components"], 1);

    // deleting one color class of the cube graph leaves four isolated squares' duals
    let o = facetlab(
        &["graph", "oct.json", "--remove", "1-3-5,1-4-6,2-3-6,2-4-5"],
        dir.path(),
    );
    assert_eq!(json(&o)["components"], 4);
    assert!(json(&o)["kappa"].is_null());
    let o = facetlab(
        &["graph", "oct.json", "--remove-labels", "1-3,1-4,2-3,2-4"],
        dir.path(),
    );
    assert_eq!(json(&o)["components"], 2);
}

#[test]
fn torus_betti_numbers() {
    let dir = TempDir::new().unwrap();
    assert!(facetlab(
        &["gen", "torus", "--k", "4", "-o", "torus.json"],
        dir.path()
    )
    .status
    .success());
    let o = facetlab(&["betti", "torus.json", "--dim", "1"], dir.path());
    assert_eq!(stdout(&o).trim(), "2");
    let o = facetlab(&["betti", "torus.json"], dir.path());
    assert_eq!(stdout(&o), "dim -1: 0\ndim 0: 0\ndim 1: 2\ndim 2: 1\n");
    let o = facetlab(&["rank", "torus.json", "--dim", "2"], dir.path());
    assert_eq!(stdout(&o).trim(), "31");
}

#[test]
fn generated_files_round_trip_byte_identically() {
    let dir = TempDir::new().unwrap();
    let cases: [&[&str]; 10] = [
        &["complete", "--n", "5", "--d", "2"],
        &["simplex-boundary", "--d", "3"],
        &["cross-polytope", "--d", "3"],
        &["torus", "--k", "6"],
        &["random-cycle", "--n", "7", "--d", "2", "--seed", "9"],
        &["star-tree", "--n", "6", "--d", "2"],
        &["perturbed-tree", "--n", "6", "--d", "2"],
        &["star-cut", "--n", "6", "--d", "2"],
        &["hypersimplex", "--n", "6", "--d", "2"],
        &["pentagon-cells"],
    ];
    for args in cases {
        let mut full = vec!["gen"];
        full.extend_from_slice(args);
        let o = facetlab(&full, dir.path());
        assert!(o.status.success(), "{args:?}: {}", stderr(&o));
        let text = stdout(&o);
        let again = if text.contains("\"cells\"") {
            io::cell_poset_to_json(&io::cell_poset_from_json(&text).unwrap())
        } else if text.contains("\"terms\"") {
            let doc = io::chain_from_json(&text).unwrap();
            io::chain_to_json(&doc.chain, doc.n)
        } else {
            let doc = io::complex_from_json(&text).unwrap();
            io::complex_to_json(&doc.complex, doc.field)
        };
        assert_eq!(again, text, "{args:?}");
    }
}

#[test]
fn verify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let o = facetlab(
        &[
            "verify",
            "hypersimplex-connectivity",
            "--n",
            "6",
            "--d",
            "2",
            "--exhaustive",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS hypersimplex-connectivity 1 instances"));

    let o = facetlab(&["verify", "pentagon", "--json"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["passed"], true);
    assert_eq!(v["extremes"]["kappa"], serde_json::json!([2, 2]));

    let o = facetlab(
        &[
            "verify",
            "cycle-connectivity",
            "--n",
            "5..6",
            "--d",
            "1,2",
            "--p",
            "3",
            "--seeds",
            "2",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let o = facetlab(&["verify", "no-such-theorem"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("no-such-theorem"));

    let o = facetlab(&["verify", "pentagon", "--p", "4"], dir.path());
    assert_eq!(o.status.code(), Some(1));

    let o = facetlab(&["verify", "pentagon", "--n", "7..3"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_input_names_the_field() {
    let dir = TempDir::new().unwrap();
    std::fs::write(
        dir.path().join("bad.json"),
        r#"{"n":4,"p":2,"facets":[[1,2],[3,2]]}"#,
    )
    .unwrap();
    let o = facetlab(&["betti", "bad.json"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("facets[1]"), "{}", stderr(&o));

    std::fs::write(
        dir.path().join("bad.json"),
        r#"{"n":4,"p":3,"dim":1,"terms":[{"s":[1,2],"c":7}]}"#,
    )
    .unwrap();
    let o = facetlab(&["dual", "bad.json"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("terms[0].c"), "{}", stderr(&o));

    let o = facetlab(&["betti", "missing.json"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    assert_eq!(facetlab(&[], dir.path()).status.code(), Some(2));
    assert_eq!(facetlab(&["frobnicate"], dir.path()).status.code(), Some(2));
    assert_eq!(
        facetlab(&["hypertree", "--n", "five", "--d", "2"], dir.path())
            .status
            .code(),
        Some(2)
    );
    let o = Command::new(env!("CARGO_BIN_EXE_facetlab"))
        .args(["verify", "pentagon"])
        .env("FACETLAB_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_facetlab"))
        .args(["verify", "pentagon"])
        .env("FACETLAB_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn duality_collapse_circuits_and_trees() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    assert!(facetlab(
        &["gen", "simplex-boundary", "--d", "1", "-o", "tri.json"],
        d
    )
    .status
    .success());
    let o = facetlab(&["dual", "tri.json"], d);
    let doc = io::chain_from_json(&stdout(&o)).unwrap();
    assert_eq!(doc.chain.dim(), 0);
    assert_eq!(doc.chain.len(), 3);

    std::fs::write(
        d.join("set.json"),
        r#"{"n":4,"p":2,"facets":[[1,2,3],[2,3,4]]}"#,
    )
    .unwrap();
    let o = facetlab(&["collapse", "set.json", "--d", "2"], d);
    assert!(o.status.success(), "{}", stderr(&o));
    let v = json(&o);
    assert!(!v["steps"].as_array().unwrap().is_empty());
    let steps = io::certificate_steps_from_json(&stdout(&o)).unwrap();
    assert!(steps.iter().all(|s| s.free.is_face_of(&s.coface)));
    let o = facetlab(&["collapse", "set.json", "--d", "1"], d);
    assert_eq!(o.status.code(), Some(1));

    assert!(facetlab(
        &["gen", "complete", "--n", "4", "--d", "1", "-o", "k4.json"],
        d
    )
    .status
    .success());
    let o = facetlab(&["circuits", "k4.json"], d);
    assert_eq!(stdout(&o).lines().count(), 7);

    let o = facetlab(
        &["hypertree", "--n", "6", "--d", "2", "--kind", "perturbed"],
        d,
    );
    let doc = io::complex_from_json(&stdout(&o)).unwrap();
    assert_eq!(doc.complex.faces(2).len(), 10);
    let o = facetlab(
        &[
            "hypertree",
            "--n",
            "6",
            "--d",
            "2",
            "--kind",
            "random",
            "--seed",
            "3",
        ],
        d,
    );
    assert!(o.status.success());
}
