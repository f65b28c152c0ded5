use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_floerkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn hf_example_json() {
    let o = run(&[
        "hf", "--degree", "-3", "--genus", "2", "--spinc", "1", "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    let q = v["summands"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["type"] == "SyzygyQuotient")
        .expect("quotient summand");
    assert_eq!(q["l"], 1);
    assert_eq!(q["degree"], "-5/6");
}

#[test]
fn hf_lists_all_spinc_structures() {
    let o = run(&["hf", "--degree", "-5", "--genus", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["modules"].as_array().unwrap().len(), 5);
    let o = run(&["hf", "--degree", "0", "--genus", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn alexander_examples() {
    let o = run(&["alexander", "--pd", "X(1,5,2,4);X(3,1,4,6);X(5,3,6,2)"]);
    assert_eq!(stdout(&o).trim(), "t^-1 - 1 + t");
    let o = run(&["alexander", "--knot", "figure-eight"]);
    assert_eq!(stdout(&o).trim(), "-t^-1 + 3 - t");
    let o = run(&["alexander", "--braid", "3: 1 -2 1 -2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["conway"], "1 - z^2");
    assert_eq!(v["mod2_class"], "1 + t + t^2");
}

#[test]
fn parse_errors_exit_two() {
    // every label is used twice but the crossings cannot be drawn in the plane
    let o = run(&["alexander", "--pd", "X(1,4,2,3);X(3,6,4,5);X(5,2,6,1)"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["alexander", "--pd", "X(1,2,3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["hf", "--degree", "x", "--genus", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["grading"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn links_are_refused_by_the_oracle() {
    let o = run(&["alexander", "--braid", "2: 1 1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn grading_examples() {
    let o = run(&["grading", "--dminus", "--n", "-2", "--genus", "2"]);
    assert_eq!(stdout(&o).trim(), "-5/4");
    let o = run(&["grading", "--dplus", "--n", "0", "--genus", "1", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["value"], "1/4");
    assert_eq!(v["limit"], true);
    let o = run(&["grading", "--profile", "--genus", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["max_value"], "-7/4");
    assert_eq!(v["discrepancy"]["difference"], "1/2");
}

#[test]
fn rim_distinguish() {
    let o = run(&[
        "rim-distinguish",
        "--genus",
        "2",
        "--n",
        "0",
        "--knots",
        "unknot,trefoil,figure-eight",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let pairs = v["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 3);
    assert_eq!(pairs[0]["verdict"], "smoothly_distinct");
    assert_eq!(pairs[2]["verdict"], "not_distinguished");
    let o = run(&[
        "rim-distinguish",
        "--genus",
        "2",
        "--n",
        "-3",
        "--knots",
        "trefoil",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["kind"], "domain");
}

#[test]
fn log_transform_and_skein_tree() {
    let o = run(&[
        "log-transform",
        "--p",
        "0",
        "--q",
        "1",
        "--r",
        "1",
        "--basis",
        "1",
        "t",
        "t^2",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["combination"], "t + t^2");
    let o = run(&["log-transform", "--p", "0", "--q", "2", "--r", "4"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["skein-tree", "--knot", "5_2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["theta"], "2*t^-1 - 3 + 2*t");
}

#[test]
fn koszul_and_zseq() {
    let o = run(&[
        "koszul",
        "--genus",
        "1",
        "--zseq",
        "--region",
        "quotient-and:0",
        "--columns",
        "0:1",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["zseq"]["passed"], true);
    assert!(v["fraction_field_homology_ranks"]
        .as_object()
        .unwrap()
        .values()
        .all(|r| r == 0));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["koszul", "--genus", "2", "--seed", "7", "--json"][..],
        &[
            "rim-distinguish",
            "--genus",
            "3",
            "--n",
            "1",
            "--knots",
            "T(2,3),T(2,5),6_1",
        ][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.stdout, b.stdout);
    }
}
