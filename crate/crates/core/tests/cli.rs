use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use msd_strata::cli::{graph_from_json, graph_to_json, key_file_name};
use msd_strata::enumerate::canonical_form;
use msd_strata::fixtures;
use msd_strata::EnhancedLevelGraph;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_msd-strata"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn graph_file(dir: &TempDir, name: &str, g: &EnhancedLevelGraph) -> PathBuf {
    write(dir, name, &graph_to_json(g))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn analyze_json(path: &Path) -> Value {
    let out = bin(&["analyze", s(path), "--json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).unwrap()
}

#[test]
fn analyze_gamma2() {
    let dir = TempDir::new().unwrap();
    let r = analyze_json(&graph_file(&dir, "g2.json", &fixtures::gamma2()));
    assert_eq!(r["k_group"]["invariant_factors"], serde_json::json!([3]));
    assert_eq!(r["pm_class_count"], 1);
    assert_eq!(r["prong_rotation_group"]["order"], 3);
}

#[test]
fn analyze_smooth() {
    let dir = TempDir::new().unwrap();
    let r = analyze_json(&graph_file(
        &dir,
        "s.json",
        &fixtures::smooth(2, vec![1, 1]),
    ));
    assert_eq!(r["codim"], 0);
    for group in ["prong_rotation_group", "k_group"] {
        assert_eq!(r[group]["order"], 1);
    }
    assert_eq!(r["covering_groups"]["g"]["order"], 1);
    assert_eq!(r["twist_basis"], serde_json::json!([]));
}

#[test]
fn analyze_cherry() {
    let dir = TempDir::new().unwrap();
    let path = graph_file(&dir, "c.json", &fixtures::cherry_2_3());
    let r = analyze_json(&path);
    assert_eq!(r["normality"]["verdict"], "non_normal");
    assert_eq!(r["disorderly_ideal"]["principal"], false);
    let text = stdout(&bin(&["analyze", s(&path)]));
    assert!(text.contains("non_normal"));
    assert!(text.contains("principal             false"));
}

#[test]
fn analyze_is_deterministic_with_sorted_keys() {
    let dir = TempDir::new().unwrap();
    let path = graph_file(&dir, "g1.json", &fixtures::gamma1());
    let a = bin(&["analyze", s(&path), "--json"]).stdout;
    let b = bin(&["analyze", s(&path), "--json"]).stdout;
    assert_eq!(a, b);
    let v: Value = serde_json::from_slice(&a).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    let text = String::from_utf8(a).unwrap();
    let first = text.find("\"a\"").unwrap();
    assert!(first < text.find("\"codim\"").unwrap());
}

#[test]
fn invalid_graph_exits_one_with_report() {
    let dir = TempDir::new().unwrap();
    // degree identity fails at both vertices
    let path = write(
        &dir,
        "bad.json",
        r#"{"mu":[3,1],"vertices":[{"genus":2,"level":0,"legs":[]},{"genus":0,"level":-1,"legs":[1,2]}],
           "edges":[{"ends":[0,1],"kappa":1},{"ends":[0,1],"kappa":2}]}"#,
    );
    let out = bin(&["analyze", s(&path)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("degree_identity"));
    let malformed = write(&dir, "m.json", "{\"mu\": [0]");
    assert_eq!(code(&bin(&["analyze", s(&malformed)])), 1);
    assert_eq!(code(&bin(&["analyze", "/nonexistent/graph.json"])), 1);
}

#[test]
fn enumerate_cherry_type() {
    let dir = TempDir::new().unwrap();
    let out_dir = dir.path().join("out");
    let out = bin(&[
        "enumerate",
        "--genus",
        "0",
        "--mu",
        "2,1,0,0,-5",
        "--max-codim",
        "2",
        "--out",
        s(&out_dir),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let index: Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("index.json")).unwrap())
            .unwrap();
    let (cherry, key) = canonical_form(&fixtures::cherry_2_3());
    let name = key_file_name(&key);
    let entry = index["graphs"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["file"] == name.as_str())
        .expect("cherry listed");
    assert_eq!(entry["codim"], 1);
    let text = std::fs::read_to_string(out_dir.join(&name)).unwrap();
    assert_eq!(graph_from_json(&text).unwrap(), cherry);
    let files = std::fs::read_dir(&out_dir).unwrap().count();
    assert_eq!(files, index["count"].as_u64().unwrap() as usize + 1);
}

#[test]
fn enumerate_codim_zero_and_refusals() {
    let dir = TempDir::new().unwrap();
    let out_dir = dir.path().join("smooth");
    let out = bin(&[
        "enumerate",
        "--genus",
        "1",
        "--mu",
        "1,-1",
        "--max-codim",
        "0",
        "--out",
        s(&out_dir),
    ]);
    assert_eq!(code(&out), 0);
    let names: Vec<_> = std::fs::read_dir(&out_dir)
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    assert_eq!(names.len(), 2, "{names:?}");
    let bad = dir.path().join("bad");
    assert_eq!(
        code(&bin(&[
            "enumerate",
            "--genus",
            "1",
            "--mu",
            "1",
            "--max-codim",
            "1",
            "--out",
            s(&bad)
        ])),
        1
    );
    assert_eq!(
        code(&bin(&[
            "enumerate",
            "--genus",
            "5",
            "--mu",
            "4,4,2,-2",
            "--max-codim",
            "2",
            "--out",
            s(&bad)
        ])),
        1
    );
}

#[test]
fn grc_exit_codes() {
    let dir = TempDir::new().unwrap();
    let g1 = graph_file(&dir, "g1.json", &fixtures::gamma1());
    let pass = write(
        &dir,
        "pass.json",
        r#"{"vertical":{"0":[0,1,0,1],"1":[2,3,1,1],"2":[-2,3,-1,1]}}"#,
    );
    let fail = write(
        &dir,
        "fail.json",
        r#"{"vertical":{"0":[1,1,0,1],"1":[2,1,0,1],"2":[-2,1,0,1]}}"#,
    );
    assert_eq!(code(&bin(&["grc", s(&g1), "--residues", s(&pass)])), 0);
    let out = bin(&["grc", s(&g1), "--residues", s(&fail)]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("level -1 component [0] edges [0]"), "{err}");

    // the bottom vertex has no pole, so its residue theorem is a check too
    let unbalanced = write(
        &dir,
        "u.json",
        r#"{"vertical":{"0":[0,1,0,1],"1":[1,1,0,1],"2":[0,1,0,1]}}"#,
    );
    assert_eq!(
        code(&bin(&["grc", s(&g1), "--residues", s(&unbalanced)])),
        2
    );

    let smooth = graph_file(&dir, "s.json", &fixtures::smooth(2, vec![1, 1]));
    let empty = write(&dir, "e.json", "{}");
    assert_eq!(code(&bin(&["grc", s(&smooth), "--residues", s(&empty)])), 0);

    let missing = write(&dir, "m.json", r#"{"vertical":{"0":[0,1,0,1]}}"#);
    assert_eq!(code(&bin(&["grc", s(&g1), "--residues", s(&missing)])), 1);
    let zero_den = write(
        &dir,
        "z.json",
        r#"{"vertical":{"0":[0,0,0,1],"1":[0,1,0,1],"2":[0,1,0,1]}}"#,
    );
    assert_eq!(code(&bin(&["grc", s(&g1), "--residues", s(&zero_den)])), 1);
}

#[test]
fn undegenerate_and_dot() {
    let dir = TempDir::new().unwrap();
    let g1 = graph_file(&dir, "g1.json", &fixtures::gamma1());
    let out = bin(&["undegenerate", s(&g1), "--keep-levels=-2"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let merged = graph_from_json(&v["graph"].to_string()).unwrap();
    assert_eq!(merged.vertices().len(), 2);
    assert_eq!(merged.genus(), 5);
    assert_eq!(
        v["undegeneration"]["contracted_edges"],
        serde_json::json!([0])
    );
    assert_eq!(code(&bin(&["undegenerate", s(&g1), "--keep-levels=-7"])), 1);

    let h = graph_file(&dir, "h.json", &fixtures::two_horizontal());
    let out = bin(&["undegenerate", s(&h), "--smooth-horizontal", "0,1"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["graph"]["vertices"].as_array().unwrap().len(), 1);

    let dot = stdout(&bin(&["dot", s(&g1)]));
    assert!(dot.starts_with("graph "));
    assert!(dot.contains("label=\"κ=3\""));
    assert!(stdout(&bin(&["dot", s(&h)])).contains("label=\"hor\""));
}
