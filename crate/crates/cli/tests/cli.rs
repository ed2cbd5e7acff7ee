use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hypoham(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypoham"))
        .args(["--offline", "--cache-dir"])
        .arg(cache)
        .args(args)
        .env_remove("HYPOHAM_FIXTURE_DIR")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    let v: Value = serde_json::from_slice(&out.stdout).expect("JSON on stdout");
    assert_eq!(v["schema"], "hypoham.output/1");
    v["result"].clone()
}

#[test]
fn classify_petersen() {
    let dir = tempfile::tempdir().unwrap();
    let out = hypoham(dir.path(), &["--format", "json", "classify", "builtin:petersen", "--expect", "hypohamiltonian"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["hypohamiltonian"], "yes");
    assert_eq!(r["automorphism_group_order"], "120");
    assert_eq!(r["vertex_deleted"].as_array().unwrap().len(), 10);
}

#[test]
fn failed_expectation_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = hypoham(dir.path(), &["classify", "builtin:cube", "--expect", "hypohamiltonian"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(hypoham(dir.path(), &["classify"]).status.code(), Some(2));
    assert_eq!(hypoham(dir.path(), &["classify", "builtin:nope"]).status.code(), Some(2));
    let out = hypoham(dir.path(), &["construct", "th", "builtin:cube", "--cycle", "0,1,2"]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn environment_errors_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = hypoham(dir.path(), &["fetch", "51072"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("offline"));
    let out = hypoham(dir.path(), &["classify", "/nonexistent/graph.g6"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn fetch_serves_the_bundled_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let out = hypoham(dir.path(), &["--format", "json", "fetch", "1431"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["order"], 42);
    assert_eq!(r["source"], "fixture");
    let again = json(&hypoham(dir.path(), &["--format", "json", "fetch", "1431"]));
    assert_eq!(again["source"], "cache");
    assert_eq!(again["graph6"], r["graph6"]);
}

#[test]
fn certificates_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let bundle = dir.path().join("p.json");
    let out = hypoham(dir.path(), &["certify", "builtin:petersen", "--out", bundle.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = hypoham(dir.path(), &["certify", "builtin:petersen", "--check", bundle.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));

    // corrupt one cycle: swap in a non-neighbour
    let mut b: Value = serde_json::from_str(&std::fs::read_to_string(&bundle).unwrap()).unwrap();
    let seq = b["vertex_deleted"][0]["cycle"]["sequence"].as_array_mut().unwrap();
    seq.swap(0, 2);
    std::fs::write(&bundle, serde_json::to_string(&b).unwrap()).unwrap();
    let out = hypoham(dir.path(), &["certify", "builtin:petersen", "--check", bundle.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn planar_and_crossing() {
    let dir = tempfile::tempdir().unwrap();
    let emb = dir.path().join("cube.emb");
    let out = hypoham(dir.path(), &["--format", "json", "planar", "builtin:cube", "--embedding-out", emb.to_str().unwrap()]);
    let r = json(&out);
    assert_eq!(r["planar"], true);
    assert_eq!(r["faces"], 6);
    // the written embedding feeds grinberg directly
    let r = json(&hypoham(dir.path(), &["--format", "json", "grinberg", emb.to_str().unwrap()]));
    assert_eq!(r["verdict"]["kind"], "feasible");

    let r = json(&hypoham(dir.path(), &["--format", "json", "planar", "builtin:petersen"]));
    assert_eq!(r["planar"], false);
    let out = hypoham(dir.path(), &["--format", "json", "crossing", "builtin:k5"]);
    assert_eq!(json(&out)["verdict"], "one_crossing");
}

#[test]
fn grinberg_rejects_the_rhombic_dodecahedron_like_bipartite_case() {
    let dir = tempfile::tempdir().unwrap();
    let r = json(&hypoham(dir.path(), &["--format", "json", "grinberg", "builtin:k2,3"]));
    assert_eq!(r["verdict"]["kind"], "infeasible");
}

#[test]
fn constructions() {
    let dir = tempfile::tempdir().unwrap();
    let r = json(&hypoham(dir.path(), &["--format", "json", "construct", "th", "builtin:cube", "--cycle", "0,1,3,2"]));
    assert_eq!((r["order"].as_u64(), r["size"].as_u64()), (Some(12), Some(18)));
    let r = json(&hypoham(dir.path(), &["--format", "json", "construct", "th", "builtin:cube", "--cycle", "0,1,3,2", "--keep-edges"]));
    assert_eq!((r["order"].as_u64(), r["size"].as_u64()), (Some(12), Some(20)));

    let r = json(&hypoham(dir.path(), &["--format", "json", "construct", "insert", "builtin:petersen", "--vertex", "0", "--host", "builtin:k4"]));
    assert_eq!(r["order"], 36);
    let r = json(&hypoham(
        dir.path(),
        &["--format", "json", "construct", "insert", "builtin:petersen", "--vertex", "0", "--host", "builtin:k4", "--contract"],
    ));
    assert_eq!(r["order"], 30);

    let file = dir.path().join("joined.g6");
    let part = "builtin:petersen@0";
    let out = hypoham(
        dir.path(),
        &["construct", "combine", "--part", part, "--part", part, "--part", part, "--part", part, "--out", file.to_str().unwrap()],
    );
    assert_eq!(out.status.code(), Some(0));
    let r = json(&hypoham(dir.path(), &["--format", "json", "classify", file.to_str().unwrap()]));
    assert_eq!(r["order"], 34);
    assert_eq!(r["hypotraceable"], "yes");
}

#[test]
fn ladder_from_the_bundled_base() {
    let dir = tempfile::tempdir().unwrap();
    let r = json(&hypoham(dir.path(), &["--format", "json", "construct", "ladder", "46"]));
    assert_eq!(r["order"], 46);
    assert_eq!(r["details"]["base_order"], 42);
    assert_eq!(r["details"]["hypohamiltonian"], "yes");
    // no base of order 40 offline
    assert_eq!(hypoham(dir.path(), &["construct", "ladder", "44"]).status.code(), Some(2));
}

#[test]
fn iso_and_aut() {
    let dir = tempfile::tempdir().unwrap();
    let r = json(&hypoham(dir.path(), &["--format", "json", "iso", "builtin:prism5", "builtin:prism5"]));
    assert_eq!(r["isomorphic"], true);
    let r = json(&hypoham(dir.path(), &["--format", "json", "iso", "builtin:prism5", "builtin:petersen"]));
    assert_eq!(r["isomorphic"], false);
    let r = json(&hypoham(dir.path(), &["--format", "json", "aut", "builtin:dodecahedron"]));
    assert_eq!(r["group_order"], "120");
}

#[test]
fn edge_list_input() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c5.txt");
    std::fs::write(&file, "# a pentagon\na b\nb c\nc d\nd e\ne a\n").unwrap();
    let r = json(&hypoham(dir.path(), &["--format", "json", "classify", file.to_str().unwrap()]));
    assert_eq!(r["hamiltonian"], "yes");
    assert_eq!(r["order"], 5);
}

#[test]
fn quick_reproduce_offline() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("report.json");
    let out = hypoham(dir.path(), &["reproduce", "--scope", "quick", "--json-out", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let table = String::from_utf8_lossy(&out.stdout);
    assert!(table.contains("petersen.hypohamiltonian"));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(r["schema"], "hypoham.repro/1");
    let rows = r["rows"].as_array().unwrap();
    let status = |id: &str| rows.iter().find(|x| x["id"] == id).unwrap()["status"].clone();
    assert_eq!(status("petersen.hypohamiltonian"), "match");
    assert_eq!(status("G7.order"), "skipped(offline)");
}
