use std::process::Command;

use fiberlevel::cli::{run, EXIT_DEPTH, EXIT_ERROR, EXIT_FALSE, EXIT_OK};
use fiberlevel::fiber_tree::{FiberTree, TreeDocument};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("fiberlevel").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn level_degrees(json: &str, k: u32) -> Vec<u64> {
    FiberTree::from_json(json).unwrap().level_degrees(k)
}

#[test]
fn tree_graphexample() {
    let (code, out, _) = call(&["tree", "--curve", "graphexample", "--ell", "3", "--depth", "2", "--adic-exponent", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(level_degrees(&out, 2), vec![3, 3, 3, 9, 18]);
    let doc: TreeDocument = serde_json::from_str(&out).unwrap();
    let mut levels: Vec<&str> = doc.fibers.iter().map(|f| f.level.as_str()).collect();
    levels.sort_unstable();
    assert_eq!(levels, vec!["3", "3", "9", "9", "9"]);
    assert_eq!(doc.certified_exponent, Some(2));
}

#[test]
fn tree_54b2_and_explicit_invariants() {
    let (code, by_name, _) = call(&["tree", "--curve", "54.b2", "--ell", "3", "--depth", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(level_degrees(&by_name, 1), vec![1, 3]);
    assert_eq!(level_degrees(&by_name, 2), vec![1, 1, 1, 6, 27]);
    let (_, by_invariants, _) = call(&["tree", "--curve", "1,-1,1,-14,29", "--ell", "3", "--depth", "2"]);
    assert_eq!(by_name, by_invariants);
}

#[test]
fn tree_depth_zero_and_dot() {
    let (code, out, _) = call(&["tree", "--curve", "54.b2", "--ell", "3", "--depth", "0"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(FiberTree::from_json(&out).unwrap().node_count(), 1);
    let (code, dot, _) = call(&["tree", "--curve", "graphexample", "--ell", "3", "--depth", "1", "--format", "dot"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(dot.matches(" -> ").count(), 3);
    assert!(dot.contains("label=\"j\""));
}

#[test]
fn tree_exit_codes() {
    let (code, _, err) = call(&["tree", "--curve", "graphexample", "--ell", "3", "--depth", "1", "--adic-exponent", "2"]);
    assert_eq!(code, EXIT_DEPTH, "{err}");
    assert_eq!(call(&["tree", "--curve", "0,0,0,0,0", "--ell", "3", "--depth", "1"]).0, EXIT_ERROR);
    assert_eq!(call(&["tree", "--curve", "graphexample", "--ell", "4", "--depth", "1"]).0, EXIT_ERROR);
    assert_eq!(call(&["tree", "--curve", "no-such-curve", "--ell", "3", "--depth", "1"]).0, EXIT_ERROR);
    assert_eq!(call(&["tree", "--curve", "graphexample"]).0, EXIT_ERROR);
    assert_eq!(call(&["--help"]).0, EXIT_OK);
}

#[test]
fn tree_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let (code, out, _) = call(&["tree", "--curve", "graphexample", "--ell", "3", "--depth", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    assert_eq!(level_degrees(&text, 1), vec![1, 1, 2]);
}

#[test]
fn orbits() {
    let (code, out, _) = call(&["orbits", "--spec", "50.b1", "--depth", "1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(level_degrees(&out, 1), vec![1, 3]);
    let (_, out, _) = call(&["orbits", "--spec", "full-gl2-3", "--depth", "1"]);
    assert_eq!(level_degrees(&out, 1), vec![4]);
    let (_, out, _) = call(&["orbits", "--spec", "full-gl2-3", "--depth", "0"]);
    assert_eq!(FiberTree::from_json(&out).unwrap().node_count(), 1);
    assert_eq!(call(&["orbits", "--spec", "54.b2", "--depth", "1"]).0, EXIT_ERROR);
}

#[test]
fn orbits_from_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("borel.json");
    std::fs::write(&good, r#"{"ell": 3, "defining_exponent": 1, "generators": [[[1,1],[0,1]], [[2,0],[0,1]], [[1,0],[0,2]]]}"#).unwrap();
    let (code, out, _) = call(&["orbits", "--spec", good.to_str().unwrap(), "--depth", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(level_degrees(&out, 2), vec![9, 27]);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"ell": 3, "generators": []}"#).unwrap();
    assert_eq!(call(&["orbits", "--spec", bad.to_str().unwrap(), "--depth", "1"]).0, EXIT_ERROR);
}

#[test]
fn powermap_modes() {
    let (code, out, _) = call(&["powermap", "--spec", "50.b1", "--n", "2", "--mode", "welldef"]);
    assert_eq!(code, EXIT_FALSE);
    assert!(out.contains("A = [[10, 1], [18, 4]] mod 81"), "{out}");
    assert!(out.contains("[[28, 48], [0, 55]] mod 81"), "{out}");
    assert_eq!(call(&["powermap", "--mode", "raising", "--ell", "3", "--n", "1"]).0, EXIT_OK);
    let (code, _, err) = call(&["powermap", "--mode", "raising", "--ell", "2", "--n", "1"]);
    assert_eq!(code, EXIT_ERROR);
    assert!(err.contains("odd prime"));
    let (code, _, err) = call(&["powermap", "--spec", "50.b1", "--n", "1", "--mode", "inject"]);
    assert_eq!(code, EXIT_ERROR);
    assert!(err.contains("hypothesis"));
    assert_eq!(call(&["powermap", "--n", "1", "--mode", "welldef"]).0, EXIT_ERROR);
}

#[test]
fn verify_against_orbits() {
    let (code, out, _) = call(&["verify", "--curve", "50.b1", "--ell", "3", "--depth", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "equal");
    let (code, out, _) = call(&["verify", "--curve", "50.b1", "--ell", "3", "--depth", "2", "--spec", "full-gl2-3"]);
    assert_eq!(code, EXIT_FALSE);
    assert!(out.contains("mismatch"));
    assert_eq!(call(&["verify", "--curve", "50.b1", "--ell", "3", "--depth", "0"]).0, EXIT_OK);
    assert_eq!(call(&["verify", "--curve", "54.b2", "--ell", "3", "--depth", "1"]).0, EXIT_ERROR);
}

#[test]
fn extra_registry_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("extra.json");
    std::fs::write(
        &path,
        r#"{"curves": [{"name": "mine", "a_invariants": ["0","0","0","21","26"], "adic_exponents": {"3": 2}}]}"#,
    )
    .unwrap();
    let (code, out, _) = call(&["--registry", path.to_str().unwrap(), "tree", "--curve", "mine", "--ell", "3", "--depth", "2"]);
    assert_eq!(code, EXIT_OK);
    let doc: TreeDocument = serde_json::from_str(&out).unwrap();
    assert_eq!(doc.certified_exponent, Some(2));
}

#[test]
fn binary_uses_cache_dir_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let bin = env!("CARGO_BIN_EXE_fiberlevel");
    let args = ["tree", "--curve", "counterexample", "--ell", "2", "--depth", "4"];
    let first = Command::new(bin).args(args).env("FIBERLEVEL_CACHE_DIR", dir.path()).output().unwrap();
    assert_eq!(first.status.code(), Some(0));
    let cached = std::fs::read_dir(dir.path()).unwrap().count();
    assert!(cached > 0, "no cache files written");
    let second = Command::new(bin).args(args).env("FIBERLEVEL_CACHE_DIR", dir.path()).output().unwrap();
    assert_eq!(first.stdout, second.stdout);

    let depth = Command::new(bin)
        .args(["tree", "--curve", "counterexample", "--ell", "2", "--depth", "2", "--adic-exponent", "4"])
        .output()
        .unwrap();
    assert_eq!(depth.status.code(), Some(2));
}
