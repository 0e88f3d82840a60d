use std::path::PathBuf;

use schober_forge::cli::{run, EXIT_OK, EXIT_USAGE};
use schober_forge::qcore::{import_json, quiver_isomorphic, QPMatching};
use schober_forge::surface::TRIANGLE_FIXTURE;
use schober_forge::triangle::{side_matching, triangle_qp, SIDE_IDENTITY, SIDE_P_TO_ZERO};
use schober_forge::dynkin::DynkinType;

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("schober-forge").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("schober-forge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn cluster_commands() {
    assert_eq!(cli(&["cluster", "--type", "A3", "cofiber", "1", "3"]), (EXIT_OK, "2\n".into(), String::new()));
    assert_eq!(cli(&["cluster", "--type", "A4", "fiber", "1", "2"]).1, "4\n");
    assert_eq!(cli(&["cluster", "--type", "E6", "shift", "1+6"]).1, "5⊕6\n");
    assert_eq!(cli(&["cluster", "--type", "A5", "count"]).1, "5\n");
    let (code, out, _) = cli(&["cluster", "--type", "A3", "sum-check"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 6);
    assert_eq!(cli(&["cluster", "--type", "D4", "cofiber", "1", "2"]).0, EXIT_USAGE);
    assert_eq!(cli(&["cluster", "--type", "A3", "cofiber", "2", "2"]).0, EXIT_USAGE);
}

#[test]
fn usage_errors() {
    assert_eq!(cli(&["triangle", "--type", "F4"]).0, EXIT_USAGE);
    assert_eq!(cli(&["triangle", "--type", "D3"]).0, EXIT_USAGE);
    assert_eq!(cli(&["triangle", "--type", "D4", "--grid"]).0, EXIT_USAGE);
    assert_eq!(cli(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(cli(&["verify", "--suite", "nope"]).0, EXIT_USAGE);
    let bad = scratch("bad.json");
    std::fs::write(&bad, "{\"vertices\": [").unwrap();
    assert_eq!(cli(&["ginzburg", bad.to_str().unwrap()]).0, EXIT_USAGE);
    assert_eq!(cli(&["--help"]).0, EXIT_OK);
}

#[test]
fn triangle_outputs_match_fixture_and_are_deterministic() {
    let (code, json, _) = cli(&["triangle", "--type", "A3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(cli(&["triangle", "--type", "A3"]).1, json);
    let x = import_json(json.trim_end().as_bytes()).unwrap();
    let fixture = import_json(TRIANGLE_FIXTURE.as_bytes()).unwrap();
    assert!(quiver_isomorphic(&x, &fixture, true, true).is_some());

    let dot = scratch("triangle.dot");
    assert_eq!(cli(&["triangle", "--type", "A3", "--out", dot.to_str().unwrap()]).0, EXIT_OK);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches("shape=box").count(), 9);
    assert_eq!(text.matches("shape=circle").count(), 3);
    assert_eq!(text.matches("color=blue").count(), 6);
    assert_eq!(text.matches(" -> ").count(), 24);

    let (code, grid, _) = cli(&["triangle", "--type", "A3", "--grid"]);
    assert_eq!(code, EXIT_OK);
    let g = import_json(grid.trim_end().as_bytes()).unwrap();
    assert!(quiver_isomorphic(&g, &fixture, true, true).is_some());
}

#[test]
fn surface_and_export() {
    let path = scratch("square.json");
    assert_eq!(cli(&["surface", "--polygon", "4", "--type", "A3", "--out", path.to_str().unwrap()]).0, EXIT_OK);
    let x = import_json(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!((x.quiver.num_vertices(), x.frozen_vertices.len(), x.quiver.num_arrows()), (21, 12, 44));
    let (code, again, _) = cli(&["export", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(again.trim_end().as_bytes(), std::fs::read(&path).unwrap().as_slice());
    let (code, dot, _) = cli(&["export", path.to_str().unwrap(), "--format", "dot"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(dot.matches("shape=box").count(), 12);
    assert_eq!(cli(&["export", path.to_str().unwrap(), "--format", "svg"]).0, EXIT_USAGE);
}

#[test]
fn ginzburg_check_and_amalgamate() {
    let t = triangle_qp(DynkinType::A(2)).unwrap();
    let a = scratch("a2.json");
    std::fs::write(&a, schober_forge::qcore::export_json(&t.qp).unwrap()).unwrap();
    let (code, out, err) = cli(&["ginzburg", a.to_str().unwrap(), "--check"]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.contains("\"differential\""));
    assert!(err.contains("d² = 0"));

    let m: QPMatching = side_matching(&t, SIDE_P_TO_ZERO, &t, SIDE_IDENTITY, &|i| i).unwrap();
    let mpath = scratch("m.json");
    std::fs::write(&mpath, serde_json::to_string(&m).unwrap()).unwrap();
    let (code, out, err) = cli(&["amalgamate", a.to_str().unwrap(), a.to_str().unwrap(), "--matching", mpath.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{err}");
    let glued = import_json(out.trim_end().as_bytes()).unwrap();
    assert_eq!(glued.quiver.num_vertices(), 2 * t.qp.quiver.num_vertices() - 2);
}

#[test]
fn roots_command() {
    let (code, out, _) = cli(&["roots", "--type", "E6"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["positive_roots"], 36);
    assert_eq!(v["minus_w0"], serde_json::json!([5, 4, 3, 2, 1, 6]));
}

#[test]
fn verify_suites_exit_status() {
    let (code, out, _) = cli(&["verify", "--suite", "cluster"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.ends_with("0 failed\n"));
    let (code, out, _) = cli(&["verify", "--suite", "gluing"]);
    assert_eq!(code, EXIT_OK, "{out}");
}

#[test]
fn rank_cap_is_enforced() {
    // Run the binary so the environment change does not leak into other tests.
    let exe = env!("CARGO_BIN_EXE_schober-forge");
    let out = std::process::Command::new(exe)
        .args(["triangle", "--type", "A5"])
        .env("SCHOBER_FORGE_RANK_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    assert!(String::from_utf8_lossy(&out.stderr).contains("rank cap"));
    let ok = std::process::Command::new(exe).args(["cluster", "--type", "A3", "cofiber", "1", "3"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "2\n");
}
