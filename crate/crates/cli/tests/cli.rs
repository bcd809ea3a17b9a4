use std::io::Write;
use std::path::Path;
use std::process::{Command, Stdio};

use ec_riordan::curve::{CurveParams, CurvePoint};
use ec_riordan::rational::{self, ints, Rational};
use ec_riordan::transforms::JFraction;
use ec_riordan::{paths, pipeline};
use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

/// Runs the binary with the network made unusable: a dead proxy and a dead
/// OEIS endpoint, so any attempted fetch fails fast.
fn run_with(args: &[&str], stdin: Option<&str>, cache: Option<&Path>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ec-riordan"));
    cmd.args(args)
        .env("EC_RIORDAN_OEIS_URL", "http://127.0.0.1:9")
        .env("HTTP_PROXY", "http://127.0.0.1:9")
        .env("HTTPS_PROXY", "http://127.0.0.1:9")
        .env("ALL_PROXY", "http://127.0.0.1:9")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    match cache {
        Some(dir) => cmd.env("EC_RIORDAN_CACHE", dir),
        None => cmd.env_remove("EC_RIORDAN_CACHE"),
    };
    let mut child = cmd.spawn().expect("binary runs");
    if let Some(input) = stdin {
        child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn run(args: &[&str]) -> Run {
    run_with(args, None, None)
}

fn json(r: &Run) -> Value {
    serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{e}: {}", r.stdout))
}

fn seq(v: &Value) -> Vec<Rational> {
    v.as_array().unwrap().iter().map(|s| rational::parse(s.as_str().unwrap()).unwrap()).collect()
}

fn matrix(v: &Value) -> Vec<Vec<Rational>> {
    v.as_array().unwrap().iter().map(seq).collect()
}

const BASE: [&str; 6] = ["--a", "-1", "--b", "-2", "--c", "-1"];

fn with<'a>(base: &[&'a str], extra: &[&'a str]) -> Vec<&'a str> {
    base.iter().chain(extra).copied().collect()
}

#[test]
fn derive_text() {
    let r = run(&with(&["derive"], &BASE));
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("g: 1,-1,3,-8,22,-59"), "{}", r.stdout);
    assert!(r.stdout.contains("gamma: 1,1,3,6,14,33,79"));
    assert!(r.stdout.contains("hankel: 1,2,1,-7,-16,-57,-113,670"));
    assert!(r.stdout.contains("somos_curve_form: r = 1, s = -2"));
}

#[test]
fn derive_json_round_trips() {
    let r = run(&with(&["derive", "--order", "20", "--format", "json"], &BASE));
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = json(&r);
    let curve = CurveParams::from_ints(-1, -2, -1).unwrap();
    assert_eq!(seq(&v["g"]), pipeline::derive_g(&curve, 20).unwrap().coeffs());
    assert_eq!(seq(&v["gamma"]), pipeline::derive_gamma(&curve, 20).unwrap().coeffs());
    assert_eq!(seq(&v["hankel"]), ints(&[1, 2, 1, -7, -16, -57, -113, 670, 3983, 23647]));
    assert_eq!(seq(&v["eds"])[..6], ints(&[0, 1, -1, 2, -1, -7])[..]);
    assert_eq!(v["gamma_shift"], "2");
    assert_eq!(v["somos"]["curve_form"], v["somos"]["appendix_form"]);
    let steps: paths::StepSet = serde_json::from_value(v["steps_g"].clone()).unwrap();
    assert_eq!(steps, paths::stepset_for_g(&curve));
    assert_eq!(v["a_matrix_g"]["alpha"], "-3");
}

#[test]
fn derive_csv() {
    let r = run(&with(&["derive", "--order", "8", "--format", "csv"], &BASE));
    assert_eq!(r.code, 0);
    assert!(r.stdout.lines().any(|l| l == "g,1,-1,3,-8,22,-59,155,-396"), "{}", r.stdout);
    assert!(r.stdout.lines().any(|l| l == "steps_g,2,-1,1"));
    assert!(r.stdout.lines().any(|l| l == "steps_g_origin_override,-1"));
}

#[test]
fn rational_curve_parameters() {
    let r = run(&["derive", "--a", "1/3", "--b", "2", "--c", "-1", "--order", "6"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.starts_with("g: 1,"));
}

#[test]
fn verify_reports() {
    for curve in [BASE, ["--a", "2", "--b", "-5", "--c", "-1"], ["--a", "0", "--b", "0", "--c", "0"]] {
        let r = run(&with(&["verify", "--order", "24", "--format", "json"], &curve));
        assert_eq!(r.code, 0, "{curve:?}: {}", r.stdout);
        let v = json(&r);
        let checks = v["checks"].as_array().unwrap();
        assert!(checks.len() >= 15);
        assert!(checks.iter().all(|c| c["pass"] == true));
        assert!(checks.iter().any(|c| c["name"] == "eds_hankel_alignment"));
    }
    let r = run(&with(&["verify", "--order", "16"], &BASE));
    assert!(r.stdout.lines().all(|l| l.starts_with("PASS ")), "{}", r.stdout);
    let r = run(&with(&["verify", "--order", "16", "--format", "csv"], &BASE));
    assert_eq!(r.stdout.lines().next(), Some("name,pass,detail"));
}

#[test]
fn hankel_sources() {
    let g = "1,-1,3,-8,22,-59,155,-396,978,-2310,5122";
    let r = run(&["hankel", g]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.trim(), "1,2,1,-7,-16,-57");
    let r = run_with(&["hankel", "-", "--count", "4"], Some("1 -1 3 -8\n22 -59 155\n"), None);
    assert_eq!(r.stdout.trim(), "1,2,1,-7");
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.txt");
    std::fs::write(&file, g).unwrap();
    let arg = format!("@{}", file.display());
    let r = run(&["hankel", &arg, "--format", "json"]);
    assert_eq!(seq(&json(&r)), ints(&[1, 2, 1, -7, -16, -57]));
    // JSON output is accepted back as input.
    let r2 = run_with(&["hankel", "-", "--count", "1"], Some(&r.stdout), None);
    assert_eq!(r2.code, 0, "{}", r2.stderr);
}

#[test]
fn eds_prefix() {
    let r = run(&with(&["eds", "--n", "8"], &BASE));
    assert_eq!(r.stdout.trim(), "0,1,-1,2,-1,-7,16,-57,113");
}

#[test]
fn points_formats() {
    let r = run(&with(&["points", "--n", "5"], &BASE));
    assert!(r.stdout.contains("5P = (16/49, -169/343)"), "{}", r.stdout);
    let r = run(&with(&["points", "--n", "7", "--format", "csv"], &BASE));
    assert!(r.stdout.lines().any(|l| l == "5,16/49,-169/343"));
    assert!(r.stdout.lines().any(|l| l == "7,-1808/3249,274576/185193"));
    let r = run(&with(&["points", "--n", "7", "--format", "json"], &BASE));
    let v = json(&r);
    let pts: Vec<CurvePoint> = serde_json::from_value(v["points"].clone()).unwrap();
    let curve = CurveParams::from_ints(-1, -2, -1).unwrap();
    assert_eq!(pts, curve.multiples(7).points);
    assert!(v["torsion_order"].is_null());
    let r = run(&["points", "--a", "0", "--b", "0", "--c", "0", "--n", "5", "--format", "json"]);
    let v = json(&r);
    assert_eq!(v["torsion_order"], 3);
    // Listing stops once the identity is reached.
    assert_eq!(v["points"].as_array().unwrap().len(), 2);
    assert_eq!(v["points"][1], serde_json::json!({"x": "0", "y": "1"}));
}

#[test]
fn paths_from_steps() {
    let steps = r#"[{"dx":1,"dy":1,"w":"1"},{"dx":1,"dy":0,"w":"4"},{"dx":2,"dy":0,"w":"2"},{"dx":2,"dy":-1,"w":"1"}]"#;
    let r = run(&["paths", "--steps", steps, "--rows", "4"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stdout.trim(), "1\n4,1\n18,8,1\n81,52,12,1");
    let r = run(&["paths", "--steps", steps, "--rows", "6", "--brute-force", "--format", "json"]);
    assert_eq!(r.code, 0);
    let v = json(&r);
    assert_eq!(v["brute_force_agrees"], true);
    assert_eq!(matrix(&v["rows"])[5], ints(&[1686, 1708, 739, 168, 20, 1]));
    let r = run(&["paths", "--steps", r#"[{"dx":1,"dy":0,"w":"1"}]"#, "--origin-override", "-1", "--rows", "3"]);
    assert_eq!(r.stdout.trim(), "1\n-1,0\n-1,0,0");
}

#[test]
fn paths_from_curve() {
    let r = run(&with(&["paths", "--family", "g", "--rows", "5"], &BASE));
    assert_eq!(r.stdout.trim(), "1\n-1,1\n3,-2,1\n-8,7,-3,1\n22,-22,12,-4,1");
    let r = run(&with(&["paths", "--family", "orbit", "--r", "2", "--rows", "6", "--format", "csv"], &BASE));
    let column: Vec<&str> = r.stdout.lines().map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(column, ["1", "1", "3", "6", "14", "33"]);
}

#[test]
fn jfrac_both_routes() {
    let r = run(&with(&["jfrac", "--shift", "2", "--depth", "8", "--eval", "--format", "json"], &BASE));
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = json(&r);
    assert_eq!(seq(&v["series"])[..11], ints(&[1, 1, 3, 6, 14, 33, 79, 194, 482, 1214, 3090])[..]);
    let jf: JFraction = serde_json::from_value(serde_json::json!({"b": v["b"], "lam": v["lam"]})).unwrap();
    assert_eq!(jf.depth(), 8);
    let r = run(&["jfrac", "1,-1,3,-8,22,-59,155", "--depth", "3"]);
    assert_eq!(r.stdout.trim(), "b: -1,-3/2,5/2\nlam: 2,1/4,-14");
    // A023431 has h_1 = 0, so no J-fraction exists.
    let r = run(&["jfrac", "1,1,1,2,4,7,13", "--depth", "3"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("zero lambda"));
}

#[test]
fn oeis_offline_matches() {
    let cases: [(&str, Vec<&str>); 4] = [
        ("A025243", with(&["--from", "gamma"], &BASE)),
        ("A023431", vec!["--from", "gamma", "--a", "-1", "--b", "0", "--c", "-1"]),
        ("A000108", vec!["--from", "catalan"]),
        ("A010892", vec!["1,1,0,-1,-1,0,1,1"]),
    ];
    for (id, source) in cases {
        let args = with(&["oeis", "--offline", "--order", "24", "--id", id, "--format", "json"], &source);
        let r = run(&args);
        assert_eq!(r.code, 0, "{id}: {} {}", r.stdout, r.stderr);
        let v = json(&r);
        assert_eq!(v["match"], true);
        assert_eq!(v["source"], "fixture");
        assert_eq!(v["offset"], 0);
    }
}

#[test]
fn oeis_offsets_and_mismatches() {
    // Listings that start late align at a positive offset.
    let r = run(&["oeis", "--offline", "--id", "A010892", "0,-1,-1,0,1,1", "--format", "json"]);
    assert_eq!(r.code, 0);
    assert_eq!(json(&r)["offset"], 2);
    let r = run(&["oeis", "--offline", "--id", "A000108", "1,1,2,5,14,43,132"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("mismatch at index 5"), "{}", r.stdout);
    let r = run(&["oeis", "--offline", "--id", "A000045", "1,1,2,3,5"]);
    assert_eq!(r.code, 2);
    let r = run(&["oeis", "--offline", "--id", "not-an-id", "1"]);
    assert_eq!(r.code, 2);
}

#[test]
fn oeis_network_and_cache() {
    let cache = tempfile::tempdir().unwrap();
    // Offline mode succeeds even though every network route is dead.
    let r = run_with(&["oeis", "--offline", "--id", "A000108", "1,1,2,5,14"], None, Some(cache.path()));
    assert_eq!(r.code, 0, "{}", r.stderr);
    // Online with an empty cache has to fetch, which fails.
    let r = run_with(&["oeis", "--id", "A000045", "1,1,2,3,5"], None, Some(cache.path()));
    assert_eq!(r.code, 3, "{}", r.stderr);
    assert!(r.stderr.contains("network failure"));
    // A cached b-file is used without touching the network.
    std::fs::write(cache.path().join("b000045.txt"), "# Fibonacci\n0 0\n1 1\n2 1\n3 2\n4 3\n5 5\n6 8\n").unwrap();
    let r = run_with(&["oeis", "--id", "A45", "1,1,2,3,5,8", "--format", "json"], None, Some(cache.path()));
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = json(&r);
    assert_eq!((v["source"].as_str(), v["offset"].as_i64()), (Some("cache"), Some(1)));
}

#[test]
fn exit_code_matrix() {
    let singular = ["--a", "1", "--b", "-2", "--c", "-1"];
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (with(&["derive", "--order", "8"], &BASE), 0),
        (with(&["derive"], &singular), 2),
        (with(&["verify"], &singular), 2),
        (with(&["points"], &singular), 2),
        (vec!["derive", "--a", "x", "--b", "0", "--c", "0"], 2),
        (vec!["derive", "--a", "1", "--c", "0"], 2),
        (vec!["derive", "--a", "1/0", "--b", "0", "--c", "0"], 2),
        (vec!["hankel", "1,2,oops"], 2),
        (vec!["hankel", ""], 2),
        (vec!["paths", "--steps", "not json"], 2),
        (vec!["paths", "--steps", r#"[{"dx":3,"dy":0,"w":"1"}]"#], 2),
        (vec!["paths", "--rows", "3"], 2),
        (vec!["jfrac"], 2),
        (vec!["no-such-command"], 2),
        (vec!["hankel", "1,2,3", "--format", "yaml"], 2),
        (vec!["oeis", "--offline", "--id", "A000108", "1,2,3"], 1),
    ];
    for (args, expected) in cases {
        let r = run(&args);
        assert_eq!(r.code, expected, "{args:?}: {}", r.stderr);
    }
}
