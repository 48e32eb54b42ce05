use std::sync::RwLock;

use polylift::cli;

// Held for writing while a test changes the environment.
static ENV: RwLock<()> = RwLock::new(());

fn run(args: &[&str]) -> (i32, String, String) {
    let _guard = ENV.read().unwrap_or_else(|e| e.into_inner());
    run_unguarded(args)
}

fn run_unguarded(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("polylift").chain(args.iter().copied());
    let code = cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["axioms", "--no-such-flag"]).0, 2);
    assert_eq!(run(&["validate", "(s 0 1 x0 = x0", "--alpha", "2"]).0, 2);
    assert_eq!(run(&["validate", "s 0 5 x0 = x0", "--alpha", "2"]).0, 2);
    assert_eq!(run(&["decompose"]).0, 2);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("validate"));
}

#[test]
fn validate_reports_carriers() {
    let (code, out, _) = run(&["validate", "(p 0 1 (p 0 1 x0)) = x0", "--alpha", "2", "--base", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains(
        "valid-up-to(Sb(alpha=2 base=1), Sb(alpha=2 base=2), Sb(alpha=2 base=3))"
    ));
    let (code, out, _) = run(&["validate", "s 0 1 x0 = x0", "--alpha", "2"]);
    assert_eq!(code, 1);
    assert!(out.contains("witness: alpha=2 base=2; x0=hex:"));
}

#[test]
fn equation_files() {
    let dir = std::env::temp_dir().join(format!("polylift-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("eqs.txt");
    std::fs::write(&path, "# boolean\n(and x0 x1) = (and x1 x0)\n\n(c 0 (c 0 x0)) = (c 0 x0)\n").unwrap();
    let (code, out, _) = run(&["validate", "--file", path.to_str().unwrap(), "--alpha", "2", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
    assert!(v[1]["witness"].is_null());
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn json_is_reproducible() {
    let args = ["validate", "(c 0 (s 0 1 x0)) = (s 0 1 x0)", "p 0 1 x0 = x0", "--alpha", "3", "--base", "3", "--sampled", "40", "--seed", "9", "--json"];
    let a = run(&args);
    let b = run(&args);
    let c = run(&[&args[..], &["--jobs", "1"]].concat());
    assert_eq!(a, b);
    assert_eq!(a.1, c.1);
    assert_eq!(a.0, 1);
    let v: serde_json::Value = serde_json::from_str(&a.1).unwrap();
    for rec in v.as_array().unwrap() {
        for key in ["label", "status", "witness"] {
            assert!(rec.get(key).is_some());
        }
    }
}

#[test]
fn witnesses_round_trip() {
    let (code, out, _) = run(&["validate", "(c 1 (s 0 1 x0)) = (s 0 1 (c 1 x0))", "--alpha", "2", "--json"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let w = v[0]["witness"].as_str().unwrap();
    let (code, out, _) = run(&["validate", "(c 1 (s 0 1 x0)) = (s 0 1 (c 1 x0))", "--alpha", "2", "--check-witness", w]);
    assert_eq!(code, 1);
    assert!(out.contains(": refuted"));
    let (code, _, _) = run(&["validate", "x0 = x0", "--alpha", "2", "--check-witness", w]);
    assert_eq!(code, 0);
    let (code, _, err) = run(&["validate", "(and x0 x1) = x1", "--alpha", "2", "--check-witness", w]);
    assert_eq!(code, 2);
    assert!(err.contains("unbound"));
}

#[test]
fn budget_flag_and_env() {
    let args = ["validate", "(and x0 x1) = (and x1 x0)", "--alpha", "2"];
    assert_eq!(run(&[&args[..], &["--budget", "100"]].concat()).0, 2);
    assert_eq!(run(&args).0, 0);
    let guard = ENV.write().unwrap_or_else(|e| e.into_inner());
    std::env::set_var(cli::BUDGET_ENV, "100");
    let over = run_unguarded(&[&args[..], &["--budget", "100000"]].concat());
    std::env::remove_var(cli::BUDGET_ENV);
    drop(guard);
    assert_eq!(over.0, 2);
    assert!(over.2.contains("budget"));
}

#[test]
fn logic_subcommands() {
    let (code, out, _) = run(&["sat", "(R0 v0 v1)", "--model", "alpha=2 base=2; R0 = {(1,0)}", "--assignment", "1,0", "--alpha", "2"]);
    assert_eq!((code, out.trim()), (0, "true"));
    let (_, out, _) = run(&["sat", "(E 0 (R0 v0 v1))", "--model", "alpha=2 base=2; R0 = {(1,0)}", "--alpha", "2"]);
    assert_eq!(out.trim(), "alpha=2 base=2 {(0,0),(1,0)}");
    let (_, out, _) = run(&["subst", "(E 1 (R0 v0 v1))", "0", "1", "--alpha", "2"]);
    assert_eq!(out.trim(), "(E 0 (R0 v1 v0))");
    let (_, out, _) = run(&["subst", "(E 1 (R0 v0 v1))", "0", "1", "--mode", "naive", "--alpha", "2"]);
    assert_eq!(out.trim(), "(E 1 (R0 v1 v1))");
    let (code, out, _) = run(&["equiv", "(R0 v0 v0)", "(E 1 (R0 v0 v0))", "--alpha", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("equivalent-up-to(base 3)"));
    let (code, _, _) = run(&["equiv", "(R0 v1 v1)", "(E 1 (R0 v1 v1))", "--alpha", "2"]);
    assert_eq!(code, 1);
}

#[test]
fn decompose_and_lift() {
    let (code, out, _) = run(&["decompose", "1 1 2 0"]);
    assert_eq!(code, 0);
    assert!(out.contains("round-trip: PASS"));
    let (code, out, _) = run(&["decompose", "--all", "--alpha", "3", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["singular"], 21);
    let (code, out, _) = run(&["lift", "--alpha", "2", "--relation", "{(0,1)}", "--h-size", "3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("CLAIM3/subst-sigma: PASS"));
    assert!(out.contains("lift: PASS"));
    let (code, _, _) = run(&["lift", "--alpha", "2", "--h-size", "2"]);
    assert_eq!(code, 2);
}

#[test]
fn axioms_listing_and_check() {
    let (code, out, _) = run(&["axioms", "--alpha", "3", "--list"]);
    assert_eq!(code, 0);
    assert!(out.contains("F4[i=0,j=1]: (c 0 (s 0 1 x0)) = (s 0 1 x0)"));
    assert!(out.contains("110 instances"));
    let (code, out, _) = run(&["derived", "--alpha", "2", "--base", "2"]);
    assert_eq!(code, 0);
    for s in ["S1", "S2", "S3", "S4", "S5", "S6"] {
        assert!(out.contains(&format!("{s}: PASS")), "{out}");
    }
}
