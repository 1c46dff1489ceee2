use std::process::{Command, Output};

fn polymap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polymap"))
        .args(args)
        .env_remove("POLYMAP_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn whitney_branch_curve() {
    let o = polymap(&["branch", "(x, y^3+x*y)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("4*x^3 + 27*y^2"), "{}", stdout(&o));
}

#[test]
fn non_proper_map_still_exits_zero() {
    let o = polymap(&["proper", "(x+x^2*y, y)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("not proper"));
    let o = polymap(&["proper", "(x, y^2)"]);
    assert!(stdout(&o).contains("PASS proper: proper"));
}

#[test]
fn theorem_b_certificates() {
    let o = polymap(&["verify-theorem-b", "--d", "3", "--n-max", "4", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let mut mus: Vec<u64> = v["result"]["certificates"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|c| [c["certificate"]["milnor_f"].as_u64().unwrap(), c["certificate"]["milnor_g"].as_u64().unwrap()])
        .collect();
    mus.sort();
    mus.dedup();
    assert_eq!(mus, vec![1, 2, 3]);
}

#[test]
fn theorem_a_passes() {
    let o = polymap(&["verify-theorem-a", "--d-max", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn json_is_deterministic() {
    for args in [
        vec!["degree", "(x+y+x*y, x^2*y)", "--seed", "7", "--json"],
        vec!["family", "fdn", "--params", "d=3", "n=2", "--json"],
        vec!["group", "G4", "--verify", "--json"],
    ] {
        let a = polymap(&args);
        let b = polymap(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
        assert_eq!(v["schema"], 1);
    }
}

#[test]
fn failing_claim_exits_one() {
    let o = polymap(&["branch", "(x, y^3+x*y)", "--claimed", "4*x^3-27*y^2", "--tier", "divisibility"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL divisibility"));
}

#[test]
fn usage_and_computation_errors() {
    assert_eq!(polymap(&["bogus"]).status.code(), Some(2));
    assert_eq!(polymap(&["branch"]).status.code(), Some(2));
    let o = polymap(&["proper", "(x)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn budget_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_polymap"))
        .args(["branch", "(x, y^3+x*y)"])
        .env("POLYMAP_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("SKIP branch"));
}

#[test]
fn classes_and_milnor() {
    let o = polymap(&["classes", "--degree", "2"]);
    assert!(stdout(&o).contains("1 classes: cyclic(2)"));
    let o = polymap(&["milnor", "y^3-x^4"]);
    assert!(stdout(&o).contains("mu = 6"));
    let o = polymap(&["milnor", "(y-1)^2-(x-1)^3", "--at", "1,1"]);
    assert!(stdout(&o).contains("mu = 2"));
}
