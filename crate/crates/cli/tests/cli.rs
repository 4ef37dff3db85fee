use std::process::{Command, Output};

use serde_json::Value;

fn carlitz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_carlitz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone())
        .unwrap()
        .trim()
        .to_string()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = carlitz(&all);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn dedekind_small() {
    let o = carlitz(&["dedekind", "2", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "-1/18");
}

#[test]
fn dedekind_big_arguments() {
    let o = carlitz(&["dedekind", "100000000000000000003", "100000000000000000000"]);
    assert_eq!(o.status.code(), Some(0));
    let direct = carlitz(&["dedekind", "3", "100", "--direct"]);
    let fast = carlitz(&["dedekind", "3", "100"]);
    assert_eq!(stdout(&direct), stdout(&fast));
}

#[test]
fn dedekind_domain_error_exits_2() {
    assert_eq!(carlitz(&["dedekind", "2", "0"]).status.code(), Some(2));
    assert_eq!(carlitz(&["dedekind", "x", "3"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(carlitz(&[]).status.code(), Some(2));
    assert_eq!(
        carlitz(&["verify", "no-such-identity"]).status.code(),
        Some(2)
    );
    assert_eq!(
        carlitz(&["verify", "carlitz", "--a", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(carlitz(&["verify", "berndt-dieter"]).status.code(), Some(2));
    assert_eq!(carlitz(&["cone-ipt", "not json"]).status.code(), Some(2));
    assert_eq!(
        carlitz(&["cone-transform", "2", "3", "1", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_holding_identities_exit_0() {
    for args in [
        vec!["verify", "carlitz", "--a", "2", "--b", "3"],
        vec!["verify", "dedekind", "--a", "5", "--b", "7"],
        vec!["verify", "berndt-dieter", "--seq", "2,3,5"],
        vec![
            "verify", "two-ray", "--a", "1", "--b", "1", "--c", "2", "--d", "7",
        ],
        vec![
            "verify", "two-ray", "--a", "1", "--b", "1", "--c", "2", "--d", "7", "--x", "2", "--y",
            "-1",
        ],
        vec![
            "verify",
            "tetrahedron",
            "--a",
            "1",
            "--b",
            "2",
            "--c",
            "3",
            "--t",
            "1",
        ],
        vec![
            "verify", "ehrhart", "--a", "2", "--b", "3", "--c", "5", "--t", "2",
        ],
    ] {
        let o = carlitz(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
    }
}

#[test]
fn violated_identities_exit_1() {
    assert_eq!(
        carlitz(&["verify", "elementary", "--a", "1", "--b", "1", "--c", "2"])
            .status
            .code(),
        Some(1)
    );
    let printed = [
        "verify",
        "tetrahedron-printed",
        "--a",
        "1",
        "--b",
        "2",
        "--c",
        "3",
        "--t",
        "1",
    ];
    assert_eq!(carlitz(&printed).status.code(), Some(1));
}

#[test]
fn ehrhart_json() {
    let o = carlitz(&["ehrhart", "1", "1", "1", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let want: Value =
        serde_json::from_str(r#"{"c3":"1/6","c2":"1","c1":"11/6","c0":"1"}"#).unwrap();
    assert_eq!(v, want);
}

#[test]
fn count_agrees_with_ehrhart() {
    let p = json(&["ehrhart", "2", "3", "5"]);
    assert!(p.is_object());
    let n = json(&["count", "2", "3", "5", "--t", "2"]);
    let text = stdout(&carlitz(&[
        "verify", "ehrhart", "--a", "2", "--b", "3", "--c", "5", "--t", "2",
    ]));
    assert!(text.contains(&format!("lhs = {}", n["count"])), "{text}");
}

#[test]
fn report_json_round_trips() {
    let v = json(&[
        "verify",
        "pommersheim",
        "--a",
        "2",
        "--b",
        "3",
        "--c",
        "5",
        "--d",
        "7",
    ]);
    assert_eq!(v["identity"], "pommersheim");
    assert_eq!(v["holds"], true);
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
}

#[test]
fn cone_json_round_trips_through_cone_ipt() {
    let v = json(&[
        "cone-ipt",
        r#"{"apex":[0,0],"generators":[[1,0],[1,2]],"open":[false,true]}"#,
        "--expand",
        "--degree",
        "3",
    ]);
    let cone = serde_json::to_string(&v["cone"]).unwrap();
    let w = json(&["cone-ipt", &cone]);
    assert_eq!(v["transform"], w["transform"]);
    assert_eq!(v["fundpar"].as_array().unwrap().len(), 2);
}

#[test]
fn sweep_exit_codes() {
    assert_eq!(
        carlitz(&["sweep", "dedekind", "--max", "8"]).status.code(),
        Some(0)
    );
    assert_eq!(
        carlitz(&["sweep", "elementary", "--max", "4"])
            .status
            .code(),
        Some(1)
    );
    let a = json(&[
        "sweep",
        "rademacher-3term",
        "--max",
        "6",
        "--seed",
        "3",
        "--samples",
        "4",
    ]);
    let b = json(&[
        "sweep",
        "rademacher-3term",
        "--max",
        "6",
        "--seed",
        "3",
        "--samples",
        "4",
    ]);
    assert_eq!(a, b);
    assert_eq!(a["checked"], 4);
}

#[test]
fn polynomial_commands() {
    assert_eq!(stdout(&carlitz(&["carlitz", "2", "3"])), "u*v + 1");
    assert_eq!(
        carlitz(&["carlitz-nd", "2", "3", "5"]).status.code(),
        Some(0)
    );
    assert_eq!(carlitz(&["drc", "2", "3", "5"]).status.code(), Some(0));
    assert!(stdout(&carlitz(&["triangle", "2", "3"])).ends_with("identity holds"));
    assert_eq!(json(&["carlitz-short", "5", "7"])["terms"], 4);
}
