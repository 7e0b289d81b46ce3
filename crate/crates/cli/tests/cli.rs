use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn catchi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catchi"))
        .args(args)
        .output()
        .expect("catchi runs")
}

fn catchi_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_catchi"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("catchi runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad report ({e}); stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn check<'a>(r: &'a Value, name: &str) -> &'a Value {
    r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name} in {r}"))
}

#[test]
fn verify_alpha_reports_alpha_one() {
    let out = catchi(&["singularities", "verify-alpha", "--max-sum", "22"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let data = &check(&r, "alpha_one")["data"];
    assert_eq!(data["failures"].as_array().unwrap().len(), 0);
    assert_eq!(data["cross_pairs_checked"], 201);
    for case in data["cases"].as_array().unwrap() {
        for pair in case["cross_pairs"].as_array().unwrap() {
            assert_eq!(pair["alpha_set"], serde_json::json!([1]));
        }
    }
    assert_eq!(r["summary"]["failed"], 0);
    assert_eq!(r["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn short_cone_fails_and_expect_fail_flips_the_exit() {
    let args = [
        "cone",
        "--circumference",
        "0.9tau",
        "--cat-test",
        "0",
        "--triangles",
        "20",
    ];
    let out = catchi(&args);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    let cone = check(&r, "cone_cat");
    assert_eq!(cone["status"], "fail");
    let violation = cone["data"]["scan"]["worst"]["violation"].as_f64().unwrap();
    assert!(violation > 1e-3, "{violation}");
    assert_eq!(check(&r, "circle_cat1")["status"], "fail");
    assert_eq!(check(&r, "cone_circle_correspondence")["status"], "pass");

    let mut flipped = args.to_vec();
    flipped.push("--expect-fail");
    assert_eq!(catchi(&flipped).status.code(), Some(0));
    let ok = catchi(&["cone", "--circumference", "2pi", "--triangles", "20"]);
    assert_eq!(ok.status.code(), Some(0));
    let ok_flipped = catchi(&[
        "cone",
        "--circumference",
        "2pi",
        "--triangles",
        "20",
        "--expect-fail",
    ]);
    assert_eq!(ok_flipped.status.code(), Some(1));
}

#[test]
fn dual_cycle_of_3_2_2_is_5() {
    for sub in ["cusp", "singularities"] {
        let out = catchi(&[sub, "dual-cycle", "3", "2", "2"]);
        assert_eq!(out.status.code(), Some(0));
        let r = report(&out);
        assert_eq!(check(&r, "dual_cycle")["data"]["dual"], "(5)");
    }
}

#[test]
fn reports_are_byte_identical_for_a_fixed_seed() {
    let args = [
        "crushed-demo",
        "--triangles",
        "10",
        "--probes",
        "3",
        "--per-probe",
        "5",
        "--seed",
        "42",
    ];
    let a = catchi(&args);
    let b = catchi(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let r = report(&a);
    assert_eq!(r["seed"], 42);
    assert!(r.get("timing_ms").is_none());
    let mut other = args.to_vec();
    *other.last_mut().unwrap() = "43";
    assert_ne!(catchi(&other).stdout, a.stdout);
    let mut timed = args.to_vec();
    timed.push("--timing");
    assert!(report(&catchi(&timed))["timing_ms"].as_f64().is_some());
}

#[test]
fn config_errors_exit_with_status_2() {
    for args in [
        vec!["crushed-demo", "--samples", "4"],
        vec!["crushed-demo", "--tol", "0"],
        vec!["lattice", "signature", "--named", "Q7"],
        vec!["singularities", "dual-cycle", "3", "x"],
        vec!["singularities", "dual-cycle", "2", "2"],
        vec!["singularities", "row", "2", "3", "6"],
        vec!["cone", "--circumference", "-1"],
        vec!["no-such-command"],
    ] {
        let out = catchi(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn cat_check_reads_triangles_from_stdin() {
    let witness = r#"{"vertices": [[0, 0], [1, -0.5], [1, 0.5]]}"#;
    let out = catchi_stdin(
        &["cat-check", "--space", "crushed", "--triangle", "-"],
        witness,
    );
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    let v = &check(&r, "cat_test")["data"]["verdict"];
    assert_eq!(v["verdict"], "fail");
    assert!(v["violation"].as_f64().unwrap() > 0.45);

    let out = catchi_stdin(
        &["cat-check", "--space", "euclidean", "--triangle", "-"],
        witness,
    );
    assert_eq!(out.status.code(), Some(0));

    let cone = r#"{"vertices": [[1, 0], [1, 1.7], [1, 3.4]]}"#;
    let args = [
        "cat-check",
        "--space",
        "cone",
        "--circumference",
        "0.8tau",
        "--triangle",
        "-",
    ];
    assert_eq!(catchi_stdin(&args, cone).status.code(), Some(1));
    let args = [
        "cat-check",
        "--space",
        "cone",
        "--circumference",
        "3pi",
        "--triangle",
        "-",
    ];
    assert_eq!(catchi_stdin(&args, cone).status.code(), Some(0));

    let bad = catchi_stdin(&["cat-check", "--space", "cone", "--triangle", "-"], "{}");
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn lattice_signatures_and_expectations() {
    let out = catchi(&[
        "lattice",
        "signature",
        "--named",
        "Y:2,3,7",
        "--expect",
        "1,0,9",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        check(&report(&out), "signature")["data"]["signature"],
        "(1,0,9)"
    );
    let wrong = catchi(&[
        "lattice",
        "signature",
        "--named",
        "Y:2,3,7",
        "--expect",
        "1,0,7",
    ]);
    assert_eq!(wrong.status.code(), Some(1));
    for (name, sig) in [
        ("U", "(1,0,1)"),
        ("K3", "(3,0,19)"),
        ("Y:3,3,3", "(0,1,6)"),
        ("Y:2,3,5", "(0,0,8)"),
    ] {
        let out = catchi(&["lattice", "signature", "--named", name]);
        assert_eq!(
            check(&report(&out), "signature")["data"]["signature"],
            sig,
            "{name}"
        );
    }

    let dir = std::env::temp_dir().join(format!("catchi-gram-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a2.json");
    std::fs::write(&path, r#"[[2, -1], ["-1", "2"]]"#).unwrap();
    let out = catchi(&[
        "lattice",
        "signature",
        "--gram",
        path.to_str().unwrap(),
        "--expect",
        "2,0,0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        check(&report(&out), "signature")["data"]["determinant"],
        "3"
    );

    let member = catchi(&[
        "lattice", "omega", "--named", "U2", "--re", "1,1,0,0", "--im", "0,0,1,1",
    ]);
    assert_eq!(member.status.code(), Some(0));
    let outside = catchi(&[
        "lattice", "omega", "--named", "U2", "--re", "1,1,0,0", "--im", "1,1,0,0",
    ]);
    assert_eq!(outside.status.code(), Some(1));
    let wrong_signature = catchi(&[
        "lattice", "omega", "--named", "K3", "--re", "1", "--im", "1",
    ]);
    assert_eq!(wrong_signature.status.code(), Some(2));
}

#[test]
fn e8_roots_two_ways() {
    let out = catchi(&["coxeter", "roots", "--type", "E8"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(check(&r, "reflection_closure")["data"]["count"], 240);
    assert_eq!(check(&r, "e8_norm2_enumeration")["data"]["count"], 240);
    let local = catchi(&["coxeter", "local", "--type", "A3", "--point", "1,1,0,0"]);
    let r = report(&local);
    assert_eq!(check(&r, "local_subsystem")["data"]["count"], 4);
}

#[test]
fn tables_through_the_cli() {
    let r = report(&catchi(&["singularities", "table2", "--max-sum", "22"]));
    assert_eq!(r["summary"]["failed"], 0);
    assert!(
        check(&r, "table2_regression")["data"]["instances"]
            .as_u64()
            .unwrap()
            > 100
    );
    let r = report(&catchi(&["singularities", "row", "3", "3", "4"]));
    let row = &check(&r, "table2_row")["data"];
    assert_eq!(row["d_prime"], serde_json::json!([2, 2, 3]));
    assert_eq!(row["single_entry"], true);
    let r = report(&catchi(&["singularities", "weights"]));
    assert_eq!(r["summary"]["passed"], 14);
    let r = report(&catchi(&["singularities", "weights", "--type", "u12"]));
    assert_eq!(r["checks"].as_array().unwrap().len(), 1);
    let r = report(&catchi(&["singularities", "eset", "4", "4", "4"]));
    let data = &check(&r, "alpha_sets")["data"];
    for p in data["projections"].as_array().unwrap() {
        assert_eq!(p["norm"], "-3/2");
        assert_eq!(p["two_plus_n"], "1/2");
    }
    for c in data["cross_products"].as_array().unwrap() {
        assert_eq!(c["inner"], "3/4");
    }
}

#[test]
fn tangent_estimates() {
    let r = report(&catchi(&[
        "tangent-estimate",
        "--space",
        "crushed",
        "--y1",
        "-1",
        "--y2",
        "3",
    ]));
    assert_eq!(r["summary"]["failed"], 0);
    let r = report(&catchi(&[
        "tangent-estimate",
        "--space",
        "euclidean",
        "--theta",
        "2",
    ]));
    let d = &check(&r, "tangent_estimate")["data"];
    assert!((d["estimate"]["estimate"].as_f64().unwrap() - 2.0 * 1f64.sin()).abs() < 1e-8);
}

#[test]
fn branched_plane_and_small_mesh() {
    let out = catchi(&[
        "branched-plane",
        "--sheets",
        "3",
        "--triangles",
        "20",
        "--probes",
        "4",
        "--per-probe",
        "5",
        "--samples",
        "16",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!(
        (check(&r, "center_at_branch_point")["data"]["b"]
            .as_f64()
            .unwrap()
            - 3.0)
            .abs()
            < 1e-12
    );

    let path = std::env::temp_dir().join(format!("catchi-mesh-{}.json", std::process::id()));
    let out = catchi(&[
        "cusp-mesh-demo",
        "--nx",
        "40",
        "--nphi",
        "64",
        "--no-germs",
        "--export",
        path.to_str().unwrap(),
        "--format",
        "md",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# catchi report"), "{text}");
    assert!(text.contains("| bigon |"));
    let export: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(export["vertices"].as_array().unwrap().len(), 41 * 64);
    assert!(export["edges"]
        .as_array()
        .unwrap()
        .iter()
        .all(|e| e["w"].as_f64().unwrap() > 0.0));
}

#[test]
fn out_flag_writes_the_report() {
    let path = std::env::temp_dir().join(format!("catchi-out-{}.json", std::process::id()));
    let out = catchi(&[
        "singularities",
        "dual-cycle",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(check(&r, "dual_cycle")["data"]["dual"], "(2, 3)");
    assert_eq!(r["config"]["command"]["subcommand"], "singularities");
}
