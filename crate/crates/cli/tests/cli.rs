use std::collections::HashMap;
use std::path::Path;
use std::process::{Command, Output};

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cswap-lab")).args(args).env_remove("CSWAP_LAB_WORKERS").output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = lab(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Rows as column-name maps.
fn table(text: &str) -> Vec<HashMap<String, String>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = r.headers().unwrap().iter().map(String::from).collect();
    r.records().map(|rec| header.iter().cloned().zip(rec.unwrap().iter().map(String::from)).collect()).collect()
}

fn f(row: &HashMap<String, String>, key: &str) -> f64 {
    row[key].parse().unwrap_or_else(|_| panic!("{key} = {:?}", row[key]))
}

#[test]
fn list_names_every_experiment() {
    let rows = table(&stdout(&["list"]));
    assert_eq!(rows.len(), 14);
    for id in ["mixed-bell", "bipartite-tables", "two-party-tables", "haar-comparison", "tmsv", "ecs-qudit"] {
        assert!(rows.iter().any(|r| r["id"] == id), "{id}");
    }
}

#[test]
fn schema_v1_layout() {
    let text = stdout(&["run", "--experiment", "bipartite-tables", "--grid", "delta=0:pi/8:2"]);
    assert!(!text.contains('\r'));
    let header = text.lines().next().unwrap();
    assert!(header.starts_with("experiment_id,schema_version,seed,delta,cut,"));
    assert!(header.ends_with(",oracle_p11,table_discrepancy"));
    let rows = table(&text);
    assert_eq!(rows.len(), 14);
    assert!(rows.iter().all(|r| r["schema_version"] == "1" && r["seed"] == "202406"));
    // cuts outside the table leave its columns empty
    let r = rows.iter().find(|r| r["cut"] == "1-234").unwrap();
    assert_eq!(r["table_p11"], "");
    let r = rows.iter().find(|r| r["cut"] == "13-24" && f(r, "delta") > 0.0).unwrap();
    assert_eq!(r["table_discrepancy"], "true");
    assert!((f(r, "p11") - f(r, "oracle_p11")).abs() < 1e-12);
    assert!(r["p00"].contains('e') && r["p00"].split('e').next().unwrap().len() == 18);
}

#[test]
fn unentangled_bell_family_has_no_odd_weight() {
    let rows = table(&stdout(&["run", "--experiment", "mixed-bell", "--grid", "c2=0:0:1", "--grid", "delta=0:pi/4:9"]));
    assert_eq!(rows.len(), 9);
    for r in rows {
        for k in ["p_odd", "p01", "p10", "p11"] {
            assert!(f(&r, k).abs() < 1e-12, "{k}");
        }
    }
}

#[test]
fn tmsv_rises_toward_one_half() {
    let rows = table(&stdout(&["run", "--experiment", "tmsv", "--grid", "r=0:6:7"]));
    let p: Vec<f64> = rows.iter().map(|r| f(r, "p11")).collect();
    assert!(p.windows(2).all(|w| w[1] >= w[0]));
    assert!((p[6] - 0.498).abs() < 1e-6);
    assert_eq!(rows[0]["d"], "250");
}

#[test]
fn ghz_sweep_matches_closed_form() {
    let rows = table(&stdout(&["sweep", "--family", "ghz", "--grid", "n=2:6:5"]));
    for r in rows {
        let n: i32 = r["n"].parse().unwrap();
        assert!((f(&r, "p_all_zero") - (0.5 + 0.5f64.powi(n))).abs() < 1e-12);
    }
}

#[test]
fn restating_the_default_grid_changes_nothing() {
    let a = stdout(&["run", "--experiment", "qudit-vs-qubit"]);
    let b = stdout(&["run", "--experiment", "qudit-vs-qubit", "--grid", "d=2:16:15"]);
    assert_eq!(a, b);
}

#[test]
fn shots_are_reproducible() {
    let args = ["sweep", "--family", "mixed-ghz", "--grid", "delta=0:pi/4:3", "--grid", "epsilon=0:0:1", "--shots", "10000"];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    let mut other = args.to_vec();
    other.extend(["--seed", "5"]);
    assert_ne!(a, stdout(&other));
    assert!(table(&a).iter().all(|r| r["n_shots"] == "10000" && !r["emp_p0"].is_empty()));
}

#[test]
fn worker_count_does_not_change_output() {
    let args = ["run", "--experiment", "haar-comparison", "--grid", "states=30:30:1", "--shots", "100"];
    let one = stdout(&[&args[..], &["--workers", "1"]].concat());
    let four = stdout(&[&args[..], &["--workers", "4"]].concat());
    assert_eq!(one, four);
    let env = Command::new(env!("CARGO_BIN_EXE_cswap-lab")).args(args).env("CSWAP_LAB_WORKERS", "3").output().unwrap();
    assert_eq!(String::from_utf8(env.stdout).unwrap(), one);
}

#[test]
fn many_shots_converge() {
    for exp in ["two-party-tables", "bipartite-tables"] {
        let rows = table(&stdout(&["sample", "--experiment", exp, "--shots", "1000000"]));
        for r in rows {
            assert!((f(&r, "emp_p0") - f(&r, "p00")).abs() < 5e-3);
            assert!((f(&r, "emp_p_odd") - f(&r, "p_odd")).abs() < 5e-3);
            assert!(f(&r, "emp_p_odd_lo") <= f(&r, "emp_p_odd") && f(&r, "emp_p_odd") <= f(&r, "emp_p_odd_hi"));
        }
    }
}

#[test]
fn bit_order_flips_the_labels() {
    let first = table(&stdout(&["run", "--experiment", "two-party-tables"]));
    let last = table(&stdout(&["run", "--experiment", "two-party-tables", "--bit-order", "GROUP_LAST"]));
    let pick = |rows: &[HashMap<String, String>]| rows.iter().find(|r| r["state"] == "chi4" && r["pair"] == "1-3").unwrap().clone();
    let (a, b) = (pick(&first), pick(&last));
    assert!((f(&a, "p01") - 0.25).abs() < 1e-12);
    assert!((f(&b, "p10") - 0.25).abs() < 1e-12);
    assert!(f(&b, "p01").abs() < 1e-12);
}

#[test]
fn validate_passes_and_names_corruption() {
    let out = lab(&["validate"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{text}");
    assert!(!text.contains("FAIL"));

    let dir = tempfile::tempdir().unwrap();
    for e in std::fs::read_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("golden")).unwrap() {
        let p = e.unwrap().path();
        std::fs::copy(&p, dir.path().join(p.file_name().unwrap())).unwrap();
    }
    let target = dir.path().join("tmsv.csv");
    let corrupted = std::fs::read_to_string(&target).unwrap().replacen("250", "251", 1).replacen(",2.", ",3.", 1);
    std::fs::write(&target, corrupted).unwrap();
    let out = lab(&["validate", "--golden", dir.path().to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(text.contains("FAIL golden/tmsv"), "{text}");
    assert_eq!(text.matches("FAIL").count(), 1);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["run"][..],
        &["run", "--experiment", "nope"],
        &["run", "--experiment", "tmsv", "--grid", "q=0:1:2"],
        &["run", "--experiment", "tmsv", "--grid", "d=1.5:2:2"],
        &["run", "--experiment", "tmsv", "--grid", "r"],
        &["sweep", "--family", "ghz", "--test", "pair:0"],
        &["sweep"],
        &["frobnicate"],
        &["run", "--experiment", "tmsv", "--workers", "0"],
    ] {
        assert_eq!(lab(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let args = ["run", "--experiment", "ecvs-vs-ecsplus", "--grid", "alpha=0:1:3"];
    let printed = stdout(&args);
    stdout(&[&args[..], &["--out", path.to_str().unwrap()]].concat());
    assert_eq!(std::fs::read_to_string(path).unwrap(), printed);
}
