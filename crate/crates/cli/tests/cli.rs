use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::Arc;

use bimono::clt::{convergence_report, Backend, ConvergenceReport, CovarianceSpec};
use bimono::fock::{moment, Grid, IntervalOp, OpKind};
use bimono::numbers::format_rational;
use bimono::partitions::{
    bimonotone_pair_partitions, count_bimonotone_pp, CountTable, OrderedTwoFacedPartition, Pattern,
};
use num_bigint::BigUint;
use serde_json::Value;

fn bimono(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bimono"))
        .args(args)
        .env_remove("BIMONO_WORKERS")
        .output()
        .expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = bimono(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn json_err(args: &[&str]) -> (i32, Value) {
    let out = bimono(args);
    assert!(!out.status.success(), "{args:?} should fail");
    let err: Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
    (out.status.code().unwrap(), err)
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

#[test]
fn count_examples() {
    assert_eq!(json_ok(&["count", "--n", "2"])["total"], "48");
    assert_eq!(json_ok(&["count", "--pattern", "llll"])["count"], "3");
    assert_eq!(json_ok(&["count", "--pattern", ""])["count"], "1");
    assert_eq!(json_ok(&["count", "--pattern", "lrl"])["count"], "0");
    assert_eq!(json_ok(&["count", "--n", "0"])["total"], "1");
}

#[test]
fn count_total_is_the_sum_over_patterns() {
    for n in 0..=2 {
        let total: BigUint = json_ok(&["count", "--n", &n.to_string()])["total"]
            .as_str()
            .unwrap()
            .parse()
            .unwrap();
        let sum: BigUint = Pattern::all(2 * n)
            .map(|p| {
                json_ok(&["count", "--pattern", &p.to_string()])["count"]
                    .as_str()
                    .unwrap()
                    .parse::<BigUint>()
                    .unwrap()
            })
            .sum();
        assert_eq!(total, sum, "n = {n}");
    }
}

#[test]
fn count_table_round_trips() {
    let v = json_ok(&["count", "--n", "3", "--table"]);
    let table: CountTable = serde_json::from_value(v["patterns"].clone()).unwrap();
    assert_eq!(table, CountTable::for_pairs(3));
    assert_eq!(table.entries.len(), 64);
    assert_eq!(v["total"], "928");
}

#[test]
fn count_csv_is_lexicographic() {
    let out = bimono(&["count", "--n", "2", "--table", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "pattern,count");
    let patterns: Vec<&str> = lines[1..]
        .iter()
        .filter_map(|l| l.split(',').next())
        .filter(|p| p.chars().all(|c| c == 'l' || c == 'r'))
        .collect();
    assert_eq!(patterns.len(), 16);
    assert!(patterns.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn enumerate_round_trips() {
    let v = json_ok(&["enumerate", "--pattern", "rrrlll"]);
    let listed: Vec<OrderedTwoFacedPartition> =
        serde_json::from_value(v["partitions"].clone()).unwrap();
    let pattern: Pattern = "rrrlll".parse().unwrap();
    assert_eq!(listed, bimonotone_pair_partitions(&pattern));
    assert_eq!(BigUint::from(listed.len()), count_bimonotone_pp(&pattern));
}

#[test]
fn moment_examples() {
    let v = json_ok(&["moment", "B[0,1]^4"]);
    assert_eq!(v["value"], "24");
    assert_eq!(v["decimal"], 24.0);
    assert_eq!(json_ok(&["moment", "B[0,1]^3"])["value"], "0");
    assert_eq!(json_ok(&["moment", "Bl[0,1] Br[0,1]"])["value"], "1");
    assert_eq!(json_ok(&["moment", "Bl[0,1]^4"])["value"], "3/2");
    assert_eq!(json_ok(&["moment", "L-[0,1] L+[0,1]"])["value"], "1");
}

#[test]
fn moment_on_a_finer_grid() {
    // variance of the field over [0, 1/2] is its length
    assert_eq!(json_ok(&["moment", "Bl[0,1/2] Bl[0,1/2]"])["value"], "1/2");
    assert_eq!(
        json_ok(&["moment", "Br[0,2] Br[1,2]", "--grid", "0,1,2"])["value"],
        "1"
    );
}

#[test]
fn moment_parse_errors_carry_positions() {
    let (code, err) = json_err(&["moment", "B[0,1] Q[0,1]"]);
    assert_eq!(code, 2);
    assert_eq!(err["error"], "parse");
    assert_eq!(err["position"], 7);
    let (_, err) = json_err(&["count", "--pattern", "lrx"]);
    assert_eq!(err["position"], 2);
}

#[test]
fn caps_are_enforced_and_overridable() {
    let (code, err) = json_err(&["count", "--n", "7"]);
    assert_eq!(code, 2);
    assert_eq!(err["error"], "cap_exceeded");
    assert!(err["message"].as_str().unwrap().contains("--cap-override"));
    let (_, err) = json_err(&["moment", "B[0,1]^14"]);
    assert_eq!(err["error"], "cap_exceeded");
    let value = json_ok(&["moment", "B[0,1]^14", "--cap-override"])["value"].clone();
    let word = vec![IntervalOp::new(OpKind::Field, 1, 1); 14];
    let direct = moment(&Arc::new(Grid::unit(1)), &word).unwrap();
    assert_eq!(value, format_rational(&direct));
    let (_, err) = json_err(&["clt", "--pattern", "lr", "--Ns", "65"]);
    assert_eq!(err["error"], "cap_exceeded");
}

#[test]
fn usage_errors_are_json() {
    let (code, err) = json_err(&["count", "--bogus"]);
    assert_eq!(code, 2);
    assert_eq!(err["error"], "usage");
}

#[test]
fn clt_examples() {
    let v = json_ok(&["clt", "--pattern", "lrrl", "--Ns", "4,8,16"]);
    let report: ConvergenceReport = serde_json::from_value(v).unwrap();
    assert_eq!(report.rows.len(), 3);
    let errors = report.errors();
    assert!(errors.windows(2).all(|w| w[1] < w[0]), "{errors:?}");
    let direct = convergence_report(
        &"lrrl".parse().unwrap(),
        &[4, 8, 16],
        &CovarianceSpec::ones(),
        Backend::Exact,
    )
    .unwrap();
    assert_eq!(report, direct);

    let report: ConvergenceReport =
        serde_json::from_value(json_ok(&["clt", "--pattern", "lr", "--Ns", "2,4"])).unwrap();
    assert!(report.errors().iter().all(|&e| e == 0.0));

    let v = json_ok(&["clt", "--pattern", "lll", "--Ns", "4"]);
    assert_eq!(v["limit"], "0");
}

#[test]
fn clt_csv_and_float_backend() {
    let out = bimono(&[
        "clt",
        "--pattern",
        "llrr",
        "--Ns",
        "4,8",
        "--backend",
        "float",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], ConvergenceReport::CSV_HEADER);
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("llrr,4,"));
}

#[test]
fn clt_with_covariance() {
    let v = json_ok(&["clt", "--pattern", "lr", "--Ns", "3", "--cov", "4,2,5"]);
    assert_eq!(v["limit"], "2");
    assert_eq!(v["rows"][0]["error"], "0");
}

#[test]
fn spectrum_examples() {
    let v = json_ok(&[
        "spectrum",
        "--nodes",
        "1",
        "--moments",
        "1,0",
        "--max-moment",
        "0",
    ]);
    assert_eq!(v["nodes"][0], 0.0);
    assert_eq!(v["weights"][0], 1.0);

    let v = json_ok(&["spectrum", "--field", "l", "--max-moment", "10"]);
    let nodes: Vec<f64> = serde_json::from_value(v["nodes"].clone()).unwrap();
    let weights: Vec<f64> = serde_json::from_value(v["weights"].clone()).unwrap();
    let k = nodes.len();
    for i in 0..k {
        assert!((nodes[i] + nodes[k - 1 - i]).abs() < 1e-12);
        assert!((weights[i] - weights[k - 1 - i]).abs() < 1e-12);
    }
    assert!(v["max_relative_error"].as_f64().unwrap() < 1e-9);

    let v = json_ok(&["spectrum", "--field", "b", "--max-moment", "10"]);
    assert!(v["max_relative_error"].as_f64().unwrap() < 1e-9);
}

#[test]
fn spectrum_shrinks_on_singular_hankel() {
    // a two-point measure supports only two nodes
    let out = bimono(&[
        "spectrum",
        "--nodes",
        "3",
        "--moments",
        "1,0,1,0,1,0",
        "--max-moment",
        "4",
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 2);
    assert!(!v["warnings"].as_array().unwrap().is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn product_moment_with_rep_files() {
    let (q, s) = (data("qubit.json"), data("skewed.json"));
    let v = json_ok(&[
        "product-moment",
        "--rep",
        &q,
        "--rep",
        &s,
        "2:a,1:br,1:br,2:a",
    ]);
    assert_eq!(v["value"], "1/4");
    let v = json_ok(&["product-moment", "--rep", &q, "--rep", &s, "1:bl,2:a,1:bl"]);
    assert_eq!(v["value"], "0");
    let v = json_ok(&[
        "product-moment",
        "--rep",
        &q,
        "--rep",
        &s,
        "2:a,1:br,1:br,2:a",
        "--backend",
        "float",
    ]);
    assert!((v["re"].as_f64().unwrap() - 0.25).abs() < 1e-12);
    assert_eq!(json_ok(&["product-moment", "--rep", &q, ""])["value"], "1");
}

#[test]
fn product_moment_errors() {
    let (code, err) = json_err(&["product-moment", "--rep", &data("bad.json"), "1:x"]);
    assert_eq!(code, 2);
    assert_eq!(err["error"], "parse");
    let (_, err) = json_err(&["product-moment", "--rep", &data("qubit.json"), "2:bl"]);
    assert_eq!(err["error"], "computation");
    let (_, err) = json_err(&["product-moment", "--rep", &data("missing.json"), "1:bl"]);
    assert_eq!(err["error"], "io");
}

#[test]
fn verify_passes() {
    let v = json_ok(&["verify", "--workers", "2"]);
    assert_eq!(v["passed"], true);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() >= 15);
    assert!(checks.iter().all(|c| c["passed"] == true));
}

#[test]
fn workers_env_is_accepted() {
    let out = Command::new(env!("CARGO_BIN_EXE_bimono"))
        .args(["count", "--n", "1"])
        .env("BIMONO_WORKERS", "1")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn irrational_covariance_is_refused_exactly() {
    let (code, err) = json_err(&["clt", "--pattern", "lr", "--Ns", "3", "--cov", "2,1/2,3"]);
    assert_eq!(code, 2);
    assert_eq!(err["error"], "computation");
}
