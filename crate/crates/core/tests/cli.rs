use std::process::{Command, Output};

use fracpoly::poly_families::{family_numbers, FamilyKind, FamilyParams};
use fracpoly::Scalar;

fn fracpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracpoly"))
        .args(args)
        .env_remove("FRACPOLY_PRECISION")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = fracpoly(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn column(text: &str, col: usize) -> Vec<String> {
    text.lines()
        .skip(1)
        .map(|l| l.split_whitespace().nth(col).unwrap_or("").to_string())
        .collect()
}

#[test]
fn numbers_tables() {
    let b = stdout(&["numbers", "--family", "bernoulli", "--alpha", "1", "--lambda", "1", "--max", "4"]);
    assert_eq!(column(&b, 1), ["1", "-1/2", "1/6", "0", "-1/30"]);
    let g = stdout(&["numbers", "--family", "genocchi", "--alpha", "1", "--lambda", "1", "--max", "2"]);
    assert_eq!(column(&g, 1), ["0", "1", "-1"]);
    let e = stdout(&["numbers", "--family", "euler", "--alpha", "2", "--lambda", "1", "--max", "0"]);
    assert_eq!(column(&e, 1), ["1"]);
}

#[test]
fn csv_output_is_rfc4180() {
    let out = stdout(&["numbers", "--max", "2", "--format", "csv"]);
    assert_eq!(out, "index,value\n0,1\n1,-1/2\n2,1/6\n");
}

fn json_values(out: &str) -> Vec<Scalar> {
    let v: serde_json::Value = serde_json::from_str(out).unwrap();
    v.as_array()
        .unwrap()
        .iter()
        .map(|row| Scalar::parse(row["value"].as_str().unwrap()).unwrap())
        .collect()
}

#[test]
fn json_round_trips_exact_tables() {
    let out = stdout(&["numbers", "--family", "euler", "--lambda", "1/2", "--alpha", "2", "--max", "12", "--format", "json"]);
    let p = FamilyParams::typed(FamilyKind::Euler, Scalar::from_int(2), Scalar::ratio(1, 2)).unwrap();
    assert_eq!(json_values(&out), family_numbers(&p, 12, 128).unwrap());
}

#[test]
fn json_round_trips_float_tables_at_printed_precision() {
    let out = stdout(&["numbers", "--family", "genocchi", "--alpha", "0.5", "--lambda", "2", "--max", "10", "--format", "json"]);
    let p = FamilyParams::typed(FamilyKind::Genocchi, Scalar::ratio(1, 2), Scalar::from_int(2)).unwrap();
    let want = family_numbers(&p, 10, 128).unwrap();
    for (got, want) in json_values(&out).iter().zip(&want) {
        assert_eq!(got.to_float(128), want.to_float(128));
    }
}

#[test]
fn fracderiv_examples() {
    let out = stdout(&["fracderiv", "--family", "bernoulli", "--lambda", "2", "--degree", "2", "--order", "0.5", "--at", "1.0"]);
    let rows: Vec<Vec<&str>> = out.lines().map(|l| l.split_whitespace().collect()).collect();
    let value = rows.iter().find(|r| r[0] == "value").unwrap()[1].parse::<f64>().unwrap();
    let oracle = rows.iter().find(|r| r[0] == "quadrature").unwrap()[1].parse::<f64>().unwrap();
    assert!((value - oracle).abs() <= 1e-10 * oracle.abs().max(1.0));

    let out = stdout(&["fracderiv", "--degree", "1", "--order", "1", "--lambda", "1", "--at", "1.0"]);
    assert!(out.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["value", "1"]));

    let out = fracpoly(&["fracderiv", "--degree", "0", "--order", "0.5"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "term  coefficient  exponent");
    assert!(String::from_utf8(out.stderr).unwrap().contains("below n"));
}

#[test]
fn mleval_examples() {
    let e = stdout(&["mleval", "--alpha", "1", "--beta", "1", "--z", "1"]);
    assert!(column(&e, 1)[0].starts_with("2.718281828"));
    let both = stdout(&["mleval", "--alpha", "1", "--beta", "2", "--z", "1", "--closed-form"]);
    let vals = column(&both, 1);
    assert_eq!(vals.len(), 2);
    assert!(vals.iter().all(|v| v.starts_with("1.718281828")));
    assert_eq!(column(&stdout(&["mleval", "--alpha", "2", "--beta", "1", "--z", "0"]), 1), ["1"]);
}

#[test]
fn poly_eval_and_fracint() {
    let out = stdout(&["poly", "--family", "bernoulli", "--degree", "2"]);
    assert_eq!(column(&out, 1), ["1/6", "-1", "1"]);
    let out = stdout(&["eval", "--family", "euler", "--degree", "3", "--at", "1/2"]);
    assert_eq!(column(&out, 1), ["0", "0"]);
    let out = stdout(&["fracint", "--degree", "1", "--order", "1", "--at", "2"]);
    // I^1 (t - 1/2) = t^2 / 2 - t / 2, which is 1 at t = 2
    assert!(out.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["value", "1"]));
}

#[test]
fn verify_examples_and_exit_codes() {
    let out = stdout(&["verify", "appell", "--alpha", "2", "--lambda", "3", "--max-degree", "12"]);
    assert!(out.starts_with("pass"));
    assert!(out.contains("max_abs_err=0.000e0"));
    let out = stdout(&["verify", "caputo-apostol", "--lambda", "2", "--order", "0.5", "--max-degree", "8"]);
    assert!(out.starts_with("pass"));
    let out = stdout(&["verify", "unit-integral-literal"]);
    assert!(out.starts_with("known-discrepancy"));

    let fail = fracpoly(&["verify", "caputo-apostol", "--tolerance", "1e-45"]);
    assert_eq!(fail.status.code(), Some(1));
    assert!(String::from_utf8(fail.stdout).unwrap().starts_with("fail"));

    let unknown = fracpoly(&["verify", "nonsense"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(String::from_utf8(unknown.stderr).unwrap().contains("classical"));
}

#[test]
fn verify_all_passes_by_default() {
    let out = fracpoly(&["verify", "all", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let reports: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(reports.as_array().unwrap().len(), 15);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["numbers", "--family", "bessel"][..],
        &["numbers", "--lambda", "-1"],
        &["numbers", "--precision", "32"],
        &["fracderiv", "--degree", "3", "--order", "0"],
        &["mleval", "--alpha", "1", "--z", "60"],
        &["mleval", "--alpha", "2", "--beta", "2", "--z", "1", "--closed-form"],
        &["fracderiv", "--degree", "2", "--at", "-1"],
        &["numbers", "--format", "xml"],
    ] {
        assert_eq!(fracpoly(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    for format in ["text", "csv", "json"] {
        let args = ["verify", "all", "--format", format];
        let a = fracpoly(&args).stdout;
        let b = fracpoly(&args).stdout;
        assert_eq!(a, b, "{format}");
        let args = ["numbers", "--alpha", "1.5", "--lambda", "3", "--max", "8", "--format", format];
        assert_eq!(stdout(&args), stdout(&args));
    }
}

#[test]
fn precision_comes_from_the_environment() {
    let run = |env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_fracpoly"));
        c.args(["numbers", "--alpha", "0.5", "--max", "3"]);
        match env {
            Some(v) => c.env("FRACPOLY_PRECISION", v),
            None => c.env_remove("FRACPOLY_PRECISION"),
        };
        String::from_utf8(c.output().unwrap().stdout).unwrap()
    };
    let low = run(Some("64"));
    let default = run(None);
    assert_ne!(low, default);
    assert!(column(&low, 1)[3].len() < column(&default, 1)[3].len());
}
