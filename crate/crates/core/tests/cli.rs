use assert_cmd::Command;
use serde_json::Value;

const RATIONAL_4F3: [&str; 6] = [
    "--upper=-4*eps,-1/2-eps,-3/2-2*eps,1/2-3*eps",
    "--lower=-1/2+2*eps,-1/2+4*eps,1/2+6*eps",
    "--z=1/2",
    "--order=10",
    "--trunc=60",
    "--backend=exact",
];

fn epsexp() -> Command {
    Command::cargo_bin("epsexp").unwrap()
}

fn stdout_of(args: &[&str]) -> String {
    let out = epsexp().args(args).assert().success().get_output().stdout.clone();
    String::from_utf8(out).unwrap()
}

#[test]
fn rational_4f3_text() {
    let text = stdout_of(&RATIONAL_4F3);
    let rows: Vec<&str> = text.lines().filter(|l| l.starts_with("eps^")).collect();
    assert_eq!(rows.len(), 11);
    assert_eq!(rows[0], "eps^0   1");
    assert_eq!(rows[1], "eps^1   -4.27968776167886");
    assert_eq!(rows[10], "eps^10  -35635855655.1898");
}

#[test]
fn all_singular_text() {
    let text = stdout_of(&[
        "--upper",
        "eps,-eps,-3*eps,-5*eps,-7*eps",
        "--lower",
        "2*eps,4*eps,6*eps,8*eps",
        "--z",
        "1/2",
        "--order",
        "10",
        "--trunc",
        "100",
    ]);
    let rows: Vec<&str> = text.lines().filter(|l| l.starts_with("eps^")).collect();
    assert_eq!(rows.len(), 15);
    for (row, order) in rows.iter().zip(-4..0) {
        assert_eq!(*row, format!("{:<8}0", format!("eps^{order}")));
    }
    assert_eq!(rows[5], "eps^1   0.189532432184360");
    assert!(text.contains("coincident singular thresholds"));
}

#[test]
fn malformed_parameter_is_an_input_error() {
    let assert = epsexp()
        .args(["--upper", "2eps+", "--lower", "1", "--z", "1/2"])
        .assert()
        .code(1);
    let stderr = String::from_utf8(assert.get_output().stderr.clone()).unwrap();
    assert!(stderr.contains("2eps+"), "{stderr}");
}

#[test]
fn divergence_is_a_numerical_error() {
    epsexp()
        .args(["--upper", "eps,1", "--lower", "1+eps", "--z", "1", "--trunc", "20"])
        .assert()
        .code(2);
    epsexp()
        .args(["--upper", "eps,1", "--lower", "1+eps", "--z", "1/2", "--trunc", "auto", "--tol", "1e-60", "--m-cap", "32"])
        .assert()
        .code(2);
}

#[test]
fn json_schema_and_round_trip() {
    let mut args = RATIONAL_4F3.to_vec();
    args.push("--format=json");
    let text = stdout_of(&args);
    let doc: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&doc).unwrap() + "\n", text);
    let keys: Vec<&String> = doc.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["min_order", "coefficients", "meta"]);
    assert_eq!(doc["min_order"], 0);
    let first = &doc["coefficients"][1];
    assert_eq!(first["order"], 1);
    assert_eq!(first["decimal"], "-4.27968776167886");
    assert!(first["exact"].as_str().unwrap().contains('/'));
    assert!(first["imag_decimal"].is_null());
    let meta = &doc["meta"];
    assert_eq!(meta["M_used"], 60);
    assert_eq!(meta["backend"], "exact");
    assert_eq!((meta["p"].clone(), meta["q"].clone()), (Value::from(4), Value::from(3)));
}

#[test]
fn exact_decimal_is_the_rounded_fraction() {
    let mut args = RATIONAL_4F3.to_vec();
    args.extend(["--format=json", "--digits=40"]);
    let doc: Value = serde_json::from_str(&stdout_of(&args)).unwrap();
    for c in doc["coefficients"].as_array().unwrap() {
        let (num, den) = c["exact"].as_str().unwrap().split_once('/').unwrap();
        let q = rug::Rational::from((rug::Integer::from_str_radix(num, 10).unwrap(), rug::Integer::from_str_radix(den, 10).unwrap()));
        assert_eq!(c["decimal"], epsexp::numerics::render_rational(&q, 40));
    }
}

#[test]
fn csv_output() {
    let mut args = RATIONAL_4F3.to_vec();
    args.push("--format=csv");
    let text = stdout_of(&args);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("order,decimal"));
    assert_eq!(lines.next(), Some("0,1.00000000000000"));
    assert_eq!(text.lines().count(), 12);
}

#[test]
fn irrational_parameters_need_float() {
    let args = [
        "--upper=-4*eps,-1/2-eps,-pi/2-2*eps,1/3-3*eps",
        "--lower=-pi+2*eps,-1/4+4*eps,1/2+6*eps",
        "--z=1/2",
        "--order=2",
        "--trunc=200",
    ];
    epsexp().args(args).arg("--backend=exact").assert().code(1);
    let text = stdout_of(&[&args[..], &["--backend=float"]].concat());
    assert!(text.contains("eps^1   -1.44555526747928"), "{text}");
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    std::fs::write(
        &path,
        r#"{"upper": ["eps", "2*eps"], "lower": ["1+eps"], "z": "1/2", "order": 1, "trunc": "20"}"#,
    )
    .unwrap();
    let text = stdout_of(&["--config", path.to_str().unwrap()]);
    assert!(text.starts_with("eps^0   1\neps^1   0\n"), "{text}");
    let text = stdout_of(&["--config", path.to_str().unwrap(), "--order", "0"]);
    assert!(text.starts_with("eps^0   1\n#"), "{text}");
    std::fs::write(&path, r#"{"bogus": 1}"#).unwrap();
    epsexp().args(["--config", path.to_str().unwrap()]).assert().code(1);
}

#[test]
fn appell_with_oracle_check() {
    let text = stdout_of(&[
        "--kind", "appell4", "--upper", "1,1+eps", "--lower", "1+eps,1+eps", "--x1", "1/10", "--x2", "1/5",
        "--order", "2", "--trunc", "40", "--oracle-check",
    ]);
    assert!(text.contains("# oracle check"));
    let ratio: f64 = text
        .lines()
        .find(|l| l.starts_with("laurent remainder"))
        .and_then(|l| l.rsplit(' ').next())
        .unwrap()
        .parse()
        .unwrap();
    assert!(ratio >= 1.9, "{ratio}");
    epsexp()
        .args(["--kind", "appell4", "--upper", "1,1+eps", "--lower", "1+eps", "--x1", "1/10", "--x2", "1/5"])
        .assert()
        .code(1);
    epsexp()
        .args(["--kind", "appell4", "--upper", "1,1+eps", "--lower", "1+eps,1+eps", "--x1", "1/2", "--x2", "1/2", "--trunc", "10"])
        .assert()
        .code(2);
    epsexp()
        .args(["--kind", "appell4", "--upper", "1,1+eps", "--lower", "1+eps,1+eps", "--x1", "1/2", "--x2", "1/2", "--trunc", "10", "--formal"])
        .assert()
        .success();
}

#[test]
fn complex_argument() {
    let text = stdout_of(&[
        "--backend", "complex", "--upper", "eps,eps", "--lower", "1", "--z", "1/2*i", "--order", "2", "--trunc", "80",
        "--format", "csv",
    ]);
    let mut lines = text.lines().skip(1);
    assert_eq!(lines.next(), Some("0,1.00000000000000,0.00000000000000"));
}

#[test]
fn help_exits_cleanly() {
    epsexp().arg("--help").assert().success();
    epsexp().arg("--no-such-flag").assert().code(1);
}
