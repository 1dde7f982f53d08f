use std::process::{Command, Output};

use freeboundary::cli::{dump_distribution, run, Alphabet, ParamValue, ParamsArg, RunOptions, IDENTITIES};
use freeboundary::series::frac;

fn fbcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fbcheck")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn run_passes_with_zero_residual() {
    let out = fbcheck(&["run", "qt-symmetry", "--n", "1", "--alphabet", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["residual"], 0);
    assert_eq!(v["caps"]["qt"], 6);
    assert_eq!(v["params"]["params"], "formal,formal,formal,formal,formal,formal");
}

#[test]
fn mehler_with_cap() {
    let out = fbcheck(&["run", "mehler", "--qt-cap", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["identity"], "mehler");
}

#[test]
fn usage_errors_exit_two() {
    let out = fbcheck(&["run", "unknown-name"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    for name in IDENTITIES {
        assert!(err.contains(name), "{name} missing from {err}");
    }
    assert_eq!(fbcheck(&["run", "qt-symmetry", "--qt-cap", "1000"]).status.code(), Some(2));
    assert_eq!(fbcheck(&["run", "qt-symmetry", "--params", "1/2,0,0,0,formal,formal"]).status.code(), Some(2));
    assert_eq!(fbcheck(&["run", "invert-pair", "--alphabet", "1"]).status.code(), Some(2));
    assert_eq!(fbcheck(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn non_stochastic_sample_is_rejected() {
    let out = fbcheck(&["sample", "--params", "1/2,1/4,1/3,-1/5,1/2,1/3", "--count", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ab = 1/8"));
}

#[test]
fn dump_zn_one_letter() {
    let out = fbcheck(&["dump", "zn", "--n", "1", "--alphabet", "1", "--qt-cap", "2", "--param-cap", "1", "--x-cap", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let vars: Vec<String> = serde_json::from_value(v["series"]["variables"].clone()).unwrap();
    let terms = v["series"]["terms"].as_array().unwrap();
    assert!(terms[0][0].as_array().unwrap().iter().all(|e| e == 0));
    assert!(vars.contains(&"x1".to_string()));
    assert_eq!(terms.len(), 15);
}

#[test]
fn dump_empty_alphabet_is_constant() {
    let v = json(&fbcheck(&["dump", "zn", "--alphabet", "0", "--n", "0"]));
    assert_eq!(v["series"]["terms"].as_array().unwrap().len(), 1);
    assert_eq!(v["series"]["terms"][0][1], "1");
}

#[test]
fn dump_distribution_one_pair() {
    let out = fbcheck(&[
        "dump", "distribution", "--alphabet", "1/2", "--params", "1/2,-1/4,1/3,-1/5,1/2,1/3", "--n-max", "1", "--l", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let d = v["distribution"].as_object().unwrap();
    let keys: Vec<&String> = d.keys().collect();
    assert_eq!(keys, ["0/0", "0/1", "1/0", "1/1"]);
    assert_eq!(d["0/0"], "4/7");
    assert_eq!(d["1/1"], "1/70");
}

#[test]
fn dump_io_error_is_reported() {
    let out = fbcheck(&["dump", "zn", "--alphabet", "0", "--n", "0", "--out", "/nonexistent/dir/z.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("No such file"));
}

#[test]
fn sample_is_bit_identical() {
    let a = fbcheck(&["sample", "--seed", "11", "--count", "50"]);
    let b = fbcheck(&["sample", "--seed", "11", "--count", "50"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 51);
    for l in &lines[..50] {
        let f: Vec<&str> = l.split(' ').collect();
        assert_eq!(f.len(), 3);
        assert_eq!(f[0].len(), 3);
        assert!(f[1].parse::<u32>().is_ok() && f[2].parse::<u32>().is_ok());
    }
    assert!(lines[50].starts_with("# "));
    let c = fbcheck(&["sample", "--seed", "12", "--count", "50"]);
    assert_ne!(text.as_bytes(), &c.stdout[..]);
}

#[test]
fn params_parse() {
    let p: ParamsArg = "1/2,formal,0,-1/3,formal,formal".parse().unwrap();
    assert_eq!(p.0[0], ParamValue::Exact(frac(1, 2)));
    assert_eq!(p.0[1], ParamValue::Formal);
    assert!(p.symbolic().is_err());
    let p: ParamsArg = "formal,formal,0,0,formal,formal".parse().unwrap();
    assert_eq!(p.symbolic().unwrap(), [true, true, false, false]);
    assert!("1,2,3".parse::<ParamsArg>().is_err());
    assert!("x,0,0,0,0,0".parse::<ParamsArg>().is_err());
    assert_eq!("3".parse::<Alphabet>().unwrap(), Alphabet::Count(3));
    assert_eq!("1/2,1/3".parse::<Alphabet>().unwrap(), Alphabet::Values(vec![frac(1, 2), frac(1, 3)]));
}

#[test]
fn registry_small_runs() {
    let small = RunOptions { qt_cap: Some(2), x_cap: Some(2), param_cap: Some(2), ..Default::default() };
    for name in ["qt-symmetry", "abcd-symmetry", "absorb-params", "partition-function", "koornwinder-constant"] {
        let rep = run(name, &small).unwrap();
        assert!(rep.passed(), "{name}: {}", rep.to_json());
        assert_eq!(rep.identity, name);
    }
    let rep = run("hl-6vm-matching", &RunOptions { alphabet: Some(Alphabet::Count(1)), ..small.clone() }).unwrap();
    assert!(rep.passed(), "{}", rep.to_json());
}

#[test]
fn formal_distribution_dump() {
    let opts = RunOptions {
        alphabet: Some(Alphabet::Count(1)),
        params: Some("0,0,0,0,formal,formal".parse().unwrap()),
        qt_cap: Some(2),
        n_max: Some(1),
        ..Default::default()
    };
    let v = dump_distribution(&opts).unwrap();
    assert_eq!(v["mode"], "formal");
    assert_eq!(v["distribution"].as_object().unwrap().len(), 3);
}
