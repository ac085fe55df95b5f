use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn finfree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finfree")).args(args).output().expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = finfree(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stderr.is_empty());
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn err_code(args: &[&str]) -> (i32, Value) {
    let out = finfree(args);
    assert!(out.stdout.is_empty(), "{args:?} wrote to stdout on failure");
    let err: Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
    (out.status.code().unwrap(), err)
}

#[test]
fn documented_examples() {
    assert_eq!(ok_json(&["cumulants", r#"{"degree":2,"a":["1","0","-1/2"]}"#]), json!({"d": 2, "kappa": ["0", "1"]}));
    assert_eq!(
        ok_json(&["family", "poisson", "--lambda", "1/4", "--d", "4"]),
        json!({"degree": 4, "a": ["1", "1", "0", "0", "0"]})
    );
    let p = r#"{"degree":3,"a":["1","1/2","-3/2","2"]}"#;
    let zero = r#"{"degree":3,"a":["1","0","0","0"]}"#;
    let got = ok_json(&["convolve", p, zero]);
    assert_eq!(got, serde_json::from_str::<Value>(p).unwrap());
}

#[test]
fn fractional_power_and_roots() {
    let got = ok_json(&["power", "--roots", "0,0,0,1", "--t", "4/3", "--with-roots"]);
    assert_eq!(got["a"], json!(["1", "4/3", "1/6", "-1/54", "5/2592"]));
    let roots = got["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 4);
    assert!(roots.iter().any(|z| (z[0].as_f64().unwrap() - 1.17721).abs() < 1e-4));
}

#[test]
fn exact_outputs_round_trip() {
    let p = ok_json(&["convolve", "--roots", "1,-2,1/3", "--roots", "0,5/2,-1"]);
    let k = ok_json(&["cumulants", &p.to_string()]);
    assert_eq!(ok_json(&["coeffs", &k.to_string()]), p);
    let m = ok_json(&["moments", &p.to_string()]);
    assert_eq!(ok_json(&["coeffs", &m.to_string()]), p);
    assert_eq!(ok_json(&["cumulants", &m.to_string()]), k);
    assert_eq!(ok_json(&["moments", &k.to_string()]), m);
    let kr = ok_json(&["cumulants", "--rescaled", &p.to_string()]);
    assert_eq!(kr["variant"], "rescaled");
    assert_eq!(ok_json(&["cumulants", &kr.to_string()]), k);
}

#[test]
fn input_forms() {
    // (x - 1)(x - 2) = x^2 - 3x + 2, so a = (1, 3, 2)
    let signed = ok_json(&["cumulants", r#"{"degree":2,"a":["1","3","2"]}"#]);
    assert_eq!(ok_json(&["cumulants", "--roots", "1,2"]), signed);
    assert_eq!(ok_json(&["cumulants", "--plain", r#"{"degree":2,"a":["1","-3","2"]}"#]), signed);

    let dir = std::env::temp_dir().join(format!("finfree-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("p.json");
    std::fs::write(&file, r#"{"degree":2,"a":["1","3","2"]}"#).unwrap();
    assert_eq!(ok_json(&["cumulants", file.to_str().unwrap()]), signed);

    let mut child = Command::new(env!("CARGO_BIN_EXE_finfree"))
        .args(["cumulants", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(br#"{"degree":2,"a":["1","3","2"]}"#).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(serde_json::from_slice::<Value>(&out.stdout).unwrap(), signed);

    let cfg = dir.join("cfg.toml");
    std::fs::write(&cfg, "nmax = 3\n").unwrap();
    let (code, _) = err_code(&["--config", cfg.to_str().unwrap(), "cumulants", "--roots", "1,2,3,4"]);
    assert_eq!(code, 4);
    // flags win over the config file
    ok_json(&["--config", cfg.to_str().unwrap(), "--nmax", "4", "cumulants", "--roots", "1,2,3,4"]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    let (code, err) = err_code(&["nonsense"]);
    assert_eq!(code, 2);
    assert_eq!(err["error"]["kind"], "usage");
    assert_eq!(err_code(&["cumulants", r#"{"degree":2,"a":["1","0"]}"#]).0, 3);
    assert_eq!(err_code(&["cumulants", r#"{"degree":1,"a":["2","0"]}"#]).0, 3);
    assert_eq!(err_code(&["cumulants", "{not json"]).0, 3);
    assert_eq!(err_code(&["convolve", "--roots", "1,2", "--roots", "1,2,3"]).0, 3);
    assert_eq!(err_code(&["partitions", "--n", "13"]).0, 4);
    assert_eq!(err_code(&["--nmax", "99", "partitions", "--n", "3"]).0, 4);
    assert_eq!(err_code(&["power", "--roots", "1,2", "--t", "-1/2"]).0, 5);
    assert_eq!(err_code(&["check-id", r#"{"degree":2,"a":["1","0","1"]}"#]).0, 5);
    assert_eq!(err_code(&["verify-mc", "--roots", "0,1", "--roots", "0,1", "--samples", "10"]).0, 5);
    assert_eq!(err_code(&["converge", "--r", "0,1", "--n", "4", "--d", "3"]).0, 5);
}

#[test]
fn remaining_subcommands() {
    let r = ok_json(&["rtransform", "--roots", "-1,1"]);
    assert_eq!(r, json!({"var": "s", "coeffs": ["0", "2"]}));

    let h = ok_json(&["family", "hermite", "--d", "2"]);
    assert_eq!(h, json!({"degree": 2, "a": ["1", "0", "-1/2"]}));
    let clt = ok_json(&["family", "clt", "--roots", "-1,1", "--n", "4"]);
    assert_eq!(clt["exact"], true);

    let rep = ok_json(&["converge", "--r", "0,1,1", "--n", "4", "--d", "16,32,64"]);
    assert_eq!(rep["rows"].as_array().unwrap().len(), 3);

    let id = ok_json(&["check-id", &h.to_string()]);
    assert_eq!(id["verdict"], "infinitely_divisible");
    let id = ok_json(&["check-id", "--roots", "0,0,1"]);
    assert_eq!(id["verdict"], "not_infinitely_divisible");

    let t = ok_json(&["threshold", "--roots", "0,0,0,1", "--tmax", "1048576"]);
    assert!(t["threshold"].is_string());

    let c = ok_json(&["cramer", "--d", "4", "--eps", "1/32"]);
    assert_eq!(c["halved_convolution"], ok_json(&["family", "hermite", "--d", "4"]));

    let mc = ok_json(&["verify-mc", "--roots", "-1,1", "--roots", "-1,1", "--samples", "20000", "--seed", "7"]);
    assert_eq!(mc["all_pass"], true);
    assert_eq!(mc["exact"], json!({"degree": 2, "a": ["1", "0", "-2"]}));
    let again = ok_json(&["verify-mc", "--roots", "-1,1", "--roots", "-1,1", "--samples", "20000", "--seed", "7"]);
    assert_eq!(mc, again);

    let parts = ok_json(&["partitions", "--n", "4", "--list", "--noncrossing"]);
    assert_eq!(parts["bell"], 15);
    assert_eq!(parts["catalan"], 14);
    assert_eq!(parts["partitions"].as_array().unwrap().len(), 14);
    let sigma = ok_json(&["partitions", "--sigma", "{1,3|2,4}"]);
    assert_eq!(sigma["noncrossing"], false);
    assert!(sigma.get("q_sigma").is_none());
}
