use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn soddy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_soddy")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn help_exits_zero_everywhere() {
    for sub in ["cm-det", "volume", "residual", "solve", "identity-check", "verify-proof", "embed", "gasket"] {
        let out = soddy(&[sub, "--help"]);
        assert_eq!(out.status.code(), Some(0), "{sub}");
        assert!(String::from_utf8_lossy(&out.stdout).contains("Usage"), "{sub}");
    }
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = soddy(&["residual", "--bogus"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    assert_eq!(json(&out)["error"]["kind"], "usage");
}

#[test]
fn decimals_are_exact_in_exact_mode() {
    let out = soddy(&["residual", "--n", "2", "--curvatures", "0.1,0.1,0.1,0.1"]);
    assert_eq!(json(&out)["result"], serde_json::json!({"num": "2", "den": "25"}));
}

#[test]
fn float_mode_prints_numbers() {
    let out = soddy(&["solve", "--n", "3", "--curvatures", "1,1,1,1", "--mode", "float"]);
    let roots = json(&out)["result"]["roots"].clone();
    let hi = roots[0].as_f64().unwrap();
    assert!((hi - (2.0 + 6f64.sqrt())).abs() < 1e-12);
}

#[test]
fn irrational_root_needs_float_mode() {
    let out = soddy(&["solve", "--n", "2", "--curvatures", "1,1,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "float_mode_required");
}

#[test]
fn validation_errors_exit_one() {
    for args in [
        &["identity-check", "--n", "2", "--radii", "-1,-2,2,3"][..],
        &["identity-check", "--n", "2", "--radii", "0,1,1,1", "--lenient"],
        &["residual", "--n", "2", "--curvatures", "1,2,3"],
        &["gasket", "--seed", "1,1,0", "--depth", "2"],
        &["gasket", "--seed", "-1,2,2", "--depth", "13"],
        &["gasket", "--seed", "-1,2,2", "--depth", "2", "--mode", "exact"],
        &["verify-proof", "--n", "2", "--random", "3", "--mode", "float"],
    ] {
        let out = soddy(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert_eq!(json(&out)["ok"], false);
    }
}

#[test]
fn request_file_from_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_soddy"))
        .args(["cm-det", "--request", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"mode": "exact", "matrix": [[0, 9, "16"], [9, 0, 25], [{"num": "16", "den": "1"}, 25, 0]]}"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(json(&out)["result"], serde_json::json!({"num": "-576", "den": "1"}));
}

#[test]
fn embed_reproduces_tangency_distances() {
    let out = soddy(&["embed", "--n", "3", "--radii", "-1,1/2,1/2,1/3,1/3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    let radii: Vec<f64> = v["result"]["radii"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    let centers: Vec<Vec<f64>> = serde_json::from_value(v["result"]["centers"].clone()).unwrap();
    let scale = radii.iter().map(|r| r.abs()).fold(0.0, f64::max).powi(2) * 4.0;
    for i in 0..radii.len() {
        for j in 0..radii.len() {
            if i == j {
                continue;
            }
            let d2: f64 = centers[i].iter().zip(&centers[j]).map(|(a, b)| (a - b).powi(2)).sum();
            assert!((d2 - (radii[i] + radii[j]).powi(2)).abs() <= 1e-9 * scale);
        }
    }
}

#[test]
fn gasket_writes_svg_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("g.svg");
    let js = dir.path().join("g.json");
    let out = soddy(&[
        "gasket",
        "--seed",
        "-2,3,6",
        "--depth",
        "3",
        "--svg",
        svg.to_str().unwrap(),
        "--json",
        js.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let summary = json(&out);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&js).unwrap()).unwrap();
    let circles = written["circles"].as_array().unwrap();
    assert_eq!(summary["result"]["circles"].as_u64().unwrap() as usize, circles.len());
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<circle ").count(), circles.len());

    let inline = soddy(&["gasket", "--seed", "-2,3,6", "--depth", "3", "--json", "-"]);
    assert_eq!(json(&inline)["result"]["gasket"], written);
}

#[test]
fn proof_text_format() {
    let out = soddy(&["verify-proof", "--n", "1", "--radii", "1,2,3", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().all(|l| l.starts_with("PASS\tn=1\t")));
    assert!(text.starts_with("PASS\tn=1\tdet(S)=(-1)^(n+1)*2^(2n+3)*n\t32\t32\n"));
}
