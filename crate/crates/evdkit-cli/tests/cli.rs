//! End-to-end checks of the `evdkit` binary: JSON report shape, text
//! output, and the exit-code contract.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evdkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn quantile_json_report_shape_and_value() {
    let out = run(&[
        "quantile", "--family", "gev", "--params", "0,1,0.1", "--p", "0.999", "--format", "json",
    ]);
    let v = json_of(&out);
    assert_eq!(v["command"], "quantile");
    assert!(v["inputs"].is_object());
    assert!(v["warnings"].is_array());
    let q = v["results"]["quantiles"][0]["quantile"].as_f64().unwrap();
    assert!((q - 9.95).abs() < 0.01, "{q}");
}

#[test]
fn fit_json_has_estimates_and_return_level() {
    let out = run(&["fit", "--family", "ev", "--format", "json"]);
    let v = json_of(&out);
    assert_eq!(v["command"], "fit");
    // default embedded adjustment is announced as a warning
    assert!(v["warnings"][0].as_str().unwrap().contains("monthly medians"));
    let r = &v["results"];
    assert_eq!(r["params"].as_array().unwrap().len(), 2);
    let level = r["return_level_999"].as_f64().unwrap();
    assert!((level - 77.23).abs() < 2.0, "{level}");
    assert!(r["params"][0]["std_error"].as_f64().unwrap() > 0.0);
}

#[test]
fn gof_rows_are_sorted_by_aic() {
    let out = run(&[
        "gof", "--family", "ev", "--family", "gev", "--family", "tcev", "--format", "json",
    ]);
    let v = json_of(&out);
    let rows = v["results"]["rows"].as_array().unwrap();
    // ev, gev, gev_pwm, tcev
    assert_eq!(rows.len(), 4);
    let aics: Vec<f64> = rows.iter().map(|r| r["aic"].as_f64().unwrap()).collect();
    assert!(aics.windows(2).all(|w| w[0] <= w[1]), "{aics:?}");
}

#[test]
fn tail_text_output_names_the_constants() {
    let out = run(&["tail", "--family", "egu", "--params", "0,1,0.5"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("type II"), "{text}");
    assert!(text.contains("k4 = 0.5"), "{text}");
}

#[test]
fn exit_codes_follow_the_contract() {
    // 2: configuration error
    let out = run(&["fit", "--family", "nonesuch"]);
    assert_eq!(out.status.code(), Some(2));
    // 3: data error
    let out = run(&["fit", "--family", "ev", "--data", "/nonexistent.csv"]);
    assert_eq!(out.status.code(), Some(3));
    // 2: invalid probability
    let out = run(&["quantile", "--family", "ev", "--params", "0,1", "--p", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
    // 2: pwm on a non-GEV family
    let out = run(&["fit", "--family", "ev", "--method", "pwm"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn simulate_is_byte_identical_across_runs() {
    let dir1 = std::env::temp_dir().join("evdkit_cli_sim1");
    let dir2 = std::env::temp_dir().join("evdkit_cli_sim2");
    for (dir, _) in [(&dir1, 0), (&dir2, 1)] {
        let out = run(&[
            "simulate",
            "--preset", "table3",
            "--replicates", "10",
            "--sample-size", "50",
            "--seed", "3",
            "--out", dir.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    for name in ["study_long.csv", "study_summary.json"] {
        let a = std::fs::read(dir1.join(name)).unwrap();
        let b = std::fs::read(dir2.join(name)).unwrap();
        assert_eq!(a, b, "{name} differs");
    }
}
