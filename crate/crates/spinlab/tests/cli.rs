//! End-to-end behaviour of the command-line driver: configuration
//! layering, report formats, the output file, and the dump subcommands.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_spinlab"))
}

fn stdout_of(output: std::process::Output) -> String {
    assert!(output.status.success(), "exit {:?}: {}", output.status, String::from_utf8_lossy(&output.stderr));
    String::from_utf8(output.stdout).expect("utf-8 output")
}

#[test]
fn config_file_sets_defaults_and_flags_override() {
    let dir = std::env::temp_dir().join("spinlab-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let config = dir.join("verify.toml");
    std::fs::write(&config, "jmax = 1\nsamples = 6\nseed = 17\nsuites = [\"irreps\"]\n").unwrap();

    let from_file = stdout_of(
        bin().args(["verify", "--config"]).arg(&config).output().unwrap(),
    );
    assert!(from_file.contains("\"seed\": 17"), "config file seed should be echoed");
    assert!(from_file.contains("\"jmax\": 1"));

    let overridden = stdout_of(
        bin()
            .args(["verify", "--config"])
            .arg(&config)
            .args(["--seed", "23", "--jmax", "0"])
            .output()
            .unwrap(),
    );
    assert!(overridden.contains("\"seed\": 23"), "flag must beat the config file");
    assert!(overridden.contains("\"jmax\": 0"));
}

#[test]
fn environment_seed_beats_the_file_but_not_the_flag() {
    let dir = std::env::temp_dir().join("spinlab-cli-env-test");
    std::fs::create_dir_all(&dir).unwrap();
    let config = dir.join("verify.toml");
    std::fs::write(&config, "jmax = 0\nsamples = 4\nseed = 17\nsuites = [\"irreps\"]\n").unwrap();

    let env_only = stdout_of(
        bin()
            .args(["verify", "--config"])
            .arg(&config)
            .env("SPINLAB_SEED", "400")
            .output()
            .unwrap(),
    );
    assert!(env_only.contains("\"seed\": 400"));

    let flag_beats_env = stdout_of(
        bin()
            .args(["verify", "--config"])
            .arg(&config)
            .args(["--seed", "5"])
            .env("SPINLAB_SEED", "400")
            .output()
            .unwrap(),
    );
    assert!(flag_beats_env.contains("\"seed\": 5"));

    let bad_env = bin()
        .args(["verify", "--jmax", "0", "--suite", "irreps"])
        .env("SPINLAB_SEED", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(bad_env.status.code(), Some(2));
}

#[test]
fn all_three_report_formats_render() {
    let base = ["verify", "--jmax", "0", "--samples", "4", "--suite", "irreps"];
    let json = stdout_of(bin().args(base).args(["--format", "json"]).output().unwrap());
    let parsed: serde_json::Value = serde_json::from_str(&json).expect("valid JSON");
    let reports = parsed.as_array().expect("array of reports");
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["suite"], "irreps");
    assert!(reports[0]["config_echo"]["samples"].as_u64() == Some(4));
    assert!(!reports[0]["provenance"].as_str().unwrap().is_empty());

    let csv = stdout_of(bin().args(base).args(["--format", "csv"]).output().unwrap());
    assert!(csv.starts_with("suite,name,twoS,k,l,residual,tolerance,passed\n"));
    assert!(csv.lines().count() > 3);

    let markdown =
        stdout_of(bin().args(base).args(["--format", "markdown"]).output().unwrap());
    assert!(markdown.starts_with("# Verification report"));
    assert!(markdown.contains("irreps"));
}

#[test]
fn report_lands_in_the_output_file_when_requested() {
    let dir = std::env::temp_dir().join("spinlab-cli-out-test");
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("report.json");
    let output = bin()
        .args(["verify", "--jmax", "0", "--samples", "4", "--suite", "irreps", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    assert!(output.stdout.is_empty(), "report must go to the file, not stdout");
    let written = std::fs::read_to_string(&out).unwrap();
    serde_json::from_str::<serde_json::Value>(&written).expect("file holds valid JSON");
}

#[test]
fn suite_filter_restricts_and_orders_reports() {
    let json = stdout_of(
        bin()
            .args([
                "verify", "--jmax", "0", "--samples", "4", "--suite", "irreps", "--suite",
                "clifford", "--format", "json",
            ])
            .output()
            .unwrap(),
    );
    let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
    let suites: Vec<&str> =
        parsed.as_array().unwrap().iter().map(|r| r["suite"].as_str().unwrap()).collect();
    assert_eq!(suites, ["clifford", "irreps"], "reports merge in suite-name order");
}

#[test]
fn solve_h3_rejects_bad_killing_numbers_and_accepts_both_signs() {
    let bad = bin().args(["solve-h3", "--j", "1", "--mu", "1/2"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2), "real killing numbers are not admissible here");

    let minus = stdout_of(
        bin().args(["solve-h3", "--j", "0", "--mu", "-i/2", "--format", "json"]).output().unwrap(),
    );
    let parsed: serde_json::Value = serde_json::from_str(&minus).unwrap();
    assert_eq!(parsed["variable"], "zbar");
    assert_eq!(parsed["xHalfPowers"], serde_json::json!([1, -1]));
}

#[test]
fn dump_subcommands_emit_valid_json() {
    let reps = stdout_of(
        bin().args(["reps", "--two-s", "2", "--format", "json"]).output().unwrap(),
    );
    let parsed: serde_json::Value = serde_json::from_str(&reps).unwrap();
    assert_eq!(parsed["dim"], 3);
    assert_eq!(parsed["sigma"].as_array().unwrap().len(), 3);

    let clifford = stdout_of(
        bin().args(["clifford", "--two-s", "1", "--format", "json"]).output().unwrap(),
    );
    let parsed: serde_json::Value = serde_json::from_str(&clifford).unwrap();
    assert_eq!(parsed["raise"].as_array().unwrap().len(), 3);
    assert!(parsed["lower"].is_null(), "no lower level below twoS = 2");
}
