use std::fs;
use std::path::Path;
use std::process::{Command, Output};

type Case<'a> = (Vec<&'a str>, Vec<(&'a str, &'a str)>, &'a str);

fn nlqsl(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_nlqsl"));
    cmd.args(args).env_remove("NLQSL_THREADS");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn quick_config(dir: &Path) -> String {
    let path = dir.join("quick.cfg");
    fs::write(&path, "# short ramp on a coarse grid\ntau = 0.2\nsamples = 100\ngrid = 256\nkappa = 3\n").unwrap();
    path.display().to_string()
}

#[test]
fn custom_run_writes_one_trace_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = quick_config(dir.path());
    let out = dir.path().join("out");
    let o =
        nlqsl(&["run", "custom", "--config", &cfg, "--kappa", "1", "--p", "2", "--out", out.to_str().unwrap()], &[]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));

    let mut names: Vec<String> =
        fs::read_dir(&out).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    names.sort();
    // the flag's κ = 1 wins over the file's κ = 3
    assert_eq!(names, ["manifest.json", "qsl_trace_p2_kappa1.csv"]);

    let text = fs::read_to_string(out.join("qsl_trace_p2_kappa1.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,v_qsl"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 101);
    assert!(rows.iter().all(|r| r[1].is_finite() && r[1] >= 0.0));
    assert!(text.lines().nth(1).unwrap().starts_with("0.0000000000000000e0,"));

    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["config"]["p"], 2);
    assert_eq!(manifest["config"]["grid"], 256);
    assert_eq!(manifest["config"]["tau"], 0.2);
    assert!(manifest["diagnostics"]["max_norm_drift"].as_f64().unwrap() < 1e-10);
    assert_eq!(manifest["files"][0]["rows"], 101);
}

#[test]
fn thread_cap_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = quick_config(dir.path());
    let read = |name: &str, threads: &str| {
        let out = dir.path().join(name);
        let o = nlqsl(
            &["run", "custom", "--config", &cfg, "--kappa", "0,2,4", "--out", out.to_str().unwrap()],
            &[("NLQSL_THREADS", threads)],
        );
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        fs::read(out.join("qsl_trace_p1_kappa4.csv")).unwrap()
    };
    assert_eq!(read("one", "1"), read("four", "4"));
}

#[test]
fn config_errors_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let out = out.to_str().unwrap();
    let bad_key = dir.path().join("bad.cfg");
    fs::write(&bad_key, "colour = blue\n").unwrap();
    let cases: Vec<Case> = vec![
        (vec!["run", "fig9", "--out", out], vec![], "scenario"),
        (vec!["run", "fig2", "--grid", "1000", "--out", out], vec![], "grid"),
        (vec!["run", "custom", "--p", "3", "--out", out], vec![], "p"),
        (vec!["run", "fig1", "--p", "0", "--out", out], vec![], "p"),
        (vec!["run", "fig4", "--p", "1", "--out", out], vec![], "p"),
        (vec!["run", "custom", "--kappa", "1,x", "--out", out], vec![], "kappa"),
        (vec!["run", "custom", "--kappa", "-1", "--out", out], vec![], "kappa"),
        (vec!["run", "custom", "--dt", "0.3", "--out", out], vec![], "dt"),
        (vec!["run", "custom", "--dt", "0.01", "--out", out], vec![], "dt"),
        (vec!["run", "custom", "--config", bad_key.to_str().unwrap(), "--out", out], vec![], "colour"),
        (vec!["run", "custom", "--config", "/nonexistent.cfg", "--out", out], vec![], "config"),
        (vec!["run", "custom", "--out", out], vec![("NLQSL_THREADS", "zero")], "NLQSL_THREADS"),
    ];
    for (args, envs, field) in cases {
        let o = nlqsl(&args, &envs);
        let stderr = String::from_utf8_lossy(&o.stderr);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {stderr}");
        assert!(stderr.contains(field), "{args:?}: {stderr}");
    }
    assert!(!Path::new(out).exists());
}

#[test]
fn numerical_failures_map_to_exit_3() {
    use nlqsl::CliError;
    use nlqsl_core::Error;
    assert_eq!(CliError::from(Error::NormDrift { t: 1.0, drift: 1e-3 }).exit_code(), 3);
    assert_eq!(CliError::from(Error::NonFiniteState).exit_code(), 3);
    assert_eq!(CliError::from(Error::InvalidParameter("dt".into())).exit_code(), 2);
}

#[test]
fn fig3_writes_both_modes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("box");
    let o = nlqsl(&["run", "fig3", "--out", out.to_str().unwrap()], &[]);
    assert!(o.status.success());
    let csv = fs::read_dir(&out).unwrap().filter(|e| e.as_ref().unwrap().path().extension().unwrap() == "csv").count();
    // 3 couplings × 2 modes, plus one κ-sweep per mode
    assert_eq!(csv, 8);
    let sweep = fs::read_to_string(out.join("box_sweep_exact.csv")).unwrap();
    let v: Vec<f64> = sweep.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert!(v.windows(2).all(|w| w[1] > w[0]));
}
