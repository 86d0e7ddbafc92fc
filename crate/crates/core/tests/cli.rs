mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::{csv_distance, GOLDEN_REVIVAL};

fn twomode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twomode"))
        .args(args)
        .output()
        .unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

const HEADLINE: &str = r#"{"model": {"omega1": 1, "omega2": 2, "g1": 0.5, "g2": 0.5}}"#;

#[test]
fn evolve_matches_golden_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "revival.json",
        r#"{"model": {"omega1": 1, "omega2": 2, "g1": 0.5, "g2": 0.5},
            "initial": {"mode1": {"n": 0}, "mode2": {"T": 0}},
            "evolution": {"t_max": 50, "dt": 0.1}}"#,
    );
    let out1 = dir.path().join("a.csv");
    let out2 = dir.path().join("b.csv");
    for out in [&out1, &out2] {
        let o = twomode(&["evolve", "--config", &cfg, "--out", out.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let a = std::fs::read(&out1).unwrap();
    assert_eq!(a, std::fs::read(&out2).unwrap());
    let text = String::from_utf8(a).unwrap();
    assert!(
        text.starts_with("t,E_raw,E,varq1,varp1,varq2,varp2,min_prin1,min_prin2,detV,separable\n")
    );
    assert_eq!(text.lines().count(), 502);
    assert!(text.lines().last().unwrap().starts_with("50,"));
    assert!(csv_distance(&text, GOLDEN_REVIVAL) <= 1e-10);
}

#[test]
fn default_grid_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", HEADLINE);
    let o = twomode(&["evolve", "--config", &cfg]);
    assert!(o.status.success());
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 5002);
    let o = twomode(&["evolve", "--config", &cfg, "--t-max", "2", "--dt", "0.5"]);
    let text = String::from_utf8(o.stdout).unwrap();
    let t: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(t, ["0", "0.5", "1", "1.5", "2"]);
}

#[test]
fn critical_prints_key_value() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", HEADLINE);
    let o = twomode(&["critical", "--config", &cfg, "--tol", "1e-3"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let (key, value) = text.trim_end().split_once(',').unwrap();
    assert_eq!(key, "n_crit");
    let n: f64 = value.parse().unwrap();
    assert!((n - 0.63).abs() <= 0.02);
    assert_eq!(text.lines().count(), 1);
}

#[test]
fn sweep_and_optimize_emit_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "s.json",
        r#"{"model": {"omega1": 1, "omega2": 2, "g1": 0, "g2": 0.5},
            "evolution": {"t_max": 10, "dt": 0.05},
            "sweep": {"axes": [{"param": "g2", "values": [0.5, 3.0]}]},
            "optimize": {"g1": [0, 0.2], "g2": [0.1, 0.3], "grid": 5}}"#,
    );
    let o = twomode(&["sweep", "--config", &cfg]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "g2,sup_E,sup_E_raw,t_argmax,separable_everywhere,error"
    );
    assert!(lines[1].starts_with("0.5,") && lines[1].ends_with(",false,"));
    assert_eq!(lines[2], "3,,,,,UnstableRegime");
    let o = twomode(&["optimize", "--config", &cfg]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("g1,g2,t_star,E_star,skipped,evaluations\n"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let unstable = write(
        dir.path(),
        "u.json",
        r#"{"model": {"omega1": 1, "omega2": 2, "g1": 0, "g2": 2}}"#,
    );
    let o = twomode(&["evolve", "--config", &unstable]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("UnstableRegime"));

    let degenerate = write(
        dir.path(),
        "d.json",
        r#"{"model": {"omega1": 1, "omega2": 2, "g1": 0, "g2": 1.5}}"#,
    );
    assert_eq!(
        twomode(&["evolve", "--config", &degenerate]).status.code(),
        Some(1)
    );

    let beam = write(
        dir.path(),
        "b.json",
        r#"{"model": {"omega1": 1, "omega2": 2, "g1": 0.5, "g2": 0}}"#,
    );
    let o = twomode(&[
        "critical", "--config", &beam, "--t-max", "10", "--dt", "0.1",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("NoSignChange"));

    let infeasible = write(
        dir.path(),
        "i.json",
        r#"{"model": {"omega1": 1, "omega2": 2, "g1": 0, "g2": 0},
            "evolution": {"t_max": 2, "dt": 0.1},
            "optimize": {"g1": [0, 0], "g2": [2, 3], "grid": 3}}"#,
    );
    let o = twomode(&["optimize", "--config", &infeasible]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("EmptyFeasibleSet"));

    let malformed = write(dir.path(), "m.json", "{ not json");
    assert_eq!(
        twomode(&["evolve", "--config", &malformed]).status.code(),
        Some(2)
    );
    let conflict = write(
        dir.path(),
        "c.json",
        r#"{"model": {"omega1": 1, "omega2": 2, "g1": 0.5, "g2": 0.5},
            "initial": {"mode1": {"n": 0.1, "T": 0.1}}}"#,
    );
    let o = twomode(&["evolve", "--config", &conflict]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("initial.mode1"));
    let unknown = write(
        dir.path(),
        "k.json",
        r#"{"model": {"omega1": 1, "omega2": 2, "g1": 0.5, "g2": 0.5}, "x": 1}"#,
    );
    assert_eq!(
        twomode(&["evolve", "--config", &unknown]).status.code(),
        Some(2)
    );
    let bad_value = write(
        dir.path(),
        "v.json",
        r#"{"model": {"omega1": 0, "omega2": 2, "g1": 0.5, "g2": 0.5}}"#,
    );
    let o = twomode(&["evolve", "--config", &bad_value]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("model.omega1"));
    let empty_sweep = write(
        dir.path(),
        "e.json",
        r#"{"model": {"omega1": 1, "omega2": 2, "g1": 0.5, "g2": 0.5}, "sweep": {"axes": []}}"#,
    );
    assert_eq!(
        twomode(&["sweep", "--config", &empty_sweep]).status.code(),
        Some(2)
    );
    let ok = write(dir.path(), "ok.json", HEADLINE);
    assert_eq!(twomode(&["sweep", "--config", &ok]).status.code(), Some(2));
    assert_eq!(
        twomode(&["evolve", "--config", &ok, "--dt", "-1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        twomode(&["evolve", "--config", "/nonexistent/x.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(twomode(&["evolve"]).status.code(), Some(2));
    assert_eq!(twomode(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(twomode(&["--help"]).status.code(), Some(0));
}

#[test]
fn plot_script() {
    let dir = tempfile::tempdir().unwrap();
    let csv = write(dir.path(), "revival.csv", GOLDEN_REVIVAL);
    let o = twomode(&["plot-script", &csv]);
    assert!(o.status.success());
    let script = String::from_utf8(o.stdout).unwrap();
    assert!(script.contains("set xlabel \"t (1/ω₁)\""));
    assert!(script.contains("set ylabel \"E\""));
    assert!(script.contains("using 1:3 with lines"));
    assert_eq!(
        script,
        String::from_utf8(twomode(&["plot-script", &csv]).stdout).unwrap()
    );
    let titled =
        String::from_utf8(twomode(&["plot-script", &csv, "--title", "picket fence"]).stdout)
            .unwrap();
    assert!(titled.contains("set title \"picket fence\""));
    let o = twomode(&["plot-script", &csv, "--columns", "E,nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nope"));
}
