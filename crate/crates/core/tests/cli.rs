use std::process::Command;

fn cli() -> Command {
    Command::new(env!("CARGO_BIN_EXE_uwb-detect"))
}

#[test]
fn selftest_exits_zero() {
    let out = cli()
        .args(["selftest", "--instances", "300"])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().count() >= 10);
    assert!(text.lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn same_seed_sweeps_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sweep.cfg");
    std::fs::write(
        &config,
        "snr_db_list = 4, 8\nn_symbols = 10\nl_branches = 2, 5\n\
         detectors = dd, msdd, sbdfdd, va, cdfdd\nmax_bursts = 40\n",
    )
    .unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let status = cli()
            .args(["sweep", "--seed", "17", "--config"])
            .arg(&config)
            .arg("--out")
            .arg(&path)
            .arg("--histograms")
            .arg(dir.path().join("hist"))
            .status()
            .unwrap();
        assert!(status.success());
        std::fs::read(path).unwrap()
    };
    let (a, b) = (run("a.csv"), run("b.csv"));
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    // Header plus one row per (detector, L, snr).
    assert_eq!(text.lines().count(), 1 + 5 * 2 * 2);
    let parsed = uwb_detect::harness::parse_csv(&text).unwrap();
    assert!(parsed
        .iter()
        .all(|r| r.bits == 400 && r.ber == r.errors as f64 / r.bits as f64));
    assert!(dir.path().join("hist").join("msdd_L5_snr8.csv").exists());

    let other = cli()
        .args(["sweep", "--seed", "18", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_ne!(other.stdout, text.as_bytes());
}

#[test]
fn unknown_detector_exits_two_with_allowed_names() {
    let out = cli()
        .args(["sweep", "--seed", "1", "--detectors", "dd,zf"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    for name in [
        "dd",
        "inse",
        "msdd",
        "msdd-nosort",
        "va",
        "bdfdd",
        "sbdfdd",
        "cdfdd",
    ] {
        assert!(err.contains(name), "{err}");
    }
}

#[test]
fn sweep_requires_seed_and_validates_overrides() {
    assert!(!cli().args(["sweep"]).status().unwrap().success());
    let out = cli()
        .args(["sweep", "--seed", "1", "--set", "min_errors=5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = cli()
        .args(["sweep", "--seed", "1", "--set", "bogus=1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn trace_prints_search_summary() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z.txt");
    let z = uwb_detect::acr::ZMatrix::from_upper(3, |l, i| match (l, i) {
        (0, 1) => 0.5,
        (0, 2) => -0.2,
        _ => 0.4,
    })
    .unwrap();
    std::fs::write(&path, z.to_text()).unwrap();
    let out = cli()
        .arg("trace")
        .arg("--matrix")
        .arg(&path)
        .arg("--no-sort")
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("best_sequence  +++"), "{text}");
    assert!(text.contains("terminated_by  Exhausted"), "{text}");

    let out = cli()
        .args(["trace", "--order", "7", "--seed", "3", "--dd-init"])
        .output()
        .unwrap();
    assert!(out.status.success());
}
