//! Behavior of the command-line surface: exit codes, file formats, golden
//! outputs.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_euler3b"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .unwrap_or_else(|e| panic!("failed to run euler3b {args:?}: {e}"))
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("process terminated by signal")
}

#[test]
fn lambda0_prints_table_and_json_line() {
    let out = run(&["lambda0", "--masses", "1,1,1"]);
    assert_eq!(exit_code(&out), 0);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("lambda0"));
    let json_line = stdout.lines().last().unwrap();
    let v: serde_json::Value = serde_json::from_str(json_line).expect("JSON summary line");
    assert!((v["lambda0"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert!((v["s"].as_f64().unwrap() - 5.0).abs() < 1e-12);
}

#[test]
fn invalid_masses_exit_with_code_one() {
    assert_eq!(exit_code(&run(&["lambda0", "--masses", "1,0,1"])), 1);
    assert_eq!(exit_code(&run(&["lambda0", "--masses", "1,2"])), 1);
    let out = run(&[
        "minimize",
        "--masses",
        "1,1,1",
        "--period",
        "-3",
        "--out",
        "/tmp/x.json",
    ]);
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn minimize_then_verify_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let orbit = dir.path().join("kepler.json");
    let out = run(&[
        "minimize",
        "--masses",
        "1,1,1",
        "--period",
        "6.283185307179586",
        "--harmonics",
        "16",
        "--out",
        orbit.to_str().unwrap(),
    ]);
    assert_eq!(
        exit_code(&out),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let stdout = String::from_utf8(out.stdout).unwrap();
    let f1_line = stdout.lines().find(|l| l.starts_with("f1")).unwrap();
    let f1: f64 = f1_line.split_whitespace().nth(1).unwrap().parse().unwrap();
    let least = 3.0 * std::f64::consts::PI * 10f64.powf(2.0 / 3.0);
    assert!((f1 - least).abs() <= 1e-4 * least);

    let verify = run(&["verify", orbit.to_str().unwrap()]);
    assert_eq!(
        exit_code(&verify),
        0,
        "verify failed: {}",
        String::from_utf8_lossy(&verify.stdout)
    );
}

#[test]
fn starved_solver_exits_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let orbit = dir.path().join("undercooked.json");
    let out = run(&[
        "minimize",
        "--masses",
        "1,1,1",
        "--period",
        "6.283185307179586",
        "--harmonics",
        "4",
        "--max-iter",
        "3",
        "--out",
        orbit.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 2);
    // The flagged record is still written and fails verification.
    assert!(orbit.exists());
    let verify = run(&["verify", orbit.to_str().unwrap()]);
    assert_eq!(exit_code(&verify), 3);
}

#[test]
fn verify_detects_a_corrupted_coefficient() {
    let dir = tempfile::tempdir().unwrap();
    let tampered = dir.path().join("tampered.json");
    let mut record: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(fixture("kepler.json")).unwrap()).unwrap();
    let coeff = record["harmonics"][0]["cos"][0].as_f64().unwrap();
    record["harmonics"][0]["cos"][0] = serde_json::json!(coeff + 1e-3);
    fs::write(&tampered, serde_json::to_string_pretty(&record).unwrap()).unwrap();

    let out = run(&["verify", tampered.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 3);
    assert!(String::from_utf8(out.stdout).unwrap().contains("FAIL"));
}

#[test]
fn schema_violations_exit_with_code_one() {
    let dir = tempfile::tempdir().unwrap();

    // Even harmonic index.
    let even = dir.path().join("even.json");
    let mut record: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(fixture("kepler.json")).unwrap()).unwrap();
    record["harmonics"][1]["k"] = serde_json::json!(2);
    fs::write(&even, serde_json::to_string_pretty(&record).unwrap()).unwrap();
    let out = run(&["verify", even.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("harmonic index 2"));

    // Missing diagnostics block.
    let missing = dir.path().join("missing.json");
    let mut record: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(fixture("kepler.json")).unwrap()).unwrap();
    record.as_object_mut().unwrap().remove("diagnostics");
    fs::write(&missing, serde_json::to_string_pretty(&record).unwrap()).unwrap();
    let out = run(&["verify", missing.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("diagnostics"));

    // Impossible rescaling frequency.
    let bad_omega = dir.path().join("bad_omega.json");
    let mut record: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(fixture("kepler.json")).unwrap()).unwrap();
    record["solver"]["omega"] = serde_json::json!(-1.0);
    fs::write(&bad_omega, serde_json::to_string_pretty(&record).unwrap()).unwrap();
    let out = run(&["verify", bad_omega.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("omega"));
}

#[test]
fn full_pipeline_verifies_for_asymmetric_masses() {
    // The perturbed pairwise force does not preserve the collinear subspace
    // for unequal masses, so this exercises the reduced-equation gates that
    // symmetric fixtures cannot.
    let dir = tempfile::tempdir().unwrap();
    for (name, args) in [
        ("min123.json", vec!["minimize"]),
        ("mp123.json", vec!["mountain-pass", "--epsilon", "1e-2,1e-3"]),
    ] {
        let orbit = dir.path().join(name);
        let mut argv: Vec<&str> = args.clone();
        argv.extend([
            "--masses",
            "1,2,3",
            "--period",
            "6.283185307179586",
            "--out",
            orbit.to_str().unwrap(),
        ]);
        let out = run(&argv);
        assert_eq!(
            exit_code(&out),
            0,
            "{name} solve failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let verify = run(&["verify", orbit.to_str().unwrap()]);
        assert_eq!(
            exit_code(&verify),
            0,
            "{name} verification failed:\n{}",
            String::from_utf8_lossy(&verify.stdout)
        );
    }
}

#[test]
fn orbit_files_round_trip_bit_for_bit() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["kepler.json", "saddle.json"] {
        let records = euler3b_cli::orbit_file::read_orbits(&fixture(name)).unwrap();
        let copy = dir.path().join(name);
        euler3b_cli::orbit_file::write_orbits(&copy, &records).unwrap();
        let back = euler3b_cli::orbit_file::read_orbits(&copy).unwrap();
        assert_eq!(records, back, "{name} drifted through a write/read cycle");
    }
}

fn handcrafted_series() -> euler3b::OrbitTimeSeries {
    use euler3b::{ConfigurationState, Vec3};
    let state = |scale: f64| ConfigurationState {
        q1: Vec3::new(-0.5 * scale, 0.0, 0.25),
        q2: Vec3::new(0.5 * scale, 0.0, -0.25),
        q3: Vec3::new(0.0, scale, 0.0),
        v1: Vec3::new(0.0, 1.0, 0.0),
        v2: Vec3::new(0.0, -1.0, 0.125 * scale),
        v3: Vec3::new(1.0, 0.0, -0.5),
    };
    euler3b::OrbitTimeSeries {
        times: vec![0.0, 0.5, 1.0],
        states: vec![state(1.0), state(1.25), state(1.5)],
        meta: euler3b::SeriesMeta {
            masses: euler3b::MassTriple::equal(),
            params: euler3b::EnergyParams::unperturbed(-1.0),
            step: 0.5,
        },
    }
}

#[test]
fn csv_matches_the_pinned_golden_file() {
    let text = euler3b_cli::csv::format_series(&handcrafted_series());
    assert_eq!(text.lines().count(), 4); // header + 3 instants
    let golden = fs::read_to_string(fixture("series.csv")).unwrap();
    assert_eq!(text, golden, "CSV emission drifted from the golden fixture");
}

#[test]
fn empty_series_yields_header_only() {
    let mut series = handcrafted_series();
    series.times.clear();
    series.states.clear();
    let text = euler3b_cli::csv::format_series(&series);
    assert_eq!(text, format!("{}\n", euler3b_cli::csv::HEADER));
}

#[test]
fn integrate_writes_a_time_series_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("series.csv");
    let out = run(&[
        "integrate",
        fixture("kepler.json").to_str().unwrap(),
        "--steps",
        "512",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(
        exit_code(&out),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 514); // header + initial + 512 steps
    assert!(text.starts_with(euler3b_cli::csv::HEADER));
}

#[test]
fn svg_emission_is_deterministic_and_matches_golden() {
    let records = euler3b_cli::orbit_file::read_orbits(&fixture("kepler.json")).unwrap();
    let once = euler3b_cli::svg::render_svg(&records[0], euler3b_cli::svg::Plane::Xy).unwrap();
    let twice = euler3b_cli::svg::render_svg(&records[0], euler3b_cli::svg::Plane::Xy).unwrap();
    assert_eq!(once, twice);
    let golden = fs::read_to_string(fixture("kepler.svg")).unwrap();
    assert_eq!(once, golden, "SVG emission drifted from the golden fixture");
    assert_eq!(once.matches("<polyline").count(), 4); // three bodies + relative curve
}

#[test]
fn plot_runs_for_every_plane() {
    let dir = tempfile::tempdir().unwrap();
    for plane in ["xy", "xz", "yz"] {
        let svg = dir.path().join(format!("{plane}.svg"));
        let out = run(&[
            "plot",
            fixture("saddle.json").to_str().unwrap(),
            "--out",
            svg.to_str().unwrap(),
            "--plane",
            plane,
        ]);
        assert_eq!(exit_code(&out), 0);
        assert!(fs::read_to_string(&svg).unwrap().starts_with("<svg"));
    }
}

#[test]
fn identical_invocations_write_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for out in [&a, &b] {
        let run_out = run(&[
            "mountain-pass",
            "--masses",
            "1,1,1",
            "--period",
            "6.283185307179586",
            "--epsilon",
            "1e-3",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(exit_code(&run_out), 0);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let (c, d) = (dir.path().join("c.json"), dir.path().join("d.json"));
    for out in [&c, &d] {
        let run_out = run(&[
            "minimize",
            "--masses",
            "1,1,1",
            "--period",
            "6.283185307179586",
            "--harmonics",
            "4",
            "--perturb",
            "0.05",
            "--seed",
            "11",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(exit_code(&run_out), 0);
    }
    assert_eq!(fs::read(&c).unwrap(), fs::read(&d).unwrap());
}

#[test]
fn nonexistent_input_exits_with_code_one() {
    let out = run(&["verify", "/definitely/not/here.json"]);
    assert_eq!(exit_code(&out), 1);
    assert!(!Path::new("/definitely/not/here.json").exists());
}
