use std::f64::consts::LN_2;

use irreality::linalg::frobenius_distance;
use irreality::optimize::OptimizerConfig;
use irreality::parse::{density_to_json, parse_state, read_density_file};
use irreality::states::{self, WernerParam};
use irreality::sweep::{run_sweep, sweep_row, write_sweep_csv, Family, SweepSpec};
use irreality::verify::{run_suite, SUITES};
use irreality::Error;

fn coarse() -> OptimizerConfig {
    OptimizerConfig {
        grid_points_theta: 9,
        grid_points_phi: 8,
        ..OptimizerConfig::default()
    }
}

#[test]
fn density_file_round_trips_through_disk() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("werner.json");
    let rho = states::werner(WernerParam::new(0.3).unwrap());
    std::fs::write(&path, density_to_json(&rho)).unwrap();
    let back = read_density_file(&path).unwrap();
    assert!(frobenius_distance(back.matrix(), rho.matrix()).unwrap() < 1e-15);
    let via_spec = parse_state(&format!("file:{}", path.display())).unwrap();
    assert_eq!(via_spec, back);
}

#[test]
fn unreadable_file_is_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("absent.json");
    assert!(matches!(read_density_file(&missing), Err(Error::Io(_))));
}

#[test]
fn sweep_endpoints() {
    let cfg = OptimizerConfig::default();
    let one = sweep_row(Family::Werner, 1.0, &cfg).unwrap();
    assert!(one.n_min <= 1e-4);
    assert!((one.concurrence - 1.0).abs() <= 1e-9);
    assert!((one.d12 - LN_2).abs() <= 1e-6);

    let quarter = sweep_row(Family::Werner, 0.25, &cfg).unwrap();
    assert_eq!(quarter.concurrence, 0.0);
    assert!(quarter.n_zz > 1e-3);

    let classical = sweep_row(Family::Alpha, 0.0, &cfg).unwrap();
    assert!(classical.d12 <= 1e-4);
    assert!(classical.n_min <= 1e-4);
}

#[test]
fn sweep_csv_is_bitwise_reproducible() {
    let spec = SweepSpec {
        points: 6,
        optimizer: coarse(),
        ..SweepSpec::default_for(Family::Werner)
    };
    let render = || {
        let mut buf = Vec::new();
        write_sweep_csv(&run_sweep(&spec).unwrap(), &mut buf).unwrap();
        buf
    };
    assert_eq!(render(), render());
}

#[test]
fn every_suite_runs_with_a_small_count() {
    let cfg = coarse();
    for suite in SUITES {
        let r = run_suite(suite, 11, Some(3), &cfg).unwrap();
        assert!(r.passed(), "{suite}: {:?}", r.failures);
    }
}

#[test]
fn suite_aliases_resolve() {
    let cfg = coarse();
    let r = run_suite("eq4", 7, Some(5), &cfg).unwrap();
    assert_eq!(r.suite, "decomposition");
    assert_eq!(r.cases, 5);
}
