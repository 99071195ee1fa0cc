mod common;

use num_bigint::BigUint;

use gtlab::extremal::{build_t_even, EvenSpec};
use gtlab::sweep::{compare_figure_families, emit_report, parse_json_report, sweep, ReportFormat, SweepOptions, EXIT_OK};

#[test]
fn parallel_sweep_is_byte_identical() {
    let serial = sweep(SweepOptions::new(2, 12)).unwrap();
    let parallel = sweep(SweepOptions::new(2, 12).jobs(3)).unwrap();
    assert_eq!(serial, parallel);
    for format in [ReportFormat::Csv, ReportFormat::Json] {
        assert_eq!(emit_report(&serial, format).unwrap(), emit_report(&parallel, format).unwrap());
    }
    let json = emit_report(&serial, ReportFormat::Json).unwrap();
    assert_eq!(parse_json_report(&json).unwrap(), serial);
}

#[test]
fn known_maxima() {
    let report = sweep(SweepOptions::new(2, 11)).unwrap();
    assert_eq!(report.exit_code(), EXIT_OK);

    let r = report.record(8, 4).unwrap();
    assert_eq!(r.max_count, BigUint::from(9u32));
    assert!(r.attained_by_figure_family);
    let family = build_t_even(&EvenSpec::new(vec![2, 2]).unwrap());
    assert!(common::brute_isomorphic(
        &common::forest_adjacency(&r.witness.to_forest()),
        &common::forest_adjacency(&family)
    ));

    assert_eq!(report.record(5, 2).unwrap().max_count, BigUint::from(4u32));
    for n in 3..=11 {
        assert_eq!(report.record(n, 2).unwrap().max_count, BigUint::from(n - 1), "n = {n}");
    }
    assert_eq!(report.record(2, 2).unwrap().max_count, BigUint::from(1u32));
}

#[test]
fn figure_families_at_order_eight() {
    let rows = compare_figure_families(8).unwrap();
    let four = rows.iter().find(|r| r.gamma_t == 4).unwrap();
    assert_eq!(four.max_count, BigUint::from(9u32));
    assert!(four.attained());
    let five = rows.iter().find(|r| r.gamma_t == 5).unwrap();
    assert_eq!(five.max_count, BigUint::from(3u32));
    assert!(five.attained());
}

#[test]
fn spot_checks_find_no_mismatch() {
    let report = sweep(SweepOptions::new(2, 13).oracle_spot_check(true).jobs(2)).unwrap();
    assert!(report.totals.spot_checks > 0);
    assert!(report.spot_check_mismatches.is_empty());
}
