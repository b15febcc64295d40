use genex::continuum_odd::{trivalent_checks, verify_odd};

#[test]
fn odd_systems_through_order_ten() {
    for nu in 1..=3 {
        let out = verify_odd(nu, 10).unwrap();
        assert_eq!(out.len(), 12);
        let failed: Vec<_> = out.iter().filter(|c| !c.pass).collect();
        assert!(failed.is_empty(), "nu={nu}: {failed:?}");
    }
}

#[test]
fn trivalent_closed_forms_match_counts() {
    let r = trivalent_checks(4).unwrap();
    assert!(r.all_pass(), "{r:?}");
    let at = |g: usize, m: usize| r.checks.iter().find(|c| c.g == g && c.m == m).unwrap();
    // only the planar m = 2 entry fixes the scale
    assert!(at(0, 2).calibration_point);
    assert!(!at(0, 4).calibration_point && !at(1, 2).calibration_point && !at(2, 4).calibration_point);
}
