use genex::lattice_oracle::{
    deformed_moments, corrupt_moment, recurrence_table, recurrence_table_from_moments, verify_hirota,
    verify_lattice_equations, LatticeError, LatticeKind, WeightSpec,
};

#[test]
fn quartic_identities_exact_through_t5() {
    for n in 3..=8 {
        let spec = WeightSpec::at_n(2, n, true);
        let t = recurrence_table(&spec, n + 3, 5).unwrap();
        let mut eqs = Vec::new();
        for kind in [LatticeKind::String, LatticeKind::Toda, LatticeKind::TodaT1] {
            let rep = verify_lattice_equations(&t, kind, &[n]).unwrap();
            eqs.extend(rep.checks.into_iter().map(|c| c.equation));
        }
        let rep = verify_hirota(&t, &[n]).unwrap();
        eqs.extend(rep.checks.into_iter().map(|c| c.equation));
        assert_eq!(
            eqs,
            [
                "string",
                "toda",
                "toda_t1_a",
                "toda_t1_b",
                "hirota",
                "tau_second_difference",
                "hirota_lemma_a",
                "hirota_lemma_b"
            ],
            "n={n}"
        );
    }
}

#[test]
fn corrupted_moment_is_detected() {
    let spec = WeightSpec::at_n(2, 3, false);
    let mut m = deformed_moments(&spec, 2 * 3 + 2, 2);
    corrupt_moment(&mut m, 4);
    let t = recurrence_table_from_moments(&spec, &m, 3, 2).unwrap();
    let r = verify_lattice_equations(&t, LatticeKind::String, &[1, 2, 3]);
    assert!(matches!(r, Err(LatticeError::VerificationFailure { .. })), "{r:?}");
}

