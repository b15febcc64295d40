use genex::exact_kernel::{q, qi, Poly, RatFn, Var};
use genex::fatgraph_oracle::eg_series_from_kappa;
use genex::genus_even::{
    default_trunc, genus_one_checks, higher_genus_checks, planar_checks, solve_eg, verify_structure,
};

#[test]
fn quartic_genus_three() {
    let t = solve_eg(2, 3, default_trunc(3)).unwrap();
    let e3 = t.entries[3].form.ratfn().unwrap().clone();
    let num = &Poly::from_ints(&[-1, 1]).pow(5) * &Poly::from_ints(&[17260, -32704, -2925, 855, -135, 9]);
    let expect = RatFn::new(num.scale(&q(-1, 9072)), Poly::from_ints(&[-2, 1]).pow(10)).unwrap();
    assert_eq!(e3, expect);
    let r = verify_structure(&t, 3).unwrap();
    assert_eq!(r.r, 5);
    assert_eq!(r.constant, q(-1, 1008));
    assert!(r.min_pole.unwrap() >= 4);
    assert_eq!(r.pole_order, 10);
    for c in ["pole_orders", "vanishing_factor", "constant_term", "degree_pole_relation", "low_order_vanishing"] {
        assert_eq!(r.clause(c), Some(true), "{c}");
    }
    // resonant orders m = 4 (no faces) and m = 5 (one face)
    let res: Vec<(usize, i64)> = t.entries[3].resonant.iter().map(|o| (o.m, o.faces)).collect();
    assert_eq!(res, vec![(4, 0), (5, 1)]);
    assert_eq!(t.entries[3].resonant[0].fatgraph, Some(0));
    assert_eq!(t.entries[3].resonant[1].count, qi(58060800));
}

#[test]
fn sextic_genus_two() {
    let t = solve_eg(3, 2, default_trunc(2)).unwrap();
    let e2 = t.entries[2].form.ratfn().unwrap().clone();
    let num = &(&Poly::from_ints(&[-1, 1]).pow(2) * &Poly::from_ints(&[-3, 4])) * &Poly::from_ints(&[-129, -38, 8]);
    let expect = RatFn::new(num.scale(&q(1, 240)), Poly::from_ints(&[-3, 2]).pow(5)).unwrap();
    assert_eq!(e2, expect);
    let r = verify_structure(&t, 2).unwrap();
    assert_eq!(r.r, 1);
    assert_eq!(r.clause("vanishing_factor"), Some(true));
    assert_eq!(r.clause("constant_term"), Some(true));
}

#[test]
fn quartic_series_match_map_counts() {
    let t = solve_eg(2, 2, default_trunc(2)).unwrap();
    for g in 0..=2 {
        let k = eg_series_from_kappa(4, g as u32, 4).unwrap().rescale(&qi(4)).with_var(Var::U);
        for m in 1..=4 {
            assert_eq!(t.entries[g].series.coeff(m), k.coeff(m), "g={g} m={m}");
        }
    }
}

#[test]
fn derivative_identities() {
    let t2 = solve_eg(2, 3, default_trunc(3)).unwrap();
    let t3 = solve_eg(3, 2, default_trunc(2)).unwrap();
    let mut outcomes = Vec::new();
    for (t, ks) in [(&t2, vec![2, 3]), (&t3, vec![2])] {
        for p in 1..=6 {
            for &k in &ks {
                let e = t.entries[k].form.ratfn().unwrap();
                outcomes.extend(higher_genus_checks(t.nu, k, e, p).unwrap());
            }
            outcomes.extend(genus_one_checks(t.nu, p).unwrap());
            if p >= 3 {
                outcomes.extend(planar_checks(t.nu, p).unwrap());
            }
        }
    }
    let failed: Vec<_> = outcomes.iter().filter(|o| !o.pass).collect();
    assert!(failed.is_empty(), "{failed:?}");
    // the recursion's right-hand side vanishes at z_0 = 1
    assert_eq!(t2.entries[2].rhs.as_ref().unwrap().eval(&qi(1)).unwrap(), qi(0));
}
