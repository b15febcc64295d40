use std::collections::BTreeSet;

use proptest::prelude::*;

use genex::combinatorics::{
    c_nu, d_coeff, dyck_count, lattice_paths, operator_power_entry, partitions_of, path_count, LVar,
    LatticePolynomial, PathKind, Partition, Variant,
};
use genex::continuum_even::{all_positive, base_poly, catalan_data, HomSeries};
use genex::continuum_odd::solve_leading_odd;
use genex::exact_kernel::{from_bigint, pow_q, q, qi, series_to_ratfn, Poly, RatFn, Rational, Series, Var};
use genex::fatgraph_oracle::{canonical_sigma, genus_of, kappa_counts, FatGraph, Genus};
use genex::genus_even::{face_count, lambda, lambda_from_q, q_table};
use genex::lattice_oracle::self_similar_profile;

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=12).prop_map(|(a, b)| q(a, b))
}

fn unit_series(trunc: usize) -> impl Strategy<Value = Series> {
    prop::collection::vec(rational(), trunc).prop_map(move |mut c| {
        c.insert(0, qi(1));
        Series::new(Var::U, c)
    })
}

fn lattice_poly() -> impl Strategy<Value = LatticePolynomial> {
    let mono = prop::collection::vec((-2i32..=2, any::<bool>()), 0..3);
    prop::collection::vec((mono, -5i64..=5), 1..4).prop_map(|terms| {
        let mut p = LatticePolynomial::zero();
        for (vars, c) in terms {
            let m = vars.into_iter().map(|(k, b)| if b { LVar::B2(k) } else { LVar::A(k) }).collect();
            p.add_term(m, qi(c));
        }
        p
    })
}

/// A random fat graph with `j`-valent vertices and a random relabelling.
fn fat_graph() -> impl Strategy<Value = (FatGraph, Vec<usize>)> {
    prop_oneof![Just((3usize, 2usize)), Just((3, 4)), Just((4, 1)), Just((4, 2)), Just((4, 3)), Just((6, 1))]
        .prop_flat_map(|(j, m)| {
            let n = j * m;
            let ids: Vec<usize> = (0..n).collect();
            (Just(j), Just(m), Just(ids.clone()).prop_shuffle(), Just(ids).prop_shuffle())
        })
        .prop_map(|(j, m, order, perm)| {
            let mut alpha = vec![0; j * m];
            for pair in order.chunks(2) {
                alpha[pair[0]] = pair[1];
                alpha[pair[1]] = pair[0];
            }
            (FatGraph::canonical(j, m, alpha).unwrap(), perm)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&a + (&b + &c), (&a + &b) + &c);
        prop_assert_eq!(&a * (&b * &c), (&a * &b) * &c);
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        if a != qi(0) {
            prop_assert_eq!(&a * (qi(1) / &a), qi(1));
        }
    }

    #[test]
    fn log_exp_round_trip(a in unit_series(6), b in unit_series(6)) {
        let la = a.log().unwrap();
        prop_assert_eq!(la.exp().unwrap(), a.clone());
        let lab = (&a * &b).log().unwrap();
        prop_assert_eq!(lab, &la + &b.log().unwrap());
    }

    #[test]
    fn series_products_ignore_order(a in unit_series(5), b in unit_series(5), c in unit_series(5)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&c * &b));
    }

    #[test]
    fn reconstruction_inverts_expansion(num in prop::collection::vec(-9i64..=9, 1..=4), pole in 1u32..=3) {
        let base = base_poly(2);
        let r = RatFn::new(Poly::from_ints(&num), base.pow(pole)).unwrap();
        let z = catalan_data(2, 16).unwrap().z0;
        let s = r.to_series(&z, 16).unwrap();
        let back = series_to_ratfn(&s, &z, &base, 3, pole, &BTreeSet::new()).unwrap();
        prop_assert_eq!(back, r);
    }

    #[test]
    fn lattice_shift_is_a_ring_map(p in lattice_poly(), r in lattice_poly(), d in -3i32..=3) {
        prop_assert_eq!(p.mul(&r).shift(d), p.shift(d).mul(&r.shift(d)));
        prop_assert_eq!(p.add(&r).shift(d), p.shift(d).add(&r.shift(d)));
    }

    #[test]
    fn path_counts_match_binomials(j in 0usize..=12, m1 in -3i32..=3, m2 in -3i32..=3) {
        let n = dyck_count(j, m1, m2);
        prop_assert_eq!(lattice_paths(j, m1, m2, PathKind::Dyck).len() as u64, n);
        prop_assert_eq!(path_count(&operator_power_entry(j, m1, m2, true)), qi(n as i64));
    }

    #[test]
    fn genus_invariant_under_relabelling((g, perm) in fat_graph()) {
        let n = g.sigma.len();
        let mut sigma = vec![0; n];
        let mut alpha = vec![0; n];
        for h in 0..n {
            sigma[perm[h]] = perm[g.sigma[h]];
            alpha[perm[h]] = perm[g.alpha[h]];
        }
        let relabelled = FatGraph::new(g.j, g.m, sigma, alpha).unwrap();
        prop_assert_eq!(genus_of(&relabelled), genus_of(&g));
        prop_assert_eq!(relabelled.faces(), g.faces());
        if let Genus::Connected(genus) = genus_of(&g) {
            // V - E + F = 2 - 2g with at least one face
            let faces = 2 - 2 * genus as i64 - g.m as i64 + (g.j * g.m / 2) as i64;
            prop_assert_eq!(faces, g.faces() as i64);
            prop_assert!(faces >= 1);
        }
    }

    #[test]
    fn lattice_self_similar_scaling(n in 2usize..=4, a in 1i64..=5, b in 1i64..=4) {
        let x = q(a, b);
        let scaled = self_similar_profile(2, n, &x, 3).unwrap();
        let unit = self_similar_profile(2, n, &qi(1), 3).unwrap();
        prop_assert_eq!(scaled, unit);
    }

    #[test]
    fn self_similar_profile_exponents(g in 0usize..=3, nu in 2u32..=4, w in 1i64..=5) {
        let z = catalan_data(nu, 6).unwrap().z0;
        let h = HomSeries::self_similar(&z, nu, g);
        let w = qi(w);
        let wpow = |e: i64| if e >= 0 { pow_q(&w, e as u32) } else { qi(1) / pow_q(&w, (-e) as u32) };
        // f_g(u, w) = w^{1-2g} z_g(u w^{nu-1})
        let rescaled = z.rescale(&pow_q(&w, nu - 1));
        for m in 0..=6 {
            let lhs = &h.coeffs[m] * wpow(h.w_exponent(m));
            prop_assert_eq!(lhs, wpow(1 - 2 * g as i64) * rescaled.coeff(m));
        }
    }
}

#[test]
fn partition_weights_sum_to_size() {
    for n in 0..=14u32 {
        for p in partitions_of(n, None) {
            let weighted: usize = p.multiplicities().iter().map(|(j, r)| *j as usize * r).sum();
            assert_eq!(weighted as u32, n, "{p:?}");
        }
    }
}

#[test]
fn toda_leading_coefficient_is_c_nu() {
    for nu in 1..=8 {
        assert_eq!(d_coeff(nu, &Partition::new(vec![1]), Variant::Toda).unwrap(), from_bigint(c_nu(nu)));
    }
}

#[test]
fn planar_series_positive() {
    for nu in 1..=6 {
        let cat = catalan_data(nu, 12).unwrap();
        assert!(all_positive(&cat.z0));
        assert!(cat.zeta.iter().all(|z| *z > qi(0)));
    }
}

#[test]
fn resonance_exactly_at_one_or_no_face() {
    for nu in 2..=4 {
        for g in 1..=4 {
            let t = q_table(nu, g, 2);
            for m in 0..=30 {
                let f = face_count(nu, g, m);
                assert_eq!(lambda(nu, g, m) != 0, f != 0 && f != 1);
                assert_eq!(lambda_from_q(&t, m), qi(lambda(nu, g, m)));
            }
        }
    }
}

#[test]
fn map_counts_conserve_matchings_and_respect_face_bound() {
    for (j, m) in [(1usize, 2usize), (2, 3), (3, 2), (4, 2), (4, 3), (6, 2), (3, 4)] {
        let k = kappa_counts(j, m).unwrap();
        let all: u64 = (1..=(j * m) as u64 - 1).rev().step_by(2).product();
        assert_eq!(k.total(), all, "j={j} m={m}");
        for &g in k.by_genus.keys() {
            let faces = 2 - 2 * g as i64 - m as i64 + (j * m / 2) as i64;
            assert!(faces >= 1, "j={j} m={m} g={g}");
        }
    }
    // odd total valence has no perfect matching
    for m in [1, 3, 5] {
        assert!(kappa_counts(3, m).is_err());
    }
}

#[test]
fn canonical_rotation_layout() {
    let s = canonical_sigma(4, 2);
    assert_eq!(s, vec![1, 2, 3, 0, 5, 6, 7, 4]);
}

#[test]
fn odd_pair_parity() {
    for nu in 1..=4 {
        for trunc in 2..=8 {
            assert!(solve_leading_odd(nu, trunc).unwrap().symmetric(), "nu={nu} trunc={trunc}");
        }
    }
}
