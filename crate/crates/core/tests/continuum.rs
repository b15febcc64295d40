use genex::continuum_even::*;
use genex::exact_kernel::{q, Poly, RatFn};

#[test]
fn zg_structure_across_valences() {
    for (nu, g) in [(2u32, 3usize), (3, 2)] {
        let t = solve_zg(nu, g, 5 * g + 12).unwrap();
        for e in &t.entries[1..] {
            let s = e.structure.as_ref().unwrap();
            assert!(structure_ok(s, e.g), "nu={nu} g={} {s:?}", e.g);
            assert!(e.surplus >= 10);
        }
    }
}

#[test]
fn known_quartic_genus_two() {
    let t = solve_zg(2, 2, 22).unwrap();
    // -14 z (z-1)^4 (9z-4) / (9 (z-2)^9)
    let zm1 = Poly::from_ints(&[-1, 1]);
    let num = (&(&Poly::x() * &zm1.pow(4)) * &Poly::from_ints(&[-4, 9])).scale(&q(-14, 9));
    let expect = RatFn::new(num, Poly::from_ints(&[-2, 1]).pow(9)).unwrap();
    assert_eq!(t.entries[2].ratfn, expect);
    assert_eq!(verify_continuum_toda(&t, 2, 10), Ok(9));
}
