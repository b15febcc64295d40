use std::collections::BTreeSet;

use num::Zero;

use super::linalg::{solve, Solution};
use super::poly::Poly;
use super::ratfn::RatFn;
use super::rational::Rational;
use super::series::Series;
use super::KernelError;

/// Outcome of an exact reconstruction.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub ratfn: RatFn,
    /// Numerator over `base^pole_ord` before any cancellation.
    pub raw_num: Poly,
    pub pole_ord: u32,
    /// Orders used to pin the unknowns.
    pub determined_by: usize,
    /// Remaining non-skipped orders, all verified.
    pub surplus: usize,
}

/// Finds `R = N(z)/base(z)^P` with `deg N <= max_num_deg`, `P = max_pole_ord`,
/// such that `R(Z)` matches `S` at every order not in `skip`.
pub fn series_to_ratfn(
    s: &Series,
    z: &Series,
    base: &Poly,
    max_num_deg: usize,
    max_pole_ord: u32,
    skip: &BTreeSet<usize>,
) -> Result<RatFn, KernelError> {
    series_to_ratfn_report(s, z, base, max_num_deg, max_pole_ord, skip).map(|r| r.ratfn)
}

pub fn series_to_ratfn_report(
    s: &Series,
    z: &Series,
    base: &Poly,
    max_num_deg: usize,
    max_pole_ord: u32,
    skip: &BTreeSet<usize>,
) -> Result<Reconstruction, KernelError> {
    if z.trunc() < 1 || z.coeff(1).is_zero() {
        return Err(KernelError::DegenerateChangeOfVariable);
    }
    let t = s.trunc().min(z.trunc());
    let z = z.truncate(t);
    let bz = z.eval_poly(base);
    if bz.coeff(0).is_zero() {
        return Err(KernelError::PoleAtBasepoint);
    }
    let ib = bz.inv()?.pow(max_pole_ord);
    let mut basis = Vec::with_capacity(max_num_deg + 1);
    let mut zp = Series::one(z.var(), t);
    for _ in 0..=max_num_deg {
        basis.push(&zp * &ib);
        zp = &zp * &z;
    }
    let orders: Vec<usize> = (0..=t).filter(|m| !skip.contains(m)).collect();
    let unknowns = max_num_deg + 1;
    let row = |m: usize| -> Vec<Rational> { basis.iter().map(|b| b.coeff(m)).collect() };

    let mut a: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    let mut last_rank = 0;
    for (k, &m) in orders.iter().enumerate() {
        a.push(row(m));
        rhs.push(s.coeff(m));
        if a.len() < unknowns {
            continue;
        }
        match solve(&a, &rhs) {
            Solution::Inconsistent { .. } => {
                return Err(KernelError::ReconstructionFailure { order: m });
            }
            Solution::Underdetermined { rank } => last_rank = rank,
            Solution::Unique(x) => {
                for &m2 in &orders[k + 1..] {
                    let v: Rational = basis.iter().zip(&x).map(|(b, c)| b.coeff(m2) * c).sum();
                    if v != s.coeff(m2) {
                        return Err(KernelError::ReconstructionFailure { order: m2 });
                    }
                }
                let raw_num = Poly::new(x);
                let ratfn = RatFn::new(raw_num.clone(), base.pow(max_pole_ord))?;
                return Ok(Reconstruction {
                    ratfn,
                    raw_num,
                    pole_ord: max_pole_ord,
                    determined_by: k + 1,
                    surplus: orders.len() - k - 1,
                });
            }
        }
    }
    Err(KernelError::InsufficientData { unknowns, rank: last_rank, rows: orders.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_kernel::{qi, Var};

    fn z0_nu2(t: usize) -> Series {
        // z = 1 + 12 u z^2
        let mut z = Series::one(Var::U, t);
        for _ in 0..=t {
            z = &Series::one(Var::U, t) + &(&z * &z).shift_up(1).scale(&qi(12));
        }
        z
    }

    #[test]
    fn round_trip_and_failure() {
        let z = z0_nu2(12);
        let base = Poly::from_ints(&[2, -1]);
        let r = RatFn::new(Poly::one(), base.clone()).unwrap();
        let s = r.to_series(&z, 12).unwrap();
        let back = series_to_ratfn(&s, &z, &base, 1, 1, &BTreeSet::new()).unwrap();
        assert_eq!(back, r);

        let id = series_to_ratfn(&z, &z, &base, 1, 0, &BTreeSet::new()).unwrap();
        assert_eq!(id, RatFn::from_poly(Poly::x()));

        let mut bad = s.clone();
        bad.set_coeff(7, bad.coeff(7) + qi(1));
        assert_eq!(
            series_to_ratfn(&bad, &z, &base, 1, 1, &BTreeSet::new()),
            Err(KernelError::ReconstructionFailure { order: 7 })
        );
    }
}
