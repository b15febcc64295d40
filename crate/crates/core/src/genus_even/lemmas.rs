//! Coefficient tables for `w`-derivatives of `E_k` and the identities they
//! satisfy: the `Q` recursion, the `c` recursion, the vanishing sums that
//! bound pole orders from below, and the jet formula for `E_0`.

use std::collections::BTreeMap;

use num::Zero;
pub use crate::checks::CheckOutcome;

use super::{closed_e0_e1, e_w_derivs, verification, GenusError, LogRational};
use crate::continuum_even::base_poly;
use crate::exact_kernel::{binomial, factorial, falling, from_bigint, pow_q, q, qi, qz, Poly, RatFn, Rational};

/// `Q_j^{(P,k)}(nu)` for `P <= p_max`.
#[derive(Clone, Debug)]
pub struct QTable {
    pub nu: u32,
    pub k: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl QTable {
    pub fn get(&self, p: usize, j: usize) -> Rational {
        self.entries.get(&(p, j)).cloned().unwrap_or_else(qz)
    }
}

pub fn q_table(nu: u32, k: usize, p_max: usize) -> QTable {
    let mut e = BTreeMap::new();
    e.insert((0, 0), qi(1));
    for p in 1..=p_max {
        e.insert((p, 0), from_bigint(falling(2 - 2 * k as i64, p as u32)));
        e.insert((p, p), qi(1));
        for j in 1..p {
            let prev = |jj: usize| e.get(&(p - 1, jj)).cloned().unwrap_or_else(qz);
            let v = prev(j - 1) + prev(j) * qi((nu as i64 - 1) * j as i64 - (2 * k as i64 - 3 + p as i64));
            e.insert((p, j), v);
        }
    }
    QTable { nu, k, entries: e }
}

/// Euler face count `F = (nu-1) m - (2g-2)` of a genus-`g` map with `m` vertices.
pub fn face_count(nu: u32, g: usize, m: usize) -> i64 {
    (nu as i64 - 1) * m as i64 - (2 * g as i64 - 2)
}

/// Eigenvalue of `d^2/dw^2` at `w = 1` on `u^m` in `E_g`: `F (F - 1)`.
pub fn lambda(nu: u32, g: usize, m: usize) -> i64 {
    let f = face_count(nu, g, m);
    f * (f - 1)
}

/// The same eigenvalue read from the `Q` table.
pub fn lambda_from_q(t: &QTable, m: usize) -> Rational {
    let nu1 = qi(t.nu as i64 - 1);
    let m = m as i64;
    t.get(2, 0) + &nu1 * t.get(2, 1) * qi(m) + &nu1 * &nu1 * t.get(2, 2) * qi(m * (m - 1))
}

/// Coefficientwise form of the power rule:
/// `((nu-1)m + 2 - 2k)_p = sum_j (nu-1)^j Q_j^{(p,k)} (m)_j`.
pub fn power_rule_holds(t: &QTable, p: usize, m: usize) -> bool {
    let lhs = from_bigint(falling((t.nu as i64 - 1) * m as i64 + 2 - 2 * t.k as i64, p as u32));
    let nu1 = qi(t.nu as i64 - 1);
    let rhs: Rational =
        (0..=p).map(|j| pow_q(&nu1, j as u32) * t.get(p, j) * from_bigint(falling(m as i64, j as u32))).sum();
    lhs == rhs
}

/// `c^{(k,j)}_l` for `j = j0..=j_max`, from `c^{(k,j0)} = seed`; each step
/// lengthens the table by one.
pub fn c_table(nu: u32, k: usize, j0: usize, seed: Vec<Rational>, j_max: usize) -> Vec<Vec<Rational>> {
    let mut c: Vec<Vec<Rational>> = vec![Vec::new(); j0];
    c.push(seed);
    let n = qi(nu as i64);
    for j in j0 + 1..=j_max {
        let prev = &c[j - 1];
        let at = |l: i64| if l < 0 { qz() } else { prev.get(l as usize).cloned().unwrap_or_else(qz) };
        let row = (0..prev.len() + 1)
            .map(|l| {
                let s = 2 * k as i64 + l as i64 + j as i64 - 3;
                at(l as i64) * qi((j as i64 - 1) * nu as i64 - s) + &n * qi(s) * at(l as i64 - 1)
            })
            .collect();
        c.push(row);
    }
    c
}

/// `sum_{j=jlo}^p Q_j^{(p,k)} sum_{r=0}^m (-1)^{j-r} C(j,r) c^{(k,j)}_{m-r}`.
pub fn n_sum(c: &[Vec<Rational>], t: &QTable, p: usize, m: usize, jlo: usize) -> Rational {
    let mut total = qz();
    for j in jlo..=p {
        let qj = t.get(p, j);
        if qj.is_zero() {
            continue;
        }
        let mut inner = qz();
        for r in 0..=m.min(j) {
            let cv = c.get(j).and_then(|row| row.get(m - r)).cloned().unwrap_or_else(qz);
            if cv.is_zero() {
                continue;
            }
            let sign = if (j - r) % 2 == 0 { 1 } else { -1 };
            inner += cv * from_bigint(binomial(j as i64, r as i64)) * qi(sign);
        }
        total += qj * inner;
    }
    total
}

/// Laurent coefficients `c_l` of `e_k - C` at `base^{-(2k-2+l)}`, with `C`
/// the limit at infinity.
pub fn laurent_c(nu: u32, k: usize, e: &RatFn) -> Result<(Rational, Vec<Rational>), GenusError> {
    let c = e.limit_at_infinity().ok_or_else(|| verification("finite limit", format!("e_{k} grows at infinity")))?;
    let lau = (e - &RatFn::constant(c.clone())).laurent_about(&base_poly(nu))?;
    let lo = -(5 * k as i64 - 5);
    let hi = -(2 * k as i64 - 2);
    if let Some((&kk, _)) = lau.iter().find(|(&kk, v)| (kk < lo || kk > hi) && !v.is_zero()) {
        return Err(verification("pole range", format!("e_{k} has a base^{kk} term")));
    }
    let cs = (0..=3 * k - 3).map(|l| lau.get(&(hi - l as i64)).cloned().unwrap_or_else(qz)).collect();
    Ok((c, cs))
}

/// Smallest pole order of `r - r(infinity)` at the base root, `None` if
/// `r` is constant.
pub fn min_pole(nu: u32, r: &RatFn) -> Result<Option<u32>, GenusError> {
    let c = r.limit_at_infinity().ok_or_else(|| verification("finite limit", "rational function grows"))?;
    let lau = (r - &RatFn::constant(c)).laurent_about(&base_poly(nu))?;
    Ok(lau.iter().filter(|(k, v)| **k < 0 && !v.is_zero()).map(|(k, _)| (-k) as u32).min())
}

/// Vanishing sums with the literal base `c^{(k,0)}_l = c^{(k)}_l`,
/// `l <= 3k-4`; returns the first `m < p` with a nonzero sum.
pub fn vanishing_first_failure(nu: u32, k: usize, ck: &[Rational], p: usize) -> Option<usize> {
    let base: Vec<Rational> = ck.iter().take(3 * k - 3).cloned().collect();
    let c = c_table(nu, k, 0, base, p);
    let t = q_table(nu, k, p);
    (0..p).find(|&m| !n_sum(&c, &t, p, m, 0).is_zero())
}

fn sum_over_base(nu: u32, terms: &[(i64, Rational)]) -> Result<RatFn, GenusError> {
    let b = base_poly(nu);
    let mut acc = RatFn::zero();
    for (pw, v) in terms {
        if v.is_zero() {
            continue;
        }
        acc = &acc + &RatFn::new(Poly::constant(v.clone()), b.pow(*pw as u32))?;
    }
    Ok(acc)
}

/// Resummation of `E_k`'s `p`-th `w`-derivative through the `c` recursion,
/// seeded at `j = 1` by `c^{(k,1)}_l = (nu-1)(2k-2+l) c^{(k)}_l`.
pub fn resummed_w_deriv(nu: u32, k: usize, e: &RatFn, p: usize) -> Result<RatFn, GenusError> {
    let (_, ck) = laurent_c(nu, k, e)?;
    let seed = ck.iter().enumerate().map(|(l, v)| v * qi((nu as i64 - 1) * (2 * k as i64 - 2 + l as i64))).collect();
    let c = c_table(nu, k, 1, seed, p);
    let t = q_table(nu, k, p);
    let m_max = 3 * k + 2 * p;
    let terms: Vec<(i64, Rational)> =
        (0..=m_max).map(|m| ((2 * k + m) as i64 - 1, n_sum(&c, &t, p, m, 1))).collect();
    let tail = &RatFn::from_poly(Poly::x()) * &sum_over_base(nu, &terms)?;
    Ok(&e.scale(&from_bigint(falling(2 - 2 * k as i64, p as u32))) + &tail)
}

/// Genus-one derivative data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusOneDerivative {
    pub p: usize,
    /// First `m` in `1..p` where `N_m - nu N_{m-1}` is nonzero.
    pub variant_failure: Option<usize>,
    /// `-N_0/(nu-1)`.
    pub constant: Rational,
    /// The resummation `z sum_m N_m / base^{m+1}` equals the chain rule.
    pub first_form_ok: bool,
    /// The re-expansion in `base^{-m}` with constant `-(p-1)!/12` equals
    /// the chain rule.
    pub unsigned_constant_ok: bool,
    pub min_pole: Option<u32>,
}

pub fn genus_one_derivative(nu: u32, p: usize) -> Result<GenusOneDerivative, GenusError> {
    let (_, e1) = closed_e0_e1(nu)?;
    let direct = e_w_derivs(&e1, 1, p);
    if !direct.is_rational() {
        return Err(verification("genus-one log cancellation", format!("p = {p}")));
    }
    let c = c_table(nu, 1, 1, vec![q(nu as i64 - 1, 12)], p);
    let t = q_table(nu, 1, p);
    let ns: Vec<Rational> = (0..=2 * p).map(|m| n_sum(&c, &t, p, m, 1)).collect();
    let n = qi(nu as i64);
    let variant_failure = (1..p).find(|&m| !(&ns[m] - &n * &ns[m - 1]).is_zero());
    let nu1 = qi(nu as i64 - 1);
    let constant = -&ns[0] / &nu1;
    let first: Vec<(i64, Rational)> = (0..2 * p).map(|m| (m as i64 + 1, ns[m].clone())).collect();
    let first_form = &RatFn::from_poly(Poly::x()) * &sum_over_base(nu, &first)?;
    let second: Vec<(i64, Rational)> =
        (1..=2 * p).map(|m| (m as i64, (&n * &ns[m - 1] - &ns[m]) / &nu1)).collect();
    let unsigned = -from_bigint(factorial(p as u64 - 1)) / qi(12);
    let second_form = &RatFn::constant(unsigned) + &sum_over_base(nu, &second)?;
    Ok(GenusOneDerivative {
        p,
        variant_failure,
        constant,
        first_form_ok: first_form == direct.rat,
        unsigned_constant_ok: second_form == direct.rat,
        min_pole: min_pole(nu, &direct.rat)?,
    })
}

/// `(-1)^{p-1} (p-1)!/12`, the value of `d^p/dw^p E_1` at infinity.
pub fn genus_one_constant(p: usize) -> Rational {
    let s = if p % 2 == 1 { 1 } else { -1 };
    from_bigint(factorial(p as u64 - 1)) * qi(s) / qi(12)
}

/// Planar derivative data comparing the jet formula with the chain rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarJetCheck {
    pub p: usize,
    /// Full symmetric quadratic sum.
    pub symmetric_ok: bool,
    /// Quadratic sum over `j <= floor(p/2)` with doubled prefactor.
    pub half_sum_ok: bool,
}

fn apply_chain(f: &LogRational, shifts: impl Iterator<Item = i64>) -> LogRational {
    shifts.fold(f.clone(), |acc, a| acc.euler_step(a))
}

pub fn planar_jet_check(nu: u32, p: usize) -> Result<PlanarJetCheck, GenusError> {
    if p < 3 {
        return Err(verification("planar jet formula", "requires p >= 3"));
    }
    let (e0, _) = closed_e0_e1(nu)?;
    let direct = e_w_derivs(&e0, 0, p);
    let n = nu as i64;
    let k = q((n - 1).pow(2), 4 * n * (n + 1));
    let one_plus_q0 = q(2 * (2 * n + 1), n - 1);
    let z = LogRational::rational(nu, RatFn::from_poly(Poly::x()));
    // f^{(j)} at w = 1, for f_0 = w z_0(u w^{nu-1})
    let fj: Vec<RatFn> = (0..=p).map(|j| apply_chain(&z, (0..j as i64).map(|i| 1 - i)).rat).collect();
    let h = LogRational::rational(nu, fj[1].div(&fj[0])?);
    let hq = |qq: usize| apply_chain(&h, (0..qq as i64).map(|i| -1 - i)).rat;
    let binom = |a: usize, b: usize| from_bigint(binomial(a as i64, b as i64));
    let sign = if p % 2 == 0 { 1 } else { -1 };
    let common = &(&(&hq(p - 3).scale(&binom(p, 2)) + &hq(p - 2).scale(&qi(p as i64)))
        + &hq(p - 1).scale(&q(1, 2)))
        + &RatFn::constant(from_bigint(factorial(p as u64 - 3)) * qi(sign));
    let linear = (&fj[p] + &fj[p - 1].scale(&qi(p as i64))).scale(&one_plus_q0);
    let full: RatFn = (0..=p).fold(RatFn::zero(), |a, j| &a + &(&fj[j] * &fj[p - j]).scale(&binom(p, j)));
    let half: RatFn = (0..=p / 2).fold(RatFn::zero(), |a, j| &a + &(&fj[j] * &fj[p - j]).scale(&binom(p, j)));
    let symmetric = &common + &(&full - &linear).scale(&k);
    let halved = &common + &(&half.scale(&qi(2)) - &linear).scale(&k);
    Ok(PlanarJetCheck { p, symmetric_ok: symmetric == direct.rat, half_sum_ok: halved == direct.rat })
}

/// The `Q`-table power rule and eigenvalue law over a parameter grid.
pub fn resonance_law_holds(nu_max: u32, g_max: usize, m_max: usize) -> bool {
    (2..=nu_max).all(|nu| {
        (1..=g_max).all(|g| {
            let t = q_table(nu, g, 2);
            t.get(2, 1) == qi(nu as i64 + 2 - 4 * g as i64)
                && (0..=m_max).all(|m| lambda_from_q(&t, m) == qi(lambda(nu, g, m)))
        })
    })
}

/// Exact agreement flag used by the checks below.
fn same(a: &RatFn, b: &RatFn) -> bool {
    (a - b).is_zero()
}

/// All derivative identities for `E_k`, `k >= 2`, at derivative order `p`.
pub fn higher_genus_checks(nu: u32, k: usize, e: &RatFn, p: usize) -> Result<Vec<CheckOutcome>, GenusError> {
    let tag = format!("nu={nu},k={k},p={p}");
    let (_, ck) = laurent_c(nu, k, e)?;
    let direct = e_w_derivs(&LogRational::rational(nu, e.clone()), k, p).rat;
    let resum = resummed_w_deriv(nu, k, e, p)?;
    let bound = (2 * k - 2 + p) as u32;
    let mp = min_pole(nu, &direct)?;
    let t = q_table(nu, k, p);
    let power = (0..=3 * p + 6).all(|m| power_rule_holds(&t, p, m));
    let limit = direct.limit_at_infinity();
    let c = e.limit_at_infinity().unwrap_or_else(qz);
    Ok(vec![
        CheckOutcome::new("power_rule", tag.clone(), power),
        CheckOutcome::new("vanishing_sums", tag.clone(), vanishing_first_failure(nu, k, &ck, p).is_none()),
        CheckOutcome::new("derivative_resummation", tag.clone(), same(&direct, &resum)),
        CheckOutcome::new("derivative_min_pole", tag.clone(), mp.is_none_or(|m| m >= bound)),
        CheckOutcome::new(
            "derivative_constant",
            tag,
            limit == Some(from_bigint(falling(2 - 2 * k as i64, p as u32)) * c),
        ),
    ])
}

pub fn genus_one_checks(nu: u32, p: usize) -> Result<Vec<CheckOutcome>, GenusError> {
    let tag = format!("nu={nu},k=1,p={p}");
    let r = genus_one_derivative(nu, p)?;
    let (_, e1) = closed_e0_e1(nu)?;
    let limit = e_w_derivs(&e1, 1, p).rat.limit_at_infinity();
    Ok(vec![
        CheckOutcome::new("genus_one_vanishing_sums", tag.clone(), r.variant_failure.is_none()),
        CheckOutcome::new("genus_one_resummation", tag.clone(), r.first_form_ok),
        CheckOutcome::new("genus_one_min_pole", tag.clone(), r.min_pole.is_none_or(|m| m >= p as u32)),
        CheckOutcome::new(
            "genus_one_constant",
            tag,
            r.constant == genus_one_constant(p) && limit == Some(genus_one_constant(p)),
        ),
    ])
}

pub fn planar_checks(nu: u32, p: usize) -> Result<Vec<CheckOutcome>, GenusError> {
    let r = planar_jet_check(nu, p)?;
    Ok(vec![CheckOutcome::new("planar_jet_formula", format!("nu={nu},p={p}"), r.symmetric_ok)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_table_examples() {
        for nu in 2..=4 {
            for k in 1..=4 {
                let t = q_table(nu, k, 6);
                for p in 1..=6 {
                    assert_eq!(t.get(p, 0), from_bigint(falling(2 - 2 * k as i64, p as u32)));
                    assert_eq!(t.get(p, p), qi(1));
                }
                assert_eq!(t.get(2, 1), qi(nu as i64 + 2 - 4 * k as i64));
            }
        }
        assert!(resonance_law_holds(4, 4, 30));
    }

    #[test]
    fn resonance_is_at_most_one_face() {
        for nu in 2..=4 {
            for g in 1..=4 {
                for m in 0..=30 {
                    let f = face_count(nu, g, m);
                    assert_eq!(lambda(nu, g, m) == 0, f == 0 || f == 1);
                }
            }
        }
    }

    #[test]
    fn genus_one_identities() {
        for nu in [2, 3] {
            for p in 1..=6 {
                let r = genus_one_derivative(nu, p).unwrap();
                assert_eq!(r.variant_failure, None);
                assert!(r.first_form_ok);
                assert_eq!(r.constant, genus_one_constant(p));
                assert!(r.min_pole.unwrap() >= p as u32);
                // the unsigned constant -(p-1)!/12 is right only for even p
                assert_eq!(r.unsigned_constant_ok, p % 2 == 0);
            }
        }
        // minimal pole order of the second derivative at nu = 2
        assert!(genus_one_derivative(2, 2).unwrap().min_pole.unwrap() >= 2);
    }

    #[test]
    fn planar_jet_formula() {
        for nu in [2, 3] {
            for p in 3..=6 {
                let r = planar_jet_check(nu, p).unwrap();
                assert!(r.symmetric_ok);
                assert_eq!(r.half_sum_ok, p % 2 == 1);
            }
        }
    }

    #[test]
    fn vanishing_sums_hold_for_arbitrary_base() {
        let ck: Vec<Rational> = (0..6).map(|l| q(3 * l as i64 - 7, l as i64 + 2)).collect();
        for p in 1..=6 {
            assert_eq!(vanishing_first_failure(3, 3, &ck, p), None);
        }
    }
}
