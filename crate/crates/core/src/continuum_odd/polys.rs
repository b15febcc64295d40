use std::collections::BTreeMap;
use std::fmt;

use num::Zero;

use super::WSeries;
use crate::checks::CheckOutcome;
use crate::combinatorics::trinomial;
use crate::exact_kernel::{from_bigint, qi, Rational};

/// Polynomial in `h`, `f` and the time symbol `s`, keyed by exponents
/// `[h, f, s]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BivariatePoly {
    terms: BTreeMap<[u32; 3], Rational>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, 0, 0, c)
    }

    pub fn monomial(h: u32, f: u32, s: u32, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term([h, f, s], c);
        p
    }

    fn add_term(&mut self, e: [u32; 3], c: Rational) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.entry(e).or_insert_with(Rational::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, h: u32, f: u32, s: u32) -> Rational {
        self.terms.get(&[h, f, s]).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&qi(-1)))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let mut r = Self::zero();
        for (e, c) in &self.terms {
            r.add_term(*e, c * k);
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                r.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2]], x * y);
            }
        }
        r
    }

    fn partial(&self, i: usize) -> Self {
        let mut r = Self::zero();
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = *e;
                e2[i] -= 1;
                r.add_term(e2, c * qi(e[i] as i64));
            }
        }
        r
    }

    pub fn d_h(&self) -> Self {
        self.partial(0)
    }

    pub fn d_f(&self) -> Self {
        self.partial(1)
    }

    /// Sets `h = 0`.
    pub fn at_h_zero(&self) -> Self {
        let mut r = Self::zero();
        for (e, c) in &self.terms {
            if e[0] == 0 {
                r.add_term(*e, c.clone());
            }
        }
        r
    }

    /// Substitutes `s`-series for `h` and `f`; the symbol `s` becomes a shift.
    pub fn eval(&self, h: &WSeries, f: &WSeries) -> WSeries {
        let t = h.trunc().min(f.trunc());
        let max_h = self.terms.keys().map(|e| e[0]).max().unwrap_or(0);
        let max_f = self.terms.keys().map(|e| e[1]).max().unwrap_or(0);
        let powers = |x: &WSeries, n: u32| {
            let mut v = vec![WSeries::one(t)];
            for i in 1..=n as usize {
                v.push(v[i - 1].mul(x));
            }
            v
        };
        let (hp, fp) = (powers(h, max_h), powers(f, max_f));
        let mut acc = WSeries::zero(t);
        for (e, c) in &self.terms {
            let term = hp[e[0] as usize].mul(&fp[e[1] as usize]).shift(e[2] as usize).scale(c);
            acc = acc.add(&term);
        }
        acc
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            for (name, k) in [("s", e[2]), ("h", e[0]), ("f", e[1])] {
                match k {
                    0 => {}
                    1 => factors.push(name.into()),
                    _ => factors.push(format!("{name}^{k}")),
                }
            }
            if factors.is_empty() {
                write!(out, "{c}")?;
            } else if c == &qi(1) {
                write!(out, "{}", factors.join("*"))?;
            } else {
                write!(out, "{c}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// The matrices `B`, `A` and the flux vector `Psi` for valence `2nu+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddCoeffPolys {
    pub nu: u32,
    pub b11: BivariatePoly,
    pub b12: BivariatePoly,
    pub a11: BivariatePoly,
    pub a12: BivariatePoly,
    pub psi1: BivariatePoly,
    pub psi2: BivariatePoly,
}

fn tri(n: i64, a: i64, b: i64, c: i64) -> Rational {
    from_bigint(trinomial(n, a, b, c))
}

fn sum_terms(range: std::ops::RangeInclusive<i64>, term: impl Fn(i64) -> Option<(Rational, i64, i64)>) -> BivariatePoly {
    let mut p = BivariatePoly::zero();
    for mu in range {
        if let Some((c, eh, ef)) = term(mu) {
            if eh >= 0 && ef >= 0 {
                p = p.add(&BivariatePoly::monomial(eh as u32, ef as u32, 0, c));
            }
        }
    }
    p
}

/// `B_12` summed from `mu = mu_start`.
pub fn b12_from(nu: u32, mu_start: i64) -> BivariatePoly {
    let n = nu as i64;
    sum_terms(mu_start..=n, |mu| Some((tri(2 * n, 2 * mu, n - mu, n - mu), 2 * mu, n - mu)))
}

pub fn odd_coeff_polys(nu: u32) -> OddCoeffPolys {
    let n = nu as i64;
    let j = qi(2 * n + 1);
    let s = BivariatePoly::monomial(0, 0, 1, j.clone());
    let b11 = sum_terms(1..=n, |mu| Some((tri(2 * n, 2 * mu - 1, n - mu, n - mu + 1), 2 * mu - 1, n - mu + 1)));
    let b12 = b12_from(nu, 0);
    let inner11 = sum_terms(0..=n - 1, |mu| {
        Some((tri(2 * n, 2 * mu + 1, n - mu - 1, n - mu) * qi(n - mu), 2 * mu + 1, n - mu - 1))
    });
    let a11 = BivariatePoly::constant(qi(1)).add(&s.mul(&inner11));
    let inner12 = sum_terms(0..=n - 1, |mu| {
        Some((tri(2 * n, 2 * mu, n - mu - 1, n - mu + 1) * qi(n - mu + 1), 2 * mu, n - mu - 1))
    });
    let a12 = s.mul(&inner12);
    let psi1 = sum_terms(0..=n, |mu| Some((tri(2 * n + 1, 2 * mu, n - mu, n - mu + 1), 2 * mu, n - mu + 1)));
    let psi2 =
        sum_terms(0..=n, |mu| Some((tri(2 * n + 1, 2 * mu + 1, n - mu - 1, n - mu + 1), 2 * mu + 1, n - mu + 1)));
    OddCoeffPolys { nu, b11, b12, a11, a12, psi1, psi2 }
}

/// The conservation-form and hodograph-consistency identities.
pub fn verify_odd_identities(p: &OddCoeffPolys) -> Vec<CheckOutcome> {
    let j = qi(2 * p.nu as i64 + 1);
    let js = BivariatePoly::monomial(0, 0, 1, j.clone());
    let f = BivariatePoly::monomial(0, 1, 0, qi(1));
    let one = BivariatePoly::constant(qi(1));
    let tag = format!("nu={}", p.nu);
    let checks = [
        ("flux_h_derivative", p.psi1.d_h() == p.b11.scale(&j)),
        ("flux_f_derivative", p.psi1.d_f() == p.b12.scale(&j)),
        ("second_flux_f_derivative", p.psi2.d_f() == p.b11.scale(&j)),
        ("second_flux_h_derivative", p.psi2.d_h().add(&p.psi1) == f.mul(&p.b12).scale(&j)),
        ("string_diagonal_from_b12", p.a11 == one.add(&js.mul(&p.b12.d_h()))),
        ("string_diagonal_from_b11", p.a11 == one.add(&js.mul(&p.b11.d_f()))),
        ("string_offdiagonal", p.a12 == js.mul(&p.b12.d_f())),
        ("string_lower_offdiagonal", f.mul(&p.a12) == js.mul(&p.b11.d_h())),
    ];
    checks.into_iter().map(|(name, ok)| CheckOutcome::new(name, tag.clone(), ok)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples_at_nu_one() {
        let p = odd_coeff_polys(1);
        assert_eq!(p.psi1.to_string(), "3*h^2*f + 3*f^2");
        assert_eq!(p.b11.to_string(), "2*h*f");
        assert_eq!(p.b12.to_string(), "h^2 + 2*f");
        assert_eq!(p.a12.to_string(), "6*s");
        assert_eq!(p.a11.to_string(), "6*s*h + 1");
        // starting the sum at mu = 1 loses the f term
        assert_eq!(b12_from(1, 1).to_string(), "h^2");
    }

    #[test]
    fn identities_hold() {
        for nu in 1..=4 {
            let p = odd_coeff_polys(nu);
            assert!(verify_odd_identities(&p).iter().all(|c| c.pass), "nu={nu}");
            // with h = 0 the flux is a pure Burgers flux
            let n = nu as i64;
            assert_eq!(p.psi1.at_h_zero(), BivariatePoly::monomial(0, nu + 1, 0, tri(2 * n + 1, 0, n, n + 1)));
        }
        let mut p = odd_coeff_polys(1);
        p.b12 = b12_from(1, 1);
        assert!(!verify_odd_identities(&p).iter().all(|c| c.pass));
    }
}
