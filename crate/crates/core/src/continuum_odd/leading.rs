use serde_json::{json, Value};

use super::{odd_coeff_polys, OddCoeffPolys, OddError};
use crate::exact_kernel::{q, qi, to_string_pq, Poly, Rational};

/// Truncated series in `s` whose coefficients are polynomials in `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WSeries {
    coeffs: Vec<Poly>,
}

impl WSeries {
    pub fn zero(trunc: usize) -> Self {
        WSeries { coeffs: vec![Poly::zero(); trunc + 1] }
    }

    pub fn one(trunc: usize) -> Self {
        Self::constant(trunc, Poly::one())
    }

    pub fn constant(trunc: usize, p: Poly) -> Self {
        let mut s = Self::zero(trunc);
        s.coeffs[0] = p;
        s
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Poly {
        &self.coeffs[k]
    }

    pub fn add(&self, o: &Self) -> Self {
        let t = self.trunc().min(o.trunc());
        WSeries { coeffs: (0..=t).map(|k| &self.coeffs[k] + &o.coeffs[k]).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let t = self.trunc().min(o.trunc());
        WSeries { coeffs: (0..=t).map(|k| &self.coeffs[k] - &o.coeffs[k]).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        WSeries { coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let t = self.trunc().min(o.trunc());
        let mut c = vec![Poly::zero(); t + 1];
        for i in 0..=t {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=t - i {
                if !o.coeffs[j].is_zero() {
                    c[i + j] = &c[i + j] + &(&self.coeffs[i] * &o.coeffs[j]);
                }
            }
        }
        WSeries { coeffs: c }
    }

    /// Multiplies by `s^k`.
    pub fn shift(&self, k: usize) -> Self {
        let t = self.trunc();
        let mut c = vec![Poly::zero(); t + 1];
        for i in 0..=t {
            if i + k <= t {
                c[i + k] = self.coeffs[i].clone();
            }
        }
        WSeries { coeffs: c }
    }

    pub fn d_w(&self) -> Self {
        WSeries { coeffs: self.coeffs.iter().map(|p| p.derivative()).collect() }
    }

    /// `d/ds`; the truncation drops by one.
    pub fn d_s(&self) -> Self {
        let t = self.trunc();
        WSeries { coeffs: (1..=t).map(|k| self.coeffs[k].scale(&qi(k as i64))).collect() }
    }

    pub fn truncate(&self, t: usize) -> Self {
        WSeries { coeffs: self.coeffs[..=t.min(self.trunc())].to_vec() }
    }

    /// First order with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|p| !p.is_zero())
    }

    /// Whether only even (`parity = 0`) or odd (`parity = 1`) powers of `s` occur.
    pub fn has_parity(&self, parity: usize) -> bool {
        self.coeffs.iter().enumerate().all(|(k, p)| k % 2 == parity || p.is_zero())
    }

    pub fn to_json(&self) -> Value {
        let c: Vec<Vec<String>> = self.coeffs.iter().map(|p| p.coeffs().iter().map(to_string_pq).collect()).collect();
        json!({ "var": "s", "inner_var": "w", "coeffs": c })
    }
}

/// Leading-order pair `(h_0, f_0)` solving the hodograph relations
/// `h + (2nu+1) s B_12 = 0`, `f + (2nu+1) s B_11 = w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddLeadingPair {
    pub nu: u32,
    pub trunc: usize,
    pub h0: WSeries,
    pub f0: WSeries,
}

pub fn solve_leading_odd(nu: u32, trunc: usize) -> Result<OddLeadingPair, OddError> {
    if nu == 0 {
        return Err(OddError::OutOfRange(nu));
    }
    let p = odd_coeff_polys(nu);
    let j = qi(2 * nu as i64 + 1);
    let w = WSeries::constant(trunc, Poly::x());
    let (mut h, mut f) = (WSeries::zero(trunc), w.clone());
    // each pass fixes one more order in s
    for _ in 0..=trunc {
        let nh = p.b12.eval(&h, &f).shift(1).scale(&-&j);
        let nf = w.sub(&p.b11.eval(&h, &f).shift(1).scale(&j));
        if nh == h && nf == f {
            break;
        }
        h = nh;
        f = nf;
    }
    let phi1 = h.add(&p.b12.eval(&h, &f).shift(1).scale(&j));
    let phi2 = f.add(&p.b11.eval(&h, &f).shift(1).scale(&j)).sub(&w);
    for (name, r) in [("hodograph first relation", phi1), ("hodograph second relation", phi2)] {
        if let Some(order) = r.valuation() {
            return Err(OddError::Verification { check: name.into(), order });
        }
    }
    Ok(OddLeadingPair { nu, trunc, h0: h, f0: f })
}

/// Residuals of the leading-order Toda system, valid through `s^{T-1}`.
pub fn toda_residuals(pair: &OddLeadingPair, p: &OddCoeffPolys) -> (WSeries, WSeries) {
    let t = pair.trunc - 1;
    let j = qi(2 * pair.nu as i64 + 1);
    let (h, f) = (&pair.h0, &pair.f0);
    let (hw, fw) = (h.d_w().truncate(t), f.d_w().truncate(t));
    let b11 = p.b11.eval(h, f).truncate(t);
    let b12 = p.b12.eval(h, f).truncate(t);
    let r1 = h.d_s().add(&b11.mul(&hw).add(&b12.mul(&fw)).scale(&j));
    let r2 = f.d_s().add(&f.truncate(t).mul(&b12).mul(&hw).add(&b11.mul(&fw)).scale(&j));
    (r1, r2)
}

/// Residuals of the conservation-law form.
pub fn law_residuals(pair: &OddLeadingPair, p: &OddCoeffPolys) -> (WSeries, WSeries) {
    let t = pair.trunc - 1;
    let (h, f) = (&pair.h0, &pair.f0);
    let psi1 = p.psi1.eval(h, f);
    let psi2 = p.psi2.eval(h, f);
    let r1 = h.d_s().add(&psi1.d_w().truncate(t));
    let density = f.add(&h.mul(h).scale(&q(1, 2)));
    let r2 = density.d_s().add(&psi2.add(&h.mul(&psi1)).d_w().truncate(t));
    (r1, r2)
}

/// Residuals of the string system with left side `(0, 1)`.
pub fn string_residuals(pair: &OddLeadingPair, p: &OddCoeffPolys) -> (WSeries, WSeries) {
    let (h, f) = (&pair.h0, &pair.f0);
    let t = pair.trunc;
    let (hw, fw) = (h.d_w(), f.d_w());
    let a11 = p.a11.eval(h, f);
    let a12 = p.a12.eval(h, f);
    let r1 = a11.mul(&hw).add(&a12.mul(&fw));
    let r2 = f.mul(&a12).mul(&hw).add(&a11.mul(&fw)).sub(&WSeries::one(t));
    (r1, r2)
}

/// Residuals of the string system with the scaled left side `s (0, 1)`.
pub fn scaled_string_residual(pair: &OddLeadingPair, p: &OddCoeffPolys) -> WSeries {
    let (h, f) = (&pair.h0, &pair.f0);
    let (hw, fw) = (h.d_w(), f.d_w());
    let a11 = p.a11.eval(h, f);
    let a12 = p.a12.eval(h, f);
    f.mul(&a12).mul(&hw).add(&a11.mul(&fw)).sub(&WSeries::one(pair.trunc).shift(1))
}

fn first_bad(r: &(WSeries, WSeries)) -> Option<usize> {
    match (r.0.valuation(), r.1.valuation()) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    }
}

/// Outcome of one system check: `Ok(order)` means exact through `s^order`.
pub fn check_system(name: &str, r: &(WSeries, WSeries)) -> Result<usize, OddError> {
    match first_bad(r) {
        None => Ok(r.0.trunc().min(r.1.trunc())),
        Some(order) => Err(OddError::Verification { check: name.into(), order }),
    }
}

impl OddLeadingPair {
    /// `h_0` odd and `f_0` even in `s`.
    pub fn symmetric(&self) -> bool {
        self.h0.has_parity(1) && self.f0.has_parity(0)
    }
}

/// Shorthand for the zero polynomial check used in reports.
pub fn is_zero_series(s: &WSeries) -> bool {
    s.valuation().is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_iterate_at_nu_one() {
        let pair = solve_leading_odd(1, 4).unwrap();
        assert_eq!(pair.h0.coeff(1), &Poly::from_ints(&[0, -6]));
        assert_eq!(pair.h0.coeff(0), &Poly::zero());
        assert_eq!(pair.f0.coeff(0), &Poly::x());
        assert_eq!(pair.f0.coeff(1), &Poly::zero());
    }

    #[test]
    fn systems_hold() {
        for nu in 1..=3 {
            let p = odd_coeff_polys(nu);
            let pair = solve_leading_odd(nu, 8).unwrap();
            assert!(pair.symmetric());
            assert_eq!(check_system("toda", &toda_residuals(&pair, &p)), Ok(7));
            assert_eq!(check_system("law", &law_residuals(&pair, &p)), Ok(7));
            assert_eq!(check_system("string", &string_residuals(&pair, &p)), Ok(8));
            assert!(!is_zero_series(&scaled_string_residual(&pair, &p)));
        }
    }
}
