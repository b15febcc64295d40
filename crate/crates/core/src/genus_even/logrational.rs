use std::fmt;

use num::Zero;
use serde_json::{json, Value};

use super::GenusError;
use crate::continuum_even::base_poly;
use crate::exact_kernel::{falling, from_bigint, q, qi, qz, to_string_pq, Poly, RatFn, Rational, Series, Var};

/// `rat(z_0) + log_z * log z_0 + log_d * log(nu - (nu-1) z_0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogRational {
    pub nu: u32,
    pub rat: RatFn,
    pub log_z: Rational,
    pub log_d: Rational,
}

impl LogRational {
    pub fn rational(nu: u32, rat: RatFn) -> Self {
        LogRational { nu, rat, log_z: qz(), log_d: qz() }
    }

    pub fn zero(nu: u32) -> Self {
        Self::rational(nu, RatFn::zero())
    }

    pub fn is_rational(&self) -> bool {
        self.log_z.is_zero() && self.log_d.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        LogRational {
            nu: self.nu,
            rat: &self.rat + &o.rat,
            log_z: &self.log_z + &o.log_z,
            log_d: &self.log_d + &o.log_d,
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        LogRational { nu: self.nu, rat: self.rat.scale(k), log_z: &self.log_z * k, log_d: &self.log_d * k }
    }

    fn base(&self) -> RatFn {
        RatFn::from_poly(base_poly(self.nu))
    }

    /// `d/dz_0`.
    pub fn dz(&self) -> RatFn {
        let nu1 = qi(self.nu as i64 - 1);
        let inv_z = RatFn::new(Poly::one(), Poly::x()).expect("nonzero");
        let inv_d = self.base().recip().expect("nonzero");
        &(&self.rat.derivative() + &inv_z.scale(&self.log_z)) - &inv_d.scale(&(&self.log_d * &nu1))
    }

    /// `d/du = c_nu z^{nu+1}/D d/dz`.
    pub fn du(&self, c_nu: &Rational) -> Self {
        let factor = RatFn::new(Poly::x().pow(self.nu + 1).scale(c_nu), base_poly(self.nu)).expect("nonzero");
        Self::rational(self.nu, &factor * &self.dz())
    }

    /// `theta = u d/du = z(z-1)/D d/dz`.
    pub fn theta(&self) -> Self {
        let factor = RatFn::new(Poly::from_ints(&[0, -1, 1]), base_poly(self.nu)).expect("nonzero");
        Self::rational(self.nu, &factor * &self.dz())
    }

    /// `((nu-1) theta + a) self`.
    pub fn euler_step(&self, a: i64) -> Self {
        let t = self.theta().scale(&qi(self.nu as i64 - 1));
        t.add(&self.scale(&qi(a)))
    }

    /// Power series in `u` given the planar series `z0(u)`.
    pub fn to_series(&self, z0: &Series, trunc: usize) -> Result<Series, GenusError> {
        let z0 = z0.truncate(trunc);
        let mut s = self.rat.to_series(&z0, trunc)?;
        if !self.log_z.is_zero() {
            s = &s + &z0.log()?.scale(&self.log_z);
        }
        if !self.log_d.is_zero() {
            s = &s + &z0.eval_poly(&base_poly(self.nu)).log()?.scale(&self.log_d);
        }
        Ok(s.with_var(Var::U))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rational": self.rat.to_json(&base_poly(self.nu)),
            "log_z0": to_string_pq(&self.log_z),
            "log_base": to_string_pq(&self.log_d),
        })
    }
}

impl fmt::Display for LogRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rat)?;
        if !self.log_z.is_zero() {
            write!(f, " + ({})*log(z)", self.log_z)?;
        }
        if !self.log_d.is_zero() {
            write!(f, " + ({})*log({} - {}*z)", self.log_d, self.nu, self.nu - 1)?;
        }
        Ok(())
    }
}

/// The closed forms of `e_0` and `e_1`.
pub fn closed_e0_e1(nu: u32) -> Result<(LogRational, LogRational), GenusError> {
    if nu < 2 {
        return Err(GenusError::OutOfRange(nu as usize));
    }
    let n = nu as i64;
    let k = q((n - 1).pow(2), 4 * n * (n + 1));
    let q0 = q(3 * (n + 1), n - 1);
    // K (z - 1)(z - q0)
    let quad = &Poly::linear(qi(-1), qi(1)) * &Poly::linear(-q0, qi(1));
    let e0 = LogRational { nu, rat: RatFn::from_poly(quad.scale(&k)), log_z: q(1, 2), log_d: qz() };
    let e1 = LogRational { nu, rat: RatFn::zero(), log_z: qz(), log_d: q(-1, 12) };
    Ok((e0, e1))
}

/// `p`-th `w`-derivative of `E_h = w^{2-2h} e_h(u w^{nu-1})` at `w = 1`,
/// by the chain rule on the closed form.
pub fn e_w_derivs(e: &LogRational, h: usize, p: usize) -> LogRational {
    let mut f = e.clone();
    for i in 0..p {
        f = f.euler_step(2 - 2 * h as i64 - i as i64);
    }
    f
}

/// The same derivative on a `u`-series: `u^m` picks up
/// `((nu-1) m + 2 - 2h)_p`.
pub fn e_w_derivs_series(e: &Series, nu: u32, h: usize, p: usize) -> Series {
    let c = (0..=e.trunc())
        .map(|m| {
            let a = (nu as i64 - 1) * m as i64 + 2 - 2 * h as i64;
            e.coeff(m) * from_bigint(falling(a, p as u32))
        })
        .collect();
    Series::new(e.var(), c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::continuum_even::catalan_data;
    use crate::exact_kernel::qone;

    #[test]
    fn closed_forms_and_derivatives() {
        let (e0, e1) = closed_e0_e1(2).unwrap();
        assert_eq!(e0.rat.eval(&qone()).unwrap(), qz());
        // d e0/dz at z = 1
        assert_eq!(e0.dz().eval(&qone()).unwrap(), q(1, 6));
        let d = catalan_data(2, 8).unwrap();
        let s1 = e1.to_series(&d.z0, 8).unwrap();
        assert_eq!(s1.coeff(0), qz());
        assert_eq!(s1.coeff(1), qi(1));

        let c = d.c_nu.clone();
        let logz = LogRational { nu: 2, rat: RatFn::zero(), log_z: qone(), log_d: qz() };
        let expect = RatFn::new(Poly::x().pow(2).scale(&c), base_poly(2)).unwrap();
        assert_eq!(logz.du(&c).rat, expect);
        let k = LogRational::rational(2, RatFn::constant(qi(5)));
        assert!(k.du(&c).rat.is_zero());
        let logd = LogRational { nu: 2, rat: RatFn::zero(), log_z: qz(), log_d: qone() };
        let expect = RatFn::new(Poly::x().pow(3).scale(&-c), base_poly(2).pow(2)).unwrap();
        assert_eq!(logd.du(&d.c_nu).rat, expect);
    }

    #[test]
    fn logs_cancel_and_series_agree() {
        let (e0, e1) = closed_e0_e1(3).unwrap();
        let d = catalan_data(3, 10).unwrap();
        assert!(e_w_derivs(&e0, 0, 3).is_rational());
        assert!(!e_w_derivs(&e0, 0, 2).is_rational());
        assert!(e_w_derivs(&e1, 1, 1).is_rational());
        for (e, h) in [(&e0, 0), (&e1, 1)] {
            let s = e.to_series(&d.z0, 10).unwrap();
            for p in 1..=4 {
                let exact = e_w_derivs(e, h, p).to_series(&d.z0, 10).unwrap();
                assert_eq!(exact, e_w_derivs_series(&s, 3, h, p));
            }
        }
    }
}
