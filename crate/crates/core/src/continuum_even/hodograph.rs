use num::Zero;

use super::ContinuumError;
use crate::exact_kernel::{qi, qz, Rational, Series};

/// `sum_m a_m u^m w^{(nu-1)m + offset}`: a series in `u` whose coefficients
/// are single `w`-monomials, as for self-similar profiles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSeries {
    pub nu: u32,
    pub offset: i64,
    pub coeffs: Vec<Rational>,
}

impl HomSeries {
    /// `f_g(u, w) = w^{1-2g} z_g(u w^{nu-1})`.
    pub fn self_similar(z: &Series, nu: u32, g: usize) -> Self {
        HomSeries { nu, offset: 1 - 2 * g as i64, coeffs: z.coeffs().to_vec() }
    }

    /// The monomial `w`.
    pub fn w(nu: u32, trunc: usize) -> Self {
        let mut c = vec![qz(); trunc + 1];
        c[0] = qi(1);
        HomSeries { nu, offset: 1, coeffs: c }
    }

    /// The monomial `u`.
    pub fn u(nu: u32, trunc: usize) -> Self {
        let mut c = vec![qz(); trunc + 1];
        if trunc >= 1 {
            c[1] = qi(1);
        }
        HomSeries { nu, offset: -(nu as i64 - 1), coeffs: c }
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Exponent of `w` in the coefficient of `u^m`.
    pub fn w_exponent(&self, m: usize) -> i64 {
        (self.nu as i64 - 1) * m as i64 + self.offset
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let t = self.trunc().min(o.trunc());
        let mut c = vec![qz(); t + 1];
        for i in 0..=t {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=t - i {
                c[i + j] += &self.coeffs[i] * &o.coeffs[j];
            }
        }
        HomSeries { nu: self.nu, offset: self.offset + o.offset, coeffs: c }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = HomSeries { nu: self.nu, offset: 0, coeffs: vec![qz(); self.trunc() + 1] };
        acc.coeffs[0] = qi(1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale(&self, k: &Rational) -> Self {
        HomSeries { nu: self.nu, offset: self.offset, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    fn combine(&self, o: &Self, sign: i64) -> Result<Self, ContinuumError> {
        let t = self.trunc().min(o.trunc());
        let mut c: Vec<Rational> = self.coeffs[..=t].to_vec();
        for (i, x) in o.coeffs[..=t].iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if o.offset != self.offset {
                return Err(ContinuumError::Structure("adding series of different w-weight".into()));
            }
            c[i] += x * qi(sign);
        }
        Ok(HomSeries { nu: self.nu, offset: self.offset, coeffs: c })
    }

    pub fn add(&self, o: &Self) -> Result<Self, ContinuumError> {
        self.combine(o, 1)
    }

    pub fn sub(&self, o: &Self) -> Result<Self, ContinuumError> {
        self.combine(o, -1)
    }

    pub fn d_w(&self) -> Self {
        let c = (0..=self.trunc()).map(|m| &self.coeffs[m] * qi(self.w_exponent(m))).collect();
        HomSeries { nu: self.nu, offset: self.offset - 1, coeffs: c }
    }

    /// `d/du`; truncation drops by one.
    pub fn d_u(&self) -> Self {
        let c = (1..=self.trunc()).map(|m| &self.coeffs[m] * qi(m as i64)).collect();
        HomSeries { nu: self.nu, offset: self.offset + self.nu as i64 - 1, coeffs: c }
    }
}

/// Burgers residual `f_u - (c_nu/(nu+1)) d_w f^{nu+1}` for `f_0 = w z_0(u w^{nu-1})`.
pub fn burgers_residual(nu: u32, c: &Rational, z0: &Series) -> Result<HomSeries, ContinuumError> {
    let f = HomSeries::self_similar(z0, nu, 0);
    let flux = f.pow(nu + 1).d_w().scale(&(c / qi(nu as i64 + 1)));
    f.d_u().sub(&flux)
}

/// Hodograph residual `w - f_0 + c_nu u f_0^nu`.
pub fn hodograph_residual(nu: u32, c: &Rational, z0: &Series) -> Result<HomSeries, ContinuumError> {
    let t = z0.trunc();
    let f = HomSeries::self_similar(z0, nu, 0);
    let cu = HomSeries::u(nu, t).mul(&f.pow(nu)).scale(c);
    HomSeries::w(nu, t).sub(&f)?.add(&cu)
}

fn zero_or_fail(r: HomSeries, check: &str) -> Result<usize, ContinuumError> {
    match r.valuation() {
        None => Ok(r.trunc()),
        Some(order) => Err(ContinuumError::Verification { check: check.into(), order }),
    }
}

pub fn verify_burgers(nu: u32, c: &Rational, z0: &Series) -> Result<usize, ContinuumError> {
    zero_or_fail(burgers_residual(nu, c, z0)?, "inviscid Burgers equation")
}

pub fn verify_hodograph(nu: u32, c: &Rational, z0: &Series) -> Result<usize, ContinuumError> {
    zero_or_fail(hodograph_residual(nu, c, z0)?, "hodograph relation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::continuum_even::catalan_data;

    #[test]
    fn burgers_and_hodograph() {
        for nu in 1..=3 {
            let d = catalan_data(nu, 10).unwrap();
            assert_eq!(verify_burgers(nu, &d.c_nu, &d.z0), Ok(9));
            assert_eq!(verify_hodograph(nu, &d.c_nu, &d.z0), Ok(10));
        }
        // at u = 0 the flow speed is c_nu w^nu
        let d = catalan_data(2, 4).unwrap();
        let fu = HomSeries::self_similar(&d.z0, 2, 0).d_u();
        assert_eq!((fu.coeffs[0].clone(), fu.w_exponent(0)), (qi(12), 2));
    }
}
