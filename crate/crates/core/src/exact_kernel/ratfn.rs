use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::Zero;
use serde_json::{json, Value};

use super::poly::{forward_owned, Poly};
use super::rational::{parse_rational, qone, qz, to_string_pq, Rational};
use super::series::Series;
use super::KernelError;

/// Reduced rational function `num/den` in `z0`, with `den` monic and
/// `gcd(num, den) = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self, KernelError> {
        if den.is_zero() {
            return Err(KernelError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFn::zero());
        }
        let g = Poly::gcd(&num, &den);
        let (n, _) = num.div_rem(&g)?;
        let (d, _) = den.div_rem(&g)?;
        let l = qone() / d.lead();
        Ok(RatFn { num: n.scale(&l), den: d.scale(&l) })
    }

    pub fn zero() -> Self {
        RatFn { num: Poly::zero(), den: Poly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        RatFn { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFn { num: p, den: Poly::one() }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational, KernelError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(KernelError::PoleAtBasepoint);
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return RatFn::zero();
        }
        RatFn { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn recip(&self) -> Result<Self, KernelError> {
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RatFn) -> Result<Self, KernelError> {
        Ok(self * &o.recip()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFn { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// `d/dz0`.
    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFn::new(n, &self.den * &self.den).expect("nonzero denominator")
    }

    /// Finite limit as `z0 -> infinity`, or `None` when the function grows.
    pub fn limit_at_infinity(&self) -> Option<Rational> {
        let dn = self.num.degree();
        let dd = self.den.degree().unwrap_or(0);
        match dn {
            None => Some(qz()),
            Some(n) if n < dd => Some(qz()),
            Some(n) if n == dd => Some(self.num.lead() / self.den.lead()),
            _ => None,
        }
    }

    /// Order of the pole at `a` (0 when regular there).
    pub fn pole_order_at(&self, a: &Rational) -> usize {
        self.den.root_multiplicity(a)
    }

    /// Multiplicity of the root `a` of the numerator.
    pub fn zero_order_at(&self, a: &Rational) -> usize {
        self.num.root_multiplicity(a)
    }

    /// `p` with `den = monic(base)^p`, if the denominator has that form.
    pub fn base_power(&self, base: &Poly) -> Option<u32> {
        let b = base.monic();
        let bd = b.degree()?;
        if bd == 0 {
            return None;
        }
        let dd = self.den.degree().unwrap_or(0);
        if dd % bd != 0 {
            return None;
        }
        let p = (dd / bd) as u32;
        (b.pow(p) == self.den).then_some(p)
    }

    /// Laurent expansion in powers of a linear `base = b0 + b1 z`:
    /// returns `k -> c_k` with `self = sum_k c_k base^k`. Fails unless the
    /// only pole is at the root of `base`.
    pub fn laurent_about(&self, base: &Poly) -> Result<BTreeMap<i64, Rational>, KernelError> {
        if base.degree() != Some(1) {
            return Err(KernelError::Parse("Laurent base must be linear".into()));
        }
        let (b0, b1) = (base.coeff(0), base.coeff(1));
        // z = (D - b0)/b1
        let zd = Poly::linear(-&b0 / &b1, qone() / &b1);
        let nd = self.num.compose(&zd);
        let dd = self.den.compose(&zd);
        let p = dd.degree().unwrap_or(0);
        let c = dd.lead();
        if dd != Poly::new([vec![qz(); p], vec![c.clone()]].concat()) {
            return Err(KernelError::Parse("denominator is not a power of the base".into()));
        }
        let mut out = BTreeMap::new();
        for (i, a) in nd.coeffs().iter().enumerate() {
            if !a.is_zero() {
                out.insert(i as i64 - p as i64, a / &c);
            }
        }
        Ok(out)
    }

    /// JSON form with the denominator written as `den_base^den_pow` when it
    /// is a power of `base`; otherwise `den_base` is the full denominator.
    pub fn to_json(&self, base: &Poly) -> Value {
        let enc = |p: &Poly| p.coeffs().iter().map(to_string_pq).collect::<Vec<_>>();
        match self.base_power(base) {
            Some(p) => {
                // den = (base/lead)^p
                let factor = crate::exact_kernel::rational::pow_q(&base.lead(), p);
                json!({
                    "var": "z0",
                    "num": enc(&self.num.scale(&factor)),
                    "den_base": enc(base),
                    "den_pow": p,
                })
            }
            None => json!({
                "var": "z0",
                "num": enc(&self.num),
                "den_base": enc(&self.den),
                "den_pow": 1,
            }),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self, KernelError> {
        let dec = |key: &str| -> Result<Poly, KernelError> {
            let arr = v[key]
                .as_array()
                .ok_or_else(|| KernelError::Parse(format!("missing {key}")))?;
            Ok(Poly::new(
                arr.iter()
                    .map(|c| parse_rational(c.as_str().unwrap_or("")))
                    .collect::<Result<Vec<_>, _>>()?,
            ))
        };
        let p = v["den_pow"].as_u64().ok_or_else(|| KernelError::Parse("missing den_pow".into()))?;
        RatFn::new(dec("num")?, dec("den_base")?.pow(p as u32))
    }

    /// Series of `self(Z)`.
    pub fn to_series(&self, z: &Series, trunc: usize) -> Result<Series, KernelError> {
        ratfn_to_series(self, z, trunc)
    }
}

/// Expands `R(Z(x))` to order `trunc`.
pub fn ratfn_to_series(r: &RatFn, z: &Series, trunc: usize) -> Result<Series, KernelError> {
    let z = z.truncate(trunc);
    let d = z.eval_poly(&r.den);
    if d.coeff(0).is_zero() {
        return Err(KernelError::PoleAtBasepoint);
    }
    Ok(&z.eval_poly(&r.num) * &d.inv()?)
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, o: &RatFn) -> RatFn {
        if self.den == o.den {
            return RatFn::new(&self.num + &o.num, self.den.clone()).expect("nonzero");
        }
        RatFn::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
            .expect("nonzero")
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, o: &RatFn) -> RatFn {
        self + &(-o)
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, o: &RatFn) -> RatFn {
        RatFn::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero")
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: -&self.num, den: self.den.clone() }
    }
}

forward_owned!(RatFn, Add, add);
forward_owned!(RatFn, Sub, sub);
forward_owned!(RatFn, Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_kernel::{q, qi, Var};

    #[test]
    fn normalize_examples() {
        let zm1 = Poly::from_ints(&[-1, 1]);
        assert_eq!(RatFn::new(zm1.clone(), zm1.clone()).unwrap(), RatFn::constant(qi(1)));
        let r = RatFn::new(Poly::from_ints(&[2, 2]), Poly::from_ints(&[4])).unwrap();
        assert_eq!(r.num(), &Poly::new(vec![q(1, 2), q(1, 2)]));
        assert_eq!(r.den(), &Poly::one());
        let r = RatFn::new(&zm1 * &Poly::from_ints(&[-2, 1]), Poly::from_ints(&[-2, 1])).unwrap();
        assert_eq!(r, RatFn::from_poly(zm1));
        assert!(RatFn::new(Poly::one(), Poly::zero()).is_err());
    }

    #[test]
    fn series_examples() {
        let r = RatFn::new(Poly::one(), Poly::from_ints(&[2, -1])).unwrap();
        let z = Series::new(Var::S, vec![qi(1), qi(1), qi(0)]);
        assert_eq!(r.to_series(&z, 2).unwrap(), Series::new(Var::S, vec![qi(1); 3]));
        let id = RatFn::from_poly(Poly::x());
        assert_eq!(id.to_series(&z, 1).unwrap(), z.truncate(1));
        let pole = RatFn::new(Poly::one(), Poly::from_ints(&[-1, 1])).unwrap();
        assert_eq!(pole.to_series(&z, 2), Err(KernelError::PoleAtBasepoint));
    }

    #[test]
    fn laurent_and_json() {
        let base = Poly::from_ints(&[2, -1]);
        let r = RatFn::new(Poly::from_ints(&[0, 1]), base.pow(3)).unwrap();
        // z/(2-z)^3 = (2 - D)/D^3
        let l = r.laurent_about(&base).unwrap();
        assert_eq!(l.get(&-3), Some(&qi(2)));
        assert_eq!(l.get(&-2), Some(&qi(-1)));
        assert_eq!(r.base_power(&base), Some(3));
        assert_eq!(RatFn::from_json(&r.to_json(&base)).unwrap(), r);
        assert_eq!(r.limit_at_infinity(), Some(qi(0)));
    }
}
