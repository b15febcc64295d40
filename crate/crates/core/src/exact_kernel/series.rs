use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Zero};
use serde_json::{json, Value};

use super::poly::{forward_owned, Poly};
use super::rational::{parse_rational, qi, qone, qz, to_string_pq, Rational};
use super::{KernelError, TruncRing};

/// Name of the expansion variable of a [`Series`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// Time variable `s = -u`.
    S,
    /// Lattice coupling `t = t_{2nu}`.
    T,
    T1,
    /// Canonical map variable with `z0 = 1 + c u z0^nu`.
    U,
    /// Fat-graph variable `-t_j`.
    Tau,
    T3,
    /// `t3^2` in the trivalent functional equation.
    Y,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::S => "s",
            Var::T => "t",
            Var::T1 => "t1",
            Var::U => "u",
            Var::Tau => "tau",
            Var::T3 => "t3",
            Var::Y => "y",
        }
    }

    pub fn parse(s: &str) -> Result<Var, KernelError> {
        Ok(match s {
            "s" => Var::S,
            "t" => Var::T,
            "t1" => Var::T1,
            "u" => Var::U,
            "tau" => Var::Tau,
            "t3" => Var::T3,
            "y" => Var::Y,
            _ => return Err(KernelError::Parse(format!("unknown variable {s:?}"))),
        })
    }
}

/// Truncated power series `sum_{k<=T} c_k x^k`. The coefficient vector always
/// has length `T + 1`; binary operations narrow to the smaller truncation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Series {
    var: Var,
    coeffs: Vec<Rational>,
}

impl Series {
    pub fn new(var: Var, coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        Series { var, coeffs }
    }

    pub fn zero(var: Var, trunc: usize) -> Self {
        Series { var, coeffs: vec![qz(); trunc + 1] }
    }

    pub fn constant(var: Var, trunc: usize, c: Rational) -> Self {
        let mut s = Series::zero(var, trunc);
        s.coeffs[0] = c;
        s
    }

    pub fn one(var: Var, trunc: usize) -> Self {
        Series::constant(var, trunc, qone())
    }

    /// `c x^k`, or zero when `k` exceeds the truncation.
    pub fn monomial(var: Var, trunc: usize, k: usize, c: Rational) -> Self {
        let mut s = Series::zero(var, trunc);
        if k <= trunc {
            s.coeffs[k] = c;
        }
        s
    }

    /// The variable itself.
    pub fn x(var: Var, trunc: usize) -> Self {
        Series::monomial(var, trunc, 1, qone())
    }

    pub fn from_poly(var: Var, trunc: usize, p: &Poly) -> Self {
        Series { var, coeffs: (0..=trunc).map(|i| p.coeff(i)).collect() }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^k`; zero beyond the truncation.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(qz)
    }

    pub fn set_coeff(&mut self, k: usize, c: Rational) {
        self.coeffs[k] = c;
    }

    pub fn truncate(&self, trunc: usize) -> Self {
        let t = trunc.min(self.trunc());
        Series { var: self.var, coeffs: self.coeffs[..=t].to_vec() }
    }

    /// Pads with zeros or truncates to exactly `trunc`. Padding is only
    /// meaningful when the series is known to be a polynomial.
    pub fn resize_exact(&self, trunc: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(trunc + 1, qz());
        Series { var: self.var, coeffs: c }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Series { var: self.var, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// `x^k * self`, keeping the truncation.
    pub fn shift_up(&self, k: usize) -> Self {
        let t = self.trunc();
        let mut c = vec![qz(); t + 1];
        for i in 0..=t {
            if i + k <= t {
                c[i + k] = self.coeffs[i].clone();
            }
        }
        Series { var: self.var, coeffs: c }
    }

    /// `sum c_k a^k x^k`, the substitution `x -> a x`.
    pub fn rescale(&self, a: &Rational) -> Self {
        let mut p = qone();
        let mut c = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            c.push(x * &p);
            p *= a;
        }
        Series { var: self.var, coeffs: c }
    }

    pub fn inv(&self) -> Result<Self, KernelError> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(KernelError::NotInvertible);
        }
        let t = self.trunc();
        let a0i = qone() / a0;
        let mut r = vec![qz(); t + 1];
        r[0] = a0i.clone();
        for k in 1..=t {
            let mut s = qz();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    s += &self.coeffs[i] * &r[k - i];
                }
            }
            r[k] = -s * &a0i;
        }
        Ok(Series { var: self.var, coeffs: r })
    }

    pub fn derivative(&self) -> Self {
        if self.trunc() == 0 {
            return Series::zero(self.var, 0);
        }
        Series {
            var: self.var,
            coeffs: (1..=self.trunc()).map(|i| &self.coeffs[i] * qi(i as i64)).collect(),
        }
    }

    /// Antiderivative with zero constant term; truncation grows by one.
    pub fn integral(&self) -> Self {
        let mut c = vec![qz()];
        for (i, a) in self.coeffs.iter().enumerate() {
            c.push(a / qi(i as i64 + 1));
        }
        Series { var: self.var, coeffs: c }
    }

    /// Euler operator `x d/dx`, keeping the truncation.
    pub fn euler(&self) -> Self {
        Series {
            var: self.var,
            coeffs: self.coeffs.iter().enumerate().map(|(i, a)| a * qi(i as i64)).collect(),
        }
    }

    pub fn log(&self) -> Result<Self, KernelError> {
        if !self.coeffs[0].is_one() {
            return Err(KernelError::NonUnitConstant {
                expected: "1".into(),
                found: to_string_pq(&self.coeffs[0]),
            });
        }
        // x L' = x S' / S
        let q = &self.euler() * &self.inv()?;
        let mut c = vec![qz(); self.coeffs.len()];
        for (i, slot) in c.iter_mut().enumerate().skip(1) {
            *slot = q.coeffs[i].clone() / qi(i as i64);
        }
        Ok(Series { var: self.var, coeffs: c })
    }

    pub fn exp(&self) -> Result<Self, KernelError> {
        if !self.coeffs[0].is_zero() {
            return Err(KernelError::NonUnitConstant {
                expected: "0".into(),
                found: to_string_pq(&self.coeffs[0]),
            });
        }
        // E' = A' E, solved coefficientwise
        let t = self.trunc();
        let da = self.euler();
        let mut e = vec![qz(); t + 1];
        e[0] = qone();
        for k in 1..=t {
            let mut s = qz();
            for i in 1..=k {
                if !da.coeffs[i].is_zero() {
                    s += &da.coeffs[i] * &e[k - i];
                }
            }
            e[k] = s / qi(k as i64);
        }
        Ok(Series { var: self.var, coeffs: e })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Series::one(self.var, self.trunc());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(inner(x))`; the result takes the inner series' variable.
    pub fn compose(&self, inner: &Series) -> Result<Self, KernelError> {
        if !inner.coeffs[0].is_zero() {
            return Err(KernelError::NonzeroInnerConstant);
        }
        let t = self.trunc().min(inner.trunc());
        let inner = inner.truncate(t);
        let mut acc = Series::zero(inner.var, t);
        for c in self.coeffs[..=t].iter().rev() {
            acc = &acc * &inner;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// Evaluates a polynomial at this series.
    pub fn eval_poly(&self, p: &Poly) -> Self {
        let mut acc = Series::zero(self.var, self.trunc());
        for c in p.coeffs().iter().rev() {
            acc = &acc * self;
            acc.coeffs[0] += c;
        }
        acc
    }

    pub fn to_json(&self) -> Value {
        json!({
            "var": self.var.name(),
            "trunc": self.trunc(),
            "coeffs": self.coeffs.iter().map(to_string_pq).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, KernelError> {
        let bad = |m: &str| KernelError::Parse(m.to_string());
        let var = Var::parse(v["var"].as_str().ok_or_else(|| bad("missing var"))?)?;
        let trunc = v["trunc"].as_u64().ok_or_else(|| bad("missing trunc"))? as usize;
        let coeffs = v["coeffs"]
            .as_array()
            .ok_or_else(|| bad("missing coeffs"))?
            .iter()
            .map(|c| parse_rational(c.as_str().unwrap_or("")))
            .collect::<Result<Vec<_>, _>>()?;
        if coeffs.len() != trunc + 1 {
            return Err(bad("coefficient count does not match trunc"));
        }
        Ok(Series { var, coeffs })
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.coeffs.iter().map(to_string_pq).collect();
        write!(f, "Series[{}; {}]({})", self.var.name(), self.trunc(), cs.join(", "))
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, o: &Series) -> Series {
        let n = self.coeffs.len().min(o.coeffs.len());
        Series { var: self.var, coeffs: (0..n).map(|i| &self.coeffs[i] + &o.coeffs[i]).collect() }
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, o: &Series) -> Series {
        let n = self.coeffs.len().min(o.coeffs.len());
        Series { var: self.var, coeffs: (0..n).map(|i| &self.coeffs[i] - &o.coeffs[i]).collect() }
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, o: &Series) -> Series {
        let n = self.coeffs.len().min(o.coeffs.len());
        let mut r = vec![qz(); n];
        for (i, a) in self.coeffs[..n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..n - i {
                if !o.coeffs[j].is_zero() {
                    r[i + j] += a * &o.coeffs[j];
                }
            }
        }
        Series { var: self.var, coeffs: r }
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series { var: self.var, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

forward_owned!(Series, Add, add);
forward_owned!(Series, Sub, sub);
forward_owned!(Series, Mul, mul);

impl TruncRing for Series {
    fn zero_like(&self) -> Self {
        Series::zero(self.var, self.trunc())
    }
    fn one_like(&self) -> Self {
        Series::one(self.var, self.trunc())
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn scale_ref(&self, c: &Rational) -> Self {
        self.scale(c)
    }
    fn try_inv(&self) -> Result<Self, KernelError> {
        self.inv()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_kernel::q;

    fn ser(c: &[Rational]) -> Series {
        Series::new(Var::S, c.to_vec())
    }

    #[test]
    fn log_examples() {
        // 1/(1-x) -> x + x^2/2 + x^3/3
        let geo = ser(&[qi(1), qi(1), qi(1), qi(1)]);
        assert_eq!(geo.log().unwrap(), ser(&[qi(0), qi(1), q(1, 2), q(1, 3)]));
        assert!(Series::one(Var::S, 5).log().unwrap().is_zero());
        let s = ser(&[qi(1), qi(1), qi(0), qi(0), qi(0)]);
        assert_eq!(s.log().unwrap(), ser(&[qi(0), qi(1), q(-1, 2), q(1, 3), q(-1, 4)]));
        assert!(ser(&[qi(2), qi(1)]).log().is_err());
    }

    #[test]
    fn compose_examples() {
        let f = ser(&[qi(1), qi(1), qi(0)]);
        let g = ser(&[qi(0), qi(0), qi(1)]);
        assert_eq!(f.compose(&g).unwrap(), ser(&[qi(1), qi(0), qi(1)]));
        let geo = ser(&[qi(1), qi(1), qi(1)]);
        let two_x = ser(&[qi(0), qi(2), qi(0)]);
        assert_eq!(geo.compose(&two_x).unwrap(), ser(&[qi(1), qi(2), qi(4)]));
        let lg = ser(&vec![qi(1); 4]).log().unwrap();
        let inner = ser(&[qi(0), qi(1), qi(1), qi(0)]);
        assert_eq!(lg.compose(&inner).unwrap(), ser(&[qi(0), qi(1), q(3, 2), q(4, 3)]));
        assert_eq!(geo.compose(&geo), Err(KernelError::NonzeroInnerConstant));
    }

    #[test]
    fn truncation_narrows() {
        let a = Series::one(Var::U, 5);
        let b = Series::one(Var::U, 3);
        assert_eq!((&a * &b).trunc(), 3);
        assert_eq!((&a + &b).trunc(), 3);
    }

    #[test]
    fn json_round_trip() {
        let s = ser(&[q(1, 2), q(-3, 1)]);
        assert_eq!(Series::from_json(&s.to_json()).unwrap(), s);
    }
}
