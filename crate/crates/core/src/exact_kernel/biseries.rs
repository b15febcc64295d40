use num::{One, Zero};

use super::rational::{qi, qone, qz, to_string_pq, Rational};
use super::series::{Series, Var};
use super::{KernelError, TruncRing};

/// Bivariate series in `(t1, t)` truncated at total degree `T`.
/// `c[a][b]` is the coefficient of `t1^a t^b`, with `a + b <= T`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiSeries {
    trunc: usize,
    c: Vec<Vec<Rational>>,
}

impl BiSeries {
    pub fn zero(trunc: usize) -> Self {
        BiSeries { trunc, c: (0..=trunc).map(|a| vec![qz(); trunc - a + 1]).collect() }
    }

    pub fn constant(trunc: usize, v: Rational) -> Self {
        let mut s = BiSeries::zero(trunc);
        s.c[0][0] = v;
        s
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn coeff(&self, a: usize, b: usize) -> Rational {
        if a + b > self.trunc {
            return qz();
        }
        self.c[a][b].clone()
    }

    pub fn set(&mut self, a: usize, b: usize, v: Rational) {
        self.c[a][b] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().flatten().all(|x| x.is_zero())
    }

    pub fn truncate(&self, trunc: usize) -> Self {
        let t = trunc.min(self.trunc);
        let mut r = BiSeries::zero(t);
        for a in 0..=t {
            for b in 0..=t - a {
                r.c[a][b] = self.c[a][b].clone();
            }
        }
        r
    }

    /// The `t1 = 0` slice as a series in `t`.
    pub fn t_slice(&self) -> Series {
        Series::new(Var::T, self.c[0].clone())
    }

    /// Lowest-order nonzero term `(total degree, a, b)`, scanning by total
    /// degree and then by `t1` power.
    pub fn first_nonzero(&self) -> Option<(usize, usize, usize)> {
        for d in 0..=self.trunc {
            for a in 0..=d {
                if !self.c[a][d - a].is_zero() {
                    return Some((d, a, d - a));
                }
            }
        }
        None
    }

    pub fn mul(&self, o: &Self) -> Self {
        let t = self.trunc.min(o.trunc);
        let mut r = BiSeries::zero(t);
        for a1 in 0..=t {
            for b1 in 0..=t - a1 {
                let x = &self.c[a1][b1];
                if x.is_zero() {
                    continue;
                }
                for a2 in 0..=t - a1 - b1 {
                    for b2 in 0..=t - a1 - b1 - a2 {
                        let y = &o.c[a2][b2];
                        if !y.is_zero() {
                            r.c[a1 + a2][b1 + b2] += x * y;
                        }
                    }
                }
            }
        }
        r
    }

    fn zip(&self, o: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let t = self.trunc.min(o.trunc);
        let mut r = BiSeries::zero(t);
        for a in 0..=t {
            for b in 0..=t - a {
                r.c[a][b] = f(&self.c[a][b], &o.c[a][b]);
            }
        }
        r
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let mut r = self.clone();
        r.c.iter_mut().flatten().for_each(|x| *x *= k);
        r
    }

    pub fn inv(&self) -> Result<Self, KernelError> {
        let c0 = self.c[0][0].clone();
        if c0.is_zero() {
            return Err(KernelError::NotInvertible);
        }
        // 1/(c0 (1 + n)) = (1/c0) sum (-n)^k, n nilpotent at total degree
        let mut negn = self.scale(&(-qone() / &c0));
        negn.c[0][0] = qz();
        let mut acc = BiSeries::constant(self.trunc, qone());
        let mut p = BiSeries::constant(self.trunc, qone());
        for _ in 0..self.trunc {
            p = p.mul(&negn);
            acc = acc.zip(&p, |a, b| a + b);
        }
        Ok(acc.scale(&(qone() / c0)))
    }

    /// Partial derivative in `t1` (`wrt_t1`) or `t`; truncation drops by one.
    pub fn partial(&self, wrt_t1: bool) -> Self {
        if self.trunc == 0 {
            return BiSeries::zero(0);
        }
        let t = self.trunc - 1;
        let mut r = BiSeries::zero(t);
        for a in 0..=t {
            for b in 0..=t - a {
                r.c[a][b] = if wrt_t1 {
                    &self.c[a + 1][b] * qi(a as i64 + 1)
                } else {
                    &self.c[a][b + 1] * qi(b as i64 + 1)
                };
            }
        }
        r
    }

    /// Logarithm of a series with constant term 1, via the total-degree
    /// Euler operator: `E log S = (E S) / S`.
    pub fn log(&self) -> Result<Self, KernelError> {
        if !self.c[0][0].is_one() {
            return Err(KernelError::NonUnitConstant {
                expected: "1".into(),
                found: to_string_pq(&self.c[0][0]),
            });
        }
        let mut es = self.clone();
        for a in 0..=self.trunc {
            for b in 0..=self.trunc - a {
                es.c[a][b] *= qi((a + b) as i64);
            }
        }
        let mut q = es.mul(&self.inv()?);
        for a in 0..=self.trunc {
            for b in 0..=self.trunc - a {
                let d = a + b;
                q.c[a][b] = if d == 0 { qz() } else { &q.c[a][b] / qi(d as i64) };
            }
        }
        Ok(q)
    }
}

impl TruncRing for BiSeries {
    fn zero_like(&self) -> Self {
        BiSeries::zero(self.trunc)
    }
    fn one_like(&self) -> Self {
        BiSeries::constant(self.trunc, qone())
    }
    fn add_ref(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a + b)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a - b)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self.mul(o)
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

    #[test]
    fn inverse_and_log() {
        let mut s = BiSeries::constant(4, qi(1));
        s.set(1, 0, qi(1));
        s.set(0, 1, qi(2));
        let one = s.mul(&s.inv().unwrap());
        assert_eq!(one, BiSeries::constant(4, qi(1)));
        // d/dt1 log S = S_t1 / S
        let lhs = s.log().unwrap().partial(true);
        let rhs = s.partial(true).mul(&s.inv().unwrap().truncate(3));
        assert_eq!(lhs, rhs);
    }
}
