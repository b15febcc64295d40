use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use super::KernelError;

/// Arbitrary-precision rational. `num` keeps it reduced with a positive
/// denominator, so the canonical zero is `0/1`.
pub type Rational = BigRational;

/// `n/d` as a reduced rational. Panics on `d == 0`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qz() -> Rational {
    Rational::zero()
}

pub fn qone() -> Rational {
    Rational::one()
}

pub fn from_bigint(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Renders as `"p/q"`, always with an explicit denominator.
pub fn to_string_pq(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational, KernelError> {
    let s = s.trim();
    let bad = || KernelError::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(KernelError::ZeroDenominator);
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Falling factorial `(r)_p = r (r-1) ... (r-p+1)`, with `(r)_0 = 1`.
pub fn falling(r: i64, p: u32) -> BigInt {
    (0..p as i64).fold(BigInt::one(), |acc, i| acc * BigInt::from(r - i))
}

pub fn falling_q(r: &Rational, p: u32) -> Rational {
    let mut acc = qone();
    for i in 0..p {
        acc *= r - qi(i as i64);
    }
    acc
}

/// Double factorial `(2p-1)!!` for `p >= 0`.
pub fn odd_double_factorial(p: u64) -> BigInt {
    (1..=p).fold(BigInt::one(), |acc, i| acc * BigInt::from(2 * i - 1))
}

pub fn pow_q(r: &Rational, e: u32) -> Rational {
    let mut acc = qone();
    for _ in 0..e {
        acc *= r;
    }
    acc
}

/// Exact square root of a rational that is a perfect square, if it is one.
pub fn sqrt_exact(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_round_trip() {
        let r = q(-6, 4);
        assert_eq!(to_string_pq(&r), "-3/2");
        assert_eq!(parse_rational("-3/2").unwrap(), r);
        assert_eq!(parse_rational("7").unwrap(), qi(7));
        assert_eq!(to_string_pq(&qz()), "0/1");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn combinatorial_helpers() {
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(falling(-2, 4), BigInt::from(120));
        assert_eq!(falling(5, 0), BigInt::one());
        assert_eq!(odd_double_factorial(3), BigInt::from(15));
        assert_eq!(sqrt_exact(&q(4, 9)), Some(q(2, 3)));
        assert_eq!(sqrt_exact(&q(2, 1)), None);
    }
}
