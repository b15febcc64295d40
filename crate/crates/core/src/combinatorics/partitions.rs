use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::Zero;

use super::CombError;
use crate::exact_kernel::{binomial, factorial, qi, qone, qz, Rational};

/// Weakly decreasing list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `r_j`: how many parts equal `j`.
    pub fn multiplicity(&self, j: u32) -> usize {
        self.0.iter().filter(|&&p| p == j).count()
    }

    /// Map `j -> r_j` over the distinct parts.
    pub fn multiplicities(&self) -> BTreeMap<u32, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// `prod_j r_j!`.
    pub fn multiplicity_factorial(&self) -> BigInt {
        self.multiplicities().values().map(|&r| factorial(r as u64)).product()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Strictly decreasing list of non-negative parts. Zero is admitted as a
/// last part so that boxes such as `(2nu-2, ..., 0)` can be expressed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrictPartition(Vec<u32>);

impl StrictPartition {
    pub fn new(parts: Vec<u32>) -> Result<Self, CombError> {
        if parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(CombError::NotStrict(parts));
        }
        Ok(StrictPartition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// All partitions of `n` with at most `max_len` parts, in decreasing
/// lexicographic order: `(3), (2,1), (1,1,1)`.
pub fn partitions_of(n: u32, max_len: Option<usize>) -> Vec<Partition> {
    fn rec(n: u32, maxp: u32, len_left: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if len_left == 0 {
            return;
        }
        for p in (1..=maxp.min(n)).rev() {
            cur.push(p);
            rec(n - p, p, len_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, max_len.unwrap_or(usize::MAX), &mut Vec::new(), &mut out);
    out
}

/// Strict `mu` with `lower_i <= mu_i <= upper_i`, in decreasing
/// lexicographic order.
pub fn strict_partitions_in_box(
    lower: &StrictPartition,
    upper: &StrictPartition,
) -> Result<Vec<StrictPartition>, CombError> {
    let (lo, hi) = (lower.parts(), upper.parts());
    if lo.len() != hi.len() || lo.iter().zip(hi).any(|(l, h)| l > h) {
        return Err(CombError::MalformedBox { lower: lo.to_vec(), upper: hi.to_vec() });
    }
    fn rec(i: usize, lo: &[u32], hi: &[u32], cur: &mut Vec<u32>, out: &mut Vec<StrictPartition>) {
        if i == lo.len() {
            out.push(StrictPartition(cur.clone()));
            return;
        }
        let cap = match cur.last() {
            Some(&0) => return,
            Some(&prev) => hi[i].min(prev - 1),
            None => hi[i],
        };
        if cap < lo[i] {
            return;
        }
        for v in (lo[i]..=cap).rev() {
            cur.push(v);
            rec(i + 1, lo, hi, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, lo, hi, &mut Vec::new(), &mut out);
    Ok(out)
}

/// Distinct rearrangements of a multiset of exponents.
pub(crate) fn multiset_permutations(v: &[u32]) -> Vec<Vec<u32>> {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for &x in v {
        *counts.entry(x).or_insert(0) += 1;
    }
    let keys: Vec<u32> = counts.keys().copied().collect();
    let mut left: Vec<usize> = keys.iter().map(|k| counts[k]).collect();
    fn rec(n: usize, keys: &[u32], left: &mut [usize], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..keys.len() {
            if left[i] > 0 {
                left[i] -= 1;
                cur.push(keys[i]);
                rec(n, keys, left, cur, out);
                cur.pop();
                left[i] += 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(v.len(), &keys, &mut left, &mut Vec::new(), &mut out);
    out
}

fn pow_with_zero(x: &Rational, e: u32) -> Rational {
    // 0^0 = 1
    let mut acc = qone();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// Monomial symmetric polynomial `m_lambda(x)`; zero when `lambda` has more
/// parts than there are variables.
pub fn monomial_sym_eval(lambda: &Partition, x: &[Rational]) -> Rational {
    if lambda.len() > x.len() {
        return qz();
    }
    let mut exps = lambda.parts().to_vec();
    exps.resize(x.len(), 0);
    multiset_permutations(&exps)
        .iter()
        .map(|e| e.iter().zip(x).map(|(&k, xi)| pow_with_zero(xi, k)).product::<Rational>())
        .sum()
}

/// Which hierarchy coefficient [`d_coeff`] evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Toda,
    String,
}

/// Index data `(lower box, upper box, eta, weight)` for a hierarchy
/// coefficient.
pub fn coeff_box(nu: u32, variant: Variant) -> (StrictPartition, StrictPartition, Vec<i64>, i64) {
    let sp = |v: Vec<u32>| StrictPartition::new(v).expect("strict by construction");
    match variant {
        Variant::Toda => (
            sp((1..=nu + 1).rev().collect()),
            sp((nu..=2 * nu).rev().collect()),
            (0..=nu as i64).rev().map(|i| 2 * i).collect(),
            2,
        ),
        Variant::String => (
            sp((1..=nu).rev().collect()),
            sp((nu..2 * nu).rev().collect()),
            (0..nu as i64).rev().map(|i| 2 * i).collect(),
            1,
        ),
    }
}

/// Sum of `weight * m_lambda(mu - eta)` over the box.
pub fn box_sum(
    lambda: &Partition,
    lower: &StrictPartition,
    upper: &StrictPartition,
    eta: &[i64],
    weight: i64,
) -> Result<Rational, CombError> {
    let mut total = qz();
    for mu in strict_partitions_in_box(lower, upper)? {
        let x: Vec<Rational> = mu.parts().iter().zip(eta).map(|(&m, &e)| qi(m as i64 - e)).collect();
        total += monomial_sym_eval(lambda, &x);
    }
    Ok(total * qi(weight))
}

/// Coefficient of `f^{nu+1-l} prod_i f^{(lambda_i)}/lambda_i!` in the
/// continuum Toda flow (`Toda`), or of `f^{nu-l} prod_i f^{(lambda_i)}/lambda_i!`
/// in the continuum string combination (`String`).
///
/// `Toda` uses `eta = (2nu, ..., 2, 0)`, box `(nu+1, ..., 1) <= mu <= (2nu, ..., nu)`
/// and weight 2. `String` uses `eta = (2nu-2, ..., 0)`, box
/// `(nu, ..., 1) <= mu <= (2nu-1, ..., nu)` and weight 1; these are the values
/// that agree with the lattice path expansion.
pub fn d_coeff(nu: u32, lambda: &Partition, variant: Variant) -> Result<Rational, CombError> {
    if nu == 0 {
        return Err(CombError::BadNu(nu));
    }
    if lambda.size() % 2 == 0 {
        return Err(CombError::EvenSize(lambda.size()));
    }
    let max_len = match variant {
        Variant::Toda => nu as usize + 1,
        Variant::String => nu as usize,
    };
    if lambda.len() > max_len {
        return Err(CombError::TooLong { len: lambda.len(), max: max_len });
    }
    let (lo, hi, eta, w) = coeff_box(nu, variant);
    box_sum(lambda, &lo, &hi, &eta, w)
}

/// Trinomial `n! / (a! b! c!)`, zero if any lower index is negative or the
/// indices do not sum to `n`.
pub fn trinomial(n: i64, a: i64, b: i64, c: i64) -> BigInt {
    if a < 0 || b < 0 || c < 0 || a + b + c != n {
        return BigInt::zero();
    }
    binomial(n, a) * binomial(n - a, b)
}

/// The higher Catalan constant `c_nu = 2 nu C(2nu-1, nu-1)`.
pub fn c_nu(nu: u32) -> BigInt {
    BigInt::from(2 * nu) * binomial(2 * nu as i64 - 1, nu as i64 - 1)
}

/// The alternative closed form `(nu+1) C(2nu, nu+1)`.
pub fn c_nu_alt(nu: u32) -> BigInt {
    BigInt::from(nu + 1) * binomial(2 * nu as i64, nu as i64 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn partition_examples() {
        assert_eq!(partitions_of(3, None), vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
        assert_eq!(partitions_of(5, None).len(), 7);
        assert_eq!(partitions_of(3, Some(2)), vec![p(&[3]), p(&[2, 1])]);
        assert_eq!(partitions_of(0, None), vec![p(&[])]);
    }

    #[test]
    fn box_examples() {
        let sp = |v: &[u32]| StrictPartition::new(v.to_vec()).unwrap();
        assert_eq!(strict_partitions_in_box(&sp(&[2, 1]), &sp(&[2, 1])).unwrap(), vec![sp(&[2, 1])]);
        let b = strict_partitions_in_box(&sp(&[3, 2, 1]), &sp(&[4, 3, 2])).unwrap();
        assert_eq!(b, vec![sp(&[4, 3, 2]), sp(&[4, 3, 1]), sp(&[4, 2, 1]), sp(&[3, 2, 1])]);
        assert!(strict_partitions_in_box(&sp(&[3, 1]), &sp(&[2, 1])).is_err());
        assert!(strict_partitions_in_box(&sp(&[3, 1]), &sp(&[3])).is_err());
    }

    #[test]
    fn monomial_examples() {
        let x = [qi(1), qi(2), qi(3)];
        assert_eq!(monomial_sym_eval(&p(&[1]), &x), qi(6));
        assert_eq!(monomial_sym_eval(&p(&[2, 1]), &x[..2]), qi(6));
        assert_eq!(monomial_sym_eval(&p(&[1, 1]), &x), qi(11));
        assert_eq!(monomial_sym_eval(&p(&[1, 1, 1, 1]), &x), qi(0));
        assert_eq!(monomial_sym_eval(&p(&[2]), &[qi(0), qi(0)]), qi(0));
    }

    #[test]
    fn d_coeff_examples() {
        assert_eq!(d_coeff(2, &p(&[1]), Variant::Toda).unwrap(), qi(12));
        assert_eq!(d_coeff(1, &p(&[1]), Variant::Toda).unwrap(), qi(2));
        assert_eq!(d_coeff(1, &p(&[3]), Variant::Toda).unwrap(), qi(2));
        assert_eq!(d_coeff(3, &p(&[3, 1, 1]), Variant::Toda).unwrap(), qi(294));
        assert_eq!(d_coeff(2, &p(&[2, 1]), Variant::Toda).unwrap(), qi(16));
        assert_eq!(d_coeff(2, &p(&[1]), Variant::String).unwrap(), qi(6));
        assert_eq!(d_coeff(2, &p(&[3]), Variant::String).unwrap(), qi(12));
        assert_eq!(d_coeff(2, &p(&[2, 1]), Variant::String).unwrap(), qi(8));
        assert!(d_coeff(2, &p(&[2]), Variant::Toda).is_err());
        assert!(d_coeff(1, &p(&[1, 1, 1]), Variant::Toda).is_err());
    }

    #[test]
    fn trinomials_and_catalan_constants() {
        assert_eq!(trinomial(3, 0, 1, 2), BigInt::from(3));
        assert_eq!(trinomial(2, 1, -1, 2), BigInt::zero());
        for nu in 1..=10 {
            assert_eq!(c_nu(nu), c_nu_alt(nu));
        }
        assert_eq!(c_nu(2), BigInt::from(12));
    }
}
