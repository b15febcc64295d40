use num::bigint::BigInt;
use num::integer::Integer;
use num::{One, Signed, Zero};

use super::rational::{qz, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Rational>),
    Underdetermined { rank: usize },
    /// `row` is the first equation (in input order) that could not be met.
    Inconsistent { row: usize },
}

/// Solves `A x = b` exactly. Each row is first cleared of denominators, then
/// reduced with Bareiss fraction-free elimination, so intermediate entries
/// stay integral and are divided exactly at every step.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Solution {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    // augmented integer matrix, remembering input row indices
    let mut m: Vec<(usize, Vec<BigInt>)> = Vec::with_capacity(rows);
    for (i, row) in a.iter().enumerate() {
        let mut l = BigInt::one();
        for x in row.iter().chain(std::iter::once(&b[i])) {
            l = l.lcm(x.denom());
        }
        let ints = row
            .iter()
            .chain(std::iter::once(&b[i]))
            .map(|x| x.numer() * (&l / x.denom()))
            .collect();
        m.push((i, ints));
    }

    let mut prev = BigInt::one();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i].1[c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            let (head, tail) = m.split_at_mut(i);
            let pr = &head[r].1;
            let row = &mut tail[0].1;
            let f = row[c].clone();
            for j in c..=cols {
                row[j] = (&pr[c] * &row[j] - &f * &pr[j]) / &prev;
            }
        }
        prev = m[r].1[c].clone();
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }

    // zero rows with a nonzero right side are inconsistent
    let bad = m[r..]
        .iter()
        .filter(|(_, row)| !row[cols].is_zero())
        .map(|(i, _)| *i)
        .min();
    if let Some(row) = bad {
        return Solution::Inconsistent { row };
    }
    if r < cols {
        return Solution::Underdetermined { rank: r };
    }

    let mut x = vec![qz(); cols];
    for k in (0..r).rev() {
        let c = pivots[k];
        let row = &m[k].1;
        let mut s = Rational::from_integer(row[cols].clone());
        for j in c + 1..cols {
            if !row[j].is_zero() {
                s -= Rational::from_integer(row[j].clone()) * &x[j];
            }
        }
        x[c] = s / Rational::from_integer(row[c].clone());
    }
    debug_assert!(x.iter().all(|v| !v.denom().is_negative()));
    Solution::Unique(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_kernel::{q, qi};

    #[test]
    fn small_systems() {
        let a = vec![vec![qi(2), qi(1)], vec![qi(1), q(-1, 2)]];
        let b = vec![qi(3), qi(0)];
        assert_eq!(solve(&a, &b), Solution::Unique(vec![q(3, 4), q(3, 2)]));

        let a = vec![vec![qi(1), qi(1)], vec![qi(2), qi(2)]];
        assert_eq!(solve(&a, &[qi(1), qi(2)]), Solution::Underdetermined { rank: 1 });
        assert!(matches!(solve(&a, &[qi(1), qi(3)]), Solution::Inconsistent { .. }));

        let a = vec![vec![qi(1)], vec![qi(1)], vec![qi(1)]];
        assert_eq!(solve(&a, &[qi(2), qi(2), qi(5)]), Solution::Inconsistent { row: 2 });
    }
}
