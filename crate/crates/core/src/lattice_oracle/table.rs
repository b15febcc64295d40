use num::Zero;
use rayon::prelude::*;

use super::LatticeError;
use crate::exact_kernel::{factorial, odd_double_factorial, pow_q, qi, qone, BiSeries, Rational, Series};

/// Weight `exp(-(l^2/2 + t1 l + t l^{2nu}/(2nu)) / g_s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSpec {
    pub nu: u32,
    pub gs: Rational,
    pub x: Rational,
    pub include_t1: bool,
}

impl WeightSpec {
    /// `g_s = x/n` with `x = 1`.
    pub fn at_n(nu: u32, n: usize, include_t1: bool) -> Self {
        WeightSpec { nu, gs: Rational::new(1.into(), (n as i64).into()), x: qone(), include_t1 }
    }
}

/// Gaussian moment `G(k) = (k-1)!! g_s^{k/2}`, zero for odd `k`.
fn gaussian_moment(k: usize, gs: &Rational) -> Rational {
    if k % 2 == 1 {
        return Rational::zero();
    }
    Rational::from_integer(odd_double_factorial(k as u64 / 2)) * pow_q(gs, k as u32 / 2)
}

/// Moments `m_0..=m_{k_max}` normalized by the undeformed Gaussian mass,
/// expanded in `(t1, t)` to total order `trunc` (no `t1` terms unless the
/// spec asks for them).
pub fn deformed_moments(spec: &WeightSpec, k_max: usize, trunc: usize) -> Vec<BiSeries> {
    let j = 2 * spec.nu as usize;
    let c1 = -qone() / &spec.gs;
    let ct = -qone() / (qi(j as i64) * &spec.gs);
    let amax = if spec.include_t1 { trunc } else { 0 };
    (0..=k_max)
        .map(|k| {
            let mut m = BiSeries::zero(trunc);
            for a in 0..=amax {
                for b in 0..=trunc - a {
                    let g = gaussian_moment(k + a + j * b, &spec.gs);
                    if g.is_zero() {
                        continue;
                    }
                    let w = pow_q(&c1, a as u32) / Rational::from_integer(factorial(a as u64))
                        * pow_q(&ct, b as u32)
                        / Rational::from_integer(factorial(b as u64));
                    m.set(a, b, w * g);
                }
            }
            m
        })
        .collect()
}

/// Recurrence data from the Hankel factorization `H = L D L^T`.
#[derive(Clone, Debug)]
pub struct RecurrenceTable {
    pub spec: WeightSpec,
    pub n_max: usize,
    pub trunc: usize,
    /// `b2[n] = d_n / d_{n-1}`, with `b2[0] = 0`; indices `0..=n_max`.
    pub b2: Vec<BiSeries>,
    /// Diagonal coefficients `a_n`, indices `0..=n_max`.
    pub a: Vec<BiSeries>,
    /// `tau2[n] = det H_n / det H_n(0)`; indices `0..=n_max + 1`.
    pub tau2: Vec<BiSeries>,
    /// Pivots `d_n = det H_{n+1} / det H_n`.
    pub pivots: Vec<BiSeries>,
}

impl RecurrenceTable {
    /// `b2[n]`, zero outside the table's lower range.
    pub fn b2_at(&self, n: i64) -> BiSeries {
        if n <= 0 {
            return BiSeries::zero(self.trunc);
        }
        self.b2[n as usize].clone()
    }

    pub fn a_at(&self, n: i64) -> BiSeries {
        if n < 0 {
            return BiSeries::zero(self.trunc);
        }
        self.a[n as usize].clone()
    }

    /// `b2[n]` at `t1 = 0` as a series in `t`.
    pub fn b2_series(&self, n: usize) -> Series {
        self.b2[n].t_slice()
    }
}

pub fn recurrence_table(spec: &WeightSpec, n_max: usize, trunc: usize) -> Result<RecurrenceTable, LatticeError> {
    let moments = deformed_moments(spec, 2 * n_max + 2, trunc);
    recurrence_table_from_moments(spec, &moments, n_max, trunc)
}

/// Builds the table from explicit moments (used for negative controls).
pub fn recurrence_table_from_moments(
    spec: &WeightSpec,
    moments: &[BiSeries],
    n_max: usize,
    trunc: usize,
) -> Result<RecurrenceTable, LatticeError> {
    let size = n_max + 2;
    assert!(moments.len() > 2 * (size - 1), "not enough moments for the requested table");
    let mut h: Vec<Vec<BiSeries>> = (0..size)
        .map(|i| (0..size).map(|j| moments[i + j].truncate(trunc)).collect())
        .collect();
    let mut l = vec![vec![BiSeries::zero(trunc); size]; size];
    let mut pivots = Vec::with_capacity(size);
    for k in 0..size {
        let p = h[k][k].clone();
        if p.coeff(0, 0).is_zero() {
            return Err(LatticeError::Degenerate { index: k });
        }
        let ip = p.inv()?;
        let pivot_row = h[k].clone();
        let updates: Vec<(usize, BiSeries, Vec<BiSeries>)> = (k + 1..size)
            .into_par_iter()
            .map(|i| {
                let f = h[i][k].mul(&ip);
                let row: Vec<BiSeries> = (k + 1..size)
                    .map(|j| {
                        let d = f.mul(&pivot_row[j]);
                        crate::exact_kernel::TruncRing::sub_ref(&h[i][j], &d)
                    })
                    .collect();
                (i, f, row)
            })
            .collect();
        for (i, f, row) in updates {
            l[i][k] = f;
            for (off, v) in row.into_iter().enumerate() {
                h[i][k + 1 + off] = v;
            }
        }
        pivots.push(p);
    }

    use crate::exact_kernel::TruncRing;
    let mut b2 = vec![BiSeries::zero(trunc)];
    for n in 1..=n_max {
        b2.push(pivots[n].mul(&pivots[n - 1].inv()?));
    }
    // a_n = sigma_{n+1} - sigma_n with sigma_n = L[n][n-1], sigma_0 = 0
    let sigma = |n: usize| if n == 0 { BiSeries::zero(trunc) } else { l[n][n - 1].clone() };
    let a: Vec<BiSeries> = (0..=n_max).map(|n| sigma(n + 1).sub_ref(&sigma(n))).collect();
    let mut tau2 = vec![BiSeries::constant(trunc, qone())];
    for n in 0..=n_max {
        let d0 = pivots[n].coeff(0, 0);
        let next = tau2[n].mul(&pivots[n]).scale(&(qone() / d0));
        tau2.push(next);
    }
    Ok(RecurrenceTable { spec: spec.clone(), n_max, trunc, b2, a, tau2, pivots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_kernel::q;

    #[test]
    fn moment_examples() {
        let spec = WeightSpec { nu: 2, gs: q(1, 3), x: qone(), include_t1: false };
        let m = deformed_moments(&spec, 6, 1);
        assert_eq!(m[0].coeff(0, 0), qi(1));
        assert_eq!(m[6].coeff(0, 0), qi(15) * pow_q(&q(1, 3), 3));
        // 1 - (3/4) g_s t
        assert_eq!(m[0].coeff(0, 1), q(-3, 4) * q(1, 3));
        assert_eq!(deformed_moments(&spec, 0, 0)[0], BiSeries::constant(0, qi(1)));
    }

    #[test]
    fn table_at_origin() {
        let spec = WeightSpec { nu: 2, gs: q(1, 4), x: qone(), include_t1: false };
        let t = recurrence_table(&spec, 5, 3).unwrap();
        for n in 0..=5 {
            assert_eq!(t.b2[n].coeff(0, 0), qi(n as i64) * q(1, 4));
            assert_eq!(t.tau2[n].coeff(0, 0), qi(1));
        }
        // b2_1 = m2/m0 to first order: g_s - 3 g_s^2 t + O(t^2)
        let m = deformed_moments(&spec, 2, 1);
        let direct = m[2].mul(&m[0].inv().unwrap());
        assert_eq!(t.b2[1].coeff(0, 1), direct.coeff(0, 1));
        assert_eq!(direct.coeff(0, 1), qi(-3) * q(1, 16));
    }
}
