use num::{Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{recurrence_table, LatticeError, WeightSpec};
use crate::exact_kernel::{pow_q, qi, qone, to_string_pq, Rational, Series, Var};

/// Convergence data for one `t`-order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderFit {
    pub order: usize,
    pub ns: Vec<usize>,
    /// `R_G(n)` for each `n`.
    pub residuals: Vec<Rational>,
    /// `[t^order] z_G(u = -t/(2 nu))`.
    pub target: Rational,
    pub errors: Vec<Rational>,
    pub monotone: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoticReport {
    pub nu: u32,
    pub genus: usize,
    pub fits: Vec<OrderFit>,
}

impl AsymptoticReport {
    pub fn to_json(&self) -> Value {
        let pq = |v: &[Rational]| v.iter().map(to_string_pq).collect::<Vec<_>>();
        let fits: Vec<Value> = self
            .fits
            .iter()
            .map(|f| {
                json!({
                    "order": f.order,
                    "n": f.ns,
                    "residuals": pq(&f.residuals),
                    "target": to_string_pq(&f.target),
                    "errors": pq(&f.errors),
                    "monotone": f.monotone,
                })
            })
            .collect();
        json!({"nu": self.nu, "genus": self.genus, "fits": fits})
    }
}

/// A `u`-series rewritten in the lattice coupling, `u = -t/(2 nu)`.
pub fn u_to_t(z: &Series, nu: u32) -> Series {
    z.rescale(&(-qone() / qi(2 * nu as i64))).with_var(Var::T)
}

/// `b2_n(t)` at `g_s = 1/n`, for each `n`.
pub fn b2_at_scale(nu: u32, ns: &[usize], trunc: usize) -> Result<Vec<Series>, LatticeError> {
    ns.par_iter()
        .map(|&n| {
            let t = recurrence_table(&WeightSpec::at_n(nu, n, false), n, trunc)?;
            Ok(t.b2_series(n))
        })
        .collect()
}

/// Self-similar profile `b2_n(t; g_s = x/n)/x` expressed in `s = x^{nu-1} t`.
pub fn self_similar_profile(nu: u32, n: usize, x: &Rational, trunc: usize) -> Result<Series, LatticeError> {
    let spec = WeightSpec { nu, gs: x / qi(n as i64), x: x.clone(), include_t1: false };
    let t = recurrence_table(&spec, n, trunc)?;
    let s = t.b2_series(n).scale(&(qone() / x));
    Ok(s.rescale(&(qone() / pow_q(x, nu - 1))).with_var(Var::S))
}

/// Whether errors shrink: non-increasing, ending strictly below the start
/// (or identically zero).
pub fn monotone_shrinking(errors: &[Rational]) -> bool {
    let nonincreasing = errors.windows(2).all(|w| w[1] <= w[0]);
    let first = errors.first().cloned().unwrap_or_else(Rational::zero);
    let last = errors.last().cloned().unwrap_or_else(Rational::zero);
    nonincreasing && (first.is_zero() || last < first)
}

/// Richardson residuals `R_G(n) = n^{2G}(b2_n/x - sum_{g<G} z_g n^{-2g})`
/// compared with the `z_G` coefficients. `z` holds `z_0..=z_G` as `u`-series.
pub fn asymptotic_match(
    nu: u32,
    genus: usize,
    ns: &[usize],
    trunc: usize,
    z: &[Series],
) -> Result<AsymptoticReport, LatticeError> {
    assert!(z.len() > genus, "need z_0..=z_G");
    let zt: Vec<Series> = z.iter().map(|s| u_to_t(s, nu)).collect();
    let b = b2_at_scale(nu, ns, trunc)?;
    let mut fits = Vec::new();
    for order in 0..=trunc {
        let target = zt[genus].coeff(order);
        let mut residuals = Vec::new();
        let mut errors = Vec::new();
        for (i, &n) in ns.iter().enumerate() {
            let n2 = qi(n as i64 * n as i64);
            let mut acc = b[i].coeff(order);
            for (g, zg) in zt.iter().enumerate().take(genus) {
                acc -= zg.coeff(order) / pow_q(&n2, g as u32);
            }
            let r = acc * pow_q(&n2, genus as u32);
            errors.push((&r - &target).abs());
            residuals.push(r);
        }
        let monotone = monotone_shrinking(&errors);
        if !monotone {
            return Err(LatticeError::Divergent { order });
        }
        fits.push(OrderFit { order, ns: ns.to_vec(), residuals, target, errors, monotone });
    }
    Ok(AsymptoticReport { nu, genus, fits })
}
