use std::collections::BTreeSet;

use num::Zero;
use serde_json::{json, Value};

use super::{
    closed_e0_e1, e_w_derivs, e_w_derivs_series, face_count, lambda, laurent_c, min_pole, verification,
    CheckOutcome, GenusError, LogRational,
};
use crate::continuum_even::{base_poly, solve_zg, ZTable};
use crate::exact_kernel::{
    factorial, from_bigint, q, qi, qz, series_to_ratfn_report, to_string_pq, KernelError, Poly, RatFn, Rational,
    Series, Var,
};
use crate::fatgraph_oracle::kappa_counts;

/// Largest half-edge count for which resonant coefficients are compared
/// with an exhaustive map count.
pub const RESONANT_CHECK_HALF_EDGES: usize = 16;

/// Closed form of `e_g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EForm {
    /// `e_0`, `e_1`: rational part plus logarithms.
    Special(LogRational),
    Rational(RatFn),
}

impl EForm {
    pub fn as_logrational(&self, nu: u32) -> LogRational {
        match self {
            EForm::Special(l) => l.clone(),
            EForm::Rational(r) => LogRational::rational(nu, r.clone()),
        }
    }

    pub fn ratfn(&self) -> Option<&RatFn> {
        match self {
            EForm::Rational(r) => Some(r),
            EForm::Special(_) => None,
        }
    }
}

/// A resonant order `u^m` of the recursion for `e_g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResonantOrder {
    pub m: usize,
    pub faces: i64,
    /// `m! [u^m] e_g` read back from the reconstructed closed form.
    pub count: Rational,
    /// Exhaustive count of connected genus-`g` maps, when in reach.
    pub fatgraph: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EEntry {
    pub g: usize,
    pub form: EForm,
    /// `u`-series of `e_g`.
    pub series: Series,
    pub resonant: Vec<ResonantOrder>,
    pub determined_by: usize,
    pub surplus: usize,
    /// Exact right-hand side of the recursion at `w = 1`.
    pub rhs: Option<RatFn>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ETable {
    pub nu: u32,
    pub trunc: usize,
    pub ztable: ZTable,
    pub entries: Vec<EEntry>,
}

/// Truncation that leaves ample surplus for reconstructing through genus `g`.
pub fn default_trunc(g: usize) -> usize {
    5 * g.max(1) + 12
}

/// `r = max(1, floor((2g-1)/(nu-1)))`.
pub fn vanishing_order(nu: u32, g: usize) -> usize {
    ((2 * g - 1) / (nu as usize - 1)).max(1)
}

/// Orders `m <= trunc` where the recursion operator for `e_g` vanishes.
pub fn resonant_orders(nu: u32, g: usize, trunc: usize) -> Vec<usize> {
    (0..=trunc).filter(|&m| lambda(nu, g, m) == 0).collect()
}

/// `n^{-2g}` coefficient of `log(1 + sum_m y_m n^{-2m})` from the first
/// `g` entries `y_1..=y_g`, for any ring with the needed operations.
fn log_coefficient<T: Clone>(
    ys: &[T],
    g: usize,
    add: impl Fn(&T, &T) -> T,
    mul: impl Fn(&T, &T) -> T,
    scale: impl Fn(&T, &Rational) -> T,
) -> T {
    // g L_g = g y_g - sum_{k<g} k L_k y_{g-k}
    let mut l: Vec<T> = vec![ys[0].clone()];
    for n in 2..=g {
        let mut acc = ys[n - 1].clone();
        for k in 1..n {
            acc = add(&acc, &scale(&mul(&l[k - 1], &ys[n - k - 1]), &q(-(k as i64), n as i64)));
        }
        l.push(acc);
    }
    l[g - 1].clone()
}

/// `n^{-2g}` log term of the recursion as a `u`-series.
pub fn log_term_series(zt: &ZTable, g: usize, trunc: usize) -> Result<Series, GenusError> {
    let z0 = zt.entries[0].series.truncate(trunc);
    let iz = z0.inv()?;
    let ys: Vec<Series> = (1..=g).map(|m| &zt.entries[m].series.truncate(trunc) * &iz).collect();
    Ok(log_coefficient(&ys, g, |a, b| a + b, |a, b| a * b, |a, k| a.scale(k)))
}

pub fn log_term_exact(zt: &ZTable, g: usize) -> Result<RatFn, GenusError> {
    let x = RatFn::from_poly(Poly::x());
    let ys = (1..=g).map(|m| zt.entries[m].ratfn.div(&x)).collect::<Result<Vec<_>, KernelError>>()?;
    Ok(log_coefficient(&ys, g, |a, b| a + b, |a, b| a * b, |a, k| a.scale(k)))
}

/// Right-hand side of the recursion for `e_g` at `w = 1`, as a `u`-series.
pub fn hirota_rhs(table: &ETable, g: usize, trunc: usize) -> Result<Series, GenusError> {
    let nu = table.nu;
    let mut rhs = log_term_series(&table.ztable, g, trunc)?;
    for l in 1..=g {
        let h = g - l;
        let d = e_w_derivs_series(&table.entries[h].series.truncate(trunc), nu, h, 2 * l + 2);
        let k = -qi(2) / from_bigint(factorial(2 * l as u64 + 2));
        rhs = &rhs + &d.scale(&k);
    }
    Ok(rhs)
}

/// The same right-hand side in closed form; all logarithms cancel.
pub fn hirota_rhs_exact(table: &ETable, g: usize) -> Result<RatFn, GenusError> {
    let nu = table.nu;
    let mut rhs = log_term_exact(&table.ztable, g)?;
    for l in 1..=g {
        let h = g - l;
        let d = e_w_derivs(&table.entries[h].form.as_logrational(nu), h, 2 * l + 2);
        if !d.is_rational() {
            return Err(verification("log cancellation", format!("derivative of e_{h} keeps a logarithm")));
        }
        let k = -qi(2) / from_bigint(factorial(2 * l as u64 + 2));
        rhs = &rhs + &d.rat.scale(&k);
    }
    Ok(rhs)
}

fn base_table(nu: u32, g_max: usize, trunc: usize) -> Result<ETable, GenusError> {
    let ztable = solve_zg(nu, g_max, trunc)?;
    let z0 = ztable.entries[0].series.clone();
    let (e0, e1) = closed_e0_e1(nu)?;
    let mut entries = Vec::new();
    for (g, e) in [e0, e1].into_iter().enumerate() {
        let series = e.to_series(&z0, trunc)?;
        entries.push(EEntry {
            g,
            form: EForm::Special(e),
            series,
            resonant: Vec::new(),
            determined_by: 0,
            surplus: 0,
            rhs: None,
        });
    }
    Ok(ETable { nu, trunc, ztable, entries })
}

fn count_from(coeff: &Rational, m: usize) -> Rational {
    coeff * from_bigint(factorial(m as u64))
}

/// Solves the recursion for `e_2..=e_{g_max}`.
pub fn solve_eg(nu: u32, g_max: usize, trunc: usize) -> Result<ETable, GenusError> {
    if nu < 2 {
        return Err(GenusError::OutOfRange(nu as usize));
    }
    let mut table = base_table(nu, g_max.max(1), trunc)?;
    let base = base_poly(nu);
    for g in 2..=g_max {
        let rhs = hirota_rhs(&table, g, trunc)?;
        let exact = hirota_rhs_exact(&table, g)?;
        let z0 = table.ztable.entries[0].series.clone();
        if exact.to_series(&z0, trunc)? != rhs {
            return Err(verification("closed-form right-hand side", format!("genus {g}")));
        }
        let lau = exact.laurent_about(&base)?;
        let poles: Vec<i64> = lau.iter().filter(|(k, v)| **k < 0 && !v.is_zero()).map(|(k, _)| -k).collect();
        let (lo, hi) = (poles.iter().min().copied().unwrap_or(0), poles.iter().max().copied().unwrap_or(0));
        if lo < 2 * g as i64 || hi > 5 * g as i64 - 1 {
            return Err(verification("right-hand side pole orders", format!("genus {g}: [{lo}, {hi}]")));
        }

        let mut e = Series::zero(Var::U, trunc);
        let mut skip = BTreeSet::new();
        for m in 0..=trunc {
            let lam = lambda(nu, g, m);
            if lam == 0 {
                if !rhs.coeff(m).is_zero() {
                    return Err(GenusError::Resonance { g, m, faces: face_count(nu, g, m) });
                }
                skip.insert(m);
            } else {
                e.set_coeff(m, rhs.coeff(m) / qi(lam));
            }
        }
        let deg = 5 * g - 5;
        let rec = series_to_ratfn_report(&e, &z0, &base, deg, deg as u32, &skip)
            .map_err(|source| GenusError::Reconstruction { g, source })?;
        let series = rec.ratfn.to_series(&z0, trunc)?;
        let mut resonant = Vec::new();
        for &m in &skip {
            let count = count_from(&series.coeff(m), m);
            let j = 2 * nu as usize;
            let fatgraph = if j * m <= RESONANT_CHECK_HALF_EDGES {
                let kc = kappa_counts(j, m)?;
                let v = kc.get(g as u32);
                if Rational::from_integer(v.into()) != count {
                    return Err(GenusError::FatGraphMismatch {
                        g,
                        m,
                        expected: v.to_string(),
                        found: to_string_pq(&count),
                    });
                }
                Some(v)
            } else {
                None
            };
            resonant.push(ResonantOrder { m, faces: face_count(nu, g, m), count, fatgraph });
        }
        table.entries.push(EEntry {
            g,
            form: EForm::Rational(rec.ratfn),
            series,
            resonant,
            determined_by: rec.determined_by,
            surplus: rec.surplus,
            rhs: Some(exact),
        });
    }
    Ok(table)
}

/// `C^{(g)}`, the value of `e_g` at `z_0 = infinity`, by its recursion.
pub fn c_constant(g: usize) -> Rational {
    let mut cs: Vec<Rational> = vec![qz(), qz()];
    let fact = |n: usize| from_bigint(factorial(n as u64));
    let ff = |a: i64, p: usize| from_bigint(crate::exact_kernel::falling(a, p as u32));
    for h in 2..=g {
        let mut rhs = -qi(2) * fact(2 * h - 1) / fact(2 * h + 2) + qi(2) * fact(2 * h - 1) / (fact(2 * h) * qi(12));
        for (k, ck) in cs.iter().enumerate().take(h).skip(2) {
            let p = 2 * h - 2 * k + 2;
            rhs -= qi(2) * ff(2 - 2 * k as i64, p) / fact(p) * ck;
        }
        let lhs = qi((2 - 2 * h as i64) * (1 - 2 * h as i64));
        cs.push(rhs / lhs);
    }
    cs[g].clone()
}

/// Per-clause verification of the structure of `e_g`, `g >= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub nu: u32,
    pub g: usize,
    pub min_pole: Option<u32>,
    pub pole_order: u32,
    pub r: usize,
    /// Exact multiplicity of the root `z_0 = 1` in the numerator.
    pub zero_order: usize,
    pub top_coeff: Rational,
    /// `g! a_{3g-1}/((5g-5)(5g-3) nu^2)`.
    pub predicted_top: Rational,
    /// `top_coeff` over `a_{3g-1}/((5g-5)(5g-3) nu^2)`.
    pub top_ratio: Rational,
    pub constant: Rational,
    pub predicted_constant: Rational,
    pub clauses: Vec<CheckOutcome>,
}

impl StructureReport {
    pub fn all_pass(&self) -> bool {
        self.clauses.iter().all(|c| c.pass)
    }

    pub fn clause(&self, name: &str) -> Option<bool> {
        self.clauses.iter().find(|c| c.identity == name).map(|c| c.pass)
    }
}

pub fn verify_structure(table: &ETable, g: usize) -> Result<StructureReport, GenusError> {
    let nu = table.nu;
    let entry = table.entries.get(g).ok_or(GenusError::OutOfRange(g))?;
    let e = entry.form.ratfn().ok_or(GenusError::OutOfRange(g))?;
    let base = base_poly(nu);
    let tag = format!("nu={nu},g={g}");
    let (constant, _) = laurent_c(nu, g, e)?;
    let pole_order = e.base_power(&base).unwrap_or(0);
    let mp = min_pole(nu, e)?;
    let poles_ok = pole_order == 5 * g as u32 - 5 && mp.is_some_and(|m| m >= 2 * g as u32 - 2);

    let r = vanishing_order(nu, g);
    let num = e.num();
    let (_, rem) = num.div_rem(&Poly::linear(qi(-1), qi(1)).pow(r as u32))?;
    let zero_order = e.zero_order_at(&Rational::from_integer(1.into()));

    let lau = e.laurent_about(&base)?;
    let top_coeff = lau.get(&-(5 * g as i64 - 5)).cloned().unwrap_or_else(qz);
    let a = table
        .ztable
        .entries
        .get(g)
        .and_then(|z| z.structure.as_ref())
        .map(|s| s.top_coeff.clone())
        .ok_or(GenusError::OutOfRange(g))?;
    let denom = qi(((5 * g - 5) * (5 * g - 3)) as i64 * (nu as i64).pow(2));
    let predicted_top = from_bigint(factorial(g as u64)) * &a / &denom;
    let top_ratio = if a.is_zero() { qz() } else { &top_coeff * &denom / &a };

    let predicted_constant = c_constant(g);
    // e_g = (z-1) q(z)/base^o with deg q = o - 1
    let degree_ok = num.degree().is_some_and(|d| d == pole_order as usize) && zero_order >= 1;
    let below_r = (0..r).all(|m| entry.series.coeff(m).is_zero());
    let counts_ok = (0..=table.trunc).all(|m| {
        let c = count_from(&entry.series.coeff(m), m);
        c.is_integer() && c >= qz()
    });

    let clauses = vec![
        CheckOutcome::new("pole_orders", tag.clone(), poles_ok),
        CheckOutcome::new("vanishing_factor", tag.clone(), rem.is_zero()),
        CheckOutcome::new("top_coefficient", tag.clone(), top_coeff == predicted_top),
        CheckOutcome::new("constant_term", tag.clone(), constant == predicted_constant),
        CheckOutcome::new("degree_pole_relation", tag.clone(), degree_ok),
        CheckOutcome::new("low_order_vanishing", tag.clone(), below_r),
        CheckOutcome::new("integral_counts", tag, counts_ok),
    ];
    Ok(StructureReport {
        nu,
        g,
        min_pole: mp,
        pole_order,
        r,
        zero_order,
        top_coeff,
        predicted_top,
        top_ratio,
        constant,
        predicted_constant,
        clauses,
    })
}

impl ETable {
    pub fn entry_json(&self, g: usize) -> Value {
        let e = &self.entries[g];
        let base = base_poly(self.nu);
        let mut v = json!({
            "nu": self.nu,
            "g": g,
            "series": e.series.to_json(),
        });
        match &e.form {
            EForm::Special(l) => v["closed_form"] = l.to_json(),
            EForm::Rational(r) => {
                v["ratfn"] = r.to_json(&base);
                v["surplus_orders"] = json!(e.surplus);
                v["resonant_orders"] = e
                    .resonant
                    .iter()
                    .map(|o| {
                        json!({
                            "m": o.m,
                            "faces": o.faces,
                            "count": to_string_pq(&o.count),
                            "fatgraph": o.fatgraph,
                        })
                    })
                    .collect();
            }
        }
        v
    }
}

impl StructureReport {
    pub fn to_json(&self) -> Value {
        json!({
            "r": self.r,
            "zero_order_at_1": self.zero_order,
            "min_pole": self.min_pole,
            "pole_order": self.pole_order,
            "constant": to_string_pq(&self.constant),
            "predicted_constant": to_string_pq(&self.predicted_constant),
            "top_coeff": to_string_pq(&self.top_coeff),
            "predicted_top_coeff": to_string_pq(&self.predicted_top),
            "top_ratio": to_string_pq(&self.top_ratio),
            "checks": self.clauses.iter().map(|c| json!({
                "identity": c.identity, "params": c.params, "pass": c.pass
            })).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bernoulli_oracle(g: usize) -> Rational {
        // -B_{2g}/(2g(2g-2)) from the Akiyama-Tanigawa table
        let n = 2 * g;
        let mut a = vec![qz(); n + 1];
        let mut b = Vec::new();
        for m in 0..=n {
            a[m] = q(1, m as i64 + 1);
            for j in (1..=m).rev() {
                a[j - 1] = (&a[j - 1] - &a[j]) * qi(j as i64);
            }
            b.push(a[0].clone());
        }
        -&b[n] / qi((n * (n - 2)) as i64)
    }

    #[test]
    fn constants() {
        assert_eq!(c_constant(2), q(1, 240));
        assert_eq!(c_constant(3), q(-1, 1008));
        for g in 2..=7 {
            assert_eq!(c_constant(g), bernoulli_oracle(g));
        }
    }

    #[test]
    fn vanishing_orders() {
        assert_eq!(vanishing_order(2, 2), 3);
        assert_eq!(vanishing_order(2, 3), 5);
        assert_eq!(vanishing_order(3, 2), 1);
        assert_eq!(resonant_orders(2, 2, 10), vec![2, 3]);
    }

    #[test]
    fn quartic_genus_two() {
        let t = solve_eg(2, 2, default_trunc(2)).unwrap();
        let e2 = t.entries[2].form.ratfn().unwrap().clone();
        // (z-1)^3 (3z^2 - 21z - 82) / (720 (z-2)^5)
        let num = (&Poly::from_ints(&[-1, 1]).pow(3) * &Poly::from_ints(&[-82, -21, 3])).scale(&q(-1, 720));
        assert_eq!(e2, RatFn::new(num, Poly::from_ints(&[2, -1]).pow(5)).unwrap());
        let counts: Vec<Rational> = (1..=4).map(|m| count_from(&t.entries[2].series.coeff(m), m)).collect();
        assert_eq!(counts, vec![qi(0), qi(0), qi(1440), qi(770688)]);
        let ones: Vec<Rational> = (1..=4).map(|m| count_from(&t.entries[1].series.coeff(m), m)).collect();
        assert_eq!(ones, vec![qi(1), qi(60), qi(6336), qi(964224)]);
        let r = verify_structure(&t, 2).unwrap();
        for c in ["pole_orders", "vanishing_factor", "constant_term", "degree_pole_relation", "integral_counts"] {
            assert_eq!(r.clause(c), Some(true), "{c}");
        }
        assert_eq!(r.top_coeff, q(7, 45));
        assert_eq!(r.top_ratio, qi(1));
        assert_eq!(r.clause("top_coefficient"), Some(false));
    }
}
