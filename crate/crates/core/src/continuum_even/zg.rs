use std::collections::BTreeSet;

use num::Zero;
use serde_json::{json, Value};

use super::eps::{jet_values, shifted_profile, EpsVec};
use super::{catalan_data, toda_jet, CatalanData, ContinuumError};
use crate::combinatorics::{lattice_equation_exprs, EquationKind, LVar};
use crate::exact_kernel::{
    qi, qone, series_to_ratfn_report, to_string_pq, Poly, RatFn, Rational, Series, TruncRing, Var,
};

/// The distinguished pole base `nu - (nu-1) z`.
pub fn base_poly(nu: u32) -> Poly {
    Poly::linear(qi(nu as i64), qi(-(nu as i64 - 1)))
}

/// Structural facts about a reconstructed `z_g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZStructure {
    /// Exact power of the base in the reduced denominator.
    pub pole_order: u32,
    /// Smallest `k` with a nonzero `base^{-k}` term in `z_g/z_0`.
    pub min_pole: u32,
    /// Coefficient of `base^{-(5g-1)}` in `z_g/z_0`.
    pub top_coeff: Rational,
    pub divisible_by_z_zm1: bool,
    /// Degree of `P` in `z_g = z(z-1) P / base^{5g-1}`.
    pub p_degree: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZEntry {
    pub g: usize,
    pub ratfn: RatFn,
    /// `u`-series of `z_g`.
    pub series: Series,
    pub determined_by: usize,
    pub surplus: usize,
    pub structure: Option<ZStructure>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZTable {
    pub nu: u32,
    pub trunc: usize,
    pub catalan: CatalanData,
    pub entries: Vec<ZEntry>,
}

impl ZTable {
    pub fn series(&self) -> Vec<Series> {
        self.entries.iter().map(|e| e.series.clone()).collect()
    }

    pub fn entry_json(&self, g: usize) -> Value {
        let e = &self.entries[g];
        let base = base_poly(self.nu);
        let mut v = json!({
            "nu": self.nu,
            "g": g,
            "ratfn": e.ratfn.to_json(&base),
            "series": e.series.to_json(),
            "surplus_orders": e.surplus,
        });
        if let Some(s) = &e.structure {
            v["structure"] = json!({
                "pole_order": s.pole_order,
                "min_pole": s.min_pole,
                "top_coeff": to_string_pq(&s.top_coeff),
                "divisible_by_z_zm1": s.divisible_by_z_zm1,
                "p_degree": s.p_degree,
            });
        }
        v
    }
}

fn eval_lattice(
    nu: u32,
    kind: EquationKind,
    zs: &[Series],
    d: usize,
    trunc: usize,
    extra: &dyn Fn(i64, &mut EpsVec),
) -> EpsVec {
    let expr = lattice_equation_exprs(nu, kind);
    let one = EpsVec::zero(d, trunc).one_like();
    let mut coupling = EpsVec::zero(d, trunc);
    coupling.c[0] = Series::monomial(Var::U, trunc, 1, qi(-2 * nu as i64));
    expr.eval(&one, &|v| match v {
        LVar::B2(k) => {
            let mut e = shifted_profile(zs, nu, d, trunc, k as i64);
            extra(k as i64, &mut e);
            e
        }
        LVar::Coupling => coupling.clone(),
        LVar::A(_) => EpsVec::zero(d, trunc),
    })
}

/// `[eps^d]` of the continuum difference string expression built from `zs`.
pub fn string_order(nu: u32, zs: &[Series], d: usize, trunc: usize) -> Series {
    eval_lattice(nu, EquationKind::String, zs, d, trunc, &|_, _| {}).c[d].clone()
}

/// Solves the continuum string equations for `z_1..=z_g`.
pub fn solve_zg(nu: u32, g: usize, trunc: usize) -> Result<ZTable, ContinuumError> {
    let catalan = catalan_data(nu, trunc)?;
    let z0 = catalan.z0.clone();
    let mut entries = vec![ZEntry {
        g: 0,
        ratfn: RatFn::from_poly(Poly::x()),
        series: z0.clone(),
        determined_by: 0,
        surplus: trunc + 1,
        structure: None,
    }];
    let first = string_order(nu, std::slice::from_ref(&z0), 1, trunc);
    if first != Series::one(Var::U, trunc) {
        return Err(ContinuumError::Verification {
            check: "leading continuum string equation".into(),
            order: (&first - &Series::one(Var::U, trunc)).valuation().unwrap_or(0),
        });
    }
    let base = base_poly(nu);
    let nu1 = nu as i64 - 1;
    for h in 1..=g {
        let zs: Vec<Series> = entries.iter().map(|e| e.series.clone()).collect();
        let d = 2 * h + 1;
        let k = string_order(nu, &zs, d, trunc);
        let one = Series::one(Var::U, trunc);
        let a = &eval_lattice(nu, EquationKind::String, &zs, d, trunc, &|kk, e| {
            e.add_at(d, &one.scale(&qi(kk)))
        })
        .c[d]
            - &k;
        let b = &eval_lattice(nu, EquationKind::String, &zs, d, trunc, &|_, e| e.add_at(2 * h, &one)).c[d] - &k;
        for m in 0..=trunc {
            if b.coeff(m) != a.coeff(m) * qi(nu1 * m as i64) {
                return Err(ContinuumError::Structure(format!("linear response mismatch at order {m}")));
            }
        }
        let f0w = Series::new(
            Var::U,
            (0..=trunc).map(|m| z0.coeff(m) * qi(nu1 * m as i64 + 1)).collect(),
        );
        if &a * &f0w != one {
            return Err(ContinuumError::Structure("string linearization is not normalized".into()));
        }
        let mut kh = Series::zero(Var::U, trunc);
        for m in 0..=trunc {
            let den = nu1 * m as i64 - 2 * h as i64 + 1;
            if den == 0 {
                if !k.coeff(m).is_zero() {
                    return Err(ContinuumError::Resonance { g: h, m });
                }
            } else {
                kh.set_coeff(m, k.coeff(m) / qi(den));
            }
        }
        let z = -(&(&kh * &a.inv()?));
        let rec = series_to_ratfn_report(&z, &z0, &base, 5 * h - 1, 5 * h as u32 - 1, &BTreeSet::new())?;
        let structure = Some(z_structure(nu, h, &rec.ratfn)?);
        entries.push(ZEntry {
            g: h,
            ratfn: rec.ratfn,
            series: z,
            determined_by: rec.determined_by,
            surplus: rec.surplus,
            structure,
        });
    }
    Ok(ZTable { nu, trunc, catalan, entries })
}

/// Reads off pole orders, the `z(z-1)` factor and the top coefficient.
pub fn z_structure(nu: u32, g: usize, r: &RatFn) -> Result<ZStructure, ContinuumError> {
    let base = base_poly(nu);
    let pole_order = r.base_power(&base).unwrap_or(0);
    let num = r.num();
    let divisible = num.eval(&Rational::zero()).is_zero() && num.eval(&qone()).is_zero();
    let p_degree = if divisible {
        let zz1 = Poly::from_ints(&[0, -1, 1]);
        let (q, rem) = num.div_rem(&zz1)?;
        if rem.is_zero() {
            q.degree()
        } else {
            None
        }
    } else {
        None
    };
    let over_z = r.div(&RatFn::from_poly(Poly::x()))?;
    let laurent = over_z.laurent_about(&base)?;
    let top = -(5 * g as i64 - 1);
    let top_coeff = laurent.get(&top).cloned().unwrap_or_else(Rational::zero);
    let min_pole = laurent
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, _)| (-k).max(0) as u32)
        .min()
        .unwrap_or(0);
    Ok(ZStructure { pole_order, min_pole, top_coeff, divisible_by_z_zm1: divisible, p_degree })
}

/// Whether a `ZStructure` has the expected shape at genus `g`.
pub fn structure_ok(s: &ZStructure, g: usize) -> bool {
    s.pole_order == 5 * g as u32 - 1
        && s.divisible_by_z_zm1
        && s.p_degree == Some(3 * g - 2)
        && !s.top_coeff.is_zero()
        && s.min_pole >= 2 * g as u32
}

/// Residuals of the continuum Toda equation at order `n^{-2g}`: the direct
/// lattice form `z_g' - [eps^{2g+1}] Toda(b)`, and the jet form comparing
/// `[eps^{2g+1}] Toda(b)` with `sum_h [eps^{2(g-h)}] F_h(J)`.
pub fn continuum_toda_residuals(table: &ZTable, g: usize, trunc: usize) -> Result<(Series, Series), ContinuumError> {
    let nu = table.nu;
    let zs: Vec<Series> = table.entries[..=g].iter().map(|e| e.series.truncate(trunc)).collect();
    let d = 2 * g + 1;
    let direct = eval_lattice(nu, EquationKind::Toda, &zs, d, trunc, &|_, _| {}).c[d].clone();
    let lhs = zs[g].derivative();
    let r1 = &lhs - &direct;
    let jets = jet_values(&zs, nu, 2 * g, trunc, 2 * g as u32 + 1);
    let mut jet_sum = Series::zero(Var::U, trunc);
    for h in 0..=g {
        let f = toda_jet(nu, h as u32)?;
        let v = f.eval(&jets);
        jet_sum = &jet_sum + &v.c[2 * (g - h)];
    }
    let r2 = &direct - &jet_sum;
    Ok((r1, r2))
}

pub fn verify_continuum_toda(table: &ZTable, g: usize, trunc: usize) -> Result<usize, ContinuumError> {
    let (r1, r2) = continuum_toda_residuals(table, g, trunc)?;
    if let Some(order) = r1.valuation() {
        return Err(ContinuumError::Verification { check: "continuum Toda".into(), order });
    }
    if let Some(order) = r2.valuation() {
        return Err(ContinuumError::Verification { check: "continuum Toda jet form".into(), order });
    }
    Ok(r1.trunc())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_kernel::q;

    #[test]
    fn genus_one_quartic_closed_form() {
        let t = solve_zg(2, 1, 16).unwrap();
        // (2/3) z (z-1)^2 / (2-z)^4
        let expect = RatFn::new(
            Poly::from_ints(&[0, 1, -2, 1]).scale(&q(2, 3)),
            Poly::from_ints(&[2, -1]).pow(4),
        )
        .unwrap();
        assert_eq!(t.entries[1].ratfn, expect);
        let s = t.entries[1].structure.clone().unwrap();
        assert!(s.divisible_by_z_zm1);
        assert_eq!(s.p_degree, Some(1));
        assert_eq!(verify_continuum_toda(&t, 1, 8), Ok(7));
        assert_eq!(verify_continuum_toda(&t, 0, 8), Ok(7));
    }
}
