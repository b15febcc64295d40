use serde::Serialize;

use super::{LatticeError, RecurrenceTable};
use crate::combinatorics::{lattice_equation_exprs, EquationKind, LVar};
use crate::exact_kernel::{qi, qone, BiSeries, Series, TruncRing, Var};

/// Which family of lattice identities to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeKind {
    String,
    Toda,
    TodaT1,
}

impl LatticeKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "string" => Some(LatticeKind::String),
            "toda" => Some(LatticeKind::Toda),
            "toda_t1" => Some(LatticeKind::TodaT1),
            _ => None,
        }
    }
}

/// One identity verified at one lattice site.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub equation: String,
    pub n: usize,
    /// Total order to which the residual was shown to vanish.
    pub order: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LatticeReport {
    pub checks: Vec<CheckRecord>,
}

impl LatticeReport {
    fn push(&mut self, equation: &str, n: usize, order: usize) {
        self.checks.push(CheckRecord { equation: equation.to_string(), n, order });
    }
}

fn series_zero(equation: &str, n: usize, r: &Series) -> Result<usize, LatticeError> {
    match r.valuation() {
        None => Ok(r.trunc()),
        Some(order) => Err(LatticeError::VerificationFailure { equation: equation.into(), n, order }),
    }
}

fn bi_zero(equation: &str, n: usize, r: &BiSeries) -> Result<usize, LatticeError> {
    match r.first_nonzero() {
        None => Ok(r.trunc()),
        Some((order, _, _)) => Err(LatticeError::VerificationFailure { equation: equation.into(), n, order }),
    }
}

fn t_slice_at(table: &RecurrenceTable, k: i64) -> Series {
    if k <= 0 {
        Series::zero(Var::T, table.trunc)
    } else {
        table.b2_series(k as usize)
    }
}

/// Sites `n >= 1` at which the identities of `kind` fit inside the table.
/// Offsets below zero are allowed: they read `b2 = 0`, as in the
/// semi-infinite lattice.
pub fn valid_sites(table: &RecurrenceTable, kind: LatticeKind) -> Vec<usize> {
    let hi = match kind {
        LatticeKind::String => lattice_equation_exprs(table.spec.nu, EquationKind::String).offsets(),
        LatticeKind::Toda => lattice_equation_exprs(table.spec.nu, EquationKind::Toda).offsets(),
        LatticeKind::TodaT1 => [1].into_iter().collect(),
    }
    .into_iter()
    .max()
    .unwrap_or(0) as i64;
    (1..=(table.n_max as i64 - hi).max(0) as usize).collect()
}

fn eval_expr(table: &RecurrenceTable, kind: EquationKind, n: usize) -> Result<Series, LatticeError> {
    let expr = lattice_equation_exprs(table.spec.nu, kind);
    let hi = expr.offsets().into_iter().max().unwrap_or(0) as i64;
    if n as i64 + hi > table.n_max as i64 {
        let lo = expr.offsets().into_iter().min().unwrap_or(0) as i64;
        return Err(LatticeError::OutOfRange { n, lo, hi, n_max: table.n_max });
    }
    let one = Series::one(Var::T, table.trunc);
    let t = Series::x(Var::T, table.trunc);
    Ok(expr.eval(&one, &|v| match v {
        LVar::B2(k) => t_slice_at(table, n as i64 + k as i64),
        LVar::Coupling => t.clone(),
        LVar::A(_) => Series::zero(Var::T, table.trunc),
    }))
}

/// Residual of the difference string equation at `n` (at `t1 = 0`).
pub fn string_residual(table: &RecurrenceTable, n: usize) -> Result<Series, LatticeError> {
    let e = eval_expr(table, EquationKind::String, n)?;
    Ok(&e - &Series::constant(Var::T, table.trunc, table.spec.gs.clone()))
}

/// Residual of `-2 nu g_s d/dt b2_n = (L^{2nu})_{n+1,n-1} - (L^{2nu})_{n,n-2}`.
pub fn toda_residual(table: &RecurrenceTable, n: usize) -> Result<Series, LatticeError> {
    let e = eval_expr(table, EquationKind::Toda, n)?;
    let k = -qi(2 * table.spec.nu as i64) * &table.spec.gs;
    let lhs = table.b2_series(n).derivative().scale(&k);
    Ok(&lhs - &e)
}

/// Residuals of the `j = 1` Toda pair
/// `-g_s d a_n/dt1 = b2_{n+1} - b2_n` and `-g_s d b2_n/dt1 = b2_n (a_n - a_{n-1})`.
pub fn toda_t1_residuals(table: &RecurrenceTable, n: usize) -> Result<(BiSeries, BiSeries), LatticeError> {
    if !table.spec.include_t1 {
        return Err(LatticeError::MissingT1("the j = 1 Toda equations".into()));
    }
    if n + 1 > table.n_max {
        return Err(LatticeError::OutOfRange { n, lo: -1, hi: 1, n_max: table.n_max });
    }
    let mg = -table.spec.gs.clone();
    let n = n as i64;
    let r1 = table
        .a_at(n)
        .partial(true)
        .scale(&mg)
        .sub_ref(&table.b2_at(n + 1).sub_ref(&table.b2_at(n)));
    let r2 = table
        .b2_at(n)
        .partial(true)
        .scale(&mg)
        .sub_ref(&table.b2_at(n).mul(&table.a_at(n).sub_ref(&table.a_at(n - 1))));
    Ok((r1, r2))
}

/// Checks the requested identities at each site in `ns`.
pub fn verify_lattice_equations(
    table: &RecurrenceTable,
    kind: LatticeKind,
    ns: &[usize],
) -> Result<LatticeReport, LatticeError> {
    let mut rep = LatticeReport::default();
    for &n in ns {
        match kind {
            LatticeKind::String => {
                let o = series_zero("string", n, &string_residual(table, n)?)?;
                rep.push("string", n, o);
            }
            LatticeKind::Toda => {
                let o = series_zero("toda", n, &toda_residual(table, n)?)?;
                rep.push("toda", n, o);
            }
            LatticeKind::TodaT1 => {
                let (r1, r2) = toda_t1_residuals(table, n)?;
                let o1 = bi_zero("toda_t1_a", n, &r1)?;
                let o2 = bi_zero("toda_t1_b", n, &r2)?;
                rep.push("toda_t1_a", n, o1);
                rep.push("toda_t1_b", n, o2);
            }
        }
    }
    Ok(rep)
}

/// Hirota product identity, the centered second difference of `log tau2`,
/// and (with the `t1` deformation) the two `t1`-derivative lemmas.
pub fn verify_hirota(table: &RecurrenceTable, ns: &[usize]) -> Result<LatticeReport, LatticeError> {
    let mut rep = LatticeReport::default();
    let gs = &table.spec.gs;
    for &n in ns {
        if n == 0 || n > table.n_max {
            return Err(LatticeError::OutOfRange { n, lo: -1, hi: 1, n_max: table.n_max });
        }
        let b0 = qi(n as i64) * gs;
        let lhs = table.b2[n].mul(&table.tau2[n].mul(&table.tau2[n]));
        let rhs = table.tau2[n + 1].mul(&table.tau2[n - 1]).scale(&b0);
        let o = bi_zero("hirota", n, &lhs.sub_ref(&rhs))?;
        rep.push("hirota", n, o);

        let l = |k: usize| table.tau2[k].log();
        let second = l(n + 1)?.sub_ref(&l(n)?.scale(&qi(2))).add_ref(&l(n - 1)?);
        let rhs = table.b2[n].scale(&(qone() / &b0)).log()?;
        let o = bi_zero("tau_second_difference", n, &second.sub_ref(&rhs))?;
        rep.push("tau_second_difference", n, o);

        if table.spec.include_t1 {
            let ratio = table.tau2[n + 1].mul(&table.tau2[n].inv()?);
            let c = ratio.coeff(0, 0);
            let la = ratio.scale(&(qone() / c)).log()?.partial(true).scale(&-gs.clone());
            let a = table.a[n].truncate(la.trunc());
            let o = bi_zero("hirota_lemma_a", n, &a.sub_ref(&la))?;
            rep.push("hirota_lemma_a", n, o);

            let gs2 = gs * gs;
            let lb = l(n)?.partial(true).partial(true).scale(&gs2);
            let b = table.b2[n].truncate(lb.trunc());
            let o = bi_zero("hirota_lemma_b", n, &b.sub_ref(&lb))?;
            rep.push("hirota_lemma_b", n, o);
        }
    }
    Ok(rep)
}

/// Replaces moment `index` by a perturbed copy (nonzero `t` coefficient
/// shifted by one), for negative controls.
pub fn corrupt_moment(moments: &mut [BiSeries], index: usize) {
    let m = &mut moments[index];
    if m.trunc() >= 1 {
        let c = m.coeff(0, 1) + qone();
        m.set(0, 1, c);
    } else {
        let c = m.coeff(0, 0) + qone();
        m.set(0, 0, c);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice_oracle::{deformed_moments, recurrence_table, recurrence_table_from_moments, WeightSpec};

    #[test]
    fn identities_hold_at_quartic() {
        for n in 3..=5 {
            let spec = WeightSpec::at_n(2, n, true);
            let t = recurrence_table(&spec, n + 3, 4).unwrap();
            for kind in [LatticeKind::String, LatticeKind::Toda, LatticeKind::TodaT1] {
                verify_lattice_equations(&t, kind, &[n]).unwrap();
            }
            let rep = verify_hirota(&t, &[1, n]).unwrap();
            assert_eq!(rep.checks.len(), 8);
        }
    }

    #[test]
    fn corrupted_moment_is_detected() {
        let spec = WeightSpec::at_n(2, 4, false);
        let mut m = deformed_moments(&spec, 16, 3);
        corrupt_moment(&mut m, 4);
        let t = recurrence_table_from_moments(&spec, &m, 7, 3).unwrap();
        let r = verify_lattice_equations(&t, LatticeKind::String, &valid_sites(&t, LatticeKind::String));
        assert!(matches!(r, Err(LatticeError::VerificationFailure { .. })));
    }
}
