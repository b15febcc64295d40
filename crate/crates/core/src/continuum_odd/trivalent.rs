use num::Zero;
use serde_json::{json, Value};

use super::OddError;
use crate::exact_kernel::{pow_q, q, qi, to_string_pq, Poly, RatFn, Rational, Series, Var};
use crate::fatgraph_oracle::eg_series_from_kappa;

/// `z_0` in `y = t_3^2`, from `1 = z_0^2 - 72 y z_0^3`.
pub fn trivalent_z0(trunc: usize) -> Series {
    let one = Series::one(Var::Y, trunc);
    let mut z = one.clone();
    // z <- z - (z^2 - 1 - 72 y z^3)/2 gains one order per pass
    for _ in 0..=trunc {
        let f = &(&(&z * &z) - &one) - &z.pow(3).shift_up(1).scale(&qi(72));
        z = &z - &f.scale(&q(1, 2));
    }
    z
}

/// The trivalent `e_0, e_1, e_2` from their closed forms, as series in `y`.
pub fn trivalent_e_series(trunc: usize) -> Result<Vec<Series>, OddError> {
    let z = trivalent_z0(trunc);
    let z2 = z.eval_poly(&Poly::from_ints(&[0, 0, 1]));
    // e_0 = 1/2 log z + (z-1)(z^2-6z-3)/(12(z+1))
    let r0 = RatFn::new(
        (&Poly::from_ints(&[-1, 1]) * &Poly::from_ints(&[-3, -6, 1])).scale(&q(1, 12)),
        Poly::from_ints(&[1, 1]),
    )?;
    let e0 = &z.log()?.scale(&q(1, 2)) + &r0.to_series(&z, trunc)?;
    // e_1 = -1/24 log(3/2 - z^2/2)
    let arg = &Series::constant(Var::Y, trunc, q(3, 2)) - &z2.scale(&q(1, 2));
    let e1 = arg.log()?.scale(&q(-1, 24));
    // e_2 = (z^2-1)^3 (4z^4 - 93z^2 - 261) / (960 (z^2-3)^5)
    let r2 = RatFn::new(
        (&Poly::from_ints(&[-1, 0, 1]).pow(3) * &Poly::from_ints(&[-261, 0, -93, 0, 4])).scale(&q(1, 960)),
        Poly::from_ints(&[-3, 0, 1]).pow(5),
    )?;
    let e2 = r2.to_series(&z, trunc)?;
    Ok(vec![e0, e1, e2])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivalentCheck {
    pub g: usize,
    pub m: usize,
    /// Coefficient of `t^m` in the closed form after calibration.
    pub closed_form: Rational,
    /// `kappa_3^{(g)}(m)/(m! 3^m)`.
    pub map_count: Rational,
    pub calibration_point: bool,
}

impl TrivalentCheck {
    pub fn pass(&self) -> bool {
        self.closed_form == self.map_count
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivalentReport {
    pub z0_first: Rational,
    /// Square of the frozen scale `t_3 = alpha t`.
    pub alpha_squared: Rational,
    pub checks: Vec<TrivalentCheck>,
}

impl TrivalentReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "z0_first_coefficient": to_string_pq(&self.z0_first),
            "alpha_squared": to_string_pq(&self.alpha_squared),
            "checks": self.checks.iter().map(|c| json!({
                "g": c.g,
                "m": c.m,
                "closed_form": to_string_pq(&c.closed_form),
                "map_count": to_string_pq(&c.map_count),
                "calibration_point": c.calibration_point,
                "pass": c.pass(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Compares the closed forms with exhaustive trivalent map counts for
/// `2 <= m <= m_max`, after fixing the scale on `e_0`'s first coefficient.
pub fn trivalent_checks(m_max: usize) -> Result<TrivalentReport, OddError> {
    let trunc = m_max / 2 + 1;
    let z = trivalent_z0(trunc);
    let es = trivalent_e_series(trunc)?;
    let counts: Vec<Series> =
        (0..=2).map(|g| eg_series_from_kappa(3, g, m_max)).collect::<Result<_, _>>()?;
    let first = es[0].coeff(1);
    if first.is_zero() {
        return Err(OddError::Verification { check: "trivalent calibration".into(), order: 1 });
    }
    let alpha_squared = counts[0].coeff(2) / first;
    let mut checks = Vec::new();
    for (g, e) in es.iter().enumerate() {
        for m in 2..=m_max {
            let closed_form = if m % 2 == 0 { e.coeff(m / 2) * pow_q(&alpha_squared, (m / 2) as u32) } else { qi(0) };
            checks.push(TrivalentCheck {
                g,
                m,
                closed_form,
                map_count: counts[g].coeff(m),
                calibration_point: g == 0 && m == 2,
            });
        }
    }
    Ok(TrivalentReport { z0_first: z.coeff(1), alpha_squared, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_leading_terms() {
        let z = trivalent_z0(4);
        assert_eq!(z.coeff(1), qi(36));
        let es = trivalent_e_series(3).unwrap();
        assert_eq!(es[0].coeff(1), qi(6));
        assert_eq!(es[1].coeff(1), q(3, 2));
        let r = trivalent_checks(4).unwrap();
        assert_eq!(r.alpha_squared, q(1, 9));
        assert!(r.all_pass(), "{r:?}");
    }
}
