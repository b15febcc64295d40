use num::Zero;

use super::ContinuumError;
use crate::combinatorics::{c_nu, c_nu_alt};
use crate::exact_kernel::{binomial, from_bigint, pow_q, qi, qone, Rational, Series, Var};

/// `c_nu`, the higher Catalan numbers and the planar series `z_0(u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalanData {
    pub nu: u32,
    pub c_nu: Rational,
    /// `zeta_1..=zeta_T`.
    pub zeta: Vec<Rational>,
    /// `z_0 = sum_j zeta_j c_nu^j u^j`, solving `z_0 = 1 + c_nu u z_0^nu`.
    pub z0: Series,
}

/// `zeta_j = C(nu j, j-1)/j`.
pub fn higher_catalan(nu: u32, j: u32) -> Rational {
    from_bigint(binomial(nu as i64 * j as i64, j as i64 - 1)) / qi(j as i64)
}

pub fn catalan_data(nu: u32, trunc: usize) -> Result<CatalanData, ContinuumError> {
    if nu == 0 {
        return Err(ContinuumError::Structure("valence parameter must be at least 1".into()));
    }
    let (c1, c2) = (c_nu(nu), c_nu_alt(nu));
    if c1 != c2 {
        return Err(ContinuumError::Verification { check: "c_nu closed forms".into(), order: 0 });
    }
    let c = from_bigint(c1);
    let zeta: Vec<Rational> = (1..=trunc as u32).map(|j| higher_catalan(nu, j)).collect();
    let mut coeffs = vec![qone()];
    for (j, z) in zeta.iter().enumerate() {
        coeffs.push(z * pow_q(&c, j as u32 + 1));
    }
    Ok(CatalanData { nu, c_nu: c, zeta, z0: Series::new(Var::U, coeffs) })
}

/// Residual `z_0 - 1 - c_nu u z_0^nu` of the planar functional equation.
pub fn string_functional_residual(nu: u32, c: &Rational, z0: &Series) -> Series {
    let t = z0.trunc();
    let rhs = &Series::one(Var::U, t) + &z0.pow(nu).shift_up(1).scale(c);
    z0 - &rhs
}

/// Returns the truncation to which the functional equation holds, or the
/// first failing order.
pub fn verify_string_functional(nu: u32, c: &Rational, z0: &Series) -> Result<usize, ContinuumError> {
    let r = string_functional_residual(nu, c, z0);
    match r.valuation() {
        None => Ok(r.trunc()),
        Some(order) => Err(ContinuumError::Verification { check: "planar functional equation".into(), order }),
    }
}

/// `dz_0/du = c_nu z_0^{nu+1} / (nu - (nu-1) z_0)`, the chain rule for
/// `u <-> z_0` conversions.
pub fn dz0_du(nu: u32, c: &Rational, z0: &Series) -> Result<Series, ContinuumError> {
    let d = &Series::constant(Var::U, z0.trunc(), qi(nu as i64)) - &z0.scale(&qi(nu as i64 - 1));
    Ok(&z0.pow(nu + 1).scale(c) * &d.inv()?)
}

pub fn all_positive(z0: &Series) -> bool {
    z0.coeffs().iter().all(|c| !c.is_zero() && *c > Rational::zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_examples() {
        let d = catalan_data(2, 6).unwrap();
        let v: Vec<i64> = d.zeta.iter().map(|z| z.to_integer().try_into().unwrap()).collect();
        assert_eq!(v, vec![1, 2, 5, 14, 42, 132]);
        assert_eq!(d.c_nu, qi(12));
        assert_eq!(higher_catalan(3, 2), qi(3));
        assert_eq!(verify_string_functional(2, &d.c_nu, &d.z0), Ok(6));
        let mut bad = d.z0.clone();
        bad.set_coeff(3, bad.coeff(3) + qi(1));
        assert!(matches!(
            verify_string_functional(2, &d.c_nu, &bad),
            Err(ContinuumError::Verification { order: 3, .. })
        ));
    }

    #[test]
    fn chain_rule_matches_derivative() {
        let d = catalan_data(3, 10).unwrap();
        assert_eq!(dz0_du(3, &d.c_nu, &d.z0).unwrap().truncate(9), d.z0.derivative());
    }
}
