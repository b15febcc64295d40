use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use super::ContinuumError;
use crate::combinatorics::{
    coeff_box, d_coeff, partitions_of, strict_partitions_in_box, Partition, StrictPartition,
    Variant,
};
use crate::exact_kernel::{factorial, qi, qone, solve, to_string_pq, Rational, Solution, TruncRing};

/// `f^p * prod_i f_{w^(orders_i)}`, orders nonzero and non-increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JetMonomial {
    pub f_pow: u32,
    pub orders: Vec<u32>,
}

impl JetMonomial {
    pub fn new(f_pow: u32, mut orders: Vec<u32>) -> Self {
        let zeros = orders.iter().filter(|&&o| o == 0).count() as u32;
        orders.retain(|&o| o > 0);
        orders.sort_unstable_by(|a, b| b.cmp(a));
        JetMonomial { f_pow: f_pow + zeros, orders }
    }

    /// Total number of derivatives.
    pub fn weight(&self) -> u32 {
        self.orders.iter().sum()
    }

    /// Number of factors of `f` or its derivatives.
    pub fn factors(&self) -> u32 {
        self.f_pow + self.orders.len() as u32
    }

    /// `prod_i 1/orders_i!`.
    pub fn factorial_norm(&self) -> Rational {
        let mut d = num::BigInt::one();
        for &o in &self.orders {
            d *= factorial(o as u64);
        }
        Rational::new(1.into(), d)
    }
}

impl fmt::Display for JetMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.f_pow {
            0 => {}
            1 => parts.push("f".to_string()),
            p => parts.push(format!("f^{p}")),
        }
        for &o in &self.orders {
            parts.push(if o == 1 { "f_w".into() } else { format!("f_w{o}") });
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// A polynomial in `f, f_w, f_ww, ...` with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JetExpression {
    terms: BTreeMap<JetMonomial, Rational>,
}

impl JetExpression {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn terms(&self) -> &BTreeMap<JetMonomial, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &JetMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: JetMonomial, c: Rational) {
        let e = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), -c.clone());
        }
        r
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let mut r = Self::zero();
        for (m, c) in &self.terms {
            r.add_term(m.clone(), c * k);
        }
        r
    }

    /// Highest derivative order appearing.
    pub fn max_order(&self) -> u32 {
        self.terms.keys().flat_map(|m| m.orders.first().copied()).max().unwrap_or(0)
    }

    /// Total `w`-derivative by the Leibniz rule.
    pub fn derivative(&self) -> Self {
        let mut r = Self::zero();
        for (m, c) in &self.terms {
            if m.f_pow > 0 {
                let mut o = m.orders.clone();
                o.push(1);
                r.add_term(JetMonomial::new(m.f_pow - 1, o), c * qi(m.f_pow as i64));
            }
            for i in 0..m.orders.len() {
                let mut o = m.orders.clone();
                o[i] += 1;
                r.add_term(JetMonomial::new(m.f_pow, o), c.clone());
            }
        }
        r
    }

    /// Evaluates with `jets[j]` standing for the `j`-th derivative.
    pub fn eval<R: TruncRing>(&self, jets: &[R]) -> R {
        let mut total = jets[0].zero_like();
        for (m, c) in &self.terms {
            let mut acc = jets[0].one_like();
            for _ in 0..m.f_pow {
                acc = acc.mul_ref(&jets[0]);
            }
            for &o in &m.orders {
                acc = acc.mul_ref(&jets[o as usize]);
            }
            total = total.add_ref(&acc.scale_ref(c));
        }
        total
    }

    /// Unique jet antiderivative among monomials with `factors` factors and
    /// weight one less than `self`'s, if one exists.
    pub fn antiderivative(&self, factors: u32) -> Result<Option<JetExpression>, ContinuumError> {
        let weight = match self.terms.keys().next() {
            Some(m) => m.weight(),
            None => return Ok(Some(JetExpression::zero())),
        };
        if weight == 0 {
            return Ok(None);
        }
        let basis: Vec<JetMonomial> = partitions_of(weight - 1, Some(factors as usize))
            .into_iter()
            .map(|p| JetMonomial::new(factors - p.len() as u32, p.parts().to_vec()))
            .collect();
        let images: Vec<JetExpression> = basis
            .iter()
            .map(|m| {
                let mut e = JetExpression::zero();
                e.add_term(m.clone(), qone());
                e.derivative()
            })
            .collect();
        let mut rows: Vec<JetMonomial> = self.terms.keys().cloned().collect();
        for im in &images {
            rows.extend(im.terms.keys().cloned());
        }
        rows.sort();
        rows.dedup();
        let a: Vec<Vec<Rational>> = rows.iter().map(|r| images.iter().map(|im| im.coeff(r)).collect()).collect();
        let b: Vec<Rational> = rows.iter().map(|r| self.coeff(r)).collect();
        match solve(&a, &b) {
            Solution::Unique(x) => {
                let mut e = JetExpression::zero();
                for (m, c) in basis.into_iter().zip(x) {
                    e.add_term(m, c);
                }
                Ok(Some(e))
            }
            Solution::Inconsistent { .. } => Ok(None),
            Solution::Underdetermined { rank } => {
                Err(ContinuumError::Structure(format!("jet antiderivative is not unique (rank {rank})")))
            }
        }
    }
}

impl fmt::Display for JetExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let cs = if c.denom().is_one() { c.numer().to_string() } else { to_string_pq(c) };
                format!("{cs}*{m}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Coefficient expansion `sum_lambda C_lambda f^{factors - l} prod f^{(lambda_i)}/lambda_i!`
/// over partitions of `size` with at most `factors` parts.
fn hierarchy_jet(nu: u32, size: u32, factors: u32, variant: Variant) -> Result<JetExpression, ContinuumError> {
    let mut e = JetExpression::zero();
    for lam in partitions_of(size, Some(factors as usize)) {
        let d = d_coeff(nu, &lam, variant)?;
        if d.is_zero() {
            continue;
        }
        let m = JetMonomial::new(factors - lam.len() as u32, lam.parts().to_vec());
        let norm = m.factorial_norm();
        e.add_term(m, d * norm);
    }
    Ok(e)
}

/// `F_g` of the continuum Toda flow: partitions of `2g+1` with at most
/// `nu+1` parts, weighted by the Toda hierarchy coefficients.
pub fn toda_jet(nu: u32, g: u32) -> Result<JetExpression, ContinuumError> {
    hierarchy_jet(nu, 2 * g + 1, nu + 1, Variant::Toda)
}

/// Which upper corner to use for the antiderivative's `mu` box.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FhatBox {
    /// `(2nu-1, ..., nu)`, the same box as the string coefficients.
    Hierarchy,
    /// `(2nu-1, ..., nu+1, nu-1)`: last corner entry lowered by one.
    Potential,
}

/// Slot-labelled jets: a term `(mu, k)` stands for
/// `prod_i x_i^{k_i} f_{w^(k_i)}/k_i!` with `x = mu - eta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlotExpression {
    pub xs: Vec<Vec<Rational>>,
    pub terms: BTreeMap<(usize, Vec<u32>), Rational>,
}

fn compositions(n: u32, slots: usize) -> Vec<Vec<u32>> {
    if slots == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=n).rev() {
        for mut rest in compositions(n - first, slots - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl SlotExpression {
    /// Raises one slot's order; the `x_i` power follows the order.
    pub fn slot_derivative(&self) -> SlotExpression {
        let mut terms: BTreeMap<(usize, Vec<u32>), Rational> = BTreeMap::new();
        for ((mu, k), c) in &self.terms {
            for i in 0..k.len() {
                let mut k2 = k.clone();
                k2[i] += 1;
                *terms.entry((*mu, k2)).or_insert_with(Rational::zero) += c * qi(k[i] as i64 + 1);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        SlotExpression { xs: self.xs.clone(), terms }
    }

    /// Forgets slot labels, evaluating the `x` weights.
    pub fn collapse(&self) -> JetExpression {
        let mut e = JetExpression::zero();
        for ((mu, k), c) in &self.terms {
            let x = &self.xs[*mu];
            let mut w = c.clone();
            for (xi, &ki) in x.iter().zip(k) {
                for _ in 0..ki {
                    w *= xi;
                }
            }
            let m = JetMonomial::new(0, k.clone());
            let norm = m.factorial_norm();
            e.add_term(m, w * norm);
        }
        e
    }
}

/// The string-side jets for genus `g`.
#[derive(Clone, Debug)]
pub struct StringJets {
    /// `sum_lambda delta_lambda f^{nu-l} prod f^{(lambda_i)}/lambda_i!`, `|lambda| = 2g+1`.
    pub f: JetExpression,
    /// `(1/(2g+1)) sum_mu sum_{|k| = 2g}` of slot terms.
    pub fhat_slots: SlotExpression,
    /// `fhat_slots` with slot labels forgotten.
    pub fhat: JetExpression,
}

pub fn string_jets(nu: u32, g: u32, corner: FhatBox) -> Result<StringJets, ContinuumError> {
    let f = hierarchy_jet(nu, 2 * g + 1, nu, Variant::String)?;
    let (lo, hi, eta, _) = coeff_box(nu, Variant::String);
    let hi = match corner {
        FhatBox::Hierarchy => hi,
        FhatBox::Potential => {
            let mut p = hi.parts().to_vec();
            if let Some(last) = p.last_mut() {
                *last -= 1;
            }
            StrictPartition::new(p)?
        }
    };
    let xs: Vec<Vec<Rational>> = strict_partitions_in_box(&lo, &hi)?
        .iter()
        .map(|mu| mu.parts().iter().zip(&eta).map(|(&m, &e)| qi(m as i64 - e)).collect())
        .collect();
    let pref = Rational::new(1.into(), (2 * g as i64 + 1).into());
    let mut terms = BTreeMap::new();
    for mu in 0..xs.len() {
        for k in compositions(2 * g, nu as usize) {
            terms.insert((mu, k), pref.clone());
        }
    }
    let fhat_slots = SlotExpression { xs, terms };
    let fhat = fhat_slots.collapse();
    Ok(StringJets { f, fhat_slots, fhat })
}

/// Outcome of the string antiderivative check at `(nu, g)`.
#[derive(Clone, Debug)]
pub struct ExactnessReport {
    pub nu: u32,
    pub g: u32,
    /// Collapsed slot derivative of the antiderivative equals `F_g`.
    pub slot_identity: bool,
    /// A plain jet antiderivative of `F_g` exists.
    pub antiderivative: Option<JetExpression>,
}

pub fn verify_string_exactness(nu: u32, g: u32, corner: FhatBox) -> Result<ExactnessReport, ContinuumError> {
    let sj = string_jets(nu, g, corner)?;
    let slot_identity = sj.fhat_slots.slot_derivative().collapse() == sj.f;
    let antiderivative = sj.f.antiderivative(nu)?;
    Ok(ExactnessReport { nu, g, slot_identity, antiderivative })
}

/// The plain-jet coefficients in the `prod f^{(lambda_i)}/lambda_i!` normalization.
pub fn normalized_coeffs(e: &JetExpression) -> BTreeMap<Partition, Rational> {
    e.terms()
        .iter()
        .map(|(m, c)| (Partition::new(m.orders.clone()), c / m.factorial_norm()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_kernel::q;

    #[test]
    fn leading_toda_jets() {
        let e = toda_jet(2, 0).unwrap();
        assert_eq!(e.to_string(), "12*f^2*f_w");
        assert_eq!(toda_jet(1, 0).unwrap().to_string(), "2*f*f_w");
        let e = toda_jet(1, 1).unwrap();
        assert!(e.terms().keys().all(|m| m.orders.len() <= 2 && m.weight() == 3));
    }

    #[test]
    fn string_antiderivatives() {
        let p = |v: &[u32]| Partition::new(v.to_vec());
        let r = verify_string_exactness(2, 1, FhatBox::Hierarchy).unwrap();
        assert!(r.slot_identity);
        let a = normalized_coeffs(&r.antiderivative.unwrap());
        assert_eq!(a[&p(&[2])], qi(4));
        assert_eq!(a[&p(&[1, 1])], qi(1));
        let r = verify_string_exactness(2, 2, FhatBox::Hierarchy).unwrap();
        let a = normalized_coeffs(&r.antiderivative.unwrap());
        assert_eq!(a[&p(&[4])], q(36, 5));
        assert_eq!(a[&p(&[2, 2])], q(19, 15));
        assert!(!verify_string_exactness(2, 1, FhatBox::Potential).unwrap().slot_identity);
    }

    #[test]
    fn derivative_leibniz() {
        let mut e = JetExpression::zero();
        e.add_term(JetMonomial::new(2, vec![]), qone());
        assert_eq!(e.derivative().to_string(), "2*f*f_w");
    }
}
