use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::{One, Zero};

use super::paths::{lattice_paths, PathKind};
use crate::exact_kernel::{qi, qone, to_string_pq, Rational, TruncRing};

/// An offset variable: `b^2_{n+k}`, `a_{n+k}`, or the coupling constant of
/// the string equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LVar {
    Coupling,
    A(i32),
    B2(i32),
}

impl fmt::Display for LVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LVar::Coupling => write!(f, "t"),
            LVar::A(k) => write!(f, "a[{k}]"),
            LVar::B2(k) => write!(f, "b2[{k}]"),
        }
    }
}

/// Polynomial in offset variables. Monomials are sorted multisets.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LatticePolynomial {
    terms: BTreeMap<Vec<LVar>, Rational>,
}

impl LatticePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(vec![], c);
        p
    }

    pub fn var(v: LVar) -> Self {
        let mut p = Self::zero();
        p.add_term(vec![v], qone());
        p
    }

    pub fn terms(&self) -> &BTreeMap<Vec<LVar>, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mut mono: Vec<LVar>, c: Rational) {
        mono.sort();
        let e = self.terms.entry(mono.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-qone()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut r = Self::zero();
        for (m, a) in &self.terms {
            r.add_term(m.clone(), a * c);
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let mut m = m1.clone();
                m.extend_from_slice(m2);
                r.add_term(m, c1 * c2);
            }
        }
        r
    }

    /// The spatial shift `b2[k] -> b2[k+d]`, `a[k] -> a[k+d]`.
    pub fn shift(&self, d: i32) -> Self {
        self.map_vars(|v| match v {
            LVar::A(k) => LVar::A(k + d),
            LVar::B2(k) => LVar::B2(k + d),
            LVar::Coupling => LVar::Coupling,
        })
    }

    fn map_vars(&self, f: impl Fn(LVar) -> LVar) -> Self {
        let mut r = Self::zero();
        for (m, c) in &self.terms {
            r.add_term(m.iter().map(|&v| f(v)).collect(), c.clone());
        }
        r
    }

    /// All offsets appearing in `b2`/`a` variables.
    pub fn offsets(&self) -> BTreeSet<i32> {
        self.terms
            .keys()
            .flatten()
            .filter_map(|v| match v {
                LVar::A(k) | LVar::B2(k) => Some(*k),
                LVar::Coupling => None,
            })
            .collect()
    }

    /// Evaluates with each variable replaced by `val(v)`, in any ring.
    pub fn eval<R: TruncRing>(&self, one: &R, val: &dyn Fn(LVar) -> R) -> R {
        let mut cache: BTreeMap<LVar, R> = BTreeMap::new();
        let mut total = one.zero_like();
        for (m, c) in &self.terms {
            let mut acc = one.clone();
            for v in m {
                let x = cache.entry(*v).or_insert_with(|| val(*v));
                acc = acc.mul_ref(x);
            }
            total = total.add_ref(&acc.scale_ref(c));
        }
        total
    }

    /// Numeric evaluation at rational values.
    pub fn eval_rational(&self, val: &dyn Fn(LVar) -> Rational) -> Rational {
        self.terms
            .iter()
            .map(|(m, c)| m.iter().map(|&v| val(v)).product::<Rational>() * c)
            .sum()
    }
}

impl fmt::Display for LatticePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let vars: Vec<String> = m.iter().map(|v| v.to_string()).collect();
                let cs = if c.denom().is_one() { c.numer().to_string() } else { to_string_pq(c) };
                if vars.is_empty() {
                    cs
                } else {
                    format!("{cs}*{}", vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `(L^j)_{n+row, n+col}`: a sum over paths of step weights, with a downstep
/// from level `k` weighted `b2[k]` and, for Motzkin paths, a flat step at
/// level `k` weighted `a[k]`.
pub fn operator_power_entry(j: usize, row: i32, col: i32, even_potential: bool) -> LatticePolynomial {
    let kind = if even_potential { PathKind::Dyck } else { PathKind::Motzkin };
    let mut p = LatticePolynomial::zero();
    for path in lattice_paths(j, row, col, kind) {
        let mut mono: Vec<LVar> = path.downstep_levels().into_iter().map(LVar::B2).collect();
        mono.extend(path.flat_levels().into_iter().map(LVar::A));
        p.add_term(mono, qone());
    }
    p
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquationKind {
    String,
    Toda,
}

/// Right-hand side lattice polynomial at generic `n`.
///
/// `String`: `b2[1] - b2[0] + t((L^{2nu-1})_{n+1,n} - (L^{2nu-1})_{n,n-1})`, which
/// equals the string coefficient `g_s`.
/// `Toda`: `(L^{2nu})_{n+1,n-1} - (L^{2nu})_{n,n-2}`, which equals
/// `-2 nu g_s d b2_n / dt`.
pub fn lattice_equation_exprs(nu: u32, kind: EquationKind) -> LatticePolynomial {
    let j = 2 * nu as usize;
    match kind {
        EquationKind::String => {
            let lin = operator_power_entry(1, 1, 0, true).sub(&operator_power_entry(1, 0, -1, true));
            let hi = operator_power_entry(j - 1, 1, 0, true).sub(&operator_power_entry(j - 1, 0, -1, true));
            lin.add(&LatticePolynomial::var(LVar::Coupling).mul(&hi))
        }
        EquationKind::Toda => operator_power_entry(j, 1, -1, true).sub(&operator_power_entry(j, 0, -2, true)),
    }
}

/// Replace the coupling by a constant, returning the (`lin`, `coupling`)
/// split `P = lin + t * coupling` of a string expression.
pub fn split_coupling(p: &LatticePolynomial) -> (LatticePolynomial, LatticePolynomial) {
    let mut lin = LatticePolynomial::zero();
    let mut cpl = LatticePolynomial::zero();
    for (m, c) in p.terms() {
        let n = m.iter().filter(|v| **v == LVar::Coupling).count();
        let rest: Vec<LVar> = m.iter().copied().filter(|v| *v != LVar::Coupling).collect();
        match n {
            0 => lin.add_term(rest, c.clone()),
            1 => cpl.add_term(rest, c.clone()),
            _ => panic!("string expressions are linear in the coupling"),
        }
    }
    (lin, cpl)
}

/// Number of paths encoded by a polynomial (all `b2 -> 1`, `a -> 0`).
pub fn path_count(p: &LatticePolynomial) -> Rational {
    p.eval_rational(&|v| match v {
        LVar::B2(_) => qi(1),
        _ => qi(0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(k: i32) -> LatticePolynomial {
        LatticePolynomial::var(LVar::B2(k))
    }

    #[test]
    fn entries() {
        assert_eq!(operator_power_entry(2, 0, 0, true), b(0).add(&b(1)));
        assert_eq!(operator_power_entry(1, 1, 0, true), b(1));
        let t = LatticePolynomial::var(LVar::Coupling);
        let expect = b(1).sub(&b(0)).add(&t.mul(
            &b(1).mul(&b(0).add(&b(1)).add(&b(2))).sub(&b(0).mul(&b(-1).add(&b(0)).add(&b(1)))),
        ));
        assert_eq!(lattice_equation_exprs(2, EquationKind::String), expect);
    }

    #[test]
    fn equation_examples() {
        let s = |ks: &[i32]| ks.iter().fold(LatticePolynomial::zero(), |a, &k| a.add(&b(k)));
        let toda = b(1).mul(&b(0)).mul(&s(&[-1, 0, 1, 2])).sub(&b(0).mul(&b(-1)).mul(&s(&[-2, -1, 0, 1])));
        assert_eq!(lattice_equation_exprs(2, EquationKind::Toda), toda);
        let one_plus_t = LatticePolynomial::constant(qi(1)).add(&LatticePolynomial::var(LVar::Coupling));
        assert_eq!(lattice_equation_exprs(1, EquationKind::String), one_plus_t.mul(&b(1).sub(&b(0))));
        let offs = lattice_equation_exprs(3, EquationKind::Toda).offsets();
        assert!(offs.iter().all(|k| k.abs() <= 4));
    }
}
