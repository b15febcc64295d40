use crate::exact_kernel::{falling, qz, KernelError, Rational, Series, TruncRing, Var};

/// Polynomial in `eps` truncated at `eps^D`, with `u`-series coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsVec {
    pub c: Vec<Series>,
}

impl EpsVec {
    pub fn zero(d: usize, trunc: usize) -> Self {
        EpsVec { c: vec![Series::zero(Var::U, trunc); d + 1] }
    }

    pub fn degree(&self) -> usize {
        self.c.len() - 1
    }

    pub fn trunc(&self) -> usize {
        self.c[0].trunc()
    }

    pub fn at(&self, d: usize) -> &Series {
        &self.c[d]
    }

    pub fn add_at(&mut self, d: usize, s: &Series) {
        if d < self.c.len() {
            self.c[d] = &self.c[d] + s;
        }
    }
}

impl TruncRing for EpsVec {
    fn zero_like(&self) -> Self {
        EpsVec::zero(self.degree(), self.trunc())
    }
    fn one_like(&self) -> Self {
        let mut r = self.zero_like();
        r.c[0] = Series::one(Var::U, self.trunc());
        r
    }
    fn add_ref(&self, o: &Self) -> Self {
        EpsVec { c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }
    fn sub_ref(&self, o: &Self) -> Self {
        EpsVec { c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }
    fn mul_ref(&self, o: &Self) -> Self {
        let d = self.degree().min(o.degree());
        let mut r = EpsVec::zero(d, self.trunc().min(o.trunc()));
        for i in 0..=d {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..=d - i {
                if !o.c[j].is_zero() {
                    r.c[i + j] = &r.c[i + j] + &(&self.c[i] * &o.c[j]);
                }
            }
        }
        r
    }
    fn scale_ref(&self, k: &Rational) -> Self {
        EpsVec { c: self.c.iter().map(|a| a.scale(k)).collect() }
    }
    fn try_inv(&self) -> Result<Self, KernelError> {
        let r0 = self.c[0].inv()?;
        let mut r = vec![r0.clone()];
        for k in 1..=self.degree() {
            let mut s = Series::zero(Var::U, self.trunc());
            for i in 1..=k {
                s = &s + &(&self.c[i] * &r[k - i]);
            }
            r.push(-(&(&s * &r0)));
        }
        Ok(EpsVec { c: r })
    }
    fn is_zero_elem(&self) -> bool {
        self.c.iter().all(|s| s.is_zero())
    }
}

/// `j`-th `w`-derivative at `w = 1` of the self-similar form
/// `f_h = w^{1-2h} z_h(u w^{nu-1})`.
pub fn wder(z: &Series, h: usize, nu: u32, j: u32) -> Series {
    let coeffs: Vec<Rational> = z
        .coeffs()
        .iter()
        .enumerate()
        .map(|(m, a)| {
            let e = (nu as i64 - 1) * m as i64 + 1 - 2 * h as i64;
            a * Rational::from_integer(falling(e, j))
        })
        .collect();
    Series::new(Var::U, coeffs)
}

/// `b^2_{n+k}` as an `eps`-vector: `sum_h sum_j eps^{2h+j} k^j/j! d_w^j f_h` at `w = 1`.
pub fn shifted_profile(zs: &[Series], nu: u32, d: usize, trunc: usize, k: i64) -> EpsVec {
    let mut e = EpsVec::zero(d, trunc);
    for (h, z) in zs.iter().enumerate() {
        if 2 * h > d {
            break;
        }
        let mut kj = Rational::from_integer(1.into());
        for j in 0..=(d - 2 * h) {
            if j > 0 {
                kj = kj * Rational::from_integer(k.into()) / Rational::from_integer((j as i64).into());
            }
            if kj == qz() {
                continue;
            }
            e.add_at(2 * h + j, &wder(z, h, nu, j as u32).truncate(trunc).scale(&kj));
        }
    }
    e
}

/// Jets `J_j = sum_h eps^{2h} d_w^j f_h` at `w = 1`, for `j <= jmax`.
pub fn jet_values(zs: &[Series], nu: u32, d: usize, trunc: usize, jmax: u32) -> Vec<EpsVec> {
    (0..=jmax)
        .map(|j| {
            let mut e = EpsVec::zero(d, trunc);
            for (h, z) in zs.iter().enumerate() {
                if 2 * h <= d {
                    e.add_at(2 * h, &wder(z, h, nu, j).truncate(trunc));
                }
            }
            e
        })
        .collect()
}
