//! Exhaustive enumeration of labelled regular maps as rotation systems with
//! an edge matching. Genus comes from Euler's relation on the face cycles.

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::exact_kernel::{factorial, pow_q, qi, Rational, Series, Var};

/// Largest number of half-edges accepted by [`kappa_counts`].
pub const HALF_EDGE_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FatGraphError {
    #[error("{0} half-edges cannot be perfectly matched")]
    NoMatching(usize),
    #[error("{half_edges} half-edges exceeds the enumeration cap of {cap}")]
    TooLarge { half_edges: usize, cap: usize },
    #[error("malformed fat graph: {0}")]
    Malformed(String),
}

/// Rotation permutation `sigma` and matching involution `alpha` on
/// half-edges `0..j*m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FatGraph {
    pub m: usize,
    pub j: usize,
    pub sigma: Vec<usize>,
    pub alpha: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Genus {
    Connected(u32),
    Disconnected,
}

/// Canonical rotation: vertex `v` holds half-edges `v*j..(v+1)*j` in order.
pub fn canonical_sigma(j: usize, m: usize) -> Vec<usize> {
    (0..j * m).map(|h| h - h % j + (h % j + 1) % j).collect()
}

fn cycle_count(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut count = 0;
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut h = s;
        while !seen[h] {
            seen[h] = true;
            h = perm[h];
        }
    }
    count
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl FatGraph {
    /// Graph with the canonical rotation and the given matching.
    pub fn canonical(j: usize, m: usize, alpha: Vec<usize>) -> Result<Self, FatGraphError> {
        Self::new(j, m, canonical_sigma(j, m), alpha)
    }

    pub fn new(j: usize, m: usize, sigma: Vec<usize>, alpha: Vec<usize>) -> Result<Self, FatGraphError> {
        let n = j * m;
        if sigma.len() != n || alpha.len() != n {
            return Err(FatGraphError::Malformed(format!("expected {n} half-edges")));
        }
        let mut hit = vec![false; n];
        for &s in &sigma {
            if s >= n || hit[s] {
                return Err(FatGraphError::Malformed("sigma is not a permutation".into()));
            }
            hit[s] = true;
        }
        let mut seen = vec![false; n];
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut h = s;
            while !seen[h] {
                seen[h] = true;
                h = sigma[h];
                len += 1;
            }
            if len != j {
                return Err(FatGraphError::Malformed(format!("sigma has a cycle of length {len}")));
            }
        }
        for (h, &a) in alpha.iter().enumerate() {
            if a >= n || a == h || alpha[a] != h {
                return Err(FatGraphError::Malformed("alpha is not a fixed-point-free involution".into()));
            }
        }
        Ok(FatGraph { m, j, sigma, alpha })
    }

    /// Number of faces: cycles of `sigma . alpha`.
    pub fn faces(&self) -> usize {
        let phi: Vec<usize> = (0..self.sigma.len()).map(|h| self.sigma[self.alpha[h]]).collect();
        cycle_count(&phi)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.sigma.len();
        let mut parent: Vec<usize> = (0..n).collect();
        for h in 0..n {
            for other in [self.sigma[h], self.alpha[h]] {
                let (a, b) = (find(&mut parent, h), find(&mut parent, other));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let r = find(&mut parent, 0);
        (0..n).all(|h| find(&mut parent, h) == r)
    }
}

/// Genus from `V - E + F = 2 - 2g`, or the disconnected marker.
pub fn genus_of(graph: &FatGraph) -> Genus {
    if !graph.is_connected() {
        return Genus::Disconnected;
    }
    let v = graph.m as i64;
    let e = (graph.j * graph.m / 2) as i64;
    let f = graph.faces() as i64;
    let twice = 2 - v + e - f;
    debug_assert!(twice >= 0 && twice % 2 == 0);
    Genus::Connected((twice / 2) as u32)
}

/// Tally of all matchings on `j*m` half-edges by genus.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KappaCounts {
    pub by_genus: BTreeMap<u32, u64>,
    pub disconnected: u64,
}

impl KappaCounts {
    pub fn get(&self, g: u32) -> u64 {
        self.by_genus.get(&g).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.by_genus.values().sum::<u64>() + self.disconnected
    }

    fn merge(mut self, o: KappaCounts) -> KappaCounts {
        for (g, c) in o.by_genus {
            *self.by_genus.entry(g).or_insert(0) += c;
        }
        self.disconnected += o.disconnected;
        self
    }
}

struct Enumerator {
    j: usize,
    m: usize,
    sigma: Vec<usize>,
    alpha: Vec<usize>,
    counts: KappaCounts,
}

impl Enumerator {
    fn leaf(&mut self) {
        let n = self.sigma.len();
        // connectivity over vertices
        let mut parent: Vec<usize> = (0..self.m).collect();
        for h in 0..n {
            let (a, b) = (find(&mut parent, h / self.j), find(&mut parent, self.alpha[h] / self.j));
            if a != b {
                parent[a] = b;
            }
        }
        let r = find(&mut parent, 0);
        if !(0..self.m).all(|v| find(&mut parent, v) == r) {
            self.counts.disconnected += 1;
            return;
        }
        let mut seen = [false; HALF_EDGE_CAP];
        let mut f = 0i64;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            f += 1;
            let mut h = s;
            while !seen[h] {
                seen[h] = true;
                h = self.sigma[self.alpha[h]];
            }
        }
        let g = (2 - self.m as i64 + (n / 2) as i64 - f) / 2;
        *self.counts.by_genus.entry(g as u32).or_insert(0) += 1;
    }

    fn run(&mut self) {
        let Some(h) = self.alpha.iter().position(|&a| a == usize::MAX) else {
            self.leaf();
            return;
        };
        for p in h + 1..self.alpha.len() {
            if self.alpha[p] != usize::MAX {
                continue;
            }
            self.alpha[h] = p;
            self.alpha[p] = h;
            self.run();
            self.alpha[h] = usize::MAX;
            self.alpha[p] = usize::MAX;
        }
    }
}

/// Counts of connected labelled `j`-regular maps on `m` vertices by genus,
/// over all `(jm-1)!!` matchings with the canonical rotation.
pub fn kappa_counts(j: usize, m: usize) -> Result<KappaCounts, FatGraphError> {
    let n = j * m;
    if n % 2 == 1 {
        return Err(FatGraphError::NoMatching(n));
    }
    if n > HALF_EDGE_CAP {
        return Err(FatGraphError::TooLarge { half_edges: n, cap: HALF_EDGE_CAP });
    }
    if n == 0 {
        return Ok(KappaCounts::default());
    }
    let sigma = canonical_sigma(j, m);
    let counts = (1..n)
        .into_par_iter()
        .map(|p| {
            let mut alpha = vec![usize::MAX; n];
            alpha[0] = p;
            alpha[p] = 0;
            let mut e = Enumerator { j, m, sigma: sigma.clone(), alpha, counts: KappaCounts::default() };
            e.run();
            e.counts
        })
        .reduce(KappaCounts::default, KappaCounts::merge);
    Ok(counts)
}

/// `sum_m kappa_j^{(g)}(m) tau^m / (m! j^m)` for `m <= m_max`, with
/// `tau = -t_j`.
pub fn eg_series_from_kappa(j: usize, g: u32, m_max: usize) -> Result<Series, FatGraphError> {
    let mut c = vec![qi(0); m_max + 1];
    for (m, slot) in c.iter_mut().enumerate().skip(1) {
        if (j * m) % 2 == 1 {
            continue;
        }
        let k = kappa_counts(j, m)?.get(g);
        *slot = Rational::from_integer((k as i64).into())
            / (Rational::from_integer(factorial(m as u64)) * pow_q(&qi(j as i64), m as u32));
    }
    Ok(Series::new(Var::Tau, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_kernel::q;

    fn matching(pairs: &[(usize, usize)], n: usize) -> Vec<usize> {
        let mut a = vec![0; n];
        for &(x, y) in pairs {
            a[x] = y;
            a[y] = x;
        }
        a
    }

    #[test]
    fn genus_examples() {
        let g = |j, m, p: &[(usize, usize)]| genus_of(&FatGraph::canonical(j, m, matching(p, j * m)).unwrap());
        assert_eq!(g(4, 1, &[(0, 1), (2, 3)]), Genus::Connected(0));
        assert_eq!(g(4, 1, &[(0, 2), (1, 3)]), Genus::Connected(1));
        assert_eq!(g(3, 2, &[(0, 5), (1, 4), (2, 3)]), Genus::Connected(0));
        assert_eq!(g(2, 2, &[(0, 1), (2, 3)]), Genus::Disconnected);
    }

    #[test]
    fn small_counts() {
        let k = kappa_counts(4, 1).unwrap();
        assert_eq!((k.get(0), k.get(1), k.total()), (2, 1, 3));
        let k = kappa_counts(3, 2).unwrap();
        assert_eq!((k.get(0), k.get(1), k.total()), (12, 3, 15));
        assert_eq!(kappa_counts(3, 1), Err(FatGraphError::NoMatching(3)));
        assert!(matches!(kappa_counts(4, 6), Err(FatGraphError::TooLarge { .. })));
    }

    #[test]
    fn series_examples() {
        assert_eq!(eg_series_from_kappa(4, 1, 1).unwrap().coeff(1), q(1, 4));
        assert_eq!(eg_series_from_kappa(4, 0, 1).unwrap().coeff(1), q(1, 2));
        assert_eq!(eg_series_from_kappa(3, 1, 2).unwrap().coeff(2), q(1, 6));
    }
}
