use crate::exact_kernel::binomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathKind {
    /// Steps in `{+1, -1}`.
    Dyck,
    /// Steps in `{+1, 0, -1}`.
    Motzkin,
}

/// A walk on the integers; levels are relative offsets from the row index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePath {
    pub start: i32,
    pub steps: Vec<i8>,
}

impl LatticePath {
    pub fn end(&self) -> i32 {
        self.start + self.steps.iter().map(|&s| s as i32).sum::<i32>()
    }

    /// Level occupied before each step.
    pub fn levels(&self) -> Vec<i32> {
        let mut lev = self.start;
        self.steps
            .iter()
            .map(|&s| {
                let l = lev;
                lev += s as i32;
                l
            })
            .collect()
    }

    /// Starting levels `l_m(P)` of the downsteps, in order.
    pub fn downstep_levels(&self) -> Vec<i32> {
        self.levels().into_iter().zip(&self.steps).filter(|(_, &s)| s < 0).map(|(l, _)| l).collect()
    }

    /// Levels at which the path stays flat.
    pub fn flat_levels(&self) -> Vec<i32> {
        self.levels().into_iter().zip(&self.steps).filter(|(_, &s)| s == 0).map(|(l, _)| l).collect()
    }
}

/// Every path of `j` steps from `m1` to `m2`, found by exhaustive search.
pub fn lattice_paths(j: usize, m1: i32, m2: i32, kind: PathKind) -> Vec<LatticePath> {
    let alphabet: &[i8] = match kind {
        PathKind::Dyck => &[1, -1],
        PathKind::Motzkin => &[1, 0, -1],
    };
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(j);
    fn rec(j: usize, lev: i32, target: i32, alpha: &[i8], cur: &mut Vec<i8>, start: i32, out: &mut Vec<LatticePath>) {
        let left = (j - cur.len()) as i32;
        if (lev - target).abs() > left {
            return;
        }
        if left == 0 {
            out.push(LatticePath { start, steps: cur.clone() });
            return;
        }
        for &s in alpha {
            cur.push(s);
            rec(j, lev + s as i32, target, alpha, cur, start, out);
            cur.pop();
        }
    }
    rec(j, m1, m2, alphabet, &mut cur, m1, &mut out);
    out
}

/// Closed-form count of Dyck-type paths: `C(j, (j + m1 - m2)/2)`.
pub fn dyck_count(j: usize, m1: i32, m2: i32) -> u64 {
    let d = j as i64 + m1 as i64 - m2 as i64;
    if d < 0 || d % 2 != 0 {
        return 0;
    }
    let n: u64 = binomial(j as i64, d / 2).try_into().unwrap_or(0);
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_counts() {
        assert_eq!(lattice_paths(3, 1, 0, PathKind::Dyck).len(), 3);
        assert_eq!(lattice_paths(1, 1, 0, PathKind::Dyck).len(), 1);
        assert_eq!(lattice_paths(4, 2, 0, PathKind::Dyck).len(), 4);
        assert!(lattice_paths(3, 0, 0, PathKind::Dyck).is_empty());
        assert_eq!(lattice_paths(2, 0, 0, PathKind::Motzkin).len(), 3);
        for j in 0..=12 {
            for m1 in -3..=3 {
                for m2 in -3..=3 {
                    assert_eq!(lattice_paths(j, m1, m2, PathKind::Dyck).len() as u64, dyck_count(j, m1, m2));
                }
            }
        }
    }

    #[test]
    fn downsteps() {
        let p = LatticePath { start: 1, steps: vec![-1, 1, -1] };
        assert_eq!(p.downstep_levels(), vec![1, 1]);
        assert_eq!(p.end(), 0);
    }
}
