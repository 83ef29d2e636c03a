//! Fincke–Pohst enumeration of short vectors.
//!
//! The basis is LLL-reduced first. Floating-point Cholesky data only decides
//! which branches to visit (with slack); every leaf is accepted or rejected by
//! an exact integer norm computation.

use rayon::prelude::*;

use super::gram::ZGram;
use super::linalg::{self, IMatrix};
use crate::error::{Error, Result};

/// Fincke–Pohst data for `xᵀ A x = Σ_i q_ii (x_i + Σ_{j>i} q_ij x_j)²`.
struct Cholesky {
    q: Vec<Vec<f64>>,
}

impl Cholesky {
    fn new(a: &IMatrix) -> Result<Self> {
        let m = a.len();
        let mut q: Vec<Vec<f64>> = a.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
        for i in 0..m {
            if q[i][i] <= 0.0 {
                return Err(Error::NotPositiveDefinite);
            }
            for j in i + 1..m {
                q[j][i] = q[i][j];
                q[i][j] /= q[i][i];
            }
            for k in i + 1..m {
                for l in k..m {
                    q[k][l] -= q[k][i] * q[i][l];
                }
            }
        }
        Ok(Cholesky { q })
    }
}

struct Search<'a> {
    chol: &'a Cholesky,
    reduced: &'a IMatrix,
    basis: &'a IMatrix,
    limit: i128,
    slack: f64,
}

impl Search<'_> {
    fn center(&self, i: usize, y: &[i64]) -> f64 {
        let row = &self.chol.q[i];
        -(i + 1..y.len()).map(|j| row[j] * y[j] as f64).sum::<f64>()
    }

    fn range(&self, i: usize, y: &[i64], rest: f64) -> (f64, i64, i64) {
        let c = self.center(i, y);
        let r = ((rest + self.slack).max(0.0) / self.chol.q[i][i]).sqrt();
        (c, (c - r - 1e-9).ceil() as i64, (c + r + 1e-9).floor() as i64)
    }

    /// Depth-first over coordinates `i, i−1, …, 0`; `top` is true while all
    /// higher coordinates are zero, which keeps one vector of each ± pair.
    fn descend<A>(&self, i: usize, y: &mut [i64], rest: f64, top: bool, acc: &mut A, f: &(impl Fn(&mut A, &[i64], i64) + Sync)) {
        let (c, mut lo, hi) = self.range(i, y, rest);
        if top {
            lo = lo.max(0);
        }
        for v in lo..=hi {
            let d = v as f64 - c;
            let next = rest - self.chol.q[i][i] * d * d;
            if next < -self.slack {
                continue;
            }
            y[i] = v;
            let still_top = top && v == 0;
            if i == 0 {
                if !still_top {
                    self.leaf(y, acc, f);
                }
            } else {
                self.descend(i - 1, y, next, still_top, acc, f);
            }
        }
        y[i] = 0;
    }

    fn leaf<A>(&self, y: &[i64], acc: &mut A, f: &(impl Fn(&mut A, &[i64], i64) + Sync)) {
        let n2 = linalg::bilinear(self.reduced, y, y);
        if n2 > self.limit {
            return;
        }
        let x = linalg::mat_vec(self.basis, y);
        f(acc, &x, (n2 / 2) as i64);
    }
}

/// Visit one representative of every ± pair of nonzero vectors with `q(x) ≤ bound`.
///
/// Work is split over the outermost coordinate; one accumulator per split is
/// returned in a fixed order, so merging them is deterministic.
pub fn enumerate_fold<A, I, F>(t: &ZGram, bound: i64, init: I, f: F) -> Result<Vec<A>>
where
    A: Send,
    I: Fn() -> A + Sync,
    F: Fn(&mut A, &[i64], i64) + Sync,
{
    let m = t.m;
    if bound <= 0 || m == 0 {
        return Ok(Vec::new());
    }
    if !t.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    let (reduced, basis) = t.lll();
    let chol = Cholesky::new(&reduced.entries)?;
    let limit = 2 * bound as i128;
    let search = Search {
        chol: &chol,
        reduced: &reduced.entries,
        basis: &basis,
        limit,
        slack: 1e-7 * (1.0 + limit as f64),
    };
    let top = m - 1;
    let y0 = vec![0i64; m];
    let (c, lo, hi) = search.range(top, &y0, limit as f64);
    let lo = lo.max(0);
    let out = (lo..=hi)
        .into_par_iter()
        .map(|v| {
            let mut acc = init();
            let mut y = vec![0i64; m];
            let d = v as f64 - c;
            let rest = limit as f64 - chol.q[top][top] * d * d;
            if rest < -search.slack {
                return acc;
            }
            y[top] = v;
            if top == 0 {
                if v != 0 {
                    search.leaf(&y, &mut acc, &f);
                }
            } else {
                search.descend(top - 1, &mut y, rest, v == 0, &mut acc, &f);
            }
            acc
        })
        .collect();
    Ok(out)
}

/// ± pair representatives with `q(x) ≤ bound`, sorted by `q` then coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ShortVectors {
    pub dim: usize,
    pub bound: i64,
    coords: Vec<i32>,
    norms: Vec<i64>,
}

impl ShortVectors {
    /// Number of ± pairs.
    pub fn pairs(&self) -> usize {
        self.norms.len()
    }

    /// Number of vectors, counting both signs.
    pub fn count(&self) -> usize {
        2 * self.pairs()
    }

    pub fn is_empty(&self) -> bool {
        self.norms.is_empty()
    }

    pub fn vector(&self, k: usize) -> Vec<i64> {
        self.coords[k * self.dim..(k + 1) * self.dim].iter().map(|&c| c as i64).collect()
    }

    pub fn q(&self, k: usize) -> i64 {
        self.norms[k]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vec<i64>, i64)> + '_ {
        (0..self.pairs()).map(move |k| (self.vector(k), self.norms[k]))
    }

    /// Smallest `q` among the vectors, if any.
    pub fn minimum(&self) -> Option<i64> {
        self.norms.first().copied()
    }

    /// Vectors (both signs) of `q`-value `v`.
    pub fn count_at(&self, v: i64) -> usize {
        2 * self.norms.iter().filter(|&&n| n == v).count()
    }

    /// `[1, N(1), …, N(bound)]` where `N(k)` counts vectors with `q = k`.
    pub fn theta_counts(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.bound.max(0) as usize + 1];
        out[0] = 1;
        for &n in &self.norms {
            out[n as usize] += 2;
        }
        out
    }
}

fn canonical_sign(x: &mut [i64]) {
    if x.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0) {
        for c in x.iter_mut() {
            *c = -*c;
        }
    }
}

/// All ± pairs of nonzero vectors with `q(x) = xᵀ t x / 2 ≤ bound`.
pub fn enumerate_short(t: &ZGram, bound: i64) -> Result<ShortVectors> {
    let parts = enumerate_fold(t, bound, Vec::<(Vec<i64>, i64)>::new, |acc, x, q| {
        let mut v = x.to_vec();
        canonical_sign(&mut v);
        acc.push((v, q));
    })?;
    let mut all: Vec<(Vec<i64>, i64)> = parts.into_iter().flatten().collect();
    all.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    let mut coords = Vec::with_capacity(all.len() * t.m);
    let mut norms = Vec::with_capacity(all.len());
    for (v, q) in all {
        for c in v {
            coords.push(i32::try_from(c).map_err(|_| Error::Internal("short vector coordinate overflows".into()))?);
        }
        norms.push(q);
    }
    Ok(ShortVectors { dim: t.m, bound: bound.max(0), coords, norms })
}

/// Theta counts `[1, N(1), …, N(bound)]` without storing the vectors.
pub fn theta_counts(t: &ZGram, bound: i64) -> Result<Vec<u64>> {
    let b = bound.max(0) as usize;
    let parts = enumerate_fold(t, bound, || vec![0u64; b + 1], |acc, _, q| acc[q as usize] += 2)?;
    let mut out = vec![0u64; b + 1];
    out[0] = 1;
    for p in parts {
        for (o, c) in out.iter_mut().zip(p) {
            *o += c;
        }
    }
    Ok(out)
}

/// Minimum `q`-value and kissing number of a positive definite lattice.
pub fn minimum(t: &ZGram) -> Result<(i64, usize)> {
    if t.m == 0 {
        return Err(Error::InvalidArgument("zero-dimensional lattice has no minimum".into()));
    }
    let (reduced, _) = t.lll();
    let guess = (0..t.m).map(|i| reduced.entries[i][i]).min().unwrap_or(0) / 2;
    let sv = enumerate_short(t, guess.max(1))?;
    let min = sv.minimum().ok_or_else(|| Error::Internal("no vector below a basis norm".into()))?;
    Ok((min, sv.count_at(min)))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn e8() -> ZGram {
        let mut g = linalg::identity(8);
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)] {
            g[a][b] = -1;
            g[b][a] = -1;
        }
        ZGram::new(g).unwrap()
    }

    #[test]
    fn e8_shells() {
        let sv = enumerate_short(&e8(), 2).unwrap();
        assert_eq!(sv.count_at(1), 240);
        assert_eq!(sv.count_at(2), 2160);
        assert_eq!(sv.theta_counts(), vec![1, 240, 2160]);
        assert_eq!(theta_counts(&e8(), 3).unwrap(), vec![1, 240, 2160, 6720]);
        for (x, q) in sv.iter() {
            assert_eq!(e8().q(&x), q as i128);
        }
    }

    #[test]
    fn bound_zero_is_empty() {
        assert!(enumerate_short(&e8(), 0).unwrap().is_empty());
    }

    #[test]
    fn minimum_of_scaled_lattices() {
        assert_eq!(minimum(&e8()).unwrap(), (1, 240));
        let a2 = ZGram::new(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        assert_eq!(minimum(&a2).unwrap(), (1, 6));
        let z2 = ZGram::new(vec![vec![4, 0], vec![0, 6]]).unwrap();
        assert_eq!(minimum(&z2).unwrap(), (2, 2));
    }

    #[test]
    fn skewed_basis_gives_same_counts() {
        let mut u = linalg::identity(8);
        for i in 0..7 {
            u[i][i + 1] = 2 + i as i64;
        }
        let skew = e8().transform(&u);
        assert_eq!(theta_counts(&skew, 2).unwrap(), vec![1, 240, 2160]);
    }

    #[test]
    fn indefinite_rejected() {
        let h = ZGram::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert!(matches!(enumerate_short(&h, 1), Err(Error::NotPositiveDefinite)));
    }

    #[test]
    fn output_is_independent_of_thread_count() {
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let a = one.install(|| enumerate_short(&e8(), 2).unwrap());
        let b = enumerate_short(&e8(), 2).unwrap();
        assert_eq!(a, b);
    }
}
