use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::linalg::{self, IMatrix, QMatrix};
use crate::error::{Error, Result};
use crate::ring::{KElem, RElem};

/// Gram matrix `(B(b_k, b_l))` of an `R`-lattice with `Q(x) = B(x,x)/2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RGramJson")]
pub struct RGram {
    pub n: usize,
    pub entries: Vec<Vec<RElem>>,
}

#[derive(Deserialize)]
struct RGramJson {
    n: usize,
    entries: Vec<Vec<RElem>>,
}

impl TryFrom<RGramJson> for RGram {
    type Error = Error;

    fn try_from(j: RGramJson) -> Result<Self> {
        if j.entries.len() != j.n {
            return Err(Error::Dimension(format!("n = {} but {} rows", j.n, j.entries.len())));
        }
        RGram::new(j.entries)
    }
}

impl RGram {
    pub fn new(entries: Vec<Vec<RElem>>) -> Result<Self> {
        let n = entries.len();
        if let Some(r) = entries.iter().position(|r| r.len() != n) {
            return Err(Error::Dimension(format!("row {r} has length {}, expected {n}", entries[r].len())));
        }
        for k in 0..n {
            for l in 0..k {
                if entries[k][l] != entries[l][k] {
                    return Err(Error::InvalidArgument(format!("Gram matrix not symmetric at ({k}, {l})")));
                }
            }
        }
        Ok(RGram { n, entries })
    }

    pub fn empty() -> Self {
        RGram { n: 0, entries: Vec::new() }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("RGram serializes")
    }

    pub fn entry(&self, k: usize, l: usize) -> RElem {
        self.entries[k][l]
    }

    pub fn scaled(&self, c: RElem) -> RGram {
        RGram {
            n: self.n,
            entries: self.entries.iter().map(|r| r.iter().map(|x| c * *x).collect()).collect(),
        }
    }

    /// All diagonal entries lie in `2R`.
    pub fn is_even(&self) -> bool {
        (0..self.n).all(|k| {
            let d = self.entries[k][k];
            d.a % 2 == 0 && d.b % 2 == 0
        })
    }

    fn to_k(&self) -> Vec<Vec<KElem>> {
        self.entries.iter().map(|r| r.iter().map(KElem::from).collect()).collect()
    }

    /// Pivots of symmetric elimination without row exchanges; `None` at a zero pivot.
    fn pivots(&self) -> Option<Vec<KElem>> {
        let n = self.n;
        let mut m = self.to_k();
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            if m[k][k].is_zero() {
                return None;
            }
            let inv = m[k][k].inverse().ok()?;
            for i in k + 1..n {
                if m[i][k].is_zero() {
                    continue;
                }
                let f = &m[i][k] * &inv;
                for j in k..n {
                    let v = &f * &m[k][j];
                    m[i][j] = &m[i][j] - &v;
                }
            }
            out.push(m[k][k].clone());
        }
        Some(out)
    }

    /// Determinant in `R`.
    pub fn det(&self) -> RElem {
        let n = self.n;
        let mut m = self.to_k();
        let mut det = KElem::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
                return RElem::ZERO;
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            let inv = m[c][c].inverse().expect("nonzero pivot");
            for i in c + 1..n {
                if m[i][c].is_zero() {
                    continue;
                }
                let f = &m[i][c] * &inv;
                for j in c..n {
                    let v = &f * &m[c][j];
                    m[i][j] = &m[i][j] - &v;
                }
            }
            det = &det * &m[c][c];
        }
        det.to_relem().expect("determinant of an R-matrix lies in R")
    }

    /// Positive definite under both real embeddings.
    ///
    /// The leading principal minors are the partial products of the
    /// elimination pivots, so it suffices that every pivot is totally positive.
    pub fn is_totally_positive_definite(&self) -> bool {
        self.pivots().is_some_and(|p| p.iter().all(KElem::is_totally_positive))
    }

    pub fn is_even_unimodular(&self) -> bool {
        self.is_even() && self.det().is_unit()
    }

    /// `B(x, y)` for `x, y ∈ R^n`.
    pub fn polar(&self, x: &[RElem], y: &[RElem]) -> RElem {
        let mut acc = RElem::ZERO;
        for (k, row) in self.entries.iter().enumerate() {
            if x[k].is_zero() {
                continue;
            }
            let r: RElem = row.iter().zip(y).map(|(g, v)| *g * *v).sum();
            acc += x[k] * r;
        }
        acc
    }

    /// `Q(x) = B(x,x)/2`; requires an even Gram matrix.
    pub fn q_value(&self, x: &[RElem]) -> RElem {
        let mut acc = RElem::ZERO;
        for k in 0..self.n {
            if x[k].is_zero() {
                continue;
            }
            let d = self.entries[k][k];
            acc += x[k] * x[k] * RElem::new(d.a / 2, d.b / 2);
            for l in k + 1..self.n {
                acc += x[k] * x[l] * self.entries[k][l];
            }
        }
        acc
    }

    /// `R`-coordinates of an integer vector on the basis `b_1..b_n, θb_1..θb_n`.
    pub fn coords_to_relem(&self, x: &[i64]) -> Vec<RElem> {
        (0..self.n).map(|k| RElem::new(x[k], x[self.n + k])).collect()
    }

    pub fn relem_to_coords(&self, v: &[RElem]) -> Vec<i64> {
        v.iter().map(|r| r.a).chain(v.iter().map(|r| r.b)).collect()
    }

    /// The trace lattice `(Λ, Tr(α Q))` on the basis `b_1..b_n, θb_1..θb_n`.
    pub fn trace_gram(&self, alpha: &KElem) -> Result<ZGram> {
        if !alpha.is_totally_positive() {
            return Err(Error::NotTotallyPositive(alpha.to_string()));
        }
        let n = self.n;
        let theta_pow = [RElem::ONE, RElem::THETA, RElem::THETA * RElem::THETA];
        let mut t = linalg::zeros(2 * n, 2 * n);
        for s in 0..2 {
            for u in 0..2 {
                for k in 0..n {
                    for l in 0..n {
                        let x = alpha * &KElem::from(theta_pow[s + u] * self.entries[k][l]);
                        let tr = x.trace();
                        if !tr.is_integer() {
                            return Err(Error::NonIntegral(format!("Tr({alpha}·θ^{}·g[{k}][{l}]) = {tr}", s + u)));
                        }
                        t[s * n + k][u * n + l] =
                            tr.to_integer().to_i64().ok_or_else(|| Error::Internal("trace overflows".into()))?;
                    }
                }
            }
        }
        ZGram::new(t)
    }

    pub fn orthogonal_sum(&self, other: &RGram) -> RGram {
        let n = self.n + other.n;
        let mut entries = vec![vec![RElem::ZERO; n]; n];
        for k in 0..self.n {
            entries[k][..self.n].copy_from_slice(&self.entries[k]);
        }
        for k in 0..other.n {
            entries[self.n + k][self.n..].copy_from_slice(&other.entries[k]);
        }
        RGram { n, entries }
    }

    /// Integer matrix of multiplication by `θ` on trace-lattice coordinates.
    pub fn theta_action(&self) -> IMatrix {
        // θ(x + yθ) = y + (x − y)θ
        let n = self.n;
        let mut m = linalg::zeros(2 * n, 2 * n);
        for k in 0..n {
            m[k][n + k] = 1;
            m[n + k][k] = 1;
            m[n + k][n + k] = -1;
        }
        m
    }
}

impl fmt::Display for RGram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

pub fn is_even_unimodular(g: &RGram) -> bool {
    g.is_even_unimodular()
}

pub fn trace_gram(g: &RGram, alpha: &KElem) -> Result<ZGram> {
    g.trace_gram(alpha)
}

pub fn orthogonal_sum(g1: &RGram, g2: &RGram) -> RGram {
    g1.orthogonal_sum(g2)
}

/// Polar-form Gram matrix of a `ℤ`-lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ZGramJson")]
pub struct ZGram {
    pub m: usize,
    pub entries: IMatrix,
}

#[derive(Deserialize)]
struct ZGramJson {
    m: usize,
    entries: IMatrix,
}

impl TryFrom<ZGramJson> for ZGram {
    type Error = Error;

    fn try_from(j: ZGramJson) -> Result<Self> {
        if j.entries.len() != j.m {
            return Err(Error::Dimension(format!("m = {} but {} rows", j.m, j.entries.len())));
        }
        ZGram::new(j.entries)
    }
}

impl ZGram {
    pub fn new(entries: IMatrix) -> Result<Self> {
        let m = entries.len();
        if !linalg::is_square(&entries) {
            return Err(Error::Dimension("Gram matrix is not square".into()));
        }
        if !linalg::is_symmetric(&entries) {
            return Err(Error::InvalidArgument("Gram matrix is not symmetric".into()));
        }
        Ok(ZGram { m, entries })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("ZGram serializes")
    }

    pub fn is_even(&self) -> bool {
        (0..self.m).all(|i| self.entries[i][i] % 2 == 0)
    }

    pub fn det(&self) -> BigInt {
        linalg::det_bareiss(&self.entries)
    }

    pub fn is_positive_definite(&self) -> bool {
        linalg::is_positive_definite(&self.entries)
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    /// `q(x) = xᵀ t x / 2`.
    pub fn q(&self, x: &[i64]) -> i128 {
        linalg::bilinear(&self.entries, x, x) / 2
    }

    /// `t⁻¹`: coordinates of the dual basis.
    pub fn dual_basis_matrix(&self) -> Result<QMatrix> {
        linalg::rational_inverse(&linalg::to_rational(&self.entries))
    }

    /// LLL-reduced Gram matrix and the transform `u` with `reduced = uᵀ t u`.
    pub fn lll(&self) -> (ZGram, IMatrix) {
        let (g, u) = linalg::lll_gram(&self.entries);
        (ZGram { m: self.m, entries: g }, u)
    }

    pub fn transform(&self, u: &IMatrix) -> ZGram {
        ZGram { m: u[0].len(), entries: linalg::congruence(&self.entries, u) }
    }

    pub fn scaled_inverse(&self, p: i64) -> Result<ZGram> {
        let inv = self.dual_basis_matrix()?;
        let scaled: QMatrix = inv
            .into_iter()
            .map(|r| r.into_iter().map(|x| x * BigInt::from(p)).collect())
            .collect();
        let ints = linalg::to_integer_matrix(&scaled)
            .ok_or_else(|| Error::NonIntegral(format!("{p}·t⁻¹ is not integral")))?;
        ZGram::new(ints)
    }
}

pub fn dual_basis_matrix(t: &ZGram) -> Result<QMatrix> {
    t.dual_basis_matrix()
}

impl fmt::Display for ZGram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:3}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> RElem {
        RElem::new(a, b)
    }

    #[test]
    fn trace_gram_of_rank_one_form() {
        // Tr(2η⁻¹) = 2, Tr(2θη⁻¹) = −2, Tr(2θ²η⁻¹) = 4
        let g = RGram::new(vec![vec![r(2, 0)]]).unwrap();
        let t = g.trace_gram(&KElem::eta_inv()).unwrap();
        assert_eq!(t.entries, vec![vec![2, -2], vec![-2, 4]]);
        assert!(t.is_even() && t.is_positive_definite());
        // N(det g) = 4
        assert_eq!(t.det(), BigInt::from(4));
        let t1 = g.trace_gram(&KElem::one()).unwrap();
        assert_eq!(t1.entries, vec![vec![4, -2], vec![-2, 6]]);
        assert_eq!(t1.det(), BigInt::from(20));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(RGram::new(vec![vec![r(2, 0), r(1, 0)], vec![r(0, 1), r(2, 0)]]).is_err());
        assert!(RGram::new(vec![vec![r(2, 0), r(1, 0)]]).is_err());
        let g = RGram::new(vec![vec![r(2, 0)]]).unwrap();
        assert!(matches!(g.trace_gram(&KElem::from_ints(0, 1)), Err(Error::NotTotallyPositive(_))));
        assert!(ZGram::new(vec![vec![2, 1], vec![0, 2]]).is_err());
        assert!(RGram::from_json(r#"{"n": 2, "entries": [[[2,0]]]}"#).is_err());
    }

    #[test]
    fn positive_definiteness_needs_both_embeddings() {
        // [[2, 1+2θ], [1+2θ, 2]]: minor 4 − 5 < 0 under both embeddings
        let g = RGram::new(vec![vec![r(2, 0), r(1, 2)], vec![r(1, 2), r(2, 0)]]).unwrap();
        assert!(!g.is_totally_positive_definite());
        // [[2θ+2, 0], [0, 2]]: 2+2θ = 2φ is positive under σ1 only
        let h = RGram::new(vec![vec![r(2, 2), r(0, 0)], vec![r(0, 0), r(2, 0)]]).unwrap();
        assert!(!h.is_totally_positive_definite());
        let ok = RGram::new(vec![vec![r(2, 0), r(1, 0)], vec![r(1, 0), r(2, 0)]]).unwrap();
        assert!(ok.is_totally_positive_definite());
        assert_eq!(ok.det(), r(3, 0));
    }

    #[test]
    fn json_roundtrip() {
        let g = RGram::new(vec![vec![r(2, 0), r(0, 1)], vec![r(0, 1), r(2, 2)]]).unwrap();
        let text = g.to_json();
        assert_eq!(text, r#"{"n":2,"entries":[[[2,0],[0,1]],[[0,1],[2,2]]]}"#);
        assert_eq!(RGram::from_json(&text).unwrap(), g);
        let z = ZGram::new(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        assert_eq!(ZGram::from_json(&z.to_json()).unwrap(), z);
    }

    #[test]
    fn q_value_matches_polar() {
        let g = RGram::new(vec![vec![r(2, 0), r(0, 1)], vec![r(0, 1), r(4, 2)]]).unwrap();
        let x = [r(1, -2), r(3, 1)];
        let b = g.polar(&x, &x);
        assert_eq!(g.q_value(&x).scale(2), b);
    }

    #[test]
    fn theta_action_squares_correctly() {
        let g = RGram::new(vec![vec![r(2, 0)]]).unwrap();
        let a = g.theta_action();
        // θ² + θ − 1 = 0
        let a2 = linalg::mat_mul(&a, &a);
        let lhs = linalg::mat_add(&a2, &a);
        assert_eq!(lhs, linalg::identity(2));
    }
}
