//! `p`-modularity: an integral equivalence between `(L, q)` and `(L^*, p·q)`.
//!
//! In coordinates the dual lattice scaled by `p` has Gram matrix `p·t⁻¹`, so
//! `L` is `p`-modular iff some unimodular `U` satisfies `Uᵀ(p·t⁻¹)U = t`. The
//! search picks images of an LLL-reduced basis of `t` among short vectors of
//! `p·t⁻¹`, pruning on norms and inner products.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::enumerate::{enumerate_short, minimum, theta_counts};
use super::gram::{RGram, ZGram};
use super::linalg::{self, IMatrix};
use crate::error::{Error, Result};
use crate::ring::KElem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `witnessᵀ (p·t⁻¹) witness = t`.
    Modular { witness: IMatrix },
    NotModular { reason: String },
    /// The search ran out of time; `evidence` lists what did agree.
    Undecided { evidence: String },
}

impl Verdict {
    pub fn is_modular(&self) -> bool {
        matches!(self, Verdict::Modular { .. })
    }

    pub fn json_flag(&self) -> Value {
        match self {
            Verdict::Modular { .. } => json!(true),
            Verdict::NotModular { .. } => json!(false),
            Verdict::Undecided { .. } => json!("undecided"),
        }
    }

    pub fn witness(&self) -> Option<&IMatrix> {
        match self {
            Verdict::Modular { witness } => Some(witness),
            _ => None,
        }
    }
}

struct Candidate {
    x: Vec<i64>,
    /// `s·x`, so inner products are plain dot products.
    sx: Vec<i64>,
    norm: i64,
}

struct IsometrySearch<'a> {
    target: &'a IMatrix,
    cands: Vec<Candidate>,
    /// Candidate indices by target basis position.
    by_pos: Vec<Vec<usize>>,
    deadline: Instant,
    nodes: u64,
    timed_out: bool,
}

impl IsometrySearch<'_> {
    fn dot(a: &[i64], b: &[i64]) -> i64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    fn run(&mut self, k: usize, chosen: &mut Vec<usize>) -> bool {
        let m = self.target.len();
        if k == m {
            return true;
        }
        for ci in 0..self.by_pos[k].len() {
            self.nodes += 1;
            if self.nodes.is_multiple_of(4096) && Instant::now() > self.deadline {
                self.timed_out = true;
                return false;
            }
            let c = self.by_pos[k][ci];
            let ok = chosen
                .iter()
                .enumerate()
                .all(|(j, &prev)| Self::dot(&self.cands[c].x, &self.cands[prev].sx) == self.target[k][j]);
            if !ok {
                continue;
            }
            chosen.push(c);
            if self.run(k + 1, chosen) {
                return true;
            }
            chosen.pop();
            if self.timed_out {
                return false;
            }
        }
        false
    }
}

/// Decide whether `t` is `p`-modular within `budget`.
pub fn modularity_check(t: &ZGram, p: i64, budget: Duration) -> Result<Verdict> {
    if p <= 0 {
        return Err(Error::InvalidArgument(format!("level p = {p} must be positive")));
    }
    if !t.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    let deadline = Instant::now() + budget;
    let m = t.m;
    let s = t.scaled_inverse(p)?;
    let det = t.det();
    if &det * &det != BigInt::from(p).pow(m as u32) {
        return Ok(Verdict::NotModular { reason: format!("det {det} is not ±p^(m/2)") });
    }
    if t.is_even() != s.is_even() {
        return Ok(Verdict::NotModular { reason: "parity of the scaled dual differs".into() });
    }
    let (reduced, w) = t.lll();
    let maxdiag = (0..m).map(|i| reduced.entries[i][i]).max().unwrap_or(0);
    let bound = maxdiag / 2 + maxdiag % 2;
    let th_t = theta_counts(t, bound)?;
    let th_s = theta_counts(&s, bound)?;
    if th_t != th_s {
        let k = th_t.iter().zip(&th_s).position(|(a, b)| a != b).unwrap_or(0);
        return Ok(Verdict::NotModular {
            reason: format!("theta series differ at q^{k}: {} vs {}", th_t[k], th_s[k]),
        });
    }
    let evidence = format!("det² = p^{m}; theta series agree through q^{bound}");

    let sv = enumerate_short(&s, bound)?;
    let mut cands = Vec::with_capacity(sv.count());
    for (x, q) in sv.iter() {
        let neg: Vec<i64> = x.iter().map(|c| -c).collect();
        for v in [x, neg] {
            let sx = linalg::mat_vec(&s.entries, &v);
            cands.push(Candidate { x: v, sx, norm: 2 * q });
        }
    }
    let mut by_pos: Vec<Vec<usize>> = (0..m)
        .map(|k| (0..cands.len()).filter(|&c| cands[c].norm == reduced.entries[k][k]).collect())
        .collect();
    // −U works as well as U, so the first image may keep one sign
    by_pos[0].retain(|&c| c % 2 == 0);

    let mut search = IsometrySearch {
        target: &reduced.entries,
        cands,
        by_pos,
        deadline,
        nodes: 0,
        timed_out: false,
    };
    let mut chosen = Vec::with_capacity(m);
    if !search.run(0, &mut chosen) {
        return Ok(if search.timed_out {
            Verdict::Undecided { evidence: format!("{evidence}; search stopped after {} nodes", search.nodes) }
        } else {
            Verdict::NotModular { reason: "exhaustive isometry search found no equivalence".into() }
        });
    }
    let mut v = linalg::zeros(m, m);
    for (k, &c) in chosen.iter().enumerate() {
        for r in 0..m {
            v[r][k] = search.cands[c].x[r];
        }
    }
    // vᵀ s v = wᵀ t w, so u = v w⁻¹ carries s to t
    let u = linalg::mat_mul(&v, &linalg::integral_inverse(&w)?);
    if s.transform(&u) != *t {
        return Err(Error::Internal("isometry witness failed verification".into()));
    }
    Ok(Verdict::Modular { witness: u })
}

/// The member of the modular family attached to `a ≥ 0`.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub a: i64,
    /// `a² + 5a + 5`.
    pub p: i64,
    pub gram: ZGram,
    pub min: i64,
    pub kissing: usize,
    pub det: BigInt,
    /// `det = p^n` with `n` the rank of the `R`-lattice.
    pub det_ok: bool,
    /// `t + a·s` for `(s, t) = ν(Θ − 1)` of the source lattice, when supplied.
    pub min_bound: Option<i64>,
    pub modular: Verdict,
}

impl Certificate {
    pub fn min_ok(&self) -> Option<bool> {
        self.min_bound.map(|b| self.min >= b)
    }

    pub fn to_json(&self) -> Value {
        let evidence = match &self.modular {
            Verdict::NotModular { reason } => Some(reason.clone()),
            Verdict::Undecided { evidence } => Some(evidence.clone()),
            Verdict::Modular { .. } => None,
        };
        json!({
            "a": self.a,
            "p": self.p,
            "min": self.min,
            "kissing": self.kissing,
            "det": self.det.to_string(),
            "det_ok": self.det_ok,
            "min_bound": self.min_bound,
            "modular": self.modular.json_flag(),
            "witness": self.modular.witness(),
            "evidence": evidence,
        })
    }
}

/// `p = a² + 5a + 5`.
pub fn family_level(a: i64) -> i64 {
    a * a + 5 * a + 5
}

/// `trace_gram(g, 1 + aη⁻¹)` with its minimum, determinant and modularity verdict.
///
/// `nu` is `ν(Θ(g) − 1) = (s, t)`; when given, the minimum is compared with `t + a·s`.
pub fn modular_family(g: &RGram, a: i64, nu: Option<(i64, i64)>, budget: Duration) -> Result<Certificate> {
    if a < 0 {
        return Err(Error::InvalidArgument(format!("a = {a} must be non-negative")));
    }
    if !g.is_even_unimodular() {
        return Err(Error::Precondition(vec!["lattice is not even unimodular".into()]));
    }
    let alpha = KElem::one() + KElem::eta_inv().scale(&num_rational::BigRational::from_integer(a.into()));
    let t = g.trace_gram(&alpha)?;
    let p = family_level(a);
    let det = t.det();
    let det_ok = det == BigInt::from(p).pow(g.n as u32);
    let (min, kissing) = minimum(&t)?;
    let modular = modularity_check(&t, p, budget)?;
    Ok(Certificate {
        a,
        p,
        gram: t,
        min,
        kissing,
        det,
        det_ok,
        min_bound: nu.map(|(s, tt)| tt + a * s),
        modular,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e8() -> ZGram {
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
    fn unimodular_is_one_modular() {
        let v = modularity_check(&e8(), 1, Duration::from_secs(10)).unwrap();
        let u = v.witness().expect("modular").clone();
        assert_eq!(e8().scaled_inverse(1).unwrap().transform(&u), e8());
    }

    #[test]
    fn a2_is_three_modular() {
        // A2 ≅ √3·A2^*
        let a2 = ZGram::new(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        assert!(modularity_check(&a2, 3, Duration::from_secs(5)).unwrap().is_modular());
    }

    #[test]
    fn determinant_mismatch_is_not_modular() {
        let a2 = ZGram::new(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        assert!(matches!(
            modularity_check(&a2, 9, Duration::from_secs(5)).unwrap(),
            Verdict::NotModular { .. }
        ));
        // 2·A2^{-1} is not integral
        assert!(matches!(modularity_check(&a2, 2, Duration::from_secs(5)), Err(Error::NonIntegral(_))));
    }

    #[test]
    fn binary_forms() {
        // 12·diag(2, 6)⁻¹ = diag(6, 2)
        let d = ZGram::new(vec![vec![2, 0], vec![0, 6]]).unwrap();
        assert!(modularity_check(&d, 12, Duration::from_secs(5)).unwrap().is_modular());
        let e = ZGram::new(vec![vec![2, 0], vec![0, 8]]).unwrap();
        assert!(modularity_check(&e, 16, Duration::from_secs(5)).unwrap().is_modular());
        // 15·t⁻¹ = [[8,−1],[−1,2]]
        let f = ZGram::new(vec![vec![2, 1], vec![1, 8]]).unwrap();
        assert!(modularity_check(&f, 15, Duration::from_secs(5)).unwrap().is_modular());
    }

    #[test]
    fn family_levels() {
        assert_eq!((0..4).map(family_level).collect::<Vec<_>>(), vec![5, 11, 19, 29]);
    }
}
