//! `ℤ[θ]`-structures on even unimodular `ℤ`-lattices.
//!
//! A symmetric `T` with `T² + T = 1` turns the lattice into an `R`-module, and
//! `Q(λ) = ½(q(λ)+q(Tλ)) + ½(q(Tλ)−q(λ))√5` is an `R`-valued form with
//! `Tr(η⁻¹Q) = q`. The form is `R`-bilinear when `θ` acts as `−1 − T`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::gram::{RGram, ZGram};
use super::hermite::{hermite_basis, PivotStrategy};
use super::linalg::{self, IMatrix};
use crate::error::{Error, Result};
use crate::ring::{KElem, RElem};

/// An `R`-lattice recovered from a `ℤ`-lattice and a golden operator `T`.
#[derive(Clone, Debug)]
pub struct GoldenStructure {
    pub gram: RGram,
    /// Columns `b_1..b_n, θb_1..θb_n` in the source coordinates.
    pub basis_change: IMatrix,
    /// How `θ` acts in the source coordinates.
    pub theta_action: IMatrix,
    /// The order-5 isometry `T` was built from, when known.
    pub z_source: Option<IMatrix>,
}

impl GoldenStructure {
    /// Carry an integer matrix acting on the source into the golden coordinates.
    pub fn transport(&self, m: &IMatrix) -> Result<IMatrix> {
        let inv = linalg::integral_inverse(&self.basis_change)?;
        Ok(linalg::mat_mul(&inv, &linalg::mat_mul(m, &self.basis_change)))
    }
}

/// Every violated precondition of [`goldenex`], as readable messages.
pub fn golden_input_violations(t: &ZGram, tmat: &IMatrix) -> Vec<String> {
    let mut out = Vec::new();
    let m = t.m;
    if tmat.len() != m || !linalg::is_square(tmat) {
        out.push(format!("T must be {m}×{m}"));
        return out;
    }
    if m % 2 == 1 {
        out.push(format!("rank {m} is odd, so it cannot carry a ℤ[θ]-structure"));
    }
    if !t.is_even() {
        out.push("Gram matrix is not even".into());
    }
    if !t.is_positive_definite() {
        out.push("Gram matrix is not positive definite".into());
    } else if !t.is_unimodular() {
        out.push(format!("Gram matrix is not unimodular (det {})", t.det()));
    }
    let t2 = linalg::mat_mul(tmat, tmat);
    if linalg::mat_add(&t2, tmat) != linalg::identity(m) {
        out.push("T² + T ≠ 1 (minimal polynomial X² + X − 1 fails)".into());
    }
    let lhs = linalg::mat_mul(&t.entries, tmat);
    if lhs != linalg::transpose(&lhs) {
        out.push("T is not self-adjoint for the Gram matrix".into());
    }
    out
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

/// Incremental row echelon form used to test membership in a `ℚ`-span.
struct Span {
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl Span {
    fn reduce(&self, mut v: Vec<BigRational>) -> Vec<BigRational> {
        for (p, r) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(r) {
                *x -= &f * y;
            }
        }
        v
    }

    fn insert(&mut self, v: Vec<BigRational>) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = BigRational::one() / &v[p];
        for x in v.iter_mut() {
            *x *= &inv;
        }
        self.rows.push((p, v));
        true
    }
}

/// Extract the `R`-lattice carried by `(t, T)`.
pub fn goldenex(t: &ZGram, tmat: &IMatrix) -> Result<GoldenStructure> {
    let violations = golden_input_violations(t, tmat);
    if !violations.is_empty() {
        return Err(Error::Precondition(violations));
    }
    let m = t.m;
    let n = m / 2;
    let act = linalg::mat_neg(&linalg::mat_add(&linalg::identity(m), tmat));

    // a K-basis w_1..w_n chosen among the unit vectors
    let mut span = Span { rows: Vec::new() };
    let mut w: Vec<Vec<i64>> = Vec::new();
    for i in 0..m {
        let e: Vec<i64> = (0..m).map(|j| i64::from(i == j)).collect();
        let ae = linalg::mat_vec(&act, &e);
        if span.insert(e.iter().map(|&x| rat(x)).collect()) {
            span.insert(ae.iter().map(|&x| rat(x)).collect());
            w.push(e);
        }
    }
    if w.len() != n {
        return Err(Error::Internal(format!("found {} K-independent vectors, expected {n}", w.len())));
    }
    // columns w_1..w_n, θw_1..θw_n
    let mut c0 = linalg::zeros(m, m);
    for (k, wk) in w.iter().enumerate() {
        let awk = linalg::mat_vec(&act, wk);
        for r in 0..m {
            c0[r][k] = wk[r];
            c0[r][n + k] = awk[r];
        }
    }
    let c0_inv = linalg::rational_inverse(&linalg::to_rational(&c0))?;

    // K-coordinates of every unit vector, scaled into R
    let coords: Vec<Vec<BigRational>> = (0..m).map(|i| c0_inv.iter().map(|row| row[i].clone()).collect()).collect();
    let mut d = BigInt::one();
    for c in &coords {
        for x in c {
            d = d.lcm(x.denom());
        }
    }
    let rows: Vec<Vec<RElem>> = coords
        .iter()
        .map(|c| {
            (0..n)
                .map(|k| {
                    let a = (&c[k] * &d).to_integer().to_i64().expect("small");
                    let b = (&c[n + k] * &d).to_integer().to_i64().expect("small");
                    RElem::new(a, b)
                })
                .collect()
        })
        .collect();
    let h = hermite_basis(&rows, PivotStrategy::MinNorm)?;
    if h.len() != n {
        return Err(Error::Internal(format!("module has rank {} over R, expected {n}", h.len())));
    }

    // b_k = Σ_l (h_kl / d)·w_l in source coordinates
    let mut basis = linalg::zeros(m, m);
    for (k, hk) in h.iter().enumerate() {
        let mut v = vec![BigInt::zero(); m];
        for (l, x) in hk.iter().enumerate() {
            for r in 0..m {
                v[r] += BigInt::from(x.a) * c0[r][l] + BigInt::from(x.b) * c0[r][n + l];
            }
        }
        let bk: Vec<i64> = v
            .iter()
            .map(|x| {
                let (q, rem) = x.div_rem(&d);
                if !rem.is_zero() {
                    return Err(Error::Internal("basis vector is not integral".into()));
                }
                q.to_i64().ok_or_else(|| Error::Internal("basis overflow".into()))
            })
            .collect::<Result<_>>()?;
        let abk = linalg::mat_vec(&act, &bk);
        for r in 0..m {
            basis[r][k] = bk[r];
            basis[r][n + k] = abk[r];
        }
    }
    let det = linalg::det_bareiss(&basis);
    if !det.abs().is_one() {
        return Err(Error::Internal(format!("R-basis has index {det} in the source lattice")));
    }

    let tb: Vec<Vec<i64>> = (0..n)
        .map(|k| {
            let bk: Vec<i64> = (0..m).map(|r| basis[r][k]).collect();
            linalg::mat_vec(tmat, &bk)
        })
        .collect();
    let bcol: Vec<Vec<i64>> = (0..n).map(|k| (0..m).map(|r| basis[r][k]).collect()).collect();
    let mut entries = vec![vec![RElem::ZERO; n]; n];
    for k in 0..n {
        for l in 0..n {
            let btt = linalg::bilinear(&t.entries, &tb[k], &tb[l]) as i64;
            let bb = linalg::bilinear(&t.entries, &bcol[k], &bcol[l]) as i64;
            entries[k][l] = RElem::new(btt, btt - bb);
        }
    }
    let gram = RGram::new(entries)?;
    let check = gram.trace_gram(&KElem::eta_inv())?;
    if check != t.transform(&basis) {
        return Err(Error::Internal("trace form of the extracted R-lattice differs from the source".into()));
    }
    Ok(GoldenStructure { gram, basis_change: basis, theta_action: act, z_source: None })
}

/// `T = z + z⁴` for an order-5 isometry `z`.
pub fn golden_operator(z: &IMatrix) -> IMatrix {
    let z2 = linalg::mat_mul(z, z);
    let z4 = linalg::mat_mul(&z2, &z2);
    linalg::mat_add(z, &z4)
}

/// `Q(σλ) = conj(θ² Q(λ))` on all basis vectors and pairwise sums, for `σ`
/// given on the trace-lattice coordinates of `g`.
pub fn galois_check(g: &RGram, sigma: &IMatrix) -> Result<bool> {
    let m = 2 * g.n;
    if sigma.len() != m || !linalg::is_square(sigma) {
        return Err(Error::Dimension(format!("σ must be {m}×{m}")));
    }
    if !linalg::det_bareiss(sigma).abs().is_one() {
        return Ok(false);
    }
    let t = g.trace_gram(&KElem::eta_inv())?;
    if t.transform(sigma) != t {
        return Ok(false);
    }
    let theta2 = RElem::THETA * RElem::THETA;
    let holds = |x: &[i64]| {
        let lam = g.coords_to_relem(x);
        let mu = g.coords_to_relem(&linalg::mat_vec(sigma, x));
        g.q_value(&mu) == (theta2 * g.q_value(&lam)).conj()
    };
    let unit = |i: usize| -> Vec<i64> { (0..m).map(|k| i64::from(k == i)).collect() };
    for i in 0..m {
        if !holds(&unit(i)) {
            return Ok(false);
        }
        for j in i + 1..m {
            let mut x = unit(i);
            x[j] = 1;
            if !holds(&x) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
