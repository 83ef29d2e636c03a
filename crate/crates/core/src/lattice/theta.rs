use std::collections::BTreeMap;

use num_rational::BigRational;
use serde_json::{json, Value};

use super::enumerate::{enumerate_fold, minimum};
use super::gram::{RGram, ZGram};
use super::linalg;
use crate::error::{Error, Result};
use crate::hmf::extremal_form;
use crate::qseries::{IndexPair, QExp};
use crate::ring::KElem;

/// Hilbert theta series `Σ_λ q^{Q(λ)}` through `i = Tr(η⁻¹Q(λ)) ≤ prec`.
///
/// Vectors come from enumerating `L_{η⁻¹}`; each `Q(λ)` is then evaluated in
/// `R` from the `R`-coordinates and binned by its index pair.
pub fn hilbert_theta(g: &RGram, prec: i64) -> Result<QExp> {
    if !g.is_even() {
        return Err(Error::InvalidArgument("Hilbert theta series needs an even Gram matrix".into()));
    }
    let t = g.trace_gram(&KElem::eta_inv())?;
    let parts = enumerate_fold(&t, prec, BTreeMap::<IndexPair, u64>::new, |acc, x, q| {
        let lambda = g.coords_to_relem(x);
        let idx = IndexPair::from_element(g.q_value(&lambda));
        assert_eq!(idx.i, q, "Tr(η⁻¹Q) disagrees with the trace form");
        *acc.entry(idx).or_insert(0) += 2;
    })?;
    let mut bins: BTreeMap<IndexPair, u64> = BTreeMap::new();
    for p in parts {
        for (k, c) in p {
            *bins.entry(k).or_insert(0) += c;
        }
    }
    QExp::from_entries(
        prec,
        std::iter::once((IndexPair::ZERO, BigRational::from_integer(1.into())))
            .chain(bins.into_iter().map(|(k, c)| (k, BigRational::from_integer(c.into())))),
    )
}

/// `2·min(L_{η⁻¹}) ≤ min(L_1) ≤ (5/2)·min(L_{η⁻¹})`.
pub fn minima_bounds_hold(min_eta: i64, min_one: i64) -> bool {
    2 * min_eta <= min_one && 2 * min_one <= 5 * min_eta
}

/// `q_1(λ) = q_{η⁻¹}(λ) + q_{η⁻¹}(θ̄λ)` and `5·q_{η⁻¹}(λ) = q_1(λ) + q_1(θλ)` for
/// every sample, with the two trace forms and the `θ`-action as integer matrices.
pub fn trace_identity_check(g: &RGram, samples: &[Vec<i64>]) -> Result<bool> {
    let t_eta = g.trace_gram(&KElem::eta_inv())?;
    let t_one = g.trace_gram(&KElem::one())?;
    let th = g.theta_action();
    // θ̄ = −1 − θ
    let thbar = linalg::mat_neg(&linalg::mat_add(&linalg::identity(2 * g.n), &th));
    for x in samples {
        if x.len() != 2 * g.n {
            return Err(Error::Dimension(format!("sample of length {} for rank {}", x.len(), g.n)));
        }
        let q_eta = t_eta.q(x);
        let q_one = t_one.q(x);
        if q_one != q_eta + t_eta.q(&linalg::mat_vec(&thbar, x)) {
            return Ok(false);
        }
        if 5 * q_eta != q_one + t_one.q(&linalg::mat_vec(&th, x)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of comparing a Hilbert theta series with the extremal form.
#[derive(Clone, Debug)]
pub struct GoldenReport {
    pub golden: bool,
    /// Why the lattice was rejected before any series comparison.
    pub reason: Option<String>,
    pub weight: u32,
    pub prec: i64,
    pub theta: Option<QExp>,
    pub extremal_nu: Option<IndexPair>,
    pub first_difference: Option<IndexPair>,
    /// Minimum and kissing number of `L_{η⁻¹}`.
    pub min_eta: Option<(i64, usize)>,
    /// Minimum and kissing number of `L_1`.
    pub min_one: Option<(i64, usize)>,
    /// `1 + ⌊N/24⌋` with `N = 2n` the rank of the trace lattice.
    pub unimodular_bound: i64,
}

impl GoldenReport {
    /// `L_{η⁻¹}` attains the bound for even unimodular lattices.
    pub fn extremal_unimodular(&self) -> Option<bool> {
        self.min_eta.map(|(m, _)| m == self.unimodular_bound)
    }

    pub fn minima_bounds_hold(&self) -> Option<bool> {
        Some(minima_bounds_hold(self.min_eta?.0, self.min_one?.0))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "golden": self.golden,
            "reason": self.reason,
            "weight": self.weight,
            "prec": self.prec,
            "extremal_nu": self.extremal_nu.map(|n| [n.i, n.j]),
            "first_difference": self.first_difference.map(|n| [n.i, n.j]),
            "min_eta": self.min_eta.map(|m| m.0),
            "kissing_eta": self.min_eta.map(|m| m.1),
            "min_one": self.min_one.map(|m| m.0),
            "kissing_one": self.min_one.map(|m| m.1),
            "unimodular_bound": self.unimodular_bound,
            "extremal_unimodular": self.extremal_unimodular(),
            "minima_bounds": self.minima_bounds_hold(),
        })
    }
}

/// Whether the Hilbert theta series of `g` is the extremal form of weight `n/2`.
pub fn golden_check(g: &RGram, prec: i64) -> Result<GoldenReport> {
    let n = g.n;
    let mut report = GoldenReport {
        golden: false,
        reason: None,
        weight: (n / 2) as u32,
        prec,
        theta: None,
        extremal_nu: None,
        first_difference: None,
        min_eta: None,
        min_one: None,
        unimodular_bound: 1 + (2 * n as i64) / 24,
    };
    if !g.is_even_unimodular() {
        report.reason = Some("not even unimodular".into());
        return Ok(report);
    }
    if !g.is_totally_positive_definite() {
        report.reason = Some("not totally positive definite".into());
        return Ok(report);
    }
    if n == 0 || !n.is_multiple_of(4) {
        report.reason = Some(format!("rank {n} is not a positive multiple of 4"));
        return Ok(report);
    }
    let theta = hilbert_theta(g, prec)?;
    let ext = extremal_form(report.weight, prec)?;
    report.extremal_nu = Some(ext.nu);
    report.first_difference = theta.first_difference(&ext.form);
    report.golden = report.first_difference.is_none();
    report.theta = Some(theta);
    report.min_eta = Some(minimum(&g.trace_gram(&KElem::eta_inv())?)?);
    report.min_one = Some(minimum(&g.trace_gram(&KElem::one())?)?);
    Ok(report)
}

/// `ν(Θ − 1)`: the lexicographically least index carrying a lattice vector.
///
/// Its first coordinate is the minimum of `L_{η⁻¹}`, so the series is only
/// needed up to that precision.
pub fn theta_valuation(g: &RGram) -> Result<IndexPair> {
    let (min, _) = minimum(&g.trace_gram(&KElem::eta_inv())?)?;
    hilbert_theta(g, min)?
        .nu_minus_one()
        .ok_or_else(|| Error::Internal("theta series has no nonconstant term".into()))
}

/// Whether `theta(q0, 1)` equals the ordinary theta series of `t` through `q0^prec`.
pub fn restricted_theta_matches(theta: &QExp, t: &ZGram) -> Result<bool> {
    let counts = super::enumerate::theta_counts(t, theta.prec())?;
    let r = theta.restrict_q1();
    Ok(counts
        .iter()
        .enumerate()
        .all(|(k, c)| r.coeff(k) == BigRational::from_integer((*c).into())))
}
