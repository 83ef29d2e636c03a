use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sign of `c + d·√5`, computed exactly.
pub fn sign_sqrt5(c: i128, d: i128) -> Ordering {
    match (c.cmp(&0), d.cmp(&0)) {
        (Ordering::Equal, Ordering::Equal) => Ordering::Equal,
        (Ordering::Less | Ordering::Equal, Ordering::Less | Ordering::Equal) => Ordering::Less,
        (Ordering::Greater | Ordering::Equal, Ordering::Greater | Ordering::Equal) => {
            Ordering::Greater
        }
        // opposite signs: compare c² with 5d²
        (Ordering::Greater, Ordering::Less) => (c * c).cmp(&(5 * d * d)),
        (Ordering::Less, Ordering::Greater) => (5 * d * d).cmp(&(c * c)),
    }
}

/// An element `a + bθ` of the golden ring `R = ℤ[θ]`, `θ = (−1+√5)/2`.
///
/// Serialized as the two-integer array `[a, b]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct RElem {
    pub a: i64,
    pub b: i64,
}

impl From<[i64; 2]> for RElem {
    fn from(v: [i64; 2]) -> Self {
        RElem { a: v[0], b: v[1] }
    }
}

impl From<RElem> for [i64; 2] {
    fn from(x: RElem) -> Self {
        [x.a, x.b]
    }
}

impl From<i64> for RElem {
    fn from(a: i64) -> Self {
        RElem { a, b: 0 }
    }
}

impl RElem {
    pub const ZERO: RElem = RElem { a: 0, b: 0 };
    pub const ONE: RElem = RElem { a: 1, b: 0 };
    /// θ = (−1+√5)/2.
    pub const THETA: RElem = RElem { a: 0, b: 1 };
    /// φ = 1+θ = (1+√5)/2, the fundamental unit.
    pub const PHI: RElem = RElem { a: 1, b: 1 };
    /// η = 3+θ = (5+√5)/2, totally positive generator of the prime above 5.
    pub const ETA: RElem = RElem { a: 3, b: 1 };
    /// √5 = 1+2θ.
    pub const SQRT5: RElem = RElem { a: 1, b: 2 };

    pub const fn new(a: i64, b: i64) -> Self {
        RElem { a, b }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Galois conjugate: `θ ↦ −1−θ`.
    pub fn conj(&self) -> Self {
        RElem { a: self.a - self.b, b: -self.b }
    }

    pub fn trace(&self) -> i64 {
        2 * self.a - self.b
    }

    pub fn norm(&self) -> i64 {
        self.a * self.a - self.a * self.b - self.b * self.b
    }

    pub fn is_unit(&self) -> bool {
        self.norm().abs() == 1
    }

    /// Sign of the embedding `σ1` (√5 ↦ +√5).
    pub fn sign_sigma1(&self) -> Ordering {
        sign_sqrt5((2 * self.a - self.b) as i128, self.b as i128)
    }

    /// Sign of the embedding `σ2` (√5 ↦ −√5).
    pub fn sign_sigma2(&self) -> Ordering {
        sign_sqrt5((2 * self.a - self.b) as i128, -(self.b as i128))
    }

    pub fn is_totally_positive(&self) -> bool {
        self.trace() > 0 && self.norm() > 0
    }

    /// Approximate real embeddings, for display and heuristics only.
    pub fn embeddings(&self) -> (f64, f64) {
        let s5 = 5f64.sqrt();
        let t1 = (-1.0 + s5) / 2.0;
        let t2 = (-1.0 - s5) / 2.0;
        (self.a as f64 + self.b as f64 * t1, self.a as f64 + self.b as f64 * t2)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = *self;
        let mut acc = RElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        acc
    }

    /// Inverse of a unit.
    pub fn unit_inverse(&self) -> Option<Self> {
        match self.norm() {
            1 => Some(self.conj()),
            -1 => Some(-self.conj()),
            _ => None,
        }
    }

    /// Exact division; `None` when `y` does not divide `self`.
    pub fn div_exact(&self, y: &RElem) -> Option<RElem> {
        let n = y.norm();
        if n == 0 {
            return None;
        }
        let p = *self * y.conj();
        if p.a % n == 0 && p.b % n == 0 {
            Some(RElem::new(p.a / n, p.b / n))
        } else {
            None
        }
    }

    pub fn divides(&self, x: &RElem) -> bool {
        x.div_exact(self).is_some()
    }

    pub fn scale(&self, k: i64) -> Self {
        RElem::new(self.a * k, self.b * k)
    }

    /// The `(Tr(η⁻¹X), Tr(X))` exponent pair of this element.
    pub fn to_index(&self) -> (i64, i64) {
        (self.a - self.b, 2 * self.a - self.b)
    }

    /// Element with `(Tr(η⁻¹X), Tr(X)) = (i, j)`; must be zero or totally positive.
    pub fn from_index(i: i64, j: i64) -> Result<RElem> {
        let x = RElem::new(j - i, j - 2 * i);
        if x.is_zero() || x.is_totally_positive() {
            Ok(x)
        } else {
            Err(Error::InvalidIndex { i, j })
        }
    }
}

impl fmt::Display for RElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{b}θ"),
            (a, b) if b < 0 => write!(f, "{a}-{}θ", -b),
            (a, b) => write!(f, "{a}+{b}θ"),
        }
    }
}

impl Add for RElem {
    type Output = RElem;
    fn add(self, o: RElem) -> RElem {
        RElem::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for RElem {
    type Output = RElem;
    fn sub(self, o: RElem) -> RElem {
        RElem::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for RElem {
    type Output = RElem;
    fn neg(self) -> RElem {
        RElem::new(-self.a, -self.b)
    }
}

impl Mul for RElem {
    type Output = RElem;
    /// θ² = 1 − θ.
    fn mul(self, o: RElem) -> RElem {
        let bd = self.b * o.b;
        RElem::new(self.a * o.a + bd, self.a * o.b + self.b * o.a - bd)
    }
}

impl AddAssign for RElem {
    fn add_assign(&mut self, o: RElem) {
        *self = *self + o;
    }
}

impl SubAssign for RElem {
    fn sub_assign(&mut self, o: RElem) {
        *self = *self - o;
    }
}

impl MulAssign for RElem {
    fn mul_assign(&mut self, o: RElem) {
        *self = *self * o;
    }
}

impl std::iter::Sum for RElem {
    fn sum<I: Iterator<Item = RElem>>(iter: I) -> Self {
        iter.fold(RElem::ZERO, |a, b| a + b)
    }
}

/// Division with remainder in the norm-Euclidean ring `R`.
///
/// Tries the four integer roundings of the exact quotient coordinates and
/// keeps a remainder of minimal `|N(r)|`.
pub fn euclid_divmod(x: RElem, y: RElem) -> Result<(RElem, RElem)> {
    let n = y.norm();
    if n == 0 {
        return Err(Error::DivisionByZero);
    }
    // x/y = (p.a + p.b θ)/n with n > 0
    let (p, n) = if n > 0 { (x * y.conj(), n) } else { (-(x * y.conj()), -n) };
    let (qa0, qb0) = (p.a.div_euclid(n), p.b.div_euclid(n));
    let mut best: Option<(RElem, RElem)> = None;
    for da in 0..2 {
        for db in 0..2 {
            let q = RElem::new(qa0 + da, qb0 + db);
            let r = x - q * y;
            let better = match &best {
                None => true,
                Some((_, br)) => r.norm().abs() < br.norm().abs(),
            };
            if better {
                best = Some((q, r));
            }
        }
    }
    let (q, r) = best.expect("four candidates");
    if r.norm().abs() >= n {
        return Err(Error::Internal(format!(
            "euclidean step failed for {x} / {y}: remainder {r}"
        )));
    }
    Ok((q, r))
}

pub fn gcd(mut x: RElem, mut y: RElem) -> RElem {
    while !y.is_zero() {
        let (_, r) = euclid_divmod(x, y).expect("nonzero divisor");
        x = y;
        y = r;
    }
    x
}

/// Canonical associate of a nonzero element together with the unit `u`
/// such that `x = u · canonical`.
///
/// The canonical associate is the totally positive associate with
/// `σ1 ∈ [1, σ1(θ⁻²))`.
pub fn canonical_associate(x: RElem) -> (RElem, RElem) {
    assert!(!x.is_zero(), "canonical associate of zero");
    let phi2 = RElem::PHI * RElem::PHI;
    let theta2 = RElem::THETA * RElem::THETA;
    let mut c = x;
    // c = x · m, track m
    let mut m = RElem::ONE;
    if c.norm() < 0 {
        c *= RElem::THETA;
        m *= RElem::THETA;
    }
    if c.sign_sigma1() == Ordering::Less {
        c = -c;
        m = -m;
    }
    loop {
        if (c - RElem::ONE).sign_sigma1() == Ordering::Less {
            c *= phi2;
            m *= phi2;
        } else if (phi2 - c).sign_sigma1() != Ordering::Greater {
            c *= theta2;
            m *= theta2;
        } else {
            break;
        }
    }
    let u = m.unit_inverse().expect("multiplier is a unit");
    (c, u)
}
