//! Truncated `(q0, q1)`-expansions.
//!
//! A Hilbert modular form `Σ A_X exp(2πi Tr(zX))`, `X ∈ R` totally positive,
//! is stored through the exponent pair `(i, j) = (Tr(η⁻¹X), Tr(X))`. Both
//! traces are additive, so series multiplication is exponent addition.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::RElem;

/// Exponent pair `(Tr(η⁻¹X), Tr(X))`; the derived order is lexicographic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexPair {
    pub i: i64,
    pub j: i64,
}

impl IndexPair {
    pub const ZERO: IndexPair = IndexPair { i: 0, j: 0 };

    pub const fn new(i: i64, j: i64) -> Self {
        IndexPair { i, j }
    }

    /// The constant index or the index of a totally positive element.
    pub fn is_valid(&self) -> bool {
        *self == IndexPair::ZERO || RElem::from_index(self.i, self.j).is_ok()
    }

    pub fn element(&self) -> Result<RElem> {
        RElem::from_index(self.i, self.j)
    }

    pub fn from_element(x: RElem) -> Self {
        let (i, j) = x.to_index();
        IndexPair { i, j }
    }

    /// Index of the Galois conjugate `X̄`.
    pub fn conjugate(&self) -> Self {
        IndexPair::new(self.j - self.i, self.j)
    }

    /// Index of `θ²X`.
    pub fn unit_image(&self) -> Self {
        IndexPair::new(4 * self.i - self.j, 5 * self.i - self.j)
    }
}

impl fmt::Display for IndexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

/// All valid `j` for a fixed `i ≥ 1`; they form the interval `1.38·i < j < 3.62·i`.
pub fn valid_j(i: i64) -> impl Iterator<Item = i64> {
    (i..=4 * i).filter(move |&j| IndexPair::new(i, j).is_valid())
}

/// All valid nonconstant indices with `i ≤ prec`, in lexicographic order.
pub fn indices(prec: i64) -> impl Iterator<Item = IndexPair> {
    (1..=prec).flat_map(|i| valid_j(i).map(move |j| IndexPair::new(i, j)))
}

/// Truncated univariate power series `Σ c_n qⁿ`, exact for `n < coeffs.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    pub coeffs: Vec<BigRational>,
}

impl PowerSeries {
    pub fn zero(prec: usize) -> Self {
        PowerSeries { coeffs: vec![BigRational::zero(); prec + 1] }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        PowerSeries {
            coeffs: v.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect(),
        }
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, n: usize) -> BigRational {
        self.coeffs.get(n).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn truncate(&self, prec: usize) -> Self {
        PowerSeries { coeffs: self.coeffs.iter().take(prec + 1).cloned().collect() }
    }

    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let prec = self.prec().min(other.prec());
        let mut out = PowerSeries::zero(prec);
        for (a, x) in self.coeffs.iter().enumerate().take(prec + 1) {
            if x.is_zero() {
                continue;
            }
            for (b, y) in other.coeffs.iter().enumerate().take(prec + 1 - a) {
                out.coeffs[a + b] += x * y;
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

/// A truncated `(q0, q1)`-expansion with exact rational coefficients.
///
/// Coefficients are exact for every index with `i ≤ prec`; only nonzero
/// coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "QExpJson", into = "QExpJson")]
pub struct QExp {
    prec: i64,
    coeffs: BTreeMap<IndexPair, BigRational>,
}

impl QExp {
    pub fn zero(prec: i64) -> Self {
        QExp { prec, coeffs: BTreeMap::new() }
    }

    pub fn one(prec: i64) -> Self {
        let mut f = QExp::zero(prec);
        f.coeffs.insert(IndexPair::ZERO, BigRational::one());
        f
    }

    pub fn from_fn(prec: i64, mut f: impl FnMut(IndexPair) -> BigRational) -> Self {
        let mut out = QExp::zero(prec);
        for idx in std::iter::once(IndexPair::ZERO).chain(indices(prec)) {
            out.set(idx, f(idx));
        }
        out
    }

    /// Build from explicit entries; every index must be valid and within precision.
    pub fn from_entries(
        prec: i64,
        entries: impl IntoIterator<Item = (IndexPair, BigRational)>,
    ) -> Result<Self> {
        let mut out = QExp::zero(prec);
        for (idx, c) in entries {
            if !idx.is_valid() {
                return Err(Error::InvalidIndex { i: idx.i, j: idx.j });
            }
            if idx.i > prec {
                return Err(Error::InvalidArgument(format!("index {idx} beyond precision {prec}")));
            }
            let slot = out.coeffs.entry(idx).or_insert_with(BigRational::zero);
            *slot += c;
            if slot.is_zero() {
                out.coeffs.remove(&idx);
            }
        }
        Ok(out)
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn coeff(&self, idx: IndexPair) -> BigRational {
        self.coeffs.get(&idx).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeff_at(&self, i: i64, j: i64) -> BigRational {
        self.coeff(IndexPair::new(i, j))
    }

    pub fn constant(&self) -> BigRational {
        self.coeff(IndexPair::ZERO)
    }

    pub fn set(&mut self, idx: IndexPair, c: BigRational) {
        debug_assert!(idx.is_valid() && idx.i <= self.prec);
        if c.is_zero() {
            self.coeffs.remove(&idx);
        } else {
            self.coeffs.insert(idx, c);
        }
    }

    /// Nonzero coefficients in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (&IndexPair, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn truncate(&self, prec: i64) -> Self {
        let prec = prec.min(self.prec);
        QExp {
            prec,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| k.i <= prec)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &QExp) -> QExp {
        let prec = self.prec.min(other.prec);
        let mut out = self.truncate(prec);
        for (k, v) in other.coeffs.iter().filter(|(k, _)| k.i <= prec) {
            let c = out.coeff(*k) + v;
            out.set(*k, c);
        }
        out
    }

    pub fn sub(&self, other: &QExp) -> QExp {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QExp {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, s: &BigRational) -> QExp {
        if s.is_zero() {
            return QExp::zero(self.prec);
        }
        QExp { prec: self.prec, coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * s)).collect() }
    }

    pub fn mul(&self, other: &QExp) -> QExp {
        let prec = self.prec.min(other.prec);
        let mut acc: BTreeMap<IndexPair, BigRational> = BTreeMap::new();
        for (a, x) in &self.coeffs {
            if a.i > prec {
                break;
            }
            for (b, y) in &other.coeffs {
                if a.i + b.i > prec {
                    break;
                }
                let c = IndexPair::new(a.i + b.i, a.j + b.j);
                *acc.entry(c).or_insert_with(BigRational::zero) += x * y;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        QExp { prec, coeffs: acc }
    }

    pub fn pow(&self, e: u32) -> QExp {
        let mut acc = QExp::one(self.prec);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Lexicographically least index with nonzero coefficient; `None` when the
    /// series vanishes within precision.
    pub fn nu(&self) -> Option<IndexPair> {
        self.coeffs.keys().next().copied()
    }

    /// `ν(f − 1)`.
    pub fn nu_minus_one(&self) -> Option<IndexPair> {
        self.sub(&QExp::one(self.prec)).nu()
    }

    /// `Σ_j A(i, j)`: the q0ⁱ coefficient after `q1 ↦ 1`.
    pub fn row_sum(&self, i: i64) -> BigRational {
        self.coeffs
            .range(IndexPair::new(i, i64::MIN)..=IndexPair::new(i, i64::MAX))
            .map(|(_, v)| v)
            .sum()
    }

    /// Coefficient at `(i, j)`, falling back to the Galois-symmetric index
    /// `(j − i, j)` when `i` lies beyond precision. Assumes the series is symmetric.
    pub fn coeff_symmetric(&self, idx: IndexPair) -> Result<BigRational> {
        if !idx.is_valid() {
            return Ok(BigRational::zero());
        }
        if idx.i <= self.prec {
            return Ok(self.coeff(idx));
        }
        let c = idx.conjugate();
        if c.i <= self.prec {
            return Ok(self.coeff(c));
        }
        Err(Error::InsufficientPrecision {
            prec: self.prec,
            reason: format!("coefficient {idx} and its conjugate lie beyond the window"),
        })
    }

    /// `Σ_i A(i, j)`: the q1ʲ coefficient after `q0 ↦ 1`, completed by symmetry.
    pub fn column_sum(&self, j: i64) -> Result<BigRational> {
        let mut s = BigRational::zero();
        for i in 1..=j {
            s += self.coeff_symmetric(IndexPair::new(i, j))?;
        }
        if j == 0 {
            s += self.constant();
        }
        Ok(s)
    }

    /// Substitute `q1 = 1`; exact through q0^prec.
    pub fn restrict_q1(&self) -> PowerSeries {
        let mut out = PowerSeries::zero(self.prec as usize);
        for (k, v) in &self.coeffs {
            out.coeffs[k.i as usize] += v;
        }
        out
    }

    /// Largest `J` such that every valid index with `j ≤ J` has `i ≤ prec`.
    pub fn q1_window(&self) -> i64 {
        let complete = |j: i64| ((self.prec + 1)..=j).all(|i| !IndexPair::new(i, j).is_valid());
        let mut j = 0;
        while complete(j + 1) {
            j += 1;
        }
        j
    }

    /// Substitute `q0 = 1`; exact through the columns fully inside the window.
    pub fn restrict_q0(&self) -> PowerSeries {
        let jmax = self.q1_window();
        let mut out = PowerSeries::zero(jmax as usize);
        for (k, v) in &self.coeffs {
            if k.j <= jmax {
                out.coeffs[k.j as usize] += v;
            }
        }
        out
    }

    /// `A(i, j) = A(j − i, j)` wherever both indices lie within precision.
    pub fn check_symmetric(&self) -> bool {
        indices(self.prec).all(|idx| {
            let c = idx.conjugate();
            c.i > self.prec || self.coeff(idx) == self.coeff(c)
        })
    }

    /// `A(i, j) = A(4i − j, 5i − j)` wherever both indices lie within precision.
    pub fn check_unit_invariant(&self) -> bool {
        indices(self.prec).all(|idx| {
            let u = idx.unit_image();
            u.i > self.prec || self.coeff(idx) == self.coeff(u)
        })
    }

    /// Whether every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|v| v.is_integer())
    }

    /// First index at which two series differ, within the common precision.
    pub fn first_difference(&self, other: &QExp) -> Option<IndexPair> {
        let prec = self.prec.min(other.prec);
        self.truncate(prec).sub(&other.truncate(prec)).nu()
    }

    /// Text dump: a `prec P` header, then `i j num/den` rows in lexicographic order.
    pub fn to_text(&self) -> String {
        let mut s = format!("prec {}\n", self.prec);
        for (k, v) in &self.coeffs {
            let _ = writeln!(s, "{} {} {}/{}", k.i, k.j, v.numer(), v.denom());
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
        let prec = header
            .strip_prefix("prec ")
            .and_then(|p| p.trim().parse::<i64>().ok())
            .ok_or_else(|| Error::Parse { line: 1, msg: format!("bad header {header:?}") })?;
        let mut entries = Vec::new();
        let mut last: Option<IndexPair> = None;
        for (n, line) in lines {
            let err = |msg: String| Error::Parse { line: n + 1, msg };
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(err(format!("expected `i j num/den`, got {line:?}")));
            }
            let i: i64 = parts[0].parse().map_err(|_| err(format!("bad i {:?}", parts[0])))?;
            let j: i64 = parts[1].parse().map_err(|_| err(format!("bad j {:?}", parts[1])))?;
            let c = parse_rational(parts[2]).ok_or_else(|| err(format!("bad coefficient {:?}", parts[2])))?;
            let idx = IndexPair::new(i, j);
            if last.is_some_and(|l| l >= idx) {
                return Err(err(format!("index {idx} out of lexicographic order")));
            }
            last = Some(idx);
            entries.push((idx, c));
        }
        QExp::from_entries(prec, entries)
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let (n, d) = s.split_once('/')?;
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// JSON form: `{"prec": P, "coefficients": [[i, j, "num/den"], ...]}`.
#[derive(Serialize, Deserialize)]
struct QExpJson {
    prec: i64,
    coefficients: Vec<(i64, i64, String)>,
}

impl From<QExp> for QExpJson {
    fn from(f: QExp) -> Self {
        QExpJson {
            prec: f.prec,
            coefficients: f
                .coeffs
                .iter()
                .map(|(k, v)| (k.i, k.j, format!("{}/{}", v.numer(), v.denom())))
                .collect(),
        }
    }
}

impl TryFrom<QExpJson> for QExp {
    type Error = Error;
    fn try_from(j: QExpJson) -> Result<Self> {
        let entries = j
            .coefficients
            .into_iter()
            .map(|(i, jj, c)| {
                parse_rational(&c)
                    .map(|c| (IndexPair::new(i, jj), c))
                    .ok_or_else(|| Error::InvalidArgument(format!("bad coefficient {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        QExp::from_entries(j.prec, entries)
    }
}

impl fmt::Display for QExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
