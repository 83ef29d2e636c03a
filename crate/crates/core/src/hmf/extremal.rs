use std::fmt;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::generators::{HmfRing, Monomial};
use crate::error::{Error, Result};
use crate::qseries::{indices, IndexPair, QExp};

/// The `⊂` column: how the minimal vectors of `L_1` sit inside those of `L_{η⁻¹}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pm {
    /// `s_1 = A(s,t)`: every minimal vector of `L_1` is minimal in `L_{η⁻¹}`.
    Plus,
    /// `s_1 = 2·A(s,t)`: half of them are.
    Minus,
    /// Any other ratio `s_1 / A(s,t)`.
    Other(BigRational),
}

impl Pm {
    pub fn symbol(&self) -> String {
        match self {
            Pm::Plus => "+".into(),
            Pm::Minus => "-".into(),
            Pm::Other(r) => format!("{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Display for Pm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbol())
    }
}

#[derive(Clone, Debug)]
pub struct ExtremalResult {
    pub weight: u32,
    pub form: QExp,
    /// `ν(form − 1) = (s, t)`.
    pub nu: IndexPair,
    /// Kissing number of `L_{η⁻¹}`: `Σ_j A(s, j)`.
    pub s_eta: i128,
    /// Kissing number of `L_1`: `Σ_i A(i, t)`.
    pub s_one: i128,
    pub pm: Pm,
    /// The solution space was a single point once `ν` was fixed.
    pub unique: bool,
    /// Last index row the solver had to consult.
    pub pinned_at: IndexPair,
    /// `form = Σ coefficient · monomial`.
    pub combination: Vec<(Monomial, BigRational)>,
}

impl ExtremalResult {
    pub fn s(&self) -> i64 {
        self.nu.i
    }

    pub fn t(&self) -> i64 {
        self.nu.j
    }

    /// `{weight, nu: [s,t], s_eta, s_one, pm, unique, coefficients: [[i, j, "n/d"], ...]}`.
    pub fn to_json(&self) -> Value {
        let coefficients: Vec<Value> = self
            .form
            .iter()
            .map(|(k, v)| json!([k.i, k.j, format!("{}/{}", v.numer(), v.denom())]))
            .collect();
        json!({
            "weight": self.weight,
            "nu": [self.nu.i, self.nu.j],
            "s_eta": self.s_eta,
            "s_one": self.s_one,
            "pm": self.pm.symbol(),
            "unique": self.unique,
            "prec": self.form.prec(),
            "coefficients": coefficients,
        })
    }
}

/// Affine solution space `{x : rows·x = rhs}` kept in reduced row echelon form.
struct AffineSystem {
    dim: usize,
    rows: Vec<(usize, Vec<BigRational>, BigRational)>,
}

enum Outcome {
    Added,
    Redundant,
    Inconsistent,
}

impl AffineSystem {
    fn new(dim: usize) -> Self {
        AffineSystem { dim, rows: Vec::new() }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn free_dim(&self) -> usize {
        self.dim - self.rank()
    }

    fn reduce(&self, mut row: Vec<BigRational>, mut rhs: BigRational) -> (Vec<BigRational>, BigRational) {
        for (p, r, c) in &self.rows {
            if row[*p].is_zero() {
                continue;
            }
            let f = row[*p].clone();
            for (x, y) in row.iter_mut().zip(r) {
                *x -= &f * y;
            }
            rhs -= &f * c;
        }
        (row, rhs)
    }

    /// Impose `row·x = rhs` if it keeps the system consistent.
    fn try_add(&mut self, row: Vec<BigRational>, rhs: BigRational) -> Outcome {
        let (mut row, mut rhs) = self.reduce(row, rhs);
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            return if rhs.is_zero() { Outcome::Redundant } else { Outcome::Inconsistent };
        };
        let inv = BigRational::one() / &row[p];
        for x in row.iter_mut() {
            *x *= &inv;
        }
        rhs *= &inv;
        for (_, r, c) in self.rows.iter_mut() {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(&row) {
                *x -= &f * y;
            }
            *c -= &f * &rhs;
        }
        self.rows.push((p, row, rhs));
        Outcome::Added
    }

    fn solution(&self) -> Option<Vec<BigRational>> {
        if self.free_dim() != 0 {
            return None;
        }
        let mut x = vec![BigRational::zero(); self.dim];
        for (p, _, c) in &self.rows {
            x[*p] = c.clone();
        }
        Some(x)
    }
}

fn to_count(x: &BigRational, what: &str) -> Result<i128> {
    if !x.is_integer() {
        return Err(Error::NonIntegral(format!("{what} = {x}")));
    }
    x.to_integer()
        .to_i128()
        .ok_or_else(|| Error::Internal(format!("{what} = {x} overflows")))
}

impl HmfRing {
    /// The extremal symmetric Hilbert modular form of weight `w`.
    ///
    /// Index rows are visited in lexicographic order; each coefficient is
    /// forced to zero while the affine solution space allows it. The first
    /// row where that is impossible fixes `ν(f − 1)`. Further zeros are then
    /// imposed until a single form remains.
    pub fn extremal_form(&self, w: u32) -> Result<ExtremalResult> {
        let prec = self.prec();
        let basis = self.monomial_basis(w)?;
        let dim = basis.len();
        let column = |idx: IndexPair| -> Vec<BigRational> { basis.iter().map(|(_, f)| f.coeff(idx)).collect() };

        let mut sys = AffineSystem::new(dim);
        if let Outcome::Inconsistent = sys.try_add(column(IndexPair::ZERO), BigRational::one()) {
            return Err(Error::Internal("no form with constant term 1".into()));
        }
        let mut nu: Option<IndexPair> = None;
        let mut unique = false;
        let mut pinned_at = IndexPair::ZERO;
        for idx in indices(prec) {
            if nu.is_some() && sys.free_dim() == 0 {
                break;
            }
            pinned_at = idx;
            match sys.try_add(column(idx), BigRational::zero()) {
                Outcome::Inconsistent if nu.is_none() => {
                    nu = Some(idx);
                    unique = sys.free_dim() == 0;
                }
                _ => {}
            }
        }
        let nu = nu.ok_or_else(|| Error::InsufficientPrecision {
            prec,
            reason: format!("valuation of the weight-{w} extremal form lies beyond i = {prec}"),
        })?;
        let x = sys.solution().ok_or(Error::NonUnique { weight: w, dim: sys.free_dim(), nu })?;

        let mut form = QExp::zero(prec);
        for ((_, f), c) in basis.iter().zip(&x) {
            form = form.add(&f.scale(c));
        }
        if form.nu_minus_one() != Some(nu) {
            return Err(Error::Internal(format!("solver valuation {nu} disagrees with the form")));
        }

        let c_st = form.coeff(nu);
        let s_eta = to_count(&form.row_sum(nu.i), "s_eta")?;
        let s_one_q = form.column_sum(nu.j)?;
        let s_one = to_count(&s_one_q, "s_one")?;
        let pm = if s_one_q == c_st {
            Pm::Plus
        } else if s_one_q == &c_st + &c_st {
            Pm::Minus
        } else {
            Pm::Other(s_one_q / &c_st)
        };
        let combination = basis.iter().map(|(m, _)| *m).zip(x).collect();
        Ok(ExtremalResult { weight: w, form, nu, s_eta, s_one, pm, unique, pinned_at, combination })
    }
}

/// Build a fresh ring at precision `prec` and solve for the extremal form of weight `w`.
pub fn extremal_form(w: u32, prec: i64) -> Result<ExtremalResult> {
    HmfRing::new(prec)?.extremal_form(w)
}

/// Upper bound `(s, ⌊5s/2⌋)` on `ν(f − 1)` for weight `w`, with `s = 1 + ⌊w/6⌋`.
pub fn nu_bound(w: u32) -> IndexPair {
    let s = 1 + (w / 6) as i64;
    IndexPair::new(s, 5 * s / 2)
}

/// `s' ≤ 1 + ⌊w/6⌋` and `2s' ≤ t' ≤ ⌊5s'/2⌋` for `(s', t') = ν(f − 1)`.
pub fn check_nu_bound(r: &ExtremalResult) -> bool {
    let (s, t) = (r.nu.i, r.nu.j);
    s <= nu_bound(r.weight).i && 2 * s <= t && t <= 5 * s / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    #[test]
    fn weight_two_is_a2() {
        let ring = HmfRing::new(4).unwrap();
        let r = ring.extremal_form(2).unwrap();
        assert_eq!(r.form, ring.generators().a2);
        assert_eq!(r.nu, IndexPair::new(1, 2));
        assert_eq!((r.s_eta, r.s_one, r.pm.clone()), (240, 120, Pm::Plus));
        assert!(r.unique);
    }

    #[test]
    fn weight_four_is_a2_squared() {
        let ring = HmfRing::new(4).unwrap();
        let r = ring.extremal_form(4).unwrap();
        let a2 = &ring.generators().a2;
        assert_eq!(r.form, a2.mul(a2));
        assert_eq!((r.s_eta, r.s_one), (480, 240));
    }

    #[test]
    fn weight_six_row() {
        let r = extremal_form(6, 4).unwrap();
        assert_eq!(r.nu, IndexPair::new(2, 4));
        assert_eq!((r.s_eta, r.s_one, r.pm.clone()), (196560, 37800, Pm::Plus));
        assert!(check_nu_bound(&r));
        assert!(r.form.is_integral());
    }

    #[test]
    fn weight_ten_ratio() {
        let r = extremal_form(10, 4).unwrap();
        assert_eq!(r.nu, IndexPair::new(2, 5));
        assert_eq!(r.s_one, 2 * r.s_eta);
        assert_eq!(r.pm, Pm::Minus);
        // the pair (2,5), (3,5) carries the whole column
        assert_eq!(r.form.coeff_at(2, 5), r.form.coeff_at(3, 5));
        assert_eq!(r.form.coeff_at(2, 5) * rat(2), rat(r.s_one as i64));
    }

    #[test]
    fn insufficient_precision_reported() {
        assert!(matches!(extremal_form(30, 4), Err(Error::InsufficientPrecision { .. })));
        assert!(matches!(extremal_form(3, 4), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn nu_bound_examples() {
        let mk = |w, s, t| ExtremalResult {
            weight: w,
            form: QExp::one(1),
            nu: IndexPair::new(s, t),
            s_eta: 0,
            s_one: 0,
            pm: Pm::Plus,
            unique: true,
            pinned_at: IndexPair::ZERO,
            combination: vec![],
        };
        assert!(check_nu_bound(&mk(10, 2, 5)));
        assert!(check_nu_bound(&mk(16, 3, 7)));
        assert!(check_nu_bound(&mk(6, 2, 4)));
        assert!(!check_nu_bound(&mk(6, 3, 6)));
        assert!(!check_nu_bound(&mk(16, 3, 8)));
        assert_eq!(nu_bound(30), IndexPair::new(6, 15));
    }

    #[test]
    fn affine_system_basics() {
        let mut s = AffineSystem::new(2);
        assert!(matches!(s.try_add(vec![rat(1), rat(1)], rat(2)), Outcome::Added));
        assert!(matches!(s.try_add(vec![rat(2), rat(2)], rat(4)), Outcome::Redundant));
        assert!(matches!(s.try_add(vec![rat(1), rat(1)], rat(3)), Outcome::Inconsistent));
        assert!(matches!(s.try_add(vec![rat(1), rat(-1)], rat(0)), Outcome::Added));
        assert_eq!(s.solution().unwrap(), vec![rat(1), rat(1)]);
    }
}
