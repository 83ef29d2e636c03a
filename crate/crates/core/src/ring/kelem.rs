use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::relem::RElem;
use crate::error::{Error, Result};

/// An element `a + bθ` of `K = ℚ(√5)` with arbitrary-precision rational coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct KElem {
    pub a: BigRational,
    pub b: BigRational,
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn rat_frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Sign of a rational `c + d·√5`.
fn sign_sqrt5_rat(c: &BigRational, d: &BigRational) -> Ordering {
    let zero = BigRational::zero();
    match (c.cmp(&zero), d.cmp(&zero)) {
        (Ordering::Equal, Ordering::Equal) => Ordering::Equal,
        (Ordering::Less | Ordering::Equal, Ordering::Less | Ordering::Equal) => Ordering::Less,
        (Ordering::Greater | Ordering::Equal, Ordering::Greater | Ordering::Equal) => {
            Ordering::Greater
        }
        (Ordering::Greater, Ordering::Less) => (c * c).cmp(&(d * d * rat(5))),
        (Ordering::Less, Ordering::Greater) => (d * d * rat(5)).cmp(&(c * c)),
    }
}

impl KElem {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        KElem { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        KElem { a: rat(a), b: rat(b) }
    }

    pub fn zero() -> Self {
        KElem::from_ints(0, 0)
    }

    pub fn one() -> Self {
        KElem::from_ints(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// `η⁻¹ = (2−θ)/5`, generator of the inverse different.
    pub fn eta_inv() -> Self {
        KElem::new(rat_frac(2, 5), rat_frac(-1, 5))
    }

    pub fn conj(&self) -> Self {
        KElem::new(&self.a - &self.b, -&self.b)
    }

    pub fn trace(&self) -> BigRational {
        &self.a * rat(2) - &self.b
    }

    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.a * &self.b - &self.b * &self.b
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c = self.conj();
        Ok(KElem::new(c.a / &n, c.b / n))
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        KElem::new(&self.a * s, &self.b * s)
    }

    pub fn sign_sigma1(&self) -> Ordering {
        sign_sqrt5_rat(&(&self.a * rat(2) - &self.b), &self.b)
    }

    pub fn sign_sigma2(&self) -> Ordering {
        sign_sqrt5_rat(&(&self.a * rat(2) - &self.b), &-&self.b)
    }

    /// Positive under both real embeddings; decided as `Tr > 0 ∧ N > 0`.
    pub fn is_totally_positive(&self) -> bool {
        self.trace().is_positive() && self.norm().is_positive()
    }

    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    pub fn to_relem(&self) -> Option<RElem> {
        if !self.is_integral() {
            return None;
        }
        Some(RElem::new(self.a.to_integer().to_i64()?, self.b.to_integer().to_i64()?))
    }

    /// Least positive integer `d` with `d·self` integral.
    pub fn denominator_lcm(&self) -> BigInt {
        self.a.denom().lcm(self.b.denom())
    }
}

impl From<RElem> for KElem {
    fn from(x: RElem) -> Self {
        KElem::from_ints(x.a, x.b)
    }
}

impl From<&RElem> for KElem {
    fn from(x: &RElem) -> Self {
        KElem::from_ints(x.a, x.b)
    }
}

impl fmt::Display for KElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.b.is_negative() {
            write!(f, "{}-{}θ", self.a, -&self.b)
        } else {
            write!(f, "{}+{}θ", self.a, self.b)
        }
    }
}

impl<'a> Add<&'a KElem> for &'a KElem {
    type Output = KElem;
    fn add(self, o: &KElem) -> KElem {
        KElem::new(&self.a + &o.a, &self.b + &o.b)
    }
}

impl<'a> Sub<&'a KElem> for &'a KElem {
    type Output = KElem;
    fn sub(self, o: &KElem) -> KElem {
        KElem::new(&self.a - &o.a, &self.b - &o.b)
    }
}

impl<'a> Mul<&'a KElem> for &'a KElem {
    type Output = KElem;
    fn mul(self, o: &KElem) -> KElem {
        let bd = &self.b * &o.b;
        KElem::new(&self.a * &o.a + &bd, &self.a * &o.b + &self.b * &o.a - bd)
    }
}

impl Neg for &KElem {
    type Output = KElem;
    fn neg(self) -> KElem {
        KElem::new(-&self.a, -&self.b)
    }
}

impl Add for KElem {
    type Output = KElem;
    fn add(self, o: KElem) -> KElem {
        &self + &o
    }
}

impl Sub for KElem {
    type Output = KElem;
    fn sub(self, o: KElem) -> KElem {
        &self - &o
    }
}

impl Mul for KElem {
    type Output = KElem;
    fn mul(self, o: KElem) -> KElem {
        &self * &o
    }
}

impl Neg for KElem {
    type Output = KElem;
    fn neg(self) -> KElem {
        -&self
    }
}

/// Whether `x` is totally positive (both real embeddings positive).
pub fn is_totally_positive(x: &KElem) -> bool {
    x.is_totally_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totally_positive_examples() {
        assert!(!KElem::from_ints(0, 1).is_totally_positive());
        assert!(KElem::from_ints(2, 1).is_totally_positive());
        let e = KElem::eta_inv();
        assert!(e.is_totally_positive());
        assert_eq!(e.trace(), rat(1));
        assert_eq!(e.norm(), rat_frac(1, 5));
    }

    #[test]
    fn eta_inverse_is_inverse() {
        let eta = KElem::from(RElem::ETA);
        assert_eq!(&eta * &KElem::eta_inv(), KElem::one());
        assert_eq!(eta.inverse().unwrap(), KElem::eta_inv());
        assert!(KElem::zero().inverse().is_err());
    }

    #[test]
    fn sumsum_scalar_identities() {
        let th = KElem::from(RElem::THETA);
        let thb = th.conj();
        // 5η⁻¹ = 1 + θ²
        assert_eq!(KElem::eta_inv().scale(&rat(5)), &KElem::one() + &(&th * &th));
        // η = 1 + θ̄²
        assert_eq!(KElem::from(RElem::ETA), &KElem::one() + &(&thb * &thb));
    }

    #[test]
    fn embedding_signs_agree_with_total_positivity() {
        for a in -6..7 {
            for b in -6..7 {
                let x = KElem::new(rat_frac(a, 3), rat_frac(b, 2));
                let tp = x.sign_sigma1() == Ordering::Greater
                    && x.sign_sigma2() == Ordering::Greater;
                assert_eq!(tp, x.is_totally_positive(), "{x}");
            }
        }
    }
}
