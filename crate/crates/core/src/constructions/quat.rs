use std::fmt;
use std::ops::{Mul, Neg};

use num_rational::BigRational;

use crate::ring::{KElem, RElem};

/// `w + x·i + y·j + z·k` over `K = ℚ(√5)`, with `i² = j² = −1`, `ij = k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quat {
    pub w: KElem,
    pub x: KElem,
    pub y: KElem,
    pub z: KElem,
}

fn half(r: RElem) -> KElem {
    KElem::from(r).scale(&BigRational::new(1.into(), 2.into()))
}

impl Quat {
    pub fn new(w: KElem, x: KElem, y: KElem, z: KElem) -> Self {
        Quat { w, x, y, z }
    }

    pub fn one() -> Self {
        Quat::from_doubled([RElem::new(2, 0), RElem::ZERO, RElem::ZERO, RElem::ZERO])
    }

    /// The quaternion with coordinates `c/2`.
    pub fn from_doubled(c: [RElem; 4]) -> Self {
        Quat::new(half(c[0]), half(c[1]), half(c[2]), half(c[3]))
    }

    /// Twice the coordinates, when they lie in `R`.
    pub fn doubled(&self) -> Option<[RElem; 4]> {
        let two = BigRational::from_integer(2.into());
        let mut out = [RElem::ZERO; 4];
        for (o, c) in out.iter_mut().zip(self.coords()) {
            *o = c.scale(&two).to_relem()?;
        }
        Some(out)
    }

    pub fn coords(&self) -> [&KElem; 4] {
        [&self.w, &self.x, &self.y, &self.z]
    }

    pub fn conj(&self) -> Self {
        Quat::new(self.w.clone(), -&self.x, -&self.y, -&self.z)
    }

    /// Coordinate-wise Galois conjugation `√5 ↦ −√5`.
    pub fn galois(&self) -> Self {
        Quat::new(self.w.conj(), self.x.conj(), self.y.conj(), self.z.conj())
    }

    pub fn scale(&self, c: &KElem) -> Self {
        Quat::new(c * &self.w, c * &self.x, c * &self.y, c * &self.z)
    }

    pub fn nrd(&self) -> KElem {
        self.coords().iter().fold(KElem::zero(), |acc, c| &acc + &(*c * *c))
    }

    pub fn trd(&self) -> KElem {
        &self.w + &self.w
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(|c| c.is_zero())
    }

    pub fn pow(&self, e: u32) -> Quat {
        (0..e).fold(Quat::one(), |acc, _| &acc * self)
    }

    /// Smallest `k ≥ 1` with `self^k = 1`, searched up to `limit`.
    pub fn order(&self, limit: u32) -> Option<u32> {
        let one = Quat::one();
        let mut p = self.clone();
        for k in 1..=limit {
            if p == one {
                return Some(k);
            }
            p = &p * self;
        }
        None
    }
}

impl Mul for &Quat {
    type Output = Quat;
    fn mul(self, o: &Quat) -> Quat {
        let (a1, b1, c1, d1) = (&self.w, &self.x, &self.y, &self.z);
        let (a2, b2, c2, d2) = (&o.w, &o.x, &o.y, &o.z);
        let w = &(&(a1 * a2) - &(b1 * b2)) - &(&(c1 * c2) + &(d1 * d2));
        let x = &(&(a1 * b2) + &(b1 * a2)) + &(&(c1 * d2) - &(d1 * c2));
        let y = &(&(a1 * c2) - &(b1 * d2)) + &(&(c1 * a2) + &(d1 * b2));
        let z = &(&(a1 * d2) + &(b1 * c2)) + &(&(d1 * a2) - &(c1 * b2));
        Quat::new(w, x, y, z)
    }
}

impl Mul for Quat {
    type Output = Quat;
    fn mul(self, o: Quat) -> Quat {
        &self * &o
    }
}

impl Neg for &Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        Quat::new(-&self.w, -&self.x, -&self.y, -&self.z)
    }
}

impl fmt::Display for Quat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = [("", &self.w), ("i", &self.x), ("j", &self.y), ("k", &self.z)]
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(s, c)| format!("({c}){s}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `B(x, y) = trd(x·ȳ) = 2·(x·y)`, the polar form of `nrd`.
pub fn polar(x: &Quat, y: &Quat) -> KElem {
    let mut s = KElem::zero();
    for (a, b) in x.coords().iter().zip(y.coords()) {
        s = &s + &(*a * b);
    }
    &s + &s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(w: i64, x: i64, y: i64, z: i64) -> Quat {
        Quat::new(KElem::from_ints(w, 0), KElem::from_ints(x, 0), KElem::from_ints(y, 0), KElem::from_ints(z, 0))
    }

    #[test]
    fn hamilton_rules() {
        let (i, j, k) = (q(0, 1, 0, 0), q(0, 0, 1, 0), q(0, 0, 0, 1));
        assert_eq!(&i * &j, k);
        assert_eq!(&j * &k, i);
        assert_eq!(&k * &i, j);
        assert_eq!(&j * &i, -&k);
        assert_eq!(&i * &i, -&Quat::one());
    }

    #[test]
    fn norm_is_multiplicative() {
        let a = Quat::new(KElem::from_ints(1, 2), KElem::from_ints(0, -1), KElem::from_ints(3, 0), KElem::from_ints(1, 1));
        let b = Quat::new(KElem::from_ints(-2, 1), KElem::from_ints(1, 1), KElem::from_ints(0, 2), KElem::from_ints(5, -3));
        assert_eq!((&a * &b).nrd(), &a.nrd() * &b.nrd());
        assert_eq!((&a * &a.conj()), Quat::new(a.nrd(), KElem::zero(), KElem::zero(), KElem::zero()));
        assert_eq!(polar(&a, &a), &a.nrd() + &a.nrd());
    }

    #[test]
    fn halves_times_conjugate() {
        let h = Quat::from_doubled([RElem::ONE; 4]);
        assert_eq!(&h * &h.conj(), Quat::one());
        assert_eq!(h.order(12), Some(6));
        assert_eq!(h.doubled(), Some([RElem::ONE; 4]));
    }
}
