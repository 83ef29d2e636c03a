use num_bigint::BigInt;
use num_traits::{One, Pow};

use super::relem::{canonical_associate, gcd, RElem};
use crate::error::{Error, Result};

/// How a rational prime decomposes in `R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimeKind {
    Split,
    Inert,
    Ramified,
}

pub fn prime_kind(p: u64) -> PrimeKind {
    match p % 5 {
        0 => PrimeKind::Ramified,
        1 | 4 => PrimeKind::Split,
        _ => PrimeKind::Inert,
    }
}

/// `x = unit · Π prime^exponent` with primes in canonical associate form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealFactorization {
    pub unit: RElem,
    pub factors: Vec<(RElem, u32)>,
}

impl IdealFactorization {
    pub fn recompose(&self) -> RElem {
        self.factors
            .iter()
            .fold(self.unit, |acc, (p, e)| acc * p.pow(*e))
    }
}

fn rational_prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The canonical prime elements above the rational prime `p`.
pub fn primes_above(p: u64) -> Vec<RElem> {
    match prime_kind(p) {
        PrimeKind::Ramified => vec![canonical_associate(RElem::SQRT5).0],
        PrimeKind::Inert => vec![canonical_associate(RElem::from(p as i64)).0],
        PrimeKind::Split => {
            let t = (1..p)
                .find(|t| (t * t) % p == 5 % p)
                .expect("5 is a square modulo a split prime");
            // t − √5 = (t − 1) − 2θ
            let g = gcd(RElem::from(p as i64), RElem::new(t as i64 - 1, -2));
            debug_assert_eq!(g.norm().unsigned_abs(), p);
            let pi = canonical_associate(g).0;
            let pib = canonical_associate(pi.conj()).0;
            let mut v = vec![pi, pib];
            v.sort();
            v
        }
    }
}

fn strip(x: &mut RElem, p: &RElem) -> u32 {
    let mut e = 0;
    while let Some(q) = x.div_exact(p) {
        *x = q;
        e += 1;
    }
    e
}

/// Factor a nonzero element into canonical prime elements.
pub fn factor(x: RElem) -> Result<IdealFactorization> {
    if x.is_zero() {
        return Err(Error::InvalidArgument("cannot factor zero".into()));
    }
    let mut rem = x;
    let mut factors = Vec::new();
    for (p, _) in rational_prime_factors(x.norm().unsigned_abs()) {
        for pi in primes_above(p) {
            let e = strip(&mut rem, &pi);
            if e > 0 {
                factors.push((pi, e));
            }
        }
    }
    if !rem.is_unit() {
        return Err(Error::Internal(format!("factorization of {x} left {rem}")));
    }
    factors.sort_by_key(|(p, _)| (p.norm(), *p));
    Ok(IdealFactorization { unit: rem, factors })
}

/// `Σ_{𝔟 | (x)} N(𝔟)^k`, multiplicative over the prime factorization.
pub fn divisor_sigma(x: RElem, k: u32) -> Result<BigInt> {
    let f = factor(x)?;
    let mut acc = BigInt::one();
    for (pi, e) in f.factors {
        let q = BigInt::from(pi.norm()).pow(k);
        let mut term = BigInt::one();
        let mut local = BigInt::one();
        for _ in 0..e {
            term *= &q;
            local += &term;
        }
        acc *= local;
    }
    Ok(acc)
}
