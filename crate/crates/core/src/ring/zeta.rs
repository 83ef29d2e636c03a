//! Special values `ζ_K(1−k)` of the Dedekind zeta function of `ℚ(√5)`.
//!
//! `ζ_K(s) = ζ(s)·L(s, χ₅)` with `χ₅` the quadratic character modulo 5, and
//! both factors at negative integers are given by (generalized) Bernoulli
//! numbers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::kelem::{rat, rat_frac};
use crate::error::{Error, Result};

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Bernoulli numbers `B_0..=B_n` with `B_1 = −1/2`.
pub fn bernoulli_numbers(n: u32) -> Vec<BigRational> {
    let mut b = vec![BigRational::one()];
    for m in 1..=n {
        let mut s = BigRational::zero();
        for k in 0..m {
            s += BigRational::from_integer(binomial(m + 1, k)) * &b[k as usize];
        }
        b.push(-s / rat(m as i64 + 1));
    }
    b
}

/// Bernoulli polynomial `B_k(x)`.
pub fn bernoulli_polynomial(k: u32, x: &BigRational) -> BigRational {
    let b = bernoulli_numbers(k);
    let mut acc = BigRational::zero();
    let mut xp = BigRational::one();
    // Σ_m C(k,m) B_{k−m} x^m
    for m in 0..=k {
        acc += BigRational::from_integer(binomial(k, m)) * &b[(k - m) as usize] * &xp;
        xp *= x;
    }
    acc
}

/// The quadratic character modulo 5.
pub fn chi5(a: i64) -> i64 {
    match a.rem_euclid(5) {
        0 => 0,
        1 | 4 => 1,
        _ => -1,
    }
}

/// `B_{k,χ} = f^{k−1} Σ_{a=1}^{f} χ(a) B_k(a/f)`.
pub fn generalized_bernoulli(k: u32, modulus: i64, chi: impl Fn(i64) -> i64) -> BigRational {
    let mut s = BigRational::zero();
    for a in 1..=modulus {
        let c = chi(a);
        if c != 0 {
            s += rat(c) * bernoulli_polynomial(k, &rat_frac(a, modulus));
        }
    }
    s * BigRational::from_integer(BigInt::from(modulus).pow(k - 1))
}

/// `ζ(1−k) = −B_k/k`.
pub fn riemann_zeta_at_negative(k: u32) -> BigRational {
    -bernoulli_numbers(k)[k as usize].clone() / rat(k as i64)
}

/// `ζ_K(1−k)` for even `k ≥ 2`.
pub fn zeta_k_at_negative(k: u32) -> Result<BigRational> {
    if k == 0 || k % 2 == 1 {
        return Err(Error::InvalidArgument(format!("k = {k} must be even and positive")));
    }
    let l = -generalized_bernoulli(k, 5, chi5) / rat(k as i64);
    Ok(riemann_zeta_at_negative(k) * l)
}
