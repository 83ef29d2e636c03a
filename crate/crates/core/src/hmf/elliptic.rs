//! Elliptic modular forms for `SL2(ℤ)` used as restriction oracles.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::qseries::PowerSeries;

fn sigma(n: u64, k: u32) -> BigInt {
    (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| BigInt::from(d).pow(k)).sum()
}

/// `E4 = 1 + 240 Σ σ3(n) qⁿ`.
pub fn elliptic_e4(prec: usize) -> PowerSeries {
    let mut s = PowerSeries::zero(prec);
    s.coeffs[0] = BigRational::from_integer(1.into());
    for n in 1..=prec {
        s.coeffs[n] = BigRational::from_integer(sigma(n as u64, 3) * 240);
    }
    s
}

/// `Δ = q Π (1 − qⁿ)²⁴`.
pub fn elliptic_delta(prec: usize) -> PowerSeries {
    // Π (1 − qⁿ) to precision prec − 1, then the 24th power, then shift.
    let inner = prec.saturating_sub(1);
    let mut euler = PowerSeries::zero(inner);
    euler.coeffs[0] = BigRational::from_integer(1.into());
    for n in 1..=inner {
        let mut factor = PowerSeries::zero(inner);
        factor.coeffs[0] = BigRational::from_integer(1.into());
        factor.coeffs[n] = BigRational::from_integer((-1).into());
        euler = euler.mul(&factor);
    }
    let mut p = PowerSeries::zero(inner);
    p.coeffs[0] = BigRational::from_integer(1.into());
    for _ in 0..24 {
        p = p.mul(&euler);
    }
    let mut out = PowerSeries::zero(prec);
    for n in 1..=prec {
        out.coeffs[n] = p.coeff(n - 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e4_coefficients() {
        assert_eq!(elliptic_e4(3), PowerSeries::from_ints(&[1, 240, 2160, 6720]));
    }

    #[test]
    fn delta_coefficients() {
        assert_eq!(
            elliptic_delta(8),
            PowerSeries::from_ints(&[0, 1, -24, 252, -1472, 4830, -6048, -16744, 84480])
        );
    }

    #[test]
    fn delta_is_e4_cubed_minus_e6_squared() {
        // 1728 Δ = E4³ − E6², E6 = 1 − 504 Σ σ5(n) qⁿ
        let prec = 6;
        let mut e6 = PowerSeries::zero(prec);
        e6.coeffs[0] = BigRational::from_integer(1.into());
        for n in 1..=prec {
            e6.coeffs[n] = BigRational::from_integer(sigma(n as u64, 5) * -504);
        }
        let e4 = elliptic_e4(prec);
        let lhs = e4.mul(&e4).mul(&e4);
        let rhs = e6.mul(&e6);
        let d = elliptic_delta(prec);
        for n in 0..=prec {
            assert_eq!(lhs.coeff(n) - rhs.coeff(n), d.coeff(n) * BigRational::from_integer(1728.into()));
        }
    }
}
