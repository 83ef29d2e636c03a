use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::qseries::QExp;
use crate::ring::{divisor_sigma, rat, zeta_k_at_negative};

/// Normalizing constant `κ_k = 4/ζ_K(1−k)`.
pub fn eisenstein_constant(k: u32) -> Result<BigRational> {
    Ok(rat(4) / zeta_k_at_negative(k)?)
}

/// Hilbert Eisenstein series `1 + κ_k Σ_{X ≫ 0} σ_{k−1}((X)) q^X` of parallel weight `k`.
pub fn eisenstein(k: u32, prec: i64) -> Result<QExp> {
    if k < 2 || k % 2 == 1 {
        return Err(Error::InvalidArgument(format!("Eisenstein weight {k} must be even and ≥ 2")));
    }
    let kappa = eisenstein_constant(k)?;
    let mut err = None;
    let f = QExp::from_fn(prec, |idx| {
        if idx.i == 0 {
            return rat(1);
        }
        let x = idx.element().expect("valid index");
        match divisor_sigma(x, k - 1) {
            Ok(s) => &kappa * BigRational::from_integer(s),
            Err(e) => {
                err.get_or_insert(e);
                rat(0)
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(f),
    }
}
