//! Exact arithmetic in the golden ring `R = ℤ[θ]`, `θ = (−1+√5)/2`, and its
//! fraction field `K = ℚ(√5)`.

mod factor;
mod kelem;
mod relem;
mod zeta;

pub use factor::{divisor_sigma, factor, prime_kind, primes_above, IdealFactorization, PrimeKind};
pub use kelem::{is_totally_positive, KElem};
pub(crate) use kelem::rat;
#[cfg(test)]
pub(crate) use kelem::rat_frac;
pub use relem::{canonical_associate, euclid_divmod, gcd, sign_sqrt5, RElem};
pub use zeta::{
    bernoulli_numbers, bernoulli_polynomial, chi5, generalized_bernoulli,
    riemann_zeta_at_negative, zeta_k_at_negative,
};

/// `(Tr(η⁻¹X), Tr(X))` for `X ∈ R`.
pub fn element_to_index(x: RElem) -> (i64, i64) {
    x.to_index()
}

/// The element `X` with exponent pair `(i, j)`; errors unless `X` is zero or totally positive.
pub fn index_to_element(i: i64, j: i64) -> crate::error::Result<RElem> {
    RElem::from_index(i, j)
}
