//! High-precision log-Gamma evaluation and exact arithmetic for verifying
//! product identities of `Γ(k/n)` over reduced fractions.
//!
//! Floating point values are [`BigFloat`]s (MPFR via `rug`) carried at a
//! [`PrecisionContext`]; everything number-theoretic is exact.

// `is_multiple_of` is newer than the supported toolchain.
#![allow(unknown_lints, clippy::manual_is_multiple_of)]

pub mod cyclotomic;
pub mod error;
pub mod identities;
pub mod numbertheory;
pub mod numeric;
pub mod sequences;

pub use cyclotomic::{cyclotomic_at_one, cyclotomic_poly, poly_divexact, poly_mul, IntPolynomial};
pub use error::{Error, Result};
pub use identities::{IdentityId, ParameterKind, VerificationRecord};
pub use numbertheory::{
    chebyshev_psi, divisors, factorize, lcm_upto, mangoldt, mobius, mobius_invert, phi, ArithmeticFunctionTable,
    Factorization, LogVector,
};
pub use numeric::{
    bernoulli, lngamma_rational, lngamma_stirling, lngamma_weierstrass, sin_pi_rational, BigFloat, PrecisionContext,
    TailEstimate,
};
pub use sequences::{coprime_residues, farey, farey_bruteforce, reduce, FareyIter, FareySequence, Rational};
