//! Exact verification of the orbit, stabilizer, annihilator, action-set,
//! exponential-sum and Fourier-transform tables for the prehomogeneous vector
//! space of pairs of ternary quadratic forms over Z/p and Z/p².
//!
//! Every check recomputes its table from scratch in exact arithmetic at small
//! primes and compares against the published closed forms. There is no
//! floating point anywhere: character sums are accumulated as exponent
//! histograms in Z[ζ_p] and reduced to rational integers at the end.

use thiserror::Error;

pub mod action_sets;
pub mod forms;
pub mod fourier;
pub mod linalg;
pub mod orbits;
pub mod quotient;
pub mod report;
pub mod ring;
pub mod sums;
pub mod tangent;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("p = {0} is not an odd prime in (3, 13]")]
    BadPrime(i64),
    #[error("modulus exponent k = {0} must be 1 or 2")]
    BadExponent(u8),
    #[error("{ell} is not a quadratic non-residue mod {p}")]
    NotANonResidue { ell: i64, p: i64 },
    #[error("cyclotomic value is not a rational integer")]
    NotRational,
    #[error("contract violation: {0}")]
    Contract(&'static str),
    #[error("resource guard: {what} is not run at p = {p}")]
    ResourceGuard { what: &'static str, p: i64 },
    #[error("table mismatch: {0}")]
    TableMismatch(String),
}
