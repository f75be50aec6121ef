//! Coefficient arithmetic: exact rationals with a distinguished prime, the
//! residue rings `o_L / p^N` of a tower-presented local field, rational
//! polynomials modulo the unramified defining polynomial, and truncated
//! power series over any of these.

use std::fmt::Debug;

use num_bigint::BigInt;
use thiserror::Error;

pub mod field;
pub mod matrix;
pub mod numfield;
pub mod rational;
pub mod residue;
pub mod series;

pub use field::{FieldSpec, LocalField, UnitGroupSample};
pub use numfield::{NfContext, NumberFieldElement};
pub use rational::LocalRational;
pub use residue::ResidueElement;
pub use series::Series;

/// Default cap on `n = e * f`.
pub const DEFAULT_DEGREE_CAP: usize = 8;
/// Default cap on exhaustive enumerations.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;
/// Default working precision `N` (elements live in `o_L / p^N`).
pub const DEFAULT_PRECISION: u32 = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomial is not monic of degree {0}")]
    NotMonic(usize),
    #[error("unramified polynomial is reducible mod p")]
    NotIrreducible,
    #[error("ramified polynomial is not Eisenstein")]
    NotEisenstein,
    #[error("degree n = {n} exceeds the cap {cap}")]
    DegreeCapExceeded { n: usize, cap: usize },
    #[error("element is not a unit")]
    NotAUnit,
    #[error("operation requires an unramified field")]
    RamifiedUnsupported,
    #[error("enumeration of {size} elements exceeds the cap {cap}")]
    CapExceeded { size: u64, cap: u64 },
    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("linear coefficient is not invertible")]
    NonUnitLinearTerm,
    #[error("reversion failed to verify through degree {0}")]
    ReversionFailed(usize),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("precision must be at least 1")]
    ZeroPrecision,
    #[error("mismatched variable counts: {0} vs {1}")]
    VariableMismatch(usize, usize),
    #[error("invalid input: {0}")]
    Invalid(String),
}

/// A commutative coefficient ring for truncated power series.
///
/// Elements carry whatever context they need (prime, field presentation), so
/// constants are always produced from an existing element.
pub trait Coeff: Clone + PartialEq + Debug + std::fmt::Display + Send + Sync {
    fn mode_name(&self) -> &'static str;
    fn zero_like(&self) -> Self;
    fn from_int_like(&self, n: &BigInt) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Inverse in the coefficient domain, when it exists.
    fn inverse(&self) -> Option<Self>;
    /// Lies in the valuation ring.
    fn is_integral(&self) -> bool;
    /// Integral with nonzero image in the residue field.
    fn is_unit_mod_max(&self) -> bool;
    /// Equality, or agreement modulo `pi^digits` for inexact domains.
    fn agrees_with(&self, other: &Self, digits: Option<i64>) -> bool;
    fn json(&self) -> serde_json::Value;

    fn one_like(&self) -> Self {
        self.from_i64_like(1)
    }

    fn from_i64_like(&self, n: i64) -> Self {
        self.from_int_like(&BigInt::from(n))
    }

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}

/// Trial-division primality test; primes here are tiny.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
