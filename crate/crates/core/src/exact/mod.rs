//! Exact arithmetic: arbitrary-precision rationals, multivariate polynomials on
//! the zero-sum coordinate space, and exact interpolation.
//!
//! Every polynomial lives on the hyperplane `x_1 + ... + x_n = 0` and is stored
//! in canonical coordinates: `x_n` is always eliminated through
//! `x_n = -(x_1 + ... + x_{n-1})`, so two polynomials are equal exactly when
//! their term maps are equal.

mod interp;
mod poly;

pub use interp::{interpolate, monomials_up_to};
pub use poly::{Monomial, MultiPoly};

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

/// Exact rational number in lowest terms with a positive denominator.
pub type ExactRational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("coordinates sum to {sum}, not zero")]
    NonzeroSum { sum: BigInt },
    #[error("underdetermined interpolation: rank {rank} < {unknowns} unknowns")]
    Underdetermined { rank: usize, unknowns: usize },
    #[error("inconsistent interpolation: values are not a polynomial of degree <= {degree_bound} on these points")]
    Inconsistent { degree_bound: u32 },
    #[error("interpolation nodes {first} and {second} coincide")]
    DuplicateNode { first: usize, second: usize },
    #[error("{points} points but {values} values")]
    LengthMismatch { points: usize, values: usize },
    #[error("invalid polynomial encoding: {0}")]
    Encoding(String),
}

pub fn rational_from_int(v: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<ExactRational, ExactError> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|e| ExactError::Encoding(format!("bad rational {s:?}: {e}")))
}

/// Checks `x` has `n` entries summing to zero.
pub fn check_zero_sum(x: &[i64], n: usize) -> Result<(), ExactError> {
    if x.len() != n {
        return Err(ExactError::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    let sum: i128 = x.iter().map(|&v| v as i128).sum();
    if sum != 0 {
        return Err(ExactError::NonzeroSum {
            sum: BigInt::from(sum),
        });
    }
    Ok(())
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod rational_string {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_rational(&s).map_err(serde::de::Error::custom)
    }
}
