//! Double Hurwitz numbers `H_g(x)`.
//!
//! Two independent evaluators:
//!
//! * [`oracle_count`] enumerates monodromy tuples: a fixed permutation of
//!   the class of the positive parts followed by `r = 2g - 2 + n`
//!   transpositions, accepted when the product lands in the class of the
//!   negative parts and the generated group is transitive.
//! * [`frobenius_connected`] sums irreducible characters to count possibly
//!   disconnected covers, then strips disconnected contributions by
//!   inclusion–exclusion over set partitions of the labeled parts.
//!
//! Both use labeled normalization by default: preimages of `0` and `infinity`
//! carry the labels of `x`, so `H_g` is a function on labeled zero-sum
//! vectors. [`Normalization::Unlabeled`] divides by the relabeling factor
//! `prod m_k(alpha)! * prod m_k(beta)!`.

mod frobenius;
mod oracle;
mod profile;

pub use frobenius::{
    disconnected_labeled, frobenius_connected, frobenius_connected_with, frobenius_disconnected,
    hurwitz_number,
};
pub use oracle::{oracle_count, oracle_count_with, OracleConfig, DEFAULT_LEAF_BUDGET};
pub use profile::{all_profiles, RamificationProfile};

use std::time::Duration;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::ExactRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HurwitzError {
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("2g - 2 + n = {value} is negative (g = {g}, n = {n})")]
    NegativeR { g: u32, n: usize, value: i64 },
    #[error("enumeration of {leaves} leaves exceeds budget {budget}")]
    BudgetExceeded { leaves: BigInt, budget: u64 },
    #[error("size mismatch: |alpha| = {alpha}, |beta| = {beta}")]
    SizeMismatch { alpha: u32, beta: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Oracle,
    Frobenius,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Oracle => "oracle",
            Method::Frobenius => "frobenius",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    /// Preimages over `0` and `infinity` carry the labels of `x`.
    #[default]
    Labeled,
    /// Automorphism-weighted count of covers with unlabeled preimages.
    Unlabeled,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationStats {
    pub tuples_examined: u64,
    pub tuples_accepted: u64,
    #[serde(with = "duration_ms")]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HurwitzResult {
    #[serde(with = "crate::exact::rational_string")]
    pub value: ExactRational,
    pub g: u32,
    pub r: u32,
    pub method: Method,
    pub stats: EnumerationStats,
}

mod duration_ms {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(d.as_millis() as u64)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_millis(u64::deserialize(d)?))
    }
}

/// Number of simple branch points, `r = 2g - 2 + n`.
pub fn simple_branch_count(g: u32, n: usize) -> Result<u32, HurwitzError> {
    let value = 2 * g as i64 - 2 + n as i64;
    if value < 0 {
        return Err(HurwitzError::NegativeR { g, n, value });
    }
    Ok(value as u32)
}
