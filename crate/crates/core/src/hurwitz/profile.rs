use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::HurwitzError;
use crate::symgroup::Partition;

/// Labeled zero-sum vector with nonzero entries and both signs present.
/// Positive entries are the ramification over `0`, negative entries (in
/// absolute value) the ramification over `infinity`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct RamificationProfile {
    x: Vec<i64>,
}

impl RamificationProfile {
    pub fn new(x: Vec<i64>) -> Result<Self, HurwitzError> {
        if x.len() < 2 {
            return Err(HurwitzError::InvalidProfile(format!(
                "need at least 2 entries, got {}",
                x.len()
            )));
        }
        if let Some(i) = x.iter().position(|&v| v == 0) {
            return Err(HurwitzError::InvalidProfile(format!(
                "entry x{} is zero",
                i + 1
            )));
        }
        let sum: i128 = x.iter().map(|&v| v as i128).sum();
        if sum != 0 {
            return Err(HurwitzError::InvalidProfile(format!(
                "entries sum to {sum}, not zero"
            )));
        }
        if x.iter().any(|&v| v.unsigned_abs() > u32::MAX as u64) {
            return Err(HurwitzError::InvalidProfile("entry out of range".into()));
        }
        Ok(RamificationProfile { x })
    }

    pub fn entries(&self) -> &[i64] {
        &self.x
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn degree(&self) -> u32 {
        self.x.iter().filter(|&&v| v > 0).sum::<i64>() as u32
    }

    /// 1-based labels of the positive entries.
    pub fn positive_labels(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&i| self.x[i - 1] > 0).collect()
    }

    /// 1-based labels of the negative entries.
    pub fn negative_labels(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&i| self.x[i - 1] < 0).collect()
    }

    /// Cycle type over `0`.
    pub fn alpha(&self) -> Partition {
        Partition::new(
            self.x
                .iter()
                .filter(|&&v| v > 0)
                .map(|&v| v as u32)
                .collect(),
        )
        .expect("entries are nonzero")
    }

    /// Cycle type over `infinity`.
    pub fn beta(&self) -> Partition {
        Partition::new(
            self.x
                .iter()
                .filter(|&&v| v < 0)
                .map(|&v| (-v) as u32)
                .collect(),
        )
        .expect("entries are nonzero")
    }

    /// `prod m_k(alpha)! * prod m_k(beta)!`.
    pub fn relabeling_factor(&self) -> BigInt {
        self.alpha().multiplicity_factorial_product() * self.beta().multiplicity_factorial_product()
    }

    /// Relabeling-invariant key: positive parts descending, negative parts
    /// ascending.
    pub fn sorted_parts(&self) -> (Vec<i64>, Vec<i64>) {
        let mut pos: Vec<i64> = self.x.iter().copied().filter(|&v| v > 0).collect();
        let mut neg: Vec<i64> = self.x.iter().copied().filter(|&v| v < 0).collect();
        pos.sort_unstable_by(|a, b| b.cmp(a));
        neg.sort_unstable();
        (pos, neg)
    }
}

impl TryFrom<Vec<i64>> for RamificationProfile {
    type Error = HurwitzError;
    fn try_from(x: Vec<i64>) -> Result<Self, HurwitzError> {
        Self::new(x)
    }
}

impl From<RamificationProfile> for Vec<i64> {
    fn from(p: RamificationProfile) -> Self {
        p.x
    }
}

impl fmt::Display for RamificationProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.x.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Every labeled profile with `2 <= n <= max_n` entries and degree at most
/// `max_degree`, ordered by `n`, then lexicographically.
pub fn all_profiles(max_degree: u32, max_n: usize) -> Vec<RamificationProfile> {
    fn rec(n: usize, d: i64, prefix: &mut Vec<i64>, out: &mut Vec<RamificationProfile>) {
        if prefix.len() == n {
            let pos: i64 = prefix.iter().filter(|&&v| v > 0).sum();
            if pos <= d {
                if let Ok(p) = RamificationProfile::new(prefix.clone()) {
                    out.push(p);
                }
            }
            return;
        }
        for v in (-d..=d).filter(|&v| v != 0) {
            prefix.push(v);
            rec(n, d, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for n in 2..=max_n {
        rec(n, max_degree as i64, &mut Vec::with_capacity(n), &mut out);
    }
    out
}
