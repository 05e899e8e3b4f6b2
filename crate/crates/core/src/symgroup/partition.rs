use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::SymGroupError;

/// Integer partition with parts stored weakly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Sorts `parts` into weakly decreasing order; rejects zero parts.
    pub fn new(mut parts: Vec<u32>) -> Result<Self, SymGroupError> {
        if parts.contains(&0) {
            return Err(SymGroupError::ZeroPart);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub(crate) fn from_sorted_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(!parts.contains(&0));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `(d)`.
    pub fn cycle(d: u32) -> Self {
        if d == 0 {
            Self::empty()
        } else {
            Partition(vec![d])
        }
    }

    /// `(1^d)`.
    pub fn identity_class(d: u32) -> Self {
        Partition(vec![1; d as usize])
    }

    /// `(2, 1^{d-2})`; `None` when `d < 2`.
    pub fn transposition_class(d: u32) -> Option<Self> {
        if d < 2 {
            return None;
        }
        let mut parts = vec![2];
        parts.extend(std::iter::repeat_n(1, d as usize - 2));
        Some(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part value -> multiplicity `m_k`.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// `prod_k m_k!`.
    pub fn multiplicity_factorial_product(&self) -> BigInt {
        self.multiplicities()
            .values()
            .map(|&m| factorial(m))
            .product()
    }

    /// `prod_k k^{m_k}`, i.e. the product of the parts.
    pub fn part_product(&self) -> BigInt {
        self.0.iter().map(|&p| BigInt::from(p)).product()
    }

    /// Centralizer order `z = prod_k k^{m_k} m_k!`.
    pub fn z(&self) -> BigInt {
        self.part_product() * self.multiplicity_factorial_product()
    }

    /// Size of the conjugacy class, `d!/z`.
    pub fn class_size(&self) -> BigInt {
        factorial(self.size()) / self.z()
    }

    /// `(-1)^{d - #parts}`.
    pub fn sign(&self) -> i32 {
        if (self.size() as usize - self.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// All partitions of `d`, reverse lexicographic (starting with `(d)`).
    pub fn all(d: u32) -> Vec<Partition> {
        fn rec(remaining: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition(prefix.clone()));
                return;
            }
            for p in (1..=remaining.min(max)).rev() {
                prefix.push(p);
                rec(remaining - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(d, d, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z_examples() {
        assert_eq!(Partition::identity_class(5).z(), factorial(5));
        assert_eq!(Partition::cycle(7).z(), BigInt::from(7));
        assert_eq!(Partition::new(vec![1, 2]).unwrap().z(), BigInt::from(2));
        assert_eq!(Partition::empty().z(), BigInt::one());
    }

    #[test]
    fn construction() {
        let p = Partition::new(vec![1, 3, 2, 3]).unwrap();
        assert_eq!(p.parts(), &[3, 3, 2, 1]);
        assert_eq!(p.to_string(), "(3,3,2,1)");
        assert!(matches!(
            Partition::new(vec![2, 0]),
            Err(SymGroupError::ZeroPart)
        ));
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|d| Partition::all(d).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn class_sizes_partition_the_group() {
        for d in 0..=10 {
            let total: BigInt = Partition::all(d).iter().map(Partition::class_size).sum();
            assert_eq!(total, factorial(d), "d = {d}");
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 3), BigInt::from(0));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(30, 15), BigInt::from(155117520u64));
    }
}
