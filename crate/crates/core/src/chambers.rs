//! The resonance arrangement: walls `W_I = { sum_{i in I} x_i = 0 }` on the
//! zero-sum lattice, chamber signatures, and lattice search inside chambers.
//!
//! On the zero-sum space `W_I = W_{I^c}`, so each wall is stored once, by the
//! representative `I` that does not contain index 1. Walls are ordered by the
//! bitmask of `I` over indices `2..n` (bit 0 is index 2), which fixes the order
//! of signs in a signature.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::exact::MultiPoly;
use crate::hurwitz::{HurwitzError, RamificationProfile};

/// Candidate evaluations allowed by default in lattice searches.
pub const DEFAULT_SEARCH_BUDGET: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChamberError {
    #[error("point lies on wall {0}")]
    OnWall(Wall),
    #[error("invalid wall: {0}")]
    InvalidWall(String),
    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("found {found} of {requested} chamber points within {budget} candidates")]
    SamplingBudgetExceeded {
        found: usize,
        requested: usize,
        budget: usize,
    },
    #[error("no chamber across wall {wall} found within {budget} candidates")]
    AdjacencyNotFound { wall: Wall, budget: usize },
    #[error(transparent)]
    Profile(#[from] HurwitzError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Wall {
    n: usize,
    /// Bit `i - 2` set for each index `i` in the representative.
    mask: u64,
}

impl Wall {
    /// Accepts either representative of `{I, I^c}` (1-based indices).
    /// The flag reports whether the complement was taken.
    pub fn new(n: usize, indices: &[usize]) -> Result<(Wall, bool), ChamberError> {
        if !(2..=63).contains(&n) {
            return Err(ChamberError::InvalidWall(format!("unsupported n = {n}")));
        }
        let mut set: u64 = 0;
        for &i in indices {
            if !(1..=n).contains(&i) {
                return Err(ChamberError::InvalidWall(format!(
                    "index {i} out of range 1..={n}"
                )));
            }
            if set & (1 << (i - 1)) != 0 {
                return Err(ChamberError::InvalidWall(format!("index {i} repeated")));
            }
            set |= 1 << (i - 1);
        }
        let full = (1u64 << n) - 1;
        if set == 0 || set == full {
            return Err(ChamberError::InvalidWall(
                "index set must be a nonempty proper subset".into(),
            ));
        }
        let complemented = set & 1 != 0;
        let set = if complemented { full & !set } else { set };
        Ok((Wall { n, mask: set >> 1 }, complemented))
    }

    fn from_mask(n: usize, mask: u64) -> Wall {
        Wall { n, mask }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sorted 1-based indices of the canonical representative.
    pub fn indices(&self) -> Vec<usize> {
        (0..self.n - 1)
            .filter(|b| self.mask & (1 << b) != 0)
            .map(|b| b + 2)
            .collect()
    }

    /// Sorted 1-based indices of the complement (always contains 1).
    pub fn complement(&self) -> Vec<usize> {
        let mut out = vec![1];
        out.extend(
            (0..self.n - 1)
                .filter(|b| self.mask & (1 << b) == 0)
                .map(|b| b + 2),
        );
        out
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= 2 && self.mask & (1 << (i - 2)) != 0
    }

    /// `sum_{i in I} x_i` as a degree-1 polynomial.
    pub fn form(&self) -> MultiPoly {
        MultiPoly::linear_form(self.n, &self.indices())
    }

    pub fn subset_sum(&self, x: &[i64]) -> i64 {
        self.indices().iter().map(|&i| x[i - 1]).sum()
    }
}

impl fmt::Display for Wall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.indices().iter().map(|i| i.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

impl Serialize for Wall {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.indices().serialize(s)
    }
}

/// All `2^{n-1} - 1` canonical walls, in signature order.
pub fn walls(n: usize) -> Vec<Wall> {
    assert!((2..=63).contains(&n), "n must be in 2..=63");
    (1..(1u64 << (n - 1)))
        .map(|m| Wall::from_mask(n, m))
        .collect()
}

/// Sign vector of all canonical subset sums; `true` is `+`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChamberSignature {
    n: usize,
    signs: Vec<bool>,
}

impl ChamberSignature {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sign_at(&self, wall: &Wall) -> bool {
        self.signs[(wall.mask - 1) as usize]
    }

    pub fn flipped(&self, wall: &Wall) -> ChamberSignature {
        let mut s = self.clone();
        let idx = (wall.mask - 1) as usize;
        s.signs[idx] = !s.signs[idx];
        s
    }

    /// Walls at which the two signatures disagree.
    pub fn differing_walls(&self, other: &ChamberSignature) -> Vec<Wall> {
        assert_eq!(self.n, other.n);
        self.signs
            .iter()
            .zip(&other.signs)
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(i, _)| Wall::from_mask(self.n, i as u64 + 1))
            .collect()
    }
}

impl fmt::Display for ChamberSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.signs {
            f.write_str(if s { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl Serialize for ChamberSignature {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Subset sums indexed by mask over indices `2..n`.
fn subset_sums(x: &[i64]) -> Vec<i64> {
    let m = x.len() - 1;
    let mut sums = vec![0i64; 1 << m];
    for mask in 1..sums.len() {
        let low = mask.trailing_zeros() as usize;
        sums[mask] = sums[mask & (mask - 1)] + x[low + 1];
    }
    sums
}

/// Signature of an arbitrary zero-sum integer vector.
pub fn signature_of(x: &[i64]) -> Result<ChamberSignature, ChamberError> {
    let n = x.len();
    if !(2..=63).contains(&n) {
        return Err(ChamberError::DimensionMismatch {
            expected: 2,
            got: n,
        });
    }
    let sums = subset_sums(x);
    let mut signs = Vec::with_capacity(sums.len() - 1);
    for (mask, &s) in sums.iter().enumerate().skip(1) {
        if s == 0 {
            return Err(ChamberError::OnWall(Wall::from_mask(n, mask as u64)));
        }
        signs.push(s > 0);
    }
    Ok(ChamberSignature { n, signs })
}

pub fn signature(x: &RamificationProfile) -> Result<ChamberSignature, ChamberError> {
    signature_of(x.entries())
}

/// A lattice point certifying a chamber.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChamberWitness {
    point: RamificationProfile,
    signature: ChamberSignature,
}

impl ChamberWitness {
    pub fn new(point: RamificationProfile) -> Result<Self, ChamberError> {
        let signature = signature(&point)?;
        Ok(ChamberWitness { point, signature })
    }

    pub fn from_entries(x: Vec<i64>) -> Result<Self, ChamberError> {
        Self::new(RamificationProfile::new(x)?)
    }

    pub fn point(&self) -> &RamificationProfile {
        &self.point
    }

    pub fn signature(&self) -> &ChamberSignature {
        &self.signature
    }

    pub fn n(&self) -> usize {
        self.point.n()
    }
}

/// Deterministic candidate stream `k*x + sum_i c_i (e_i - e_n)`, visited in
/// shells `k + |c|_1 = s` for `s = 1, 2, ...`, `k` ascending, then `c` in
/// lexicographic order.
struct Candidates<'a> {
    base: &'a [i64],
    shell: usize,
    k: usize,
    offsets: std::vec::IntoIter<Vec<i64>>,
}

impl<'a> Candidates<'a> {
    fn new(base: &'a [i64]) -> Self {
        let mut c = Candidates {
            base,
            shell: 1,
            k: 1,
            offsets: Vec::new().into_iter(),
        };
        c.offsets = offsets_with_norm(base.len() - 1, 0).into_iter();
        c
    }
}

impl Iterator for Candidates<'_> {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        loop {
            if let Some(c) = self.offsets.next() {
                let n = self.base.len();
                let mut p: Vec<i64> = self.base.iter().map(|&v| v * self.k as i64).collect();
                for (i, &ci) in c.iter().enumerate() {
                    p[i] += ci;
                    p[n - 1] -= ci;
                }
                return Some(p);
            }
            if self.k < self.shell {
                self.k += 1;
            } else {
                self.shell += 1;
                self.k = 1;
            }
            let norm = self.shell - self.k;
            self.offsets = offsets_with_norm(self.base.len() - 1, norm).into_iter();
        }
    }
}

/// All integer vectors of length `dim` with `|c|_1 == norm`, lexicographic.
fn offsets_with_norm(dim: usize, norm: usize) -> Vec<Vec<i64>> {
    fn rec(dim: usize, left: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if prefix.len() == dim - 1 {
            if left == 0 {
                prefix.push(0);
                out.push(prefix.clone());
                prefix.pop();
            } else {
                for v in [-left, left] {
                    prefix.push(v);
                    out.push(prefix.clone());
                    prefix.pop();
                }
            }
            return;
        }
        for v in -left..=left {
            prefix.push(v);
            rec(dim, left - v.abs(), prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if dim == 0 {
        if norm == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(dim, norm as i64, &mut Vec::with_capacity(dim), &mut out);
    out
}

fn matches(point: &[i64], target: &ChamberSignature) -> bool {
    point.iter().all(|&v| v != 0) && signature_of(point).is_ok_and(|s| &s == target)
}

/// `count` distinct lattice points with the witness's signature, nearest
/// (in the shell order) first.
pub fn sample_chamber(
    witness: &ChamberWitness,
    count: usize,
    budget: usize,
) -> Result<Vec<RamificationProfile>, ChamberError> {
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(count);
    for cand in Candidates::new(witness.point.entries()).take(budget) {
        if out.len() == count {
            break;
        }
        if matches(&cand, &witness.signature) && seen.insert(cand.clone()) {
            out.push(RamificationProfile::new(cand)?);
        }
    }
    if out.len() < count {
        return Err(ChamberError::SamplingBudgetExceeded {
            found: out.len(),
            requested: count,
            budget,
        });
    }
    Ok(out)
}

/// A witness for the chamber whose signature is the input's with the sign at
/// `wall` flipped. Fails when no such lattice point turns up within `budget`
/// candidates; the flipped sign vector need not be a chamber at all.
pub fn adjacent_chamber(
    witness: &ChamberWitness,
    wall: &Wall,
    budget: usize,
) -> Result<ChamberWitness, ChamberError> {
    if wall.n != witness.n() {
        return Err(ChamberError::DimensionMismatch {
            expected: witness.n(),
            got: wall.n,
        });
    }
    let target = witness.signature.flipped(wall);
    Candidates::new(witness.point.entries())
        .take(budget)
        .find(|c| matches(c, &target))
        .map(|c| ChamberWitness::from_entries(c).expect("matched candidates are valid"))
        .ok_or_else(|| ChamberError::AdjacencyNotFound {
            wall: wall.clone(),
            budget,
        })
}
