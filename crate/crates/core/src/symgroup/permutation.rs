use std::fmt;

use super::{Partition, SymGroupError};

/// Permutation of `{1..d}`, stored 0-based as an image word.
///
/// Products read left to right: `(s.then(t))(i) = t(s(i))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(d: usize) -> Self {
        Permutation {
            images: (0..d).collect(),
        }
    }

    /// From a 1-based image word.
    pub fn from_images(images: &[usize]) -> Result<Self, SymGroupError> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &v in images {
            if v == 0 || v > d || seen[v - 1] {
                return Err(SymGroupError::NotAPermutation);
            }
            seen[v - 1] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|v| v - 1).collect(),
        })
    }

    /// From disjoint cycles written 1-based, e.g. `[[1, 2], [3, 4, 5]]`.
    pub fn from_cycles(d: usize, cycles: &[&[usize]]) -> Result<Self, SymGroupError> {
        let mut images: Vec<usize> = (0..d).collect();
        let mut seen = vec![false; d];
        for cyc in cycles {
            for (k, &a) in cyc.iter().enumerate() {
                if a == 0 || a > d || seen[a - 1] {
                    return Err(SymGroupError::NotAPermutation);
                }
                seen[a - 1] = true;
                images[a - 1] = cyc[(k + 1) % cyc.len()] - 1;
            }
        }
        Ok(Permutation { images })
    }

    /// Transposition swapping `a` and `b` (0-based).
    pub fn transposition(d: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(d);
        p.images.swap(a, b);
        p
    }

    /// Representative of the class `shape`, cycles on consecutive points.
    pub fn of_cycle_type(shape: &Partition) -> Self {
        let d = shape.size() as usize;
        let mut images = vec![0; d];
        let mut start = 0;
        for &len in shape.parts() {
            let len = len as usize;
            for k in 0..len {
                images[start + k] = start + (k + 1) % len;
            }
            start += len;
        }
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based image of 0-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { images: inv }
    }

    /// Cycles (0-based), each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for s in 0..self.degree() {
            if seen[s] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i);
                i = self.images[i];
            }
            out.push(cyc);
        }
        out
    }

    pub fn num_cycles(&self) -> usize {
        let mut seen = vec![false; self.degree()];
        let mut count = 0;
        for s in 0..self.degree() {
            if !seen[s] {
                count += 1;
                let mut i = s;
                while !seen[i] {
                    seen[i] = true;
                    i = self.images[i];
                }
            }
        }
        count
    }

    pub fn cycle_type(&self) -> Partition {
        let mut parts: Vec<u32> = self.cycles().iter().map(|c| c.len() as u32).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::from_sorted_unchecked(parts)
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, 1-based, fixed points omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let s: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", s.join(" "))?;
        }
        Ok(())
    }
}
