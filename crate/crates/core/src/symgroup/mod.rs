//! Partitions, permutations of `{1..d}`, conjugacy classes and irreducible
//! characters of the symmetric group.

mod character;
mod partition;
mod permutation;

pub use character::{dimension, mn_character};
pub use partition::{binomial, factorial, Partition};
pub use permutation::Permutation;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymGroupError {
    #[error("partition parts must be positive")]
    ZeroPart,
    #[error("not a permutation")]
    NotAPermutation,
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: u32, right: u32 },
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            components: n,
        }
    }

    pub fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    /// Returns true if `a` and `b` were in different sets.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.components -= 1;
        true
    }

    pub fn components(&self) -> usize {
        self.components
    }
}

/// Whether the group generated by `gens` acts transitively on `{1..d}`.
pub fn is_transitive(d: usize, gens: &[Permutation]) -> bool {
    let mut uf = UnionFind::new(d);
    for g in gens {
        debug_assert_eq!(g.degree(), d);
        for i in 0..d {
            uf.union(i, g.apply(i));
        }
    }
    uf.components() <= 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transitivity() {
        assert!(is_transitive(1, &[]));
        let a = Permutation::from_cycles(4, &[&[1, 2]]).unwrap();
        let b = Permutation::from_cycles(4, &[&[3, 4]]).unwrap();
        assert!(!is_transitive(4, &[a, b]));
        let a = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[2, 3]]).unwrap();
        assert!(is_transitive(3, &[a, b]));
        assert!(!is_transitive(2, &[]));
    }

    #[test]
    fn union_find_counts_components() {
        let mut uf = UnionFind::new(5);
        assert!(uf.union(0, 1));
        assert!(uf.union(3, 4));
        assert!(!uf.union(1, 0));
        assert_eq!(uf.components(), 3);
        assert_eq!(uf.find(1), uf.find(0));
    }
}
