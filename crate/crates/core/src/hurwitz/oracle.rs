use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use super::{
    simple_branch_count, EnumerationStats, HurwitzError, HurwitzResult, Method, Normalization,
    RamificationProfile,
};
use crate::symgroup::{Partition, Permutation, UnionFind};

/// Default cap on `C(d,2)^r`, the unpruned number of leaves.
pub const DEFAULT_LEAF_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone)]
pub struct OracleConfig {
    pub budget: u64,
    pub parallel: bool,
    pub normalization: Normalization,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            budget: DEFAULT_LEAF_BUDGET,
            parallel: true,
            normalization: Normalization::Labeled,
        }
    }
}

pub fn oracle_count(profile: &RamificationProfile, g: u32) -> Result<HurwitzResult, HurwitzError> {
    oracle_count_with(profile, g, &OracleConfig::default())
}

/// Brute-force monodromy count.
///
/// `sigma_0` is fixed to one permutation of cycle type `alpha`; every
/// `r`-tuple of transpositions is walked depth first and accepted when
/// `sigma_0 tau_1 ... tau_r` has cycle type `beta` and `{sigma_0, tau_i}` is
/// transitive. With `N` accepted tuples the labeled value is
/// `prod m_k(beta)! * N / prod_k k^{m_k(alpha)}`.
pub fn oracle_count_with(
    profile: &RamificationProfile,
    g: u32,
    config: &OracleConfig,
) -> Result<HurwitzResult, HurwitzError> {
    let start = Instant::now();
    let r = simple_branch_count(g, profile.n())?;
    let d = profile.degree() as usize;
    let pairs = d * d.saturating_sub(1) / 2;
    let leaves = num_traits::pow(BigInt::from(pairs), r as usize);
    if leaves > BigInt::from(config.budget) {
        return Err(HurwitzError::BudgetExceeded {
            leaves,
            budget: config.budget,
        });
    }

    let alpha = profile.alpha();
    let beta = profile.beta();
    let search = Search::new(&alpha, &beta, r);
    let (examined, accepted) = search.run(config.parallel);

    let accepted_big = BigInt::from(accepted);
    let value = match config.normalization {
        Normalization::Labeled => BigRational::new(
            beta.multiplicity_factorial_product() * accepted_big,
            alpha.part_product(),
        ),
        Normalization::Unlabeled => BigRational::new(accepted_big, alpha.z()),
    };
    Ok(HurwitzResult {
        value,
        g,
        r,
        method: Method::Oracle,
        stats: EnumerationStats {
            tuples_examined: examined,
            tuples_accepted: accepted,
            elapsed: start.elapsed(),
        },
    })
}

struct Search {
    r: u32,
    start: Permutation,
    /// Cycle of `sigma_0` containing each point.
    block: Vec<usize>,
    blocks: usize,
    beta: Partition,
    target_cycles: usize,
    transpositions: Vec<(usize, usize)>,
}

struct State {
    images: Vec<usize>,
    inverse: Vec<usize>,
    cycles: usize,
    path: Vec<(usize, usize)>,
    examined: u64,
    accepted: u64,
}

impl Search {
    fn new(alpha: &Partition, beta: &Partition, r: u32) -> Self {
        let d = alpha.size() as usize;
        let start = Permutation::of_cycle_type(alpha);
        let mut block = vec![0; d];
        let mut pos = 0;
        for (b, &len) in alpha.parts().iter().enumerate() {
            for slot in &mut block[pos..pos + len as usize] {
                *slot = b;
            }
            pos += len as usize;
        }
        let transpositions = (0..d)
            .flat_map(|a| (a + 1..d).map(move |b| (a, b)))
            .collect();
        Search {
            r,
            start,
            block,
            blocks: alpha.len(),
            beta: beta.clone(),
            target_cycles: beta.len(),
            transpositions,
        }
    }

    fn initial_state(&self) -> State {
        State {
            images: self.start.images().to_vec(),
            inverse: self.start.inverse().images().to_vec(),
            cycles: self.blocks,
            path: Vec::with_capacity(self.r as usize),
            examined: 0,
            accepted: 0,
        }
    }

    /// Each transposition moves the cycle count by exactly one, so the
    /// remaining steps must cover the distance with matching parity.
    fn reachable(&self, cycles: usize, remaining: u32) -> bool {
        let dist = cycles.abs_diff(self.target_cycles) as u32;
        dist <= remaining && (remaining - dist).is_multiple_of(2)
    }

    fn run(&self, parallel: bool) -> (u64, u64) {
        if !self.reachable(self.blocks, self.r) {
            return (0, 0);
        }
        if self.r == 0 || !parallel {
            let mut st = self.initial_state();
            self.dfs(&mut st);
            return (st.examined, st.accepted);
        }
        self.transpositions
            .par_iter()
            .map(|&t| {
                let mut st = self.initial_state();
                self.step(&mut st, t);
                (st.examined, st.accepted)
            })
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
    }

    fn dfs(&self, st: &mut State) {
        if st.path.len() == self.r as usize {
            self.leaf(st);
            return;
        }
        for &t in &self.transpositions {
            self.step(st, t);
        }
    }

    /// Right-multiplies the current product by `(a b)`, recurses, undoes.
    fn step(&self, st: &mut State, (a, b): (usize, usize)) {
        let same_cycle = {
            let mut j = st.images[a];
            while j != a && j != b {
                j = st.images[j];
            }
            j == b
        };
        let cycles = if same_cycle {
            st.cycles + 1
        } else {
            st.cycles - 1
        };
        let remaining = self.r - st.path.len() as u32 - 1;
        if !self.reachable(cycles, remaining) {
            return;
        }
        // (images then (a b))(i): the preimages of a and b swap targets.
        let (pa, pb) = (st.inverse[a], st.inverse[b]);
        st.images.swap(pa, pb);
        st.inverse.swap(a, b);
        let saved = st.cycles;
        st.cycles = cycles;
        st.path.push((a, b));

        self.dfs(st);

        st.path.pop();
        st.cycles = saved;
        st.inverse.swap(a, b);
        st.images.swap(pa, pb);
    }

    fn leaf(&self, st: &mut State) {
        st.examined += 1;
        if st.cycles != self.target_cycles {
            return;
        }
        let mut uf = UnionFind::new(self.blocks);
        for &(a, b) in &st.path {
            uf.union(self.block[a], self.block[b]);
        }
        if uf.components() != 1 {
            return;
        }
        let product =
            Permutation::from_images(&st.images.iter().map(|&v| v + 1).collect::<Vec<_>>())
                .expect("images stay a bijection");
        if product.cycle_type() == self.beta {
            st.accepted += 1;
        }
    }
}
