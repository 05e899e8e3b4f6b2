use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};
use std::time::Instant;

use num_rational::BigRational;
use num_traits::Zero;

use super::{
    simple_branch_count, EnumerationStats, HurwitzError, HurwitzResult, Method, Normalization,
    RamificationProfile,
};
use crate::exact::ExactRational;
use crate::symgroup::{binomial, dimension, factorial, mn_character, Partition};

/// Number of tuples `(sigma_0, tau_1..tau_r, sigma_inf)` with `sigma_0` of
/// type `alpha`, transpositions `tau_i`, `sigma_inf` of type `beta` and
/// product the identity; no transitivity requirement.
///
/// `|C_alpha| |C_beta| |C_tau|^r / d! * sum_lambda chi(alpha) chi(beta) chi(tau)^r / dim^r`.
pub fn frobenius_disconnected(
    alpha: &Partition,
    beta: &Partition,
    r: u32,
) -> Result<ExactRational, HurwitzError> {
    let d = alpha.size();
    if d != beta.size() {
        return Err(HurwitzError::SizeMismatch {
            alpha: d,
            beta: beta.size(),
        });
    }
    let Some(tau) = Partition::transposition_class(d) else {
        // No transpositions in S_0 or S_1.
        let v = if r == 0 && alpha == beta { 1 } else { 0 };
        return Ok(BigRational::from_integer(v.into()));
    };
    let r_us = r as usize;
    let mut sum = BigRational::zero();
    for lambda in Partition::all(d) {
        let ca = mn_character(&lambda, alpha).expect("sizes agree");
        if ca.is_zero() {
            continue;
        }
        let cb = mn_character(&lambda, beta).expect("sizes agree");
        if cb.is_zero() {
            continue;
        }
        let ct = mn_character(&lambda, &tau).expect("sizes agree");
        let dim = dimension(&lambda);
        sum += BigRational::new(
            ca * cb * num_traits::pow(ct, r_us),
            num_traits::pow(dim, r_us),
        );
    }
    let prefactor = BigRational::new(
        alpha.class_size() * beta.class_size() * num_traits::pow(binomial(d as u64, 2), r_us),
        factorial(d),
    );
    let count = prefactor * sum;
    debug_assert!(count.is_integer(), "factorization count must be integral");
    Ok(count)
}

/// Labeled count of possibly disconnected covers,
/// `prod m_k(alpha)! prod m_k(beta)! / d! * N(alpha, beta, r)`.
pub fn disconnected_labeled(x: &[i64], r: u32) -> Result<ExactRational, HurwitzError> {
    let p = RamificationProfile::new(x.to_vec())?;
    let n = frobenius_disconnected(&p.alpha(), &p.beta(), r)?;
    Ok(n * BigRational::new(p.relabeling_factor(), factorial(p.degree())))
}

pub fn frobenius_connected(
    profile: &RamificationProfile,
    g: u32,
) -> Result<HurwitzResult, HurwitzError> {
    frobenius_connected_with(profile, g, Normalization::Labeled)
}

/// Connected count by inclusion–exclusion over set partitions of the labels.
///
/// The labeled disconnected number splits as
/// `sum_pi sum_{r_B} r!/prod r_B! prod_B H_conn(x|_B, r_B)` over set
/// partitions `pi` of `{1..n}` into balanced blocks and distributions of the
/// branch points with `r_B >= n_B - 2`, `r_B = n_B (mod 2)`; the one-block term
/// is the connected number itself.
pub fn frobenius_connected_with(
    profile: &RamificationProfile,
    g: u32,
    normalization: Normalization,
) -> Result<HurwitzResult, HurwitzError> {
    let start = Instant::now();
    let r = simple_branch_count(g, profile.n())?;
    let mut value = connected_labeled(profile.entries(), r)?;
    if normalization == Normalization::Unlabeled {
        value /= BigRational::from_integer(profile.relabeling_factor());
    }
    Ok(HurwitzResult {
        value,
        g,
        r,
        method: Method::Frobenius,
        stats: EnumerationStats {
            elapsed: start.elapsed(),
            ..EnumerationStats::default()
        },
    })
}

/// Labeled `H_g(x)` via the character formula.
pub fn hurwitz_number(x: &[i64], g: u32) -> Result<ExactRational, HurwitzError> {
    let p = RamificationProfile::new(x.to_vec())?;
    Ok(frobenius_connected(&p, g)?.value)
}

type ConnKey = (Vec<i64>, Vec<i64>, u32);

fn conn_memo() -> &'static Mutex<HashMap<ConnKey, BigRational>> {
    static MEMO: OnceLock<Mutex<HashMap<ConnKey, BigRational>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

fn admissible(n: usize, r: u32) -> bool {
    let r = r as i64;
    let floor = n as i64 - 2;
    r >= floor && (r - floor) % 2 == 0
}

fn connected_labeled(x: &[i64], r: u32) -> Result<BigRational, HurwitzError> {
    let n = x.len();
    if !admissible(n, r) {
        return Ok(BigRational::zero());
    }
    let p = RamificationProfile::new(x.to_vec())?;
    let (pos, neg) = p.sorted_parts();
    let key = (pos, neg, r);
    if let Some(v) = conn_memo().lock().expect("memo poisoned").get(&key) {
        return Ok(v.clone());
    }

    let mut value = disconnected_labeled(x, r)?;
    let r_fact = factorial(r);
    for blocks in set_partitions(n) {
        if blocks.len() < 2 {
            continue;
        }
        let subs: Vec<Vec<i64>> = blocks
            .iter()
            .map(|b| b.iter().map(|&i| x[i]).collect())
            .collect();
        if !subs.iter().all(|s| balanced(s)) {
            continue;
        }
        let mut shares = vec![0u32; subs.len()];
        let mut acc = BigRational::zero();
        distribute(&subs, r, 0, &mut shares, &mut |shares| {
            let mut term = BigRational::from_integer(r_fact.clone());
            for (s, &rb) in subs.iter().zip(shares.iter()) {
                let h = connected_labeled(s, rb)?;
                if h.is_zero() {
                    return Ok(());
                }
                term = term * h / BigRational::from_integer(factorial(rb));
            }
            acc += term;
            Ok(())
        })?;
        value -= acc;
    }

    conn_memo()
        .lock()
        .expect("memo poisoned")
        .insert(key, value.clone());
    Ok(value)
}

fn balanced(block: &[i64]) -> bool {
    block.iter().sum::<i64>() == 0 && block.iter().any(|&v| v > 0)
}

/// Every split of `remaining` branch points over `subs[idx..]` with each
/// share admissible for its block.
fn distribute<F>(
    subs: &[Vec<i64>],
    remaining: u32,
    idx: usize,
    shares: &mut Vec<u32>,
    f: &mut F,
) -> Result<(), HurwitzError>
where
    F: FnMut(&[u32]) -> Result<(), HurwitzError>,
{
    if idx == subs.len() {
        return if remaining == 0 { f(shares) } else { Ok(()) };
    }
    let floor = subs[idx].len() as u32 - 2;
    let mut rb = floor;
    while rb <= remaining {
        shares[idx] = rb;
        distribute(subs, remaining - rb, idx + 1, shares, f)?;
        rb += 2;
    }
    Ok(())
}

/// Set partitions of `{0..n-1}` via restricted growth strings.
fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(i: usize, n: usize, rgs: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            let mut blocks = vec![Vec::new(); max];
            for (el, &b) in rgs.iter().enumerate() {
                blocks[b].push(el);
            }
            out.push(blocks);
            return;
        }
        for b in 0..=max {
            rgs.push(b);
            rec(i + 1, n, rgs, max.max(b + 1), out);
            rgs.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    rec(0, n, &mut Vec::new(), 0, &mut out);
    out
}

impl HurwitzResult {
    /// `value * prod_k k^{m_k(alpha)}` for the given profile; integral for
    /// labeled values.
    pub fn scaled_by_alpha_parts(&self, profile: &RamificationProfile) -> BigRational {
        &self.value * BigRational::from_integer(profile.alpha().part_product())
    }
}
