use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Partition, SymGroupError};

type Key = (Vec<u32>, Vec<u32>);

fn memo() -> &'static RwLock<HashMap<Key, BigInt>> {
    static MEMO: OnceLock<RwLock<HashMap<Key, BigInt>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Irreducible character `chi_shape(class)` of the symmetric group.
///
/// Murnaghan–Nakayama: strips of length equal to the largest remaining part
/// of `class` are removed from `shape`, each contributing `(-1)^height`.
/// Results are memoized process-wide; the table is safe to share between
/// threads.
pub fn mn_character(shape: &Partition, class: &Partition) -> Result<BigInt, SymGroupError> {
    if shape.size() != class.size() {
        return Err(SymGroupError::SizeMismatch {
            left: shape.size(),
            right: class.size(),
        });
    }
    Ok(character_rec(shape.parts(), class.parts()))
}

/// Dimension of the irreducible representation, `chi_shape(1^d)`.
pub fn dimension(shape: &Partition) -> BigInt {
    let ones = vec![1; shape.size() as usize];
    character_rec(shape.parts(), &ones)
}

fn character_rec(shape: &[u32], class: &[u32]) -> BigInt {
    let Some((&k, rest)) = class.split_first() else {
        return if shape.is_empty() {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    };
    // A single remaining row or column is read off directly.
    if shape.len() == 1 {
        return BigInt::one();
    }
    if shape[0] == 1 {
        let odd = class.iter().filter(|&&p| p % 2 == 0).count() % 2 == 1;
        return if odd { -BigInt::one() } else { BigInt::one() };
    }

    let key = (shape.to_vec(), class.to_vec());
    if let Some(v) = memo().read().expect("character memo poisoned").get(&key) {
        return v.clone();
    }

    // Beta-set: beads at shape[i] + (len - 1 - i), strictly decreasing.
    let len = shape.len();
    let beads: Vec<u32> = shape
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (len - 1 - i) as u32)
        .collect();
    let mut total = BigInt::zero();
    for (idx, &b) in beads.iter().enumerate() {
        if b < k {
            continue;
        }
        let target = b - k;
        if beads.contains(&target) {
            continue;
        }
        let height = beads.iter().filter(|&&c| c > target && c < b).count();
        let mut moved = beads.clone();
        moved[idx] = target;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let smaller: Vec<u32> = moved
            .iter()
            .enumerate()
            .map(|(i, &c)| c - (len - 1 - i) as u32)
            .filter(|&p| p > 0)
            .collect();
        let v = character_rec(&smaller, rest);
        if height % 2 == 0 {
            total += v;
        } else {
            total -= v;
        }
    }

    memo()
        .write()
        .expect("character memo poisoned")
        .insert(key, total.clone());
    total
}
