use num_bigint::BigUint;

use super::{binomial, binomial_u64, IncidenceStructure, DEFAULT_BLOCK_CAP};
use crate::error::{arg, Error, Result};

/// The `(v, k)`-complete design: every `k`-subset of `0..v` as a block, in
/// lexicographic subset order.
pub fn complete_design(v: usize, k: usize) -> Result<IncidenceStructure> {
    complete_design_with_cap(v, k, DEFAULT_BLOCK_CAP)
}

pub fn complete_design_with_cap(v: usize, k: usize, max_blocks: u64) -> Result<IncidenceStructure> {
    if k == 0 || k >= v {
        return arg(format!("complete design needs 0 < k < v, got v = {v}, k = {k}"));
    }
    let count = binomial(v as u64, k as u64);
    if count > BigUint::from(max_blocks) {
        return Err(Error::Resource(format!(
            "C({v}, {k}) = {count} blocks exceeds the cap of {max_blocks}"
        )));
    }
    let b = binomial_u64(v as u64, k as u64).expect("bounded by the cap") as usize;
    let mut blocks = Vec::with_capacity(b);
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        blocks.push(current.clone());
        // advance to the next k-subset in lexicographic order
        let Some(i) = (0..k).rev().find(|&i| current[i] < v - k + i) else {
            break;
        };
        current[i] += 1;
        for j in i + 1..k {
            current[j] = current[j - 1] + 1;
        }
    }
    debug_assert_eq!(blocks.len(), b);
    Ok(IncidenceStructure::from_parts(v, blocks, None))
}

/// Index of a sorted `k`-subset of `0..v` in the lexicographic order used by
/// [`complete_design`].
pub fn subset_rank(v: usize, subset: &[usize]) -> u64 {
    let k = subset.len();
    let mut rank = 0u64;
    let mut next = 0usize;
    for (i, &s) in subset.iter().enumerate() {
        for skipped in next..s {
            rank += binomial_u64((v - 1 - skipped) as u64, (k - 1 - i) as u64).expect("rank fits in u64");
        }
        next = s + 1;
    }
    rank
}
