use super::IncidenceStructure;
use crate::error::{arg, Result};

/// `λ` copies of the circle-method 1-factorization of `K_v`.
///
/// Blocks are the `λ·v(v−1)/2` matches; groups are the `λ(v−1)` rounds, each
/// a set of `v/2` disjoint pairs covering every point.
pub fn round_robin_design(v: usize, lambda: usize) -> Result<IncidenceStructure> {
    if v % 2 == 1 || v < 4 {
        return arg(format!("round robin needs an even v >= 4, got {v}"));
    }
    if lambda == 0 {
        return arg("round robin needs lambda >= 1");
    }
    let spokes = v - 1;
    let mut rounds = Vec::with_capacity(spokes);
    for round in 0..spokes {
        let mut pairs = vec![sorted(round, spokes)];
        for i in 1..v / 2 {
            pairs.push(sorted((round + i) % spokes, (round + spokes - i) % spokes));
        }
        pairs.sort_unstable();
        rounds.push(pairs);
    }
    let mut blocks = Vec::with_capacity(lambda * v * spokes / 2);
    let mut groups = Vec::with_capacity(lambda * spokes);
    for _ in 0..lambda {
        for pairs in &rounds {
            groups.push((blocks.len()..blocks.len() + pairs.len()).collect());
            blocks.extend(pairs.iter().map(|&(a, b)| vec![a, b]));
        }
    }
    Ok(IncidenceStructure::from_parts(v, blocks, Some(groups)))
}

fn sorted(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}
