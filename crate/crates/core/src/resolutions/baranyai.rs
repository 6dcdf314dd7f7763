//! Baranyai partitions of the complete `k`-uniform design.
//!
//! Points are introduced one at a time. Before point `m` is placed, class `i`
//! holds `c_i` partial blocks (subsets of `0..m`, with multiplicity) and every
//! subset `S` occurs `C(v − m, k − |S|)` times across all classes. Extending
//! `S` by `m` with weight `(k − |S|)/(v − m)` is a fractional solution of the
//! next step; an integral max-flow rounds it while keeping every class and
//! every subset total within floor/ceiling of the fractional value.

use std::collections::BTreeMap;

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::flow::BoundedFlow;
use super::{verify_resolution, Resolution};
use crate::designs::{binomial_u64, complete_design_with_cap, subset_rank, IncidenceStructure, DEFAULT_BLOCK_CAP};
use crate::error::{arg, Error, Result};

/// A partition of the complete design into classes of prescribed sizes.
#[derive(Debug, Clone)]
pub struct BaranyaiPartition {
    pub design: IncidenceStructure,
    pub classes: Vec<Vec<usize>>,
}

impl BaranyaiPartition {
    /// Verifies the classes as a resolution. Succeeds whenever every `c_i·k`
    /// is a multiple of `v`.
    pub fn into_resolution(self) -> Result<(IncidenceStructure, Resolution)> {
        match verify_resolution(&self.design, &self.classes)? {
            Ok(r) => Ok((self.design, r)),
            Err(v) => arg(format!("class sizes do not admit a resolution: {v}")),
        }
    }
}

/// The minimum-α resolution: `C(v, k)·gcd(v, k)/v` classes of `v/gcd(v, k)`
/// blocks, each with `α = k/gcd(v, k)`.
pub fn baranyai_resolution(v: usize, k: usize, seed: u64) -> Result<(IncidenceStructure, Resolution)> {
    baranyai_resolution_with_cap(v, k, seed, DEFAULT_BLOCK_CAP)
}

pub fn baranyai_resolution_with_cap(
    v: usize,
    k: usize,
    seed: u64,
    max_blocks: u64,
) -> Result<(IncidenceStructure, Resolution)> {
    if k == 0 || k >= v {
        return arg(format!("need 0 < k < v, got v = {v}, k = {k}"));
    }
    let size = v / v.gcd(&k);
    let total = binomial_u64(v as u64, k as u64)
        .filter(|&b| b <= max_blocks)
        .ok_or_else(|| Error::Resource(format!("C({v}, {k}) exceeds the block cap of {max_blocks}")))?
        as usize;
    let sizes = vec![size; total / size];
    baranyai_partition_with_cap(v, k, &sizes, seed, max_blocks)?.into_resolution()
}

/// Partitions the `(v, k)`-complete design into classes of the given sizes so
/// that each point occurs `⌊c_i·k/v⌋` or `⌈c_i·k/v⌉` times in class `i`.
///
/// Deterministic in `seed`; seed 0 processes classes in the given order, other
/// seeds shuffle the order in which classes enter the flow network.
pub fn baranyai_partition(v: usize, k: usize, class_sizes: &[usize], seed: u64) -> Result<BaranyaiPartition> {
    baranyai_partition_with_cap(v, k, class_sizes, seed, DEFAULT_BLOCK_CAP)
}

pub fn baranyai_partition_with_cap(
    v: usize,
    k: usize,
    class_sizes: &[usize],
    seed: u64,
    max_blocks: u64,
) -> Result<BaranyaiPartition> {
    let design = complete_design_with_cap(v, k, max_blocks)?;
    if class_sizes.contains(&0) {
        return arg("class sizes must be positive");
    }
    if class_sizes.iter().sum::<usize>() != design.b() {
        return arg(format!(
            "class sizes sum to {}, expected C({v}, {k}) = {}",
            class_sizes.iter().sum::<usize>(),
            design.b()
        ));
    }

    let mut order: Vec<usize> = (0..class_sizes.len()).collect();
    if seed != 0 {
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }

    // class -> partial block -> multiplicity
    let mut state: Vec<BTreeMap<Vec<usize>, usize>> =
        class_sizes.iter().map(|&c| BTreeMap::from([(Vec::new(), c)])).collect();

    for m in 0..v {
        extend_by_point(&mut state, &order, class_sizes, v, k, m)?;
    }

    let mut classes = Vec::with_capacity(state.len());
    for partials in state {
        let mut class = Vec::new();
        for (set, mult) in partials {
            if set.len() != k {
                return Err(Error::Internal(format!("partial block {set:?} left incomplete")));
            }
            let j = subset_rank(v, &set) as usize;
            class.extend(std::iter::repeat_n(j, mult));
        }
        class.sort_unstable();
        classes.push(class);
    }

    check_near_uniform(&design, &classes, v, k)?;
    Ok(BaranyaiPartition { design, classes })
}

fn extend_by_point(
    state: &mut [BTreeMap<Vec<usize>, usize>],
    order: &[usize],
    class_sizes: &[usize],
    v: usize,
    k: usize,
    m: usize,
) -> Result<()> {
    let remaining = (v - m) as i64;
    let k = k as i64;

    // column nodes: every distinct partial block still short of k points
    let mut types: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for partials in state.iter() {
        for set in partials.keys() {
            if (set.len() as i64) < k {
                let next = types.len();
                types.entry(set.clone()).or_insert(next);
            }
        }
    }
    let classes = state.len();
    let source = 0;
    let sink = 1;
    let class_node = |position: usize| 2 + position;
    let type_node = |t: usize| 2 + classes + t;
    let mut net = BoundedFlow::new(2 + classes + types.len());

    let mut cells = Vec::new();
    for (position, &c) in order.iter().enumerate() {
        let partials = &state[c];
        // row total (c_i·k − Σ|S|)/(v − m)
        let used: i64 = partials.iter().map(|(s, &mult)| s.len() as i64 * mult as i64).sum();
        let row = class_sizes[c] as i64 * k - used;
        net.add_arc(
            source,
            class_node(position),
            Integer::div_floor(&row, &remaining),
            ceil_div(row, remaining),
        );
        for (set, &mult) in partials {
            let deficit = k - set.len() as i64;
            if deficit == 0 {
                continue;
            }
            let cell = mult as i64 * deficit;
            let handle = net.add_arc(
                class_node(position),
                type_node(types[set]),
                Integer::div_floor(&cell, &remaining),
                ceil_div(cell, remaining),
            );
            cells.push((c, set.clone(), handle));
        }
    }
    for (set, &t) in &types {
        let column = binomial_u64((v - m - 1) as u64, (k - 1 - set.len() as i64) as u64)
            .ok_or_else(|| Error::Internal("column total overflow".into()))? as i64;
        net.add_arc(type_node(t), sink, column, column);
    }
    if !net.solve(source, sink) {
        return Err(Error::Internal(format!(
            "rounding flow infeasible when placing point {m}"
        )));
    }

    for (c, set, handle) in cells {
        let extended = net.flow(handle) as usize;
        if extended == 0 {
            continue;
        }
        let partials = &mut state[c];
        let mult = partials.get_mut(&set).expect("cell refers to a live partial block");
        *mult -= extended;
        if *mult == 0 {
            partials.remove(&set);
        }
        let mut grown = set;
        grown.push(m);
        *partials.entry(grown).or_insert(0) += extended;
    }
    Ok(())
}

fn ceil_div(a: i64, b: i64) -> i64 {
    Integer::div_ceil(&a, &b)
}

/// Every point occurs `⌊c·k/v⌋` or `⌈c·k/v⌉` times in each class, compared in
/// exact integers.
fn check_near_uniform(design: &IncidenceStructure, classes: &[Vec<usize>], v: usize, k: usize) -> Result<()> {
    let mut counts = vec![0usize; v];
    for (i, class) in classes.iter().enumerate() {
        counts.iter_mut().for_each(|n| *n = 0);
        for &j in class {
            for &x in design.block(j) {
                counts[x] += 1;
            }
        }
        let target = class.len() * k;
        for (x, &n) in counts.iter().enumerate() {
            // ⌊t/v⌋ ≤ n ≤ ⌈t/v⌉  ⇔  n·v ≤ t + v − 1 and n·v + v − 1 ≥ t
            if n * v > target + v - 1 || n * v + v - 1 < target {
                return Err(Error::Internal(format!(
                    "point {x} occurs {n} times in class {i} of size {}",
                    class.len()
                )));
            }
        }
    }
    Ok(())
}
