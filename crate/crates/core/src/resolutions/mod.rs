//! Resolutions: partitions of the blocks of a design into classes in which
//! every point occurs equally often.

mod baranyai;
mod cyclic;
mod flow;

use std::fmt;

use crate::designs::{check_partition, verify_block_design, IncidenceStructure};
use crate::error::{arg, Result};

pub use baranyai::{
    baranyai_partition, baranyai_partition_with_cap, baranyai_resolution, baranyai_resolution_with_cap,
    BaranyaiPartition,
};
pub use cyclic::{cyclic_shift_resolution, cyclic_shift_resolution_with_cap};

/// A verified resolution. `alphas[i]` is the number of blocks of class `i`
/// through any fixed point.
///
/// Only obtainable through [`verify_resolution`] or the constructors in this
/// module, all of which postcheck their output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    classes: Vec<Vec<usize>>,
    alphas: Vec<usize>,
}

impl Resolution {
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn alphas(&self) -> &[usize] {
        &self.alphas
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Total number of blocks covered.
    pub fn block_count(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    /// `Some(α)` when every class has the same α.
    pub fn uniform_alpha(&self) -> Option<usize> {
        let first = *self.alphas.first()?;
        self.alphas.iter().all(|&a| a == first).then_some(first)
    }
}

/// A class in which two points occur a different number of times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionViolation {
    pub class: usize,
    pub points: (usize, usize),
    pub counts: (usize, usize),
}

impl fmt::Display for ResolutionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "class {} is not a resolution class: point {} occurs {} times, point {} occurs {} times",
            self.class, self.points.0, self.counts.0, self.points.1, self.counts.1
        )
    }
}

/// Checks that `partition` is a resolution of the design `s`.
///
/// The outer `Result` rejects malformed input (a non-design, or a partition
/// that does not partition the blocks); the inner one carries the verdict.
pub fn verify_resolution(
    s: &IncidenceStructure,
    partition: &[Vec<usize>],
) -> Result<std::result::Result<Resolution, ResolutionViolation>> {
    let params = match verify_block_design(s) {
        Ok(p) => p,
        Err(violation) => return arg(format!("not a block design: {violation}")),
    };
    check_partition(partition, s.b())?;
    let mut alphas = Vec::with_capacity(partition.len());
    let mut counts = vec![0usize; s.v()];
    for (c, class) in partition.iter().enumerate() {
        counts.iter_mut().for_each(|n| *n = 0);
        for &j in class {
            for &x in s.block(j) {
                counts[x] += 1;
            }
        }
        if let Some(y) = counts.iter().position(|&n| n != counts[0]) {
            return Ok(Err(ResolutionViolation {
                class: c,
                points: (0, y),
                counts: (counts[0], counts[y]),
            }));
        }
        alphas.push(counts[0]);
    }
    debug_assert_eq!(alphas.iter().sum::<usize>(), params.r);
    debug_assert!(partition
        .iter()
        .zip(&alphas)
        .all(|(class, &a)| params.k * class.len() == params.v * a));
    Ok(Ok(Resolution {
        classes: partition.to_vec(),
        alphas,
    }))
}

/// The resolution whose single class is every block; α equals `r`.
pub fn trivial_resolution(s: &IncidenceStructure) -> Result<Resolution> {
    let all = vec![(0..s.b()).collect::<Vec<_>>()];
    verify_resolution(s, &all)?.map_err(|v| crate::Error::Internal(v.to_string()))
}

/// The parallel classes recorded on an affine geometry (or the rounds of a
/// round robin tournament) as a 1-resolution.
pub fn parallel_class_resolution(s: &IncidenceStructure) -> Result<Resolution> {
    let Some(groups) = s.groups() else {
        return arg("design carries no parallel-class groups");
    };
    let resolution = match verify_resolution(s, groups)? {
        Ok(r) => r,
        Err(v) => return arg(format!("groups are not parallel classes: {v}")),
    };
    if resolution.uniform_alpha() != Some(1) {
        return arg("groups are resolution classes but not parallel classes");
    }
    Ok(resolution)
}

/// The 1-resolution `{j, j + 4t − 1}` of a Hadamard 3-design.
pub fn h3_resolution(s: &IncidenceStructure) -> Result<Resolution> {
    let v = s.v();
    if v % 4 != 0 || s.b() != 2 * (v - 1) {
        return arg(format!(
            "expected a Hadamard 3-design on 4t points with 8t - 2 blocks, got v = {v}, b = {}",
            s.b()
        ));
    }
    let n = v - 1;
    let classes: Vec<Vec<usize>> = (0..n).map(|j| vec![j, j + n]).collect();
    let resolution = match verify_resolution(s, &classes)? {
        Ok(r) => r,
        Err(v) => return arg(format!("column pairing is not a resolution: {v}")),
    };
    if resolution.uniform_alpha() != Some(1) {
        return arg("column pairs are not complementary");
    }
    Ok(resolution)
}
