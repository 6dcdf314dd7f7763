//! Incidence structures and block designs.
//!
//! Points and blocks are 0-based throughout the library API. The JSON
//! interchange format (see [`crate::json`]) shifts both to 1-based.

mod affine;
mod complete;
mod field;
mod hadamard;
mod round_robin;

use std::fmt;

use num_bigint::BigUint;

use crate::error::{arg, Result};

pub use affine::{
    affine_geometry_design, affine_geometry_design_with_cap, gaussian_binomial, is_prime_power, AffineGeometry,
};
pub use complete::{complete_design, complete_design_with_cap, subset_rank};
pub use field::FiniteField;
pub use hadamard::{hadamard3_design, hadamard_matrix, HadamardMatrix};
pub use round_robin::round_robin_design;

/// Default ceiling on the number of blocks a complete design may enumerate.
pub const DEFAULT_BLOCK_CAP: u64 = 10_000_000;
/// Default ceiling on the point count of an affine geometry.
pub const DEFAULT_POINT_CAP: u64 = 10_000;

/// A finite incidence structure on points `0..v`.
///
/// Each block is stored as a sorted list of distinct points. An optional
/// grouping of block indices records construction structure such as the
/// parallel classes of an affine geometry or the rounds of a tournament.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceStructure {
    v: usize,
    blocks: Vec<Vec<usize>>,
    groups: Option<Vec<Vec<usize>>>,
}

impl IncidenceStructure {
    /// Builds a structure from explicit blocks. Blocks are sorted; duplicate
    /// points inside a block, empty blocks and out-of-range points are rejected.
    pub fn new(v: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        if v == 0 {
            return arg("an incidence structure needs at least one point");
        }
        let mut normalized = Vec::with_capacity(blocks.len());
        for (j, mut block) in blocks.into_iter().enumerate() {
            if block.is_empty() {
                return arg(format!("block {j} is empty"));
            }
            block.sort_unstable();
            if block.windows(2).any(|w| w[0] == w[1]) {
                return arg(format!("block {j} repeats a point"));
            }
            if let Some(&x) = block.last() {
                if x >= v {
                    return arg(format!("block {j} contains point {x} outside 0..{v}"));
                }
            }
            normalized.push(block);
        }
        Ok(Self {
            v,
            blocks: normalized,
            groups: None,
        })
    }

    /// Builds a structure from a `v × b` 0/1 incidence matrix.
    pub fn from_incidence_matrix(rows: &[Vec<u8>]) -> Result<Self> {
        let v = rows.len();
        let b = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != b) {
            return arg("incidence matrix rows have different lengths");
        }
        let mut blocks = vec![Vec::new(); b];
        for (x, row) in rows.iter().enumerate() {
            for (j, &entry) in row.iter().enumerate() {
                match entry {
                    0 => {}
                    1 => blocks[j].push(x),
                    other => return arg(format!("incidence entry {other} is not 0/1")),
                }
            }
        }
        Self::new(v, blocks)
    }

    /// Attaches a grouping of block indices. The groups must partition `0..b`.
    pub fn with_groups(mut self, groups: Vec<Vec<usize>>) -> Result<Self> {
        check_partition(&groups, self.b())?;
        self.groups = Some(groups);
        Ok(self)
    }

    pub(crate) fn from_parts(v: usize, blocks: Vec<Vec<usize>>, groups: Option<Vec<Vec<usize>>>) -> Self {
        debug_assert!(blocks.iter().all(|blk| blk.windows(2).all(|w| w[0] < w[1])));
        Self { v, blocks, groups }
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, j: usize) -> &[usize] {
        &self.blocks[j]
    }

    pub fn groups(&self) -> Option<&[Vec<usize>]> {
        self.groups.as_deref()
    }

    /// Whether point `x` lies in block `j`.
    pub fn contains(&self, x: usize, j: usize) -> bool {
        self.blocks[j].binary_search(&x).is_ok()
    }

    /// `I_x` for every point: the ascending list of blocks containing it.
    pub fn point_blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.v];
        for (j, block) in self.blocks.iter().enumerate() {
            for &x in block {
                out[x].push(j);
            }
        }
        out
    }

    /// Dense `v × b` 0/1 view.
    pub fn incidence_matrix(&self) -> Vec<Vec<u8>> {
        let mut m = vec![vec![0u8; self.b()]; self.v];
        for (j, block) in self.blocks.iter().enumerate() {
            for &x in block {
                m[x][j] = 1;
            }
        }
        m
    }
}

/// Parameters `(v, b, r, k, λ)` of a block design.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DesignParams {
    pub v: usize,
    pub b: usize,
    pub r: usize,
    pub k: usize,
    pub lambda: usize,
}

impl DesignParams {
    /// `vr = bk` and `λ(v−1) = r(k−1)`.
    pub fn satisfies_counting_identities(&self) -> bool {
        self.v * self.r == self.b * self.k && self.lambda * (self.v - 1) == self.r * (self.k - 1)
    }
}

impl fmt::Display for DesignParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {}, {})", self.v, self.b, self.r, self.k, self.lambda)
    }
}

/// First property a structure fails when checked as a block design.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DesignViolation {
    /// Block sizes differ; `block` is the first one whose size differs from block 0.
    NotUniform {
        block: usize,
        expected: usize,
        found: usize,
    },
    /// Replication numbers differ; `point` is the first one that differs from point 0.
    NotRegular {
        point: usize,
        expected: usize,
        found: usize,
    },
    /// Pair `(x, y)` lies in a different number of blocks than pair `(0, 1)`.
    NotBalanced {
        pair: (usize, usize),
        expected: usize,
        found: usize,
    },
    /// Parameters are uniform but violate `v > k > 0` or `b > r > λ`.
    Degenerate { reason: String },
}

impl fmt::Display for DesignViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotUniform { block, expected, found } => {
                write!(f, "not uniform: block {block} has size {found}, expected {expected}")
            }
            Self::NotRegular { point, expected, found } => {
                write!(
                    f,
                    "not regular: point {point} lies in {found} blocks, expected {expected}"
                )
            }
            Self::NotBalanced { pair, expected, found } => write!(
                f,
                "not pairwise balanced: pair ({}, {}) lies in {found} blocks, expected {expected}",
                pair.0, pair.1
            ),
            Self::Degenerate { reason } => write!(f, "degenerate: {reason}"),
        }
    }
}

/// Exhaustively checks k-uniformity, r-regularity and λ-pairwise balance.
pub fn verify_block_design(s: &IncidenceStructure) -> std::result::Result<DesignParams, DesignViolation> {
    let v = s.v();
    let b = s.b();
    if b == 0 {
        return Err(DesignViolation::Degenerate {
            reason: "no blocks".into(),
        });
    }
    let k = s.block(0).len();
    if let Some((j, blk)) = s.blocks().iter().enumerate().find(|(_, blk)| blk.len() != k) {
        return Err(DesignViolation::NotUniform {
            block: j,
            expected: k,
            found: blk.len(),
        });
    }
    let incident = s.point_blocks();
    let r = incident[0].len();
    if let Some((x, list)) = incident.iter().enumerate().find(|(_, list)| list.len() != r) {
        return Err(DesignViolation::NotRegular {
            point: x,
            expected: r,
            found: list.len(),
        });
    }
    if v < 2 || k >= v {
        return Err(DesignViolation::Degenerate {
            reason: format!("need v > k, got v = {v}, k = {k}"),
        });
    }

    let mut together = vec![0usize; v];
    let mut lambda = None;
    for x in 0..v {
        together.iter_mut().for_each(|c| *c = 0);
        for &j in &incident[x] {
            for &y in s.block(j) {
                together[y] += 1;
            }
        }
        for y in x + 1..v {
            let expected = *lambda.get_or_insert(together[y]);
            if together[y] != expected {
                return Err(DesignViolation::NotBalanced {
                    pair: (x, y),
                    expected,
                    found: together[y],
                });
            }
        }
    }
    let lambda = lambda.unwrap_or(0);
    if !(b > r && r > lambda) {
        return Err(DesignViolation::Degenerate {
            reason: format!("need b > r > λ, got b = {b}, r = {r}, λ = {lambda}"),
        });
    }
    Ok(DesignParams { v, b, r, k, lambda })
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Binomial coefficient when it is known to fit in a `u64`.
pub(crate) fn binomial_u64(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n as u128 - i) / (i + 1);
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

pub(crate) fn check_partition(parts: &[Vec<usize>], b: usize) -> Result<()> {
    let mut seen = vec![false; b];
    for part in parts {
        if part.is_empty() {
            return arg("partition contains an empty class");
        }
        for &j in part {
            if j >= b {
                return arg(format!("block index {j} is outside 0..{b}"));
            }
            if std::mem::replace(&mut seen[j], true) {
                return arg(format!("block index {j} appears in more than one class"));
            }
        }
    }
    if let Some(j) = seen.iter().position(|s| !s) {
        return arg(format!("block index {j} is not covered"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cbd42() -> Vec<Vec<u8>> {
        vec![
            vec![1, 1, 1, 0, 0, 0],
            vec![1, 0, 0, 1, 1, 0],
            vec![0, 1, 0, 1, 0, 1],
            vec![0, 0, 1, 0, 1, 1],
        ]
    }

    #[test]
    fn verifies_the_four_two_complete_design_matrix() {
        let s = IncidenceStructure::from_incidence_matrix(&cbd42()).unwrap();
        let p = verify_block_design(&s).unwrap();
        assert_eq!(
            p,
            DesignParams {
                v: 4,
                b: 6,
                r: 3,
                k: 2,
                lambda: 1
            }
        );
        assert!(p.satisfies_counting_identities());
        assert_eq!(s.incidence_matrix(), cbd42());
    }

    #[test]
    fn flipped_bit_breaks_uniformity() {
        let mut m = cbd42();
        m[0][0] = 0;
        let s = IncidenceStructure::from_incidence_matrix(&m).unwrap();
        assert_eq!(
            verify_block_design(&s),
            Err(DesignViolation::NotUniform {
                block: 1,
                expected: 1,
                found: 2
            })
        );
        let mut m = cbd42();
        m[3][0] = 1;
        let s = IncidenceStructure::from_incidence_matrix(&m).unwrap();
        assert!(matches!(
            verify_block_design(&s),
            Err(DesignViolation::NotUniform { block: 1, .. })
        ));
    }

    #[test]
    fn irregular_and_unbalanced_witnesses() {
        // uniform but point 3 is missing from every block
        let s = IncidenceStructure::new(4, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(
            verify_block_design(&s),
            Err(DesignViolation::NotRegular {
                point: 3,
                expected: 2,
                found: 0
            })
        );
        // regular and uniform, but pair (0,1) twice and (0,2) never
        let s = IncidenceStructure::new(4, vec![vec![0, 1], vec![0, 1], vec![2, 3], vec![2, 3]]).unwrap();
        assert_eq!(
            verify_block_design(&s),
            Err(DesignViolation::NotBalanced {
                pair: (0, 2),
                expected: 2,
                found: 0
            })
        );
    }

    #[test]
    fn rejects_malformed_blocks() {
        assert!(IncidenceStructure::new(3, vec![vec![]]).is_err());
        assert!(IncidenceStructure::new(3, vec![vec![0, 3]]).is_err());
        assert!(IncidenceStructure::new(3, vec![vec![1, 1]]).is_err());
        assert!(IncidenceStructure::from_incidence_matrix(&[vec![1, 0], vec![1]]).is_err());
    }

    #[test]
    fn full_block_is_degenerate() {
        let s = IncidenceStructure::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert!(matches!(
            verify_block_design(&s),
            Err(DesignViolation::Degenerate { .. })
        ));
    }

    #[test]
    fn groups_must_partition() {
        let s = IncidenceStructure::new(2, vec![vec![0], vec![1]]).unwrap();
        assert!(s.clone().with_groups(vec![vec![0], vec![0]]).is_err());
        assert!(s.clone().with_groups(vec![vec![0]]).is_err());
        assert!(s.with_groups(vec![vec![1], vec![0]]).is_ok());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(binomial(3, 5), BigUint::from(0u32));
        assert_eq!(binomial(100, 50).to_string(), "100891344545564193334812497256");
        assert_eq!(binomial_u64(20, 10), Some(184_756));
        assert_eq!(binomial_u64(200, 100), None);
    }
}
