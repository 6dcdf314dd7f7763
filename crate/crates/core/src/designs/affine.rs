use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::field::{prime_power, FiniteField};
use super::{DesignParams, IncidenceStructure, DEFAULT_POINT_CAP};
use crate::error::{arg, Error, Result};

/// Gaussian binomial `[d choose m]_q`, the number of `m`-dimensional
/// subspaces of `GF(q)^d`.
pub fn gaussian_binomial(d: u64, m: u64, q: u64) -> Result<BigUint> {
    if m > d {
        return arg(format!("gaussian binomial needs m <= d, got d = {d}, m = {m}"));
    }
    if q < 2 {
        return arg(format!("gaussian binomial needs q >= 2, got {q}"));
    }
    let qb = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..m {
        num *= qb.pow((d - i) as u32) - 1u32;
        den *= qb.pow((m - i) as u32) - 1u32;
    }
    debug_assert!((&num % &den) == BigUint::from(0u32));
    Ok(num / den)
}

pub fn is_prime_power(q: u64) -> bool {
    prime_power(q).is_some()
}

/// Parameters of an affine geometry `AG_m(d, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffineGeometry {
    pub d: u32,
    pub m: u32,
    pub q: u32,
}

impl AffineGeometry {
    /// `(q^d, q^{d−m}·[d m]_q, [d m]_q, q^m, [d−1 m−1]_q)` without building
    /// the design.
    pub fn params(&self) -> Result<DesignParams> {
        let (d, m, q) = (self.d as u64, self.m as u64, self.q as u64);
        if !(d > m && m >= 1) || !is_prime_power(q) {
            return arg(format!("no affine geometry AG_{m}({d}, {q})"));
        }
        let small = |x: BigUint| {
            x.to_usize()
                .ok_or_else(|| Error::Resource("parameters overflow usize".into()))
        };
        let r = small(gaussian_binomial(d, m, q)?)?;
        let lambda = small(gaussian_binomial(d - 1, m - 1, q)?)?;
        let pow = |e: u64| {
            q.checked_pow(e as u32)
                .and_then(|x| usize::try_from(x).ok())
                .ok_or_else(|| Error::Resource("parameters overflow usize".into()))
        };
        let b = pow(d - m)?
            .checked_mul(r)
            .ok_or_else(|| Error::Resource("parameters overflow usize".into()))?;
        Ok(DesignParams {
            v: pow(d)?,
            b,
            r,
            k: pow(m)?,
            lambda,
        })
    }

    pub fn design(&self) -> Result<IncidenceStructure> {
        affine_geometry_design(self.d, self.m, self.q)
    }
}

/// All `m`-dimensional affine subspaces of `GF(q)^d`.
///
/// Points are the vectors of `GF(q)^d` in lexicographic order of their
/// coordinate vectors. Linear subspaces are enumerated by reduced row echelon
/// basis (pivot columns first, then free entries, both lexicographically);
/// each contributes its cosets, ordered by smallest point, as one group. Every
/// group is a parallel class.
pub fn affine_geometry_design(d: u32, m: u32, q: u32) -> Result<IncidenceStructure> {
    affine_geometry_design_with_cap(d, m, q, DEFAULT_POINT_CAP)
}

pub fn affine_geometry_design_with_cap(d: u32, m: u32, q: u32, max_points: u64) -> Result<IncidenceStructure> {
    if !(d > m && m >= 1) {
        return arg(format!("affine geometry needs d > m >= 1, got d = {d}, m = {m}"));
    }
    if !is_prime_power(q as u64) {
        return arg(format!("{q} is not a prime power"));
    }
    let v = match (q as u64).checked_pow(d) {
        Some(v) if v <= max_points => v as usize,
        _ => {
            return Err(Error::Resource(format!(
                "{q}^{d} points exceeds the cap of {max_points}"
            )))
        }
    };
    let field = FiniteField::with_order(q)?;
    let (d, m) = (d as usize, m as usize);

    let coords: Vec<Vec<u32>> = (0..v).map(|x| to_coords(x, d, q)).collect();
    let index = |c: &[u32]| c.iter().fold(0usize, |acc, &a| acc * q as usize + a as usize);
    let add = |a: usize, b: usize| -> usize {
        let sum: Vec<u32> = coords[a]
            .iter()
            .zip(&coords[b])
            .map(|(&x, &y)| field.add(x, y))
            .collect();
        index(&sum)
    };

    let mut blocks = Vec::new();
    let mut groups = Vec::new();
    for basis in rref_bases(d, m, q) {
        // span of the basis rows
        let mut subspace = Vec::with_capacity((q as usize).pow(m as u32));
        for combo in 0..(q as usize).pow(m as u32) {
            let scalars = to_coords(combo, m, q);
            let mut vec = vec![0u32; d];
            for (row, &c) in basis.iter().zip(&scalars) {
                for (slot, &entry) in vec.iter_mut().zip(row) {
                    *slot = field.add(*slot, field.mul(c, entry));
                }
            }
            subspace.push(index(&vec));
        }
        let mut assigned = vec![false; v];
        let mut group = Vec::new();
        for x in 0..v {
            if assigned[x] {
                continue;
            }
            let mut coset: Vec<usize> = subspace.iter().map(|&s| add(x, s)).collect();
            coset.sort_unstable();
            for &y in &coset {
                assigned[y] = true;
            }
            group.push(blocks.len());
            blocks.push(coset);
        }
        groups.push(group);
    }
    Ok(IncidenceStructure::from_parts(v, blocks, Some(groups)))
}

fn to_coords(mut x: usize, len: usize, q: u32) -> Vec<u32> {
    let mut out = vec![0u32; len];
    for slot in out.iter_mut().rev() {
        *slot = (x % q as usize) as u32;
        x /= q as usize;
    }
    out
}

/// Every `m × d` reduced row echelon matrix of rank `m` over GF(q).
fn rref_bases(d: usize, m: usize, q: u32) -> Vec<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    let mut pivots: Vec<usize> = (0..m).collect();
    loop {
        // free slots: (row, col) with col > pivot[row] and col not a pivot
        let free: Vec<(usize, usize)> = (0..m)
            .flat_map(|i| {
                let piv = &pivots;
                (piv[i] + 1..d).filter(move |c| !piv.contains(c)).map(move |c| (i, c))
            })
            .collect();
        let total = (q as usize).pow(free.len() as u32);
        for assignment in 0..total {
            let values = to_coords(assignment, free.len(), q);
            let mut rows = vec![vec![0u32; d]; m];
            for (i, &p) in pivots.iter().enumerate() {
                rows[i][p] = 1;
            }
            for (&(i, c), &val) in free.iter().zip(&values) {
                rows[i][c] = val;
            }
            out.push(rows);
        }
        let Some(i) = (0..m).rev().find(|&i| pivots[i] < d - m + i) else {
            break;
        };
        pivots[i] += 1;
        for j in i + 1..m {
            pivots[j] = pivots[j - 1] + 1;
        }
    }
    out
}
