use num_integer::Integer;

use crate::error::{arg, Result};
use crate::scalar::Scalar;

/// Threshold `E(k₁, k₂; v) = ½ ln((v − k₁)(v − k₂)/(k₁k₂))` in nats.
///
/// `E(0, ·; v)` is `+∞`; a zero numerator gives `−∞`.
pub fn put_boundary<F: Scalar>(k1: usize, k2: usize, v: usize) -> F {
    assert!(k1 < k2 && k2 <= v, "E(k1, k2; v) needs k1 < k2 <= v");
    if k1 == 0 {
        return F::infinity();
    }
    let num = F::of_usize((v - k1) * (v - k2));
    let den = F::of_usize(k1 * k2);
    (num / den).ln() / F::of(2.0)
}

/// Every uniformity `k ∈ 1..v` with `E(k, k+1; v) ≤ ε ≤ E(k−1, k; v)`.
pub fn k_opt_set<F: Scalar>(v: usize, epsilon: F) -> Result<Vec<usize>> {
    check(v, epsilon)?;
    Ok((1..v)
        .filter(|&k| put_boundary::<F>(k, k + 1, v) <= epsilon && epsilon <= put_boundary::<F>(k - 1, k, v))
        .collect())
}

/// The member of [`k_opt_set`] minimizing `v / gcd(v, k)`; ties go to the
/// smaller `k`.
pub fn k_star<F: Scalar>(v: usize, epsilon: F) -> Result<usize> {
    let set = k_opt_set(v, epsilon)?;
    set.into_iter()
        .min_by_key(|&k| (v / v.gcd(&k), k))
        .ok_or_else(|| crate::Error::Internal(format!("empty optimal set for v = {v}, ε = {epsilon}")))
}

/// Optimal uniformities for `(v, ε)` and the resulting minimum cost.
#[derive(Debug, Clone, PartialEq)]
pub struct PutBoundary<F> {
    pub v: usize,
    pub epsilon: F,
    pub k_opt: Vec<usize>,
    pub k_star: usize,
    /// `log₂(v / gcd(v, k*))`.
    pub min_cost_bits: f64,
}

impl<F: Scalar> PutBoundary<F> {
    pub fn new(v: usize, epsilon: F) -> Result<Self> {
        let k_opt = k_opt_set(v, epsilon)?;
        let k_star = k_star(v, epsilon)?;
        Ok(Self {
            v,
            epsilon,
            k_opt,
            k_star,
            min_cost_bits: ((v / v.gcd(&k_star)) as f64).log2(),
        })
    }
}

fn check<F: Scalar>(v: usize, epsilon: F) -> Result<()> {
    if v < 2 {
        return arg(format!("alphabet size must be at least 2, got {v}"));
    }
    if !(epsilon > F::zero()) {
        return arg(format!("epsilon must be positive, got {epsilon}"));
    }
    Ok(())
}
