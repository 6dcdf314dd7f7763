//! Communication cost in bits (log base 2, fractional).

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::number_theory::{divisors, prime_power_base};
use super::put::k_star;
use crate::designs::binomial;
use crate::error::{arg, Result};
use crate::mechanisms::{BlockDesignMechanism, DecomposedMechanism};
use crate::resolutions::cyclic_shift_resolution;
use crate::scalar::Scalar;

/// `Σ_u P_U(u)·log₂|Y_u|`.
pub fn comm_cost<F: Scalar>(dec: &DecomposedMechanism<F>) -> f64 {
    dec.pu()
        .iter()
        .zip(dec.resolution().classes())
        .map(|(p, class)| ratio_f64(p.numer(), p.denom()) * (class.len() as f64).log2())
        .sum()
}

/// Cost of sending a block index with no shared randomness: `log₂ b`.
pub fn mechanism_cost<F: Scalar>(mech: &BlockDesignMechanism<F>) -> f64 {
    (mech.params().b as f64).log2()
}

/// `H(P_U)` in bits.
pub fn shared_entropy_bits<F: Scalar>(dec: &DecomposedMechanism<F>) -> f64 {
    dec.pu()
        .iter()
        .map(|p| {
            let q = ratio_f64(p.numer(), p.denom());
            -q * q.log2()
        })
        .sum()
}

/// Cost of the decomposition along a uniform α-resolution of a design with
/// point count `v` and block size `k`: `log₂(v·α/k)`.
pub fn alpha_resolution_cost(v: usize, k: usize, alpha: usize) -> Result<f64> {
    if k == 0 || alpha == 0 || (v * alpha) % k != 0 {
        return arg(format!("need k | v·α, got v = {v}, k = {k}, α = {alpha}"));
    }
    Ok(((v * alpha / k) as f64).log2())
}

/// `log₂(v / gcd(v, k*))`, the least cost of any resolution-based
/// decomposition of a PUT-optimal block design scheme.
pub fn baranyai_min_cost<F: Scalar>(v: usize, epsilon: F) -> Result<f64> {
    let k = k_star(v, epsilon)?;
    Ok(((v / v.gcd(&k)) as f64).log2())
}

/// Cost of the cyclic shift resolution of the `(v, k)`-complete design:
/// `log₂ v − C(v,k)⁻¹ Σ_{e | gcd(v,k)} C(v/e, k/e)·Λ₂(e)` with `Λ₂` the
/// Mangoldt function in bits. Exact binomials; no enumeration.
pub fn cyclic_cost_closed_form(v: usize, k: usize) -> Result<f64> {
    if k == 0 || k >= v {
        return arg(format!("need 0 < k < v, got v = {v}, k = {k}"));
    }
    let total = binomial(v as u64, k as u64);
    let g = v.gcd(&k) as u64;
    let mut correction = 0.0;
    for e in divisors(g) {
        if let Some(p) = prime_power_base(e) {
            let fixed = stabilizer_count(v, k, e as usize)?;
            correction += ratio_f64(&fixed, &total) * (p as f64).log2();
        }
    }
    Ok((v as f64).log2() - correction)
}

/// The same cost by building the orbits and summing `(|C|/b)·log₂|C|`.
pub fn cyclic_cost_enumerated(v: usize, k: usize) -> Result<f64> {
    let (design, res) = cyclic_shift_resolution(v, k)?;
    let b = design.b() as f64;
    Ok(res
        .classes()
        .iter()
        .map(|c| c.len() as f64 / b * (c.len() as f64).log2())
        .sum())
}

/// Number of weight-`k` binary words of length `v` fixed by the shift by
/// `v/d`: `C(v/d, k/d)` if `d | k`, else 0.
pub fn stabilizer_count(v: usize, k: usize, d: usize) -> Result<BigUint> {
    if d == 0 || v % d != 0 {
        return arg(format!("need d | v, got v = {v}, d = {d}"));
    }
    if k % d != 0 {
        return Ok(BigUint::zero());
    }
    Ok(binomial((v / d) as u64, (k / d) as u64))
}

/// `num / den` as `f64` for arbitrarily large integers.
pub(crate) fn ratio_f64<T: Clone + Into<BigUint>>(num: &T, den: &T) -> f64 {
    let (num, den): (BigUint, BigUint) = (num.clone().into(), den.clone().into());
    let shift = 128u32;
    let scaled = (num << shift) / den;
    scaled.to_f64().unwrap_or(f64::INFINITY) / 2f64.powi(shift as i32)
}
