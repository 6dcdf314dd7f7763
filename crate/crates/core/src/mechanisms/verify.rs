use num_traits::ToPrimitive;

use super::{BlockDesignMechanism, DecomposedMechanism, SharedRandomnessChannel};
use crate::error::{arg, Result};
use crate::scalar::Scalar;

/// The output symbol and input pair attaining the largest likelihood ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LdpWitness {
    pub u: usize,
    pub y: usize,
    pub x: usize,
    pub x_prime: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LdpReport<F> {
    pub max_ratio: F,
    pub bound: F,
    pub witness: LdpWitness,
    pub passed: bool,
}

/// Largest `Q(y|u,x) / Q(y|u,x')` over all realizations and outputs, compared
/// with `e^ε·(1 + tol)`.
///
/// Singletons suffice: every channel built here is strictly positive on its
/// output alphabet, so the set-level constraint reduces to single outputs.
pub fn verify_ldp<F: Scalar, C: SharedRandomnessChannel<F> + ?Sized>(mech: &C, epsilon: F, tol: F) -> LdpReport<F> {
    let mut best = (
        F::neg_infinity(),
        LdpWitness {
            u: 0,
            y: 0,
            x: 0,
            x_prime: 0,
        },
    );
    for u in 0..mech.realization_count() {
        for y in 0..mech.output_count(u) {
            let (mut hi, mut lo) = ((F::neg_infinity(), 0), (F::infinity(), 0));
            for x in 0..mech.input_count() {
                let p = mech.probability(u, y, x);
                if p > hi.0 {
                    hi = (p, x);
                }
                if p < lo.0 {
                    lo = (p, x);
                }
            }
            let ratio = if lo.0 > F::zero() { hi.0 / lo.0 } else { F::infinity() };
            if ratio > best.0 {
                best = (
                    ratio,
                    LdpWitness {
                        u,
                        y,
                        x: hi.1,
                        x_prime: lo.1,
                    },
                );
            }
        }
    }
    let bound = epsilon.exp() * (F::one() + tol);
    LdpReport {
        max_ratio: best.0,
        bound,
        witness: best.1,
        passed: best.0 <= bound,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionReport<F> {
    /// Largest `|Q̃(z|x) − Σ_u Σ_{f_u(y)=z} Q(y|u,x)·P_U(u)|`.
    pub max_deviation: F,
    /// `(x, z)` attaining it.
    pub witness: (usize, usize),
    pub passed: bool,
}

/// Checks the marginal identity of a decomposition entry by entry.
pub fn verify_decomposition<F: Scalar>(
    orig: &BlockDesignMechanism<F>,
    dec: &DecomposedMechanism<F>,
    tol: F,
) -> Result<DecompositionReport<F>> {
    let params = orig.params();
    let inner = dec.mechanism().params();
    if (params.v, params.b) != (inner.v, inner.b) {
        return arg(format!(
            "shape mismatch: mechanism is {} x {}, decomposition is {} x {}",
            params.v, params.b, inner.v, inner.b
        ));
    }
    let (v, b) = (params.v, params.b);
    let mut marginal = vec![F::zero(); v * b];
    for u in 0..dec.realization_count() {
        let pu = dec.pu()[u];
        let weight = F::of(pu.numer().to_f64().unwrap_or(f64::NAN)) / F::of(pu.denom().to_f64().unwrap_or(f64::NAN));
        for y in 0..dec.output_count(u) {
            let z = dec.inject(u, y);
            for x in 0..v {
                marginal[x * b + z] = marginal[x * b + z] + dec.prob(u, y, x) * weight;
            }
        }
    }
    let mut worst = (F::zero(), (0, 0));
    for x in 0..v {
        for z in 0..b {
            let dev = (orig.prob(x, z) - marginal[x * b + z]).abs();
            if dev > worst.0 || dev.is_nan() {
                worst = (dev, (x, z));
            }
        }
    }
    Ok(DecompositionReport {
        max_deviation: worst.0,
        witness: worst.1,
        passed: worst.0 <= tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{complete_design, hadamard3_design};
    use crate::mechanisms::{build_mechanism, decompose, DEFAULT_DECOMPOSITION_TOL, DEFAULT_LDP_TOL};
    use crate::resolutions::{cyclic_shift_resolution, h3_resolution, trivial_resolution};

    #[test]
    fn ratio_is_exactly_e_to_the_epsilon() {
        let mech = build_mechanism(complete_design(4, 2).unwrap(), 2f64.ln()).unwrap();
        let report = verify_ldp(&mech, 2f64.ln(), DEFAULT_LDP_TOL);
        assert!(report.passed);
        assert!((report.max_ratio - 2.0).abs() < 1e-15);
        let w = report.witness;
        assert!(mech.design().contains(w.x, w.y) && !mech.design().contains(w.x_prime, w.y));
    }

    #[test]
    fn decomposed_ratio_per_realization() {
        let eps = 0.9f64;
        let mech = build_mechanism(complete_design(4, 2).unwrap(), eps).unwrap();
        let (_, res) = cyclic_shift_resolution(4, 2).unwrap();
        let dec = decompose(&mech, &res).unwrap();
        let report = verify_ldp(&dec, eps, DEFAULT_LDP_TOL);
        assert!(report.passed);
        assert!((report.max_ratio - eps.exp()).abs() < 1e-12);
    }

    #[test]
    fn smaller_budget_fails_with_witness() {
        let mech = build_mechanism(complete_design(4, 2).unwrap(), 1.0f64).unwrap();
        let report = verify_ldp(&mech, 0.5, DEFAULT_LDP_TOL);
        assert!(!report.passed);
        assert!(report.max_ratio > report.bound);
    }

    #[test]
    fn cyclic_decomposition_reproduces_marginals() {
        let mech = build_mechanism(complete_design(4, 2).unwrap(), 0.3f64).unwrap();
        let (_, res) = cyclic_shift_resolution(4, 2).unwrap();
        let dec = decompose(&mech, &res).unwrap();
        let report = verify_decomposition(&mech, &dec, DEFAULT_DECOMPOSITION_TOL).unwrap();
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn trivial_decomposition_has_zero_deviation() {
        let mech = build_mechanism(hadamard3_design(2).unwrap(), 1.1f64).unwrap();
        let dec = decompose(&mech, &trivial_resolution(mech.design()).unwrap()).unwrap();
        let report = verify_decomposition(&mech, &dec, 0.0).unwrap();
        assert_eq!(report.max_deviation, 0.0);
        assert!(report.passed);
    }

    #[test]
    fn swapped_injection_breaks_the_identity() {
        let mech = build_mechanism(complete_design(4, 2).unwrap(), 0.6f64).unwrap();
        let (_, res) = cyclic_shift_resolution(4, 2).unwrap();
        let dec = decompose(&mech, &res).unwrap();
        // exchange the targets of (u=0, y=1) and (u=1, y=0)
        let mut inj = dec.injections().to_vec();
        let tmp = inj[0][1];
        inj[0][1] = inj[1][0];
        inj[1][0] = tmp;
        let bad = dec.with_injections(inj).unwrap();
        let report = verify_decomposition(&mech, &bad, DEFAULT_DECOMPOSITION_TOL).unwrap();
        assert!(!report.passed);
        assert!(report.max_deviation > 1e-3);
        let (x, z) = report.witness;
        assert!(z == 3 || z == 1, "witness ({x}, {z})");
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let a = build_mechanism(hadamard3_design(1).unwrap(), 1.0f64).unwrap();
        let b = build_mechanism(hadamard3_design(2).unwrap(), 1.0f64).unwrap();
        let dec = decompose(&b, &h3_resolution(b.design()).unwrap()).unwrap();
        assert!(verify_decomposition(&a, &dec, 1e-12).is_err());
    }
}
