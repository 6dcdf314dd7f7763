//! Block design mechanisms and their shared-randomness decompositions.
//!
//! Channels are kept symbolic: an entry is `e^ε / D` on incidences and `1 / D`
//! elsewhere, for the appropriate denominator `D`. Dense matrices are only
//! produced on request.

mod decomposition;
mod sampler;
mod verify;

use rand::Rng;

use crate::designs::{verify_block_design, DesignParams, IncidenceStructure};
use crate::error::{arg, Result};
use crate::scalar::Scalar;

pub use decomposition::{decompose, DecomposedMechanism, PrivatizedSample};
pub use verify::{verify_decomposition, verify_ldp, DecompositionReport, LdpReport, LdpWitness};

use sampler::ClassSampler;

/// Default relative slack on the e^ε ratio bound.
pub const DEFAULT_LDP_TOL: f64 = 1e-9;
/// Default absolute tolerance on decomposition marginals.
pub const DEFAULT_DECOMPOSITION_TOL: f64 = 1e-12;

/// Dense row-major row-stochastic matrix (rows are inputs).
#[derive(Debug, Clone, PartialEq)]
pub struct Channel<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Scalar> Channel<F> {
    pub(crate) fn from_fn(rows: usize, cols: usize, mut entry: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(entry(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> F {
        self.data[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[F] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }
}

/// Anything with per-realization channels `Q(y | u, x)`. A mechanism without
/// shared randomness has a single realization.
pub trait SharedRandomnessChannel<F: Scalar> {
    fn input_count(&self) -> usize;
    fn realization_count(&self) -> usize;
    fn output_count(&self, u: usize) -> usize;
    fn probability(&self, u: usize, y: usize, x: usize) -> F;
}

/// The two-valued ε-LDP channel of a block design.
#[derive(Debug, Clone)]
pub struct BlockDesignMechanism<F> {
    design: IncidenceStructure,
    params: DesignParams,
    epsilon: F,
    exp_epsilon: F,
    sampler: ClassSampler,
}

impl<F: Scalar> BlockDesignMechanism<F> {
    pub fn new(design: IncidenceStructure, epsilon: F) -> Result<Self> {
        if !(epsilon > F::zero()) || !epsilon.is_finite() {
            return arg(format!("epsilon must be positive and finite, got {epsilon}"));
        }
        let params = match verify_block_design(&design) {
            Ok(p) => p,
            Err(v) => return arg(format!("not a block design: {v}")),
        };
        let all: Vec<usize> = (0..design.b()).collect();
        let sampler = ClassSampler::new(&design, &all);
        Ok(Self {
            design,
            params,
            epsilon,
            exp_epsilon: epsilon.exp(),
            sampler,
        })
    }

    pub fn design(&self) -> &IncidenceStructure {
        &self.design
    }

    pub fn params(&self) -> DesignParams {
        self.params
    }

    pub fn epsilon(&self) -> F {
        self.epsilon
    }

    pub fn exp_epsilon(&self) -> F {
        self.exp_epsilon
    }

    /// `(e^ε − 1)·r + b`.
    pub fn denominator(&self) -> F {
        (self.exp_epsilon - F::one()) * F::of_usize(self.params.r) + F::of_usize(self.params.b)
    }

    /// `Q̃(z | x)`.
    pub fn prob(&self, x: usize, z: usize) -> F {
        let numerator = if self.design.contains(x, z) {
            self.exp_epsilon
        } else {
            F::one()
        };
        numerator / self.denominator()
    }

    /// The `v × b` channel matrix.
    pub fn channel(&self) -> Channel<F> {
        let d = self.denominator();
        let (hi, lo) = (self.exp_epsilon / d, F::one() / d);
        let mut m = Channel::from_fn(self.params.v, self.params.b, |_, _| lo);
        for (z, block) in self.design.blocks().iter().enumerate() {
            for &x in block {
                m.data[x * self.params.b + z] = hi;
            }
        }
        m
    }

    /// Draws a block index from `Q̃(· | x)`.
    pub fn sample<R: Rng + ?Sized>(&self, x: usize, rng: &mut R) -> usize {
        self.sampler.sample(x, self.exp_epsilon, rng)
    }
}

impl<F: Scalar> SharedRandomnessChannel<F> for BlockDesignMechanism<F> {
    fn input_count(&self) -> usize {
        self.params.v
    }

    fn realization_count(&self) -> usize {
        1
    }

    fn output_count(&self, _u: usize) -> usize {
        self.params.b
    }

    fn probability(&self, _u: usize, y: usize, x: usize) -> F {
        self.prob(x, y)
    }
}

/// Convenience constructor mirroring [`BlockDesignMechanism::new`].
pub fn build_mechanism<F: Scalar>(design: IncidenceStructure, epsilon: F) -> Result<BlockDesignMechanism<F>> {
    BlockDesignMechanism::new(design, epsilon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{complete_design, hadamard3_design};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn four_two_channel_matches_reference_matrix() {
        let eps = 0.8f64;
        let mech = build_mechanism(complete_design(4, 2).unwrap(), eps).unwrap();
        let e = eps.exp();
        let pattern = [
            [e, e, e, 1.0, 1.0, 1.0],
            [e, 1.0, 1.0, e, e, 1.0],
            [1.0, e, 1.0, e, 1.0, e],
            [1.0, 1.0, e, 1.0, e, e],
        ];
        let q = mech.channel();
        for x in 0..4 {
            for z in 0..6 {
                let expected = pattern[x][z] / (3.0 * (e + 1.0));
                assert!((q.get(x, z) - expected).abs() < 1e-15);
                assert_eq!(q.get(x, z), mech.prob(x, z));
            }
        }
    }

    #[test]
    fn two_one_at_ln_three() {
        let mech = build_mechanism(complete_design(2, 1).unwrap(), 3f64.ln()).unwrap();
        let q = mech.channel();
        for (got, want) in q
            .row(0)
            .iter()
            .zip([0.75, 0.25])
            .chain(q.row(1).iter().zip([0.25, 0.75]))
        {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn rows_sum_to_one() {
        for eps in [0.1f64, 1.0, 5.0] {
            let mech = build_mechanism(hadamard3_design(3).unwrap(), eps).unwrap();
            let q = mech.channel();
            for x in 0..q.rows() {
                assert!((q.row(x).iter().sum::<f64>() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn vanishing_epsilon_tends_to_uniform() {
        let mech = build_mechanism(complete_design(5, 2).unwrap(), 1e-12f64).unwrap();
        let q = mech.channel();
        for x in 0..5 {
            for &p in q.row(x) {
                assert!((p - 0.1).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn single_precision_mechanism() {
        let mech = build_mechanism(complete_design(4, 2).unwrap(), 2f32.ln()).unwrap();
        let q = mech.channel();
        assert!((q.get(0, 0) - 2.0 / 9.0).abs() < 1e-6);
        assert!((q.row(3).iter().sum::<f32>() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn rejects_bad_inputs() {
        let d = complete_design(4, 2).unwrap();
        assert!(build_mechanism(d.clone(), 0.0f64).is_err());
        assert!(build_mechanism(d.clone(), -1.0f64).is_err());
        assert!(build_mechanism(d, f64::NAN).is_err());
        let not_design = IncidenceStructure::new(3, vec![vec![0], vec![0, 1]]).unwrap();
        assert!(build_mechanism(not_design, 1.0f64).is_err());
    }

    #[test]
    fn large_epsilon_concentrates_on_incident_blocks() {
        let mech = build_mechanism(complete_design(5, 2).unwrap(), 40.0f64).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut hits = vec![0usize; mech.params().b];
        for _ in 0..40_000 {
            hits[mech.sample(1, &mut rng)] += 1;
        }
        let incident: Vec<usize> = (0..10).filter(|&z| mech.design().contains(1, z)).collect();
        assert_eq!(incident.len(), 4);
        for z in 0..10 {
            if incident.contains(&z) {
                // each of the r = 4 incident blocks gets a quarter
                assert!((hits[z] as f64 / 40_000.0 - 0.25).abs() < 0.01);
            } else {
                assert_eq!(hits[z], 0);
            }
        }
    }
}
