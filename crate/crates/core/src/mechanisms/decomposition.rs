use num_rational::Ratio;
use rand::Rng;

use super::sampler::ClassSampler;
use super::{BlockDesignMechanism, Channel, SharedRandomnessChannel};
use crate::error::{arg, Result};
use crate::resolutions::{verify_resolution, Resolution};
use crate::scalar::Scalar;

/// One privatized report: the shared symbol `u`, the transmitted symbol `y`
/// (a position within class `u`) and the block `f_u(y)` it stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrivatizedSample {
    pub u: usize,
    pub y: usize,
    pub block: usize,
}

/// A block design mechanism split along a resolution.
///
/// Realization `u` has `P_U(u) = |C_u|/b`. Its output alphabet is the
/// positions `0..|C_u|` of class `C_u`; position `y` behaves like block
/// `C_u[y]` and the injection maps it back to that block.
#[derive(Debug, Clone)]
pub struct DecomposedMechanism<F> {
    mechanism: BlockDesignMechanism<F>,
    resolution: Resolution,
    pu: Vec<Ratio<u64>>,
    injections: Vec<Vec<usize>>,
    samplers: Vec<ClassSampler>,
    /// `cumulative[u]` = number of blocks in classes `0..=u`.
    cumulative: Vec<u64>,
}

/// Splits `mech` along `res`.
pub fn decompose<F: Scalar>(mech: &BlockDesignMechanism<F>, res: &Resolution) -> Result<DecomposedMechanism<F>> {
    let design = mech.design();
    match verify_resolution(design, res.classes())? {
        Ok(checked) if checked == *res => {}
        Ok(_) => return arg("resolution carries alphas that do not match the design"),
        Err(v) => return arg(format!("resolution does not fit the design: {v}")),
    }
    let b = design.b() as u64;
    let pu = res.classes().iter().map(|c| Ratio::new(c.len() as u64, b)).collect();
    let samplers = res.classes().iter().map(|c| ClassSampler::new(design, c)).collect();
    let cumulative = res
        .classes()
        .iter()
        .scan(0u64, |acc, c| {
            *acc += c.len() as u64;
            Some(*acc)
        })
        .collect();
    Ok(DecomposedMechanism {
        mechanism: mech.clone(),
        resolution: res.clone(),
        pu,
        injections: res.classes().to_vec(),
        samplers,
        cumulative,
    })
}

impl<F: Scalar> DecomposedMechanism<F> {
    pub fn mechanism(&self) -> &BlockDesignMechanism<F> {
        &self.mechanism
    }

    pub fn resolution(&self) -> &Resolution {
        &self.resolution
    }

    /// `P_U` as exact fractions.
    pub fn pu(&self) -> &[Ratio<u64>] {
        &self.pu
    }

    pub fn injections(&self) -> &[Vec<usize>] {
        &self.injections
    }

    /// `f_u(y)`.
    pub fn inject(&self, u: usize, y: usize) -> usize {
        self.injections[u][y]
    }

    /// Replaces the injections. Only their shape is checked; use
    /// [`super::verify_decomposition`] to see whether the result is still a
    /// decomposition.
    pub fn with_injections(mut self, injections: Vec<Vec<usize>>) -> Result<Self> {
        let b = self.mechanism.design().b();
        if injections.len() != self.injections.len()
            || injections.iter().zip(&self.injections).any(|(a, b)| a.len() != b.len())
        {
            return arg("injections must have one entry per output symbol of every realization");
        }
        if injections.iter().flatten().any(|&z| z >= b) {
            return arg("injection image outside the block range");
        }
        self.injections = injections;
        Ok(self)
    }

    /// `α(C_u)(e^ε − 1) + |C_u|`.
    pub fn denominator(&self, u: usize) -> F {
        let alpha = F::of_usize(self.resolution.alphas()[u]);
        alpha * (self.mechanism.exp_epsilon() - F::one()) + F::of_usize(self.resolution.classes()[u].len())
    }

    /// `Q(y | u, x)`.
    pub fn prob(&self, u: usize, y: usize, x: usize) -> F {
        let block = self.resolution.classes()[u][y];
        let numerator = if self.mechanism.design().contains(x, block) {
            self.mechanism.exp_epsilon()
        } else {
            F::one()
        };
        numerator / self.denominator(u)
    }

    /// The `v × |C_u|` matrix of realization `u`.
    pub fn subchannel(&self, u: usize) -> Channel<F> {
        Channel::from_fn(self.mechanism.params().v, self.resolution.classes()[u].len(), |x, y| {
            self.prob(u, y, x)
        })
    }

    /// Draws `u ~ P_U` (exactly, by integer threshold on `b`) and then
    /// `y ~ Q(· | u, x)`.
    pub fn sample<R: Rng + ?Sized>(&self, x: usize, rng: &mut R) -> PrivatizedSample {
        let b = *self.cumulative.last().expect("at least one class");
        let ticket = rng.gen_range(0..b);
        let u = self.cumulative.partition_point(|&c| c <= ticket);
        let y = self.samplers[u].sample(x, self.mechanism.exp_epsilon(), rng);
        PrivatizedSample {
            u,
            y,
            block: self.injections[u][y],
        }
    }
}

impl<F: Scalar> SharedRandomnessChannel<F> for DecomposedMechanism<F> {
    fn input_count(&self) -> usize {
        self.mechanism.params().v
    }

    fn realization_count(&self) -> usize {
        self.resolution.len()
    }

    fn output_count(&self, u: usize) -> usize {
        self.resolution.classes()[u].len()
    }

    fn probability(&self, u: usize, y: usize, x: usize) -> F {
        self.prob(u, y, x)
    }
}
