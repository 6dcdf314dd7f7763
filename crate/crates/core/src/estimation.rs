//! Unbiased frequency estimation from privatized block reports.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::designs::IncidenceStructure;
use crate::error::{arg, Result};
use crate::mechanisms::{BlockDesignMechanism, DecomposedMechanism};
use crate::scalar::{compensated_sum, Scalar};

/// Tolerance for accepting a vector as a probability distribution.
pub const SIMPLEX_TOL: f64 = 1e-9;

/// `N_x`: how many reported blocks contain each point.
pub fn count_incidences(samples: &[usize], design: &IncidenceStructure) -> Result<Vec<u64>> {
    let mut counts = vec![0u64; design.v()];
    for &z in samples {
        if z >= design.b() {
            return arg(format!("block index {z} is outside 0..{}", design.b()));
        }
        for &x in design.block(z) {
            counts[x] += 1;
        }
    }
    Ok(counts)
}

/// Slope and intercept of the estimator `P̂_x = slope·N_x − intercept`.
fn estimator_coefficients<F: Scalar>(n: u64, v: usize, k: usize, epsilon: F) -> Result<(F, F)> {
    if n == 0 {
        return arg("need at least one sample");
    }
    if k == 0 || k >= v {
        return arg(format!("need 0 < k < v, got v = {v}, k = {k}"));
    }
    if !(epsilon > F::zero()) {
        return arg(format!("epsilon must be positive, got {epsilon}"));
    }
    let e = epsilon.exp();
    let (vf, kf, nf) = (F::of_usize(v), F::of_usize(k), F::of(n as f64));
    let one = F::one();
    let slope = (vf - one) * (kf * e + vf - kf) / (nf * kf * (vf - kf) * (e - one));
    let intercept = ((kf - one) * e + vf - kf) / ((vf - kf) * (e - one));
    Ok((slope, intercept))
}

/// The unbiased estimate from incidence counts of `n` reports.
pub fn estimate<F: Scalar>(counts: &[u64], n: u64, v: usize, k: usize, epsilon: F) -> Result<Vec<F>> {
    if counts.len() != v {
        return arg(format!("expected {v} counts, got {}", counts.len()));
    }
    let (slope, intercept) = estimator_coefficients(n, v, k, epsilon)?;
    Ok(counts.iter().map(|&c| slope * F::of(c as f64) - intercept).collect())
}

/// Worst-case ℓ₂² risk `(v−1)²(k·e^ε + v − k)² / (n·v·k(v−k)(e^ε − 1)²)`.
pub fn closed_form_loss<F: Scalar>(n: u64, v: usize, k: usize, epsilon: F) -> Result<F> {
    if n == 0 || k == 0 || k >= v || !(epsilon > F::zero()) {
        return arg(format!(
            "invalid loss arguments n = {n}, v = {v}, k = {k}, ε = {epsilon}"
        ));
    }
    let e = epsilon.exp();
    let (vf, kf, nf) = (F::of_usize(v), F::of_usize(k), F::of(n as f64));
    let one = F::one();
    let spread = kf * e + vf - kf;
    Ok((vf - one).powi(2) * spread * spread / (nf * vf * kf * (vf - kf) * (e - one).powi(2)))
}

/// Euclidean projection onto the probability simplex. Not applied by any
/// estimator in this crate; exposed as optional post-processing.
pub fn project_to_simplex<F: Scalar>(estimate: &[F]) -> Vec<F> {
    let mut sorted = estimate.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    let mut cumulative = F::zero();
    let mut shift = F::zero();
    for (i, &u) in sorted.iter().enumerate() {
        cumulative = cumulative + u;
        let candidate = (cumulative - F::one()) / F::of_usize(i + 1);
        if u - candidate > F::zero() {
            shift = candidate;
        }
    }
    estimate.iter().map(|&x| (x - shift).max(F::zero())).collect()
}

fn check_simplex<F: Scalar>(p: &[F], v: usize) -> Result<()> {
    if p.len() != v {
        return arg(format!("distribution has {} entries, expected {v}", p.len()));
    }
    let tol = F::of(SIMPLEX_TOL);
    if p.iter().any(|&x| !(x >= -tol)) {
        return arg("distribution has a negative entry");
    }
    let total = compensated_sum(p.iter().copied());
    if (total - F::one()).abs() > tol {
        return arg(format!("distribution sums to {total}, not 1"));
    }
    Ok(())
}

/// Probability that a report's block contains each point, `q_x`, under input
/// distribution `p`, computed by propagating `p` through the dense channel.
fn incidence_probabilities<F: Scalar>(mech: &BlockDesignMechanism<F>, p: &[F]) -> Vec<F> {
    let channel = mech.channel();
    let design = mech.design();
    let block_probs: Vec<F> = (0..design.b())
        .map(|z| compensated_sum((0..design.v()).map(|x| p[x] * channel.get(x, z))))
        .collect();
    let mut q = vec![F::zero(); design.v()];
    for (z, block) in design.blocks().iter().enumerate() {
        for &x in block {
            q[x] = q[x] + block_probs[z];
        }
    }
    q
}

/// `E[P̂]` computed exactly: `p` is pushed through the channel to block
/// probabilities, then through the affine estimator.
pub fn expected_estimate<F: Scalar>(mech: &BlockDesignMechanism<F>, p: &[F]) -> Result<Vec<F>> {
    let params = mech.params();
    check_simplex(p, params.v)?;
    let (slope, intercept) = estimator_coefficients(1, params.v, params.k, mech.epsilon())?;
    Ok(incidence_probabilities(mech, p)
        .into_iter()
        .map(|q| slope * q - intercept)
        .collect())
}

/// `E‖P̂ − p‖²` for `n` reports, exactly: each `N_x` is Binomial(n, q_x), so
/// the risk is `slope₁² · Σ_x q_x(1 − q_x) / n` where `slope₁` is the
/// single-report estimator slope.
pub fn expected_loss<F: Scalar>(mech: &BlockDesignMechanism<F>, p: &[F], n: u64) -> Result<F> {
    let params = mech.params();
    check_simplex(p, params.v)?;
    let (slope, _) = estimator_coefficients(1, params.v, params.k, mech.epsilon())?;
    let spread = compensated_sum(incidence_probabilities(mech, p).into_iter().map(|q| q * (F::one() - q)));
    Ok(slope * slope * spread / F::of(n as f64))
}

/// Anything that turns an input symbol into a reported block.
pub trait Privatizer<F: Scalar>: Sync {
    fn base(&self) -> &BlockDesignMechanism<F>;
    fn privatize<R: Rng + ?Sized>(&self, x: usize, rng: &mut R) -> usize;
}

impl<F: Scalar> Privatizer<F> for BlockDesignMechanism<F> {
    fn base(&self) -> &BlockDesignMechanism<F> {
        self
    }

    fn privatize<R: Rng + ?Sized>(&self, x: usize, rng: &mut R) -> usize {
        self.sample(x, rng)
    }
}

/// Reports `f_U(Y)`, the block the decomposed output stands for.
impl<F: Scalar> Privatizer<F> for DecomposedMechanism<F> {
    fn base(&self) -> &BlockDesignMechanism<F> {
        self.mechanism()
    }

    fn privatize<R: Rng + ?Sized>(&self, x: usize, rng: &mut R) -> usize {
        self.sample(x, rng).block
    }
}

/// RNG for trial `index` of a run seeded with `seed`: one ChaCha stream per trial.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Draws `n` inputs from `p` and privatizes each; returns the reported blocks.
pub fn privatize_population<F: Scalar, P: Privatizer<F>, R: Rng + ?Sized>(
    mech: &P,
    p: &[F],
    n: u64,
    rng: &mut R,
) -> Vec<usize> {
    let mut cdf = Vec::with_capacity(p.len());
    let mut acc = 0.0;
    for &px in p {
        acc += px.as_f64();
        cdf.push(acc);
    }
    let last = p.len() - 1;
    (0..n)
        .map(|_| {
            let t = rng.gen::<f64>() * acc;
            let x = cdf.partition_point(|&c| c <= t).min(last);
            mech.privatize(x, rng)
        })
        .collect()
}

/// Monte Carlo mean of `‖p − P̂‖²` over independent trials.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationSummary<F> {
    pub mean_mse: F,
    pub std_err: F,
    pub trials: usize,
    /// Estimate from the first trial.
    pub first_estimate: Vec<F>,
}

pub fn simulate_loss<F: Scalar, P: Privatizer<F>>(
    mech: &P,
    p_true: &[F],
    n: u64,
    trials: usize,
    seed: u64,
) -> Result<SimulationSummary<F>> {
    let params = mech.base().params();
    check_simplex(p_true, params.v)?;
    if trials < 2 {
        return arg("need at least two trials for a standard error");
    }
    if n == 0 {
        return arg("need at least one sample per trial");
    }
    let design = mech.base().design();
    let epsilon = mech.base().epsilon();
    let outcomes: Vec<(F, Vec<F>)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t as u64);
            let reports = privatize_population(mech, p_true, n, &mut rng);
            let counts = count_incidences(&reports, design)?;
            let est = estimate(&counts, n, params.v, params.k, epsilon)?;
            let mse = compensated_sum(est.iter().zip(p_true).map(|(&a, &b)| (a - b) * (a - b)));
            Ok((mse, est))
        })
        .collect::<Result<_>>()?;
    let tf = F::of_usize(trials);
    let mean = compensated_sum(outcomes.iter().map(|(m, _)| *m)) / tf;
    let var = compensated_sum(outcomes.iter().map(|(m, _)| (*m - mean) * (*m - mean))) / F::of_usize(trials - 1);
    Ok(SimulationSummary {
        mean_mse: mean,
        std_err: (var / tf).sqrt(),
        trials,
        first_estimate: outcomes.into_iter().next().map(|(_, e)| e).unwrap_or_default(),
    })
}

/// Everything a run reports about one estimation configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimateReport<F> {
    pub estimate: Vec<F>,
    pub n: u64,
    pub trials: usize,
    pub seed: u64,
    pub empirical_mse: F,
    pub std_err: F,
    pub closed_form_loss: F,
    pub comm_cost_bits: f64,
}
