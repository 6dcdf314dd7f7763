//! Dispatch from a [`RunConfig`] to the library.

use std::fs;
use std::path::Path;

use bdldp::analysis::{
    alpha_resolution_cost, baranyai_min_cost, comm_cost, cyclic_cost_closed_form, cyclic_cost_enumerated, k_opt_set,
    mechanism_cost, shared_entropy_bits, PutBoundary,
};
use bdldp::designs::{
    affine_geometry_design_with_cap, complete_design_with_cap, hadamard3_design, round_robin_design,
    verify_block_design, IncidenceStructure,
};
use bdldp::estimation::{closed_form_loss, simulate_loss, EstimateReport, SimulationSummary};
use bdldp::json::{DesignJson, MechanismJson, ParsedMechanism, PutJson, ReportJson, ResolutionJson};
use bdldp::mechanisms::{decompose, verify_decomposition, verify_ldp, BlockDesignMechanism, DecomposedMechanism};
use bdldp::resolutions::{
    baranyai_partition_with_cap, baranyai_resolution_with_cap, cyclic_shift_resolution_with_cap, h3_resolution,
    parallel_class_resolution, verify_resolution, Resolution,
};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use crate::config::*;

/// Why a run stopped without a report.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Resource(String),
    Internal(String),
}

impl From<bdldp::Error> for Failure {
    fn from(e: bdldp::Error) -> Self {
        match e {
            bdldp::Error::Argument(_) | bdldp::Error::UnsupportedOrder(_) => Failure::Usage(e.to_string()),
            bdldp::Error::Resource(_) => Failure::Resource(e.to_string()),
            bdldp::Error::Internal(_) => Failure::Internal(e.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, Failure>;

/// A finished run: its JSON report and whether every check in it passed.
pub struct Outcome {
    pub json: String,
    pub passed: bool,
}

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Failure::Usage(msg.into()))
}

fn need<T: Copy>(value: Option<T>, flag: &str, kind: &str) -> Result<T> {
    value.ok_or_else(|| Failure::Usage(format!("--design {kind} needs --{flag}")))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Reads the output of another subcommand, dropping its embedded config.
fn read_input<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let mut value: Value = read_json(path)?;
    if let Value::Object(map) = &mut value {
        map.shift_remove("config");
    }
    serde_json::from_value(value).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct WithConfig<'a, T> {
    #[serde(flatten)]
    payload: &'a T,
    config: &'a RunConfig,
}

fn emit<T: Serialize>(payload: &T, config: &RunConfig, passed: bool) -> Result<Outcome> {
    let json = serde_json::to_string(&WithConfig { payload, config }).map_err(|e| Failure::Internal(e.to_string()))?;
    Ok(Outcome { json, passed })
}

fn check_caps(s: IncidenceStructure, g: &Globals) -> Result<IncidenceStructure> {
    if s.b() as u64 > g.cap_blocks {
        return Err(Failure::Resource(format!(
            "{} blocks exceed the block cap of {}",
            s.b(),
            g.cap_blocks
        )));
    }
    if s.v() as u64 > g.cap_points {
        return Err(Failure::Resource(format!(
            "{} points exceed the point cap of {}",
            s.v(),
            g.cap_points
        )));
    }
    Ok(s)
}

fn build_design(src: &DesignSource, g: &Globals) -> Result<IncidenceStructure> {
    let Some(kind) = src.design.as_deref() else {
        return usage("--design is required");
    };
    let s = match kind {
        "complete" => complete_design_with_cap(need(src.v, "v", kind)?, need(src.k, "k", kind)?, g.cap_blocks)?,
        "ag" => affine_geometry_design_with_cap(
            need(src.d, "d", kind)?,
            need(src.m, "m", kind)?,
            need(src.q, "q", kind)?,
            g.cap_points,
        )?,
        "hadamard3" => hadamard3_design(need(src.t, "t", kind)?)?,
        "roundrobin" => round_robin_design(need(src.v, "v", kind)?, src.lambda.unwrap_or(1))?,
        path => read_input::<DesignJson>(Path::new(path))?.to_design()?,
    };
    check_caps(s, g)
}

/// `(v, k)` when the source names a complete design.
fn complete_params(src: &DesignSource, what: &str) -> Result<(usize, usize)> {
    match src.design.as_deref() {
        Some("complete") => Ok((need(src.v, "v", "complete")?, need(src.k, "k", "complete")?)),
        _ => usage(format!("{what} resolutions apply to --design complete")),
    }
}

/// Builds the design and the named (or loaded) resolution of it.
fn build_resolution(
    src: &DesignSource,
    kind: &str,
    seed: u64,
    g: &Globals,
) -> Result<(IncidenceStructure, Resolution)> {
    match kind {
        "cyclic" => {
            let (v, k) = complete_params(src, kind)?;
            Ok(cyclic_shift_resolution_with_cap(v, k, g.cap_blocks)?)
        }
        "baranyai" => {
            let (v, k) = complete_params(src, kind)?;
            Ok(baranyai_resolution_with_cap(v, k, seed, g.cap_blocks)?)
        }
        "parallel" => {
            let s = build_design(src, g)?;
            let r = parallel_class_resolution(&s)?;
            Ok((s, r))
        }
        "h3" => {
            let s = build_design(src, g)?;
            let r = h3_resolution(&s)?;
            Ok((s, r))
        }
        path => {
            let s = build_design(src, g)?;
            let (s, r) = read_input::<ResolutionJson>(Path::new(path))?.to_resolution(Some(&s))?;
            Ok((s, r))
        }
    }
}

fn mechanism(design: IncidenceStructure, eps: f64) -> Result<BlockDesignMechanism<f64>> {
    Ok(BlockDesignMechanism::new(design, eps)?)
}

pub fn run(config: &RunConfig) -> Result<Outcome> {
    let g = &config.globals;
    match &config.command {
        Command::Design(cmd) => {
            let s = match cmd {
                DesignCmd::Complete(a) => complete_design_with_cap(a.v, a.k, g.cap_blocks)?,
                DesignCmd::Ag(a) => affine_geometry_design_with_cap(a.d, a.m, a.q, g.cap_points)?,
                DesignCmd::Hadamard3(a) => hadamard3_design(a.t)?,
                DesignCmd::Roundrobin(a) => round_robin_design(a.v, a.lambda)?,
            };
            let s = check_caps(s, g)?;
            emit(&DesignJson::from(&s), config, true)
        }
        Command::Resolve(cmd) => resolve(cmd, config),
        Command::Mech(cmd) => mech(cmd, config),
        Command::Put(cmd) => put(cmd, config),
        Command::Cost(cmd) => cost(cmd, config),
        Command::Simulate(a) => simulate(a, config),
    }
}

#[derive(Serialize)]
struct Violation {
    class: usize,
    points: [usize; 2],
    counts: [usize; 2],
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ResolutionCheck {
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    params: Option<[usize; 5]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alphas: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    violation: Option<Violation>,
}

fn resolve(cmd: &ResolveCmd, config: &RunConfig) -> Result<Outcome> {
    let g = &config.globals;
    let (s, r) = match cmd {
        ResolveCmd::Cyclic(a) => cyclic_shift_resolution_with_cap(a.v, a.k, g.cap_blocks)?,
        ResolveCmd::Baranyai(a) if a.sizes.is_empty() => baranyai_resolution_with_cap(a.v, a.k, a.seed, g.cap_blocks)?,
        ResolveCmd::Baranyai(a) => {
            baranyai_partition_with_cap(a.v, a.k, &a.sizes, a.seed, g.cap_blocks)?.into_resolution()?
        }
        ResolveCmd::Parallel(src) => build_resolution(src, "parallel", 0, g)?,
        ResolveCmd::H3(src) => {
            let mut src = src.clone();
            src.design.get_or_insert_with(|| "hadamard3".into());
            build_resolution(&src, "h3", 0, g)?
        }
        ResolveCmd::Verify(a) => {
            let parsed: ResolutionJson = read_input(&a.resolution)?;
            let Some(design) = &parsed.design else {
                return usage("the resolution file must embed its design");
            };
            let s = design.to_design()?;
            let p = match verify_block_design(&s) {
                Ok(p) => p,
                Err(v) => return usage(format!("not a block design: {v}")),
            };
            let classes: Vec<Vec<usize>> = parsed
                .classes
                .iter()
                .map(|c| c.iter().map(|&j| j.checked_sub(1)).collect::<Option<Vec<_>>>())
                .collect::<Option<_>>()
                .ok_or_else(|| Failure::Usage("block indices start at 1".into()))?;
            let params = Some([p.v, p.b, p.r, p.k, p.lambda]);
            let check = match verify_resolution(&s, &classes)? {
                Ok(r) if r.alphas() == parsed.alphas.as_slice() => ResolutionCheck {
                    valid: true,
                    params,
                    alphas: Some(r.alphas().to_vec()),
                    violation: None,
                },
                Ok(r) => {
                    return usage(format!(
                        "stated alphas {:?} differ from computed {:?}",
                        parsed.alphas,
                        r.alphas()
                    ))
                }
                Err(v) => ResolutionCheck {
                    valid: false,
                    params,
                    alphas: None,
                    violation: Some(Violation {
                        class: v.class + 1,
                        points: [v.points.0 + 1, v.points.1 + 1],
                        counts: [v.counts.0, v.counts.1],
                    }),
                },
            };
            let passed = check.valid;
            return emit(&check, config, passed);
        }
    };
    emit(&ResolutionJson::new(Some(&s), &r), config, true)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct LdpCheck {
    passed: bool,
    epsilon: f64,
    max_ratio: f64,
    bound: f64,
    witness: LdpWitnessJson,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct LdpWitnessJson {
    u: usize,
    y: usize,
    x: usize,
    x_prime: usize,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct DecompositionCheck {
    passed: bool,
    max_deviation: f64,
    tolerance: f64,
    witness: DecompositionWitness,
}

#[derive(Serialize)]
struct DecompositionWitness {
    x: usize,
    z: usize,
}

fn mech(cmd: &MechCmd, config: &RunConfig) -> Result<Outcome> {
    let g = &config.globals;
    match cmd {
        MechCmd::Build(a) => {
            let m = mechanism(build_design(&a.source, g)?, a.eps)?;
            emit(&MechanismJson::plain(&m), config, true)
        }
        MechCmd::Decompose(a) => {
            let (s, r) = build_resolution(&a.source, &a.resolution, a.seed, g)?;
            let dec = decompose(&mechanism(s, a.eps)?, &r)?;
            emit(&MechanismJson::decomposed(&dec), config, true)
        }
        MechCmd::VerifyLdp(a) => {
            let parsed: MechanismJson = read_input(&a.mechanism)?;
            let eps = a.eps.unwrap_or(parsed.epsilon);
            if !(eps > 0.0) {
                return usage("the budget must be positive");
            }
            let report = match parsed.to_mechanism::<f64>()? {
                ParsedMechanism::Plain(m) => verify_ldp(&m, eps, a.tol),
                ParsedMechanism::Decomposed(d) => verify_ldp(&d, eps, a.tol),
            };
            let w = report.witness;
            let check = LdpCheck {
                passed: report.passed,
                epsilon: eps,
                max_ratio: report.max_ratio,
                bound: report.bound,
                witness: LdpWitnessJson {
                    u: w.u + 1,
                    y: w.y + 1,
                    x: w.x + 1,
                    x_prime: w.x_prime + 1,
                },
            };
            emit(&check, config, report.passed)
        }
        MechCmd::VerifyDecomp(a) => {
            let parsed: MechanismJson = read_input(&a.mechanism)?;
            let ParsedMechanism::Decomposed(dec) = parsed.to_mechanism::<f64>()? else {
                return usage("the mechanism file has no resolution to verify");
            };
            let report = verify_decomposition(dec.mechanism(), &dec, a.tol)?;
            let check = DecompositionCheck {
                passed: report.passed,
                max_deviation: report.max_deviation,
                tolerance: a.tol,
                witness: DecompositionWitness {
                    x: report.witness.0 + 1,
                    z: report.witness.1 + 1,
                },
            };
            emit(&check, config, report.passed)
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct KoptJson {
    k_opt: Vec<usize>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct LossJson {
    loss: f64,
    optimal: bool,
    k_opt: Vec<usize>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct MinCostJson {
    k_star: usize,
    min_cost_bits: f64,
    min_cost_ceil_bits: f64,
}

fn put(cmd: &PutCmd, config: &RunConfig) -> Result<Outcome> {
    match cmd {
        PutCmd::Kopt(a) => emit(
            &KoptJson {
                k_opt: k_opt_set(a.v, a.eps)?,
            },
            config,
            true,
        ),
        PutCmd::Kstar(a) => emit(&PutJson::from(&PutBoundary::new(a.v, a.eps)?), config, true),
        PutCmd::Loss(a) => {
            let k_opt = k_opt_set(a.v, a.eps)?;
            let loss = closed_form_loss(a.n, a.v, a.k, a.eps)?;
            emit(
                &LossJson {
                    loss,
                    optimal: k_opt.contains(&a.k),
                    k_opt,
                },
                config,
                true,
            )
        }
        PutCmd::Mincost(a) => {
            let p = PutBoundary::new(a.v, a.eps)?;
            let bits = baranyai_min_cost(a.v, a.eps)?;
            emit(
                &MinCostJson {
                    k_star: p.k_star,
                    min_cost_bits: bits,
                    min_cost_ceil_bits: bits.ceil(),
                },
                config,
                true,
            )
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CostJson {
    comm_cost_bits: f64,
    ceil_bits: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    block_index_bits: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    shared_entropy_bits: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    enumerated_bits: Option<f64>,
}

fn cost(cmd: &CostCmd, config: &RunConfig) -> Result<Outcome> {
    let g = &config.globals;
    let report = match cmd {
        CostCmd::Generic(a) => {
            let (s, r) = build_resolution(&a.source, &a.resolution, a.seed, g)?;
            // The cost does not depend on the budget.
            let dec = decompose(&mechanism(s, 1.0)?, &r)?;
            let bits = comm_cost(&dec);
            CostJson {
                comm_cost_bits: bits,
                ceil_bits: bits.ceil(),
                block_index_bits: Some(mechanism_cost(dec.mechanism())),
                shared_entropy_bits: Some(shared_entropy_bits(&dec)),
                enumerated_bits: None,
            }
        }
        CostCmd::Cyclic(a) => {
            let bits = cyclic_cost_closed_form(a.v, a.k)?;
            let enumerated = if a.enumerate {
                complete_design_with_cap(a.v, a.k, g.cap_blocks)?;
                Some(cyclic_cost_enumerated(a.v, a.k)?)
            } else {
                None
            };
            CostJson {
                comm_cost_bits: bits,
                ceil_bits: bits.ceil(),
                block_index_bits: None,
                shared_entropy_bits: None,
                enumerated_bits: enumerated,
            }
        }
        CostCmd::Alpha(a) => {
            let bits = alpha_resolution_cost(a.v, a.k, a.alpha)?;
            CostJson {
                comm_cost_bits: bits,
                ceil_bits: bits.ceil(),
                block_index_bits: None,
                shared_entropy_bits: None,
                enumerated_bits: None,
            }
        }
    };
    emit(&report, config, true)
}

fn summarize<P>(mech: &P, p: &[f64], a: &SimulateArgs) -> Result<SimulationSummary<f64>>
where
    P: bdldp::estimation::Privatizer<f64>,
{
    Ok(simulate_loss(mech, p, a.n, a.trials, a.seed)?)
}

fn simulate(a: &SimulateArgs, config: &RunConfig) -> Result<Outcome> {
    let g = &config.globals;
    let (plain, split): (BlockDesignMechanism<f64>, Option<DecomposedMechanism<f64>>) = match a.resolution.as_str() {
        "none" => (mechanism(build_design(&a.source, g)?, a.eps)?, None),
        kind => {
            let (s, r) = build_resolution(&a.source, kind, a.seed, g)?;
            let m = mechanism(s, a.eps)?;
            let d = decompose(&m, &r)?;
            (m, Some(d))
        }
    };
    let params = plain.params();
    let p = if a.p_true.is_empty() {
        vec![1.0 / params.v as f64; params.v]
    } else {
        a.p_true.clone()
    };
    let (summary, bits) = match &split {
        Some(d) => (summarize(d, &p, a)?, comm_cost(d)),
        None => (summarize(&plain, &p, a)?, mechanism_cost(&plain)),
    };
    let report = EstimateReport {
        estimate: summary.first_estimate,
        n: a.n,
        trials: a.trials,
        seed: a.seed,
        empirical_mse: summary.mean_mse,
        std_err: summary.std_err,
        closed_form_loss: closed_form_loss(a.n, params.v, params.k, a.eps)?,
        comm_cost_bits: bits,
    };
    emit(&ReportJson::from(&report), config, true)
}
