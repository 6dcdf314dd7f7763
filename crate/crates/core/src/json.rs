//! Interchange formats. Points and block indices are 1-based on the wire and
//! 0-based in memory; struct field order fixes the key order.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::designs::IncidenceStructure;
use crate::error::{arg, Error, Result};
use crate::mechanisms::{decompose, BlockDesignMechanism, DecomposedMechanism};
use crate::resolutions::{verify_resolution, Resolution};
use crate::Scalar;

fn to_wire(rows: &[Vec<usize>]) -> Vec<Vec<usize>> {
    rows.iter().map(|r| r.iter().map(|&i| i + 1).collect()).collect()
}

fn from_wire(rows: &[Vec<usize>], what: &str) -> Result<Vec<Vec<usize>>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|&i| {
                    i.checked_sub(1)
                        .ok_or_else(|| Error::Argument(format!("{what} indices start at 1")))
                })
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignJson {
    pub v: usize,
    pub blocks: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub groups: Option<Vec<Vec<usize>>>,
}

impl From<&IncidenceStructure> for DesignJson {
    fn from(s: &IncidenceStructure) -> Self {
        DesignJson {
            v: s.v(),
            blocks: to_wire(s.blocks()),
            groups: s.groups().map(to_wire),
        }
    }
}

impl DesignJson {
    pub fn to_design(&self) -> Result<IncidenceStructure> {
        let s = IncidenceStructure::new(self.v, from_wire(&self.blocks, "point")?)?;
        match &self.groups {
            Some(g) => s.with_groups(from_wire(g, "block")?),
            None => Ok(s),
        }
    }
}

/// A resolution. `design` is omitted when the resolution is nested inside a
/// mechanism, where it refers to the mechanism's design.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolutionJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub design: Option<DesignJson>,
    pub classes: Vec<Vec<usize>>,
    pub alphas: Vec<usize>,
}

impl ResolutionJson {
    pub fn new(design: Option<&IncidenceStructure>, res: &Resolution) -> Self {
        ResolutionJson {
            design: design.map(DesignJson::from),
            classes: to_wire(res.classes()),
            alphas: res.alphas().to_vec(),
        }
    }

    /// Verifies the classes against `design` (or the embedded design) and
    /// checks the stated alphas.
    pub fn to_resolution(&self, design: Option<&IncidenceStructure>) -> Result<(IncidenceStructure, Resolution)> {
        let s = match (design, &self.design) {
            (Some(s), _) => s.clone(),
            (None, Some(d)) => d.to_design()?,
            (None, None) => return arg("resolution has no design"),
        };
        let classes = from_wire(&self.classes, "block")?;
        let res = match verify_resolution(&s, &classes)? {
            Ok(r) => r,
            Err(v) => return arg(v.to_string()),
        };
        if res.alphas() != self.alphas.as_slice() {
            return arg(format!(
                "stated alphas {:?} differ from computed {:?}",
                self.alphas,
                res.alphas()
            ));
        }
        Ok((s, res))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MechanismJson {
    pub design: DesignJson,
    pub epsilon: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolution: Option<ResolutionJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pu: Option<Vec<[u64; 2]>>,
}

/// Either form a [`MechanismJson`] can describe.
#[derive(Debug, Clone)]
pub enum ParsedMechanism<F> {
    Plain(BlockDesignMechanism<F>),
    Decomposed(DecomposedMechanism<F>),
}

impl<F: Scalar> ParsedMechanism<F> {
    pub fn base(&self) -> &BlockDesignMechanism<F> {
        match self {
            ParsedMechanism::Plain(m) => m,
            ParsedMechanism::Decomposed(d) => d.mechanism(),
        }
    }
}

impl MechanismJson {
    pub fn plain<F: Scalar>(mech: &BlockDesignMechanism<F>) -> Self {
        MechanismJson {
            design: DesignJson::from(mech.design()),
            epsilon: mech.epsilon().as_f64(),
            resolution: None,
            pu: None,
        }
    }

    pub fn decomposed<F: Scalar>(dec: &DecomposedMechanism<F>) -> Self {
        MechanismJson {
            resolution: Some(ResolutionJson::new(None, dec.resolution())),
            pu: Some(dec.pu().iter().map(|r| [*r.numer(), *r.denom()]).collect()),
            ..Self::plain(dec.mechanism())
        }
    }

    pub fn to_mechanism<F: Scalar>(&self) -> Result<ParsedMechanism<F>> {
        let mech = BlockDesignMechanism::new(self.design.to_design()?, F::of(self.epsilon))?;
        let Some(res_json) = &self.resolution else {
            if self.pu.is_some() {
                return arg("pu given without a resolution");
            }
            return Ok(ParsedMechanism::Plain(mech));
        };
        let (_, res) = res_json.to_resolution(Some(mech.design()))?;
        let dec = decompose(&mech, &res)?;
        if let Some(pu) = &self.pu {
            let stated: Vec<Ratio<u64>> = pu
                .iter()
                .map(|&[n, d]| {
                    if d == 0 {
                        arg("pu has a zero denominator")
                    } else {
                        Ok(Ratio::new(n, d))
                    }
                })
                .collect::<Result<_>>()?;
            if stated != dec.pu() {
                return arg("stated pu does not match the resolution");
            }
        }
        Ok(ParsedMechanism::Decomposed(dec))
    }
}

/// Simulation report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub estimate: Vec<f64>,
    #[serde(rename = "empiricalMSE")]
    pub empirical_mse: f64,
    #[serde(rename = "stdErr")]
    pub std_err: f64,
    #[serde(rename = "closedForm")]
    pub closed_form: f64,
    #[serde(rename = "commCostBits")]
    pub comm_cost_bits: f64,
    pub n: u64,
    pub trials: usize,
    pub seed: u64,
}

impl<F: Scalar> From<&crate::estimation::EstimateReport<F>> for ReportJson {
    fn from(r: &crate::estimation::EstimateReport<F>) -> Self {
        ReportJson {
            estimate: r.estimate.iter().map(|x| x.as_f64()).collect(),
            empirical_mse: r.empirical_mse.as_f64(),
            std_err: r.std_err.as_f64(),
            closed_form: r.closed_form_loss.as_f64(),
            comm_cost_bits: r.comm_cost_bits,
            n: r.n,
            trials: r.trials,
            seed: r.seed,
        }
    }
}

/// PUT summary: `k*`, the optimal set, and the minimum cost in bits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PutJson {
    #[serde(rename = "kStar")]
    pub k_star: usize,
    #[serde(rename = "kOpt")]
    pub k_opt: Vec<usize>,
    #[serde(rename = "minCostBits")]
    pub min_cost_bits: f64,
}

impl<F: Scalar> From<&crate::analysis::PutBoundary<F>> for PutJson {
    fn from(p: &crate::analysis::PutBoundary<F>) -> Self {
        PutJson {
            k_star: p.k_star,
            k_opt: p.k_opt.clone(),
            min_cost_bits: p.min_cost_bits,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{affine_geometry_design, complete_design};
    use crate::resolutions::cyclic_shift_resolution;

    #[test]
    fn design_wire_format() {
        let d = complete_design(4, 2).unwrap();
        let text = serde_json::to_string(&DesignJson::from(&d)).unwrap();
        assert_eq!(text, r#"{"v":4,"blocks":[[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]]}"#);
        let back: DesignJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_design().unwrap(), d);
    }

    #[test]
    fn groups_round_trip() {
        let d = affine_geometry_design(2, 1, 3).unwrap();
        let json = DesignJson::from(&d);
        assert_eq!(json.groups.as_ref().unwrap().len(), 4);
        assert!(json
            .groups
            .as_ref()
            .unwrap()
            .iter()
            .flatten()
            .all(|&j| (1..=12).contains(&j)));
        assert_eq!(json.to_design().unwrap(), d);
    }

    #[test]
    fn zero_index_rejected() {
        let bad = DesignJson {
            v: 3,
            blocks: vec![vec![0, 1]],
            groups: None,
        };
        assert!(bad.to_design().is_err());
        assert!(serde_json::from_str::<DesignJson>(r#"{"v":2,"blocks":[[1]],"extra":1}"#).is_err());
    }

    #[test]
    fn resolution_round_trip_and_alpha_check() {
        let (d, r) = cyclic_shift_resolution(4, 2).unwrap();
        let json = ResolutionJson::new(Some(&d), &r);
        let text = serde_json::to_string(&json).unwrap();
        assert!(text.ends_with(r#""classes":[[1,4,6,3],[2,5]],"alphas":[2,1]}"#));
        let parsed: ResolutionJson = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed.to_resolution(None).unwrap(), (d, r));
        let mut wrong = parsed.clone();
        wrong.alphas = vec![1, 2];
        assert!(wrong.to_resolution(None).is_err());
        let mut bad = parsed;
        bad.classes = vec![vec![1, 2, 3, 4], vec![5, 6]];
        assert!(bad.to_resolution(None).is_err());
    }

    #[test]
    fn decomposed_mechanism_round_trip() {
        let (d, r) = cyclic_shift_resolution(4, 2).unwrap();
        let mech = BlockDesignMechanism::new(d, 2f64.ln()).unwrap();
        let dec = decompose(&mech, &r).unwrap();
        let json = MechanismJson::decomposed(&dec);
        let text = serde_json::to_string(&json).unwrap();
        assert!(text.ends_with(r#""pu":[[2,3],[1,3]]}"#));
        let parsed: MechanismJson = serde_json::from_str(&text).unwrap();
        match parsed.to_mechanism::<f64>().unwrap() {
            ParsedMechanism::Decomposed(back) => assert_eq!(back.pu(), dec.pu()),
            ParsedMechanism::Plain(_) => panic!("lost the resolution"),
        }
        let mut wrong = parsed;
        wrong.pu = Some(vec![[1, 2], [1, 2]]);
        assert!(wrong.to_mechanism::<f64>().is_err());
    }

    #[test]
    fn put_key_order() {
        let p = PutJson {
            k_star: 2,
            k_opt: vec![2],
            min_cost_bits: 1.0,
        };
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"kStar":2,"kOpt":[2],"minCostBits":1.0}"#
        );
    }
}
