//! Seeded verification of the commutative diagram relating the boundary
//! measurement, the twists and the face Pluecker maps.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;
use crate::incidence::Stream;
use crate::linalg::{matrix_from_pluecker, TwistSide};
use crate::measure::{IdMap, PlabicModel, WeightSampler};
use crate::rational::{fmt_q, Q};
use crate::strands::LabelMode;
use crate::subset::KSubset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckItem {
    pub check: String,
    pub trial: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl CheckItem {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Number of random boundaries checked against the Laurent formula per trial.
pub const LAURENT_SAMPLES: usize = 3;

fn faces_json(m: &PlabicModel, x: &[Q]) -> Value {
    serde_json::to_value(IdMap::from_face_vec(&m.graph, x)).expect("serializable")
}

/// Runs `trials` seeded trials of the four checks: right square, left square,
/// inversion up to gauge, and the Laurent formula at random boundaries.
pub fn verify_diagram(m: &PlabicModel, seed: u64, trials: usize) -> Vec<CheckItem> {
    let g = &m.graph;
    let mut sampler = WeightSampler::new(seed);
    let bases: Vec<KSubset> = m.matchable_boundaries().into_iter().collect();
    let mut out = Vec::new();
    for trial in 0..trials {
        let z = sampler.weights(g.num_edges());
        let picks: Vec<KSubset> = (0..LAURENT_SAMPLES).map(|_| bases[sampler.index(bases.len())]).collect();
        let zjson = serde_json::to_value(IdMap::from_edge_vec(g, &z)).expect("serializable");
        let results = run_trial(m, &z, &picks);
        for (check, r) in ["right-square", "left-square", "inversion", "laurent"].into_iter().zip(results) {
            let (status, witness) = match r {
                Ok(None) => (Status::Pass, None),
                Ok(Some(detail)) => (Status::Fail, Some(json!({"weights": zjson, "detail": detail}))),
                Err(e) => (Status::Fail, Some(json!({"weights": zjson, "error": e.to_string()}))),
            };
            out.push(CheckItem { check: check.to_string(), trial, status, witness });
        }
    }
    out
}

type Outcome = Result<Option<Value>>;

fn run_trial(m: &PlabicModel, z: &[Q], picks: &[KSubset]) -> Vec<Outcome> {
    let p = m.measure(z);
    let a = match matrix_from_pluecker(&p) {
        Ok(a) => a,
        Err(e) => return (0..4).map(|_| Err(e.clone())).collect(),
    };
    let right = a.twist(TwistSide::Right).map(|t| t.pluecker());
    let left = a.twist(TwistSide::Left).map(|t| t.pluecker());

    let square = |tw: &Result<crate::linalg::PlueckerVector>, stream: Stream, mode: LabelMode| -> Outcome {
        let tw = tw.as_ref().map_err(Clone::clone)?;
        let lhs = m.monomial_map(z, stream);
        let rhs = m.face_pluecker(tw, mode)?;
        Ok((lhs != rhs).then(|| json!({"monomial": faces_json(m, &lhs), "face_pluecker": faces_json(m, &rhs)})))
    };
    let right_sq = square(&right, Stream::Down, LabelMode::Source);
    let left_sq = square(&left, Stream::Up, LabelMode::Target);

    let inversion = (|| -> Outcome {
        let tw = right.as_ref().map_err(Clone::clone)?;
        let x = m.face_pluecker(tw, LabelMode::Source)?;
        let back = m.boundary_partial(&x, Stream::Down);
        if let Some(bad) = m.same_matching_monomials(z, &back) {
            return Ok(Some(json!({"stream": "down", "matching": bad.ids(&m.graph)})));
        }
        let tw = left.as_ref().map_err(Clone::clone)?;
        let x = m.face_pluecker(tw, LabelMode::Target)?;
        let back = m.boundary_partial(&x, Stream::Up);
        Ok(m.same_matching_monomials(z, &back)
            .map(|bad| json!({"stream": "up", "matching": bad.ids(&m.graph)})))
    })();

    let laurent = (|| -> Outcome {
        let tw = left.as_ref().map_err(Clone::clone)?;
        for &j in picks {
            let formula = m.evaluate_laurent(j, &p)?;
            let direct = tw.get(&j);
            if formula != direct {
                return Ok(Some(json!({
                    "J": j.members(),
                    "formula": fmt_q(&formula),
                    "direct": fmt_q(&direct),
                })));
            }
        }
        Ok(None)
    })();

    vec![right_sq, left_sq, inversion, laurent]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::square4_raw;

    #[test]
    fn square4_passes() {
        let m = PlabicModel::new(square4_raw().validate().unwrap()).unwrap();
        let report = verify_diagram(&m, 1, 3);
        assert_eq!(report.len(), 12);
        for item in &report {
            assert!(item.passed(), "{item:?}");
        }
    }
}
