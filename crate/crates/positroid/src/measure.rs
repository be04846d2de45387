//! Edge weightings, the boundary measurement map, face Pluecker coordinates,
//! the monomial maps and their inverses, monodromy and the Laurent formula
//! for twisted Pluecker coordinates.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::PlabicGraph;
use crate::incidence::{Incidence, Stream};
use crate::linalg::PlueckerVector;
use crate::matchings::{enumerate_matchings, Matching, PartitionFunction};
use crate::rational::{fmt_q, parse_q, pow, Q};
use crate::strands::{LabelMode, StrandDiagram};
use crate::subset::KSubset;

/// A rational value per id, serialized as `{id: "p/q"}`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IdMap(pub BTreeMap<String, Q>);

impl Serialize for IdMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m: BTreeMap<&String, String> = self.0.iter().map(|(k, v)| (k, fmt_q(v))).collect();
        m.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IdMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = BTreeMap::<String, String>::deserialize(d)?;
        m.into_iter()
            .map(|(k, v)| parse_q(&v).map(|q| (k, q)))
            .collect::<Result<BTreeMap<_, _>>>()
            .map(IdMap)
            .map_err(serde::de::Error::custom)
    }
}

/// Nonzero weight on every edge.
pub type EdgeWeighting = IdMap;
/// Value on every face.
pub type FaceVector = IdMap;
/// Nonzero scalar on every internal vertex.
pub type GaugeElement = IdMap;

impl IdMap {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Malformed(format!("weighting JSON: {e}")))
    }

    /// Edge-indexed weights; every edge must be present and nonzero.
    pub fn edge_vec(&self, g: &PlabicGraph) -> Result<Vec<Q>> {
        if let Some(extra) = self.0.keys().find(|k| g.edge_by_id(k).is_none()) {
            return Err(Error::Malformed(format!("weight for unknown edge {extra}")));
        }
        (0..g.num_edges())
            .map(|e| {
                let id = g.edge_id(e);
                let v = self
                    .0
                    .get(id)
                    .ok_or_else(|| Error::Malformed(format!("missing weight for edge {id}")))?;
                if v.is_zero() {
                    return Err(Error::Malformed(format!("zero weight on edge {id}")));
                }
                Ok(v.clone())
            })
            .collect()
    }

    pub fn from_edge_vec(g: &PlabicGraph, z: &[Q]) -> Self {
        IdMap((0..g.num_edges()).map(|e| (g.edge_id(e).to_string(), z[e].clone())).collect())
    }

    pub fn from_face_vec(g: &PlabicGraph, x: &[Q]) -> Self {
        IdMap(g.faces().iter().zip(x).map(|(f, v)| (f.id.clone(), v.clone())).collect())
    }

    pub fn face_vec(&self, g: &PlabicGraph) -> Result<Vec<Q>> {
        g.faces()
            .iter()
            .map(|f| {
                self.0
                    .get(&f.id)
                    .cloned()
                    .ok_or_else(|| Error::Malformed(format!("missing value for face {}", f.id)))
            })
            .collect()
    }

    pub fn ones_on_edges(g: &PlabicGraph) -> Self {
        Self::from_edge_vec(g, &vec![Q::one(); g.num_edges()])
    }
}

/// z'_e = t_u t_w z_e, boundary endpoints contributing 1.
pub fn gauge_apply(g: &PlabicGraph, z: &[Q], t: &GaugeElement) -> Result<Vec<Q>> {
    let mut tv = vec![Q::one(); g.num_nodes()];
    for (id, v) in &t.0 {
        let node = g
            .vertex_by_id(id)
            .ok_or_else(|| Error::Malformed(format!("gauge on unknown vertex {id}")))?;
        if v.is_zero() {
            return Err(Error::Malformed(format!("zero gauge at {id}")));
        }
        tv[node] = v.clone();
    }
    Ok((0..g.num_edges())
        .map(|e| {
            let [a, b] = g.edge_ends(e);
            &z[e] * &tv[a] * &tv[b]
        })
        .collect())
}

/// Seeded sampler: each rational has numerator and denominator uniform in
/// [1, 1000], drawn in that order from ChaCha8 seeded by `seed`.
pub struct WeightSampler {
    rng: ChaCha8Rng,
}

impl WeightSampler {
    pub fn new(seed: u64) -> Self {
        WeightSampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn next_q(&mut self) -> Q {
        let num: i64 = self.rng.gen_range(1..=1000);
        let den: i64 = self.rng.gen_range(1..=1000);
        Q::new(num.into(), den.into())
    }

    pub fn weights(&mut self, len: usize) -> Vec<Q> {
        (0..len).map(|_| self.next_q()).collect()
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.rng.gen_range(0..len)
    }
}

/// One term of the Laurent expansion of a twisted Pluecker coordinate:
/// a matching and the exponent of each face's Pluecker coordinate.
#[derive(Clone, Debug, Serialize)]
pub struct LaurentTerm {
    pub matching: Vec<String>,
    pub exponents: BTreeMap<String, i64>,
}

/// A reduced graph with everything derived from it that the measurement
/// pipeline needs.
#[derive(Clone, Debug)]
pub struct PlabicModel {
    pub graph: PlabicGraph,
    pub strands: StrandDiagram,
    pub partition: PartitionFunction,
    pub down: Incidence,
    pub up: Incidence,
    pub source_labels: Vec<KSubset>,
    pub target_labels: Vec<KSubset>,
    gauge_vertex: usize,
}

impl PlabicModel {
    pub fn new(graph: PlabicGraph) -> Result<Self> {
        let strands = StrandDiagram::new(&graph);
        let down = Incidence::new(&graph, &strands, Stream::Down)?;
        let up = Incidence::new(&graph, &strands, Stream::Up)?;
        let source_labels = strands.face_labels(&graph, LabelMode::Source)?;
        let target_labels = strands.face_labels(&graph, LabelMode::Target)?;
        let partition = PartitionFunction::new(&graph)?;
        let gauge_vertex = least_internal_vertex(&graph);
        Ok(PlabicModel {
            graph,
            strands,
            partition,
            down,
            up,
            source_labels,
            target_labels,
            gauge_vertex,
        })
    }

    pub fn incidence(&self, stream: Stream) -> &Incidence {
        match stream {
            Stream::Down => &self.down,
            Stream::Up => &self.up,
        }
    }

    pub fn labels(&self, mode: LabelMode) -> &[KSubset] {
        match mode {
            LabelMode::Source => &self.source_labels,
            LabelMode::Target => &self.target_labels,
        }
    }

    pub fn measure(&self, z: &[Q]) -> PlueckerVector {
        self.partition.evaluate(z)
    }

    /// p at the face labels; every coordinate must be nonzero.
    pub fn face_pluecker(&self, p: &PlueckerVector, mode: LabelMode) -> Result<Vec<Q>> {
        self.labels(mode)
            .iter()
            .enumerate()
            .map(|(f, s)| {
                let v = p.get(s);
                if v.is_zero() {
                    Err(Error::ZeroFaceCoordinate(self.graph.faces()[f].id.clone()))
                } else {
                    Ok(v)
                }
            })
            .collect()
    }

    /// Extremal matching at every face (minimal for Down, maximal for Up).
    pub fn extremal(&self, stream: Stream) -> Vec<Matching> {
        let inc = self.incidence(stream);
        (0..self.graph.faces().len()).map(|f| inc.extremal_matching(&self.graph, f)).collect()
    }

    /// f-coordinate 1 / z^{M(f)}.
    pub fn monomial_map(&self, z: &[Q], stream: Stream) -> Vec<Q> {
        self.extremal(stream).iter().map(|m| m.weight(z).recip()).collect()
    }

    /// Inverse of the monomial map up to gauge: z_e = prod_f x_f^{-d_fe},
    /// then the gauge prod_f x_f^{B_f - 1} at the least internal vertex.
    pub fn boundary_partial(&self, x: &[Q], stream: Stream) -> Vec<Q> {
        let g = &self.graph;
        let inc = self.incidence(stream);
        let mut z: Vec<Q> = (0..g.num_edges())
            .map(|e| {
                (0..x.len()).fold(Q::one(), |acc, f| acc * pow(&x[f], -inc.d_fe[f][e]))
            })
            .collect();
        let factor = (0..x.len()).fold(Q::one(), |acc, f| acc * pow(&x[f], inc.b[f] - 1));
        for e in g.incident_edges(self.gauge_vertex) {
            z[e] *= &factor;
        }
        z
    }

    /// Alternating product of edge weights around an internal face, starting
    /// with exponent -1 at the least-id edge directly downstream of it.
    pub fn monodromy(&self, z: &[Q], f: usize) -> Result<Q> {
        let g = &self.graph;
        let face = &g.faces()[f];
        if face.is_boundary() {
            return Err(Error::Precondition(format!("{} is a boundary face", face.id)));
        }
        let edges: Vec<usize> = face.walk.iter().map(|d| d / 2).collect();
        let start = edges
            .iter()
            .enumerate()
            .filter(|(_, &e)| self.down.key_face[e] == f)
            .min_by_key(|(_, &e)| g.edge_id(e))
            .map(|(i, _)| i)
            .ok_or_else(|| Error::Precondition(format!("no edge directly downstream of {}", face.id)))?;
        let mut acc = Q::one();
        for (i, &e) in edges.iter().enumerate() {
            if (i + edges.len() - start) % 2 == 0 {
                acc /= &z[e];
            } else {
                acc *= &z[e];
            }
        }
        Ok(acc)
    }

    /// Terms of Delta_J after the left twist, one per matching with boundary J.
    pub fn laurent_terms(&self, j: KSubset) -> Vec<LaurentTerm> {
        let g = &self.graph;
        enumerate_matchings(g, Some(j))
            .iter()
            .map(|m| {
                let exponents = self
                    .down
                    .face_exponents(m)
                    .into_iter()
                    .enumerate()
                    .map(|(f, x)| (g.faces()[f].id.clone(), -x))
                    .collect();
                LaurentTerm { matching: m.ids(g), exponents }
            })
            .collect()
    }

    /// Evaluates the Laurent expression at p (through its source-label values).
    pub fn evaluate_laurent(&self, j: KSubset, p: &PlueckerVector) -> Result<Q> {
        let x = self.face_pluecker(p, LabelMode::Source)?;
        let mut total = Q::zero();
        for m in enumerate_matchings(&self.graph, Some(j)) {
            let ex = self.down.face_exponents(&m);
            total += ex.iter().zip(&x).fold(Q::one(), |acc, (&e, v)| acc * pow(v, -e));
        }
        Ok(total)
    }

    /// Whether two weightings give the same monomial on every matching.
    pub fn same_matching_monomials(&self, z: &[Q], w: &[Q]) -> Option<Matching> {
        self.partition.matchings().find(|m| m.weight(z) != m.weight(w)).cloned()
    }

    pub fn matchable_boundaries(&self) -> BTreeSet<KSubset> {
        self.partition.bases()
    }
}

/// Node of the internal vertex whose id sorts first.
pub fn least_internal_vertex(g: &PlabicGraph) -> usize {
    (g.n()..g.num_nodes())
        .min_by(|&a, &b| g.node_name(a).cmp(&g.node_name(b)))
        .expect("graph has internal vertices")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::square4_raw;
    use crate::rational::{frac, q};

    fn model() -> PlabicModel {
        PlabicModel::new(square4_raw().validate().unwrap()).unwrap()
    }

    fn sub(s: &[usize]) -> KSubset {
        KSubset::new(4, s).unwrap()
    }

    #[test]
    fn square4_measure() {
        let m = model();
        let g = &m.graph;
        let p = m.measure(&vec![q(1); 8]);
        let vals: Vec<Q> = p.iter().map(|(_, v)| v.clone()).collect();
        assert_eq!(vals, vec![q(1), q(1), q(1), q(1), q(2), q(1)]);
        let mut z = vec![q(1); 8];
        z[g.edge_by_id("v1v2").unwrap()] = frac(3, 5);
        let p = m.measure(&z);
        assert_eq!(p.get(&sub(&[2, 4])), frac(8, 5));
        assert_eq!(p.get(&sub(&[2, 3])), frac(3, 5));
        assert_eq!(p.get(&sub(&[1, 2])), q(1));
    }

    #[test]
    fn gauge_scales_measure() {
        let m = model();
        let g = &m.graph;
        let z = vec![q(1); 8];
        let t = IdMap([("v1".to_string(), q(2))].into_iter().collect());
        let z2 = gauge_apply(g, &z, &t).unwrap();
        assert_eq!(m.measure(&z2), m.measure(&z).scale(&q(2)));
        let t = IdMap([("v1".to_string(), q(3)), ("v3".to_string(), frac(1, 3))].into_iter().collect());
        assert_eq!(m.measure(&gauge_apply(g, &z, &t).unwrap()), m.measure(&z));
    }

    #[test]
    fn monodromy_square4() {
        let m = model();
        let g = &m.graph;
        let f = g.faces().iter().position(|f| !f.is_boundary()).unwrap();
        let mut z = vec![q(1); 8];
        assert_eq!(m.monodromy(&z, f).unwrap(), q(1));
        z[g.edge_by_id("v1v2").unwrap()] = frac(3, 5);
        let a = m.monodromy(&z, f).unwrap();
        assert!(a == frac(3, 5) || a == frac(5, 3));
        let t = IdMap([("v2".to_string(), q(7))].into_iter().collect());
        assert_eq!(m.monodromy(&gauge_apply(g, &z, &t).unwrap(), f).unwrap(), a);
        assert!(m.monodromy(&z, 0).is_err());
    }

    #[test]
    fn boundary_partial_inverts_monomial_map() {
        let m = model();
        let mut s = WeightSampler::new(3);
        for stream in [Stream::Down, Stream::Up] {
            let x = s.weights(m.graph.faces().len());
            let z = m.boundary_partial(&x, stream);
            assert_eq!(m.monomial_map(&z, stream), x);
        }
        let ones = vec![q(1); 5];
        assert_eq!(m.boundary_partial(&ones, Stream::Down), vec![q(1); 8]);
    }

    #[test]
    fn sampler_is_deterministic() {
        let a = WeightSampler::new(42).weights(5);
        let b = WeightSampler::new(42).weights(5);
        assert_eq!(a, b);
        assert!(a.iter().all(|v| *v > Q::zero()));
    }
}
