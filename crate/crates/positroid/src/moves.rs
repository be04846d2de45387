//! Weighted graph moves that preserve the boundary measurement exactly.

use std::collections::{BTreeMap, HashSet};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{fresh_id, Color, Edge, End, PlabicGraph, RawGraph, Vertex};
use crate::measure::{least_internal_vertex, IdMap};
use crate::rational::{fmt_q, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Move {
    /// Merge the two neighbours of a degree-2 internal vertex.
    Contract { vertex: String },
    /// Move a block of consecutive edges of `vertex` to a new vertex of the
    /// same color, joined through a new degree-2 vertex.
    Expand { vertex: String, edges: Vec<String> },
    /// Remove a degree-2 vertex sitting on a boundary leg.
    BoundaryRemove { vertex: String },
    /// Insert a degree-2 vertex on the leg at a boundary vertex.
    BoundaryAdd { boundary: usize },
    /// Square move at a four-sided internal face.
    UrbanRenewal { face: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct GaugeNote {
    pub vertex: String,
    pub factor: String,
}

#[derive(Clone, Debug)]
pub struct MoveOutcome {
    pub graph: PlabicGraph,
    pub weights: IdMap,
    /// Scalar applied at one vertex so that the measurement agrees exactly.
    pub gauge: Option<GaugeNote>,
}

fn na(msg: impl Into<String>) -> Error {
    Error::MoveNotApplicable(msg.into())
}

struct Editor {
    raw: RawGraph,
    z: BTreeMap<String, Q>,
    new_ids: HashSet<String>,
}

impl Editor {
    fn new(g: &PlabicGraph, z: &IdMap) -> Result<Self> {
        let vec = z.edge_vec(g)?;
        let z = (0..g.num_edges()).map(|e| (g.edge_id(e).to_string(), vec[e].clone())).collect();
        let mut raw = g.raw().clone();
        raw.expect = None;
        Ok(Editor { raw, z, new_ids: HashSet::new() })
    }

    fn fresh_vertex(&mut self) -> String {
        let taken: HashSet<String> = self.raw.internal.iter().map(|v| v.id.clone()).collect();
        let id = fresh_id("v", |s| taken.contains(s) || self.new_ids.contains(s));
        self.new_ids.insert(id.clone());
        id
    }

    fn fresh_edge(&mut self) -> String {
        let taken: HashSet<String> = self.raw.edges.iter().map(|e| e.id.clone()).collect();
        let id = fresh_id("e", |s| taken.contains(s) || self.new_ids.contains(s));
        self.new_ids.insert(id.clone());
        id
    }

    fn remove_edge(&mut self, id: &str) {
        self.raw.edges.retain(|e| e.id != id);
        self.z.remove(id);
    }

    fn remove_vertex(&mut self, id: &str) {
        self.raw.internal.retain(|v| v.id != id);
        self.raw.rotation.remove(id);
    }

    fn add_vertex(&mut self, id: &str, color: Color, rotation: Vec<String>) {
        self.raw.internal.push(Vertex { id: id.to_string(), color });
        self.raw.rotation.insert(id.to_string(), rotation);
    }

    fn add_edge(&mut self, id: &str, a: End, b: End, w: Q) {
        self.raw.edges.push(Edge { id: id.to_string(), ends: [a, b] });
        self.z.insert(id.to_string(), w);
    }

    fn edge_mut(&mut self, id: &str) -> &mut Edge {
        self.raw.edges.iter_mut().find(|e| e.id == id).expect("edge exists")
    }

    fn scale(&mut self, id: &str, f: &Q) {
        *self.z.get_mut(id).expect("weighted edge") *= f;
    }

    fn finish(self, gauge: Option<(String, Q)>) -> Result<MoveOutcome> {
        let graph = self.raw.validate()?;
        let mut z = self.z;
        let note = match gauge {
            Some((v, f)) => {
                let node = graph.vertex_by_id(&v).expect("gauge vertex exists");
                for e in graph.incident_edges(node) {
                    *z.get_mut(graph.edge_id(e)).expect("weighted") *= &f;
                }
                Some(GaugeNote { vertex: v, factor: fmt_q(&f) })
            }
            None => None,
        };
        Ok(MoveOutcome { graph, weights: IdMap(z), gauge: note })
    }
}

fn internal(g: &PlabicGraph, id: &str) -> Result<usize> {
    g.vertex_by_id(id).ok_or_else(|| na(format!("unknown internal vertex {id}")))
}

fn end_of(g: &PlabicGraph, node: usize) -> End {
    if g.is_boundary(node) {
        End::Boundary(node + 1)
    } else {
        End::Internal(g.node_name(node))
    }
}

pub fn apply_move(g: &PlabicGraph, z: &IdMap, m: &Move) -> Result<MoveOutcome> {
    match m {
        Move::Contract { vertex } => contract(g, z, vertex),
        Move::Expand { vertex, edges } => expand(g, z, vertex, edges),
        Move::BoundaryRemove { vertex } => boundary_remove(g, z, vertex),
        Move::BoundaryAdd { boundary } => boundary_add(g, z, *boundary),
        Move::UrbanRenewal { face } => urban_renewal(g, z, face),
    }
}

/// Applies a list of moves in order.
pub fn apply_moves(g: &PlabicGraph, z: &IdMap, ms: &[Move]) -> Result<(MoveOutcome, Vec<GaugeNote>)> {
    let mut cur = MoveOutcome { graph: g.clone(), weights: z.clone(), gauge: None };
    let mut notes = Vec::new();
    for m in ms {
        cur = apply_move(&cur.graph, &cur.weights, m)?;
        notes.extend(cur.gauge.clone());
    }
    Ok((cur, notes))
}

fn contract(g: &PlabicGraph, z: &IdMap, vertex: &str) -> Result<MoveOutcome> {
    let b = internal(g, vertex)?;
    let edges = g.incident_edges(b);
    if edges.len() != 2 {
        return Err(na(format!("{vertex} does not have degree 2")));
    }
    let (e_ab, e_cb) = (edges[0], edges[1]);
    let a = g.other_end(e_ab, b);
    let c = g.other_end(e_cb, b);
    if g.is_boundary(a) || g.is_boundary(c) || a == c {
        return Err(na(format!("neighbours of {vertex} must be two distinct internal vertices")));
    }
    if g.incident_edges(a).iter().any(|&e| g.other_end(e, a) == c) {
        return Err(na(format!("neighbours of {vertex} are adjacent")));
    }
    let mut ed = Editor::new(g, z)?;
    let (a_id, c_id) = (g.node_name(a), g.node_name(c));
    let id_ab = g.edge_id(e_ab).to_string();
    let id_cb = g.edge_id(e_cb).to_string();
    let w_ab = ed.z[&id_ab].clone();
    let w_cb = ed.z[&id_cb].clone();
    let c_rot = &g.raw().rotation[&c_id];
    let pos = c_rot.iter().position(|x| *x == id_cb).expect("in rotation");
    let c_after: Vec<String> = (1..c_rot.len()).map(|i| c_rot[(pos + i) % c_rot.len()].clone()).collect();
    let a_rot: Vec<String> = g.raw().rotation[&a_id]
        .iter()
        .flat_map(|x| if *x == id_ab { c_after.clone() } else { vec![x.clone()] })
        .collect();
    for id in g.raw().rotation[&a_id].iter().filter(|x| **x != id_ab) {
        ed.scale(id, &w_cb);
    }
    for id in &c_after {
        ed.scale(id, &w_ab);
        let e = ed.edge_mut(id);
        for end in e.ends.iter_mut() {
            if *end == End::Internal(c_id.clone()) {
                *end = End::Internal(a_id.clone());
            }
        }
    }
    ed.remove_edge(&id_ab);
    ed.remove_edge(&id_cb);
    ed.remove_vertex(vertex);
    ed.remove_vertex(&c_id);
    ed.raw.rotation.insert(a_id, a_rot);
    ed.finish(None)
}

fn expand(g: &PlabicGraph, z: &IdMap, vertex: &str, block: &[String]) -> Result<MoveOutcome> {
    let v = internal(g, vertex)?;
    let rot = g.raw().rotation[vertex].clone();
    let d = rot.len();
    if block.is_empty() || block.len() >= d {
        return Err(na("expansion block must be a nonempty proper subset of the rotation"));
    }
    let start = rot
        .iter()
        .position(|x| *x == block[0])
        .ok_or_else(|| na(format!("{} is not at {vertex}", block[0])))?;
    for (i, id) in block.iter().enumerate() {
        if rot[(start + i) % d] != *id {
            return Err(na("expansion block is not consecutive in clockwise order"));
        }
    }
    let color = g.color(v);
    let mut ed = Editor::new(g, z)?;
    let vp = ed.fresh_vertex();
    let w = ed.fresh_vertex();
    let e_vw = ed.fresh_edge();
    let e_wv = ed.fresh_edge();
    let mut v_rot = Vec::with_capacity(d - block.len() + 1);
    v_rot.push(e_vw.clone());
    for i in block.len()..d {
        v_rot.push(rot[(start + i) % d].clone());
    }
    let mut vp_rot = block.to_vec();
    vp_rot.push(e_wv.clone());
    for id in block {
        let e = ed.edge_mut(id);
        for end in e.ends.iter_mut() {
            if *end == End::Internal(vertex.to_string()) {
                *end = End::Internal(vp.clone());
            }
        }
    }
    ed.raw.rotation.insert(vertex.to_string(), v_rot);
    ed.add_vertex(&vp, color, vp_rot);
    ed.add_vertex(&w, color.flip(), vec![e_vw.clone(), e_wv.clone()]);
    ed.add_edge(&e_vw, End::Internal(vertex.to_string()), End::Internal(w.clone()), Q::one());
    ed.add_edge(&e_wv, End::Internal(w), End::Internal(vp), Q::one());
    ed.finish(None)
}

fn boundary_remove(g: &PlabicGraph, z: &IdMap, vertex: &str) -> Result<MoveOutcome> {
    let x = internal(g, vertex)?;
    let edges = g.incident_edges(x);
    if edges.len() != 2 {
        return Err(na(format!("{vertex} does not have degree 2")));
    }
    let (leg, inner) = match (g.is_leg(edges[0]), g.is_leg(edges[1])) {
        (true, false) => (edges[0], edges[1]),
        (false, true) => (edges[1], edges[0]),
        _ => return Err(na(format!("{vertex} must have exactly one boundary leg"))),
    };
    let i = g.other_end(leg, x);
    let a = g.other_end(inner, x);
    let mut ed = Editor::new(g, z)?;
    let leg_id = g.edge_id(leg).to_string();
    let inner_id = g.edge_id(inner).to_string();
    let c = ed.z[&leg_id].clone();
    for e in g.incident_edges(a) {
        if e != inner {
            ed.scale(g.edge_id(e), &c);
        }
    }
    ed.remove_edge(&leg_id);
    ed.remove_vertex(vertex);
    ed.edge_mut(&inner_id).ends = [end_of(g, i), end_of(g, a)];
    ed.finish(None)
}

fn boundary_add(g: &PlabicGraph, z: &IdMap, i: usize) -> Result<MoveOutcome> {
    if i == 0 || i > g.n() {
        return Err(na(format!("no boundary vertex {i}")));
    }
    let leg = g.leg(i);
    let a = g.other_end(leg, i - 1);
    let mut ed = Editor::new(g, z)?;
    let x = ed.fresh_vertex();
    let new_leg = ed.fresh_edge();
    let leg_id = g.edge_id(leg).to_string();
    ed.edge_mut(&leg_id).ends = [End::Internal(x.clone()), end_of(g, a)];
    ed.add_vertex(&x, g.color(a).flip(), vec![new_leg.clone(), leg_id]);
    ed.add_edge(&new_leg, End::Boundary(i), End::Internal(x), Q::one());
    ed.finish(None)
}

fn urban_renewal(g: &PlabicGraph, z: &IdMap, face: &str) -> Result<MoveOutcome> {
    let f = g.face_index(face).ok_or_else(|| na(format!("unknown face {face}")))?;
    let fc = &g.faces()[f];
    if fc.is_boundary() || fc.walk.len() != 4 {
        return Err(na(format!("{face} is not a four-sided internal face")));
    }
    let darts = fc.walk.clone();
    let xs: Vec<usize> = darts.iter().map(|&d| g.tail(d)).collect();
    let distinct: HashSet<usize> = xs.iter().copied().collect();
    if distinct.len() != 4 || xs.iter().any(|&v| g.is_boundary(v)) {
        return Err(na(format!("{face} does not have four distinct internal vertices")));
    }
    let mut ed = Editor::new(g, z)?;
    let sq: Vec<String> = darts.iter().map(|&d| g.edge_id(d / 2).to_string()).collect();
    let b: Vec<Q> = sq.iter().map(|id| ed.z[id].clone()).collect();
    let delta = &b[0] * &b[2] + &b[1] * &b[3];
    if delta.is_zero() {
        return Err(na("b1*b3 + b2*b4 vanishes"));
    }
    let x_ids: Vec<String> = xs.iter().map(|&v| g.node_name(v)).collect();
    let y_ids: Vec<String> = (0..4).map(|_| ed.fresh_vertex()).collect();
    let spokes: Vec<String> = (0..4).map(|_| ed.fresh_edge()).collect();
    let ring: Vec<String> = (0..4).map(|_| ed.fresh_edge()).collect();
    for i in 0..4 {
        // Square edges x_{i-1}x_i and x_i x_{i+1} are consecutive at x_i.
        let before = &sq[(i + 3) % 4];
        let after = &sq[i];
        let rot = &g.raw().rotation[&x_ids[i]];
        let mut new_rot = Vec::with_capacity(rot.len() - 1);
        for id in rot {
            if id == before {
                continue;
            }
            if id == after {
                new_rot.push(spokes[i].clone());
            } else {
                new_rot.push(id.clone());
            }
        }
        // If the removed pair wrapped around, the spoke still sits between
        // the neighbours of the pair.
        ed.raw.rotation.insert(x_ids[i].clone(), new_rot);
    }
    for id in &sq {
        ed.remove_edge(id);
    }
    for i in 0..4 {
        let color = g.color(xs[i]).flip();
        let prev = ring[(i + 3) % 4].clone();
        let next = ring[i].clone();
        ed.add_vertex(&y_ids[i], color, vec![prev, next, spokes[i].clone()]);
        ed.add_edge(&spokes[i], End::Internal(x_ids[i].clone()), End::Internal(y_ids[i].clone()), Q::one());
    }
    for i in 0..4 {
        let w = &b[(i + 2) % 4] / &delta;
        ed.add_edge(
            &ring[i],
            End::Internal(y_ids[i].clone()),
            End::Internal(y_ids[(i + 1) % 4].clone()),
            w,
        );
    }
    // The gauge vertex is chosen in the new graph.
    let gv = {
        let gg = ed.raw.clone().validate()?;
        gg.node_name(least_internal_vertex(&gg))
    };
    ed.finish(Some((gv, delta)))
}

/// Every move applicable to g. Expansions are listed for all consecutive
/// blocks of size at least one at vertices of degree at least three.
pub fn applicable_moves(g: &PlabicGraph) -> Vec<Move> {
    let mut out = Vec::new();
    for v in g.n()..g.num_nodes() {
        let id = g.node_name(v);
        let edges = g.incident_edges(v);
        if edges.len() == 2 {
            let legs = edges.iter().filter(|&&e| g.is_leg(e)).count();
            if legs == 1 {
                out.push(Move::BoundaryRemove { vertex: id.clone() });
            } else if legs == 0 {
                let a = g.other_end(edges[0], v);
                let c = g.other_end(edges[1], v);
                if a != c && !g.incident_edges(a).iter().any(|&e| g.other_end(e, a) == c) {
                    out.push(Move::Contract { vertex: id.clone() });
                }
            }
        }
        if edges.len() >= 3 {
            let rot = &g.raw().rotation[&id];
            let d = rot.len();
            for start in 0..d {
                for len in 1..d - 1 {
                    let block = (0..len).map(|i| rot[(start + i) % d].clone()).collect();
                    out.push(Move::Expand { vertex: id.clone(), edges: block });
                }
            }
        }
    }
    for i in 1..=g.n() {
        out.push(Move::BoundaryAdd { boundary: i });
    }
    for f in g.faces() {
        if !f.is_boundary() && f.walk.len() == 4 {
            let vs: HashSet<usize> = f.walk.iter().map(|&d| g.tail(d)).collect();
            if vs.len() == 4 && vs.iter().all(|&v| !g.is_boundary(v)) {
                out.push(Move::UrbanRenewal { face: f.id.clone() });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::square4_raw;
    use crate::matchings::PartitionFunction;
    use crate::rational::{frac, q};

    fn measure(g: &PlabicGraph, z: &IdMap) -> crate::linalg::PlueckerVector {
        PartitionFunction::new(g).unwrap().evaluate(&z.edge_vec(g).unwrap())
    }

    #[test]
    fn urban_renewal_square4() {
        let g = square4_raw().validate().unwrap();
        let z = IdMap::ones_on_edges(&g);
        let f = g.faces().iter().find(|f| !f.is_boundary()).unwrap().id.clone();
        let out = apply_move(&g, &z, &Move::UrbanRenewal { face: f }).unwrap();
        assert_eq!(out.graph.num_internal(), 8);
        assert_eq!(measure(&out.graph, &out.weights), measure(&g, &z));
        let gauge = out.gauge.as_ref().unwrap();
        assert_eq!(gauge.factor, "2");
        // Ring edges carry 1/2 before the gauge; only the gauge vertex's edges differ.
        let gv = out.graph.vertex_by_id(&gauge.vertex).unwrap();
        let at_gauge: HashSet<usize> = out.graph.incident_edges(gv).into_iter().collect();
        for e in 0..out.graph.num_edges() {
            let id = out.graph.edge_id(e);
            if id.starts_with('e') && !at_gauge.contains(&e) && out.weights.0[id] != q(1) {
                assert_eq!(out.weights.0[id], frac(1, 2));
            }
        }
    }

    #[test]
    fn boundary_add_then_remove_is_identity() {
        let g = square4_raw().validate().unwrap();
        let mut z = IdMap::ones_on_edges(&g);
        z.0.insert("leg2".into(), frac(3, 7));
        let added = apply_move(&g, &z, &Move::BoundaryAdd { boundary: 2 }).unwrap();
        assert_eq!(measure(&added.graph, &added.weights), measure(&g, &z));
        let back = apply_move(&added.graph, &added.weights, &Move::BoundaryRemove { vertex: "v5".into() }).unwrap();
        assert_eq!(back.weights, z);
        let mut r1 = back.graph.raw().clone();
        let mut r0 = g.raw().clone();
        r1.edges.sort_by(|a, b| a.id.cmp(&b.id));
        r0.edges.sort_by(|a, b| a.id.cmp(&b.id));
        for e in r1.edges.iter_mut().chain(r0.edges.iter_mut()) {
            e.ends.sort_by_key(|x| x.to_string());
        }
        assert_eq!(r1.edges, r0.edges);
        assert_eq!(r1.rotation, r0.rotation);
    }

    #[test]
    fn contraction_weights() {
        let g = square4_raw().validate().unwrap();
        let mut z = IdMap::ones_on_edges(&g);
        z.0.insert("v1v2".into(), q(2));
        let exp = apply_move(
            &g,
            &z,
            &Move::Expand { vertex: "v1".into(), edges: vec!["v1v2".into(), "v4v1".into()] },
        )
        .unwrap();
        assert_eq!(measure(&exp.graph, &exp.weights), measure(&g, &z));
        let back = apply_move(&exp.graph, &exp.weights, &Move::Contract { vertex: "v6".into() }).unwrap();
        assert_eq!(measure(&back.graph, &back.weights), measure(&g, &z));
        assert_eq!(back.graph.num_internal(), 4);
    }

    #[test]
    fn inapplicable() {
        let g = square4_raw().validate().unwrap();
        let z = IdMap::ones_on_edges(&g);
        assert!(matches!(
            apply_move(&g, &z, &Move::Contract { vertex: "v1".into() }),
            Err(Error::MoveNotApplicable(_))
        ));
        assert!(matches!(
            apply_move(&g, &z, &Move::UrbanRenewal { face: "B1".into() }),
            Err(Error::MoveNotApplicable(_))
        ));
    }
}
