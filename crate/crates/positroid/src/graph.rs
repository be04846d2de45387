//! Plabic graphs: validation of the JSON description, the rotation system
//! extended by boundary arcs, and face tracing.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::MAX_N;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }
}

/// Edge endpoint: a boundary index (JSON integer) or an internal vertex id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum End {
    Boundary(usize),
    Internal(String),
}

impl fmt::Display for End {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            End::Boundary(i) => write!(f, "{i}"),
            End::Internal(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub color: Color,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: String,
    pub ends: [End; 2],
}

/// The graph exactly as written in JSON. Fixtures may carry an `expect`
/// block with self-check data; it is passed through untouched.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RawGraph {
    pub n: usize,
    pub internal: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub rotation: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<serde_json::Value>,
}

impl RawGraph {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Malformed(format!("graph JSON: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serializes")
    }

    pub fn validate(self) -> Result<PlabicGraph> {
        PlabicGraph::new(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub id: String,
    /// Boundary arcs (arc i joins i to i+1) on this face; empty when internal.
    pub arcs: Vec<usize>,
    /// Darts of real edges in walk order (counterclockwise around the face).
    pub walk: Vec<usize>,
}

impl Face {
    pub fn is_boundary(&self) -> bool {
        !self.arcs.is_empty()
    }
}

/// A validated plabic graph.
///
/// Nodes: boundary vertex i is node i-1, internal vertex j is node n+j.
/// Edges 0..E are the real edges; E+i-1 is the boundary arc from i to i+1.
/// Dart 2e runs ends[0] -> ends[1], dart 2e+1 the other way.
#[derive(Clone, Debug)]
pub struct PlabicGraph {
    raw: RawGraph,
    n: usize,
    ends: Vec<[usize; 2]>,
    colors: Vec<Color>,
    /// Outgoing darts around each node, clockwise.
    rot: Vec<Vec<usize>>,
    rot_pos: Vec<usize>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
    faces: Vec<Face>,
    dart_face: Vec<usize>,
}

fn node_of(end: &End, n: usize, vi: &HashMap<String, usize>) -> Option<usize> {
    match end {
        End::Boundary(i) if (1..=n).contains(i) => Some(i - 1),
        End::Boundary(_) => None,
        End::Internal(s) => vi.get(s).map(|j| n + j),
    }
}

impl PlabicGraph {
    pub fn new(raw: RawGraph) -> Result<Self> {
        let n = raw.n;
        let mut errs: Vec<String> = Vec::new();
        if n == 0 || n > MAX_N {
            return Err(Error::InvalidGraph(vec![format!("n={n} outside [1,{MAX_N}]")]));
        }
        let mut vertex_index = HashMap::new();
        for (j, v) in raw.internal.iter().enumerate() {
            if vertex_index.insert(v.id.clone(), j).is_some() {
                errs.push(format!("duplicate vertex id {}", v.id));
            }
        }
        let mut edge_index = HashMap::new();
        for (e, ed) in raw.edges.iter().enumerate() {
            if edge_index.insert(ed.id.clone(), e).is_some() {
                errs.push(format!("duplicate edge id {}", ed.id));
            }
        }
        if !errs.is_empty() {
            return Err(Error::InvalidGraph(errs));
        }
        let nv = n + raw.internal.len();
        let ne = raw.edges.len();
        let mut colors = vec![Color::White; nv];
        for (j, v) in raw.internal.iter().enumerate() {
            colors[n + j] = v.color;
        }
        let mut ends = Vec::with_capacity(ne + n);
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for (e, ed) in raw.edges.iter().enumerate() {
            let a = node_of(&ed.ends[0], n, &vertex_index);
            let b = node_of(&ed.ends[1], n, &vertex_index);
            let (Some(a), Some(b)) = (a, b) else {
                errs.push(format!("edge {} has an unknown endpoint", ed.id));
                ends.push([0, 0]);
                continue;
            };
            if a < n && b < n {
                errs.push(format!("edge {} joins two boundary vertices", ed.id));
            } else if a >= n && b >= n && colors[a] == colors[b] {
                errs.push(format!("non-bipartite edge {} ({}-{})", ed.id, ed.ends[0], ed.ends[1]));
            }
            if a == b {
                errs.push(format!("edge {} is a loop", ed.id));
            }
            incident[a].push(e);
            if a != b {
                incident[b].push(e);
            }
            ends.push([a, b]);
        }
        for i in 0..n {
            if incident[i].len() != 1 {
                errs.push(format!(
                    "boundary vertex {} has degree {} (expected 1)",
                    i + 1,
                    incident[i].len()
                ));
            }
        }
        for (j, v) in raw.internal.iter().enumerate() {
            let node = n + j;
            let deg = incident[node].len();
            if deg == 0 {
                errs.push(format!("isolated vertex {}", v.id));
            } else if deg == 1 {
                let e = incident[node][0];
                let other = if ends[e][0] == node { ends[e][1] } else { ends[e][0] };
                if other >= n {
                    errs.push(format!("interior leaf {}", v.id));
                }
            }
            match raw.rotation.get(&v.id) {
                None => errs.push(format!("vertex {} has no rotation", v.id)),
                Some(list) => {
                    let mut got: Vec<usize> = Vec::new();
                    for id in list {
                        match edge_index.get(id) {
                            Some(&e) => got.push(e),
                            None => errs.push(format!("rotation at {} names unknown edge {id}", v.id)),
                        }
                    }
                    got.sort_unstable();
                    let mut want = incident[node].clone();
                    want.sort_unstable();
                    if got != want {
                        errs.push(format!(
                            "rotation at {} is not a permutation of its incident edges",
                            v.id
                        ));
                    }
                }
            }
        }
        for key in raw.rotation.keys() {
            if !vertex_index.contains_key(key) {
                errs.push(format!("rotation given for unknown vertex {key}"));
            }
        }
        if !errs.is_empty() {
            return Err(Error::InvalidGraph(errs));
        }

        // Components must reach the boundary.
        let mut seen = vec![false; nv];
        let mut queue: VecDeque<usize> = (0..n).collect();
        for i in 0..n {
            seen[i] = true;
        }
        while let Some(u) = queue.pop_front() {
            for &e in &incident[u] {
                for w in ends[e] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        for (j, v) in raw.internal.iter().enumerate() {
            if !seen[n + j] {
                errs.push(format!("vertex {} lies in a component without boundary vertices", v.id));
            }
        }
        if !errs.is_empty() {
            return Err(Error::InvalidGraph(errs));
        }

        for i in 0..n {
            ends.push([i, (i + 1) % n]);
        }
        let mut rot: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for i in 0..n {
            let leg = incident[i][0];
            let leg_out = if ends[leg][0] == i { 2 * leg } else { 2 * leg + 1 };
            let prev = (i + n - 1) % n;
            rot[i] = vec![2 * (ne + i), leg_out, 2 * (ne + prev) + 1];
        }
        for (j, v) in raw.internal.iter().enumerate() {
            let node = n + j;
            rot[node] = raw.rotation[&v.id]
                .iter()
                .map(|id| {
                    let e = edge_index[id];
                    if ends[e][0] == node {
                        2 * e
                    } else {
                        2 * e + 1
                    }
                })
                .collect();
        }
        let ndarts = 2 * (ne + n);
        let mut rot_pos = vec![0; ndarts];
        for list in &rot {
            for (p, &d) in list.iter().enumerate() {
                rot_pos[d] = p;
            }
        }

        let mut g = PlabicGraph {
            raw,
            n,
            ends,
            colors,
            rot,
            rot_pos,
            vertex_index,
            edge_index,
            faces: Vec::new(),
            dart_face: Vec::new(),
        };
        g.trace_faces()?;
        Ok(g)
    }

    fn trace_faces(&mut self) -> Result<()> {
        let n = self.n;
        let ne = self.raw.edges.len();
        let ndarts = 2 * (ne + n);
        let mut cycle_of = vec![usize::MAX; ndarts];
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        for start in 0..ndarts {
            if cycle_of[start] != usize::MAX {
                continue;
            }
            let id = cycles.len();
            let mut cyc = Vec::new();
            let mut d = start;
            loop {
                cycle_of[d] = id;
                cyc.push(d);
                d = self.face_succ(d);
                if d == start {
                    break;
                }
            }
            cycles.push(cyc);
        }
        let outer = cycle_of[2 * ne];
        let mut errs = Vec::new();
        if (0..n).any(|i| cycle_of[2 * (ne + i)] != outer) {
            errs.push("boundary arcs do not bound a single outer face".to_string());
        }
        let v = self.colors.len();
        let e = ne + n;
        if v as i64 - e as i64 + cycles.len() as i64 != 2 {
            errs.push(format!(
                "rotation system is not planar in the disc (V-E+F = {} - {} + {} != 2)",
                v,
                e,
                cycles.len()
            ));
        }
        if !errs.is_empty() {
            return Err(Error::InvalidGraph(errs));
        }

        let mut boundary: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            boundary.entry(cycle_of[2 * (ne + i) + 1]).or_default().push(i + 1);
        }
        let mut order: Vec<(usize, Face)> = Vec::new();
        let mut internal_count = 0;
        let mut dart_face_cycle = vec![usize::MAX; ndarts];
        for (cid, cyc) in cycles.iter().enumerate() {
            if cid == outer {
                continue;
            }
            let walk: Vec<usize> = cyc.iter().copied().filter(|&d| d < 2 * ne).collect();
            let face = match boundary.get(&cid) {
                Some(arcs) => Face { id: format!("B{}", arcs[0]), arcs: arcs.clone(), walk },
                None => {
                    internal_count += 1;
                    Face { id: format!("F{internal_count}"), arcs: Vec::new(), walk }
                }
            };
            let key = if face.is_boundary() { face.arcs[0] } else { n + internal_count };
            order.push((key, face));
            for &d in cyc {
                dart_face_cycle[d] = cid;
            }
        }
        order.sort_by_key(|(k, _)| *k);
        let mut cyc_to_face = HashMap::new();
        for (fi, (_, f)) in order.iter().enumerate() {
            if let Some(&d) = f.walk.first() {
                cyc_to_face.insert(cycle_of[d], fi);
            } else {
                // A face bounded only by arcs cannot occur with n >= 1 legs.
                unreachable!("face without real edges");
            }
        }
        self.dart_face = (0..2 * ne)
            .map(|d| {
                let c = cycle_of[d];
                if c == outer {
                    usize::MAX
                } else {
                    cyc_to_face[&c]
                }
            })
            .collect();
        self.faces = order.into_iter().map(|(_, f)| f).collect();
        Ok(())
    }

    /// Next dart along the face to the left of `d`.
    pub fn face_succ(&self, d: usize) -> usize {
        let r = d ^ 1;
        let w = self.tail(r);
        self.cw_next(w, r)
    }

    pub fn cw_next(&self, node: usize, d: usize) -> usize {
        let list = &self.rot[node];
        list[(self.rot_pos[d] + 1) % list.len()]
    }

    pub fn ccw_next(&self, node: usize, d: usize) -> usize {
        let list = &self.rot[node];
        list[(self.rot_pos[d] + list.len() - 1) % list.len()]
    }

    pub fn tail(&self, d: usize) -> usize {
        self.ends[d / 2][d % 2]
    }

    pub fn head(&self, d: usize) -> usize {
        self.ends[d / 2][1 - d % 2]
    }

    pub fn raw(&self) -> &RawGraph {
        &self.raw
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.raw.edges.len()
    }

    pub fn num_internal(&self) -> usize {
        self.raw.internal.len()
    }

    pub fn num_nodes(&self) -> usize {
        self.colors.len()
    }

    pub fn is_boundary(&self, node: usize) -> bool {
        node < self.n
    }

    pub fn color(&self, node: usize) -> Color {
        self.colors[node]
    }

    pub fn edge_ends(&self, e: usize) -> [usize; 2] {
        self.ends[e]
    }

    pub fn edge_id(&self, e: usize) -> &str {
        &self.raw.edges[e].id
    }

    pub fn edge_by_id(&self, id: &str) -> Option<usize> {
        self.edge_index.get(id).copied()
    }

    pub fn vertex_by_id(&self, id: &str) -> Option<usize> {
        self.vertex_index.get(id).map(|j| self.n + j)
    }

    pub fn node_name(&self, node: usize) -> String {
        if node < self.n {
            (node + 1).to_string()
        } else {
            self.raw.internal[node - self.n].id.clone()
        }
    }

    /// Outgoing darts around a node, clockwise.
    pub fn rotation(&self, node: usize) -> &[usize] {
        &self.rot[node]
    }

    /// Real edges at a node, clockwise.
    pub fn incident_edges(&self, node: usize) -> Vec<usize> {
        let ne = self.num_edges();
        self.rot[node].iter().map(|d| d / 2).filter(|&e| e < ne).collect()
    }

    pub fn degree(&self, node: usize) -> usize {
        self.incident_edges(node).len()
    }

    /// The edge at boundary vertex i (1-based).
    pub fn leg(&self, i: usize) -> usize {
        self.rot[i - 1][1] / 2
    }

    pub fn is_leg(&self, e: usize) -> bool {
        self.ends[e].iter().any(|&v| v < self.n)
    }

    pub fn other_end(&self, e: usize, node: usize) -> usize {
        if self.ends[e][0] == node {
            self.ends[e][1]
        } else {
            self.ends[e][0]
        }
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_index(&self, id: &str) -> Option<usize> {
        self.faces.iter().position(|f| f.id == id)
    }

    /// Face to the left of a real dart, or None for the outer face.
    pub fn face_of_dart(&self, d: usize) -> Option<usize> {
        match self.dart_face[d] {
            usize::MAX => None,
            f => Some(f),
        }
    }

    /// The boundary face between i and i+1.
    pub fn boundary_face(&self, i: usize) -> usize {
        self.faces
            .iter()
            .position(|f| f.arcs.contains(&i))
            .expect("every arc borders a face")
    }

    pub fn count_color(&self, c: Color) -> usize {
        self.raw.internal.iter().filter(|v| v.color == c).count()
    }

    /// k = #white - #black + #(legs ending at a black vertex).
    pub fn k(&self) -> i64 {
        let black_legs = (1..=self.n)
            .filter(|&i| self.color(self.other_end(self.leg(i), i - 1)) == Color::Black)
            .count();
        self.count_color(Color::White) as i64 - self.count_color(Color::Black) as i64
            + black_legs as i64
    }

    pub fn expect(&self) -> Option<&serde_json::Value> {
        self.raw.expect.as_ref()
    }

    /// Graphviz rendering with boundary vertices on a fixed cycle.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph plabic {\n  node [shape=circle, label=\"\"];\n");
        for i in 1..=self.n {
            s.push_str(&format!("  b{i} [shape=plaintext, label=\"{i}\"];\n"));
        }
        for v in &self.raw.internal {
            let fill = match v.color {
                Color::White => "white",
                Color::Black => "black",
            };
            s.push_str(&format!(
                "  \"{}\" [style=filled, fillcolor={fill}, xlabel=\"{}\"];\n",
                v.id, v.id
            ));
        }
        let name = |e: &End| match e {
            End::Boundary(i) => format!("b{i}"),
            End::Internal(id) => format!("\"{id}\""),
        };
        for e in &self.raw.edges {
            s.push_str(&format!(
                "  {} -- {} [label=\"{}\"];\n",
                name(&e.ends[0]),
                name(&e.ends[1]),
                e.id
            ));
        }
        for i in 1..=self.n {
            s.push_str(&format!(
                "  b{i} -- b{} [style=dotted];\n",
                i % self.n + 1
            ));
        }
        s.push_str("}\n");
        s
    }

    /// Unused id of the form `{prefix}{N}` with N as small as possible.
    pub fn fresh_vertex_id(&self, prefix: &str, taken: &HashSet<String>) -> String {
        fresh_id(prefix, |s| self.vertex_index.contains_key(s) || taken.contains(s))
    }

    pub fn fresh_edge_id(&self, prefix: &str, taken: &HashSet<String>) -> String {
        fresh_id(prefix, |s| self.edge_index.contains_key(s) || taken.contains(s))
    }
}

pub fn fresh_id(prefix: &str, used: impl Fn(&str) -> bool) -> String {
    (1..)
        .map(|i| format!("{prefix}{i}"))
        .find(|s| !used(s))
        .expect("infinitely many candidates")
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub fn square4_raw() -> RawGraph {
        RawGraph::from_json(include_str!("../../../fixtures/square4.json")).unwrap()
    }

    #[test]
    fn square4_faces() {
        let g = square4_raw().validate().unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.num_internal(), 4);
        assert_eq!(g.num_edges(), 8);
        assert_eq!(g.faces().len(), 5);
        assert_eq!(g.faces().iter().filter(|f| f.is_boundary()).count(), 4);
        assert_eq!(g.k(), 2);
        let internal = g.faces().iter().find(|f| !f.is_boundary()).unwrap();
        assert_eq!(internal.walk.len(), 4);
    }

    #[test]
    fn lollipop_single_face() {
        let raw = RawGraph {
            n: 1,
            internal: vec![Vertex { id: "w".into(), color: Color::White }],
            edges: vec![Edge { id: "l".into(), ends: [End::Boundary(1), End::Internal("w".into())] }],
            rotation: [("w".to_string(), vec!["l".to_string()])].into_iter().collect(),
            expect: None,
        };
        let g = raw.validate().unwrap();
        assert_eq!(g.faces().len(), 1);
        assert_eq!(g.faces()[0].id, "B1");
    }

    #[test]
    fn rejects_non_bipartite() {
        let mut raw = square4_raw();
        raw.internal[1].color = Color::White;
        match raw.validate() {
            Err(Error::InvalidGraph(v)) => assert!(v.iter().any(|m| m.contains("non-bipartite"))),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_interior_leaf() {
        let mut raw = square4_raw();
        raw.internal.push(Vertex { id: "x".into(), color: Color::Black });
        raw.edges.push(Edge {
            id: "vx".into(),
            ends: [End::Internal("v1".into()), End::Internal("x".into())],
        });
        raw.rotation.get_mut("v1").unwrap().push("vx".into());
        raw.rotation.insert("x".into(), vec!["vx".into()]);
        match raw.validate() {
            Err(Error::InvalidGraph(v)) => assert!(v.iter().any(|m| m.contains("interior leaf"))),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_nonplanar_rotation() {
        let mut raw = square4_raw();
        raw.rotation.insert("v1".into(), vec!["leg1".into(), "v4v1".into(), "v1v2".into()]);
        assert!(matches!(raw.validate(), Err(Error::InvalidGraph(_))));
    }

    #[test]
    fn fresh_ids_skip_used() {
        let g = square4_raw().validate().unwrap();
        assert_eq!(g.fresh_vertex_id("v", &HashSet::new()), "v5");
        assert_eq!(g.fresh_edge_id("e", &HashSet::new()), "e1");
    }
}
