//! Strands (trips), the trip permutation, reducedness and face labels.
//!
//! A strand runs along darts. Arriving at a white vertex it leaves along the
//! next edge clockwise, at a black vertex along the next edge counterclockwise.
//! The strand diagram cuts the disc into regions: one per face and one per
//! internal vertex. Region f and region v touch at a corner of v, and exactly
//! one strand separates them there.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Color, PlabicGraph};
use crate::perm::BoundedAffinePermutation;
use crate::subset::KSubset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelMode {
    /// Sources of the strands having the face on their left.
    Source,
    /// Targets of the strands having the face on their left.
    Target,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Strand {
    pub source: usize,
    pub target: usize,
    pub darts: Vec<usize>,
}

/// Corner between consecutive edges at an internal vertex, together with the
/// strand that passes it and the index of the dart on which that strand
/// arrives at the vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Corner {
    pub face: usize,
    pub vertex: usize,
    pub strand: usize,
    pub t: usize,
}

#[derive(Clone, Debug)]
pub struct StrandDiagram {
    pub strands: Vec<Strand>,
    /// (strand, position) for every real dart covered by a strand.
    pub dart_pos: Vec<Option<(usize, usize)>>,
    pub corners: Vec<Corner>,
    /// Corner indices per strand, in strand order.
    pub strand_corners: Vec<Vec<usize>>,
    num_faces: usize,
    n: usize,
    perm: BoundedAffinePermutation,
}

impl StrandDiagram {
    pub fn new(g: &PlabicGraph) -> Self {
        let n = g.n();
        let ne = g.num_edges();
        let mut dart_pos = vec![None; 2 * ne];
        let mut strands = Vec::with_capacity(n);
        for a in 1..=n {
            let mut d = g.rotation(a - 1)[1];
            let mut darts = Vec::new();
            loop {
                let idx = strands.len();
                if dart_pos[d].is_some() {
                    // Only possible for malformed embeddings; stop rather than spin.
                    break;
                }
                dart_pos[d] = Some((idx, darts.len()));
                darts.push(d);
                let v = g.head(d);
                if g.is_boundary(v) {
                    break;
                }
                let r = d ^ 1;
                d = match g.color(v) {
                    Color::White => g.cw_next(v, r),
                    Color::Black => g.ccw_next(v, r),
                };
            }
            let target = g.head(*darts.last().expect("strand has a dart")) + 1;
            strands.push(Strand { source: a, target, darts });
        }

        let num_faces = g.faces().len();
        let mut corners = Vec::new();
        let mut strand_corners = vec![Vec::new(); strands.len()];
        for v in n..g.num_nodes() {
            let rot = g.rotation(v);
            for &r in rot {
                let r2 = g.cw_next(v, r);
                let incoming = match g.color(v) {
                    Color::White => r ^ 1,
                    Color::Black => r2 ^ 1,
                };
                let face = g.face_of_dart(r ^ 1).expect("inner dart borders an inner face");
                if let Some((s, t)) = dart_pos[incoming] {
                    strand_corners[s].push(corners.len());
                    corners.push(Corner { face, vertex: v, strand: s, t });
                } else {
                    corners.push(Corner { face, vertex: v, strand: usize::MAX, t: 0 });
                }
            }
        }
        for list in strand_corners.iter_mut() {
            list.sort_by_key(|&c| corners[c].t);
        }

        let values = strands
            .iter()
            .map(|s| {
                let a = s.source as i64;
                let b = s.target as i64;
                if b > a {
                    b
                } else if b < a {
                    b + n as i64
                } else {
                    let v = g.head(s.darts[0]);
                    match g.color(v) {
                        Color::Black => a,
                        Color::White => a + n as i64,
                    }
                }
            })
            .collect();
        let perm = BoundedAffinePermutation::new(values).expect("strand targets form a permutation");
        StrandDiagram { strands, dart_pos, corners, strand_corners, num_faces, n, perm }
    }

    pub fn perm(&self) -> &BoundedAffinePermutation {
        &self.perm
    }

    pub fn num_regions(&self, g: &PlabicGraph) -> usize {
        self.num_faces + g.num_internal()
    }

    /// Region index of an internal vertex node.
    pub fn vertex_region(&self, node: usize) -> usize {
        self.num_faces + node - self.n
    }

    /// A description of the first obstruction to reducedness, if any.
    pub fn reducedness_witness(&self, g: &PlabicGraph) -> Option<String> {
        if let Some(d) = self.dart_pos.iter().position(|p| p.is_none()) {
            return Some(format!("closed strand through edge {}", g.edge_id(d / 2)));
        }
        let ne = g.num_edges();
        for e in 0..ne {
            let (s0, _) = self.dart_pos[2 * e].expect("covered");
            let (s1, _) = self.dart_pos[2 * e + 1].expect("covered");
            if s0 == s1 {
                let lollipop = g.is_leg(e)
                    && g.edge_ends(e).iter().any(|&v| !g.is_boundary(v) && g.degree(v) == 1);
                if !lollipop {
                    return Some(format!(
                        "strand from {} crosses itself at edge {}",
                        self.strands[s0].source,
                        g.edge_id(e)
                    ));
                }
            }
        }
        // For every pair of strands, the shared edges must come in opposite orders.
        let ns = self.strands.len();
        let mut shared: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); ns * ns];
        for e in 0..ne {
            let (s0, t0) = self.dart_pos[2 * e].expect("covered");
            let (s1, t1) = self.dart_pos[2 * e + 1].expect("covered");
            if s0 == s1 {
                continue;
            }
            let (a, ta, b, tb) = if s0 < s1 { (s0, t0, s1, t1) } else { (s1, t1, s0, t0) };
            shared[a * ns + b].push((ta, tb, e));
        }
        for a in 0..ns {
            for b in a + 1..ns {
                let list = &mut shared[a * ns + b];
                list.sort_unstable();
                for w in list.windows(2) {
                    if w[1].1 > w[0].1 {
                        return Some(format!(
                            "strands from {} and {} cross at {} and {} in the same order",
                            self.strands[a].source,
                            self.strands[b].source,
                            g.edge_id(w[0].2),
                            g.edge_id(w[1].2)
                        ));
                    }
                }
            }
        }
        None
    }

    pub fn is_reduced(&self, g: &PlabicGraph) -> bool {
        self.reducedness_witness(g).is_none()
    }

    /// Whether each region lies to the left of strand s. None if the strand
    /// does not split the disc consistently.
    pub fn left_regions(&self, g: &PlabicGraph, s: usize) -> Option<Vec<bool>> {
        let nr = self.num_regions(g);
        let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); nr];
        for c in &self.corners {
            let fr = c.face;
            let vr = self.vertex_region(c.vertex);
            let cross = c.strand == s;
            adj[fr].push((vr, cross));
            adj[vr].push((fr, cross));
        }
        let first = *self.strand_corners[s].first()?;
        let start = self.corners[first].face;
        let mut parity: Vec<Option<bool>> = vec![None; nr];
        parity[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let pu = parity[u].expect("visited");
            for &(w, cross) in &adj[u] {
                let pw = pu ^ cross;
                match parity[w] {
                    None => {
                        parity[w] = Some(pw);
                        queue.push_back(w);
                    }
                    Some(x) if x != pw => return None,
                    _ => {}
                }
            }
        }
        let flip = g.color(self.corners[first].vertex) == Color::Black;
        parity.into_iter().map(|p| p.map(|x| x == flip)).collect()
    }

    /// Face labels in face order.
    pub fn face_labels(&self, g: &PlabicGraph, mode: LabelMode) -> Result<Vec<KSubset>> {
        if let Some(w) = self.reducedness_witness(g) {
            return Err(Error::NotReduced(w));
        }
        let nf = g.faces().len();
        let mut labels = vec![KSubset::empty(); nf];
        for (s, strand) in self.strands.iter().enumerate() {
            let left = self
                .left_regions(g, s)
                .ok_or_else(|| Error::NotReduced(format!("strand from {} has no consistent sides", strand.source)))?;
            let tag = match mode {
                LabelMode::Source => strand.source,
                LabelMode::Target => strand.target,
            };
            for f in 0..nf {
                if left[f] {
                    labels[f] = labels[f].insert(tag);
                }
            }
        }
        Ok(labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::square4_raw;
    use crate::graph::{Edge, End};

    #[test]
    fn square4_strands() {
        let g = square4_raw().validate().unwrap();
        let sd = StrandDiagram::new(&g);
        assert_eq!(sd.perm().values(), &[3, 4, 5, 6]);
        let path: Vec<&str> = sd.strands[0].darts.iter().map(|d| g.edge_id(d / 2)).collect();
        assert_eq!(path, ["leg1", "v1v2", "v2v3", "leg3"]);
        assert!(sd.is_reduced(&g));
    }

    #[test]
    fn square4_labels() {
        let g = square4_raw().validate().unwrap();
        let sd = StrandDiagram::new(&g);
        let src = sd.face_labels(&g, LabelMode::Source).unwrap();
        let internal = g.faces().iter().position(|f| !f.is_boundary()).unwrap();
        assert_eq!(src[internal].members(), vec![2, 4]);
        for (f, face) in g.faces().iter().enumerate() {
            assert_eq!(src[f].len(), 2, "face {}", face.id);
        }
    }

    #[test]
    fn doubled_edge_not_reduced() {
        let mut raw = square4_raw();
        raw.edges.push(Edge {
            id: "v1v2b".into(),
            ends: [End::Internal("v1".into()), End::Internal("v2".into())],
        });
        // Parallel copy drawn just outside v1v2 (towards the boundary face).
        raw.rotation.get_mut("v1").unwrap().insert(1, "v1v2b".into());
        raw.rotation.get_mut("v2").unwrap().insert(1, "v1v2b".into());
        let g = raw.validate().unwrap();
        let sd = StrandDiagram::new(&g);
        assert!(sd.reducedness_witness(&g).is_some());
    }
}
