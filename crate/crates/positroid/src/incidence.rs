//! Downstream and upstream wedges, the incidence matrices built from them and
//! the extremal matchings they define.
//!
//! For an edge e let S and T be the two strands through it. The downstream
//! wedge of e is the part of the disc cut off by S and T after they leave e;
//! the upstream wedge is cut off by the parts before they reach e.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::PlabicGraph;
use crate::matchings::Matching;
use crate::strands::StrandDiagram;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stream {
    /// Downstream wedges; extremal matchings are the minimal ones.
    Down,
    /// Upstream wedges; extremal matchings are the maximal ones.
    Up,
}

#[derive(Clone, Debug)]
pub struct Incidence {
    pub stream: Stream,
    pub num_faces: usize,
    pub num_vertices: usize,
    pub num_edges: usize,
    /// u_ef[e][f]: face f lies in the wedge of e.
    pub u_ef: Vec<Vec<bool>>,
    /// u_ev[e][j]: internal vertex j lies in the wedge of e.
    pub u_ev: Vec<Vec<bool>>,
    /// d_fe[f][e]: number of sides of e on face f (legs count once, at the
    /// face directly across the wedge).
    pub d_fe: Vec<Vec<i64>>,
    /// d_ve[j][e]: e is incident to internal vertex j.
    pub d_ve: Vec<Vec<i64>>,
    /// The face directly downstream (or upstream) of each edge.
    pub key_face: Vec<usize>,
    /// b[f] = number of edges whose key face is f.
    pub b: Vec<i64>,
}

impl Incidence {
    pub fn new(g: &PlabicGraph, sd: &StrandDiagram, stream: Stream) -> Result<Self> {
        if let Some(w) = sd.reducedness_witness(g) {
            return Err(Error::NotReduced(w));
        }
        let nf = g.faces().len();
        let nv = g.num_internal();
        let ne = g.num_edges();
        let n = g.n();
        let nr = nf + nv;

        // Region adjacency through corners: (other region, corner index).
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nr];
        for (ci, c) in sd.corners.iter().enumerate() {
            let vr = sd.vertex_region(c.vertex);
            adj[c.face].push((vr, ci));
            adj[vr].push((c.face, ci));
        }

        let mut u_ef = vec![vec![false; nf]; ne];
        let mut u_ev = vec![vec![false; nv]; ne];
        let mut key_face = vec![0; ne];
        for e in 0..ne {
            // S runs u -> w, T runs w -> u; for legs u is the boundary vertex.
            let [a, b] = g.edge_ends(e);
            let (ds, dt) = if g.is_boundary(b) { (2 * e + 1, 2 * e) } else { (2 * e, 2 * e + 1) };
            let (s, ps) = sd.dart_pos[ds].expect("covered");
            let (t, pt) = sd.dart_pos[dt].expect("covered");
            let w = if g.is_boundary(b) { a } else { b };
            let corner_at = |strand: usize, pos: usize| -> Option<usize> {
                sd.strand_corners[strand]
                    .iter()
                    .copied()
                    .find(|&c| sd.corners[c].t == pos && sd.corners[c].vertex == w)
            };
            let start_corner = match stream {
                Stream::Down => corner_at(s, ps),
                Stream::Up => pt.checked_sub(1).and_then(|p| corner_at(t, p)),
            }
            .ok_or_else(|| Error::NotReduced(format!("no corner after edge {}", g.edge_id(e))))?;
            let start = sd.corners[start_corner].face;
            key_face[e] = start;
            let barrier = |ci: usize| -> bool {
                let c = &sd.corners[ci];
                match stream {
                    Stream::Down => (c.strand == s && c.t >= ps) || (c.strand == t && c.t >= pt),
                    Stream::Up => (c.strand == s && c.t < ps) || (c.strand == t && c.t < pt),
                }
            };
            let mut seen = vec![false; nr];
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(r) = queue.pop_front() {
                for &(r2, ci) in &adj[r] {
                    if !seen[r2] && !barrier(ci) {
                        seen[r2] = true;
                        queue.push_back(r2);
                    }
                }
            }
            u_ef[e] = seen[..nf].to_vec();
            u_ev[e] = seen[nf..].to_vec();
        }

        let mut d_fe = vec![vec![0i64; ne]; nf];
        let mut d_ve = vec![vec![0i64; ne]; nv];
        for e in 0..ne {
            if g.is_leg(e) {
                d_fe[key_face[e]][e] = 1;
            } else {
                for d in [2 * e, 2 * e + 1] {
                    if let Some(f) = g.face_of_dart(d) {
                        d_fe[f][e] += 1;
                    }
                }
            }
            for v in g.edge_ends(e) {
                if v >= n {
                    d_ve[v - n][e] = 1;
                }
            }
        }
        let mut b = vec![0i64; nf];
        for &f in &key_face {
            b[f] += 1;
        }
        Ok(Incidence {
            stream,
            num_faces: nf,
            num_vertices: nv,
            num_edges: ne,
            u_ef,
            u_ev,
            d_fe,
            d_ve,
            key_face,
            b,
        })
    }

    /// X = [[1 - B, -dFE], [1, dVE]], of shape (F+V) x (1+E).
    pub fn x_matrix(&self) -> Vec<Vec<i64>> {
        let mut x = Vec::with_capacity(self.num_faces + self.num_vertices);
        for f in 0..self.num_faces {
            let mut row = vec![1 - self.b[f]];
            row.extend(self.d_fe[f].iter().map(|v| -v));
            x.push(row);
        }
        for j in 0..self.num_vertices {
            let mut row = vec![1];
            row.extend(self.d_ve[j].iter().copied());
            x.push(row);
        }
        x
    }

    /// Y = [[1, 1], [-U_EF, -U_EV]], of shape (1+E) x (F+V).
    pub fn y_matrix(&self) -> Vec<Vec<i64>> {
        let mut y = vec![vec![1; self.num_faces + self.num_vertices]];
        for e in 0..self.num_edges {
            let mut row: Vec<i64> = self.u_ef[e].iter().map(|&b| -i64::from(b)).collect();
            row.extend(self.u_ev[e].iter().map(|&b| -i64::from(b)));
            y.push(row);
        }
        y
    }

    /// Whether X and Y are mutually inverse.
    pub fn inverse_identity_holds(&self) -> bool {
        let x = self.x_matrix();
        let y = self.y_matrix();
        is_identity(&int_mul(&x, &y)) && is_identity(&int_mul(&y, &x))
    }

    /// Edges whose wedge contains face f: the extremal matching at f.
    pub fn extremal_matching(&self, g: &PlabicGraph, f: usize) -> Matching {
        let edges: BTreeSet<usize> = (0..self.num_edges).filter(|&e| self.u_ef[e][f]).collect();
        Matching::from_edges(g, edges)
    }

    /// Exponent of face f in the factorization of z^M into extremal monomials.
    pub fn face_exponents(&self, m: &Matching) -> Vec<i64> {
        (0..self.num_faces)
            .map(|f| m.edges.iter().map(|&e| self.d_fe[f][e]).sum::<i64>() - (self.b[f] - 1))
            .collect()
    }

    /// Face-id keyed exponents.
    pub fn face_exponent_map(&self, g: &PlabicGraph, m: &Matching) -> BTreeMap<String, i64> {
        self.face_exponents(m)
            .into_iter()
            .enumerate()
            .map(|(f, x)| (g.faces()[f].id.clone(), x))
            .collect()
    }

    /// Edges e of face f whose key face is f.
    pub fn key_edges(&self, f: usize) -> BTreeSet<usize> {
        (0..self.num_edges).filter(|&e| self.key_face[e] == f).collect()
    }
}

pub fn int_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let inner = b.len();
    let cols = b.first().map(|r| r.len()).unwrap_or(0);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "dimension mismatch");
            (0..cols).map(|j| (0..inner).map(|t| row[t] * b[t][j]).sum()).collect()
        })
        .collect()
}

pub fn is_identity(m: &[Vec<i64>]) -> bool {
    m.iter()
        .enumerate()
        .all(|(i, r)| r.len() == m.len() && r.iter().enumerate().all(|(j, &v)| v == i64::from(i == j)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::square4_raw;
    use crate::strands::LabelMode;

    #[test]
    fn square4_incidence() {
        let g = square4_raw().validate().unwrap();
        let sd = StrandDiagram::new(&g);
        for stream in [Stream::Down, Stream::Up] {
            let inc = Incidence::new(&g, &sd, stream).unwrap();
            assert_eq!(inc.b.iter().sum::<i64>(), 8);
            assert!(inc.inverse_identity_holds(), "{stream:?}");
        }
        let down = Incidence::new(&g, &sd, Stream::Down).unwrap();
        let f = g.faces().iter().position(|f| !f.is_boundary()).unwrap();
        assert_eq!(down.b[f], 2);
        let m = down.extremal_matching(&g, f);
        assert_eq!(m.ids(&g), ["v1v2", "v3v4"]);
        let labels = sd.face_labels(&g, LabelMode::Source).unwrap();
        for face in 0..g.faces().len() {
            let m = down.extremal_matching(&g, face);
            assert_eq!(m.boundary, labels[face]);
            let ex = down.face_exponents(&m);
            for (f2, &x) in ex.iter().enumerate() {
                assert_eq!(x, i64::from(f2 == face));
            }
        }
    }
}
