//! Swivels at internal faces and the poset of matchings with fixed boundary.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::PlabicGraph;
use crate::incidence::{Incidence, Stream};
use crate::matchings::{enumerate_matchings, is_matching, Matching};
use crate::subset::KSubset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SwivelDirection {
    Up,
    Down,
}

/// Edges on the boundary walk of face f.
pub fn face_edges(g: &PlabicGraph, f: usize) -> BTreeSet<usize> {
    g.faces()[f].walk.iter().map(|d| d / 2).collect()
}

/// Swivel at internal face f. Going up, the half of the face's edges whose
/// directly downstream face is f is swapped for the other half.
pub fn swivel(
    g: &PlabicGraph,
    down: &Incidence,
    m: &Matching,
    f: usize,
    dir: SwivelDirection,
) -> Result<Matching> {
    assert_eq!(down.stream, Stream::Down, "swivels are oriented by downstream data");
    let face = &g.faces()[f];
    if face.is_boundary() {
        return Err(Error::SwivelNotApplicable(face.id.clone()));
    }
    let all = face_edges(g, f);
    let low: BTreeSet<usize> = all.iter().copied().filter(|&e| down.key_face[e] == f).collect();
    let high: BTreeSet<usize> = all.difference(&low).copied().collect();
    let (from, to) = match dir {
        SwivelDirection::Up => (&low, &high),
        SwivelDirection::Down => (&high, &low),
    };
    let inside: BTreeSet<usize> = m.edges.intersection(&all).copied().collect();
    if &inside != from {
        return Err(Error::SwivelNotApplicable(face.id.clone()));
    }
    let edges: BTreeSet<usize> = m.edges.difference(from).chain(to.iter()).copied().collect();
    if !is_matching(g, &edges) {
        return Err(Error::SwivelNotApplicable(face.id.clone()));
    }
    Ok(Matching::from_edges(g, edges))
}

#[derive(Clone, Debug, Serialize)]
pub struct Cover {
    pub lower: usize,
    pub upper: usize,
    pub face: String,
}

/// Matchings with a fixed boundary ordered by upward swivels.
#[derive(Clone, Debug)]
pub struct MatchingPoset {
    pub boundary: KSubset,
    pub nodes: Vec<Matching>,
    pub covers: Vec<Cover>,
    /// leq[i][j]: node i lies below node j.
    leq: Vec<Vec<bool>>,
}

impl MatchingPoset {
    pub fn new(g: &PlabicGraph, down: &Incidence, boundary: KSubset) -> Result<Self> {
        let nodes = enumerate_matchings(g, Some(boundary));
        if nodes.is_empty() {
            return Err(Error::Precondition(format!(
                "boundary {} is not matchable",
                boundary.label(g.n())
            )));
        }
        let mut covers = Vec::new();
        for (i, m) in nodes.iter().enumerate() {
            for (f, face) in g.faces().iter().enumerate() {
                if face.is_boundary() {
                    continue;
                }
                if let Ok(up) = swivel(g, down, m, f, SwivelDirection::Up) {
                    let j = nodes.iter().position(|x| x == &up).expect("same boundary");
                    covers.push(Cover { lower: i, upper: j, face: face.id.clone() });
                }
            }
        }
        let len = nodes.len();
        let mut leq = vec![vec![false; len]; len];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for c in &covers {
            leq[c.lower][c.upper] = true;
        }
        for t in 0..len {
            for i in 0..len {
                if leq[i][t] {
                    for j in 0..len {
                        if leq[t][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        Ok(MatchingPoset { boundary, nodes, covers, leq })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    /// No two distinct nodes lie below each other.
    pub fn is_acyclic(&self) -> bool {
        (0..self.len()).all(|i| (0..self.len()).all(|j| i == j || !(self.leq[i][j] && self.leq[j][i])))
    }

    pub fn is_connected(&self) -> bool {
        let len = self.len();
        let mut seen = vec![false; len];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for c in &self.covers {
                for (a, b) in [(c.lower, c.upper), (c.upper, c.lower)] {
                    if a == i && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn unique(&self, pred: impl Fn(usize) -> bool) -> Option<usize> {
        let v: Vec<usize> = (0..self.len()).filter(|&i| pred(i)).collect();
        (v.len() == 1).then(|| v[0])
    }

    pub fn minimum(&self) -> Option<usize> {
        self.unique(|i| (0..self.len()).all(|j| self.leq[i][j]))
    }

    pub fn maximum(&self) -> Option<usize> {
        self.unique(|i| (0..self.len()).all(|j| self.leq[j][i]))
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.len()).filter(|&x| self.leq[x][a] && self.leq[x][b]).collect();
        self.unique(|x| lower.contains(&x) && lower.iter().all(|&y| self.leq[y][x]))
    }

    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.len()).filter(|&x| self.leq[a][x] && self.leq[b][x]).collect();
        self.unique(|x| upper.contains(&x) && upper.iter().all(|&y| self.leq[x][y]))
    }

    /// Acyclic, connected, with extrema and all pairwise meets and joins.
    pub fn is_lattice(&self) -> bool {
        self.is_acyclic()
            && self.is_connected()
            && self.minimum().is_some()
            && self.maximum().is_some()
            && (0..self.len())
                .all(|a| (0..self.len()).all(|b| self.meet(a, b).is_some() && self.join(a, b).is_some()))
    }

    pub fn to_json(&self, g: &PlabicGraph) -> serde_json::Value {
        serde_json::json!({
            "boundary": self.boundary.members(),
            "nodes": self.nodes.iter().map(|m| m.ids(g)).collect::<Vec<_>>(),
            "covers": self.covers,
            "min": self.minimum(),
            "max": self.maximum(),
            "lattice": self.is_lattice(),
        })
    }
}
