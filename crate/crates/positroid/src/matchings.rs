//! Matchings with boundary tracking, partition functions and the positroid
//! of a graph.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Color, PlabicGraph};
use crate::linalg::PlueckerVector;
use crate::perm::{necklace_from_bases, positroid_from_necklace, Direction, Positroid};
use crate::rational::Q;
use crate::subset::KSubset;

/// A set of edges covering every internal vertex exactly once.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    pub edges: BTreeSet<usize>,
    pub boundary: KSubset,
}

#[derive(Serialize)]
struct MatchingJson {
    edges: Vec<String>,
    boundary: Vec<usize>,
}

impl Matching {
    pub fn from_edges(g: &PlabicGraph, edges: BTreeSet<usize>) -> Self {
        let boundary = boundary_of(g, &edges);
        Matching { edges, boundary }
    }

    /// Parses a list of edge ids and checks the covering condition.
    pub fn from_ids<S: AsRef<str>>(g: &PlabicGraph, ids: &[S]) -> Result<Self> {
        let mut edges = BTreeSet::new();
        for id in ids {
            let e = g
                .edge_by_id(id.as_ref())
                .ok_or_else(|| Error::Malformed(format!("unknown edge {}", id.as_ref())))?;
            edges.insert(e);
        }
        let m = Matching::from_edges(g, edges);
        if !is_matching(g, &m.edges) {
            return Err(Error::Precondition("edge set is not a matching".into()));
        }
        Ok(m)
    }

    pub fn contains(&self, e: usize) -> bool {
        self.edges.contains(&e)
    }

    /// Sorted edge ids.
    pub fn ids(&self, g: &PlabicGraph) -> Vec<String> {
        let mut v: Vec<String> = self.edges.iter().map(|&e| g.edge_id(e).to_string()).collect();
        v.sort();
        v
    }

    pub fn to_json(&self, g: &PlabicGraph) -> serde_json::Value {
        serde_json::to_value(MatchingJson { edges: self.ids(g), boundary: self.boundary.members() })
            .expect("serializable")
    }

    /// Product of the weights of the matched edges.
    pub fn weight(&self, z: &[Q]) -> Q {
        self.edges.iter().fold(Q::from_integer(1.into()), |acc, &e| acc * &z[e])
    }
}

/// {i : leg used and white} union {i : leg unused and black}.
pub fn boundary_of(g: &PlabicGraph, edges: &BTreeSet<usize>) -> KSubset {
    let mut s = KSubset::empty();
    for i in 1..=g.n() {
        let leg = g.leg(i);
        let v = g.other_end(leg, i - 1);
        let used = edges.contains(&leg);
        match (g.color(v), used) {
            (Color::White, true) | (Color::Black, false) => s = s.insert(i),
            _ => {}
        }
    }
    s
}

pub fn is_matching(g: &PlabicGraph, edges: &BTreeSet<usize>) -> bool {
    let mut cover = vec![0usize; g.num_nodes()];
    for &e in edges {
        for v in g.edge_ends(e) {
            cover[v] += 1;
        }
    }
    (0..g.n()).all(|i| cover[i] <= 1) && (g.n()..g.num_nodes()).all(|v| cover[v] == 1)
}

/// All matchings, optionally only those with the given boundary, sorted by
/// their sorted lists of edge ids.
pub fn enumerate_matchings(g: &PlabicGraph, filter: Option<KSubset>) -> Vec<Matching> {
    let n = g.n();
    let nodes = g.num_nodes();
    let mut covered = vec![false; nodes];
    let mut chosen: Vec<usize> = Vec::new();
    // With a filter the use of each leg is determined.
    let mut leg_allowed = vec![true; g.num_edges()];
    if let Some(f) = filter {
        for i in 1..=n {
            let leg = g.leg(i);
            let v = g.other_end(leg, i - 1);
            let used = match g.color(v) {
                Color::White => f.contains(i),
                Color::Black => !f.contains(i),
            };
            if used {
                if covered[v] {
                    return Vec::new();
                }
                covered[v] = true;
                covered[i - 1] = true;
                chosen.push(leg);
            }
            leg_allowed[leg] = false;
        }
    }
    let mut out = Vec::new();
    search(g, &mut covered, &mut chosen, &leg_allowed, &mut out);
    let mut ms: Vec<(Vec<String>, Matching)> = out
        .into_iter()
        .map(|edges| {
            let m = Matching::from_edges(g, edges);
            (m.ids(g), m)
        })
        .filter(|(_, m)| filter.is_none_or(|f| m.boundary == f))
        .collect();
    ms.sort();
    ms.into_iter().map(|(_, m)| m).collect()
}

fn options(g: &PlabicGraph, v: usize, covered: &[bool], leg_allowed: &[bool]) -> Vec<usize> {
    g.incident_edges(v)
        .into_iter()
        .filter(|&e| {
            let w = g.other_end(e, v);
            !covered[w] && (!g.is_leg(e) || leg_allowed[e])
        })
        .collect()
}

fn search(
    g: &PlabicGraph,
    covered: &mut [bool],
    chosen: &mut Vec<usize>,
    leg_allowed: &[bool],
    out: &mut Vec<BTreeSet<usize>>,
) {
    // Branch on the uncovered internal vertex with the fewest options.
    let mut best: Option<(usize, Vec<usize>)> = None;
    for v in g.n()..g.num_nodes() {
        if covered[v] {
            continue;
        }
        let opts = options(g, v, covered, leg_allowed);
        if opts.is_empty() {
            return;
        }
        if best.as_ref().is_none_or(|(_, b)| opts.len() < b.len()) {
            let done = opts.len() == 1;
            best = Some((v, opts));
            if done {
                break;
            }
        }
    }
    let Some((v, opts)) = best else {
        out.push(chosen.iter().copied().collect());
        return;
    };
    for e in opts {
        let w = g.other_end(e, v);
        covered[v] = true;
        covered[w] = true;
        chosen.push(e);
        search(g, covered, chosen, leg_allowed, out);
        chosen.pop();
        covered[v] = false;
        covered[w] = false;
    }
}

/// Exact partition functions: the matchings of the graph grouped by boundary.
#[derive(Clone, Debug)]
pub struct PartitionFunction {
    pub n: usize,
    pub k: usize,
    pub by_boundary: BTreeMap<KSubset, Vec<Matching>>,
}

impl PartitionFunction {
    pub fn new(g: &PlabicGraph) -> Result<Self> {
        let all = enumerate_matchings(g, None);
        if all.is_empty() {
            return Err(Error::NoMatchings);
        }
        let k = all[0].boundary.len();
        let mut by_boundary: BTreeMap<KSubset, Vec<Matching>> = BTreeMap::new();
        for m in all {
            by_boundary.entry(m.boundary).or_default().push(m);
        }
        Ok(PartitionFunction { n: g.n(), k, by_boundary })
    }

    pub fn matchings(&self) -> impl Iterator<Item = &Matching> {
        self.by_boundary.values().flatten()
    }

    pub fn count(&self) -> usize {
        self.by_boundary.values().map(Vec::len).sum()
    }

    pub fn bases(&self) -> BTreeSet<KSubset> {
        self.by_boundary.keys().copied().collect()
    }

    /// Evaluates every D_I at the edge weights `z` (indexed by edge).
    pub fn evaluate(&self, z: &[Q]) -> PlueckerVector {
        let vals = self
            .by_boundary
            .iter()
            .map(|(s, ms)| (*s, ms.iter().map(|m| m.weight(z)).sum::<Q>()));
        PlueckerVector::new(self.n, self.k, vals).expect("boundaries are k-subsets")
    }
}

/// The set of matchable boundaries, checked against the positroid cut out by
/// its own necklace.
pub fn graph_positroid(g: &PlabicGraph) -> Result<Positroid> {
    let pf = PartitionFunction::new(g)?;
    let bases = pf.bases();
    let nk = necklace_from_bases(&bases, g.n(), Direction::Forward)?;
    let p = positroid_from_necklace(&nk);
    if p.bases != bases {
        return Err(Error::Precondition(
            "matchable boundaries are not the positroid of their necklace".into(),
        ));
    }
    Ok(p)
}

/// Whether some matching has boundary `boundary`, decided by fixing the legs
/// and searching for a perfect matching of the remaining internal vertices
/// with augmenting paths. Much cheaper than enumeration on large graphs.
pub fn is_matchable(g: &PlabicGraph, boundary: KSubset) -> bool {
    let n = g.n();
    let mut covered = vec![false; g.num_nodes()];
    for i in 1..=n {
        let leg = g.leg(i);
        let u = g.other_end(leg, i - 1);
        let used = boundary.contains(i) == (g.color(u) == Color::White);
        if used {
            if covered[u] {
                return false;
            }
            covered[u] = true;
        }
    }
    let free = |c: Color| (n..g.num_nodes()).filter(|&v| !covered[v] && g.color(v) == c).collect::<Vec<_>>();
    let whites = free(Color::White);
    let blacks = free(Color::Black);
    if whites.len() != blacks.len() {
        return false;
    }
    let mut partner: BTreeMap<usize, usize> = BTreeMap::new();
    fn augment(
        g: &PlabicGraph,
        w: usize,
        covered: &[bool],
        seen: &mut BTreeSet<usize>,
        partner: &mut BTreeMap<usize, usize>,
    ) -> bool {
        for e in g.incident_edges(w) {
            let b = g.other_end(e, w);
            if g.is_boundary(b) || covered[b] || !seen.insert(b) {
                continue;
            }
            let next = partner.get(&b).copied();
            if next.map_or(true, |w2| augment(g, w2, covered, seen, partner)) {
                partner.insert(b, w);
                return true;
            }
        }
        false
    }
    whites
        .iter()
        .all(|&w| augment(g, w, &covered, &mut BTreeSet::new(), &mut partner))
}

/// Matchable boundaries found subset by subset with `is_matchable`.
pub fn matchable_boundaries(g: &PlabicGraph) -> BTreeSet<KSubset> {
    let k = g.k();
    if k < 0 || k as usize > g.n() {
        return BTreeSet::new();
    }
    crate::subset::k_subsets(g.n(), k as usize)
        .into_iter()
        .filter(|&s| is_matchable(g, s))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::square4_raw;

    #[test]
    fn matchability_agrees_with_enumeration() {
        let g = square4_raw().validate().unwrap();
        assert_eq!(matchable_boundaries(&g), PartitionFunction::new(&g).unwrap().bases());
    }

    #[test]
    fn square4_matchings() {
        let g = square4_raw().validate().unwrap();
        let all = enumerate_matchings(&g, None);
        assert_eq!(all.len(), 7);
        let mut counts: BTreeMap<String, usize> = BTreeMap::new();
        for m in &all {
            *counts.entry(m.boundary.label(4)).or_default() += 1;
        }
        let want: BTreeMap<String, usize> =
            [("12", 1), ("13", 1), ("14", 1), ("23", 1), ("34", 1), ("24", 2)]
                .into_iter()
                .map(|(s, c)| (s.to_string(), c))
                .collect();
        assert_eq!(counts, want);
    }

    #[test]
    fn square4_filter() {
        let g = square4_raw().validate().unwrap();
        let f = KSubset::new(4, &[2, 4]).unwrap();
        let ms: Vec<Vec<String>> = enumerate_matchings(&g, Some(f)).iter().map(|m| m.ids(&g)).collect();
        assert_eq!(ms, vec![vec!["v1v2", "v3v4"], vec!["v2v3", "v4v1"]]);
    }

    #[test]
    fn square4_positroid_uniform() {
        let g = square4_raw().validate().unwrap();
        assert_eq!(graph_positroid(&g).unwrap().bases.len(), 6);
    }
}
