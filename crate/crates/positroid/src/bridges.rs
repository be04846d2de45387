//! Lollipops, bridges, and synthesis of a reduced graph for any bounded
//! affine permutation.

use std::collections::{BTreeMap, HashSet};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{fresh_id, Color, Edge, End, PlabicGraph, RawGraph, Vertex};
use crate::measure::IdMap;
use crate::perm::BoundedAffinePermutation;
use crate::rational::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BridgeSide {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepKind {
    BlackLollipop,
    WhiteLollipop,
    LeftBridge,
    RightBridge,
}

/// One insertion in a bridge decomposition. Replaying a list of steps from
/// the empty graph rebuilds the synthesized graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeStep {
    pub kind: StepKind,
    pub position: usize,
}

/// A weighted graph built from lollipops and bridges.
#[derive(Clone, Debug)]
pub struct Synthesis {
    pub graph: PlabicGraph,
    pub weights: IdMap,
    pub steps: Vec<BridgeStep>,
}

fn weights_of(g: &PlabicGraph, z: &IdMap) -> Result<BTreeMap<String, Q>> {
    let v = z.edge_vec(g)?;
    Ok((0..g.num_edges()).map(|e| (g.edge_id(e).to_string(), v[e].clone())).collect())
}

fn taken_ids(raw: &RawGraph) -> HashSet<String> {
    raw.internal.iter().map(|v| v.id.clone()).chain(raw.edges.iter().map(|e| e.id.clone())).collect()
}

fn single_lollipop(color: Color, t: Q) -> Result<(PlabicGraph, IdMap)> {
    let raw = RawGraph {
        n: 1,
        internal: vec![Vertex { id: "v1".into(), color }],
        edges: vec![Edge { id: "e1".into(), ends: [End::Boundary(1), End::Internal("v1".into())] }],
        rotation: [("v1".to_string(), vec!["e1".to_string()])].into_iter().collect(),
        expect: None,
    };
    Ok((raw.validate()?, IdMap([("e1".to_string(), t)].into_iter().collect())))
}

/// Adds a lollipop of the given color at boundary position i (1..=n+1); the
/// old boundary vertices i..n move to i+1..n+1. The lollipop edge has weight t.
/// With `g = None` this builds the one-vertex graph.
pub fn add_lollipop(
    g: Option<(&PlabicGraph, &IdMap)>,
    i: usize,
    color: Color,
    t: Q,
) -> Result<(PlabicGraph, IdMap)> {
    if t.is_zero() {
        return Err(Error::Precondition("lollipop weight must be nonzero".into()));
    }
    let Some((g, z)) = g else {
        if i != 1 {
            return Err(Error::Precondition(format!("lollipop position {i} out of range 1..=1")));
        }
        return single_lollipop(color, t);
    };
    if i == 0 || i > g.n() + 1 {
        return Err(Error::Precondition(format!("lollipop position {i} out of range 1..={}", g.n() + 1)));
    }
    let mut w = weights_of(g, z)?;
    let mut raw = g.raw().clone();
    raw.expect = None;
    for e in raw.edges.iter_mut() {
        for end in e.ends.iter_mut() {
            if let End::Boundary(j) = end {
                if *j >= i {
                    *j += 1;
                }
            }
        }
    }
    let taken = taken_ids(&raw);
    let v = fresh_id("v", |s| taken.contains(s));
    let e = fresh_id("e", |s| taken.contains(s));
    raw.n += 1;
    raw.internal.push(Vertex { id: v.clone(), color });
    raw.rotation.insert(v.clone(), vec![e.clone()]);
    raw.edges.push(Edge { id: e.clone(), ends: [End::Boundary(i), End::Internal(v)] });
    w.insert(e, t);
    Ok((raw.validate()?, IdMap(w)))
}

/// Adds a bridge between boundary vertices i and i+1 (i+1 read mod n). A left
/// bridge puts a black vertex on leg i and a white vertex on leg i+1; a right
/// bridge uses the opposite colors. New vertices that land next to a vertex of
/// their own color are merged into it. The bridge weight is chosen so that
/// the measured point moves by exactly t times the neighbouring coordinate.
pub fn add_bridge(
    g: &PlabicGraph,
    z: &IdMap,
    i: usize,
    side: BridgeSide,
    t: Q,
) -> Result<(PlabicGraph, IdMap)> {
    let n = g.n();
    if n < 2 || i == 0 || i > n {
        return Err(Error::Precondition(format!("bridge position {i} out of range for n={n}")));
    }
    if t.is_zero() {
        return Err(Error::Precondition("bridge weight must be nonzero".into()));
    }
    let j = i % n + 1;
    let sd = crate::strands::StrandDiagram::new(g);
    let pi = sd.perm();
    // At a lollipop the inequality forces the new vertex to share the
    // lollipop's color, so it is merged rather than stranding a leaf.
    let (ii, jj) = (i as i64, i as i64 + 1);
    let legal = match side {
        BridgeSide::Left => pi.inv_at(ii) > pi.inv_at(jj),
        BridgeSide::Right => pi.at(ii) > pi.at(jj),
    };
    if !legal {
        return Err(Error::IllegalBridge(i));
    }
    let (color_i, color_j) = match side {
        BridgeSide::Left => (Color::Black, Color::White),
        BridgeSide::Right => (Color::White, Color::Black),
    };

    let mut w = weights_of(g, z)?;
    let mut raw = g.raw().clone();
    raw.expect = None;
    let mut taken = taken_ids(&raw);
    let mut fresh = |prefix: &str| {
        let id = fresh_id(prefix, |s| taken.contains(s));
        taken.insert(id.clone());
        id
    };
    let bridge = fresh("e");

    // Attaches the bridge near boundary b. `bridge_after_leg` gives the
    // clockwise position of the bridge relative to the leg at the endpoint.
    let mut attach = |raw: &mut RawGraph, w: &mut BTreeMap<String, Q>, b: usize, color: Color, bridge_after_leg: bool| -> (String, Q) {
        let leg = g.leg(b);
        let leg_id = g.edge_id(leg).to_string();
        let u = g.other_end(leg, b - 1);
        let u_id = g.node_name(u);
        if g.color(u) == color {
            let rot = raw.rotation.get_mut(&u_id).expect("internal rotation");
            let p = rot.iter().position(|x| *x == leg_id).expect("leg in rotation");
            rot.insert(if bridge_after_leg { p + 1 } else { p }, bridge.clone());
            (u_id, w[&leg_id].clone())
        } else {
            let x = fresh("v");
            let new_leg = fresh("e");
            raw.edges.iter_mut().find(|e| e.id == leg_id).expect("leg").ends =
                [End::Internal(x.clone()), End::Internal(u_id)];
            raw.edges.push(Edge { id: new_leg.clone(), ends: [End::Boundary(b), End::Internal(x.clone())] });
            let rot = if bridge_after_leg {
                vec![new_leg.clone(), bridge.clone(), leg_id]
            } else {
                vec![new_leg.clone(), leg_id, bridge.clone()]
            };
            raw.internal.push(Vertex { id: x.clone(), color });
            raw.rotation.insert(x.clone(), rot);
            w.insert(new_leg, Q::one());
            (x, Q::one())
        }
    };
    let (a, wa) = attach(&mut raw, &mut w, i, color_i, true);
    let (c, wc) = attach(&mut raw, &mut w, j, color_j, false);
    raw.edges.push(Edge { id: bridge.clone(), ends: [End::Internal(a), End::Internal(c)] });
    w.insert(bridge, t * wa * wc);
    Ok((raw.validate()?, IdMap(w)))
}

/// Removes position i from a bounded affine permutation whose value at i is
/// a fixed point, relabelling the remaining positions in order.
fn remove_fixed_point(rho: &BoundedAffinePermutation, i: usize) -> Result<BoundedAffinePermutation> {
    let n = rho.n() as i64;
    let i = i as i64;
    let shrink = |v: i64| {
        let r = (v - 1).rem_euclid(n) + 1;
        let q = (v - r) / n;
        let r = if r > i { r - 1 } else { r };
        r + q * (n - 1)
    };
    let values = (1..=n).filter(|&a| a != i).map(|a| shrink(rho.at(a))).collect();
    BoundedAffinePermutation::new(values)
}

/// Builds a reduced graph for `rho` with all weights one. Fixed points are
/// removed as lollipops first; otherwise the least i with
/// rho^{-1}(i) < rho^{-1}(i+1) is split off as a left bridge.
pub fn synthesize(rho: &BoundedAffinePermutation) -> Result<Synthesis> {
    let mut steps = Vec::new();
    plan(rho, &mut steps)?;
    steps.reverse();
    replay(&steps)
}

fn plan(rho: &BoundedAffinePermutation, steps: &mut Vec<BridgeStep>) -> Result<()> {
    let n = rho.n();
    if let Some(i) = (1..=n).find(|&i| rho.is_fixed_point(i)) {
        let kind = if rho.at(i as i64) == i as i64 { StepKind::BlackLollipop } else { StepKind::WhiteLollipop };
        steps.push(BridgeStep { kind, position: i });
        if n > 1 {
            plan(&remove_fixed_point(rho, i)?, steps)?;
        }
        return Ok(());
    }
    let i = (1..=n)
        .find(|&i| rho.inv_at(i as i64) < rho.inv_at(i as i64 + 1))
        .expect("some descent of the inverse exists");
    steps.push(BridgeStep { kind: StepKind::LeftBridge, position: i });
    plan(&rho.s_left(i)?, steps)
}

/// Rebuilds a graph from steps, starting from nothing, with unit weights.
pub fn replay(steps: &[BridgeStep]) -> Result<Synthesis> {
    let mut cur: Option<(PlabicGraph, IdMap)> = None;
    for st in steps {
        let next = match st.kind {
            StepKind::BlackLollipop | StepKind::WhiteLollipop => {
                let color = if st.kind == StepKind::BlackLollipop { Color::Black } else { Color::White };
                add_lollipop(cur.as_ref().map(|(g, z)| (g, z)), st.position, color, Q::one())?
            }
            StepKind::LeftBridge | StepKind::RightBridge => {
                let (g, z) = cur.as_ref().ok_or_else(|| Error::Precondition("bridge on an empty graph".into()))?;
                let side = if st.kind == StepKind::LeftBridge { BridgeSide::Left } else { BridgeSide::Right };
                add_bridge(g, z, st.position, side, Q::one())?
            }
        };
        cur = Some(next);
    }
    let (graph, weights) = cur.ok_or_else(|| Error::Precondition("empty step list".into()))?;
    Ok(Synthesis { graph, weights, steps: steps.to_vec() })
}

/// Optional post-pass: a white degree-2 vertex is inserted on every leg whose
/// endpoint is black and not a lollipop, so all such endpoints become white.
pub fn whiten_boundary(g: &PlabicGraph, z: &IdMap) -> Result<(PlabicGraph, IdMap)> {
    let mut cur = (g.clone(), z.clone());
    for i in 1..=g.n() {
        let u = cur.0.other_end(cur.0.leg(i), i - 1);
        if cur.0.color(u) == Color::Black && cur.0.degree(u) > 1 {
            let out = crate::moves::apply_move(&cur.0, &cur.1, &crate::moves::Move::BoundaryAdd { boundary: i })?;
            cur = (out.graph, out.weights);
        }
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matchings::PartitionFunction;
    use crate::rational::{frac, q};
    use crate::strands::StrandDiagram;
    use crate::subset::KSubset;

    fn ks(m: &[usize]) -> KSubset {
        KSubset::new(8, m).unwrap()
    }

    fn perm(s: &str) -> BoundedAffinePermutation {
        BoundedAffinePermutation::parse(s).unwrap()
    }

    fn measure(g: &PlabicGraph, z: &IdMap) -> crate::linalg::PlueckerVector {
        PartitionFunction::new(g).unwrap().evaluate(&z.edge_vec(g).unwrap())
    }

    #[test]
    fn identity_is_black_lollipops() {
        let s = synthesize(&perm("1,2,3")).unwrap();
        assert_eq!(s.graph.num_internal(), 3);
        assert!(s.steps.iter().all(|st| st.kind == StepKind::BlackLollipop));
        assert_eq!(*StrandDiagram::new(&s.graph).perm(), perm("1,2,3"));
    }

    #[test]
    fn bridge_on_two_lollipops() {
        let (g, z) = add_lollipop(None, 1, Color::Black, q(1)).unwrap();
        let (g, z) = add_lollipop(Some((&g, &z)), 2, Color::White, q(1)).unwrap();
        assert_eq!(*StrandDiagram::new(&g).perm(), perm("1,4"));
        let (g2, z2) = add_bridge(&g, &z, 1, BridgeSide::Left, frac(2, 3)).unwrap();
        let sd = StrandDiagram::new(&g2);
        assert_eq!(*sd.perm(), perm("2,3"));
        assert!(sd.is_reduced(&g2));
        let m = measure(&g2, &z2);
        assert_eq!(m.get(&ks(&[2])), q(1));
        assert_eq!(m.get(&ks(&[1])), frac(2, 3));
    }

    #[test]
    fn bridge_coordinate_update() {
        let g0 = synthesize(&perm("3,4,5,6")).unwrap();
        let mut z = g0.weights.clone();
        for (k, v) in z.0.iter_mut().enumerate() {
            *v.1 = q(k as i64 + 2);
        }
        let x = measure(&g0.graph, &z);
        let pi = StrandDiagram::new(&g0.graph).perm().clone();
        for i in 1..=4 {
            for side in [BridgeSide::Left, BridgeSide::Right] {
                let Ok((g1, z1)) = add_bridge(&g0.graph, &z, i, side, frac(5, 7)) else { continue };
                let y = measure(&g1, &z1);
                let expected = match side {
                    BridgeSide::Left => pi.s_left(i).unwrap(),
                    BridgeSide::Right => pi.s_right(i).unwrap(),
                };
                assert_eq!(*StrandDiagram::new(&g1).perm(), expected);
                let j = i % 4 + 1;
                let (from, to) = match side {
                    BridgeSide::Left => (i, j),
                    BridgeSide::Right => (j, i),
                };
                for (set, v) in y.iter() {
                    let mut want = x.get(set);
                    if set.contains(from) && !set.contains(to) {
                        want += frac(5, 7) * x.get(&set.remove(from).insert(to));
                    }
                    assert_eq!(*v, want, "{side:?} bridge at {i}, set {set:?}");
                }
            }
        }
    }

    #[test]
    fn lollipop_coordinates() {
        let s = synthesize(&perm("2,3")).unwrap();
        let x = measure(&s.graph, &s.weights);
        let (g, z) = add_lollipop(Some((&s.graph, &s.weights)), 2, Color::Black, frac(3, 2)).unwrap();
        let y = measure(&g, &z);
        assert_eq!(y.get(&ks(&[1])), frac(3, 2) * x.get(&ks(&[1])));
        assert_eq!(y.get(&ks(&[3])), frac(3, 2) * x.get(&ks(&[2])));
        assert_eq!(y.get(&ks(&[2])), q(0));
    }

    #[test]
    fn schubert_divisor() {
        let s = synthesize(&perm("3,5,6,7,8,10")).unwrap();
        assert_eq!(s.graph.faces().len(), 9);
        assert_eq!(crate::matchings::graph_positroid(&s.graph).unwrap().bases.len(), 19);
        let again = replay(&s.steps).unwrap();
        assert_eq!(again.graph.raw(), s.graph.raw());
    }

    #[test]
    fn whitening_keeps_measure() {
        let s = synthesize(&perm("3,4,5,6")).unwrap();
        let (g, z) = whiten_boundary(&s.graph, &s.weights).unwrap();
        for i in 1..=4 {
            assert_eq!(g.color(g.other_end(g.leg(i), i - 1)), Color::White);
        }
        assert_eq!(measure(&g, &z), measure(&s.graph, &s.weights));
    }
}
