mod common;

use positroid::bridges::{add_lollipop, replay, StepKind};
use positroid::matchings::graph_positroid;
use positroid::{
    add_bridge, synthesize, verify_diagram, BoundedAffinePermutation, BridgeSide, BridgeStep, Color, PlabicModel,
    StrandDiagram, Q,
};

fn perm(s: &str) -> BoundedAffinePermutation {
    BoundedAffinePermutation::parse(s).unwrap()
}

#[test]
fn uniform_gr24_matches_square4() {
    let s = synthesize(&perm("3,4,5,6")).unwrap();
    assert_eq!(s.graph.faces().len(), 5);
    assert_eq!(graph_positroid(&s.graph).unwrap(), graph_positroid(&common::graph("square4")).unwrap());
}

#[test]
fn schubert_divisor_matches_fixture() {
    let s = synthesize(&perm("3,5,6,7,8,10")).unwrap();
    assert_eq!(s.graph.faces().len(), 9);
    assert_eq!(graph_positroid(&s.graph).unwrap(), graph_positroid(&common::graph("schubert36")).unwrap());
}

#[test]
fn identity_gives_black_lollipops() {
    for n in 1..=4 {
        let pi = BoundedAffinePermutation::new((1..=n as i64).collect()).unwrap();
        let s = synthesize(&pi).unwrap();
        assert_eq!(s.graph.num_internal(), n);
        assert!((s.graph.n()..s.graph.num_nodes()).all(|v| s.graph.color(v) == Color::Black));
    }
}

#[test]
fn trace_round_trips_through_json() {
    let s = synthesize(&perm("4,3,6,5,7")).unwrap();
    let text = serde_json::to_string(&s.steps).unwrap();
    let steps: Vec<BridgeStep> = serde_json::from_str(&text).unwrap();
    assert_eq!(replay(&steps).unwrap().graph.raw(), s.graph.raw());
    assert!(text.contains("\"left-bridge\""));
}

#[test]
fn legal_bridges_add_a_face() {
    for n in 2..=4 {
        for pi in BoundedAffinePermutation::all(n) {
            let s = synthesize(&pi).unwrap();
            for i in 1..=n {
                for side in [BridgeSide::Left, BridgeSide::Right] {
                    let Ok((g, _)) = add_bridge(&s.graph, &s.weights, i, side, Q::from_integer(2.into())) else {
                        continue;
                    };
                    let sd = StrandDiagram::new(&g);
                    assert!(sd.is_reduced(&g), "{pi:?} {side:?} {i}");
                    // One more face, so the length drops by one.
                    assert_eq!(g.faces().len(), s.graph.faces().len() + 1, "{pi:?} {side:?} {i}");
                    assert_eq!(sd.perm().length() + 1, pi.length(), "{pi:?} {side:?} {i}");
                }
            }
        }
    }
}

#[test]
fn lollipops_keep_the_faces() {
    for pi in BoundedAffinePermutation::all(3) {
        let s = synthesize(&pi).unwrap();
        for i in 1..=4 {
            for color in [Color::Black, Color::White] {
                let (g, _) = add_lollipop(Some((&s.graph, &s.weights)), i, color, Q::from_integer(1.into())).unwrap();
                let rho = StrandDiagram::new(&g).perm().clone();
                assert!(rho.is_fixed_point(i));
                assert_eq!(g.faces().len(), s.graph.faces().len());
                // The face count formula then fixes the change in length.
                let (k, n) = (pi.k(), 3);
                let grow = if color == Color::Black { k } else { n - k };
                assert_eq!(rho.length(), pi.length() + grow);
            }
        }
    }
}

#[test]
fn synthesized_graphs_pass_the_diagram_checks() {
    for p in ["3,4,5,6", "2,4,6,5,8", "3,5,6,7,8,10"] {
        let s = synthesize(&perm(p)).unwrap();
        assert!(s.steps.iter().any(|st| st.kind == StepKind::LeftBridge));
        let m = PlabicModel::new(s.graph).unwrap();
        for item in verify_diagram(&m, 1, 2) {
            assert!(item.passed(), "{p}: {} {:?}", item.check, item.witness);
        }
    }
}
