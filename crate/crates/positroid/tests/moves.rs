mod common;

use positroid::matchings::graph_positroid;
use positroid::moves::{applicable_moves, apply_moves};
use positroid::{apply_move, verify_diagram, IdMap, Move, PartitionFunction, PlabicModel, WeightSampler};

fn first_of_each_kind(moves: Vec<Move>) -> Vec<Move> {
    let mut out: Vec<Move> = Vec::new();
    for m in moves {
        if !out.iter().any(|o| std::mem::discriminant(o) == std::mem::discriminant(&m)) {
            out.push(m);
        }
    }
    out
}

#[test]
fn moves_keep_positroid_and_diagram() {
    for name in ["square4", "schubert36"] {
        let g = common::graph(name);
        let positroid = graph_positroid(&g).unwrap();
        let mut rng = WeightSampler::new(3);
        let z = IdMap::from_edge_vec(&g, &rng.weights(g.num_edges()));
        for mv in first_of_each_kind(applicable_moves(&g)) {
            let out = apply_move(&g, &z, &mv).unwrap();
            assert_eq!(graph_positroid(&out.graph).unwrap(), positroid, "{name} {mv:?}");
            let m = PlabicModel::new(out.graph).unwrap();
            for item in verify_diagram(&m, 4, 1) {
                assert!(item.passed(), "{name} {mv:?}: {}", item.check);
            }
        }
    }
}

#[test]
fn move_script_from_json() {
    let g = common::graph("square4");
    let face = g.faces().iter().find(|f| !f.is_boundary()).unwrap().id.clone();
    let script = format!(
        r#"[{{"kind":"urban-renewal","face":"{face}"}},{{"kind":"boundary-add","boundary":3}},{{"kind":"expand","vertex":"v2","edges":["leg2"]}}]"#
    );
    let moves: Vec<Move> = serde_json::from_str(&script).unwrap();
    let z = IdMap::ones_on_edges(&g);
    let (out, notes) = apply_moves(&g, &z, &moves).unwrap();
    assert_eq!(notes.len(), 1);
    assert_eq!(notes[0].factor, "2");
    let before = PartitionFunction::new(&g).unwrap().evaluate(&z.edge_vec(&g).unwrap());
    let after = PartitionFunction::new(&out.graph).unwrap().evaluate(&out.weights.edge_vec(&out.graph).unwrap());
    assert_eq!(before, after);
}

#[test]
fn urban_renewal_twice_returns_the_measure() {
    let g = common::graph("schubert36");
    let mut rng = WeightSampler::new(8);
    let z = IdMap::from_edge_vec(&g, &rng.weights(g.num_edges()));
    let before = PartitionFunction::new(&g).unwrap().evaluate(&z.edge_vec(&g).unwrap());
    let Some(mv) = applicable_moves(&g).into_iter().find(|m| matches!(m, Move::UrbanRenewal { .. })) else {
        return;
    };
    let once = apply_move(&g, &z, &mv).unwrap();
    let sq = applicable_moves(&once.graph)
        .into_iter()
        .filter(|m| matches!(m, Move::UrbanRenewal { .. }))
        .last()
        .unwrap();
    let twice = apply_move(&once.graph, &once.weights, &sq).unwrap();
    let after = PartitionFunction::new(&twice.graph).unwrap().evaluate(&twice.weights.edge_vec(&twice.graph).unwrap());
    assert_eq!(before, after);
}
