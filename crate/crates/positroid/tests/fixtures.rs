mod common;

use positroid::{LabelMode, StrandDiagram};

fn sorted(mut v: Vec<String>) -> Vec<String> {
    v.sort();
    v
}

#[test]
fn fixtures_match_their_transcriptions() {
    for name in common::GRAPH_FIXTURES {
        let g = common::graph(name);
        let sd = StrandDiagram::new(&g);
        assert!(sd.is_reduced(&g), "{name}: {:?}", sd.reducedness_witness(&g));
        let Some(expect) = g.expect().cloned() else { continue };
        if let Some(p) = expect.get("perm") {
            let want: Vec<i64> = serde_json::from_value(p.clone()).unwrap();
            assert_eq!(sd.perm().values(), want.as_slice(), "{name}: trip permutation");
        }
        for (key, mode) in [("source", LabelMode::Source), ("target", LabelMode::Target)] {
            if let Some(l) = expect.get(key) {
                let want: Vec<String> = serde_json::from_value(l.clone()).unwrap();
                let got: Vec<String> = sd
                    .face_labels(&g, mode)
                    .unwrap()
                    .iter()
                    .map(|s| s.label(g.n()))
                    .collect();
                assert_eq!(sorted(got), sorted(want), "{name}: {key} labels");
            }
        }
    }
}

#[test]
fn euler_and_label_sizes() {
    for name in common::GRAPH_FIXTURES {
        let g = common::graph(name);
        assert_eq!(g.faces().len() + g.num_internal(), g.num_edges() + 1, "{name}");
        let sd = StrandDiagram::new(&g);
        let k = g.k() as usize;
        assert_eq!(sd.perm().k(), k, "{name}");
        for mode in [LabelMode::Source, LabelMode::Target] {
            for l in sd.face_labels(&g, mode).unwrap() {
                assert_eq!(l.len(), k, "{name}");
            }
        }
    }
}
