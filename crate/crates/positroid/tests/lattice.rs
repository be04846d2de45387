mod common;

use positroid::{Incidence, KSubset, LabelMode, MatchingPoset, PartitionFunction, StrandDiagram, Stream};

#[test]
fn swivel_posets_are_lattices() {
    for name in ["square4", "schubert36", "d4"] {
        let g = common::graph(name);
        let sd = StrandDiagram::new(&g);
        let down = Incidence::new(&g, &sd, Stream::Down).unwrap();
        let up = Incidence::new(&g, &sd, Stream::Up).unwrap();
        let src = sd.face_labels(&g, LabelMode::Source).unwrap();
        let tgt = sd.face_labels(&g, LabelMode::Target).unwrap();
        let pf = PartitionFunction::new(&g).unwrap();
        for i in pf.bases() {
            let p = MatchingPoset::new(&g, &down, i).unwrap();
            assert!(p.is_lattice(), "{name} boundary {}", i.label(g.n()));
            let min = &p.nodes[p.minimum().unwrap()];
            let max = &p.nodes[p.maximum().unwrap()];
            for f in 0..g.faces().len() {
                if src[f] == i {
                    assert_eq!(min, &down.extremal_matching(&g, f), "{name} min at {}", g.faces()[f].id);
                }
                if tgt[f] == i {
                    assert_eq!(max, &up.extremal_matching(&g, f), "{name} max at {}", g.faces()[f].id);
                }
            }
        }
        for (f, face) in g.faces().iter().enumerate() {
            if face.is_boundary() {
                assert_eq!(MatchingPoset::new(&g, &down, src[f]).unwrap().len(), 1, "{name}");
            }
        }
    }
}
// The five reference matchings of the lattice fixture, in its edge letters.
// A reference chain of five matchings on the lattice fixture, in its edge letters.
// Their common boundary in the fixture labelling is 356.
const DRAWN: [&str; 5] = ["adfhopru", "adhklouq", "aehjloqu", "adgkmoqu", "aegjmoqu"];

#[test]
fn schubert_five_element_poset() {
    let g = common::graph("schubert36");
    let sd = StrandDiagram::new(&g);
    let down = Incidence::new(&g, &sd, Stream::Down).unwrap();
    let p = MatchingPoset::new(&g, &down, KSubset::new(6, &[3, 5, 6]).unwrap()).unwrap();
    assert_eq!(p.len(), 5);
    let mut got: Vec<String> = p.nodes.iter().map(|m| m.ids(&g).concat()).collect();
    let mut want: Vec<String> = DRAWN
        .iter()
        .map(|s| {
            let mut c: Vec<char> = s.chars().collect();
            c.sort();
            c.into_iter().collect()
        })
        .collect();
    got.sort();
    want.sort();
    assert_eq!(got, want);
    // The caption's 236 is a boundary-face label here, hence a singleton.
    let p236 = MatchingPoset::new(&g, &down, KSubset::new(6, &[2, 3, 6]).unwrap()).unwrap();
    assert_eq!(p236.len(), 1);
}
