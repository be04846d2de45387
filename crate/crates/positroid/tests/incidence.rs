mod common;

use positroid::matchings::is_matching;
use positroid::{Incidence, LabelMode, StrandDiagram, Stream};

#[test]
fn wedge_matrices_are_mutually_inverse() {
    for name in common::GRAPH_FIXTURES {
        let g = common::graph(name);
        let sd = StrandDiagram::new(&g);
        for stream in [Stream::Down, Stream::Up] {
            let inc = Incidence::new(&g, &sd, stream).unwrap();
            assert_eq!(inc.b.iter().sum::<i64>() as usize, g.num_edges(), "{name}");
            assert!(inc.inverse_identity_holds(), "{name} {stream:?}");
        }
    }
}

#[test]
fn extremal_matchings_realize_face_labels() {
    for name in common::GRAPH_FIXTURES {
        let g = common::graph(name);
        let sd = StrandDiagram::new(&g);
        for (stream, mode) in [(Stream::Down, LabelMode::Source), (Stream::Up, LabelMode::Target)] {
            let inc = Incidence::new(&g, &sd, stream).unwrap();
            let labels = sd.face_labels(&g, mode).unwrap();
            for f in 0..g.faces().len() {
                let m = inc.extremal_matching(&g, f);
                assert!(is_matching(&g, &m.edges), "{name} {stream:?} face {}", g.faces()[f].id);
                assert_eq!(m.boundary, labels[f], "{name} {stream:?} face {}", g.faces()[f].id);
                let ex = inc.face_exponents(&m);
                for (f2, &x) in ex.iter().enumerate() {
                    assert_eq!(x, i64::from(f2 == f), "{name} {stream:?}");
                }
            }
        }
    }
}
