//! Exact combinatorics and linear algebra for positroid varieties.
//!
//! The crate covers plabic graphs (faces, strands, face labels), matchings and
//! their incidence data, the boundary measurement map, the left and right twist
//! automorphisms, graph moves and bridge decompositions. All arithmetic is over
//! exact rationals.

pub mod bridges;
pub mod error;
pub mod graph;
pub mod incidence;
pub mod io;
pub mod linalg;
pub mod matchings;
pub mod measure;
pub mod moves;
pub mod perm;
pub mod rational;
pub mod strands;
pub mod subset;
pub mod swivel;
pub mod verify;

pub use bridges::{add_bridge, add_lollipop, synthesize, BridgeSide, BridgeStep, Synthesis};
pub use error::{Error, Result};
pub use graph::{Color, Edge, End, Face, PlabicGraph, RawGraph, Vertex};
pub use incidence::{Incidence, Stream};
pub use linalg::{PlueckerVector, RationalMatrix, TwistSide};
pub use matchings::{Matching, PartitionFunction};
pub use measure::{EdgeWeighting, FaceVector, GaugeElement, IdMap, PlabicModel, WeightSampler};
pub use moves::{apply_move, Move, MoveOutcome};
pub use perm::{BoundedAffinePermutation, Direction, GrassmannNecklace, Positroid};
pub use rational::Q;
pub use strands::{LabelMode, StrandDiagram};
pub use subset::KSubset;
pub use swivel::MatchingPoset;
pub use verify::{verify_diagram, CheckItem, Status};
