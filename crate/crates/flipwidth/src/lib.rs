//! An exact laboratory for radius-r flip-width at desk scale: flipper-game
//! verdicts by attractor fixpoint, exact flip-width, bi-join decompositions
//! with constructive width-2 strategies, induced-obstruction detection, and
//! exhaustive censuses tying the three characterizations of width <= 2
//! together.

pub mod bijoin;
pub mod census;
pub mod export;
pub mod flips;
pub mod graph;
pub mod graph6;
pub mod iso;
pub mod obstructions;
pub mod solver;
pub mod strategy;
pub mod verify;

pub use flips::{apply_flip, enumerate_kflips, flip_pair, FlipSpec, Partition};
pub use graph::{Graph, Radius, Vertex, VertexSet};
pub use graph6::{emit_graph6, parse_graph6};
pub use solver::{flip_width, solve, GameState, GameVerdict};
