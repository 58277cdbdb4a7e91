//! Normal and misère Sprague-Grundy analysis of finite acyclic impartial games.

pub mod classify;
pub mod error;
pub mod fixtures;
pub mod game;
pub mod grundy;
pub mod random;
pub mod suites;
pub mod sums;
pub mod zoo;

pub use classify::{classify, find_witness, ClassPredicate, ClassReport, Witness};
pub use error::{Error, Result};
pub use game::{
    enumerate_subgame, EnumerateOptions, Game, GameDef, NodeId, Position, ReachableGraph,
};
pub use grundy::{sg_labels, Label, LabeledGraph};
