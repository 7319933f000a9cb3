//! Rotating-tile sliding puzzles on twist graphs: group arithmetic, board
//! model, closed-form solvability, brute-force enumeration and solving.

pub mod classify;
pub mod dynamics;
pub mod error;
pub mod exceptional;
pub mod graph;
pub mod group;
pub mod oracle;
pub mod presets;
pub mod solver;
pub mod topology;

pub use classify::{
    classify, classify_default, group_order, is_solvable, GroupCase, GroupDescriptor, Verdict,
    DEFAULT_CAP,
};
pub use dynamics::{
    apply_move, element_of_path, legal_moves, scramble, transport_blank_home, MoveSequence,
    PuzzleState,
};
pub use error::{Error, Result};
pub use graph::{
    gauge_transform, is_bipartite, is_twist_bipartite, normalize_and_reduce, parse_twist_graph,
    validate, Gauge, Step, TwistGraph,
};
pub use group::{gs_closure, gs_inverse, gs_multiply, gs_project, GroupElement};
pub use oracle::{enumerate_reachable, verify_classifier, ReachableSet, VerifyReport};
pub use solver::{solve, verify_solution, SolveOutcome};
pub use topology::{
    fundamental_generators, is_phi_surjective, phi_gamma, rotation_kernel_generators, ClosedPath,
    CycleVector,
};
