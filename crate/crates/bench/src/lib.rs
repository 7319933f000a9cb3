//! Fixtures shared by the criterion benches.

use twist_core::dynamics::scramble;
use twist_core::{presets, PuzzleState, TwistGraph};

/// The 15+4 board and a deterministic scramble of it.
pub fn fifteen_plus_four_scrambled(steps: usize, seed: u64) -> (TwistGraph, PuzzleState) {
    let g = presets::fifteen_plus_four();
    let s = scramble(&g, &PuzzleState::solved(&g, 0), steps, seed).expect("scramble");
    (g, s)
}
