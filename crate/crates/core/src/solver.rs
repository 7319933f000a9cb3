//! Shortest solutions by bidirectional breadth-first search.

use std::collections::HashMap;

use crate::classify::is_solvable;
use crate::dynamics::{apply_move_in_place, MoveSequence, PuzzleState};
use crate::error::{Error, Result};
use crate::graph::{Step, TwistGraph};
use crate::oracle::{StateCodec, StateKey};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Solved(MoveSequence),
    Unsolvable { reason: String },
    CapExceeded { visited: usize },
}

struct Side {
    /// Parent key and the step taken from the parent.
    parent: HashMap<StateKey, Option<(StateKey, Step)>>,
    depth: HashMap<StateKey, usize>,
    frontier: Vec<StateKey>,
    level: usize,
}

impl Side {
    fn new(root: StateKey) -> Self {
        Side {
            parent: HashMap::from([(root.clone(), None)]),
            depth: HashMap::from([(root.clone(), 0)]),
            frontier: vec![root],
            level: 0,
        }
    }

    fn walk(&self, mut key: StateKey) -> Vec<Step> {
        let mut steps = Vec::new();
        while let Some(Some((p, s))) = self.parent.get(&key) {
            steps.push(*s);
            key = p.clone();
        }
        steps
    }
}

/// Solves `s` to its own solved state. Unsolvable states are reported
/// without searching; `cap` bounds the total number of visited states.
pub fn solve(g: &TwistGraph, s: &PuzzleState, cap: usize) -> Result<SolveOutcome> {
    match is_solvable(g, s) {
        Ok(v) if !v.solvable => return Ok(SolveOutcome::Unsolvable { reason: v.reason }),
        Ok(_) | Err(Error::Undecided(_)) => {}
        Err(e) => return Err(e),
    }
    let home = s.home();
    let codec = StateCodec::new(g, home);
    let start = codec.encode(s);
    let goal = codec.encode(&PuzzleState::solved(g, home));
    if start == goal {
        return Ok(SolveOutcome::Solved(MoveSequence {
            start_blank: s.blank(),
            steps: Vec::new(),
        }));
    }
    let mut fwd = Side::new(start);
    let mut bwd = Side::new(goal);
    loop {
        if fwd.frontier.is_empty() || bwd.frontier.is_empty() {
            // one side is closed without meeting the other
            return Ok(SolveOutcome::Unsolvable {
                reason: "solved state is not reachable".into(),
            });
        }
        let forward = fwd.frontier.len() <= bwd.frontier.len();
        let (grow, other) = if forward {
            (&mut fwd, &bwd)
        } else {
            (&mut bwd, &fwd)
        };
        let mut next = Vec::new();
        let mut best: Option<(usize, StateKey)> = None;
        for key in std::mem::take(&mut grow.frontier) {
            let state = codec.decode(&key);
            for step in g.steps_from(state.blank()) {
                let mut t = state.clone();
                apply_move_in_place(g, &mut t, step)?;
                let k = codec.encode(&t);
                if grow.parent.contains_key(&k) {
                    continue;
                }
                grow.parent.insert(k.clone(), Some((key.clone(), step)));
                grow.depth.insert(k.clone(), grow.level + 1);
                if let Some(&d) = other.depth.get(&k) {
                    let total = grow.level + 1 + d;
                    if best.as_ref().is_none_or(|(bt, bk)| (total, &k) < (*bt, bk)) {
                        best = Some((total, k.clone()));
                    }
                }
                next.push(k);
            }
        }
        grow.level += 1;
        grow.frontier = next;
        if let Some((_, meet)) = best {
            let mut steps = fwd.walk(meet.clone());
            steps.reverse();
            steps.extend(bwd.walk(meet).into_iter().map(Step::reversed));
            return Ok(SolveOutcome::Solved(MoveSequence {
                start_blank: s.blank(),
                steps,
            }));
        }
        let visited = fwd.parent.len() + bwd.parent.len();
        if visited > cap {
            return Ok(SolveOutcome::CapExceeded { visited });
        }
    }
}

/// Replays `moves` from `s` and checks that every step is legal and the
/// final board is solved.
pub fn verify_solution(g: &TwistGraph, s: &PuzzleState, moves: &MoveSequence) -> bool {
    if moves.start_blank != s.blank() || s.occupants().len() != g.vertex_count() {
        return false;
    }
    let mut cur = s.clone();
    for &step in &moves.steps {
        if apply_move_in_place(g, &mut cur, step).is_err() {
            return false;
        }
    }
    cur.is_solved()
}
