//! Puzzle states and blank-centric moves.
//!
//! A move is the blank crossing an oriented edge from tail to head. The tile
//! that sat at the head slides to the tail and its rotation grows by the
//! traversal's twist, so the single move's effect is `(x(e), σ_e)` with
//! `x(e)` equal to the twist at the tail.

use std::collections::VecDeque;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Gauge, Step, TwistGraph};
use crate::group::{GroupElement, Sites};
use crate::topology::ClosedPath;

pub const STATE_FORMAT: &str = "twiststate/1";

/// A board position. Tiles are named by their home vertex; the blank is the
/// tile whose home is the blank's home.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PuzzleState {
    blank: usize,
    /// `occupant[v]` is the home vertex of the tile at `v`.
    occupant: Vec<usize>,
    /// Rotation of the tile at `v`; always 0 at the blank.
    rot: Vec<u32>,
}

impl PuzzleState {
    pub fn solved(g: &TwistGraph, home: usize) -> Self {
        let n = g.vertex_count();
        PuzzleState {
            blank: home,
            occupant: (0..n).collect(),
            rot: vec![0; n],
        }
    }

    /// Builds a state from per-vertex occupants and rotations, validating it.
    pub fn from_parts(g: &TwistGraph, blank: usize, occupant: Vec<usize>, rot: Vec<u32>) -> Result<Self> {
        let n = g.vertex_count();
        if blank >= n || occupant.len() != n || rot.len() != n {
            return Err(Error::StateMismatch("wrong vertex count".into()));
        }
        let mut seen = vec![false; n];
        for &t in &occupant {
            if t >= n || seen[t] {
                return Err(Error::InvalidState("tiles are not a bijection".into()));
            }
            seen[t] = true;
        }
        if rot[blank] != 0 {
            return Err(Error::InvalidState("blank carries a rotation".into()));
        }
        if rot.iter().any(|&r| r >= g.modulus()) {
            return Err(Error::InvalidState(format!(
                "rotation outside [0, {})",
                g.modulus()
            )));
        }
        Ok(PuzzleState {
            blank,
            occupant,
            rot,
        })
    }

    pub(crate) fn from_raw(blank: usize, occupant: Vec<usize>, rot: Vec<u32>) -> Self {
        PuzzleState {
            blank,
            occupant,
            rot,
        }
    }

    pub fn blank(&self) -> usize {
        self.blank
    }

    /// Home vertex of the blank (the one tile id missing from the board).
    pub fn home(&self) -> usize {
        self.occupant[self.blank]
    }

    /// Home of the tile at `v` (the blank's home at the blank).
    pub fn occupant(&self, v: usize) -> usize {
        self.occupant[v]
    }

    pub fn rotation(&self, v: usize) -> u32 {
        self.rot[v]
    }

    pub fn occupants(&self) -> &[usize] {
        &self.occupant
    }

    pub fn rotations(&self) -> &[u32] {
        &self.rot
    }

    pub fn is_solved(&self) -> bool {
        self.blank == self.home()
            && self.occupant.iter().enumerate().all(|(v, &t)| v == t)
            && self.rot.iter().all(|&r| r == 0)
    }

    /// Exchanges the tiles at two non-blank vertices, keeping their rotations.
    pub fn swap_tiles(&self, a: usize, b: usize) -> Result<PuzzleState> {
        if a == self.blank || b == self.blank {
            return Err(Error::InvalidState("cannot swap the blank".into()));
        }
        let mut s = self.clone();
        s.occupant.swap(a, b);
        s.rot.swap(a, b);
        Ok(s)
    }

    /// Rotates the tile at `v` in place by `by`.
    pub fn rotate_tile(&self, g: &TwistGraph, v: usize, by: u32) -> Result<PuzzleState> {
        if v == self.blank {
            return Err(Error::InvalidState("cannot rotate the blank".into()));
        }
        let mut s = self.clone();
        s.rot[v] = (s.rot[v] + by % g.modulus()) % g.modulus();
        Ok(s)
    }

    pub fn to_document(&self, g: &TwistGraph) -> StateDocument {
        let tiles = (0..self.occupant.len())
            .filter(|&v| v != self.blank)
            .map(|v| TileDocument {
                tile: g.vertex_id(self.occupant[v]).to_string(),
                at: g.vertex_id(v).to_string(),
                rot: i64::from(self.rot[v]),
            })
            .collect();
        StateDocument {
            format: STATE_FORMAT.to_string(),
            blank: g.vertex_id(self.blank).to_string(),
            tiles,
        }
    }

    pub fn from_document(g: &TwistGraph, doc: &StateDocument) -> Result<PuzzleState> {
        if doc.format != STATE_FORMAT {
            return Err(Error::Syntax(format!(
                "expected format `{STATE_FORMAT}`, got `{}`",
                doc.format
            )));
        }
        let n = g.vertex_count();
        let blank = g.vertex(&doc.blank)?;
        if doc.tiles.len() + 1 != n {
            return Err(Error::StateMismatch(format!(
                "expected {} tiles, got {}",
                n - 1,
                doc.tiles.len()
            )));
        }
        let mut occupant = vec![usize::MAX; n];
        let mut rot = vec![0u32; n];
        let mut used = vec![false; n];
        for t in &doc.tiles {
            let tile = g.vertex(&t.tile)?;
            let at = g.vertex(&t.at)?;
            if at == blank || occupant[at] != usize::MAX {
                return Err(Error::InvalidState(format!("position `{}` filled twice", t.at)));
            }
            if used[tile] {
                return Err(Error::InvalidState(format!("tile `{}` placed twice", t.tile)));
            }
            if t.rot < 0 || t.rot >= i64::from(g.modulus()) {
                return Err(Error::InvalidState(format!(
                    "rotation {} of tile `{}` outside [0, {})",
                    t.rot,
                    t.tile,
                    g.modulus()
                )));
            }
            used[tile] = true;
            occupant[at] = tile;
            rot[at] = t.rot as u32;
        }
        let home = used.iter().position(|&u| !u).expect("one tile id is unused");
        occupant[blank] = home;
        PuzzleState::from_parts(g, blank, occupant, rot)
    }

    pub fn parse(g: &TwistGraph, text: &str) -> Result<PuzzleState> {
        let doc: StateDocument =
            serde_json::from_str(text).map_err(|e| Error::Syntax(e.to_string()))?;
        Self::from_document(g, &doc)
    }

    pub fn from_value(g: &TwistGraph, value: serde_json::Value) -> Result<PuzzleState> {
        let doc: StateDocument =
            serde_json::from_value(value).map_err(|e| Error::Syntax(e.to_string()))?;
        Self::from_document(g, &doc)
    }

    pub fn to_json(&self, g: &TwistGraph) -> String {
        serde_json::to_string_pretty(&self.to_document(g)).expect("state document serializes")
    }

    fn check_graph(&self, g: &TwistGraph) -> Result<()> {
        if self.occupant.len() != g.vertex_count() {
            return Err(Error::StateMismatch(format!(
                "state has {} positions, graph has {}",
                self.occupant.len(),
                g.vertex_count()
            )));
        }
        if self.rot.iter().any(|&r| r >= g.modulus()) {
            return Err(Error::StateMismatch("rotation exceeds the graph modulus".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDocument {
    pub format: String,
    pub blank: String,
    pub tiles: Vec<TileDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TileDocument {
    pub tile: String,
    pub at: String,
    pub rot: i64,
}

/// A walk of the blank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveSequence {
    pub start_blank: usize,
    pub steps: Vec<Step>,
}

impl MoveSequence {
    pub fn new(g: &TwistGraph, start_blank: usize, steps: Vec<Step>) -> Result<Self> {
        let mut cur = start_blank;
        for (i, &s) in steps.iter().enumerate() {
            if g.tail(s) != cur {
                return Err(Error::NonContiguous(i));
            }
            cur = g.head(s);
        }
        Ok(MoveSequence { start_blank, steps })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn to_tokens(&self, g: &TwistGraph) -> Vec<String> {
        self.steps.iter().map(|&s| g.format_step(s)).collect()
    }

    pub fn from_tokens<S: AsRef<str>>(g: &TwistGraph, start_blank: usize, tokens: &[S]) -> Result<Self> {
        let steps = tokens
            .iter()
            .map(|t| g.parse_step(t.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(g, start_blank, steps)
    }
}

/// Every traversal leaving the blank, in edge order.
pub fn legal_moves(g: &TwistGraph, s: &PuzzleState) -> Vec<Step> {
    g.steps_from(s.blank).collect()
}

pub fn apply_move(g: &TwistGraph, s: &PuzzleState, step: Step) -> Result<PuzzleState> {
    s.check_graph(g)?;
    let mut next = s.clone();
    apply_move_in_place(g, &mut next, step)?;
    Ok(next)
}

pub(crate) fn apply_move_in_place(g: &TwistGraph, s: &mut PuzzleState, step: Step) -> Result<()> {
    if step.edge >= g.edge_count() {
        return Err(Error::IllegalMove(format!("no edge with index {}", step.edge)));
    }
    let tail = g.tail(step);
    if tail != s.blank {
        return Err(Error::IllegalMove(format!(
            "{} does not start at the blank `{}`",
            g.format_step(step),
            g.vertex_id(s.blank)
        )));
    }
    let head = g.head(step);
    let m = g.modulus();
    s.occupant.swap(tail, head);
    s.rot[tail] = (s.rot[head] + g.twist(step)) % m;
    s.rot[head] = 0;
    s.blank = head;
    Ok(())
}

pub fn apply_moves(g: &TwistGraph, s: &PuzzleState, steps: &[Step]) -> Result<PuzzleState> {
    s.check_graph(g)?;
    let mut cur = s.clone();
    for &step in steps {
        apply_move_in_place(g, &mut cur, step)?;
    }
    Ok(cur)
}

/// All vertices except `home`, in index order.
pub fn sites_without(g: &TwistGraph, home: usize) -> Sites {
    (0..g.vertex_count())
        .filter(|&v| v != home)
        .collect::<Vec<_>>()
        .into()
}

fn all_sites(g: &TwistGraph) -> Sites {
    (0..g.vertex_count()).collect::<Vec<_>>().into()
}

/// `(x(e), σ_e)` over every vertex of the graph.
pub fn step_element(g: &TwistGraph, step: Step, sites: &Sites) -> GroupElement {
    let n = g.vertex_count();
    let (t, h) = (g.tail(step), g.head(step));
    let mut sigma: Vec<u32> = (0..n as u32).collect();
    sigma.swap(t, h);
    let mut x = vec![0u32; n];
    x[t] = g.twist(step);
    GroupElement::new(g.modulus(), sites.clone(), sigma, x).expect("valid transposition")
}

/// `(x(p), σ_p) = (x(e_k), σ_{e_k}) ⋯ (x(e_1), σ_{e_1})`, restricted to the
/// non-base vertices.
pub fn element_of_path(g: &TwistGraph, p: &ClosedPath) -> Result<GroupElement> {
    let sites = all_sites(g);
    let mut acc = GroupElement::identity(g.modulus(), sites.clone());
    let mut cur = p.base();
    for (i, &s) in p.steps().iter().enumerate() {
        if g.tail(s) != cur {
            return Err(Error::NonContiguous(i));
        }
        cur = g.head(s);
        acc = step_element(g, s, &sites).compose(&acc)?;
    }
    if cur != p.base() {
        return Err(Error::NotClosed);
    }
    acc.restrict(sites_without(g, p.base()))
}

/// Element of a state whose blank sits at its home: `σ` sends each tile's
/// home to its current vertex, `x` is the rotation found at each vertex.
pub fn state_to_element(g: &TwistGraph, s: &PuzzleState) -> Result<GroupElement> {
    s.check_graph(g)?;
    let home = s.home();
    if s.blank != home {
        return Err(Error::BlankNotHome);
    }
    let sites = sites_without(g, home);
    let pos = |v: usize| if v < home { v } else { v - 1 };
    let n = sites.len();
    let mut sigma = vec![0u32; n];
    let mut x = vec![0u32; n];
    for v in 0..g.vertex_count() {
        if v == home {
            continue;
        }
        sigma[pos(s.occupant[v])] = pos(v) as u32;
        x[pos(v)] = s.rot[v];
    }
    GroupElement::new(g.modulus(), sites, sigma, x)
}

/// Inverse of [`state_to_element`].
pub fn element_to_state(g: &TwistGraph, home: usize, el: &GroupElement) -> Result<PuzzleState> {
    let expected = sites_without(g, home);
    if el.sites() != &expected || el.modulus() != g.modulus() {
        return Err(Error::StateMismatch("element does not belong to this board".into()));
    }
    let n = g.vertex_count();
    let mut occupant = vec![0usize; n];
    let mut rot = vec![0u32; n];
    occupant[home] = home;
    for (i, &tile) in expected.iter().enumerate() {
        let at = expected[el.sigma()[i] as usize];
        occupant[at] = tile;
        rot[at] = el.rotations()[el.sigma()[i] as usize];
    }
    PuzzleState::from_parts(g, home, occupant, rot)
}

/// Deterministic shortest blank path (breadth-first, edge order) between vertices.
pub fn shortest_path(g: &TwistGraph, from: usize, to: usize) -> Vec<Step> {
    let n = g.vertex_count();
    let mut via: Vec<Option<Step>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for s in g.steps_from(v) {
            let w = g.head(s);
            if !seen[w] {
                seen[w] = true;
                via[w] = Some(s);
                queue.push_back(w);
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = to;
    while cur != from {
        let s = via[cur].expect("graph is connected");
        path.push(s);
        cur = g.tail(s);
    }
    path.reverse();
    path
}

pub fn transport_blank_home(g: &TwistGraph, s: &PuzzleState) -> Result<PuzzleState> {
    let path = shortest_path(g, s.blank, s.home());
    apply_moves(g, s, &path)
}

/// Moves the blank home along a caller-chosen path.
pub fn transport_along(g: &TwistGraph, s: &PuzzleState, path: &[Step]) -> Result<PuzzleState> {
    let out = apply_moves(g, s, path)?;
    if out.blank != out.home() {
        return Err(Error::BlankNotHome);
    }
    Ok(out)
}

/// Seeded random walk of `steps` legal moves.
pub fn scramble(g: &TwistGraph, s: &PuzzleState, steps: usize, seed: u64) -> Result<PuzzleState> {
    s.check_graph(g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = s.clone();
    for _ in 0..steps {
        let moves = legal_moves(g, &cur);
        let &step = moves.choose(&mut rng).expect("connected graph has moves");
        apply_move_in_place(g, &mut cur, step)?;
    }
    Ok(cur)
}

/// Re-expresses a state in the coordinates of `gauge_transform(g, gauge)`:
/// the tile with home `t` at `v` gains `ψ(v) − ψ(t)`.
pub fn gauge_state(g: &TwistGraph, gauge: &Gauge, s: &PuzzleState) -> PuzzleState {
    let m = g.modulus();
    let mut out = s.clone();
    for v in 0..g.vertex_count() {
        if v == s.blank {
            continue;
        }
        let t = s.occupant[v];
        out.rot[v] = (s.rot[v] + gauge.psi[v] % m + m - gauge.psi[t] % m) % m;
    }
    out
}

/// Same transformation on a bridged element (sites exclude the home).
pub fn gauge_element(gauge: &Gauge, el: &GroupElement) -> GroupElement {
    let m = el.modulus();
    let sites: Arc<[usize]> = el.sites().clone();
    let n = sites.len();
    let mut x = el.rotations().to_vec();
    for i in 0..n {
        let j = el.sigma()[i] as usize;
        let (tile, at) = (sites[i], sites[j]);
        x[j] = (x[j] + gauge.psi[at] % m + m - gauge.psi[tile] % m) % m;
    }
    GroupElement::new(m, sites, el.sigma().to_vec(), x).expect("valid element")
}
