#![allow(dead_code)]

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

use twist_core::dynamics::shortest_path;
use twist_core::graph::{EdgeSpec, Step, TwistGraph, Vertex};
use twist_core::group::{GroupElement, Sites};
use twist_core::topology::ClosedPath;

pub mod props;

pub fn sites(n: usize) -> Sites {
    Arc::from((0..n).collect::<Vec<_>>())
}

pub fn arb_element(m: u32, n: usize) -> impl Strategy<Value = GroupElement> {
    (
        Just((0..n as u32).collect::<Vec<u32>>()).prop_shuffle(),
        prop::collection::vec(0..m, n),
    )
        .prop_map(move |(sigma, x)| GroupElement::new(m, sites(n), sigma, x).unwrap())
}

/// Builds a connected board: a random tree plus extra (possibly parallel) edges.
pub fn board(
    n: usize,
    m: u32,
    parents: &[usize],
    extras: &[(usize, usize)],
    twists: &[u32],
    flips: &[bool],
) -> TwistGraph {
    let vertices = (0..n).map(|i| Vertex::new(format!("v{i}"))).collect();
    let mut pairs: Vec<(usize, usize)> = parents.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect();
    pairs.extend(extras.iter().map(|&(a, off)| (a % n, (a + off) % n)));
    let edges = pairs
        .iter()
        .enumerate()
        .map(|(j, &(a, b))| {
            let (t, h) = if flips[j % flips.len()] { (b, a) } else { (a, b) };
            EdgeSpec::new(
                format!("e{j}"),
                format!("v{t}"),
                format!("v{h}"),
                twists[j % twists.len()] % m,
            )
        })
        .collect();
    TwistGraph::new(m, vertices, edges, None).unwrap()
}

prop_compose! {
    /// Connected boards on `min_v..=max_v` vertices with up to `max_extra`
    /// non-tree edges and modulus `1..=max_m`.
    pub fn arb_board(min_v: usize, max_v: usize, max_extra: usize, max_m: u32)
        (n in min_v..=max_v, m in 1..=max_m)
        (parents in (1..n).map(|i| 0..i).collect::<Vec<_>>(),
         extras in prop::collection::vec((0..n, 1..n.max(2)), 0..=max_extra),
         twists in prop::collection::vec(0..m, n + max_extra),
         flips in prop::collection::vec(any::<bool>(), n + max_extra),
         n in Just(n), m in Just(m))
        -> TwistGraph
    {
        let extras: Vec<(usize, usize)> = if n < 2 { Vec::new() } else { extras };
        board(n, m, &parents, &extras, &twists, &flips)
    }
}

/// Random walk of `len` steps from `base`, closed by the shortest path back.
pub fn random_closed_walk(g: &TwistGraph, base: usize, len: usize, seed: u64) -> ClosedPath {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut steps: Vec<Step> = Vec::new();
    let mut cur = base;
    for _ in 0..len {
        let options: Vec<Step> = g.steps_from(cur).collect();
        let Some(&s) = options.choose(&mut rng) else { break };
        steps.push(s);
        cur = g.head(s);
    }
    steps.extend(shortest_path(g, cur, base));
    ClosedPath::new(g, base, steps).unwrap()
}
