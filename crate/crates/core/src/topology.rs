//! Closed paths, the cycle space over `Z/mZ`, `φ_γ`, and the pure-rotation
//! elements obtained from fundamental cycles.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::Serialize;

use crate::dynamics::element_of_path;
use crate::error::{Error, Result};
use crate::graph::{SpanningTree, Step, TwistGraph};
use crate::group::GroupElement;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClosedPath {
    base: usize,
    steps: Vec<Step>,
}

impl ClosedPath {
    pub fn new(g: &TwistGraph, base: usize, steps: Vec<Step>) -> Result<Self> {
        let mut cur = base;
        for (i, &s) in steps.iter().enumerate() {
            if g.tail(s) != cur {
                return Err(Error::NonContiguous(i));
            }
            cur = g.head(s);
        }
        if cur != base {
            return Err(Error::NotClosed);
        }
        Ok(ClosedPath { base, steps })
    }

    pub fn empty(base: usize) -> Self {
        ClosedPath {
            base,
            steps: Vec::new(),
        }
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `p̄`: the same edges in reverse order and orientation.
    pub fn reversed(&self) -> ClosedPath {
        ClosedPath {
            base: self.base,
            steps: self.steps.iter().rev().map(|s| s.reversed()).collect(),
        }
    }

    /// `self` followed by `other`; both must share a base.
    pub fn concat(&self, other: &ClosedPath) -> Result<ClosedPath> {
        if self.base != other.base {
            return Err(Error::NotClosed);
        }
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        Ok(ClosedPath {
            base: self.base,
            steps,
        })
    }

    /// Cancels every adjacent `e ē` pair.
    pub fn freely_reduced(&self) -> ClosedPath {
        ClosedPath {
            base: self.base,
            steps: free_reduce(&self.steps),
        }
    }

    /// Splits a freely reduced path into `stem · cycle · stem̄`, returning
    /// the stem length. A simple closed path has stem length 0.
    pub fn stem_len(&self) -> usize {
        let k = self.steps.len();
        let mut j = 0;
        while 2 * (j + 1) < k && self.steps[j] == self.steps[k - 1 - j].reversed() {
            j += 1;
        }
        j
    }

    /// True when no vertex repeats except the base at both ends.
    pub fn is_simple(&self, g: &TwistGraph) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.steps.iter().all(|&s| seen.insert(g.head(s)))
    }

    pub fn vertices(&self, g: &TwistGraph) -> Vec<usize> {
        let mut out = vec![self.base];
        out.extend(self.steps.iter().map(|&s| g.head(s)));
        out.pop();
        out
    }
}

pub fn free_reduce(steps: &[Step]) -> Vec<Step> {
    let mut out: Vec<Step> = Vec::with_capacity(steps.len());
    for &s in steps {
        if out.last() == Some(&s.reversed()) {
            out.pop();
        } else {
            out.push(s);
        }
    }
    out
}

/// A 1-chain with zero signed boundary at every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleVector {
    m: u32,
    omega: BTreeMap<usize, u32>,
}

impl CycleVector {
    pub fn zero(m: u32) -> Self {
        CycleVector {
            m,
            omega: BTreeMap::new(),
        }
    }

    /// Checks the 1-cycle condition before accepting `omega`.
    pub fn new(g: &TwistGraph, omega: BTreeMap<usize, u32>) -> Result<Self> {
        let m = g.modulus();
        let mut boundary = vec![0u64; g.vertex_count()];
        let mm = u64::from(m);
        for (&e, &w) in &omega {
            if e >= g.edge_count() {
                return Err(Error::UnknownEdge(e.to_string()));
            }
            let w = u64::from(w % m);
            let edge = &g.edges()[e];
            boundary[edge.head] = (boundary[edge.head] + w) % mm;
            boundary[edge.tail] = (boundary[edge.tail] + mm - w) % mm;
        }
        if let Some(v) = boundary.iter().position(|&b| b != 0) {
            return Err(Error::NotACycle(g.vertex_id(v).to_string()));
        }
        let omega = omega
            .into_iter()
            .map(|(e, w)| (e, w % m))
            .filter(|&(_, w)| w != 0)
            .collect();
        Ok(CycleVector { m, omega })
    }

    /// Signed edge counts of a closed path.
    pub fn of_path(g: &TwistGraph, p: &ClosedPath) -> Self {
        let m = g.modulus();
        let mut omega: BTreeMap<usize, u32> = BTreeMap::new();
        for s in p.steps() {
            let w = omega.entry(s.edge).or_insert(0);
            *w = if s.forward {
                (*w + 1) % m
            } else {
                (*w + m - 1) % m
            };
        }
        omega.retain(|_, w| *w != 0);
        CycleVector { m, omega }
    }

    pub fn coefficient(&self, edge: usize) -> u32 {
        self.omega.get(&edge).copied().unwrap_or(0)
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }
}

/// `φ_γ(ω) = Σ γ_e ω_e (mod m)`.
pub fn phi_gamma(g: &TwistGraph, omega: &CycleVector) -> Result<u32> {
    if omega.m != g.modulus() {
        return Err(Error::NotComposable);
    }
    let m = u64::from(g.modulus());
    let checked = CycleVector::new(g, omega.omega.clone())?;
    Ok((checked
        .omega
        .iter()
        .map(|(&e, &w)| u64::from(g.edges()[e].twist) * u64::from(w) % m)
        .sum::<u64>()
        % m) as u32)
}

/// Signed twist sum along a path (equals `φ_γ` of its cycle vector).
pub fn path_twist(g: &TwistGraph, p: &ClosedPath) -> u32 {
    let m = u64::from(g.modulus());
    (p.steps().iter().map(|&s| u64::from(g.twist(s))).sum::<u64>() % m) as u32
}

/// One closed path per off-tree edge of the canonical spanning tree, each
/// `tree(base → tail) · e · tree(head → base)` with backtracks cancelled.
pub fn fundamental_generators(g: &TwistGraph, base: usize) -> Vec<ClosedPath> {
    let tree = SpanningTree::canonical(g);
    tree.off_tree_edges()
        .map(|e| {
            let edge = &g.edges()[e];
            let mut steps = tree.path(g, base, edge.tail);
            steps.push(Step::forward(e));
            steps.extend(tree.path(g, edge.head, base));
            ClosedPath {
                base,
                steps: free_reduce(&steps),
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Surjectivity {
    pub surjective: bool,
    /// `gcd(m, φ(p_1), …, φ(p_g))`.
    pub gcd: u32,
    pub generator_values: Vec<u32>,
}

pub fn is_phi_surjective(g: &TwistGraph) -> Surjectivity {
    let base = g.default_home();
    let generator_values: Vec<u32> = fundamental_generators(g, base)
        .iter()
        .map(|p| path_twist(g, p))
        .collect();
    let gcd = generator_values
        .iter()
        .fold(g.modulus(), |acc, &v| acc.gcd(&v));
    Surjectivity {
        surjective: gcd == 1,
        gcd,
        generator_values,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelGenerator {
    /// `φ_γ` of the fundamental cycle.
    pub a: u32,
    /// Pure rotation `(x, id)`; `x = a` on the support, 0 elsewhere.
    pub element: GroupElement,
    /// Vertices whose tiles the cycle moves.
    pub support: Vec<usize>,
    pub path: ClosedPath,
}

/// For each fundamental generator `p` whose cycle has length `k`, the
/// element `(x(p), σ_p)^(k−1)`, which has trivial permutation part.
pub fn rotation_kernel_generators(g: &TwistGraph, base: usize) -> Result<Vec<KernelGenerator>> {
    fundamental_generators(g, base)
        .into_iter()
        .map(|p| {
            let stem = p.stem_len();
            let cycle_len = p.len() - 2 * stem;
            let attach = if stem == 0 { base } else { g.head(p.steps()[stem - 1]) };
            let support: Vec<usize> = p.steps()[stem..stem + cycle_len]
                .iter()
                .map(|&s| g.head(s))
                .filter(|&v| v != attach)
                .collect();
            let element = element_of_path(g, &p)?.pow((cycle_len - 1) as u64);
            Ok(KernelGenerator {
                a: path_twist(g, &p),
                element,
                support,
                path: p,
            })
        })
        .collect()
}
