//! Exhaustive breadth-first enumeration of reachable states.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;
use serde::Serialize;

use crate::classify::{classify, closed_form_order, GroupCase};
use crate::dynamics::{apply_move_in_place, sites_without, state_to_element, PuzzleState};
use crate::error::{Error, Result};
use crate::graph::TwistGraph;
use crate::group::GroupElement;

/// Canonical state key: a packed integer when it fits, raw digits otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StateKey {
    Packed(u128),
    Wide(Box<[u32]>),
}

/// Packs `(occupant permutation, rotations)` of states sharing one home
/// into a key. The blank sits wherever the home tile is.
#[derive(Clone, Debug)]
pub struct StateCodec {
    n: usize,
    m: u32,
    home: usize,
    packed: bool,
}

impl StateCodec {
    pub fn new(g: &TwistGraph, home: usize) -> Self {
        let n = g.vertex_count();
        let m = g.modulus();
        let mut cap: Option<u128> = Some(1);
        for k in 1..=n as u128 {
            cap = cap.and_then(|c| c.checked_mul(k));
        }
        for _ in 0..n {
            cap = cap.and_then(|c| c.checked_mul(u128::from(m)));
        }
        StateCodec {
            n,
            m,
            home,
            packed: n <= 64 && cap.is_some(),
        }
    }

    pub fn home(&self) -> usize {
        self.home
    }

    pub fn encode(&self, s: &PuzzleState) -> StateKey {
        let occ = s.occupants();
        let rot = s.rotations();
        if !self.packed {
            let mut digits = Vec::with_capacity(2 * self.n);
            digits.extend(occ.iter().map(|&t| t as u32));
            digits.extend_from_slice(rot);
            return StateKey::Wide(digits.into_boxed_slice());
        }
        let mut key: u128 = 0;
        let mut used: u64 = 0;
        for (i, &t) in occ.iter().enumerate() {
            let smaller = (used & ((1u64 << t) - 1)).count_ones() as u128;
            key = key * (self.n - i) as u128 + (t as u128 - smaller);
            used |= 1 << t;
        }
        for &r in rot {
            key = key * u128::from(self.m) + u128::from(r);
        }
        StateKey::Packed(key)
    }

    pub fn decode(&self, key: &StateKey) -> PuzzleState {
        let n = self.n;
        let (occupant, rot): (Vec<usize>, Vec<u32>) = match key {
            StateKey::Wide(d) => (d[..n].iter().map(|&t| t as usize).collect(), d[n..].to_vec()),
            StateKey::Packed(k) => {
                let mut k = *k;
                let m = u128::from(self.m);
                let mut rot = vec![0u32; n];
                for r in rot.iter_mut().rev() {
                    *r = (k % m) as u32;
                    k /= m;
                }
                let mut lehmer = vec![0usize; n];
                for (i, l) in lehmer.iter_mut().enumerate().rev() {
                    let base = (n - i) as u128;
                    *l = (k % base) as usize;
                    k /= base;
                }
                let mut free: Vec<usize> = (0..n).collect();
                (lehmer.iter().map(|&l| free.remove(l)).collect(), rot)
            }
        };
        let blank = occupant
            .iter()
            .position(|&t| t == self.home)
            .expect("home tile present");
        PuzzleState::from_raw(blank, occupant, rot)
    }
}

/// Result of a bounded enumeration.
#[derive(Clone, Debug)]
pub struct ReachableSet {
    pub states: HashSet<StateKey>,
    /// Bridged elements of the states whose blank is at home.
    pub by_home: HashSet<GroupElement>,
    pub exhausted: bool,
    /// States whose moves were expanded.
    pub explored: usize,
    pub codec: StateCodec,
}

impl ReachableSet {
    pub fn contains(&self, s: &PuzzleState) -> bool {
        s.home() == self.codec.home && self.states.contains(&self.codec.encode(s))
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

/// Breadth-first search over moves from `start`, stopping once `cap`
/// distinct states have been seen.
pub fn enumerate_reachable(g: &TwistGraph, start: &PuzzleState, cap: usize) -> Result<ReachableSet> {
    if start.occupants().len() != g.vertex_count() {
        return Err(Error::StateMismatch("state does not fit this board".into()));
    }
    let cap = cap.max(1);
    let home = start.home();
    let codec = StateCodec::new(g, home);
    let mut states = HashSet::new();
    let mut by_home = HashSet::new();
    let start_key = codec.encode(start);
    states.insert(start_key.clone());
    let mut queue = VecDeque::from([start_key]);
    let mut exhausted = true;
    let mut explored = 0usize;
    'search: while let Some(key) = queue.pop_front() {
        let s = codec.decode(&key);
        if s.blank() == home {
            by_home.insert(state_to_element(g, &s)?);
        }
        explored += 1;
        for step in g.steps_from(s.blank()) {
            let mut next = s.clone();
            apply_move_in_place(g, &mut next, step)?;
            let k = codec.encode(&next);
            if states.contains(&k) {
                continue;
            }
            if states.len() >= cap {
                exhausted = false;
                break 'search;
            }
            states.insert(k.clone());
            queue.push_back(k);
        }
    }
    if !exhausted {
        // finish bridging the states already discovered
        for key in &queue {
            let s = codec.decode(key);
            if s.blank() == home {
                by_home.insert(state_to_element(g, &s)?);
            }
        }
    }
    Ok(ReachableSet {
        states,
        by_home,
        exhausted,
        explored,
        codec,
    })
}

/// `|V|! · m^(|V|−1)`: every placement of tiles and blank with every rotation.
pub fn full_space(g: &TwistGraph) -> BigUint {
    let n = g.vertex_count();
    let fact = (1..=n as u64).fold(BigUint::from(1u32), |acc, k| acc * k);
    fact * BigUint::from(g.modulus()).pow(n.saturating_sub(1) as u32)
}

/// Comparison of the enumerated group with the classifier's answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub agree: bool,
    pub undecided: bool,
    pub case: Option<GroupCase>,
    /// Decimal string.
    pub classifier_order: Option<String>,
    pub reachable_states: Option<usize>,
    pub by_home: Option<usize>,
    /// Decimal string.
    pub full_space: String,
    /// Accepted by the classifier but never reached (first 10).
    pub missing: Vec<String>,
    /// Reached but rejected by the classifier (first 10).
    pub extra: Vec<String>,
    pub note: Option<String>,
}

const DISCREPANCY_LIMIT: usize = 10;
/// Largest `|S(m, n)|` scanned element by element when looking for misses.
const SCAN_LIMIT: u64 = 2_000_000;

fn render(g: &TwistGraph, el: &GroupElement) -> String {
    let names: Vec<String> = el.sites().iter().map(|&v| g.vertex_id(v).to_string()).collect();
    el.render(&names)
}

/// Enumerates from the solved state at `home` and checks both inclusions
/// against the classifier.
pub fn verify_classifier(g: &TwistGraph, home: usize, cap: usize) -> Result<VerifyReport> {
    let mut report = VerifyReport {
        agree: false,
        undecided: true,
        case: None,
        classifier_order: None,
        reachable_states: None,
        by_home: None,
        full_space: full_space(g).to_string(),
        missing: Vec::new(),
        extra: Vec::new(),
        note: None,
    };
    let desc = match classify(g, home, cap) {
        Ok(d) => d,
        Err(Error::Undecided(why)) => {
            report.note = Some(why);
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.case = Some(desc.case);
    report.classifier_order = Some(desc.order.to_string());
    // every state transports home along a fixed path, so |states| = |V|·|G|
    let expected_states = desc.order.clone() * BigUint::from(g.vertex_count());
    if expected_states > BigUint::from(cap) {
        report.note = Some(format!(
            "predicted {expected_states} reachable states exceed the cap of {cap}"
        ));
        return Ok(report);
    }
    let reach = enumerate_reachable(g, &PuzzleState::solved(g, home), cap)?;
    report.reachable_states = Some(reach.states.len());
    report.by_home = Some(reach.by_home.len());
    if !reach.exhausted {
        report.note = Some(format!("enumeration stopped at the cap of {cap} states"));
        return Ok(report);
    }
    report.undecided = false;
    let mut extra: Vec<&GroupElement> = Vec::new();
    for el in &reach.by_home {
        if !desc.accepts(el)?.solvable {
            extra.push(el);
        }
    }
    extra.sort();
    report.extra = extra
        .iter()
        .take(DISCREPANCY_LIMIT)
        .map(|e| render(g, e))
        .collect();
    let sizes_match = BigUint::from(reach.by_home.len()) == desc.order;
    if !sizes_match {
        let whole = closed_form_order(GroupCase::FullGenSym, g.modulus(), g.vertex_count() - 1)
            .expect("closed form");
        if whole <= BigUint::from(SCAN_LIMIT) {
            let sites = sites_without(g, home);
            for el in all_elements(g.modulus(), &sites) {
                if report.missing.len() >= DISCREPANCY_LIMIT {
                    break;
                }
                if !reach.by_home.contains(&el) && desc.accepts(&el)?.solvable {
                    report.missing.push(render(g, &el));
                }
            }
        } else {
            report.note = Some(format!(
                "sizes differ: enumerated {}, classifier {}",
                reach.by_home.len(),
                desc.order
            ));
        }
    }
    report.agree = extra.is_empty() && sizes_match && report.missing.is_empty();
    Ok(report)
}

/// Every element of `S(m, |sites|)` in lexicographic `(σ, x)` order.
pub fn all_elements(m: u32, sites: &crate::group::Sites) -> Vec<GroupElement> {
    let n = sites.len();
    let mut perms = Vec::new();
    let mut p: Vec<u32> = (0..n as u32).collect();
    heap_permutations(&mut p, n, &mut perms);
    perms.sort();
    let total_x = (m as usize).pow(n as u32);
    let mut out = Vec::with_capacity(perms.len() * total_x);
    for sigma in &perms {
        for idx in 0..total_x {
            let mut x = vec![0u32; n];
            let mut k = idx;
            for v in x.iter_mut().rev() {
                *v = (k % m as usize) as u32;
                k /= m as usize;
            }
            out.push(GroupElement::new(m, sites.clone(), sigma.clone(), x).expect("valid"));
        }
    }
    out
}

fn heap_permutations(p: &mut Vec<u32>, k: usize, out: &mut Vec<Vec<u32>>) {
    if k <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..k {
        heap_permutations(p, k - 1, out);
        if k % 2 == 0 {
            p.swap(i, k - 1);
        } else {
            p.swap(0, k - 1);
        }
    }
}
