//! Closed-form description of the solvable group of a board.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::dynamics::{
    element_of_path, gauge_element, state_to_element, transport_blank_home, PuzzleState,
};
use crate::error::{Error, Result};
use crate::exceptional::calibrate_q;
use crate::graph::{
    is_bipartite, is_twist_bipartite, normalize_and_reduce, validate, CollapseClass, Coloring,
    Gauge, TwistGraph,
};
use crate::group::{gs_closure, permutation_parity, GroupElement};
use crate::topology::fundamental_generators;

/// Default bound on explicit group enumeration.
pub const DEFAULT_CAP: usize = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupCase {
    FullGenSym,
    EvenPermFullRot,
    TwistBipartiteParity,
    Cyclic,
    Theta5Plain,
    Theta5Mod3,
    Theta7Plain,
    Theta7Parity,
    OracleFallback,
}

impl GroupCase {
    pub fn is_exceptional(self) -> bool {
        matches!(
            self,
            GroupCase::Theta5Plain
                | GroupCase::Theta5Mod3
                | GroupCase::Theta7Plain
                | GroupCase::Theta7Parity
        )
    }
}

impl fmt::Display for GroupCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Permutation tables for the Θ5 and Θ7 boards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalData {
    /// Permutation parts of the solvable group (12 or 120 entries).
    pub permutations: BTreeSet<Vec<u32>>,
    /// `q: A4 → Z/3Z`, present for `Theta5Mod3`.
    pub q: Option<BTreeMap<Vec<u32>, u32>>,
}

/// Structural evidence behind the case choice.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Certificates {
    pub two_vertex_connected: bool,
    pub collapse_class: Option<CollapseClass>,
    pub has_parallel_edges: bool,
    /// Two-colouring proving bipartiteness.
    pub bipartite_coloring: Option<Vec<u8>>,
    /// Closed walk with an odd number of edges.
    pub odd_cycle: Option<Vec<String>>,
    /// Two-colouring proving twist-bipartiteness.
    pub twist_coloring: Option<Vec<u8>>,
    /// Closed walk with an odd number of even-twist edges.
    pub twist_witness: Option<Vec<String>>,
    /// Fundamental generators at home, as move tokens.
    pub generators: Vec<Vec<String>>,
}

#[derive(Clone, Debug)]
pub struct GroupDescriptor {
    pub case: GroupCase,
    /// Number of tiles.
    pub n: usize,
    /// Modulus of the reduced board.
    pub m: u32,
    /// Modulus of the input board.
    pub original_m: u32,
    pub d: u32,
    pub gauge: Gauge,
    pub home: usize,
    pub reduced: TwistGraph,
    pub exceptional: Option<ExceptionalData>,
    /// Powers of the loop element of a simple cycle.
    pub cyclic: Option<HashSet<GroupElement>>,
    pub fallback: Option<HashSet<GroupElement>>,
    pub order: BigUint,
    pub certificates: Certificates,
}

/// Outcome of a membership test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub solvable: bool,
    pub case: GroupCase,
    pub reason: String,
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::from(1u32), |acc, k| acc * k)
}

fn power(m: u32, k: usize) -> BigUint {
    BigUint::from(m).pow(k as u32)
}

/// Order of the group described by a case tag (closed forms only).
pub fn closed_form_order(case: GroupCase, m: u32, n: usize) -> Option<BigUint> {
    Some(match case {
        GroupCase::FullGenSym => power(m, n) * factorial(n),
        GroupCase::EvenPermFullRot | GroupCase::TwistBipartiteParity => {
            power(m, n) * factorial(n) / 2u32
        }
        GroupCase::Theta5Plain => power(m, 4) * 12u32,
        GroupCase::Theta5Mod3 => power(m, 4) * 4u32,
        GroupCase::Theta7Plain => power(m, 6) * 120u32,
        GroupCase::Theta7Parity => power(m, 6) * 60u32,
        GroupCase::Cyclic | GroupCase::OracleFallback => return None,
    })
}

pub fn group_order(d: &GroupDescriptor) -> BigUint {
    d.order.clone()
}

fn home_elements(g: &TwistGraph, home: usize) -> Result<Vec<GroupElement>> {
    fundamental_generators(g, home)
        .iter()
        .map(|p| element_of_path(g, p))
        .collect()
}

fn sites_of(g: &TwistGraph, home: usize) -> crate::group::Sites {
    crate::dynamics::sites_without(g, home)
}

fn tokens(g: &TwistGraph, steps: &[crate::graph::Step]) -> Vec<String> {
    steps.iter().map(|&s| g.format_step(s)).collect()
}

/// Sum of the twists on the three two-edge paths between the degree-3
/// vertices of a simple Θ5, all oriented the same way.
fn theta5_twist_sum(g: &TwistGraph) -> u64 {
    let adj = g.simple_adjacency();
    let hubs: Vec<usize> = (0..adj.len()).filter(|&v| adj[v].len() == 3).collect();
    let (a, b) = (hubs[0], hubs[1]);
    let mut total = 0u64;
    for s in g.steps_from(a) {
        let w = g.head(s);
        let back = g
            .steps_from(w)
            .find(|&t| g.head(t) == b)
            .expect("middle vertex joins both hubs");
        total += u64::from(g.twist(s)) + u64::from(g.twist(back));
    }
    total
}

/// Computes the solvable group for blank home `home`.
pub fn classify(g: &TwistGraph, home: usize, cap: usize) -> Result<GroupDescriptor> {
    if home >= g.vertex_count() {
        return Err(Error::UnknownVertex(home.to_string()));
    }
    let norm = normalize_and_reduce(g);
    let r = norm.reduced;
    let m = r.modulus();
    let n = g.vertex_count() - 1;
    let report = validate(&r);
    let bip = is_bipartite(&r);
    let tbip = is_twist_bipartite(&r);
    let gens = fundamental_generators(&r, home);
    let certificates = Certificates {
        two_vertex_connected: report.two_vertex_connected,
        collapse_class: Some(report.simple_collapse_class),
        has_parallel_edges: report.has_parallel_edges,
        bipartite_coloring: bip.colors().map(<[u8]>::to_vec),
        odd_cycle: bip.witness().map(|w| tokens(&r, w)),
        twist_coloring: tbip.colors().map(<[u8]>::to_vec),
        twist_witness: tbip.witness().map(|w| tokens(&r, w)),
        generators: gens.iter().map(|p| tokens(&r, p.steps())).collect(),
    };

    let class = report.simple_collapse_class;
    let closed_form = g.vertex_count() >= 3
        && report.two_vertex_connected
        && !(report.has_parallel_edges && class != CollapseClass::Other);
    let case = if !closed_form {
        GroupCase::OracleFallback
    } else {
        match class {
            CollapseClass::Cycle => GroupCase::Cyclic,
            CollapseClass::Theta5 => {
                if m % 3 == 0 && theta5_twist_sum(&r) % 3 == 0 {
                    GroupCase::Theta5Mod3
                } else {
                    GroupCase::Theta5Plain
                }
            }
            CollapseClass::Theta7 => {
                if m % 2 == 0 && tbip.holds() {
                    GroupCase::Theta7Parity
                } else {
                    GroupCase::Theta7Plain
                }
            }
            CollapseClass::Other => {
                if bip.holds() {
                    GroupCase::EvenPermFullRot
                } else if matches!(tbip, Coloring::Colored(_)) {
                    GroupCase::TwistBipartiteParity
                } else {
                    GroupCase::FullGenSym
                }
            }
        }
    };

    let mut desc = GroupDescriptor {
        case,
        n,
        m,
        original_m: g.modulus(),
        d: norm.d,
        gauge: norm.gauge,
        home,
        reduced: r.clone(),
        exceptional: None,
        cyclic: None,
        fallback: None,
        order: BigUint::from(0u32),
        certificates,
    };
    let sites = sites_of(&r, home);
    match case {
        GroupCase::OracleFallback => {
            let elements = home_elements(&r, home)?;
            let set = gs_closure(m, sites, &elements, cap).map_err(|e| match e {
                Error::CapExceeded(c) => Error::Undecided(format!(
                    "no closed form applies and the group exceeds {c} elements"
                )),
                other => other,
            })?;
            desc.order = BigUint::from(set.len());
            desc.fallback = Some(set.into_iter().collect());
        }
        GroupCase::Cyclic => {
            let elements = home_elements(&r, home)?;
            let loop_el = elements
                .first()
                .cloned()
                .unwrap_or_else(|| GroupElement::identity(m, sites.clone()));
            let mut powers = HashSet::new();
            let mut cur = GroupElement::identity(m, sites);
            loop {
                if !powers.insert(cur.clone()) {
                    break;
                }
                cur = loop_el.compose(&cur)?;
            }
            desc.order = BigUint::from(powers.len());
            desc.cyclic = Some(powers);
        }
        GroupCase::Theta5Plain | GroupCase::Theta5Mod3 | GroupCase::Theta7Plain
        | GroupCase::Theta7Parity => {
            let elements = home_elements(&r, home)?;
            let perms: Vec<GroupElement> = elements
                .iter()
                .map(|e| e.reduce_modulus(1))
                .collect::<Result<_>>()?;
            let closure = gs_closure(1, sites.clone(), &perms, 1000)?;
            let expected = if matches!(case, GroupCase::Theta5Plain | GroupCase::Theta5Mod3) {
                12
            } else {
                120
            };
            if closure.len() != expected {
                return Err(Error::Undecided(format!(
                    "permutation group has {} elements, expected {expected}",
                    closure.len()
                )));
            }
            let permutations = closure.iter().map(|e| e.sigma().to_vec()).collect();
            let q = if case == GroupCase::Theta5Mod3 {
                let mod3: Vec<GroupElement> = elements
                    .iter()
                    .map(|e| e.reduce_modulus(3))
                    .collect::<Result<_>>()?;
                let group = gs_closure(3, sites, &mod3, 10_000)?;
                Some(calibrate_q(&group)?)
            } else {
                None
            };
            desc.exceptional = Some(ExceptionalData { permutations, q });
            desc.order = closed_form_order(case, m, n).expect("closed form");
        }
        _ => {
            desc.order = closed_form_order(case, m, n).expect("closed form");
        }
    }
    Ok(desc)
}

/// [`classify`] at the board's designated home with the default cap.
pub fn classify_default(g: &TwistGraph) -> Result<GroupDescriptor> {
    classify(g, g.default_home(), DEFAULT_CAP)
}

impl GroupDescriptor {
    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// Maps an element of the input board (sites without home) into reduced
    /// coordinates, or explains why it cannot lie in the group.
    pub fn to_reduced(&self, el: &GroupElement) -> std::result::Result<GroupElement, String> {
        let gauged = gauge_element(&self.gauge, el);
        if let Some(v) = gauged.rotations().iter().position(|&x| x % self.d != 0) {
            return Err(format!(
                "rotation at site {} is not a multiple of d={} after normalization",
                gauged.sites()[v],
                self.d
            ));
        }
        let x: Vec<u32> = gauged.rotations().iter().map(|&x| x / self.d).collect();
        Ok(GroupElement::new(self.m, gauged.sites().clone(), gauged.sigma().to_vec(), x)
            .expect("reduced element is valid"))
    }

    /// Membership of an element given in the input board's coordinates.
    pub fn accepts(&self, el: &GroupElement) -> Result<Verdict> {
        if el.modulus() != self.original_m || el.sites() != &sites_of(&self.reduced, self.home) {
            return Err(Error::StateMismatch(
                "element does not belong to this board and home".into(),
            ));
        }
        let verdict = |solvable: bool, reason: String| Verdict {
            solvable,
            case: self.case,
            reason,
        };
        let r = match self.to_reduced(el) {
            Ok(r) => r,
            Err(why) => return Ok(verdict(false, why)),
        };
        let parity = permutation_parity(r.sigma());
        let sum = r.rotation_sum();
        let in_perm_table = || {
            self.exceptional
                .as_ref()
                .is_some_and(|x| x.permutations.contains(r.sigma()))
        };
        Ok(match self.case {
            GroupCase::FullGenSym => verdict(true, "every element is solvable".into()),
            GroupCase::EvenPermFullRot => {
                if parity == 0 {
                    verdict(true, "permutation is even".into())
                } else {
                    verdict(false, "permutation is odd on a bipartite board".into())
                }
            }
            GroupCase::TwistBipartiteParity | GroupCase::Theta7Parity
                if self.case == GroupCase::Theta7Parity && !in_perm_table() =>
            {
                verdict(false, "permutation lies outside PGL(2,5)".into())
            }
            GroupCase::TwistBipartiteParity | GroupCase::Theta7Parity => {
                if sum % 2 == u64::from(parity) {
                    verdict(true, format!("rotation sum ≡ {} ≡ permutation parity (mod 2)", sum % 2))
                } else {
                    verdict(
                        false,
                        format!(
                            "rotation sum ≡ {} but permutation parity is {} (mod 2)",
                            sum % 2,
                            parity
                        ),
                    )
                }
            }
            GroupCase::Theta5Plain | GroupCase::Theta7Plain => {
                if in_perm_table() {
                    verdict(true, "permutation lies in the exceptional group".into())
                } else {
                    verdict(false, "permutation lies outside the exceptional group".into())
                }
            }
            GroupCase::Theta5Mod3 => {
                let q = self
                    .exceptional
                    .as_ref()
                    .and_then(|x| x.q.as_ref())
                    .and_then(|q| q.get(r.sigma()).copied());
                match q {
                    None => verdict(false, "permutation lies outside A4".into()),
                    Some(q) if sum % 3 == u64::from(q) => {
                        verdict(true, format!("rotation sum ≡ q(σ) = {q} (mod 3)"))
                    }
                    Some(q) => verdict(
                        false,
                        format!("rotation sum ≡ {} but q(σ) = {q} (mod 3)", sum % 3),
                    ),
                }
            }
            GroupCase::Cyclic => {
                if self.cyclic.as_ref().is_some_and(|c| c.contains(&r)) {
                    verdict(true, "element is a power of the loop".into())
                } else {
                    verdict(false, "element is not a power of the loop".into())
                }
            }
            GroupCase::OracleFallback => {
                if self.fallback.as_ref().is_some_and(|c| c.contains(&r)) {
                    verdict(true, "element lies in the enumerated group".into())
                } else {
                    verdict(false, "element lies outside the enumerated group".into())
                }
            }
        })
    }

    /// Solvability of a state of the input board. The blank is walked home
    /// first; the state's home must match the descriptor's.
    pub fn check_state(&self, g: &TwistGraph, s: &PuzzleState) -> Result<Verdict> {
        if s.occupants().len() != g.vertex_count() || g.modulus() != self.original_m {
            return Err(Error::StateMismatch("state does not fit this board".into()));
        }
        if s.home() != self.home {
            return Err(Error::StateMismatch(format!(
                "state's blank belongs at `{}`, group was computed for `{}`",
                g.vertex_id(s.home()),
                g.vertex_id(self.home)
            )));
        }
        let at_home = transport_blank_home(g, s)?;
        self.accepts(&state_to_element(g, &at_home)?)
    }
}

/// Classifies at the state's own home and tests membership.
pub fn is_solvable(g: &TwistGraph, s: &PuzzleState) -> Result<Verdict> {
    classify(g, s.home(), DEFAULT_CAP)?.check_state(g, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn case_and_order(g: &TwistGraph) -> (GroupCase, BigUint) {
        let d = classify_default(g).unwrap();
        (d.case, d.order)
    }

    #[test]
    fn closed_form_orders() {
        assert_eq!(
            closed_form_order(GroupCase::FullGenSym, 2, 3).unwrap(),
            BigUint::from(48u32)
        );
        assert_eq!(
            closed_form_order(GroupCase::Theta5Mod3, 3, 4).unwrap(),
            BigUint::from(324u32)
        );
        assert_eq!(
            closed_form_order(GroupCase::Theta7Parity, 2, 6).unwrap(),
            BigUint::from(3840u32)
        );
    }

    #[test]
    fn case_selection() {
        let fp4 = presets::fifteen_plus_four();
        assert_eq!(classify_default(&fp4).unwrap().case, GroupCase::TwistBipartiteParity);
        let t5 = presets::theta5(3, &[("e1", 1), ("e2", 1), ("e4", 1)]).unwrap();
        assert_eq!(case_and_order(&t5), (GroupCase::Theta5Mod3, 324u32.into()));
        let t5 = presets::theta5(3, &[("e1", 1)]).unwrap();
        assert_eq!(case_and_order(&t5), (GroupCase::Theta5Plain, 972u32.into()));
        let t7 = presets::theta7(2, &[("inf-c", 1)]).unwrap();
        assert_eq!(case_and_order(&t7), (GroupCase::Theta7Parity, 3840u32.into()));
        let k4 = presets::k4(2, &[("a-b", 1)]).unwrap();
        assert_eq!(case_and_order(&k4), (GroupCase::FullGenSym, 48u32.into()));
        let k33 = presets::k33(3, &[("a0-b0", 1)]).unwrap();
        assert_eq!(case_and_order(&k33), (GroupCase::EvenPermFullRot, 14580u32.into()));
        let c4 = presets::cycle(4, 3, &[("v0-v1", 1)]).unwrap();
        assert_eq!(case_and_order(&c4), (GroupCase::Cyclic, 9u32.into()));
        let fig = presets::figure8();
        assert_eq!(case_and_order(&fig), (GroupCase::OracleFallback, 8u32.into()));
    }

    #[test]
    fn reduction_is_applied() {
        let c4 = presets::cycle(4, 4, &[("v0-v1", 2)]).unwrap();
        let d = classify_default(&c4).unwrap();
        assert_eq!((d.d, d.m), (2, 2));
        let grid = presets::grid(3, 3, 5, &[]).unwrap();
        let d = classify_default(&grid).unwrap();
        assert_eq!((d.case, d.m, d.d), (GroupCase::EvenPermFullRot, 1, 5));
    }

    #[test]
    fn fifteen_plus_four_pop_outs() {
        let g = presets::fifteen_plus_four();
        let solved = PuzzleState::solved(&g, 0);
        let rotated = solved.rotate_tile(&g, 5, 1).unwrap();
        assert!(!is_solvable(&g, &rotated).unwrap().solvable);
        let swapped = solved.swap_tiles(5, 6).unwrap();
        assert!(!is_solvable(&g, &swapped).unwrap().solvable);
        let both = swapped.rotate_tile(&g, 5, 1).unwrap();
        assert!(is_solvable(&g, &both).unwrap().solvable);
    }

    #[test]
    fn state_home_must_match() {
        let g = presets::k4(2, &[("a-b", 1)]).unwrap();
        let d = classify(&g, 1, DEFAULT_CAP).unwrap();
        let s = PuzzleState::solved(&g, 0);
        assert!(matches!(d.check_state(&g, &s), Err(Error::StateMismatch(_))));
    }

    #[test]
    fn fallback_cap_is_reported() {
        let fig = presets::figure8();
        assert!(matches!(classify(&fig, 0, 4), Err(Error::Undecided(_))));
    }
}
