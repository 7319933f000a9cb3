//! Property bodies shared by the proptest suites and the acceptance runner.

use num_integer::Integer;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use twist_core::classify::classify;
use twist_core::dynamics::{
    element_of_path, gauge_state, scramble, state_to_element, transport_along, PuzzleState,
};
use twist_core::graph::{gauge_transform, validate, Gauge, Step, TwistGraph};
use twist_core::group::{gs_inverse, gs_multiply, GroupElement};
use twist_core::topology::{
    is_phi_surjective, path_twist, phi_gamma, rotation_kernel_generators, ClosedPath, CycleVector,
};
use twist_core::Error;

use super::{arb_board, arb_element, random_closed_walk, sites};

pub const CLASSIFY_CAP: usize = 20_000;

type Outcome = Result<(), TestCaseError>;

/// Scramble followed by random pop-out edits (swaps and in-place turns).
pub fn random_state(g: &TwistGraph, home: usize, seed: u64) -> PuzzleState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = scramble(g, &PuzzleState::solved(g, home), rng.gen_range(0..40), seed).unwrap();
    let n = g.vertex_count();
    if n >= 3 && rng.gen_bool(0.5) {
        let others: Vec<usize> = (0..n).filter(|&v| v != s.blank()).collect();
        let a = others[rng.gen_range(0..others.len())];
        let b = others[rng.gen_range(0..others.len())];
        if a != b {
            s = s.swap_tiles(a, b).unwrap();
        }
    }
    if n >= 2 && rng.gen_bool(0.5) {
        let v = (0..n).find(|&v| v != s.blank()).unwrap();
        s = s.rotate_tile(g, v, rng.gen_range(0..g.modulus())).unwrap();
    }
    s
}

/// Every simple path of the blank from `from` to `to`.
pub fn simple_paths(g: &TwistGraph, from: usize, to: usize) -> Vec<Vec<Step>> {
    fn go(
        g: &TwistGraph,
        v: usize,
        to: usize,
        seen: &mut [bool],
        path: &mut Vec<Step>,
        out: &mut Vec<Vec<Step>>,
    ) {
        if v == to {
            out.push(path.clone());
            return;
        }
        for s in g.steps_from(v) {
            let w = g.head(s);
            if !seen[w] {
                seen[w] = true;
                path.push(s);
                go(g, w, to, seen, path, out);
                path.pop();
                seen[w] = false;
            }
        }
    }
    let mut seen = vec![false; g.vertex_count()];
    seen[from] = true;
    let mut out = Vec::new();
    go(g, from, to, &mut seen, &mut Vec::new(), &mut out);
    out
}

// --- group axioms ---------------------------------------------------------

pub fn element_triples() -> impl Strategy<Value = (GroupElement, GroupElement, GroupElement)> {
    (1u32..=4, 1usize..=5)
        .prop_flat_map(|(m, n)| (arb_element(m, n), arb_element(m, n), arb_element(m, n)))
}

pub fn group_axioms((a, b, c): (GroupElement, GroupElement, GroupElement)) -> Outcome {
    let ab_c = gs_multiply(&gs_multiply(&a, &b).unwrap(), &c).unwrap();
    let a_bc = gs_multiply(&a, &gs_multiply(&b, &c).unwrap()).unwrap();
    prop_assert_eq!(ab_c, a_bc);
    let id = GroupElement::identity(a.modulus(), a.sites().clone());
    prop_assert_eq!(&gs_multiply(&id, &a).unwrap(), &a);
    prop_assert_eq!(&gs_multiply(&a, &id).unwrap(), &a);
    prop_assert!(gs_multiply(&gs_inverse(&a), &a).unwrap().is_identity());
    prop_assert!(gs_multiply(&a, &gs_inverse(&a)).unwrap().is_identity());
    Ok(())
}

// --- conjugation ----------------------------------------------------------

/// A pure rotation `(x, id)` and a pure permutation `(0, σ)`.
pub fn rotation_and_permutation() -> impl Strategy<Value = (GroupElement, GroupElement)> {
    (1u32..=5, 1usize..=6)
        .prop_flat_map(|(m, n)| {
            (
                prop::collection::vec(0..m, n),
                Just((0..n as u32).collect::<Vec<u32>>()).prop_shuffle(),
                Just(m),
                Just(n),
            )
        })
        .prop_map(|(x, sigma, m, n)| {
            (
                GroupElement::new(m, sites(n), (0..n as u32).collect(), x).unwrap(),
                GroupElement::from_permutation(m, sites(n), sigma).unwrap(),
            )
        })
}

/// `g⁻¹ (x, id) g = (x∘σ, id)` with `(x∘σ)[v] = x[σ(v)]`.
pub fn conjugation_reindexes((r, g): (GroupElement, GroupElement)) -> Outcome {
    let conj = gs_multiply(&gs_multiply(&gs_inverse(&g), &r).unwrap(), &g).unwrap();
    let expected: Vec<u32> = (0..r.n()).map(|v| r.rotations()[g.sigma()[v] as usize]).collect();
    prop_assert!(conj.is_pure_rotation());
    prop_assert_eq!(conj.rotations(), &expected[..]);
    Ok(())
}

// --- paths ----------------------------------------------------------------

pub type HomotopyInput = (TwistGraph, usize, u64, prop::sample::Index, prop::sample::Index);

pub fn homotopy_inputs() -> impl Strategy<Value = HomotopyInput> {
    (
        arb_board(2, 7, 4, 5),
        0usize..14,
        any::<u64>(),
        any::<prop::sample::Index>(),
        any::<prop::sample::Index>(),
    )
}

/// Inserting `e ē` anywhere leaves the element unchanged.
pub fn homotopy_invariance((g, len, seed, at, pick): HomotopyInput) -> Outcome {
    let base = g.default_home();
    let p = random_closed_walk(&g, base, len, seed);
    let pos = at.index(p.len() + 1);
    let vertex = if pos == 0 { base } else { g.head(p.steps()[pos - 1]) };
    let options: Vec<Step> = g.steps_from(vertex).collect();
    let e = options[pick.index(options.len())];
    let mut steps = p.steps().to_vec();
    steps.splice(pos..pos, [e, e.reversed()]);
    let q = ClosedPath::new(&g, base, steps).unwrap();
    let ep = element_of_path(&g, &p).unwrap();
    prop_assert_eq!(&ep, &element_of_path(&g, &q).unwrap());
    prop_assert_eq!(&ep, &element_of_path(&g, &p.freely_reduced()).unwrap());
    Ok(())
}

pub fn walk_inputs() -> impl Strategy<Value = (TwistGraph, usize, u64)> {
    (arb_board(2, 7, 4, 6), 0usize..16, any::<u64>())
}

/// `η_{m,m}(element_of_path(p)) = φ_γ(ω(p))`.
pub fn eta_is_phi((g, len, seed): (TwistGraph, usize, u64)) -> Outcome {
    let base = g.default_home();
    let p = random_closed_walk(&g, base, len, seed);
    let el = element_of_path(&g, &p).unwrap();
    let phi = phi_gamma(&g, &CycleVector::of_path(&g, &p)).unwrap();
    prop_assert_eq!(el.project(g.modulus()).unwrap().eta, phi);
    prop_assert_eq!(phi, path_twist(&g, &p));
    Ok(())
}

/// Kernel generators are constant on their support and zero elsewhere;
/// their values generate `Z/mZ` exactly when `φ_γ` is onto.
pub fn kernel_generator_shape(g: TwistGraph) -> Outcome {
    let base = g.default_home();
    let kernel = rotation_kernel_generators(&g, base).unwrap();
    let report = validate(&g);
    let cycle_like = g.vertex_count() < 3 || report.is_cycle || report.is_multi_cycle;
    for k in &kernel {
        prop_assert!(k.element.is_pure_rotation());
        for (i, &site) in k.element.sites().iter().enumerate() {
            let expected = if k.support.contains(&site) { k.a } else { 0 };
            prop_assert_eq!(k.element.rotations()[i], expected);
        }
        if !cycle_like {
            prop_assert!(k.element.rotations().contains(&0));
        }
    }
    let gcd = kernel.iter().fold(g.modulus(), |acc, k| acc.gcd(&k.a));
    prop_assert_eq!(gcd == 1, is_phi_surjective(&g).surjective);
    Ok(())
}

// --- classifier -----------------------------------------------------------

pub fn gauge_inputs() -> impl Strategy<Value = (TwistGraph, Vec<u32>, u64)> {
    arb_board(2, 6, 3, 6).prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), prop::collection::vec(0u32..12, n), any::<u64>())
    })
}

/// Case and order survive any gauge; verdicts survive consistent gauging of
/// board and state.
pub fn gauge_invariance((g, psi, seed): (TwistGraph, Vec<u32>, u64)) -> Outcome {
    let home = g.default_home();
    let gauge = Gauge { psi };
    let h = gauge_transform(&g, &gauge);
    match (classify(&g, home, CLASSIFY_CAP), classify(&h, home, CLASSIFY_CAP)) {
        (Ok(a), Ok(b)) => {
            prop_assert_eq!(a.case, b.case);
            prop_assert_eq!(&a.order, &b.order);
            let s = random_state(&g, home, seed);
            let gs = gauge_state(&g, &gauge, &s);
            prop_assert_eq!(
                a.check_state(&g, &s).unwrap().solvable,
                b.check_state(&h, &gs).unwrap().solvable
            );
        }
        (Err(Error::Undecided(_)), Err(Error::Undecided(_))) => {}
        (a, b) => {
            return Err(TestCaseError::fail(format!(
                "{:?} vs {:?}",
                a.map(|d| d.case),
                b.map(|d| d.case)
            )))
        }
    }
    Ok(())
}

pub fn transport_inputs() -> impl Strategy<Value = (TwistGraph, u64)> {
    (arb_board(2, 7, 3, 4), any::<u64>())
}

/// Every simple blank path home gives the same verdict.
pub fn transport_independence((g, seed): (TwistGraph, u64)) -> Outcome {
    let home = g.default_home();
    let desc = match classify(&g, home, CLASSIFY_CAP) {
        Ok(d) => d,
        Err(Error::Undecided(_)) => return Ok(()),
        Err(e) => return Err(TestCaseError::fail(e.to_string())),
    };
    let s = random_state(&g, home, seed);
    let mut verdicts = Vec::new();
    for path in simple_paths(&g, s.blank(), home) {
        let t = transport_along(&g, &s, &path).unwrap();
        verdicts.push(desc.accepts(&state_to_element(&g, &t).unwrap()).unwrap().solvable);
    }
    prop_assert!(!verdicts.is_empty());
    prop_assert!(verdicts.iter().all(|&v| v == verdicts[0]));
    prop_assert_eq!(verdicts[0], desc.check_state(&g, &s).unwrap().solvable);
    Ok(())
}
