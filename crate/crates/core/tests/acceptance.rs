//! Acceptance criteria: one PASS/FAIL line each. Exits non-zero on any failure.

mod common;

use std::fmt::Debug;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use proptest::strategy::Strategy;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use common::props;
use twist_core::classify::{classify, classify_default, GroupCase, DEFAULT_CAP};
use twist_core::dynamics::{apply_moves, element_of_path, state_to_element, PuzzleState};
use twist_core::exceptional::pgl25;
use twist_core::graph::{Step, TwistGraph};
use twist_core::group::{gs_closure, permutation_sign, GroupElement};
use twist_core::oracle::{enumerate_reachable, full_space, verify_classifier};
use twist_core::presets;
use twist_core::topology::{fundamental_generators, ClosedPath};

const THETA5_LIMIT: Duration = Duration::from_secs(5);
const ORACLE_LIMIT: Duration = Duration::from_secs(60);
const FIFTEEN_PLUS_FOUR_LIMIT: Duration = Duration::from_millis(100);
const PROPERTY_CASES: u32 = 1000;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Runs the oracle comparison and returns `(case, |by_home|, |states|)`.
fn oracle(g: &TwistGraph, home: usize) -> Result<(GroupCase, usize, usize), String> {
    let rep = verify_classifier(g, home, DEFAULT_CAP).map_err(|e| e.to_string())?;
    ensure!(!rep.undecided, "undecided: {:?}", rep.note);
    ensure!(rep.agree, "classifier and enumeration disagree: {rep:?}");
    Ok((rep.case.unwrap(), rep.by_home.unwrap(), rep.reachable_states.unwrap()))
}

fn theta5() -> Check {
    let g = presets::theta5(3, &[("e1", 1), ("e2", 1), ("e4", 1)]).map_err(|e| e.to_string())?;
    let (case, by_home, states) = oracle(&g, g.default_home())?;
    ensure!(case == GroupCase::Theta5Mod3, "case {case}");
    ensure!(by_home == 324, "|by_home| = {by_home}");
    ensure!(full_space(&g) == BigUint::from(9720u32), "full space {}", full_space(&g));
    let plain = presets::theta5(3, &[("e1", 1)]).map_err(|e| e.to_string())?;
    let (pcase, pby_home, _) = oracle(&plain, plain.default_home())?;
    ensure!(pcase == GroupCase::Theta5Plain, "case {pcase}");
    ensure!(pby_home == 972, "|by_home| = {pby_home}");
    Ok(format!(
        "{case} |by_home|=324 ({states} of 9720 states); {pcase} |by_home|=972"
    ))
}

fn theta7() -> Check {
    let g = presets::theta7(2, &[("inf-c", 1)]).map_err(|e| e.to_string())?;
    let (case, by_home, states) = oracle(&g, g.default_home())?;
    ensure!(case == GroupCase::Theta7Parity, "case {case}");
    ensure!(by_home == 3840, "|by_home| = {by_home}");
    ensure!(full_space(&g) == BigUint::from(322_560u32), "full space {}", full_space(&g));
    Ok(format!("{case} |by_home|=3840 ({states} of 322560 states)"))
}

fn main_theorem() -> Check {
    let cases = [
        ("K4", presets::k4(2, &[("a-b", 1)]), GroupCase::FullGenSym, 48),
        ("K3,3", presets::k33(3, &[("a0-b0", 1)]), GroupCase::EvenPermFullRot, 14580),
        ("C4", presets::cycle(4, 3, &[("v0-v1", 1)]), GroupCase::Cyclic, 9),
    ];
    let mut out = Vec::new();
    for (name, g, want_case, want) in cases {
        let g = g.map_err(|e| e.to_string())?;
        let t = Instant::now();
        let (case, by_home, _) = oracle(&g, g.default_home())?;
        ensure!(t.elapsed() < ORACLE_LIMIT, "{name} took {:?}", t.elapsed());
        ensure!(case == want_case, "{name}: case {case}");
        ensure!(by_home == want, "{name}: |by_home| = {by_home}");
        out.push(format!("{name} {case} {by_home}"));
    }
    Ok(out.join("; "))
}

fn fifteen_plus_four() -> Check {
    let g = presets::fifteen_plus_four();
    let desc = classify_default(&g).map_err(|e| e.to_string())?;
    ensure!(desc.case == GroupCase::TwistBipartiteParity, "case {}", desc.case);
    ensure!(desc.n == 19 && desc.m == 4, "S({}, {})", desc.m, desc.n);
    let solved = PuzzleState::solved(&g, desc.home);
    let (a, b) = (g.vertex("1").unwrap(), g.vertex("2").unwrap());
    let rotated = solved.rotate_tile(&g, a, 1).map_err(|e| e.to_string())?;
    let swapped = solved.swap_tiles(a, b).map_err(|e| e.to_string())?;
    let both = swapped.rotate_tile(&g, a, 1).map_err(|e| e.to_string())?;
    let verdict = |s: &PuzzleState| desc.check_state(&g, s).map(|v| v.solvable).map_err(|e| e.to_string());
    ensure!(!verdict(&rotated)?, "one rotated tile judged solvable");
    ensure!(!verdict(&swapped)?, "unrotated swap judged solvable");
    ensure!(verdict(&both)?, "swap plus rotation judged unsolvable");
    Ok("rotated: unsolvable; swapped: unsolvable; swapped+rotated: solvable".into())
}

fn wilson() -> Check {
    let g = presets::grid(4, 4, 1, &[]).map_err(|e| e.to_string())?;
    let desc = classify_default(&g).map_err(|e| e.to_string())?;
    ensure!(desc.case == GroupCase::EvenPermFullRot, "case {}", desc.case);
    let solved = PuzzleState::solved(&g, desc.home);
    let odd = solved.swap_tiles(0, 1).map_err(|e| e.to_string())?;
    let even = odd.swap_tiles(1, 2).map_err(|e| e.to_string())?;
    ensure!(!desc.check_state(&g, &odd).unwrap().solvable, "odd permutation judged solvable");
    ensure!(desc.check_state(&g, &even).unwrap().solvable, "even permutation judged unsolvable");
    let small = presets::grid(2, 3, 1, &[]).map_err(|e| e.to_string())?;
    let (case, by_home, states) = oracle(&small, small.default_home())?;
    ensure!(full_space(&small) == BigUint::from(720u32), "full space {}", full_space(&small));
    ensure!(states == 360, "reachable states {states}");
    ensure!(by_home == 60, "|by_home| = {by_home}");
    Ok(format!(
        "4x4 odd: unsolvable, even: solvable; 2x3 grid {case}: 360 of 720 states reachable, 60 with blank home"
    ))
}

fn figure8() -> Check {
    let g = presets::figure8();
    let u = g.vertex("u").unwrap();
    let step = |id: &str, fwd: bool| g.step(id, fwd).unwrap();
    let p = ClosedPath::new(&g, u, vec![step("ur", true), step("ur_dashed", false)]).unwrap();
    let q = ClosedPath::new(&g, u, vec![step("bu", false), step("rb", false), step("ur", false)]).unwrap();
    let render = |el: &GroupElement| {
        let names: Vec<String> = el.sites().iter().map(|&v| g.vertex_id(v).to_string()).collect();
        el.render(&names)
    };
    let replay = |steps: &[Step]| {
        let s = apply_moves(&g, &PuzzleState::solved(&g, u), steps).unwrap();
        state_to_element(&g, &s).unwrap()
    };
    let pq = p.concat(&q).unwrap();
    let qp = q.concat(&p).unwrap();
    let (epq, eqp) = (element_of_path(&g, &pq).unwrap(), element_of_path(&g, &qp).unwrap());
    ensure!(render(&epq) == "((r:0,b:1),(r b))", "pq gives {}", render(&epq));
    ensure!(render(&eqp) == "((r:1,b:0),(r b))", "qp gives {}", render(&eqp));
    ensure!(epq != eqp, "elements commute");
    ensure!(replay(pq.steps()) == epq && replay(qp.steps()) == eqp, "replay differs from fold");
    Ok(format!("pq = {} != {} = qp", render(&epq), render(&eqp)))
}

fn run_property<S, F>(name: &str, strategy: S, test: F) -> Result<String, String>
where
    S: Strategy,
    S::Value: Debug,
    F: Fn(S::Value) -> Result<(), TestCaseError>,
{
    let mut runner = TestRunner::new(Config {
        cases: PROPERTY_CASES,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&strategy, test)
        .map(|_| format!("{name} x{PROPERTY_CASES}"))
        .map_err(|e| format!("{name}: {e}"))
}

fn properties() -> Check {
    let results = [
        run_property("group axioms", props::element_triples(), props::group_axioms),
        run_property("homotopy invariance", props::homotopy_inputs(), props::homotopy_invariance),
        run_property("eta = phi", props::walk_inputs(), props::eta_is_phi),
        run_property("conjugation", props::rotation_and_permutation(), props::conjugation_reindexes),
        run_property("gauge invariance", props::gauge_inputs(), props::gauge_invariance),
        run_property("transport independence", props::transport_inputs(), props::transport_independence),
        run_property(
            "kernel generators",
            common::arb_board(2, 7, 4, 6),
            props::kernel_generator_shape,
        ),
    ];
    let mut passed = Vec::new();
    for r in results {
        passed.push(r?);
    }
    Ok(passed.join(", "))
}

fn pgl() -> Check {
    let table = pgl25();
    ensure!(table.len() == 120, "{} permutations", table.len());
    ensure!(table.iter().any(|p| permutation_sign(p) == -1), "no odd permutations");
    let g = presets::theta7(1, &[]).map_err(|e| e.to_string())?;
    let home = g.vertex("c").unwrap();
    let sites = twist_core::dynamics::sites_without(&g, home);
    let labels: Vec<&str> = sites.iter().map(|&v| g.vertex_id(v)).collect();
    ensure!(labels == ["0", "1", "2", "3", "4", "inf"], "site order {labels:?}");
    let gens: Vec<GroupElement> = fundamental_generators(&g, home)
        .iter()
        .map(|p| element_of_path(&g, p).unwrap())
        .collect();
    let closure = gs_closure(1, sites, &gens, 10_000).map_err(|e| e.to_string())?;
    let perms: std::collections::BTreeSet<Vec<u32>> =
        closure.iter().map(|e| e.sigma().to_vec()).collect();
    ensure!(perms == table, "closure of Θ7 generators differs from the table");
    let desc = classify(&g, home, DEFAULT_CAP).map_err(|e| e.to_string())?;
    ensure!(desc.case == GroupCase::Theta7Plain, "case {}", desc.case);
    let reach = enumerate_reachable(&g, &PuzzleState::solved(&g, home), DEFAULT_CAP).unwrap();
    ensure!(reach.by_home.len() == 120, "enumerated {}", reach.by_home.len());
    Ok("120 permutations, odd ones included, equal to the Θ7 generator closure".into())
}

fn main() {
    let criteria: [(&str, Option<Duration>, fn() -> Check); 8] = [
        ("Theta5 oracle vs classifier", Some(THETA5_LIMIT), theta5),
        ("Theta7 oracle vs classifier", Some(ORACLE_LIMIT), theta7),
        ("main theorem oracle checks", Some(ORACLE_LIMIT * 3), main_theorem),
        ("15+4 pop-out claims", Some(FIFTEEN_PLUS_FOUR_LIMIT), fifteen_plus_four),
        ("Wilson degenerate case", Some(ORACLE_LIMIT), wilson),
        ("Figure 8 non-commutativity", None, figure8),
        ("property suites", None, properties),
        ("PGL(2,5) table", None, pgl),
    ];
    let mut failures = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("took {elapsed:.2?}, limit {limit:.2?}"))
            }
            (o, _) => o,
        };
        let limit_text = limit.map(|l| format!(", limit {l:.0?}")).unwrap_or_default();
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail} [{elapsed:.2?}{limit_text}]"),
            Err(why) => {
                failures += 1;
                println!("FAIL  {name}: {why} [{elapsed:.2?}{limit_text}]");
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", 8 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
