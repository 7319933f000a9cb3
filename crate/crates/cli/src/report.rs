//! Stable JSON documents shared by the CLI and the HTTP service.

use std::collections::BTreeMap;

use serde::Serialize;
use twist_core::classify::{GroupCase, GroupDescriptor, Verdict};
use twist_core::graph::{CollapseClass, TwistGraph, ValidationReport};
use twist_core::oracle::ReachableSet;
use twist_core::{Error, MoveSequence};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErrorBody {
    pub kind: &'static str,
    pub message: String,
}

impl ErrorBody {
    pub fn new(e: &Error) -> Self {
        ErrorBody {
            kind: error_kind(e),
            message: e.to_string(),
        }
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Syntax(_) => "syntax",
        Error::Loop(_) => "loop",
        Error::DuplicateId(_) => "duplicate_id",
        Error::UnknownVertex(_) => "unknown_vertex",
        Error::UnknownEdge(_) => "unknown_edge",
        Error::InvalidModulus(_) => "invalid_modulus",
        Error::TwistOutOfRange { .. } => "twist_out_of_range",
        Error::Disconnected => "disconnected",
        Error::Empty => "empty",
        Error::NotComposable => "not_composable",
        Error::NotDivisor { .. } => "not_divisor",
        Error::InvalidElement(_) => "invalid_element",
        Error::NotACycle(_) => "not_a_cycle",
        Error::NonContiguous(_) => "non_contiguous",
        Error::NotClosed => "not_closed",
        Error::InvalidState(_) => "invalid_state",
        Error::IllegalMove(_) => "illegal_move",
        Error::StateMismatch(_) => "state_mismatch",
        Error::BlankNotHome => "blank_not_home",
        Error::UnknownPreset(_) => "unknown_preset",
        Error::CapExceeded(_) => "cap_exceeded",
        Error::Undecided(_) => "undecided",
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidateReport {
    pub vertices: usize,
    pub edges: usize,
    pub m: u32,
    pub home: Option<String>,
    #[serde(flatten)]
    pub report: ValidationReport,
}

pub fn validate_report(g: &TwistGraph) -> ValidateReport {
    ValidateReport {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        m: g.modulus(),
        home: g.home().map(|h| g.vertex_id(h).to_string()),
        report: twist_core::validate(g),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub two_vertex_connected: bool,
    pub collapse_class: Option<CollapseClass>,
    pub has_parallel_edges: bool,
    pub bipartite_coloring: Option<BTreeMap<String, u8>>,
    pub odd_cycle: Option<Vec<String>>,
    pub twist_coloring: Option<BTreeMap<String, u8>>,
    pub twist_witness: Option<Vec<String>>,
    pub generators: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifyReport {
    pub case: GroupCase,
    pub n: usize,
    /// Modulus after reduction.
    pub m: u32,
    pub original_m: u32,
    pub d: u32,
    pub home: String,
    /// Decimal string; may exceed 64 bits.
    pub order: String,
    pub gauge: BTreeMap<String, u32>,
    pub certificates: CertificateReport,
}

fn by_vertex<T: Copy>(g: &TwistGraph, values: &[T]) -> BTreeMap<String, T> {
    values
        .iter()
        .enumerate()
        .map(|(v, &c)| (g.vertex_id(v).to_string(), c))
        .collect()
}

pub fn classify_report(g: &TwistGraph, d: &GroupDescriptor) -> ClassifyReport {
    let c = &d.certificates;
    ClassifyReport {
        case: d.case,
        n: d.n,
        m: d.m,
        original_m: d.original_m,
        d: d.d,
        home: g.vertex_id(d.home).to_string(),
        order: d.order.to_string(),
        gauge: by_vertex(g, &d.gauge.psi),
        certificates: CertificateReport {
            two_vertex_connected: c.two_vertex_connected,
            collapse_class: c.collapse_class,
            has_parallel_edges: c.has_parallel_edges,
            bipartite_coloring: c.bipartite_coloring.as_deref().map(|v| by_vertex(g, v)),
            odd_cycle: c.odd_cycle.clone(),
            twist_coloring: c.twist_coloring.as_deref().map(|v| by_vertex(g, v)),
            twist_witness: c.twist_witness.clone(),
            generators: c.generators.clone(),
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub solvable: bool,
    pub case: GroupCase,
    pub reason: String,
}

impl From<Verdict> for CheckReport {
    fn from(v: Verdict) -> Self {
        CheckReport {
            solvable: v.solvable,
            case: v.case,
            reason: v.reason,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerateReport {
    pub home: String,
    pub states: usize,
    pub by_home: usize,
    pub exhausted: bool,
    pub explored: usize,
    pub full_space: String,
}

pub fn enumerate_report(g: &TwistGraph, r: &ReachableSet) -> EnumerateReport {
    EnumerateReport {
        home: g.vertex_id(r.codec.home()).to_string(),
        states: r.states.len(),
        by_home: r.by_home.len(),
        exhausted: r.exhausted,
        explored: r.explored,
        full_space: twist_core::oracle::full_space(g).to_string(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum SolveReport {
    Solved {
        solvable: bool,
        length: usize,
        moves: Vec<String>,
    },
    Unsolvable {
        solvable: bool,
        reason: String,
    },
    Undecided {
        undecided: bool,
        visited: usize,
    },
}

impl SolveReport {
    pub fn solved(g: &TwistGraph, seq: &MoveSequence) -> Self {
        SolveReport::Solved {
            solvable: true,
            length: seq.len(),
            moves: seq.to_tokens(g),
        }
    }
}
