//! Command line and HTTP front end over `twist_core`.
//!
//! Exit codes: 0 success (solvable, agreeing), 1 negative answer
//! (unsolvable, disagreeing), 2 invalid input or usage, 3 undecided within
//! the cap.

pub mod report;
pub mod service;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

use twist_core::classify::{classify, is_solvable, DEFAULT_CAP};
use twist_core::dynamics::{scramble, PuzzleState};
use twist_core::graph::{parse_twist_graph, TwistGraph};
use twist_core::oracle::{enumerate_reachable, verify_classifier};
use twist_core::presets;
use twist_core::solver::{solve, SolveOutcome};
use twist_core::Error;

use report::{classify_report, enumerate_report, validate_report, CheckReport, SolveReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "twist", version, about = "Rotating-tile sliding puzzles on twist graphs")]
#[command(arg_required_else_help = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// `<graph>` arguments are twistgraph/1 files, or `preset:NAME` for a
/// built-in board.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a board and report its structure.
    Validate { graph: String },
    /// Identify the solvable group of a board.
    Classify {
        graph: String,
        /// Home vertex of the blank (default: the board's home).
        #[arg(long)]
        home: Option<String>,
        #[arg(long)]
        json: bool,
        /// Bound on explicit group enumeration for fallback boards.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Decide whether a state can be solved.
    Check {
        graph: String,
        state: String,
        #[arg(long)]
        json: bool,
    },
    /// Find a shortest move sequence back to the solved state.
    Solve {
        graph: String,
        state: String,
        #[arg(long, default_value_t = service::DEFAULT_SOLVE_CAP)]
        cap: usize,
    },
    /// Count the states reachable from the solved board.
    Enumerate {
        graph: String,
        #[arg(long)]
        home: Option<String>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Compare the classifier with brute-force enumeration.
    Verify {
        graph: String,
        #[arg(long)]
        home: Option<String>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Write a built-in board.
    Preset {
        /// figure8, fifteen_plus_four, theta5, theta7, k4, k33, grid(W,H), cycle(K)
        name: String,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Edge twist override, `EDGE=T`; repeatable.
        #[arg(long = "twist", value_name = "EDGE=T")]
        twists: Vec<String>,
    },
    /// Apply seeded random moves to a state (default: the solved board).
    Scramble {
        graph: String,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        state: Option<String>,
    },
    /// Run the HTTP service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        /// Directory of static UI assets served outside `/api`.
        #[arg(long)]
        assets: Option<PathBuf>,
    },
}

/// Failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }

    fn undecided(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_UNDECIDED,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Undecided(_) | Error::CapExceeded(_) => Failure::undecided(e.to_string()),
            other => Failure::invalid(other.to_string()),
        }
    }
}

type Outcome = Result<i32, Failure>;

fn read(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::invalid(format!("{path}: {e}")))
}

pub fn load_graph(arg: &str) -> Result<TwistGraph, Failure> {
    if let Some(name) = arg.strip_prefix("preset:") {
        return Ok(presets::preset(name, None, &[])?);
    }
    parse_twist_graph(&read(arg)?).map_err(|e| Failure::invalid(format!("{arg}: {e}")))
}

pub fn load_state(g: &TwistGraph, arg: &str) -> Result<PuzzleState, Failure> {
    PuzzleState::parse(g, &read(arg)?).map_err(|e| Failure::invalid(format!("{arg}: {e}")))
}

fn home_of(g: &TwistGraph, home: Option<&str>) -> Result<usize, Failure> {
    match home {
        Some(id) => Ok(g.vertex(id)?),
        None => Ok(g.default_home()),
    }
}

fn json_line<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("report serializes");
    writeln!(out, "{text}").map_err(|e| Failure::invalid(e.to_string()))
}

fn io(e: std::io::Error) -> Failure {
    Failure::invalid(e.to_string())
}

fn parse_twists(raw: &[String]) -> Result<Vec<(String, u32)>, Failure> {
    raw.iter()
        .map(|s| {
            let (id, t) = s
                .split_once('=')
                .ok_or_else(|| Failure::invalid(format!("--twist `{s}` is not EDGE=T")))?;
            let t = t
                .trim()
                .parse::<u32>()
                .map_err(|_| Failure::invalid(format!("--twist `{s}`: bad twist value")))?;
            Ok((id.trim().to_string(), t))
        })
        .collect()
}

/// Runs one command, writing its report to `out`.
pub fn execute(cmd: Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Validate { graph } => {
            let g = load_graph(&graph)?;
            json_line(out, &validate_report(&g))?;
            Ok(EXIT_OK)
        }
        Command::Classify {
            graph,
            home,
            json,
            cap,
        } => {
            let g = load_graph(&graph)?;
            let home = home_of(&g, home.as_deref())?;
            let desc = classify(&g, home, cap)?;
            let rep = classify_report(&g, &desc);
            if json {
                json_line(out, &rep)?;
            } else {
                writeln!(out, "case: {}", rep.case).map_err(io)?;
                writeln!(out, "order: {}", rep.order).map_err(io)?;
                writeln!(out, "tiles: {}", rep.n).map_err(io)?;
                writeln!(out, "modulus: {} (input {}, divided by {})", rep.m, rep.original_m, rep.d)
                    .map_err(io)?;
                writeln!(out, "home: {}", rep.home).map_err(io)?;
                writeln!(out, "certificates:").map_err(io)?;
                json_line(out, &rep.certificates)?;
            }
            Ok(EXIT_OK)
        }
        Command::Check { graph, state, json } => {
            let g = load_graph(&graph)?;
            let s = load_state(&g, &state)?;
            let rep = CheckReport::from(is_solvable(&g, &s)?);
            if json {
                json_line(out, &rep)?;
            } else {
                let word = if rep.solvable { "solvable" } else { "unsolvable" };
                writeln!(out, "{word} ({}): {}", rep.case, rep.reason).map_err(io)?;
            }
            Ok(if rep.solvable { EXIT_OK } else { EXIT_NO })
        }
        Command::Solve { graph, state, cap } => {
            let g = load_graph(&graph)?;
            let s = load_state(&g, &state)?;
            let (rep, code) = match solve(&g, &s, cap)? {
                SolveOutcome::Solved(seq) => (SolveReport::solved(&g, &seq), EXIT_OK),
                SolveOutcome::Unsolvable { reason } => (
                    SolveReport::Unsolvable {
                        solvable: false,
                        reason,
                    },
                    EXIT_NO,
                ),
                SolveOutcome::CapExceeded { visited } => (
                    SolveReport::Undecided {
                        undecided: true,
                        visited,
                    },
                    EXIT_UNDECIDED,
                ),
            };
            json_line(out, &rep)?;
            Ok(code)
        }
        Command::Enumerate { graph, home, cap } => {
            let g = load_graph(&graph)?;
            let home = home_of(&g, home.as_deref())?;
            let r = enumerate_reachable(&g, &PuzzleState::solved(&g, home), cap)?;
            json_line(out, &enumerate_report(&g, &r))?;
            Ok(if r.exhausted { EXIT_OK } else { EXIT_UNDECIDED })
        }
        Command::Verify { graph, home, cap } => {
            let g = load_graph(&graph)?;
            let home = home_of(&g, home.as_deref())?;
            let rep = verify_classifier(&g, home, cap)?;
            json_line(out, &rep)?;
            Ok(match (rep.undecided, rep.agree) {
                (true, _) => EXIT_UNDECIDED,
                (false, true) => EXIT_OK,
                (false, false) => EXIT_NO,
            })
        }
        Command::Preset {
            name,
            m,
            out: path,
            twists,
        } => {
            let twists = parse_twists(&twists)?;
            let pairs: Vec<(&str, u32)> = twists.iter().map(|(id, t)| (id.as_str(), *t)).collect();
            let g = presets::preset(&name, m, &pairs)?;
            let text = g.to_json();
            match path {
                Some(p) => write_file(&p, &text)?,
                None => writeln!(out, "{text}").map_err(io)?,
            }
            Ok(EXIT_OK)
        }
        Command::Scramble {
            graph,
            steps,
            seed,
            state,
        } => {
            let g = load_graph(&graph)?;
            let s = match state {
                Some(p) => load_state(&g, &p)?,
                None => PuzzleState::solved(&g, g.default_home()),
            };
            let t = scramble(&g, &s, steps, seed)?;
            writeln!(out, "{}", t.to_json(&g)).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Serve { port, host, assets } => {
            let rt = tokio::runtime::Builder::new_multi_thread()
                .enable_all()
                .build()
                .map_err(io)?;
            rt.block_on(service::serve(&host, port, assets)).map_err(io)?;
            Ok(EXIT_OK)
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, format!("{text}\n"))
        .map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

/// Parses `argv` and runs it; returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return e.exit_code();
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
