//! Named boards.
//!
//! Parametric presets take a modulus and a list of `(edge id, twist)`
//! overrides; unlisted edges have twist 0.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::graph::{EdgeSpec, TwistGraph, Vertex};

/// Names accepted by [`preset`]; `grid` and `cycle` also take sizes.
pub const PRESET_NAMES: &[&str] = &[
    "figure8",
    "fifteen_plus_four",
    "theta5",
    "theta7",
    "k4",
    "k33",
    "grid(W,H)",
    "cycle(K)",
];

fn build(
    m: u32,
    vertices: Vec<Vertex>,
    mut edges: Vec<EdgeSpec>,
    twists: &[(&str, u32)],
    home: &str,
) -> Result<TwistGraph> {
    for &(id, t) in twists {
        let e = edges
            .iter_mut()
            .find(|e| e.id == id)
            .ok_or_else(|| Error::UnknownEdge(id.to_string()))?;
        e.twist = t % m.max(1);
    }
    TwistGraph::new(m, vertices, edges, Some(home))
}

fn untwisted(pairs: &[(&str, &str)]) -> Vec<EdgeSpec> {
    pairs
        .iter()
        .map(|&(a, b)| EdgeSpec::new(format!("{a}-{b}"), a, b, 0))
        .collect()
}

/// Triangle `u, r, b` with a second, twisting edge between `u` and `r`; `m = 2`.
pub fn figure8() -> TwistGraph {
    TwistGraph::new(
        2,
        vec![
            Vertex::at("u", 0.0, 0.0),
            Vertex::at("r", 1.0, 0.0),
            Vertex::at("b", 0.5, -1.0),
        ],
        vec![
            EdgeSpec::new("ur", "u", "r", 0),
            EdgeSpec::new("ur_dashed", "u", "r", 1),
            EdgeSpec::new("rb", "r", "b", 0),
            EdgeSpec::new("bu", "b", "u", 0),
        ],
        Some("u"),
    )
    .expect("valid preset")
}

/// Θ5: `left` and `right` joined by three paths of length two through
/// `top`, `center` and `bottom`. Edges `e1..e6` point left to right.
pub fn theta5(m: u32, twists: &[(&str, u32)]) -> Result<TwistGraph> {
    let vertices = vec![
        Vertex::at("left", -1.0, 0.0),
        Vertex::at("top", 0.0, 1.0),
        Vertex::at("right", 1.0, 0.0),
        Vertex::at("center", 0.0, 0.0),
        Vertex::at("bottom", 0.0, -1.0),
    ];
    let edges = vec![
        EdgeSpec::new("e1", "left", "top", 0),
        EdgeSpec::new("e2", "top", "right", 0),
        EdgeSpec::new("e3", "left", "center", 0),
        EdgeSpec::new("e4", "center", "right", 0),
        EdgeSpec::new("e5", "left", "bottom", 0),
        EdgeSpec::new("e6", "bottom", "right", 0),
    ];
    build(m, vertices, edges, twists, "left")
}

/// Θ7: hexagon `0,1,2,3,4,inf` with a center vertex `c` joined to `inf` and `2`.
pub fn theta7(m: u32, twists: &[(&str, u32)]) -> Result<TwistGraph> {
    let vertices = vec![
        Vertex::at("0", -0.5, 0.87),
        Vertex::at("1", 0.5, 0.87),
        Vertex::at("2", 1.0, 0.0),
        Vertex::at("3", 0.5, -0.87),
        Vertex::at("4", -0.5, -0.87),
        Vertex::at("inf", -1.0, 0.0),
        Vertex::at("c", 0.0, 0.0),
    ];
    let edges = untwisted(&[
        ("0", "1"),
        ("1", "2"),
        ("2", "3"),
        ("3", "4"),
        ("4", "inf"),
        ("inf", "0"),
        ("inf", "c"),
        ("c", "2"),
    ]);
    build(m, vertices, edges, twists, "c")
}

/// The 15+4 board: 20 positions, `m = 4`, two quarter-turn edges oriented
/// left to right. Vertex `0` is the top position and the blank's home.
pub fn fifteen_plus_four() -> TwistGraph {
    let coords: [(f64, f64); 20] = [
        (0.0, 0.0),
        (-1.0, -1.0),
        (1.0, -1.0),
        (-2.0, -2.0),
        (0.0, -2.0),
        (2.0, -2.0),
        (-3.0, -3.0),
        (-1.0, -3.0),
        (1.0, -3.0),
        (3.0, -3.0),
        (-2.0, -4.0),
        (2.0, -4.0),
        (-1.0, -4.5),
        (1.0, -4.5),
        (-2.0, -5.5),
        (2.0, -5.5),
        (-1.0, -6.0),
        (1.0, -6.0),
        (-2.0, -7.0),
        (2.0, -7.0),
    ];
    let vertices = coords
        .iter()
        .enumerate()
        .map(|(i, &(x, y))| Vertex::at(i.to_string(), x, y))
        .collect();
    let boundary = [
        0, 1, 3, 6, 10, 14, 18, 16, 12, 7, 4, 8, 13, 17, 19, 15, 11, 9, 5, 2,
    ];
    let mut pairs: Vec<(usize, usize, u32)> = boundary
        .iter()
        .zip(boundary.iter().cycle().skip(1))
        .map(|(&a, &b)| (a, b, 0))
        .collect();
    pairs.extend([
        (1, 4, 0),
        (3, 7, 0),
        (7, 10, 0),
        (14, 12, 0),
        (12, 13, 1),
        (2, 4, 0),
        (5, 8, 0),
        (8, 11, 0),
        (15, 13, 0),
        (16, 17, 1),
    ]);
    let edges = pairs
        .into_iter()
        .map(|(a, b, t)| EdgeSpec::new(format!("{a}-{b}"), a.to_string(), b.to_string(), t))
        .collect();
    TwistGraph::new(4, vertices, edges, Some("0")).expect("valid preset")
}

/// `w × h` grid, vertices `r{row}c{col}`, blank home at the bottom-right corner.
pub fn grid(w: usize, h: usize, m: u32, twists: &[(&str, u32)]) -> Result<TwistGraph> {
    if w == 0 || h == 0 {
        return Err(Error::Empty);
    }
    let name = |r: usize, c: usize| format!("r{r}c{c}");
    let mut vertices = Vec::with_capacity(w * h);
    let mut edges = Vec::new();
    for r in 0..h {
        for c in 0..w {
            vertices.push(Vertex::at(name(r, c), c as f64, -(r as f64)));
            if c + 1 < w {
                edges.push(EdgeSpec::new(
                    format!("{}-{}", name(r, c), name(r, c + 1)),
                    name(r, c),
                    name(r, c + 1),
                    0,
                ));
            }
            if r + 1 < h {
                edges.push(EdgeSpec::new(
                    format!("{}-{}", name(r, c), name(r + 1, c)),
                    name(r, c),
                    name(r + 1, c),
                    0,
                ));
            }
        }
    }
    let home = name(h - 1, w - 1);
    build(m, vertices, edges, twists, &home)
}

/// Cycle `v0 … v{k-1}` with edges `v{i}-v{i+1}`; home `v0`.
pub fn cycle(k: usize, m: u32, twists: &[(&str, u32)]) -> Result<TwistGraph> {
    if k < 3 {
        return Err(Error::Syntax(format!("cycle needs at least 3 vertices, got {k}")));
    }
    let vertices = (0..k)
        .map(|i| {
            let a = TAU * i as f64 / k as f64;
            Vertex::at(format!("v{i}"), a.cos(), a.sin())
        })
        .collect();
    let edges = (0..k)
        .map(|i| {
            let j = (i + 1) % k;
            EdgeSpec::new(format!("v{i}-v{j}"), format!("v{i}"), format!("v{j}"), 0)
        })
        .collect();
    build(m, vertices, edges, twists, "v0")
}

/// Complete graph on `a, b, c, d`; home `a`.
pub fn k4(m: u32, twists: &[(&str, u32)]) -> Result<TwistGraph> {
    let vertices = vec![
        Vertex::at("a", 0.0, 1.0),
        Vertex::at("b", -1.0, -0.5),
        Vertex::at("c", 1.0, -0.5),
        Vertex::at("d", 0.0, 0.0),
    ];
    let edges = untwisted(&[
        ("a", "b"),
        ("a", "c"),
        ("a", "d"),
        ("b", "c"),
        ("b", "d"),
        ("c", "d"),
    ]);
    build(m, vertices, edges, twists, "a")
}

/// Complete bipartite `K3,3` on `a0..a2` and `b0..b2`; home `a0`.
pub fn k33(m: u32, twists: &[(&str, u32)]) -> Result<TwistGraph> {
    let mut vertices = Vec::new();
    for i in 0..3 {
        vertices.push(Vertex::at(format!("a{i}"), i as f64, 1.0));
    }
    for j in 0..3 {
        vertices.push(Vertex::at(format!("b{j}"), j as f64, 0.0));
    }
    let mut edges = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            edges.push(EdgeSpec::new(
                format!("a{i}-b{j}"),
                format!("a{i}"),
                format!("b{j}"),
                0,
            ));
        }
    }
    build(m, vertices, edges, twists, "a0")
}

fn parse_sizes(args: &str) -> Result<Vec<usize>> {
    args.split([',', 'x'])
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::UnknownPreset(args.to_string()))
        })
        .collect()
}

/// Looks up a preset by name. `grid(W,H)` / `gridWxH` and `cycle(K)` /
/// `cycleK` carry their sizes in the name. `m` overrides the modulus
/// (defaults: 2 for `figure8`, 4 for `fifteen_plus_four`, 1 otherwise).
pub fn preset(name: &str, m: Option<u32>, twists: &[(&str, u32)]) -> Result<TwistGraph> {
    let fixed = |g: TwistGraph| -> Result<TwistGraph> {
        let mut current: Vec<u32> = g.edges().iter().map(|e| e.twist).collect();
        for &(id, t) in twists {
            current[g.edge(id)?] = t;
        }
        let modulus = m.unwrap_or(g.modulus());
        g.with_twists(modulus, &current)
    };
    let m1 = m.unwrap_or(1);
    let trimmed = name.trim().to_ascii_lowercase();
    let inner = |prefix: &str| -> Option<String> {
        let rest = trimmed.strip_prefix(prefix)?;
        let rest = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(rest);
        Some(rest.to_string())
    };
    match trimmed.as_str() {
        "figure8" => fixed(figure8()),
        "fifteen_plus_four" | "15+4" => fixed(fifteen_plus_four()),
        "theta5" => theta5(m1, twists),
        "theta7" => theta7(m1, twists),
        "k4" => k4(m1, twists),
        "k33" | "k3,3" => k33(m1, twists),
        _ => {
            if let Some(args) = inner("grid") {
                match parse_sizes(&args)?.as_slice() {
                    &[w, h] => grid(w, h, m1, twists),
                    _ => Err(Error::UnknownPreset(name.to_string())),
                }
            } else if let Some(args) = inner("cycle") {
                match parse_sizes(&args)?.as_slice() {
                    &[k] => cycle(k, m1, twists),
                    _ => Err(Error::UnknownPreset(name.to_string())),
                }
            } else {
                Err(Error::UnknownPreset(name.to_string()))
            }
        }
    }
}
