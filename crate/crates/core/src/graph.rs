//! Twist graphs: a multigraph whose oriented edges carry rotations in `Z/mZ`.
//!
//! Each edge stores its twist once, on its declared tail→head orientation;
//! traversing it head→tail yields the negated twist.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const GRAPH_FORMAT: &str = "twistgraph/1";

#[derive(Clone, Debug, PartialEq)]
pub struct Vertex {
    pub id: String,
    pub x: Option<f64>,
    pub y: Option<f64>,
}

impl Vertex {
    pub fn new(id: impl Into<String>) -> Self {
        Vertex {
            id: id.into(),
            x: None,
            y: None,
        }
    }

    pub fn at(id: impl Into<String>, x: f64, y: f64) -> Self {
        Vertex {
            id: id.into(),
            x: Some(x),
            y: Some(y),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub tail: usize,
    pub head: usize,
    pub twist: u32,
}

/// One traversal of an edge; `forward` means tail→head.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub edge: usize,
    pub forward: bool,
}

impl Step {
    pub fn forward(edge: usize) -> Self {
        Step { edge, forward: true }
    }

    pub fn backward(edge: usize) -> Self {
        Step {
            edge,
            forward: false,
        }
    }

    pub fn reversed(self) -> Self {
        Step {
            edge: self.edge,
            forward: !self.forward,
        }
    }
}

/// Edge description by vertex id, used to build graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSpec {
    pub id: String,
    pub tail: String,
    pub head: String,
    pub twist: u32,
}

impl EdgeSpec {
    pub fn new(id: impl Into<String>, tail: impl Into<String>, head: impl Into<String>, twist: u32) -> Self {
        EdgeSpec {
            id: id.into(),
            tail: tail.into(),
            head: head.into(),
            twist,
        }
    }
}

#[derive(Clone, Debug)]
pub struct TwistGraph {
    m: u32,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    home: Option<usize>,
    incidence: Vec<Vec<usize>>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
}

impl PartialEq for TwistGraph {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m
            && self.vertices == other.vertices
            && self.edges == other.edges
            && self.home == other.home
    }
}

impl TwistGraph {
    /// Validates and builds a twist graph. Rejects loops, duplicate ids,
    /// dangling references, twists outside `[0, m)` and disconnected graphs.
    pub fn new(m: u32, vertices: Vec<Vertex>, edges: Vec<EdgeSpec>, home: Option<&str>) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidModulus(i64::from(m)));
        }
        if vertices.is_empty() {
            return Err(Error::Empty);
        }
        let mut vertex_index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.id.clone(), i).is_some() {
                return Err(Error::DuplicateId(v.id.clone()));
            }
        }
        let mut edge_index = HashMap::with_capacity(edges.len());
        let mut built = Vec::with_capacity(edges.len());
        for (i, e) in edges.into_iter().enumerate() {
            if edge_index.insert(e.id.clone(), i).is_some() {
                return Err(Error::DuplicateId(e.id));
            }
            let tail = *vertex_index
                .get(&e.tail)
                .ok_or_else(|| Error::UnknownVertex(e.tail.clone()))?;
            let head = *vertex_index
                .get(&e.head)
                .ok_or_else(|| Error::UnknownVertex(e.head.clone()))?;
            if tail == head {
                return Err(Error::Loop(e.id));
            }
            if e.twist >= m {
                return Err(Error::TwistOutOfRange {
                    edge: e.id,
                    twist: i64::from(e.twist),
                    m,
                });
            }
            built.push(Edge {
                id: e.id,
                tail,
                head,
                twist: e.twist,
            });
        }
        let home = match home {
            Some(h) => Some(
                *vertex_index
                    .get(h)
                    .ok_or_else(|| Error::UnknownVertex(h.to_string()))?,
            ),
            None => None,
        };
        let mut incidence = vec![Vec::new(); vertices.len()];
        for (i, e) in built.iter().enumerate() {
            incidence[e.tail].push(i);
            incidence[e.head].push(i);
        }
        let g = TwistGraph {
            m,
            vertices,
            edges: built,
            home,
            incidence,
            vertex_index,
            edge_index,
        };
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Designated home of the blank, if the document names one.
    pub fn home(&self) -> Option<usize> {
        self.home
    }

    /// The declared home, or the first vertex.
    pub fn default_home(&self) -> usize {
        self.home.unwrap_or(0)
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v].id
    }

    pub fn edge_id(&self, e: usize) -> &str {
        &self.edges[e].id
    }

    pub fn vertex(&self, id: &str) -> Result<usize> {
        self.vertex_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn edge(&self, id: &str) -> Result<usize> {
        self.edge_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownEdge(id.to_string()))
    }

    /// Convenience: traversal of edge `id` in the given direction.
    pub fn step(&self, id: &str, forward: bool) -> Result<Step> {
        Ok(Step {
            edge: self.edge(id)?,
            forward,
        })
    }

    /// Edge indices incident to `v`, in declaration order.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn tail(&self, s: Step) -> usize {
        let e = &self.edges[s.edge];
        if s.forward {
            e.tail
        } else {
            e.head
        }
    }

    pub fn head(&self, s: Step) -> usize {
        let e = &self.edges[s.edge];
        if s.forward {
            e.head
        } else {
            e.tail
        }
    }

    /// Twist picked up along this traversal; reverse traversals negate.
    pub fn twist(&self, s: Step) -> u32 {
        let t = self.edges[s.edge].twist;
        if s.forward {
            t
        } else {
            (self.m - t) % self.m
        }
    }

    /// Traversals leaving `v`, in edge order.
    pub fn steps_from(&self, v: usize) -> impl Iterator<Item = Step> + '_ {
        self.incidence[v].iter().map(move |&e| Step {
            edge: e,
            forward: self.edges[e].tail == v,
        })
    }

    /// Distinct neighbours of `v` in first-seen edge order.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for s in self.steps_from(v) {
            let w = self.head(s);
            if !out.contains(&w) {
                out.push(w);
            }
        }
        out
    }

    pub fn format_step(&self, s: Step) -> String {
        format!("{}{}", self.edges[s.edge].id, if s.forward { '+' } else { '-' })
    }

    /// Parses `"<edge-id>+"` / `"<edge-id>-"`.
    pub fn parse_step(&self, token: &str) -> Result<Step> {
        let (id, forward) = if let Some(id) = token.strip_suffix('+') {
            (id, true)
        } else if let Some(id) = token.strip_suffix('-') {
            (id, false)
        } else {
            return Err(Error::Syntax(format!("move `{token}` must end in + or -")));
        };
        self.step(id, forward)
    }

    /// Copy with a different modulus and twists, same topology.
    pub fn with_twists(&self, m: u32, twists: &[u32]) -> Result<TwistGraph> {
        assert_eq!(twists.len(), self.edges.len());
        if m < 1 {
            return Err(Error::InvalidModulus(i64::from(m)));
        }
        let mut g = self.clone();
        g.m = m;
        for (e, &t) in g.edges.iter_mut().zip(twists) {
            e.twist = t % m;
        }
        Ok(g)
    }

    pub fn with_home(&self, home: usize) -> TwistGraph {
        let mut g = self.clone();
        g.home = Some(home);
        g
    }

    fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &e in &self.incidence[v] {
                let w = self.edges[e].tail + self.edges[e].head - v;
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    pub fn has_parallel_edges(&self) -> bool {
        let mut pairs = BTreeSet::new();
        self.edges
            .iter()
            .any(|e| !pairs.insert((e.tail.min(e.head), e.tail.max(e.head))))
    }

    /// Adjacency sets of the simple graph obtained by merging parallel edges.
    pub fn simple_adjacency(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.vertices.len()];
        for e in &self.edges {
            adj[e.tail].insert(e.head);
            adj[e.head].insert(e.tail);
        }
        adj
    }

    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            format: GRAPH_FORMAT.to_string(),
            m: i64::from(self.m),
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexDocument {
                    id: v.id.clone(),
                    x: v.x,
                    y: v.y,
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDocument {
                    id: e.id.clone(),
                    tail: self.vertices[e.tail].id.clone(),
                    head: self.vertices[e.head].id.clone(),
                    twist: i64::from(e.twist),
                })
                .collect(),
            home: self.home.map(|h| self.vertices[h].id.clone()),
        }
    }

    pub fn from_document(doc: GraphDocument) -> Result<TwistGraph> {
        if doc.format != GRAPH_FORMAT {
            return Err(Error::Syntax(format!(
                "expected format `{GRAPH_FORMAT}`, got `{}`",
                doc.format
            )));
        }
        if doc.m < 1 || doc.m > i64::from(u32::MAX) {
            return Err(Error::InvalidModulus(doc.m));
        }
        let m = doc.m as u32;
        let vertices = doc
            .vertices
            .into_iter()
            .map(|v| Vertex {
                id: v.id,
                x: v.x,
                y: v.y,
            })
            .collect();
        let mut edges = Vec::with_capacity(doc.edges.len());
        for e in doc.edges {
            if e.twist < 0 || e.twist >= doc.m {
                return Err(Error::TwistOutOfRange {
                    edge: e.id,
                    twist: e.twist,
                    m,
                });
            }
            edges.push(EdgeSpec {
                id: e.id,
                tail: e.tail,
                head: e.head,
                twist: e.twist as u32,
            });
        }
        TwistGraph::new(m, vertices, edges, doc.home.as_deref())
    }

    pub fn from_value(value: serde_json::Value) -> Result<TwistGraph> {
        let doc: GraphDocument =
            serde_json::from_value(value).map_err(|e| Error::Syntax(e.to_string()))?;
        Self::from_document(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("graph document serializes")
    }
}

/// Parses a `twistgraph/1` document.
pub fn parse_twist_graph(text: &str) -> Result<TwistGraph> {
    let doc: GraphDocument = serde_json::from_str(text).map_err(|e| Error::Syntax(e.to_string()))?;
    TwistGraph::from_document(doc)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub format: String,
    pub m: i64,
    pub vertices: Vec<VertexDocument>,
    pub edges: Vec<EdgeDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub home: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDocument {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDocument {
    pub id: String,
    pub tail: String,
    pub head: String,
    pub twist: i64,
}

// ---------------------------------------------------------------------------
// Spanning tree

/// Breadth-first spanning tree rooted at a vertex of maximum (simple) degree,
/// ties broken by vertex order; children discovered in edge order.
#[derive(Clone, Debug)]
pub struct SpanningTree {
    pub root: usize,
    /// Step from the parent into this vertex; `None` at the root.
    pub parent_step: Vec<Option<Step>>,
    pub depth: Vec<usize>,
    pub in_tree: Vec<bool>,
}

impl SpanningTree {
    pub fn canonical(g: &TwistGraph) -> SpanningTree {
        let root = (0..g.vertex_count())
            .max_by(|&a, &b| {
                g.neighbors(a)
                    .len()
                    .cmp(&g.neighbors(b).len())
                    .then(b.cmp(&a))
            })
            .expect("graph is non-empty");
        Self::rooted_at(g, root)
    }

    pub fn rooted_at(g: &TwistGraph, root: usize) -> SpanningTree {
        let n = g.vertex_count();
        let mut parent_step = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        let mut in_tree = vec![false; g.edge_count()];
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for s in g.steps_from(v) {
                let w = g.head(s);
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent_step[w] = Some(s);
                    in_tree[s.edge] = true;
                    queue.push_back(w);
                }
            }
        }
        SpanningTree {
            root,
            parent_step,
            depth,
            in_tree,
        }
    }

    /// The unique tree path from `a` to `b`.
    pub fn path(&self, g: &TwistGraph, a: usize, b: usize) -> Vec<Step> {
        let mut up = Vec::new(); // from a toward the meeting vertex
        let mut down = Vec::new(); // from b toward the meeting vertex, reversed later
        let (mut x, mut y) = (a, b);
        while self.depth[x] > self.depth[y] {
            let s = self.parent_step[x].expect("non-root");
            up.push(s.reversed());
            x = g.tail(s);
        }
        while self.depth[y] > self.depth[x] {
            let s = self.parent_step[y].expect("non-root");
            down.push(s);
            y = g.tail(s);
        }
        while x != y {
            let sx = self.parent_step[x].expect("non-root");
            up.push(sx.reversed());
            x = g.tail(sx);
            let sy = self.parent_step[y].expect("non-root");
            down.push(sy);
            y = g.tail(sy);
        }
        down.reverse();
        up.extend(down);
        up
    }

    pub fn off_tree_edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.in_tree
            .iter()
            .enumerate()
            .filter(|(_, &t)| !t)
            .map(|(e, _)| e)
    }
}

// ---------------------------------------------------------------------------
// Structural predicates

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CollapseClass {
    Cycle,
    Theta5,
    Theta7,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub connected: bool,
    pub two_vertex_connected: bool,
    pub loop_free: bool,
    pub is_cycle: bool,
    pub is_multi_cycle: bool,
    pub has_parallel_edges: bool,
    pub simple_collapse_class: CollapseClass,
}

pub fn validate(g: &TwistGraph) -> ValidationReport {
    let adj = g.simple_adjacency();
    let parallel = g.has_parallel_edges();
    let class = collapse_class(&adj);
    let loop_free = g.edges.iter().all(|e| e.tail != e.head);
    ValidationReport {
        connected: g.is_connected(),
        two_vertex_connected: g.vertex_count() >= 3 && articulation_points(&adj).is_empty(),
        loop_free,
        is_cycle: class == CollapseClass::Cycle && !parallel,
        is_multi_cycle: class == CollapseClass::Cycle && parallel,
        has_parallel_edges: parallel,
        simple_collapse_class: class,
    }
}

fn collapse_class(adj: &[BTreeSet<usize>]) -> CollapseClass {
    let n = adj.len();
    if n >= 3 && adj.iter().all(|a| a.len() == 2) {
        // connected and 2-regular
        return CollapseClass::Cycle;
    }
    if isomorphism(adj, &reference_theta5()).is_some() {
        return CollapseClass::Theta5;
    }
    if isomorphism(adj, &reference_theta7()).is_some() {
        return CollapseClass::Theta7;
    }
    CollapseClass::Other
}

fn reference(n: usize, edges: &[(usize, usize)]) -> Vec<BTreeSet<usize>> {
    let mut adj = vec![BTreeSet::new(); n];
    for &(a, b) in edges {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    adj
}

/// Θ5 with vertices left, top, right, center, bottom.
pub fn reference_theta5() -> Vec<BTreeSet<usize>> {
    reference(5, &[(0, 1), (1, 2), (0, 3), (3, 2), (0, 4), (4, 2)])
}

/// Θ7 with vertices 0, 1, 2, 3, 4, ∞, center.
pub fn reference_theta7() -> Vec<BTreeSet<usize>> {
    reference(
        7,
        &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (5, 6), (6, 2)],
    )
}

/// Brute-force isomorphism onto a small reference graph: returns `map` with
/// `map[v]` the reference vertex matched to `v`.
pub fn isomorphism(adj: &[BTreeSet<usize>], reference: &[BTreeSet<usize>]) -> Option<Vec<usize>> {
    let n = adj.len();
    if n != reference.len() {
        return None;
    }
    let edges = |a: &[BTreeSet<usize>]| a.iter().map(|s| s.len()).sum::<usize>();
    if edges(adj) != edges(reference) {
        return None;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        v: usize,
        adj: &[BTreeSet<usize>],
        reference: &[BTreeSet<usize>],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if v == adj.len() {
            return true;
        }
        for r in 0..reference.len() {
            if used[r] || reference[r].len() != adj[v].len() {
                continue;
            }
            let consistent = (0..v).all(|u| adj[v].contains(&u) == reference[r].contains(&map[u]));
            if !consistent {
                continue;
            }
            map[v] = r;
            used[r] = true;
            if extend(v + 1, adj, reference, map, used) {
                return true;
            }
            used[r] = false;
            map[v] = usize::MAX;
        }
        false
    }
    extend(0, adj, reference, &mut map, &mut used).then_some(map)
}

/// Articulation vertices of a simple graph (lowpoint search).
pub fn articulation_points(adj: &[BTreeSet<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut is_cut = vec![false; n];
    let mut timer = 0;
    for start in 0..n {
        if disc[start] != usize::MAX {
            continue;
        }
        // (vertex, parent, neighbour iterator position)
        let mut stack: Vec<(usize, usize, Vec<usize>, usize)> = Vec::new();
        disc[start] = timer;
        low[start] = timer;
        timer += 1;
        stack.push((start, usize::MAX, adj[start].iter().copied().collect(), 0));
        let mut root_children = 0;
        while let Some(top) = stack.last_mut() {
            let (v, parent) = (top.0, top.1);
            if top.3 < top.2.len() {
                let w = top.2[top.3];
                top.3 += 1;
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    if v == start {
                        root_children += 1;
                    }
                    stack.push((w, v, adj[w].iter().copied().collect(), 0));
                } else if w != parent {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if parent != start && low[v] >= disc[parent] {
                        is_cut[parent] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[start] = true;
        }
    }
    (0..n).filter(|&v| is_cut[v]).collect()
}

/// Result of a constrained two-colouring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coloring {
    /// Colour (0 or 1) per vertex.
    Colored(Vec<u8>),
    /// Closed walk (starting at the tail of its first step) violating the constraints.
    Witness(Vec<Step>),
    /// Twist-bipartiteness is only defined for even moduli.
    OddModulus,
}

impl Coloring {
    pub fn holds(&self) -> bool {
        matches!(self, Coloring::Colored(_))
    }

    pub fn colors(&self) -> Option<&[u8]> {
        match self {
            Coloring::Colored(c) => Some(c),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&[Step]> {
        match self {
            Coloring::Witness(w) => Some(w),
            _ => None,
        }
    }
}

fn two_color(g: &TwistGraph, crosses: impl Fn(&Edge) -> bool) -> Coloring {
    let tree = SpanningTree::canonical(g);
    let n = g.vertex_count();
    let mut color = vec![0u8; n];
    // BFS order by depth so parents are coloured first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| tree.depth[v]);
    for v in order {
        if let Some(s) = tree.parent_step[v] {
            let p = g.tail(s);
            color[v] = color[p] ^ u8::from(crosses(&g.edges[s.edge]));
        }
    }
    for (i, e) in g.edges.iter().enumerate() {
        let differ = color[e.tail] != color[e.head];
        if differ != crosses(e) {
            let mut walk = vec![Step::forward(i)];
            walk.extend(tree.path(g, e.head, e.tail));
            return Coloring::Witness(walk);
        }
    }
    Coloring::Colored(color)
}

/// Ordinary bipartiteness of the underlying multigraph.
pub fn is_bipartite(g: &TwistGraph) -> Coloring {
    two_color(g, |_| true)
}

/// Even-twist edges must join different colours, odd-twist edges equal ones.
pub fn is_twist_bipartite(g: &TwistGraph) -> Coloring {
    if g.m % 2 == 1 {
        return Coloring::OddModulus;
    }
    two_color(g, |e| e.twist % 2 == 0)
}

// ---------------------------------------------------------------------------
// Gauge and reduction

/// Re-choice of each position's reference orientation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gauge {
    pub psi: Vec<u32>,
}

impl Gauge {
    pub fn zero(n: usize) -> Self {
        Gauge { psi: vec![0; n] }
    }
}

/// `γ'_e = γ_e + ψ(tail) − ψ(head)`.
pub fn gauge_transform(g: &TwistGraph, gauge: &Gauge) -> TwistGraph {
    assert_eq!(gauge.psi.len(), g.vertex_count(), "gauge must cover every vertex");
    let m = u64::from(g.m);
    let twists: Vec<u32> = g
        .edges
        .iter()
        .map(|e| {
            let t = u64::from(e.twist) + u64::from(gauge.psi[e.tail] % g.m) + m
                - u64::from(gauge.psi[e.head] % g.m);
            (t % m) as u32
        })
        .collect();
    g.with_twists(g.m, &twists).expect("modulus unchanged")
}

#[derive(Clone, Debug)]
pub struct Normalization {
    pub gauge: Gauge,
    pub normalized: TwistGraph,
    pub d: u32,
    pub reduced: TwistGraph,
}

/// Gauges the twists to zero on the canonical spanning tree, then divides
/// out `d = gcd(m, all twists)`.
pub fn normalize_and_reduce(g: &TwistGraph) -> Normalization {
    let tree = SpanningTree::canonical(g);
    let m = g.m;
    let n = g.vertex_count();
    let mut psi = vec![0u32; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| tree.depth[v]);
    for v in order {
        if let Some(s) = tree.parent_step[v] {
            let p = g.tail(s);
            // traversal p -> v must end up with twist 0
            psi[v] = (psi[p] + g.twist(s)) % m;
        }
    }
    let gauge = Gauge { psi };
    let normalized = gauge_transform(g, &gauge);
    let d = normalized
        .edges
        .iter()
        .fold(m, |acc, e| acc.gcd(&e.twist));
    let reduced_twists: Vec<u32> = normalized.edges.iter().map(|e| e.twist / d).collect();
    let reduced = normalized
        .with_twists(m / d, &reduced_twists)
        .expect("m/d >= 1");
    Normalization {
        gauge,
        normalized,
        d,
        reduced,
    }
}
