//! Immutable simple undirected graphs and their elementary metrics.
//!
//! Vertices are dense ids `0..n`. Every graph keeps sorted neighbor lists;
//! graphs up to [`DEFAULT_MATRIX_CAP`] vertices additionally keep an
//! adjacency bit matrix for constant-time edge queries.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_MATRIX_CAP: usize = 4096;

/// Largest graph accepted by [`canonical_code`].
pub const CANONICAL_CAP: usize = 11;

#[derive(Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    matrix: Option<FixedBitSet>,
}

impl Graph {
    /// Builds a graph from an edge iterator. Duplicate edges collapse; self
    /// loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_edges_with_cap(n, edges, DEFAULT_MATRIX_CAP)
    }

    pub fn from_edges_with_cap<I>(n: usize, edges: I, matrix_cap: usize) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::InvalidInput(format!("self-loop on vertex {u}")));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        list.dedup();

        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
        }
        for row in &mut adj {
            row.sort_unstable();
        }

        let matrix = (n <= matrix_cap).then(|| {
            let mut bits = FixedBitSet::with_capacity(n * n);
            for &(u, v) in &list {
                bits.insert(u * n + v);
                bits.insert(v * n + u);
            }
            bits
        });

        Ok(Self {
            n,
            edges: list,
            adj,
            matrix,
        })
    }

    pub fn empty(n: usize) -> Self {
        Self::from_edges(n, []).expect("edgeless graph is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_matrix(&self) -> bool {
        self.matrix.is_some()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        match &self.matrix {
            Some(bits) => bits.contains(u * self.n + v),
            None => self.adj[u].binary_search(&v).is_ok(),
        }
    }

    /// Position of edge `(u, v)` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    pub fn is_stable(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    /// True iff every vertex is in `set` or has a neighbor in it.
    pub fn is_dominating(&self, set: &[usize]) -> bool {
        let mut covered = vec![false; self.n];
        for &v in set {
            covered[v] = true;
            for &w in &self.adj[v] {
                covered[w] = true;
            }
        }
        covered.into_iter().all(|c| c)
    }

    pub fn is_regular(&self) -> bool {
        self.adj.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// Canonical edge-list text: `n m` followed by the sorted edges.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.m());
        for (u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// Sorted, duplicate-free subset of the vertices of a host graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexSet {
    members: Vec<usize>,
    universe: usize,
}

impl VertexSet {
    pub fn new<I: IntoIterator<Item = usize>>(universe: usize, members: I) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if let Some(&last) = members.last() {
            if last >= universe {
                return Err(Error::VertexOutOfRange {
                    vertex: last,
                    n: universe,
                });
            }
        }
        Ok(Self { members, universe })
    }

    pub fn empty(universe: usize) -> Self {
        Self {
            members: Vec::new(),
            universe,
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    /// Vertices of the universe not in this set.
    pub fn complement(&self) -> VertexSet {
        let mut mark = vec![false; self.universe];
        for &v in &self.members {
            mark[v] = true;
        }
        VertexSet {
            members: (0..self.universe).filter(|&v| !mark[v]).collect(),
            universe: self.universe,
        }
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.members
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Dimacs,
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_numbers(line_no: usize, fields: &[&str]) -> Result<Vec<usize>> {
    fields
        .iter()
        .map(|f| {
            f.parse::<usize>()
                .map_err(|_| parse_error(line_no, format!("expected a non-negative integer, found {f:?}")))
        })
        .collect()
}

pub fn parse_graph(text: &str, format: Format) -> Result<Graph> {
    match format {
        Format::EdgeList => parse_edge_list(text),
        Format::Dimacs => parse_dimacs(text),
    }
}

fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or_else(|| parse_error(1, "missing header \"n m\""))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(parse_error(header_line, "header must be \"n m\""));
    }
    let nums = parse_numbers(header_line, &fields)?;
    let (n, m) = (nums[0], nums[1]);

    let mut edges = Vec::with_capacity(m);
    let mut last_line = header_line;
    for (line_no, line) in lines {
        last_line = line_no;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(parse_error(line_no, "edge line must be \"u v\""));
        }
        let nums = parse_numbers(line_no, &fields)?;
        let (u, v) = (nums[0], nums[1]);
        check_edge(line_no, u, v, n)?;
        if edges.len() == m {
            return Err(parse_error(line_no, format!("more than the declared {m} edges")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(parse_error(
            last_line,
            format!("declared {m} edges but found {}", edges.len()),
        ));
    }
    Graph::from_edges(n, edges)
}

fn check_edge(line_no: usize, u: usize, v: usize, n: usize) -> Result<()> {
    if u >= n || v >= n {
        return Err(parse_error(line_no, format!("vertex {} out of range (n = {n})", u.max(v))));
    }
    if u == v {
        return Err(parse_error(line_no, format!("self-loop on vertex {u}")));
    }
    Ok(())
}

fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut n = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if n.is_some() {
                    return Err(parse_error(line_no, "duplicate problem line"));
                }
                if fields.len() != 4 || fields[1] != "edge" {
                    return Err(parse_error(line_no, "problem line must be \"p edge n m\""));
                }
                n = Some(parse_numbers(line_no, &fields[2..3])?[0]);
            }
            "e" => {
                let n = n.ok_or_else(|| parse_error(line_no, "edge before problem line"))?;
                if fields.len() != 3 {
                    return Err(parse_error(line_no, "edge line must be \"e u v\""));
                }
                let nums = parse_numbers(line_no, &fields[1..])?;
                if nums[0] == 0 || nums[1] == 0 {
                    return Err(parse_error(line_no, "DIMACS vertices are 1-based"));
                }
                let (u, v) = (nums[0] - 1, nums[1] - 1);
                check_edge(line_no, u, v, n)?;
                edges.push((u, v));
            }
            other => return Err(parse_error(line_no, format!("unknown line type {other:?}"))),
        }
    }
    let n = n.ok_or_else(|| parse_error(1, "missing problem line"))?;
    Graph::from_edges(n, edges)
}

/// BFS distances from `source`; `None` marks unreachable vertices.
pub fn distances_from(g: &Graph, source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].unwrap();
        for &w in g.neighbors(v) {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Maximum shortest-path distance, or `None` when the graph is disconnected.
pub fn diameter(g: &Graph) -> Option<usize> {
    let mut best = 0;
    for v in 0..g.n() {
        for d in distances_from(g, v) {
            best = best.max(d?);
        }
    }
    Some(best)
}

pub fn is_connected(g: &Graph) -> bool {
    g.n() == 0 || distances_from(g, 0).iter().all(Option::is_some)
}

/// Connected components, each sorted, ordered by smallest member.
pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        let mut comp: Vec<usize> = distances_from(g, s)
            .iter()
            .enumerate()
            .filter_map(|(v, d)| d.map(|_| v))
            .collect();
        comp.sort_unstable();
        for &v in &comp {
            seen[v] = true;
        }
        out.push(comp);
    }
    out
}

/// Length of a shortest cycle, or `None` for forests.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.n();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        dist.fill(usize::MAX);
        parent.fill(usize::MAX);
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            if let Some(b) = best {
                // No shorter cycle can close beyond this depth.
                if 2 * dist[v] >= b {
                    break;
                }
            }
            for &w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                } else if parent[v] != w {
                    let len = dist[v] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

/// The subgraph induced by `s`, plus the map from new ids to ids of `g`.
pub fn induced_subgraph(g: &Graph, s: &VertexSet) -> Result<(Graph, Vec<usize>)> {
    if s.universe() > g.n() {
        if let Some(&v) = s.members().iter().find(|&&v| v >= g.n()) {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
    }
    let keep = s.members().to_vec();
    let mut new_id = vec![usize::MAX; g.n()];
    for (i, &v) in keep.iter().enumerate() {
        new_id[v] = i;
    }
    let edges = g
        .edges()
        .iter()
        .filter(|&&(u, v)| new_id[u] != usize::MAX && new_id[v] != usize::MAX)
        .map(|&(u, v)| (new_id[u], new_id[v]));
    Ok((Graph::from_edges(keep.len(), edges)?, keep))
}

/// `g` minus the listed vertices, with the map from new ids to old ids.
pub fn remove_vertices(g: &Graph, removed: &[usize]) -> (Graph, Vec<usize>) {
    let mut drop = vec![false; g.n()];
    for &v in removed {
        drop[v] = true;
    }
    let keep = VertexSet::new(g.n(), (0..g.n()).filter(|&v| !drop[v])).expect("ids in range");
    induced_subgraph(g, &keep).expect("ids in range")
}

pub fn complement(g: &Graph) -> Graph {
    let n = g.n();
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    let edges: Vec<_> = edges.filter(|&(u, v)| !g.has_edge(u, v)).collect();
    Graph::from_edges(n, edges).expect("complement of a valid graph is valid")
}

/// Disjoint union; vertices of `h` are shifted by `g.n()`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let shift = g.n();
    let edges = g
        .edges()
        .iter()
        .copied()
        .chain(h.edges().iter().map(|&(u, v)| (u + shift, v + shift)));
    Graph::from_edges(g.n() + h.n(), edges).expect("union of valid graphs is valid")
}

/// Isomorphism-invariant code: equal codes iff isomorphic graphs.
///
/// Vertices are first split into classes by color refinement; labelings
/// are then searched exhaustively within classes, keeping the labeling
/// whose adjacency rows read largest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode {
    n: usize,
    bits: u64,
}

pub fn canonical_code(g: &Graph) -> Result<CanonicalCode> {
    let n = g.n();
    if n > CANONICAL_CAP {
        return Err(Error::UnsupportedPattern {
            size: n,
            cap: CANONICAL_CAP,
        });
    }
    let colors = refine_colors(g);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (colors[v], v));
    let slot_color: Vec<usize> = order.iter().map(|&v| colors[v]).collect();

    let total = n * n.saturating_sub(1) / 2;
    let twins: Vec<Vec<bool>> = (0..n).map(|v| (0..n).map(|w| v != w && are_twins(g, v, w)).collect()).collect();
    let mut search = CanonSearch {
        g,
        slot_color: &slot_color,
        colors: &colors,
        twins: &twins,
        total,
        placed: Vec::with_capacity(n),
        used: vec![false; n],
        best: None,
    };
    search.run(0);
    Ok(CanonicalCode {
        n,
        bits: search.best.unwrap_or(0),
    })
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    if g.n() != h.n() || g.m() != h.m() {
        return Ok(false);
    }
    Ok(canonical_code(g)? == canonical_code(h)?)
}

fn refine_colors(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut colors: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    loop {
        let mut signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut around: Vec<usize> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
                around.sort_unstable();
                (colors[v], around)
            })
            .collect();
        let mut distinct = signatures.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = signatures
            .drain(..)
            .map(|s| distinct.binary_search(&s).unwrap())
            .collect();
        let before = {
            let mut c = colors.clone();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        colors = next;
        if distinct.len() == before {
            return colors;
        }
    }
}

/// `N(v) \ {w} = N(w) \ {v}`: swapping `v` and `w` is an automorphism.
fn are_twins(g: &Graph, v: usize, w: usize) -> bool {
    g.degree(v) - g.has_edge(v, w) as usize == g.degree(w) - g.has_edge(v, w) as usize
        && g.neighbors(v).iter().all(|&x| x == w || g.has_edge(w, x))
}

struct CanonSearch<'a> {
    g: &'a Graph,
    slot_color: &'a [usize],
    colors: &'a [usize],
    twins: &'a [Vec<bool>],
    total: usize,
    placed: Vec<usize>,
    used: Vec<bool>,
    best: Option<u64>,
}

impl CanonSearch<'_> {
    fn prefix_bits(&self) -> u64 {
        // Row j holds adjacency of slot j to slots 0..j, most significant first.
        let mut bits = 0u64;
        for j in 1..self.placed.len() {
            for i in 0..j {
                bits = (bits << 1) | self.g.has_edge(self.placed[i], self.placed[j]) as u64;
            }
        }
        bits
    }

    fn run(&mut self, slot: usize) {
        let k = self.placed.len();
        let fixed = k * k.saturating_sub(1) / 2;
        if let Some(best) = self.best {
            let prefix = self.prefix_bits();
            let best_prefix = if fixed == 0 { 0 } else { best >> (self.total - fixed) };
            if prefix < best_prefix {
                return;
            }
            if prefix > best_prefix && slot == self.slot_color.len() {
                self.best = Some(prefix);
                return;
            }
        }
        if slot == self.slot_color.len() {
            let code = self.prefix_bits();
            if self.best.is_none_or(|b| code > b) {
                self.best = Some(code);
            }
            return;
        }
        for v in 0..self.g.n() {
            if self.used[v] || self.colors[v] != self.slot_color[slot] {
                continue;
            }
            // An earlier unused twin gives the same subtree.
            if (0..v).any(|w| !self.used[w] && self.twins[v][w]) {
                continue;
            }
            self.used[v] = true;
            self.placed.push(v);
            self.run(slot + 1);
            self.placed.pop();
            self.used[v] = false;
        }
    }
}

/// Small named graphs used throughout the crate and its tests.
pub mod named {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycles need at least three vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    /// `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
    }

    /// `K_{a,b}` with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).unwrap()
    }

    pub fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::from_edges(10, outer.chain(spokes).chain(inner)).unwrap()
    }

    /// Octahedron `K_{2,2,2}`, the line graph of `K_4`.
    pub fn octahedron() -> Graph {
        let edges = (0..6).flat_map(|u| (u + 1..6).map(move |v| (u, v)));
        Graph::from_edges(6, edges.filter(|&(u, v)| !(u % 3 == v % 3))).unwrap()
    }
}
