//! Small forbidden patterns and induced-subgraph search.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{named, Graph};

pub const DEFAULT_PATTERN_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PatternName {
    #[serde(rename = "claw")]
    Claw,
    #[serde(rename = "K14")]
    K14,
    #[serde(rename = "2K2")]
    TwoK2,
    C3,
    C4,
    C5,
    C6,
    P4,
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
    F7,
    F8,
    F9,
}

impl PatternName {
    /// The nine minimal non-line graphs, in increasing order of size.
    pub const LINE_OBSTRUCTIONS: [PatternName; 9] = [
        PatternName::F1,
        PatternName::F2,
        PatternName::F3,
        PatternName::F4,
        PatternName::F5,
        PatternName::F6,
        PatternName::F7,
        PatternName::F8,
        PatternName::F9,
    ];
}

impl fmt::Display for PatternName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant serializes");
        write!(f, "{}", s.as_str().unwrap())
    }
}

#[derive(Clone, Debug)]
pub struct Pattern {
    name: PatternName,
    graph: Graph,
}

fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges.iter().copied()).expect("pattern tables are valid")
}

impl Pattern {
    pub fn new(name: PatternName) -> Self {
        use PatternName::*;
        let graph = match name {
            Claw | F1 => named::star(3),
            K14 => named::star(4),
            TwoK2 => graph(4, &[(0, 1), (2, 3)]),
            C3 => named::cycle(3),
            C4 => named::cycle(4),
            C5 => named::cycle(5),
            C6 => named::cycle(6),
            P4 => named::path(4),
            F2 => graph(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 4)]),
            // K5 minus an edge.
            F3 => graph(5, &[(0, 1), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]),
            F4 => graph(6, &[(0, 1), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (4, 5)]),
            F5 => graph(6, &[(0, 1), (0, 4), (0, 5), (1, 2), (1, 5), (2, 3), (2, 5), (3, 4)]),
            F6 => graph(6, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (1, 5), (2, 3), (2, 5), (4, 5)]),
            F7 => graph(6, &[(0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5)]),
            // Wheel on five spokes.
            F8 => graph(6, &[(0, 1), (0, 4), (0, 5), (1, 2), (1, 5), (2, 3), (2, 5), (3, 4), (3, 5), (4, 5)]),
            F9 => graph(
                6,
                &[(0, 1), (0, 2), (0, 5), (1, 2), (1, 3), (1, 4), (1, 5), (2, 5), (3, 4), (3, 5), (4, 5)],
            ),
        };
        Self { name, graph }
    }

    pub fn name(&self) -> PatternName {
        self.name
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }
}

/// Injective map from pattern vertices to host vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Occurrence(pub Vec<usize>);

impl Occurrence {
    pub fn image(&self) -> &[usize] {
        &self.0
    }
}

pub fn contains_induced(g: &Graph, p: &Pattern) -> Result<Option<Occurrence>> {
    contains_induced_with_cap(g, p, DEFAULT_PATTERN_CAP)
}

/// Exhaustive backtracking for an induced copy of `p` in `g`.
///
/// Pattern vertices are placed in order of decreasing degree; host
/// candidates are tried by ascending id, so witnesses are deterministic.
pub fn contains_induced_with_cap(g: &Graph, p: &Pattern, cap: usize) -> Result<Option<Occurrence>> {
    let h = p.graph();
    if h.n() > cap {
        return Err(Error::UnsupportedPattern { size: h.n(), cap });
    }
    if h.n() > g.n() {
        return Ok(None);
    }
    let mut order: Vec<usize> = (0..h.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(h.degree(v)), v));

    let mut map = vec![usize::MAX; h.n()];
    let mut used = vec![false; g.n()];
    if place(g, h, &order, 0, &mut map, &mut used) {
        Ok(Some(Occurrence(map)))
    } else {
        Ok(None)
    }
}

fn place(g: &Graph, h: &Graph, order: &[usize], depth: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    if depth == order.len() {
        return true;
    }
    let pv = order[depth];
    for cand in 0..g.n() {
        if used[cand] || g.degree(cand) < h.degree(pv) {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&q| h.has_edge(pv, q) == g.has_edge(cand, map[q]));
        if !consistent {
            continue;
        }
        map[pv] = cand;
        used[cand] = true;
        if place(g, h, order, depth + 1, map, used) {
            return true;
        }
        used[cand] = false;
        map[pv] = usize::MAX;
    }
    false
}

/// Checks that `occ` realizes `p` as an induced subgraph of `g`.
pub fn is_induced_occurrence(g: &Graph, p: &Pattern, occ: &Occurrence) -> bool {
    let h = p.graph();
    let img = occ.image();
    if img.len() != h.n() || img.iter().any(|&v| v >= g.n()) {
        return false;
    }
    let mut seen = img.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != img.len() {
        return false;
    }
    (0..h.n()).all(|a| (a + 1..h.n()).all(|b| h.has_edge(a, b) == g.has_edge(img[a], img[b])))
}
