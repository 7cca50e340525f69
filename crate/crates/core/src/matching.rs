//! Maximum matchings in general and bipartite graphs, Hall deficiency sets.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

const NONE: usize = usize::MAX;

/// Pairwise vertex-disjoint edges of a host graph, stored as sorted `(u, v)`
/// pairs with `u < v`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Matching {
    edges: Vec<(usize, usize)>,
    host_n: usize,
}

impl Matching {
    /// Validates disjointness and that every edge exists in `g`.
    pub fn new<I>(g: &Graph, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let m = Self::from_edges_unchecked(g.n(), edges);
        m.validate(g)?;
        Ok(m)
    }

    pub(crate) fn from_edges_unchecked<I>(host_n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut edges: Vec<_> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        edges.sort_unstable();
        Self { edges, host_n }
    }

    pub fn empty(host_n: usize) -> Self {
        Self {
            edges: Vec::new(),
            host_n,
        }
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.host_n != g.n() {
            return Err(Error::ContractViolation(format!(
                "matching built for {} vertices, graph has {}",
                self.host_n,
                g.n()
            )));
        }
        let mut used = vec![false; g.n()];
        for &(u, v) in &self.edges {
            if u >= g.n() || v >= g.n() || !g.has_edge(u, v) {
                return Err(Error::ContractViolation(format!("({u}, {v}) is not an edge")));
            }
            for w in [u, v] {
                if std::mem::replace(&mut used[w], true) {
                    return Err(Error::ContractViolation(format!("vertex {w} matched twice")));
                }
            }
        }
        Ok(())
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn host_n(&self) -> usize {
        self.host_n
    }

    /// `mate[v]` is the partner of `v`, or `None`.
    pub fn mates(&self) -> Vec<Option<usize>> {
        let mut mate = vec![None; self.host_n];
        for &(u, v) in &self.edges {
            mate[u] = Some(v);
            mate[v] = Some(u);
        }
        mate
    }

    pub fn covers(&self, v: usize) -> bool {
        self.edges.iter().any(|&(a, b)| a == v || b == v)
    }

    /// Union of two matchings over the same host; fails if they overlap.
    pub fn union(&self, other: &Matching, g: &Graph) -> Result<Matching> {
        Matching::new(g, self.edges.iter().chain(&other.edges).copied())
    }
}

/// True iff every edge of `g` has at least one matched endpoint.
pub fn is_maximal_matching(g: &Graph, m: &Matching) -> bool {
    let mate = m.mates();
    g.edges()
        .iter()
        .all(|&(u, v)| mate[u].is_some() || mate[v].is_some())
}

/// Maximum-cardinality matching by Edmonds' blossom algorithm.
///
/// Roots are grown in ascending id order and neighbor lists are sorted, so
/// the output is a deterministic function of the input graph.
pub fn maximum_matching(g: &Graph) -> Matching {
    let mut blossom = Blossom::new(g);
    for root in 0..g.n() {
        if blossom.mate[root] == NONE {
            if let Some(end) = blossom.find_augmenting_path(root) {
                blossom.augment(end);
            }
        }
    }
    let edges = (0..g.n())
        .filter(|&v| blossom.mate[v] != NONE && v < blossom.mate[v])
        .map(|v| (v, blossom.mate[v]));
    Matching::from_edges_unchecked(g.n(), edges)
}

struct Blossom<'a> {
    g: &'a Graph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.n();
        Self {
            g,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lowest_common_base(&self, mut a: usize, mut b: usize) -> usize {
        let mut on_path = vec![false; self.g.n()];
        loop {
            a = self.base[a];
            on_path[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if on_path[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, top: usize, mut child: usize) {
        while self.base[v] != top {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_augmenting_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.n();
        self.used.fill(false);
        self.parent.fill(NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);

        while let Some(v) = self.queue.pop_front() {
            for &to in self.g.neighbors(v) {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    // Odd cycle: contract it onto its base.
                    let top = self.lowest_common_base(v, to);
                    self.in_blossom.fill(false);
                    self.mark_path(v, top, to);
                    self.mark_path(to, top, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = top;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let next = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = next;
        }
    }
}

/// Bipartite subgraph of a host graph between two disjoint stable sets.
#[derive(Clone, Debug)]
pub struct BipartiteView {
    left: VertexSet,
    right: VertexSet,
    /// `adjacency[i]` lists host ids of right vertices adjacent to `left[i]`.
    adjacency: Vec<Vec<usize>>,
    host_n: usize,
}

impl BipartiteView {
    pub fn new(g: &Graph, left: VertexSet, right: VertexSet) -> Result<Self> {
        if let Some(v) = left.iter().find(|&v| right.contains(v)) {
            return Err(Error::ContractViolation(format!("vertex {v} on both sides")));
        }
        for side in [&left, &right] {
            if side.iter().any(|v| v >= g.n()) {
                return Err(Error::ContractViolation("side exceeds host graph".into()));
            }
            if !g.is_stable(side.members()) {
                return Err(Error::ContractViolation("bipartite side is not stable".into()));
            }
        }
        let adjacency = left
            .iter()
            .map(|t| g.neighbors(t).iter().copied().filter(|&s| right.contains(s)).collect())
            .collect();
        Ok(Self {
            left,
            right,
            adjacency,
            host_n: g.n(),
        })
    }

    pub fn left(&self) -> &VertexSet {
        &self.left
    }

    pub fn right(&self) -> &VertexSet {
        &self.right
    }

    /// Right-side neighbors (host ids) of a left vertex given by host id.
    pub fn neighbors_of_left(&self, t: usize) -> &[usize] {
        let i = self.left.members().binary_search(&t).expect("left vertex");
        &self.adjacency[i]
    }
}

#[derive(Clone, Debug)]
pub struct BipartiteMatching {
    pub matching: Matching,
    pub covers_left: bool,
}

/// Maximum bipartite matching by repeated augmenting-path search, left
/// vertices and their neighbors scanned in ascending id order.
pub fn bipartite_max_matching(b: &BipartiteView) -> BipartiteMatching {
    let mut mate = vec![NONE; b.host_n];
    for &t in b.left.members() {
        let mut visited = vec![false; b.host_n];
        try_augment(b, t, &mut mate, &mut visited);
    }
    let edges: Vec<_> = b
        .left
        .iter()
        .filter(|&t| mate[t] != NONE)
        .map(|t| (t, mate[t]))
        .collect();
    let covers_left = edges.len() == b.left.len();
    BipartiteMatching {
        matching: Matching::from_edges_unchecked(b.host_n, edges),
        covers_left,
    }
}

fn try_augment(b: &BipartiteView, t: usize, mate: &mut [usize], visited: &mut [bool]) -> bool {
    for &s in b.neighbors_of_left(t) {
        if visited[s] {
            continue;
        }
        visited[s] = true;
        if mate[s] == NONE || try_augment(b, mate[s], mate, visited) {
            mate[s] = t;
            mate[t] = s;
            return true;
        }
    }
    false
}

/// Deficiency set for a maximum matching `m` of `b`.
///
/// Returns `None` when `m` covers the left side. Otherwise returns every
/// left vertex reachable by an alternating path from an unmatched left
/// vertex; its right neighborhood is strictly smaller than itself.
pub fn hall_violator(b: &BipartiteView, m: &Matching) -> Result<Option<VertexSet>> {
    let mate = m.mates();
    for &(u, v) in m.edges() {
        let (t, s) = if b.left.contains(u) { (u, v) } else { (v, u) };
        if !b.left.contains(t) || !b.neighbors_of_left(t).contains(&s) {
            return Err(Error::ContractViolation(format!("({u}, {v}) is not an edge of the view")));
        }
    }
    let unmatched: Vec<usize> = b.left.iter().filter(|&t| mate[t].is_none()).collect();
    if unmatched.is_empty() {
        return Ok(None);
    }

    let mut reached_left = vec![false; b.host_n];
    let mut reached_right = vec![false; b.host_n];
    let mut queue: VecDeque<usize> = unmatched.iter().copied().collect();
    for &t in &unmatched {
        reached_left[t] = true;
    }
    while let Some(t) = queue.pop_front() {
        for &s in b.neighbors_of_left(t) {
            if reached_right[s] {
                continue;
            }
            reached_right[s] = true;
            match mate[s] {
                None => {
                    return Err(Error::ContractViolation(format!(
                        "matching is not maximum: augmenting path ends at {s}"
                    )))
                }
                Some(t2) if !reached_left[t2] => {
                    reached_left[t2] = true;
                    queue.push_back(t2);
                }
                Some(_) => {}
            }
        }
    }
    let t_prime = VertexSet::new(b.host_n, b.left.iter().filter(|&t| reached_left[t]))?;
    Ok(Some(t_prime))
}

/// Right-side neighborhood of a set of left vertices.
pub fn right_neighborhood(b: &BipartiteView, t: &VertexSet) -> VertexSet {
    let members = t.iter().flat_map(|v| b.neighbors_of_left(v).iter().copied());
    VertexSet::new(b.host_n, members.collect::<Vec<_>>()).expect("host ids")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    fn brute_force_matching_number(g: &Graph) -> usize {
        fn go(edges: &[(usize, usize)], used: &mut Vec<bool>, i: usize) -> usize {
            if i == edges.len() {
                return 0;
            }
            let skip = go(edges, used, i + 1);
            let (u, v) = edges[i];
            if used[u] || used[v] {
                return skip;
            }
            used[u] = true;
            used[v] = true;
            let take = 1 + go(edges, used, i + 1);
            used[u] = false;
            used[v] = false;
            skip.max(take)
        }
        go(g.edges(), &mut vec![false; g.n()], 0)
    }

    #[test]
    fn maximum_matching_examples() {
        assert_eq!(maximum_matching(&path(4)).len(), 2);
        assert_eq!(maximum_matching(&cycle(5)).len(), 2);
        let p = petersen();
        assert_eq!(brute_force_matching_number(&p), 5);
        assert_eq!(maximum_matching(&p).len(), 5);
    }

    #[test]
    fn maximum_matching_handles_nested_blossoms() {
        // Two triangles joined by a path, each with a pendant.
        let g = Graph::from_edges(
            8,
            [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 4), (0, 7)],
        )
        .unwrap();
        let m = maximum_matching(&g);
        m.validate(&g).unwrap();
        assert_eq!(m.len(), brute_force_matching_number(&g));
    }

    fn view(n: usize, left: &[usize], right: &[usize], edges: &[(usize, usize)]) -> (Graph, BipartiteView) {
        let g = Graph::from_edges(n, edges.iter().copied()).unwrap();
        let b = BipartiteView::new(
            &g,
            VertexSet::new(n, left.iter().copied()).unwrap(),
            VertexSet::new(n, right.iter().copied()).unwrap(),
        )
        .unwrap();
        (g, b)
    }

    #[test]
    fn bipartite_examples() {
        let (_, b) = view(2, &[0], &[1], &[(0, 1)]);
        let r = bipartite_max_matching(&b);
        assert_eq!((r.matching.len(), r.covers_left), (1, true));

        let (_, b) = view(3, &[0, 1], &[2], &[(0, 2), (1, 2)]);
        let r = bipartite_max_matching(&b);
        assert_eq!((r.matching.len(), r.covers_left), (1, false));

        let c6 = cycle(6);
        let b = BipartiteView::new(
            &c6,
            VertexSet::new(6, [0, 2, 4]).unwrap(),
            VertexSet::new(6, [1, 3, 5]).unwrap(),
        )
        .unwrap();
        assert_eq!(bipartite_max_matching(&b).matching.len(), 3);
    }

    #[test]
    fn view_rejects_non_stable_side() {
        let g = path(3);
        let err = BipartiteView::new(&g, VertexSet::new(3, [0, 1]).unwrap(), VertexSet::new(3, [2]).unwrap());
        assert!(err.is_err());
    }

    #[test]
    fn hall_violator_examples() {
        // t1=0, t2=1, s1=2
        let (g, b) = view(3, &[0, 1], &[2], &[(0, 2), (1, 2)]);
        let m = Matching::new(&g, [(0, 2)]).unwrap();
        let t = hall_violator(&b, &m).unwrap().unwrap();
        assert_eq!(t.members(), &[0, 1]);
        assert_eq!(right_neighborhood(&b, &t).len(), 1);

        let (g, b) = view(4, &[0, 1], &[2, 3], &[(0, 2), (1, 3)]);
        let m = bipartite_max_matching(&b).matching;
        assert!(hall_violator(&b, &m).unwrap().is_none());
        let _ = g;

        // t1..t3 = 0..3, s1 = 3, s2 = 4
        let (_, b) = view(5, &[0, 1, 2], &[3, 4], &[(0, 3), (1, 3), (2, 3), (2, 4)]);
        let m = bipartite_max_matching(&b).matching;
        let t = hall_violator(&b, &m).unwrap().unwrap();
        assert_eq!(t.members(), &[0, 1]);
        assert_eq!(right_neighborhood(&b, &t).members(), &[3]);
    }

    #[test]
    fn hall_violator_rejects_non_maximum() {
        let (g, b) = view(4, &[0, 1], &[2, 3], &[(0, 2), (1, 2), (1, 3)]);
        let m = Matching::new(&g, [(1, 2)]).unwrap();
        assert!(matches!(hall_violator(&b, &m), Err(Error::ContractViolation(_))));
    }

    #[test]
    fn maximality_examples() {
        let p4 = path(4);
        assert!(is_maximal_matching(&p4, &Matching::new(&p4, [(1, 2)]).unwrap()));
        assert!(!is_maximal_matching(&p4, &Matching::new(&p4, [(0, 1)]).unwrap()));
        let c4 = cycle(4);
        for &e in c4.edges() {
            assert!(!is_maximal_matching(&c4, &Matching::new(&c4, [e]).unwrap()));
        }
        assert!(is_maximal_matching(&c4, &Matching::new(&c4, [(0, 1), (2, 3)]).unwrap()));
        assert!(is_maximal_matching(&c4, &Matching::new(&c4, [(1, 2), (0, 3)]).unwrap()));
    }

    #[test]
    fn matching_validation() {
        let p4 = path(4);
        assert!(Matching::new(&p4, [(0, 1), (1, 2)]).is_err());
        assert!(Matching::new(&p4, [(0, 2)]).is_err());
    }
}
