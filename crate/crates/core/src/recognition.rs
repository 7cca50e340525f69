//! Graph-class recognition: forbidden induced subgraphs, split graphs, line
//! graphs and their roots.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{self, Graph, VertexSet};
use crate::pattern::{contains_induced, Occurrence, Pattern, PatternName};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flag {
    TriangleFree,
    C4Free,
    C5Free,
    ClawFree,
    K14Free,
    #[serde(rename = "2k2_free")]
    TwoK2Free,
    Split,
    LineGraph,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub flag: Flag,
    pub pattern: PatternName,
    pub occurrence: Occurrence,
}

/// Recognition results. `diameter`/`girth` are `null` in JSON when infinite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub n: usize,
    pub m: usize,
    pub diameter: Option<usize>,
    pub girth: Option<usize>,
    pub triangle_free: bool,
    pub c4_free: bool,
    pub c5_free: bool,
    pub claw_free: bool,
    pub k14_free: bool,
    #[serde(rename = "2k2_free")]
    pub two_k2_free: bool,
    pub split: bool,
    pub line_graph: bool,
    /// Certificate for the first false flag, in field order.
    pub witness: Option<Witness>,
    /// One certificate per false flag.
    pub witnesses: Vec<Witness>,
}

fn find(g: &Graph, name: PatternName) -> Option<Occurrence> {
    contains_induced(g, &Pattern::new(name)).expect("built-in patterns fit the default cap")
}

/// First forbidden pattern from `names` that occurs in `g`.
fn first_occurrence(g: &Graph, names: &[PatternName]) -> Option<(PatternName, Occurrence)> {
    names.iter().find_map(|&p| find(g, p).map(|occ| (p, occ)))
}

pub fn classify(g: &Graph) -> ClassReport {
    use PatternName::*;
    let mut witnesses = Vec::new();
    let mut check = |flag: Flag, names: &[PatternName]| -> bool {
        match first_occurrence(g, names) {
            Some((pattern, occurrence)) => {
                witnesses.push(Witness {
                    flag,
                    pattern,
                    occurrence,
                });
                false
            }
            None => true,
        }
    };
    let triangle_free = check(Flag::TriangleFree, &[C3]);
    let c4_free = check(Flag::C4Free, &[C4]);
    let c5_free = check(Flag::C5Free, &[C5]);
    let claw_free = check(Flag::ClawFree, &[Claw]);
    let k14_free = check(Flag::K14Free, &[K14]);
    let two_k2_free = check(Flag::TwoK2Free, &[TwoK2]);
    let split = check(Flag::Split, &[TwoK2, C4, C5]);
    let line_graph = check(Flag::LineGraph, &PatternName::LINE_OBSTRUCTIONS);

    ClassReport {
        n: g.n(),
        m: g.m(),
        diameter: graph::diameter(g),
        girth: graph::girth(g),
        triangle_free,
        c4_free,
        c5_free,
        claw_free,
        k14_free,
        two_k2_free,
        split,
        line_graph,
        witness: witnesses.first().cloned(),
        witnesses,
    }
}

pub fn is_claw_free(g: &Graph) -> bool {
    find(g, PatternName::Claw).is_none()
}

pub fn is_2k2_free(g: &Graph) -> bool {
    find(g, PatternName::TwoK2).is_none()
}

/// True iff no line-graph obstruction occurs as an induced subgraph.
pub fn is_line_graph(g: &Graph) -> bool {
    first_occurrence(g, &PatternName::LINE_OBSTRUCTIONS).is_none()
}

/// A clique / stable-set partition of a split graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitPartition {
    pub clique: VertexSet,
    pub stable: VertexSet,
}

/// Finds a split partition from the degree sequence, or `None`.
///
/// With vertices sorted by non-increasing degree and `m` the largest index
/// with `d_m >= m - 1`, a graph is split iff the first `m` vertices form a
/// clique and the rest a stable set.
pub fn split_partition(g: &Graph) -> Option<SplitPartition> {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let m = (0..n)
        .filter(|&i| g.degree(order[i]) >= i)
        .map(|i| i + 1)
        .max()
        .unwrap_or(0);
    let clique: Vec<usize> = order[..m].to_vec();
    let stable: Vec<usize> = order[m..].to_vec();
    if g.is_clique(&clique) && g.is_stable(&stable) {
        Some(SplitPartition {
            clique: VertexSet::new(n, clique).unwrap(),
            stable: VertexSet::new(n, stable).unwrap(),
        })
    } else {
        None
    }
}

/// Line graph of `g`. Vertex `i` of the result is `g.edges()[i]`.
pub fn line_graph_of(g: &Graph) -> Graph {
    let edges = g.edges();
    let mut incident = vec![Vec::new(); g.n()];
    for (i, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(i);
        incident[v].push(i);
    }
    let mut out = Vec::new();
    for around in &incident {
        for (a, &i) in around.iter().enumerate() {
            for &j in &around[a + 1..] {
                out.push((i, j));
            }
        }
    }
    Graph::from_edges(edges.len(), out).expect("line graph is simple")
}

/// A root graph together with the vertex-to-edge correspondence.
#[derive(Clone, Debug)]
pub struct Root {
    pub graph: Graph,
    /// `edge_of[v]` is the root edge (sorted pair) standing for vertex `v`.
    pub edge_of: Vec<(usize, usize)>,
}

impl Root {
    /// The line-graph vertex corresponding to root edge `(a, b)`.
    pub fn vertex_of(&self, a: usize, b: usize) -> Option<usize> {
        let key = (a.min(b), a.max(b));
        self.edge_of.iter().position(|&e| e == key)
    }
}

/// Reconstructs a graph whose line graph is `l`, or `None` when `l` is not a
/// line graph.
///
/// The edges of `l` are partitioned into cliques so that every vertex lies
/// in at most two of them (a Krausz partition); each clique becomes a root
/// vertex and each vertex of `l` the edge between its two cliques. For `K_3`
/// the star `K_{1,3}` is returned.
pub fn root_graph(l: &Graph) -> Result<Option<Root>> {
    if l.n() == 0 {
        return Err(Error::InvalidInput("root of the empty graph".into()));
    }
    if !graph::is_connected(l) {
        return Err(Error::Disconnected);
    }
    if !is_line_graph(l) {
        return Ok(None);
    }
    let Some(cliques) = krausz_partition(l) else {
        return Err(Error::InternalInvariant(
            "obstruction-free graph without a Krausz partition".into(),
        ));
    };
    let root = assemble_root(l, &cliques)?;
    verify_root(l, &root)?;
    Ok(Some(root))
}

fn assemble_root(l: &Graph, cliques: &[Vec<usize>]) -> Result<Root> {
    let mut owners: Vec<Vec<usize>> = vec![Vec::new(); l.n()];
    for (c, members) in cliques.iter().enumerate() {
        for &v in members {
            owners[v].push(c);
        }
    }
    let mut next = cliques.len();
    let mut edge_of = Vec::with_capacity(l.n());
    for own in &mut owners {
        while own.len() < 2 {
            own.push(next);
            next += 1;
        }
        edge_of.push((own[0].min(own[1]), own[0].max(own[1])));
    }
    let graph = Graph::from_edges(next, edge_of.iter().copied())?;
    if graph.m() != l.n() {
        return Err(Error::InternalInvariant("root has parallel edges".into()));
    }
    Ok(Root { graph, edge_of })
}

/// Checks that `v -> edge_of[v]` is an isomorphism from `l` onto the line
/// graph of the root.
fn verify_root(l: &Graph, root: &Root) -> Result<()> {
    for u in 0..l.n() {
        for v in u + 1..l.n() {
            let (a, b) = root.edge_of[u];
            let (c, d) = root.edge_of[v];
            let incident = a == c || a == d || b == c || b == d;
            if incident != l.has_edge(u, v) {
                return Err(Error::InternalInvariant(format!(
                    "root edges of {u} and {v} disagree with adjacency"
                )));
            }
        }
    }
    Ok(())
}

struct Krausz<'a> {
    l: &'a Graph,
    covered: Vec<bool>,
    cliques: Vec<Vec<usize>>,
    membership: Vec<usize>,
}

fn krausz_partition(l: &Graph) -> Option<Vec<Vec<usize>>> {
    let mut state = Krausz {
        l,
        covered: vec![false; l.m()],
        cliques: Vec::new(),
        membership: vec![0; l.n()],
    };
    state.search().then_some(state.cliques)
}

impl Krausz<'_> {
    fn edge(&self, u: usize, v: usize) -> usize {
        self.l.edge_index(u, v).expect("adjacent pair")
    }

    /// A vertex in two cliques can only shed an uncovered edge `vx` by `x`
    /// joining one of those cliques.
    fn dead_end(&self, vertices: &[usize]) -> bool {
        vertices.iter().any(|&v| {
            self.membership[v] >= 2
                && self.l.neighbors(v).iter().any(|&x| {
                    !self.covered[self.edge(v, x)]
                        && !(0..self.cliques.len())
                            .any(|c| self.cliques[c].contains(&v) && self.can_join(c, x))
                })
        })
    }

    fn can_join(&self, c: usize, v: usize) -> bool {
        self.membership[v] < 2
            && !self.cliques[c].contains(&v)
            && self.cliques[c]
                .iter()
                .all(|&w| self.l.has_edge(v, w) && !self.covered[self.edge(v, w)])
    }

    fn join(&mut self, c: usize, v: usize) {
        for i in 0..self.cliques[c].len() {
            let w = self.cliques[c][i];
            let e = self.edge(v, w);
            self.covered[e] = true;
        }
        self.cliques[c].push(v);
        self.membership[v] += 1;
    }

    fn leave(&mut self, c: usize) {
        let v = self.cliques[c].pop().unwrap();
        self.membership[v] -= 1;
        for i in 0..self.cliques[c].len() {
            let w = self.cliques[c][i];
            let e = self.edge(v, w);
            self.covered[e] = false;
        }
    }

    fn search(&mut self) -> bool {
        let Some(e) = self.covered.iter().position(|&c| !c) else {
            return true;
        };
        let (u, w) = self.l.edges()[e];

        // The clique that will contain uw either exists already or is new.
        for c in 0..self.cliques.len() {
            let has_u = self.cliques[c].contains(&u);
            let has_w = self.cliques[c].contains(&w);
            let joins: Vec<usize> = match (has_u, has_w) {
                (true, false) => vec![w],
                (false, true) => vec![u],
                (false, false) => vec![u, w],
                (true, true) => unreachable!("edge inside a clique is covered"),
            };
            let mut added = 0;
            for &v in &joins {
                if !self.can_join(c, v) {
                    break;
                }
                self.join(c, v);
                added += 1;
            }
            if added == joins.len() && !self.dead_end(&self.cliques[c].clone()) && self.search() {
                return true;
            }
            for _ in 0..added {
                self.leave(c);
            }
        }

        if self.membership[u] < 2 && self.membership[w] < 2 {
            self.cliques.push(vec![u]);
            self.membership[u] += 1;
            let c = self.cliques.len() - 1;
            self.join(c, w);
            if !self.dead_end(&[u, w]) && self.search() {
                return true;
            }
            self.leave(c);
            self.membership[u] -= 1;
            self.cliques.pop();
        }
        false
    }
}
