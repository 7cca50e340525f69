//! Dominating set solvers.
//!
//! [`gamma_exact`] is the general reference solver. The `*_diam2` functions
//! are the polynomial routes for diameter-2 line graphs, claw-free graphs and
//! girth-5 graphs; each checks its class precondition first and verifies its
//! answer before returning it.

use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;
use log::{debug, info};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{diameter, girth, remove_vertices, Graph, VertexSet};
use crate::mmm::{cap_for_2k2_free, minimum_maximal_matching};
use crate::recognition::{is_claw_free, is_line_graph, root_graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact,
    Bounded,
    LineDiam2,
    Girth5Diam2,
    ClawfreeDiam2,
    FallbackExact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DominationCertificate {
    pub gamma: usize,
    #[serde(serialize_with = "members_only")]
    pub set: VertexSet,
    pub method: Method,
    pub verified: bool,
}

fn members_only<S: Serializer>(set: &VertexSet, s: S) -> std::result::Result<S::Ok, S::Error> {
    set.members().serialize(s)
}

impl DominationCertificate {
    /// Builds a certificate, refusing sets that do not dominate `g`.
    pub fn verified(g: &Graph, set: VertexSet, method: Method) -> Result<Self> {
        if set.universe() != g.n() || !g.is_dominating(set.members()) {
            return Err(Error::InternalInvariant(format!(
                "{method:?} produced a non-dominating set {:?}",
                set.members()
            )));
        }
        Ok(Self {
            gamma: set.len(),
            set,
            method,
            verified: true,
        })
    }
}

/// Resource knobs for [`gamma_exact_with`]. `None` means unlimited.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExactLimits {
    pub max_nodes: Option<u64>,
    pub time: Option<Duration>,
}

pub fn gamma_exact(g: &Graph) -> DominationCertificate {
    gamma_exact_with(g, &ExactLimits::default()).expect("unlimited search always completes")
}

/// Branch and bound on the undominated vertex with the fewest usable
/// dominators.
///
/// The upper bound starts from a greedy solution; the lower bound is the
/// larger of a packing bound (undominated vertices with pairwise disjoint
/// closed neighborhoods need distinct dominators) and a counting bound.
/// Sibling branches exclude vertices already tried, and a candidate whose
/// useful coverage is contained in another candidate's is skipped.
pub fn gamma_exact_with(g: &Graph, limits: &ExactLimits) -> Result<DominationCertificate> {
    let best = run_search(g, limits, None)?.expect("no cutoff means a set is always found");
    let set = VertexSet::new(g.n(), best)?;
    DominationCertificate::verified(g, set, Method::Exact)
}

/// Decides `γ(g) ≤ bound`, returning a witness when it holds. Much cheaper
/// than [`gamma_exact_with`] when `bound` is tight, since the search starts
/// with `bound + 1` as its incumbent.
pub fn dominating_set_within(g: &Graph, bound: usize, limits: &ExactLimits) -> Result<Option<DominationCertificate>> {
    match run_search(g, limits, Some(bound))? {
        Some(best) => {
            let set = VertexSet::new(g.n(), best)?;
            DominationCertificate::verified(g, set, Method::Exact).map(Some)
        }
        None => Ok(None),
    }
}

fn run_search(g: &Graph, limits: &ExactLimits, cutoff: Option<usize>) -> Result<Option<Vec<usize>>> {
    let mut search = Search::new(g, limits);
    if let Some(bound) = cutoff {
        if search.best.len() <= bound {
            return Ok(Some(search.best));
        }
        // Sentinel incumbent: only strictly smaller sets are accepted.
        search.best = vec![usize::MAX; bound + 1];
    }
    let mut undominated = FixedBitSet::with_capacity(g.n());
    undominated.insert_range(..);
    let mut allowed = undominated.clone();
    let root_lower = search.lower_bound(&undominated, &allowed);
    search.branch(&undominated, &mut allowed);
    debug!("exact search visited {} nodes", search.nodes);
    if search.aborted {
        return Err(Error::SearchLimit {
            lower: root_lower,
            upper: search.best.len(),
        });
    }
    if search.best.first() == Some(&usize::MAX) {
        return Ok(None);
    }
    Ok(Some(search.best))
}

struct Search {
    closed: Vec<FixedBitSet>,
    chosen: Vec<usize>,
    best: Vec<usize>,
    nodes: u64,
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    aborted: bool,
}

impl Search {
    fn new(g: &Graph, limits: &ExactLimits) -> Self {
        let closed: Vec<FixedBitSet> = (0..g.n())
            .map(|v| {
                let mut b = FixedBitSet::with_capacity(g.n());
                b.insert(v);
                for &w in g.neighbors(v) {
                    b.insert(w);
                }
                b
            })
            .collect();
        let best = greedy(&closed, g.n());
        Self {
            closed,
            chosen: Vec::new(),
            best,
            nodes: 0,
            max_nodes: limits.max_nodes,
            deadline: limits.time.map(|t| Instant::now() + t),
            aborted: false,
        }
    }

    fn lower_bound(&self, undominated: &FixedBitSet, allowed: &FixedBitSet) -> usize {
        let remaining = undominated.count_ones(..);
        if remaining == 0 {
            return 0;
        }
        let mut blocked = FixedBitSet::with_capacity(undominated.len());
        let mut packing = 0;
        for v in undominated.ones() {
            if self.closed[v].is_disjoint(&blocked) {
                packing += 1;
                blocked.union_with(&self.closed[v]);
            }
        }
        let best_gain = allowed
            .ones()
            .map(|w| self.closed[w].intersection_count(undominated))
            .max()
            .unwrap_or(0);
        if best_gain == 0 {
            return usize::MAX;
        }
        packing.max(remaining.div_ceil(best_gain))
    }

    fn out_of_budget(&mut self) -> bool {
        self.nodes += 1;
        if self.max_nodes.is_some_and(|m| self.nodes > m)
            || (self.nodes.is_multiple_of(1024) && self.deadline.is_some_and(|d| Instant::now() > d))
        {
            self.aborted = true;
        }
        self.aborted
    }

    fn branch(&mut self, undominated: &FixedBitSet, allowed: &mut FixedBitSet) {
        if self.out_of_budget() {
            return;
        }
        if undominated.is_clear() {
            if self.chosen.len() < self.best.len() {
                self.best = self.chosen.clone();
            }
            return;
        }
        let lb = self.lower_bound(undominated, allowed);
        if lb == usize::MAX || self.chosen.len() + lb >= self.best.len() {
            return;
        }

        // Undominated vertex with the fewest usable dominators.
        let (_, v) = undominated
            .ones()
            .map(|v| (self.closed[v].intersection_count(allowed), v))
            .min()
            .unwrap();
        let mut candidates: Vec<(usize, usize)> = self.closed[v]
            .ones()
            .filter(|&w| allowed.contains(w))
            .map(|w| (self.closed[w].intersection_count(undominated), w))
            .collect();
        candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

        let gains: Vec<FixedBitSet> = candidates
            .iter()
            .map(|&(_, w)| {
                let mut c = self.closed[w].clone();
                c.intersect_with(undominated);
                c
            })
            .collect();

        let mut excluded = Vec::new();
        for (i, &(_, w)) in candidates.iter().enumerate() {
            let dominated_by_other = (0..candidates.len()).any(|j| {
                j != i
                    && gains[i].is_subset(&gains[j])
                    && (gains[i] != gains[j] || j < i)
            });
            if !dominated_by_other {
                let mut next = undominated.clone();
                next.difference_with(&self.closed[w]);
                self.chosen.push(w);
                self.branch(&next, allowed);
                self.chosen.pop();
                if self.aborted {
                    break;
                }
            }
            allowed.set(w, false);
            excluded.push(w);
        }
        for w in excluded {
            allowed.insert(w);
        }
    }
}

fn greedy(closed: &[FixedBitSet], n: usize) -> Vec<usize> {
    let mut undominated = FixedBitSet::with_capacity(n);
    undominated.insert_range(..);
    let mut set = Vec::new();
    while !undominated.is_clear() {
        let (_, w) = (0..n)
            .map(|w| (closed[w].intersection_count(&undominated), std::cmp::Reverse(w)))
            .max()
            .map(|(gain, r)| (gain, r.0))
            .unwrap();
        undominated.difference_with(&closed[w]);
        set.push(w);
    }
    set
}

/// Smallest dominating set of size at most `budget`, by trying all subsets
/// in order of increasing size. `Ok(None)` when there is none.
pub fn gamma_bounded(g: &Graph, budget: usize) -> Result<Option<DominationCertificate>> {
    if budget == 0 {
        return Err(Error::InvalidInput("budget must be at least 1".into()));
    }
    for size in 0..=budget.min(g.n()) {
        if let Some(set) = first_dominating_subset(g, size) {
            let set = VertexSet::new(g.n(), set)?;
            return DominationCertificate::verified(g, set, Method::Bounded).map(Some);
        }
    }
    Ok(None)
}

fn first_dominating_subset(g: &Graph, size: usize) -> Option<Vec<usize>> {
    let n = g.n();
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        if g.is_dominating(&idx) {
            return Some(idx);
        }
        // Advance to the next combination in lexicographic order.
        let mut i = size;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < n - size + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[derive(Clone, Debug)]
pub struct SimplicialReduction {
    pub graph: Graph,
    /// Original id of each vertex of `graph`.
    pub kept: Vec<usize>,
    pub removed: VertexSet,
}

fn is_simplicial(g: &Graph, v: usize) -> bool {
    g.is_clique(g.neighbors(v))
}

fn open_subset(g: &Graph, u: usize, v: usize) -> bool {
    g.neighbors(u).iter().all(|&x| g.has_edge(v, x))
}

/// Removes simplicial vertices `v` for which some other vertex `u` has
/// `N(u) ⊆ N(v)`, until none is left. Each removal keeps γ unchanged.
///
/// `u` must have at least one neighbor: with `N(u)` empty the containment
/// holds trivially but removing an isolated `v` lowers γ.
pub fn simplicial_reduce(g: &Graph) -> SimplicialReduction {
    let mut current = g.clone();
    let mut kept: Vec<usize> = (0..g.n()).collect();
    let mut removed = Vec::new();
    while let Some(v) = reducible_vertex(&current) {
        let (next, map) = remove_vertices(&current, &[v]);
        removed.push(kept[v]);
        kept = map.into_iter().map(|old| kept[old]).collect();
        current = next;
    }
    SimplicialReduction {
        graph: current,
        kept,
        removed: VertexSet::new(g.n(), removed).expect("removed ids are in range"),
    }
}

fn reducible_vertex(g: &Graph) -> Option<usize> {
    (0..g.n()).find(|&v| {
        is_simplicial(g, v) && (0..g.n()).any(|u| u != v && g.degree(u) > 0 && open_subset(g, u, v))
    })
}

/// For girth 5 and diameter 2, `N(v)` is a minimum dominating set for every
/// `v`, and the graph is regular. Returns `N(v)` for the smallest id.
pub fn gamma_girth5_diam2(g: &Graph) -> Result<DominationCertificate> {
    if girth(g) != Some(5) || diameter(g) != Some(2) {
        return Err(Error::ClassMismatch(format!(
            "girth 5 and diameter 2 required, got girth {:?} and diameter {:?}",
            girth(g),
            diameter(g)
        )));
    }
    if !g.is_regular() {
        return Err(Error::ImpossibleGraph("girth-5 diameter-2 graph is not regular".into()));
    }
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if g.has_edge(u, v) {
                continue;
            }
            let common = g.neighbors(u).iter().filter(|&&x| g.has_edge(v, x)).count();
            if common != 1 {
                return Err(Error::ImpossibleGraph(format!(
                    "non-adjacent {u} and {v} share {common} neighbors"
                )));
            }
        }
    }
    let set = VertexSet::new(g.n(), g.neighbors(0).iter().copied())?;
    DominationCertificate::verified(g, set, Method::Girth5Diam2)
}

fn require_diameter_at_most_2(g: &Graph) -> Result<()> {
    match diameter(g) {
        _ if g.n() == 0 => Err(Error::ClassMismatch("empty graph".into())),
        Some(d) if d <= 2 => Ok(()),
        Some(d) => Err(Error::ClassMismatch(format!("diameter {d} exceeds 2"))),
        None => Err(Error::ClassMismatch("graph is disconnected".into())),
    }
}

/// Line graph of diameter at most 2: a minimum maximal matching of the root
/// maps to a minimum dominating set.
pub fn gamma_line_diam2(l: &Graph) -> Result<DominationCertificate> {
    require_diameter_at_most_2(l)?;
    let root = root_graph(l)?.ok_or_else(|| Error::ClassMismatch("not a line graph".into()))?;
    let m = minimum_maximal_matching(&root.graph, cap_for_2k2_free(root.graph.n()))?;
    let members = m
        .edges()
        .iter()
        .map(|&(a, b)| {
            root.vertex_of(a, b)
                .ok_or_else(|| Error::InternalInvariant(format!("root edge {a}-{b} has no line vertex")))
        })
        .collect::<Result<Vec<_>>>()?;
    let set = VertexSet::new(l.n(), members)?;
    DominationCertificate::verified(l, set, Method::LineDiam2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClawfreeStage {
    /// γ ≤ 3, found by bounded search.
    SmallGamma,
    /// Reduced graph is a line graph.
    LineRoute,
    /// Line route answer failed on the original graph.
    LineRouteRejected,
    /// Reduced graph is not a line graph.
    NotLine,
}

#[derive(Clone, Debug)]
pub struct ClawfreeOutcome {
    pub certificate: DominationCertificate,
    pub stage: ClawfreeStage,
    /// Vertices removed by closed-neighborhood containment, original ids.
    pub removed: Vec<usize>,
}

pub fn gamma_clawfree_diam2(g: &Graph) -> Result<DominationCertificate> {
    gamma_clawfree_diam2_staged(g).map(|o| o.certificate)
}

/// Claw-free, diameter at most 2.
///
/// 1. Bounded search up to size 3.
/// 2. Repeatedly delete `u` having an adjacent `v` with `N[u] ⊆ N[v]`
///    (same as `N(u) \ {v} ⊆ N(v) \ {u}` for adjacent pairs). The diameter
///    cannot grow; this is asserted.
/// 3. If what remains is a line graph, solve it through the root and lift
///    the set back unchanged. The lifted set is accepted only if it
///    dominates the original graph; then it is optimal, since deleting such
///    a `u` never raises γ.
/// 4. Otherwise, or if the lift fails, fall back to the exact solver.
pub fn gamma_clawfree_diam2_staged(g: &Graph) -> Result<ClawfreeOutcome> {
    require_diameter_at_most_2(g)?;
    if !is_claw_free(g) {
        return Err(Error::ClassMismatch("graph contains a claw".into()));
    }
    if let Some(mut cert) = gamma_bounded(g, 3)? {
        cert.method = Method::ClawfreeDiam2;
        return Ok(ClawfreeOutcome {
            certificate: cert,
            stage: ClawfreeStage::SmallGamma,
            removed: Vec::new(),
        });
    }

    let (reduced, kept, removed) = closed_containment_reduce(g)?;
    let stage = if is_line_graph(&reduced) {
        let local = gamma_line_diam2(&reduced)?;
        let lifted = VertexSet::new(g.n(), local.set.iter().map(|v| kept[v]))?;
        if g.is_dominating(lifted.members()) {
            let certificate = DominationCertificate::verified(g, lifted, Method::ClawfreeDiam2)?;
            return Ok(ClawfreeOutcome {
                certificate,
                stage: ClawfreeStage::LineRoute,
                removed,
            });
        }
        info!("line route answer does not dominate the original graph; using exact search");
        ClawfreeStage::LineRouteRejected
    } else {
        ClawfreeStage::NotLine
    };
    let mut certificate = gamma_exact(g);
    certificate.method = Method::FallbackExact;
    Ok(ClawfreeOutcome {
        certificate,
        stage,
        removed,
    })
}

fn closed_containment_reduce(g: &Graph) -> Result<(Graph, Vec<usize>, Vec<usize>)> {
    let mut current = g.clone();
    let mut kept: Vec<usize> = (0..g.n()).collect();
    let mut removed = Vec::new();
    loop {
        let target = (0..current.n()).find(|&u| {
            current
                .neighbors(u)
                .iter()
                .any(|&v| current.neighbors(u).iter().all(|&x| x == v || current.has_edge(v, x)))
        });
        let Some(u) = target else { break };
        let (next, map) = remove_vertices(&current, &[u]);
        if next.n() > 0 && diameter(&next).is_none_or(|d| d > 2) {
            return Err(Error::InternalInvariant(format!(
                "removing dominated vertex {} broke diameter 2",
                kept[u]
            )));
        }
        removed.push(kept[u]);
        kept = map.into_iter().map(|old| kept[old]).collect();
        current = next;
    }
    Ok((current, kept, removed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::recognition::line_graph_of;

    #[test]
    fn exact_examples() {
        assert_eq!(gamma_exact(&complete(5)).gamma, 1);
        assert_eq!(gamma_exact(&cycle(5)).gamma, 2);
        assert_eq!(gamma_exact(&petersen()).gamma, 3);
        assert_eq!(gamma_exact(&Graph::empty(0)).gamma, 0);
        assert_eq!(gamma_exact(&Graph::empty(4)).gamma, 4);
        assert_eq!(gamma_exact(&path(7)).gamma, 3);
    }

    #[test]
    fn exact_reports_node_limit() {
        let limits = ExactLimits {
            max_nodes: Some(1),
            time: None,
        };
        let rook = line_graph_of(&complete_bipartite(5, 5));
        let err = gamma_exact_with(&rook, &limits).unwrap_err();
        match err {
            Error::SearchLimit { lower, upper } => assert!(lower <= 5 && upper >= 5),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn decision_matches_exact() {
        let p = petersen();
        assert!(dominating_set_within(&p, 2, &ExactLimits::default()).unwrap().is_none());
        assert_eq!(dominating_set_within(&p, 3, &ExactLimits::default()).unwrap().unwrap().gamma, 3);
        assert!(dominating_set_within(&cycle(4), 0, &ExactLimits::default()).unwrap().is_none());
    }

    #[test]
    fn bounded_examples() {
        assert_eq!(gamma_bounded(&cycle(5), 3).unwrap().unwrap().gamma, 2);
        assert!(gamma_bounded(&cycle(5), 1).unwrap().is_none());
        assert_eq!(gamma_bounded(&complete(6), 1).unwrap().unwrap().gamma, 1);
        assert!(gamma_bounded(&cycle(5), 0).is_err());
    }

    #[test]
    fn simplicial_examples() {
        let r = simplicial_reduce(&star(3));
        assert_eq!(r.graph.n(), 2);
        assert_eq!(r.removed.len(), 2);
        assert!(r.kept.contains(&0));
        assert_eq!(simplicial_reduce(&cycle(5)).graph.n(), 5);
        assert_eq!(simplicial_reduce(&complete(3)).graph.n(), 3);
        // Two isolated vertices must both stay.
        assert_eq!(simplicial_reduce(&Graph::empty(2)).graph.n(), 2);
    }

    #[test]
    fn girth5_examples() {
        assert_eq!(gamma_girth5_diam2(&cycle(5)).unwrap().gamma, 2);
        assert_eq!(gamma_girth5_diam2(&petersen()).unwrap().gamma, 3);
        assert!(matches!(gamma_girth5_diam2(&complete(4)), Err(Error::ClassMismatch(_))));
    }

    #[test]
    fn line_examples() {
        let cert = gamma_line_diam2(&octahedron()).unwrap();
        assert_eq!(cert.gamma, 2);
        assert_eq!(cert.method, Method::LineDiam2);
        assert_eq!(gamma_line_diam2(&cycle(5)).unwrap().gamma, 2);
        assert_eq!(gamma_line_diam2(&complete(3)).unwrap().gamma, 1);
        assert!(matches!(gamma_line_diam2(&star(3)), Err(Error::ClassMismatch(_))));
        assert!(matches!(gamma_line_diam2(&cycle(6)), Err(Error::ClassMismatch(_))));
    }

    #[test]
    fn clawfree_examples() {
        let o = gamma_clawfree_diam2_staged(&cycle(5)).unwrap();
        assert_eq!((o.certificate.gamma, o.stage), (2, ClawfreeStage::SmallGamma));
        let o = gamma_clawfree_diam2_staged(&octahedron()).unwrap();
        assert_eq!((o.certificate.gamma, o.stage), (2, ClawfreeStage::SmallGamma));
        assert!(gamma_clawfree_diam2(&star(3)).is_err());
    }

    #[test]
    fn clawfree_line_route_on_large_gamma() {
        // L(K_{4,4}) is the 4x4 rook's graph: diameter 2, γ = 4.
        let l = line_graph_of(&complete_bipartite(4, 4));
        let o = gamma_clawfree_diam2_staged(&l).unwrap();
        assert_eq!(o.certificate.gamma, 4);
        assert_eq!(o.stage, ClawfreeStage::LineRoute);
        assert_eq!(gamma_exact(&l).gamma, 4);
    }

    #[test]
    fn certificate_json_shape() {
        let cert = gamma_exact(&cycle(5));
        let v = serde_json::to_value(&cert).unwrap();
        assert_eq!(v["gamma"], 2);
        assert_eq!(v["method"], "exact");
        assert_eq!(v["verified"], true);
        assert_eq!(v["set"].as_array().unwrap().len(), 2);
    }
}
