//! Minimum maximal matching through maximal stable set enumeration.
//!
//! Every minimum maximal matching `M` leaves a stable set of unmatched
//! vertices, which extends to a maximal stable set `S`. For each `S` the
//! solver takes a maximum matching `mu` of `G - S`; the vertices of `G - S`
//! left uncovered (`T`) are stable, and if `T` can be matched into `S` the
//! two matchings together form a maximal matching of size
//! `theta(S) = |mu| + |T|`. Otherwise a Hall deficiency set `T'` yields a
//! strictly larger maximal stable set with strictly smaller `theta`, and the
//! search continues from there. The smallest recorded matching is optimal
//! whenever all maximal stable sets were enumerated, which is polynomial on
//! 2K2-free graphs.

use log::warn;

use crate::error::{Error, Result};
use crate::graph::{induced_subgraph, Graph, VertexSet};
use crate::matching::{
    bipartite_max_matching, hall_violator, is_maximal_matching, maximum_matching, right_neighborhood,
    BipartiteView, Matching,
};

/// Enumeration cap for arbitrary inputs.
pub const GENERAL_CAP: usize = 1_000_000;

/// Enumeration cap for inputs known to be 2K2-free: `n(n-1)/2 + 1`.
pub fn cap_for_2k2_free(n: usize) -> usize {
    n * n.saturating_sub(1) / 2 + 1
}

/// Calls `visit` on every maximal stable set of `g`, each exactly once.
///
/// Runs Bron–Kerbosch with pivoting on the complement of `g`. Fails with
/// [`Error::CapExceeded`] as soon as more than `cap` sets would be produced.
pub fn for_each_maximal_stable_set<F>(g: &Graph, cap: usize, mut visit: F) -> Result<usize>
where
    F: FnMut(VertexSet) -> Result<()>,
{
    if cap == 0 {
        return Err(Error::InvalidInput("enumeration cap must be at least 1".into()));
    }
    let mut count = 0;
    let mut current = Vec::new();
    let candidates: Vec<usize> = (0..g.n()).collect();
    expand(g, &mut current, candidates, Vec::new(), cap, &mut count, &mut visit)?;
    Ok(count)
}

/// Vertices of `set` other than `v` that are not adjacent to `v`.
fn non_neighbors(g: &Graph, v: usize, set: &[usize]) -> Vec<usize> {
    set.iter().copied().filter(|&w| w != v && !g.has_edge(v, w)).collect()
}

fn expand<F>(
    g: &Graph,
    current: &mut Vec<usize>,
    mut candidates: Vec<usize>,
    mut excluded: Vec<usize>,
    cap: usize,
    count: &mut usize,
    visit: &mut F,
) -> Result<()>
where
    F: FnMut(VertexSet) -> Result<()>,
{
    if candidates.is_empty() {
        if excluded.is_empty() {
            *count += 1;
            if *count > cap {
                return Err(Error::CapExceeded { count: *count - 1 });
            }
            visit(VertexSet::new(g.n(), current.iter().copied())?)?;
        }
        return Ok(());
    }
    let pivot = candidates
        .iter()
        .chain(&excluded)
        .copied()
        .max_by_key(|&u| (non_neighbors(g, u, &candidates).len(), std::cmp::Reverse(u)))
        .unwrap();
    let branch: Vec<usize> = candidates
        .iter()
        .copied()
        .filter(|&v| v == pivot || g.has_edge(v, pivot))
        .collect();
    for v in branch {
        current.push(v);
        expand(
            g,
            current,
            non_neighbors(g, v, &candidates),
            non_neighbors(g, v, &excluded),
            cap,
            count,
            visit,
        )?;
        current.pop();
        candidates.retain(|&w| w != v);
        excluded.push(v);
    }
    Ok(())
}

pub fn enumerate_maximal_stable_sets(g: &Graph, cap: usize) -> Result<Vec<VertexSet>> {
    let mut out = Vec::new();
    for_each_maximal_stable_set(g, cap, |s| {
        out.push(s);
        Ok(())
    })?;
    Ok(out)
}

pub fn is_maximal_stable(g: &Graph, s: &VertexSet) -> bool {
    g.is_stable(s.members())
        && (0..g.n()).all(|v| s.contains(v) || g.neighbors(v).iter().any(|&w| s.contains(w)))
}

/// A maximal stable set `S` together with its matching data.
#[derive(Clone, Debug)]
pub struct StableSetCandidate {
    pub s: VertexSet,
    /// Maximum matching of `G - S`, in host ids.
    pub mu: Matching,
    /// Vertices of `G - S` left uncovered by `mu`.
    pub t_mu: VertexSet,
    pub theta: usize,
    /// Maximum matching of the bipartite graph between `t_mu` and `S`.
    pub mu_prime: Matching,
    /// Whether `mu_prime` covers all of `t_mu`.
    pub fair: bool,
}

impl StableSetCandidate {
    /// `mu ∪ mu'`, a maximal matching of size `theta` when the pair is fair.
    pub fn combined(&self, g: &Graph) -> Result<Matching> {
        if !self.fair {
            return Err(Error::ContractViolation("candidate is not fair".into()));
        }
        self.mu.union(&self.mu_prime, g)
    }

    fn bipartite_view(&self, g: &Graph) -> Result<BipartiteView> {
        BipartiteView::new(g, self.t_mu.clone(), self.s.clone())
    }
}

pub fn evaluate_stable_set(g: &Graph, s: &VertexSet) -> Result<StableSetCandidate> {
    if !is_maximal_stable(g, s) {
        return Err(Error::ContractViolation(format!(
            "{:?} is not a maximal stable set",
            s.members()
        )));
    }
    let rest = s.complement();
    let (h, to_host) = induced_subgraph(g, &rest)?;
    let local = maximum_matching(&h);
    let mu = Matching::new(g, local.edges().iter().map(|&(a, b)| (to_host[a], to_host[b])))?;

    let mate = mu.mates();
    let t_mu = VertexSet::new(g.n(), rest.iter().filter(|&v| mate[v].is_none()))?;
    if !g.is_stable(t_mu.members()) {
        return Err(Error::InternalInvariant("uncovered vertices of a maximum matching are adjacent".into()));
    }

    let theta = mu.len() + t_mu.len();
    let doubled = g.n() - s.len() + t_mu.len();
    if !doubled.is_multiple_of(2) || doubled / 2 != theta {
        return Err(Error::InternalInvariant(format!(
            "theta identity broken: |mu| + |T| = {theta}, (n - q)/2 = {doubled}/2"
        )));
    }

    let view = BipartiteView::new(g, t_mu.clone(), s.clone())?;
    let bm = bipartite_max_matching(&view);
    Ok(StableSetCandidate {
        s: s.clone(),
        mu,
        t_mu,
        theta,
        mu_prime: bm.matching,
        fair: bm.covers_left,
    })
}

/// Result of one improvement step `S -> S1`.
#[derive(Clone, Debug)]
pub struct Improvement {
    pub s1: VertexSet,
    /// `N(T') ∩ S`.
    pub n_t_prime: VertexSet,
    pub p: VertexSet,
    /// Vertices added greedily because `S1` was not maximal.
    pub repaired: Vec<usize>,
}

/// `S1 = (S \ N(T')) ∪ T' ∪ P`, where `P` is a greedy maximal stable subset
/// (ascending ids) of the `mu`-covered vertices whose `S`-neighbors all lie
/// in `N(T')` and which have no neighbor in `T'`.
pub fn improve_stable_set(g: &Graph, cand: &StableSetCandidate, t_prime: &VertexSet) -> Result<Improvement> {
    if cand.fair {
        return Err(Error::ContractViolation("improvement requires an unfair candidate".into()));
    }
    if t_prime.is_empty() || t_prime.iter().any(|v| !cand.t_mu.contains(v)) {
        return Err(Error::ContractViolation("T' must be a non-empty subset of T(mu)".into()));
    }
    let view = cand.bipartite_view(g)?;
    let n_t_prime = right_neighborhood(&view, t_prime);
    if n_t_prime.len() >= t_prime.len() {
        return Err(Error::ContractViolation("T' is not a Hall violator".into()));
    }

    let mate = cand.mu.mates();
    let eligible = (0..g.n()).filter(|&w| {
        mate[w].is_some()
            && g.neighbors(w)
                .iter()
                .all(|&x| (!cand.s.contains(x) || n_t_prime.contains(x)) && !t_prime.contains(x))
    });
    let mut p: Vec<usize> = Vec::new();
    for w in eligible {
        if p.iter().all(|&x| !g.has_edge(w, x)) {
            p.push(w);
        }
    }

    let mut members: Vec<usize> = cand.s.iter().filter(|&v| !n_t_prime.contains(v)).collect();
    members.extend(t_prime.iter());
    members.extend(&p);
    let mut s1 = VertexSet::new(g.n(), members)?;
    if !g.is_stable(s1.members()) {
        return Err(Error::InternalInvariant("S1 is not stable".into()));
    }

    let mut repaired = Vec::new();
    if !is_maximal_stable(g, &s1) {
        let mut members = s1.members().to_vec();
        for v in 0..g.n() {
            if !s1.contains(v) && members.iter().all(|&x| !g.has_edge(v, x)) {
                members.push(v);
                repaired.push(v);
            }
        }
        warn!("S1 was not maximal; extended with {repaired:?}");
        s1 = VertexSet::new(g.n(), members)?;
    }

    if s1.len() <= cand.s.len() {
        return Err(Error::InternalInvariant(format!(
            "improvement did not grow the stable set: |S| = {}, |S1| = {}",
            cand.s.len(),
            s1.len()
        )));
    }
    Ok(Improvement {
        s1,
        n_t_prime,
        p: VertexSet::new(g.n(), p)?,
        repaired,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateRecord {
    pub s_len: usize,
    pub mu_len: usize,
    pub t_len: usize,
    pub theta: usize,
    pub fair: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStep {
    pub s_len: usize,
    pub s1_len: usize,
    pub theta: usize,
    pub theta1: usize,
    pub repaired: usize,
}

/// Everything the solver evaluated, for auditing.
#[derive(Clone, Debug, Default)]
pub struct MmmTrace {
    pub stable_sets: usize,
    pub candidates: Vec<CandidateRecord>,
    pub steps: Vec<ChainStep>,
}

impl MmmTrace {
    fn record(&mut self, c: &StableSetCandidate) {
        self.candidates.push(CandidateRecord {
            s_len: c.s.len(),
            mu_len: c.mu.len(),
            t_len: c.t_mu.len(),
            theta: c.theta,
            fair: c.fair,
        });
    }
}

pub fn minimum_maximal_matching(g: &Graph, cap: usize) -> Result<Matching> {
    minimum_maximal_matching_traced(g, cap).map(|(m, _)| m)
}

pub fn minimum_maximal_matching_traced(g: &Graph, cap: usize) -> Result<(Matching, MmmTrace)> {
    let mut trace = MmmTrace::default();
    let mut best: Option<Matching> = None;
    let stable_sets = for_each_maximal_stable_set(g, cap, |s| {
        let mut cand = evaluate_stable_set(g, &s)?;
        trace.record(&cand);
        while !cand.fair {
            let view = cand.bipartite_view(g)?;
            let t_prime = hall_violator(&view, &cand.mu_prime)?
                .ok_or_else(|| Error::InternalInvariant("unfair candidate without Hall violator".into()))?;
            let step = improve_stable_set(g, &cand, &t_prime)?;
            let next = evaluate_stable_set(g, &step.s1)?;
            trace.record(&next);
            trace.steps.push(ChainStep {
                s_len: cand.s.len(),
                s1_len: next.s.len(),
                theta: cand.theta,
                theta1: next.theta,
                repaired: step.repaired.len(),
            });
            if next.theta >= cand.theta {
                return Err(Error::InternalInvariant(format!(
                    "theta did not decrease: {} -> {}",
                    cand.theta, next.theta
                )));
            }
            cand = next;
        }
        let m = cand.combined(g)?;
        if m.len() != cand.theta || !is_maximal_matching(g, &m) {
            return Err(Error::InternalInvariant("fair candidate gave a bad matching".into()));
        }
        if best.as_ref().is_none_or(|b| (m.len(), m.edges()) < (b.len(), b.edges())) {
            best = Some(m);
        }
        Ok(())
    })?;
    trace.stable_sets = stable_sets;
    let best = best.unwrap_or_else(|| Matching::empty(g.n()));
    Ok((best, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    fn sets(g: &Graph) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = enumerate_maximal_stable_sets(g, GENERAL_CAP)
            .unwrap()
            .into_iter()
            .map(VertexSet::into_vec)
            .collect();
        out.sort();
        out
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(sets(&cycle(4)), vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(sets(&path(3)), vec![vec![0, 2], vec![1]]);
        let c5 = sets(&cycle(5));
        assert_eq!(c5.len(), 5);
        assert!(c5.iter().all(|s| s.len() == 2));
    }

    #[test]
    fn enumeration_respects_cap() {
        let err = enumerate_maximal_stable_sets(&cycle(5), 4).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { count: 4 }));
        assert_eq!(enumerate_maximal_stable_sets(&cycle(5), 5).unwrap().len(), 5);
        assert!(enumerate_maximal_stable_sets(&cycle(5), 0).is_err());
    }

    fn vs(n: usize, m: &[usize]) -> VertexSet {
        VertexSet::new(n, m.iter().copied()).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let c = evaluate_stable_set(&path(4), &vs(4, &[0, 3])).unwrap();
        assert_eq!(c.mu.edges(), &[(1, 2)]);
        assert!(c.t_mu.is_empty() && c.fair);
        assert_eq!(c.theta, 1);

        let c4 = cycle(4);
        let c = evaluate_stable_set(&c4, &vs(4, &[0, 2])).unwrap();
        assert!(c.mu.is_empty());
        assert_eq!(c.t_mu.members(), &[1, 3]);
        assert_eq!(c.theta, 2);
        assert!(c.fair);
        assert_eq!(c.combined(&c4).unwrap().len(), 2);

        let c = evaluate_stable_set(&complete(3), &vs(3, &[0])).unwrap();
        assert_eq!(c.mu.edges(), &[(1, 2)]);
        assert!(c.t_mu.is_empty() && c.fair && c.theta == 1);
    }

    #[test]
    fn evaluate_rejects_non_maximal() {
        assert!(evaluate_stable_set(&path(4), &vs(4, &[0])).is_err());
        assert!(evaluate_stable_set(&path(4), &vs(4, &[0, 1])).is_err());
    }

    #[test]
    fn improve_rejects_fair_candidate() {
        let g = path(4);
        let c = evaluate_stable_set(&g, &vs(4, &[0, 3])).unwrap();
        assert!(improve_stable_set(&g, &c, &vs(4, &[1])).is_err());
    }

    /// An unfair instance on five vertices: the star K_{1,3} with one subdivided edge (0 the center,
    /// leaves 1 and 2, path 0-3-4). With S = {0, 4} the maximum matching of
    /// G - S = {1, 2, 3} is empty, T = {1, 2, 3}, and T can't be matched
    /// into S because 1 and 2 both only see 0.
    #[test]
    fn improvement_on_subdivided_claw() {
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap();
        let c = evaluate_stable_set(&g, &vs(5, &[0, 4])).unwrap();
        assert!(!c.fair);
        assert_eq!(c.t_mu.members(), &[1, 2, 3]);
        assert_eq!(c.theta, 3);
        let view = BipartiteView::new(&g, c.t_mu.clone(), c.s.clone()).unwrap();
        let t_prime = hall_violator(&view, &c.mu_prime).unwrap().unwrap();
        assert_eq!(t_prime.members(), &[1, 2]);
        let step = improve_stable_set(&g, &c, &t_prime).unwrap();
        assert_eq!(step.n_t_prime.members(), &[0]);
        assert_eq!(step.s1.members(), &[1, 2, 4]);
        assert!(step.repaired.is_empty());
        let next = evaluate_stable_set(&g, &step.s1).unwrap();
        assert!(next.theta < c.theta);
        assert!(next.fair);
        assert_eq!(next.theta, 1);
    }

    #[test]
    fn mmm_examples() {
        let p4 = path(4);
        assert_eq!(minimum_maximal_matching(&p4, GENERAL_CAP).unwrap().edges(), &[(1, 2)]);
        assert_eq!(minimum_maximal_matching(&cycle(5), GENERAL_CAP).unwrap().len(), 2);
        assert_eq!(minimum_maximal_matching(&star(3), GENERAL_CAP).unwrap().len(), 1);
        assert!(minimum_maximal_matching(&Graph::empty(3), GENERAL_CAP).unwrap().is_empty());
        assert!(minimum_maximal_matching(&Graph::empty(0), GENERAL_CAP).unwrap().is_empty());
    }

    #[test]
    fn mmm_surfaces_cap() {
        let err = minimum_maximal_matching(&cycle(7), cap_for_2k2_free(3)).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }
}
