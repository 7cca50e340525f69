//! Brute-force reference answers for tests.
//!
//! Everything here is plain subset enumeration over bitmasks and is kept
//! apart from the real algorithms on purpose, so a shared bug can't hide.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Environment variable that overrides every size guard at once.
pub const LIMIT_ENV: &str = "DOMSET_ORACLE_LIMIT";

/// Masks are `u64`, so no guard can go beyond this.
const HARD_CAP: usize = 63;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub gamma_n: usize,
    pub alpha_n: usize,
    pub vc_n: usize,
    pub mis_n: usize,
    pub mmm_edges: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            gamma_n: 24,
            alpha_n: 24,
            vc_n: 24,
            mis_n: 16,
            mmm_edges: 24,
        }
    }
}

impl OracleLimits {
    pub fn uniform(limit: usize) -> Self {
        Self {
            gamma_n: limit,
            alpha_n: limit,
            vc_n: limit,
            mis_n: limit,
            mmm_edges: limit,
        }
    }

    /// Defaults, or all guards set to `DOMSET_ORACLE_LIMIT` when it holds a number.
    pub fn from_env() -> Self {
        std::env::var(LIMIT_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(Self::uniform)
            .unwrap_or_default()
    }
}

fn guard(what: &'static str, size: usize, limit: usize) -> Result<()> {
    let limit = if what == "mmm_oracle" { limit } else { limit.min(HARD_CAP) };
    if size > limit {
        return Err(Error::OracleGuard { what, size, limit });
    }
    Ok(())
}

fn adjacency_masks(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect()
}

fn full(n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        u64::MAX >> (64 - n)
    }
}

fn to_set(n: usize, mask: u64) -> VertexSet {
    VertexSet::new(n, (0..n).filter(|&v| mask >> v & 1 == 1)).expect("mask within universe")
}

/// Calls `f` on every `t`-subset of `0..n`, in increasing numeric order,
/// until it returns true.
fn any_subset_of_size(n: usize, t: usize, mut f: impl FnMut(u64) -> bool) -> bool {
    if t > n {
        return false;
    }
    if t == 0 {
        return f(0);
    }
    let mut mask: u64 = (1u64 << t) - 1;
    let limit = 1u64 << n;
    while mask < limit {
        if f(mask) {
            return true;
        }
        // Gosper's hack: next integer with the same popcount.
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    false
}

pub fn gamma_oracle(g: &Graph) -> Result<usize> {
    gamma_oracle_with(g, &OracleLimits::from_env())
}

pub fn gamma_oracle_with(g: &Graph, limits: &OracleLimits) -> Result<usize> {
    gamma_set_oracle_with(g, limits).map(|s| s.len())
}

/// A smallest dominating set, lowest in numeric mask order.
pub fn gamma_set_oracle_with(g: &Graph, limits: &OracleLimits) -> Result<VertexSet> {
    let n = g.n();
    guard("gamma_oracle", n, limits.gamma_n)?;
    let adj = adjacency_masks(g);
    let all = full(n);
    for t in 0..=n {
        let mut found = None;
        any_subset_of_size(n, t, |mask| {
            let mut covered = mask;
            for v in 0..n {
                if mask >> v & 1 == 1 {
                    covered |= adj[v];
                }
            }
            if covered == all {
                found = Some(mask);
            }
            found.is_some()
        });
        if let Some(mask) = found {
            return Ok(to_set(n, mask));
        }
    }
    unreachable!("the whole vertex set dominates")
}

pub fn alpha_oracle(g: &Graph) -> Result<usize> {
    alpha_oracle_with(g, &OracleLimits::from_env())
}

pub fn alpha_oracle_with(g: &Graph, limits: &OracleLimits) -> Result<usize> {
    let n = g.n();
    guard("alpha_oracle", n, limits.alpha_n)?;
    let adj = adjacency_masks(g);
    let mut best = 0;
    for mask in 0..=full(n) {
        let size = mask.count_ones() as usize;
        if size > best && is_stable_mask(&adj, mask) {
            best = size;
        }
    }
    Ok(best)
}

fn is_stable_mask(adj: &[u64], mask: u64) -> bool {
    (0..adj.len()).all(|v| mask >> v & 1 == 0 || adj[v] & mask == 0)
}

/// Every maximal stable set, in increasing mask order.
pub fn mis_oracle(g: &Graph) -> Result<Vec<VertexSet>> {
    mis_oracle_with(g, &OracleLimits::from_env())
}

pub fn mis_oracle_with(g: &Graph, limits: &OracleLimits) -> Result<Vec<VertexSet>> {
    let n = g.n();
    guard("mis_oracle", n, limits.mis_n)?;
    let adj = adjacency_masks(g);
    let mut out = Vec::new();
    for mask in 0..=full(n) {
        if !is_stable_mask(&adj, mask) {
            continue;
        }
        let extendable = (0..n).any(|v| mask >> v & 1 == 0 && adj[v] & mask == 0);
        if !extendable {
            out.push(to_set(n, mask));
        }
    }
    Ok(out)
}

/// Minimum vertex cover size.
pub fn vc_oracle(g: &Graph) -> Result<usize> {
    vc_oracle_with(g, &OracleLimits::from_env())
}

pub fn vc_oracle_with(g: &Graph, limits: &OracleLimits) -> Result<usize> {
    vc_set_oracle_with(g, limits).map(|s| s.len())
}

/// A smallest vertex cover, lowest in numeric mask order.
pub fn vc_set_oracle_with(g: &Graph, limits: &OracleLimits) -> Result<VertexSet> {
    let n = g.n();
    guard("vc_oracle", n, limits.vc_n)?;
    for t in 0..=n {
        let mut found = None;
        any_subset_of_size(n, t, |mask| {
            if g.edges().iter().all(|&(u, v)| (mask >> u | mask >> v) & 1 == 1) {
                found = Some(mask);
            }
            found.is_some()
        });
        if let Some(mask) = found {
            return Ok(to_set(n, mask));
        }
    }
    unreachable!("all vertices cover every edge")
}

/// Minimum size of a maximal matching, by walking every matching.
pub fn mmm_oracle(g: &Graph) -> Result<usize> {
    mmm_oracle_with(g, &OracleLimits::from_env())
}

pub fn mmm_oracle_with(g: &Graph, limits: &OracleLimits) -> Result<usize> {
    guard("mmm_oracle", g.m(), limits.mmm_edges)?;
    let edges = g.edges();
    let mut used = vec![false; g.n()];
    let mut best = usize::MAX;
    walk_matchings(edges, 0, &mut used, 0, &mut best);
    Ok(best)
}

fn walk_matchings(edges: &[(usize, usize)], idx: usize, used: &mut [bool], size: usize, best: &mut usize) {
    if size >= *best {
        return;
    }
    if idx == edges.len() {
        if edges.iter().all(|&(u, v)| used[u] || used[v]) {
            *best = size;
        }
        return;
    }
    let (u, v) = edges[idx];
    if !used[u] && !used[v] {
        used[u] = true;
        used[v] = true;
        walk_matchings(edges, idx + 1, used, size + 1, best);
        used[u] = false;
        used[v] = false;
    }
    walk_matchings(edges, idx + 1, used, size, best);
}
