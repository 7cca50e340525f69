//! Graph corpora for tests: exhaustive enumeration and seeded random
//! generators for the classes the solvers target.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{canonical_code, complement, diameter, distances_from, is_connected, Graph, VertexSet};
use crate::pattern::{contains_induced, Pattern, PatternName};
use crate::recognition::{is_claw_free, line_graph_of};

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// Every labeled graph on `n` vertices (`2^(n(n-1)/2)` of them).
pub fn all_labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs = pairs(n);
    assert!(pairs.len() < 64, "too many vertices for exhaustive enumeration");
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
        Graph::from_edges(n, edges).expect("pairs are valid edges")
    })
}

fn extend(g: &Graph, neighbors: &[usize]) -> Graph {
    let v = g.n();
    let edges = g.edges().iter().copied().chain(neighbors.iter().map(|&u| (u, v)));
    Graph::from_edges(v + 1, edges).expect("extension is valid")
}

/// Grows each graph of `level` by one vertex in every allowed way and keeps
/// one representative per isomorphism class.
fn augment<F>(level: &[Graph], mut allowed: F) -> Vec<Graph>
where
    F: FnMut(&Graph, &[usize]) -> bool,
{
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in level {
        let n = g.n();
        for mask in 0u32..1 << n {
            let nb: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if !allowed(g, &nb) {
                continue;
            }
            let h = extend(g, &nb);
            if seen.insert(canonical_code(&h).expect("corpus sizes are within the canonical cap")) {
                out.push(h);
            }
        }
    }
    out
}

/// One graph per isomorphism class on exactly `n` vertices (`n ≤ 8`).
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 8, "isomorphism classes are only enumerated up to 8 vertices");
    let mut level = vec![Graph::empty(0)];
    for _ in 0..n {
        level = augment(&level, |_, _| true);
    }
    level
}

/// Connected graphs with no cycle shorter than 5 (trees included), one per
/// isomorphism class, grouped by vertex count `1..=max_n`.
///
/// Every such graph arises from a smaller one by adding a vertex whose
/// neighbors are pairwise at distance at least 3, so growing level by level
/// misses nothing.
pub fn connected_girth5_graphs(max_n: usize) -> Vec<Vec<Graph>> {
    let mut levels = vec![vec![Graph::empty(1)]];
    while levels.len() < max_n {
        let next = augment(levels.last().unwrap(), |g, nb| {
            !nb.is_empty()
                && nb.iter().enumerate().all(|(i, &a)| {
                    let dist = distances_from(g, a);
                    nb[i + 1..].iter().all(|&b| dist[b].is_some_and(|d| d >= 3))
                })
        });
        levels.push(next);
    }
    levels
}

pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let edges: Vec<_> = pairs(n).into_iter().filter(|_| rng.gen_bool(p)).collect();
    Graph::from_edges(n, edges).expect("random edges are valid")
}

fn two_k2() -> Pattern {
    Pattern::new(PatternName::TwoK2)
}

/// Random 2K2-free graph on `n` vertices, by one of three constructions
/// picked at random: destroying induced 2K2s by adding edges, complementing
/// a random induced-C4-free graph, or a random split graph.
pub fn random_2k2_free<R: Rng>(n: usize, rng: &mut R) -> Graph {
    match rng.gen_range(0..3) {
        0 => {
            let p = rng.gen_range(0.1..0.7);
            let mut g = random_graph(n, p, rng);
            while let Some(occ) = contains_induced(&g, &two_k2()).expect("pattern fits") {
                let img = occ.image();
                let (a, b) = (img[*[0usize, 1].choose(rng).unwrap()], img[*[2usize, 3].choose(rng).unwrap()]);
                let mut edges = g.edges().to_vec();
                edges.push((a.min(b), a.max(b)));
                g = Graph::from_edges(n, edges).expect("valid");
            }
            g
        }
        1 => {
            let c4 = Pattern::new(PatternName::C4);
            let mut order = pairs(n);
            order.shuffle(rng);
            let keep = rng.gen_range(0.2..1.0);
            let mut h = Graph::empty(n);
            for e in order {
                if !rng.gen_bool(keep) {
                    continue;
                }
                let mut edges = h.edges().to_vec();
                edges.push(e);
                let candidate = Graph::from_edges(n, edges).expect("valid");
                if contains_induced(&candidate, &c4).expect("pattern fits").is_none() {
                    h = candidate;
                }
            }
            // Every accepted step was checked in full, so h has no induced C4
            // and its complement no induced 2K2.
            complement(&h)
        }
        _ => random_split(n, rng.gen_range(0.2..0.8), rng),
    }
}

/// Random split graph: a clique on a random prefix of the vertices, a
/// stable set on the rest, cross edges with probability `p`. Vertex ids are
/// shuffled.
pub fn random_split<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let a = if n == 0 { 0 } else { rng.gen_range(1..=n) };
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    let mut edges = Vec::new();
    for u in 0..a {
        for v in u + 1..n {
            if v < a || rng.gen_bool(p) {
                let (x, y) = (label[u], label[v]);
                edges.push((x.min(y), x.max(y)));
            }
        }
    }
    Graph::from_edges(n, edges).expect("valid")
}

/// Random split graph of diameter exactly 2, by rejection. `None` after
/// `tries` failures.
pub fn random_split_diam2<R: Rng>(n: usize, tries: usize, rng: &mut R) -> Option<Graph> {
    (0..tries)
        .map(|_| random_split(n, rng.gen_range(0.3..0.8), rng))
        .find(|g| diameter(g) == Some(2))
}

/// Unit circular-arc graph: `n` random points on a circle, adjacent when
/// closer than `len` (as a fraction of the circumference).
pub fn random_unit_circular_arc<R: Rng>(n: usize, len: f64, rng: &mut R) -> Graph {
    let pts: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let d = (pts[u] - pts[v]).abs();
            if d.min(1.0 - d) < len {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("valid")
}

/// Where a claw-free diameter-2 sample came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClawfreeSource {
    LineOf2k2Free,
    ComplementTriangleFree,
    CircularArc,
    Rejection,
}

/// Random connected claw-free graph of diameter exactly 2 with at most
/// `max_n` vertices. Cycles through the four constructions; gives up after
/// `tries` rejected samples.
pub fn random_clawfree_diam2<R: Rng>(max_n: usize, tries: usize, rng: &mut R) -> Option<(Graph, ClawfreeSource)> {
    for _ in 0..tries {
        let (g, src) = match rng.gen_range(0..4) {
            0 => {
                let root_n = rng.gen_range(4..=8);
                let root = random_2k2_free(root_n, rng);
                (line_graph_of(&root), ClawfreeSource::LineOf2k2Free)
            }
            1 => {
                let n = rng.gen_range(4..=max_n);
                let h = random_triangle_free(n, rng);
                (complement(&h), ClawfreeSource::ComplementTriangleFree)
            }
            2 => {
                let n = rng.gen_range(5..=max_n);
                let len = rng.gen_range(0.15..0.45);
                (random_unit_circular_arc(n, len, rng), ClawfreeSource::CircularArc)
            }
            _ => {
                let n = rng.gen_range(4..=max_n);
                (random_graph(n, rng.gen_range(0.4..0.9), rng), ClawfreeSource::Rejection)
            }
        };
        // Drop isolated vertices so line graphs of rooted samples stay usable.
        let g = drop_isolated(&g);
        if g.n() >= 2 && g.n() <= max_n && is_connected(&g) && diameter(&g) == Some(2) && is_claw_free(&g) {
            return Some((g, src));
        }
    }
    None
}

fn drop_isolated(g: &Graph) -> Graph {
    let keep = VertexSet::new(g.n(), (0..g.n()).filter(|&v| g.degree(v) > 0)).expect("in range");
    crate::graph::induced_subgraph(g, &keep).expect("valid subset").0
}

/// Random maximal-ish triangle-free graph: edges tried in random order and
/// kept when they close no triangle.
pub fn random_triangle_free<R: Rng>(n: usize, rng: &mut R) -> Graph {
    let mut order = pairs(n);
    order.shuffle(rng);
    let keep = rng.gen_range(0.3..1.0);
    let mut adj = vec![vec![false; n]; n];
    let mut edges = Vec::new();
    for (u, v) in order {
        if rng.gen_bool(keep) && !(0..n).any(|w| adj[u][w] && adj[v][w]) {
            adj[u][v] = true;
            adj[v][u] = true;
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, edges).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::girth;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn class_counts_match_known_sequence() {
        let counts: Vec<usize> = (0..=7).map(|n| nonisomorphic_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156, 1044]);
    }

    #[test]
    fn labeled_count() {
        assert_eq!(all_labeled_graphs(4).count(), 64);
    }

    #[test]
    fn girth5_levels_start_with_trees() {
        let levels = connected_girth5_graphs(6);
        let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
        // Trees 1, 1, 1, 2, 3, 6, plus C5 at 5, and C6 and C5 with a pendant at 6.
        assert_eq!(counts, vec![1, 1, 1, 2, 4, 8]);
        assert!(levels.iter().flatten().all(|g| girth(g).is_none_or(|c| c >= 5)));
    }

    #[test]
    fn generators_hit_their_classes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.gen_range(1..=9);
            let g = random_2k2_free(n, &mut rng);
            assert!(contains_induced(&g, &two_k2()).unwrap().is_none());
            assert_eq!(g.n(), n);
        }
        for _ in 0..20 {
            let (g, _) = random_clawfree_diam2(12, 200, &mut rng).unwrap();
            assert!(is_claw_free(&g) && diameter(&g) == Some(2));
        }
    }
}
