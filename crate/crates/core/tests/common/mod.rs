#![allow(dead_code)]

use diamdom::Graph;
use proptest::prelude::*;

/// Random labeled graph on `min_n..=max_n` vertices, each pair an edge
/// independently.
pub fn arb_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    let edges: Vec<_> = pairs.zip(bits).filter(|(_, &b)| b).map(|(e, _)| e).collect();
    Graph::from_edges(n, edges).unwrap()
}

/// Applies a permutation of the vertex ids.
pub fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    Graph::from_edges(g.n(), g.edges().iter().map(|&(u, v)| (perm[u], perm[v]))).unwrap()
}
