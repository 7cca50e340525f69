mod common;

use common::arb_graph;
use diamdom::graph::{Graph, VertexSet};
use diamdom::matching::{
    bipartite_max_matching, hall_violator, is_maximal_matching, maximum_matching, right_neighborhood, BipartiteView,
};
use proptest::prelude::*;

/// Largest matching by trying every edge subset.
fn brute_max_matching(g: &Graph) -> usize {
    let edges = g.edges();
    let mut best = 0;
    for mask in 0u32..1 << edges.len() {
        let mut used = vec![false; g.n()];
        let mut ok = true;
        for (i, &(u, v)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                if used[u] || used[v] {
                    ok = false;
                    break;
                }
                used[u] = true;
                used[v] = true;
            }
        }
        if ok {
            best = best.max(mask.count_ones() as usize);
        }
    }
    best
}

/// Bipartite graph between `0..a` and `a..a+b` with the given cross edges.
fn arb_bipartite() -> impl Strategy<Value = (Graph, usize)> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(a, b)| {
        proptest::collection::vec(any::<bool>(), a * b).prop_map(move |bits| {
            let edges: Vec<_> = (0..a)
                .flat_map(|u| (0..b).map(move |v| (u, a + v)))
                .zip(bits)
                .filter(|(_, keep)| *keep)
                .map(|(e, _)| e)
                .collect();
            (Graph::from_edges(a + b, edges).unwrap(), a)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn blossom_is_maximum(g in arb_graph(0, 8).prop_filter("few edges", |g| g.m() <= 16)) {
        let m = maximum_matching(&g);
        m.validate(&g).unwrap();
        prop_assert_eq!(m.len(), brute_max_matching(&g));
        prop_assert!(is_maximal_matching(&g, &m));
    }

    #[test]
    fn hall_violator_certifies_deficiency((g, a) in arb_bipartite()) {
        let left = VertexSet::new(g.n(), 0..a).unwrap();
        let right = VertexSet::new(g.n(), a..g.n()).unwrap();
        let view = BipartiteView::new(&g, left, right).unwrap();
        let bm = bipartite_max_matching(&view);
        prop_assert_eq!(bm.matching.len(), maximum_matching(&g).len());
        match hall_violator(&view, &bm.matching).unwrap() {
            None => prop_assert!(bm.covers_left),
            Some(t) => {
                prop_assert!(!bm.covers_left);
                prop_assert!(right_neighborhood(&view, &t).len() < t.len());
            }
        }
    }
}
