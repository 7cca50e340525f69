mod common;

use common::arb_graph;
use diamdom::matching::maximum_matching;
use diamdom::oracle::{
    alpha_oracle, gamma_set_oracle_with, mis_oracle, mmm_oracle_with, vc_oracle, vc_set_oracle_with, OracleLimits,
};
use diamdom::Error;
use proptest::prelude::*;

#[test]
fn guard_rejects_oversized_inputs() {
    let g = diamdom::Graph::empty(30);
    let err = gamma_set_oracle_with(&g, &OracleLimits::default()).unwrap_err();
    assert!(matches!(err, Error::OracleGuard { size: 30, limit: 24, .. }));
    // Raising the guard past 63 still stops at the mask width.
    assert!(gamma_set_oracle_with(&diamdom::Graph::empty(64), &OracleLimits::uniform(100)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn gallai_identity(g in arb_graph(0, 11)) {
        prop_assert_eq!(alpha_oracle(&g).unwrap() + vc_oracle(&g).unwrap(), g.n());
    }

    #[test]
    fn witnesses_are_valid(g in arb_graph(0, 11)) {
        let limits = OracleLimits::default();
        let dom = gamma_set_oracle_with(&g, &limits).unwrap();
        prop_assert!(g.is_dominating(dom.members()));
        let vc = vc_set_oracle_with(&g, &limits).unwrap();
        prop_assert!(g.edges().iter().all(|&(u, v)| vc.contains(u) || vc.contains(v)));
    }

    #[test]
    fn maximal_stable_sets_are_maximal(g in arb_graph(0, 9)) {
        let sets = mis_oracle(&g).unwrap();
        prop_assert!(!sets.is_empty());
        let alpha = alpha_oracle(&g).unwrap();
        prop_assert_eq!(sets.iter().map(|s| s.len()).max().unwrap(), alpha);
        for s in &sets {
            prop_assert!(g.is_stable(s.members()));
            prop_assert!(g.is_dominating(s.members()));
        }
    }

    /// Half of a maximum matching ≤ MMM ≤ maximum matching, and the
    /// endpoints of any maximal matching dominate every non-isolated vertex.
    #[test]
    fn mmm_bounds(g in arb_graph(0, 9)) {
        let limits = OracleLimits { mmm_edges: 64, ..OracleLimits::default() };
        let mmm = mmm_oracle_with(&g, &limits).unwrap();
        let nu = maximum_matching(&g).len();
        prop_assert!(mmm <= nu && nu <= 2 * mmm);
        let isolated = (0..g.n()).filter(|&v| g.degree(v) == 0).count();
        prop_assert!(gamma_set_oracle_with(&g, &OracleLimits::default()).unwrap().len() <= 2 * mmm + isolated);
    }
}
