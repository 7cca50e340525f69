mod common;

use common::arb_graph;
use diamdom::graph::{is_connected, is_isomorphic};
use diamdom::pattern::{contains_induced, is_induced_occurrence, Pattern, PatternName};
use diamdom::recognition::{classify, is_line_graph, line_graph_of, root_graph, split_partition};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn witnesses_are_real(g in arb_graph(0, 9)) {
        let report = classify(&g);
        for w in &report.witnesses {
            prop_assert!(is_induced_occurrence(&g, &Pattern::new(w.pattern), &w.occurrence));
        }
        prop_assert_eq!(report.witness.as_ref(), report.witnesses.first());
    }

    #[test]
    fn split_flag_matches_partition(g in arb_graph(0, 9)) {
        let report = classify(&g);
        prop_assert_eq!(report.split, split_partition(&g).is_some());
        let forbidden = [PatternName::TwoK2, PatternName::C4, PatternName::C5]
            .iter()
            .any(|&p| contains_induced(&g, &Pattern::new(p)).unwrap().is_some());
        prop_assert_eq!(report.split, !forbidden);
    }

    /// Rebuilding the root of a line graph and taking its line graph again
    /// gives back the input.
    #[test]
    fn root_round_trip(root in arb_graph(2, 7)) {
        let l = line_graph_of(&root);
        prop_assume!(l.n() > 0 && is_connected(&l) && l.n() <= 11);
        prop_assert!(is_line_graph(&l));
        let r = root_graph(&l).unwrap().expect("line graph has a root");
        prop_assert!(is_isomorphic(&line_graph_of(&r.graph), &l).unwrap());
    }

    #[test]
    fn non_line_graphs_have_no_root(g in arb_graph(1, 8)) {
        prop_assume!(is_connected(&g));
        prop_assert_eq!(root_graph(&g).unwrap().is_some(), is_line_graph(&g));
    }
}
