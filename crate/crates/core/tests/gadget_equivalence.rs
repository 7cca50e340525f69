use std::time::Duration;

use diamdom::corpus::nonisomorphic_graphs;
use diamdom::domset::ExactLimits;
use diamdom::gadgets::{
    prepare_split_instance, reduce_cubic_clawfree, reduce_split_trianglefree, reduce_vc_k14, verify_reduction,
    ReductionInstance, VerifyOptions,
};
use diamdom::graph::{diameter, named, parse_graph, Format};
use diamdom::oracle::gamma_oracle;
use diamdom::recognition::is_claw_free;
use diamdom::{Error, Graph};

fn prism() -> Graph {
    Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]).unwrap()
}

fn assert_all_pass(inst: &ReductionInstance, source: &Graph, k: usize, opts: &VerifyOptions) {
    let r = verify_reduction(inst, source, k, opts).unwrap();
    assert!(r.all_passed(), "k = {k}: {:?}", r.checks);
}

#[test]
fn cubic_k4_every_budget() {
    let g = named::complete(4);
    for k in 0..=4 {
        let inst = reduce_cubic_clawfree(&g, k, 3).unwrap();
        assert_eq!((inst.gprime.n(), inst.kprime), (50, 2 * 4 + k + 1));
        assert_all_pass(&inst, &g, k, &VerifyOptions::default());
    }
}

/// The prism around its threshold γ = 2, where the equivalence is tight.
#[test]
fn cubic_prism_at_threshold() {
    let g = prism();
    assert_eq!(gamma_oracle(&g).unwrap(), 2);
    let opts = VerifyOptions {
        exact: ExactLimits {
            max_nodes: None,
            time: Some(Duration::from_secs(120)),
        },
        oracle: None,
    };
    for k in [1, 2] {
        let inst = reduce_cubic_clawfree(&g, k, 3).unwrap();
        assert!(is_claw_free(&inst.gprime));
        assert_eq!(diameter(&inst.gprime), Some(3));
        let r = verify_reduction(&inst, &g, k, &opts).unwrap();
        assert!(r.checks.iter().all(|c| c.passed != Some(false)), "k = {k}: {:?}", r.checks);
    }
}

#[test]
fn cubic_diameter_follows_d() {
    let g = named::complete(4);
    for d in 3..=8 {
        let inst = reduce_cubic_clawfree(&g, 1, d).unwrap();
        assert_eq!(diameter(&inst.gprime), Some(d), "d = {d}");
        assert!(is_claw_free(&inst.gprime));
        assert_eq!(inst.d, Some(d));
    }
}

#[test]
fn cubic_preconditions() {
    assert!(matches!(reduce_cubic_clawfree(&named::path(4), 1, 3), Err(Error::InvalidInput(_))));
    assert!(matches!(reduce_cubic_clawfree(&named::complete(4), 1, 2), Err(Error::InvalidInput(_))));
    let two_k4 = diamdom::graph::disjoint_union(&named::complete(4), &named::complete(4));
    assert!(matches!(reduce_cubic_clawfree(&two_k4, 1, 3), Err(Error::InvalidInput(_))));
}

#[test]
fn vc_every_small_graph_and_budget() {
    for n in 2..=4 {
        for g in nonisomorphic_graphs(n).into_iter().filter(|g| g.m() > 0) {
            for k in 0..=n {
                let inst = reduce_vc_k14(&g, k).unwrap();
                assert_all_pass(&inst, &g, k, &VerifyOptions::default());
            }
        }
    }
}

#[test]
fn vc_triangle_counts() {
    let inst = reduce_vc_k14(&named::complete(3), 2).unwrap();
    assert_eq!(inst.gprime.n(), 10);
    assert_eq!(inst.kprime, 2);
}

#[test]
fn sidecar_and_edge_list_round_trip() {
    let inst = reduce_vc_k14(&named::path(3), 1).unwrap();
    let side = inst.sidecar();
    assert_eq!(side["kind"], "vc_k14_diam2");
    assert_eq!(side["kprime"], inst.kprime);
    let prov = side["provenance"].as_array().unwrap();
    assert_eq!(prov.len(), inst.gprime.n());
    for (i, entry) in prov.iter().enumerate() {
        assert_eq!(entry["vertex"], i);
        assert!(entry["role"].is_string());
    }
    let back = parse_graph(&inst.gprime.to_edge_list(), Format::EdgeList).unwrap();
    assert_eq!(back.n(), inst.gprime.n());
    assert_eq!(back.edges(), inst.gprime.edges());
}

#[test]
fn tampered_instance_fails_structure() {
    let mut inst = reduce_vc_k14(&named::complete(3), 2).unwrap();
    // Detach the hub (the last vertex): the graph falls apart.
    let hub = inst.gprime.n() - 1;
    let edges: Vec<_> = inst.gprime.edges().iter().copied().filter(|&(_, v)| v != hub).collect();
    inst.gprime = Graph::from_edges(inst.gprime.n(), edges).unwrap();
    let r = verify_reduction(&inst, &named::complete(3), 2, &VerifyOptions::default()).unwrap();
    assert_eq!(r.checks[0].name, "structure");
    assert_eq!(r.checks[0].passed, Some(false));
    assert!(!r.all_passed());
}

#[test]
fn split_output_is_triangle_free_diameter_2() {
    for n in 3..=6 {
        for g in nonisomorphic_graphs(n) {
            let Ok(prep) = prepare_split_instance(&g) else { continue };
            let inst = reduce_split_trianglefree(&prep.graph, &prep.partition, 1).unwrap();
            let h = &inst.gprime;
            assert_eq!(diameter(h), Some(2));
            assert!(h.edges().iter().all(|&(u, v)| !h.neighbors(u).iter().any(|&w| h.has_edge(v, w))));
        }
    }
}
