use safezone::reductions::{parse_edge_list, vc_exact};
use safezone::{
    cld_exact, dap_exact, dap_fpt, eap_exact, eap_fpt, reduce_vc2pc_to_dap, reduce_vc2pc_to_eap, reduce_vccg_to_cld,
    TwoPathColoredGraph, UndirectedGraph,
};

fn alternating_c4() -> TwoPathColoredGraph {
    let (g, parts) = parse_edge_list("0 1 1\n1 2 2\n2 3 1\n0 3 2\n").unwrap();
    TwoPathColoredGraph::new(g, parts.unwrap()).unwrap()
}

fn k4() -> UndirectedGraph {
    UndirectedGraph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
}

/// Two triangles joined by a perfect matching; minimum cover 4.
fn prism() -> UndirectedGraph {
    UndirectedGraph::new(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]).unwrap()
}

#[test]
fn eap_reduction_tracks_vertex_cover() {
    let g2 = alternating_c4();
    for kappa in 0..=3 {
        let r = reduce_vc2pc_to_eap(&g2, kappa);
        let m = r.instance.m();
        let exact = eap_exact(&r.instance, kappa).best_value == m;
        let program = eap_fpt(&r.instance, kappa).unwrap().best_value == m;
        assert_eq!(exact, vc_exact(g2.graph(), kappa), "kappa {kappa}");
        assert_eq!(program, exact, "kappa {kappa}");
    }
}

#[test]
fn eap_reduction_on_hexagon() {
    let (g, _) = parse_edge_list("0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n").unwrap();
    let g2 = TwoPathColoredGraph::new(g, vec![1, 2, 1, 2, 1, 2]).unwrap();
    for kappa in 2..=3 {
        let r = reduce_vc2pc_to_eap(&g2, kappa);
        let all = eap_fpt(&r.instance, kappa).unwrap().best_value == r.instance.m();
        assert_eq!(all, vc_exact(g2.graph(), kappa), "kappa {kappa}");
        assert_eq!(all, eap_exact(&r.instance, kappa).best_value == r.instance.m());
    }
}

#[test]
fn dap_reduction_tracks_vertex_cover() {
    let g2 = alternating_c4();
    for kappa in 1..=2 {
        let r = reduce_vc2pc_to_dap(&g2, kappa).unwrap();
        let budget = r.budget().unwrap();
        let m = r.instance.m();
        let all = dap_fpt(&r.instance, budget).unwrap().best_value == m;
        assert_eq!(all, vc_exact(g2.graph(), kappa), "kappa {kappa}");
    }
    // A smaller removal budget cannot do better than 4 kappa.
    let r = reduce_vc2pc_to_dap(&g2, 2).unwrap();
    assert!(dap_exact(&r.instance, 4).best_value < r.instance.m());
}

#[test]
fn cld_reduction_tracks_vertex_cover() {
    for (graph, cover) in [(k4(), 3), (prism(), 4)] {
        for kappa in [cover - 1, cover] {
            let r = reduce_vccg_to_cld(&graph, kappa).unwrap();
            let best = cld_exact(&r.instance);
            let all = best.best_value == r.instance.m();
            assert_eq!(all, vc_exact(&graph, kappa), "kappa {kappa}");
            assert_eq!(best.witness.evaluate(&r.instance).unwrap(), best.best_value);
        }
    }
}
