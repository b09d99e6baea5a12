//! Instance sizes quoted for the generators, asserted as stated.

use safezone::reductions::parse_edge_list;
use safezone::{reduce_vc2pc_to_dap, TwoPathColoredGraph};

/// Expected to fail: the construction yields 33 agents and 10 proposals on
/// this input.
#[test]
fn dap_reduction_on_alternating_c4_has_25_agents_and_6_proposals() {
    let (g, parts) = parse_edge_list("0 1 1\n1 2 2\n2 3 1\n0 3 2\n").unwrap();
    let g2 = TwoPathColoredGraph::new(g, parts.unwrap()).unwrap();
    let r = reduce_vc2pc_to_dap(&g2, 2).unwrap();
    assert_eq!((r.instance.n(), r.instance.m()), (25, 6));
}
