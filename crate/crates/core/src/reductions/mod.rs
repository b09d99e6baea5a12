//! Instance generators: the vertex-cover reductions and random corpora.

mod cld;
mod dap;
mod eap;
mod graph;
mod random;
mod two_path;

pub use cld::reduce_vccg_to_cld;
pub use dap::reduce_vc2pc_to_dap;
pub use eap::reduce_vc2pc_to_eap;
pub use graph::{
    edge_color_with, four_edge_color, is_proper_coloring, parse_edge_list, vc_exact, write_edge_list, EdgeColor,
    UndirectedGraph,
};
pub use random::{gen_random, RandomParams};
pub use two_path::{to_2path_colored, TwoPathColoredGraph};

use serde::{Deserialize, Serialize};

use crate::instance::VotingInstance;

/// The source of a generated instance: the graph, the cover size it
/// encodes, and what the instance must achieve exactly when that cover
/// exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// `eap-reduction`, `dap-reduction` or `cld-reduction`.
    pub kind: String,
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parts: Option<Vec<u8>>,
    pub kappa: usize,
    /// Intervention budget of the produced instance, if it has one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
    /// Proposals that must end up correct.
    pub lambda: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub instance: VotingInstance,
    pub certificate: Certificate,
}

impl Reduction {
    pub fn budget(&self) -> Option<usize> {
        self.certificate.budget
    }

    pub fn lambda(&self) -> usize {
        self.certificate.lambda
    }
}

fn certificate_for(kind: &str, g2: &TwoPathColoredGraph, kappa: usize, budget: usize, lambda: usize) -> Certificate {
    Certificate {
        kind: kind.to_string(),
        vertices: g2.graph().vertex_count(),
        edges: g2.graph().edges().to_vec(),
        parts: Some(g2.parts().to_vec()),
        kappa,
        budget: Some(budget),
        lambda,
    }
}
