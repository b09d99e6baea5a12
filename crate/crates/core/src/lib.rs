//! Interventions that enlarge the set of proposals an electorate with
//! uncertain preferences decides correctly.

pub mod domain;
pub mod error;
pub mod exact;
pub mod ilp;
pub mod instance;
pub mod interventions;
pub mod radical;
pub mod reductions;
pub mod set;

pub use domain::{classify_domain, DomainClass};
pub use error::{Error, Result};
pub use exact::{cld_exact, dap_exact, eap_exact, Problem, SolveResult, Witness};
pub use ilp::{cld_fpt, dap_fpt, eap_fpt, export_lp, parse_lp, solve_ip, IntegerProgram, IpSolution};
pub use instance::{
    acceptable_count, correct_outcomes, is_safe, possible_outcomes, safe_zone, Belief, OutcomeSet, Stance, Tally,
    VotingInstance,
};
pub use interventions::{
    apply_delegations, educate, remove, resolve_gurus, willing, willingness_digraph, DelegationGraph,
};
pub use radical::{cld_radical, dap_radical, eap_radical};
pub use reductions::{
    gen_random, reduce_vc2pc_to_dap, reduce_vc2pc_to_eap, reduce_vccg_to_cld, to_2path_colored, Certificate,
    RandomParams, Reduction, TwoPathColoredGraph, UndirectedGraph,
};
pub use set::ProposalSet;
