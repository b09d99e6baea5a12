//! Integer programs over agent types, and the solvers built on them.

mod formulations;
mod lp_format;
mod program;
mod types;

pub use formulations::{build_cld_ip, build_dap_ip, build_eap_ip, Formulation};
pub use lp_format::{export_lp, export_lp_annotated, parse_lp};
pub use program::{solve_ip, Constraint, IntegerProgram, IpSolution, Sense, Variable};
pub use types::{type_census, AgentType, Alphabet, Symbol, TypeCensus};

use crate::error::{Error, Result};
use crate::exact::SolveResult;
use crate::instance::VotingInstance;

/// Solves a built formulation and checks that the decoded witness achieves
/// the optimum on the instance.
pub fn solve_formulation(instance: &VotingInstance, formulation: &Formulation) -> Result<SolveResult> {
    let IpSolution::Optimal { value, assignment } = solve_ip(&formulation.program)? else {
        return Err(Error::Program(format!("{} program is infeasible", formulation.problem)));
    };
    let best_value = value as usize + formulation.offset;
    let witness = formulation.decode(&assignment)?;
    let replayed = witness.evaluate(instance)?;
    if replayed != best_value {
        return Err(Error::Program(format!("witness achieves {replayed}, program claims {best_value}")));
    }
    Ok(SolveResult { best_value, witness })
}

pub fn eap_fpt(instance: &VotingInstance, budget: usize) -> Result<SolveResult> {
    solve_formulation(instance, &build_eap_ip(instance, budget))
}

pub fn dap_fpt(instance: &VotingInstance, budget: usize) -> Result<SolveResult> {
    solve_formulation(instance, &build_dap_ip(instance, budget))
}

pub fn cld_fpt(instance: &VotingInstance) -> Result<SolveResult> {
    solve_formulation(instance, &build_cld_ip(instance))
}
