//! Type-based integer programs for the three intervention problems.
//!
//! Every program maximizes the number of non-tie proposals whose outcome is
//! guaranteed correct; tie proposals are always acceptable and come back as
//! a constant offset. For each counted proposal `q` there is a binary `z_q`
//! and a margin variable (`a_q` when the correct outcome is approval, `b_q`
//! when it is rejection) equal to certain-correct voters minus everybody
//! else, linked by
//!
//! ```text
//! (n + 1) z_q >= margin          margin - (n + 1) z_q >= -n
//! ```
//!
//! so that `z_q = 1` exactly when the margin is positive.

use std::collections::BTreeSet;

use super::program::{IntegerProgram, Sense};
use super::types::{type_census, AgentType, Alphabet, Symbol};
use crate::error::{Error, Result};
use crate::exact::{Problem, Witness};
use crate::instance::{OutcomeSet, VotingInstance};
use crate::interventions::DelegationGraph;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Decoder {
    /// Educate `members.len() - x` agents of each confused type.
    Educate(Vec<(Vec<usize>, usize)>),
    /// Remove `members.len() - x` agents of each type.
    Remove(Vec<(Vec<usize>, usize)>),
    Delegate(GuruLayout),
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct GuruLayout {
    n: usize,
    types: Vec<(AgentType, Vec<usize>)>,
    /// Type-level willingness arcs.
    succ: Vec<Vec<usize>>,
    /// Types reachable from each type through at least one arc.
    reach: Vec<BTreeSet<usize>>,
    /// `(t, u, x_{t,u})` in declaration order.
    blocks: Vec<(usize, usize, usize)>,
}

/// A built program together with what is needed to read a witness off an
/// assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formulation {
    pub problem: Problem,
    pub program: IntegerProgram,
    /// Tie proposals, acceptable whatever happens.
    pub offset: usize,
    /// `(proposal, z variable, margin variable)` for every non-tie proposal.
    pub indicators: Vec<(usize, usize, usize)>,
    decoder: Decoder,
}

struct Targets {
    /// Non-tie proposals with their correct side: true for approval.
    counted: Vec<(usize, bool)>,
    offset: usize,
}

fn targets(instance: &VotingInstance) -> Targets {
    let mut counted = Vec::new();
    let mut offset = 0;
    for (p, t) in instance.tallies().iter().enumerate() {
        match t.correct() {
            OutcomeSet::APPROVE => counted.push((p, true)),
            OutcomeSet::REJECT => counted.push((p, false)),
            _ => offset += 1,
        }
    }
    Targets { counted, offset }
}

/// +1 if a vote of this symbol is certain on the correct side, else -1.
fn sign(symbol: Symbol, approve: bool) -> i64 {
    match (symbol, approve) {
        (Symbol::PlusCertain, true) | (Symbol::MinusCertain, false) => 1,
        _ => -1,
    }
}

fn declare_indicators(ip: &mut IntegerProgram, targets: &Targets) -> Vec<usize> {
    targets
        .counted
        .iter()
        .map(|&(p, _)| {
            let z = ip.add_variable(format!("z_{p}"), 0, 1);
            ip.add_objective_term(z, 1);
            z
        })
        .collect()
}

/// Declares the margin variables and links them to the indicators.
/// `weights(p, approve)` lists the margin as `(variable, ±1)` terms.
fn link_margins(
    ip: &mut IntegerProgram,
    targets: &Targets,
    zs: &[usize],
    n: usize,
    weights: impl Fn(usize, bool) -> Vec<(usize, i64)>,
) -> Vec<(usize, usize, usize)> {
    let n = n as i64;
    let big = n + 1;
    let mut indicators = Vec::new();
    for (&(p, approve), &z) in targets.counted.iter().zip(zs) {
        let name = format!("{}_{p}", if approve { 'a' } else { 'b' });
        let margin = ip.add_variable(name.clone(), -n, n);
        let mut def = vec![(margin, 1)];
        def.extend(weights(p, approve).into_iter().map(|(v, w)| (v, -w)));
        ip.add_constraint(format!("def_{name}"), def, Sense::Eq, 0);
        ip.add_constraint(format!("on_{p}"), vec![(z, big), (margin, -1)], Sense::Ge, 0);
        ip.add_constraint(format!("off_{p}"), vec![(margin, 1), (z, -big)], Sense::Ge, -n);
        indicators.push((p, z, margin));
    }
    indicators
}

fn empty_formulation(problem: Problem, offset: usize, decoder: Decoder) -> Formulation {
    Formulation { problem, program: IntegerProgram::new(), offset, indicators: Vec::new(), decoder }
}

/// Removal program: `x_t` agents of type `t` stay.
pub fn build_dap_ip(instance: &VotingInstance, budget: usize) -> Formulation {
    let targets = targets(instance);
    if targets.counted.is_empty() {
        return empty_formulation(Problem::Dap, targets.offset, Decoder::Remove(Vec::new()));
    }
    let n = instance.n();
    let census: Vec<(AgentType, Vec<usize>)> = type_census(instance, Alphabet::Three).into_iter().collect();
    let mut ip = IntegerProgram::new();
    let zs = declare_indicators(&mut ip, &targets);
    let xs: Vec<usize> =
        census.iter().map(|(t, members)| ip.add_variable(format!("x_{t}"), 0, members.len() as i64)).collect();
    let all: Vec<(usize, i64)> = xs.iter().map(|&x| (x, 1)).collect();
    ip.add_constraint("budget", all.clone(), Sense::Ge, n as i64 - budget as i64);
    ip.add_constraint("nonempty", all, Sense::Ge, 1);
    let indicators = link_margins(&mut ip, &targets, &zs, n, |p, approve| {
        census.iter().zip(&xs).map(|((t, _), &x)| (x, sign(t.symbol(p), approve))).collect()
    });
    let blocks = census.into_iter().map(|(_, members)| members).zip(xs).collect();
    Formulation {
        problem: Problem::Dap,
        program: ip,
        offset: targets.offset,
        indicators,
        decoder: Decoder::Remove(blocks),
    }
}

/// Education program over four-letter types. Educating an agent of type `t`
/// turns it into `f(t)`, the type with every uncertain stance made certain;
/// `x_t` counts agents of type `t` afterwards.
pub fn build_eap_ip(instance: &VotingInstance, budget: usize) -> Formulation {
    let targets = targets(instance);
    if targets.counted.is_empty() {
        return empty_formulation(Problem::Eap, targets.offset, Decoder::Educate(Vec::new()));
    }
    let n = instance.n();
    let census = type_census(instance, Alphabet::Four);
    let images: BTreeSet<AgentType> = census.keys().map(AgentType::educated).collect();
    let mut types: BTreeSet<AgentType> = census.keys().cloned().collect();
    types.extend(images.iter().cloned());
    let types: Vec<AgentType> = types.into_iter().collect();
    let count = |t: &AgentType| census.get(t).map_or(0, Vec::len) as i64;
    let preimage_total = |image: &AgentType| -> i64 {
        census.iter().filter(|(s, _)| &s.educated() == image).map(|(_, m)| m.len() as i64).sum()
    };

    let mut ip = IntegerProgram::new();
    let zs = declare_indicators(&mut ip, &targets);
    let xs: Vec<usize> = types
        .iter()
        .map(|t| {
            let (lo, hi) = if images.contains(t) { (count(t), preimage_total(t)) } else { (0, count(t)) };
            ip.add_variable(format!("x_{t}"), lo, hi)
        })
        .collect();
    for image in &images {
        let terms: Vec<(usize, i64)> =
            types.iter().zip(&xs).filter(|(t, _)| &t.educated() == image).map(|(_, &x)| (x, 1)).collect();
        ip.add_constraint(format!("keep_{image}"), terms, Sense::Eq, preimage_total(image));
    }
    let (image_terms, image_count): (Vec<(usize, i64)>, i64) = types
        .iter()
        .zip(&xs)
        .filter(|(t, _)| images.contains(*t))
        .fold((Vec::new(), 0), |(mut terms, total), (t, &x)| {
            terms.push((x, 1));
            (terms, total + count(t))
        });
    ip.add_constraint("budget", image_terms, Sense::Le, budget as i64 + image_count);
    let indicators = link_margins(&mut ip, &targets, &zs, n, |p, approve| {
        types.iter().zip(&xs).map(|(t, &x)| (x, sign(t.symbol(p), approve))).collect()
    });
    let blocks = types.iter().zip(&xs).filter(|(t, _)| t.is_confused()).map(|(t, &x)| (census[t].clone(), x)).collect();
    Formulation {
        problem: Problem::Eap,
        program: ip,
        offset: targets.offset,
        indicators,
        decoder: Decoder::Educate(blocks),
    }
}

/// Guru-assignment program for delegation.
///
/// `x_{t,u}` counts agents of type `t` whose guru has type `u`, where `u` is
/// `t` itself or reachable from `t` in the type-level willingness digraph.
/// `r_{t,u}` flags a nonempty block, and a type-`t` agent may only have a
/// type-`u` guru if some willing successor type already routes to `u`.
pub fn build_cld_ip(instance: &VotingInstance) -> Formulation {
    let targets = targets(instance);
    let n = instance.n();
    let types: Vec<(AgentType, Vec<usize>)> = type_census(instance, Alphabet::Three).into_iter().collect();
    let succ: Vec<Vec<usize>> =
        types.iter().map(|(t, _)| (0..types.len()).filter(|&w| t.willing_to(&types[w].0)).collect()).collect();
    let reach: Vec<BTreeSet<usize>> = (0..types.len())
        .map(|t| {
            let mut seen = BTreeSet::new();
            let mut stack = succ[t].clone();
            while let Some(w) = stack.pop() {
                if seen.insert(w) {
                    stack.extend(&succ[w]);
                }
            }
            seen
        })
        .collect();
    let mut layout = GuruLayout { n, types, succ, reach, blocks: Vec::new() };
    if targets.counted.is_empty() {
        return empty_formulation(Problem::Cld, targets.offset, Decoder::Delegate(layout));
    }

    let mut ip = IntegerProgram::new();
    let zs = declare_indicators(&mut ip, &targets);
    let gurus = |t: usize| std::iter::once(t).chain(layout.reach[t].iter().copied()).collect::<BTreeSet<_>>();
    for t in 0..layout.types.len() {
        let y = layout.types[t].1.len() as i64;
        for u in gurus(t) {
            let name = format!("x_{}_{}", layout.types[t].0, layout.types[u].0);
            layout.blocks.push((t, u, ip.add_variable(name, 0, y)));
        }
    }
    let rs: Vec<usize> = layout
        .blocks
        .iter()
        .map(|&(t, u, _)| ip.add_variable(format!("r_{}_{}", layout.types[t].0, layout.types[u].0), 0, 1))
        .collect();
    let block_of = |t: usize, u: usize| layout.blocks.iter().position(|&(a, b, _)| a == t && b == u);
    for t in 0..layout.types.len() {
        let terms = layout.blocks.iter().filter(|b| b.0 == t).map(|b| (b.2, 1)).collect();
        ip.add_constraint(format!("assign_{}", layout.types[t].0), terms, Sense::Eq, layout.types[t].1.len() as i64);
    }
    for (k, &(t, u, x)) in layout.blocks.iter().enumerate() {
        let label = format!("{}_{}", layout.types[t].0, layout.types[u].0);
        ip.add_constraint(format!("used_{label}"), vec![(x, 1), (rs[k], -1)], Sense::Ge, 0);
        ip.add_constraint(format!("open_{label}"), vec![(x, 1), (rs[k], -(n as i64))], Sense::Le, 0);
        if t != u {
            let mut terms = vec![(rs[k], 1)];
            for &w in &layout.succ[t] {
                if w == u || layout.reach[w].contains(&u) {
                    terms.push((rs[block_of(w, u).expect("block declared")], -1));
                }
            }
            ip.add_constraint(format!("support_{label}"), terms, Sense::Le, 0);
        }
    }
    let indicators = link_margins(&mut ip, &targets, &zs, n, |p, approve| {
        layout.blocks.iter().map(|&(_, u, x)| (x, sign(layout.types[u].0.symbol(p), approve))).collect()
    });
    Formulation {
        problem: Problem::Cld,
        program: ip,
        offset: targets.offset,
        indicators,
        decoder: Decoder::Delegate(layout),
    }
}

impl Formulation {
    /// Forces every indicator to one, so the program is feasible exactly
    /// when all counted proposals can be secured together.
    pub fn require_all(&mut self) {
        for &(_, z, _) in &self.indicators {
            self.program.variables[z].lower = 1;
        }
    }

    /// Reads the intervention off a feasible assignment.
    pub fn decode(&self, assignment: &[i64]) -> Result<Witness> {
        let surplus = |blocks: &[(Vec<usize>, usize)]| -> Vec<usize> {
            let mut agents: Vec<usize> = blocks
                .iter()
                .flat_map(|(members, x)| {
                    let keep = assignment.get(*x).copied().unwrap_or(members.len() as i64);
                    members[..members.len() - keep as usize].iter().copied()
                })
                .collect();
            agents.sort_unstable();
            agents
        };
        Ok(match &self.decoder {
            Decoder::Educate(blocks) => Witness::Educate(surplus(blocks)),
            Decoder::Remove(blocks) => Witness::Remove(surplus(blocks)),
            Decoder::Delegate(layout) => Witness::Delegate(layout.realize(assignment)?),
        })
    }
}

impl GuruLayout {
    fn realize(&self, assignment: &[i64]) -> Result<DelegationGraph> {
        let mut targets = vec![None; self.n];
        if self.blocks.is_empty() {
            return Ok(DelegationGraph::from_trusted(targets));
        }
        // realized[t][u]: agents of type t already given a type-u guru.
        let k = self.types.len();
        let mut realized = vec![vec![Vec::new(); k]; k];
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&t| (std::cmp::Reverse(self.types[t].0.certainty()), t));
        for t in order {
            let mut members = self.types[t].1.iter().copied();
            for &(_, u, x) in self.blocks.iter().filter(|b| b.0 == t) {
                let size = assignment[x] as usize;
                let target = if u == t {
                    None
                } else {
                    let w = self.succ[t]
                        .iter()
                        .copied()
                        .find(|&w| (w == u || self.reach[w].contains(&u)) && !realized[w][u].is_empty());
                    match w {
                        Some(w) => Some(realized[w][u][0]),
                        None if size == 0 => None,
                        None => return Err(Error::Program(format!("no supporting block for a type-{u} guru"))),
                    }
                };
                for _ in 0..size {
                    let agent = members.next().ok_or_else(|| Error::Program("block sizes exceed type count".into()))?;
                    targets[agent] = target;
                    realized[t][u].push(agent);
                }
            }
        }
        let graph = DelegationGraph::from_trusted(targets);
        debug_assert!(graph.is_acyclic());
        Ok(graph)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ilp::program::solve_ip;
    use crate::instance::fixtures::example_one;
    use crate::instance::Belief;
    use crate::set::ProposalSet;

    fn optimum(f: &Formulation) -> usize {
        solve_ip(&f.program).unwrap().value().unwrap() as usize + f.offset
    }

    #[test]
    fn example_one_values() {
        let inst = example_one();
        assert_eq!(optimum(&build_dap_ip(&inst, 1)), 4);
        assert_eq!(optimum(&build_eap_ip(&inst, 1)), 5);
        assert_eq!(optimum(&build_eap_ip(&inst, 0)), 4);
        assert_eq!(optimum(&build_cld_ip(&inst)), 4);
    }

    #[test]
    fn all_ties_give_an_empty_program() {
        let m = 3;
        let inst = VotingInstance::new(
            m,
            vec![Belief::certain(ProposalSet::full(m), m), Belief::certain(ProposalSet::new(), m)],
        )
        .unwrap();
        for f in [build_dap_ip(&inst, 1), build_eap_ip(&inst, 1), build_cld_ip(&inst)] {
            assert!(f.program.variables.is_empty());
            assert_eq!(f.offset, 3);
            assert_eq!(optimum(&f), 3);
        }
    }

    #[test]
    fn decoded_witness_replays() {
        let inst = example_one();
        let f = build_eap_ip(&inst, 1);
        let crate::ilp::program::IpSolution::Optimal { assignment, .. } = solve_ip(&f.program).unwrap() else {
            panic!("feasible");
        };
        let w = f.decode(&assignment).unwrap();
        assert_eq!(w, Witness::Educate(vec![1]));
        assert_eq!(w.evaluate(&inst).unwrap(), 5);
    }

    #[test]
    fn type_level_chain_is_realized() {
        let inst = example_one();
        let f = build_cld_ip(&inst);
        // Send every agent to the most certain type: agent 0 through agent 1.
        let mut assignment = vec![0i64; f.program.variables.len()];
        let Decoder::Delegate(layout) = &f.decoder else { unreachable!() };
        let top = (0..3).max_by_key(|&t| layout.types[t].0.certainty()).unwrap();
        for &(_, u, x) in &layout.blocks {
            if u == top {
                assignment[x] = 1;
            }
        }
        let graph = layout.realize(&assignment).unwrap();
        assert_eq!(graph.targets(), &[Some(1), Some(2), None]);
    }
}
