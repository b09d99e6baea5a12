//! Polynomial-time solvers for the radical one-dimensional domain.
//!
//! With an odd electorate of radical agents the correct outcomes read
//! 0, ..., 0, 1, ..., 1 along the proposal order. Securing the last
//! rejected proposal `p_j` and the first approved proposal `p_k` one wants
//! to keep also secures everything before `p_j` and after `p_k`, so every
//! solver sweeps such pairs and checks each one separately. `None` stands in
//! for a side with nothing to protect.

use crate::domain::{classify_domain, DomainClass};
use crate::error::{Error, Result};
use crate::exact::{SolveResult, Witness};
use crate::ilp::{build_dap_ip, build_eap_ip, solve_ip, Formulation, IpSolution};
use crate::instance::{Belief, OutcomeSet, VotingInstance};
use crate::interventions::{willingness_digraph, DelegationGraph};

/// Correct outcome is rejection before `threshold` and approval from it on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorrectProfile {
    pub threshold: usize,
}

fn check_radical(instance: &VotingInstance) -> Result<()> {
    if instance.n().is_multiple_of(2) {
        return Err(Error::EvenElectorate(instance.n()));
    }
    if classify_domain(instance) != DomainClass::RadicalOneDimensional {
        return Err(Error::NotRadical);
    }
    Ok(())
}

fn outcomes(instance: &VotingInstance) -> Vec<OutcomeSet> {
    instance.tallies().iter().map(|t| t.correct()).collect()
}

pub fn correct_profile(instance: &VotingInstance) -> Result<CorrectProfile> {
    check_radical(instance)?;
    let correct = outcomes(instance);
    let threshold = correct.iter().position(|&c| c == OutcomeSet::APPROVE).unwrap_or(correct.len());
    assert!(
        correct[..threshold].iter().all(|&c| c == OutcomeSet::REJECT)
            && correct[threshold..].iter().all(|&c| c == OutcomeSet::APPROVE),
        "correct outcomes of a radical instance must switch from 0 to 1 once: {correct:?}"
    );
    Ok(CorrectProfile { threshold })
}

/// The unsafe proposals as an inclusive range, or `None` when every
/// proposal is safe.
pub fn unsafe_interval(instance: &VotingInstance) -> Result<Option<(usize, usize)>> {
    check_radical(instance)?;
    let safe = crate::instance::safe_zone(instance);
    let unsafe_set = safe.complement(instance.m());
    assert!(unsafe_set.is_interval(), "unsafe proposals of a radical instance must be contiguous");
    Ok(unsafe_set.first().zip(unsafe_set.last()))
}

/// Number of proposals left outside the open gap between the pair.
fn pair_value(m: usize, j: Option<usize>, k: Option<usize>) -> usize {
    let j = j.map_or(-1, |j| j as isize);
    let k = k.map_or(m as isize, |k| k as isize);
    (m as isize - (k - j - 1)) as usize
}

/// Evaluates `secure` over every candidate pair and keeps the first pair of
/// maximal value in (j, k) order.
fn sweep(
    instance: &VotingInstance,
    mut secure: impl FnMut(Option<usize>, Option<usize>) -> Result<Option<Witness>>,
) -> Result<SolveResult> {
    let m = instance.m();
    let tau = correct_profile(instance)?.threshold;
    let lefts = std::iter::once(None).chain((0..tau).map(Some));
    let mut best: Option<(usize, Witness)> = None;
    for j in lefts {
        for k in (tau..m).map(Some).chain(std::iter::once(None)) {
            let value = pair_value(m, j, k);
            if best.as_ref().is_some_and(|(b, _)| value <= *b) {
                continue;
            }
            if let Some(witness) = secure(j, k)? {
                best = Some((value, witness));
            }
        }
    }
    let (best_value, witness) = best.expect("the pair of two sentinels is always secured");
    let replayed = witness.evaluate(instance)?;
    if replayed != best_value {
        return Err(Error::Program(format!("pair witness achieves {replayed}, sweep claims {best_value}")));
    }
    Ok(SolveResult { best_value, witness })
}

/// The instance restricted to the real proposals among `j` and `k`.
fn projected(instance: &VotingInstance, positions: &[usize]) -> VotingInstance {
    let beliefs = instance
        .beliefs()
        .iter()
        .map(|b| Belief::new(b.plus().project(positions), b.known().project(positions)))
        .collect();
    VotingInstance::new(positions.len(), beliefs).expect("projection keeps a valid instance")
}

fn secure_by_program(
    instance: &VotingInstance,
    j: Option<usize>,
    k: Option<usize>,
    build: impl Fn(&VotingInstance) -> Formulation,
    nothing: Witness,
) -> Result<Option<Witness>> {
    let positions: Vec<usize> = j.into_iter().chain(k).collect();
    if positions.is_empty() {
        return Ok(Some(nothing));
    }
    let mut formulation = build(&projected(instance, &positions));
    formulation.require_all();
    match solve_ip(&formulation.program)? {
        IpSolution::Optimal { assignment, .. } => Ok(Some(formulation.decode(&assignment)?)),
        IpSolution::Infeasible => Ok(None),
    }
}

pub fn eap_radical(instance: &VotingInstance, budget: usize) -> Result<SolveResult> {
    sweep(instance, |j, k| secure_by_program(instance, j, k, |i| build_eap_ip(i, budget), Witness::Educate(Vec::new())))
}

/// Thresholds after removal are taken over the remaining agents, as in the
/// general removal problem.
pub fn dap_radical(instance: &VotingInstance, budget: usize) -> Result<SolveResult> {
    sweep(instance, |j, k| secure_by_program(instance, j, k, |i| build_dap_ip(i, budget), Witness::Remove(Vec::new())))
}

/// Agents grouped by which of the pair they are certain-correct on.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PairPartition {
    pub both: Vec<usize>,
    pub first_only: Vec<usize>,
    pub second_only: Vec<usize>,
    pub neither: Vec<usize>,
}

fn correct_on(belief: &Belief, p: Option<usize>, approve: bool) -> bool {
    match p {
        None => true,
        Some(p) if approve => belief.plus_known().contains(p),
        Some(p) => belief.minus_known().contains(p),
    }
}

fn check_pair(instance: &VotingInstance, j: Option<usize>, k: Option<usize>) -> Result<()> {
    check_radical(instance)?;
    let correct = outcomes(instance);
    for (p, want) in [(j, OutcomeSet::REJECT), (k, OutcomeSet::APPROVE)] {
        if let Some(p) = p {
            instance.check_proposal(p)?;
            if correct[p] != want {
                return Err(Error::InvalidParameters(format!("proposal {p} has correct outcome {}", correct[p])));
            }
        }
    }
    Ok(())
}

pub fn pair_partition(instance: &VotingInstance, j: Option<usize>, k: Option<usize>) -> Result<PairPartition> {
    check_pair(instance, j, k)?;
    let mut part = PairPartition::default();
    for (i, b) in instance.beliefs().iter().enumerate() {
        let group = match (correct_on(b, j, false), correct_on(b, k, true)) {
            (true, true) => &mut part.both,
            (true, false) => &mut part.first_only,
            (false, true) => &mut part.second_only,
            (false, false) => &mut part.neither,
        };
        group.push(i);
    }
    Ok(part)
}

/// Delegation targets securing both proposals of the pair, if any exist.
fn pair_plan(instance: &VotingInstance, j: Option<usize>, k: Option<usize>) -> Result<Option<Vec<Option<usize>>>> {
    let part = pair_partition(instance, j, k)?;
    if part.both.is_empty() {
        return Ok(None);
    }
    let n = instance.n();
    let adjacency = willingness_digraph(instance);
    let mut in_both = vec![false; n];
    for &i in &part.both {
        in_both[i] = true;
    }
    let mut targets = vec![None; n];
    // Anyone willing to follow an agent already correct on both joins them.
    loop {
        let mut changed = false;
        for i in 0..n {
            if in_both[i] {
                continue;
            }
            if let Some(&t) = adjacency[i].iter().find(|&&t| in_both[t]) {
                in_both[i] = true;
                targets[i] = Some(t);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let beliefs = instance.beliefs();
    let rest = |first: bool, second: bool| -> Vec<usize> {
        (0..n)
            .filter(|&i| !in_both[i])
            .filter(|&i| correct_on(&beliefs[i], j, false) == first && correct_on(&beliefs[i], k, true) == second)
            .collect()
    };
    let both = in_both.iter().filter(|&&b| b).count();
    let first_only = rest(true, false);
    let second_only = rest(false, true);
    assert!(rest(false, false).is_empty(), "agents correct on neither proposal must join the closure");

    if 2 * (both + first_only.len()) > n && 2 * (both + second_only.len()) > n {
        return Ok(Some(targets));
    }
    let (short, long) =
        if first_only.len() <= second_only.len() { (&first_only, &second_only) } else { (&second_only, &first_only) };
    let needed = n.div_ceil(2) - both - short.len();
    // Breadth-first over reversed arcs from the short side, staying inside
    // the long side.
    let mut parent = vec![None; n];
    let mut marked = Vec::new();
    let mut queue: std::collections::VecDeque<usize> = short.iter().copied().collect();
    while let Some(v) = queue.pop_front() {
        for &c in long {
            if parent[c].is_none() && adjacency[c].binary_search(&v).is_ok() {
                parent[c] = Some(v);
                marked.push(c);
                queue.push_back(c);
            }
        }
    }
    if marked.len() < needed {
        return Ok(None);
    }
    for &c in &marked[..needed] {
        targets[c] = parent[c];
    }
    Ok(Some(targets))
}

/// Whether some consistent delegation graph guarantees correct outcomes on
/// both proposals of the pair.
pub fn cld_pair_feasible(instance: &VotingInstance, j: Option<usize>, k: Option<usize>) -> Result<bool> {
    Ok(pair_plan(instance, j, k)?.is_some())
}

pub fn cld_radical(instance: &VotingInstance) -> Result<SolveResult> {
    sweep(instance, |j, k| {
        Ok(pair_plan(instance, j, k)?.map(|targets| {
            let graph = DelegationGraph::from_trusted(targets);
            debug_assert!(graph.is_acyclic());
            Witness::Delegate(graph)
        }))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::RadicalProfile;
    use crate::exact::{cld_exact, dap_exact, eap_exact};
    use crate::set::ProposalSet;

    fn radical(m: usize, profiles: &[(usize, usize, usize)]) -> VotingInstance {
        let beliefs = profiles.iter().map(|&(cut, lo, hi)| RadicalProfile { cut, lo, hi }.belief(m)).collect();
        VotingInstance::new(m, beliefs).unwrap()
    }

    #[test]
    fn profile_extremes() {
        let m = 4;
        let all = VotingInstance::new(m, vec![Belief::certain(ProposalSet::full(m), m); 3]).unwrap();
        assert_eq!(correct_profile(&all).unwrap().threshold, 0);
        let none = VotingInstance::new(m, vec![Belief::certain(ProposalSet::new(), m); 3]).unwrap();
        assert_eq!(correct_profile(&none).unwrap().threshold, 4);
        assert_eq!(unsafe_interval(&none).unwrap(), None);
    }

    #[test]
    fn rejects_even_and_general() {
        let m = 3;
        let even = VotingInstance::new(m, vec![Belief::certain(ProposalSet::full(m), m); 2]).unwrap();
        assert_eq!(correct_profile(&even), Err(Error::EvenElectorate(2)));
        let general = VotingInstance::new(m, vec![Belief::certain(ProposalSet::from([1]), m)]).unwrap();
        assert_eq!(eap_radical(&general, 1), Err(Error::NotRadical));
    }

    #[test]
    fn lone_agent_with_full_doubt() {
        let inst = radical(4, &[(2, 0, 4)]);
        assert_eq!(unsafe_interval(&inst).unwrap(), Some((0, 3)));
        assert_eq!(eap_radical(&inst, 1).unwrap().best_value, 4);
        assert_eq!(eap_radical(&inst, 0).unwrap().best_value, 0);
    }

    #[test]
    fn centrist_flips_one_proposal() {
        // Two committed agents split the electorate; the third is unsure
        // about proposal 2 only.
        let inst = radical(5, &[(1, 1, 1), (4, 4, 4), (3, 2, 3)]);
        assert_eq!(correct_profile(&inst).unwrap().threshold, 3);
        assert_eq!(unsafe_interval(&inst).unwrap(), Some((2, 2)));
        let e = eap_radical(&inst, 1).unwrap();
        assert_eq!(e.best_value, 5);
        assert_eq!(e.witness, Witness::Educate(vec![2]));
        assert_eq!(eap_radical(&inst, 1).unwrap().best_value, eap_exact(&inst, 1).best_value);
        assert_eq!(dap_radical(&inst, 1).unwrap().best_value, dap_exact(&inst, 1).best_value);
        assert_eq!(cld_radical(&inst).unwrap().best_value, cld_exact(&inst).best_value);
    }

    #[test]
    fn pair_cases() {
        // Three certain agents agreeing on everything.
        let inst = radical(3, &[(1, 1, 1), (1, 1, 1), (2, 2, 2)]);
        assert!(cld_pair_feasible(&inst, Some(0), Some(2)).unwrap());
        // Nobody is certain about both proposal 0 and proposal 1.
        let doubt = radical(2, &[(1, 0, 2), (1, 0, 2), (1, 0, 2)]);
        assert!(pair_partition(&doubt, Some(0), Some(1)).unwrap().both.is_empty());
        assert!(!cld_pair_feasible(&doubt, Some(0), Some(1)).unwrap());
        assert!(cld_pair_feasible(&doubt, None, None).unwrap());
        assert!(cld_pair_feasible(&doubt, Some(1), None).is_err());
    }
}
