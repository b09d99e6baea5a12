//! Education, removal and delegation of agents.

use crate::error::{Error, Result};
use crate::instance::{Belief, VotingInstance};

fn sorted_agents(instance: &VotingInstance, agents: &[usize]) -> Result<Vec<usize>> {
    for &i in agents {
        instance.check_agent(i)?;
    }
    let mut sorted = agents.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    Ok(sorted)
}

/// Removes every uncertainty of the listed agents.
pub fn educate(instance: &VotingInstance, agents: &[usize]) -> Result<VotingInstance> {
    let agents = sorted_agents(instance, agents)?;
    let m = instance.m();
    let beliefs = instance
        .beliefs()
        .iter()
        .enumerate()
        .map(|(i, b)| if agents.binary_search(&i).is_ok() { b.educated(m) } else { b.clone() })
        .collect();
    Ok(instance.with_beliefs(beliefs))
}

/// Drops the listed agents, keeping the survivors in their original order.
pub fn remove(instance: &VotingInstance, agents: &[usize]) -> Result<VotingInstance> {
    let agents = sorted_agents(instance, agents)?;
    if agents.len() == instance.n() {
        return Err(Error::RemovesEveryone(agents));
    }
    let beliefs = instance
        .beliefs()
        .iter()
        .enumerate()
        .filter(|(i, _)| agents.binary_search(i).is_err())
        .map(|(_, b)| b.clone())
        .collect();
    Ok(instance.with_beliefs(beliefs))
}

/// Whether agent `from` would delegate to agent `to`: they never disagree
/// where both are certain, and `to` is certain about strictly more proposals.
pub fn willing(instance: &VotingInstance, from: usize, to: usize) -> Result<bool> {
    instance.check_agent(from)?;
    instance.check_agent(to)?;
    if from == to {
        return Err(Error::SelfDelegation(from));
    }
    Ok(beliefs_willing(instance.belief(from), instance.belief(to)))
}

pub(crate) fn beliefs_willing(from: &Belief, to: &Belief) -> bool {
    from.known().len() < to.known().len()
        && from.plus_known().is_disjoint(&to.minus_known())
        && from.minus_known().is_disjoint(&to.plus_known())
}

/// `adjacency[i]` lists, in increasing order, every agent `i` is willing to
/// delegate to.
pub fn willingness_digraph(instance: &VotingInstance) -> Vec<Vec<usize>> {
    let beliefs = instance.beliefs();
    let certain: Vec<_> = beliefs.iter().map(|b| (b.known().len(), b.plus_known(), b.minus_known())).collect();
    certain
        .iter()
        .map(|(size, plus, minus)| {
            certain
                .iter()
                .enumerate()
                .filter(|(_, (to_size, to_plus, to_minus))| {
                    size < to_size && plus.is_disjoint(to_minus) && minus.is_disjoint(to_plus)
                })
                .map(|(j, _)| j)
                .collect()
        })
        .collect()
}

/// A consistent delegation graph: every agent has at most one target and
/// every arc respects willingness.
///
/// Acyclicity follows because certain-set sizes strictly increase along arcs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DelegationGraph {
    targets: Vec<Option<usize>>,
}

impl DelegationGraph {
    /// Graph with no arcs over `n` agents.
    pub fn empty(n: usize) -> Self {
        Self { targets: vec![None; n] }
    }

    pub fn new(instance: &VotingInstance, targets: Vec<Option<usize>>) -> Result<Self> {
        if targets.len() != instance.n() {
            return Err(Error::GraphSizeMismatch { graph: targets.len(), instance: instance.n() });
        }
        for (from, to) in targets.iter().enumerate() {
            if let Some(to) = *to {
                if !willing(instance, from, to)? {
                    return Err(Error::UnwillingArc { from, to });
                }
            }
        }
        let graph = Self { targets };
        debug_assert!(graph.is_acyclic());
        Ok(graph)
    }

    /// Skips validation; callers guarantee every arc is willing.
    pub(crate) fn from_trusted(targets: Vec<Option<usize>>) -> Self {
        Self { targets }
    }

    pub fn from_arcs(instance: &VotingInstance, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut targets = vec![None; instance.n()];
        for &(from, to) in arcs {
            instance.check_agent(from)?;
            targets[from] = Some(to);
        }
        Self::new(instance, targets)
    }

    pub fn targets(&self) -> &[Option<usize>] {
        &self.targets
    }

    pub fn target(&self, agent: usize) -> Option<usize> {
        self.targets[agent]
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.targets.iter().enumerate().filter_map(|(i, t)| t.map(|j| (i, j)))
    }

    pub fn arc_count(&self) -> usize {
        self.targets.iter().flatten().count()
    }

    /// Checks that following targets from every agent terminates.
    pub fn is_acyclic(&self) -> bool {
        // 0 = unvisited, 1 = on the current path, 2 = done.
        let mut state = vec![0u8; self.targets.len()];
        for start in 0..self.targets.len() {
            let mut path = Vec::new();
            let mut cur = Some(start);
            while let Some(i) = cur {
                match state[i] {
                    2 => break,
                    1 => return false,
                    _ => {
                        state[i] = 1;
                        path.push(i);
                        cur = self.targets[i];
                    }
                }
            }
            for i in path {
                state[i] = 2;
            }
        }
        true
    }
}

/// Guru of every agent: the sink reached by following its delegations.
pub fn resolve_gurus(graph: &DelegationGraph) -> Vec<usize> {
    let n = graph.len();
    let mut guru: Vec<Option<usize>> = vec![None; n];
    for start in 0..n {
        let mut path = Vec::new();
        let mut cur = start;
        let sink = loop {
            if let Some(g) = guru[cur] {
                break g;
            }
            match graph.target(cur) {
                Some(next) => {
                    path.push(cur);
                    cur = next;
                }
                None => {
                    guru[cur] = Some(cur);
                    break cur;
                }
            }
        };
        for i in path {
            guru[i] = Some(sink);
        }
    }
    guru.into_iter().map(|g| g.expect("every agent resolved")).collect()
}

/// The instance in which every agent casts its guru's ballot.
pub fn apply_delegations(instance: &VotingInstance, graph: &DelegationGraph) -> Result<VotingInstance> {
    if graph.len() != instance.n() {
        return Err(Error::GraphSizeMismatch { graph: graph.len(), instance: instance.n() });
    }
    let beliefs = resolve_gurus(graph).into_iter().map(|g| instance.belief(g).clone()).collect();
    Ok(instance.with_beliefs(beliefs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::fixtures::example_one;
    use crate::instance::{acceptable_count, safe_zone};
    use crate::set::ProposalSet;

    #[test]
    fn educating_agent_two_secures_everything() {
        let inst = example_one();
        let educated = educate(&inst, &[1]).unwrap();
        assert_eq!(safe_zone(&educated), ProposalSet::full(5));
        assert_eq!(educate(&inst, &[]).unwrap(), inst);
        assert_eq!(safe_zone(&educate(&inst, &[0, 1, 2]).unwrap()), ProposalSet::full(5));
        assert!(matches!(educate(&inst, &[3]), Err(Error::AgentOutOfRange { .. })));
    }

    #[test]
    fn removal() {
        let inst = example_one();
        let residual = remove(&inst, &[1, 2]).unwrap();
        assert_eq!(residual.n(), 1);
        assert_eq!(residual.belief(0), inst.belief(0));
        assert_eq!(acceptable_count(&inst, &residual).unwrap(), 3);
        assert_eq!(remove(&inst, &[]).unwrap(), inst);
        assert!(matches!(remove(&inst, &[0, 1, 2]), Err(Error::RemovesEveryone(_))));
    }

    #[test]
    fn example_willingness() {
        let inst = example_one();
        assert!(willing(&inst, 0, 1).unwrap());
        assert!(willing(&inst, 1, 2).unwrap());
        assert!(!willing(&inst, 0, 2).unwrap());
        assert_eq!(willing(&inst, 1, 1), Err(Error::SelfDelegation(1)));
        assert_eq!(willingness_digraph(&inst), vec![vec![1], vec![2], vec![]]);
    }

    #[test]
    fn identical_agents_never_delegate() {
        let m = 3;
        let b = Belief::with_unknown(ProposalSet::from([1]), &ProposalSet::from([0]), m);
        let inst = VotingInstance::new(m, vec![b.clone(), b]).unwrap();
        assert!(!willing(&inst, 0, 1).unwrap());
    }

    #[test]
    fn chain_gurus() {
        let inst = example_one();
        let graph = DelegationGraph::from_arcs(&inst, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(resolve_gurus(&graph), vec![2, 2, 2]);
        let delegated = apply_delegations(&inst, &graph).unwrap();
        assert!(delegated.beliefs().iter().all(|b| b == inst.belief(2)));
        assert_eq!(acceptable_count(&inst, &delegated).unwrap(), 4);
        assert_eq!(resolve_gurus(&DelegationGraph::empty(3)), vec![0, 1, 2]);
        assert!(matches!(DelegationGraph::from_arcs(&inst, &[(0, 2)]), Err(Error::UnwillingArc { from: 0, to: 2 })));
    }

    #[test]
    fn cycle_detection() {
        assert!(!DelegationGraph::from_trusted(vec![Some(1), Some(0)]).is_acyclic());
        assert!(DelegationGraph::from_trusted(vec![Some(1), None, Some(1)]).is_acyclic());
    }
}
