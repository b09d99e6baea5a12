//! Exhaustive solvers over agent subsets and delegation graphs.
//!
//! These are exponential in the number of agents and serve as the reference
//! every other solver is checked against.

use std::fmt;

use crate::error::Result;
use crate::instance::{acceptable_count, guaranteed, OutcomeSet, Stance, VotingInstance};
use crate::interventions::{apply_delegations, educate, remove, willingness_digraph, DelegationGraph};

/// The three intervention problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Problem {
    /// Educate at most a budget of agents.
    Eap,
    /// Remove at most a budget of agents.
    Dap,
    /// Pick a consistent delegation graph.
    Cld,
}

impl Problem {
    pub fn name(self) -> &'static str {
        match self {
            Problem::Eap => "eap",
            Problem::Dap => "dap",
            Problem::Cld => "cld",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The intervention that realizes a solver's value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Educate(Vec<usize>),
    Remove(Vec<usize>),
    Delegate(DelegationGraph),
}

impl Witness {
    /// Replays the intervention and counts the proposals guaranteed correct.
    pub fn evaluate(&self, instance: &VotingInstance) -> Result<usize> {
        let modified = match self {
            Witness::Educate(agents) => educate(instance, agents)?,
            Witness::Remove(agents) => remove(instance, agents)?,
            Witness::Delegate(graph) => apply_delegations(instance, graph)?,
        };
        acceptable_count(instance, &modified)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub best_value: usize,
    pub witness: Witness,
}

/// Per-proposal counters of certain supporters and opponents in a modified
/// electorate, scored against the correct outcomes of the original one.
struct Scoreboard {
    correct: Vec<OutcomeSet>,
    plus_known: Vec<usize>,
    minus_known: Vec<usize>,
    n: usize,
}

impl Scoreboard {
    fn new(instance: &VotingInstance) -> Self {
        let tallies = instance.tallies();
        Self {
            correct: tallies.iter().map(|t| t.correct()).collect(),
            plus_known: tallies.iter().map(|t| t.plus_known).collect(),
            minus_known: tallies.iter().map(|t| t.minus_known).collect(),
            n: instance.n(),
        }
    }

    fn empty(instance: &VotingInstance) -> Self {
        let mut board = Self::new(instance);
        board.plus_known.fill(0);
        board.minus_known.fill(0);
        board.n = instance.n();
        board
    }

    fn value(&self) -> usize {
        (0..self.correct.len())
            .filter(|&p| guaranteed(self.correct[p], self.plus_known[p], self.minus_known[p], self.n))
            .count()
    }

    fn shift(&mut self, stances: &[Stance], sign: isize) {
        for (p, s) in stances.iter().enumerate() {
            let slot = match s {
                Stance::PlusKnown => &mut self.plus_known[p],
                Stance::MinusKnown => &mut self.minus_known[p],
                _ => continue,
            };
            *slot = slot.checked_add_signed(sign).expect("counter stays nonnegative");
        }
    }
}

fn stance_table(instance: &VotingInstance) -> Vec<Vec<Stance>> {
    let m = instance.m();
    instance.beliefs().iter().map(|b| (0..m).map(|p| b.stance(p)).collect()).collect()
}

/// Best education of at most `budget` agents.
///
/// Only agents with some uncertainty are enumerated. Subsets are visited in
/// lexicographic order and replaced only on strict improvement, so the
/// witness is the lexicographically smallest optimum.
pub fn eap_exact(instance: &VotingInstance, budget: usize) -> SolveResult {
    let m = instance.m();
    let confused: Vec<usize> = (0..instance.n()).filter(|&i| instance.belief(i).is_confused(m)).collect();
    // Stance change caused by educating each confused agent.
    let gains: Vec<Vec<Stance>> = confused
        .iter()
        .map(|&i| {
            let b = instance.belief(i);
            (0..m)
                .map(|p| match b.stance(p) {
                    Stance::PlusUnknown => Stance::PlusKnown,
                    Stance::MinusUnknown => Stance::MinusKnown,
                    // Unchanged positions are masked out of the shift.
                    _ => Stance::PlusUnknown,
                })
                .collect()
        })
        .collect();
    let mut board = Scoreboard::new(instance);
    let mut search = SubsetSearch::new(m, board.value());
    search.run(&mut board, &gains, &confused, budget, 0);
    SolveResult { best_value: search.best_value, witness: Witness::Educate(search.best) }
}

/// Best removal of at most `budget` agents, never removing everyone.
pub fn dap_exact(instance: &VotingInstance, budget: usize) -> SolveResult {
    let n = instance.n();
    let agents: Vec<usize> = (0..n).collect();
    let table = stance_table(instance);
    let mut board = Scoreboard::new(instance);
    let mut search = SubsetSearch::new(instance.m(), board.value());
    search.removing = true;
    search.run(&mut board, &table, &agents, budget.min(n - 1), 0);
    SolveResult { best_value: search.best_value, witness: Witness::Remove(search.best) }
}

struct SubsetSearch {
    m: usize,
    removing: bool,
    chosen: Vec<usize>,
    best: Vec<usize>,
    best_value: usize,
}

impl SubsetSearch {
    fn new(m: usize, initial: usize) -> Self {
        Self { m, removing: false, chosen: Vec::new(), best: Vec::new(), best_value: initial }
    }

    /// Pre-order walk over subsets of `items[start..]`; `deltas[k]` holds the
    /// stances toggled when `items[k]` joins the subset.
    fn run(&mut self, board: &mut Scoreboard, deltas: &[Vec<Stance>], items: &[usize], budget: usize, start: usize) {
        if self.chosen.len() == budget {
            return;
        }
        for k in start..items.len() {
            if self.best_value == self.m {
                return;
            }
            let sign = if self.removing { -1 } else { 1 };
            board.shift(&deltas[k], sign);
            if self.removing {
                board.n -= 1;
            }
            self.chosen.push(items[k]);
            let value = board.value();
            if value > self.best_value {
                self.best_value = value;
                self.best = self.chosen.clone();
            }
            self.run(board, deltas, items, budget, k + 1);
            self.chosen.pop();
            if self.removing {
                board.n += 1;
            }
            board.shift(&deltas[k], -sign);
        }
    }
}

/// Best consistent delegation graph.
///
/// Agents that may delegate are branched on in decreasing order of their
/// certain-set size, so every target's guru is already fixed when an agent
/// picks it. A subtree is cut when even the most favourable guru for each
/// remaining agent cannot beat the incumbent. Ties keep the graph whose
/// target vector (in agent order, no-target first) is lexicographically
/// smallest.
pub fn cld_exact(instance: &VotingInstance) -> SolveResult {
    let n = instance.n();
    let m = instance.m();
    let adjacency = willingness_digraph(instance);
    let table = stance_table(instance);

    let mut choosers: Vec<usize> = (0..n).filter(|&i| !adjacency[i].is_empty()).collect();
    choosers.sort_by_key(|&i| (std::cmp::Reverse(instance.belief(i).known().len()), i));

    let mut board = Scoreboard::empty(instance);
    for i in (0..n).filter(|&i| adjacency[i].is_empty()) {
        board.shift(&table[i], 1);
    }

    // optimistic[k][p]: choosers at positions >= k that can reach some agent
    // certain of the correct side of p.
    let reach = reachability(&adjacency);
    let mut optimistic = vec![vec![0usize; m]; choosers.len() + 1];
    for k in (0..choosers.len()).rev() {
        let i = choosers[k];
        for p in 0..m {
            let correct = board.correct[p];
            let can = reach[i].iter().any(|&j| match table[j][p] {
                Stance::PlusKnown => correct == OutcomeSet::APPROVE,
                Stance::MinusKnown => correct == OutcomeSet::REJECT,
                _ => false,
            });
            optimistic[k][p] = optimistic[k + 1][p] + usize::from(can);
        }
    }

    let mut search = GraphSearch {
        adjacency: &adjacency,
        table: &table,
        choosers: &choosers,
        optimistic: &optimistic,
        guru: (0..n).collect(),
        targets: vec![None; n],
        best_targets: vec![None; n],
        best_value: 0,
        found: false,
    };
    search.run(&mut board, 0);
    let graph = DelegationGraph::from_trusted(search.best_targets);
    debug_assert!(graph.is_acyclic());
    SolveResult { best_value: search.best_value, witness: Witness::Delegate(graph) }
}

/// Agents reachable from each agent (itself included).
fn reachability(adjacency: &[Vec<usize>]) -> Vec<Vec<usize>> {
    (0..adjacency.len())
        .map(|start| {
            let mut seen = vec![false; adjacency.len()];
            let mut stack = vec![start];
            seen[start] = true;
            let mut out = Vec::new();
            while let Some(i) = stack.pop() {
                out.push(i);
                for &j in &adjacency[i] {
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            out
        })
        .collect()
}

struct GraphSearch<'a> {
    adjacency: &'a [Vec<usize>],
    table: &'a [Vec<Stance>],
    choosers: &'a [usize],
    optimistic: &'a [Vec<usize>],
    guru: Vec<usize>,
    targets: Vec<Option<usize>>,
    best_targets: Vec<Option<usize>>,
    best_value: usize,
    found: bool,
}

impl GraphSearch<'_> {
    fn bound(&self, board: &Scoreboard, k: usize) -> usize {
        let opt = &self.optimistic[k];
        (0..board.correct.len())
            .filter(|&p| {
                guaranteed(board.correct[p], board.plus_known[p] + opt[p], board.minus_known[p] + opt[p], board.n)
            })
            .count()
    }

    fn run(&mut self, board: &mut Scoreboard, k: usize) {
        if k == self.choosers.len() {
            let value = board.value();
            if !self.found || value > self.best_value || (value == self.best_value && self.targets < self.best_targets)
            {
                self.found = true;
                self.best_value = value;
                self.best_targets.clone_from(&self.targets);
            }
            return;
        }
        if self.found && self.bound(board, k) < self.best_value {
            return;
        }
        let i = self.choosers[k];
        let options = std::iter::once(None).chain(self.adjacency[i].iter().copied().map(Some));
        for option in options {
            let guru = option.map_or(i, |j| self.guru[j]);
            self.guru[i] = guru;
            self.targets[i] = option;
            board.shift(&self.table[guru], 1);
            self.run(board, k + 1);
            board.shift(&self.table[guru], -1);
        }
        self.guru[i] = i;
        self.targets[i] = None;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::fixtures::example_one;
    use crate::instance::{safe_zone, Belief};
    use crate::set::ProposalSet;

    #[test]
    fn example_eap() {
        let inst = example_one();
        let r = eap_exact(&inst, 1);
        assert_eq!(r.best_value, 5);
        assert_eq!(r.witness, Witness::Educate(vec![1]));
        assert_eq!(eap_exact(&inst, 0).best_value, 4);
        assert_eq!(eap_exact(&inst, 3).best_value, 5);
    }

    #[test]
    fn example_dap_and_cld() {
        let inst = example_one();
        for budget in 0..=3 {
            let r = dap_exact(&inst, budget);
            assert_eq!(r.best_value, 4, "budget {budget}");
            assert_eq!(r.witness.evaluate(&inst).unwrap(), 4);
        }
        let r = cld_exact(&inst);
        assert_eq!(r.best_value, 4);
        assert_eq!(r.witness, Witness::Delegate(DelegationGraph::empty(3)));
    }

    #[test]
    fn no_willing_arcs_means_safe_zone() {
        let m = 3;
        let beliefs = vec![
            Belief::with_unknown(ProposalSet::from([0]), &ProposalSet::from([0]), m),
            Belief::with_unknown(ProposalSet::from([0]), &ProposalSet::from([0]), m),
            Belief::certain(ProposalSet::from([1]), m),
        ];
        let inst = VotingInstance::new(m, beliefs).unwrap();
        assert_eq!(cld_exact(&inst).best_value, safe_zone(&inst).len());
    }
}
