//! Voting instances, correct and possible outcomes, and safe zones.
//!
//! Every majority test compares `2 * count` against the electorate size so
//! that the "at least half" tie semantics stay exact.

use std::fmt;

use crate::error::{Error, Result};
use crate::set::ProposalSet;

/// How one agent relates to one proposal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stance {
    PlusKnown,
    MinusKnown,
    PlusUnknown,
    MinusUnknown,
}

impl Stance {
    pub fn is_plus(self) -> bool {
        matches!(self, Stance::PlusKnown | Stance::PlusUnknown)
    }

    pub fn is_known(self) -> bool {
        matches!(self, Stance::PlusKnown | Stance::MinusKnown)
    }
}

/// One agent's belief: the beneficial proposals and the proposals the agent
/// is certain about.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Belief {
    plus: ProposalSet,
    known: ProposalSet,
}

impl Belief {
    pub fn new(plus: ProposalSet, known: ProposalSet) -> Self {
        Self { plus, known }
    }

    /// A belief with no uncertainty over `m` proposals.
    pub fn certain(plus: ProposalSet, m: usize) -> Self {
        Self { plus, known: ProposalSet::full(m) }
    }

    /// Builds a belief from the beneficial set and the *uncertain* set.
    pub fn with_unknown(plus: ProposalSet, unknown: &ProposalSet, m: usize) -> Self {
        Self { plus, known: unknown.complement(m) }
    }

    pub fn plus(&self) -> &ProposalSet {
        &self.plus
    }

    pub fn known(&self) -> &ProposalSet {
        &self.known
    }

    pub fn plus_known(&self) -> ProposalSet {
        self.plus.intersection(&self.known)
    }

    pub fn minus_known(&self) -> ProposalSet {
        self.known.difference(&self.plus)
    }

    pub fn unknown(&self, m: usize) -> ProposalSet {
        self.known.complement(m)
    }

    pub fn plus_unknown(&self) -> ProposalSet {
        self.plus.difference(&self.known)
    }

    pub fn minus_unknown(&self, m: usize) -> ProposalSet {
        self.unknown(m).difference(&self.plus)
    }

    pub fn stance(&self, p: usize) -> Stance {
        match (self.plus.contains(p), self.known.contains(p)) {
            (true, true) => Stance::PlusKnown,
            (false, true) => Stance::MinusKnown,
            (true, false) => Stance::PlusUnknown,
            (false, false) => Stance::MinusUnknown,
        }
    }

    /// Whether the agent has any uncertainty among the first `m` proposals.
    pub fn is_confused(&self, m: usize) -> bool {
        self.known.len() < m
    }

    /// The belief after education: same benefits, no uncertainty.
    pub fn educated(&self, m: usize) -> Self {
        Self::certain(self.plus.clone(), m)
    }
}

/// Proposal count plus the ordered list of agent beliefs.
///
/// Proposals are `0..m`; whenever one-dimensional semantics apply, the
/// proposal order is the index order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VotingInstance {
    m: usize,
    beliefs: Vec<Belief>,
}

impl VotingInstance {
    pub fn new(m: usize, beliefs: Vec<Belief>) -> Result<Self> {
        if m == 0 {
            return Err(Error::NoProposals);
        }
        if beliefs.is_empty() {
            return Err(Error::NoAgents);
        }
        for (agent, belief) in beliefs.iter().enumerate() {
            for set in [&belief.plus, &belief.known] {
                if let Some(index) = set.last().filter(|&i| i >= m) {
                    return Err(Error::BeliefOutOfRange { agent, index, m });
                }
            }
        }
        Ok(Self { m, beliefs })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.beliefs.len()
    }

    pub fn beliefs(&self) -> &[Belief] {
        &self.beliefs
    }

    pub fn belief(&self, agent: usize) -> &Belief {
        &self.beliefs[agent]
    }

    pub(crate) fn check_proposal(&self, p: usize) -> Result<()> {
        if p < self.m {
            Ok(())
        } else {
            Err(Error::ProposalOutOfRange { index: p, m: self.m })
        }
    }

    pub(crate) fn check_agent(&self, i: usize) -> Result<()> {
        if i < self.n() {
            Ok(())
        } else {
            Err(Error::AgentOutOfRange { index: i, n: self.n() })
        }
    }

    pub fn tally(&self, p: usize) -> Result<Tally> {
        self.check_proposal(p)?;
        Ok(Tally::count(self.beliefs.iter().map(|b| b.stance(p))))
    }

    /// Tallies of every proposal, in index order.
    pub fn tallies(&self) -> Vec<Tally> {
        (0..self.m).map(|p| Tally::count(self.beliefs.iter().map(|b| b.stance(p)))).collect()
    }

    pub(crate) fn with_beliefs(&self, beliefs: Vec<Belief>) -> Self {
        debug_assert!(!beliefs.is_empty());
        Self { m: self.m, beliefs }
    }
}

/// Head counts of the stances on one proposal.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub n: usize,
    pub plus_known: usize,
    pub minus_known: usize,
    pub plus_unknown: usize,
    pub minus_unknown: usize,
}

impl Tally {
    pub fn count(stances: impl IntoIterator<Item = Stance>) -> Self {
        let mut t = Tally::default();
        for s in stances {
            t.add(s);
        }
        t
    }

    pub fn add(&mut self, s: Stance) {
        self.n += 1;
        match s {
            Stance::PlusKnown => self.plus_known += 1,
            Stance::MinusKnown => self.minus_known += 1,
            Stance::PlusUnknown => self.plus_unknown += 1,
            Stance::MinusUnknown => self.minus_unknown += 1,
        }
    }

    pub fn plus(&self) -> usize {
        self.plus_known + self.plus_unknown
    }

    pub fn minus(&self) -> usize {
        self.minus_known + self.minus_unknown
    }

    pub fn unknown(&self) -> usize {
        self.plus_unknown + self.minus_unknown
    }

    pub fn correct(&self) -> OutcomeSet {
        OutcomeSet { approve: 2 * self.plus() >= self.n, reject: 2 * self.minus() >= self.n }
    }

    pub fn possible(&self) -> OutcomeSet {
        OutcomeSet {
            approve: 2 * (self.plus() + self.minus_unknown) >= self.n,
            reject: 2 * (self.minus() + self.plus_unknown) >= self.n,
        }
    }
}

/// Outcome of a binary vote: approve is 1, reject is 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Outcome {
    Reject,
    Approve,
}

/// A nonempty subset of `{Reject, Approve}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OutcomeSet {
    approve: bool,
    reject: bool,
}

impl OutcomeSet {
    pub const APPROVE: Self = Self { approve: true, reject: false };
    pub const REJECT: Self = Self { approve: false, reject: true };
    pub const BOTH: Self = Self { approve: true, reject: true };

    pub fn contains(self, outcome: Outcome) -> bool {
        match outcome {
            Outcome::Approve => self.approve,
            Outcome::Reject => self.reject,
        }
    }

    pub fn len(self) -> usize {
        usize::from(self.approve) + usize::from(self.reject)
    }

    pub fn is_empty(self) -> bool {
        self.len() == 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        (!self.approve || other.approve) && (!self.reject || other.reject)
    }

    pub fn is_singleton(self) -> bool {
        self.len() == 1
    }
}

impl fmt::Display for OutcomeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.reject, self.approve) {
            (true, true) => f.write_str("{0,1}"),
            (true, false) => f.write_str("{0}"),
            (false, true) => f.write_str("{1}"),
            (false, false) => f.write_str("{}"),
        }
    }
}

/// Whether an evaluated electorate is guaranteed to land inside `correct`.
///
/// Equivalent to `poss ⊆ correct` for a tally with the given certain counts
/// and electorate size.
pub(crate) fn guaranteed(correct: OutcomeSet, plus_known: usize, minus_known: usize, n: usize) -> bool {
    match (correct.approve, correct.reject) {
        (true, true) => true,
        (true, false) => 2 * plus_known > n,
        (false, true) => 2 * minus_known > n,
        (false, false) => unreachable!("correct outcome sets are nonempty"),
    }
}

pub fn correct_outcomes(instance: &VotingInstance, p: usize) -> Result<OutcomeSet> {
    Ok(instance.tally(p)?.correct())
}

pub fn possible_outcomes(instance: &VotingInstance, p: usize) -> Result<OutcomeSet> {
    Ok(instance.tally(p)?.possible())
}

pub fn is_safe(instance: &VotingInstance, p: usize) -> Result<bool> {
    let tally = instance.tally(p)?;
    Ok(tally.possible() == tally.correct())
}

pub fn safe_zone(instance: &VotingInstance) -> ProposalSet {
    instance.tallies().iter().enumerate().filter(|(_, t)| t.possible() == t.correct()).map(|(p, _)| p).collect()
}

/// Number of proposals whose possible outcomes under `evaluated` all lie in
/// the correct outcomes of `reference`.
pub fn acceptable_count(reference: &VotingInstance, evaluated: &VotingInstance) -> Result<usize> {
    if reference.m() != evaluated.m() {
        return Err(Error::MismatchedProposals { left: reference.m(), right: evaluated.m() });
    }
    Ok(reference.tallies().iter().zip(evaluated.tallies()).filter(|(r, e)| e.possible().is_subset(r.correct())).count())
}
