//! Recognition of the one-dimensional and radical one-dimensional domains.

use serde::{Deserialize, Serialize};

use crate::instance::{Belief, VotingInstance};
use crate::set::ProposalSet;

/// Structural class of an instance under the index order of its proposals.
///
/// Ordered from least to most structured, so `RadicalOneDimensional`
/// compares greatest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DomainClass {
    General,
    OneDimensional,
    #[serde(rename = "radical")]
    RadicalOneDimensional,
}

impl DomainClass {
    pub fn name(self) -> &'static str {
        match self {
            DomainClass::General => "general",
            DomainClass::OneDimensional => "one-dimensional",
            DomainClass::RadicalOneDimensional => "radical",
        }
    }
}

impl std::fmt::Display for DomainClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

pub fn classify_domain(instance: &VotingInstance) -> DomainClass {
    let m = instance.m();
    instance.beliefs().iter().map(|b| classify_belief(b, m)).min().expect("instances have agents")
}

/// Per-agent classification; an instance is as structured as its least
/// structured agent.
pub fn classify_belief(belief: &Belief, m: usize) -> DomainClass {
    if radical_profile(belief, m).is_some() {
        DomainClass::RadicalOneDimensional
    } else if is_one_dimensional(belief, m) {
        DomainClass::OneDimensional
    } else {
        DomainClass::General
    }
}

/// Whether the inclusive run `(lo, hi)` contains one of the anchors.
fn touches(run: (usize, usize), anchors: [Option<usize>; 2]) -> bool {
    anchors.iter().flatten().any(|&a| run.0 <= a && a <= run.1)
}

fn is_one_dimensional(belief: &Belief, m: usize) -> bool {
    let plus = belief.plus();
    if !plus.is_interval() {
        return false;
    }
    let runs = belief.unknown(m).runs();
    let (Some(first), Some(last)) = (plus.first(), plus.last()) else {
        // No positive interval to anchor against: allow a single block of
        // uncertainty.
        return runs.len() <= 1;
    };
    let left = [first.checked_sub(1), Some(first)];
    let right = [Some(last), Some(last + 1).filter(|&p| p < m)];
    match runs.as_slice() {
        [] => true,
        [run] => touches(*run, left) || touches(*run, right),
        [a, b] => (touches(*a, left) && touches(*b, right)) || (touches(*b, left) && touches(*a, right)),
        _ => false,
    }
}

/// Shape of a radical-domain belief.
///
/// The agent is certain it is harmed by `[0, lo)`, uncertain about
/// `[lo, hi)`, and certain it benefits from `[hi, m)`; the switch point
/// `cut` (first beneficial proposal, `m` if none) lies in `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RadicalProfile {
    pub cut: usize,
    pub lo: usize,
    pub hi: usize,
}

impl RadicalProfile {
    pub fn belief(&self, m: usize) -> Belief {
        Belief::with_unknown(ProposalSet::range(self.cut, m), &ProposalSet::range(self.lo, self.hi), m)
    }
}

/// Returns the radical shape of a belief, if it has one.
///
/// The beneficial set must be a suffix and the uncertain set a single
/// interval that meets the switch point (contains `cut - 1` or `cut`).
pub fn radical_profile(belief: &Belief, m: usize) -> Option<RadicalProfile> {
    let plus = belief.plus();
    let cut = plus.first().unwrap_or(m);
    if plus.len() != m - cut {
        return None;
    }
    let unknown = belief.unknown(m);
    match unknown.runs().as_slice() {
        [] => Some(RadicalProfile { cut, lo: cut, hi: cut }),
        [(lo, hi)] if *lo <= cut && cut <= hi + 1 => Some(RadicalProfile { cut, lo: *lo, hi: hi + 1 }),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::fixtures::example_one;

    fn inst(m: usize, beliefs: Vec<Belief>) -> VotingInstance {
        VotingInstance::new(m, beliefs).unwrap()
    }

    #[test]
    fn example_one_is_one_dimensional() {
        assert_eq!(classify_domain(&example_one()), DomainClass::OneDimensional);
    }

    #[test]
    fn extra_agents_break_one_dimensionality() {
        let base = example_one();
        let m = base.m();
        let split = Belief::certain(ProposalSet::from([0, 4]), m);
        let misplaced = Belief::with_unknown(ProposalSet::from([1, 2, 3]), &ProposalSet::from([2]), m);
        for extra in [split, misplaced] {
            let mut beliefs = base.beliefs().to_vec();
            beliefs.push(extra);
            assert_eq!(classify_domain(&inst(m, beliefs)), DomainClass::General);
        }
    }

    #[test]
    fn full_suffix_is_radical() {
        let m = 4;
        let all = vec![Belief::certain(ProposalSet::full(m), m); 3];
        assert_eq!(classify_domain(&inst(m, all)), DomainClass::RadicalOneDimensional);
    }

    #[test]
    fn radical_uncertainty_must_meet_the_cut() {
        let m = 6;
        let near = Belief::with_unknown(ProposalSet::range(3, m), &ProposalSet::range(1, 3), m);
        assert_eq!(radical_profile(&near, m), Some(RadicalProfile { cut: 3, lo: 1, hi: 3 }));
        let far = Belief::with_unknown(ProposalSet::range(3, m), &ProposalSet::from([5]), m);
        assert_eq!(radical_profile(&far, m), None);
        // Still one-dimensional: the block touches the right end of the interval.
        assert_eq!(classify_belief(&far, m), DomainClass::OneDimensional);
        let empty_plus = Belief::with_unknown(ProposalSet::new(), &ProposalSet::range(4, 6), m);
        assert_eq!(radical_profile(&empty_plus, m), Some(RadicalProfile { cut: 6, lo: 4, hi: 6 }));
    }

    #[test]
    fn profile_round_trips() {
        let m = 5;
        let profile = RadicalProfile { cut: 2, lo: 1, hi: 4 };
        assert_eq!(radical_profile(&profile.belief(m), m), Some(profile));
    }
}
