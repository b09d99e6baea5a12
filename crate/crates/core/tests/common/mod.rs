#![allow(dead_code)]

use safezone::{gen_random, Belief, DomainClass, ProposalSet, RandomParams, VotingInstance};

/// Three agents over five proposals: a confused centrist, a centrist unsure
/// about the first proposal, and a certain agent favouring the first three.
pub fn example_one() -> VotingInstance {
    let m = 5;
    VotingInstance::new(
        m,
        vec![
            Belief::with_unknown(ProposalSet::from([1, 2, 3]), &ProposalSet::from([1, 3]), m),
            Belief::with_unknown(ProposalSet::from([1, 2]), &ProposalSet::from([0]), m),
            Belief::certain(ProposalSet::from([0, 1, 2]), m),
        ],
    )
    .unwrap()
}

pub fn random(n: usize, m: usize, domain: DomainClass, uncertainty: f64, seed: u64) -> VotingInstance {
    gen_random(&RandomParams { n, m, domain, uncertainty, seed }).unwrap()
}

/// Mixed corpus of small instances from every domain.
pub fn corpus(size: u64) -> Vec<VotingInstance> {
    (0..size)
        .map(|seed| {
            let n = 1 + (seed % 7) as usize;
            let m = 1 + (seed / 7 % 5) as usize;
            match seed % 3 {
                0 => random(n, m, DomainClass::General, 0.4, seed),
                1 => random(n, m, DomainClass::OneDimensional, 0.5, seed),
                _ => random(n | 1, m, DomainClass::RadicalOneDimensional, 0.6, seed),
            }
        })
        .collect()
}
