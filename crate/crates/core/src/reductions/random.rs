use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::domain::{classify_domain, DomainClass, RadicalProfile};
use crate::error::{Error, Result};
use crate::instance::{Belief, VotingInstance};
use crate::set::ProposalSet;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomParams {
    pub n: usize,
    pub m: usize,
    pub domain: DomainClass,
    /// Chance that a proposal (or, in the structured domains, a band of
    /// proposals) is uncertain.
    pub uncertainty: f64,
    pub seed: u64,
}

/// Seeded random instance in the requested domain. Equal parameters give
/// equal instances.
pub fn gen_random(params: &RandomParams) -> Result<VotingInstance> {
    let RandomParams { n, m, domain, uncertainty, seed } = *params;
    if n == 0 || m == 0 {
        return Err(Error::InvalidParameters("need at least one agent and one proposal".into()));
    }
    if !(0.0..=1.0).contains(&uncertainty) {
        return Err(Error::InvalidParameters(format!("uncertainty {uncertainty} is not a probability")));
    }
    if domain == DomainClass::RadicalOneDimensional && n % 2 == 0 {
        return Err(Error::InvalidParameters(format!("radical instances need an odd agent count, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let beliefs = (0..n)
        .map(|_| match domain {
            DomainClass::General => general(&mut rng, m, uncertainty),
            DomainClass::OneDimensional => one_dimensional(&mut rng, m, uncertainty),
            DomainClass::RadicalOneDimensional => radical(&mut rng, m, uncertainty),
        })
        .collect();
    let instance = VotingInstance::new(m, beliefs)?;
    assert!(classify_domain(&instance) >= domain);
    Ok(instance)
}

fn general(rng: &mut ChaCha8Rng, m: usize, rate: f64) -> Belief {
    let plus: ProposalSet = (0..m).filter(|_| rng.gen_bool(0.5)).collect();
    let unknown: ProposalSet = (0..m).filter(|_| rng.gen_bool(rate)).collect();
    Belief::with_unknown(plus, &unknown, m)
}

/// Inclusive run around `anchor`, widened by up to two on each side.
fn run_around(rng: &mut ChaCha8Rng, anchor: usize, m: usize) -> ProposalSet {
    let lo = anchor.saturating_sub(rng.gen_range(0..=2));
    let hi = (anchor + rng.gen_range(0..=2)).min(m - 1);
    ProposalSet::range(lo, hi + 1)
}

fn one_dimensional(rng: &mut ChaCha8Rng, m: usize, rate: f64) -> Belief {
    let first = rng.gen_range(0..m);
    let last = rng.gen_range(first..m);
    let plus = ProposalSet::range(first, last + 1);
    let mut unknown = ProposalSet::new();
    if rng.gen_bool(rate) {
        let anchor = if first > 0 && rng.gen_bool(0.5) { first - 1 } else { first };
        unknown = unknown.union(&run_around(rng, anchor, m));
    }
    if rng.gen_bool(rate) {
        let anchor = if last + 1 < m && rng.gen_bool(0.5) { last + 1 } else { last };
        unknown = unknown.union(&run_around(rng, anchor, m));
    }
    Belief::with_unknown(plus, &unknown, m)
}

fn radical(rng: &mut ChaCha8Rng, m: usize, rate: f64) -> Belief {
    let cut = rng.gen_range(0..=m);
    let (mut lo, mut hi) = (cut, cut);
    if rng.gen_bool(rate) {
        lo = cut - rng.gen_range(0..=cut.min(2));
        hi = cut + rng.gen_range(0..=(m - cut).min(2));
    }
    RadicalProfile { cut, lo, hi }.belief(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(domain: DomainClass, seed: u64) -> RandomParams {
        RandomParams { n: 7, m: 6, domain, uncertainty: 0.4, seed }
    }

    #[test]
    fn reproducible_and_in_domain() {
        for domain in [DomainClass::General, DomainClass::OneDimensional, DomainClass::RadicalOneDimensional] {
            for seed in 0..40 {
                let a = gen_random(&params(domain, seed)).unwrap();
                assert_eq!(a, gen_random(&params(domain, seed)).unwrap());
                assert!(classify_domain(&a) >= domain);
            }
        }
        assert_ne!(gen_random(&params(DomainClass::General, 1)), gen_random(&params(DomainClass::General, 2)));
    }

    #[test]
    fn rejects_bad_parameters() {
        let mut p = params(DomainClass::RadicalOneDimensional, 0);
        p.n = 4;
        assert!(gen_random(&p).is_err());
        p.n = 0;
        assert!(gen_random(&p).is_err());
        let mut q = params(DomainClass::General, 0);
        q.uncertainty = 1.5;
        assert!(gen_random(&q).is_err());
    }
}
