use super::{certificate_for, Reduction, TwoPathColoredGraph};
use crate::domain::{classify_domain, DomainClass};
use crate::error::{Error, Result};
use crate::instance::{safe_zone, Belief, OutcomeSet, VotingInstance};
use crate::set::ProposalSet;

/// Two proposals `a_e`, `b_e` per edge plus a middle pair `a_M`, `b_M`;
/// the `a` proposals are good, the `b` proposals bad. Removing `4 kappa`
/// agents makes every proposal safe exactly when `kappa` vertices cover the
/// graph.
///
/// With `E` edges and `n` vertices the instance has `2E + 2` proposals and
/// `4E + 4n + 1` agents, listed as: `kappa` fully uncertain supporters, one
/// coding agent per vertex, the prefix and suffix partners of each coding
/// agent, `2E + n - kappa` certain supporters of everything, and the
/// single-proposal agents fixing the `a` margins.
pub fn reduce_vc2pc_to_dap(g2: &TwoPathColoredGraph, kappa: usize) -> Result<Reduction> {
    let graph = g2.graph();
    let n = graph.vertex_count();
    let total_edges = graph.edges().len();
    if kappa > n {
        return Err(Error::InvalidParameters(format!("cover size {kappa} exceeds the {n} vertices")));
    }
    let half = total_edges / 2;
    let m = 2 * total_edges + 2;
    let middle = 2 * half;
    // a-proposal of each edge; the matching b-proposal follows it.
    let mut a_of = vec![0usize; total_edges];
    let mut seq_of = vec![(0u8, 0usize); total_edges];
    for h in [1u8, 2] {
        let base = if h == 1 { 0 } else { middle + 2 };
        for (j, e) in g2.numbered(h).into_iter().enumerate() {
            a_of[e] = base + 2 * j;
            seq_of[e] = (h, j);
        }
    }

    let mut coding = Vec::with_capacity(n);
    let mut prefixes = Vec::with_capacity(n);
    let mut suffixes = Vec::with_capacity(n);
    for v in 0..n {
        let incident = graph.incident(v);
        let pick = |h: u8, last: bool| {
            let mut of_part: Vec<usize> = incident.iter().copied().filter(|&e| seq_of[e].0 == h).collect();
            of_part.sort_by_key(|&e| seq_of[e].1);
            if last {
                *of_part.last().expect("meets part")
            } else {
                of_part[0]
            }
        };
        let first = pick(1, false);
        let last = pick(2, true);
        let lo = a_of[first];
        let hi = a_of[last] + 1;
        let unknown: ProposalSet = incident.iter().flat_map(|&e| [a_of[e], a_of[e] + 1]).collect();
        coding.push(Belief::with_unknown(ProposalSet::range(lo, hi + 1), &unknown, m));
        prefixes.push(Belief::certain(ProposalSet::range(0, lo), m));
        suffixes.push(Belief::certain(ProposalSet::range(hi + 1, m), m));
    }

    let mut beliefs = Vec::with_capacity(4 * total_edges + 4 * n + 1);
    let all = ProposalSet::full(m);
    beliefs.extend(std::iter::repeat_n(Belief::with_unknown(all.clone(), &all, m), kappa));
    beliefs.extend(coding);
    beliefs.extend(prefixes);
    beliefs.extend(suffixes);
    beliefs.extend(std::iter::repeat_n(Belief::certain(all, m), 2 * total_edges + n - kappa));
    beliefs.push(Belief::certain(ProposalSet::from([middle]), m));
    let mut a_props: Vec<usize> = a_of.clone();
    a_props.sort_unstable();
    for a in a_props {
        beliefs.extend(std::iter::repeat_n(Belief::certain(ProposalSet::from([a]), m), 2));
    }

    let h_half = 2 * total_edges + 2 * n;
    assert_eq!(beliefs.len(), 2 * h_half + 1);
    let instance = VotingInstance::new(m, beliefs).expect("reduction builds a valid instance");
    for (p, t) in instance.tallies().iter().enumerate() {
        if p % 2 == 0 {
            let expected = if p == middle { kappa } else { kappa + 2 };
            assert_eq!(t.correct(), OutcomeSet::APPROVE, "a-proposal {p} must be good");
            assert_eq!(t.plus_unknown, expected, "a-proposal {p} uncertain supporters");
        } else {
            assert_eq!(t.correct(), OutcomeSet::REJECT, "b-proposal {p} must be bad");
        }
    }
    let safe = safe_zone(&instance);
    assert!((0..m).all(|p| safe.contains(p) == (p % 2 == 1 || (p == middle && kappa == 0))));
    assert!(classify_domain(&instance) >= DomainClass::OneDimensional);
    Ok(Reduction { certificate: certificate_for("dap-reduction", g2, kappa, 4 * kappa, m), instance })
}
