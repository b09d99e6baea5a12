use super::{Certificate, Reduction, UndirectedGraph};
use crate::domain::{classify_domain, DomainClass};
use crate::error::Result;
use crate::instance::{Belief, VotingInstance};
use crate::interventions::willingness_digraph;
use crate::set::ProposalSet;

/// Proposal layout: per edge `s_e, r_{e,u}, p_e, r_{e,v}` (`u < v`), per
/// vertex `s_u, p_u, q_u`, then the sink pair `s_$, p_$`.
struct Layout {
    edges: Vec<(usize, usize)>,
    vertices: usize,
}

impl Layout {
    fn p_edge(&self, e: usize) -> usize {
        4 * e + 2
    }

    fn r(&self, e: usize, u: usize) -> usize {
        if self.edges[e].0 == u {
            4 * e + 1
        } else {
            4 * e + 3
        }
    }

    fn vertex_base(&self, u: usize) -> usize {
        4 * self.edges.len() + 3 * u
    }

    fn p_vertex(&self, u: usize) -> usize {
        self.vertex_base(u) + 1
    }

    fn q_vertex(&self, u: usize) -> usize {
        self.vertex_base(u) + 2
    }

    fn sink_separator(&self) -> usize {
        self.vertex_base(self.vertices)
    }

    fn sink(&self) -> usize {
        self.sink_separator() + 1
    }

    fn m(&self) -> usize {
        self.sink() + 1
    }
}

/// Eight agents per vertex in the one-dimensional domain whose only
/// willing delegations are four fixed pairs. Choosing a vertex means
/// letting its pairs delegate, which secures the gadgets of its edges and
/// costs one unit of the sink's tolerance; the sink stays safe exactly
/// when at most `kappa` vertices are chosen. Every proposal can be made
/// correct by delegation iff `kappa` vertices cover the graph.
pub fn reduce_vccg_to_cld(graph: &UndirectedGraph, kappa: usize) -> Result<Reduction> {
    graph.check_cubic()?;
    let mut edges = graph.edges().to_vec();
    edges.sort_unstable();
    let vertices = graph.vertex_count();
    let layout = Layout { edges: edges.clone(), vertices };
    let m = layout.m();

    let mut agents: Vec<Belief> = Vec::with_capacity(8 * vertices);
    for u in 0..vertices {
        let incident: Vec<usize> = (0..edges.len()).filter(|&e| edges[e].0 == u || edges[e].1 == u).collect();
        for (k, &x) in incident.iter().enumerate() {
            let next = match incident.get(k + 1) {
                Some(&y) => layout.r(y, u),
                None => layout.p_vertex(u),
            };
            let (px, rx) = (layout.p_edge(x), layout.r(x, u));
            let plus = ProposalSet::range(px.min(rx), next + 1);
            agents.push(Belief::with_unknown(plus.clone(), &ProposalSet::from([px, rx]), m));
            agents.push(Belief::with_unknown(plus, &ProposalSet::from([next]), m));
        }
        let plus = ProposalSet::range(layout.p_vertex(u), layout.sink() + 1);
        agents.push(Belief::with_unknown(
            plus.clone(),
            &ProposalSet::from([layout.p_vertex(u), layout.q_vertex(u)]),
            m,
        ));
        agents.push(Belief::with_unknown(plus, &ProposalSet::from([layout.sink()]), m));
    }

    // Target approval count above the base K, per proposal.
    let uncertain_on = |p: usize| agents.iter().filter(|b| b.plus_unknown().contains(p)).count();
    let delta: Vec<usize> = (0..m)
        .map(|p| {
            if p == layout.sink() {
                vertices + kappa + 1
            } else if p >= layout.vertex_base(0) && p < layout.sink_separator() {
                if (p - layout.vertex_base(0)).is_multiple_of(3) {
                    1
                } else {
                    3
                }
            } else if p == layout.sink_separator() || p % 4 == 0 {
                1
            } else if p % 4 == 2 {
                2
            } else {
                1 + uncertain_on(p)
            }
        })
        .collect();
    let support: Vec<usize> = (0..m).map(|p| agents.iter().filter(|b| b.plus().contains(p)).count()).collect();
    let slack: isize = (0..m).map(|p| delta[p] as isize - support[p] as isize).sum();
    let mut c = (0..m).map(|p| support[p].saturating_sub(delta[p])).max().unwrap_or(0);
    let k = loop {
        let k = (8 * vertices) as isize + slack + (m as isize - 1) * c as isize - 1;
        if k >= c as isize {
            break k as usize;
        }
        c += 1;
    };

    let mut beliefs = agents;
    for p in 0..m {
        let singles = c + delta[p] - support[p];
        beliefs.extend(std::iter::repeat_n(Belief::certain(ProposalSet::from([p]), m), singles));
    }
    beliefs.extend(std::iter::repeat_n(Belief::certain(ProposalSet::full(m), m), k - c));

    let instance = VotingInstance::new(m, beliefs).expect("reduction builds a valid instance");
    assert_eq!(instance.n(), 2 * k + 1);
    for (p, t) in instance.tallies().iter().enumerate() {
        assert_eq!(t.plus(), k + delta[p], "proposal {p} approval count");
        assert_eq!(t.minus_unknown, 0, "proposal {p} has uncertain opponents");
        let expected_uncertain = if p == layout.sink() {
            vertices
        } else if delta[p] == 1 {
            0
        } else if p >= layout.vertex_base(0) {
            if (p - layout.vertex_base(0)) % 3 == 1 {
                2
            } else {
                1
            }
        } else if p % 4 == 2 {
            2
        } else {
            delta[p] - 1
        };
        assert_eq!(t.plus_unknown, expected_uncertain, "proposal {p} uncertain supporters");
    }
    let digraph = willingness_digraph(&instance);
    for (i, targets) in digraph.iter().enumerate() {
        let expected: Vec<usize> = if i < 8 * vertices && i % 2 == 0 { vec![i + 1] } else { vec![] };
        assert_eq!(targets, &expected, "willingness of agent {i}");
    }
    assert!(classify_domain(&instance) >= DomainClass::OneDimensional);

    let certificate = Certificate {
        kind: "cld-reduction".into(),
        vertices,
        edges: graph.edges().to_vec(),
        parts: None,
        kappa,
        budget: None,
        lambda: m,
    };
    Ok(Reduction { instance, certificate })
}

#[cfg(test)]
mod tests {
    use super::super::graph::samples::{c4, k4};
    use super::*;
    use crate::error::Error;

    #[test]
    fn k4_shape() {
        let r = reduce_vccg_to_cld(&k4(), 3).unwrap();
        assert_eq!(r.instance.m(), 38);
        assert_eq!(r.instance.n() % 2, 1);
        assert_eq!(r.certificate.lambda, 38);
        assert_eq!(willingness_digraph(&r.instance).iter().map(Vec::len).sum::<usize>(), 16);
    }

    #[test]
    fn rejects_non_cubic() {
        assert_eq!(reduce_vccg_to_cld(&c4(), 2).unwrap_err(), Error::NotCubic { vertex: 0, degree: 2 });
    }
}
