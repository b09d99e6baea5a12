use super::{certificate_for, Reduction, TwoPathColoredGraph};
use crate::domain::{classify_domain, DomainClass};
use crate::instance::{safe_zone, Belief, VotingInstance};
use crate::set::ProposalSet;

/// One proposal per edge, each approved by a margin of three with the two
/// endpoints of the edge as its only uncertain supporters. Educating a
/// vertex secures every edge it touches, so all proposals can be made safe
/// with `kappa` educations exactly when `kappa` vertices cover the graph.
pub fn reduce_vc2pc_to_eap(g2: &TwoPathColoredGraph, kappa: usize) -> Reduction {
    let graph = g2.graph();
    let mut position = vec![0usize; graph.edges().len()];
    for (p, e) in g2.numbered(1).into_iter().chain(g2.numbered(2)).enumerate() {
        position[e] = p;
    }
    let m = position.len();

    let mut beliefs: Vec<Belief> = (0..graph.vertex_count())
        .map(|v| {
            let unknown: ProposalSet = graph.incident(v).into_iter().map(|e| position[e]).collect();
            let plus = ProposalSet::range(unknown.first().expect("every vertex has edges"), unknown.bound());
            Belief::with_unknown(plus, &unknown, m)
        })
        .collect();

    let supporters = |beliefs: &[Belief], p: usize| beliefs.iter().filter(|b| b.plus().contains(p)).count();
    let z = (0..m).map(|p| supporters(&beliefs, p)).max().unwrap_or(0);
    for p in 0..m {
        let missing = z - supporters(&beliefs, p);
        beliefs.extend(std::iter::repeat_n(Belief::certain(ProposalSet::from([p]), m), missing));
    }
    let y = beliefs.len() - z;
    if z < y + 3 {
        beliefs.extend(std::iter::repeat_n(Belief::certain(ProposalSet::full(m), m), y + 3 - z));
    } else if z > y + 3 {
        beliefs.extend(std::iter::repeat_n(Belief::certain(ProposalSet::new(), m), z - 3 - y));
    }

    let instance = VotingInstance::new(m, beliefs).expect("reduction builds a valid instance");
    for (p, t) in instance.tallies().iter().enumerate() {
        assert_eq!(t.plus(), t.minus() + 3, "proposal {p} must be approved by a margin of three");
        assert_eq!((t.plus_unknown, t.minus_unknown), (2, 0), "proposal {p} must have two uncertain supporters");
    }
    assert!(classify_domain(&instance) >= DomainClass::OneDimensional);
    assert!(safe_zone(&instance).is_empty());
    Reduction { certificate: certificate_for("eap-reduction", g2, kappa, kappa, m), instance }
}
