mod common;

use proptest::prelude::*;
use safezone::ilp::{build_cld_ip, build_dap_ip, build_eap_ip, export_lp, parse_lp, Formulation};
use safezone::{
    acceptable_count, eap_exact, educate, resolve_gurus, safe_zone, willingness_digraph, DelegationGraph, DomainClass,
    VotingInstance,
};

use common::{corpus, example_one, random};

fn domain_of(k: u8) -> DomainClass {
    [DomainClass::General, DomainClass::OneDimensional, DomainClass::RadicalOneDimensional][k as usize % 3]
}

fn instance(n: usize, m: usize, k: u8, seed: u64) -> VotingInstance {
    let domain = domain_of(k);
    let n = if domain == DomainClass::RadicalOneDimensional { n | 1 } else { n };
    random(n, m, domain, 0.5, seed)
}

#[test]
fn correct_outcomes_are_possible() {
    for inst in corpus(400) {
        for t in inst.tallies() {
            assert!(t.correct().is_subset(t.possible()));
            assert!(!t.correct().is_empty());
        }
    }
}

/// Enumerates every assignment of a program with a small search space.
fn assignments(f: &Formulation) -> Option<Vec<Vec<i64>>> {
    let vars = &f.program.variables;
    let space: u128 = vars.iter().map(|v| (v.upper - v.lower + 1) as u128).product();
    if space > 200_000 {
        return None;
    }
    let mut out = vec![Vec::new()];
    for v in vars {
        out = out.into_iter().flat_map(|a| (v.lower..=v.upper).map(move |x| [a.clone(), vec![x]].concat())).collect();
    }
    Some(out)
}

/// On a feasible assignment every indicator is on exactly when its margin
/// is positive, and the decoded intervention achieves what the assignment
/// claims.
fn check_indicator_semantics(inst: &VotingInstance, f: &Formulation) -> usize {
    let Some(all) = assignments(f) else { return 0 };
    let mut feasible = 0;
    for a in all.iter().filter(|a| f.program.is_feasible(a)) {
        feasible += 1;
        for &(p, z, margin) in &f.indicators {
            assert_eq!(a[z] == 1, a[margin] >= 1, "proposal {p} assignment {a:?}");
        }
        let claimed = f.program.objective_value(a) as usize + f.offset;
        assert_eq!(f.decode(a).unwrap().evaluate(inst).unwrap(), claimed, "assignment {a:?}");
    }
    feasible
}

#[test]
fn indicator_semantics_by_enumeration() {
    let mut covered = 0;
    let mut instances = vec![example_one()];
    instances.extend((0..60).map(|s| instance(1 + (s % 4) as usize, 1 + (s / 4 % 2) as usize, s as u8, 7000 + s)));
    for inst in &instances {
        for budget in 0..=1 {
            covered += check_indicator_semantics(inst, &build_dap_ip(inst, budget));
            covered += check_indicator_semantics(inst, &build_eap_ip(inst, budget));
        }
        covered += check_indicator_semantics(inst, &build_cld_ip(inst));
    }
    assert!(covered > 300, "only {covered} feasible assignments checked");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn education_is_monotone(n in 1usize..7, m in 1usize..6, k in 0u8..3, seed in any::<u64>(), small in any::<u8>(), extra in any::<u8>()) {
        let inst = instance(n, m, k, seed);
        let n = inst.n();
        let s: Vec<usize> = (0..n).filter(|i| small >> i & 1 == 1).collect();
        let bigger: Vec<usize> = (0..n).filter(|i| (small | extra) >> i & 1 == 1).collect();
        let before = educate(&inst, &s).unwrap();
        let after = educate(&inst, &bigger).unwrap();
        prop_assert!(acceptable_count(&inst, &before).unwrap() <= acceptable_count(&inst, &after).unwrap());
        prop_assert!(safe_zone(&before).is_subset(&safe_zone(&after)));
    }

    #[test]
    fn delegation_graphs_are_acyclic(n in 1usize..9, m in 1usize..6, k in 0u8..3, seed in any::<u64>(), picks in prop::collection::vec(any::<u16>(), 9)) {
        let inst = instance(n, m, k, seed);
        let digraph = willingness_digraph(&inst);
        let targets: Vec<Option<usize>> = digraph
            .iter()
            .zip(&picks)
            .map(|(out, &pick)| (!out.is_empty() && pick % 3 != 0).then(|| out[pick as usize % out.len()]))
            .collect();
        let graph = DelegationGraph::new(&inst, targets).unwrap();
        prop_assert!(graph.is_acyclic());
        let gurus = resolve_gurus(&graph);
        for (i, &g) in gurus.iter().enumerate() {
            prop_assert_eq!(gurus[g], g);
            prop_assert!(graph.target(g).is_none());
            if g != i {
                prop_assert!(inst.belief(g).known().len() > inst.belief(i).known().len());
            }
        }
    }

    #[test]
    fn willingness_raises_certainty(n in 1usize..9, m in 1usize..6, k in 0u8..3, seed in any::<u64>()) {
        let inst = instance(n, m, k, seed);
        for (i, out) in willingness_digraph(&inst).iter().enumerate() {
            for &j in out {
                prop_assert!(inst.belief(j).known().len() > inst.belief(i).known().len());
                prop_assert!(inst.belief(i).plus_known().is_disjoint(&inst.belief(j).minus_known()));
            }
        }
    }

    #[test]
    fn lp_text_round_trips(n in 1usize..6, m in 1usize..4, k in 0u8..3, seed in any::<u64>(), budget in 0usize..3) {
        let inst = instance(n, m, k, seed);
        for f in [build_dap_ip(&inst, budget), build_eap_ip(&inst, budget), build_cld_ip(&inst)] {
            let text = export_lp(&f.program);
            let parsed = parse_lp(&text).unwrap();
            prop_assert_eq!(export_lp(&parsed), text);
        }
    }

    #[test]
    fn budget_never_hurts(n in 1usize..6, m in 1usize..4, seed in any::<u64>()) {
        let inst = instance(n, m, 0, seed);
        let values: Vec<usize> = (0..=n).map(|b| eap_exact(&inst, b).best_value).collect();
        prop_assert!(values.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(values[0], acceptable_count(&inst, &inst).unwrap());
        prop_assert_eq!(values[n], m);
    }
}
