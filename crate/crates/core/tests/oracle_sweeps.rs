mod common;

use common::random;
use safezone::radical::{correct_profile, unsafe_interval};
use safezone::{
    cld_exact, cld_fpt, cld_radical, dap_exact, dap_fpt, dap_radical, eap_exact, eap_fpt, eap_radical, safe_zone,
    DomainClass, OutcomeSet,
};

#[test]
fn programs_match_brute_force() {
    let mut checked = 0;
    for seed in 0..240u64 {
        let n = 1 + (seed % 6) as usize;
        let m = 1 + (seed / 6 % 3) as usize;
        let domain = if seed % 2 == 0 { DomainClass::General } else { DomainClass::OneDimensional };
        let inst = random(n, m, domain, 0.45, seed);
        for budget in 0..=2 {
            let what = format!("seed {seed} budget {budget}");
            assert_eq!(eap_fpt(&inst, budget).unwrap().best_value, eap_exact(&inst, budget).best_value, "eap {what}");
            assert_eq!(dap_fpt(&inst, budget).unwrap().best_value, dap_exact(&inst, budget).best_value, "dap {what}");
        }
        assert_eq!(cld_fpt(&inst).unwrap().best_value, cld_exact(&inst).best_value, "cld seed {seed}");
        checked += 1;
    }
    assert!(checked >= 200);
}

#[test]
fn radical_solvers_match_brute_force() {
    for seed in 0..210u64 {
        let n = [3, 5, 7][(seed % 3) as usize];
        let m = 1 + (seed / 3 % 6) as usize;
        let inst = random(n, m, DomainClass::RadicalOneDimensional, 0.6, 1000 + seed);

        let tau = correct_profile(&inst).unwrap().threshold;
        let correct: Vec<OutcomeSet> = inst.tallies().iter().map(|t| t.correct()).collect();
        assert!(correct
            .iter()
            .enumerate()
            .all(|(p, &c)| c == if p < tau { OutcomeSet::REJECT } else { OutcomeSet::APPROVE }));
        let safe = safe_zone(&inst);
        match unsafe_interval(&inst).unwrap() {
            None => assert_eq!(safe.len(), m),
            Some((lo, hi)) => {
                assert!((0..m).all(|p| safe.contains(p) == (p < lo || p > hi)), "seed {seed}");
                // A safe rejected proposal makes everything before it safe, and
                // symmetrically for approvals.
                assert!(lo <= tau && tau <= hi + 1);
            }
        }

        for budget in 0..=2 {
            let what = format!("seed {seed} budget {budget}");
            assert_eq!(
                eap_radical(&inst, budget).unwrap().best_value,
                eap_exact(&inst, budget).best_value,
                "eap {what}"
            );
            assert_eq!(
                dap_radical(&inst, budget).unwrap().best_value,
                dap_exact(&inst, budget).best_value,
                "dap {what}"
            );
        }
        assert_eq!(cld_radical(&inst).unwrap().best_value, cld_exact(&inst).best_value, "cld seed {seed}");
    }
}
