//! Agent types: per-proposal stance strings that make agents interchangeable.

use std::collections::BTreeMap;
use std::fmt;

use crate::instance::{Belief, Stance, VotingInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    PlusCertain,
    MinusCertain,
    PlusUncertain,
    MinusUncertain,
    /// Either uncertain stance, in the three-letter alphabet.
    Uncertain,
}

impl Symbol {
    pub fn letter(self) -> char {
        match self {
            Symbol::PlusCertain => 'P',
            Symbol::MinusCertain => 'N',
            Symbol::PlusUncertain => 'p',
            Symbol::MinusUncertain => 'n',
            Symbol::Uncertain => 'U',
        }
    }

    pub fn is_certain(self) -> bool {
        matches!(self, Symbol::PlusCertain | Symbol::MinusCertain)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Alphabet {
    /// Certain plus, certain minus, uncertain.
    Three,
    /// All four stances.
    Four,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AgentType {
    symbols: Vec<Symbol>,
}

impl AgentType {
    pub fn of(belief: &Belief, m: usize, alphabet: Alphabet) -> Self {
        let symbols = (0..m)
            .map(|p| match (belief.stance(p), alphabet) {
                (Stance::PlusKnown, _) => Symbol::PlusCertain,
                (Stance::MinusKnown, _) => Symbol::MinusCertain,
                (_, Alphabet::Three) => Symbol::Uncertain,
                (Stance::PlusUnknown, Alphabet::Four) => Symbol::PlusUncertain,
                (Stance::MinusUnknown, Alphabet::Four) => Symbol::MinusUncertain,
            })
            .collect();
        Self { symbols }
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn symbol(&self, p: usize) -> Symbol {
        self.symbols[p]
    }

    /// Number of certain positions.
    pub fn certainty(&self) -> usize {
        self.symbols.iter().filter(|s| s.is_certain()).count()
    }

    pub fn is_confused(&self) -> bool {
        self.symbols.iter().any(|s| !s.is_certain())
    }

    /// The type after education: every uncertain position becomes certain
    /// with its orientation kept. Only meaningful for four-letter types.
    pub fn educated(&self) -> Self {
        let symbols = self
            .symbols
            .iter()
            .map(|s| match s {
                Symbol::PlusUncertain => Symbol::PlusCertain,
                Symbol::MinusUncertain => Symbol::MinusCertain,
                other => *other,
            })
            .collect();
        Self { symbols }
    }

    /// Type-level willingness: no certain disagreement and strictly more
    /// certainty on the receiving side.
    pub fn willing_to(&self, other: &AgentType) -> bool {
        self.certainty() < other.certainty()
            && self.symbols.iter().zip(&other.symbols).all(|pair| {
                !matches!(
                    pair,
                    (Symbol::PlusCertain, Symbol::MinusCertain) | (Symbol::MinusCertain, Symbol::PlusCertain)
                )
            })
    }
}

impl fmt::Display for AgentType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.symbols.iter().try_for_each(|s| write!(f, "{}", s.letter()))
    }
}

/// Occupied types with their members in agent order.
pub type TypeCensus = BTreeMap<AgentType, Vec<usize>>;

pub fn type_census(instance: &VotingInstance, alphabet: Alphabet) -> TypeCensus {
    let mut census = TypeCensus::new();
    for (i, b) in instance.beliefs().iter().enumerate() {
        census.entry(AgentType::of(b, instance.m(), alphabet)).or_default().push(i);
    }
    census
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::fixtures::example_one;
    use crate::set::ProposalSet;

    #[test]
    fn example_one_types() {
        let inst = example_one();
        let three = type_census(&inst, Alphabet::Three);
        assert_eq!(three.len(), 3);
        assert!(three.values().all(|members| members.len() == 1));
        let names: Vec<String> =
            inst.beliefs().iter().map(|b| AgentType::of(b, 5, Alphabet::Three).to_string()).collect();
        assert_eq!(names, ["NUPUN", "UPPNN", "PPPNN"]);
        let four: Vec<String> =
            inst.beliefs().iter().map(|b| AgentType::of(b, 5, Alphabet::Four).to_string()).collect();
        assert_eq!(four, ["NpPpN", "nPPNN", "PPPNN"]);
    }

    #[test]
    fn identical_agents_share_a_type() {
        let m = 3;
        let b = Belief::with_unknown(ProposalSet::from([0]), &ProposalSet::from([1]), m);
        let inst = VotingInstance::new(m, vec![b; 4]).unwrap();
        let census = type_census(&inst, Alphabet::Four);
        assert_eq!(census.len(), 1);
        assert_eq!(census.values().next().unwrap(), &vec![0, 1, 2, 3]);
    }

    #[test]
    fn four_letters_refine_three() {
        let inst = example_one();
        let four = type_census(&inst, Alphabet::Four);
        let three = type_census(&inst, Alphabet::Three);
        let mut merged = TypeCensus::new();
        for (t, members) in four {
            let projected = AgentType {
                symbols: t.symbols.iter().map(|s| if s.is_certain() { *s } else { Symbol::Uncertain }).collect(),
            };
            merged.entry(projected).or_default().extend(members);
        }
        assert_eq!(merged, three);
    }

    #[test]
    fn educated_type() {
        let inst = example_one();
        let t = AgentType::of(inst.belief(0), 5, Alphabet::Four);
        assert_eq!(t.educated().to_string(), "NPPPN");
        assert!(!t.educated().is_confused());
    }
}
