//! A compact set of proposal indices.

use std::fmt;

const WORD_BITS: usize = 64;

/// Set of proposal indices stored as a trimmed bit vector.
///
/// Trailing zero words are always trimmed, so two sets holding the same
/// indices compare equal regardless of how they were built.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProposalSet {
    words: Vec<u64>,
}

impl ProposalSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// The set `{0, .., m-1}`.
    pub fn full(m: usize) -> Self {
        Self::range(0, m)
    }

    /// The half-open interval `[start, end)`; empty when `start >= end`.
    pub fn range(start: usize, end: usize) -> Self {
        let mut set = Self::new();
        for p in start..end {
            set.insert(p);
        }
        set
    }

    pub fn insert(&mut self, p: usize) {
        let (w, b) = (p / WORD_BITS, p % WORD_BITS);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << b;
    }

    pub fn remove(&mut self, p: usize) {
        let (w, b) = (p / WORD_BITS, p % WORD_BITS);
        if w < self.words.len() {
            self.words[w] &= !(1 << b);
            self.trim();
        }
    }

    pub fn contains(&self, p: usize) -> bool {
        let (w, b) = (p / WORD_BITS, p % WORD_BITS);
        self.words.get(w).is_some_and(|word| word & (1 << b) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Largest index plus one, or zero for the empty set.
    pub fn bound(&self) -> usize {
        match self.words.last() {
            None => 0,
            Some(&w) => (self.words.len() - 1) * WORD_BITS + (WORD_BITS - w.leading_zeros() as usize),
        }
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn last(&self) -> Option<usize> {
        self.bound().checked_sub(1)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD_BITS + b)
            })
        })
    }

    pub fn union(&self, other: &Self) -> Self {
        let len = self.words.len().max(other.words.len());
        let words = (0..len).map(|i| self.word(i) | other.word(i)).collect();
        Self::from_words(words)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let len = self.words.len().min(other.words.len());
        let words = (0..len).map(|i| self.word(i) & other.word(i)).collect();
        Self::from_words(words)
    }

    pub fn difference(&self, other: &Self) -> Self {
        let words = (0..self.words.len()).map(|i| self.word(i) & !other.word(i)).collect();
        Self::from_words(words)
    }

    /// `{0..m-1} \ self`.
    pub fn complement(&self, m: usize) -> Self {
        Self::full(m).difference(self)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        (0..self.words.len()).all(|i| self.word(i) & !other.word(i) == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.intersection(other).is_empty()
    }

    /// True when the set is empty or holds every index between its min and max.
    pub fn is_interval(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(lo), Some(hi)) => self.len() == hi - lo + 1,
            _ => true,
        }
    }

    /// Maximal runs of consecutive indices, as inclusive `(lo, hi)` pairs.
    pub fn runs(&self) -> Vec<(usize, usize)> {
        let mut runs: Vec<(usize, usize)> = Vec::new();
        for p in self.iter() {
            match runs.last_mut() {
                Some((_, hi)) if *hi + 1 == p => *hi = p,
                _ => runs.push((p, p)),
            }
        }
        runs
    }

    /// Keeps only the listed positions and renumbers them `0..positions.len()`.
    pub fn project(&self, positions: &[usize]) -> Self {
        positions.iter().enumerate().filter(|&(_, &p)| self.contains(p)).map(|(i, _)| i).collect()
    }

    fn word(&self, i: usize) -> u64 {
        self.words.get(i).copied().unwrap_or(0)
    }

    fn from_words(words: Vec<u64>) -> Self {
        let mut set = Self { words };
        set.trim();
        set
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }
}

impl FromIterator<usize> for ProposalSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = Self::new();
        for p in iter {
            set.insert(p);
        }
        set
    }
}

impl<const N: usize> From<[usize; N]> for ProposalSet {
    fn from(items: [usize; N]) -> Self {
        items.into_iter().collect()
    }
}

impl fmt::Debug for ProposalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trimmed_equality() {
        let mut a = ProposalSet::from([3, 130]);
        a.remove(130);
        assert_eq!(a, ProposalSet::from([3]));
        assert_eq!(a.bound(), 4);
    }

    #[test]
    fn runs_and_intervals() {
        let s = ProposalSet::from([1, 2, 3, 7, 8, 64, 65]);
        assert_eq!(s.runs(), vec![(1, 3), (7, 8), (64, 65)]);
        assert!(!s.is_interval());
        assert!(ProposalSet::range(4, 9).is_interval());
        assert!(ProposalSet::new().is_interval());
    }

    #[test]
    fn set_algebra() {
        let a = ProposalSet::from([0, 1, 2, 70]);
        let b = ProposalSet::from([2, 3, 70]);
        assert_eq!(a.intersection(&b), ProposalSet::from([2, 70]));
        assert_eq!(a.difference(&b), ProposalSet::from([0, 1]));
        assert_eq!(a.union(&b).len(), 5);
        assert_eq!(a.complement(4), ProposalSet::from([3]));
        assert!(ProposalSet::from([2]).is_subset(&b));
        assert_eq!(a.project(&[2, 3, 70]), ProposalSet::from([0, 2]));
    }
}
