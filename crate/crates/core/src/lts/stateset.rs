use std::fmt;

use super::StateId;

const WORD: usize = 64;

/// A subset of a fixed carrier `0..universe`, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet {
    universe: usize,
    words: Vec<u64>,
}

impl StateSet {
    pub fn empty(universe: usize) -> Self {
        StateSet {
            universe,
            words: vec![0; universe.div_ceil(WORD)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for i in 0..universe {
            s.insert(StateId(i));
        }
        s
    }

    pub fn singleton(universe: usize, x: StateId) -> Self {
        let mut s = Self::empty(universe);
        s.insert(x);
        s
    }

    pub fn from_ids<I: IntoIterator<Item = StateId>>(universe: usize, ids: I) -> Self {
        let mut s = Self::empty(universe);
        for x in ids {
            s.insert(x);
        }
        s
    }

    /// Decodes bit `i` of `mask` as membership of state `i`.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(universe <= WORD);
        let mut s = Self::empty(universe);
        if universe > 0 {
            let keep = if universe == WORD {
                u64::MAX
            } else {
                (1u64 << universe) - 1
            };
            s.words[0] = mask & keep;
        }
        s
    }

    /// All `2^universe` subsets in mask order.
    pub fn all_subsets(universe: usize) -> Vec<StateSet> {
        assert!(universe < 24, "powerset enumeration is exponential");
        (0..1u64 << universe)
            .map(|m| Self::from_mask(universe, m))
            .collect()
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, x: StateId) {
        assert!(x.0 < self.universe, "state {} outside carrier", x.0);
        self.words[x.0 / WORD] |= 1 << (x.0 % WORD);
    }

    pub fn remove(&mut self, x: StateId) {
        if x.0 < self.universe {
            self.words[x.0 / WORD] &= !(1 << (x.0 % WORD));
        }
    }

    pub fn contains(&self, x: StateId) -> bool {
        x.0 < self.universe && self.words[x.0 / WORD] >> (x.0 % WORD) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.universe)
            .map(StateId)
            .filter(|&x| self.contains(x))
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &StateSet) -> StateSet {
        self.zip(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &StateSet) -> StateSet {
        self.zip(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> StateSet {
        Self::full(self.universe).difference(self)
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.difference(other).is_empty()
    }

    pub fn intersects(&self, other: &StateSet) -> bool {
        !self.intersection(other).is_empty()
    }

    fn zip(&self, other: &StateSet, f: impl Fn(u64, u64) -> u64) -> StateSet {
        assert_eq!(
            self.universe, other.universe,
            "state sets over different carriers"
        );
        StateSet {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|x| x.0)).finish()
    }
}
