use std::collections::HashMap;
use std::fmt;

use rand::seq::SliceRandom;
use thiserror::Error;

use crate::lts::{Mts, StateId, StateSet};
use crate::random::seeded_rng;

/// A finite family of macro-states closed under every `δ_a[·]`.
#[derive(Clone, PartialEq, Eq)]
pub struct MacroCarrier {
    sets: Vec<StateSet>,
    index: HashMap<StateSet, usize>,
}

impl MacroCarrier {
    /// Every subset of the state space.
    pub fn powerset(m: &Mts) -> Self {
        Self::from_sets(StateSet::all_subsets(m.num_states()))
    }

    /// The macro-states reachable from `seeds` by determinization, including `∅`.
    pub fn reachable<'a, I: IntoIterator<Item = &'a StateSet>>(m: &Mts, seeds: I) -> Self {
        let mut sets: Vec<StateSet> = Vec::new();
        let mut index = HashMap::new();
        let mut push = |s: StateSet, sets: &mut Vec<StateSet>| {
            if !index.contains_key(&s) {
                index.insert(s.clone(), sets.len());
                sets.push(s);
            }
        };
        push(m.empty_set(), &mut sets);
        for s in seeds {
            push(s.clone(), &mut sets);
        }
        let mut i = 0;
        while i < sets.len() {
            let cur = sets[i].clone();
            for a in m.labels() {
                push(m.post(&cur, a), &mut sets);
            }
            i += 1;
        }
        Self::from_sets(sets)
    }

    fn from_sets(sets: Vec<StateSet>) -> Self {
        let index = sets
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        MacroCarrier { sets, index }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[StateSet] {
        &self.sets
    }

    pub fn index_of(&self, s: &StateSet) -> Option<usize> {
        self.index.get(s).copied()
    }
}

impl fmt::Debug for MacroCarrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.sets).finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Carrier {
    States(usize),
    MacroStates(MacroCarrier),
}

impl Carrier {
    pub fn len(&self) -> usize {
        match self {
            Carrier::States(n) => *n,
            Carrier::MacroStates(c) => c.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationKind {
    Plain,
    Preorder,
    Equivalence,
    CongruenceOnPowerset,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditError {
    #[error("not reflexive at {0}")]
    NotReflexive(usize),
    #[error("not transitive: {0} R {1} R {2}")]
    NotTransitive(usize, usize, usize),
    #[error("not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("not closed under unions: ({0},{1}) and ({2},{3})")]
    NotUnionClosed(usize, usize, usize, usize),
    #[error("congruence kind requires a macro-state carrier")]
    WrongCarrier,
}

/// A boolean matrix over states or macro-states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationTable {
    carrier: Carrier,
    kind: RelationKind,
    entries: Vec<bool>,
}

impl RelationTable {
    pub fn from_fn(carrier: Carrier, kind: RelationKind, f: impl Fn(usize, usize) -> bool) -> Self {
        let n = carrier.len();
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        RelationTable {
            carrier,
            kind,
            entries,
        }
    }

    pub fn full(carrier: Carrier, kind: RelationKind) -> Self {
        Self::from_fn(carrier, kind, |_, _| true)
    }

    pub fn from_entries(carrier: Carrier, kind: RelationKind, entries: Vec<bool>) -> Self {
        assert_eq!(entries.len(), carrier.len() * carrier.len());
        RelationTable {
            carrier,
            kind,
            entries,
        }
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn kind(&self) -> RelationKind {
        self.kind
    }

    pub fn with_kind(mut self, kind: RelationKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn size(&self) -> usize {
        self.carrier.len()
    }

    pub fn entries(&self) -> &[bool] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.entries[i * self.size() + j]
    }

    /// Lookup by state ids on a state carrier.
    pub fn related(&self, x: StateId, y: StateId) -> bool {
        self.get(x.0, y.0)
    }

    /// Lookup by macro-states on a macro carrier; `None` if either set is absent.
    pub fn related_sets(&self, a: &StateSet, b: &StateSet) -> Option<bool> {
        match &self.carrier {
            Carrier::MacroStates(c) => Some(self.get(c.index_of(a)?, c.index_of(b)?)),
            Carrier::States(_) => None,
        }
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.size();
        (0..n * n)
            .filter(|&k| self.entries[k])
            .map(move |k| (k / n, k % n))
    }

    pub fn is_subset(&self, other: &RelationTable) -> bool {
        self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(&a, &b)| !a || b)
    }

    pub fn same_pairs(&self, other: &RelationTable) -> bool {
        self.entries == other.entries
    }

    pub fn inverse(&self) -> RelationTable {
        Self::from_fn(self.carrier.clone(), self.kind, |i, j| self.get(j, i))
    }

    pub fn intersection(&self, other: &RelationTable) -> RelationTable {
        assert_eq!(self.size(), other.size());
        Self::from_fn(self.carrier.clone(), self.kind, |i, j| {
            self.get(i, j) && other.get(i, j)
        })
    }

    /// Checks the invariants of `kind`; congruence closure is checked on `samples`
    /// seeded random pairs of related pairs.
    pub fn audit_with(&self, samples: usize, seed: u64) -> Result<(), AuditError> {
        match self.kind {
            RelationKind::Plain => Ok(()),
            RelationKind::Preorder => self.audit_preorder(),
            RelationKind::Equivalence => {
                self.audit_preorder()?;
                self.audit_symmetric()
            }
            RelationKind::CongruenceOnPowerset => {
                let Carrier::MacroStates(c) = &self.carrier else {
                    return Err(AuditError::WrongCarrier);
                };
                self.audit_preorder()?;
                self.audit_symmetric()?;
                let pairs: Vec<(usize, usize)> = self.pairs().collect();
                let mut rng = seeded_rng(seed);
                for _ in 0..samples.min(pairs.len() * pairs.len()) {
                    let (&(i, j), &(k, l)) = (
                        pairs.choose(&mut rng).expect("nonempty"),
                        pairs.choose(&mut rng).expect("nonempty"),
                    );
                    let u1 = c.sets()[i].union(&c.sets()[k]);
                    let u2 = c.sets()[j].union(&c.sets()[l]);
                    if let (Some(a), Some(b)) = (c.index_of(&u1), c.index_of(&u2)) {
                        if !self.get(a, b) {
                            return Err(AuditError::NotUnionClosed(i, j, k, l));
                        }
                    }
                }
                Ok(())
            }
        }
    }

    pub fn audit(&self) -> Result<(), AuditError> {
        self.audit_with(256, 0)
    }

    fn audit_preorder(&self) -> Result<(), AuditError> {
        let n = self.size();
        if let Some(i) = (0..n).find(|&i| !self.get(i, i)) {
            return Err(AuditError::NotReflexive(i));
        }
        for i in 0..n {
            for j in (0..n).filter(|&j| self.get(i, j)) {
                if let Some(k) = (0..n).find(|&k| self.get(j, k) && !self.get(i, k)) {
                    return Err(AuditError::NotTransitive(i, j, k));
                }
            }
        }
        Ok(())
    }

    fn audit_symmetric(&self) -> Result<(), AuditError> {
        let n = self.size();
        for i in 0..n {
            for j in 0..n {
                if self.get(i, j) != self.get(j, i) {
                    return Err(AuditError::NotSymmetric(i, j));
                }
            }
        }
        Ok(())
    }
}
