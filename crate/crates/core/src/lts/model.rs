use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use super::StateSet;
use crate::lattice::UnitValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelId(pub usize);

/// A transition viewed from its source: the label and the target.
pub type Move = (LabelId, StateId);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("conflicting metric entries for ({0}, {1}): {2} vs {3}")]
    ConflictingEntry(String, String, UnitValue, UnitValue),
    #[error("distance between distinct labels `{0}` and `{1}` is zero")]
    ZeroDistance(String, String),
    #[error("{0}")]
    Triangle(Box<TriangleViolation>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("triangle inequality fails: d({a},{c}) = {ac} > d({a},{b}) + d({b},{c}) = {ab} + {bc}")]
pub struct TriangleViolation {
    pub a: String,
    pub b: String,
    pub c: String,
    pub ac: UnitValue,
    pub ab: UnitValue,
    pub bc: UnitValue,
}

/// Symmetric label distance matrix satisfying the metric axioms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabelMetric {
    size: usize,
    entries: Vec<UnitValue>,
}

impl LabelMetric {
    /// The discrete metric on `size` labels.
    pub fn discrete(size: usize) -> Self {
        let entries = (0..size * size)
            .map(|i| {
                if i / size == i % size {
                    UnitValue::ZERO
                } else {
                    UnitValue::ONE
                }
            })
            .collect();
        LabelMetric { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, a: LabelId, b: LabelId) -> UnitValue {
        self.entries[a.0 * self.size + b.0]
    }

    /// Sets both `d(a,b)` and `d(b,a)`; the diagonal stays 0.
    pub fn set(&mut self, a: LabelId, b: LabelId, value: UnitValue) {
        if a != b {
            self.entries[a.0 * self.size + b.0] = value;
            self.entries[b.0 * self.size + a.0] = value;
        }
    }

    pub fn is_discrete(&self) -> bool {
        *self == Self::discrete(self.size)
    }

    /// All distinct entries, including 0.
    pub fn values(&self) -> BTreeSet<UnitValue> {
        self.entries
            .iter()
            .copied()
            .chain([UnitValue::ZERO])
            .collect()
    }

    /// Checks positivity off the diagonal and the triangle inequality.
    pub fn validate(&self, names: &[String]) -> Result<(), ModelError> {
        let n = self.size;
        for a in 0..n {
            for b in 0..n {
                if a != b && self.get(LabelId(a), LabelId(b)).is_zero() {
                    return Err(ModelError::ZeroDistance(names[a].clone(), names[b].clone()));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (ab, bc, ac) = (
                        self.get(LabelId(a), LabelId(b)),
                        self.get(LabelId(b), LabelId(c)),
                        self.get(LabelId(a), LabelId(c)),
                    );
                    if ac > ab.oplus(bc) {
                        return Err(ModelError::Triangle(Box::new(TriangleViolation {
                            a: names[a].clone(),
                            b: names[b].clone(),
                            c: names[c].clone(),
                            ac,
                            ab,
                            bc,
                        })));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A finite metric labelled transition system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mts {
    state_names: Vec<String>,
    label_names: Vec<String>,
    metric: LabelMetric,
    /// Outgoing moves per state, sorted and deduplicated.
    outgoing: Vec<Vec<Move>>,
}

impl Mts {
    pub fn new(
        state_names: Vec<String>,
        label_names: Vec<String>,
        metric: LabelMetric,
        transitions: impl IntoIterator<Item = (StateId, LabelId, StateId)>,
    ) -> Result<Self, ModelError> {
        check_unique(&state_names, ModelError::DuplicateState)?;
        check_unique(&label_names, ModelError::DuplicateLabel)?;
        assert_eq!(
            metric.size(),
            label_names.len(),
            "metric size must match the alphabet"
        );
        metric.validate(&label_names)?;
        let mut outgoing = vec![Vec::new(); state_names.len()];
        for (s, a, t) in transitions {
            if s.0 >= state_names.len() {
                return Err(ModelError::UnknownState(format!("#{}", s.0)));
            }
            if t.0 >= state_names.len() {
                return Err(ModelError::UnknownState(format!("#{}", t.0)));
            }
            if a.0 >= label_names.len() {
                return Err(ModelError::UnknownLabel(format!("#{}", a.0)));
            }
            outgoing[s.0].push((a, t));
        }
        for moves in &mut outgoing {
            moves.sort();
            moves.dedup();
        }
        Ok(Mts {
            state_names,
            label_names,
            metric,
            outgoing,
        })
    }

    pub fn num_states(&self) -> usize {
        self.state_names.len()
    }

    pub fn num_labels(&self) -> usize {
        self.label_names.len()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        (0..self.num_states()).map(StateId)
    }

    pub fn labels(&self) -> impl Iterator<Item = LabelId> {
        (0..self.num_labels()).map(LabelId)
    }

    pub fn state_name(&self, x: StateId) -> &str {
        &self.state_names[x.0]
    }

    pub fn label_name(&self, a: LabelId) -> &str {
        &self.label_names[a.0]
    }

    pub fn state_names(&self) -> &[String] {
        &self.state_names
    }

    pub fn label_names(&self) -> &[String] {
        &self.label_names
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.state_names.iter().position(|s| s == name).map(StateId)
    }

    pub fn label_id(&self, name: &str) -> Option<LabelId> {
        self.label_names.iter().position(|s| s == name).map(LabelId)
    }

    pub fn metric(&self) -> &LabelMetric {
        &self.metric
    }

    pub fn d(&self, a: LabelId, b: LabelId) -> UnitValue {
        self.metric.get(a, b)
    }

    /// `δ(x)`.
    pub fn moves(&self, x: StateId) -> &[Move] {
        &self.outgoing[x.0]
    }

    pub fn transitions(&self) -> impl Iterator<Item = (StateId, LabelId, StateId)> + '_ {
        self.states()
            .flat_map(move |s| self.moves(s).iter().map(move |&(a, t)| (s, a, t)))
    }

    pub fn empty_set(&self) -> StateSet {
        StateSet::empty(self.num_states())
    }

    pub fn full_set(&self) -> StateSet {
        StateSet::full(self.num_states())
    }

    pub fn singleton(&self, x: StateId) -> StateSet {
        StateSet::singleton(self.num_states(), x)
    }

    /// `δ[X]`, or `δ_a[X]` as (label, target) pairs when `label` is given.
    pub fn successors(&self, set: &StateSet, label: Option<LabelId>) -> Vec<Move> {
        let mut out: Vec<Move> = set
            .iter()
            .flat_map(|x| self.moves(x).iter().copied())
            .filter(|&(a, _)| label.is_none_or(|l| l == a))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Targets of `δ_a[X]`.
    pub fn post(&self, set: &StateSet, label: LabelId) -> StateSet {
        let mut out = self.empty_set();
        for x in set.iter() {
            for &(a, t) in self.moves(x) {
                if a == label {
                    out.insert(t);
                }
            }
        }
        out
    }

    /// `lab(δ(x))`.
    pub fn enabled(&self, x: StateId) -> BTreeSet<LabelId> {
        lab(self.moves(x))
    }

    pub fn is_deadlocked(&self, x: StateId) -> bool {
        self.moves(x).is_empty()
    }

    /// `hat-δ_σ[X]`.
    pub fn reach(&self, set: &StateSet, trace: &Trace) -> StateSet {
        trace
            .0
            .iter()
            .fold(set.clone(), |cur, &a| self.post(&cur, a))
    }

    pub fn is_acyclic(&self) -> bool {
        self.longest_path().is_some()
    }

    /// Length of the longest path, or `None` if the system has a cycle.
    pub fn longest_path(&self) -> Option<usize> {
        let depth = self.depths()?;
        Some(depth.into_iter().max().unwrap_or(0))
    }

    /// Longest path length starting in each state; `None` on cycles.
    pub fn depths(&self) -> Option<Vec<usize>> {
        // colour: 0 unvisited, 1 on stack, 2 done
        fn visit(m: &Mts, x: usize, colour: &mut [u8], depth: &mut [usize]) -> bool {
            colour[x] = 1;
            let mut best = 0;
            for &(_, t) in m.moves(StateId(x)) {
                let c = colour[t.0];
                if c == 1 || (c == 0 && !visit(m, t.0, colour, depth)) {
                    return false;
                }
                best = best.max(depth[t.0] + 1);
            }
            depth[x] = best;
            colour[x] = 2;
            true
        }
        let n = self.num_states();
        let mut colour = vec![0u8; n];
        let mut depth = vec![0usize; n];
        for x in 0..n {
            if colour[x] == 0 && !visit(self, x, &mut colour, &mut depth) {
                return None;
            }
        }
        Some(depth)
    }

    /// Distinct values of the label metric together with 0 and 1.
    pub fn metric_values(&self) -> BTreeSet<UnitValue> {
        let mut v = self.metric.values();
        v.insert(UnitValue::ONE);
        v
    }
}

/// `lab(Δ)`.
pub fn lab(moves: &[Move]) -> BTreeSet<LabelId> {
    moves.iter().map(|&(a, _)| a).collect()
}

/// `ter(Δ)` over a carrier of `universe` states.
pub fn ter(universe: usize, moves: &[Move]) -> StateSet {
    StateSet::from_ids(universe, moves.iter().map(|&(_, t)| t))
}

fn check_unique(names: &[String], err: fn(String) -> ModelError) -> Result<(), ModelError> {
    let mut seen = HashMap::new();
    for n in names {
        if seen.insert(n.as_str(), ()).is_some() {
            return Err(err(n.clone()));
        }
    }
    Ok(())
}

/// A finite sequence of labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Trace(pub Vec<LabelId>);

impl Trace {
    pub fn empty() -> Self {
        Trace(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn extended(&self, a: LabelId) -> Trace {
        let mut v = self.0.clone();
        v.push(a);
        Trace(v)
    }

    pub fn concat(&self, other: &Trace) -> Trace {
        Trace(self.0.iter().chain(&other.0).copied().collect())
    }
}

/// Builder keyed by names, for tests and generated models.
#[derive(Debug, Clone, Default)]
pub struct MtsBuilder {
    states: Vec<String>,
    labels: Vec<String>,
    metric: Vec<(String, String, UnitValue)>,
    transitions: Vec<(String, String, String)>,
}

impl MtsBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn states<S: AsRef<str>>(mut self, names: &[S]) -> Self {
        self.states
            .extend(names.iter().map(|s| s.as_ref().to_string()));
        self
    }

    pub fn labels<S: AsRef<str>>(mut self, names: &[S]) -> Self {
        self.labels
            .extend(names.iter().map(|s| s.as_ref().to_string()));
        self
    }

    pub fn metric(mut self, a: &str, b: &str, value: UnitValue) -> Self {
        self.metric.push((a.to_string(), b.to_string(), value));
        self
    }

    pub fn trans(mut self, s: &str, a: &str, t: &str) -> Self {
        self.transitions
            .push((s.to_string(), a.to_string(), t.to_string()));
        self
    }

    pub fn build(self) -> Result<Mts, ModelError> {
        check_unique(&self.states, ModelError::DuplicateState)?;
        check_unique(&self.labels, ModelError::DuplicateLabel)?;
        let sid = |n: &str| {
            self.states
                .iter()
                .position(|s| s == n)
                .map(StateId)
                .ok_or_else(|| ModelError::UnknownState(n.to_string()))
        };
        let lid = |n: &str| {
            self.labels
                .iter()
                .position(|s| s == n)
                .map(LabelId)
                .ok_or_else(|| ModelError::UnknownLabel(n.to_string()))
        };
        let mut metric = LabelMetric::discrete(self.labels.len());
        let mut given: HashMap<(LabelId, LabelId), UnitValue> = HashMap::new();
        for (a, b, v) in &self.metric {
            let (a, b) = (lid(a)?, lid(b)?);
            if a == b {
                continue;
            }
            let key = (a.min(b), a.max(b));
            if let Some(&old) = given.get(&key) {
                if old != *v {
                    return Err(ModelError::ConflictingEntry(
                        self.labels[key.0 .0].clone(),
                        self.labels[key.1 .0].clone(),
                        old,
                        *v,
                    ));
                }
            }
            given.insert(key, *v);
            metric.set(a, b, *v);
        }
        let transitions = self
            .transitions
            .iter()
            .map(|(s, a, t)| Ok((sid(s)?, lid(a)?, sid(t)?)))
            .collect::<Result<Vec<_>, ModelError>>()?;
        Mts::new(self.states, self.labels, metric, transitions)
    }
}
