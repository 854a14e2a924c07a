use std::collections::HashMap;

use super::relation::{Carrier, MacroCarrier, RelationKind, RelationTable};
use crate::lattice::{default_max_iter, kleene_fix, lift_related, Computed, LiftMode};
use crate::lts::{Mts, StateId, StateSet};

/// One application of the trace behaviour function on a δ-closed macro carrier:
/// `X1 R' X2` iff both or neither are empty and `δ_a[X1] R δ_a[X2]` for every `a`.
pub fn trace_step(m: &Mts, r: &RelationTable) -> RelationTable {
    let Carrier::MacroStates(c) = r.carrier() else {
        panic!("trace_step requires a macro-state carrier");
    };
    let posts: Vec<Vec<usize>> = c
        .sets()
        .iter()
        .map(|s| {
            m.labels()
                .map(|a| {
                    c.index_of(&m.post(s, a))
                        .expect("carrier is closed under δ_a")
                })
                .collect()
        })
        .collect();
    RelationTable::from_fn(r.carrier().clone(), r.kind(), |i, j| {
        c.sets()[i].is_empty() == c.sets()[j].is_empty()
            && posts[i].iter().zip(&posts[j]).all(|(&p, &q)| r.get(p, q))
    })
}

/// `k` applications of [`trace_step`] to the all-pairs relation on `carrier`.
pub fn trace_iterate(m: &Mts, carrier: MacroCarrier, k: usize) -> RelationTable {
    let mut r = RelationTable::full(
        Carrier::MacroStates(carrier),
        RelationKind::CongruenceOnPowerset,
    );
    for _ in 0..k {
        r = trace_step(m, &r);
    }
    r
}

/// Pairs of macro-states reachable from a root pair by synchronous `δ_a` steps.
struct PairGraph {
    pairs: Vec<(StateSet, StateSet)>,
    succ: Vec<Vec<usize>>,
}

impl PairGraph {
    fn explore(m: &Mts, x1: &StateSet, x2: &StateSet) -> Self {
        let mut pairs = vec![(x1.clone(), x2.clone())];
        let mut index: HashMap<(StateSet, StateSet), usize> = HashMap::new();
        index.insert(pairs[0].clone(), 0);
        let mut succ = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (a1, a2) = pairs[i].clone();
            let mut row = Vec::with_capacity(m.num_labels());
            for a in m.labels() {
                let next = (m.post(&a1, a), m.post(&a2, a));
                let id = *index.entry(next.clone()).or_insert_with(|| {
                    pairs.push(next);
                    pairs.len() - 1
                });
                row.push(id);
            }
            succ.push(row);
            i += 1;
        }
        PairGraph { pairs, succ }
    }

    /// Greatest fixpoint of `emptiness ∧ base ∧ ∀a succ_a related`, read at the root.
    fn gfp(
        &self,
        base: impl Fn(&StateSet, &StateSet) -> bool,
        max_iter: Option<usize>,
    ) -> Computed<bool> {
        let local: Vec<bool> = self
            .pairs
            .iter()
            .map(|(a, b)| a.is_empty() == b.is_empty() && base(a, b))
            .collect();
        let bound = default_max_iter(2, self.pairs.len());
        let report = kleene_fix(
            |v: &Vec<bool>| {
                (0..v.len())
                    .map(|p| local[p] && self.succ[p].iter().all(|&q| v[q]))
                    .collect()
            },
            vec![true; self.pairs.len()],
            max_iter.unwrap_or(bound),
        );
        Computed {
            value: report.table[0],
            stats: report.stats(bound),
        }
    }
}

/// Trace equivalence of two macro-states, decided on the reachable pair graph.
pub fn trace_equivalent(
    m: &Mts,
    x1: &StateSet,
    x2: &StateSet,
    max_iter: Option<usize>,
) -> Computed<bool> {
    PairGraph::explore(m, x1, x2).gfp(|_, _| true, max_iter)
}

/// The decorated trace relation induced by the state preorder `r0`: every trace
/// from either side is matched by the same trace from the other side with
/// endpoints related by `r0` (from the matched side towards the matching side).
pub fn decorated_trace_related(
    m: &Mts,
    x1: &StateSet,
    x2: &StateSet,
    r0: &RelationTable,
    max_iter: Option<usize>,
) -> Computed<bool> {
    let lifted = |a: &StateSet, b: &StateSet| {
        let (ua, ub): (Vec<StateId>, Vec<StateId>) = (a.iter().collect(), b.iter().collect());
        lift_related(&ua, &ub, |&p, &q| r0.related(p, q), LiftMode::Symmetric)
    };
    PairGraph::explore(m, x1, x2).gfp(lifted, max_iter)
}
