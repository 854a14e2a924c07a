use super::relation::{Carrier, RelationKind, RelationTable};
use crate::lattice::{default_max_iter, kleene_fix, Computed};
use crate::lts::{Mts, StateId};

/// Every move of `x` is matched by an equally labelled move of `y` into `r`.
fn transfers(m: &Mts, r: &RelationTable, x: StateId, y: StateId) -> bool {
    m.moves(x).iter().all(|&(a, x2)| {
        m.moves(y)
            .iter()
            .any(|&(b, y2)| a == b && r.related(x2, y2))
    })
}

fn inverse_transfers(m: &Mts, r: &RelationTable, x: StateId, y: StateId) -> bool {
    m.moves(y).iter().all(|&(b, y2)| {
        m.moves(x)
            .iter()
            .any(|&(a, x2)| a == b && r.related(x2, y2))
    })
}

/// One application of the two-sided transfer condition.
pub fn bisim_step(m: &Mts, r: &RelationTable) -> RelationTable {
    RelationTable::from_fn(Carrier::States(m.num_states()), r.kind(), |i, j| {
        let (x, y) = (StateId(i), StateId(j));
        transfers(m, r, x, y) && inverse_transfers(m, r, x, y)
    })
}

/// One application of the one-sided transfer condition.
pub fn sim_step(m: &Mts, r: &RelationTable) -> RelationTable {
    RelationTable::from_fn(Carrier::States(m.num_states()), r.kind(), |i, j| {
        transfers(m, r, StateId(i), StateId(j))
    })
}

/// Applies `step` `k` times to the all-pairs relation.
pub fn iterate_from_top(
    m: &Mts,
    kind: RelationKind,
    step: fn(&Mts, &RelationTable) -> RelationTable,
    k: usize,
) -> RelationTable {
    let mut r = RelationTable::full(Carrier::States(m.num_states()), kind);
    for _ in 0..k {
        r = step(m, &r);
    }
    r
}

fn greatest(
    m: &Mts,
    kind: RelationKind,
    step: fn(&Mts, &RelationTable) -> RelationTable,
    max_iter: Option<usize>,
) -> Computed<RelationTable> {
    let n = m.num_states();
    let bound = default_max_iter(2, n * n);
    let top = RelationTable::full(Carrier::States(n), kind);
    let report = kleene_fix(|r| step(m, r), top, max_iter.unwrap_or(bound));
    Computed {
        stats: report.stats(bound),
        value: report.table,
    }
}

/// Greatest bisimulation, by descending iteration from all pairs.
pub fn bisimilarity(m: &Mts, max_iter: Option<usize>) -> Computed<RelationTable> {
    greatest(m, RelationKind::Equivalence, bisim_step, max_iter)
}

/// Simulation preorder: `(x, y)` is related iff `y` simulates `x`.
pub fn similarity(m: &Mts, max_iter: Option<usize>) -> Computed<RelationTable> {
    greatest(m, RelationKind::Preorder, sim_step, max_iter)
}
