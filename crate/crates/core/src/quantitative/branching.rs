use super::table::DirectedMetricTable;
use crate::lattice::{default_max_iter, directed_hausdorff, kleene_fix, Computed, UnitValue};
use crate::lts::{Move, Mts, StateId};

/// Directed Hausdorff distance from `δ(x)` to `δ(y)` under `max(d_A, d)`.
fn lifted(m: &Mts, d: &[UnitValue], x: StateId, y: StateId) -> UnitValue {
    let n = m.num_states();
    directed_hausdorff(
        m.moves(x),
        m.moves(y),
        |&(a, x2): &Move, &(b, y2): &Move| m.d(a, b).join(d[x2.0 * n + y2.0]),
    )
}

pub fn bisim_metric_step(m: &Mts, d: &[UnitValue]) -> Vec<UnitValue> {
    let n = m.num_states();
    (0..n * n)
        .map(|k| {
            let (x, y) = (StateId(k / n), StateId(k % n));
            lifted(m, d, x, y).join(lifted(m, d, y, x))
        })
        .collect()
}

pub fn sim_metric_step(m: &Mts, d: &[UnitValue]) -> Vec<UnitValue> {
    let n = m.num_states();
    (0..n * n)
        .map(|k| lifted(m, d, StateId(k / n), StateId(k % n)))
        .collect()
}

fn least(
    m: &Mts,
    symmetric: bool,
    step: fn(&Mts, &[UnitValue]) -> Vec<UnitValue>,
    max_iter: Option<usize>,
) -> Computed<DirectedMetricTable> {
    let n = m.num_states();
    let bound = default_max_iter(m.metric_values().len(), n * n);
    let report = kleene_fix(
        |d: &Vec<UnitValue>| step(m, d),
        vec![UnitValue::ZERO; n * n],
        max_iter.unwrap_or(bound),
    );
    Computed {
        stats: report.stats(bound),
        value: DirectedMetricTable::from_entries(n, symmetric, report.table),
    }
}

/// Least fixpoint of the symmetric Hausdorff lifting of `max(d_A, d)`.
pub fn bisim_metric(m: &Mts, max_iter: Option<usize>) -> Computed<DirectedMetricTable> {
    least(m, true, bisim_metric_step, max_iter)
}

/// Least fixpoint of the directed Hausdorff lifting of `max(d_A, d)`.
pub fn dir_sim_metric(m: &Mts, max_iter: Option<usize>) -> Computed<DirectedMetricTable> {
    least(m, false, sim_metric_step, max_iter)
}
