use std::collections::BTreeSet;

use super::table::DirectedMetricTable;
use crate::lattice::UnitValue;
use crate::lts::{bounded_traces, trace_distance, Mts, StateId, StateSet, Trace};

/// Every `(σ, x')` with `x'` reached from `set` along a trace of length at most `max_len`.
fn endpoints(m: &Mts, set: &StateSet, max_len: usize) -> Vec<(Trace, StateId)> {
    bounded_traces(m, set, max_len)
        .into_iter()
        .flat_map(|(t, reached)| {
            reached
                .iter()
                .map(move |x| (t.clone(), x))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// The least candidate `ε` such that every trace `x1 -σ-> x1'` from `X1` is answered
/// by some `x2 -τ-> x2'` from `X2` with `d_Tr(σ, τ) <= ε` and `d0(x1', x2') <= ε`.
///
/// Candidates are the label distances, the `d0` entries, 0 and 1. When no
/// candidate works (nonempty `X1`, empty `X2`) the result is 1. Exact when the
/// system is acyclic from `X1 ∪ X2` and `max_len` covers the longest path.
pub fn eps_characterization(
    m: &Mts,
    x1: &StateSet,
    x2: &StateSet,
    d0: Option<&DirectedMetricTable>,
    max_len: usize,
) -> UnitValue {
    let base = |a: StateId, b: StateId| d0.map_or(UnitValue::ZERO, |d| d.get(a, b));
    let mut candidates: BTreeSet<UnitValue> = m.metric_values();
    if let Some(d) = d0 {
        candidates.extend(d.values());
    }
    let left = endpoints(m, x1, max_len);
    let right = endpoints(m, x2, max_len);
    let answered = |eps: UnitValue| {
        left.iter().all(|(sigma, p)| {
            right
                .iter()
                .any(|(tau, q)| trace_distance(m, sigma, tau) <= eps && base(*p, *q) <= eps)
        })
    };
    candidates
        .into_iter()
        .find(|&eps| answered(eps))
        .unwrap_or(UnitValue::ONE)
}
