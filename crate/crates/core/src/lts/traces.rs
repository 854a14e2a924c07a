use std::collections::BTreeMap;

use super::{Mts, StateSet, Trace};
use crate::lattice::UnitValue;

/// All traces of length at most `max_len` enabled from `set`, each with `hat-δ_σ[set]`.
///
/// The result is prefix-closed and ordered by trace. An empty `set` has no traces.
pub fn bounded_traces(m: &Mts, set: &StateSet, max_len: usize) -> BTreeMap<Trace, StateSet> {
    let mut out = BTreeMap::new();
    if set.is_empty() {
        return out;
    }
    let mut frontier = vec![(Trace::empty(), set.clone())];
    while let Some((trace, reached)) = frontier.pop() {
        if trace.len() < max_len {
            for a in m.labels() {
                let next = m.post(&reached, a);
                if !next.is_empty() {
                    frontier.push((trace.extended(a), next));
                }
            }
        }
        out.insert(trace, reached);
    }
    out
}

/// `d_Tr`: 1 on a length mismatch, otherwise the pointwise maximum of `d_A`.
pub fn trace_distance(m: &Mts, sigma: &Trace, tau: &Trace) -> UnitValue {
    if sigma.len() != tau.len() {
        return UnitValue::ONE;
    }
    UnitValue::sup(sigma.0.iter().zip(&tau.0).map(|(&a, &b)| m.d(a, b)))
}
