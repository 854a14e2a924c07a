//! Brute-force reference computations. These use only the model and the
//! lattice primitives, never the fixpoint modules they are compared against.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::lattice::{hausdorff, LiftMode, UnitValue};
use crate::lts::{trace_distance, Mts, StateId, StateSet, Trace};
use crate::qualitative::RelationTable;

pub const MAX_STATES: usize = 8;
pub const MAX_LEN: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{0} states exceeds the oracle limit of {MAX_STATES}")]
    TooManyStates(usize),
    #[error("trace length {0} exceeds the oracle limit of {MAX_LEN}")]
    TooLong(usize),
}

/// An oracle answer, flagged as exact or as a bounded approximation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleAnswer<T> {
    pub value: T,
    /// False when traces longer than `max_len` exist from the arguments.
    pub exact: bool,
}

fn guard(m: &Mts, max_len: usize) -> Result<(), OracleError> {
    if m.num_states() > MAX_STATES {
        return Err(OracleError::TooManyStates(m.num_states()));
    }
    if max_len > MAX_LEN {
        return Err(OracleError::TooLong(max_len));
    }
    Ok(())
}

/// Every path of length at most `max_len` from `x`, as (trace, endpoint).
fn paths_from(m: &Mts, x: StateId, max_len: usize, out: &mut BTreeMap<Trace, BTreeSet<StateId>>) {
    let mut stack = vec![(Trace::empty(), x)];
    while let Some((trace, at)) = stack.pop() {
        if trace.len() < max_len {
            for &(a, t) in m.moves(at) {
                stack.push((trace.extended(a), t));
            }
        }
        out.entry(trace).or_default().insert(at);
    }
}

fn endpoints(m: &Mts, set: &StateSet, max_len: usize) -> BTreeMap<Trace, BTreeSet<StateId>> {
    let mut out = BTreeMap::new();
    for x in set.iter() {
        paths_from(m, x, max_len, &mut out);
    }
    out
}

/// Whether some path from `set` is longer than `max_len`.
fn truncated(m: &Mts, set: &StateSet, max_len: usize) -> bool {
    let mut frontier: Vec<StateId> = set.iter().collect();
    for _ in 0..max_len {
        frontier = frontier
            .iter()
            .flat_map(|&x| m.moves(x).iter().map(|&(_, t)| t))
            .collect();
        frontier.sort();
        frontier.dedup();
    }
    frontier.iter().any(|&x| !m.moves(x).is_empty())
}

/// Hausdorff distance between the bounded trace sets of `X1` and `X2` under `d_Tr`.
pub fn trace_hausdorff_oracle(
    m: &Mts,
    x1: &StateSet,
    x2: &StateSet,
    max_len: usize,
    mode: LiftMode,
) -> Result<OracleAnswer<UnitValue>, OracleError> {
    guard(m, max_len)?;
    let t1: Vec<Trace> = endpoints(m, x1, max_len).into_keys().collect();
    let t2: Vec<Trace> = endpoints(m, x2, max_len).into_keys().collect();
    let value = hausdorff(&t1, &t2, |s, t| trace_distance(m, s, t), mode);
    let exact = !truncated(m, x1, max_len) && !truncated(m, x2, max_len);
    Ok(OracleAnswer { value, exact })
}

/// Direct check that every trace from either side is matched by the same trace
/// from the other side, with endpoints related by `r0` from the matched side
/// to the matching side.
pub fn omega_oracle(
    m: &Mts,
    x1: &StateSet,
    x2: &StateSet,
    r0: &RelationTable,
    max_len: usize,
) -> Result<OracleAnswer<bool>, OracleError> {
    guard(m, max_len)?;
    let e1 = endpoints(m, x1, max_len);
    let e2 = endpoints(m, x2, max_len);
    let covered = |from: &BTreeMap<Trace, BTreeSet<StateId>>,
                   to: &BTreeMap<Trace, BTreeSet<StateId>>| {
        from.iter().all(|(trace, ps)| match to.get(trace) {
            Some(qs) => ps.iter().all(|&p| qs.iter().any(|&q| r0.related(p, q))),
            None => false,
        })
    };
    let value = covered(&e1, &e2) && covered(&e2, &e1);
    let exact = !truncated(m, x1, max_len) && !truncated(m, x2, max_len);
    Ok(OracleAnswer { value, exact })
}
