use std::fmt;
use std::str::FromStr;

use super::relation::{Carrier, RelationKind, RelationTable};
use super::trace::trace_equivalent;
use crate::lattice::{Computed, FixpointStats};
use crate::lts::{Mts, StateId};

/// Endpoint decorations for trace semantics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DecoratedKind {
    Completed,
    Failure,
    Ready,
    PossibleFutures,
}

impl DecoratedKind {
    pub const ALL: [DecoratedKind; 4] = [
        DecoratedKind::Completed,
        DecoratedKind::Failure,
        DecoratedKind::Ready,
        DecoratedKind::PossibleFutures,
    ];
}

impl fmt::Display for DecoratedKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecoratedKind::Completed => "completed",
            DecoratedKind::Failure => "failure",
            DecoratedKind::Ready => "ready",
            DecoratedKind::PossibleFutures => "possible-futures",
        })
    }
}

impl FromStr for DecoratedKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DecoratedKind::ALL
            .into_iter()
            .find(|k| k.to_string() == s)
            .ok_or_else(|| format!("unknown decoration `{s}`"))
    }
}

/// The endpoint preorder `R0` for a decoration.
pub fn decorated_base(
    m: &Mts,
    kind: DecoratedKind,
    max_iter: Option<usize>,
) -> Computed<RelationTable> {
    let n = m.num_states();
    let carrier = Carrier::States(n);
    let enabled: Vec<_> = m.states().map(|x| m.enabled(x)).collect();
    let mut stats = FixpointStats::none();
    let value = match kind {
        DecoratedKind::Completed => {
            RelationTable::from_fn(carrier, RelationKind::Preorder, |i, j| {
                !enabled[i].is_empty() || enabled[j].is_empty()
            })
        }
        DecoratedKind::Failure => {
            RelationTable::from_fn(carrier, RelationKind::Preorder, |i, j| {
                enabled[j].is_subset(&enabled[i])
            })
        }
        DecoratedKind::Ready => {
            RelationTable::from_fn(carrier, RelationKind::Equivalence, |i, j| {
                enabled[i] == enabled[j]
            })
        }
        DecoratedKind::PossibleFutures => {
            let mut entries = vec![false; n * n];
            for i in 0..n {
                for j in 0..n {
                    let r = trace_equivalent(
                        m,
                        &m.singleton(StateId(i)),
                        &m.singleton(StateId(j)),
                        max_iter,
                    );
                    stats = stats.merge(r.stats);
                    entries[i * n + j] = r.value;
                }
            }
            RelationTable::from_entries(carrier, RelationKind::Equivalence, entries)
        }
    };
    Computed { value, stats }
}
