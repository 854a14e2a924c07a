//! Qualitative spectrum: bisimilarity, similarity, trace and decorated trace equivalences.

mod branching;
mod decorated;
mod relation;
mod trace;

pub use branching::{bisim_step, bisimilarity, iterate_from_top, sim_step, similarity};
pub use decorated::{decorated_base, DecoratedKind};
pub use relation::{AuditError, Carrier, MacroCarrier, RelationKind, RelationTable};
pub use trace::{decorated_trace_related, trace_equivalent, trace_iterate, trace_step};

use crate::lattice::{Computed, FixpointStats};
use crate::lts::{Mts, StateId};

/// An equivalence notion on states, tabulated over all state pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Semantics {
    Bisim,
    Sim,
    Trace,
    Decorated(DecoratedKind),
}

/// Tabulates `semantics` on all pairs of singleton arguments.
pub fn state_relation(
    m: &Mts,
    semantics: Semantics,
    max_iter: Option<usize>,
) -> Computed<RelationTable> {
    let n = m.num_states();
    let pairwise = |f: &dyn Fn(StateId, StateId) -> Computed<bool>, kind| {
        let mut stats = FixpointStats::none();
        let mut entries = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                let r = f(StateId(i), StateId(j));
                stats = stats.merge(r.stats);
                entries[i * n + j] = r.value;
            }
        }
        Computed {
            value: RelationTable::from_entries(Carrier::States(n), kind, entries),
            stats,
        }
    };
    match semantics {
        Semantics::Bisim => bisimilarity(m, max_iter),
        Semantics::Sim => similarity(m, max_iter),
        Semantics::Trace => pairwise(
            &|x, y| trace_equivalent(m, &m.singleton(x), &m.singleton(y), max_iter),
            RelationKind::Equivalence,
        ),
        Semantics::Decorated(kind) => {
            let base = decorated_base(m, kind, max_iter);
            let r0 = base.value;
            let mut out = pairwise(
                &|x, y| decorated_trace_related(m, &m.singleton(x), &m.singleton(y), &r0, max_iter),
                RelationKind::Equivalence,
            );
            out.stats = out.stats.merge(base.stats);
            out
        }
    }
}
