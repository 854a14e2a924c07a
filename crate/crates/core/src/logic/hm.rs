use super::alpha::{alpha_b, alpha_bm, alpha_s, alpha_sm, alpha_t, alpha_tm_value};
use super::eval::{Denotation, SemFun};
use super::formula::{Fragment, LogicError};
use super::saturate::{saturate_levels, SaturateOptions};
use crate::lattice::{FixpointStats, UnitValue};
use crate::lts::{Mts, StateSet};
use crate::qualitative::{
    bisim_step, iterate_from_top, sim_step, trace_iterate, MacroCarrier, RelationKind,
};
use crate::quantitative::{
    bisim_metric, dir_sim_metric, dir_trace_metric, DirectedMetricTable, SolveOptions,
};

/// Comparison at one iterate `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HmRow {
    pub k: usize,
    /// Number of distinct denotations in `lo^k(∅)`.
    pub logic_size: usize,
    /// Logical side equals the behavioural side.
    pub equal: bool,
    /// Logical side is below the behavioural side (metric fragments); equals `equal`
    /// for qualitative fragments.
    pub sound: bool,
    /// Largest amount by which the behavioural side exceeds the logical side.
    pub gap: UnitValue,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HmReport {
    pub fragment: Fragment,
    pub rows: Vec<HmRow>,
    /// The logic iterates reached their fixpoint within the requested depth.
    pub logic_stabilized: bool,
    /// Whether the final row is required to be an equality.
    pub equality_required: bool,
    pub passed: bool,
    /// Stats of the behavioural fixpoints computed for the comparison.
    pub behaviour_stats: FixpointStats,
}

/// Compares `α(lo^k(∅))` with the behavioural side for `k = 0..=depth`.
///
/// Qualitative fragments compare against the `k`-th iterate of the behaviour
/// function and require equality at every `k`. Metric fragments compare
/// against the fixpoint distance and require soundness at every `k`;
/// simulation and trace additionally require equality once the logic has
/// stabilized on an acyclic system. The bisimulation metric gap is only reported.
pub fn hm_cross_check(
    m: &Mts,
    fragment: Fragment,
    depth: usize,
    options: &SaturateOptions,
) -> Result<HmReport, LogicError> {
    if m.num_states() > 12 {
        return Err(LogicError::TooLarge(format!(
            "{} states for a logic cross-check",
            m.num_states()
        )));
    }
    let sat = saturate_levels(m, fragment, depth, options)?;
    let n = m.num_states();
    let sets = |ds: &[Denotation]| -> Vec<StateSet> {
        ds.iter()
            .filter_map(|d| match d {
                Denotation::Set(s) => Some(s.clone()),
                Denotation::Fun(_) => None,
            })
            .collect()
    };
    let funs = |ds: &[Denotation]| -> Vec<SemFun> {
        ds.iter()
            .filter_map(|d| match d {
                Denotation::Fun(f) => Some(f.clone()),
                Denotation::Set(_) => None,
            })
            .collect()
    };
    let qualitative_row = |k: usize, equal: bool| HmRow {
        k,
        logic_size: sat.level(k).len(),
        equal,
        sound: equal,
        gap: UnitValue::ZERO,
    };
    let mut behaviour_stats = FixpointStats::none();
    let rows: Vec<HmRow> = match fragment {
        Fragment::BisimQ => (0..=depth)
            .map(|k| {
                let lhs = alpha_b(n, &sets(sat.level(k)));
                let rhs = iterate_from_top(m, RelationKind::Equivalence, bisim_step, k);
                qualitative_row(k, lhs.same_pairs(&rhs))
            })
            .collect(),
        Fragment::SimQ => (0..=depth)
            .map(|k| {
                let lhs = alpha_s(n, &sets(sat.level(k)));
                let rhs = iterate_from_top(m, RelationKind::Preorder, sim_step, k);
                qualitative_row(k, lhs.same_pairs(&rhs))
            })
            .collect(),
        Fragment::TraceQ => (0..=depth)
            .map(|k| {
                let lhs = alpha_t(MacroCarrier::powerset(m), &sets(sat.level(k)));
                let rhs = trace_iterate(m, MacroCarrier::powerset(m), k);
                qualitative_row(k, lhs.same_pairs(&rhs))
            })
            .collect(),
        Fragment::BisimM | Fragment::SimM => {
            let computed = if fragment == Fragment::BisimM {
                bisim_metric(m, None)
            } else {
                dir_sim_metric(m, None)
            };
            behaviour_stats = computed.stats;
            let target = computed.value;
            (0..=depth)
                .map(|k| {
                    let fs = funs(sat.level(k));
                    let lhs = if fragment == Fragment::BisimM {
                        alpha_bm(n, &fs)
                    } else {
                        alpha_sm(n, &fs)
                    };
                    metric_row(k, sat.level(k).len(), &lhs, &target)
                })
                .collect()
        }
        Fragment::TraceM => {
            let subsets = StateSet::all_subsets(n);
            let mut target = Vec::new();
            for x in m.states() {
                for y in &subsets {
                    let d = dir_trace_metric(m, &m.singleton(x), y, SolveOptions::default())?;
                    behaviour_stats = behaviour_stats.merge(d.stats);
                    target.push((m.singleton(x), y.clone(), d.distance));
                }
            }
            (0..=depth)
                .map(|k| {
                    let fs = funs(sat.level(k));
                    let (mut equal, mut sound, mut gap) = (true, true, UnitValue::ZERO);
                    for (x1, x2, d) in &target {
                        let a = alpha_tm_value(&fs, x1, x2);
                        equal &= a == *d;
                        sound &= a <= *d;
                        gap = gap.join(d.ominus(a));
                    }
                    HmRow {
                        k,
                        logic_size: sat.level(k).len(),
                        equal,
                        sound,
                        gap,
                    }
                })
                .collect()
        }
    };
    let equality_required = match fragment {
        Fragment::BisimQ | Fragment::SimQ | Fragment::TraceQ => true,
        Fragment::SimM | Fragment::TraceM => sat.stabilized && m.is_acyclic(),
        Fragment::BisimM => false,
    };
    let last_equal = rows.last().is_some_and(|r| r.equal);
    let passed = if fragment.is_metric() {
        rows.iter().all(|r| r.sound) && (!equality_required || last_equal)
    } else {
        rows.iter().all(|r| r.equal)
    };
    Ok(HmReport {
        fragment,
        rows,
        logic_stabilized: sat.stabilized,
        equality_required,
        passed,
        behaviour_stats,
    })
}

fn metric_row(
    k: usize,
    logic_size: usize,
    lhs: &DirectedMetricTable,
    rhs: &DirectedMetricTable,
) -> HmRow {
    let pairs = lhs.entries().iter().zip(rhs.entries());
    HmRow {
        k,
        logic_size,
        equal: lhs.entries() == rhs.entries(),
        sound: lhs.le(rhs),
        gap: UnitValue::sup(pairs.map(|(a, b)| b.ominus(*a))),
    }
}
