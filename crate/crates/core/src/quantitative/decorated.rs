use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::table::DirectedMetricTable;
use super::trace::{
    decorated_trace_metric, trace_metric_table, SolveOptions, TraceMetricError, TraceSolution,
};
use crate::lattice::{directed_hausdorff, hausdorff, Computed, FixpointStats, LiftMode, UnitValue};
use crate::lts::{LabelId, Mts, StateSet};

/// Base distances on endpoints for decorated trace distances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MetricDecoration {
    Completed,
    FailureDiscrete,
    FailureHausdorff,
    FailurePseudoHausdorff,
    ReadyDiscrete,
    ReadyHausdorff,
    PossibleFutures,
}

impl MetricDecoration {
    pub const ALL: [MetricDecoration; 7] = [
        MetricDecoration::Completed,
        MetricDecoration::FailureDiscrete,
        MetricDecoration::FailureHausdorff,
        MetricDecoration::FailurePseudoHausdorff,
        MetricDecoration::ReadyDiscrete,
        MetricDecoration::ReadyHausdorff,
        MetricDecoration::PossibleFutures,
    ];
}

impl fmt::Display for MetricDecoration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MetricDecoration::Completed => "completed",
            MetricDecoration::FailureDiscrete => "failure-disc",
            MetricDecoration::FailureHausdorff => "failure-haus",
            MetricDecoration::FailurePseudoHausdorff => "failure-pseudo",
            MetricDecoration::ReadyDiscrete => "ready-disc",
            MetricDecoration::ReadyHausdorff => "ready-haus",
            MetricDecoration::PossibleFutures => "possible-futures",
        })
    }
}

impl FromStr for MetricDecoration {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MetricDecoration::ALL
            .into_iter()
            .find(|k| k.to_string() == s)
            .ok_or_else(|| format!("unknown decoration `{s}`"))
    }
}

fn discrete(a: &LabelId, b: &LabelId) -> UnitValue {
    if a == b {
        UnitValue::ZERO
    } else {
        UnitValue::ONE
    }
}

/// `g_a(x) = min_{b in lab δ(x)} d_A(a, b)`, 1 on deadlocks.
pub fn g_value(m: &Mts, a: LabelId, enabled: &BTreeSet<LabelId>) -> UnitValue {
    UnitValue::inf(enabled.iter().map(|&b| m.d(a, b)))
}

/// The base hemimetric `d0` of a decoration.
pub fn decorated_d0(
    m: &Mts,
    kind: MetricDecoration,
    options: SolveOptions,
) -> Result<Computed<DirectedMetricTable>, TraceMetricError> {
    let n = m.num_states();
    let enabled: Vec<Vec<LabelId>> = m
        .states()
        .map(|x| m.enabled(x).into_iter().collect())
        .collect();
    let refused: Vec<Vec<LabelId>> = enabled
        .iter()
        .map(|e| m.labels().filter(|a| !e.contains(a)).collect())
        .collect();
    let metric = |a: &LabelId, b: &LabelId| m.d(*a, *b);
    let none = FixpointStats::none();
    let table = |symmetric: bool, f: &dyn Fn(usize, usize) -> UnitValue| {
        DirectedMetricTable::from_fn(n, symmetric, |x, y| f(x.0, y.0))
    };
    let value = match kind {
        MetricDecoration::Completed => table(false, &|x, y| {
            let full_refusal = |s: usize| {
                if enabled[s].is_empty() {
                    UnitValue::ONE
                } else {
                    UnitValue::ZERO
                }
            };
            full_refusal(x).ominus(full_refusal(y))
        }),
        MetricDecoration::FailureDiscrete => table(false, &|x, y| {
            directed_hausdorff(&enabled[y], &enabled[x], discrete)
        }),
        MetricDecoration::FailureHausdorff => table(false, &|x, y| {
            directed_hausdorff(&enabled[y], &enabled[x], metric)
        }),
        MetricDecoration::FailurePseudoHausdorff => table(false, &|x, y| {
            directed_hausdorff(&refused[x], &refused[y], metric)
        }),
        MetricDecoration::ReadyDiscrete => table(true, &|x, y| {
            if enabled[x] == enabled[y] {
                UnitValue::ZERO
            } else {
                UnitValue::ONE
            }
        }),
        MetricDecoration::ReadyHausdorff => table(true, &|x, y| {
            hausdorff(&enabled[x], &enabled[y], metric, LiftMode::Symmetric)
        }),
        MetricDecoration::PossibleFutures => {
            let (t, stats) = trace_metric_table(m, true, options)?;
            return Ok(Computed { value: t, stats });
        }
    };
    Ok(Computed { value, stats: none })
}

/// The decorated trace distance of `kind` between two macro-states.
pub fn decorated_distance(
    m: &Mts,
    x1: &StateSet,
    x2: &StateSet,
    kind: MetricDecoration,
    options: SolveOptions,
) -> Result<TraceSolution, TraceMetricError> {
    let d0 = decorated_d0(m, kind, options)?;
    let mut sol = decorated_trace_metric(m, x1, x2, &d0.value, options)?;
    sol.stats = sol.stats.merge(d0.stats);
    Ok(sol)
}
