use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use super::table::{DirectedMetricTable, PowersetMetricTable};
use crate::lattice::{default_max_iter, kleene_fix, FixpointStats, UnitValue};
use crate::lts::{ter, LabelId, Move, Mts, StateId, StateSet};

/// How the subsets `Δ ⊆ δ[X2]` are enumerated in one trace step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DeltaStrategy {
    /// Only the upward-closed sets `{(b, y) | d_A(a, b) >= t}`.
    #[default]
    Threshold,
    /// Every subset.
    Brute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveOptions {
    pub max_iter: Option<usize>,
    pub strategy: DeltaStrategy,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceMetricError {
    #[error("table has no entry for ({x:?}, {set:?})")]
    MissingCell { x: StateId, set: StateSet },
    #[error("brute Δ enumeration over {0} moves exceeds the limit")]
    BruteTooLarge(usize),
}

/// Largest `|δ[X2]|` for which brute enumeration is attempted.
pub const BRUTE_LIMIT: usize = 20;

/// One candidate `Δ` for a fixed label `a`: `min_{b in lab Δ} d_A(a, b)` and the
/// remaining moves `δ[X2] \ Δ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaChoice {
    pub delta: Vec<Move>,
    pub min_label_distance: UnitValue,
    pub rest: Vec<Move>,
}

/// Candidate `Δ` sets for a move labelled `a` against `moves2 = δ[X2]`.
pub fn delta_choices(
    m: &Mts,
    a: LabelId,
    moves2: &[Move],
    strategy: DeltaStrategy,
) -> Result<Vec<DeltaChoice>, TraceMetricError> {
    let split = |inside: &dyn Fn(usize, &Move) -> bool| {
        let (mut delta, mut rest) = (Vec::new(), Vec::new());
        for (i, mv) in moves2.iter().enumerate() {
            if inside(i, mv) {
                delta.push(*mv);
            } else {
                rest.push(*mv);
            }
        }
        let min_label_distance = UnitValue::inf(delta.iter().map(|&(b, _)| m.d(a, b)));
        DeltaChoice {
            delta,
            min_label_distance,
            rest,
        }
    };
    match strategy {
        DeltaStrategy::Brute => {
            if moves2.len() > BRUTE_LIMIT {
                return Err(TraceMetricError::BruteTooLarge(moves2.len()));
            }
            Ok((0..1u64 << moves2.len())
                .map(|mask| split(&|i, _| mask >> i & 1 == 1))
                .collect())
        }
        DeltaStrategy::Threshold => {
            let thresholds: BTreeSet<UnitValue> = moves2.iter().map(|&(b, _)| m.d(a, b)).collect();
            let mut out: Vec<DeltaChoice> = thresholds
                .into_iter()
                .map(|t| split(&|_, &(b, _)| m.d(a, b) >= t))
                .collect();
            // the threshold above every distance selects Δ = ∅
            out.push(split(&|_, _| false));
            Ok(out)
        }
    }
}

/// One row of the step computation: a choice of `Δ` and the table value at the
/// continuation `({x'}, ter(δ[X2] \ Δ))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetRow {
    pub choice: DeltaChoice,
    pub continuation: UnitValue,
}

impl BetRow {
    pub fn value(&self) -> UnitValue {
        self.choice.min_label_distance.meet(self.continuation)
    }
}

/// Rows for the move `(a, x')` of some state in `X1` against `X2`.
pub fn bet_rows(
    m: &Mts,
    d: &PowersetMetricTable,
    mv: Move,
    x2: &StateSet,
    strategy: DeltaStrategy,
) -> Result<Vec<BetRow>, TraceMetricError> {
    let (a, target) = mv;
    let moves2 = m.successors(x2, None);
    delta_choices(m, a, &moves2, strategy)?
        .into_iter()
        .map(|choice| {
            let rest = ter(m.num_states(), &choice.rest);
            let continuation = d.cell(target, &rest).ok_or(TraceMetricError::MissingCell {
                x: target,
                set: rest,
            })?;
            Ok(BetRow {
                choice,
                continuation,
            })
        })
        .collect()
}

/// One application of the trace behaviour function at `(X1, X2)`, reading
/// continuation values from `d`.
pub fn bet_step(
    m: &Mts,
    d: &PowersetMetricTable,
    x1: &StateSet,
    x2: &StateSet,
    strategy: DeltaStrategy,
) -> Result<UnitValue, TraceMetricError> {
    if x1.is_empty() {
        return Ok(UnitValue::ZERO);
    }
    if x2.is_empty() {
        return Ok(UnitValue::ONE);
    }
    let mut best = UnitValue::ZERO;
    for mv in m.successors(x1, None) {
        for row in bet_rows(m, d, mv, x2, strategy)? {
            best = best.join(row.value());
        }
    }
    Ok(best)
}

/// Result of a trace-distance computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceSolution {
    pub distance: UnitValue,
    pub stats: FixpointStats,
    /// Every demanded `({x}, Y)` cell at the fixpoint.
    pub table: PowersetMetricTable,
}

/// Solver for the (optionally decorated) directed trace distance on the demanded
/// `(singleton, subset)` pairs.
pub struct TraceMetricSolver<'a> {
    m: &'a Mts,
    d0: Option<&'a DirectedMetricTable>,
    options: SolveOptions,
}

struct Cell {
    constant: UnitValue,
    terms: Vec<(UnitValue, usize)>,
}

impl<'a> TraceMetricSolver<'a> {
    pub fn new(m: &'a Mts, options: SolveOptions) -> Self {
        TraceMetricSolver {
            m,
            d0: None,
            options,
        }
    }

    /// Joins `(d0)_→H` into every step.
    pub fn with_base(mut self, d0: &'a DirectedMetricTable) -> Self {
        self.d0 = Some(d0);
        self
    }

    /// Value set the iterates can take: label distances, base distances, 0 and 1.
    fn value_set(&self) -> BTreeSet<UnitValue> {
        let mut v = self.m.metric_values();
        if let Some(d0) = self.d0 {
            v.extend(d0.values());
        }
        v
    }

    pub fn solve(&self, x1: &StateSet, x2: &StateSet) -> Result<TraceSolution, TraceMetricError> {
        let m = self.m;
        let mut keys: Vec<(StateId, StateSet)> = Vec::new();
        let mut index: HashMap<(StateId, StateSet), usize> = HashMap::new();
        let mut enqueue =
            |key: (StateId, StateSet), keys: &mut Vec<(StateId, StateSet)>| -> usize {
                *index.entry(key.clone()).or_insert_with(|| {
                    keys.push(key);
                    keys.len() - 1
                })
            };
        if !x2.is_empty() {
            for x in x1.iter() {
                enqueue((x, x2.clone()), &mut keys);
            }
        }
        let mut cells: Vec<Cell> = Vec::new();
        let mut i = 0;
        while i < keys.len() {
            let (x, y) = keys[i].clone();
            let mut constant = match self.d0 {
                Some(d0) => UnitValue::inf(y.iter().map(|t| d0.get(x, t))),
                None => UnitValue::ZERO,
            };
            let moves2 = m.successors(&y, None);
            let mut terms = BTreeSet::new();
            for &(a, target) in m.moves(x) {
                for choice in delta_choices(m, a, &moves2, self.options.strategy)? {
                    let rest = ter(m.num_states(), &choice.rest);
                    if rest.is_empty() {
                        constant = constant.join(choice.min_label_distance);
                    } else {
                        let dep = enqueue((target, rest), &mut keys);
                        terms.insert((choice.min_label_distance, dep));
                    }
                }
            }
            cells.push(Cell {
                constant,
                terms: terms.into_iter().collect(),
            });
            i += 1;
        }

        let bound = default_max_iter(self.value_set().len(), cells.len());
        let report = kleene_fix(
            |v: &Vec<UnitValue>| {
                cells
                    .iter()
                    .map(|c| {
                        c.terms
                            .iter()
                            .fold(c.constant, |acc, &(w, dep)| acc.join(w.meet(v[dep])))
                    })
                    .collect()
            },
            vec![UnitValue::ZERO; cells.len()],
            self.options.max_iter.unwrap_or(bound),
        );

        let mut table = PowersetMetricTable::new();
        for (key, value) in keys.into_iter().zip(&report.table) {
            table.insert(key.0, key.1, *value);
        }
        let distance = table.eval(x1, x2).expect("root cells are tabulated");
        Ok(TraceSolution {
            distance,
            stats: report.stats(bound),
            table,
        })
    }
}

/// Directed trace distance `d_T(X1, X2)`.
pub fn dir_trace_metric(
    m: &Mts,
    x1: &StateSet,
    x2: &StateSet,
    options: SolveOptions,
) -> Result<TraceSolution, TraceMetricError> {
    TraceMetricSolver::new(m, options).solve(x1, x2)
}

/// Trace distance decorated by the base hemimetric `d0`.
pub fn decorated_trace_metric(
    m: &Mts,
    x1: &StateSet,
    x2: &StateSet,
    d0: &DirectedMetricTable,
    options: SolveOptions,
) -> Result<TraceSolution, TraceMetricError> {
    TraceMetricSolver::new(m, options)
        .with_base(d0)
        .solve(x1, x2)
}

/// `d_T` on all singleton pairs, optionally symmetrized.
pub fn trace_metric_table(
    m: &Mts,
    symmetric: bool,
    options: SolveOptions,
) -> Result<(DirectedMetricTable, FixpointStats), TraceMetricError> {
    let n = m.num_states();
    let mut entries = vec![UnitValue::ZERO; n * n];
    let mut stats = FixpointStats::none();
    for x in m.states() {
        for y in m.states() {
            let s = dir_trace_metric(m, &m.singleton(x), &m.singleton(y), options)?;
            stats = stats.merge(s.stats);
            entries[x.0 * n + y.0] = s.distance;
        }
    }
    let table = DirectedMetricTable::from_entries(n, false, entries);
    Ok((
        if symmetric {
            table.symmetrized()
        } else {
            table
        },
        stats,
    ))
}
