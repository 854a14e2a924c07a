//! Behavioural distances: bisimulation, directed simulation, directed trace and
//! decorated trace distances.

mod branching;
mod decorated;
mod eps;
mod table;
mod trace;

pub use branching::{bisim_metric, bisim_metric_step, dir_sim_metric, sim_metric_step};
pub use decorated::{decorated_d0, decorated_distance, g_value, MetricDecoration};
pub use eps::eps_characterization;
pub use table::{kernel, DirectedMetricTable, MetricAuditError, PowersetMetricTable};
pub use trace::{
    bet_rows, bet_step, decorated_trace_metric, delta_choices, dir_trace_metric,
    trace_metric_table, BetRow, DeltaChoice, DeltaStrategy, SolveOptions, TraceMetricError,
    TraceMetricSolver, TraceSolution, BRUTE_LIMIT,
};
