//! Metric labelled transition systems: model, file format, successors and traces.

mod model;
mod parse;
mod stateset;
mod traces;

pub use model::{
    lab, ter, LabelId, LabelMetric, ModelError, Move, Mts, MtsBuilder, StateId, Trace,
    TriangleViolation,
};
pub use parse::{parse_mts, to_text, ParseError, ParseErrorKind};
pub use stateset::StateSet;
pub use traces::{bounded_traces, trace_distance};
