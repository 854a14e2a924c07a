//! Modal logics: formulas, evaluation, induced relations and distances,
//! semantic saturation of the logic functions and Hennessy–Milner checks.

mod alpha;
mod eval;
mod formula;
mod hm;
mod parse;
mod saturate;

pub use alpha::{
    alpha, alpha_b, alpha_bm, alpha_s, alpha_sm, alpha_t, alpha_tm_value, lift_max, AlphaMode,
    Induced,
};
pub use eval::{diamond, eval, next, predicate_fun, predicate_set, Denotation, SemFun};
pub use formula::{Constructor, Formula, Fragment, LogicError, Predicate};
pub use hm::{hm_cross_check, HmReport, HmRow};
pub use parse::{parse_formula, render};
pub use saturate::{
    boolean_closure, fun_closure, intersection_closure, lo_step, logic_saturate,
    metric_denominator, saturate_levels, shift_grid, SaturateOptions, Saturation, Shifts,
    DEFAULT_BUDGET,
};
