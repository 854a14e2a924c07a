//! Exact unit-interval arithmetic, the Kleene fixpoint driver and set liftings.

mod fixpoint;
mod lifting;
mod unit;

pub use fixpoint::{default_max_iter, kleene_fix, Computed, FixpointReport, FixpointStats};
pub use lifting::{directed_hausdorff, hausdorff, lift_related, relation_lift, LiftMode};
pub use unit::{ParseUnitError, UnitOp, UnitValue};
