//! Behavioural equivalences, preorders and distances on finite metric
//! labelled transition systems, computed as exact Kleene fixpoints and
//! cross-checked against modal logics, brute-force oracles and a threshold game.

pub mod game;
pub mod lattice;
pub mod logic;
pub mod lts;
pub mod oracle;
pub mod qualitative;
pub mod quantitative;
pub mod random;

pub use lattice::UnitValue;
pub use lts::{LabelId, Mts, StateId, StateSet, Trace};
