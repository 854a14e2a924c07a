use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::lattice::{ParseUnitError, UnitValue};
use crate::lts::LabelId;

/// The six modal fragments: qualitative (`-q`) and metric (`-m`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Fragment {
    BisimQ,
    SimQ,
    TraceQ,
    BisimM,
    SimM,
    TraceM,
}

impl Fragment {
    pub const ALL: [Fragment; 6] = [
        Fragment::BisimQ,
        Fragment::SimQ,
        Fragment::TraceQ,
        Fragment::BisimM,
        Fragment::SimM,
        Fragment::TraceM,
    ];

    pub fn is_metric(self) -> bool {
        matches!(self, Fragment::BisimM | Fragment::SimM | Fragment::TraceM)
    }

    /// Whether `c` may appear in formulas of this fragment.
    pub fn admits(self, c: Constructor) -> bool {
        use Constructor::*;
        use Fragment::*;
        match self {
            BisimQ => matches!(c, True | Diamond | And | Or | Not),
            SimQ => matches!(c, True | Diamond | And),
            TraceQ => matches!(c, True | Diamond | Pred),
            BisimM => matches!(c, True | Next | And | Or | Not | Shift),
            SimM => matches!(c, True | Next | And | Shift),
            TraceM => matches!(c, True | Next | Shift | Pred),
        }
    }
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Fragment::BisimQ => "bisim-q",
            Fragment::SimQ => "sim-q",
            Fragment::TraceQ => "trace-q",
            Fragment::BisimM => "bisim-m",
            Fragment::SimM => "sim-m",
            Fragment::TraceM => "trace-m",
        })
    }
}

impl FromStr for Fragment {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Fragment::ALL
            .into_iter()
            .find(|f| f.to_string() == s)
            .ok_or_else(|| format!("unknown fragment `{s}`"))
    }
}

/// Constructor classes used for fragment admissibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constructor {
    True,
    Diamond,
    And,
    Or,
    Not,
    Next,
    Shift,
    Pred,
}

/// Primitive endpoint predicates. In metric fragments they denote 0/1
/// indicators, except `G`, which is real-valued.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Predicate {
    /// Deadlocked states.
    Deadlock,
    /// States enabling none of the labels.
    Refuse(BTreeSet<LabelId>),
    /// States enabling exactly the labels.
    Ready(BTreeSet<LabelId>),
    /// `g_a(x)`: least label distance from `a` to an enabled label, 1 on deadlocks.
    G(LabelId),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    Diamond(LabelId, Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Not(Box<Formula>),
    Next(LabelId, Box<Formula>),
    ShiftUp(Box<Formula>, UnitValue),
    ShiftDown(Box<Formula>, UnitValue),
    Pred(Predicate),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("{constructor:?} is not admissible in fragment {fragment}")]
    FragmentViolation {
        fragment: Fragment,
        constructor: Constructor,
    },
    #[error("predicate {0:?} is not admissible in fragment {1}")]
    PredicateViolation(Predicate, Fragment),
    #[error("formula syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error(transparent)]
    Value(#[from] ParseUnitError),
    #[error("saturation budget of {limit} denotations exceeded")]
    Budget { limit: usize },
    #[error(transparent)]
    Trace(#[from] crate::quantitative::TraceMetricError),
    #[error("denotations do not match the alpha mode")]
    KindMismatch,
    #[error("instance too large: {0}")]
    TooLarge(String),
}

impl Formula {
    pub fn constructor(&self) -> Constructor {
        match self {
            Formula::True => Constructor::True,
            Formula::Diamond(..) => Constructor::Diamond,
            Formula::And(_) => Constructor::And,
            Formula::Or(_) => Constructor::Or,
            Formula::Not(_) => Constructor::Not,
            Formula::Next(..) => Constructor::Next,
            Formula::ShiftUp(..) | Formula::ShiftDown(..) => Constructor::Shift,
            Formula::Pred(_) => Constructor::Pred,
        }
    }

    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::True | Formula::Pred(_) => Vec::new(),
            Formula::Diamond(_, f)
            | Formula::Next(_, f)
            | Formula::Not(f)
            | Formula::ShiftUp(f, _)
            | Formula::ShiftDown(f, _) => vec![f],
            Formula::And(fs) | Formula::Or(fs) => fs.iter().collect(),
        }
    }

    /// Nesting depth of modalities.
    pub fn modal_depth(&self) -> usize {
        let inner = self
            .children()
            .into_iter()
            .map(Formula::modal_depth)
            .max()
            .unwrap_or(0);
        match self {
            Formula::Diamond(..) | Formula::Next(..) => inner + 1,
            _ => inner,
        }
    }

    /// Checks every constructor and predicate against `fragment`.
    pub fn check(&self, fragment: Fragment) -> Result<(), LogicError> {
        let c = self.constructor();
        if !fragment.admits(c) {
            return Err(LogicError::FragmentViolation {
                fragment,
                constructor: c,
            });
        }
        if let Formula::Pred(p) = self {
            if matches!(p, Predicate::G(_)) && !fragment.is_metric() {
                return Err(LogicError::PredicateViolation(p.clone(), fragment));
            }
        }
        self.children()
            .into_iter()
            .try_for_each(|f| f.check(fragment))
    }
}
