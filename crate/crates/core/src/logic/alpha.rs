use super::eval::{Denotation, SemFun};
use super::formula::LogicError;
use crate::lattice::UnitValue;
use crate::lts::{Mts, StateId, StateSet};
use crate::qualitative::{Carrier, MacroCarrier, RelationKind, RelationTable};
use crate::quantitative::{DirectedMetricTable, PowersetMetricTable};

/// Which induced relation or distance to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlphaMode {
    /// Same membership in every set.
    B,
    /// Membership in a set is preserved from left to right.
    S,
    /// On macro-states: meeting a set is equivalent on both sides.
    T,
    /// `max |f(x) - f(y)|`.
    BM,
    /// `max f(x) ⊖ f(y)`.
    SM,
    /// On (singleton, macro-state) pairs: `max f~(X1) ⊖ f~(X2)`, `f~` the maximum over members.
    TM,
}

/// Induced object, depending on the mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Induced {
    Relation(RelationTable),
    Metric(DirectedMetricTable),
    Powerset(PowersetMetricTable),
}

pub fn alpha_b(n: usize, sets: &[StateSet]) -> RelationTable {
    RelationTable::from_fn(Carrier::States(n), RelationKind::Equivalence, |i, j| {
        sets.iter()
            .all(|s| s.contains(StateId(i)) == s.contains(StateId(j)))
    })
}

pub fn alpha_s(n: usize, sets: &[StateSet]) -> RelationTable {
    RelationTable::from_fn(Carrier::States(n), RelationKind::Preorder, |i, j| {
        sets.iter()
            .all(|s| !s.contains(StateId(i)) || s.contains(StateId(j)))
    })
}

pub fn alpha_t(carrier: MacroCarrier, sets: &[StateSet]) -> RelationTable {
    let members = carrier.sets().to_vec();
    RelationTable::from_fn(
        Carrier::MacroStates(carrier),
        RelationKind::CongruenceOnPowerset,
        |i, j| {
            sets.iter()
                .all(|s| members[i].intersects(s) == members[j].intersects(s))
        },
    )
}

pub fn alpha_bm(n: usize, funs: &[SemFun]) -> DirectedMetricTable {
    DirectedMetricTable::from_fn(n, true, |x, y| {
        UnitValue::sup(funs.iter().map(|f| f[x.0].abs_diff(f[y.0])))
    })
}

pub fn alpha_sm(n: usize, funs: &[SemFun]) -> DirectedMetricTable {
    DirectedMetricTable::from_fn(n, false, |x, y| {
        UnitValue::sup(funs.iter().map(|f| f[x.0].ominus(f[y.0])))
    })
}

/// `f~(X) = max_{x in X} f(x)`, 0 on the empty set.
pub fn lift_max(f: &[UnitValue], set: &StateSet) -> UnitValue {
    UnitValue::sup(set.iter().map(|x| f[x.0]))
}

/// `max_f f~(X1) ⊖ f~(X2)`.
pub fn alpha_tm_value(funs: &[SemFun], x1: &StateSet, x2: &StateSet) -> UnitValue {
    UnitValue::sup(funs.iter().map(|f| lift_max(f, x1).ominus(lift_max(f, x2))))
}

/// Splits denotations by kind, failing on a mix.
fn split(ds: &[Denotation], want_sets: bool) -> Result<(Vec<StateSet>, Vec<SemFun>), LogicError> {
    let mut sets = Vec::new();
    let mut funs = Vec::new();
    for d in ds {
        match d {
            Denotation::Set(s) if want_sets => sets.push(s.clone()),
            Denotation::Fun(f) if !want_sets => funs.push(f.clone()),
            _ => return Err(LogicError::KindMismatch),
        }
    }
    Ok((sets, funs))
}

/// The induced relation or distance. Macro-state modes range over all subsets,
/// so they are limited to small systems.
pub fn alpha(m: &Mts, ds: &[Denotation], mode: AlphaMode) -> Result<Induced, LogicError> {
    let n = m.num_states();
    let powerset_guard = || {
        if n > 12 {
            Err(LogicError::TooLarge(format!(
                "{n} states for a powerset carrier"
            )))
        } else {
            Ok(())
        }
    };
    Ok(match mode {
        AlphaMode::B => Induced::Relation(alpha_b(n, &split(ds, true)?.0)),
        AlphaMode::S => Induced::Relation(alpha_s(n, &split(ds, true)?.0)),
        AlphaMode::T => {
            powerset_guard()?;
            Induced::Relation(alpha_t(MacroCarrier::powerset(m), &split(ds, true)?.0))
        }
        AlphaMode::BM => Induced::Metric(alpha_bm(n, &split(ds, false)?.1)),
        AlphaMode::SM => Induced::Metric(alpha_sm(n, &split(ds, false)?.1)),
        AlphaMode::TM => {
            powerset_guard()?;
            let funs = split(ds, false)?.1;
            let mut table = PowersetMetricTable::new();
            for x in m.states() {
                for y in StateSet::all_subsets(n) {
                    let v = alpha_tm_value(&funs, &m.singleton(x), &y);
                    table.insert(x, y, v);
                }
            }
            Induced::Powerset(table)
        }
    })
}
