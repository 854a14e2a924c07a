use super::formula::{Formula, Fragment, LogicError, Predicate};
use crate::lattice::UnitValue;
use crate::lts::{LabelId, Mts, StateSet};
use crate::quantitative::g_value;

/// A real-valued denotation, one value per state.
pub type SemFun = Vec<UnitValue>;

/// The denotation of a formula: a state set in qualitative fragments, a
/// function in metric fragments.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Denotation {
    Set(StateSet),
    Fun(SemFun),
}

/// `◇_a S`.
pub fn diamond(m: &Mts, a: LabelId, s: &StateSet) -> StateSet {
    StateSet::from_ids(
        m.num_states(),
        m.states()
            .filter(|&x| m.moves(x).iter().any(|&(b, t)| b == a && s.contains(t))),
    )
}

/// `◯_a f (x) = max { (1 - d_A(b, a)) ∧ f(x') | x -b-> x' }`, 0 on deadlocks.
pub fn next(m: &Mts, a: LabelId, f: &[UnitValue]) -> SemFun {
    m.states()
        .map(|x| {
            UnitValue::sup(
                m.moves(x)
                    .iter()
                    .map(|&(b, t)| m.d(b, a).complement().meet(f[t.0])),
            )
        })
        .collect()
}

pub fn predicate_set(m: &Mts, p: &Predicate) -> Option<StateSet> {
    let n = m.num_states();
    let pick = |keep: &dyn Fn(&std::collections::BTreeSet<LabelId>) -> bool| {
        StateSet::from_ids(n, m.states().filter(|&x| keep(&m.enabled(x))))
    };
    match p {
        Predicate::Deadlock => Some(pick(&|e| e.is_empty())),
        Predicate::Refuse(b) => Some(pick(&|e| e.is_disjoint(b))),
        Predicate::Ready(b) => Some(pick(&|e| e == b)),
        Predicate::G(_) => None,
    }
}

pub fn predicate_fun(m: &Mts, p: &Predicate) -> SemFun {
    match p {
        Predicate::G(a) => m.states().map(|x| g_value(m, *a, &m.enabled(x))).collect(),
        _ => {
            let s = predicate_set(m, p).expect("set-valued predicate");
            m.states()
                .map(|x| {
                    if s.contains(x) {
                        UnitValue::ONE
                    } else {
                        UnitValue::ZERO
                    }
                })
                .collect()
        }
    }
}

/// Evaluates `f`, after checking it against `fragment`.
pub fn eval(m: &Mts, f: &Formula, fragment: Fragment) -> Result<Denotation, LogicError> {
    f.check(fragment)?;
    Ok(if fragment.is_metric() {
        Denotation::Fun(eval_fun(m, f))
    } else {
        Denotation::Set(eval_set(m, f))
    })
}

fn eval_set(m: &Mts, f: &Formula) -> StateSet {
    match f {
        Formula::True => m.full_set(),
        Formula::Diamond(a, g) | Formula::Next(a, g) => diamond(m, *a, &eval_set(m, g)),
        Formula::And(fs) => fs
            .iter()
            .fold(m.full_set(), |acc, g| acc.intersection(&eval_set(m, g))),
        Formula::Or(fs) => fs
            .iter()
            .fold(m.empty_set(), |acc, g| acc.union(&eval_set(m, g))),
        Formula::Not(g) => eval_set(m, g).complement(),
        Formula::ShiftUp(g, _) | Formula::ShiftDown(g, _) => eval_set(m, g),
        Formula::Pred(p) => predicate_set(m, p).unwrap_or_else(|| m.empty_set()),
    }
}

fn eval_fun(m: &Mts, f: &Formula) -> SemFun {
    let n = m.num_states();
    let pointwise = |fs: &[Formula], unit: UnitValue, op: fn(UnitValue, UnitValue) -> UnitValue| {
        fs.iter().fold(vec![unit; n], |acc, g| {
            acc.iter()
                .zip(eval_fun(m, g))
                .map(|(&a, b)| op(a, b))
                .collect()
        })
    };
    match f {
        Formula::True => vec![UnitValue::ONE; n],
        Formula::Next(a, g) | Formula::Diamond(a, g) => next(m, *a, &eval_fun(m, g)),
        Formula::And(fs) => pointwise(fs, UnitValue::ONE, UnitValue::meet),
        Formula::Or(fs) => pointwise(fs, UnitValue::ZERO, UnitValue::join),
        Formula::Not(g) => eval_fun(m, g)
            .into_iter()
            .map(UnitValue::complement)
            .collect(),
        Formula::ShiftUp(g, r) => eval_fun(m, g).into_iter().map(|v| v.oplus(*r)).collect(),
        Formula::ShiftDown(g, r) => eval_fun(m, g).into_iter().map(|v| v.ominus(*r)).collect(),
        Formula::Pred(p) => predicate_fun(m, p),
    }
}
