use std::collections::BTreeSet;

use num_integer::Integer;

use super::eval::{diamond, next, Denotation, SemFun};
use super::formula::{Fragment, LogicError};
use crate::lattice::UnitValue;
use crate::lts::{Mts, StateId, StateSet};

/// Shift constants available to metric closures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shifts {
    /// No shifts: the shift-free logic functions.
    Free,
    Grid(Vec<UnitValue>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaturateOptions {
    pub shifts: Shifts,
    /// Maximum number of denotations in any intermediate closure.
    pub budget: usize,
}

impl SaturateOptions {
    pub fn shift_free() -> Self {
        SaturateOptions {
            shifts: Shifts::Free,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_grid(grid: Vec<UnitValue>) -> Self {
        SaturateOptions {
            shifts: Shifts::Grid(grid),
            budget: DEFAULT_BUDGET,
        }
    }
}

pub const DEFAULT_BUDGET: usize = 20_000;

/// `{k/q | 1 <= k <= q}`.
pub fn shift_grid(q: i64) -> Vec<UnitValue> {
    (1..=q.max(1))
        .map(|k| UnitValue::new(k, q.max(1)).expect("k <= q"))
        .collect()
}

/// Least common denominator of the label distances.
pub fn metric_denominator(m: &Mts) -> i64 {
    m.metric_values()
        .iter()
        .fold(1, |acc, v| acc.lcm(&v.denom()))
}

/// The iterates `lo^0(∅), ..., lo^k(∅)`, stopping early once two coincide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Saturation {
    pub levels: Vec<Vec<Denotation>>,
    /// True when the last two levels are equal, so every later level is too.
    pub stabilized: bool,
}

impl Saturation {
    /// `lo^k(∅)`; levels past stabilization repeat the last one.
    pub fn level(&self, k: usize) -> &[Denotation] {
        &self.levels[k.min(self.levels.len() - 1)]
    }
}

/// `lo^depth(∅)`, deduplicated by denotation.
pub fn logic_saturate(
    m: &Mts,
    fragment: Fragment,
    depth: usize,
    options: &SaturateOptions,
) -> Result<Vec<Denotation>, LogicError> {
    Ok(saturate_levels(m, fragment, depth, options)?
        .level(depth)
        .to_vec())
}

pub fn saturate_levels(
    m: &Mts,
    fragment: Fragment,
    depth: usize,
    options: &SaturateOptions,
) -> Result<Saturation, LogicError> {
    let mut levels: Vec<BTreeSet<Denotation>> = vec![BTreeSet::new()];
    let mut stabilized = false;
    for _ in 0..depth {
        let next = lo_step(m, fragment, levels.last().expect("nonempty"), options)?;
        stabilized = Some(&next) == levels.last();
        if stabilized {
            break;
        }
        levels.push(next);
    }
    Ok(Saturation {
        levels: levels
            .into_iter()
            .map(|l| l.into_iter().collect())
            .collect(),
        stabilized,
    })
}

/// One application of the logic function of `fragment`.
pub fn lo_step(
    m: &Mts,
    fragment: Fragment,
    current: &BTreeSet<Denotation>,
    options: &SaturateOptions,
) -> Result<BTreeSet<Denotation>, LogicError> {
    let sets = || {
        current.iter().filter_map(|d| match d {
            Denotation::Set(s) => Some(s.clone()),
            Denotation::Fun(_) => None,
        })
    };
    let funs = || {
        current.iter().filter_map(|d| match d {
            Denotation::Fun(f) => Some(f.clone()),
            Denotation::Set(_) => None,
        })
    };
    let n = m.num_states();
    let diamonds = |closed: Vec<StateSet>| -> BTreeSet<Denotation> {
        m.labels()
            .flat_map(|a| {
                closed
                    .iter()
                    .map(move |s| Denotation::Set(diamond(m, a, s)))
            })
            .collect()
    };
    let nexts = |closed: Vec<SemFun>| -> BTreeSet<Denotation> {
        m.labels()
            .flat_map(|a| closed.iter().map(move |f| Denotation::Fun(next(m, a, f))))
            .collect()
    };
    let grid: &[UnitValue] = match &options.shifts {
        Shifts::Free => &[],
        Shifts::Grid(g) => g,
    };
    let budget = options.budget;
    Ok(match fragment {
        Fragment::BisimQ => diamonds(boolean_closure(n, sets().collect(), budget)?),
        Fragment::SimQ => {
            let mut base: Vec<StateSet> = sets().collect();
            base.push(m.full_set());
            diamonds(intersection_closure(base, budget)?)
        }
        Fragment::TraceQ => {
            let mut out = diamonds(sets().collect());
            out.insert(Denotation::Set(m.full_set()));
            out
        }
        Fragment::BisimM => {
            let mut base: Vec<SemFun> = funs().collect();
            base.push(vec![UnitValue::ONE; n]);
            nexts(fun_closure(base, true, true, grid, budget)?)
        }
        Fragment::SimM => {
            let mut base: Vec<SemFun> = funs().collect();
            base.push(vec![UnitValue::ONE; n]);
            nexts(fun_closure(base, true, false, grid, budget)?)
        }
        Fragment::TraceM => {
            let mut out = nexts(fun_closure(funs().collect(), false, false, grid, budget)?);
            out.insert(Denotation::Fun(vec![UnitValue::ONE; n]));
            out
        }
    })
}

/// Closure under finite unions and complement: all unions of the atoms of the
/// partition induced by `sets` (always containing `∅` and the full set).
pub fn boolean_closure(
    n: usize,
    sets: Vec<StateSet>,
    budget: usize,
) -> Result<Vec<StateSet>, LogicError> {
    let mut atoms: Vec<StateSet> = Vec::new();
    for x in (0..n).map(StateId) {
        let signature: Vec<bool> = sets.iter().map(|s| s.contains(x)).collect();
        match atoms.iter_mut().find(|a| {
            let y = a.iter().next().expect("atoms are nonempty");
            sets.iter()
                .map(|s| s.contains(y))
                .eq(signature.iter().copied())
        }) {
            Some(atom) => atom.insert(x),
            None => atoms.push(StateSet::singleton(n, x)),
        }
    }
    if atoms.len() >= 63 || (1usize << atoms.len()) > budget {
        return Err(LogicError::Budget { limit: budget });
    }
    Ok((0..1u64 << atoms.len())
        .map(|mask| {
            atoms
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(StateSet::empty(n), |acc, (_, a)| acc.union(a))
        })
        .collect())
}

/// Closure under binary intersections.
pub fn intersection_closure(
    sets: Vec<StateSet>,
    budget: usize,
) -> Result<Vec<StateSet>, LogicError> {
    let mut closed: BTreeSet<StateSet> = BTreeSet::new();
    let mut pending: Vec<StateSet> = sets;
    while let Some(s) = pending.pop() {
        if closed.contains(&s) {
            continue;
        }
        pending.extend(closed.iter().map(|t| t.intersection(&s)));
        closed.insert(s);
        if closed.len() > budget {
            return Err(LogicError::Budget { limit: budget });
        }
    }
    Ok(closed.into_iter().collect())
}

/// Closure of functions under binary meets (when `meets`), `f ↦ 1 - f` (when
/// `complement`) and `f ⊕ r`, `f ⊖ r` for every `r` in `grid`.
pub fn fun_closure(
    funs: Vec<SemFun>,
    meets: bool,
    complement: bool,
    grid: &[UnitValue],
    budget: usize,
) -> Result<Vec<SemFun>, LogicError> {
    let mut closed: BTreeSet<SemFun> = BTreeSet::new();
    let mut pending: Vec<SemFun> = funs;
    while let Some(f) = pending.pop() {
        if closed.contains(&f) {
            continue;
        }
        if complement {
            pending.push(f.iter().map(|v| v.complement()).collect());
        }
        for &r in grid {
            pending.push(f.iter().map(|v| v.oplus(r)).collect());
            pending.push(f.iter().map(|v| v.ominus(r)).collect());
        }
        if meets {
            pending.extend(closed.iter().map(|g| {
                g.iter()
                    .zip(&f)
                    .map(|(a, b)| a.meet(*b))
                    .collect::<SemFun>()
            }));
        }
        closed.insert(f);
        if closed.len() > budget {
            return Err(LogicError::Budget { limit: budget });
        }
    }
    Ok(closed.into_iter().collect())
}
