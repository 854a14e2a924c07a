use std::collections::HashMap;

use thiserror::Error;

use crate::lattice::UnitValue;
use crate::lts::{StateId, StateSet};
use crate::qualitative::{Carrier, RelationKind, RelationTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricAuditError {
    #[error("d({0},{0}) = {1} is not zero")]
    NonZeroDiagonal(usize, UnitValue),
    #[error("triangle fails: d({0},{2}) > d({0},{1}) ⊕ d({1},{2})")]
    Triangle(usize, usize, usize),
    #[error("asymmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
}

/// A (directed) pseudo-metric over states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedMetricTable {
    size: usize,
    entries: Vec<UnitValue>,
    symmetric: bool,
}

impl DirectedMetricTable {
    pub fn zero(size: usize, symmetric: bool) -> Self {
        DirectedMetricTable {
            size,
            entries: vec![UnitValue::ZERO; size * size],
            symmetric,
        }
    }

    pub fn from_fn(
        size: usize,
        symmetric: bool,
        f: impl Fn(StateId, StateId) -> UnitValue,
    ) -> Self {
        let entries = (0..size * size)
            .map(|k| f(StateId(k / size), StateId(k % size)))
            .collect();
        DirectedMetricTable {
            size,
            entries,
            symmetric,
        }
    }

    pub fn from_entries(size: usize, symmetric: bool, entries: Vec<UnitValue>) -> Self {
        assert_eq!(entries.len(), size * size);
        DirectedMetricTable {
            size,
            entries,
            symmetric,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn get(&self, x: StateId, y: StateId) -> UnitValue {
        self.entries[x.0 * self.size + y.0]
    }

    pub fn entries(&self) -> &[UnitValue] {
        &self.entries
    }

    /// `max(d(x, y), d(y, x))`.
    pub fn symmetrized(&self) -> DirectedMetricTable {
        Self::from_fn(self.size, true, |x, y| self.get(x, y).join(self.get(y, x)))
    }

    /// Pointwise `self <= other`.
    pub fn le(&self, other: &DirectedMetricTable) -> bool {
        self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
    }

    pub fn values(&self) -> impl Iterator<Item = UnitValue> + '_ {
        self.entries.iter().copied()
    }

    pub fn audit(&self) -> Result<(), MetricAuditError> {
        let n = self.size;
        for x in 0..n {
            let v = self.get(StateId(x), StateId(x));
            if !v.is_zero() {
                return Err(MetricAuditError::NonZeroDiagonal(x, v));
            }
        }
        for x in 0..n {
            for y in 0..n {
                if self.symmetric
                    && self.get(StateId(x), StateId(y)) != self.get(StateId(y), StateId(x))
                {
                    return Err(MetricAuditError::Asymmetric(x, y));
                }
                for z in 0..n {
                    let via = self
                        .get(StateId(x), StateId(y))
                        .oplus(self.get(StateId(y), StateId(z)));
                    if self.get(StateId(x), StateId(z)) > via {
                        return Err(MetricAuditError::Triangle(x, y, z));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Zero-distance pairs.
pub fn kernel(d: &DirectedMetricTable) -> RelationTable {
    let kind = if d.is_symmetric() {
        RelationKind::Equivalence
    } else {
        RelationKind::Preorder
    };
    RelationTable::from_fn(Carrier::States(d.size()), kind, |i, j| {
        d.get(StateId(i), StateId(j)).is_zero()
    })
}

/// Distances from singletons to macro-states. General first arguments are
/// evaluated as the maximum over their members; the empty column is 1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PowersetMetricTable {
    cells: HashMap<(StateId, StateSet), UnitValue>,
}

impl PowersetMetricTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, x: StateId, y: StateSet, value: UnitValue) {
        if !y.is_empty() {
            self.cells.insert((x, y), value);
        }
    }

    /// `d({x}, Y)`, or `None` for an untabulated nonempty `Y`.
    pub fn cell(&self, x: StateId, y: &StateSet) -> Option<UnitValue> {
        if y.is_empty() {
            return Some(UnitValue::ONE);
        }
        self.cells.get(&(x, y.clone())).copied()
    }

    /// `d(X1, X2) = max_{x in X1} d({x}, X2)`.
    pub fn eval(&self, x1: &StateSet, x2: &StateSet) -> Option<UnitValue> {
        x1.iter()
            .try_fold(UnitValue::ZERO, |acc, x| Some(acc.join(self.cell(x, x2)?)))
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Tabulated cells in a stable order.
    pub fn sorted_cells(&self) -> Vec<(StateId, StateSet, UnitValue)> {
        let mut v: Vec<_> = self
            .cells
            .iter()
            .map(|((x, y), d)| (*x, y.clone(), *d))
            .collect();
        v.sort();
        v
    }

    /// Tabulated `(x, Y)` pairs at distance 0.
    pub fn kernel(&self) -> Vec<(StateId, StateSet)> {
        self.sorted_cells()
            .into_iter()
            .filter(|(_, _, d)| d.is_zero())
            .map(|(x, y, _)| (x, y))
            .collect()
    }
}
