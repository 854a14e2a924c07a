/// Outcome of a Kleene iteration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixpointReport<T> {
    /// Number of step applications performed.
    pub iterations: usize,
    /// True when the last application returned its argument unchanged.
    pub stabilized: bool,
    pub table: T,
}

/// Iteration bookkeeping detached from the table, plus the a-priori bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FixpointStats {
    pub iterations: usize,
    pub stabilized: bool,
    /// `|D| * cells + 1` for the value set `D` the step can produce.
    pub bound: usize,
}

impl FixpointStats {
    pub fn within_bound(&self) -> bool {
        self.stabilized && self.iterations <= self.bound
    }

    /// Neutral element of [`FixpointStats::merge`].
    pub fn none() -> FixpointStats {
        FixpointStats {
            iterations: 0,
            stabilized: true,
            bound: 0,
        }
    }

    /// Sums two computations. The result counts as stabilized only if both parts
    /// stabilized within their own bounds.
    pub fn merge(self, other: FixpointStats) -> FixpointStats {
        FixpointStats {
            iterations: self.iterations + other.iterations,
            stabilized: self.within_bound() && other.within_bound(),
            bound: self.bound + other.bound,
        }
    }
}

/// A computed value together with the stats of the fixpoint that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Computed<T> {
    pub value: T,
    pub stats: FixpointStats,
}

impl<T> FixpointReport<T> {
    pub fn stats(&self, bound: usize) -> FixpointStats {
        FixpointStats {
            iterations: self.iterations,
            stabilized: self.stabilized,
            bound,
        }
    }
}

/// Iteration bound for a table of `cells` entries ranging over `values` distinct values.
pub fn default_max_iter(values: usize, cells: usize) -> usize {
    values.saturating_mul(cells).saturating_add(1)
}

/// Iterates `step` from `bottom` until two consecutive iterates coincide or
/// `max_iter` applications have been made.
///
/// Monotonicity of `step` is the caller's obligation. Greatest fixpoints are
/// obtained by passing the top element as `bottom`.
pub fn kleene_fix<T, F>(mut step: F, bottom: T, max_iter: usize) -> FixpointReport<T>
where
    T: PartialEq,
    F: FnMut(&T) -> T,
{
    let mut current = bottom;
    for i in 1..=max_iter {
        let next = step(&current);
        if next == current {
            return FixpointReport {
                iterations: i,
                stabilized: true,
                table: current,
            };
        }
        current = next;
    }
    FixpointReport {
        iterations: max_iter,
        stabilized: false,
        table: current,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_stabilizes_immediately() {
        let r = kleene_fix(|t: &Vec<u8>| t.clone(), vec![0; 4], 10);
        assert_eq!(r.iterations, 1);
        assert!(r.stabilized);
        assert_eq!(r.table, vec![0; 4]);
    }

    #[test]
    fn reports_non_stabilization() {
        let r = kleene_fix(|n: &u32| n + 1, 0, 5);
        assert!(!r.stabilized);
        assert_eq!(r.iterations, 5);
        assert_eq!(r.table, 5);
    }

    #[test]
    fn counts_to_fixpoint() {
        let r = kleene_fix(|n: &u32| (*n + 1).min(3), 0, 100);
        assert_eq!((r.iterations, r.table), (4, 3));
        assert!(r.stats(default_max_iter(4, 1)).within_bound());
    }
}
