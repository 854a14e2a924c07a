//! The Death/Maiden threshold game deciding `d_T(X1, X2) <= ε`.
//!
//! At `(X1, X2)` Death picks a move `(a, x')` of `X1` and a set `Δ ⊆ δ[X2]`.
//! Maiden either accepts, winning iff `min_{b in lab Δ} d_A(a, b) <= ε`, or
//! rejects and play continues at `({x'}, ter(δ[X2] \ Δ))`. Death wins at once
//! when `X1` is nonempty, `X2` is empty and `ε < 1`. Infinite plays are won by
//! Maiden.

use std::collections::{BTreeSet, HashMap};

use crate::lattice::UnitValue;
use crate::lts::{ter, LabelId, Move, Mts, StateId, StateSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DeltaSpace {
    /// Only `Δ = {(b, y) | d_A(a, b) >= t}`.
    #[default]
    Threshold,
    /// All subsets of `δ[X2]`.
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GamePosition {
    Death {
        x1: StateSet,
        x2: StateSet,
    },
    Maiden {
        label: LabelId,
        target: StateId,
        x2: StateSet,
        delta: Vec<Move>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Winner {
    Maiden,
    Death,
}

/// Solved game graph. Positions are indexed; the root is index 0.
#[derive(Debug, Clone)]
pub struct GameSolution {
    pub epsilon: UnitValue,
    pub winner: Winner,
    pub positions: Vec<GamePosition>,
    pub successors: Vec<Vec<usize>>,
    /// Death's attractor: `Some(rank)` for positions Death wins within `rank` moves.
    pub death_rank: Vec<Option<usize>>,
    /// Death's chosen successor at Death positions he wins by moving.
    pub death_choice: Vec<Option<usize>>,
}

fn accept_value(m: &Mts, label: LabelId, delta: &[Move]) -> UnitValue {
    UnitValue::inf(delta.iter().map(|&(b, _)| m.d(label, b)))
}

fn deltas(m: &Mts, a: LabelId, moves2: &[Move], space: DeltaSpace) -> Vec<Vec<Move>> {
    match space {
        DeltaSpace::Full => (0..1u64 << moves2.len())
            .map(|mask| {
                moves2
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, mv)| *mv)
                    .collect()
            })
            .collect(),
        DeltaSpace::Threshold => {
            let levels: BTreeSet<UnitValue> = moves2.iter().map(|&(b, _)| m.d(a, b)).collect();
            let mut out: Vec<Vec<Move>> = levels
                .into_iter()
                .map(|t| {
                    moves2
                        .iter()
                        .copied()
                        .filter(|&(b, _)| m.d(a, b) >= t)
                        .collect()
                })
                .collect();
            out.push(Vec::new());
            out
        }
    }
}

/// Solves the game from `(X1, X2)` at threshold `epsilon`.
pub fn solve_game(
    m: &Mts,
    x1: &StateSet,
    x2: &StateSet,
    epsilon: UnitValue,
    space: DeltaSpace,
) -> GameSolution {
    let mut positions = vec![GamePosition::Death {
        x1: x1.clone(),
        x2: x2.clone(),
    }];
    let mut index: HashMap<GamePosition, usize> = HashMap::new();
    index.insert(positions[0].clone(), 0);
    let mut successors: Vec<Vec<usize>> = Vec::new();
    // positions that Death wins with no further move
    let mut terminal_death = Vec::new();

    let mut i = 0;
    while i < positions.len() {
        let mut next = Vec::new();
        let mut immediate = false;
        match positions[i].clone() {
            GamePosition::Death { x1, x2 } => {
                if !x1.is_empty() && x2.is_empty() && epsilon < UnitValue::ONE {
                    immediate = true;
                } else {
                    let moves2 = m.successors(&x2, None);
                    for (a, target) in m.successors(&x1, None) {
                        for delta in deltas(m, a, &moves2, space) {
                            next.push(GamePosition::Maiden {
                                label: a,
                                target,
                                x2: x2.clone(),
                                delta,
                            });
                        }
                    }
                }
            }
            GamePosition::Maiden {
                label,
                target,
                x2,
                delta,
            } => {
                // accepting wins for Maiden; otherwise she must reject
                if accept_value(m, label, &delta) > epsilon {
                    let rest: Vec<Move> = m
                        .successors(&x2, None)
                        .into_iter()
                        .filter(|mv| !delta.contains(mv))
                        .collect();
                    next.push(GamePosition::Death {
                        x1: m.singleton(target),
                        x2: ter(m.num_states(), &rest),
                    });
                }
            }
        }
        let ids = next
            .into_iter()
            .map(|p| {
                *index.entry(p.clone()).or_insert_with(|| {
                    positions.push(p);
                    positions.len() - 1
                })
            })
            .collect();
        successors.push(ids);
        terminal_death.push(immediate);
        i += 1;
    }

    // backward attractor for Death
    let count = positions.len();
    let mut predecessors = vec![Vec::new(); count];
    for (p, succ) in successors.iter().enumerate() {
        for &q in succ {
            predecessors[q].push(p);
        }
    }
    let mut death_rank: Vec<Option<usize>> = vec![None; count];
    let mut death_choice: Vec<Option<usize>> = vec![None; count];
    let mut queue: std::collections::VecDeque<usize> = std::collections::VecDeque::new();
    for p in 0..count {
        if terminal_death[p] {
            death_rank[p] = Some(0);
            queue.push_back(p);
        }
    }
    while let Some(q) = queue.pop_front() {
        let rank = death_rank[q].expect("queued positions are ranked");
        for &p in &predecessors[q] {
            if death_rank[p].is_some() {
                continue;
            }
            // Death positions need one winning successor; Maiden positions have
            // at most one (the forced rejection), so one suffices there too.
            death_rank[p] = Some(rank + 1);
            if matches!(positions[p], GamePosition::Death { .. }) {
                death_choice[p] = Some(q);
            }
            queue.push_back(p);
        }
    }
    let winner = if death_rank[0].is_some() {
        Winner::Death
    } else {
        Winner::Maiden
    };
    GameSolution {
        epsilon,
        winner,
        positions,
        successors,
        death_rank,
        death_choice,
    }
}

impl GameSolution {
    pub fn maiden_wins(&self) -> bool {
        self.winner == Winner::Maiden
    }

    /// Re-checks the winning regions locally against the game rules.
    pub fn check(&self, m: &Mts) -> Result<(), String> {
        for (p, pos) in self.positions.iter().enumerate() {
            let succ = &self.successors[p];
            match (pos, self.death_rank[p]) {
                (GamePosition::Death { x1, x2 }, Some(rank)) => {
                    let immediate =
                        !x1.is_empty() && x2.is_empty() && self.epsilon < UnitValue::ONE;
                    if immediate {
                        continue;
                    }
                    let c = self.death_choice[p].ok_or(format!("no choice at {p}"))?;
                    if !succ.contains(&c) || !self.death_rank[c].is_some_and(|r| r < rank) {
                        return Err(format!("bad Death choice at {p}"));
                    }
                }
                (GamePosition::Death { .. }, None) => {
                    if succ.iter().any(|&q| self.death_rank[q].is_some()) {
                        return Err(format!("Death could escape at {p}"));
                    }
                }
                (GamePosition::Maiden { label, delta, .. }, Some(rank)) => {
                    if accept_value(m, *label, delta) <= self.epsilon {
                        return Err(format!("Maiden could accept at {p}"));
                    }
                    if !succ
                        .iter()
                        .all(|&q| self.death_rank[q].is_some_and(|r| r < rank))
                        || succ.is_empty()
                    {
                        return Err(format!("rejection not losing at {p}"));
                    }
                }
                (GamePosition::Maiden { label, delta, .. }, None) => {
                    let accepts = accept_value(m, *label, delta) <= self.epsilon;
                    if !accepts && succ.iter().any(|&q| self.death_rank[q].is_some()) {
                        return Err(format!("Maiden loses at {p}"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Candidate thresholds: the label distances together with 0 and 1.
pub fn candidate_thresholds(m: &Mts) -> Vec<UnitValue> {
    m.metric_values().into_iter().collect()
}

/// The least candidate threshold at which Maiden wins, by bisection.
pub fn game_distance(m: &Mts, x1: &StateSet, x2: &StateSet, space: DeltaSpace) -> UnitValue {
    let candidates = candidate_thresholds(m);
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    // Maiden always wins at ε = 1
    while lo < hi {
        let mid = (lo + hi) / 2;
        if solve_game(m, x1, x2, candidates[mid], space).maiden_wins() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo]
}
