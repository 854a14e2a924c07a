#![allow(dead_code)]

use mts_spectrum::lts::{parse_mts, MtsBuilder};
use mts_spectrum::random::{random_mts, seeded_rng, RandomMtsConfig};
use mts_spectrum::{Mts, StateSet, UnitValue};

pub const FIG: &str = include_str!("../../../../models/fig.mts");

pub fn fig() -> Mts {
    parse_mts(FIG).expect("fig model parses")
}

pub fn u(p: i64, q: i64) -> UnitValue {
    UnitValue::new(p, q).unwrap()
}

pub fn set(m: &Mts, names: &[&str]) -> StateSet {
    StateSet::from_ids(
        m.num_states(),
        names.iter().map(|n| m.state_id(n).expect("known state")),
    )
}

pub fn random_models(seed: u64, count: usize, cfg: &RandomMtsConfig) -> Vec<Mts> {
    let mut rng = seeded_rng(seed);
    (0..count).map(|_| random_mts(&mut rng, cfg)).collect()
}

/// The first `count` generated models that contain a cycle.
pub fn cyclic_models(seed: u64, count: usize, cfg: &RandomMtsConfig) -> Vec<Mts> {
    let mut rng = seeded_rng(seed);
    std::iter::repeat_with(|| random_mts(&mut rng, cfg))
        .filter(|m| !m.is_acyclic())
        .take(count)
        .collect()
}

pub fn acyclic(max_states: usize) -> RandomMtsConfig {
    RandomMtsConfig {
        min_states: 3.min(max_states),
        max_states,
        min_labels: 2,
        acyclic: true,
        edge_probability: 0.3,
        ..RandomMtsConfig::default()
    }
}

pub fn layered(max_states: usize) -> RandomMtsConfig {
    RandomMtsConfig {
        layered: true,
        edge_probability: 0.5,
        ..acyclic(max_states)
    }
}

pub fn cyclic(max_states: usize) -> RandomMtsConfig {
    RandomMtsConfig {
        min_states: 3.min(max_states),
        max_states,
        min_labels: 2,
        acyclic: false,
        edge_probability: 0.25,
        ..RandomMtsConfig::default()
    }
}

pub fn discrete(max_states: usize) -> RandomMtsConfig {
    RandomMtsConfig {
        max_states,
        discrete_metric: true,
        edge_probability: 0.2,
        ..RandomMtsConfig::default()
    }
}

/// `a.(b + c)` at `p` and `a.b + a.c` at `q`.
pub fn branching_pair() -> Mts {
    MtsBuilder::new()
        .states(&["p", "p1", "p2", "p3", "q", "q1", "q2", "q3", "q4"])
        .labels(&["a", "b", "c"])
        .trans("p", "a", "p1")
        .trans("p1", "b", "p2")
        .trans("p1", "c", "p3")
        .trans("q", "a", "q1")
        .trans("q", "a", "q2")
        .trans("q1", "b", "q3")
        .trans("q2", "c", "q4")
        .build()
        .unwrap()
}

/// k-label truncation: `x -0-> x` and `y_i -(1/i)-> y_i` for `1 <= i <= k`,
/// labels on the real line with the Euclidean metric.
pub fn finite_a(k: i64) -> Mts {
    let mut labels = vec!["0".to_string()];
    labels.extend((1..=k).map(|i| format!("1/{i}")));
    let value = |s: &str| -> UnitValue { s.parse().unwrap() };
    let mut b = MtsBuilder::new().labels(&labels);
    for a in &labels {
        for c in &labels {
            if a < c {
                b = b.metric(a, c, value(a).abs_diff(value(c)));
            }
        }
    }
    let mut states = vec!["x".to_string()];
    states.extend((1..=k).map(|i| format!("y{i}")));
    b = b.states(&states).trans("x", "0", "x");
    for i in 1..=k {
        b = b.trans(&format!("y{i}"), &format!("1/{i}"), &format!("y{i}"));
    }
    b.build().unwrap()
}
