//! Seeded random model generation for property tests and acceptance runs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lattice::UnitValue;
use crate::lts::{LabelId, LabelMetric, Mts, StateId};

#[derive(Debug, Clone)]
pub struct RandomMtsConfig {
    pub min_states: usize,
    pub max_states: usize,
    pub min_labels: usize,
    pub max_labels: usize,
    /// Label distances are multiples of `1/q` for some `q` in `1..=max_denominator`.
    pub max_denominator: i64,
    /// Only transitions from lower to higher state index.
    pub acyclic: bool,
    /// States are split into consecutive levels and transitions only go one
    /// level down, so all maximal traces from a level share a length. Implies acyclic.
    pub layered: bool,
    pub discrete_metric: bool,
    /// Probability of each candidate `(s, a, t)` transition.
    pub edge_probability: f64,
}

impl Default for RandomMtsConfig {
    fn default() -> Self {
        RandomMtsConfig {
            min_states: 1,
            max_states: 5,
            min_labels: 1,
            max_labels: 3,
            max_denominator: 6,
            acyclic: false,
            layered: false,
            discrete_metric: false,
            edge_probability: 0.2,
        }
    }
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random label metric with a common denominator, closed under the triangle inequality.
pub fn random_label_metric<R: Rng>(
    rng: &mut R,
    labels: usize,
    max_denominator: i64,
) -> LabelMetric {
    let q = rng.gen_range(1..=max_denominator.max(1));
    let mut metric = LabelMetric::discrete(labels);
    for a in 0..labels {
        for b in a + 1..labels {
            let k = rng.gen_range(1..=q);
            metric.set(
                LabelId(a),
                LabelId(b),
                UnitValue::new(k, q).expect("k <= q"),
            );
        }
    }
    for mid in 0..labels {
        for a in 0..labels {
            for c in 0..labels {
                let via = metric
                    .get(LabelId(a), LabelId(mid))
                    .oplus(metric.get(LabelId(mid), LabelId(c)));
                if a != c && via < metric.get(LabelId(a), LabelId(c)) {
                    metric.set(LabelId(a), LabelId(c), via);
                }
            }
        }
    }
    metric
}

pub fn random_mts<R: Rng>(rng: &mut R, cfg: &RandomMtsConfig) -> Mts {
    let n = rng.gen_range(cfg.min_states.max(1)..=cfg.max_states.max(cfg.min_states.max(1)));
    let k = rng.gen_range(cfg.min_labels.max(1)..=cfg.max_labels.max(cfg.min_labels.max(1)));
    let metric = if cfg.discrete_metric {
        LabelMetric::discrete(k)
    } else {
        random_label_metric(rng, k, cfg.max_denominator)
    };
    let level_width = rng.gen_range(1..=2usize);
    let allowed = |s: usize, t: usize| {
        if cfg.layered {
            t / level_width == s / level_width + 1
        } else {
            !cfg.acyclic || t > s
        }
    };
    let mut transitions = Vec::new();
    for s in 0..n {
        for a in 0..k {
            for t in (0..n).filter(|&t| allowed(s, t)) {
                if rng.gen_bool(cfg.edge_probability) {
                    transitions.push((StateId(s), LabelId(a), StateId(t)));
                }
            }
        }
    }
    let states = (0..n).map(|i| format!("s{i}")).collect();
    let labels = (0..k).map(|i| format!("l{i}")).collect();
    Mts::new(states, labels, metric, transitions).expect("generated metric satisfies the axioms")
}
