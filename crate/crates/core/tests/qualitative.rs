mod common;

use common::{acyclic, branching_pair, cyclic, fig, random_models, set};
use mts_spectrum::lts::{bounded_traces, MtsBuilder};
use mts_spectrum::oracle::omega_oracle;
use mts_spectrum::qualitative::{
    bisimilarity, decorated_base, decorated_trace_related, similarity, state_relation,
    trace_equivalent, trace_iterate, trace_step, DecoratedKind, MacroCarrier, RelationKind,
    Semantics,
};
use mts_spectrum::random::{random_mts, seeded_rng};
use mts_spectrum::{Mts, StateSet};
use proptest::prelude::*;

fn keys(m: &Mts, x: &StateSet, len: usize) -> Vec<mts_spectrum::Trace> {
    bounded_traces(m, x, len).into_keys().collect()
}

#[test]
fn branching_pair_separates_trace_from_bisim() {
    let m = branching_pair();
    let (p, q) = (m.state_id("p").unwrap(), m.state_id("q").unwrap());
    assert!(state_relation(&m, Semantics::Trace, None)
        .value
        .related(p, q));
    assert!(!bisimilarity(&m, None).value.related(p, q));
    assert!(similarity(&m, None).value.related(q, p));
    assert!(!similarity(&m, None).value.related(p, q));
    assert!(
        state_relation(&m, Semantics::Decorated(DecoratedKind::Completed), None)
            .value
            .related(p, q)
    );
    assert!(
        !state_relation(&m, Semantics::Decorated(DecoratedKind::Ready), None)
            .value
            .related(p, q)
    );
    assert!(
        !state_relation(&m, Semantics::Decorated(DecoratedKind::Failure), None)
            .value
            .related(p, q)
    );
}

#[test]
fn fig_x_y_not_trace_equivalent() {
    let m = fig();
    assert!(!trace_equivalent(&m, &set(&m, &["x"]), &set(&m, &["y"]), None).value);
    assert!(trace_equivalent(&m, &set(&m, &["xp1"]), &set(&m, &["y1p"]), None).value);
    assert!(trace_equivalent(&m, &m.empty_set(), &m.empty_set(), None).value);
    assert!(!trace_equivalent(&m, &set(&m, &["xp1"]), &m.empty_set(), None).value);
}

#[test]
fn single_self_loop_is_reflexive() {
    let m = MtsBuilder::new()
        .states(&["s"])
        .labels(&["a"])
        .trans("s", "a", "s")
        .build()
        .unwrap();
    let r = bisimilarity(&m, None).value;
    assert_eq!(r.pairs().collect::<Vec<_>>(), vec![(0, 0)]);
}

#[test]
fn simulation_of_a_prefix() {
    let m = MtsBuilder::new()
        .states(&["p", "p1", "p2", "q", "q1", "q2", "q3"])
        .labels(&["a", "b", "c"])
        .trans("p", "a", "p1")
        .trans("p1", "b", "p2")
        .trans("q", "a", "q1")
        .trans("q1", "b", "q2")
        .trans("q1", "c", "q3")
        .build()
        .unwrap();
    let (p, q) = (m.state_id("p").unwrap(), m.state_id("q").unwrap());
    let sim = similarity(&m, None).value;
    assert!(sim.related(p, q));
    assert!(!sim.related(q, p));
}

#[test]
fn returned_relations_pass_audits() {
    for m in random_models(11, 25, &cyclic(5)) {
        let bisim = bisimilarity(&m, None);
        assert!(bisim.stats.within_bound());
        assert_eq!(bisim.value.kind(), RelationKind::Equivalence);
        bisim.value.audit().unwrap();
        let sim = similarity(&m, None);
        assert_eq!(sim.value.kind(), RelationKind::Preorder);
        sim.value.audit().unwrap();
        assert!(bisim.value.is_subset(&sim.value));
        assert!(bisim.value.is_subset(&sim.value.inverse()));
        for kind in DecoratedKind::ALL {
            let base = decorated_base(&m, kind, None);
            base.value.audit().unwrap();
            state_relation(&m, Semantics::Decorated(kind), None)
                .value
                .audit()
                .unwrap();
        }
        state_relation(&m, Semantics::Trace, None)
            .value
            .audit()
            .unwrap();
    }
}

#[test]
fn trace_iterates_are_congruences() {
    for m in random_models(12, 20, &cyclic(4)) {
        let carrier = MacroCarrier::powerset(&m);
        let mut prev = trace_iterate(&m, carrier.clone(), 0);
        for k in 1..=4 {
            let r = trace_iterate(&m, carrier.clone(), k);
            assert_eq!(r.kind(), RelationKind::CongruenceOnPowerset);
            r.audit_with(512, k as u64).unwrap();
            assert!(r.is_subset(&prev));
            assert!(r.same_pairs(&trace_step(&m, &prev)));
            prev = r;
        }
    }
}

#[test]
fn powerset_iteration_agrees_with_pair_graph() {
    for m in random_models(13, 20, &cyclic(4)) {
        let carrier = MacroCarrier::powerset(&m);
        let limit = trace_iterate(&m, carrier.clone(), carrier.len() + 1);
        for a in carrier.sets() {
            for b in carrier.sets() {
                let lazy = trace_equivalent(&m, a, b, None);
                assert!(lazy.stats.within_bound());
                assert_eq!(limit.related_sets(a, b), Some(lazy.value));
            }
        }
    }
}

fn qualitative_chain(m: &Mts) -> Vec<mts_spectrum::qualitative::RelationTable> {
    use DecoratedKind::*;
    [
        Semantics::Bisim,
        Semantics::Decorated(PossibleFutures),
        Semantics::Decorated(Ready),
        Semantics::Decorated(Failure),
        Semantics::Decorated(Completed),
        Semantics::Trace,
    ]
    .into_iter()
    .map(|s| state_relation(m, s, None).value)
    .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn qualitative_hierarchy(seed in any::<u64>(), acyc in any::<bool>()) {
        let cfg = if acyc { acyclic(6) } else { cyclic(6) };
        let m = random_mts(&mut seeded_rng(seed), &cfg);
        let chain = qualitative_chain(&m);
        for w in chain.windows(2) {
            prop_assert!(w[0].is_subset(&w[1]));
        }
    }

    #[test]
    fn trace_equivalence_matches_trace_sets(seed in any::<u64>(), a in any::<u64>(), b in any::<u64>()) {
        let m = random_mts(&mut seeded_rng(seed), &acyclic(6));
        let n = m.num_states();
        let mask = (1u64 << n) - 1;
        let (x1, x2) = (StateSet::from_mask(n, a & mask), StateSet::from_mask(n, b & mask));
        let h = m.longest_path().unwrap();
        let same = keys(&m, &x1, h) == keys(&m, &x2, h);
        prop_assert_eq!(trace_equivalent(&m, &x1, &x2, None).value, same);
    }

    #[test]
    fn decorated_relation_matches_oracle(seed in any::<u64>(), a in any::<u64>(), b in any::<u64>(), k in 0usize..4) {
        let m = random_mts(&mut seeded_rng(seed), &acyclic(6));
        let n = m.num_states();
        let mask = (1u64 << n) - 1;
        let (x1, x2) = (StateSet::from_mask(n, a & mask), StateSet::from_mask(n, b & mask));
        let kind = DecoratedKind::ALL[k];
        let r0 = decorated_base(&m, kind, None).value;
        let h = m.longest_path().unwrap();
        let oracle = omega_oracle(&m, &x1, &x2, &r0, h).unwrap();
        prop_assert!(oracle.exact);
        prop_assert_eq!(decorated_trace_related(&m, &x1, &x2, &r0, None).value, oracle.value);
    }
}
