mod common;

use std::collections::BTreeSet;

use common::{acyclic, cyclic, discrete, fig, random_models, set, u};
use mts_spectrum::logic::{
    alpha, alpha_b, alpha_bm, alpha_s, alpha_sm, diamond, eval, hm_cross_check, logic_saturate,
    next, parse_formula, render, saturate_levels, AlphaMode, Denotation, Formula, Fragment,
    Induced, LogicError, SaturateOptions,
};
use mts_spectrum::lts::MtsBuilder;
use mts_spectrum::random::{random_mts, seeded_rng};
use mts_spectrum::{LabelId, Mts, StateId, StateSet, UnitValue};
use proptest::prelude::*;

fn why_shifts() -> Mts {
    let labels = ["0", "1/4", "1/2", "3/4", "1"];
    let value = |s: &str| -> UnitValue { s.parse().unwrap() };
    let mut b = MtsBuilder::new()
        .states(&["x", "y", "x1", "y1"])
        .labels(&labels);
    for a in labels {
        for c in labels {
            if value(a) < value(c) {
                b = b.metric(a, c, value(c).ominus(value(a)));
            }
        }
    }
    b.trans("x", "1", "x1")
        .trans("y", "0", "y1")
        .build()
        .unwrap()
}

fn as_set(d: Denotation) -> StateSet {
    match d {
        Denotation::Set(s) => s,
        Denotation::Fun(_) => panic!("expected a set"),
    }
}

fn as_fun(d: Denotation) -> Vec<UnitValue> {
    match d {
        Denotation::Fun(f) => f,
        Denotation::Set(_) => panic!("expected a function"),
    }
}

#[test]
fn parse_render_round_trip() {
    let m = fig();
    let cases = [
        (Fragment::BisimQ, "and(<0>true,not(<1>or(true,<1/2>true)))"),
        (Fragment::SimQ, "<0>and(<0>true,<1>true)"),
        (Fragment::TraceQ, "<0><1>pred:refuse{0,1}"),
        (Fragment::TraceQ, "<1/2>pred:TX"),
        (Fragment::BisimM, "not(shift+(<0>true,1/2))"),
        (Fragment::SimM, "shift-(and(<0>true,<1/2>true),1/4)"),
        (Fragment::TraceM, "<0>shift+(pred:g(1),1/2)"),
        (Fragment::TraceM, "<0>pred:ready{0}"),
    ];
    for (fragment, text) in cases {
        let f = parse_formula(&m, text, fragment).unwrap();
        assert_eq!(render(&m, &f), text);
        assert_eq!(parse_formula(&m, &render(&m, &f), fragment).unwrap(), f);
    }
}

#[test]
fn fragment_violations() {
    let m = fig();
    let err = |fragment, text| parse_formula(&m, text, fragment).unwrap_err();
    assert!(matches!(
        err(Fragment::SimQ, "not(true)"),
        LogicError::FragmentViolation { .. }
    ));
    assert!(matches!(
        err(Fragment::TraceQ, "and(true,true)"),
        LogicError::FragmentViolation { .. }
    ));
    assert!(matches!(
        err(Fragment::BisimQ, "shift+(true,1/2)"),
        LogicError::FragmentViolation { .. }
    ));
    assert!(matches!(
        err(Fragment::TraceQ, "pred:g(0)"),
        LogicError::PredicateViolation(..)
    ));
    assert!(matches!(
        err(Fragment::TraceM, "or(true,true)"),
        LogicError::FragmentViolation { .. }
    ));
    assert!(matches!(
        err(Fragment::BisimQ, "<7>true"),
        LogicError::UnknownLabel(_)
    ));
    assert!(matches!(
        err(Fragment::BisimQ, "and(true"),
        LogicError::Syntax { .. }
    ));
    assert!(parse_formula(&m, "shift+(true,3/2)", Fragment::SimM).is_err());
    assert_eq!(
        parse_formula(&m, "<0><1>true", Fragment::SimQ)
            .unwrap()
            .modal_depth(),
        2
    );
}

#[test]
fn true_is_top() {
    let m = fig();
    assert_eq!(
        as_set(eval(&m, &Formula::True, Fragment::BisimQ).unwrap()),
        m.full_set()
    );
    assert_eq!(
        as_fun(eval(&m, &Formula::True, Fragment::BisimM).unwrap()),
        vec![UnitValue::ONE; 9]
    );
}

#[test]
fn shifted_next_separates_why_shifts_states() {
    let m = why_shifts();
    let half = u(1, 2);
    let g = vec![UnitValue::ONE, UnitValue::ONE, UnitValue::ONE, half];
    let ng = next(&m, m.label_id("1").unwrap(), &g);
    assert_eq!((ng[0], ng[1]), (UnitValue::ONE, UnitValue::ZERO));
    assert_eq!(
        alpha_sm(4, &[ng]).get(StateId(0), StateId(1)),
        UnitValue::ONE
    );
    let d = alpha_sm(4, &[g]);
    for p in 0..3 {
        for q in 0..3 {
            assert_eq!(d.get(StateId(p), StateId(q)), UnitValue::ZERO);
        }
        assert_eq!(d.get(StateId(p), StateId(3)), half);
    }
}

#[test]
fn constant_one_reaches_full_distance_without_shifts() {
    // ◯_1 applied to the constant 1 already separates x from y
    let m = why_shifts();
    let n1 = next(&m, m.label_id("1").unwrap(), &[UnitValue::ONE; 4]);
    assert_eq!(n1[0].ominus(n1[1]), UnitValue::ONE);
}

#[test]
fn alpha_base_cases() {
    let m = fig();
    let Induced::Metric(zero) = alpha(&m, &[], AlphaMode::BM).unwrap() else {
        panic!()
    };
    assert!(zero.values().all(|v| v == UnitValue::ZERO));
    let s = set(&m, &["x", "y", "xp"]);
    let r = alpha_b(9, std::slice::from_ref(&s));
    for p in m.states() {
        for q in m.states() {
            assert_eq!(r.related(p, q), s.contains(p) == s.contains(q));
        }
    }
    r.audit().unwrap();
}

#[test]
fn saturation_base_levels() {
    let m = fig();
    for fragment in Fragment::ALL {
        assert!(
            logic_saturate(&m, fragment, 0, &SaturateOptions::shift_free())
                .unwrap()
                .is_empty()
        );
    }
    let two = MtsBuilder::new()
        .states(&["p", "q"])
        .labels(&["a"])
        .trans("p", "a", "q")
        .build()
        .unwrap();
    let got: BTreeSet<Denotation> =
        logic_saturate(&two, Fragment::BisimQ, 1, &SaturateOptions::shift_free())
            .unwrap()
            .into_iter()
            .collect();
    let a = LabelId(0);
    let expected: BTreeSet<Denotation> = [two.empty_set(), two.full_set()]
        .iter()
        .map(|s| Denotation::Set(diamond(&two, a, s)))
        .collect();
    assert_eq!(got, expected);

    let t1 = logic_saturate(&m, Fragment::TraceQ, 1, &SaturateOptions::shift_free()).unwrap();
    assert_eq!(t1, vec![Denotation::Set(m.full_set())]);
    let t2 = logic_saturate(&m, Fragment::TraceQ, 2, &SaturateOptions::shift_free()).unwrap();
    for l in m.labels() {
        assert!(t2.contains(&Denotation::Set(diamond(&m, l, &m.full_set()))));
    }
}

#[test]
fn hm_on_fig() {
    let m = fig();
    let report = hm_cross_check(&m, Fragment::BisimQ, 2, &SaturateOptions::shift_free()).unwrap();
    assert!(report.passed);
    assert!(report.rows.iter().all(|r| r.equal));
    for fragment in [
        Fragment::SimQ,
        Fragment::TraceQ,
        Fragment::SimM,
        Fragment::TraceM,
    ] {
        let report = hm_cross_check(&m, fragment, 5, &SaturateOptions::shift_free()).unwrap();
        assert!(report.passed, "{fragment}");
        assert!(report.logic_stabilized, "{fragment}");
    }
    let sat = saturate_levels(&m, Fragment::TraceM, 6, &SaturateOptions::shift_free()).unwrap();
    let funs: Vec<Vec<UnitValue>> = sat.level(6).iter().cloned().map(as_fun).collect();
    let value = mts_spectrum::logic::alpha_tm_value(&funs, &set(&m, &["x"]), &set(&m, &["y"]));
    assert_eq!(value, u(1, 2));
}

#[test]
fn hm_guard() {
    let m = random_mts(
        &mut seeded_rng(1),
        &mts_spectrum::random::RandomMtsConfig {
            min_states: 13,
            max_states: 13,
            ..Default::default()
        },
    );
    assert!(matches!(
        hm_cross_check(&m, Fragment::BisimQ, 1, &SaturateOptions::shift_free()),
        Err(LogicError::TooLarge(_))
    ));
}

#[test]
fn alpha_outputs_pass_audits() {
    for m in random_models(31, 10, &cyclic(4)) {
        for (fragment, mode) in [
            (Fragment::BisimQ, AlphaMode::B),
            (Fragment::SimQ, AlphaMode::S),
            (Fragment::TraceQ, AlphaMode::T),
            (Fragment::BisimM, AlphaMode::BM),
            (Fragment::SimM, AlphaMode::SM),
        ] {
            let ds = logic_saturate(&m, fragment, 2, &SaturateOptions::shift_free()).unwrap();
            match alpha(&m, &ds, mode).unwrap() {
                Induced::Relation(r) => r.audit().unwrap(),
                Induced::Metric(d) => d.audit().unwrap(),
                Induced::Powerset(_) => unreachable!(),
            }
        }
    }
}

/// Random formula shapes; labels are reduced modulo the alphabet when built.
#[derive(Debug, Clone)]
enum Shape {
    True,
    Next(usize, Box<Shape>),
    And(Box<Shape>, Box<Shape>),
    Or(Box<Shape>, Box<Shape>),
    Not(Box<Shape>),
}

fn shape() -> impl Strategy<Value = Shape> {
    Just(Shape::True).prop_recursive(4, 16, 2, |inner| {
        prop_oneof![
            (0usize..4, inner.clone()).prop_map(|(a, s)| Shape::Next(a, Box::new(s))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Shape::And(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Shape::Or(Box::new(a), Box::new(b))),
            inner.prop_map(|s| Shape::Not(Box::new(s))),
        ]
    })
}

fn build(m: &Mts, s: &Shape) -> Formula {
    match s {
        Shape::True => Formula::True,
        Shape::Next(a, s) => Formula::Next(LabelId(a % m.num_labels()), Box::new(build(m, s))),
        Shape::And(a, b) => Formula::And(vec![build(m, a), build(m, b)]),
        Shape::Or(a, b) => Formula::Or(vec![build(m, a), build(m, b)]),
        Shape::Not(s) => Formula::Not(Box::new(build(m, s))),
    }
}

fn one_level(m: &Mts, f: &[UnitValue]) -> StateSet {
    StateSet::from_ids(
        m.num_states(),
        m.states().filter(|x| f[x.0] == UnitValue::ONE),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn discrete_next_is_diamond_on_one_level(seed in any::<u64>(), s in shape(), a in 0usize..4) {
        let m = random_mts(&mut seeded_rng(seed), &discrete(5));
        let phi = build(&m, &s);
        let a = LabelId(a % m.num_labels());
        let inner = as_fun(eval(&m, &phi, Fragment::BisimM).unwrap());
        let outer = as_fun(eval(&m, &Formula::Next(a, Box::new(phi)), Fragment::BisimM).unwrap());
        prop_assert_eq!(one_level(&m, &outer), diamond(&m, a, &one_level(&m, &inner)));
    }

    #[test]
    fn alpha_is_monotone_in_formulas(seed in any::<u64>(), keep in any::<u64>()) {
        let m = random_mts(&mut seeded_rng(seed), &acyclic(4));
        let n = m.num_states();
        let sets: Vec<StateSet> = logic_saturate(&m, Fragment::BisimQ, 2, &SaturateOptions::shift_free())
            .unwrap().into_iter().map(as_set).collect();
        let sub: Vec<StateSet> = sets.iter().enumerate().filter(|(i, _)| keep >> (i % 64) & 1 == 1)
            .map(|(_, s)| s.clone()).collect();
        prop_assert!(alpha_b(n, &sets).is_subset(&alpha_b(n, &sub)));
        prop_assert!(alpha_s(n, &sets).is_subset(&alpha_s(n, &sub)));
        let funs: Vec<Vec<UnitValue>> = logic_saturate(&m, Fragment::BisimM, 2, &SaturateOptions::shift_free())
            .unwrap().into_iter().map(as_fun).collect();
        let fsub: Vec<Vec<UnitValue>> = funs.iter().enumerate().filter(|(i, _)| keep >> (i % 64) & 1 == 1)
            .map(|(_, f)| f.clone()).collect();
        prop_assert!(alpha_bm(n, &fsub).le(&alpha_bm(n, &funs)));
        prop_assert!(alpha_sm(n, &fsub).le(&alpha_sm(n, &funs)));
    }
}
