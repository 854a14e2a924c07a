use mts_spectrum::lattice::{
    default_max_iter, directed_hausdorff, hausdorff, kleene_fix, lift_related, relation_lift,
    LiftMode, UnitValue,
};
use proptest::prelude::*;

fn grid(q: i64) -> Vec<UnitValue> {
    (0..=q).map(|k| UnitValue::new(k, q).unwrap()).collect()
}

fn unit() -> impl Strategy<Value = UnitValue> {
    (0i64..=12, 1i64..=12).prop_map(|(p, q)| UnitValue::new(p.min(q), q).unwrap())
}

#[test]
fn inf_sup_exchange_on_grid() {
    let g = grid(4);
    let families: Vec<Vec<UnitValue>> = {
        let mut out = vec![vec![]];
        for &a in &g {
            for &b in &g {
                out.push(vec![a, b]);
                for &c in &g {
                    out.push(vec![a, b, c]);
                }
            }
        }
        out
    };
    for fam in &families {
        for &b in &g {
            let sup_then = UnitValue::sup(fam.iter().copied()).ominus(b);
            let then_sup = UnitValue::sup(fam.iter().map(|a| a.ominus(b)));
            assert_eq!(sup_then, then_sup, "sup {fam:?} minus {b}");
            let inf_then = b.ominus(UnitValue::inf(fam.iter().copied()));
            let then_sup = UnitValue::sup(fam.iter().map(|a| b.ominus(*a)));
            if !fam.is_empty() {
                assert_eq!(inf_then, then_sup, "{b} minus inf {fam:?}");
            }
        }
    }
}

#[test]
fn empty_family_conventions() {
    assert_eq!(UnitValue::sup([]), UnitValue::ZERO);
    assert_eq!(UnitValue::inf([]), UnitValue::ONE);
    let d = |a: &i32, b: &i32| {
        if a == b {
            UnitValue::ZERO
        } else {
            UnitValue::ONE
        }
    };
    assert_eq!(
        directed_hausdorff::<i32, i32, _>(&[], &[], d),
        UnitValue::ZERO
    );
    assert_eq!(directed_hausdorff(&[1], &[], d), UnitValue::ONE);
    assert_eq!(directed_hausdorff(&[], &[1], d), UnitValue::ZERO);
}

#[test]
fn truncated_operations() {
    let half = UnitValue::new(1, 2).unwrap();
    let three_q = UnitValue::new(3, 4).unwrap();
    assert_eq!(half.oplus(three_q), UnitValue::ONE);
    assert_eq!(half.ominus(three_q), UnitValue::ZERO);
    assert_eq!(three_q.ominus(half), UnitValue::new(1, 4).unwrap());
    assert_eq!(three_q.complement(), UnitValue::new(1, 4).unwrap());
}

fn label_distance(points: &[UnitValue]) -> impl Fn(&usize, &usize) -> UnitValue + '_ {
    move |a, b| points[*a].abs_diff(points[*b])
}

proptest! {
    #[test]
    fn hausdorff_antitone_in_target(
        points in prop::collection::vec(unit(), 1..6),
        us in prop::collection::vec(0usize..6, 0..4),
        vs in prop::collection::vec(0usize..6, 0..4),
        extra in prop::collection::vec(0usize..6, 0..3),
    ) {
        let n = points.len();
        let us: Vec<usize> = us.into_iter().map(|i| i % n).collect();
        let vs: Vec<usize> = vs.into_iter().map(|i| i % n).collect();
        let mut bigger = vs.clone();
        bigger.extend(extra.into_iter().map(|i| i % n));
        let d = label_distance(&points);
        prop_assert!(directed_hausdorff(&us, &bigger, &d) <= directed_hausdorff(&us, &vs, &d));
    }

    #[test]
    fn symmetric_hausdorff_is_max_of_directions(
        points in prop::collection::vec(unit(), 1..6),
        us in prop::collection::vec(0usize..6, 0..4),
        vs in prop::collection::vec(0usize..6, 0..4),
    ) {
        let n = points.len();
        let us: Vec<usize> = us.into_iter().map(|i| i % n).collect();
        let vs: Vec<usize> = vs.into_iter().map(|i| i % n).collect();
        let d = label_distance(&points);
        let sym = hausdorff(&us, &vs, &d, LiftMode::Symmetric);
        prop_assert_eq!(sym, directed_hausdorff(&us, &vs, &d).join(directed_hausdorff(&vs, &us, &d)));
        prop_assert_eq!(hausdorff(&us, &vs, &d, LiftMode::Directed), directed_hausdorff(&us, &vs, &d));
    }

    #[test]
    fn directed_hausdorff_triangle(
        points in prop::collection::vec(unit(), 1..6),
        a in prop::collection::vec(0usize..6, 0..4),
        b in prop::collection::vec(0usize..6, 1..4),
        c in prop::collection::vec(0usize..6, 0..4),
    ) {
        let n = points.len();
        let fix = |v: Vec<usize>| v.into_iter().map(|i| i % n).collect::<Vec<_>>();
        let (a, b, c) = (fix(a), fix(b), fix(c));
        let d = label_distance(&points);
        let ac = directed_hausdorff(&a, &c, &d);
        let ab = directed_hausdorff(&a, &b, &d);
        let bc = directed_hausdorff(&b, &c, &d);
        prop_assert!(ac <= ab.oplus(bc));
    }

    #[test]
    fn relation_lift_matches_quantifiers(n in 1usize..=4, bits in any::<u16>()) {
        let r = |i: usize, j: usize| bits >> (i * 4 + j) & 1 == 1;
        let sym = relation_lift(n, r, LiftMode::Symmetric);
        let dir = relation_lift(n, r, LiftMode::Directed);
        for a in 0..1usize << n {
            for b in 0..1usize << n {
                let ma: Vec<usize> = (0..n).filter(|i| a >> i & 1 == 1).collect();
                let mb: Vec<usize> = (0..n).filter(|i| b >> i & 1 == 1).collect();
                let forth = ma.iter().all(|&x| mb.iter().any(|&y| r(x, y)));
                let back = mb.iter().all(|&y| ma.iter().any(|&x| r(y, x)));
                prop_assert_eq!(dir[a][b], forth);
                prop_assert_eq!(sym[a][b], forth && back);
                prop_assert_eq!(lift_related(&ma, &mb, |x, y| r(*x, *y), LiftMode::Symmetric), forth && back);
            }
        }
    }

    #[test]
    fn min_max_step_stabilizes_within_bound(
        constants in prop::collection::btree_set(0i64..=6, 1..5),
        wiring in prop::collection::vec((0usize..6, 0usize..6, any::<bool>(), 0usize..5), 1..6),
    ) {
        let d: Vec<UnitValue> = constants.iter().map(|&k| UnitValue::new(k, 6).unwrap()).collect();
        let cells = wiring.len();
        let step = |t: &Vec<UnitValue>| -> Vec<UnitValue> {
            wiring
                .iter()
                .map(|&(i, j, use_max, c)| {
                    let (a, b) = (t[i % cells], t[j % cells]);
                    let mixed = if use_max { a.join(b) } else { a.meet(b) };
                    mixed.join(d[c % d.len()]).join(t[i % cells])
                })
                .collect()
        };
        let bound = default_max_iter(d.len() + 1, cells);
        let report = kleene_fix(step, vec![UnitValue::ZERO; cells], bound);
        prop_assert!(report.stabilized);
        prop_assert!(report.iterations <= d.len() * cells + 1);
        prop_assert_eq!(step(&report.table), report.table);
    }
}

#[test]
fn kleene_identity_takes_one_step() {
    let r = kleene_fix(|t: &u8| *t, 3u8, 10);
    assert_eq!((r.iterations, r.stabilized, r.table), (1, true, 3));
}

#[test]
fn kleene_reports_exhausted_budget() {
    let r = kleene_fix(|t: &u32| t + 1, 0u32, 5);
    assert!(!r.stabilized);
    assert_eq!(r.iterations, 5);
}
