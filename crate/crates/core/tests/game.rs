mod common;

use common::{acyclic, cyclic, fig, set, u};
use mts_spectrum::game::{
    candidate_thresholds, game_distance, solve_game, DeltaSpace, GamePosition, Winner,
};
use mts_spectrum::quantitative::{dir_trace_metric, SolveOptions};
use mts_spectrum::random::{random_mts, seeded_rng};
use mts_spectrum::{Mts, StateSet, UnitValue};
use proptest::prelude::*;

#[test]
fn fig_thresholds() {
    let m = fig();
    let (x, y) = (set(&m, &["x"]), set(&m, &["y"]));
    for space in [DeltaSpace::Threshold, DeltaSpace::Full] {
        let at_half = solve_game(&m, &x, &y, u(1, 2), space);
        assert!(at_half.maiden_wins());
        at_half.check(&m).unwrap();
        let at_quarter = solve_game(&m, &x, &y, u(1, 4), space);
        assert_eq!(at_quarter.winner, Winner::Death);
        at_quarter.check(&m).unwrap();
        assert_eq!(game_distance(&m, &x, &y, space), u(1, 2));
    }
}

#[test]
fn empty_arguments() {
    let m = fig();
    let x = set(&m, &["x"]);
    let below_one = u(99, 100);
    assert_eq!(
        solve_game(&m, &x, &m.empty_set(), below_one, DeltaSpace::Threshold).winner,
        Winner::Death
    );
    assert!(solve_game(
        &m,
        &x,
        &m.empty_set(),
        UnitValue::ONE,
        DeltaSpace::Threshold
    )
    .maiden_wins());
    assert!(solve_game(
        &m,
        &m.empty_set(),
        &x,
        UnitValue::ZERO,
        DeltaSpace::Threshold
    )
    .maiden_wins());
    assert_eq!(
        game_distance(&m, &x, &m.empty_set(), DeltaSpace::Threshold),
        UnitValue::ONE
    );
}

#[test]
fn maiden_positions_choose_from_target_moves() {
    let m = fig();
    let sol = solve_game(
        &m,
        &set(&m, &["x"]),
        &set(&m, &["y"]),
        u(1, 2),
        DeltaSpace::Full,
    );
    assert!(matches!(sol.positions[0], GamePosition::Death { .. }));
    for p in &sol.positions {
        if let GamePosition::Maiden { x2, delta, .. } = p {
            let moves = m.successors(x2, None);
            assert!(delta.iter().all(|mv| moves.contains(mv)));
        }
    }
}

#[test]
fn candidates_are_sorted_and_bounded() {
    let m = fig();
    let c = candidate_thresholds(&m);
    assert!(c.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(c.first(), Some(&UnitValue::ZERO));
    assert_eq!(c.last(), Some(&UnitValue::ONE));
}

fn masked(m: &Mts, mask: u64) -> StateSet {
    StateSet::from_mask(m.num_states(), mask & ((1 << m.num_states()) - 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn identical_arguments_favour_maiden(seed in any::<u64>(), acyc in any::<bool>(), a in any::<u64>()) {
        let cfg = if acyc { acyclic(5) } else { cyclic(5) };
        let m = random_mts(&mut seeded_rng(seed), &cfg);
        let x = masked(&m, a);
        let sol = solve_game(&m, &x, &x, UnitValue::ZERO, DeltaSpace::Threshold);
        prop_assert!(sol.maiden_wins());
        prop_assert!(sol.check(&m).is_ok());
    }

    #[test]
    fn monotone_in_epsilon_and_consistent(seed in any::<u64>(), acyc in any::<bool>(), a in any::<u64>(), b in any::<u64>()) {
        let cfg = if acyc { acyclic(5) } else { cyclic(5) };
        let m = random_mts(&mut seeded_rng(seed), &cfg);
        let (x1, x2) = (masked(&m, a), masked(&m, b));
        let d = dir_trace_metric(&m, &x1, &x2, SolveOptions::default()).unwrap().distance;
        let mut seen_win = false;
        for eps in candidate_thresholds(&m) {
            let sol = solve_game(&m, &x1, &x2, eps, DeltaSpace::Threshold);
            prop_assert!(sol.check(&m).is_ok());
            prop_assert!(!seen_win || sol.maiden_wins());
            seen_win |= sol.maiden_wins();
            prop_assert_eq!(sol.maiden_wins(), d <= eps);
        }
        prop_assert_eq!(game_distance(&m, &x1, &x2, DeltaSpace::Threshold), d);
    }
}
