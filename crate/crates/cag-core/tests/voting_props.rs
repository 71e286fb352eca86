//! Cross-checks between the two Banzhaf backends and structural
//! properties of power indices.

use cag_core::{
    banzhaf_swings_brute, banzhaf_swings_dp, classify_players, influence_multiplier,
    shapley_shubik, PlayerClass, PowerProfile, WeightedVotingGame,
};
use proptest::prelude::*;

fn arb_game() -> impl Strategy<Value = WeightedVotingGame> {
    (prop::collection::vec(1u64..30, 1..9), 0u64..1_000).prop_map(|(weights, pick)| {
        let total: u64 = weights.iter().sum();
        let lo = total / 2 + 1;
        let quota = lo + pick % (total - lo + 1);
        WeightedVotingGame::new(quota, weights).unwrap()
    })
}

proptest! {
    // the subset-sum table and the exhaustive walk must agree on exact
    // integer swing counts
    #[test]
    fn table_and_walk_count_the_same_swings(game in arb_game()) {
        prop_assert_eq!(
            banzhaf_swings_dp(&game).unwrap(),
            banzhaf_swings_brute(&game).unwrap()
        );
    }

    #[test]
    fn normalized_indices_sum_to_one(game in arb_game()) {
        let profile = PowerProfile::brute(&game).unwrap();
        let sum: f64 = profile.banzhaf.iter().sum();
        prop_assert!((sum - 1.0).abs() <= 1e-12, "{sum}");
        for (&b, &i) in profile.banzhaf.iter().zip(&profile.influence) {
            prop_assert!((i - (1.4 * b + 0.1)).abs() <= 1e-15);
        }
    }

    // equal weights mean equal power, whatever the quota
    #[test]
    fn symmetric_games_split_power_evenly(
        n in 1usize..9,
        w in 1u64..40,
        pick in 0u64..1_000,
    ) {
        let total = n as u64 * w;
        let lo = total / 2 + 1;
        let quota = lo + pick % (total - lo + 1);
        let game = WeightedVotingGame::new(quota, vec![w; n]).unwrap();
        let profile = PowerProfile::dp(&game).unwrap();
        for &b in &profile.banzhaf {
            prop_assert!((b - 1.0 / n as f64).abs() <= 1e-12);
        }
        let shapley = shapley_shubik(&game).unwrap();
        for &s in &shapley {
            prop_assert!((s - 1.0 / n as f64).abs() <= 1e-12);
        }
    }

    // one player heavier than everyone else combined leaves no power
    // for the rest
    #[test]
    fn a_dictator_reduces_the_rest_to_dummies(
        others in prop::collection::vec(1u64..50, 1..8),
    ) {
        let rest: u64 = others.iter().sum();
        let mut weights = vec![rest + 1];
        weights.extend(&others);
        let game = WeightedVotingGame::new(rest + 1, weights).unwrap();
        let profile = PowerProfile::brute(&game).unwrap();
        prop_assert_eq!(profile.classification[0], PlayerClass::Dictator);
        prop_assert_eq!(profile.banzhaf[0], 1.0);
        for i in 1..profile.banzhaf.len() {
            prop_assert_eq!(profile.classification[i], PlayerClass::Dummy);
            prop_assert_eq!(profile.banzhaf[i], 0.0);
        }
    }

    // the shorthand printer and parser are inverses
    #[test]
    fn shorthand_round_trips(game in arb_game()) {
        let reparsed: WeightedVotingGame = game.to_string().parse().unwrap();
        prop_assert_eq!(reparsed, game);
    }
}

// a new player too light to flip any coalition doubles every raw swing
// count (each old coalition now appears with and without the newcomer)
// and leaves the normalized index untouched
#[test]
fn powerless_newcomer_keeps_the_power_split() {
    // no subset of the old weights sums into [quota - extra, quota),
    // so the newcomer can never flip a coalition
    let cases = [
        (10u64, vec![11u64, 2, 2], 2u64),
        (30, vec![20, 20], 1),
        (40, vec![30, 30, 10], 5),
        (9, vec![6, 4, 3], 1),
    ];
    for (quota, old_weights, extra) in cases {
        let old_game = WeightedVotingGame::new(quota, old_weights.clone()).unwrap();
        let mut new_weights = old_weights.clone();
        new_weights.push(extra);
        let new_game = WeightedVotingGame::new(quota, new_weights).unwrap();

        let old = PowerProfile::brute(&old_game).unwrap();
        let new = PowerProfile::brute(&new_game).unwrap();
        let newcomer = old_weights.len();
        assert_eq!(
            new.swings[newcomer], 0,
            "newcomer must be powerless: {old_weights:?}+{extra}"
        );
        for i in 0..old_weights.len() {
            assert_eq!(
                new.swings[i],
                2 * old.swings[i],
                "player {i} of {old_weights:?}"
            );
            assert_eq!(new.banzhaf[i], old.banzhaf[i]);
        }
    }
}

#[test]
fn dictator_archetype_extends_to_the_reference_roster() {
    // [10: 11,2,2] grown by one more follower keeps the dictatorship
    let small = WeightedVotingGame::new(10, vec![11, 2, 2]).unwrap();
    let full = WeightedVotingGame::new(10, vec![11, 2, 2, 2]).unwrap();
    assert_eq!(banzhaf_swings_brute(&small).unwrap(), vec![4, 0, 0]);
    assert_eq!(banzhaf_swings_brute(&full).unwrap(), vec![8, 0, 0, 0]);
    let classes = classify_players(&full, &banzhaf_swings_dp(&full).unwrap());
    assert_eq!(classes[0], PlayerClass::Dictator);
    assert!(classes[1..].iter().all(|c| *c == PlayerClass::Dummy));
}

#[test]
fn influence_is_monotone_on_the_unit_interval() {
    let mut last = f64::NEG_INFINITY;
    for k in 0..=100 {
        let i = influence_multiplier(k as f64 / 100.0).unwrap();
        assert!(i > last);
        last = i;
    }
    assert_eq!(influence_multiplier(0.0).unwrap(), 0.1);
    assert_eq!(influence_multiplier(1.0).unwrap(), 1.5);
}
