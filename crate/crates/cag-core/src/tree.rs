//! Extensive-form tree for the disclosure game.
//!
//! The tree spells out the discovery order, attack resolution and
//! rediscovery race move by move. Evaluating it under a strategy pair
//! must agree with [`closed_form_payoffs`](crate::payoff::closed_form_payoffs)
//! to floating-point accuracy; the two routes share no code.

use crate::payoff::{GameParams, Strategy};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlayerId {
    One,
    Two,
}

/// Which information set a decision node belongs to. A player cannot
/// tell the two nodes of a set apart, so a strategy fixes one action
/// for both stages at once.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    /// The player found the vulnerability first.
    FirstDiscoverer,
    /// The player rediscovered it after surviving a failed attack.
    Rediscoverer,
}

#[derive(Debug, Clone, PartialEq)]
pub enum GameNode {
    /// Nature moves; probabilities must be nonnegative and sum to 1.
    Chance(Vec<(f64, GameNode)>),
    /// The given player picks Share or Attack.
    Decision {
        player: PlayerId,
        stage: Stage,
        share: Box<GameNode>,
        attack: Box<GameNode>,
    },
    Leaf(f64, f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GameTree {
    root: GameNode,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TreeError {
    #[error("chance node probabilities sum to {sum}, expected 1")]
    MalformedChance { sum: f64 },
    #[error("chance node carries a negative probability {prob}")]
    NegativeProbability { prob: f64 },
}

const PROB_SUM_TOLERANCE: f64 = 1e-9;

impl GameTree {
    pub fn new(root: GameNode) -> Self {
        Self { root }
    }

    pub fn root(&self) -> &GameNode {
        &self.root
    }

    /// Expected payoff pair when player 1 commits to `s1` and player 2
    /// to `s2` at every node they own.
    pub fn payoffs(&self, s1: Strategy, s2: Strategy) -> Result<(f64, f64), TreeError> {
        eval(&self.root, s1, s2)
    }

    /// Indented plain-text listing, one node per line. Intended for
    /// debugging and golden-file diffs.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        dump_node(&self.root, None, 0, &mut out);
        out
    }
}

fn eval(node: &GameNode, s1: Strategy, s2: Strategy) -> Result<(f64, f64), TreeError> {
    match node {
        GameNode::Leaf(u1, u2) => Ok((*u1, *u2)),
        GameNode::Decision {
            player,
            share,
            attack,
            ..
        } => {
            let choice = match player {
                PlayerId::One => s1,
                PlayerId::Two => s2,
            };
            let child = match choice {
                Strategy::Share => share,
                Strategy::Attack => attack,
            };
            eval(child, s1, s2)
        }
        GameNode::Chance(branches) => {
            let mut sum = 0.0;
            for (prob, _) in branches {
                if *prob < 0.0 {
                    return Err(TreeError::NegativeProbability { prob: *prob });
                }
                sum += prob;
            }
            if (sum - 1.0).abs() > PROB_SUM_TOLERANCE {
                return Err(TreeError::MalformedChance { sum });
            }
            let mut u1 = 0.0;
            let mut u2 = 0.0;
            for (prob, child) in branches {
                let (c1, c2) = eval(child, s1, s2)?;
                u1 += prob * c1;
                u2 += prob * c2;
            }
            Ok((u1, u2))
        }
    }
}

fn dump_node(node: &GameNode, edge: Option<&str>, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    let lead = match edge {
        Some(e) => format!("{pad}{e} -> "),
        None => pad,
    };
    match node {
        GameNode::Leaf(u1, u2) => {
            out.push_str(&format!("{lead}leaf ({u1:.6}, {u2:.6})\n"));
        }
        GameNode::Decision {
            player,
            stage,
            share,
            attack,
        } => {
            let who = match player {
                PlayerId::One => 1,
                PlayerId::Two => 2,
            };
            let when = match stage {
                Stage::FirstDiscoverer => "first discoverer",
                Stage::Rediscoverer => "rediscoverer",
            };
            out.push_str(&format!("{lead}decision player {who} ({when})\n"));
            dump_node(share, Some("S"), depth + 1, out);
            dump_node(attack, Some("A"), depth + 1, out);
        }
        GameNode::Chance(branches) => {
            out.push_str(&format!("{lead}chance\n"));
            for (prob, child) in branches {
                dump_node(child, Some(&format!("{prob:.6}")), depth + 1, out);
            }
        }
    }
}

/// Builds the full discovery/attack/rediscovery tree for `params`.
///
/// Shape: nature first picks the discoverer (player 1 with probability
/// p). A discoverer who shares ends the game with b_i r_i. A discoverer
/// who attacks succeeds with its own discovery skill (p for player 1,
/// 1-p for player 2), collecting e_i while the victim loses 1. A failed
/// attack lets the opponent rediscover the flaw and choose in turn; if
/// both ended up attacking, player 1 wins the race with probability q.
pub fn build_game_tree(params: &GameParams) -> GameTree {
    let p = params.p();
    let q = params.q();
    let share1 = GameNode::Leaf(params.b1() * params.r1(), 0.0);
    let share2 = GameNode::Leaf(0.0, params.b2() * params.r2());
    let hit1 = GameNode::Leaf(params.e1(), -1.0);
    let hit2 = GameNode::Leaf(-1.0, params.e2());

    // both committed to attacking: player 1 strikes first with probability q
    let race = GameNode::Chance(vec![(q, hit1.clone()), (1.0 - q, hit2.clone())]);

    let p2_rediscovers = GameNode::Decision {
        player: PlayerId::Two,
        stage: Stage::Rediscoverer,
        share: Box::new(share2.clone()),
        attack: Box::new(race.clone()),
    };
    let p1_first = GameNode::Decision {
        player: PlayerId::One,
        stage: Stage::FirstDiscoverer,
        share: Box::new(share1.clone()),
        attack: Box::new(GameNode::Chance(vec![(p, hit1), (1.0 - p, p2_rediscovers)])),
    };

    let p1_rediscovers = GameNode::Decision {
        player: PlayerId::One,
        stage: Stage::Rediscoverer,
        share: Box::new(share1),
        attack: Box::new(race),
    };
    let p2_first = GameNode::Decision {
        player: PlayerId::Two,
        stage: Stage::FirstDiscoverer,
        share: Box::new(share2),
        attack: Box::new(GameNode::Chance(vec![(1.0 - p, hit2), (p, p1_rediscovers)])),
    };

    GameTree::new(GameNode::Chance(vec![(p, p1_first), (1.0 - p, p2_first)]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::payoff::{closed_form_payoffs, PROFILE_ORDER};

    fn near(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12
    }

    #[test]
    fn share_leaves_carry_scaled_rewards() {
        let params = GameParams::new(0.6, 0.3, 0.5, 0.7, 0.1, 1.5, 1.0, 1.0).unwrap();
        let tree = build_game_tree(&params);
        let (u1, _) = tree.payoffs(Strategy::Share, Strategy::Share).unwrap();
        // p * b1 * r1 through the tree route
        assert!(near(u1, 0.6 * 0.1 * 0.5));
    }

    #[test]
    fn tree_matches_closed_form_at_reference_point() {
        let params = GameParams::base(0.6, 0.3, 0.7, 0.45).unwrap();
        let tree = build_game_tree(&params);
        let matrix = closed_form_payoffs(&params);
        for profile in PROFILE_ORDER {
            let via_tree = tree.payoffs(profile.0, profile.1).unwrap();
            let direct = matrix.profile(profile);
            assert!(
                near(via_tree.0, direct.0),
                "{profile}: {via_tree:?} vs {direct:?}"
            );
            assert!(
                near(via_tree.1, direct.1),
                "{profile}: {via_tree:?} vs {direct:?}"
            );
        }
    }

    #[test]
    fn degenerate_probabilities_still_sum_to_one() {
        for (p, q) in [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)] {
            let params = GameParams::base(p, q, 0.5, 0.5).unwrap();
            let tree = build_game_tree(&params);
            for profile in PROFILE_ORDER {
                tree.payoffs(profile.0, profile.1).unwrap();
            }
        }
    }

    #[test]
    fn all_zero_tree_evaluates_to_zero() {
        let tree = GameTree::new(GameNode::Chance(vec![
            (0.25, GameNode::Leaf(0.0, 0.0)),
            (0.75, GameNode::Leaf(0.0, 0.0)),
        ]));
        assert_eq!(
            tree.payoffs(Strategy::Share, Strategy::Attack).unwrap(),
            (0.0, 0.0)
        );
    }

    #[test]
    fn bad_chance_weights_are_rejected() {
        let tree = GameTree::new(GameNode::Chance(vec![
            (0.5, GameNode::Leaf(1.0, -1.0)),
            (0.4, GameNode::Leaf(-1.0, 1.0)),
        ]));
        assert!(matches!(
            tree.payoffs(Strategy::Share, Strategy::Share),
            Err(TreeError::MalformedChance { .. })
        ));
        let tree = GameTree::new(GameNode::Chance(vec![
            (1.5, GameNode::Leaf(1.0, -1.0)),
            (-0.5, GameNode::Leaf(-1.0, 1.0)),
        ]));
        assert!(matches!(
            tree.payoffs(Strategy::Share, Strategy::Share),
            Err(TreeError::NegativeProbability { .. })
        ));
    }

    #[test]
    fn dump_lists_every_node_once() {
        let params = GameParams::base(0.6, 0.3, 0.7, 0.45).unwrap();
        let text = build_game_tree(&params).dump();
        assert_eq!(text.matches("decision").count(), 4);
        assert_eq!(text.matches("chance").count(), 5);
        assert!(text.contains("0.600000 -> decision player 1 (first discoverer)"));
    }
}
