//! Weighted voting games and a priori voting power.
//!
//! An alliance is modeled as a weighted voting game `[quota: w1,...,wN]`:
//! a coalition wins when its weight reaches the quota. A member's pull
//! inside the alliance is its normalized Banzhaf index (share of the
//! coalitions in which its vote flips the outcome), optionally
//! complemented by the Shapley-Shubik index over player orderings.
//! The index then maps to the influence multiplier `b` applied to the
//! member's sharing reward in the conflict game.

use crate::fmt::f6;
use std::str::FromStr;
use thiserror::Error;

/// Largest player count the exhaustive coalition walk accepts.
pub const BRUTE_PLAYER_LIMIT: usize = 24;
/// Largest player count the ordering-based index accepts.
pub const SHAPLEY_PLAYER_LIMIT: usize = 12;
/// Total weight the subset-sum backend is willing to table.
pub const DP_WEIGHT_BUDGET: u64 = 1_000_000;
/// Player cap keeping subset counts exact in 128 bits.
pub const DP_PLAYER_LIMIT: usize = 120;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VotingError {
    #[error("quota {quota} must exceed half the total weight {total}")]
    QuotaTooLow { quota: u64, total: u64 },
    #[error("quota {quota} exceeds the total weight {total}")]
    QuotaTooHigh { quota: u64, total: u64 },
    #[error("a voting game needs at least one player")]
    EmptyGame,
    #[error("weight {value} of player {index} is not positive")]
    NonpositiveWeight { index: usize, value: i64 },
    #[error("{players} players exceed the limit of {limit} for this backend")]
    TooManyPlayers { players: usize, limit: usize },
    #[error("total weight {total} exceeds the tabling budget {budget}")]
    WeightBudgetExceeded { total: u64, budget: u64 },
    #[error("player index {index} is out of range for {players} players")]
    IndexOutOfRange { index: usize, players: usize },
    #[error("index {value} is outside [0, 1]")]
    OutOfRange { value: f64 },
    #[error("total weight {total} overflows the supported range")]
    TotalWeightTooLarge { total: u128 },
    #[error("cannot parse voting game: {reason}")]
    Parse { reason: String },
}

/// Quota game over positive integer weights. The quota must demand a
/// strict majority of the total weight and be attainable by the grand
/// coalition, so "winning" is always meaningful and two disjoint
/// winning coalitions cannot coexist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedVotingGame {
    quota: u64,
    weights: Vec<u64>,
}

impl WeightedVotingGame {
    pub fn new(quota: u64, weights: Vec<u64>) -> Result<Self, VotingError> {
        if weights.is_empty() {
            return Err(VotingError::EmptyGame);
        }
        for (index, &w) in weights.iter().enumerate() {
            if w == 0 {
                return Err(VotingError::NonpositiveWeight { index, value: 0 });
            }
        }
        let wide_total: u128 = weights.iter().map(|&w| w as u128).sum();
        if wide_total > u64::MAX as u128 {
            return Err(VotingError::TotalWeightTooLarge { total: wide_total });
        }
        let total = wide_total as u64;
        if (quota as u128) * 2 <= wide_total {
            return Err(VotingError::QuotaTooLow { quota, total });
        }
        if quota > total {
            return Err(VotingError::QuotaTooHigh { quota, total });
        }
        Ok(Self { quota, weights })
    }

    pub fn quota(&self) -> u64 {
        self.quota
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn players(&self) -> usize {
        self.weights.len()
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().sum()
    }

    /// Whether the coalition given by player indices reaches the quota.
    /// Repeated indices count once.
    pub fn is_winning(&self, coalition: &[usize]) -> Result<bool, VotingError> {
        let mut seen = vec![false; self.players()];
        let mut sum = 0u64;
        for &index in coalition {
            if index >= self.players() {
                return Err(VotingError::IndexOutOfRange {
                    index,
                    players: self.players(),
                });
            }
            if !seen[index] {
                seen[index] = true;
                sum += self.weights[index];
            }
        }
        Ok(sum >= self.quota)
    }
}

impl std::fmt::Display for WeightedVotingGame {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let weights: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        write!(f, "[{}:{}]", self.quota, weights.join(","))
    }
}

/// Parses the `[quota: w1, w2, ...]` shorthand. Spaces are optional.
impl FromStr for WeightedVotingGame {
    type Err = VotingError;

    fn from_str(text: &str) -> Result<Self, VotingError> {
        let parse = |what: &str, token: &str| -> Result<i64, VotingError> {
            token.trim().parse::<i64>().map_err(|_| VotingError::Parse {
                reason: format!("{what} `{}` is not an integer", token.trim()),
            })
        };
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| VotingError::Parse {
                reason: "expected the form [quota:w1,w2,...]".to_string(),
            })?;
        let (quota_text, weights_text) =
            inner.split_once(':').ok_or_else(|| VotingError::Parse {
                reason: "missing `:` between quota and weights".to_string(),
            })?;
        let quota = parse("quota", quota_text)?;
        if quota < 0 {
            return Err(VotingError::Parse {
                reason: format!("quota {quota} is negative"),
            });
        }
        let mut weights = Vec::new();
        let trimmed = weights_text.trim();
        if !trimmed.is_empty() {
            for (index, token) in trimmed.split(',').enumerate() {
                let value = parse("weight", token)?;
                if value <= 0 {
                    return Err(VotingError::NonpositiveWeight { index, value });
                }
                weights.push(value as u64);
            }
        }
        WeightedVotingGame::new(quota as u64, weights)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlayerClass {
    /// Weight alone reaches the quota.
    Dictator,
    /// Present in every winning coalition, without being a dictator.
    Veto,
    /// Never swings any coalition.
    Dummy,
    Ordinary,
}

impl PlayerClass {
    pub fn name(self) -> &'static str {
        match self {
            PlayerClass::Dictator => "Dictator",
            PlayerClass::Veto => "Veto",
            PlayerClass::Dummy => "Dummy",
            PlayerClass::Ordinary => "Ordinary",
        }
    }
}

impl std::fmt::Display for PlayerClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Exact swing counts per player: the number of coalitions of the
/// remaining players whose outcome the player's vote flips.
///
/// Exhaustive walk over all coalitions, one gray-code pass per player.
pub fn banzhaf_swings_brute(game: &WeightedVotingGame) -> Result<Vec<u128>, VotingError> {
    let n = game.players();
    if n > BRUTE_PLAYER_LIMIT {
        return Err(VotingError::TooManyPlayers {
            players: n,
            limit: BRUTE_PLAYER_LIMIT,
        });
    }
    let mut swings = Vec::with_capacity(n);
    for i in 0..n {
        let wi = game.weights[i];
        let lo = game.quota.saturating_sub(wi);
        let others: Vec<u64> = game
            .weights
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &w)| w)
            .collect();
        swings.push(count_subset_weights_in(&others, lo, game.quota));
    }
    Ok(swings)
}

/// Number of subsets of `weights` whose sum lies in `[lo, hi)`,
/// enumerated by flipping one member at a time.
fn count_subset_weights_in(weights: &[u64], lo: u64, hi: u64) -> u128 {
    let m = weights.len();
    let mut count: u128 = 0;
    let mut sum = 0u64;
    let mut member = vec![false; m];
    if lo == 0 {
        count += 1;
    }
    for step in 1u64..(1u64 << m) {
        let bit = step.trailing_zeros() as usize;
        if member[bit] {
            sum -= weights[bit];
        } else {
            sum += weights[bit];
        }
        member[bit] = !member[bit];
        if sum >= lo && sum < hi {
            count += 1;
        }
    }
    count
}

/// Same counts as [`banzhaf_swings_brute`] via a subset-sum table:
/// count coalitions of everyone, then divide each player back out.
/// Handles large rosters as long as the total weight stays tabulable.
pub fn banzhaf_swings_dp(game: &WeightedVotingGame) -> Result<Vec<u128>, VotingError> {
    let n = game.players();
    if n > DP_PLAYER_LIMIT {
        return Err(VotingError::TooManyPlayers {
            players: n,
            limit: DP_PLAYER_LIMIT,
        });
    }
    let total = game.total_weight();
    if total > DP_WEIGHT_BUDGET {
        return Err(VotingError::WeightBudgetExceeded {
            total,
            budget: DP_WEIGHT_BUDGET,
        });
    }
    let quota = game.quota as usize;

    // all[w] = subsets of the full roster with weight w, capped below the
    // quota; subsets at or above the quota are never queried
    let mut all = vec![0u128; quota];
    all[0] = 1;
    for &w in &game.weights {
        let w = w as usize;
        for v in (w..quota).rev() {
            all[v] += all[v - w];
        }
    }

    let mut without = vec![0u128; quota];
    let mut swings = Vec::with_capacity(n);
    for i in 0..n {
        let wi = game.weights[i] as usize;
        // peel player i off the table: subsets of weight w that avoid i
        for w in 0..quota {
            let with_i = if w >= wi { without[w - wi] } else { 0 };
            without[w] = all[w] - with_i;
        }
        let lo = game.quota.saturating_sub(game.weights[i]) as usize;
        swings.push(without[lo..quota].iter().sum());
    }
    Ok(swings)
}

/// Share of all player orderings in which the player's arrival first
/// pushes the forming coalition to the quota. Computed exactly by
/// enumerating predecessor sets with factorial weights.
pub fn shapley_shubik(game: &WeightedVotingGame) -> Result<Vec<f64>, VotingError> {
    let n = game.players();
    if n > SHAPLEY_PLAYER_LIMIT {
        return Err(VotingError::TooManyPlayers {
            players: n,
            limit: SHAPLEY_PLAYER_LIMIT,
        });
    }
    let mut fact = vec![1u64; n + 1];
    for k in 1..=n {
        fact[k] = fact[k - 1] * k as u64;
    }
    let mut indices = Vec::with_capacity(n);
    for i in 0..n {
        let wi = game.weights[i];
        let others: Vec<u64> = game
            .weights
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &w)| w)
            .collect();
        let m = others.len();
        let mut pivotal_orderings = 0u64;
        let mut sum = 0u64;
        let mut size = 0usize;
        let mut member = vec![false; m];
        let tally = |sum: u64, size: usize| -> u64 {
            if sum < game.quota && sum + wi >= game.quota {
                fact[size] * fact[m - size]
            } else {
                0
            }
        };
        pivotal_orderings += tally(sum, size);
        for step in 1u64..(1u64 << m) {
            let bit = step.trailing_zeros() as usize;
            if member[bit] {
                sum -= others[bit];
                size -= 1;
            } else {
                sum += others[bit];
                size += 1;
            }
            member[bit] = !member[bit];
            pivotal_orderings += tally(sum, size);
        }
        indices.push(pivotal_orderings as f64 / fact[n] as f64);
    }
    Ok(indices)
}

/// Classification from weight and swing count. Priority: Dictator,
/// then Veto, then Dummy; a dictator always holds veto power and a
/// veto player always swings, so the order settles every overlap.
pub fn classify_players(game: &WeightedVotingGame, swings: &[u128]) -> Vec<PlayerClass> {
    assert_eq!(swings.len(), game.players(), "one swing count per player");
    let total = game.total_weight();
    game.weights
        .iter()
        .zip(swings)
        .map(|(&w, &s)| {
            if w >= game.quota {
                PlayerClass::Dictator
            } else if total - w < game.quota {
                PlayerClass::Veto
            } else if s == 0 {
                PlayerClass::Dummy
            } else {
                PlayerClass::Ordinary
            }
        })
        .collect()
}

/// Maps a normalized power index to the sharing-reward multiplier:
/// 0.1 at no power, 1.5 at total power, linear in between.
pub fn influence_multiplier(index: f64) -> Result<f64, VotingError> {
    if !(0.0..=1.0).contains(&index) {
        return Err(VotingError::OutOfRange { value: index });
    }
    Ok(1.4 * index + 0.1)
}

/// Power table for a whole alliance: exact swings, normalized Banzhaf,
/// optional Shapley-Shubik, class and influence multiplier per player.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerProfile {
    pub swings: Vec<u128>,
    pub banzhaf: Vec<f64>,
    pub shapley_shubik: Option<Vec<f64>>,
    pub classification: Vec<PlayerClass>,
    pub influence: Vec<f64>,
}

impl PowerProfile {
    fn from_swings(game: &WeightedVotingGame, swings: Vec<u128>) -> Self {
        let total: u128 = swings.iter().sum();
        // every valid game has a minimal winning coalition, so some
        // player swings and the normalization never divides by zero
        let banzhaf: Vec<f64> = swings.iter().map(|&s| s as f64 / total as f64).collect();
        let classification = classify_players(game, &swings);
        let influence = banzhaf
            .iter()
            .map(|&b| influence_multiplier(b).expect("normalized index"))
            .collect();
        Self {
            swings,
            banzhaf,
            shapley_shubik: None,
            classification,
            influence,
        }
    }

    pub fn brute(game: &WeightedVotingGame) -> Result<Self, VotingError> {
        Ok(Self::from_swings(game, banzhaf_swings_brute(game)?))
    }

    pub fn dp(game: &WeightedVotingGame) -> Result<Self, VotingError> {
        Ok(Self::from_swings(game, banzhaf_swings_dp(game)?))
    }

    /// Subset-sum backend when the weights fit its budget, exhaustive
    /// walk otherwise.
    pub fn auto(game: &WeightedVotingGame) -> Result<Self, VotingError> {
        match Self::dp(game) {
            Err(VotingError::WeightBudgetExceeded { .. })
            | Err(VotingError::TooManyPlayers { .. }) => Self::brute(game),
            other => other,
        }
    }

    pub fn with_shapley(mut self, game: &WeightedVotingGame) -> Result<Self, VotingError> {
        self.shapley_shubik = Some(shapley_shubik(game)?);
        Ok(self)
    }

    /// Aligned plain-text table, one row per player.
    pub fn text_report(&self, game: &WeightedVotingGame) -> String {
        let mut rows = vec![self.header()];
        for i in 0..game.players() {
            rows.push(self.row(game, i));
        }
        let widths: Vec<usize> = (0..rows[0].len())
            .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
            .collect();
        let mut out = format!(
            "game {}   quota {}   total weight {}   players {}\n\n",
            game,
            game.quota(),
            game.total_weight(),
            game.players()
        );
        for row in rows {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(cell, w)| format!("{cell:<w$}"))
                .collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out
    }

    /// Same table as comma-separated values.
    pub fn csv_report(&self, game: &WeightedVotingGame) -> String {
        let mut out = self.header().join(",");
        out.push('\n');
        for i in 0..game.players() {
            out.push_str(&self.row(game, i).join(","));
            out.push('\n');
        }
        out
    }

    fn header(&self) -> Vec<String> {
        let mut cols = vec!["player", "weight", "swings", "banzhaf"];
        if self.shapley_shubik.is_some() {
            cols.push("shapley_shubik");
        }
        cols.extend(["classification", "influence"]);
        cols.into_iter().map(str::to_string).collect()
    }

    fn row(&self, game: &WeightedVotingGame, i: usize) -> Vec<String> {
        let mut row = vec![
            i.to_string(),
            game.weights()[i].to_string(),
            self.swings[i].to_string(),
            f6(self.banzhaf[i]),
        ];
        if let Some(shapley) = &self.shapley_shubik {
            row.push(f6(shapley[i]));
        }
        row.push(self.classification[i].to_string());
        row.push(f6(self.influence[i]));
        row
    }
}
