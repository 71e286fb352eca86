//! Nash equilibria of the 2x2 game.
//!
//! Pure equilibria come from mutual best responses with exact payoff
//! comparison: ties keep both strategies, so knife-edge parameter sets
//! report every equilibrium instead of an arbitrary pick. The mixed
//! solver covers the one remaining case, a 2x2 game with no pure cell.

use crate::payoff::{PayoffMatrix, Profile, Strategy, PROFILE_ORDER};
use crate::tree::PlayerId;
use thiserror::Error;

/// Subset of the four profiles in canonical order (SS, SA, AS, AA).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ProfileSet(u8);

impl ProfileSet {
    pub const EMPTY: ProfileSet = ProfileSet(0);

    pub fn insert(&mut self, profile: Profile) {
        self.0 |= 1 << profile.index();
    }

    pub fn contains(self, profile: Profile) -> bool {
        self.0 & (1 << profile.index()) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = Profile> {
        PROFILE_ORDER.into_iter().filter(move |p| self.contains(*p))
    }

    /// Compact bit form, bit i = i-th canonical profile. Stable, so it
    /// can key palettes and deduplicate legend entries.
    pub fn bits(self) -> u8 {
        self.0
    }

    /// "SS", "SA+AS", ... or "NONE" for the empty set.
    pub fn label(self) -> String {
        if self.is_empty() {
            return "NONE".to_string();
        }
        let mut parts = Vec::new();
        for profile in self.iter() {
            parts.push(profile.tag());
        }
        parts.join("+")
    }
}

impl FromIterator<Profile> for ProfileSet {
    fn from_iter<I: IntoIterator<Item = Profile>>(iter: I) -> Self {
        let mut set = ProfileSet::EMPTY;
        for p in iter {
            set.insert(p);
        }
        set
    }
}

/// Totally mixed equilibrium, stored as each player's Share weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedEquilibrium {
    pub share1: f64,
    pub share2: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EquilibriumError {
    #[error("indifference condition for player {player} has a zero denominator")]
    Degenerate { player: u8 },
}

/// Everything the solver found for one payoff matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumOutcome {
    pub pure: ProfileSet,
    pub mixed: Option<MixedEquilibrium>,
}

impl EquilibriumOutcome {
    /// Canonical region tag: pure profiles joined by `+`, `NONE` when
    /// empty, and `+MIXED(s1,s2)` appended when a mixed point is known.
    pub fn label(&self) -> String {
        let mut label = self.pure.label();
        if let Some(m) = self.mixed {
            label.push_str(&format!(
                "+MIXED({:.6},{:.6})",
                crate::fmt::canon(m.share1),
                crate::fmt::canon(m.share2)
            ));
        }
        label
    }
}

/// Strategies of `player` that maximize its payoff against a fixed
/// opponent action. Exact ties return both.
pub fn best_response(matrix: &PayoffMatrix, player: PlayerId, opponent: Strategy) -> Vec<Strategy> {
    let payoff = |own: Strategy| -> f64 {
        let (u1, u2) = match player {
            PlayerId::One => matrix.get(own, opponent),
            PlayerId::Two => matrix.get(opponent, own),
        };
        match player {
            PlayerId::One => u1,
            PlayerId::Two => u2,
        }
    };
    let share = payoff(Strategy::Share);
    let attack = payoff(Strategy::Attack);
    if share > attack {
        vec![Strategy::Share]
    } else if attack > share {
        vec![Strategy::Attack]
    } else {
        vec![Strategy::Share, Strategy::Attack]
    }
}

/// All pure Nash equilibria: cells where each strategy is a best
/// response to the other.
pub fn pure_nash(matrix: &PayoffMatrix) -> EquilibriumOutcome {
    let mut pure = ProfileSet::EMPTY;
    for profile in PROFILE_ORDER {
        let br1 = best_response(matrix, PlayerId::One, profile.1);
        let br2 = best_response(matrix, PlayerId::Two, profile.0);
        if br1.contains(&profile.0) && br2.contains(&profile.1) {
            pure.insert(profile);
        }
    }
    EquilibriumOutcome { pure, mixed: None }
}

/// Interior mixed equilibrium via indifference. Returns `Ok(None)`
/// when a pure equilibrium exists (the mixed point is not needed) and
/// `Degenerate` when an indifference denominator vanishes, which only
/// happens for matrices that already contain a pure cell tie.
pub fn mixed_nash_2x2(matrix: &PayoffMatrix) -> Result<Option<MixedEquilibrium>, EquilibriumError> {
    use Strategy::{Attack, Share};
    if !pure_nash(matrix).pure.is_empty() {
        return Ok(None);
    }

    // player 2 mixes to make player 1 indifferent and vice versa
    let u1 = |s1: Strategy, s2: Strategy| matrix.get(s1, s2).0;
    let u2 = |s1: Strategy, s2: Strategy| matrix.get(s1, s2).1;

    // share2 solves: share2*u1(S,S) + (1-share2)*u1(S,A) =
    //                share2*u1(A,S) + (1-share2)*u1(A,A)
    let d_share = u1(Share, Share) - u1(Attack, Share);
    let d_attack = u1(Share, Attack) - u1(Attack, Attack);
    let denom1 = d_share - d_attack;
    if denom1 == 0.0 {
        return Err(EquilibriumError::Degenerate { player: 1 });
    }
    let share2 = -d_attack / denom1;

    let d_share = u2(Share, Share) - u2(Share, Attack);
    let d_attack = u2(Attack, Share) - u2(Attack, Attack);
    let denom2 = d_share - d_attack;
    if denom2 == 0.0 {
        return Err(EquilibriumError::Degenerate { player: 2 });
    }
    let share1 = -d_attack / denom2;

    Ok(Some(MixedEquilibrium { share1, share2 }))
}

/// Pure solve plus, when the pure set is empty and `include_mixed` is
/// set, the mixed completion.
pub fn solve(matrix: &PayoffMatrix, include_mixed: bool) -> EquilibriumOutcome {
    let mut outcome = pure_nash(matrix);
    if include_mixed && outcome.pure.is_empty() {
        // a 2x2 game without pure equilibria always has an interior
        // mixed point, so a degenerate denominator cannot occur here
        outcome.mixed = mixed_nash_2x2(matrix).ok().flatten();
        debug_assert!(outcome.mixed.is_some());
    }
    outcome
}
