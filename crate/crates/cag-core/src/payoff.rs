//! Payoff model for the two-player disclosure game.
//!
//! Each player holds an undisclosed vulnerability and either shares it
//! with its alliance (`S`) or attacks the rival (`A`). Player 1 finds
//! the flaw first with probability `p`; a race between two simultaneous
//! attackers is won by player 1 with probability `q`. Sharing pays the
//! alliance reward `r_i` scaled by the influence multiplier `b_i`;
//! a successful attack pays `e_i`, a suffered attack costs 1.

use thiserror::Error;

/// First-discovery probability, race odds, rewards and multipliers for
/// one game instance. Construction validates every range, so a value of
/// this type is always safe to evaluate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GameParams {
    p: f64,
    q: f64,
    r1: f64,
    r2: f64,
    b1: f64,
    b2: f64,
    e1: f64,
    e2: f64,
}

pub const INFLUENCE_MIN: f64 = 0.1;
pub const INFLUENCE_MAX: f64 = 1.5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("{name} = {value} is outside [0, 1]")]
    UnitInterval { name: &'static str, value: f64 },
    #[error("{name} = {value} is outside [{INFLUENCE_MIN}, {INFLUENCE_MAX}]")]
    InfluenceRange { name: &'static str, value: f64 },
    #[error("{name} = {value} must be a positive finite number")]
    NonpositiveMultiplier { name: &'static str, value: f64 },
}

fn check_unit(name: &'static str, value: f64) -> Result<(), ParamError> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(ParamError::UnitInterval { name, value })
    }
}

impl GameParams {
    pub fn new(
        p: f64,
        q: f64,
        r1: f64,
        r2: f64,
        b1: f64,
        b2: f64,
        e1: f64,
        e2: f64,
    ) -> Result<Self, ParamError> {
        check_unit("p", p)?;
        check_unit("q", q)?;
        check_unit("r1", r1)?;
        check_unit("r2", r2)?;
        for (name, b) in [("b1", b1), ("b2", b2)] {
            if !(INFLUENCE_MIN..=INFLUENCE_MAX).contains(&b) {
                return Err(ParamError::InfluenceRange { name, value: b });
            }
        }
        for (name, e) in [("e1", e1), ("e2", e2)] {
            if !(e > 0.0 && e.is_finite()) {
                return Err(ParamError::NonpositiveMultiplier { name, value: e });
            }
        }
        Ok(Self {
            p,
            q,
            r1,
            r2,
            b1,
            b2,
            e1,
            e2,
        })
    }

    /// Plain game without alliances or attack postures: b = e = 1.
    pub fn base(p: f64, q: f64, r1: f64, r2: f64) -> Result<Self, ParamError> {
        Self::new(p, q, r1, r2, 1.0, 1.0, 1.0, 1.0)
    }

    pub fn p(&self) -> f64 {
        self.p
    }
    pub fn q(&self) -> f64 {
        self.q
    }
    pub fn r1(&self) -> f64 {
        self.r1
    }
    pub fn r2(&self) -> f64 {
        self.r2
    }
    pub fn b1(&self) -> f64 {
        self.b1
    }
    pub fn b2(&self) -> f64 {
        self.b2
    }
    pub fn e1(&self) -> f64 {
        self.e1
    }
    pub fn e2(&self) -> f64 {
        self.e2
    }
}

/// Declared attack stance of an alliance. The stance bounds the payout
/// multiplier `e`: an offensive alliance amplifies a successful strike,
/// a defensive one blunts it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Posture {
    Offensive,
    Defensive,
}

impl Posture {
    /// Inclusive band of admissible `e` values for this stance.
    pub fn band(self) -> (f64, f64) {
        match self {
            Posture::Offensive => (1.1, 1.6),
            Posture::Defensive => (0.4, 0.9),
        }
    }

    pub fn contains(self, e: f64) -> bool {
        let (lo, hi) = self.band();
        (lo..=hi).contains(&e)
    }

    /// Band midpoint, used when a stance is declared without an explicit e.
    pub fn default_multiplier(self) -> f64 {
        let (lo, hi) = self.band();
        (lo + hi) / 2.0
    }

    pub fn name(self) -> &'static str {
        match self {
            Posture::Offensive => "offensive",
            Posture::Defensive => "defensive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    Share,
    Attack,
}

impl Strategy {
    pub fn letter(self) -> char {
        match self {
            Strategy::Share => 'S',
            Strategy::Attack => 'A',
        }
    }

    fn index(self) -> usize {
        match self {
            Strategy::Share => 0,
            Strategy::Attack => 1,
        }
    }
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// One cell of the 2x2 game: (player 1's strategy, player 2's strategy).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Profile(pub Strategy, pub Strategy);

/// Canonical cell order used by every report and label.
pub const PROFILE_ORDER: [Profile; 4] = [
    Profile(Strategy::Share, Strategy::Share),
    Profile(Strategy::Share, Strategy::Attack),
    Profile(Strategy::Attack, Strategy::Share),
    Profile(Strategy::Attack, Strategy::Attack),
];

impl Profile {
    /// Position in [`PROFILE_ORDER`].
    pub fn index(self) -> usize {
        self.0.index() * 2 + self.1.index()
    }

    pub fn tag(self) -> &'static str {
        match self.index() {
            0 => "SS",
            1 => "SA",
            2 => "AS",
            _ => "AA",
        }
    }
}

impl std::fmt::Display for Profile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.tag())
    }
}

/// Expected payoffs (u1, u2) for each of the four strategy profiles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PayoffMatrix {
    // cells[s1][s2] with Share = 0, Attack = 1
    cells: [[(f64, f64); 2]; 2],
}

impl PayoffMatrix {
    /// `cells[i][j]` is the payoff pair when player 1 plays the i-th
    /// strategy and player 2 the j-th, ordered Share then Attack.
    pub fn from_cells(cells: [[(f64, f64); 2]; 2]) -> Self {
        Self { cells }
    }

    pub fn get(&self, s1: Strategy, s2: Strategy) -> (f64, f64) {
        self.cells[s1.index()][s2.index()]
    }

    pub fn profile(&self, profile: Profile) -> (f64, f64) {
        self.get(profile.0, profile.1)
    }
}

/// Evaluates the four expected payoff pairs in closed form.
///
/// With w = p^2 + 2p(1-p)q the chance that player 1 lands the first
/// successful strike when both attack, the cells are:
///
/// ```text
/// u1(S,S) = p b1 r1                      u2(S,S) = (1-p) b2 r2
/// u1(S,A) = b1 r1 (2p - p^2) - (1-p)^2   u2(S,A) = e2 (1-p)^2
/// u1(A,S) = e1 p^2                       u2(A,S) = -p^2 + b2 r2 (1 - p^2)
/// u1(A,A) = e1 w - (1 - w)               u2(A,A) = e2 (1 - w) - w
/// ```
pub fn closed_form_payoffs(params: &GameParams) -> PayoffMatrix {
    let GameParams {
        p,
        q,
        r1,
        r2,
        b1,
        b2,
        e1,
        e2,
    } = *params;
    let w1 = p * p + 2.0 * p * (1.0 - p) * q;
    let l1 = 1.0 - w1;

    let ss = (p * b1 * r1, (1.0 - p) * b2 * r2);
    let sa = (
        b1 * r1 * (2.0 * p - p * p) - (1.0 - p) * (1.0 - p),
        e2 * (1.0 - p) * (1.0 - p),
    );
    let as_ = (e1 * p * p, -(p * p) + b2 * r2 * (1.0 - p * p));
    let aa = (e1 * w1 - l1, e2 * l1 - w1);

    PayoffMatrix::from_cells([[ss, sa], [as_, aa]])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn near(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12
    }

    #[test]
    fn reference_point_matches_printed_values() {
        let params = GameParams::base(0.6, 0.3, 0.7, 0.45).unwrap();
        let m = closed_form_payoffs(&params);
        let cases = [
            (Profile(Strategy::Share, Strategy::Share), (0.42, 0.18)),
            (Profile(Strategy::Share, Strategy::Attack), (0.428, 0.16)),
            (Profile(Strategy::Attack, Strategy::Share), (0.36, -0.072)),
            (Profile(Strategy::Attack, Strategy::Attack), (0.008, -0.008)),
        ];
        for (profile, (u1, u2)) in cases {
            let (a, b) = m.profile(profile);
            assert!(near(a, u1), "{profile}: u1 {a} != {u1}");
            assert!(near(b, u2), "{profile}: u2 {b} != {u2}");
        }
    }

    #[test]
    fn multipliers_scale_the_right_terms() {
        let params = GameParams::new(0.6, 0.3, 0.7, 0.45, 0.5, 1.2, 2.0, 0.4).unwrap();
        let m = closed_form_payoffs(&params);
        // attack payout scales only the success term
        let (u1_as, u2_as) = m.get(Strategy::Attack, Strategy::Share);
        assert!(near(u1_as, 2.0 * 0.36));
        assert!(near(u2_as, -0.36 + 1.2 * 0.45 * 0.64));
        // share reward scales with influence
        let (u1_ss, u2_ss) = m.get(Strategy::Share, Strategy::Share);
        assert!(near(u1_ss, 0.6 * 0.5 * 0.7));
        assert!(near(u2_ss, 0.4 * 1.2 * 0.45));
    }

    #[test]
    fn zero_sum_when_rewards_are_zero() {
        // with r = 0 and e = 1 every cell is zero-sum
        let params = GameParams::base(0.37, 0.81, 0.0, 0.0).unwrap();
        let m = closed_form_payoffs(&params);
        for profile in PROFILE_ORDER {
            let (u1, u2) = m.profile(profile);
            assert!(near(u1 + u2, 0.0), "{profile}: {u1} + {u2}");
        }
    }

    #[test]
    fn rejects_out_of_range_params() {
        assert!(matches!(
            GameParams::base(1.2, 0.5, 0.5, 0.5),
            Err(ParamError::UnitInterval { name: "p", .. })
        ));
        assert!(matches!(
            GameParams::new(0.5, 0.5, 0.5, 0.5, 0.05, 1.0, 1.0, 1.0),
            Err(ParamError::InfluenceRange { name: "b1", .. })
        ));
        assert!(matches!(
            GameParams::new(0.5, 0.5, 0.5, 0.5, 1.0, 1.0, 1.0, 0.0),
            Err(ParamError::NonpositiveMultiplier { name: "e2", .. })
        ));
        assert!(GameParams::base(f64::NAN, 0.5, 0.5, 0.5).is_err());
    }

    #[test]
    fn posture_bands() {
        assert!(Posture::Offensive.contains(1.1));
        assert!(Posture::Offensive.contains(1.6));
        assert!(!Posture::Offensive.contains(1.0));
        assert!(Posture::Defensive.contains(0.4));
        assert!(!Posture::Defensive.contains(1.0));
        assert!(near(Posture::Offensive.default_multiplier(), 1.35));
        assert!(near(Posture::Defensive.default_multiplier(), 0.65));
    }
}
