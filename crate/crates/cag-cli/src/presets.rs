//! Canned sweep configurations with pinned parameters, so the standard
//! diagrams can be regenerated byte-for-byte with one command.

use cag_core::{power_context, AllianceMember, SweepContext, SweepError, WeightedVotingGame};

/// Strict-majority game with one member above quota: member 0 decides
/// alone and everyone else is a Dummy.
const DICTATOR_GAME: &str = "[10:11,2,2,2]";
/// Four equal members, each one a Veto player with Banzhaf index 1/4.
const VETO_GAME: &str = "[20:5,5,5,5]";

enum Params {
    /// Unit influence and attack payouts, only the rewards vary.
    Plain { r1: f64, r2: f64 },
    /// Influence comes from each player's seat in a voting game.
    Alliance {
        alliance1: &'static str,
        member1: usize,
        r1: f64,
        alliance2: &'static str,
        member2: usize,
        r2: f64,
    },
}

pub struct Preset {
    pub name: &'static str,
    pub blurb: &'static str,
    params: Params,
}

impl Preset {
    /// Resolves the preset into a ready-to-run context (default
    /// resolution, pure equilibria only).
    pub fn context(&self) -> Result<SweepContext, SweepError> {
        match self.params {
            Params::Plain { r1, r2 } => SweepContext::new(r1, r2, 1.0, 1.0, 1.0, 1.0),
            Params::Alliance {
                alliance1,
                member1,
                r1,
                alliance2,
                member2,
                r2,
            } => {
                let game1: WeightedVotingGame = alliance1.parse()?;
                let game2: WeightedVotingGame = alliance2.parse()?;
                power_context(
                    AllianceMember {
                        game: &game1,
                        member: member1,
                    },
                    r1,
                    None,
                    None,
                    AllianceMember {
                        game: &game2,
                        member: member2,
                    },
                    r2,
                    None,
                    None,
                )
            }
        }
    }
}

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "fig2-left",
        blurb: "baseline: low rewards on both sides (r1=0.1, r2=0.1)",
        params: Params::Plain { r1: 0.1, r2: 0.1 },
    },
    Preset {
        name: "fig2-mid",
        blurb: "baseline: generous rewards on both sides (r1=0.75, r2=0.75)",
        params: Params::Plain { r1: 0.75, r2: 0.75 },
    },
    Preset {
        name: "fig2-right",
        blurb: "baseline: lopsided rewards (r1=0.25, r2=0.75)",
        params: Params::Plain { r1: 0.25, r2: 0.75 },
    },
    Preset {
        name: "fig-power-veto-veto",
        blurb: "two veto players, well rewarded (r1=0.9, r2=0.9)",
        params: Params::Alliance {
            alliance1: VETO_GAME,
            member1: 0,
            r1: 0.9,
            alliance2: VETO_GAME,
            member2: 0,
            r2: 0.9,
        },
    },
    Preset {
        name: "fig-power-dict-veto",
        blurb: "dictator against a veto player, equal rewards (r1=0.5, r2=0.5)",
        params: Params::Alliance {
            alliance1: DICTATOR_GAME,
            member1: 0,
            r1: 0.5,
            alliance2: VETO_GAME,
            member2: 0,
            r2: 0.5,
        },
    },
    Preset {
        name: "fig-power-veto-dummy",
        blurb: "veto player against a dummy (r1=0.9, r2=0.5)",
        params: Params::Alliance {
            alliance1: VETO_GAME,
            member1: 0,
            r1: 0.9,
            alliance2: DICTATOR_GAME,
            member2: 1,
            r2: 0.5,
        },
    },
    Preset {
        name: "fig-power-dict-dict",
        blurb: "two dictators, uneven rewards (r1=0.9, r2=0.2)",
        params: Params::Alliance {
            alliance1: DICTATOR_GAME,
            member1: 0,
            r1: 0.9,
            alliance2: DICTATOR_GAME,
            member2: 0,
            r2: 0.2,
        },
    },
    Preset {
        name: "fig-power-dict-dummy",
        blurb: "dictator against a dummy (r1=0.55, r2=0.4)",
        params: Params::Alliance {
            alliance1: DICTATOR_GAME,
            member1: 0,
            r1: 0.55,
            alliance2: DICTATOR_GAME,
            member2: 1,
            r2: 0.4,
        },
    },
];

pub fn find(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name)
}
