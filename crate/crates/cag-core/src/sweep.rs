//! Phase diagrams over the (p, q) square.
//!
//! A sweep fixes rewards and multipliers, walks an evenly spaced
//! lattice of discovery and race probabilities, and records the pure
//! equilibrium set of every cell. Lattice coordinates are i/(res-1),
//! so both endpoints are included and runs are reproducible bit for
//! bit.

use crate::equilibrium::{solve, EquilibriumOutcome};
use crate::fmt::f6;
use crate::payoff::{closed_form_payoffs, GameParams, ParamError, Posture};
use crate::voting::{influence_multiplier, PowerProfile, VotingError, WeightedVotingGame};
use thiserror::Error;

pub const DEFAULT_RESOLUTION: usize = 201;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SweepError {
    #[error("resolution {resolution} is too coarse, need at least 2 points per axis")]
    InvalidResolution { resolution: usize },
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("e{player} = {e} is outside the {} band [{lo}, {hi}]", posture.name())]
    PostureBandViolation {
        player: u8,
        posture: Posture,
        e: f64,
        lo: f64,
        hi: f64,
    },
    #[error(transparent)]
    Voting(#[from] VotingError),
    #[error("{cells} cells do not fill a {width}x{height} grid")]
    GridShape {
        width: usize,
        height: usize,
        cells: usize,
    },
}

/// Fixed game inputs plus lattice settings for one sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepContext {
    r1: f64,
    r2: f64,
    b1: f64,
    b2: f64,
    e1: f64,
    e2: f64,
    resolution: usize,
    include_mixed: bool,
}

impl SweepContext {
    pub fn new(r1: f64, r2: f64, b1: f64, b2: f64, e1: f64, e2: f64) -> Result<Self, SweepError> {
        // same validation as a single game instance at any lattice point
        GameParams::new(0.0, 0.0, r1, r2, b1, b2, e1, e2)?;
        Ok(Self {
            r1,
            r2,
            b1,
            b2,
            e1,
            e2,
            resolution: DEFAULT_RESOLUTION,
            include_mixed: false,
        })
    }

    pub fn with_resolution(mut self, resolution: usize) -> Result<Self, SweepError> {
        if resolution < 2 {
            return Err(SweepError::InvalidResolution { resolution });
        }
        self.resolution = resolution;
        Ok(self)
    }

    pub fn with_mixed(mut self, include_mixed: bool) -> Self {
        self.include_mixed = include_mixed;
        self
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
    pub fn resolution(&self) -> usize {
        self.resolution
    }
    pub fn include_mixed(&self) -> bool {
        self.include_mixed
    }

    pub fn params_at(&self, p: f64, q: f64) -> Result<GameParams, ParamError> {
        GameParams::new(p, q, self.r1, self.r2, self.b1, self.b2, self.e1, self.e2)
    }
}

/// Equilibrium labels over a lattice, `width` points along p and
/// `height` along q. Cell (i, j) sits at p = i/(width-1),
/// q = j/(height-1).
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseGrid {
    context: SweepContext,
    width: usize,
    height: usize,
    cells: Vec<EquilibriumOutcome>,
}

fn lattice_coord(i: usize, n: usize) -> f64 {
    if n <= 1 {
        0.0
    } else {
        i as f64 / (n - 1) as f64
    }
}

impl PhaseGrid {
    pub fn from_cells(
        context: SweepContext,
        width: usize,
        height: usize,
        cells: Vec<EquilibriumOutcome>,
    ) -> Result<Self, SweepError> {
        if width == 0 || height == 0 || cells.len() != width * height {
            return Err(SweepError::GridShape {
                width,
                height,
                cells: cells.len(),
            });
        }
        Ok(Self {
            context,
            width,
            height,
            cells,
        })
    }

    pub fn context(&self) -> &SweepContext {
        &self.context
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn cell(&self, pi: usize, qi: usize) -> &EquilibriumOutcome {
        &self.cells[pi * self.height + qi]
    }

    pub fn p_at(&self, pi: usize) -> f64 {
        lattice_coord(pi, self.width)
    }

    pub fn q_at(&self, qi: usize) -> f64 {
        lattice_coord(qi, self.height)
    }

    /// Region tags present in the grid, deduplicated, singletons before
    /// larger sets and the empty label last.
    pub fn present_labels(&self) -> Vec<String> {
        let mut masks: Vec<u8> = self.cells.iter().map(|c| c.pure.bits()).collect();
        masks.sort_unstable_by_key(|&m| {
            if m == 0 {
                (u32::MAX, 0)
            } else {
                (m.count_ones(), m)
            }
        });
        masks.dedup();
        masks
            .into_iter()
            .map(|m| {
                self.cells
                    .iter()
                    .find(|c| c.pure.bits() == m)
                    .expect("mask came from the cells")
                    .pure
                    .label()
            })
            .collect()
    }

    /// `p,q,label` rows, q ascending in the outer loop, p in the inner,
    /// 6-decimal coordinates.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("p,q,label\n");
        for qi in 0..self.height {
            for pi in 0..self.width {
                out.push_str(&format!(
                    "{},{},{}\n",
                    f6(self.p_at(pi)),
                    f6(self.q_at(qi)),
                    self.cell(pi, qi).label()
                ));
            }
        }
        out
    }
}

/// Solves every lattice cell of `context`.
pub fn sweep(context: &SweepContext) -> PhaseGrid {
    let n = context.resolution;
    let mut cells = Vec::with_capacity(n * n);
    for pi in 0..n {
        let p = lattice_coord(pi, n);
        for qi in 0..n {
            let q = lattice_coord(qi, n);
            let params = context
                .params_at(p, q)
                .expect("lattice point within validated context");
            let matrix = closed_form_payoffs(&params);
            cells.push(solve(&matrix, context.include_mixed));
        }
    }
    PhaseGrid {
        context: *context,
        width: n,
        height: n,
        cells,
    }
}

/// One side of an alliance-versus-alliance sweep: which member of
/// which voting game is playing.
#[derive(Debug, Clone, Copy)]
pub struct AllianceMember<'a> {
    pub game: &'a WeightedVotingGame,
    pub member: usize,
}

/// Resolves a player's attack payout from stance and optional explicit
/// value: 1 without a stance, the band midpoint for a bare stance, and
/// the explicit value when it sits inside the band.
pub fn resolve_attack_multiplier(
    player: u8,
    posture: Option<Posture>,
    explicit: Option<f64>,
) -> Result<f64, SweepError> {
    match (posture, explicit) {
        (None, None) => Ok(1.0),
        (None, Some(e)) => Ok(e),
        (Some(po), None) => Ok(po.default_multiplier()),
        (Some(po), Some(e)) => {
            if po.contains(e) {
                Ok(e)
            } else {
                let (lo, hi) = po.band();
                Err(SweepError::PostureBandViolation {
                    player,
                    posture: po,
                    e,
                    lo,
                    hi,
                })
            }
        }
    }
}

/// Builds a sweep context from two alliance members: each side's
/// influence multiplier comes from its Banzhaf index, each side's
/// attack payout from its alliance stance.
pub fn power_context(
    side1: AllianceMember,
    r1: f64,
    posture1: Option<Posture>,
    e1: Option<f64>,
    side2: AllianceMember,
    r2: f64,
    posture2: Option<Posture>,
    e2: Option<f64>,
) -> Result<SweepContext, SweepError> {
    let b1 = member_influence(side1)?;
    let b2 = member_influence(side2)?;
    let e1 = resolve_attack_multiplier(1, posture1, e1)?;
    let e2 = resolve_attack_multiplier(2, posture2, e2)?;
    SweepContext::new(r1, r2, b1, b2, e1, e2)
}

/// Influence multiplier of one member, Banzhaf index through the
/// standard 0.1..1.5 ramp.
pub fn member_influence(side: AllianceMember) -> Result<f64, SweepError> {
    if side.member >= side.game.players() {
        return Err(VotingError::IndexOutOfRange {
            index: side.member,
            players: side.game.players(),
        }
        .into());
    }
    let profile = PowerProfile::auto(side.game)?;
    Ok(influence_multiplier(profile.banzhaf[side.member])?)
}
