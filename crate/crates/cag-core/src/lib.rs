//! Deterministic simulator for a two-player cyber conflict between
//! members of rival alliances.
//!
//! Each player sits inside an alliance modeled as a weighted voting
//! game; its pull there (Banzhaf power) scales the reward it collects
//! for sharing a discovered vulnerability instead of attacking with
//! it. The crate computes alliance power tables, expected payoffs in
//! closed form and by walking the full game tree, Nash equilibria of
//! the resulting 2x2 game, and phase diagrams of the equilibrium
//! structure over the discovery/race probability square, exportable
//! as CSV, SVG or PPM.
//!
//! Everything is reproducible: equal inputs give byte-identical
//! exports.

pub mod equilibrium;
pub mod fmt;
pub mod payoff;
pub mod render;
pub mod sweep;
pub mod tree;
pub mod voting;

pub use equilibrium::{
    best_response, mixed_nash_2x2, pure_nash, solve, EquilibriumError, EquilibriumOutcome,
    MixedEquilibrium, ProfileSet,
};
pub use payoff::{
    closed_form_payoffs, GameParams, ParamError, PayoffMatrix, Posture, Profile, Strategy,
    INFLUENCE_MAX, INFLUENCE_MIN, PROFILE_ORDER,
};
pub use render::{render_ppm, render_svg, Palette, RenderError, Rgb};
pub use sweep::{
    member_influence, power_context, resolve_attack_multiplier, sweep, AllianceMember, PhaseGrid,
    SweepContext, SweepError, DEFAULT_RESOLUTION,
};
pub use tree::{build_game_tree, GameNode, GameTree, PlayerId, Stage, TreeError};
pub use voting::{
    banzhaf_swings_brute, banzhaf_swings_dp, classify_players, influence_multiplier,
    shapley_shubik, PlayerClass, PowerProfile, VotingError, WeightedVotingGame,
};
