//! Run descriptions: a JSON scenario file merged with command-line
//! overrides and validated into a complete parameter set.

use cag_core::{
    resolve_attack_multiplier, Posture, WeightedVotingGame, DEFAULT_RESOLUTION, INFLUENCE_MAX,
    INFLUENCE_MIN,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum ScenarioError {
    #[error("scenario syntax error at line {line}, column {column}: {reason}")]
    Syntax {
        line: usize,
        column: usize,
        reason: String,
    },
    #[error("invalid scenario: {field}: {reason}")]
    Validation { field: &'static str, reason: String },
}

fn invalid(field: &'static str, reason: impl Into<String>) -> ScenarioError {
    ScenarioError::Validation {
        field,
        reason: reason.into(),
    }
}

/// Alliance stance. `None` is the explicit "no stance" spelling, useful
/// for overriding a stance a scenario file sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Stance {
    Offensive,
    Defensive,
    None,
}

impl Stance {
    fn to_posture(self) -> Option<Posture> {
        match self {
            Stance::Offensive => Some(Posture::Offensive),
            Stance::Defensive => Some(Posture::Defensive),
            Stance::None => None,
        }
    }
}

/// What a sweep writes besides its CSV.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Svg,
    Ppm,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct SweepSettings {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolution: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<OutputFormat>,
}

/// One run of the model. A scenario describes either a single (p, q)
/// point or a sweep over the whole square, never both.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alliance1: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub member1: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alliance2: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub member2: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub posture1: Option<Stance>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub posture2: Option<Stance>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSettings>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
}

/// Flags shared by `solve` and `sweep`, mirroring the scenario keys.
/// A flag overrides the file value; setting one side of the b-versus-
/// alliance choice clears the other side from the file.
#[derive(Debug, Default, clap::Args)]
pub struct SharedFlags {
    /// Scenario file (JSON)
    #[arg(long, value_name = "FILE")]
    pub scenario: Option<std::path::PathBuf>,
    /// Disclosure reward for player 1, in [0, 1]
    #[arg(long)]
    pub r1: Option<f64>,
    /// Disclosure reward for player 2, in [0, 1]
    #[arg(long)]
    pub r2: Option<f64>,
    /// Influence multiplier for player 1, in [0.1, 1.5]
    #[arg(long, conflicts_with_all = ["alliance1", "member1"])]
    pub b1: Option<f64>,
    /// Influence multiplier for player 2, in [0.1, 1.5]
    #[arg(long, conflicts_with_all = ["alliance2", "member2"])]
    pub b2: Option<f64>,
    /// Attack payout for player 1 (must sit inside the posture band when a posture is set)
    #[arg(long)]
    pub e1: Option<f64>,
    /// Attack payout for player 2
    #[arg(long)]
    pub e2: Option<f64>,
    /// Alliance of player 1 in shorthand, e.g. "[10:11,2,2,2]"
    #[arg(long, value_name = "GAME")]
    pub alliance1: Option<String>,
    /// Member index of player 1 inside alliance1
    #[arg(long, value_name = "INDEX")]
    pub member1: Option<usize>,
    /// Alliance of player 2 in shorthand
    #[arg(long, value_name = "GAME")]
    pub alliance2: Option<String>,
    /// Member index of player 2 inside alliance2
    #[arg(long, value_name = "INDEX")]
    pub member2: Option<usize>,
    /// Stance of player 1
    #[arg(long, value_enum)]
    pub posture1: Option<Stance>,
    /// Stance of player 2
    #[arg(long, value_enum)]
    pub posture2: Option<Stance>,
    /// Output path: point CSV file for solve, base path for sweep files
    #[arg(long, value_name = "PATH")]
    pub out: Option<String>,
}

/// Parses scenario text without cross-field validation, for merging
/// with flags first. Unknown keys and type errors are rejected here.
pub fn parse_scenario_raw(text: &str) -> Result<Scenario, ScenarioError> {
    serde_json::from_str(text).map_err(|e| {
        let msg = e.to_string();
        // serde_json appends its own position suffix; the error header
        // already carries line and column
        let reason = match msg.rfind(" at line ") {
            Some(i) => msg[..i].to_string(),
            None => msg.clone(),
        };
        ScenarioError::Syntax {
            line: e.line(),
            column: e.column(),
            reason,
        }
    })
}

/// Parses and fully validates scenario text, applying all defaults.
#[cfg(test)]
pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let mut scenario = parse_scenario_raw(text)?;
    scenario.finish()?;
    Ok(scenario)
}

#[cfg(test)]
pub fn scenario_to_json(scenario: &Scenario) -> String {
    serde_json::to_string_pretty(scenario).expect("scenario serialization cannot fail")
}

impl Scenario {
    /// Overlays command-line flags onto file values. A `--b` flag
    /// replaces any alliance the file named for that player, and an
    /// `--alliance`/`--member` flag replaces an explicit b.
    pub fn apply_flags(&mut self, flags: &SharedFlags) {
        if let Some(v) = flags.r1 {
            self.r1 = Some(v);
        }
        if let Some(v) = flags.r2 {
            self.r2 = Some(v);
        }
        if let Some(v) = flags.e1 {
            self.e1 = Some(v);
        }
        if let Some(v) = flags.e2 {
            self.e2 = Some(v);
        }
        if let Some(s) = flags.posture1 {
            self.posture1 = Some(s);
        }
        if let Some(s) = flags.posture2 {
            self.posture2 = Some(s);
        }
        if let Some(v) = flags.b1 {
            self.b1 = Some(v);
            self.alliance1 = None;
            self.member1 = None;
        }
        if flags.alliance1.is_some() || flags.member1.is_some() {
            self.b1 = None;
            if let Some(a) = &flags.alliance1 {
                self.alliance1 = Some(a.clone());
            }
            if let Some(m) = flags.member1 {
                self.member1 = Some(m);
            }
        }
        if let Some(v) = flags.b2 {
            self.b2 = Some(v);
            self.alliance2 = None;
            self.member2 = None;
        }
        if flags.alliance2.is_some() || flags.member2.is_some() {
            self.b2 = None;
            if let Some(a) = &flags.alliance2 {
                self.alliance2 = Some(a.clone());
            }
            if let Some(m) = flags.member2 {
                self.member2 = Some(m);
            }
        }
        if let Some(o) = &flags.out {
            self.out = Some(o.clone());
        }
    }

    /// Applies defaults and checks every cross-field rule. Idempotent:
    /// finishing an already finished scenario changes nothing.
    pub fn finish(&mut self) -> Result<(), ScenarioError> {
        if self.posture1 == Some(Stance::None) {
            self.posture1 = None;
        }
        if self.posture2 == Some(Stance::None) {
            self.posture2 = None;
        }

        finish_influence(
            ["b1", "alliance1", "member1"],
            &mut self.b1,
            &self.alliance1,
            self.member1,
        )?;
        finish_influence(
            ["b2", "alliance2", "member2"],
            &mut self.b2,
            &self.alliance2,
            self.member2,
        )?;
        finish_attack_payout(1, "e1", self.posture1, &mut self.e1)?;
        finish_attack_payout(2, "e2", self.posture2, &mut self.e2)?;

        require_unit("r1", self.r1)?;
        require_unit("r2", self.r2)?;

        let has_point = self.p.is_some() || self.q.is_some();
        match (&mut self.sweep, has_point) {
            (Some(_), true) => {
                return Err(invalid(
                    "sweep",
                    "a scenario is either a point (p, q) or a sweep, not both",
                ))
            }
            (None, false) => {
                return Err(invalid(
                    "p",
                    "either a point (p, q) or sweep settings are required",
                ))
            }
            (None, true) => {
                if self.p.is_none() {
                    return Err(invalid("p", "required when q is set"));
                }
                if self.q.is_none() {
                    return Err(invalid("q", "required when p is set"));
                }
                require_unit("p", self.p)?;
                require_unit("q", self.q)?;
            }
            (Some(settings), false) => {
                let resolution = settings.resolution.unwrap_or(DEFAULT_RESOLUTION);
                if resolution < 2 {
                    return Err(invalid("sweep.resolution", "must be at least 2"));
                }
                settings.resolution = Some(resolution);
                settings.format = Some(settings.format.unwrap_or_default());
            }
        }
        Ok(())
    }
}

fn finish_influence(
    names: [&'static str; 3],
    b: &mut Option<f64>,
    alliance: &Option<String>,
    member: Option<usize>,
) -> Result<(), ScenarioError> {
    let [b_name, alliance_name, member_name] = names;
    match (alliance, member) {
        (Some(_), None) => {
            return Err(invalid(
                member_name,
                format!("required when {alliance_name} is set"),
            ))
        }
        (None, Some(_)) => {
            return Err(invalid(
                alliance_name,
                format!("required when {member_name} is set"),
            ))
        }
        _ => {}
    }
    if let Some(text) = alliance {
        if b.is_some() {
            return Err(invalid(b_name, format!("conflicts with {alliance_name}")));
        }
        let game: WeightedVotingGame = text
            .parse()
            .map_err(|e| invalid(alliance_name, format!("{e}")))?;
        let index = member.expect("checked above");
        if index >= game.players() {
            return Err(invalid(
                member_name,
                format!(
                    "index {index} is out of range for {} players",
                    game.players()
                ),
            ));
        }
    } else if let Some(value) = *b {
        if !(INFLUENCE_MIN..=INFLUENCE_MAX).contains(&value) {
            return Err(invalid(
                b_name,
                format!("{value} is outside [{INFLUENCE_MIN}, {INFLUENCE_MAX}]"),
            ));
        }
    } else {
        *b = Some(1.0);
    }
    Ok(())
}

fn finish_attack_payout(
    player: u8,
    e_name: &'static str,
    stance: Option<Stance>,
    e: &mut Option<f64>,
) -> Result<(), ScenarioError> {
    if let Some(value) = *e {
        if !(value > 0.0) {
            return Err(invalid(e_name, format!("{value} is not positive")));
        }
    }
    let posture = stance.and_then(Stance::to_posture);
    let resolved = resolve_attack_multiplier(player, posture, *e)
        .map_err(|err| invalid(e_name, format!("{err}")))?;
    *e = Some(resolved);
    Ok(())
}

fn require_unit(field: &'static str, value: Option<f64>) -> Result<f64, ScenarioError> {
    match value {
        None => Err(invalid(field, "required")),
        Some(x) if (0.0..=1.0).contains(&x) => Ok(x),
        Some(x) => Err(invalid(field, format!("{x} is outside [0, 1]"))),
    }
}
