//! Executes finished scenarios and presets: solves points, sweeps
//! grids, and writes every declared output file.

use std::fs;
use std::path::{Path, PathBuf};

use cag_core::fmt::f6;
use cag_core::{
    closed_form_payoffs, member_influence, render_ppm, render_svg, solve, sweep, AllianceMember,
    EquilibriumOutcome, GameParams, Palette, ParamError, PayoffMatrix, PhaseGrid, PowerProfile,
    RenderError, Strategy, SweepContext, SweepError, VotingError, WeightedVotingGame,
    PROFILE_ORDER,
};

use crate::presets;
use crate::scenario::{OutputFormat, Scenario, ScenarioError};

/// Raster cell edge in pixels; 201 lattice points become a 603-pixel
/// square image.
const PPM_CELL_PIXELS: usize = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    Sweep(#[from] SweepError),
    #[error(transparent)]
    Voting(#[from] VotingError),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Render(#[from] RenderError),
    #[error("unknown preset {name:?}; `cag preset list` shows the catalog")]
    UnknownPreset { name: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

fn io_error(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

pub fn read_scenario_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(io_error(path))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir).map_err(io_error(path))?;
        }
    }
    fs::write(path, bytes).map_err(io_error(path))
}

/// Influence multiplier for one side of a finished scenario: the
/// explicit value, or the player's seat in their alliance.
fn resolve_influence(
    b: Option<f64>,
    alliance: &Option<String>,
    member: Option<usize>,
) -> Result<f64, CliError> {
    if let Some(value) = b {
        return Ok(value);
    }
    let text = alliance
        .as_ref()
        .expect("finished scenario has b or alliance");
    let game: WeightedVotingGame = text.parse()?;
    let member = member.expect("finished scenario pairs alliance with member");
    Ok(member_influence(AllianceMember {
        game: &game,
        member,
    })?)
}

fn context_for(scenario: &Scenario) -> Result<SweepContext, CliError> {
    let b1 = resolve_influence(scenario.b1, &scenario.alliance1, scenario.member1)?;
    let b2 = resolve_influence(scenario.b2, &scenario.alliance2, scenario.member2)?;
    let e1 = scenario.e1.expect("finished scenario has e1");
    let e2 = scenario.e2.expect("finished scenario has e2");
    let r1 = scenario.r1.expect("finished scenario has r1");
    let r2 = scenario.r2.expect("finished scenario has r2");
    Ok(SweepContext::new(r1, r2, b1, b2, e1, e2)?)
}

/// Solves the scenario's (p, q) point: report to the returned string,
/// profile CSV to the output path when one is declared.
pub fn run_solve(scenario: &Scenario) -> Result<String, CliError> {
    let ctx = context_for(scenario)?;
    let params = ctx.params_at(
        scenario.p.expect("finished point scenario has p"),
        scenario.q.expect("finished point scenario has q"),
    )?;
    let matrix = closed_form_payoffs(&params);
    let outcome = solve(&matrix, true);
    if let Some(out) = &scenario.out {
        let path = PathBuf::from(out);
        write_file(&path, point_csv(&matrix, outcome).as_bytes())?;
    }
    Ok(point_report(&params, &matrix, outcome))
}

fn pair(cell: (f64, f64)) -> String {
    format!("({:>9}, {:>9})", f6(cell.0), f6(cell.1))
}

fn strategy_word(s: Strategy) -> &'static str {
    match s {
        Strategy::Share => "share",
        Strategy::Attack => "attack",
    }
}

fn point_report(params: &GameParams, matrix: &PayoffMatrix, outcome: EquilibriumOutcome) -> String {
    let mut report = format!(
        "parameters: p={} q={} r1={} r2={} b1={} b2={} e1={} e2={}\n",
        f6(params.p()),
        f6(params.q()),
        f6(params.r1()),
        f6(params.r2()),
        f6(params.b1()),
        f6(params.b2()),
        f6(params.e1()),
        f6(params.e2()),
    );
    report.push_str("payoffs (u1, u2):\n");
    let header = format!("{:11}{:^22}  {:^22}", "", "share", "attack");
    report.push_str(header.trim_end());
    report.push('\n');
    for s1 in [Strategy::Share, Strategy::Attack] {
        report.push_str(&format!(
            "  {:<9}{}  {}\n",
            strategy_word(s1),
            pair(matrix.get(s1, Strategy::Share)),
            pair(matrix.get(s1, Strategy::Attack)),
        ));
    }
    report.push_str(&format!("pure: {}\n", outcome.pure.label()));
    if let Some(mixed) = outcome.mixed {
        report.push_str(&format!(
            "mixed: share1={} share2={}\n",
            f6(mixed.share1),
            f6(mixed.share2)
        ));
    }
    report
}

fn point_csv(matrix: &PayoffMatrix, outcome: EquilibriumOutcome) -> String {
    let mut csv = String::from("profile,u1,u2,nash\n");
    for profile in PROFILE_ORDER {
        let (u1, u2) = matrix.profile(profile);
        csv.push_str(&format!(
            "{},{},{},{}\n",
            profile.tag(),
            f6(u1),
            f6(u2),
            u8::from(outcome.pure.contains(profile))
        ));
    }
    csv
}

/// Sweeps the scenario's grid and writes the CSV plus the requested
/// image next to it; returns the run summary.
pub fn run_sweep(scenario: &Scenario, include_mixed: bool) -> Result<String, CliError> {
    let settings = scenario
        .sweep
        .as_ref()
        .expect("finished sweep scenario has settings");
    let resolution = settings
        .resolution
        .expect("finished settings have a resolution");
    let format = settings.format.expect("finished settings have a format");
    let out = scenario
        .out
        .as_ref()
        .ok_or_else(|| ScenarioError::Validation {
            field: "out",
            reason: "required for sweeps (base path for the output files)".into(),
        })?;
    let ctx = context_for(scenario)?
        .with_resolution(resolution)?
        .with_mixed(include_mixed);
    let grid = sweep(&ctx);
    write_grid_outputs(&grid, out, format)
}

/// Runs one catalog preset; files land at `out` (default: the preset's
/// own name) and the summary opens with the preset identity.
pub fn run_preset(name: &str, out: Option<&str>, format: OutputFormat) -> Result<String, CliError> {
    let preset = presets::find(name).ok_or_else(|| CliError::UnknownPreset {
        name: name.to_string(),
    })?;
    let ctx = preset.context()?;
    let grid = sweep(&ctx);
    let base = out.unwrap_or(preset.name);
    let summary = write_grid_outputs(&grid, base, format)?;
    Ok(format!(
        "preset: {}\n{}\n{summary}",
        preset.name, preset.blurb
    ))
}

pub fn list_presets() -> String {
    let mut out = String::new();
    for preset in presets::PRESETS {
        out.push_str(&format!("{:<22}{}\n", preset.name, preset.blurb));
    }
    out
}

fn write_grid_outputs(
    grid: &PhaseGrid,
    base: &str,
    format: OutputFormat,
) -> Result<String, CliError> {
    let ctx = grid.context();
    let mut summary = format!(
        "context: r1={} r2={} b1={} b2={} e1={} e2={} resolution={}\n{}\n",
        f6(ctx.r1()),
        f6(ctx.r2()),
        f6(ctx.b1()),
        f6(ctx.b2()),
        f6(ctx.e1()),
        f6(ctx.e2()),
        ctx.resolution(),
        label_census(grid),
    );
    let csv_path = PathBuf::from(format!("{base}.csv"));
    write_file(&csv_path, grid.to_csv().as_bytes())?;
    summary.push_str(&format!("wrote: {}\n", csv_path.display()));
    let palette = Palette::default();
    match format {
        OutputFormat::Svg => {
            let path = PathBuf::from(format!("{base}.svg"));
            write_file(&path, render_svg(grid, &palette)?.as_bytes())?;
            summary.push_str(&format!("wrote: {}\n", path.display()));
        }
        OutputFormat::Ppm => {
            let path = PathBuf::from(format!("{base}.ppm"));
            write_file(&path, &render_ppm(grid, &palette, PPM_CELL_PIXELS)?)?;
            summary.push_str(&format!("wrote: {}\n", path.display()));
        }
        OutputFormat::Csv => {}
    }
    Ok(summary)
}

fn label_census(grid: &PhaseGrid) -> String {
    let mut parts = Vec::new();
    for label in grid.present_labels() {
        let count = (0..grid.width())
            .flat_map(|pi| (0..grid.height()).map(move |qi| (pi, qi)))
            .filter(|&(pi, qi)| grid.cell(pi, qi).pure.label() == label)
            .count();
        parts.push(format!("{label}={count}"));
    }
    format!("labels: {}", parts.join(" "))
}

/// Power-report backend choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Backend {
    /// Subset-sum table, falling back to the direct walk when the
    /// weight budget is exceeded
    #[default]
    Auto,
    /// Direct coalition walk (up to 24 players)
    Brute,
    /// Subset-sum table only
    Dp,
}

/// Voting-power report for one alliance, text or CSV, optionally
/// duplicated into a file.
pub fn run_power(
    alliance: &str,
    shapley: bool,
    backend: Backend,
    csv: bool,
    out: Option<&str>,
) -> Result<String, CliError> {
    let game: WeightedVotingGame = alliance.parse()?;
    let mut profile = match backend {
        Backend::Auto => PowerProfile::auto(&game)?,
        Backend::Brute => PowerProfile::brute(&game)?,
        Backend::Dp => PowerProfile::dp(&game)?,
    };
    if shapley {
        profile = profile.with_shapley(&game)?;
    }
    let report = if csv {
        profile.csv_report(&game)
    } else {
        profile.text_report(&game)
    };
    if let Some(path) = out {
        write_file(Path::new(path), report.as_bytes())?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::parse_scenario;

    fn table_point() -> Scenario {
        parse_scenario(r#"{"p":0.6,"q":0.3,"r1":0.7,"r2":0.45}"#).unwrap()
    }

    #[test]
    fn point_report_prints_the_reference_matrix() {
        let report = run_solve(&table_point()).unwrap();
        let expected = "\
parameters: p=0.600000 q=0.300000 r1=0.700000 r2=0.450000 b1=1.000000 b2=1.000000 e1=1.000000 e2=1.000000
payoffs (u1, u2):
                   share                   attack
  share    ( 0.420000,  0.180000)  ( 0.428000,  0.160000)
  attack   ( 0.360000, -0.072000)  ( 0.008000, -0.008000)
pure: SS
";
        assert_eq!(report, expected);
    }

    #[test]
    fn zero_reward_point_reports_mutual_attack() {
        let sc = parse_scenario(r#"{"p":0.5,"q":0.5,"r1":0.0,"r2":0.0}"#).unwrap();
        let report = run_solve(&sc).unwrap();
        assert!(report.contains("pure: AA\n"), "{report}");
        assert!(!report.contains("mixed:"), "{report}");
    }

    #[test]
    fn point_csv_flags_the_equilibrium_row() {
        let sc = table_point();
        let matrix = closed_form_payoffs(&context_for(&sc).unwrap().params_at(0.6, 0.3).unwrap());
        let outcome = solve(&matrix, true);
        let csv = point_csv(&matrix, outcome);
        let expected = "\
profile,u1,u2,nash
SS,0.420000,0.180000,1
SA,0.428000,0.160000,0
AS,0.360000,-0.072000,0
AA,0.008000,-0.008000,0
";
        assert_eq!(csv, expected);
    }

    #[test]
    fn mixed_line_appears_only_without_pure_equilibria() {
        // best responses cycle here: player 1 shares against a sharer
        // (p < r1) but attacks an attacker (high q makes the race
        // winnable), while player 2 does the reverse
        let sc = parse_scenario(r#"{"p":0.8,"q":0.95,"r1":0.9,"r2":0.1}"#).unwrap();
        let report = run_solve(&sc).unwrap();
        assert!(report.contains("pure: NONE\n"), "{report}");
        assert!(report.contains("mixed: share1="), "{report}");
    }

    #[test]
    fn alliance_sides_resolve_through_their_seats() {
        let sc = parse_scenario(
            r#"{"p":0.5,"q":0.5,"r1":0.5,"r2":0.5,"alliance1":"[10:11,2,2,2]","member1":0,"alliance2":"[10:11,2,2,2]","member2":1}"#,
        )
        .unwrap();
        let ctx = context_for(&sc).unwrap();
        assert_eq!(ctx.b1(), 1.5);
        assert_eq!(ctx.b2(), 0.1);
    }

    #[test]
    fn unknown_preset_is_a_clean_error() {
        let err = run_preset("fig2-center", None, OutputFormat::Csv).unwrap_err();
        assert!(matches!(err, CliError::UnknownPreset { .. }));
        assert!(err.to_string().contains("fig2-center"));
    }

    #[test]
    fn preset_listing_has_one_line_per_preset() {
        let listing = list_presets();
        assert_eq!(listing.lines().count(), presets::PRESETS.len());
        assert!(listing.contains("fig2-left"));
    }

    #[test]
    fn power_report_backends_agree() {
        let text_auto = run_power("[51:50,49,1]", true, Backend::Auto, false, None).unwrap();
        let text_brute = run_power("[51:50,49,1]", true, Backend::Brute, false, None).unwrap();
        assert_eq!(text_auto, text_brute);
        assert!(text_auto.contains("Veto"));
    }
}
