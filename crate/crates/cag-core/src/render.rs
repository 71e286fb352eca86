//! Deterministic diagram output for phase grids.
//!
//! Two formats, both produced byte for byte from the grid alone: an
//! SVG with one rectangle per lattice cell, and a binary PPM raster
//! for pipelines that want pixels. p runs left to right, q bottom to
//! top. Cells whose label holds several equilibria are striped with
//! the member colors.

use crate::equilibrium::ProfileSet;
use crate::fmt::canon;
use crate::payoff::{Profile, Strategy};
use crate::sweep::PhaseGrid;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rgb(pub u8, pub u8, pub u8);

impl Rgb {
    pub fn hex(self) -> String {
        format!("#{:02x}{:02x}{:02x}", self.0, self.1, self.2)
    }
}

/// Cell colors keyed by equilibrium region.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Palette {
    pub share_share: Rgb,
    pub share_attack: Rgb,
    pub attack_share: Rgb,
    pub attack_attack: Rgb,
    /// Cells with no pure equilibrium.
    pub empty: Rgb,
}

impl Default for Palette {
    fn default() -> Self {
        Self {
            share_share: Rgb(31, 119, 180),
            share_attack: Rgb(44, 160, 44),
            attack_share: Rgb(214, 39, 40),
            attack_attack: Rgb(255, 127, 14),
            empty: Rgb(220, 220, 220),
        }
    }
}

impl Palette {
    pub fn profile_color(&self, profile: Profile) -> Rgb {
        match (profile.0, profile.1) {
            (Strategy::Share, Strategy::Share) => self.share_share,
            (Strategy::Share, Strategy::Attack) => self.share_attack,
            (Strategy::Attack, Strategy::Share) => self.attack_share,
            (Strategy::Attack, Strategy::Attack) => self.attack_attack,
        }
    }

    /// Colors of a region in canonical profile order; the empty region
    /// maps to the single `empty` color.
    pub fn region_colors(&self, set: ProfileSet) -> Vec<Rgb> {
        if set.is_empty() {
            vec![self.empty]
        } else {
            set.iter().map(|p| self.profile_color(p)).collect()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RenderError {
    #[error("cannot render an empty grid")]
    EmptyGrid,
    #[error("cell_pixels must be at least 1")]
    InvalidCellPixels,
}

const PLOT: f64 = 500.0;
const MARGIN_LEFT: f64 = 50.0;
const MARGIN_TOP: f64 = 28.0;
const MARGIN_BOTTOM: f64 = 44.0;
const LEGEND_GAP: f64 = 16.0;
const LEGEND_WIDTH: f64 = 170.0;
const MARGIN_RIGHT: f64 = 10.0;

fn f4(x: f64) -> String {
    format!("{:.4}", canon(x))
}

fn pattern_id(label: &str) -> String {
    format!("stripe-{}", label.replace('+', "-"))
}

/// One filled rectangle per cell plus axes, caption and legend.
/// Identical grids and palettes yield identical bytes.
pub fn render_svg(grid: &PhaseGrid, palette: &Palette) -> Result<String, RenderError> {
    if grid.width() == 0 || grid.height() == 0 {
        return Err(RenderError::EmptyGrid);
    }
    let width = MARGIN_LEFT + PLOT + LEGEND_GAP + LEGEND_WIDTH + MARGIN_RIGHT;
    let height = MARGIN_TOP + PLOT + MARGIN_BOTTOM;
    let cw = PLOT / grid.width() as f64;
    let ch = PLOT / grid.height() as f64;

    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n",
        w = f4(width),
        h = f4(height)
    );
    svg.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>\n",
        f4(width),
        f4(height)
    ));

    // diagonal stripe patterns for regions holding several equilibria
    let labels = grid.present_labels();
    let striped: Vec<&String> = labels.iter().filter(|l| l.contains('+')).collect();
    if !striped.is_empty() {
        svg.push_str("<defs>\n");
        for label in &striped {
            let set = set_for_label(grid, label);
            let colors = palette.region_colors(set);
            let band = 8.0 / colors.len() as f64;
            svg.push_str(&format!(
                "<pattern id=\"{}\" width=\"8\" height=\"8\" patternUnits=\"userSpaceOnUse\" patternTransform=\"rotate(45)\">\n",
                pattern_id(label)
            ));
            for (i, color) in colors.iter().enumerate() {
                svg.push_str(&format!(
                    "<rect x=\"{}\" y=\"0\" width=\"{}\" height=\"8\" fill=\"{}\"/>\n",
                    f4(i as f64 * band),
                    f4(band),
                    color.hex()
                ));
            }
            svg.push_str("</pattern>\n");
        }
        svg.push_str("</defs>\n");
    }

    let fill_for = |set: ProfileSet| -> String {
        let label = set.label();
        if label.contains('+') {
            format!("url(#{})", pattern_id(&label))
        } else {
            palette.region_colors(set)[0].hex()
        }
    };

    // caption with the swept context, p left to right, q bottom to top
    let ctx = grid.context();
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"18\" font-family=\"sans-serif\" font-size=\"12\">r1={} r2={} b1={} b2={} e1={} e2={}</text>\n",
        f4(MARGIN_LEFT),
        f4(ctx.r1()),
        f4(ctx.r2()),
        f4(ctx.b1()),
        f4(ctx.b2()),
        f4(ctx.e1()),
        f4(ctx.e2())
    ));

    svg.push_str("<g shape-rendering=\"crispEdges\">\n");
    for qi in 0..grid.height() {
        for pi in 0..grid.width() {
            let x = MARGIN_LEFT + pi as f64 * cw;
            let y = MARGIN_TOP + (grid.height() - 1 - qi) as f64 * ch;
            svg.push_str(&format!(
                "<rect class=\"cell\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>\n",
                f4(x),
                f4(y),
                f4(cw),
                f4(ch),
                fill_for(grid.cell(pi, qi).pure)
            ));
        }
    }
    svg.push_str("</g>\n");

    svg.push_str(&format!(
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>\n",
        f4(MARGIN_LEFT),
        f4(MARGIN_TOP),
        f4(PLOT),
        f4(PLOT)
    ));

    // ticks at 0, 1/2 and 1 on both axes
    for (t, text) in [(0.0, "0"), (0.5, "0.5"), (1.0, "1")] {
        let x = MARGIN_LEFT + t * PLOT;
        let y_base = MARGIN_TOP + PLOT;
        svg.push_str(&format!(
            "<line x1=\"{x}\" y1=\"{y1}\" x2=\"{x}\" y2=\"{y2}\" stroke=\"#000000\" stroke-width=\"1\"/>\n",
            x = f4(x),
            y1 = f4(y_base),
            y2 = f4(y_base + 5.0)
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
            f4(x),
            f4(y_base + 19.0),
            text
        ));
        let y = MARGIN_TOP + (1.0 - t) * PLOT;
        svg.push_str(&format!(
            "<line x1=\"{x1}\" y1=\"{y}\" x2=\"{x2}\" y2=\"{y}\" stroke=\"#000000\" stroke-width=\"1\"/>\n",
            x1 = f4(MARGIN_LEFT - 5.0),
            x2 = f4(MARGIN_LEFT),
            y = f4(y)
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">{}</text>\n",
            f4(MARGIN_LEFT - 9.0),
            f4(y + 4.0),
            text
        ));
    }

    // axis names
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">p</text>\n",
        f4(MARGIN_LEFT + PLOT / 2.0),
        f4(height - 8.0)
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">q</text>\n",
        f4(14.0),
        f4(MARGIN_TOP + PLOT / 2.0 + 5.0)
    ));

    // legend, one row per region present
    let legend_x = MARGIN_LEFT + PLOT + LEGEND_GAP;
    for (row, label) in labels.iter().enumerate() {
        let y = MARGIN_TOP + row as f64 * 22.0;
        let set = set_for_label(grid, label);
        svg.push_str(&format!(
            "<rect x=\"{}\" y=\"{}\" width=\"14\" height=\"14\" fill=\"{}\" stroke=\"#000000\" stroke-width=\"0.5\"/>\n",
            f4(legend_x),
            f4(y),
            fill_for(set)
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
            f4(legend_x + 20.0),
            f4(y + 11.0),
            label
        ));
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}

fn set_for_label(grid: &PhaseGrid, label: &str) -> ProfileSet {
    for qi in 0..grid.height() {
        for pi in 0..grid.width() {
            let set = grid.cell(pi, qi).pure;
            if set.label() == label {
                return set;
            }
        }
    }
    ProfileSet::EMPTY
}

/// Binary PPM (P6) raster, `cell_pixels` square pixels per cell.
/// Image row 0 is the q = 1 edge. Striped regions alternate member
/// colors along diagonals.
pub fn render_ppm(
    grid: &PhaseGrid,
    palette: &Palette,
    cell_pixels: usize,
) -> Result<Vec<u8>, RenderError> {
    if grid.width() == 0 || grid.height() == 0 {
        return Err(RenderError::EmptyGrid);
    }
    if cell_pixels == 0 {
        return Err(RenderError::InvalidCellPixels);
    }
    let w = grid.width() * cell_pixels;
    let h = grid.height() * cell_pixels;
    let stripe = (cell_pixels / 2).max(1);
    let mut out = format!("P6\n{w} {h}\n255\n").into_bytes();
    out.reserve(w * h * 3);
    for py in 0..h {
        let qi = grid.height() - 1 - py / cell_pixels;
        for px in 0..w {
            let pi = px / cell_pixels;
            let colors = palette.region_colors(grid.cell(pi, qi).pure);
            let color = if colors.len() == 1 {
                colors[0]
            } else {
                colors[((px + py) / stripe) % colors.len()]
            };
            out.extend_from_slice(&[color.0, color.1, color.2]);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibrium::{EquilibriumOutcome, ProfileSet};
    use crate::payoff::PROFILE_ORDER;
    use crate::sweep::{sweep, SweepContext};

    fn outcome(tags: &[&str]) -> EquilibriumOutcome {
        let pure: ProfileSet = PROFILE_ORDER
            .into_iter()
            .filter(|p| tags.contains(&p.tag()))
            .collect();
        EquilibriumOutcome { pure, mixed: None }
    }

    fn tiny_grid(width: usize, height: usize, cells: Vec<EquilibriumOutcome>) -> PhaseGrid {
        let ctx = SweepContext::new(0.5, 0.5, 1.0, 1.0, 1.0, 1.0).unwrap();
        PhaseGrid::from_cells(ctx, width, height, cells).unwrap()
    }

    #[test]
    fn single_share_cell_renders_blue() {
        let grid = tiny_grid(1, 1, vec![outcome(&["SS"])]);
        let ppm = render_ppm(&grid, &Palette::default(), 1).unwrap();
        assert_eq!(
            ppm,
            [b"P6\n1 1\n255\n".to_vec(), vec![31, 119, 180]].concat()
        );
        let svg = render_svg(&grid, &Palette::default()).unwrap();
        assert!(svg.contains("#1f77b4"));
        assert_eq!(svg.matches("class=\"cell\"").count(), 1);
    }

    #[test]
    fn orientation_puts_first_cell_left_bottom() {
        // cells indexed (pi, qi): pi=0 gets SS, pi=1 gets AA
        let grid = tiny_grid(2, 1, vec![outcome(&["SS"]), outcome(&["AA"])]);
        let ppm = render_ppm(&grid, &Palette::default(), 2).unwrap();
        let header = b"P6\n4 2\n255\n";
        assert_eq!(&ppm[..header.len()], header);
        let body = &ppm[header.len()..];
        // two rows of [blue blue orange orange]
        let blue = [31, 119, 180];
        let orange = [255, 127, 14];
        let row: Vec<u8> = [blue, blue, orange, orange].concat();
        assert_eq!(&body[..12], &row[..]);
        assert_eq!(&body[12..], &row[..]);
    }

    #[test]
    fn q_grows_upward() {
        // qi=0 SS, qi=1 AA: image top row must be AA
        let grid = tiny_grid(1, 2, vec![outcome(&["SS"]), outcome(&["AA"])]);
        let ppm = render_ppm(&grid, &Palette::default(), 1).unwrap();
        let body = &ppm[b"P6\n1 2\n255\n".len()..];
        assert_eq!(body, &[255, 127, 14, 31, 119, 180]);
    }

    #[test]
    fn multi_region_cells_stripe_both_colors() {
        let grid = tiny_grid(1, 1, vec![outcome(&["SS", "AA"])]);
        let ppm = render_ppm(&grid, &Palette::default(), 4).unwrap();
        let body = &ppm[b"P6\n4 4\n255\n".len()..];
        let pixel = |px: usize, py: usize| &body[(py * 4 + px) * 3..][..3];
        // stripe width 2 along diagonals: (0,0) blue, (2,0) orange
        assert_eq!(pixel(0, 0), &[31, 119, 180]);
        assert_eq!(pixel(2, 0), &[255, 127, 14]);
        assert_eq!(pixel(3, 1), &[31, 119, 180]);

        let svg = render_svg(&grid, &Palette::default()).unwrap();
        assert!(svg.contains("<pattern id=\"stripe-SS-AA\""));
        assert!(svg.contains("fill=\"url(#stripe-SS-AA)\""));
    }

    #[test]
    fn none_cells_fall_back_to_gray() {
        let grid = tiny_grid(1, 1, vec![outcome(&[])]);
        let ppm = render_ppm(&grid, &Palette::default(), 1).unwrap();
        assert!(ppm.ends_with(&[220, 220, 220]));
        let svg = render_svg(&grid, &Palette::default()).unwrap();
        assert!(svg.contains(">NONE</text>"));
    }

    #[test]
    fn svg_cell_count_and_determinism() {
        let ctx = SweepContext::new(0.25, 0.75, 1.0, 1.0, 1.0, 1.0)
            .unwrap()
            .with_resolution(17)
            .unwrap();
        let grid = sweep(&ctx);
        let a = render_svg(&grid, &Palette::default()).unwrap();
        let b = render_svg(&grid, &Palette::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.matches("class=\"cell\"").count(), 17 * 17);
        assert!(a.contains(">p</text>"));
        assert!(a.contains(">q</text>"));
        let ppm_a = render_ppm(&grid, &Palette::default(), 3).unwrap();
        let ppm_b = render_ppm(&grid, &Palette::default(), 3).unwrap();
        assert_eq!(ppm_a, ppm_b);
        assert!(ppm_a.starts_with(b"P6\n51 51\n255\n"));
    }

    #[test]
    fn zero_cell_pixels_is_rejected() {
        let grid = tiny_grid(1, 1, vec![outcome(&["SS"])]);
        assert_eq!(
            render_ppm(&grid, &Palette::default(), 0),
            Err(RenderError::InvalidCellPixels)
        );
    }

    #[test]
    fn custom_palette_is_honored() {
        let palette = Palette {
            share_share: Rgb(1, 2, 3),
            ..Palette::default()
        };
        let grid = tiny_grid(1, 1, vec![outcome(&["SS"])]);
        let ppm = render_ppm(&grid, &palette, 1).unwrap();
        assert!(ppm.ends_with(&[1, 2, 3]));
        let svg = render_svg(&grid, &palette).unwrap();
        assert!(svg.contains("#010203"));
    }
}
