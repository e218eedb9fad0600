//! Standalone SVG heatmaps: one rectangle per grid cell, a linear color
//! scale, axis labels, and a color-bar legend. Output bytes are
//! deterministic for a given grid.

use std::fmt::Write as _;

use crate::grid_io::HeatmapData;

const CELL_AREA_W: f64 = 480.0;
const CELL_AREA_H: f64 = 480.0;
const MARGIN_LEFT: f64 = 86.0;
const MARGIN_TOP: f64 = 48.0;
const MARGIN_BOTTOM: f64 = 64.0;
const BAR_GAP: f64 = 28.0;
const BAR_W: f64 = 22.0;
const BAR_SEGMENTS: usize = 64;
const MARGIN_RIGHT: f64 = 150.0;

/// Five-stop sequential color scale (dark violet to yellow).
const STOPS: [(f64, [u8; 3]); 5] = [
    (0.00, [68, 1, 84]),
    (0.25, [59, 82, 139]),
    (0.50, [33, 145, 140]),
    (0.75, [94, 201, 98]),
    (1.00, [253, 231, 37]),
];

fn color(t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    let mut rgb = STOPS[STOPS.len() - 1].1;
    for pair in STOPS.windows(2) {
        let (t0, c0) = pair[0];
        let (t1, c1) = pair[1];
        if t <= t1 {
            let f = if t1 > t0 { (t - t0) / (t1 - t0) } else { 0.0 };
            rgb = [
                (c0[0] as f64 + f * (c1[0] as f64 - c0[0] as f64)).round() as u8,
                (c0[1] as f64 + f * (c1[1] as f64 - c0[1] as f64)).round() as u8,
                (c0[2] as f64 + f * (c1[2] as f64 - c0[2] as f64)).round() as u8,
            ];
            break;
        }
    }
    format!("#{:02x}{:02x}{:02x}", rgb[0], rgb[1], rgb[2])
}

fn esc(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Render the grid as a complete SVG 1.1 document.
pub fn render_heatmap(data: &HeatmapData) -> String {
    let nx = data.x_values.len();
    let ny = data.y_values.len();
    let min = data.values.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = data.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let span = max - min;
    let scale = |v: f64| if span > 0.0 { (v - min) / span } else { 0.5 };

    let width = MARGIN_LEFT + CELL_AREA_W + BAR_GAP + BAR_W + MARGIN_RIGHT;
    let height = MARGIN_TOP + CELL_AREA_H + MARGIN_BOTTOM;
    let cell_w = CELL_AREA_W / nx as f64;
    let cell_h = CELL_AREA_H / ny as f64;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(svg, r#"<rect width="{width:.0}" height="{height:.0}" fill="white"/>"#);

    if let Some(title) = &data.title {
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="26" font-family="sans-serif" font-size="16" text-anchor="middle">{}</text>"#,
            MARGIN_LEFT + CELL_AREA_W / 2.0,
            esc(title)
        );
    }

    // cells; row iy = 0 is drawn at the bottom so y grows upward
    for iy in 0..ny {
        let top = MARGIN_TOP + (ny - 1 - iy) as f64 * cell_h;
        for ix in 0..nx {
            let v = data.values[iy * nx + ix];
            let _ = writeln!(
                svg,
                r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{}"/>"#,
                MARGIN_LEFT + ix as f64 * cell_w,
                top,
                cell_w + 0.5,
                cell_h + 0.5,
                color(scale(v))
            );
        }
    }

    // frame and axis labels
    let _ = writeln!(
        svg,
        r#"<rect x="{MARGIN_LEFT:.1}" y="{MARGIN_TOP:.1}" width="{CELL_AREA_W:.1}" height="{CELL_AREA_H:.1}" fill="none" stroke="black" stroke-width="1"/>"#
    );
    let x_lo = data.x_values.first().copied().unwrap_or(0.0);
    let x_hi = data.x_values.last().copied().unwrap_or(0.0);
    let y_lo = data.y_values.first().copied().unwrap_or(0.0);
    let y_hi = data.y_values.last().copied().unwrap_or(0.0);
    let bottom = MARGIN_TOP + CELL_AREA_H;
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
        MARGIN_LEFT + CELL_AREA_W / 2.0,
        bottom + 40.0,
        esc(&data.x_name)
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="12" text-anchor="middle">{x_lo:.4}</text>"#,
        MARGIN_LEFT,
        bottom + 18.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="12" text-anchor="middle">{x_hi:.4}</text>"#,
        MARGIN_LEFT + CELL_AREA_W,
        bottom + 18.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="24" y="{:.1}" font-family="sans-serif" font-size="14" text-anchor="middle" transform="rotate(-90 24 {:.1})">{}</text>"#,
        MARGIN_TOP + CELL_AREA_H / 2.0,
        MARGIN_TOP + CELL_AREA_H / 2.0,
        esc(&data.y_name)
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="12" text-anchor="end">{y_lo:.4}</text>"#,
        MARGIN_LEFT - 6.0,
        bottom
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="12" text-anchor="end">{y_hi:.4}</text>"#,
        MARGIN_LEFT - 6.0,
        MARGIN_TOP + 12.0
    );

    // color bar: bottom = min, top = max
    let bar_x = MARGIN_LEFT + CELL_AREA_W + BAR_GAP;
    let seg_h = CELL_AREA_H / BAR_SEGMENTS as f64;
    for seg in 0..BAR_SEGMENTS {
        let t = (seg as f64 + 0.5) / BAR_SEGMENTS as f64;
        let y = MARGIN_TOP + CELL_AREA_H - (seg + 1) as f64 * seg_h;
        let _ = writeln!(
            svg,
            r#"<rect x="{bar_x:.1}" y="{y:.2}" width="{BAR_W:.1}" height="{:.2}" fill="{}"/>"#,
            seg_h + 0.5,
            color(t)
        );
    }
    let _ = writeln!(
        svg,
        r#"<rect x="{bar_x:.1}" y="{MARGIN_TOP:.1}" width="{BAR_W:.1}" height="{CELL_AREA_H:.1}" fill="none" stroke="black" stroke-width="1"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="12">{max:.6e}</text>"#,
        bar_x + BAR_W + 6.0,
        MARGIN_TOP + 12.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="12">{min:.6e}</text>"#,
        bar_x + BAR_W + 6.0,
        MARGIN_TOP + CELL_AREA_H
    );

    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    fn demo(values: Vec<f64>, nx: usize, ny: usize) -> HeatmapData {
        HeatmapData {
            x_name: "x".into(),
            y_name: "y".into(),
            x_values: (0..nx).map(|i| i as f64).collect(),
            y_values: (0..ny).map(|i| i as f64).collect(),
            values,
            title: None,
        }
    }

    #[test]
    fn renders_one_rect_per_cell_plus_chrome() {
        let svg = render_heatmap(&demo(vec![0.0, 1.0, 2.0, 3.0, 4.0, 5.0], 3, 2));
        assert_eq!(svg.matches("<rect").count(), 6 + 2 + BAR_SEGMENTS + 1);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn uniform_grid_renders_one_color_and_equal_legend_bounds() {
        let svg = render_heatmap(&demo(vec![0.7; 4], 2, 2));
        let mid = color(0.5);
        assert!(svg.matches(&format!("fill=\"{mid}\"")).count() >= 4);
        assert_eq!(svg.matches("7.000000e-1").count(), 2);
    }

    #[test]
    fn output_is_deterministic() {
        let data = demo(vec![0.1, 0.4, 0.9, 0.2], 2, 2);
        assert_eq!(render_heatmap(&data), render_heatmap(&data));
    }

    #[test]
    fn color_scale_endpoints() {
        assert_eq!(color(0.0), "#440154");
        assert_eq!(color(1.0), "#fde725");
    }
}
