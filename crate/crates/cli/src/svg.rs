//! Minimal hand-rolled SVG writer: a log-log line chart with axes, one
//! polyline per series, and a text legend. Output is deterministic.

use std::fmt::Write as _;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 160.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 50.0;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
];

/// Renders `series` (positive x/y pairs) on log10 axes.
pub fn loglog_chart(title: &str, series: &[(String, Vec<(f64, f64)>)]) -> String {
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(svg, "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>");
    let _ = writeln!(
        svg,
        "<text x=\"{}\" y=\"24\" font-family=\"monospace\" font-size=\"14\">{}</text>",
        MARGIN_LEFT,
        escape(title)
    );

    let points: Vec<(f64, f64)> = series
        .iter()
        .flat_map(|(_, pts)| pts.iter().copied())
        .filter(|&(x, y)| x > 0.0 && y > 0.0)
        .collect();

    let x0 = MARGIN_LEFT;
    let x1 = WIDTH - MARGIN_RIGHT;
    let y0 = HEIGHT - MARGIN_BOTTOM;
    let y1 = MARGIN_TOP;

    let _ = writeln!(
        svg,
        "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x1}\" y2=\"{y0}\" stroke=\"black\"/>"
    );
    let _ = writeln!(
        svg,
        "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x0}\" y2=\"{y1}\" stroke=\"black\"/>"
    );

    if !points.is_empty() {
        let (mut lx_min, mut lx_max) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut ly_min, mut ly_max) = (f64::INFINITY, f64::NEG_INFINITY);
        for &(x, y) in &points {
            lx_min = lx_min.min(x.log10());
            lx_max = lx_max.max(x.log10());
            ly_min = ly_min.min(y.log10());
            ly_max = ly_max.max(y.log10());
        }
        if lx_max - lx_min < 1e-9 {
            lx_max = lx_min + 1.0;
        }
        if ly_max - ly_min < 1e-9 {
            ly_max = ly_min + 1.0;
        }
        let map_x = |x: f64| x0 + (x.log10() - lx_min) / (lx_max - lx_min) * (x1 - x0);
        let map_y = |y: f64| y0 - (y.log10() - ly_min) / (ly_max - ly_min) * (y0 - y1);

        // Axis extent labels.
        let _ = writeln!(
            svg,
            "<text x=\"{x0}\" y=\"{}\" font-family=\"monospace\" font-size=\"11\">{:.2e}</text>",
            y0 + 16.0,
            10f64.powf(lx_min)
        );
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"end\">{:.2e}</text>",
            x1,
            y0 + 16.0,
            10f64.powf(lx_max)
        );
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{y0}\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"end\">{:.2e}</text>",
            x0 - 4.0,
            10f64.powf(ly_min)
        );
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"end\">{:.2e}</text>",
            x0 - 4.0,
            y1 + 4.0,
            10f64.powf(ly_max)
        );

        for (i, (name, pts)) in series.iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            let mut path = String::new();
            for &(x, y) in pts.iter().filter(|&&(x, y)| x > 0.0 && y > 0.0) {
                let _ = write!(path, "{:.2},{:.2} ", map_x(x), map_y(y));
            }
            let _ = writeln!(
                svg,
                "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>",
                path.trim_end()
            );
            let ly = MARGIN_TOP + 14.0 * i as f64;
            let _ = writeln!(
                svg,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{color}\" stroke-width=\"2\"/>",
                x1 + 8.0,
                ly,
                x1 + 28.0,
                ly
            );
            let _ = writeln!(
                svg,
                "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"11\">{}</text>",
                x1 + 32.0,
                ly + 4.0,
                escape(name)
            );
        }
    }

    svg.push_str("</svg>\n");
    svg
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
