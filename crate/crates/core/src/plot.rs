//! Curve plots as standalone SVG, plus the plotted data as CSV.

use std::fmt::Write as _;

use crate::compare::mean;
use crate::curve_io::format_sig;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN_LEFT: f64 = 60.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 50.0;
const PALETTE: [&str; 8] = [
    "#1f5fbf", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    /// Relative GCC values; point `i` is drawn at removal fraction `(i + 1) / len`.
    pub values: Vec<f64>,
    /// Dots instead of a line.
    pub dots: bool,
}

impl Series {
    pub fn line(label: impl Into<String>, values: Vec<f64>) -> Self {
        Series {
            label: label.into(),
            values,
            dots: false,
        }
    }

    pub fn dots(label: impl Into<String>, values: Vec<f64>) -> Self {
        Series {
            dots: true,
            ..Series::line(label, values)
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn px(p: f64) -> f64 {
    MARGIN_LEFT + p * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
}

fn py(g: f64) -> f64 {
    HEIGHT - MARGIN_BOTTOM - g.clamp(0.0, 1.0) * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
}

/// Relative GCC against removal fraction, one colour per series, with each
/// series' mean (its R_W) in the legend.
pub fn render_svg(title: &str, series: &[Series]) -> String {
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="24" text-anchor="middle" font-size="14">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    // axes and ticks
    let (x0, y0, x1, y1) = (px(0.0), py(0.0), px(1.0), py(1.0));
    let _ = writeln!(svg, r#"<path d="M{x0} {y1} L{x0} {y0} L{x1} {y0}" stroke="black" fill="none"/>"#);
    for i in 0..=5 {
        let v = i as f64 / 5.0;
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{v:.1}</text><text x="{:.1}" y="{:.1}" text-anchor="end">{v:.1}</text>"#,
            px(v),
            y0 + 18.0,
            x0 - 6.0,
            py(v) + 4.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">p</text><text x="16" y="{:.1}" text-anchor="middle" transform="rotate(-90 16 {:.1})">G(p)</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 10.0,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );

    for (k, s) in series.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let m = s.values.len() as f64;
        let points = s.values.iter().enumerate().map(|(i, &g)| (px((i + 1) as f64 / m), py(g)));
        if s.dots {
            let _ = write!(svg, r#"<g fill="{color}">"#);
            for (x, y) in points {
                let _ = write!(svg, r#"<circle cx="{x:.2}" cy="{y:.2}" r="2"/>"#);
            }
            let _ = writeln!(svg, "</g>");
        } else {
            let coords: Vec<String> = points.map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
            let _ = writeln!(
                svg,
                r#"<polyline points="{}" stroke="{color}" stroke-width="1.5" fill="none"/>"#,
                coords.join(" ")
            );
        }
        let ly = MARGIN_TOP + 8.0 + 18.0 * k as f64;
        let _ = writeln!(
            svg,
            r#"<rect x="{:.1}" y="{:.1}" width="12" height="4" fill="{color}"/><text x="{:.1}" y="{:.1}" text-anchor="end">{} (R_W = {:.4})</text>"#,
            x1 - 12.0,
            ly - 4.0,
            x1 - 18.0,
            ly,
            escape(&s.label),
            mean(&s.values)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

/// Long-format data behind a plot: `series,step,p,relative`.
pub fn series_csv(series: &[Series]) -> String {
    let mut out = String::from("series,step,p,relative\n");
    for s in series {
        let m = s.values.len() as f64;
        for (i, &v) in s.values.iter().enumerate() {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                s.label.replace(',', " "),
                i + 1,
                format_sig((i + 1) as f64 / m),
                format_sig(v)
            );
        }
    }
    out
}
