//! SVG timeline rendering of a verification report: one horizontal lane per
//! subformula, the under-approximation as solid bars, the inconclusive gap as
//! hatched bars, and the gap measure annotated on the right. Intervals
//! running past the display window are truncated with an arrow head.
//!
//! Pixel placement is the only place floating point appears; the verification
//! results being drawn are exact.

use std::fmt::Write;

use mitliq::{Endpoint, Interval, IntervalQueue, Rational, Report};
use num_traits::ToPrimitive;

const LABEL_WIDTH: f64 = 300.0;
const PLOT_WIDTH: f64 = 620.0;
const DELTA_WIDTH: f64 = 130.0;
const LANE_HEIGHT: f64 = 36.0;
const BAR_HEIGHT: f64 = 14.0;
const MARGIN: f64 = 16.0;
const AXIS_HEIGHT: f64 = 30.0;

const UNDER_COLOR: &str = "#2b6cb0";
const GAP_COLOR: &str = "#c05621";

struct Plot {
    window: f64,
}

impl Plot {
    fn x(&self, t: f64) -> f64 {
        MARGIN + LABEL_WIDTH + (t / self.window) * PLOT_WIDTH
    }
}

pub fn render_svg(report: &Report, window: &Rational) -> String {
    let plot = Plot { window: rational_to_f64(window).max(f64::MIN_POSITIVE) };
    let rows = &report.rows;
    let width = LABEL_WIDTH + PLOT_WIDTH + DELTA_WIDTH + 2.0 * MARGIN;
    let height = MARGIN + rows.len() as f64 * LANE_HEIGHT + AXIS_HEIGHT + MARGIN;

    let mut svg = String::new();
    let _ = write!(
        svg,
        r#"<svg version="1.1" width="{width:.0}" height="{height:.0}" xmlns="http://www.w3.org/2000/svg" font-family="monospace" font-size="12">"#
    );
    svg.push_str(concat!(
        r#"<defs><pattern id="gaphatch" width="6" height="6" patternUnits="userSpaceOnUse" patternTransform="rotate(45)">"#,
        r##"<rect width="6" height="6" fill="#fde8d8"/>"##,
        r##"<line x1="0" y1="0" x2="0" y2="6" stroke="#c05621" stroke-width="2"/>"##,
        r#"</pattern></defs>"#,
    ));
    let _ = write!(
        svg,
        r#"<rect x="0" y="0" width="{width:.0}" height="{height:.0}" fill="white"/>"#
    );

    for (i, row) in rows.iter().enumerate() {
        let lane_top = MARGIN + i as f64 * LANE_HEIGHT;
        let mid = lane_top + LANE_HEIGHT / 2.0;

        let _ = write!(
            svg,
            r#"<text x="{x:.1}" y="{y:.1}" dominant-baseline="middle">{label}</text>"#,
            x = MARGIN,
            y = mid,
            label = escape(&clip_label(&row.formula)),
        );

        // Faint baseline across the plot area.
        let _ = write!(
            svg,
            r##"<line x1="{x1:.1}" y1="{y:.1}" x2="{x2:.1}" y2="{y:.1}" stroke="#ddd"/>"##,
            x1 = plot.x(0.0),
            y = mid,
            x2 = plot.x(plot.window),
        );

        draw_queue(&mut svg, &plot, &row.approximation.gap(), mid, "url(#gaphatch)", GAP_COLOR);
        draw_queue(&mut svg, &plot, &row.approximation.under, mid, UNDER_COLOR, UNDER_COLOR);

        let delta_text = match &row.delta_bounded {
            Some(bounded) => format!("Δ = {} ({} in window)", row.delta, bounded),
            None => format!("Δ = {}", row.delta),
        };
        let _ = write!(
            svg,
            r#"<text x="{x:.1}" y="{y:.1}" dominant-baseline="middle">{t}</text>"#,
            x = plot.x(plot.window) + 24.0,
            y = mid,
            t = escape(&delta_text),
        );
    }

    draw_axis(&mut svg, &plot, MARGIN + rows.len() as f64 * LANE_HEIGHT + 8.0);
    svg.push_str("</svg>");
    svg
}

fn draw_queue(
    svg: &mut String,
    plot: &Plot,
    queue: &IntervalQueue,
    mid: f64,
    fill: &str,
    accent: &str,
) {
    for item in queue {
        draw_interval(svg, plot, item, mid, fill, accent);
    }
}

fn draw_interval(
    svg: &mut String,
    plot: &Plot,
    item: &Interval,
    mid: f64,
    fill: &str,
    accent: &str,
) {
    let lo = rational_to_f64(item.lo());
    if lo > plot.window {
        return;
    }
    let (hi, truncated) = match item.hi() {
        Endpoint::Finite(h) => {
            let h = rational_to_f64(h);
            (h.min(plot.window), h > plot.window)
        }
        _ => (plot.window, true),
    };
    let x = plot.x(lo);
    let w = (plot.x(hi) - x).max(2.0);
    let y = mid - BAR_HEIGHT / 2.0;
    let _ = write!(
        svg,
        r#"<rect x="{x:.1}" y="{y:.1}" width="{w:.1}" height="{h:.1}" fill="{fill}"/>"#,
        h = BAR_HEIGHT,
    );
    if truncated {
        // Arrow head marking continuation past the window.
        let base = plot.x(hi);
        let tip = base + 10.0;
        let _ = write!(
            svg,
            r#"<polygon points="{base:.1},{top:.1} {tip:.1},{mid:.1} {base:.1},{bot:.1}" fill="{accent}"/>"#,
            top = mid - BAR_HEIGHT / 2.0,
            bot = mid + BAR_HEIGHT / 2.0,
        );
    }
}

fn draw_axis(svg: &mut String, plot: &Plot, y: f64) {
    let _ = write!(
        svg,
        r#"<line x1="{x1:.1}" y1="{y:.1}" x2="{x2:.1}" y2="{y:.1}" stroke="black"/>"#,
        x1 = plot.x(0.0),
        x2 = plot.x(plot.window),
    );
    let step = tick_step(plot.window);
    let mut t = 0.0;
    while t <= plot.window + 1e-9 {
        let x = plot.x(t);
        let _ = write!(
            svg,
            r#"<line x1="{x:.1}" y1="{y:.1}" x2="{x:.1}" y2="{y2:.1}" stroke="black"/>"#,
            y2 = y + 5.0,
        );
        let _ = write!(
            svg,
            r#"<text x="{x:.1}" y="{ty:.1}" text-anchor="middle">{t}</text>"#,
            ty = y + 18.0,
        );
        t += step;
    }
}

fn tick_step(window: f64) -> f64 {
    let raw = (window / 10.0).max(1e-6);
    let magnitude = 10f64.powf(raw.log10().floor());
    for mult in [1.0, 2.0, 5.0, 10.0] {
        if magnitude * mult >= raw {
            return magnitude * mult;
        }
    }
    magnitude * 10.0
}

fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::MAX)
}

fn clip_label(label: &str) -> String {
    const MAX: usize = 40;
    if label.len() <= MAX {
        label.to_string()
    } else {
        format!("{}...", &label[..MAX - 3])
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
