use std::collections::BTreeMap;
use std::fmt::Write;

use super::ExperimentReport;
use crate::{Error, Result};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 64.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 56.0;
const COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
];

/// Validation accuracy against shade as an SVG document, one polyline per
/// (classifier, train size). Points sharing a shade are averaged.
pub fn emit_shade_plot(report: &ExperimentReport) -> Result<String> {
    if report.is_empty() {
        return Err(Error::Report("report has no rows".into()));
    }
    let mut series: BTreeMap<(String, usize), BTreeMap<u8, (f64, usize)>> = BTreeMap::new();
    for r in &report.rows {
        let Some(shade) = r.shade else { continue };
        let p = series
            .entry((r.classifier.clone(), r.train_size))
            .or_default()
            .entry(shade)
            .or_default();
        p.0 += r.validation_accuracy;
        p.1 += 1;
    }
    if series.is_empty() {
        return Err(Error::Report("report has no shade field".into()));
    }
    let mut shades: Vec<u8> = series.values().flat_map(|s| s.keys().copied()).collect();
    shades.sort_unstable();
    shades.dedup();

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let x = |shade: u8| LEFT + f64::from(shade) / 255.0 * plot_w;
    let y = |acc: f64| TOP + (1.0 - acc.clamp(0.0, 1.0)) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<g class="axes" stroke="black" fill="none"><line x1="{LEFT}" y1="{b}" x2="{r}" y2="{b}"/><line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{b}"/></g>"#,
        b = TOP + plot_h,
        r = LEFT + plot_w
    );
    for &s in &shades {
        let _ = writeln!(
            svg,
            r#"<g class="xtick"><line x1="{px:.2}" y1="{b}" x2="{px:.2}" y2="{t}" stroke="black"/><text x="{px:.2}" y="{ty}" text-anchor="middle">{s}</text></g>"#,
            px = x(s),
            b = TOP + plot_h,
            t = TOP + plot_h + 5.0,
            ty = TOP + plot_h + 19.0
        );
    }
    for i in 0..=4 {
        let acc = f64::from(i) * 0.25;
        let _ = writeln!(
            svg,
            r##"<g class="ytick"><line x1="{l}" y1="{py:.2}" x2="{LEFT}" y2="{py:.2}" stroke="black"/><line x1="{LEFT}" y1="{py:.2}" x2="{r}" y2="{py:.2}" stroke="#dddddd"/><text x="{tx}" y="{ty:.2}" text-anchor="end">{acc:.2}</text></g>"##,
            l = LEFT - 5.0,
            r = LEFT + plot_w,
            py = y(acc),
            tx = LEFT - 8.0,
            ty = y(acc) + 4.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{cx}" y="{by}" text-anchor="middle">Shade</text>"#,
        cx = LEFT + plot_w / 2.0,
        by = HEIGHT - 12.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="16" y="{cy}" text-anchor="middle" transform="rotate(-90 16 {cy})">Validation accuracy</text>"#,
        cy = TOP + plot_h / 2.0
    );

    for (k, ((classifier, size), points)) in series.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let coords: Vec<String> = points
            .iter()
            .map(|(&s, &(sum, count))| format!("{:.2},{:.2}", x(s), y(sum / count as f64)))
            .collect();
        let label = format!("{} ({size})", classifier.to_uppercase());
        let _ = writeln!(
            svg,
            r#"<polyline class="series" data-label="{label}" fill="none" stroke="{color}" stroke-width="2" points="{}"/>"#,
            coords.join(" ")
        );
        for c in &coords {
            let (cx, cy) = c.split_once(',').unwrap_or_default();
            let _ = writeln!(svg, r#"<circle cx="{cx}" cy="{cy}" r="3" fill="{color}"/>"#);
        }
        let ly = TOP + 10.0 + 18.0 * k as f64;
        let lx = LEFT + plot_w + 14.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{lx}" y1="{ly}" x2="{lx2}" y2="{ly}" stroke="{color}" stroke-width="2"/><text x="{tx}" y="{ty}">{label}</text>"#,
            lx2 = lx + 20.0,
            tx = lx + 26.0,
            ty = ly + 4.0
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
