//! Deterministic SVG line charts.

use std::fmt::Write as _;

use crate::table::{SweepResult, TableError};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 450.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const TICKS: usize = 5;
const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"];

#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    pub title: String,
    pub x: String,
    pub y: Vec<String>,
    pub x_label: String,
    pub y_label: String,
    /// Shaded horizontal band `(y_low, y_high)` in data units.
    pub band: Option<(f64, f64)>,
    pub band_label: String,
}

impl PlotSpec {
    pub fn new(title: &str, x: &str, y: &[&str]) -> Self {
        Self {
            title: title.to_owned(),
            x: x.to_owned(),
            y: y.iter().map(|s| (*s).to_owned()).collect(),
            x_label: x.to_owned(),
            y_label: String::new(),
            band: None,
            band_label: String::new(),
        }
    }

    pub fn with_labels(mut self, x_label: &str, y_label: &str) -> Self {
        self.x_label = x_label.to_owned();
        self.y_label = y_label.to_owned();
        self
    }

    pub fn with_band(mut self, low: f64, high: f64, label: &str) -> Self {
        self.band = Some((low.min(high), low.max(high)));
        self.band_label = label.to_owned();
        self
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SvgError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("nothing to plot: the table has no rows")]
    EmptyRows,
    #[error("no y columns selected")]
    NoSeries,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn tick_label(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 {
        "0".to_owned()
    } else if !(1e-3..1e5).contains(&a) {
        format!("{v:.2e}")
    } else {
        let s = format!("{v:.3}");
        s.trim_end_matches('0').trim_end_matches('.').to_owned()
    }
}

fn span(lo: f64, hi: f64) -> (f64, f64) {
    if hi > lo {
        let pad = 0.04 * (hi - lo);
        (lo - pad, hi + pad)
    } else {
        let d = if lo == 0.0 { 1.0 } else { 0.1 * lo.abs() };
        (lo - d, hi + d)
    }
}

/// Renders `result` as a line chart. Non-finite points break the line.
pub fn emit_svg(result: &SweepResult, spec: &PlotSpec) -> Result<String, SvgError> {
    if spec.y.is_empty() {
        return Err(SvgError::NoSeries);
    }
    let xs = result.column(&spec.x)?;
    let series: Vec<(String, Vec<f64>)> = spec.y.iter().map(|name| result.column(name).map(|c| (name.clone(), c))).collect::<Result<_, _>>()?;
    if result.rows.is_empty() {
        return Err(SvgError::EmptyRows);
    }

    let finite = |v: &[f64]| v.iter().copied().filter(|x| x.is_finite()).collect::<Vec<_>>();
    let fx = finite(&xs);
    let mut fy: Vec<f64> = series.iter().flat_map(|(_, c)| finite(c)).collect();
    if let Some((lo, hi)) = spec.band {
        fy.extend([lo, hi]);
    }
    let min_max = |v: &[f64]| v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(*x), b.max(*x)));
    let (x0, x1) = if fx.is_empty() { (0.0, 1.0) } else { span(min_max(&fx).0, min_max(&fx).1) };
    let (y0, y1) = if fy.is_empty() { (0.0, 1.0) } else { span(min_max(&fy).0, min_max(&fy).1) };

    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let px = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
    let py = |y: f64| TOP + ph - (y - y0) / (y1 - y0) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="15">{}</text>"#, LEFT + pw / 2.0, escape(&spec.title));

    if let Some((lo, hi)) = spec.band {
        let (top, bottom) = (py(hi), py(lo));
        let _ = writeln!(
            s,
            r##"<rect class="band" x="{LEFT:.2}" y="{top:.2}" width="{pw:.2}" height="{:.2}" fill="#ffd54f" fill-opacity="0.35"/>"##,
            bottom - top
        );
        if !spec.band_label.is_empty() {
            let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" font-size="11">{}</text>"#, LEFT + 6.0, top + 14.0, escape(&spec.band_label));
        }
    }

    let _ = writeln!(s, r#"<g stroke="black" stroke-width="1" fill="none">"#);
    let _ = writeln!(s, r#"<rect x="{LEFT:.2}" y="{TOP:.2}" width="{pw:.2}" height="{ph:.2}"/>"#);
    for i in 0..=TICKS {
        let t = i as f64 / TICKS as f64;
        let (gx, gy) = (LEFT + t * pw, TOP + ph - t * ph);
        let _ = writeln!(s, r#"<line x1="{gx:.2}" y1="{:.2}" x2="{gx:.2}" y2="{:.2}"/>"#, TOP + ph, TOP + ph + 5.0);
        let _ = writeln!(s, r#"<line x1="{:.2}" y1="{gy:.2}" x2="{LEFT:.2}" y2="{gy:.2}"/>"#, LEFT - 5.0);
    }
    let _ = writeln!(s, "</g>");
    for i in 0..=TICKS {
        let t = i as f64 / TICKS as f64;
        let (gx, gy) = (LEFT + t * pw, TOP + ph - t * ph);
        let _ = writeln!(s, r#"<text x="{gx:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, TOP + ph + 20.0, tick_label(x0 + t * (x1 - x0)));
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#, LEFT - 8.0, gy + 4.0, tick_label(y0 + t * (y1 - y0)));
    }
    let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, LEFT + pw / 2.0, HEIGHT - 15.0, escape(&spec.x_label));
    let _ = writeln!(
        s,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">{}</text>"#,
        TOP + ph / 2.0,
        TOP + ph / 2.0,
        escape(&spec.y_label)
    );

    for (k, (name, ys)) in series.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let mut segments: Vec<Vec<(f64, f64)>> = vec![Vec::new()];
        for (x, y) in xs.iter().zip(ys) {
            if x.is_finite() && y.is_finite() {
                segments.last_mut().expect("non-empty").push((px(*x), py(*y)));
            } else if !segments.last().expect("non-empty").is_empty() {
                segments.push(Vec::new());
            }
        }
        for seg in segments.iter().filter(|seg| !seg.is_empty()) {
            let pts: Vec<String> = seg.iter().map(|(a, b)| format!("{a:.2},{b:.2}")).collect();
            let _ = writeln!(s, r#"<polyline fill="none" stroke="{color}" stroke-width="1.8" points="{}"/>"#, pts.join(" "));
            if seg.len() == 1 {
                let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="{color}"/>"#, seg[0].0, seg[0].1);
            }
        }
        let ly = TOP + 12.0 + 18.0 * k as f64;
        let lx = WIDTH - RIGHT + 12.0;
        let _ = writeln!(s, r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/>"#, lx + 20.0);
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}">{}</text>"#, lx + 26.0, ly + 4.0, escape(name));
    }
    s.push_str("</svg>\n");
    Ok(s)
}
