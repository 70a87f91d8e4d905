//! Minimal SVG line plots of `mean ± stderr` against the row parameter.

use std::fmt::Write;

use pilot_overlap_core::experiments::{ExperimentResult, ExperimentRow};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 56.0;
const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

/// Label, points, dashed.
type Curve = (String, Vec<(f64, f64)>, bool);

struct Axis {
    log: bool,
    lo: f64,
    hi: f64,
}

impl Axis {
    fn fit(values: impl Iterator<Item = f64> + Clone, log: bool) -> Self {
        let log = log && values.clone().all(|v| v > 0.0);
        let t = |v: f64| if log { v.log10() } else { v };
        let (mut lo, mut hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(t(v)), b.max(t(v))));
        if !lo.is_finite() {
            (lo, hi) = (0.0, 1.0);
        }
        if hi - lo < 1e-12 {
            lo -= 0.5;
            hi += 0.5;
        }
        let pad = 0.05 * (hi - lo);
        Self { log, lo: lo - pad, hi: hi + pad }
    }

    fn unit(&self, v: f64) -> f64 {
        let v = if self.log { v.max(1e-300).log10() } else { v };
        (v - self.lo) / (self.hi - self.lo)
    }

    fn label(&self, u: f64) -> f64 {
        let v = self.lo + u * (self.hi - self.lo);
        if self.log {
            10f64.powf(v)
        } else {
            v
        }
    }
}

fn points(rows: &[ExperimentRow], value: impl Fn(&ExperimentRow) -> Option<f64>) -> Vec<(f64, f64)> {
    rows.iter().filter_map(|r| value(r).map(|v| (r.parameter as f64, v))).collect()
}

/// Renders the main rows, their analytic references and bounds, and every
/// companion series. `log_y` requests a logarithmic y axis (used for decay
/// curves) and falls back to linear when a value is not positive.
pub fn render(result: &ExperimentResult, log_y: bool) -> String {
    let mean = |r: &ExperimentRow| r.estimate.map(|e| e.mean);
    let mut curves: Vec<Curve> = vec![
        (result.name.clone(), points(&result.rows, mean), false),
        ("analytic_ref".into(), points(&result.rows, |r| r.analytic_ref), true),
        ("bound".into(), points(&result.rows, |r| r.bound), true),
    ];
    for s in &result.companions {
        curves.push((s.name.clone(), points(&s.rows, mean), false));
    }
    curves.retain(|c| !c.1.is_empty());

    let all = curves.iter().flat_map(|c| c.1.iter().copied());
    let xs = all.clone().map(|p| p.0);
    let (xmin, xmax) = xs.clone().fold((f64::INFINITY, 0.0f64), |(a, b), x| (a.min(x), b.max(x)));
    let x_axis = Axis::fit(xs, xmin >= 1.0 && xmax / xmin >= 8.0);
    let y_axis = Axis::fit(all.map(|p| p.1), log_y);
    let px = |x: f64| MARGIN + x_axis.unit(x) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - y_axis.unit(y) * (HEIGHT - 2.0 * MARGIN);

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="11">"#);
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let (left, right, top, bottom) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(svg, r#"<path d="M{left} {top} V{bottom} H{right}" stroke="black" fill="none"/>"#);
    for k in 0..=4 {
        let u = k as f64 / 4.0;
        let y = bottom - u * (bottom - top);
        let x = left + u * (right - left);
        let _ = writeln!(svg, r#"<text x="{}" y="{}" text-anchor="end">{:.3e}</text>"#, left - 4.0, y + 4.0, y_axis.label(u));
        let _ = writeln!(svg, r#"<text x="{x}" y="{}" text-anchor="middle">{:.3}</text>"#, bottom + 16.0, x_axis.label(u));
    }
    let _ = writeln!(svg, r#"<text x="{}" y="20" text-anchor="middle" font-size="14">{}</text>"#, WIDTH / 2.0, result.name);

    for (i, (name, pts, dashed)) in curves.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let d: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
        let dash = if *dashed { r#" stroke-dasharray="5,4""# } else { "" };
        let _ = writeln!(svg, r#"<polyline points="{}" stroke="{color}" fill="none"{dash}/>"#, d.join(" "));
        for &(x, y) in pts {
            let _ = writeln!(svg, r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="{color}"/>"#, px(x), py(y));
        }
        let _ = writeln!(svg, r#"<text x="{}" y="{}" fill="{color}">{name}</text>"#, right - 110.0, top + 14.0 * (i as f64 + 1.0));
    }
    for r in &result.rows {
        if let Some(e) = r.estimate {
            let (x, lo, hi) = (px(r.parameter as f64), py(e.mean - e.std_error), py(e.mean + e.std_error));
            let _ = writeln!(svg, r#"<line x1="{x:.2}" y1="{lo:.2}" x2="{x:.2}" y2="{hi:.2}" stroke="{}"/>"#, COLORS[0]);
        }
    }
    svg.push_str("</svg>\n");
    svg
}
