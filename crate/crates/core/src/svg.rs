//! Two-panel SVG plots: curves with endpoint curvature circles, and curvature against arc length.

use std::fmt::Write;

use crate::io::SolutionRecord;
use crate::problem::G2Point;

const PANEL: f64 = 420.0;
const MARGIN: f64 = 30.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// Formats a coordinate with fixed precision and no negative zero.
fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0.000".into()
    } else {
        s
    }
}

#[derive(Clone, Copy, Debug)]
struct Bounds {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Bounds {
    fn empty() -> Self {
        Bounds { x0: f64::INFINITY, x1: f64::NEG_INFINITY, y0: f64::INFINITY, y1: f64::NEG_INFINITY }
    }

    fn add(&mut self, x: f64, y: f64) {
        if x.is_finite() && y.is_finite() {
            self.x0 = self.x0.min(x);
            self.x1 = self.x1.max(x);
            self.y0 = self.y0.min(y);
            self.y1 = self.y1.max(y);
        }
    }

    fn padded(self, frac: f64) -> Self {
        let (mut b, w, h) = (self, self.x1 - self.x0, self.y1 - self.y0);
        if !(w.is_finite() && h.is_finite()) {
            return Bounds { x0: -1.0, x1: 1.0, y0: -1.0, y1: 1.0 };
        }
        let pw = if w > 0.0 { w * frac } else { 1.0 };
        let ph = if h > 0.0 { h * frac } else { 1.0 };
        b.x0 -= pw;
        b.x1 += pw;
        b.y0 -= ph;
        b.y1 += ph;
        b
    }

    /// Expands the shorter side so both axes share one scale.
    fn squared(self) -> Self {
        let (w, h) = (self.x1 - self.x0, self.y1 - self.y0);
        let (cx, cy) = ((self.x0 + self.x1) / 2.0, (self.y0 + self.y1) / 2.0);
        let half = w.max(h) / 2.0;
        Bounds { x0: cx - half, x1: cx + half, y0: cy - half, y1: cy + half }
    }
}

struct Frame {
    bounds: Bounds,
    left: f64,
    top: f64,
}

impl Frame {
    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        let b = &self.bounds;
        let inner = PANEL - 2.0 * MARGIN;
        let px = self.left + MARGIN + (x - b.x0) / (b.x1 - b.x0) * inner;
        let py = self.top + PANEL - MARGIN - (y - b.y0) / (b.y1 - b.y0) * inner;
        (px, py)
    }

    fn scale_x(&self) -> f64 {
        (PANEL - 2.0 * MARGIN) / (self.bounds.x1 - self.bounds.x0)
    }
}

fn polyline(out: &mut String, frame: &Frame, pts: impl Iterator<Item = (f64, f64)>, color: &str) {
    let coords: Vec<String> = pts
        .filter(|(x, y)| x.is_finite() && y.is_finite())
        .map(|(x, y)| {
            let (px, py) = frame.map(x, y);
            format!("{},{}", num(px), num(py))
        })
        .collect();
    let _ = writeln!(
        out,
        r#"<polyline fill="none" stroke="{color}" stroke-width="1.2" points="{}"/>"#,
        coords.join(" ")
    );
}

fn panel_box(out: &mut String, left: f64, id: &str, title: &str) {
    let _ = writeln!(
        out,
        r#"<clipPath id="{id}"><rect x="{}" y="0.000" width="{}" height="{}"/></clipPath>"#,
        num(left),
        num(PANEL),
        num(PANEL)
    );
    let _ = writeln!(
        out,
        r##"<rect x="{}" y="0.000" width="{}" height="{}" fill="none" stroke="#888888"/>"##,
        num(left),
        num(PANEL),
        num(PANEL)
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="18.000" font-family="sans-serif" font-size="12">{title}</text>"#,
        num(left + 8.0)
    );
}

fn curvature_circle(out: &mut String, frame: &Frame, p: &G2Point) {
    if p.k.abs() < 1e-12 {
        return;
    }
    let r = 1.0 / p.k;
    let (cx, cy) = (p.x - r * p.tau.sin(), p.y + r * p.tau.cos());
    let (px, py) = frame.map(cx, cy);
    let pr = r.abs() * frame.scale_x();
    if !(pr.is_finite() && pr < 1e6) {
        return;
    }
    let _ = writeln!(
        out,
        r##"<circle cx="{}" cy="{}" r="{}" fill="none" stroke="#555555" stroke-dasharray="4 3" stroke-width="0.8"/>"##,
        num(px),
        num(py),
        num(pr)
    );
}

/// Renders the curve panel and the (s, k) panel for a set of records in user coordinates.
pub fn render(records: &[SolutionRecord], start: &G2Point, end: &G2Point) -> String {
    let mut shape = Bounds::empty();
    let mut plot = Bounds::empty();
    shape.add(start.x, start.y);
    shape.add(end.x, end.y);
    for r in records {
        for s in &r.samples {
            shape.add(s.x, s.y);
            plot.add(s.s, s.k);
        }
    }
    plot.add(0.0, 0.0);
    let shape_frame = Frame { bounds: shape.padded(0.08).squared(), left: 0.0, top: 0.0 };
    let plot_frame = Frame { bounds: plot.padded(0.08), left: PANEL, top: 0.0 };

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = num(2.0 * PANEL),
        h = num(PANEL)
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);

    panel_box(&mut out, 0.0, "shape", "curves");
    let _ = writeln!(out, r#"<g clip-path="url(#shape)">"#);
    curvature_circle(&mut out, &shape_frame, start);
    curvature_circle(&mut out, &shape_frame, end);
    for (i, r) in records.iter().enumerate() {
        polyline(&mut out, &shape_frame, r.samples.iter().map(|s| (s.x, s.y)), PALETTE[i % PALETTE.len()]);
    }
    for p in [start, end] {
        let (px, py) = shape_frame.map(p.x, p.y);
        let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="3.000" fill="black"/>"#, num(px), num(py));
    }
    let _ = writeln!(out, "</g>");

    panel_box(&mut out, PANEL, "plot", "curvature vs arc length");
    let _ = writeln!(out, r#"<g clip-path="url(#plot)">"#);
    let (ax0, ay) = plot_frame.map(plot_frame.bounds.x0, 0.0);
    let (ax1, _) = plot_frame.map(plot_frame.bounds.x1, 0.0);
    let _ = writeln!(
        out,
        r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#bbbbbb"/>"##,
        num(ax0),
        num(ay),
        num(ax1),
        num(ay)
    );
    for (i, r) in records.iter().enumerate() {
        polyline(&mut out, &plot_frame, r.samples.iter().map(|s| (s.s, s.k)), PALETTE[i % PALETTE.len()]);
    }
    let _ = writeln!(out, "</g>");
    let b = plot_frame.bounds;
    for (label, x, y) in [
        (format!("k={}", num(b.y1)), PANEL + 8.0, MARGIN + 4.0),
        (format!("k={}", num(b.y0)), PANEL + 8.0, PANEL - MARGIN),
        (format!("s={}", num(b.x1)), 2.0 * PANEL - 90.0, PANEL - 8.0),
    ] {
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="10">{label}</text>"#,
            num(x),
            num(y)
        );
    }
    let _ = writeln!(out, "</svg>");
    out
}
