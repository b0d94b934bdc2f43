//! Minimal SVG plots: polygons, line series and heatmaps.

use std::fmt::Write;

const W: f64 = 480.0;
const H: f64 = 480.0;
const PAD: f64 = 40.0;

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn fit(points: impl Iterator<Item = [f64; 2]>) -> Self {
        let mut f = Frame {
            x0: f64::INFINITY,
            x1: f64::NEG_INFINITY,
            y0: f64::INFINITY,
            y1: f64::NEG_INFINITY,
        };
        for [x, y] in points.filter(|p| p[0].is_finite() && p[1].is_finite()) {
            f.x0 = f.x0.min(x);
            f.x1 = f.x1.max(x);
            f.y0 = f.y0.min(y);
            f.y1 = f.y1.max(y);
        }
        if !f.x0.is_finite() {
            return Frame { x0: 0.0, x1: 1.0, y0: 0.0, y1: 1.0 };
        }
        let (dx, dy) = ((f.x1 - f.x0).max(1e-9), (f.y1 - f.y0).max(1e-9));
        Frame {
            x0: f.x0 - 0.05 * dx,
            x1: f.x1 + 0.05 * dx,
            y0: f.y0 - 0.05 * dy,
            y1: f.y1 + 0.05 * dy,
        }
    }

    fn map(&self, p: [f64; 2]) -> (f64, f64) {
        (
            PAD + (p[0] - self.x0) / (self.x1 - self.x0) * (W - 2.0 * PAD),
            H - PAD - (p[1] - self.y0) / (self.y1 - self.y0) * (H - 2.0 * PAD),
        )
    }
}

fn open(title: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="20" text-anchor="middle">{}</text>"#, W / 2.0, escape(title));
    s
}

fn axes(s: &mut String, f: &Frame) {
    let _ = writeln!(
        s,
        r##"<rect x="{PAD}" y="{PAD}" width="{}" height="{}" fill="none" stroke="#888"/>"##,
        W - 2.0 * PAD,
        H - 2.0 * PAD
    );
    let _ = writeln!(s, r#"<text x="{PAD}" y="{}">{:.3}</text>"#, H - PAD + 14.0, f.x0);
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="end">{:.3}</text>"#, W - PAD, H - PAD + 14.0, f.x1);
    let _ = writeln!(s, r#"<text x="4" y="{}">{:.3}</text>"#, H - PAD, f.y0);
    let _ = writeln!(s, r#"<text x="4" y="{}">{:.3}</text>"#, PAD + 10.0, f.y1);
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Closed polygons, e.g. boundaries of planar bodies.
pub fn polygons(title: &str, shapes: &[(&str, &str, Vec<[f64; 2]>)]) -> String {
    let f = Frame::fit(shapes.iter().flat_map(|s| s.2.iter().copied()));
    let mut s = open(title);
    axes(&mut s, &f);
    for (i, (label, color, pts)) in shapes.iter().enumerate() {
        let path: Vec<String> = pts
            .iter()
            .map(|&p| {
                let (x, y) = f.map(p);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            s,
            r#"<polygon points="{}" fill="{color}" fill-opacity="0.25" stroke="{color}"/>"#,
            path.join(" ")
        );
        legend(&mut s, i, label, color);
    }
    s.push_str("</svg>\n");
    s
}

/// Polyline series with markers.
pub fn lines(title: &str, series: &[(&str, &str, Vec<[f64; 2]>)]) -> String {
    let f = Frame::fit(series.iter().flat_map(|s| s.2.iter().copied()));
    let mut s = open(title);
    axes(&mut s, &f);
    for (i, (label, color, pts)) in series.iter().enumerate() {
        let mapped: Vec<(f64, f64)> = pts.iter().map(|&p| f.map(p)).collect();
        let path: Vec<String> = mapped.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(s, r#"<polyline points="{}" fill="none" stroke="{color}"/>"#, path.join(" "));
        for (x, y) in mapped {
            let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="{color}"/>"#);
        }
        legend(&mut s, i, label, color);
    }
    s.push_str("</svg>\n");
    s
}

fn legend(s: &mut String, i: usize, label: &str, color: &str) {
    let y = PAD + 16.0 + 16.0 * i as f64;
    let _ = writeln!(s, r#"<rect x="{}" y="{}" width="10" height="10" fill="{color}"/>"#, W - PAD - 130.0, y - 9.0);
    let _ = writeln!(s, r#"<text x="{}" y="{y}">{}</text>"#, W - PAD - 115.0, escape(label));
}

/// Heatmap of `values[row][col]` over `[x0, x1] × [y0, y1]`; `None` cells
/// are drawn grey.
pub fn heatmap(title: &str, values: &[Vec<Option<f64>>], extent: [f64; 4]) -> String {
    let (lo, hi) = values
        .iter()
        .flatten()
        .flatten()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    let span = (hi - lo).max(1e-12);
    let f = Frame {
        x0: extent[0],
        x1: extent[1],
        y0: extent[2],
        y1: extent[3],
    };
    let mut s = open(title);
    let rows = values.len();
    let cols = values.first().map_or(0, Vec::len);
    let (cw, ch) = ((W - 2.0 * PAD) / cols.max(1) as f64, (H - 2.0 * PAD) / rows.max(1) as f64);
    for (r, row) in values.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            let fill = match v {
                Some(v) => {
                    let t = (v - lo) / span;
                    let (red, blue) = ((255.0 * t) as u8, (255.0 * (1.0 - t)) as u8);
                    format!("rgb({red},64,{blue})")
                }
                None => "#ccc".to_string(),
            };
            let x = PAD + c as f64 * cw;
            let y = H - PAD - (r + 1) as f64 * ch;
            let _ = writeln!(s, r#"<rect x="{x:.2}" y="{y:.2}" width="{cw:.2}" height="{ch:.2}" fill="{fill}"/>"#);
        }
    }
    axes(&mut s, &f);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">min {lo:.4} (blue), max {hi:.4} (red)</text>"#,
        W / 2.0,
        H - 8.0
    );
    s.push_str("</svg>\n");
    s
}
