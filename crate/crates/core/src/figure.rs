//! Planar placement of three reconstructions and their error disks.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Allowed violation of the triangle inequality.
pub const TRIANGLE_SLACK: f64 = 1e-9;
/// Pixels per unit of trace distance (0.1 -> 100 px).
pub const PX_PER_UNIT: f64 = 1000.0;
const MARGIN: f64 = 70.0;
const TICK: f64 = 0.05;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangleEmbedding {
    pub labels: [String; 3],
    pub points: [[f64; 2]; 3],
    pub radii: [f64; 3],
}

impl TriangleEmbedding {
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        let [a, b] = [self.points[i], self.points[j]];
        (a[0] - b[0]).hypot(a[1] - b[1])
    }

    pub fn with_labels(mut self, labels: [&str; 3]) -> Self {
        self.labels = labels.map(str::to_string);
        self
    }

    pub fn with_radii(mut self, radii: [f64; 3]) -> Self {
        self.radii = radii;
        self
    }
}

/// Places O at the origin, S on the positive x axis and M in the upper half
/// plane so that the three pairwise distances are reproduced.
pub fn embed_triangle(d_os: f64, d_om: f64, d_sm: f64) -> Result<TriangleEmbedding> {
    let d = [d_os, d_om, d_sm];
    if d.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(Error::InvalidArgument(format!(
            "distances must be finite and nonnegative: {d:?}"
        )));
    }
    let excess = [d_os - d_om - d_sm, d_om - d_os - d_sm, d_sm - d_os - d_om]
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max);
    if excess > TRIANGLE_SLACK {
        return Err(Error::TriangleInequality { excess });
    }
    let m = if d_os == 0.0 {
        [d_om, 0.0]
    } else {
        let x = (d_os * d_os + d_om * d_om - d_sm * d_sm) / (2.0 * d_os);
        [x, (d_om * d_om - x * x).max(0.0).sqrt()]
    };
    Ok(TriangleEmbedding {
        labels: ["O", "S", "M"].map(str::to_string),
        points: [[0.0, 0.0], [d_os, 0.0], m],
        radii: [0.0; 3],
    })
}

const COLORS: [&str; 3] = ["#1f77b4", "#d62728", "#2ca02c"];

/// Disks of radius `R` around each point, optionally with dashed `R/2`
/// disks, on fixed axes in trace-distance units.
pub fn render_svg(emb: &TriangleEmbedding, half_disks: bool) -> String {
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for (p, r) in emb.points.iter().zip(emb.radii) {
        x0 = x0.min(p[0] - r);
        x1 = x1.max(p[0] + r);
        y0 = y0.min(p[1] - r);
        y1 = y1.max(p[1] + r);
    }
    let down = |v: f64| (v / TICK + 1e-9).floor() * TICK;
    let up = |v: f64| (v / TICK - 1e-9).ceil() * TICK;
    let (x0, x1, y0, y1) = (down(x0), up(x1), down(y0), up(y1));
    let width = (x1 - x0) * PX_PER_UNIT + 2.0 * MARGIN;
    let height = (y1 - y0) * PX_PER_UNIT + 2.0 * MARGIN;
    let px = |x: f64| MARGIN + (x - x0) * PX_PER_UNIT;
    let py = |y: f64| height - MARGIN - (y - y0) * PX_PER_UNIT;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);

    // axes with ticks every 0.05
    let (ax, ay) = (px(x0), py(y0));
    let _ = writeln!(
        s,
        r#"<path d="M{:.2} {:.2} H{:.2} M{:.2} {:.2} V{:.2}" stroke="black" fill="none"/>"#,
        ax,
        ay,
        px(x1),
        ax,
        ay,
        py(y1)
    );
    let ticks = |lo: f64, hi: f64| {
        let n = ((hi - lo) / TICK).round() as i64;
        (0..=n).map(move |i| lo + i as f64 * TICK)
    };
    for x in ticks(x0, x1) {
        let _ = writeln!(
            s,
            r#"<line x1="{0:.2}" y1="{1:.2}" x2="{0:.2}" y2="{2:.2}" stroke="black"/><text x="{0:.2}" y="{3:.2}" text-anchor="middle">{4:.2}</text>"#,
            px(x),
            ay,
            ay + 5.0,
            ay + 18.0,
            x + 0.0
        );
    }
    for y in ticks(y0, y1) {
        let _ = writeln!(
            s,
            r#"<line x1="{0:.2}" y1="{1:.2}" x2="{2:.2}" y2="{1:.2}" stroke="black"/><text x="{3:.2}" y="{4:.2}" text-anchor="end">{5:.2}</text>"#,
            ax,
            py(y),
            ax - 5.0,
            ax - 8.0,
            py(y) + 4.0,
            y + 0.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">trace distance</text>"#,
        (ax + px(x1)) / 2.0,
        height - 15.0
    );
    let _ = writeln!(
        s,
        r#"<text x="15" y="{0:.2}" text-anchor="middle" transform="rotate(-90 15 {0:.2})">trace distance</text>"#,
        (ay + py(y1)) / 2.0
    );

    for (((&[x, y], radius), label), color) in emb.points.iter().zip(emb.radii).zip(&emb.labels).zip(COLORS) {
        let (cx, cy, r) = (px(x), py(y), radius * PX_PER_UNIT);
        let _ = writeln!(
            s,
            r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="{r:.2}" fill="{color}" fill-opacity="0.12" stroke="{color}"/>"#
        );
        if half_disks {
            let _ = writeln!(
                s,
                r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="{:.2}" fill="none" stroke="{color}" stroke-dasharray="6 4"/>"#,
                r / 2.0
            );
        }
        let _ = writeln!(s, r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="3" fill="{color}"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" fill="{color}">{}</text>"#,
            cx + 6.0,
            cy - 6.0,
            escape(label)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn equilateral() {
        let e = embed_triangle(1.0, 1.0, 1.0).unwrap();
        assert_eq!(e.points[0], [0.0, 0.0]);
        assert_eq!(e.points[1], [1.0, 0.0]);
        assert_abs_diff_eq!(e.points[2][0], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(e.points[2][1], 3f64.sqrt() / 2.0, epsilon = 1e-15);
    }

    #[test]
    fn collinear() {
        let e = embed_triangle(1.0, 0.5, 0.5).unwrap();
        assert_eq!(e.points[2], [0.5, 0.0]);
    }

    #[test]
    fn distances_reproduced() {
        let e = embed_triangle(0.1004, 0.1415, 0.1203).unwrap();
        assert_abs_diff_eq!(e.distance(0, 1), 0.1004, epsilon = 1e-12);
        assert_abs_diff_eq!(e.distance(0, 2), 0.1415, epsilon = 1e-12);
        assert_abs_diff_eq!(e.distance(1, 2), 0.1203, epsilon = 1e-12);
        assert!(e.points[2][1] >= 0.0);
    }

    #[test]
    fn violations() {
        assert!(matches!(
            embed_triangle(1.0, 0.2, 0.2),
            Err(Error::TriangleInequality { .. })
        ));
        assert!(embed_triangle(1.0, 0.5, 0.5 - 1e-10).is_ok());
        assert!(embed_triangle(-1.0, 0.5, 0.5).is_err());
        let e = embed_triangle(0.0, 0.3, 0.3).unwrap();
        assert_abs_diff_eq!(e.distance(1, 2), 0.3, epsilon = 1e-15);
    }

    #[test]
    fn svg_geometry() {
        let e = embed_triangle(0.1, 0.1, 0.1).unwrap().with_radii([0.1, 0.2, 0.15]);
        let svg = render_svg(&e, true);
        assert_eq!(svg, render_svg(&e, true));
        assert!(svg.contains(r#"r="100.00""#));
        assert!(svg.contains(r#"r="200.00""#));
        assert!(svg.contains(r#"r="75.00" fill="none""#));
        assert!(svg.contains("stroke-dasharray"));
        assert!(!render_svg(&e, false).contains("stroke-dasharray"));
        assert!(svg.contains("trace distance"));
        // every disk reaches x = -0.1, so O sits 100 px right of the axis
        assert!(svg.contains(r#"<circle cx="170.00""#), "{svg}");
    }
}
