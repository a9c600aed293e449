//! Output rendering: CSV tables and SVG plots of planar bodies.

use std::fmt::Write;

/// A rectangular table with a header row.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<String>) -> Self {
        Self { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in std::iter::once(&self.header).chain(&self.rows) {
            let cells: Vec<String> = row.iter().map(|c| escape(c)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

fn escape(cell: &str) -> String {
    if cell.contains([',', '"', '\n']) {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

/// Shortest round-trip representation of a float.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

/// Planar data for an SVG figure.
#[derive(Clone, Debug, Default)]
pub struct Plot {
    pub title: String,
    pub cloud: Vec<[f64; 2]>,
    /// Supporting lines `⟨u, x⟩ = h`, ordered by angle of `u`.
    pub envelope: Vec<([f64; 2], f64)>,
    pub vertices: Vec<[f64; 2]>,
}

impl Plot {
    /// Corners of the polygon cut out by consecutive supporting lines.
    pub fn envelope_polygon(&self) -> Vec<[f64; 2]> {
        let mut lines = self.envelope.clone();
        lines.sort_by(|a, b| a.0[1].atan2(a.0[0]).total_cmp(&b.0[1].atan2(b.0[0])));
        let n = lines.len();
        if n < 3 {
            return Vec::new();
        }
        (0..n)
            .filter_map(|i| {
                let (u, h) = lines[i];
                let (v, g) = lines[(i + 1) % n];
                let det = u[0] * v[1] - u[1] * v[0];
                (det.abs() > 1e-12).then(|| [(h * v[1] - g * u[1]) / det, (u[0] * g - v[0] * h) / det])
            })
            .collect()
    }

    pub fn to_svg(&self) -> String {
        const SIZE: f64 = 480.0;
        const PAD: f64 = 24.0;
        let polygon = self.envelope_polygon();
        let all: Vec<[f64; 2]> = self.cloud.iter().chain(&polygon).chain(&self.vertices).copied().collect();
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for p in &all {
            for i in 0..2 {
                lo[i] = lo[i].min(p[i]);
                hi[i] = hi[i].max(p[i]);
            }
        }
        if all.is_empty() {
            (lo, hi) = ([-1.0; 2], [1.0; 2]);
        }
        let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-12);
        let map = |p: &[f64; 2]| {
            let s = (SIZE - 2.0 * PAD) / span;
            (PAD + (p[0] - lo[0]) * s, SIZE - PAD - (p[1] - lo[1]) * s)
        };
        let mut svg = String::new();
        let _ = writeln!(svg, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#);
        let _ = writeln!(svg, r#"<title>{}</title>"#, self.title.replace('&', "&amp;").replace('<', "&lt;"));
        let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
        if !polygon.is_empty() {
            let pts: Vec<String> = polygon.iter().map(|p| {
                let (x, y) = map(p);
                format!("{x:.2},{y:.2}")
            }).collect();
            let _ = writeln!(svg, r#"<polygon points="{}" fill="none" stroke="steelblue" stroke-width="1.5"/>"#, pts.join(" "));
        }
        for p in &self.cloud {
            let (x, y) = map(p);
            let _ = writeln!(svg, r#"<circle cx="{x:.2}" cy="{y:.2}" r="1.2" fill="gray" fill-opacity="0.6"/>"#);
        }
        for p in &self.vertices {
            let (x, y) = map(p);
            let _ = writeln!(svg, r#"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="crimson"/>"#);
        }
        svg.push_str("</svg>\n");
        svg
    }
}
