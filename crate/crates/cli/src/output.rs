use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::Path;

/// `v` with 17 significant digits.
pub fn num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

pub struct Csv {
    text: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        Csv { text: header.join(",") + "\n" }
    }

    pub fn row(&mut self, cells: &[String]) {
        self.text.push_str(&cells.join(","));
        self.text.push('\n');
    }

    pub fn write(&self, path: Option<&Path>) -> io::Result<()> {
        match path {
            Some(p) => std::fs::write(p, &self.text),
            None => io::stdout().lock().write_all(self.text.as_bytes()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stroke {
    pub color: &'static str,
    /// Wider colour drawn underneath.
    pub casing: Option<&'static str>,
    pub dashed: bool,
}

impl Stroke {
    pub const GENERIC: Stroke = Stroke { color: "black", casing: None, dashed: false };
    pub const RAY: Stroke = Stroke { color: "black", casing: None, dashed: true };

    /// Colour of the named limiting cases, black otherwise.
    pub fn for_params(eta: f64, eta_tilde: f64) -> Stroke {
        let color = |c| Stroke { color: c, casing: None, dashed: false };
        match (eta, eta_tilde) {
            (e, t) if e == 1.0 && t == 0.0 => color("green"),
            (e, t) if e == 0.0 && t == 0.0 => color("blue"),
            (e, t) if e == 0.0 && t == 1.0 => color("red"),
            (e, t) if e == 1.0 && t == 1.0 => Stroke { color: "white", casing: Some("gray"), dashed: false },
            _ => Stroke::GENERIC,
        }
    }
}

pub struct Polyline {
    pub points: Vec<[f64; 2]>,
    pub closed: bool,
    pub stroke: Stroke,
}

/// Polylines in plane coordinates, `x2` pointing up, framed with a 5% margin.
pub fn svg(lines: &[Polyline]) -> String {
    let pts = lines.iter().flat_map(|l| l.points.iter()).filter(|p| p[0].is_finite() && p[1].is_finite());
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in pts {
        for j in 0..2 {
            lo[j] = lo[j].min(p[j]);
            hi[j] = hi[j].max(p[j]);
        }
    }
    if lo[0] > hi[0] {
        (lo, hi) = ([-1.0; 2], [1.0; 2]);
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
    let pad = 0.05 * span;
    let (x, y) = (lo[0] - pad, -hi[1] - pad);
    let (w, h) = (hi[0] - lo[0] + 2.0 * pad, hi[1] - lo[1] + 2.0 * pad);
    let width = 0.004 * span;

    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{x} {y} {w} {h}\" width=\"800\" height=\"{}\">\n",
        (800.0 * h / w).round()
    );
    let _ = writeln!(out, "<rect x=\"{x}\" y=\"{y}\" width=\"{w}\" height=\"{h}\" fill=\"white\"/>");
    for line in lines {
        for segment in line.points.split(|p| !(p[0].is_finite() && p[1].is_finite())) {
            if segment.len() < 2 {
                continue;
            }
            let mut coords = segment.iter().map(|p| format!("{},{}", p[0], -p[1])).collect::<Vec<_>>();
            if line.closed && segment.len() == line.points.len() {
                coords.push(coords[0].clone());
            }
            let coords = coords.join(" ");
            let dash = if line.stroke.dashed { format!(" stroke-dasharray=\"{} {}\"", 4.0 * width, 3.0 * width) } else { String::new() };
            if let Some(casing) = line.stroke.casing {
                let _ = writeln!(
                    out,
                    "<polyline points=\"{coords}\" fill=\"none\" stroke=\"{casing}\" stroke-width=\"{}\"/>",
                    2.5 * width
                );
            }
            let _ = writeln!(
                out,
                "<polyline points=\"{coords}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{width}\"{dash}/>",
                line.stroke.color
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
