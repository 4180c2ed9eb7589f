//! SVG figures of single configurations.
//!
//! Coordinates are those of the canonical frame with `y` flipped, printed
//! with six decimals. Each figure is framed by the bounding box of its own
//! geometry plus a 5% margin, with the caption in a band underneath.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::closed_form::{self, FormulaMode};
use crate::construct::{Configuration, Frame};
use crate::triangle::Vertex;
use crate::Vec2;

const MARGIN: f64 = 0.05;
/// Dashed side lines run this fraction of their drawn length past the
/// outermost point they have to reach.
const OVERHANG: f64 = 0.04;

fn num(x: f64) -> String {
    let s = format!("{:.6}", x);
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

fn screen(p: Vec2) -> Vec2 {
    Vec2::new(p.x, -p.y)
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[derive(Debug, Clone, Copy)]
struct Bounds {
    min: Vec2,
    max: Vec2,
}

impl Bounds {
    fn empty() -> Bounds {
        Bounds {
            min: Vec2::repeat(f64::INFINITY),
            max: Vec2::repeat(f64::NEG_INFINITY),
        }
    }

    fn add(&mut self, p: Vec2) {
        self.min = self.min.inf(&p);
        self.max = self.max.sup(&p);
    }

    fn add_disc(&mut self, c: Vec2, r: f64) {
        self.add(c - Vec2::repeat(r));
        self.add(c + Vec2::repeat(r));
    }

    fn size(&self) -> Vec2 {
        self.max - self.min
    }
}

/// Segment of the line through `p` and `q` covering both and every point of
/// `extra`, with a small overhang at each end.
fn side_segment(p: Vec2, q: Vec2, extra: &[Vec2]) -> (Vec2, Vec2) {
    let u = (q - p).normalize();
    let (mut lo, mut hi) = (0.0f64, (q - p).norm());
    for x in extra {
        let t = (x - p).dot(&u);
        lo = lo.min(t);
        hi = hi.max(t);
    }
    let pad = OVERHANG * (hi - lo);
    (p + u * (lo - pad), p + u * (hi + pad))
}

/// The figure of one configuration as an SVG document.
pub fn render_svg(frame: &Frame, config: &Configuration, mode: FormulaMode) -> String {
    let vertices = Vertex::ALL.map(|v| frame.vertex(v));
    let lines = config.tangent_points.on_lines();
    let sides = [(Vertex::B, Vertex::C), (Vertex::C, Vertex::A), (Vertex::A, Vertex::B)].map(|(p, q)| {
        let on: Vec<Vec2> = lines
            .iter()
            .filter(|(_, _, l)| *l == (p, q))
            .map(|(x, _, _)| *x)
            .collect();
        side_segment(frame.vertex(p), frame.vertex(q), &on)
    });
    let centroid = (vertices[0] + vertices[1] + vertices[2]) / 3.0;
    let points = config.tangent_points.labeled();

    let mut geo = Bounds::empty();
    for (p, q) in sides {
        geo.add(screen(p));
        geo.add(screen(q));
    }
    for c in &config.circles {
        geo.add_disc(screen(c.center), c.radius);
    }
    for (_, p) in points {
        geo.add(screen(p));
    }
    let extent = geo.size().x.max(geo.size().y).max(f64::MIN_POSITIVE);
    let label_offset = 0.035 * extent;
    let label_at = vertices.map(|v| {
        let away = v - centroid;
        screen(v + away.normalize() * label_offset)
    });
    for p in label_at {
        geo.add_disc(p, label_offset);
    }

    let size = geo.size();
    let font = 0.032 * size.x.max(size.y);
    let caption = {
        let mut lines = vec![format!("{} (Case {})", config.variant, config.case.id())];
        lines.extend(closed_form::formula_text(config.variant, mode));
        lines
    };
    let x0 = geo.min.x - MARGIN * size.x;
    let y0 = geo.min.y - MARGIN * size.y;
    let width = size.x * (1.0 + 2.0 * MARGIN);
    let caption_top = geo.max.y + MARGIN * size.y;
    let height = caption_top - y0 + font * (1.4 * caption.len() as f64 + 0.6);

    let stroke = 0.004 * size.x.max(size.y);
    let dot = 2.0 * stroke;
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}" data-variant="{}" data-case="{}">"#,
        num(x0),
        num(y0),
        num(width),
        num(height),
        config.variant,
        config.case.id()
    );
    let _ = writeln!(w, "<title>{}</title>", config.variant);
    let _ = writeln!(w, r#"<g fill="none" stroke="gray" stroke-width="{}" stroke-dasharray="{} {}">"#, num(stroke * 0.6), num(stroke * 3.0), num(stroke * 2.0));
    for (p, q) in sides {
        let (p, q) = (screen(p), screen(q));
        let _ = writeln!(w, r#"<line class="extension" x1="{}" y1="{}" x2="{}" y2="{}"/>"#, num(p.x), num(p.y), num(q.x), num(q.y));
    }
    let _ = writeln!(w, "</g>");
    let poly: Vec<String> = vertices.iter().map(|v| screen(*v)).map(|p| format!("{},{}", num(p.x), num(p.y))).collect();
    let _ = writeln!(
        w,
        r#"<polygon class="triangle" points="{}" fill="none" stroke="black" stroke-width="{}"/>"#,
        poly.join(" "),
        num(stroke)
    );
    for (i, c) in config.circles.iter().enumerate() {
        let p = screen(c.center);
        let _ = writeln!(
            w,
            r#"<circle class="tangent-circle" data-index="{}" cx="{}" cy="{}" r="{}" fill="none" stroke="steelblue" stroke-width="{}"/>"#,
            i + 1,
            num(p.x),
            num(p.y),
            num(c.radius),
            num(stroke)
        );
    }
    for (label, p) in points {
        let p = screen(p);
        let _ = writeln!(
            w,
            r#"<circle class="tangent-point" data-label="{}" cx="{}" cy="{}" r="{}" fill="firebrick"/>"#,
            label,
            num(p.x),
            num(p.y),
            num(dot)
        );
    }
    for (v, p) in Vertex::ALL.iter().zip(label_at) {
        let _ = writeln!(
            w,
            r#"<text class="vertex-label" x="{}" y="{}" font-size="{}" font-family="serif" text-anchor="middle" dominant-baseline="middle">{}</text>"#,
            num(p.x),
            num(p.y),
            num(font),
            v.name()
        );
    }
    let _ = writeln!(w, r#"<text class="caption" font-size="{}" font-family="serif">"#, num(font));
    for (k, line) in caption.iter().enumerate() {
        let _ = writeln!(
            w,
            r#"<tspan x="{}" y="{}">{}</tspan>"#,
            num(geo.min.x),
            num(caption_top + font * (1.4 * k as f64 + 1.0)),
            escape(line)
        );
    }
    let _ = writeln!(w, "</text>");
    let _ = writeln!(w, "</svg>");
    out
}

/// Writes `<label>.svg` for every configuration into `dir`, creating it if
/// needed, and returns the paths in order.
pub fn write_figures(dir: &Path, frame: &Frame, configs: &[Configuration], mode: FormulaMode) -> std::io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    configs
        .iter()
        .map(|c| {
            let path = dir.join(format!("{}.svg", c.variant.label()));
            std::fs::write(&path, render_svg(frame, c, mode))?;
            Ok(path)
        })
        .collect()
}
