//! Deterministic SVG rendering of an arrangement and a traced path.

use std::collections::BTreeSet;
use std::fmt::Write;

use sheltered_core::arrangement::{Arrangement, EdgeId};
use sheltered_core::geometry::{PathLabel, Point};

const WIDTH: f64 = 1000.0;
const PAD: f64 = 20.0;

pub struct SvgScene<'a> {
    pub arrangement: &'a Arrangement,
    pub strongly: Option<&'a BTreeSet<EdgeId>>,
    pub trace: Option<&'a [Point]>,
    pub central_line: Option<(Point, Point)>,
}

fn color(label: PathLabel) -> &'static str {
    match label {
        PathLabel::A => "red",
        PathLabel::B => "green",
        PathLabel::C => "blue",
    }
}

/// Rounds to 12 significant digits.
fn num(v: f64) -> String {
    let r: f64 = format!("{v:.11e}").parse().unwrap_or(v);
    let r = if r == 0.0 { 0.0 } else { r };
    format!("{r}")
}

struct Frame {
    min_x: f64,
    max_y: f64,
    k: f64,
    height: f64,
}

impl Frame {
    fn fit(points: &[(f64, f64)]) -> Frame {
        let (mut min_x, mut max_x, mut min_y, mut max_y) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for &(x, y) in points {
            min_x = min_x.min(x);
            max_x = max_x.max(x);
            min_y = min_y.min(y);
            max_y = max_y.max(y);
        }
        let span = (max_x - min_x).max(max_y - min_y).max(f64::MIN_POSITIVE);
        let k = (WIDTH - 2.0 * PAD) / span;
        Frame {
            min_x,
            max_y,
            k,
            height: (max_y - min_y) * k + 2.0 * PAD,
        }
    }

    fn map(&self, p: &Point) -> String {
        let (x, y) = p.to_f64();
        format!("{},{}", num((x - self.min_x) * self.k + PAD), num((self.max_y - y) * self.k + PAD))
    }

    fn points(&self, pts: &[&Point]) -> String {
        pts.iter().map(|p| self.map(p)).collect::<Vec<_>>().join(" ")
    }
}

pub fn render(scene: &SvgScene) -> String {
    let arr = scene.arrangement;
    let mut all: Vec<(f64, f64)> = arr.vertices.iter().map(|v| v.location.to_f64()).collect();
    if let Some((p, q)) = &scene.central_line {
        all.push(p.to_f64());
        all.push(q.to_f64());
    }
    let frame = Frame::fit(&all);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = num(WIDTH),
        h = num(frame.height)
    );
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    if let Some((p, q)) = &scene.central_line {
        let _ = writeln!(
            out,
            r#"<polyline id="central-line" fill="none" stroke="gray" stroke-width="1" stroke-dasharray="4 3" points="{}"/>"#,
            frame.points(&[p, q])
        );
    }
    out.push_str("<g id=\"traces\" fill=\"none\" stroke-width=\"1\">\n");
    for e in &arr.edges {
        let _ = writeln!(
            out,
            r#"<polyline class="edge" data-edge="{}" data-path="{}" stroke="{}" points="{}"/>"#,
            e.id,
            e.owner,
            color(e.owner),
            frame.points(&[&e.segment.p, &e.segment.q])
        );
    }
    out.push_str("</g>\n");
    if let Some(strong) = scene.strongly {
        out.push_str("<g id=\"sheltered\" fill=\"none\" stroke=\"black\" stroke-width=\"3\">\n");
        for &e in strong {
            let seg = &arr.edges[e].segment;
            let _ = writeln!(out, r#"<polyline points="{}"/>"#, frame.points(&[&seg.p, &seg.q]));
        }
        out.push_str("</g>\n");
    }
    if let Some(trace) = scene.trace {
        let pts: Vec<&Point> = trace.iter().collect();
        let _ = writeln!(
            out,
            r#"<polyline id="trace" fill="none" stroke="orange" stroke-opacity="0.6" stroke-width="7" transform="translate(2,2)" points="{}"/>"#,
            frame.points(&pts)
        );
    }
    out.push_str("<g id=\"vertices\" fill=\"black\">\n");
    for v in &arr.vertices {
        let (x, y) = v.location.to_f64();
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="1.5"/>"#,
            num((x - frame.min_x) * frame.k + PAD),
            num((frame.max_y - y) * frame.k + PAD)
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::num;

    #[test]
    fn numbers_have_twelve_digits() {
        assert_eq!(num(1.0 / 3.0), "0.333333333333");
        assert_eq!(num(20.0), "20");
        assert_eq!(num(-0.0), "0");
    }
}
