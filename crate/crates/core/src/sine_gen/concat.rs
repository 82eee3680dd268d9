//! Concatenation of a base arc with countably many loops, truncated at a
//! finite depth.
//!
//! At depth `k` the parameter interval is split like the ternary Cantor set:
//! the `2^k - 1` removed middle thirds carry one inserted loop each, and the
//! remaining `2^k` closed intervals reparameterize consecutive pieces of the
//! base arc.

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::geometry::{
    orient, rat, segment_intersect, Intersection, Orientation, Point, Rational, Segment,
};

/// A closed polyline starting at `vertices[0]`, which must lie on the base
/// arc; the edge back to the first vertex is implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcatLoop {
    pub vertices: Vec<Point>,
}

impl ConcatLoop {
    pub fn new(vertices: Vec<Point>) -> Self {
        ConcatLoop { vertices }
    }

    pub fn basepoint(&self) -> &Point {
        &self.vertices[0]
    }

    fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| Segment::new(self.vertices[i].clone(), self.vertices[(i + 1) % n].clone()))
    }

    /// Point at parameter `u` in `[0, 1]`, uniform per edge.
    pub fn at(&self, u: &Rational) -> Point {
        let n = self.vertices.len();
        let (i, f) = split_param(u, n);
        let p = &self.vertices[i % n];
        let q = &self.vertices[(i + 1) % n];
        p.lerp(q, &f)
    }

    /// Largest distance between two vertices, in floating point.
    pub fn diameter(&self) -> f64 {
        let pts: Vec<(f64, f64)> = self.vertices.iter().map(Point::to_f64).collect();
        let mut best: f64 = 0.0;
        for (i, a) in pts.iter().enumerate() {
            for b in &pts[i + 1..] {
                best = best.max((a.0 - b.0).hypot(a.1 - b.1));
            }
        }
        best
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcatSpec {
    /// Vertices of the base arc.
    pub base: Vec<Point>,
    pub loops: Vec<ConcatLoop>,
    pub depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConcatError {
    #[error("base arc needs at least two distinct vertices")]
    DegenerateArc,
    #[error("loop {0} needs at least two vertices with no repeated neighbours")]
    DegenerateLoop(usize),
    #[error("basepoint of loop {0} is not an interior point of the base arc")]
    BasepointNotOnArc(usize),
    #[error("loops {0} and {1} share a basepoint")]
    SharedBasepoint(usize, usize),
    #[error("loops {0} and {1} intersect")]
    LoopsIntersect(usize, usize),
    #[error("loop {0} meets the base arc away from its basepoint")]
    LoopMeetsArc(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PieceKind {
    /// The base arc between the two arc parameters.
    Base { from: String, to: String },
    /// Loop with the given index, traversed once.
    Loop { index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub t0: Rational,
    pub t1: Rational,
    pub base: Option<(Rational, Rational)>,
    pub looped: Option<usize>,
}

impl Piece {
    pub fn kind(&self) -> PieceKind {
        match (&self.base, self.looped) {
            (Some((s0, s1)), _) => PieceKind::Base {
                from: s0.to_string(),
                to: s1.to_string(),
            },
            (None, Some(index)) => PieceKind::Loop { index },
            (None, None) => unreachable!("piece is either base or loop"),
        }
    }
}

/// The finite-depth concatenation, parameterized over `[0, 1]`.
#[derive(Debug, Clone)]
pub struct ConcatPath {
    pub base: Vec<Point>,
    pub loops: Vec<ConcatLoop>,
    /// Pieces in parameter order; they tile `[0, 1]`.
    pub pieces: Vec<Piece>,
    /// Vertex sequence of the path with consecutive repeats removed.
    pub vertices: Vec<Point>,
}

impl ConcatPath {
    pub fn at(&self, t: &Rational) -> Point {
        let idx = self
            .pieces
            .partition_point(|p| &p.t1 < t)
            .min(self.pieces.len() - 1);
        let piece = &self.pieces[idx];
        let local = (t - &piece.t0) / (&piece.t1 - &piece.t0);
        match (&piece.base, piece.looped) {
            (Some((s0, s1)), _) => arc_at(&self.base, &(s0 + (s1 - s0) * &local)),
            (None, Some(i)) => self.loops[i].at(&local),
            (None, None) => unreachable!(),
        }
    }

    /// Indices of the loops traversed, in parameter order.
    pub fn loop_order(&self) -> Vec<usize> {
        self.pieces.iter().filter_map(|p| p.looped).collect()
    }

    /// Vertex sequence obtained by keeping only the base pieces, i.e. the
    /// path with every inserted loop deleted.
    pub fn base_only(&self) -> Vec<Point> {
        let mut out: Vec<Point> = Vec::new();
        for piece in &self.pieces {
            if let Some((s0, s1)) = &piece.base {
                for v in arc_between(&self.base, s0, s1) {
                    push_distinct(&mut out, v);
                }
            }
        }
        out
    }
}

/// Splits a parameter in `[0, 1]` over `n` uniform pieces into an index and
/// a local fraction.
fn split_param(u: &Rational, n: usize) -> (usize, Rational) {
    let scaled = u * Rational::from_integer(n.into());
    let mut i = scaled.floor().to_integer().try_into().unwrap_or(0usize);
    if i >= n {
        i = n - 1;
    }
    let f = scaled - Rational::from_integer(i.into());
    (i, f)
}

pub fn arc_at(base: &[Point], s: &Rational) -> Point {
    let (i, f) = split_param(s, base.len() - 1);
    base[i].lerp(&base[i + 1], &f)
}

/// Arc parameter of `x`, if it lies on the arc (first hit).
pub fn arc_param(base: &[Point], x: &Point) -> Option<Rational> {
    let n = base.len() - 1;
    (0..n).find_map(|i| {
        let seg = Segment::new(base[i].clone(), base[i + 1].clone());
        seg.contains(x).then(|| {
            (Rational::from_integer(i.into()) + seg.param_of(x)) / Rational::from_integer(n.into())
        })
    })
}

/// Vertices of the arc between parameters `s0 <= s1`, endpoints included.
fn arc_between(base: &[Point], s0: &Rational, s1: &Rational) -> Vec<Point> {
    let n = base.len() - 1;
    let mut out = vec![arc_at(base, s0)];
    for (i, v) in base.iter().enumerate().take(n).skip(1) {
        let s = rat(i as i64, n as i64);
        if &s > s0 && &s < s1 {
            out.push(v.clone());
        }
    }
    out.push(arc_at(base, s1));
    out
}

fn push_distinct(out: &mut Vec<Point>, v: Point) {
    if out.last() != Some(&v) {
        out.push(v);
    }
}

pub fn validate_concat(spec: &ConcatSpec) -> Result<Vec<Rational>, ConcatError> {
    if spec.base.len() < 2 || spec.base.windows(2).any(|w| w[0] == w[1]) {
        return Err(ConcatError::DegenerateArc);
    }
    let arc: Vec<Segment> = spec
        .base
        .windows(2)
        .map(|w| Segment::new(w[0].clone(), w[1].clone()))
        .collect();
    let mut params = Vec::with_capacity(spec.loops.len());
    for (i, lp) in spec.loops.iter().enumerate() {
        let n = lp.vertices.len();
        if n < 2 || (0..n).any(|j| lp.vertices[j] == lp.vertices[(j + 1) % n]) {
            return Err(ConcatError::DegenerateLoop(i));
        }
        let s = arc_param(&spec.base, lp.basepoint()).ok_or(ConcatError::BasepointNotOnArc(i))?;
        if s.is_zero() || s.is_one() {
            return Err(ConcatError::BasepointNotOnArc(i));
        }
        if let Some(j) = params.iter().position(|t| t == &s) {
            return Err(ConcatError::SharedBasepoint(j, i));
        }
        params.push(s);
        check_loop_against_arc(i, lp, &arc)?;
    }
    for i in 0..spec.loops.len() {
        for j in i + 1..spec.loops.len() {
            let hit = spec.loops[i].edges().any(|e| {
                spec.loops[j]
                    .edges()
                    .any(|f| segment_intersect(&e, &f) != Intersection::None)
            });
            if hit {
                return Err(ConcatError::LoopsIntersect(i, j));
            }
        }
    }
    Ok(params)
}

/// A loop may touch the arc at its basepoint, and its closing edge may run
/// along the arc; any other contact is rejected.
fn check_loop_against_arc(i: usize, lp: &ConcatLoop, arc: &[Segment]) -> Result<(), ConcatError> {
    let n = lp.vertices.len();
    let first = &lp.vertices[0];
    let last = &lp.vertices[n - 1];
    for (k, e) in lp.edges().enumerate() {
        let closing = k == n - 1;
        if closing && arc.iter().any(|s| s.contains(&e.p) && s.contains(&e.q)) {
            continue;
        }
        for s in arc {
            match segment_intersect(&e, s) {
                Intersection::None => {}
                Intersection::Point { at, .. } if &at == first => {}
                Intersection::Point { at, .. } if &at == last && k >= n - 2 => {}
                _ => return Err(ConcatError::LoopMeetsArc(i)),
            }
        }
    }
    Ok(())
}

pub fn cantor_concatenate(spec: &ConcatSpec) -> Result<ConcatPath, ConcatError> {
    let params = validate_concat(spec)?;
    let used = spec.loops.len().min((1usize << spec.depth.min(62)) - 1);
    let mut order: Vec<usize> = (0..used).collect();
    order.sort_by(|&a, &b| params[a].cmp(&params[b]));

    let mut pieces = Vec::new();
    place(
        &mut pieces,
        (Rational::zero(), Rational::one()),
        (Rational::zero(), Rational::one()),
        &order,
        &params,
        spec.depth,
    );

    let mut vertices: Vec<Point> = Vec::new();
    for piece in &pieces {
        match (&piece.base, piece.looped) {
            (Some((s0, s1)), _) => {
                for v in arc_between(&spec.base, s0, s1) {
                    push_distinct(&mut vertices, v);
                }
            }
            (None, Some(i)) => {
                let lp = &spec.loops[i];
                for v in lp.vertices.iter().chain(std::iter::once(lp.basepoint())) {
                    push_distinct(&mut vertices, v.clone());
                }
            }
            (None, None) => unreachable!(),
        }
    }
    Ok(ConcatPath {
        base: spec.base.clone(),
        loops: spec.loops.clone(),
        pieces,
        vertices,
    })
}

/// Fills the parameter interval `t` with the arc range `s`, inserting the
/// middle loop of `loops` (sorted by basepoint) in the middle third and
/// recursing on both outer thirds.
fn place(
    out: &mut Vec<Piece>,
    t: (Rational, Rational),
    s: (Rational, Rational),
    loops: &[usize],
    params: &[Rational],
    levels: usize,
) {
    if loops.is_empty() || levels == 0 {
        out.push(Piece {
            t0: t.0,
            t1: t.1,
            base: Some(s),
            looped: None,
        });
        return;
    }
    let third = (&t.1 - &t.0) / Rational::from_integer(3.into());
    let a = &t.0 + &third;
    let b = &a + &third;
    let mid = loops.len() / 2;
    let x = params[loops[mid]].clone();
    place(out, (t.0, a.clone()), (s.0, x.clone()), &loops[..mid], params, levels - 1);
    out.push(Piece {
        t0: a,
        t1: b.clone(),
        base: None,
        looped: Some(loops[mid]),
    });
    place(out, (b, t.1), (x, s.1), &loops[mid + 1..], params, levels - 1);
}

/// Removes repeated vertices, vertices lying straight between their
/// neighbours, and back-and-forth runs along one line (which cancel).
pub fn simplify_polyline(vertices: &[Point]) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(vertices.len());
    for v in vertices {
        loop {
            if out.last() == Some(v) {
                break;
            }
            let n = out.len();
            if n >= 2 && orient(&out[n - 2], &out[n - 1], v) == Orientation::Collinear {
                out.pop();
                continue;
            }
            out.push(v.clone());
            break;
        }
    }
    out
}

fn point_segment_distance(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0)
    };
    let (cx, cy) = (a.0 + t * dx, a.1 + t * dy);
    (p.0 - cx).hypot(p.1 - cy)
}

fn distance_to_polyline(p: (f64, f64), poly: &[(f64, f64)]) -> f64 {
    if poly.len() == 1 {
        return (p.0 - poly[0].0).hypot(p.1 - poly[0].1);
    }
    poly.windows(2)
        .map(|w| point_segment_distance(p, w[0], w[1]))
        .fold(f64::INFINITY, f64::min)
}

/// Sampled Hausdorff distance between the traces of two concatenations:
/// each is evaluated at `samples + 1` uniform parameters and measured
/// against the other's polyline.
pub fn sampled_trace_distance(p: &ConcatPath, q: &ConcatPath, samples: usize) -> f64 {
    let pp: Vec<(f64, f64)> = p.vertices.iter().map(Point::to_f64).collect();
    let qq: Vec<(f64, f64)> = q.vertices.iter().map(Point::to_f64).collect();
    let mut worst: f64 = 0.0;
    for i in 0..=samples {
        let t = rat(i as i64, samples as i64);
        worst = worst.max(distance_to_polyline(p.at(&t).to_f64(), &qq));
        worst = worst.max(distance_to_polyline(q.at(&t).to_f64(), &pp));
    }
    worst
}
