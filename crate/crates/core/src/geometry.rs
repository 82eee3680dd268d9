//! Exact planar primitives.
//!
//! Every coordinate is an arbitrary-precision rational, so orientation and
//! intersection predicates never round. Floats only show up at the edges of
//! the crate (the angle-sum oracle and display code).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact rational number, always stored in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Builds the rational `num / den`.
///
/// Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds an integer-valued rational.
pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed rational `{0}`")]
pub struct ParseRationalError(pub String);

/// Parses `"p"`, `"p/q"` or a plain decimal such as `"-0.125"`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let neg = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        let mag = BigInt::from_str(&digits).map_err(|_| err())?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let r = Rational::new(mag, den);
        return Ok(if neg { -r } else { r });
    }
    BigInt::from_str(t).map(Rational::from_integer).map_err(|_| err())
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Extremely large numerators overflow the fast path.
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(int(x), int(y))
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point::new(&self.x - &other.x, &self.y - &other.y)
    }

    pub fn add(&self, other: &Point) -> Point {
        Point::new(&self.x + &other.x, &self.y + &other.y)
    }

    pub fn scale(&self, s: &Rational) -> Point {
        Point::new(&self.x * s, &self.y * s)
    }

    /// `self + (other - self) * t`
    pub fn lerp(&self, other: &Point, t: &Rational) -> Point {
        self.add(&other.sub(self).scale(t))
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        self.lerp(other, &rat(1, 2))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (to_f64(&self.x), to_f64(&self.y))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Cross product of two vectors.
pub fn cross(u: &Point, v: &Point) -> Rational {
    &u.x * &v.y - &u.y * &v.x
}

pub fn dot(u: &Point, v: &Point) -> Rational {
    &u.x * &v.x + &u.y * &v.y
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Ccw,
    Cw,
    Collinear,
}

/// Sign of `(q - p) x (r - p)`.
pub fn orient(p: &Point, q: &Point, r: &Point) -> Orientation {
    let d = cross(&q.sub(p), &r.sub(p));
    if d.is_positive() {
        Orientation::Ccw
    } else if d.is_negative() {
        Orientation::Cw
    } else {
        Orientation::Collinear
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub p: Point,
    pub q: Point,
}

impl Segment {
    pub fn new(p: Point, q: Point) -> Self {
        debug_assert!(p != q, "degenerate segment");
        Segment { p, q }
    }

    pub fn direction(&self) -> Point {
        self.q.sub(&self.p)
    }

    /// Exact incidence test, endpoints included.
    pub fn contains(&self, x: &Point) -> bool {
        if orient(&self.p, &self.q, x) != Orientation::Collinear {
            return false;
        }
        let d = self.direction();
        let t = dot(&x.sub(&self.p), &d);
        !t.is_negative() && t <= dot(&d, &d)
    }

    /// Parameter of a point known to lie on the supporting line.
    pub fn param_of(&self, x: &Point) -> Rational {
        let d = self.direction();
        dot(&x.sub(&self.p), &d) / dot(&d, &d)
    }

    pub fn at(&self, t: &Rational) -> Point {
        self.p.lerp(&self.q, t)
    }

    fn bbox_disjoint(&self, other: &Segment) -> bool {
        let (ax0, ax1) = minmax(&self.p.x, &self.q.x);
        let (bx0, bx1) = minmax(&other.p.x, &other.q.x);
        if ax1 < bx0 || bx1 < ax0 {
            return true;
        }
        let (ay0, ay1) = minmax(&self.p.y, &self.q.y);
        let (by0, by1) = minmax(&other.p.y, &other.q.y);
        ay1 < by0 || by1 < ay0
    }
}

fn minmax<'a>(a: &'a Rational, b: &'a Rational) -> (&'a Rational, &'a Rational) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Intersection {
    None,
    /// A single common point, with flags telling whether it is interior to
    /// the first and second segment respectively.
    Point {
        at: Point,
        interior_first: bool,
        interior_second: bool,
    },
    /// The segments share a subsegment of positive length.
    Overlap,
}

pub fn segment_intersect(s1: &Segment, s2: &Segment) -> Intersection {
    if s1.bbox_disjoint(s2) {
        return Intersection::None;
    }
    let o1 = orient(&s1.p, &s1.q, &s2.p);
    let o2 = orient(&s1.p, &s1.q, &s2.q);
    let o3 = orient(&s2.p, &s2.q, &s1.p);
    let o4 = orient(&s2.p, &s2.q, &s1.q);
    use Orientation::Collinear;

    if o1 == Collinear && o2 == Collinear {
        // Both on one line: compare parameter intervals along s1.
        let t0 = s1.param_of(&s2.p);
        let t1 = s1.param_of(&s2.q);
        let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        let lo = if lo.is_negative() { Rational::zero() } else { lo };
        let hi = if hi > Rational::one() { Rational::one() } else { hi };
        return match lo.cmp(&hi) {
            std::cmp::Ordering::Greater => Intersection::None,
            std::cmp::Ordering::Equal => {
                let at = s1.at(&lo);
                Intersection::Point {
                    interior_first: is_interior(s1, &at),
                    interior_second: is_interior(s2, &at),
                    at,
                }
            }
            std::cmp::Ordering::Less => Intersection::Overlap,
        };
    }

    if o1 == o2 || o3 == o4 {
        // Same strict side, or one collinear endpoint that does not touch.
        let touching = [
            (o1 == Collinear).then_some(&s2.p).filter(|p| s1.contains(p)),
            (o2 == Collinear).then_some(&s2.q).filter(|p| s1.contains(p)),
            (o3 == Collinear).then_some(&s1.p).filter(|p| s2.contains(p)),
            (o4 == Collinear).then_some(&s1.q).filter(|p| s2.contains(p)),
        ];
        return match touching.into_iter().flatten().next() {
            Some(at) => Intersection::Point {
                interior_first: is_interior(s1, at),
                interior_second: is_interior(s2, at),
                at: at.clone(),
            },
            None => Intersection::None,
        };
    }

    // Proper sign change on both sides; may still hit an endpoint of one.
    let d1 = s1.direction();
    let d2 = s2.direction();
    let denom = cross(&d1, &d2);
    let t = cross(&s2.p.sub(&s1.p), &d2) / denom;
    let at = s1.at(&t);
    Intersection::Point {
        interior_first: o3 != Collinear && o4 != Collinear,
        interior_second: o1 != Collinear && o2 != Collinear,
        at,
    }
}

fn is_interior(s: &Segment, x: &Point) -> bool {
    x != &s.p && x != &s.q
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PathLabel {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
    #[serde(rename = "c")]
    C,
}

impl PathLabel {
    pub const ALL: [PathLabel; 3] = [PathLabel::A, PathLabel::B, PathLabel::C];

    pub fn index(self) -> usize {
        self as usize
    }

    /// The other two labels in alphabetical order.
    pub fn others(self) -> (PathLabel, PathLabel) {
        match self {
            PathLabel::A => (PathLabel::B, PathLabel::C),
            PathLabel::B => (PathLabel::A, PathLabel::C),
            PathLabel::C => (PathLabel::A, PathLabel::B),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PathLabel::A => "a",
            PathLabel::B => "b",
            PathLabel::C => "c",
        }
    }
}

impl fmt::Display for PathLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PathLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "a" => Ok(PathLabel::A),
            "b" => Ok(PathLabel::B),
            "c" => Ok(PathLabel::C),
            other => Err(format!("unknown path label `{other}`")),
        }
    }
}

/// An oriented polyline from the instance's start point to its end point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlPath {
    pub label: PathLabel,
    pub vertices: Vec<Point>,
}

impl PlPath {
    pub fn new(label: PathLabel, vertices: Vec<Point>) -> Self {
        PlPath { label, vertices }
    }

    pub fn start(&self) -> &Point {
        &self.vertices[0]
    }

    pub fn end(&self) -> &Point {
        self.vertices.last().expect("path has vertices")
    }

    pub fn segment_count(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn segments(&self) -> impl Iterator<Item = Segment> + '_ {
        self.vertices
            .windows(2)
            .map(|w| Segment::new(w[0].clone(), w[1].clone()))
    }

    pub fn reversed(&self) -> PlPath {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        PlPath::new(self.label, vertices)
    }

    /// Exact test whether `x` lies on the trace.
    pub fn contains(&self, x: &Point) -> bool {
        self.segments().any(|s| s.contains(x))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub start: Point,
    pub end: Point,
    /// Indexed by `PathLabel::index`.
    pub paths: [PlPath; 3],
}

impl Instance {
    pub fn new(start: Point, end: Point, a: Vec<Point>, b: Vec<Point>, c: Vec<Point>) -> Self {
        Instance {
            start,
            end,
            paths: [
                PlPath::new(PathLabel::A, a),
                PlPath::new(PathLabel::B, b),
                PlPath::new(PathLabel::C, c),
            ],
        }
    }

    pub fn path(&self, label: PathLabel) -> &PlPath {
        &self.paths[label.index()]
    }

    pub fn segment_count(&self) -> usize {
        self.paths.iter().map(PlPath::segment_count).sum()
    }

    /// Labels of every trace containing `x`.
    pub fn traces_through(&self, x: &Point) -> Vec<PathLabel> {
        self.paths
            .iter()
            .filter(|p| p.contains(x))
            .map(|p| p.label)
            .collect()
    }
}

/// Reference to one segment of one path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SegmentRef {
    pub path: PathLabel,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    EndpointsCoincide,
    PathTooShort { path: PathLabel },
    RepeatedVertex { path: PathLabel, index: usize },
    WrongStart { path: PathLabel },
    WrongEnd { path: PathLabel },
    Overlap { first: SegmentRef, second: SegmentRef },
    /// Two segments meet at a point that is an endpoint of at least one of
    /// them and is not an allowed shared vertex.
    NonTransversal { first: SegmentRef, second: SegmentRef, at: String },
    TriplePoint { at: String, segments: Vec<SegmentRef> },
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Number of transversal double points found.
    pub crossings: usize,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the general-position requirements: only isolated transversal
/// double points interior to both segments, no triple points, no bend on
/// another segment, and the two endpoints shared only as path endpoints.
pub fn validate_general_position(inst: &Instance) -> ValidationReport {
    let mut report = ValidationReport::default();
    if inst.start == inst.end {
        report.violations.push(Violation::EndpointsCoincide);
    }
    let mut shape_ok = true;
    for path in &inst.paths {
        if path.vertices.len() < 2 {
            report.violations.push(Violation::PathTooShort { path: path.label });
            shape_ok = false;
            continue;
        }
        for (i, w) in path.vertices.windows(2).enumerate() {
            if w[0] == w[1] {
                report.violations.push(Violation::RepeatedVertex {
                    path: path.label,
                    index: i + 1,
                });
                shape_ok = false;
            }
        }
        if path.start() != &inst.start {
            report.violations.push(Violation::WrongStart { path: path.label });
        }
        if path.end() != &inst.end {
            report.violations.push(Violation::WrongEnd { path: path.label });
        }
    }
    if !shape_ok {
        return report;
    }

    let segs: Vec<(SegmentRef, Segment, usize)> = inst
        .paths
        .iter()
        .flat_map(|p| {
            let n = p.segment_count();
            p.segments().enumerate().map(move |(index, s)| {
                (
                    SegmentRef {
                        path: p.label,
                        index,
                    },
                    s,
                    n,
                )
            })
        })
        .collect();

    let mut crossing_members: BTreeMap<Point, Vec<SegmentRef>> = BTreeMap::new();
    for i in 0..segs.len() {
        for j in (i + 1)..segs.len() {
            let (r1, s1, n1) = &segs[i];
            let (r2, s2, n2) = &segs[j];
            match segment_intersect(s1, s2) {
                Intersection::None => {}
                Intersection::Overlap => report.violations.push(Violation::Overlap {
                    first: *r1,
                    second: *r2,
                }),
                Intersection::Point {
                    at,
                    interior_first: true,
                    interior_second: true,
                } => {
                    let members = crossing_members.entry(at).or_default();
                    for r in [r1, r2] {
                        if !members.contains(r) {
                            members.push(*r);
                        }
                    }
                }
                Intersection::Point { at, .. } => {
                    if !allowed_touch(inst, (*r1, s1, *n1), (*r2, s2, *n2), &at) {
                        report.violations.push(Violation::NonTransversal {
                            first: *r1,
                            second: *r2,
                            at: at.to_string(),
                        });
                    }
                }
            }
        }
    }
    for (at, members) in crossing_members {
        if members.len() > 2 {
            report.violations.push(Violation::TriplePoint {
                at: at.to_string(),
                segments: members,
            });
        } else {
            report.crossings += 1;
        }
    }
    report
}

/// Endpoint contacts that general position permits: consecutive segments
/// of one path meeting at their shared bend, and first (last) segments of
/// distinct paths meeting at the start (end) point.
fn allowed_touch(
    inst: &Instance,
    (r1, s1, n1): (SegmentRef, &Segment, usize),
    (r2, s2, n2): (SegmentRef, &Segment, usize),
    at: &Point,
) -> bool {
    if r1.path == r2.path {
        let (lo, hi, slo, shi) = if r1.index < r2.index {
            (r1.index, r2.index, s1, s2)
        } else {
            (r2.index, r1.index, s2, s1)
        };
        return hi == lo + 1 && at == &slo.q && at == &shi.p;
    }
    if at == &inst.start {
        return r1.index == 0 && r2.index == 0 && &s1.p == at && &s2.p == at;
    }
    if at == &inst.end {
        return r1.index + 1 == n1 && r2.index + 1 == n2 && &s1.q == at && &s2.q == at;
    }
    false
}
