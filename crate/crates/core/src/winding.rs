//! Winding numbers of points with respect to closed polylines.
//!
//! The exact routine casts a straight ray from the query point and sums the
//! signatures of the edges it crosses: +1 when the oriented angle from the
//! ray direction to the edge direction lies in (0, pi), -1 otherwise. A
//! floating-point angle sum is kept alongside as an independent cross-check.

use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::geometry::{cross, dot, int, Orientation, PlPath, Point, Segment, orient};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WindingError {
    #[error("paths do not share both endpoints")]
    EndpointMismatch,
    #[error("loop needs at least two vertices with no repeated neighbours")]
    DegenerateLoop,
    #[error("point {0} lies on the loop (segment {1})")]
    PointOnTrace(String, usize),
    #[error("ray direction {0} is not admissible for this query")]
    InadmissibleDirection(String),
}

/// Closed polyline; the edge from the last vertex back to the first is
/// implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopPolyline {
    vertices: Vec<Point>,
}

impl LoopPolyline {
    pub fn new(mut vertices: Vec<Point>) -> Result<Self, WindingError> {
        if vertices.len() >= 2 && vertices.first() == vertices.last() {
            vertices.pop();
        }
        if vertices.len() < 2 {
            return Err(WindingError::DegenerateLoop);
        }
        let n = vertices.len();
        if (0..n).any(|i| vertices[i] == vertices[(i + 1) % n]) {
            return Err(WindingError::DegenerateLoop);
        }
        Ok(LoopPolyline { vertices })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| Segment::new(self.vertices[i].clone(), self.vertices[(i + 1) % n].clone()))
    }

    pub fn reversed(&self) -> LoopPolyline {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        LoopPolyline { vertices }
    }

    /// The loop traversed `k` times.
    pub fn repeated(&self, k: usize) -> LoopPolyline {
        let vertices = self.vertices.iter().cloned().cycle().take(self.vertices.len() * k).collect();
        LoopPolyline { vertices }
    }

    /// Index of the first edge containing `x`, if any.
    pub fn edge_containing(&self, x: &Point) -> Option<usize> {
        self.edges().position(|e| e.contains(x))
    }
}

/// The loop `first⁻ * second`: walk `first` backwards from its end to its
/// start, then `second` forwards.
pub fn loop_of(first: &PlPath, second: &PlPath) -> Result<LoopPolyline, WindingError> {
    if first.start() != second.start() || first.end() != second.end() {
        return Err(WindingError::EndpointMismatch);
    }
    let mut vertices: Vec<Point> = first.vertices.iter().rev().cloned().collect();
    let inner = &second.vertices[1..second.vertices.len() - 1];
    vertices.extend(inner.iter().cloned());
    LoopPolyline::new(vertices)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Crossing {
    pub segment: usize,
    pub signature: i8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindingResult {
    pub value: i64,
    pub ray: Point,
    pub crossings: Vec<Crossing>,
}

/// Candidate ray directions `(1, 0), (1, 1), (1, 2), ...`.
pub fn candidate_directions() -> impl Iterator<Item = Point> {
    (0i64..).map(|k| Point::new(int(1), int(k)))
}

/// Whether the open ray from `x` along `dir` avoids every loop vertex.
/// Such a ray meets each edge at most once, transversally.
pub fn is_admissible(lp: &LoopPolyline, x: &Point, dir: &Point) -> bool {
    let tip = x.add(dir);
    lp.vertices.iter().all(|v| {
        orient(x, &tip, v) != Orientation::Collinear || !dot(&v.sub(x), dir).is_positive()
    })
}

/// Admissible directions from the candidate sequence, in order.
pub fn admissible_directions<'a>(
    lp: &'a LoopPolyline,
    x: &'a Point,
) -> impl Iterator<Item = Point> + 'a {
    candidate_directions().filter(move |d| is_admissible(lp, x, d))
}

/// Exact winding number of `x` with respect to `lp`.
pub fn winding_number(lp: &LoopPolyline, x: &Point) -> Result<WindingResult, WindingError> {
    check_off_trace(lp, x)?;
    let dir = admissible_directions(lp, x)
        .next()
        .expect("finitely many directions are blocked");
    Ok(signed_crossings(lp, x, dir))
}

/// Exact winding number using the given ray direction.
pub fn winding_number_along(
    lp: &LoopPolyline,
    x: &Point,
    dir: &Point,
) -> Result<WindingResult, WindingError> {
    check_off_trace(lp, x)?;
    if dir.x.is_zero() && dir.y.is_zero() || !is_admissible(lp, x, dir) {
        return Err(WindingError::InadmissibleDirection(dir.to_string()));
    }
    Ok(signed_crossings(lp, x, dir.clone()))
}

fn check_off_trace(lp: &LoopPolyline, x: &Point) -> Result<(), WindingError> {
    match lp.edge_containing(x) {
        Some(i) => Err(WindingError::PointOnTrace(x.to_string(), i)),
        None => Ok(()),
    }
}

fn signed_crossings(lp: &LoopPolyline, x: &Point, dir: Point) -> WindingResult {
    let mut crossings = Vec::new();
    let horizontal = dir.y.is_zero();
    // Sign of cross(dir, v - x): positive iff v is left of the ray line.
    let left_of = |v: &Point| {
        if horizontal {
            v.y > x.y
        } else {
            cross(&dir, &v.sub(x)).is_positive()
        }
    };
    let n = lp.vertices.len();
    for i in 0..n {
        let (p, q) = (&lp.vertices[i], &lp.vertices[(i + 1) % n]);
        // Strict straddle of the ray's supporting line.
        if left_of(p) == left_of(q) {
            continue;
        }
        let e = Segment::new(p.clone(), q.clone());
        let d = e.direction();
        let denom = cross(&dir, &d);
        let num = cross(&e.p.sub(x), &d);
        // Ray parameter num / denom must be positive.
        if num.is_positive() != denom.is_positive() {
            continue;
        }
        crossings.push(Crossing {
            segment: i,
            signature: if denom.is_positive() { 1 } else { -1 },
        });
    }
    let value = crossings.iter().map(|c| c.signature as i64).sum();
    WindingResult {
        value,
        ray: dir,
        crossings,
    }
}

/// Total turned angle around `x` divided by a full turn, in floating point.
pub fn winding_number_float(lp: &LoopPolyline, x: &Point) -> Result<f64, WindingError> {
    check_off_trace(lp, x)?;
    let (px, py) = x.to_f64();
    let pts: Vec<(f64, f64)> = lp
        .vertices
        .iter()
        .map(|v| {
            let (vx, vy) = v.to_f64();
            (vx - px, vy - py)
        })
        .collect();
    let n = pts.len();
    let mut total = 0.0;
    for i in 0..n {
        let (ax, ay) = pts[i];
        let (bx, by) = pts[(i + 1) % n];
        total += (ax * by - ay * bx).atan2(ax * bx + ay * by);
    }
    Ok(total / std::f64::consts::TAU)
}
