//! Back-and-forth runs of a traced path between the two turning regions.

use num_traits::Signed;
use serde::Serialize;
use thiserror::Error;

use super::{ser_point, ser_rat, StageInstance};
use crate::geometry::{Point, Rational};
use crate::tracer::TraceResult;

/// One run from the right turning region to the left one and back.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sweep {
    /// Trace vertex indices of the last right-region vertex before the run
    /// and the first right-region vertex after it.
    pub first_vertex: usize,
    pub last_vertex: usize,
    #[serde(serialize_with = "ser_point")]
    pub start: Point,
    #[serde(serialize_with = "ser_point")]
    pub end: Point,
    /// Leftmost point reached, in the central line's unit frame.
    #[serde(serialize_with = "ser_rat")]
    pub leftmost: Rational,
    /// Smallest distance of a horizontal piece of the run to the central
    /// line, in units of the central line's length.
    #[serde(serialize_with = "ser_rat")]
    pub approach_distance: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OscillationReport {
    pub sweep_count: usize,
    #[serde(serialize_with = "ser_rats")]
    pub approach_distances: Vec<Rational>,
    pub sweeps: Vec<Sweep>,
}

fn ser_rats<S: serde::Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    v.iter().map(|r| r.to_string()).collect::<Vec<_>>().serialize(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OscillationError {
    #[error("trace has no vertices")]
    EmptyTrace,
    #[error("trace never reaches the left turning region")]
    NoLeftTurn,
    #[error("trace never runs from the right turning region to the left one and back")]
    NoSweeps,
}

pub fn oscillation_metrics(
    tr: &TraceResult,
    stage: &StageInstance,
) -> Result<OscillationReport, OscillationError> {
    if tr.polyline.is_empty() {
        return Err(OscillationError::EmptyTrace);
    }
    let layout = &stage.layout;
    let unit: Vec<Point> = tr.polyline.iter().map(|x| stage.params.to_unit(x)).collect();
    // The part near the central line is the tangle of copies; stop there.
    let band = -&layout.central_band;
    let stop = unit
        .iter()
        .skip(1)
        .position(|u| u.y >= band)
        .map_or(unit.len(), |i| i + 2);
    let unit = &unit[..stop];

    let is_left = |u: &Point| u.x <= layout.left_turn;
    let is_right = |u: &Point| u.x >= layout.right_turn;
    if !unit.iter().any(is_left) {
        return Err(OscillationError::NoLeftTurn);
    }

    let mut sweeps = Vec::new();
    let mut last_right: Option<usize> = None;
    let mut open: Option<usize> = None;
    for (i, u) in unit.iter().enumerate() {
        if is_right(u) {
            if let Some(start) = open.take() {
                sweeps.push(sweep(tr, unit, start, i));
            }
            last_right = Some(i);
        } else if is_left(u) && open.is_none() {
            open = last_right;
        }
    }
    if sweeps.is_empty() {
        return Err(OscillationError::NoSweeps);
    }
    Ok(OscillationReport {
        sweep_count: sweeps.len(),
        approach_distances: sweeps.iter().map(|s| s.approach_distance.clone()).collect(),
        sweeps,
    })
}

fn sweep(tr: &TraceResult, unit: &[Point], first: usize, last: usize) -> Sweep {
    let run = &unit[first..=last];
    let leftmost = run.iter().map(|u| u.x.clone()).min().expect("run is non-empty");
    let approach_distance = run
        .windows(2)
        .filter(|w| w[0].y == w[1].y)
        .map(|w| w[0].y.abs())
        .min()
        .unwrap_or_else(|| run.iter().map(|u| u.y.abs()).min().expect("run is non-empty"));
    Sweep {
        first_vertex: first,
        last_vertex: last,
        start: tr.polyline[first].clone(),
        end: tr.polyline[last].clone(),
        leftmost,
        approach_distance,
    }
}
