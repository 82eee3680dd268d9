//! Extraction of a strongly sheltered walk from the start point to the end
//! point.
//!
//! In the strongly sheltered subgraph every vertex except the two endpoints
//! has even degree, so a walk that never reuses an edge can only get stuck
//! at an endpoint. If it comes back to the start, another unused edge is
//! still available there and the walk restarts on it.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::arrangement::{Arrangement, EdgeId, VertexId, VertexKind};
use crate::geometry::Point;
use crate::shelter::ShelterReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("vertex {vertex} has strongly sheltered degree {degree}, expected {expected} parity")]
    DegreeViolation {
        vertex: VertexId,
        degree: usize,
        expected: &'static str,
    },
    #[error("walk stuck at vertex {0}")]
    Stuck(VertexId),
}

#[derive(Debug, Clone)]
pub struct ShelteredSubgraph {
    pub edges: BTreeSet<EdgeId>,
    /// Strongly sheltered incident edges per vertex, ascending.
    pub adjacency: Vec<Vec<EdgeId>>,
    pub start: VertexId,
    pub end: VertexId,
}

impl ShelteredSubgraph {
    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.adjacency.len()).filter(|&v| !self.adjacency[v].is_empty())
    }
}

pub fn sheltered_subgraph(
    rep: &ShelterReport,
    arr: &Arrangement,
) -> Result<ShelteredSubgraph, TraceError> {
    let edges: BTreeSet<EdgeId> = (0..arr.edges.len()).filter(|&e| rep.strongly(e)).collect();
    let adjacency: Vec<Vec<EdgeId>> = arr
        .incident
        .iter()
        .map(|inc| inc.iter().copied().filter(|e| edges.contains(e)).collect())
        .collect();
    let sub = ShelteredSubgraph {
        edges,
        adjacency,
        start: arr.start_vertex(),
        end: arr.end_vertex(),
    };
    check_degrees(&sub)?;
    Ok(sub)
}

fn check_degrees(sub: &ShelteredSubgraph) -> Result<(), TraceError> {
    for v in 0..sub.adjacency.len() {
        let degree = sub.degree(v);
        let endpoint = v == sub.start || v == sub.end;
        if endpoint && degree.is_multiple_of(2) {
            return Err(TraceError::DegreeViolation {
                vertex: v,
                degree,
                expected: "odd",
            });
        }
        if !endpoint && degree % 2 == 1 {
            return Err(TraceError::DegreeViolation {
                vertex: v,
                degree,
                expected: "even",
            });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SwitchRule {
    /// Left the start point.
    Depart,
    /// Changed path at a crossing of two different paths.
    SwitchPaths,
    /// Continued along the same path through a self-crossing.
    StayOnPath,
    /// Only one unused edge was available.
    Continue,
    /// The walk came back to the start and was restarted; the closed
    /// circuit is not part of the result.
    Restart,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SwitchEvent {
    pub vertex: VertexId,
    pub rule: SwitchRule,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceResult {
    pub edges: Vec<EdgeId>,
    /// Vertices visited, one more than the number of edges.
    pub vertices: Vec<VertexId>,
    pub polyline: Vec<Point>,
    pub switches: Vec<SwitchEvent>,
}

/// Walks from the start vertex to the end vertex through strongly
/// sheltered edges, using each edge at most once.
pub fn trace(sub: &ShelteredSubgraph, arr: &Arrangement) -> Result<TraceResult, TraceError> {
    check_degrees(sub)?;
    let mut used: BTreeSet<EdgeId> = BTreeSet::new();
    let mut switches = Vec::new();
    let mut edges: Vec<EdgeId> = Vec::new();
    let mut vertices = vec![sub.start];
    let mut at = sub.start;
    let mut arrived_by: Option<EdgeId> = None;

    loop {
        if at == sub.end && arrived_by.is_some() {
            break;
        }
        let free: Vec<EdgeId> = sub.adjacency[at]
            .iter()
            .copied()
            .filter(|e| !used.contains(e))
            .collect();
        if at == sub.start && arrived_by.is_some() {
            // Closed a circuit through the start; drop it and restart.
            switches.push(SwitchEvent {
                vertex: at,
                rule: SwitchRule::Restart,
            });
            edges.clear();
            vertices.truncate(1);
            arrived_by = None;
        }
        let Some(&first_free) = free.first() else {
            return Err(TraceError::Stuck(at));
        };
        let (next, rule) = match arrived_by {
            None => (first_free, SwitchRule::Depart),
            Some(prev) => choose_next(arr, at, prev, &free),
        };
        switches.push(SwitchEvent { vertex: at, rule });
        used.insert(next);
        edges.push(next);
        at = arr.opposite(next, at);
        vertices.push(at);
        arrived_by = Some(next);
    }

    let polyline = vertices
        .iter()
        .map(|&v| arr.vertices[v].location.clone())
        .collect();
    Ok(TraceResult {
        edges,
        vertices,
        polyline,
        switches,
    })
}

fn choose_next(
    arr: &Arrangement,
    at: VertexId,
    prev: EdgeId,
    free: &[EdgeId],
) -> (EdgeId, SwitchRule) {
    let owner = arr.edges[prev].owner;
    match arr.vertices[at].kind {
        VertexKind::Crossing { .. } => {
            let other = free
                .iter()
                .copied()
                .find(|&e| arr.edges[e].owner != owner)
                .unwrap_or(free[0]);
            (other, SwitchRule::SwitchPaths)
        }
        VertexKind::SelfCrossing { .. } => {
            // Prefer the edge continuing the arrival edge along the path.
            let forward = if arr.edges[prev].to == at {
                free.iter().copied().find(|&e| arr.edges[e].from == at && is_successor(arr, prev, e))
            } else {
                free.iter().copied().find(|&e| arr.edges[e].to == at && is_successor(arr, e, prev))
            };
            let same_forward = free
                .iter()
                .copied()
                .find(|&e| arr.edges[e].owner == owner && arr.edges[e].from == at);
            match forward.or(same_forward) {
                Some(e) => (e, SwitchRule::StayOnPath),
                None => (free[0], SwitchRule::Continue),
            }
        }
        _ => (free[0], SwitchRule::Continue),
    }
}

/// Whether `next` directly follows `prev` along their common path.
fn is_successor(arr: &Arrangement, prev: EdgeId, next: EdgeId) -> bool {
    let (p, n) = (&arr.edges[prev], &arr.edges[next]);
    p.owner == n.owner && p.param_end == n.param_start
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::build_arrangement;
    use crate::geometry::{Instance, PathLabel};
    use crate::shelter::{classify_all, verify_parity_lemma};

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn inst(a: &[(i64, i64)], b: &[(i64, i64)], c: &[(i64, i64)]) -> Instance {
        let conv = |v: &[(i64, i64)]| v.iter().map(|&(x, y)| p(x, y)).collect();
        Instance::new(p(0, 0), p(4, 0), conv(a), conv(b), conv(c))
    }

    fn run(i: &Instance) -> (Arrangement, TraceResult) {
        let arr = build_arrangement(i).unwrap();
        let rep = classify_all(&arr);
        assert!(verify_parity_lemma(&rep, &arr).passed());
        let sub = sheltered_subgraph(&rep, &arr).unwrap();
        let tr = trace(&sub, &arr).unwrap();
        (arr, tr)
    }

    #[test]
    fn nested_arcs_trace_middle() {
        let i = inst(
            &[(0, 0), (2, 2), (4, 0)],
            &[(0, 0), (2, 1), (4, 0)],
            &[(0, 0), (2, -1), (4, 0)],
        );
        let (arr, tr) = run(&i);
        assert_eq!(tr.polyline, i.path(PathLabel::B).vertices);
        assert!(tr.edges.iter().all(|&e| arr.edges[e].owner == PathLabel::B));
    }

    #[test]
    fn crossing_switches_paths() {
        let i = inst(
            &[(0, 0), (1, 2), (3, -2), (4, 0)],
            &[(0, 0), (1, -2), (3, 2), (4, 0)],
            &[(0, 0), (2, 5), (4, 0)],
        );
        let (arr, tr) = run(&i);
        assert!(tr.switches.iter().any(|s| s.rule == SwitchRule::SwitchPaths));
        let owners: BTreeSet<PathLabel> = tr.edges.iter().map(|&e| arr.edges[e].owner).collect();
        assert_eq!(owners.len(), 2);
        assert!(!owners.contains(&PathLabel::C));
    }

    #[test]
    fn rejects_bad_degrees() {
        let i = inst(
            &[(0, 0), (2, 2), (4, 0)],
            &[(0, 0), (2, 1), (4, 0)],
            &[(0, 0), (2, -1), (4, 0)],
        );
        let arr = build_arrangement(&i).unwrap();
        let mut rep = classify_all(&arr);
        let e = arr.path_edges[PathLabel::A.index()][0];
        rep.classes[e].strongly = true;
        assert!(matches!(
            sheltered_subgraph(&rep, &arr),
            Err(TraceError::DegreeViolation { .. })
        ));
    }
}
