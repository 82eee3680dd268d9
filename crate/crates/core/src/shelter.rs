//! Shelteredness of arrangement edges.
//!
//! A point on exactly one trace is weakly sheltered when it sits in a
//! bounded face of the union of the other two traces, sheltered when its
//! winding number with respect to the loop of the other two paths is
//! nonzero, and strongly sheltered when that winding number is odd. The
//! classification is constant along open edges, so each edge is evaluated
//! at one exact interior point.

use serde::Serialize;

use crate::arrangement::{
    build_faces, edge_representative, in_bounded_component, Arrangement, EdgeId, FaceStructure,
    VertexId, VertexKind,
};
use crate::geometry::{PathLabel, Point};
use crate::winding::{loop_of, winding_number, LoopPolyline, WindingResult};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShelterClass {
    /// Always false for open edges of a general-position arrangement.
    pub on_two_traces: bool,
    pub weakly: bool,
    pub sheltered: bool,
    pub strongly: bool,
    pub winding: WindingResult,
}

impl ShelterClass {
    pub fn flags(&self) -> (bool, bool, bool) {
        (self.weakly, self.sheltered, self.strongly)
    }
}

/// The loops and face structures needed to classify points of each trace,
/// indexed by the label of the trace being classified.
#[derive(Debug, Clone)]
pub struct ShelterContext {
    pub loops: [LoopPolyline; 3],
    pub faces: [FaceStructure; 3],
}

impl ShelterContext {
    pub fn new(arr: &Arrangement) -> Self {
        let inst = &arr.instance;
        let make = |label: PathLabel| {
            let (o1, o2) = label.others();
            let lp = loop_of(inst.path(o1), inst.path(o2))
                .expect("paths of a validated instance share endpoints");
            let fs = build_faces(&[inst.path(o1).clone(), inst.path(o2).clone()])
                .expect("traces of a validated instance do not overlap");
            (lp, fs)
        };
        let [(la, fa), (lb, fb), (lc, fc)] = PathLabel::ALL.map(make);
        ShelterContext {
            loops: [la, lb, lc],
            faces: [fa, fb, fc],
        }
    }

    /// Classifies a point lying on the trace `owner` only.
    pub fn classify_point(&self, owner: PathLabel, x: &Point) -> ShelterClass {
        let i = owner.index();
        let winding = winding_number(&self.loops[i], x)
            .expect("representative point lies off the other traces");
        let weakly = in_bounded_component(x, &self.faces[i])
            .expect("representative point lies off the other traces");
        ShelterClass {
            on_two_traces: false,
            weakly,
            sheltered: winding.value != 0,
            strongly: winding.value % 2 != 0,
            winding,
        }
    }
}

pub fn classify_edge(e: EdgeId, arr: &Arrangement, ctx: &ShelterContext) -> ShelterClass {
    let edge = &arr.edges[e];
    ctx.classify_point(edge.owner, &edge_representative(edge))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VertexSummary {
    pub strongly_incident: usize,
    pub incident: usize,
}

#[derive(Debug, Clone)]
pub struct ShelterReport {
    pub classes: Vec<ShelterClass>,
    pub vertices: Vec<VertexSummary>,
}

impl ShelterReport {
    pub fn strongly(&self, e: EdgeId) -> bool {
        self.classes[e].strongly
    }

    /// Recomputes the per-vertex counts after the classes were modified.
    pub fn refresh_summaries(&mut self, arr: &Arrangement) {
        self.vertices = summarize(&self.classes, arr);
    }
}

fn summarize(classes: &[ShelterClass], arr: &Arrangement) -> Vec<VertexSummary> {
    arr.incident
        .iter()
        .map(|inc| VertexSummary {
            strongly_incident: inc.iter().filter(|&&e| classes[e].strongly).count(),
            incident: inc.len(),
        })
        .collect()
}

pub fn classify_all(arr: &Arrangement) -> ShelterReport {
    let ctx = ShelterContext::new(arr);
    classify_all_with(arr, &ctx)
}

pub fn classify_all_with(arr: &Arrangement, ctx: &ShelterContext) -> ShelterReport {
    let classes: Vec<ShelterClass> = (0..arr.edges.len())
        .map(|e| classify_edge(e, arr, ctx))
        .collect();
    let vertices = summarize(&classes, arr);
    ShelterReport { classes, vertices }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityFailure {
    pub vertex: VertexId,
    pub kind: VertexKind,
    pub at: String,
    pub strongly_incident: usize,
    pub reason: &'static str,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ParityCheck {
    pub checked: usize,
    pub failures: Vec<ParityFailure>,
}

impl ParityCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the local parity rules at every vertex: two strongly sheltered
/// edges on different paths at a crossing, none or all four at a
/// self-crossing, one or three at an endpoint, both or neither at a bend.
pub fn verify_parity_lemma(rep: &ShelterReport, arr: &Arrangement) -> ParityCheck {
    let mut check = ParityCheck::default();
    for (v, vertex) in arr.vertices.iter().enumerate() {
        let inc = &arr.incident[v];
        let strong: Vec<EdgeId> = inc.iter().copied().filter(|&e| rep.strongly(e)).collect();
        let n = strong.len();
        let failure = match vertex.kind {
            VertexKind::Crossing { .. } => {
                if n != 2 {
                    Some("crossing must have exactly two strongly sheltered edges")
                } else if arr.edges[strong[0]].owner == arr.edges[strong[1]].owner {
                    Some("strongly sheltered edges at a crossing must lie on different paths")
                } else {
                    None
                }
            }
            VertexKind::SelfCrossing { .. } => {
                (n != 0 && n != 4).then_some("self-crossing must have none or all four")
            }
            VertexKind::EndpointA | VertexKind::EndpointB => {
                (n != 1 && n != 3).then_some("endpoint must have one or three")
            }
            VertexKind::Bend { .. } => (n == 1).then_some("bend must have both or neither"),
        };
        check.checked += 1;
        if let Some(reason) = failure {
            check.failures.push(ParityFailure {
                vertex: v,
                kind: vertex.kind,
                at: vertex.location.to_string(),
                strongly_incident: n,
                reason,
            });
        }
    }
    check
}
