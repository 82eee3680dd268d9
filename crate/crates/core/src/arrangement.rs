//! The planar graph induced by the three traces, and face structures of
//! unions of traces.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::geometry::{
    cross, int, segment_intersect, validate_general_position, Instance, Intersection,
    PathLabel, PlPath, Point, Segment, ValidationReport,
};
use crate::winding::{winding_number, LoopPolyline};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VertexKind {
    EndpointA,
    EndpointB,
    Crossing { first: PathLabel, second: PathLabel },
    SelfCrossing { path: PathLabel },
    Bend { path: PathLabel },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrVertex {
    pub location: Point,
    pub kind: VertexKind,
}

/// An open straight piece of one path between two consecutive vertices,
/// oriented along the path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrEdge {
    pub id: EdgeId,
    pub owner: PathLabel,
    pub from: VertexId,
    pub to: VertexId,
    pub segment: Segment,
    /// Position along the owner path as `segment index + fraction`.
    pub param_start: BigRational,
    pub param_end: BigRational,
}

#[derive(Debug, Error)]
pub enum ArrangementError {
    #[error("instance is not in general position ({} violations)", .0.violations.len())]
    Invalid(ValidationReport),
}

#[derive(Debug, Clone)]
pub struct Arrangement {
    pub instance: Instance,
    pub vertices: Vec<ArrVertex>,
    pub edges: Vec<ArrEdge>,
    /// Incident edge ids per vertex, ascending.
    pub incident: Vec<Vec<EdgeId>>,
    /// Edge ids of each path in traversal order, indexed by label.
    pub path_edges: [Vec<EdgeId>; 3],
}

impl Arrangement {
    pub fn start_vertex(&self) -> VertexId {
        self.vertex_of_kind(VertexKind::EndpointA)
    }

    pub fn end_vertex(&self) -> VertexId {
        self.vertex_of_kind(VertexKind::EndpointB)
    }

    fn vertex_of_kind(&self, kind: VertexKind) -> VertexId {
        self.vertices
            .iter()
            .position(|v| v.kind == kind)
            .expect("arrangement has both endpoints")
    }

    /// The endpoint of `e` other than `v`.
    pub fn opposite(&self, e: EdgeId, v: VertexId) -> VertexId {
        let edge = &self.edges[e];
        if edge.from == v {
            edge.to
        } else {
            edge.from
        }
    }

    pub fn crossing_count(&self) -> usize {
        self.vertices
            .iter()
            .filter(|v| {
                matches!(
                    v.kind,
                    VertexKind::Crossing { .. } | VertexKind::SelfCrossing { .. }
                )
            })
            .count()
    }
}

/// Exact midpoint of the edge, which lies on the owner trace only.
pub fn edge_representative(e: &ArrEdge) -> Point {
    e.segment.p.midpoint(&e.segment.q)
}

/// Point at fraction `t` of the way along the open edge.
pub fn edge_point(e: &ArrEdge, t: &BigRational) -> Point {
    e.segment.at(t)
}

/// Builds the arrangement of a general-position instance.
pub fn build_arrangement(inst: &Instance) -> Result<Arrangement, ArrangementError> {
    let report = validate_general_position(inst);
    if !report.is_valid() {
        return Err(ArrangementError::Invalid(report));
    }

    // Every segment of every path, with the interior crossing points found
    // on it: (param along segment, point, label of the other path).
    let mut segs: Vec<(PathLabel, usize, Segment)> = Vec::new();
    for p in &inst.paths {
        for (i, s) in p.segments().enumerate() {
            segs.push((p.label, i, s));
        }
    }
    let mut hits: Vec<Vec<(BigRational, Point)>> = vec![Vec::new(); segs.len()];
    let mut crossing_kind: BTreeMap<Point, VertexKind> = BTreeMap::new();
    for i in 0..segs.len() {
        for j in (i + 1)..segs.len() {
            if let Intersection::Point {
                at,
                interior_first: true,
                interior_second: true,
            } = segment_intersect(&segs[i].2, &segs[j].2)
            {
                let (li, lj) = (segs[i].0, segs[j].0);
                let kind = if li == lj {
                    VertexKind::SelfCrossing { path: li }
                } else {
                    VertexKind::Crossing {
                        first: li.min(lj),
                        second: li.max(lj),
                    }
                };
                crossing_kind.insert(at.clone(), kind);
                hits[i].push((segs[i].2.param_of(&at), at.clone()));
                hits[j].push((segs[j].2.param_of(&at), at));
            }
        }
    }

    let mut vertices: Vec<ArrVertex> = Vec::new();
    let mut index: BTreeMap<Point, VertexId> = BTreeMap::new();
    let mut vertex_for = |p: &Point, kind: VertexKind, vertices: &mut Vec<ArrVertex>| -> VertexId {
        *index.entry(p.clone()).or_insert_with(|| {
            vertices.push(ArrVertex {
                location: p.clone(),
                kind,
            });
            vertices.len() - 1
        })
    };
    vertex_for(&inst.start, VertexKind::EndpointA, &mut vertices);
    vertex_for(&inst.end, VertexKind::EndpointB, &mut vertices);

    let mut edges: Vec<ArrEdge> = Vec::new();
    let mut path_edges: [Vec<EdgeId>; 3] = Default::default();
    let mut k = 0;
    for path in &inst.paths {
        let label = path.label;
        let n = path.segment_count();
        for seg_idx in 0..n {
            let (_, _, seg) = &segs[k];
            let mut stops = std::mem::take(&mut hits[k]);
            k += 1;
            stops.sort_by(|a, b| a.0.cmp(&b.0));
            let mut chain: Vec<(BigRational, Point, VertexKind)> = Vec::with_capacity(stops.len() + 2);
            let start_kind = if seg_idx == 0 {
                VertexKind::EndpointA
            } else {
                VertexKind::Bend { path: label }
            };
            chain.push((BigRational::zero(), seg.p.clone(), start_kind));
            for (t, pt) in stops {
                let kind = crossing_kind[&pt];
                chain.push((t, pt, kind));
            }
            let end_kind = if seg_idx + 1 == n {
                VertexKind::EndpointB
            } else {
                VertexKind::Bend { path: label }
            };
            chain.push((BigRational::one(), seg.q.clone(), end_kind));

            for w in chain.windows(2) {
                let from = vertex_for(&w[0].1, w[0].2, &mut vertices);
                let to = vertex_for(&w[1].1, w[1].2, &mut vertices);
                let base = int(seg_idx as i64);
                let id = edges.len();
                edges.push(ArrEdge {
                    id,
                    owner: label,
                    from,
                    to,
                    segment: Segment::new(w[0].1.clone(), w[1].1.clone()),
                    param_start: &base + &w[0].0,
                    param_end: &base + &w[1].0,
                });
                path_edges[label.index()].push(id);
            }
        }
    }

    let mut incident = vec![Vec::new(); vertices.len()];
    for e in &edges {
        incident[e.from].push(e.id);
        incident[e.to].push(e.id);
    }
    Ok(Arrangement {
        instance: inst.clone(),
        vertices,
        edges,
        incident,
        path_edges,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FaceError {
    #[error("traces overlap along a segment")]
    Overlap,
    #[error("no traces given")]
    Empty,
    #[error("point {0} lies on a trace")]
    PointOnTrace(String),
}

pub type FaceId = usize;

#[derive(Debug, Clone)]
pub struct Face {
    pub id: FaceId,
    pub bounded: bool,
    /// Twice the signed area enclosed by the outer boundary walk; zero for
    /// the unbounded face.
    pub double_area: BigRational,
    /// Outer boundary walk, face on the left. Empty for the unbounded face.
    pub boundary: Vec<Point>,
    /// Connected component of the traces this face was cut out by.
    pub component: usize,
    bbox: Option<(Point, Point)>,
}

/// Planar subdivision of the plane by a union of traces.
#[derive(Debug, Clone)]
pub struct FaceStructure {
    pub points: Vec<Point>,
    /// Undirected graph edges as vertex pairs.
    pub edges: Vec<(usize, usize)>,
    /// `(left face, right face)` of each edge, oriented from its first to
    /// its second vertex.
    pub edge_faces: Vec<(FaceId, FaceId)>,
    pub faces: Vec<Face>,
    pub components: usize,
}

impl FaceStructure {
    pub fn unbounded_face(&self) -> FaceId {
        0
    }

    pub fn bounded_count(&self) -> usize {
        self.faces.iter().filter(|f| f.bounded).count()
    }

    /// `V - E + F`, which equals `1 + components`.
    pub fn euler_characteristic(&self) -> i64 {
        self.points.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    fn on_trace(&self, x: &Point) -> bool {
        self.edges.iter().any(|&(u, v)| {
            Segment::new(self.points[u].clone(), self.points[v].clone()).contains(x)
        })
    }

    /// Face containing `x`.
    pub fn locate(&self, x: &Point) -> Result<FaceId, FaceError> {
        if self.on_trace(x) {
            return Err(FaceError::PointOnTrace(x.to_string()));
        }
        let mut best: Option<&Face> = None;
        for f in self.faces.iter().filter(|f| f.bounded) {
            if !face_may_contain(f, x) {
                continue;
            }
            if best.is_some_and(|b| b.double_area <= f.double_area) {
                continue;
            }
            if boundary_contains(&f.boundary, x) {
                best = Some(f);
            }
        }
        Ok(best.map_or(self.unbounded_face(), |f| f.id))
    }
}

fn face_may_contain(f: &Face, x: &Point) -> bool {
    match &f.bbox {
        Some((lo, hi)) => lo.x < x.x && x.x < hi.x && lo.y < x.y && x.y < hi.y,
        None => false,
    }
}

fn boundary_contains(boundary: &[Point], x: &Point) -> bool {
    let lp = LoopPolyline::new(boundary.to_vec()).expect("face boundary is a closed walk");
    winding_number(&lp, x).map(|w| w.value != 0).unwrap_or(false)
}

/// Whether `x` lies in a bounded face of the subdivision.
pub fn in_bounded_component(x: &Point, fs: &FaceStructure) -> Result<bool, FaceError> {
    let f = fs.locate(x)?;
    Ok(fs.faces[f].bounded)
}

/// Half-edge subdivision of the union of the given traces. Traces may be
/// closed and may touch anywhere; they must not overlap.
pub fn build_faces(traces: &[PlPath]) -> Result<FaceStructure, FaceError> {
    let segs: Vec<Segment> = traces.iter().flat_map(|t| t.segments()).collect();
    if segs.is_empty() {
        return Err(FaceError::Empty);
    }
    let mut on_seg: Vec<Vec<(BigRational, Point)>> = segs
        .iter()
        .map(|s| vec![(BigRational::zero(), s.p.clone()), (BigRational::one(), s.q.clone())])
        .collect();
    for i in 0..segs.len() {
        for j in (i + 1)..segs.len() {
            match segment_intersect(&segs[i], &segs[j]) {
                Intersection::None => {}
                Intersection::Overlap => return Err(FaceError::Overlap),
                Intersection::Point { at, .. } => {
                    on_seg[i].push((segs[i].param_of(&at), at.clone()));
                    on_seg[j].push((segs[j].param_of(&at), at));
                }
            }
        }
    }

    let mut points: Vec<Point> = Vec::new();
    let mut index: BTreeMap<Point, usize> = BTreeMap::new();
    let mut edge_set: BTreeMap<(usize, usize), ()> = BTreeMap::new();
    for stops in &mut on_seg {
        stops.sort_by(|a, b| a.0.cmp(&b.0));
        stops.dedup_by(|a, b| a.0 == b.0);
        let ids: Vec<usize> = stops
            .iter()
            .map(|(_, p)| {
                *index.entry(p.clone()).or_insert_with(|| {
                    points.push(p.clone());
                    points.len() - 1
                })
            })
            .collect();
        for w in ids.windows(2) {
            edge_set.insert((w[0].min(w[1]), w[0].max(w[1])), ());
        }
    }
    let edges: Vec<(usize, usize)> = edge_set.into_keys().collect();

    // Half-edge 2k runs edges[k].0 -> edges[k].1, 2k+1 the reverse.
    let origin = |h: usize| if h.is_multiple_of(2) { edges[h / 2].0 } else { edges[h / 2].1 };
    let target = |h: usize| origin(h ^ 1);
    let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); points.len()];
    for h in 0..2 * edges.len() {
        outgoing[origin(h)].push(h);
    }
    let mut slot = vec![0usize; 2 * edges.len()];
    for (v, out) in outgoing.iter_mut().enumerate() {
        let dir = |h: usize| points[target(h)].sub(&points[v]);
        out.sort_by(|&a, &b| angle_cmp(&dir(a), &dir(b)));
        for (i, &h) in out.iter().enumerate() {
            slot[h] = i;
        }
    }
    // Face on the left: at the head, take the outgoing half-edge just
    // clockwise of the twin.
    let next = |h: usize| {
        let t = h ^ 1;
        let out = &outgoing[origin(t)];
        let i = slot[t];
        out[(i + out.len() - 1) % out.len()]
    };

    // Components by union-find over edges.
    let mut parent: Vec<usize> = (0..points.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(u, v) in &edges {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent[ru] = rv;
        }
    }
    let mut comp_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let comp: Vec<usize> = (0..points.len())
        .map(|v| {
            let r = find(&mut parent, v);
            let n = comp_of_root.len();
            *comp_of_root.entry(r).or_insert(n)
        })
        .collect();
    let components = comp_of_root.len();

    // Walk every cycle.
    let mut cycle_of = vec![usize::MAX; 2 * edges.len()];
    let mut cycles: Vec<(Vec<usize>, BigRational)> = Vec::new();
    for h0 in 0..2 * edges.len() {
        if cycle_of[h0] != usize::MAX {
            continue;
        }
        let id = cycles.len();
        let mut walk = Vec::new();
        let mut h = h0;
        loop {
            cycle_of[h] = id;
            walk.push(origin(h));
            h = next(h);
            if h == h0 {
                break;
            }
        }
        let n = walk.len();
        let mut area = BigRational::zero();
        for i in 0..n {
            area += cross(&points[walk[i]], &points[walk[(i + 1) % n]]);
        }
        cycles.push((walk, area));
    }

    // Face 0 is unbounded; every positive-area cycle is a bounded face.
    let mut faces = vec![Face {
        id: 0,
        bounded: false,
        double_area: BigRational::zero(),
        boundary: Vec::new(),
        component: usize::MAX,
        bbox: None,
    }];
    let mut face_of_cycle = vec![usize::MAX; cycles.len()];
    for (ci, (walk, area)) in cycles.iter().enumerate() {
        if area.is_positive() {
            let boundary: Vec<Point> = walk.iter().map(|&v| points[v].clone()).collect();
            let bbox = bounding_box(&boundary);
            face_of_cycle[ci] = faces.len();
            faces.push(Face {
                id: faces.len(),
                bounded: true,
                double_area: area.clone(),
                boundary,
                component: comp[walk[0]],
                bbox: Some(bbox),
            });
        }
    }

    let mut fs = FaceStructure {
        points,
        edges,
        edge_faces: Vec::new(),
        faces,
        components,
    };

    // Outer cycles of a component lie in the smallest bounded face of the
    // other components that contains them, or in the unbounded face.
    for (ci, (walk, area)) in cycles.iter().enumerate() {
        if area.is_positive() {
            continue;
        }
        let c = comp[walk[0]];
        let probe = &fs.points[walk[0]];
        let mut best: Option<&Face> = None;
        for f in fs.faces.iter().filter(|f| f.bounded) {
            if f.component == c || !face_may_contain(f, probe) {
                continue;
            }
            if best.is_some_and(|b| b.double_area <= f.double_area) {
                continue;
            }
            if boundary_contains(&f.boundary, probe) {
                best = Some(f);
            }
        }
        face_of_cycle[ci] = best.map_or(0, |f| f.id);
    }
    fs.edge_faces = (0..fs.edges.len())
        .map(|k| (face_of_cycle[cycle_of[2 * k]], face_of_cycle[cycle_of[2 * k + 1]]))
        .collect();
    Ok(fs)
}

fn bounding_box(pts: &[Point]) -> (Point, Point) {
    let mut lo = pts[0].clone();
    let mut hi = pts[0].clone();
    for p in &pts[1..] {
        if p.x < lo.x {
            lo.x = p.x.clone();
        }
        if p.y < lo.y {
            lo.y = p.y.clone();
        }
        if p.x > hi.x {
            hi.x = p.x.clone();
        }
        if p.y > hi.y {
            hi.y = p.y.clone();
        }
    }
    (lo, hi)
}

/// Counterclockwise angular order of direction vectors, starting at the
/// positive x axis.
fn angle_cmp(u: &Point, v: &Point) -> Ordering {
    let half = |w: &Point| {
        if w.y.is_positive() || (w.y.is_zero() && w.x.is_positive()) {
            0
        } else {
            1
        }
    };
    half(u).cmp(&half(v)).then_with(|| {
        let c = cross(u, v);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// A point guaranteed to lie outside every trace's bounding box.
pub fn far_point(traces: &[PlPath]) -> Point {
    let all: Vec<Point> = traces.iter().flat_map(|t| t.vertices.iter().cloned()).collect();
    let (_, hi) = bounding_box(&all);
    Point::new(hi.x + int(1), hi.y + int(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rat;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn path(label: PathLabel, pts: &[(i64, i64)]) -> PlPath {
        PlPath::new(label, pts.iter().map(|&(x, y)| p(x, y)).collect())
    }

    fn inst(a: &[(i64, i64)], b: &[(i64, i64)], c: &[(i64, i64)]) -> Instance {
        let conv = |v: &[(i64, i64)]| v.iter().map(|&(x, y)| p(x, y)).collect();
        Instance::new(p(0, 0), p(4, 0), conv(a), conv(b), conv(c))
    }

    fn degree_sum_ok(arr: &Arrangement) {
        let total: usize = arr.incident.iter().map(Vec::len).sum();
        assert_eq!(total, 2 * arr.edges.len());
        for (v, inc) in arr.vertices.iter().zip(&arr.incident) {
            let expect = match v.kind {
                VertexKind::EndpointA | VertexKind::EndpointB => 3,
                VertexKind::Crossing { .. } | VertexKind::SelfCrossing { .. } => 4,
                VertexKind::Bend { .. } => 2,
            };
            assert_eq!(inc.len(), expect, "{:?}", v);
        }
    }

    #[test]
    fn disjoint_arcs_arrangement() {
        let i = inst(
            &[(0, 0), (2, 2), (4, 0)],
            &[(0, 0), (2, 1), (4, 0)],
            &[(0, 0), (2, -1), (4, 0)],
        );
        let arr = build_arrangement(&i).unwrap();
        assert_eq!(arr.vertices.len(), 5);
        assert_eq!(arr.edges.len(), i.segment_count());
        degree_sum_ok(&arr);
    }

    #[test]
    fn single_crossing() {
        let i = inst(
            &[(0, 0), (1, 2), (3, -2), (4, 0)],
            &[(0, 0), (1, -2), (3, 2), (4, 0)],
            &[(0, 0), (2, 5), (4, 0)],
        );
        let arr = build_arrangement(&i).unwrap();
        let crossings: Vec<_> = arr
            .vertices
            .iter()
            .filter(|v| matches!(v.kind, VertexKind::Crossing { .. }))
            .collect();
        assert_eq!(crossings.len(), 1);
        assert_eq!(crossings[0].location, p(2, 0));
        degree_sum_ok(&arr);
    }

    #[test]
    fn invalid_instance_rejected() {
        let i = inst(
            &[(0, 0), (2, 0), (4, 0)],
            &[(0, 0), (1, 0), (4, 0)],
            &[(0, 0), (2, -1), (4, 0)],
        );
        assert!(matches!(build_arrangement(&i), Err(ArrangementError::Invalid(_))));
    }

    #[test]
    fn edge_orientation_follows_path() {
        let i = inst(
            &[(0, 0), (1, 2), (3, -2), (4, 0)],
            &[(0, 0), (1, -2), (3, 2), (4, 0)],
            &[(0, 0), (2, 5), (4, 0)],
        );
        let arr = build_arrangement(&i).unwrap();
        for label in PathLabel::ALL {
            let ids = &arr.path_edges[label.index()];
            assert_eq!(arr.edges[ids[0]].from, arr.start_vertex());
            assert_eq!(arr.edges[*ids.last().unwrap()].to, arr.end_vertex());
            for w in ids.windows(2) {
                assert_eq!(arr.edges[w[0]].to, arr.edges[w[1]].from);
                assert!(arr.edges[w[0]].param_end == arr.edges[w[1]].param_start);
            }
        }
    }

    #[test]
    fn representatives() {
        let e = ArrEdge {
            id: 0,
            owner: PathLabel::A,
            from: 0,
            to: 1,
            segment: Segment::new(p(0, 0), p(2, 0)),
            param_start: rat(0, 1),
            param_end: rat(1, 1),
        };
        assert_eq!(edge_representative(&e), p(1, 0));
        let e2 = ArrEdge {
            segment: Segment::new(p(0, 0), p(1, 1)),
            ..e
        };
        assert_eq!(edge_representative(&e2), Point::new(rat(1, 2), rat(1, 2)));
    }

    #[test]
    fn square_faces() {
        let sq = path(PathLabel::A, &[(0, 0), (2, 0), (2, 2), (0, 2), (0, 0)]);
        let fs = build_faces(&[sq]).unwrap();
        assert_eq!(fs.faces.len(), 2);
        assert_eq!(fs.bounded_count(), 1);
        assert_eq!(fs.euler_characteristic(), 2);
        assert!(in_bounded_component(&p(1, 1), &fs).unwrap());
        assert!(!in_bounded_component(&p(5, 5), &fs).unwrap());
        assert!(in_bounded_component(&p(1, 0), &fs).is_err());
    }

    #[test]
    fn figure_eight_faces() {
        let eight = path(PathLabel::A, &[(0, 0), (2, 2), (2, 0), (0, 2), (0, 0)]);
        let fs = build_faces(&[eight]).unwrap();
        assert_eq!(fs.faces.len(), 3);
        assert_eq!(fs.bounded_count(), 2);
        assert_eq!(fs.euler_characteristic(), 2);
    }

    #[test]
    fn lens_faces() {
        let a = path(PathLabel::A, &[(0, 0), (2, 2), (4, 0)]);
        let b = path(PathLabel::B, &[(0, 0), (2, -2), (4, 0)]);
        let fs = build_faces(&[a, b]).unwrap();
        assert_eq!(fs.faces.len(), 2);
        assert_eq!(fs.bounded_count(), 1);
        assert!(in_bounded_component(&p(2, 0), &fs).unwrap());
    }

    #[test]
    fn nested_components() {
        let outer = path(PathLabel::A, &[(0, 0), (10, 0), (10, 10), (0, 10), (0, 0)]);
        let inner = path(PathLabel::B, &[(4, 4), (6, 4), (6, 6), (4, 6), (4, 4)]);
        let tail = path(PathLabel::C, &[(20, 0), (21, 1)]);
        let fs = build_faces(&[outer, inner, tail]).unwrap();
        assert_eq!(fs.components, 3);
        assert_eq!(fs.faces.len(), 3);
        assert_eq!(fs.euler_characteristic(), 1 + 3);
        let ring = fs.locate(&p(2, 2)).unwrap();
        let core = fs.locate(&p(5, 5)).unwrap();
        assert_ne!(ring, core);
        assert!(fs.faces[ring].bounded && fs.faces[core].bounded);
        assert_eq!(fs.locate(&p(30, 30)).unwrap(), fs.unbounded_face());
        // The inner square's outside borders the ring face.
        for (k, &(u, v)) in fs.edges.iter().enumerate() {
            let (l, r) = fs.edge_faces[k];
            let (pu, pv) = (&fs.points[u], &fs.points[v]);
            if pu.x >= int(4) && pu.x <= int(6) && pv.x >= int(4) && pv.x <= int(6) && pu.y >= int(4) && pv.y >= int(4) {
                assert!([l, r].contains(&ring) && [l, r].contains(&core));
            }
        }
    }

    #[test]
    fn zero_winding_bounded_pocket() {
        // Outer square counterclockwise, then an inner clockwise curl: the
        // curl's interior is bounded yet has winding number zero.
        let s = path(
            PathLabel::A,
            &[(0, 0), (6, 0), (6, 6), (0, 6), (0, 4), (4, 4), (4, 2), (2, 2), (2, 5), (1, 5), (1, 1), (0, 0)],
        );
        let fs = build_faces(std::slice::from_ref(&s)).unwrap();
        assert_eq!(fs.bounded_count(), 3);
        let lp = LoopPolyline::new(s.vertices.clone()).unwrap();
        let pocket = p(3, 3);
        assert!(in_bounded_component(&pocket, &fs).unwrap());
        assert_eq!(winding_number(&lp, &pocket).unwrap().value, 0);
        let doubled = Point::new(rat(3, 2), rat(9, 2));
        assert_eq!(winding_number(&lp, &doubled).unwrap().value, 2);
    }
}
