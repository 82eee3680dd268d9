//! Finite stages of a three-path arrangement whose strongly sheltered walk
//! runs back and forth ever closer to a straight central line.
//!
//! Stages are built in a unit frame where the central line runs from
//! `Q = (0, 0)` to `T = (1, 0)` and every loop hangs below it; the result
//! is then carried to the requested central line by a similarity.
//!
//! Each generation adds standard turning loops whose horizontal parts are
//! hooked into one another and connect the exceptional leftmost b-loop to
//! the open c-loop near `T`. The vertical part of every turning loop sits
//! inside a b-loop; where a later horizontal part passes through such a
//! b-loop the old vertical strands bulge out between the new horizontal
//! strands (clover figures).

mod concat;
mod layout;
mod metrics;

pub use concat::{
    arc_at, arc_param, cantor_concatenate, sampled_trace_distance, simplify_polyline,
    validate_concat, ConcatError, ConcatLoop, ConcatPath, ConcatSpec, Piece, PieceKind,
};
pub use metrics::{oscillation_metrics, OscillationError, OscillationReport, Sweep};

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::geometry::{
    cross, dot, rat, validate_general_position, Instance, PathLabel, Point, Rational, Segment,
    Violation,
};

pub(crate) fn ser_rat<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub(crate) fn ser_point<S: Serializer>(p: &Point, s: S) -> Result<S::Ok, S::Error> {
    [p.x.to_string(), p.y.to_string()].serialize(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenerationParams {
    pub n_generations: usize,
    /// The segment `[T, Q]`: `p` is `T`, `q` is `Q`.
    #[serde(serialize_with = "ser_segment")]
    pub central_line: Segment,
    /// Unit-frame abscissa of the right strand of the exceptional leftmost
    /// b-loop; the first-generation loop and `Q` sit to its left.
    #[serde(serialize_with = "ser_rat")]
    pub left_margin: Rational,
    /// Depth of the horizontal parts of generation `g` (index `g - 1`).
    #[serde(serialize_with = "ser_rats")]
    pub heights: Vec<Rational>,
    /// Horizontal scale of generation `g` (index `g - 1`); strand widths and
    /// margins are fixed fractions of it.
    #[serde(serialize_with = "ser_rats")]
    pub widths: Vec<Rational>,
    /// Fraction of each vertical part covered by its b-loop.
    #[serde(serialize_with = "ser_rat")]
    pub b_loop_coverage: Rational,
}

fn ser_segment<S: Serializer>(seg: &Segment, s: S) -> Result<S::Ok, S::Error> {
    [
        [seg.p.x.to_string(), seg.p.y.to_string()],
        [seg.q.x.to_string(), seg.q.y.to_string()],
    ]
    .serialize(s)
}

fn ser_rats<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    v.iter().map(|r| r.to_string()).collect::<Vec<_>>().serialize(s)
}

/// Default height of generation `g`: `(3/4) (1/2)^g`.
pub fn default_height(g: usize) -> Rational {
    rat(3, 4) / pow2(g)
}

/// Default width of generation `g`: `(1/2)^g`.
pub fn default_width(g: usize) -> Rational {
    Rational::from_integer(1.into()) / pow2(g)
}

fn pow2(g: usize) -> Rational {
    Rational::from_integer(num_bigint::BigInt::from(1) << g)
}

impl GenerationParams {
    pub fn new(n_generations: usize) -> Self {
        GenerationParams {
            n_generations,
            central_line: Segment::new(Point::from_ints(1, 0), Point::from_ints(0, 0)),
            left_margin: rat(3, 32),
            heights: (1..=n_generations).map(default_height).collect(),
            widths: (1..=n_generations).map(default_width).collect(),
            b_loop_coverage: rat(4, 5),
        }
    }

    /// Height of generation `g`, counted from 1.
    pub fn height(&self, g: usize) -> &Rational {
        &self.heights[g - 1]
    }

    pub fn width(&self, g: usize) -> &Rational {
        &self.widths[g - 1]
    }

    pub fn validate(&self) -> Result<(), StageError> {
        let bad = |msg: String| Err(StageError::InvalidParams(msg));
        let n = self.n_generations;
        if n == 0 {
            return bad("at least one generation is required".into());
        }
        if self.heights.len() != n || self.widths.len() != n {
            return bad("one height and one width per generation are required".into());
        }
        let zero = Rational::from_integer(0.into());
        let one = Rational::from_integer(1.into());
        let cov = &self.b_loop_coverage;
        if cov <= &zero || cov >= &one {
            return bad("b-loop coverage must lie strictly between 0 and 1".into());
        }
        if self.heights.iter().chain(&self.widths).any(|v| v <= &zero) {
            return bad("heights and widths must be positive".into());
        }
        // The horizontal band of the next generation, including its
        // turning-around disks, has to fit under the b-loops of this one.
        let floor = cov - (&one - cov) / Rational::from_integer(8.into());
        for g in 1..n {
            let (h, next) = (&self.heights[g - 1], &self.heights[g]);
            if next * rat(19, 16) >= &floor * h {
                return bad(format!("height of generation {} is too large", g + 1));
            }
            let (w, wn) = (&self.widths[g - 1], &self.widths[g]);
            if wn > w || wn * Rational::from_integer(4.into()) < *w {
                return bad(format!("width of generation {} is not about half the previous", g + 1));
            }
        }
        if self.left_margin <= zero || self.left_margin >= rat(1, 4) {
            return bad("left margin must lie in (0, 1/4)".into());
        }
        if self.central_line.p == self.central_line.q {
            return bad("central line is degenerate".into());
        }
        Ok(())
    }

    /// Maps a unit-frame point onto the central line's frame.
    pub fn to_frame(&self, u: &Point) -> Point {
        let (t, q) = (&self.central_line.p, &self.central_line.q);
        let d = t.sub(q);
        let perp = Point::new(-d.y.clone(), d.x.clone());
        q.add(&d.scale(&u.x)).add(&perp.scale(&u.y))
    }

    /// Inverse of [`GenerationParams::to_frame`].
    pub fn to_unit(&self, x: &Point) -> Point {
        let (t, q) = (&self.central_line.p, &self.central_line.q);
        let d = t.sub(q);
        let rel = x.sub(q);
        let len2 = dot(&d, &d);
        Point::new(dot(&rel, &d) / &len2, cross(&d, &rel) / &len2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StageError {
    #[error("invalid generation parameters: {0}")]
    InvalidParams(String),
    #[error("loops of path {label} cannot be concatenated: {source}")]
    Concat { label: PathLabel, source: ConcatError },
    #[error("loop inventory does not match path labels: {0}")]
    Inventory(String),
    #[error("generated stage is not in general position: {0:?}")]
    IllegalIncidence(Box<Violation>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LoopKind {
    Straight,
    StandardTurning,
    NonStandardOpen,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoopRecord {
    pub id: usize,
    pub kind: LoopKind,
    pub label: PathLabel,
    /// Generation of a turning loop or of the loop a b-loop covers; 0 for
    /// the open loop and the exceptional leftmost b-loop.
    pub generation: usize,
    pub exceptional: bool,
    /// Unit-frame abscissa of the left vertical strand.
    #[serde(serialize_with = "ser_rat")]
    pub position: Rational,
    /// For turning loops: whose vertical part sits in the leftmost b-loop.
    pub leftmost: bool,
    /// For turning loops: the covering b-loop.
    pub covered_by: Option<usize>,
    /// For b-loops: the turning loops whose vertical parts lie inside.
    pub covers: Vec<usize>,
    /// For turning loops: the loop whose turning region sits in this loop's
    /// turning-around disk.
    pub hooks: Option<usize>,
    /// Whether the turning-around disk crosses the open loop.
    pub hooks_open_loop: bool,
    /// Earlier turning loop whose vertical part this horizontal part
    /// crosses.
    pub crosses: Option<usize>,
    pub x_region: bool,
    /// Winding number of the loop around a point between the strands of
    /// its horizontal part (turning loops) or inside it (b-loops).
    pub horizontal_winding: i64,
    /// Winding number around a point in the middle of the vertical part.
    pub vertical_winding: Option<i64>,
    /// Unit-frame outline, starting at the point where the path enters it.
    #[serde(skip)]
    pub outline: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XRegion {
    pub loop_id: usize,
    #[serde(serialize_with = "ser_point")]
    pub at: Point,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Clover {
    /// Turning loop whose vertical strands bulge out.
    pub old_loop: usize,
    /// Turning loop whose horizontal strands pass through.
    pub new_loop: usize,
    pub b_loop: usize,
    /// Unit-frame depths of the two horizontal strands.
    #[serde(serialize_with = "ser_rat")]
    pub upper: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub lower: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageLayout {
    #[serde(serialize_with = "ser_point")]
    pub p: Point,
    #[serde(serialize_with = "ser_point")]
    pub q: Point,
    #[serde(serialize_with = "ser_point")]
    pub t: Point,
    /// Unit-frame abscissa of the right strand of the leftmost b-loop.
    #[serde(serialize_with = "ser_rat")]
    pub left_turn: Rational,
    /// Unit-frame abscissa of the left strand of the open loop.
    #[serde(serialize_with = "ser_rat")]
    pub right_turn: Rational,
    /// Points closer than this to the central line (unit frame) belong to
    /// the central tangle rather than to the oscillating part.
    #[serde(serialize_with = "ser_rat")]
    pub central_band: Rational,
}

#[derive(Debug, Clone, Serialize)]
pub struct StageInstance {
    pub params: GenerationParams,
    pub loops: Vec<LoopRecord>,
    pub x_regions: Vec<XRegion>,
    pub clovers: Vec<Clover>,
    pub layout: StageLayout,
    /// Unit-frame start of each path before it reaches its central-line
    /// copy, indexed by label.
    #[serde(skip)]
    pub prefixes: [Vec<Point>; 3],
    /// Unit-frame central-line copy of each path, carrying its loops.
    #[serde(skip)]
    pub bases: [Vec<Point>; 3],
    #[serde(skip)]
    pub instance: Instance,
}

impl StageInstance {
    pub fn loops_of(&self, label: PathLabel) -> impl Iterator<Item = &LoopRecord> {
        self.loops
            .iter()
            .filter(move |l| l.label == label && l.kind != LoopKind::NonStandardOpen)
    }

    pub fn turning_loops(&self, generation: usize) -> impl Iterator<Item = &LoopRecord> {
        self.loops
            .iter()
            .filter(move |l| l.kind == LoopKind::StandardTurning && l.generation == generation)
    }
}

pub fn generate_stage(params: &GenerationParams) -> Result<StageInstance, StageError> {
    params.validate()?;
    let mut stage = layout::build(params);
    stage.instance = assemble_paths(&stage)?;
    let report = validate_general_position(&stage.instance);
    if let Some(v) = report.violations.into_iter().next() {
        return Err(StageError::IllegalIncidence(Box::new(v)));
    }
    Ok(stage)
}

/// Smallest Cantor depth with room for `count` loops.
pub fn depth_for(count: usize) -> usize {
    let mut k = 0;
    while (1usize << k) - 1 < count {
        k += 1;
    }
    k
}

/// The concatenation specification of one path's central-line traversal.
pub fn concat_spec(stage: &StageInstance, label: PathLabel) -> ConcatSpec {
    let loops: Vec<ConcatLoop> = stage
        .loops_of(label)
        .map(|l| ConcatLoop::new(l.outline.clone()))
        .collect();
    ConcatSpec {
        base: stage.bases[label.index()].clone(),
        depth: depth_for(loops.len()),
        loops,
    }
}

/// Builds the three paths: each runs its prefix and then its central-line
/// copy with every loop of its label inserted once.
pub fn assemble_paths(stage: &StageInstance) -> Result<Instance, StageError> {
    let mut paths: Vec<Vec<Point>> = Vec::with_capacity(3);
    for label in PathLabel::ALL {
        for l in &stage.loops {
            let expected = match l.kind {
                LoopKind::Straight => PathLabel::B,
                LoopKind::NonStandardOpen => PathLabel::C,
                LoopKind::StandardTurning if l.label == PathLabel::B => {
                    return Err(StageError::Inventory(format!("turning loop {} labelled b", l.id)));
                }
                LoopKind::StandardTurning => l.label,
            };
            if l.label != expected {
                return Err(StageError::Inventory(format!("loop {} has label {}", l.id, l.label)));
            }
        }
        let spec = concat_spec(stage, label);
        let joined = cantor_concatenate(&spec).map_err(|source| StageError::Concat { label, source })?;
        if joined.loop_order().len() != spec.loops.len() {
            return Err(StageError::Inventory(format!("path {label} skips loops")));
        }
        let mut vertices = stage.prefixes[label.index()].clone();
        vertices.extend(joined.vertices);
        let vertices = simplify_polyline(&vertices);
        paths.push(vertices.iter().map(|v| stage.params.to_frame(v)).collect());
    }
    let c = paths.pop().expect("three paths");
    let b = paths.pop().expect("three paths");
    let a = paths.pop().expect("three paths");
    Ok(Instance::new(stage.layout.p.clone(), stage.layout.q.clone(), a, b, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::int;

    fn count(stage: &StageInstance, kind: LoopKind) -> usize {
        stage.loops.iter().filter(|l| l.kind == kind).count()
    }

    #[test]
    fn first_stage_inventory() {
        let s = generate_stage(&GenerationParams::new(1)).unwrap();
        assert_eq!(count(&s, LoopKind::NonStandardOpen), 1);
        assert_eq!(count(&s, LoopKind::Straight), 2);
        let turning: Vec<_> = s.turning_loops(1).collect();
        assert_eq!(turning.len(), 1);
        assert_eq!(turning[0].label, PathLabel::A);
        assert!(turning[0].hooks_open_loop);
    }

    #[test]
    fn generation_sizes_double() {
        let s = generate_stage(&GenerationParams::new(3)).unwrap();
        for g in 1..=3 {
            assert_eq!(s.turning_loops(g).count(), 1 << (g - 1), "generation {g}");
        }
        let s2 = generate_stage(&GenerationParams::new(2)).unwrap();
        assert_eq!(count(&s2, LoopKind::StandardTurning), 3);
    }

    #[test]
    fn labels_follow_the_rules() {
        let s = generate_stage(&GenerationParams::new(3)).unwrap();
        for l in &s.loops {
            match l.kind {
                LoopKind::Straight => assert_eq!(l.label, PathLabel::B),
                LoopKind::StandardTurning => assert_ne!(l.label, PathLabel::B),
                LoopKind::NonStandardOpen => assert_eq!(l.label, PathLabel::C),
            }
            if let Some(h) = l.hooks {
                assert_ne!(s.loops[h].label, l.label, "loop {} hooks {}", l.id, h);
            }
            if let Some(c) = l.crosses {
                assert_ne!(s.loops[c].label, l.label);
            }
        }
        for g in 1..=3 {
            let rightmost = s.turning_loops(g).max_by(|a, b| a.position.cmp(&b.position)).unwrap();
            assert_eq!(rightmost.label, PathLabel::A);
            assert!(rightmost.hooks_open_loop);
        }
    }

    #[test]
    fn clovers_sit_in_ordinary_b_loops() {
        let s = generate_stage(&GenerationParams::new(3)).unwrap();
        assert!(!s.clovers.is_empty());
        for c in &s.clovers {
            assert!(!s.loops[c.b_loop].exceptional);
            assert_eq!(s.loops[c.b_loop].label, PathLabel::B);
            assert!(s.loops[c.new_loop].generation > s.loops[c.old_loop].generation);
        }
    }

    #[test]
    fn orientations() {
        let s = generate_stage(&GenerationParams::new(3)).unwrap();
        for l in &s.loops {
            match l.kind {
                LoopKind::Straight => assert_eq!(l.horizontal_winding, 1),
                LoopKind::StandardTurning => {
                    assert_eq!(l.horizontal_winding, -1);
                    let expect = if l.x_region { 1 } else { -1 };
                    assert_eq!(l.vertical_winding, Some(expect));
                }
                LoopKind::NonStandardOpen => {}
            }
        }
        let crossed = s.loops.iter().filter(|l| l.x_region).count();
        assert_eq!(crossed, s.x_regions.len());
        assert!(s.loops.iter().filter(|l| l.kind == LoopKind::StandardTurning && !l.leftmost && l.generation > 1).all(|l| l.x_region));
    }

    #[test]
    fn every_loop_used_once() {
        let s = generate_stage(&GenerationParams::new(2)).unwrap();
        for label in PathLabel::ALL {
            let spec = concat_spec(&s, label);
            let joined = cantor_concatenate(&spec).unwrap();
            let mut order = joined.loop_order();
            order.sort();
            assert_eq!(order, (0..spec.loops.len()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn frame_round_trip() {
        let mut params = GenerationParams::new(1);
        params.central_line = Segment::new(Point::from_ints(3, 4), Point::from_ints(-1, 1));
        let u = Point::new(rat(2, 7), rat(-5, 3));
        assert_eq!(params.to_unit(&params.to_frame(&u)), u);
        assert_eq!(params.to_frame(&Point::from_ints(1, 0)), Point::from_ints(3, 4));
        assert_eq!(params.to_frame(&Point::from_ints(0, 0)), Point::from_ints(-1, 1));
        assert!(generate_stage(&params).is_ok());
    }

    #[test]
    fn rejects_bad_schedules() {
        assert!(matches!(generate_stage(&GenerationParams::new(0)), Err(StageError::InvalidParams(_))));
        let mut p = GenerationParams::new(2);
        p.heights[1] = p.heights[0].clone();
        assert!(generate_stage(&p).is_err());
        let mut p = GenerationParams::new(2);
        p.b_loop_coverage = int(1);
        assert!(generate_stage(&p).is_err());
        let mut p = GenerationParams::new(2);
        p.widths[1] = rat(1, 100);
        assert!(generate_stage(&p).is_err());
    }

    #[test]
    fn depth_fits_loop_count() {
        assert_eq!(depth_for(0), 0);
        assert_eq!(depth_for(1), 1);
        assert_eq!(depth_for(3), 2);
        assert_eq!(depth_for(4), 3);
    }
}
