mod common;

use sheltered_core::arrangement::build_arrangement;
use sheltered_core::geometry::{validate_general_position, PathLabel, Point, Segment};
use sheltered_core::shelter::{classify_all, verify_parity_lemma};
use sheltered_core::sine_gen::{
    concat_spec, default_height, generate_stage, oscillation_metrics, simplify_polyline, GenerationParams, LoopKind,
    StageInstance,
};
use sheltered_core::tracer::{sheltered_subgraph, trace, TraceResult};
use sheltered_core::winding::{winding_number, LoopPolyline};

fn run(stage: &StageInstance) -> TraceResult {
    let arr = build_arrangement(&stage.instance).unwrap();
    let rep = classify_all(&arr);
    assert!(verify_parity_lemma(&rep, &arr).passed());
    trace(&sheltered_subgraph(&rep, &arr).unwrap(), &arr).unwrap()
}

#[test]
fn first_stage_counts_match_brute_force() {
    let stage = generate_stage(&GenerationParams::new(1)).unwrap();
    let inst = &stage.instance;
    assert!(common::brute_force_valid(inst));
    let arr = build_arrangement(inst).unwrap();
    let crossings = common::brute_force_crossings(inst);
    let bends: usize = inst.paths.iter().map(|p| p.vertices.len() - 2).sum();
    assert_eq!(arr.vertices.len(), 2 + bends + crossings);
    assert_eq!(arr.edges.len(), inst.segment_count() + 2 * crossings);
    assert_eq!(validate_general_position(inst).crossings, crossings);
}

#[test]
fn trace_leaves_through_the_open_loop() {
    for n in 1..=2 {
        let stage = generate_stage(&GenerationParams::new(n)).unwrap();
        let tr = run(&stage);
        let open = stage.loops.iter().find(|l| l.kind == LoopKind::NonStandardOpen).unwrap();
        let unit: Vec<Point> = tr.polyline.iter().map(|p| stage.params.to_unit(p)).collect();
        // Down the right strand of the open loop, along its bottom and up
        // its left strand.
        assert_eq!(unit[0], open.outline[0]);
        assert_eq!(unit[1], open.outline[1]);
        assert_eq!(unit[2], open.outline[2]);
        let report = oscillation_metrics(&tr, &stage).unwrap();
        assert!(report.sweep_count >= n);
        let expected: Vec<_> = (1..=n).map(default_height).collect();
        assert_eq!(report.approach_distances, expected);
    }
}

#[test]
fn first_generation_section_winds_once() {
    // The outer horizontal strand of the first turning loop lies on the
    // traced path; the loop of b and c winds around it once.
    let stage = generate_stage(&GenerationParams::new(1)).unwrap();
    let inst = &stage.instance;
    let lp = sheltered_core::winding::loop_of(inst.path(PathLabel::B), inst.path(PathLabel::C)).unwrap();
    let turning = stage.turning_loops(1).next().unwrap();
    let x = stage.params.to_frame(&turning.outline[turning.outline.len() - 2].midpoint(&turning.outline[turning.outline.len() - 3]));
    assert_eq!(winding_number(&lp, &x).unwrap().value.abs(), 1);
    let tr = run(&stage);
    assert!(tr.polyline.windows(2).any(|w| Segment::new(w[0].clone(), w[1].clone()).contains(&x)));
}

#[test]
fn loop_orientations_are_exact() {
    let stage = generate_stage(&GenerationParams::new(2)).unwrap();
    for l in &stage.loops {
        let lp = LoopPolyline::new(l.outline.clone()).unwrap();
        match l.kind {
            LoopKind::Straight => {
                let inside = l.outline[0].midpoint(&l.outline[2]);
                assert_eq!(winding_number(&lp, &inside).unwrap().value, 1, "b-loop {}", l.id);
            }
            LoopKind::StandardTurning => {
                assert_eq!(l.horizontal_winding, -1);
                assert_eq!(l.vertical_winding, Some(if l.x_region { 1 } else { -1 }));
            }
            LoopKind::NonStandardOpen => {}
        }
    }
}

#[test]
fn stage_in_a_tilted_frame() {
    let mut params = GenerationParams::new(2);
    params.central_line = Segment::new(Point::from_ints(5, 3), Point::from_ints(1, 1));
    let stage = generate_stage(&params).unwrap();
    assert_eq!(stage.instance.start, stage.layout.p);
    let tr = run(&stage);
    let report = oscillation_metrics(&tr, &stage).unwrap();
    assert_eq!(report.sweep_count, 2);
}

#[test]
fn deleting_loops_leaves_the_base_arcs() {
    let stage = generate_stage(&GenerationParams::new(2)).unwrap();
    for label in PathLabel::ALL {
        let spec = concat_spec(&stage, label);
        let joined = sheltered_core::sine_gen::cantor_concatenate(&spec).unwrap();
        assert_eq!(simplify_polyline(&joined.base_only()), simplify_polyline(&spec.base));
    }
}
