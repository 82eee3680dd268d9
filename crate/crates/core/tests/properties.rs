mod common;

use proptest::prelude::*;
use sheltered_core::arrangement::build_arrangement;
use sheltered_core::geometry::{
    orient, segment_intersect, validate_general_position, Intersection, Orientation, Point, Rational, Segment,
};
use sheltered_core::shelter::{classify_all, verify_parity_lemma};
use sheltered_core::tracer::{sheltered_subgraph, trace};
use sheltered_core::winding::{
    admissible_directions, winding_number, winding_number_along, winding_number_float, LoopPolyline,
};

fn coord() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=4).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn point() -> impl Strategy<Value = Point> {
    (coord(), coord()).prop_map(|(x, y)| Point::new(x, y))
}

fn polygon() -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec(point(), 3..9)
}

fn flip(o: Orientation) -> Orientation {
    match o {
        Orientation::Ccw => Orientation::Cw,
        Orientation::Cw => Orientation::Ccw,
        Orientation::Collinear => Orientation::Collinear,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn orientation_is_antisymmetric(p in point(), q in point(), r in point()) {
        prop_assert_eq!(orient(&p, &q, &r), flip(orient(&q, &p, &r)));
        prop_assert_eq!(orient(&p, &q, &r), orient(&q, &r, &p));
    }

    #[test]
    fn intersection_is_symmetric(a in point(), b in point(), c in point(), d in point()) {
        prop_assume!(a != b && c != d);
        let s = Segment::new(a, b);
        let t = Segment::new(c, d);
        let st = segment_intersect(&s, &t);
        let ts = segment_intersect(&t, &s);
        match (st, ts) {
            (Intersection::None, Intersection::None) | (Intersection::Overlap, Intersection::Overlap) => {}
            (
                Intersection::Point { at: x, interior_first: f1, interior_second: s1 },
                Intersection::Point { at: y, interior_first: f2, interior_second: s2 },
            ) => {
                prop_assert_eq!(&x, &y);
                prop_assert_eq!((f1, s1), (s2, f2));
                prop_assert!(s.contains(&x) && t.contains(&x));
            }
            (st, ts) => prop_assert!(false, "asymmetric: {:?} vs {:?}", st, ts),
        }
    }

    #[test]
    fn validator_matches_brute_force(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let inst = common::random_candidate(&mut rng, 5);
        prop_assert_eq!(validate_general_position(&inst).is_valid(), common::brute_force_valid(&inst));
    }

    #[test]
    fn winding_matches_angle_sum(poly in polygon(), x in point()) {
        let lp = LoopPolyline::new(poly);
        prop_assume!(lp.is_ok());
        let lp = lp.unwrap();
        match winding_number(&lp, &x) {
            Ok(w) => {
                let f = winding_number_float(&lp, &x).unwrap();
                prop_assert!((f - w.value as f64).abs() < 1e-6, "exact {} float {}", w.value, f);
                let rev = winding_number(&lp.reversed(), &x).unwrap();
                prop_assert_eq!(rev.value, -w.value);
                for dir in admissible_directions(&lp, &x).skip(1).take(3) {
                    prop_assert_eq!(winding_number_along(&lp, &x, &dir).unwrap().value, w.value);
                }
                let twice = winding_number(&lp.repeated(2), &x).unwrap();
                prop_assert_eq!(twice.value, 2 * w.value);
            }
            Err(_) => prop_assert!(lp.edge_containing(&x).is_some()),
        }
    }

    #[test]
    fn parity_and_trace_on_random_instances(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let inst = common::random_instance(&mut rng, 6);
        let arr = build_arrangement(&inst).unwrap();
        let rep = classify_all(&arr);
        for c in &rep.classes {
            prop_assert!(!c.strongly || c.sheltered);
            prop_assert!(!c.sheltered || c.weakly);
        }
        let check = verify_parity_lemma(&rep, &arr);
        prop_assert!(check.passed(), "{:?}", check.failures);
        let sub = sheltered_subgraph(&rep, &arr).unwrap();
        let tr = trace(&sub, &arr).unwrap();
        prop_assert_eq!(tr.vertices.first(), Some(&arr.start_vertex()));
        prop_assert_eq!(tr.vertices.last(), Some(&arr.end_vertex()));
        let mut seen = tr.edges.clone();
        seen.sort();
        seen.dedup();
        prop_assert_eq!(seen.len(), tr.edges.len());
        prop_assert!(tr.edges.iter().all(|&e| rep.strongly(e)));
    }

    #[test]
    fn arrangement_counts_match_brute_force(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let inst = common::random_instance(&mut rng, 6);
        let arr = build_arrangement(&inst).unwrap();
        let crossings = common::brute_force_crossings(&inst);
        let bends: usize = inst.paths.iter().map(|p| p.vertices.len() - 2).sum();
        prop_assert_eq!(arr.vertices.len(), 2 + bends + crossings);
        prop_assert_eq!(arr.edges.len(), inst.segment_count() + 2 * crossings);
    }
}
