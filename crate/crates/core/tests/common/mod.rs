//! Shared helpers for the integration suites: a seeded generator of
//! general-position instances and an independent integer-arithmetic
//! crossing counter.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sheltered_core::geometry::{validate_general_position, Instance, Point, Rational};

pub const DENOMS: [i64; 5] = [1, 2, 3, 4, 5];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rational<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> Rational {
    let d = DENOMS[rng.gen_range(0..DENOMS.len())];
    Rational::new(rng.gen_range(lo * d..=hi * d).into(), d.into())
}

pub fn random_point<R: Rng>(rng: &mut R) -> Point {
    Point::new(random_rational(rng, -4, 16), random_rational(rng, -8, 8))
}

/// Random three-path instance from `(0, 0)` to `(12, 0)` with at most
/// `max_segments` segments per path, not necessarily in general position.
pub fn random_candidate<R: Rng>(rng: &mut R, max_segments: usize) -> Instance {
    let a = Point::from_ints(0, 0);
    let b = Point::from_ints(12, 0);
    let mut path = || {
        let k = rng.gen_range(1..max_segments);
        let mut v = vec![a.clone()];
        v.extend((0..k).map(|_| random_point(rng)));
        v.push(b.clone());
        v
    };
    let (pa, pb, pc) = (path(), path(), path());
    Instance::new(a.clone(), b.clone(), pa, pb, pc)
}

/// Rejection-samples a general-position instance.
pub fn random_instance<R: Rng>(rng: &mut R, max_segments: usize) -> Instance {
    loop {
        let inst = random_candidate(rng, max_segments);
        if validate_general_position(&inst).is_valid() {
            return inst;
        }
    }
}

pub fn instances(seed: u64, count: usize, max_segments: usize) -> Vec<Instance> {
    let mut r = rng(seed);
    (0..count).map(|_| random_instance(&mut r, max_segments)).collect()
}

/// Integer coordinates after scaling by the common denominator.
pub fn scaled(inst: &Instance) -> Vec<Vec<(i128, i128)>> {
    let mut l = BigInt::one();
    for p in &inst.paths {
        for v in &p.vertices {
            for c in [&v.x, &v.y] {
                l = num_integer_lcm(&l, c.denom());
            }
        }
    }
    inst.paths
        .iter()
        .map(|p| {
            p.vertices
                .iter()
                .map(|v| {
                    let f = |c: &Rational| (c * Rational::from_integer(l.clone())).to_integer().to_i128().expect("fits in i128");
                    (f(&v.x), f(&v.y))
                })
                .collect()
        })
        .collect()
}

fn num_integer_lcm(a: &BigInt, b: &BigInt) -> BigInt {
    let mut x = a.clone();
    let mut y = b.clone();
    while y != BigInt::from(0) {
        let t = &x % &y;
        x = y;
        y = t;
    }
    a / x * b
}

fn orient(p: (i128, i128), q: (i128, i128), r: (i128, i128)) -> i128 {
    ((q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0)).signum()
}

/// Number of proper crossings between segments of the instance, counted by
/// brute force over all segment pairs.
pub fn brute_force_crossings(inst: &Instance) -> usize {
    let paths = scaled(inst);
    let segs: Vec<((i128, i128), (i128, i128))> = paths
        .iter()
        .flat_map(|p| p.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>())
        .collect();
    let mut n = 0;
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            let (p1, p2) = segs[i];
            let (q1, q2) = segs[j];
            let d1 = orient(p1, p2, q1);
            let d2 = orient(p1, p2, q2);
            let d3 = orient(q1, q2, p1);
            let d4 = orient(q1, q2, p2);
            if d1 * d2 < 0 && d3 * d4 < 0 {
                n += 1;
            }
        }
    }
    n
}

/// Whether the instance is in general position, decided with integer
/// predicates: segments meet only in proper crossings, at shared path
/// joints, or at the two endpoints; no point lies on three segments.
pub fn brute_force_valid(inst: &Instance) -> bool {
    let paths = scaled(inst);
    let a = paths[0][0];
    let b = *paths[0].last().unwrap();
    if a == b {
        return false;
    }
    let mut segs = Vec::new();
    for (pi, p) in paths.iter().enumerate() {
        if p.len() < 2 || p[0] != a || *p.last().unwrap() != b {
            return false;
        }
        if p.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        let last = p.len() - 2;
        for (si, w) in p.windows(2).enumerate() {
            segs.push((pi, si, last, w[0], w[1]));
        }
    }
    let on = |p: (i128, i128), q: (i128, i128), x: (i128, i128)| {
        orient(p, q, x) == 0 && x.0 >= p.0.min(q.0) && x.0 <= p.0.max(q.0) && x.1 >= p.1.min(q.1) && x.1 <= p.1.max(q.1)
    };
    let mut crossings: Vec<(i128, i128, i128, i128, i128, i128)> = Vec::new();
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            let (pi, si, li, p1, p2) = segs[i];
            let (pj, sj, lj, q1, q2) = segs[j];
            let d1 = orient(p1, p2, q1);
            let d2 = orient(p1, p2, q2);
            let d3 = orient(q1, q2, p1);
            let d4 = orient(q1, q2, p2);
            if d1 * d2 < 0 && d3 * d4 < 0 {
                // Crossing point as an exact fraction (numerators over a
                // common denominator), for the triple-point check.
                let den = (p2.0 - p1.0) * (q2.1 - q1.1) - (p2.1 - p1.1) * (q2.0 - q1.0);
                let t = (q1.0 - p1.0) * (q2.1 - q1.1) - (q1.1 - p1.1) * (q2.0 - q1.0);
                let x = p1.0 * den + t * (p2.0 - p1.0);
                let y = p1.1 * den + t * (p2.1 - p1.1);
                let g = gcd3(x, y, den);
                let s = if den < 0 { -1 } else { 1 };
                crossings.push((x / g * s, y / g * s, den / g * s, i as i128, j as i128, 0));
                continue;
            }
            if d1 == 0 && d2 == 0 {
                // Collinear: any contact beyond a single shared endpoint is
                // an overlap.
                let touching = [q1, q2].iter().filter(|&&x| on(p1, p2, x)).count()
                    + [p1, p2].iter().filter(|&&x| on(q1, q2, x)).count();
                if touching == 0 {
                    continue;
                }
                let shared = [p1, p2].iter().filter(|x| **x == q1 || **x == q2).count();
                if !(touching == 2 && shared == 1 && !(on(p1, p2, q1) && on(p1, p2, q2)) && !(on(q1, q2, p1) && on(q1, q2, p2))) {
                    return false;
                }
            }
            let contacts: Vec<(i128, i128)> = [q1, q2]
                .iter()
                .filter(|&&x| on(p1, p2, x))
                .chain([p1, p2].iter().filter(|&&x| on(q1, q2, x)))
                .copied()
                .collect();
            for x in contacts {
                let joint = pi == pj && sj == si + 1 && x == p2 && x == q1;
                let start = x == a && si == 0 && sj == 0;
                let end = x == b && si == li && sj == lj;
                if !(joint || start || end) {
                    return false;
                }
            }
        }
    }
    crossings.sort();
    !crossings.windows(2).any(|w| (w[0].0, w[0].1, w[0].2) == (w[1].0, w[1].1, w[1].2))
}

fn gcd3(a: i128, b: i128, c: i128) -> i128 {
    fn g(mut x: i128, mut y: i128) -> i128 {
        x = x.abs();
        y = y.abs();
        while y != 0 {
            let t = x % y;
            x = y;
            y = t;
        }
        x
    }
    g(g(a, b), c).max(1)
}
