//! Unit-frame placement of the loops of a stage.
//!
//! Depths are measured downward from the central line `y = 0`. The paths
//! run along offset copies of the central line above it: the b-loops hang
//! from `y = e`, b returns along `y = 2e`, a runs along `y = 3e` and c along
//! `y = 4e`, with `e` far below every feature size.

use num_traits::{One, Zero};

use super::{Clover, GenerationParams, LoopKind, LoopRecord, StageInstance, StageLayout, XRegion};
use crate::geometry::{rat, Instance, PathLabel, Point, Rational};
use crate::winding::{winding_number, LoopPolyline};

fn pt(x: &Rational, y: &Rational) -> Point {
    Point::new(x.clone(), y.clone())
}

fn frac(v: &Rational, n: i64, d: i64) -> Rational {
    v * rat(n, d)
}

fn opposite(label: PathLabel) -> PathLabel {
    match label {
        PathLabel::A => PathLabel::C,
        PathLabel::C => PathLabel::A,
        PathLabel::B => PathLabel::B,
    }
}

/// Feature sizes of one generation.
#[derive(Debug, Clone)]
pub(crate) struct Scale {
    /// Depth of the upper boundary of the turning-around disks.
    pub h: Rational,
    /// Offset from `h` to the inner horizontal strand.
    pub d: Rational,
    /// Gap between the inner and outer horizontal strands.
    pub s: Rational,
    /// Gap between the two vertical strands.
    pub t: Rational,
    /// Gap between a vertical strand and the side of its b-loop.
    pub m: Rational,
    /// How far clover lobes reach out of the vertical strands.
    pub lobe: Rational,
    /// Gap between a hooked strand and the side of the disk around it.
    pub dx: Rational,
}

impl Scale {
    pub fn of(params: &GenerationParams, g: usize) -> Scale {
        let e = params.width(g) / Rational::from_integer(256.into());
        let h = params.height(g).clone();
        let d = frac(&h, 1, 16);
        Scale {
            s: d.clone(),
            d,
            h,
            t: frac(&e, 4, 1),
            m: frac(&e, 2, 1),
            lobe: frac(&e, 4, 1),
            dx: frac(&e, 2, 1),
        }
    }

    fn inner(&self) -> Rational {
        &self.h + &self.d
    }

    fn outer(&self) -> Rational {
        &self.h + &self.d + &self.s
    }

    fn disk_bottom(&self) -> Rational {
        &self.h + frac(&self.d, 2, 1) + &self.s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Target {
    Open,
    Loop(usize),
}

#[derive(Debug, Clone)]
struct Turning {
    gen: usize,
    label: PathLabel,
    pos: Rational,
    /// Sits in the leftmost b-loop (generations from 2 on).
    column: bool,
    /// Carries an x-crossing.
    crossed: bool,
    target: Target,
    crosses: Option<usize>,
    beta: Option<usize>,
}

#[derive(Debug, Clone)]
struct Straight {
    gen: usize,
    exceptional: bool,
    left: Rational,
    right: Rational,
    bottom: Rational,
    rise: Rational,
    covers: Vec<usize>,
}

#[derive(Debug, Clone)]
struct Plan {
    turning: Vec<Turning>,
    straight: Vec<Straight>,
    clovers: Vec<(usize, usize)>,
}

fn straight_for(params: &GenerationParams, gen: usize, left: Rational, right: Rational) -> Straight {
    let h = params.height(gen);
    let cov = &params.b_loop_coverage;
    let one = Rational::one();
    Straight {
        gen,
        exceptional: false,
        left,
        right,
        bottom: cov * h,
        rise: (&one - cov) * h / Rational::from_integer(8.into()),
        covers: Vec::new(),
    }
}

/// Chooses how many loops of the new generation go into each gap between
/// older vertical parts, and their labels.
///
/// The horizontal parts form one chain from the leftmost b-loop to the open
/// loop. The last loop of a gap crosses the next older vertical part, so it
/// must carry the other label; the next gap then has to start with the
/// label of that older loop, because hooked loops differ.
fn gap_labels(old_labels: &[PathLabel], widths: &[Rational], total: usize) -> Vec<Vec<PathLabel>> {
    let m = old_labels.len();
    let last: Vec<PathLabel> = (0..=m)
        .map(|j| if j == m { PathLabel::A } else { opposite(old_labels[j]) })
        .collect();
    let mut counts: Vec<usize> = (0..=m)
        .map(|j| match j {
            0 => 1,
            _ if old_labels[j - 1] == last[j] => 1,
            _ => 2,
        })
        .collect();
    let mut surplus = total.saturating_sub(counts.iter().sum());
    while surplus >= 2 {
        let j = (1..=m).fold(0, |best, j| {
            let room = |k: usize| &widths[k] / Rational::from_integer((counts[k] as i64 + 1).into());
            if room(j) > room(best) {
                j
            } else {
                best
            }
        });
        counts[j] += 2;
        surplus -= 2;
    }
    counts[0] += surplus;
    (0..=m)
        .map(|j| {
            let k = counts[j];
            (0..k)
                .map(|i| if (k - 1 - i).is_multiple_of(2) { last[j] } else { opposite(last[j]) })
                .collect()
        })
        .collect()
}

fn plan(params: &GenerationParams) -> Plan {
    let n = params.n_generations;
    let lm = &params.left_margin;
    let one = Rational::one();
    let s1 = Scale::of(params, 1);
    let first = frac(lm, 1, 6);

    let mut turning = vec![Turning {
        gen: 1,
        label: PathLabel::A,
        pos: first.clone(),
        column: false,
        crossed: false,
        target: Target::Open,
        crosses: None,
        beta: Some(1),
    }];
    let beta0_left = &first + &s1.t + &s1.m + frac(lm, 1, 24);
    let mut beta0 = straight_for(params, 1, beta0_left.clone(), lm.clone());
    beta0.gen = 0;
    beta0.exceptional = true;
    let mut beta1 = straight_for(params, 1, &first - &s1.m, &first + &s1.t + &s1.m);
    beta1.covers.push(0);
    let mut straight = vec![beta0, beta1];
    let mut clovers = Vec::new();

    // Middle loops of earlier generations, sorted by position.
    let mut middle: Vec<usize> = Vec::new();
    let mut column_x = &beta0_left + frac(lm, 1, 24);
    for g in 2..=n {
        let sc = Scale::of(params, g);
        let mut bounds = vec![lm.clone()];
        bounds.extend(middle.iter().map(|&i| turning[i].pos.clone()));
        bounds.push(one.clone());
        let widths: Vec<Rational> = bounds.windows(2).map(|w| &w[1] - &w[0]).collect();
        let old_labels: Vec<PathLabel> = middle.iter().map(|&i| turning[i].label).collect();
        let labels = gap_labels(&old_labels, &widths, (1usize << (g - 1)) - 1);

        let col = turning.len();
        turning.push(Turning {
            gen: g,
            label: opposite(labels[0][0]),
            pos: column_x.clone(),
            column: true,
            crossed: false,
            target: Target::Open,
            crosses: None,
            beta: Some(0),
        });
        straight[0].covers.push(col);
        column_x = &column_x + &sc.t + &sc.m;

        let mut chain = vec![col];
        let mut added = Vec::new();
        for (j, gap) in labels.iter().enumerate() {
            let k = Rational::from_integer((gap.len() as i64 + 1).into());
            for (i, &label) in gap.iter().enumerate() {
                let step = &widths[j] * Rational::from_integer((i as i64 + 1).into()) / &k;
                let pos = &bounds[j] + step;
                let id = turning.len();
                let crosses = (i + 1 == gap.len() && j < middle.len()).then(|| middle[j]);
                let beta = straight.len();
                let mut b = straight_for(params, g, &pos - &sc.m, &pos + &sc.t + &sc.m);
                b.covers.push(id);
                straight.push(b);
                turning.push(Turning {
                    gen: g,
                    label,
                    pos,
                    column: false,
                    crossed: true,
                    target: Target::Open,
                    crosses,
                    beta: Some(beta),
                });
                if let Some(old) = crosses {
                    clovers.push((old, id));
                }
                chain.push(id);
                added.push(id);
            }
        }
        for w in chain.windows(2) {
            turning[w[0]].target = Target::Loop(w[1]);
        }
        middle.extend(added);
        middle.sort_by(|&a, &b| turning[a].pos.cmp(&turning[b].pos));
    }
    Plan {
        turning,
        straight,
        clovers,
    }
}

pub(crate) fn build(params: &GenerationParams) -> StageInstance {
    let plan = plan(params);
    let n = params.n_generations;
    let hn = params.height(n);
    let e = hn / Rational::from_integer(64.into());
    let lm = &params.left_margin;
    let g = Geometry::new(params, &plan, e);
    let zero = Rational::zero();

    // Record ids: open loop, then b-loops, then turning loops.
    let open_id = 0;
    let straight_id = |i: usize| 1 + i;
    let turning_id = |i: usize| 1 + plan.straight.len() + i;

    let mut loops = Vec::new();
    let open = g.open_outline();
    loops.push(LoopRecord {
        id: open_id,
        kind: LoopKind::NonStandardOpen,
        label: PathLabel::C,
        generation: 0,
        exceptional: false,
        position: Rational::one(),
        leftmost: false,
        covered_by: None,
        covers: Vec::new(),
        hooks: None,
        hooks_open_loop: false,
        crosses: None,
        x_region: false,
        horizontal_winding: wind(&open, &pt(&rat(17, 16), &(-&g.open_depth / rat(2, 1)))),
        vertical_winding: None,
        outline: open,
    });
    for (i, b) in plan.straight.iter().enumerate() {
        let outline = g.straight_outline(b);
        let inside = pt(&((&b.left * rat(3, 4)) + (&b.right * rat(1, 4))), &(-&b.bottom / rat(2, 1)));
        loops.push(LoopRecord {
            id: straight_id(i),
            kind: LoopKind::Straight,
            label: PathLabel::B,
            generation: b.gen,
            exceptional: b.exceptional,
            position: b.left.clone(),
            leftmost: false,
            covered_by: None,
            covers: b.covers.iter().map(|&t| turning_id(t)).collect(),
            hooks: None,
            hooks_open_loop: false,
            crosses: None,
            x_region: false,
            horizontal_winding: wind(&outline, &inside),
            vertical_winding: None,
            outline,
        });
    }
    let mut x_regions = Vec::new();
    for (i, t) in plan.turning.iter().enumerate() {
        let sc = Scale::of(params, t.gen);
        let outline = g.turning_outline(i);
        let reach = g.reach(i);
        let between = pt(&((&t.pos + &sc.t + &reach) / rat(2, 1)), &(-(sc.inner() + &sc.s / rat(2, 1))));
        let (top, low) = g.vertical_band(i);
        let mid = pt(&(&t.pos + &sc.t / rat(2, 1)), &(-(top + low) / rat(2, 1)));
        if t.crossed {
            let (z1, z2) = g.x_band(t.gen);
            x_regions.push(XRegion {
                loop_id: turning_id(i),
                at: pt(&(&t.pos + &sc.t / rat(2, 1)), &(-(z1 + z2) / rat(2, 1))),
            });
        }
        loops.push(LoopRecord {
            id: turning_id(i),
            kind: LoopKind::StandardTurning,
            label: t.label,
            generation: t.gen,
            exceptional: false,
            position: t.pos.clone(),
            leftmost: t.column,
            covered_by: t.beta.map(straight_id),
            covers: Vec::new(),
            hooks: match t.target {
                Target::Loop(j) => Some(turning_id(j)),
                Target::Open => None,
            },
            hooks_open_loop: t.target == Target::Open,
            crosses: t.crosses.map(turning_id),
            x_region: t.crossed,
            horizontal_winding: wind(&outline, &between),
            vertical_winding: Some(wind(&outline, &mid)),
            outline,
        });
    }
    let clovers = plan
        .clovers
        .iter()
        .map(|&(old, new)| {
            let sc = Scale::of(params, plan.turning[new].gen);
            Clover {
                old_loop: turning_id(old),
                new_loop: turning_id(new),
                b_loop: straight_id(plan.turning[old].beta.expect("middle loops have b-loops")),
                upper: sc.inner(),
                lower: sc.outer(),
            }
        })
        .collect();

    let layout = StageLayout {
        p: params.to_frame(&g.p),
        q: params.to_frame(&pt(&zero, &zero)),
        t: params.to_frame(&pt(&Rational::one(), &zero)),
        left_turn: lm.clone(),
        right_turn: Rational::one(),
        central_band: hn / rat(4, 1),
    };
    let (prefixes, bases) = g.paths();
    StageInstance {
        params: params.clone(),
        loops,
        x_regions,
        clovers,
        instance: Instance::new(layout.p.clone(), layout.q.clone(), vec![], vec![], vec![]),
        layout,
        prefixes,
        bases,
    }
}

fn wind(outline: &[Point], x: &Point) -> i64 {
    let lp = LoopPolyline::new(outline.to_vec()).expect("outline has several vertices");
    winding_number(&lp, x).map(|w| w.value).unwrap_or(0)
}

/// Coordinates shared by the outline builders.
struct Geometry<'a> {
    params: &'a GenerationParams,
    plan: &'a Plan,
    e: Rational,
    p: Point,
    open_depth: Rational,
}

impl<'a> Geometry<'a> {
    fn new(params: &'a GenerationParams, plan: &'a Plan, e: Rational) -> Self {
        let open_depth = frac(params.height(1), 3, 2);
        Geometry {
            params,
            plan,
            p: pt(&rat(9, 8), &frac(&e, 3, 1)),
            e,
            open_depth,
        }
    }

    fn level(&self, k: i64) -> Rational {
        frac(&self.e, k, 1)
    }

    fn label_level(&self, label: PathLabel) -> Rational {
        match label {
            PathLabel::A => self.level(3),
            PathLabel::B => self.level(1),
            PathLabel::C => self.level(4),
        }
    }

    /// The open loop from `P` down and back up to the c copy at `T`.
    fn open_outline(&self) -> Vec<Point> {
        let d = -&self.open_depth;
        vec![
            self.p.clone(),
            pt(&rat(9, 8), &d),
            pt(&Rational::one(), &d),
            pt(&Rational::one(), &self.level(4)),
        ]
    }

    fn straight_outline(&self, b: &Straight) -> Vec<Point> {
        let top = self.level(1);
        let side = -(&b.bottom - &b.rise);
        let mid = (&b.left + &b.right) / rat(2, 1);
        vec![
            pt(&b.left, &top),
            pt(&b.left, &side),
            pt(&mid, &-&b.bottom),
            pt(&b.right, &side),
            pt(&b.right, &top),
        ]
    }

    fn x_band(&self, gen: usize) -> (Rational, Rational) {
        let h = self.params.height(gen);
        let cov = &self.params.b_loop_coverage;
        let rest = Rational::one() - cov;
        (h * (cov + &rest / rat(4, 1)), h * (cov + &rest * rat(3, 4)))
    }

    /// Depths bounding the middle of the vertical part.
    fn vertical_band(&self, i: usize) -> (Rational, Rational) {
        let t = &self.plan.turning[i];
        if t.crossed {
            (self.level(2), self.x_band(t.gen).0)
        } else {
            (Rational::zero(), self.params.height(t.gen).clone())
        }
    }

    /// Abscissa where the horizontal strands meet the turning-around disk.
    fn reach(&self, i: usize) -> Rational {
        let t = &self.plan.turning[i];
        let sc = Scale::of(self.params, t.gen);
        match t.target {
            Target::Open => Rational::one() - &sc.dx,
            Target::Loop(j) => &self.plan.turning[j].pos - &sc.dx,
        }
    }

    fn disk_right(&self, i: usize) -> Rational {
        let t = &self.plan.turning[i];
        let sc = Scale::of(self.params, t.gen);
        match t.target {
            Target::Open => Rational::one() + &sc.dx,
            Target::Loop(j) => &self.plan.turning[j].pos + &sc.t + &sc.dx,
        }
    }

    /// Horizontal bands of later generations passing through the vertical
    /// part of turning loop `i`, shallowest first.
    fn bands(&self, i: usize) -> Vec<(Rational, Rational)> {
        let mut out: Vec<(Rational, Rational)> = self
            .plan
            .clovers
            .iter()
            .filter(|&&(old, _)| old == i)
            .map(|&(_, new)| {
                let sc = Scale::of(self.params, self.plan.turning[new].gen);
                (sc.inner(), sc.s.clone())
            })
            .collect();
        out.sort();
        out
    }

    /// Outline from the basepoint on the right strand, down, around the
    /// turning-around disk and back up the left strand. The closing edge
    /// runs along the path's central-line copy.
    fn turning_outline(&self, i: usize) -> Vec<Point> {
        let t = &self.plan.turning[i];
        let sc = Scale::of(self.params, t.gen);
        let y = self.label_level(t.label);
        let left = t.pos.clone();
        let right = &t.pos + &sc.t;
        let dl = self.reach(i);
        let dr = self.disk_right(i);
        let neg = |v: &Rational| -v;
        let mut v = vec![pt(&right, &y)];
        let bands = self.bands(i);
        let third = |s: &Rational, k: i64| frac(s, k, 3);
        if t.crossed {
            let (z1, z2) = self.x_band(t.gen);
            v.push(pt(&right, &neg(&self.level(1))));
            v.push(pt(&left, &neg(&self.level(2))));
            let out = &left - &frac(&sc.lobe, 1, 1);
            for (h, s) in &bands {
                let (u, l) = (h + third(s, 1), h + third(s, 2));
                v.push(pt(&left, &neg(&u)));
                v.push(pt(&out, &neg(&u)));
                v.push(pt(&out, &neg(&l)));
                v.push(pt(&left, &neg(&l)));
            }
            v.push(pt(&left, &neg(&z1)));
            v.push(pt(&right, &neg(&z2)));
            self.push_horizontal(&mut v, &sc, &left, &right, &dl, &dr);
            v.push(pt(&left, &neg(&z2)));
            v.push(pt(&right, &neg(&z1)));
            let out = &right + &sc.lobe;
            for (h, s) in bands.iter().rev() {
                let (u, l) = (h + third(s, 1), h + third(s, 2));
                v.push(pt(&right, &neg(&l)));
                v.push(pt(&out, &neg(&l)));
                v.push(pt(&out, &neg(&u)));
                v.push(pt(&right, &neg(&u)));
            }
            v.push(pt(&right, &neg(&self.level(2))));
            v.push(pt(&left, &neg(&self.level(1))));
        } else {
            self.push_horizontal(&mut v, &sc, &left, &right, &dl, &dr);
        }
        v.push(pt(&left, &y));
        v
    }

    fn push_horizontal(
        &self,
        v: &mut Vec<Point>,
        sc: &Scale,
        left: &Rational,
        right: &Rational,
        dl: &Rational,
        dr: &Rational,
    ) {
        let (inner, outer) = (-sc.inner(), -sc.outer());
        let (top, bottom) = (-&sc.h, -sc.disk_bottom());
        v.push(pt(right, &inner));
        v.push(pt(dl, &inner));
        v.push(pt(dl, &top));
        v.push(pt(dr, &top));
        v.push(pt(dr, &bottom));
        v.push(pt(dl, &bottom));
        v.push(pt(dl, &outer));
        v.push(pt(left, &outer));
    }

    /// Prefixes and central-line copies of a, b and c.
    fn paths(&self) -> ([Vec<Point>; 3], [Vec<Point>; 3]) {
        let one = Rational::one();
        let zero = Rational::zero();
        let q = pt(&zero, &zero);
        let end_x = frac(&self.params.left_margin, 1, 24);
        let margin = rat(1, 16);
        let far_right = rat(9, 8) + &margin;
        let far_down = -(&self.open_depth + &margin);

        let mut widest = self.plan.straight.iter().map(|b| b.right.clone()).max().expect("b-loops");
        for t in &self.plan.turning {
            let sc = Scale::of(self.params, t.gen);
            widest = widest.max(&t.pos + &sc.t + &sc.lobe);
        }
        let turn_x = (widest + &one) / rat(2, 1);

        let a_base = vec![self.p.clone(), pt(&end_x, &self.level(3)), q.clone()];
        let b_prefix = vec![
            self.p.clone(),
            pt(&far_right, &-&margin),
            pt(&far_right, &far_down),
            pt(&-&margin, &far_down),
        ];
        let b_base = vec![
            pt(&-&margin, &self.level(1)),
            pt(&turn_x, &self.level(1)),
            pt(&turn_x, &self.level(2)),
            pt(&end_x, &self.level(2)),
            q.clone(),
        ];
        let open = self.open_outline();
        let c_prefix = open[..3].to_vec();
        let c_base = vec![pt(&one, &self.level(4)), pt(&end_x, &self.level(4)), q];
        ([vec![], b_prefix, c_prefix], [a_base, b_base, c_base])
    }
}
