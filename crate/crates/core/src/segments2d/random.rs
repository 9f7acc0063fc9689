//! Seeded generators for convex segment sets and admissible half-planes.
//! All sampled values are rational, so every downstream check stays exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{build_convex_set, HalfPlane2, Point2, SegmentError, SegmentSet2, Sign};
use crate::scalar::Scalar;

type R = BigRational;

const MAX_ATTEMPTS: usize = 100;

fn rat(n: i64, d: i64) -> R {
    R::new(BigInt::from(n), BigInt::from(d))
}

/// Radius of the circle whose rounded points seed the generator.
const RADIUS: f64 = 65536.0;

type Grid = (i64, i64);

/// Integer point nearest to the circle of radius `scale` at angle `theta`.
fn grid_point(theta: f64, scale: f64) -> Grid {
    (
        (theta.cos() * scale).round() as i64,
        (theta.sin() * scale).round() as i64,
    )
}

fn to_point((x, y): Grid) -> Point2<R> {
    Point2::new(R::from_integer(x.into()), R::from_integer(y.into()))
}

fn random_angle<G: Rng>(rng: &mut G) -> f64 {
    rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI)
}

/// `k` sorted angles whose grid points are distinct.
fn sample_angles<G: Rng>(rng: &mut G, k: usize) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::with_capacity(k);
    let mut pts = Vec::with_capacity(k);
    while out.len() < k {
        let theta = random_angle(rng);
        let p = grid_point(theta, RADIUS);
        if !pts.contains(&p) {
            pts.push(p);
            out.push(theta);
        }
    }
    out.sort_by(f64::total_cmp);
    out
}

/// Keeps a random fraction f ∈ (1/10, 9/10) of the edge around its
/// midpoint, rounding the new endpoints to the grid.
fn shrink<G: Rng>(rng: &mut G, p: Grid, q: Grid) -> (Point2<R>, Point2<R>) {
    let f = rng.gen_range(101..900) as f64 / 1000.0;
    let at = |t: f64| {
        let x = p.0 as f64 + t * (q.0 - p.0) as f64;
        let y = p.1 as f64 + t * (q.1 - p.1) as f64;
        to_point((x.round() as i64, y.round() as i64))
    };
    (at((1.0 - f) / 2.0), at((1.0 + f) / 2.0))
}

/// Deterministic random convex segment set with `m ≥ 3` segments.
///
/// Rounds random points of a large circle to the integer grid and shrinks
/// the edges of their polygon toward the edge midpoints. Coordinates are
/// small integers, which keeps the exact checks cheap. For `m ≥ 4` half of
/// the draws (by seed) use `m + 1` circle points and drop the edge over
/// the widest arc, leaving a gap in the hull order; those are the sets that
/// can carry a flopped csi-point.
pub fn random_convex_set(m: usize, seed: u64) -> Result<SegmentSet2<R>, SegmentError> {
    if m < 3 {
        return Err(SegmentError::TooFewSegments { need: 3, got: m });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let open = m >= 4 && rng.gen_bool(0.5);
    for _ in 0..MAX_ATTEMPTS {
        let k = if open { m + 1 } else { m };
        let angle = sample_angles(&mut rng, k);
        let pts: Vec<Grid> = angle.iter().map(|&t| grid_point(t, RADIUS)).collect();
        let mut edges: Vec<(usize, usize)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
        if open {
            // Widest arc between consecutive circle points; the choice only
            // shapes the distribution, so floats are fine here.
            let gap = |i: usize| {
                let g = angle[(i + 1) % k] - angle[i];
                if g <= 0.0 {
                    g + std::f64::consts::TAU
                } else {
                    g
                }
            };
            let widest = (0..k)
                .max_by(|&a, &b| gap(a).total_cmp(&gap(b)))
                .expect("k ≥ 5");
            edges.remove(widest);
        }
        let segs = edges
            .iter()
            .map(|&(i, j)| shrink(&mut rng, pts[i], pts[j]))
            .collect();
        match build_convex_set(segs) {
            Ok(set) => return Ok(set),
            // Rounding can leave points collinear or reflex.
            Err(
                SegmentError::DuplicateSlope(..)
                | SegmentError::NotOnHull(_)
                | SegmentError::DegenerateSegment(_),
            ) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(SegmentError::GeneratorExhausted(MAX_ATTEMPTS))
}

/// Hull vertices of the endpoint set in clockwise order.
fn hull_cycle<T: Scalar>(set: &SegmentSet2<T>) -> Vec<Point2<T>> {
    let mut out: Vec<Point2<T>> = Vec::with_capacity(2 * set.len());
    for s in &set.segments {
        if out.last() != Some(&s.a) {
            out.push(s.a.clone());
        }
        out.push(s.b.clone());
    }
    if out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

/// Outward normal of the clockwise hull edge `p → q`.
fn outward<T: Scalar>(p: &Point2<T>, q: &Point2<T>) -> Point2<T> {
    let d = q.sub(p);
    Point2::new(-d.y, d.x)
}

fn admissible<T: Scalar>(set: &SegmentSet2<T>, h: &HalfPlane2<T>) -> bool {
    set.segments.iter().all(|s| {
        let (a, b) = (h.line.side(&s.a), h.line.side(&s.b));
        a != Sign::Negative && b != Sign::Negative && !(a == Sign::Zero && b == Sign::Zero)
    })
}

/// One half-plane `n·x ≤ n·v + slack` with integer coefficients, containing
/// the set.
fn sample_one<G: Rng>(hull: &[Point2<R>], extent: &R, rng: &mut G) -> HalfPlane2<R> {
    let make = |n: &Point2<R>, v: &Point2<R>, slack: R| {
        HalfPlane2::new(-n.x.clone(), -n.y.clone(), n.dot(v) + slack)
    };
    if rng.gen_bool(0.5) {
        // Supporting line in a random direction, pushed out by up to a
        // quarter of the bounding-box extent.
        let u = to_point(grid_point(random_angle(rng), 1024.0));
        let top = hull
            .iter()
            .map(|p| (u.dot(p), p))
            .max_by(|a, b| a.0.cmp(&b.0))
            .expect("non-empty set")
            .1
            .clone();
        let push = if rng.gen_bool(0.3) {
            R::zero()
        } else {
            (extent * &rat(rng.gen_range(0..=250), 1000)).floor()
        };
        make(&u, &top, push)
    } else {
        // A tight line through a hull vertex, its normal anywhere in the
        // cone between the two adjacent hull edge normals.
        let n = hull.len();
        let k = rng.gen_range(0..n);
        let v = &hull[k];
        let n_in = outward(&hull[(k + n - 1) % n], v);
        let n_out = outward(v, &hull[(k + 1) % n]);
        let w = rng.gen_range(0..=1000);
        let nrm = n_in.scale(&rat(w, 1)).add(&n_out.scale(&rat(1000 - w, 1)));
        make(&nrm, v, R::zero())
    }
}

/// Draws `count` admissible pairs `(H1, H2)`: each contains every endpoint
/// and holds no whole segment on its boundary. Rejected draws are retried.
pub fn sample_halfplanes<G: Rng>(
    set: &SegmentSet2<R>,
    rng: &mut G,
    count: usize,
) -> Vec<(HalfPlane2<R>, HalfPlane2<R>)> {
    let hull = hull_cycle(set);
    let span = |f: fn(&Point2<R>) -> &R| {
        let vals = || hull.iter().map(f);
        vals().max().expect("non-empty set") - vals().min().expect("non-empty set")
    };
    let extent = span(|p| &p.x).max(span(|p| &p.y));
    let mut draws = 0;
    let mut one = |rng: &mut G| {
        while draws < count * 100 {
            draws += 1;
            let h = sample_one(&hull, &extent, rng);
            if admissible(set, &h) {
                return Some(h);
            }
        }
        None
    };
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        match (one(rng), one(rng)) {
            (Some(h1), Some(h2)) => out.push((h1, h2)),
            _ => break,
        }
    }
    out
}
