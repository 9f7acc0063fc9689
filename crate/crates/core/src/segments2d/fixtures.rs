//! Exact hand-built configurations over ℚ(√3).

use num_traits::{One, Zero};

use super::{build_convex_set, HalfPlane2, Line2, Point2, SegmentSet2};
use crate::exact::QScalar;

type Q = QScalar;

/// Unit-circle point at 0°, 30°, 60° or 90°.
fn circle(deg: u32) -> Point2<Q> {
    let half = Q::ratio(1, 2);
    let root = Q::from_parts((0, 1), (1, 2));
    match deg {
        0 => Point2::new(Q::one(), Q::zero()),
        30 => Point2::new(root, half),
        60 => Point2::new(half, root),
        90 => Point2::new(Q::zero(), Q::one()),
        _ => unreachable!("only multiples of 30°"),
    }
}

/// Four segments of length 1/5 tangent to the unit circle at 90°, 60°, 30°
/// and 0°. The csi-point of the 0°/90° pair is `(1, 1)` and flopped.
pub fn tangent_arc4() -> SegmentSet2<Q> {
    let segs = [90, 60, 30, 0]
        .into_iter()
        .map(|deg| {
            let p = circle(deg);
            let tangent = Point2::new(p.y.clone(), -p.x.clone()).scale(&Q::ratio(1, 10));
            (p.sub(&tangent), p.add(&tangent))
        })
        .collect();
    build_convex_set(segs).expect("tangent segments are in convex position")
}

/// Half-planes for [`tangent_arc4`] whose boundaries pass through the
/// csi-points at 75° and 15°, tilted to cut off `(1, 1)`. Only the csi-point
/// at 45° is left strictly inside both.
pub fn tight_halfplanes() -> (HalfPlane2<Q>, HalfPlane2<Q>) {
    // tan 15° = 2 − √3.
    let t15 = Q::from_parts((2, 1), (0, 1)) - Q::from_parts((0, 1), (1, 1));
    let c75 = Point2::new(t15.clone(), Q::one());
    let c15 = Point2::new(Q::one(), t15);
    let nine = Q::ratio(9, 10);
    let h1 = Line2::through(&Point2::new(Q::one(), nine.clone()), &c75);
    let h2 = Line2::through(&c15, &Point2::new(nine, Q::one()));
    let half = |l: Line2<Q>| HalfPlane2 { line: l };
    (half(h1), half(h2))
}
