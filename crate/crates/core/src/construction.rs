//! The one-sided corner-contact representation of K_{3,8}.
//!
//! Three congruent red octagons sit in vertical planes around the z-axis,
//! rotated by a third of a turn each; eight blue triangles each take one
//! corner from every red polygon.
//!
//! Naming follows the blue table: `q_i` are the corners of `r1`,
//! `s_i = R(−2π/3)·q_i` those of `r2` and `t_i = R(2π/3)·q_i` those of `r3`.

use std::collections::BTreeMap;

use crate::exact::QScalar;
use crate::geom3d::{validate_polygon, ConvexPolygon3, Point3};
use crate::representation::{Class, ExpectedGraph, Scene};
use crate::scalar::Scalar;

type Q = QScalar;

/// `(x, z)` of the corners of `r1`; every corner has `y = 2√3`.
const R1_XZ: [((i64, i64), (i64, i64)); 8] = [
    ((8, 1), (-3, 5)),
    ((8, 1), (-2, 5)),
    ((2, 25), (2363, 2000)),
    ((0, 1), (5907, 5000)),
    ((-8, 1), (3, 5)),
    ((-8, 1), (2, 5)),
    ((-2, 25), (-2363, 2000)),
    ((0, 1), (-5907, 5000)),
];

/// Blue triangles as 1-based corner indices `(q, s, t)`.
pub const BLUE_TABLE: [(usize, usize, usize); 8] = [
    (4, 5, 2),
    (8, 6, 1),
    (2, 4, 5),
    (1, 8, 6),
    (5, 2, 4),
    (6, 1, 8),
    (3, 3, 3),
    (7, 7, 7),
];

const LETTERS: [char; 3] = ['q', 's', 't'];

/// Direction of a third of a turn about the z-axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Turn {
    /// Counter-clockwise seen from above.
    Ccw,
    Cw,
}

/// Exact rotation by ±2π/3 about the z-axis.
pub fn rotate_z(p: &Point3<Q>, turn: Turn) -> Point3<Q> {
    let c = Q::ratio(-1, 2);
    let s = match turn {
        Turn::Ccw => Q::from_parts((0, 1), (1, 2)),
        Turn::Cw => Q::from_parts((0, 1), (-1, 2)),
    };
    Point3::new(&c * &p.x - &s * &p.y, &s * &p.x + &c * &p.y, p.z.clone())
}

pub fn red1_corners() -> Vec<Point3<Q>> {
    R1_XZ
        .iter()
        .map(|&((xn, xd), (zn, zd))| {
            Point3::new(
                Q::ratio(xn, xd),
                Q::from_parts((0, 1), (2, 1)),
                Q::ratio(zn, zd),
            )
        })
        .collect()
}

/// Corners of `r1`, `r2`, `r3` in table order.
pub fn red_corners() -> [Vec<Point3<Q>>; 3] {
    let q = red1_corners();
    let s = q.iter().map(|p| rotate_z(p, Turn::Cw)).collect();
    let t = q.iter().map(|p| rotate_z(p, Turn::Ccw)).collect();
    [q, s, t]
}

#[derive(Debug, Clone)]
pub struct K38CornerScene {
    pub reds: [ConvexPolygon3<Q>; 3],
    pub blues: Vec<ConvexPolygon3<Q>>,
    /// Source labels of each blue's corners, e.g. `b1 → ["q4", "s5", "t2"]`.
    pub provenance: BTreeMap<String, [String; 3]>,
}

impl K38CornerScene {
    pub fn to_scene(&self) -> Scene<Q> {
        let mut scene = Scene::new();
        for (class, polys) in [
            (Class::Red, self.reds.as_slice()),
            (Class::Blue, self.blues.as_slice()),
        ] {
            for p in polys {
                scene
                    .insert(p.id.clone(), Some(class), p.corners.clone())
                    .expect("ids are distinct");
            }
        }
        scene.expected = Some(ExpectedGraph::CompleteBipartite {
            s: 3,
            t: 8,
            binding: Some((Class::Red, Class::Blue)),
        });
        scene
    }
}

pub fn build_k38_corner() -> K38CornerScene {
    let corners = red_corners();
    let reds = [0, 1, 2].map(|k| {
        validate_polygon(format!("r{}", k + 1), corners[k].clone())
            .expect("red octagon is strictly convex")
    });
    let mut blues = Vec::with_capacity(8);
    let mut provenance = BTreeMap::new();
    for (n, &(i, j, k)) in BLUE_TABLE.iter().enumerate() {
        let id = format!("b{}", n + 1);
        let idx = [i, j, k];
        let pts = (0..3).map(|r| corners[r][idx[r] - 1].clone()).collect();
        blues.push(validate_polygon(id.clone(), pts).expect("blue triangle is non-degenerate"));
        provenance.insert(id, [0, 1, 2].map(|r| format!("{}{}", LETTERS[r], idx[r])));
    }
    K38CornerScene {
        reds,
        blues,
        provenance,
    }
}

/// Crossing of the xy-projections of the lines through `a0 a1` and `b0 b1`.
fn projected_crossing(a0: &Point3<Q>, a1: &Point3<Q>, b0: &Point3<Q>, b1: &Point3<Q>) -> (Q, Q) {
    let (dax, day) = (&a1.x - &a0.x, &a1.y - &a0.y);
    let (dbx, dby) = (&b1.x - &b0.x, &b1.y - &b0.y);
    let den = &dax * &dby - &day * &dbx;
    let num = (&b0.x - &a0.x) * dby.clone() - (&b0.y - &a0.y) * dbx.clone();
    let u = num.div_nonzero(&den);
    (&a0.x + &(&u * &dax), &a0.y + &(&u * &day))
}

/// z of segment `a b` on the vertical line through `(x, y)`.
fn z_on_vertical(a: &Point3<Q>, b: &Point3<Q>, x: &Q, y: &Q) -> Q {
    let d = b.sub(a);
    let u = if d.x.sign().is_zero() {
        (y - &a.y).div_nonzero(&d.y)
    } else {
        (x - &a.x).div_nonzero(&d.x)
    };
    debug_assert_eq!(&a.y + &(&u * &d.y), *y);
    &a.z + &(&u * &d.z)
}

/// The point `x` where `r1` and `r2` cross in the top view, `(6, 2√3)`.
pub fn top_view_crossing() -> (Q, Q) {
    let [q, s, _] = red_corners();
    projected_crossing(&q[0], &q[4], &s[0], &s[4])
}

/// z of `q2 q3` on the vertical line through the top-view crossing: `−1/1584`.
pub fn disjointness_witness() -> Q {
    let [q, _, _] = red_corners();
    let (x, y) = top_view_crossing();
    z_on_vertical(&q[1], &q[2], &x, &y)
}

/// z of `s6 s7` on the same vertical line; the mirror value `+1/1584`.
pub fn symmetric_witness() -> Q {
    let [_, s, _] = red_corners();
    let (x, y) = top_view_crossing();
    z_on_vertical(&s[5], &s[6], &x, &y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates() {
        let [q, s, t] = red_corners();
        assert_eq!(
            q[2],
            Point3::new(
                Q::ratio(2, 25),
                Q::from_parts((0, 1), (2, 1)),
                Q::ratio(11815, 10000)
            )
        );
        assert_eq!(
            s[0],
            Point3::new(
                Q::from_int(-1),
                Q::from_parts((0, 1), (-5, 1)),
                Q::ratio(-3, 5)
            )
        );
        assert_eq!(
            t[0],
            Point3::new(
                Q::from_int(-7),
                Q::from_parts((0, 1), (3, 1)),
                Q::ratio(-3, 5)
            )
        );
        // Three turns are the identity.
        let p = &q[4];
        assert_eq!(
            rotate_z(&rotate_z(&rotate_z(p, Turn::Ccw), Turn::Ccw), Turn::Ccw),
            *p
        );
        assert_eq!(rotate_z(&rotate_z(p, Turn::Cw), Turn::Ccw), *p);
    }

    #[test]
    fn provenance_matches_table() {
        let k = build_k38_corner();
        assert_eq!(k.provenance["b1"], ["q4", "s5", "t2"].map(String::from));
        assert_eq!(k.provenance["b7"], ["q3", "s3", "t3"].map(String::from));
        let [q, s, t] = red_corners();
        assert_eq!(
            k.blues[6].corners,
            vec![q[2].clone(), s[2].clone(), t[2].clone()]
        );
        assert_eq!(k.to_scene().polygons.len(), 11);
    }

    #[test]
    fn golden_scene_verifies_in_corner_mode() {
        use crate::representation::{verify_with, ChosenSide, Mode, OneSidedness, CHECK_ONE_SIDED};
        let scene = build_k38_corner().to_scene();
        let r = verify_with(&scene, Mode::Corner, Some(OneSidedness::PerContact));
        assert!(r.passed, "{}", r.to_json());
        assert_eq!(r.counts.corner, 24);

        // Every blue has all reds on one side; each red has blues on both.
        let r = verify_with(&scene, Mode::Corner, Some(OneSidedness::Global));
        assert_eq!(r.failed_checks(), vec![CHECK_ONE_SIDED]);
        for e in r.one_sidedness.as_ref().unwrap() {
            assert_eq!(e.side.is_some(), e.id.starts_with('b'), "{}", e.id);
            assert!(e.touching.iter().all(|n| n.side.is_some()));
        }
        let sides: Vec<_> = r
            .one_sidedness
            .unwrap()
            .into_iter()
            .filter(|e| e.id.starts_with('b'))
            .map(|e| e.side.unwrap())
            .collect();
        assert_eq!(
            sides.iter().filter(|s| **s == ChosenSide::Positive).count(),
            4
        );
    }

    #[test]
    fn witness_values() {
        assert_eq!(
            top_view_crossing(),
            (Q::from_int(6), Q::from_parts((0, 1), (2, 1)))
        );
        assert_eq!(disjointness_witness(), Q::ratio(-1, 1584));
        assert_eq!(symmetric_witness(), Q::ratio(1, 1584));
        assert_eq!(disjointness_witness().to_decimal(9), "-0.000631313");
    }
}
