//! Exact 3D primitives: points, oriented planes, signed volumes, convex
//! polygon validation, plane intersection, half-space clipping and
//! interior-disjointness of convex polygons.

use std::fmt;

use thiserror::Error;

use crate::scalar::{Scalar, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("polygon needs at least 3 corners, got {0}")]
    TooFewCorners(usize),
    #[error("corners {0:?} are not coplanar")]
    NonCoplanar([usize; 4]),
    #[error("polygon is not strictly convex at corner {0}")]
    NonConvex(usize),
    #[error("planes are parallel and distinct")]
    NoIntersection,
    #[error("planes coincide")]
    SamePlane,
    #[error("polygon lies in the clipping plane")]
    CoplanarInput,
}

/// A point, also used as a free vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Scalar> Point3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Point3 { x, y, z }
    }

    pub fn origin() -> Self {
        Point3::new(T::zero(), T::zero(), T::zero())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Point3::new(
            self.x.clone() - o.x.clone(),
            self.y.clone() - o.y.clone(),
            self.z.clone() - o.z.clone(),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        Point3::new(
            self.x.clone() + o.x.clone(),
            self.y.clone() + o.y.clone(),
            self.z.clone() + o.z.clone(),
        )
    }

    pub fn scale(&self, k: &T) -> Self {
        Point3::new(
            self.x.clone() * k.clone(),
            self.y.clone() * k.clone(),
            self.z.clone() * k.clone(),
        )
    }

    pub fn neg(&self) -> Self {
        Point3::new(-self.x.clone(), -self.y.clone(), -self.z.clone())
    }

    pub fn dot(&self, o: &Self) -> T {
        self.x.clone() * o.x.clone() + self.y.clone() * o.y.clone() + self.z.clone() * o.z.clone()
    }

    pub fn cross(&self, o: &Self) -> Self {
        Point3::new(
            self.y.clone() * o.z.clone() - self.z.clone() * o.y.clone(),
            self.z.clone() * o.x.clone() - self.x.clone() * o.z.clone(),
            self.x.clone() * o.y.clone() - self.y.clone() * o.x.clone(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.x.sign().is_zero() && self.y.sign().is_zero() && self.z.sign().is_zero()
    }

    /// `a + t·(b − a)`.
    pub fn lerp(a: &Self, b: &Self, t: &T) -> Self {
        a.add(&b.sub(a).scale(t))
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [self.x.to_f64(), self.y.to_f64(), self.z.to_f64()]
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Point3<U> {
        Point3 {
            x: f(&self.x),
            y: f(&self.y),
            z: f(&self.z),
        }
    }
}

impl<T: fmt::Display> fmt::Display for Point3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// The 4×4 determinant with the four points as columns over a row of ones.
///
/// Its sign says on which side of the plane through `q1, q2, q3` the point
/// `q` lies. Expanding along the ones row reduces it to
/// `−(q1 − q)·((q2 − q) × (q3 − q))`.
pub fn signed_volume<T: Scalar>(
    q: &Point3<T>,
    q1: &Point3<T>,
    q2: &Point3<T>,
    q3: &Point3<T>,
) -> T {
    let a = q1.sub(q);
    let b = q2.sub(q);
    let c = q3.sub(q);
    -a.dot(&b.cross(&c))
}

/// Which open half-space (or the plane itself) a point is in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Positive,
    On,
    Negative,
}

impl Side {
    pub fn from_sign(s: Sign) -> Side {
        match s {
            Sign::Positive => Side::Positive,
            Sign::Zero => Side::On,
            Sign::Negative => Side::Negative,
        }
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::Positive => Side::Negative,
            Side::On => Side::On,
            Side::Negative => Side::Positive,
        }
    }
}

/// Closed half-space selector for clipping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Keep {
    Positive,
    Negative,
}

impl Keep {
    pub fn admits(self, side: Side) -> bool {
        matches!(
            (self, side),
            (_, Side::On) | (Keep::Positive, Side::Positive) | (Keep::Negative, Side::Negative)
        )
    }

    pub fn strict_side(self) -> Side {
        match self {
            Keep::Positive => Side::Positive,
            Keep::Negative => Side::Negative,
        }
    }
}

/// `{p : a·x + b·y + c·z + d = 0}`; the positive side is where the form is > 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Plane3<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: Scalar> Plane3<T> {
    /// Plane through `p` with normal `n`. `n` must be nonzero.
    pub fn from_point_normal(p: &Point3<T>, n: &Point3<T>) -> Self {
        debug_assert!(!n.is_zero());
        Plane3 {
            a: n.x.clone(),
            b: n.y.clone(),
            c: n.z.clone(),
            d: -n.dot(p),
        }
    }

    pub fn normal(&self) -> Point3<T> {
        Point3::new(self.a.clone(), self.b.clone(), self.c.clone())
    }

    pub fn eval(&self, p: &Point3<T>) -> T {
        self.normal().dot(p) + self.d.clone()
    }

    pub fn classify(&self, p: &Point3<T>) -> Side {
        Side::from_sign(self.eval(p).sign())
    }

    pub fn flipped(&self) -> Self {
        Plane3 {
            a: -self.a.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: -self.d.clone(),
        }
    }

    /// The parallel plane where this plane's form equals `offset`.
    pub fn offset(&self, offset: &T) -> Self {
        Plane3 {
            d: self.d.clone() - offset.clone(),
            ..self.clone()
        }
    }

    /// Same point set (orientation ignored).
    pub fn same_set(&self, o: &Self) -> bool {
        let n = self.normal();
        let m = o.normal();
        if !n.cross(&m).is_zero() {
            return false;
        }
        // Proportional normals; compare offsets through the same ratio.
        let (s, t) = if !n.x.sign().is_zero() {
            (n.x.clone(), m.x.clone())
        } else if !n.y.sign().is_zero() {
            (n.y.clone(), m.y.clone())
        } else {
            (n.z.clone(), m.z.clone())
        };
        (self.d.clone() * t - o.d.clone() * s).sign().is_zero()
    }
}

pub fn classify_point<T: Scalar>(pl: &Plane3<T>, p: &Point3<T>) -> Side {
    pl.classify(p)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Line3<T> {
    pub base: Point3<T>,
    pub dir: Point3<T>,
}

impl<T: Scalar> Line3<T> {
    pub fn at(&self, t: &T) -> Point3<T> {
        self.base.add(&self.dir.scale(t))
    }

    pub fn contains(&self, p: &Point3<T>) -> bool {
        p.sub(&self.base).cross(&self.dir).is_zero()
    }
}

pub fn intersect_planes<T: Scalar>(p1: &Plane3<T>, p2: &Plane3<T>) -> Result<Line3<T>, GeomError> {
    let n1 = p1.normal();
    let n2 = p2.normal();
    let dir = n1.cross(&n2);
    if dir.is_zero() {
        return Err(if p1.same_set(p2) {
            GeomError::SamePlane
        } else {
            GeomError::NoIntersection
        });
    }
    // With hᵢ = −dᵢ: base = (h1·(n2 × u) + h2·(u × n1)) / |u|².
    let h1 = -p1.d.clone();
    let h2 = -p2.d.clone();
    let num = n2.cross(&dir).scale(&h1).add(&dir.cross(&n1).scale(&h2));
    let len2 = dir.dot(&dir);
    let base = Point3::new(
        num.x.div_nonzero(&len2),
        num.y.div_nonzero(&len2),
        num.z.div_nonzero(&len2),
    );
    Ok(Line3 { base, dir })
}

/// Intersection of segment `ab` with `pl`, given `a` and `b` strictly on
/// opposite sides.
pub fn segment_plane_point<T: Scalar>(a: &Point3<T>, b: &Point3<T>, pl: &Plane3<T>) -> Point3<T> {
    let fa = pl.eval(a);
    let fb = pl.eval(b);
    let t = fa.clone().div_nonzero(&(fa - fb));
    Point3::lerp(a, b, &t)
}

/// An ordered, coplanar, strictly convex corner cycle with its supporting
/// plane oriented by the cycle.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConvexPolygon3<T> {
    pub id: String,
    pub corners: Vec<Point3<T>>,
    pub plane: Plane3<T>,
}

impl<T: Scalar> ConvexPolygon3<T> {
    pub fn len(&self) -> usize {
        self.corners.len()
    }

    pub fn is_empty(&self) -> bool {
        self.corners.is_empty()
    }

    /// Sides as `(corner i, corner i+1)` pairs in cycle order.
    pub fn sides(&self) -> impl Iterator<Item = (&Point3<T>, &Point3<T>)> + '_ {
        let n = self.corners.len();
        (0..n).map(move |i| (&self.corners[i], &self.corners[(i + 1) % n]))
    }

    /// Planes through each side, perpendicular to the polygon, whose closed
    /// positive sides intersect to the polygon's prism.
    pub fn side_planes(&self) -> Vec<Plane3<T>> {
        let n = self.plane.normal();
        self.sides()
            .map(|(p, q)| Plane3::from_point_normal(p, &n.cross(&q.sub(p))))
            .collect()
    }

    /// Closed containment of a point lying in the polygon's plane.
    pub fn contains_coplanar(&self, p: &Point3<T>) -> bool {
        self.side_planes()
            .iter()
            .all(|h| h.classify(p) != Side::Negative)
    }

    pub fn contains(&self, p: &Point3<T>) -> bool {
        self.plane.classify(p) == Side::On && self.contains_coplanar(p)
    }

    pub fn has_corner(&self, p: &Point3<T>) -> bool {
        self.corners.iter().any(|c| c == p)
    }

    /// Vertex average; lies in the relative interior.
    pub fn centroid(&self) -> Point3<T> {
        average(&self.corners)
    }
}

pub(crate) fn average<T: Scalar>(pts: &[Point3<T>]) -> Point3<T> {
    let n = T::from_i64(pts.len() as i64);
    let sum = pts.iter().fold(Point3::origin(), |acc, p| acc.add(p));
    Point3::new(
        sum.x.div_nonzero(&n),
        sum.y.div_nonzero(&n),
        sum.z.div_nonzero(&n),
    )
}

/// Certifies coplanarity and strict convexity of a corner cycle.
pub fn validate_polygon<T: Scalar>(
    id: impl Into<String>,
    corners: Vec<Point3<T>>,
) -> Result<ConvexPolygon3<T>, GeomError> {
    let n = corners.len();
    if n < 3 {
        return Err(GeomError::TooFewCorners(n));
    }
    // First proper fan triangle from corner 0 fixes plane and orientation.
    let fan = (1..n - 1).find_map(|i| {
        let nrm = corners[i]
            .sub(&corners[0])
            .cross(&corners[i + 1].sub(&corners[0]));
        (!nrm.is_zero()).then_some((i, nrm))
    });
    let Some((i, normal)) = fan else {
        return Err(GeomError::NonConvex(1));
    };
    for (k, c) in corners.iter().enumerate() {
        if !signed_volume(c, &corners[0], &corners[i], &corners[i + 1])
            .sign()
            .is_zero()
        {
            return Err(GeomError::NonCoplanar([k, 0, i, i + 1]));
        }
    }
    // Strictly convex iff every turn is a strict left turn about `normal`
    // and the side directions wind around exactly once. Work in the
    // projection along an axis where the normal is nonzero.
    let axis = [&normal.x, &normal.y, &normal.z]
        .iter()
        .position(|c| !c.sign().is_zero())
        .expect("nonzero normal");
    let flip = [&normal.x, &normal.y, &normal.z][axis].sign();
    let proj = |p: &Point3<T>| match axis {
        0 => (p.y.clone(), p.z.clone()),
        1 => (p.z.clone(), p.x.clone()),
        _ => (p.x.clone(), p.y.clone()),
    };
    let edges: Vec<(T, T)> = (0..n)
        .map(|k| {
            let (ax, ay) = proj(&corners[k]);
            let (bx, by) = proj(&corners[(k + 1) % n]);
            (bx - ax, by - ay)
        })
        .collect();
    // Upper half-plane of directions, +x included.
    let upper = |e: &(T, T)| {
        let sy = e.1.sign();
        sy == Sign::Positive || (sy.is_zero() && e.0.sign() == Sign::Positive)
    };
    let mut wraps = 0;
    for k in 0..n {
        let (e, f) = (&edges[k], &edges[(k + 1) % n]);
        let turn = e.0.clone() * f.1.clone() - e.1.clone() * f.0.clone();
        if turn.sign() != flip {
            return Err(GeomError::NonConvex((k + 1) % n));
        }
        // Counter-clockwise steps wrap at +x going from lower to upper,
        // clockwise ones going from upper to lower.
        if upper(e) != upper(f) && upper(f) == (flip == Sign::Positive) {
            wraps += 1;
            if wraps > 1 {
                return Err(GeomError::NonConvex((k + 1) % n));
            }
        }
    }
    let plane = Plane3::from_point_normal(&corners[0], &normal);
    Ok(ConvexPolygon3 {
        id: id.into(),
        corners,
        plane,
    })
}

/// Closed clip of a convex point cycle (possibly degenerate: a segment or a
/// single point) against a half-space. Coincident consecutive outputs are
/// merged.
pub fn clip_points<T: Scalar>(pts: &[Point3<T>], pl: &Plane3<T>, keep: Keep) -> Vec<Point3<T>> {
    let n = pts.len();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return if keep.admits(pl.classify(&pts[0])) {
            pts.to_vec()
        } else {
            Vec::new()
        };
    }
    let sides: Vec<Side> = pts.iter().map(|p| pl.classify(p)).collect();
    let mut out: Vec<Point3<T>> = Vec::with_capacity(n + 2);
    for i in 0..n {
        let j = (i + 1) % n;
        if keep.admits(sides[i]) {
            out.push(pts[i].clone());
        }
        let crossing = matches!(
            (sides[i], sides[j]),
            (Side::Positive, Side::Negative) | (Side::Negative, Side::Positive)
        );
        if crossing {
            out.push(segment_plane_point(&pts[i], &pts[j], pl));
        }
    }
    dedup_cycle(out)
}

pub(crate) fn dedup_cycle<T: Scalar>(mut pts: Vec<Point3<T>>) -> Vec<Point3<T>> {
    pts.dedup();
    while pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    pts
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Clipped<T> {
    Polygon(ConvexPolygon3<T>),
    Empty,
}

impl<T> Clipped<T> {
    pub fn polygon(self) -> Option<ConvexPolygon3<T>> {
        match self {
            Clipped::Polygon(p) => Some(p),
            Clipped::Empty => None,
        }
    }
}

/// Intersection of `poly` with the closed half-space `keep` of `pl`.
pub fn clip_polygon_halfspace<T: Scalar>(
    poly: &ConvexPolygon3<T>,
    pl: &Plane3<T>,
    keep: Keep,
) -> Result<Clipped<T>, GeomError> {
    let sides: Vec<Side> = poly.corners.iter().map(|p| pl.classify(p)).collect();
    if sides.iter().all(|s| *s == Side::On) {
        return Err(GeomError::CoplanarInput);
    }
    if !sides.contains(&keep.strict_side()) {
        return Ok(Clipped::Empty);
    }
    if sides.iter().all(|s| keep.admits(*s)) {
        return Ok(Clipped::Polygon(poly.clone()));
    }
    let pts = clip_points(&poly.corners, pl, keep);
    // The cut meets the boundary in at most two points, so the output stays
    // strictly convex and keeps the cycle orientation.
    let clipped = validate_polygon(poly.id.clone(), pts)?;
    Ok(Clipped::Polygon(ConvexPolygon3 {
        plane: poly.plane.clone(),
        ..clipped
    }))
}

/// Closed intersection `p ∩ q` as a degenerate-or-proper convex point cycle.
pub fn intersection_points<T: Scalar>(
    p: &ConvexPolygon3<T>,
    q: &ConvexPolygon3<T>,
) -> Vec<Point3<T>> {
    let mut pts = p.corners.clone();
    let coplanar = q.corners.iter().all(|c| p.plane.classify(c) == Side::On);
    if !coplanar {
        pts = clip_points(&pts, &q.plane, Keep::Positive);
        pts = clip_points(&pts, &q.plane, Keep::Negative);
    }
    for h in q.side_planes() {
        if pts.is_empty() {
            break;
        }
        pts = clip_points(&pts, &h, Keep::Positive);
    }
    pts
}

/// Outcome of the interior-disjointness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Disjointness<T> {
    Disjoint,
    /// A point in the relative interiors of both polygons.
    Overlap(Point3<T>),
}

impl<T> Disjointness<T> {
    pub fn is_disjoint(&self) -> bool {
        matches!(self, Disjointness::Disjoint)
    }
}

fn straddles<T: Scalar>(poly: &ConvexPolygon3<T>, pl: &Plane3<T>) -> bool {
    let mut pos = false;
    let mut neg = false;
    for c in &poly.corners {
        match pl.classify(c) {
            Side::Positive => pos = true,
            Side::Negative => neg = true,
            Side::On => {}
        }
    }
    pos && neg
}

pub fn polygons_interior_disjoint<T: Scalar>(
    p: &ConvexPolygon3<T>,
    q: &ConvexPolygon3<T>,
) -> Disjointness<T> {
    let coplanar = q.corners.iter().all(|c| p.plane.classify(c) == Side::On);
    if coplanar {
        let pts = intersection_points(p, q);
        return if has_area(&pts, &p.plane.normal()) {
            Disjointness::Overlap(average(&pts))
        } else {
            Disjointness::Disjoint
        };
    }
    // Crossing planes: the relative interiors meet iff each polygon reaches
    // both sides of the other's plane and the closed intersection along the
    // common line has positive length.
    if !straddles(p, &q.plane) || !straddles(q, &p.plane) {
        return Disjointness::Disjoint;
    }
    let pts = intersection_points(p, q);
    if pts.len() >= 2 {
        Disjointness::Overlap(average(&pts[..2]))
    } else {
        Disjointness::Disjoint
    }
}

fn has_area<T: Scalar>(pts: &[Point3<T>], normal: &Point3<T>) -> bool {
    if pts.len() < 3 {
        return false;
    }
    let o = &pts[0];
    pts.windows(2).skip(1).any(|w| {
        !normal
            .dot(&w[0].sub(o).cross(&w[1].sub(o)))
            .sign()
            .is_zero()
    })
}
