//! Corner-to-side conversion for one-sided corner-contact scenes.
//!
//! Each blue triangle touches three reds at its corners. Moving its plane a
//! little into the reds' side cuts every red in a short segment; the hull of
//! those segments becomes the new blue, and each red is trimmed to the far
//! side of the moved plane. The corner contacts turn into side contacts and
//! nothing else changes, as long as the plane moved little enough. The
//! offset is found by halving and every step is verified exactly.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::geom3d::{
    clip_polygon_halfspace, intersect_planes, segment_plane_point, validate_polygon, Clipped,
    ConvexPolygon3, GeomError, Keep, Line3, Plane3, Point3, Side,
};
use crate::representation::{
    check_one_sided, verify_detailed, verify_with, ChosenSide, Class, Contact, ContactReport, Mode,
    OneSidedness, OneSidednessCertificate, Scene, SceneError, VerificationReport,
};
use crate::scalar::{ExactScalar, Scalar, Sign};
use crate::segments2d::{orient, Point2, Triangle2};

/// Halvings of ε before giving up.
pub const MAX_HALVINGS: usize = 256;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TransformError {
    #[error("lines {0} and {1} are parallel")]
    ParallelLines(usize, usize),
    #[error("the three lines meet in one point")]
    ConcurrentLines,
    #[error("line {0} does not lie in the plane")]
    LineNotInPlane(usize),
    #[error("no admissible offset for {blue} after {MAX_HALVINGS} halvings")]
    OffsetNotFound { blue: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("step {step} ({blue}) failed verification: {}", report.failed_checks().join(", "))]
    StepFailed {
        step: usize,
        blue: String,
        report: Box<VerificationReport>,
    },
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Scene(#[from] SceneError),
}

/// Coordinate axis dropped to map a plane to 2D.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlaneFrame {
    drop: usize,
}

impl PlaneFrame {
    /// Drops the axis of the largest normal component, so the map is
    /// injective on the plane. Parallel planes get the same frame.
    pub fn for_normal<T: ExactScalar>(n: &Point3<T>) -> Self {
        let a = [n.x.abs_value(), n.y.abs_value(), n.z.abs_value()];
        let drop = (0..3)
            .rev()
            .max_by(|&i, &j| a[i].cmp(&a[j]))
            .expect("three axes");
        PlaneFrame { drop }
    }

    pub fn project<T: Scalar>(&self, p: &Point3<T>) -> Point2<T> {
        match self.drop {
            0 => Point2::new(p.y.clone(), p.z.clone()),
            1 => Point2::new(p.z.clone(), p.x.clone()),
            _ => Point2::new(p.x.clone(), p.y.clone()),
        }
    }
}

fn meet<T: Scalar>(l1: &Line3<T>, l2: &Line3<T>) -> Option<Point3<T>> {
    let c = l1.dir.cross(&l2.dir);
    if c.is_zero() {
        return None;
    }
    let s = l2
        .base
        .sub(&l1.base)
        .cross(&l2.dir)
        .dot(&c)
        .div_nonzero(&c.dot(&c));
    Some(l1.at(&s))
}

/// Corners of the bounded cell of three coplanar lines; corner `i` is
/// opposite line `i`.
pub fn cell_corners<T: ExactScalar>(
    lines: [&Line3<T>; 3],
    in_plane: &Plane3<T>,
) -> Result<[Point3<T>; 3], TransformError> {
    for (i, l) in lines.iter().enumerate() {
        if in_plane.classify(&l.base) != Side::On || !in_plane.normal().dot(&l.dir).sign().is_zero()
        {
            return Err(TransformError::LineNotInPlane(i));
        }
    }
    let corner = |i: usize, j: usize| {
        meet(lines[i], lines[j]).ok_or(TransformError::ParallelLines(i.min(j), i.max(j)))
    };
    let v = [corner(1, 2)?, corner(0, 2)?, corner(0, 1)?];
    if v[0] == v[1] {
        return Err(TransformError::ConcurrentLines);
    }
    Ok(v)
}

/// The triangular cell of three lines in a plane, in the plane's frame.
pub fn triangular_cell<T: ExactScalar>(
    l1: &Line3<T>,
    l2: &Line3<T>,
    l3: &Line3<T>,
    in_plane: &Plane3<T>,
) -> Result<Triangle2<T>, TransformError> {
    let v = cell_corners([l1, l2, l3], in_plane)?;
    let f = PlaneFrame::for_normal(&in_plane.normal());
    let [a, b, c] = v.map(|p| f.project(&p));
    Triangle2::new(a, b, c).ok_or(TransformError::ConcurrentLines)
}

/// `p` on the closed segment `ab`, given all three collinear.
fn between<T: ExactScalar>(a: &Point3<T>, b: &Point3<T>, p: &Point3<T>) -> bool {
    let d = b.sub(a);
    let t = p.sub(a).dot(&d);
    t.sign() != Sign::Negative && t <= d.dot(&d)
}

/// `poly ∩ pl` as a proper segment, if it is one.
fn section<T: ExactScalar>(
    poly: &ConvexPolygon3<T>,
    pl: &Plane3<T>,
) -> Option<(Point3<T>, Point3<T>)> {
    let n = poly.len();
    let sides: Vec<Side> = poly.corners.iter().map(|c| pl.classify(c)).collect();
    let mut pts = BTreeSet::new();
    for i in 0..n {
        let j = (i + 1) % n;
        if sides[i] == Side::On {
            pts.insert(poly.corners[i].clone());
        }
        if sides[i] != Side::On && sides[j] == sides[i].opposite() {
            pts.insert(segment_plane_point(&poly.corners[i], &poly.corners[j], pl));
        }
    }
    let mut it = pts.into_iter();
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) => Some((a, b)),
        _ => None,
    }
}

/// Convex hull of coplanar points, counter-clockwise in `frame`, without
/// collinear corners.
fn planar_hull<T: ExactScalar>(pts: &[Point3<T>], frame: PlaneFrame) -> Vec<Point3<T>> {
    let mut v: Vec<(Point2<T>, Point3<T>)> =
        pts.iter().map(|p| (frame.project(p), p.clone())).collect();
    v.sort_by(|a, b| (&a.0.x, &a.0.y).cmp(&(&b.0.x, &b.0.y)));
    v.dedup_by(|a, b| a.0 == b.0);
    if v.len() < 3 {
        return v.into_iter().map(|(_, p)| p).collect();
    }
    let mut hull: Vec<(Point2<T>, Point3<T>)> = Vec::with_capacity(2 * v.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &(Point2<T>, Point3<T>)>> = if pass == 0 {
            Box::new(v.iter())
        } else {
            Box::new(v.iter().rev())
        };
        for p in iter {
            while hull.len() >= start + 2
                && orient(&hull[hull.len() - 2].0, &hull[hull.len() - 1].0, &p.0) != Sign::Positive
            {
                hull.pop();
            }
            hull.push(p.clone());
        }
        hull.pop();
    }
    hull.into_iter().map(|(_, p)| p).collect()
}

fn is_side<T: ExactScalar>(cycle: &[Point3<T>], a: &Point3<T>, b: &Point3<T>) -> bool {
    let n = cycle.len();
    (0..n).any(|i| {
        let (u, v) = (&cycle[i], &cycle[(i + 1) % n]);
        (u == a && v == b) || (u == b && v == a)
    })
}

/// One accepted offset for a blue polygon.
#[derive(Debug, Clone, PartialEq)]
pub struct OffsetChoice<T> {
    pub blue: String,
    /// Value of the blue plane's form (oriented toward the reds) on `h`.
    pub epsilon: T,
    pub offset_plane: Plane3<T>,
    pub reds: [String; 3],
    /// `h ∩ rᵢ`, one per red.
    pub segments: [(Point3<T>, Point3<T>); 3],
    pub cell: Triangle2<T>,
    /// Whether `sᵢ` lies on the edge of the bounded cell; false for blues
    /// whose corners sit on the edge lines outside the cell.
    pub in_cell_edge: [bool; 3],
    /// Hull of the segment endpoints, oriented like the old blue.
    pub new_blue: Vec<Point3<T>>,
}

/// What the offset search needs to know about one blue.
struct BlueSetup<'a, T> {
    blue: &'a ConvexPolygon3<T>,
    /// Blue plane oriented so the reds are on the closed positive side.
    base: Plane3<T>,
    reds: [&'a ConvexPolygon3<T>; 3],
    contact_corners: [Point3<T>; 3],
    reference: Sign,
    frame: PlaneFrame,
    /// Per red, points used by contacts with polygons other than the blue.
    pinned: [BTreeSet<Point3<T>>; 3],
}

fn setup<'a, T: ExactScalar>(
    polys: &'a [ConvexPolygon3<T>],
    report: &ContactReport<T>,
    cert: &OneSidednessCertificate,
    blue_id: &str,
) -> Result<BlueSetup<'a, T>, TransformError> {
    let pre = |m: String| TransformError::Precondition(m);
    let get = |id: &str| polys.iter().find(|p| p.id == id);
    let blue = get(blue_id).ok_or_else(|| pre(format!("no polygon {blue_id}")))?;
    if blue.len() != 3 {
        return Err(pre(format!(
            "{blue_id} has {} corners, expected a triangle",
            blue.len()
        )));
    }
    let mut touching = Vec::new();
    for other in report.touching(blue_id) {
        match report.contact(blue_id, other) {
            Some(Contact::Corner(pt)) => {
                touching.push((get(other).expect("reported id exists"), pt.clone()))
            }
            Some(c) => {
                return Err(pre(format!(
                    "{blue_id} and {other} touch in a {} contact",
                    c.kind().as_str()
                )))
            }
            None => {}
        }
    }
    let [(r0, c0), (r1, c1), (r2, c2)]: [(&ConvexPolygon3<T>, Point3<T>); 3] =
        touching.try_into().map_err(|t: Vec<_>| {
            pre(format!(
                "{blue_id} has {} corner contacts, expected 3",
                t.len()
            ))
        })?;
    let side = cert
        .side_of(blue_id)
        .ok_or_else(|| pre(format!("{blue_id} has touching polygons on both sides")))?;
    let base = match side {
        ChosenSide::Positive => blue.plane.clone(),
        ChosenSide::Negative => blue.plane.flipped(),
    };
    let reds = [r0, r1, r2];
    let lines = reds.map(|r| intersect_planes(&base, &r.plane));
    let lines = [lines[0].clone()?, lines[1].clone()?, lines[2].clone()?];
    let cell = triangular_cell(&lines[0], &lines[1], &lines[2], &base)?;
    let mut pinned: [BTreeSet<Point3<T>>; 3] = Default::default();
    for (k, r) in reds.iter().enumerate() {
        for other in report.touching(&r.id) {
            if other == blue_id {
                continue;
            }
            if let Some(c) = report.contact(&r.id, other) {
                pinned[k].extend(c.points().into_iter().cloned());
            }
        }
    }
    Ok(BlueSetup {
        blue,
        frame: PlaneFrame::for_normal(&base.normal()),
        base,
        reds,
        contact_corners: [c0, c1, c2],
        reference: cell.orientation(),
        pinned,
    })
}

/// Checks every predicate for one ε; `None` when some predicate fails.
fn try_offset<T: ExactScalar>(s: &BlueSetup<'_, T>, eps: &T) -> Option<OffsetChoice<T>> {
    let h = s.base.offset(eps);
    let lines: Vec<Line3<T>> = s
        .reds
        .iter()
        .map(|r| intersect_planes(&h, &r.plane).ok())
        .collect::<Option<_>>()?;
    let v = cell_corners([&lines[0], &lines[1], &lines[2]], &h).ok()?;
    let [a, b, c] = v.clone().map(|p| s.frame.project(&p));
    let cell = Triangle2::new(a, b, c)?;
    // (a) same cyclic order of the lines around the cell.
    if cell.orientation() != s.reference {
        return None;
    }
    let mut segments = Vec::with_capacity(3);
    let mut in_cell_edge = [false; 3];
    for (i, r) in s.reds.iter().enumerate() {
        let (p, q) = section(r, &h)?;
        let (e0, e1) = (&v[(i + 1) % 3], &v[(i + 2) % 3]);
        in_cell_edge[i] = between(e0, e1, &p) && between(e0, e1, &q);
        // (c) only the contact corner or otherwise unused corners are cut.
        for corner in r.corners.iter().filter(|c| h.classify(c) == Side::Negative) {
            if *corner != s.contact_corners[i] && s.pinned[i].contains(corner) {
                return None;
            }
        }
        segments.push((p, q));
    }
    // (b) every line supports the other two cuts strictly on one side.
    let normal = h.normal();
    for (i, l) in lines.iter().enumerate() {
        let side = |x: &Point3<T>| normal.dot(&l.dir.cross(&x.sub(&l.base))).sign();
        let others: Vec<Sign> = (0..3)
            .filter(|&j| j != i)
            .flat_map(|j| [side(&segments[j].0), side(&segments[j].1)])
            .collect();
        if others[0] == Sign::Zero || others.iter().any(|o| *o != others[0]) {
            return None;
        }
    }
    let ends: Vec<Point3<T>> = segments
        .iter()
        .flat_map(|(p, q)| [p.clone(), q.clone()])
        .collect();
    let mut hull = planar_hull(&ends, s.frame);
    if hull.len() < 3 {
        return None;
    }
    let probe = validate_polygon(s.blue.id.clone(), hull.clone()).ok()?;
    if probe.plane.normal().dot(&s.blue.plane.normal()).sign() == Sign::Negative {
        hull.reverse();
    }
    if !segments.iter().all(|(p, q)| is_side(&hull, p, q)) {
        return None;
    }
    let segments: [(Point3<T>, Point3<T>); 3] = segments.try_into().ok()?;
    Some(OffsetChoice {
        blue: s.blue.id.clone(),
        epsilon: eps.clone(),
        offset_plane: h,
        reds: s.reds.map(|r| r.id.clone()),
        segments,
        cell,
        in_cell_edge,
        new_blue: hull,
    })
}

/// Finds the largest ε = 2⁻ᵏ, k ≤ 256, for which the offset plane meets all
/// predicates.
pub fn choose_offset<T: ExactScalar>(
    polys: &[ConvexPolygon3<T>],
    report: &ContactReport<T>,
    cert: &OneSidednessCertificate,
    blue_id: &str,
) -> Result<OffsetChoice<T>, TransformError> {
    let s = setup(polys, report, cert, blue_id)?;
    let half = T::from_ratio(1, 2);
    let mut eps = T::one();
    for _ in 0..=MAX_HALVINGS {
        if let Some(choice) = try_offset(&s, &eps) {
            return Ok(choice);
        }
        eps = eps * half.clone();
    }
    Err(TransformError::OffsetNotFound {
        blue: blue_id.to_string(),
    })
}

/// Offset choice for `blue_id` at a fixed ε, if admissible.
pub fn offset_at<T: ExactScalar>(
    polys: &[ConvexPolygon3<T>],
    report: &ContactReport<T>,
    cert: &OneSidednessCertificate,
    blue_id: &str,
    eps: &T,
) -> Result<Option<OffsetChoice<T>>, TransformError> {
    let s = setup(polys, report, cert, blue_id)?;
    Ok(try_offset(&s, eps))
}

/// Swaps in the new blue and trims each of its reds to the far side of `h`.
pub fn replace_blue<T: ExactScalar>(
    scene: &Scene<T>,
    choice: &OffsetChoice<T>,
) -> Result<Scene<T>, TransformError> {
    let mut out = scene.clone();
    for red in &choice.reds {
        let raw = &scene
            .polygons
            .get(red)
            .ok_or_else(|| SceneError::UnknownId(red.clone()))?
            .corners;
        let poly = validate_polygon(red.clone(), raw.clone())?;
        match clip_polygon_halfspace(&poly, &choice.offset_plane, Keep::Positive)? {
            Clipped::Polygon(p) => out.set_corners(red, p.corners)?,
            Clipped::Empty => {
                return Err(TransformError::Precondition(format!(
                    "{red} vanishes under the cut"
                )))
            }
        }
    }
    out.set_corners(&choice.blue, choice.new_blue.clone())?;
    Ok(out)
}

/// Processes every blue in id order and returns the side-contact scene with
/// the offset used at each step.
///
/// One-sidedness is read per contact: in the input the reds have blues on
/// both sides of their planes, and only the blues' own one-sidedness is
/// used. Each blue must have all its reds on one side.
pub fn corner_to_side<T: ExactScalar>(
    scene: &Scene<T>,
) -> Result<(Scene<T>, Vec<OffsetChoice<T>>), TransformError> {
    let semantics = Some(OneSidedness::PerContact);
    let (pre, mut polys, mut report) = verify_detailed(scene, Mode::Corner, semantics);
    if !pre.passed {
        return Err(TransformError::Precondition(format!(
            "input is not a one-sided corner-contact representation: {}",
            pre.failed_checks().join(", ")
        )));
    }
    let blues = scene.ids_of(Class::Blue);
    if blues.is_empty() {
        return Err(TransformError::Precondition(
            "scene has no blue polygons".into(),
        ));
    }
    let mut current = scene.clone();
    let mut trace = Vec::with_capacity(blues.len());
    for (step, blue) in blues.iter().enumerate() {
        let cert = check_one_sided(&polys, &report, OneSidedness::PerContact)
            .map_err(|v| TransformError::Precondition(v.to_string()))?;
        let choice = choose_offset(&polys, &report, &cert, blue)?;
        current = replace_blue(&current, &choice)?;
        let (check, p, r) = verify_detailed(&current, Mode::Any, semantics);
        if !check.passed {
            return Err(TransformError::StepFailed {
                step,
                blue: blue.clone(),
                report: Box::new(check),
            });
        }
        (polys, report) = (p, r);
        trace.push(choice);
    }
    let last = verify_with(&current, Mode::Side, semantics);
    if !last.passed {
        return Err(TransformError::StepFailed {
            step: blues.len(),
            blue: blues.last().expect("non-empty").clone(),
            report: Box::new(last),
        });
    }
    Ok((current, trace))
}
