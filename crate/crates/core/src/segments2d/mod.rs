//! Convex sets of planar segments and their support intersection points.
//!
//! A set of segments is in convex position when every segment lies on the
//! boundary of the convex hull of all endpoints and no two segments are
//! parallel. Walking the hull clockwise visits the segments in a cyclic
//! order; the supporting lines of two segments meet in a support
//! intersection point (si-point), and for cyclically consecutive segments in
//! a consecutive one (csi-point). A csi-point is *flopped* when it lies on
//! the inner closed side of the hull edge joining its two segments.
//!
//! Besides the constructions this module carries the executable checks used
//! by the property suites: at most one flopped csi-point per set, a
//! csi-point strictly inside any two admissible half-planes, and all
//! si-points inside the triangle spanned by a flopped csi-point.

pub mod fixtures;
pub mod random;

use std::fmt;

use thiserror::Error;

use crate::scalar::{Scalar, Sign};

pub use random::{random_convex_set, sample_halfplanes};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SegmentError {
    #[error("need at least {need} segments, got {got}")]
    TooFewSegments { need: usize, got: usize },
    #[error("segment {0} has coincident endpoints")]
    DegenerateSegment(usize),
    #[error("segment {0} is not on the convex hull of the endpoints")]
    NotOnHull(usize),
    #[error("segments {0} and {1} have the same slope")]
    DuplicateSlope(usize, usize),
    #[error("half-plane H{half_plane} violates hypothesis {hypothesis}: segment {segment}")]
    PreconditionViolated {
        /// `"i"`: the half-plane must contain every endpoint; `"ii"`: no
        /// segment may lie entirely on its boundary.
        hypothesis: &'static str,
        half_plane: u8,
        segment: usize,
    },
    #[error("no csi-point lies strictly inside both half-planes")]
    LemmaViolation,
    #[error("the set has no flopped csi-point")]
    NoFloppedPoint,
    #[error("generator gave up after {0} attempts")]
    GeneratorExhausted(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point2<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point2<T> {
    pub fn new(x: T, y: T) -> Self {
        Point2 { x, y }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Point2::new(self.x.clone() - o.x.clone(), self.y.clone() - o.y.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        Point2::new(self.x.clone() + o.x.clone(), self.y.clone() + o.y.clone())
    }

    pub fn scale(&self, k: &T) -> Self {
        Point2::new(self.x.clone() * k.clone(), self.y.clone() * k.clone())
    }

    pub fn dot(&self, o: &Self) -> T {
        self.x.clone() * o.x.clone() + self.y.clone() * o.y.clone()
    }

    pub fn cross(&self, o: &Self) -> T {
        self.x.clone() * o.y.clone() - self.y.clone() * o.x.clone()
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Point2<U> {
        Point2 {
            x: f(&self.x),
            y: f(&self.y),
        }
    }
}

impl<T: fmt::Display> fmt::Display for Point2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Sign of the turn `a → b → c`; positive is counter-clockwise.
pub fn orient<T: Scalar>(a: &Point2<T>, b: &Point2<T>, c: &Point2<T>) -> Sign {
    // (b − a) × (c − a), expanded.
    T::sum_of_products_sign(&[
        (&b.x, &c.y, false),
        (&b.x, &a.y, true),
        (&a.x, &c.y, true),
        (&b.y, &c.x, true),
        (&b.y, &a.x, false),
        (&a.y, &c.x, false),
    ])
}

/// `a·x + b·y + c = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Line2<T> {
    pub a: T,
    pub b: T,
    pub c: T,
}

impl<T: Scalar> Line2<T> {
    pub fn through(p: &Point2<T>, q: &Point2<T>) -> Self {
        // Normal is the left perpendicular of q − p.
        let d = q.sub(p);
        let a = -d.y.clone();
        let b = d.x.clone();
        let c = -(a.clone() * p.x.clone() + b.clone() * p.y.clone());
        Line2 { a, b, c }
    }

    pub fn eval(&self, p: &Point2<T>) -> T {
        self.a.clone() * p.x.clone() + self.b.clone() * p.y.clone() + self.c.clone()
    }

    pub fn side(&self, p: &Point2<T>) -> Sign {
        let one = T::one();
        T::sum_of_products_sign(&[
            (&self.a, &p.x, false),
            (&self.b, &p.y, false),
            (&self.c, &one, false),
        ])
    }

    pub fn intersect(&self, o: &Self) -> Option<Point2<T>> {
        let det = self.a.clone() * o.b.clone() - self.b.clone() * o.a.clone();
        if det.sign().is_zero() {
            return None;
        }
        let x = self.b.clone() * o.c.clone() - self.c.clone() * o.b.clone();
        let y = self.c.clone() * o.a.clone() - self.a.clone() * o.c.clone();
        Some(Point2::new(x.div_nonzero(&det), y.div_nonzero(&det)))
    }
}

/// The closed half-plane `a·x + b·y + c ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HalfPlane2<T> {
    pub line: Line2<T>,
}

impl<T: Scalar> HalfPlane2<T> {
    pub fn new(a: T, b: T, c: T) -> Self {
        HalfPlane2 {
            line: Line2 { a, b, c },
        }
    }

    pub fn contains(&self, p: &Point2<T>) -> bool {
        self.line.side(p) != Sign::Negative
    }

    pub fn contains_strictly(&self, p: &Point2<T>) -> bool {
        self.line.side(p) == Sign::Positive
    }

    pub fn on_boundary(&self, p: &Point2<T>) -> bool {
        self.line.side(p) == Sign::Zero
    }
}

/// A segment oriented so the hull interior is on its right (clockwise walk).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Segment2<T> {
    pub a: Point2<T>,
    pub b: Point2<T>,
}

impl<T: Scalar> Segment2<T> {
    pub fn new(a: Point2<T>, b: Point2<T>) -> Self {
        Segment2 { a, b }
    }

    pub fn dir(&self) -> Point2<T> {
        self.b.sub(&self.a)
    }

    pub fn line(&self) -> Line2<T> {
        Line2::through(&self.a, &self.b)
    }
}

/// Segments in convex position, stored in clockwise hull order.
///
/// `order[k]` is the input index of the segment at position `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentSet2<T> {
    pub segments: Vec<Segment2<T>>,
    pub order: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsiPoint<T> {
    pub point: Point2<T>,
    /// Position of the first segment in clockwise order.
    pub i: usize,
    /// Its cyclic successor.
    pub j: usize,
    pub flopped: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle2<T> {
    pub a: Point2<T>,
    pub b: Point2<T>,
    pub c: Point2<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

impl<T: Scalar> Triangle2<T> {
    /// `None` for a degenerate triangle.
    pub fn new(a: Point2<T>, b: Point2<T>, c: Point2<T>) -> Option<Self> {
        (orient(&a, &b, &c) != Sign::Zero).then_some(Triangle2 { a, b, c })
    }

    pub fn orientation(&self) -> Sign {
        orient(&self.a, &self.b, &self.c)
    }

    pub fn locate(&self, p: &Point2<T>) -> Location {
        let o = self.orientation();
        let signs = [
            orient(&self.a, &self.b, p),
            orient(&self.b, &self.c, p),
            orient(&self.c, &self.a, p),
        ];
        if signs.iter().any(|s| *s == o.flip()) {
            Location::Exterior
        } else if signs.iter().all(|s| *s == o) {
            Location::Interior
        } else {
            Location::Boundary
        }
    }
}

/// Counter-clockwise angular order of direction vectors, starting at +x.
fn angle_cmp<T: Scalar>(u: &Point2<T>, v: &Point2<T>) -> std::cmp::Ordering {
    let half = |d: &Point2<T>| {
        let sy = d.y.sign();
        if sy == Sign::Positive || (sy == Sign::Zero && d.x.sign() == Sign::Positive) {
            0
        } else {
            1
        }
    };
    half(u).cmp(&half(v)).then_with(|| match u.cross(v).sign() {
        Sign::Positive => std::cmp::Ordering::Less,
        Sign::Negative => std::cmp::Ordering::Greater,
        Sign::Zero => std::cmp::Ordering::Equal,
    })
}

/// Validates convex position and computes the clockwise hull order.
pub fn build_convex_set<T: Scalar>(
    segments: Vec<(Point2<T>, Point2<T>)>,
) -> Result<SegmentSet2<T>, SegmentError> {
    let m = segments.len();
    if m < 2 {
        return Err(SegmentError::TooFewSegments { need: 2, got: m });
    }
    for (i, (p, q)) in segments.iter().enumerate() {
        if p == q {
            return Err(SegmentError::DegenerateSegment(i));
        }
    }
    for i in 0..m {
        let di = segments[i].1.sub(&segments[i].0);
        for (j, (p, q)) in segments.iter().enumerate().skip(i + 1) {
            if di.cross(&q.sub(p)).sign().is_zero() {
                return Err(SegmentError::DuplicateSlope(i, j));
            }
        }
    }
    let endpoints: Vec<&Point2<T>> = segments.iter().flat_map(|(p, q)| [p, q]).collect();
    let mut oriented = Vec::with_capacity(m);
    for (i, (p, q)) in segments.iter().enumerate() {
        let mut left = false;
        let mut right = false;
        for e in &endpoints {
            match orient(p, q, e) {
                Sign::Positive => left = true,
                Sign::Negative => right = true,
                Sign::Zero => {}
            }
        }
        if left && right {
            return Err(SegmentError::NotOnHull(i));
        }
        // Clockwise walk keeps everything on the right.
        let seg = if left {
            Segment2::new(q.clone(), p.clone())
        } else {
            Segment2::new(p.clone(), q.clone())
        };
        oriented.push((i, seg));
    }
    // Clockwise traversal visits edge directions in decreasing angle.
    oriented.sort_by(|(_, s), (_, t)| angle_cmp(&t.dir(), &s.dir()));
    let (order, segments) = oriented.into_iter().unzip();
    Ok(SegmentSet2 { segments, order })
}

impl<T: Scalar> SegmentSet2<T> {
    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn endpoints(&self) -> impl Iterator<Item = &Point2<T>> + '_ {
        self.segments.iter().flat_map(|s| [&s.a, &s.b])
    }

    /// Supporting-line intersection of the segments at positions `i`, `j`.
    pub fn si_point(&self, i: usize, j: usize) -> Point2<T> {
        self.segments[i]
            .line()
            .intersect(&self.segments[j].line())
            .expect("distinct slopes guarantee an intersection")
    }

    /// Same set with positions rotated so `start` comes first.
    pub fn rotated(&self, start: usize) -> SegmentSet2<T> {
        let m = self.len();
        let idx: Vec<usize> = (0..m).map(|k| (start + k) % m).collect();
        SegmentSet2 {
            segments: idx.iter().map(|&k| self.segments[k].clone()).collect(),
            order: idx.iter().map(|&k| self.order[k]).collect(),
        }
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> SegmentSet2<U> {
        SegmentSet2 {
            segments: self
                .segments
                .iter()
                .map(|s| Segment2 {
                    a: s.a.map(&f),
                    b: s.b.map(&f),
                })
                .collect(),
            order: self.order.clone(),
        }
    }
}

/// All `m(m−1)/2` support intersection points as `(i, j, point)`, `i < j`.
pub fn si_points<T: Scalar>(set: &SegmentSet2<T>) -> Vec<(usize, usize, Point2<T>)> {
    let m = set.len();
    let mut out = Vec::with_capacity(m * (m - 1) / 2);
    for i in 0..m {
        for j in i + 1..m {
            out.push((i, j, set.si_point(i, j)));
        }
    }
    out
}

/// Whether the csi-point `point` of the pair `(i, j)` is flopped.
fn is_flopped<T: Scalar>(set: &SegmentSet2<T>, i: usize, j: usize, point: &Point2<T>) -> bool {
    // Hull edge from the end of sᵢ to the start of sⱼ.
    let from = &set.segments[i].b;
    let to = &set.segments[j].a;
    from != to && {
        let c_side = orient(from, to, point);
        c_side != Sign::Zero
            && set
                .endpoints()
                .all(|e| orient(from, to, e) != c_side.flip())
    }
}

/// One csi-point per cyclically consecutive pair, with its flopped flag.
pub fn csi_points<T: Scalar>(set: &SegmentSet2<T>) -> Vec<CsiPoint<T>> {
    let m = set.len();
    (0..m)
        .map(|i| {
            let j = (i + 1) % m;
            let point = set.si_point(i, j);
            let flopped = is_flopped(set, i, j, &point);
            CsiPoint {
                point,
                i,
                j,
                flopped,
            }
        })
        .collect()
}

pub fn count_flopped<T: Scalar>(set: &SegmentSet2<T>) -> usize {
    csi_points(set).iter().filter(|c| c.flopped).count()
}

/// Finds a csi-point strictly inside `h1 ∩ h2`.
///
/// Both half-planes must contain every endpoint and neither boundary may
/// hold a whole segment; with at least four segments such a csi-point
/// always exists, so [`SegmentError::LemmaViolation`] signals a bug.
pub fn halfspace_csi_witness<T: Scalar>(
    set: &SegmentSet2<T>,
    h1: &HalfPlane2<T>,
    h2: &HalfPlane2<T>,
) -> Result<CsiPoint<T>, SegmentError> {
    if set.len() < 4 {
        return Err(SegmentError::TooFewSegments {
            need: 4,
            got: set.len(),
        });
    }
    for (k, h) in [(1u8, h1), (2u8, h2)] {
        for (idx, s) in set.segments.iter().enumerate() {
            let (a, b) = (h.line.side(&s.a), h.line.side(&s.b));
            let hypothesis = if a == Sign::Negative || b == Sign::Negative {
                "i"
            } else if a == Sign::Zero && b == Sign::Zero {
                "ii"
            } else {
                continue;
            };
            return Err(SegmentError::PreconditionViolated {
                hypothesis,
                half_plane: k,
                segment: idx,
            });
        }
    }
    let m = set.len();
    (0..m)
        .find_map(|i| {
            let j = (i + 1) % m;
            let point = set.si_point(i, j);
            (h1.contains_strictly(&point) && h2.contains_strictly(&point)).then(|| {
                let flopped = is_flopped(set, i, j, &point);
                CsiPoint {
                    point,
                    i,
                    j,
                    flopped,
                }
            })
        })
        .ok_or(SegmentError::LemmaViolation)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiPlacement<T> {
    /// Positions in the reindexed order, where the flopped pair is `(m−1, 0)`.
    pub i: usize,
    pub j: usize,
    pub point: Point2<T>,
    pub location: Location,
    /// Pair involves the first or last reindexed segment.
    pub extreme: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleReport<T> {
    pub triangle: Triangle2<T>,
    pub flopped: CsiPoint<T>,
    /// The set reindexed so the flopped csi-point joins the last and first
    /// segment.
    pub reindexed: SegmentSet2<T>,
    pub placements: Vec<SiPlacement<T>>,
    pub holds: bool,
}

/// Checks that every si-point lies in the triangle spanned by a flopped
/// csi-point and the hull edge under it: on the closed triangle for pairs
/// with an extreme segment, strictly inside for all others.
pub fn flopped_triangle_containment<T: Scalar>(
    set: &SegmentSet2<T>,
) -> Result<TriangleReport<T>, SegmentError> {
    let flopped = csi_points(set)
        .into_iter()
        .find(|c| c.flopped)
        .ok_or(SegmentError::NoFloppedPoint)?;
    let re = set.rotated(flopped.j);
    let m = re.len();
    let a = re.segments[0].a.clone();
    let b = re.segments[m - 1].b.clone();
    let triangle = Triangle2::new(a, b, flopped.point.clone())
        .expect("a flopped csi-point is strictly off the hull edge");
    let mut holds = true;
    let placements = si_points(&re)
        .into_iter()
        .map(|(i, j, point)| {
            let location = triangle.locate(&point);
            let extreme = i == 0 || j == m - 1;
            let ok = match location {
                Location::Interior => true,
                Location::Boundary => extreme,
                Location::Exterior => false,
            };
            holds &= ok;
            SiPlacement {
                i,
                j,
                point,
                location,
                extreme,
            }
        })
        .collect();
    Ok(TriangleReport {
        triangle,
        flopped,
        reindexed: re,
        placements,
        holds,
    })
}
