//! Scenes of labeled convex polygons, exact contact classification, contact
//! graphs, one-sidedness certificates and the full representation check.
//!
//! Two polygons are adjacent in side mode when they share a full side
//! (equal endpoint sets) and in corner mode when they meet in exactly one
//! point that is a corner of both. A side may belong to at most two
//! polygons. A representation is one-sided when, for every polygon, the
//! corners of all polygons touching it lie in one closed half-space of its
//! supporting plane.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom3d::{
    intersection_points, polygons_interior_disjoint, validate_polygon, ConvexPolygon3,
    Disjointness, GeomError, Point3, Side,
};
use crate::scalar::{ExactScalar, Scalar};

/// Partition class of a polygon in a bipartite scene.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Class {
    Red,
    Blue,
}

impl Class {
    pub fn as_str(self) -> &'static str {
        match self {
            Class::Red => "red",
            Class::Blue => "blue",
        }
    }

    pub fn parse(s: &str) -> Option<Class> {
        match s {
            "red" => Some(Class::Red),
            "blue" => Some(Class::Blue),
            _ => None,
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpectedGraph {
    /// `K_{s,t}`; `binding` names the classes of the `s` and `t` sides, or
    /// is inferred from the class sizes when absent.
    CompleteBipartite {
        s: usize,
        t: usize,
        binding: Option<(Class, Class)>,
    },
    /// Explicit edge list keyed by polygon id; pairs are stored sorted.
    Edges(BTreeSet<(String, String)>),
}

impl ExpectedGraph {
    pub fn complete_bipartite(s: usize, t: usize) -> Self {
        ExpectedGraph::CompleteBipartite {
            s,
            t,
            binding: None,
        }
    }

    pub fn edges<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, S)>,
        S: Into<String>,
    {
        ExpectedGraph::Edges(
            pairs
                .into_iter()
                .map(|(a, b)| ordered(a.into(), b.into()))
                .collect(),
        )
    }
}

fn ordered(a: String, b: String) -> (String, String) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Unvalidated polygon as stored in a scene.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenePolygon<T> {
    pub class: Option<Class>,
    pub corners: Vec<Point3<T>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SceneError {
    #[error("duplicate polygon id {0:?}")]
    DuplicateId(String),
    #[error("unknown polygon id {0:?}")]
    UnknownId(String),
    #[error("polygons {a} and {b} overlap in their interiors at {witness}")]
    InvalidScene {
        a: String,
        b: String,
        witness: String,
    },
    #[error("polygon {id} is invalid: {source}")]
    InvalidPolygon { id: String, source: GeomError },
}

/// Polygons keyed by id, plus an optional expected contact graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scene<T> {
    pub polygons: BTreeMap<String, ScenePolygon<T>>,
    pub expected: Option<ExpectedGraph>,
}

impl<T> Default for Scene<T> {
    fn default() -> Self {
        Scene {
            polygons: BTreeMap::new(),
            expected: None,
        }
    }
}

impl<T: Scalar> Scene<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(
        &mut self,
        id: impl Into<String>,
        class: Option<Class>,
        corners: Vec<Point3<T>>,
    ) -> Result<(), SceneError> {
        let id = id.into();
        if self.polygons.contains_key(&id) {
            return Err(SceneError::DuplicateId(id));
        }
        self.polygons.insert(id, ScenePolygon { class, corners });
        Ok(())
    }

    pub fn class_of(&self, id: &str) -> Option<Class> {
        self.polygons.get(id).and_then(|p| p.class)
    }

    pub fn ids_of(&self, class: Class) -> Vec<String> {
        self.polygons
            .iter()
            .filter(|(_, p)| p.class == Some(class))
            .map(|(id, _)| id.clone())
            .collect()
    }

    /// Validates every polygon, in id order; invalid ones are returned
    /// separately.
    pub fn validate(&self) -> (Vec<ConvexPolygon3<T>>, Vec<(String, GeomError)>) {
        let mut ok = Vec::new();
        let mut bad = Vec::new();
        for (id, p) in &self.polygons {
            match validate_polygon(id.clone(), p.corners.clone()) {
                Ok(v) => ok.push(v),
                Err(e) => bad.push((id.clone(), e)),
            }
        }
        (ok, bad)
    }

    pub fn validated(&self) -> Result<Vec<ConvexPolygon3<T>>, SceneError> {
        let (ok, bad) = self.validate();
        match bad.into_iter().next() {
            Some((id, source)) => Err(SceneError::InvalidPolygon { id, source }),
            None => Ok(ok),
        }
    }

    /// Replaces the corners of an existing polygon.
    pub fn set_corners(&mut self, id: &str, corners: Vec<Point3<T>>) -> Result<(), SceneError> {
        let p = self
            .polygons
            .get_mut(id)
            .ok_or_else(|| SceneError::UnknownId(id.to_string()))?;
        p.corners = corners;
        Ok(())
    }
}

/// Pairwise contact between two valid polygons.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Contact<T> {
    None,
    /// Exactly one common point, a corner of both.
    Corner(Point3<T>),
    /// A full side of both; endpoints in canonical order.
    Side(Point3<T>, Point3<T>),
    /// A common boundary segment that is not a full side of both.
    PartialSide(Point3<T>, Point3<T>),
    /// A single common point that is not a corner of both.
    PointTouch(Point3<T>),
    InteriorOverlap(Point3<T>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ContactKind {
    None,
    Corner,
    Side,
    PartialSide,
    PointTouch,
    InteriorOverlap,
}

impl ContactKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ContactKind::None => "none",
            ContactKind::Corner => "corner",
            ContactKind::Side => "side",
            ContactKind::PartialSide => "partial_side",
            ContactKind::PointTouch => "point_touch",
            ContactKind::InteriorOverlap => "interior_overlap",
        }
    }
}

impl<T> Contact<T> {
    pub fn kind(&self) -> ContactKind {
        match self {
            Contact::None => ContactKind::None,
            Contact::Corner(_) => ContactKind::Corner,
            Contact::Side(..) => ContactKind::Side,
            Contact::PartialSide(..) => ContactKind::PartialSide,
            Contact::PointTouch(_) => ContactKind::PointTouch,
            Contact::InteriorOverlap(_) => ContactKind::InteriorOverlap,
        }
    }

    pub fn points(&self) -> Vec<&Point3<T>> {
        match self {
            Contact::None => vec![],
            Contact::Corner(p) | Contact::PointTouch(p) | Contact::InteriorOverlap(p) => vec![p],
            Contact::Side(a, b) | Contact::PartialSide(a, b) => vec![a, b],
        }
    }

    /// Any shared boundary point.
    pub fn is_touching(&self) -> bool {
        !matches!(self, Contact::None | Contact::InteriorOverlap(_))
    }
}

pub(crate) fn canonical_segment<T: ExactScalar>(
    a: &Point3<T>,
    b: &Point3<T>,
) -> (Point3<T>, Point3<T>) {
    if a <= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}

fn farthest<'a, T: ExactScalar>(from: &Point3<T>, pts: &'a [Point3<T>]) -> &'a Point3<T> {
    pts.iter()
        .max_by(|u, v| {
            let du = u.sub(from);
            let dv = v.sub(from);
            du.dot(&du).cmp(&dv.dot(&dv))
        })
        .expect("non-empty")
}

pub fn detect_contact<T: ExactScalar>(p: &ConvexPolygon3<T>, q: &ConvexPolygon3<T>) -> Contact<T> {
    if let Disjointness::Overlap(w) = polygons_interior_disjoint(p, q) {
        return Contact::InteriorOverlap(w);
    }
    let q_sides: BTreeSet<_> = q.sides().map(|(a, b)| canonical_segment(a, b)).collect();
    for (a, b) in p.sides() {
        let s = canonical_segment(a, b);
        if q_sides.contains(&s) {
            return Contact::Side(s.0, s.1);
        }
    }
    let pts = intersection_points(p, q);
    match pts.len() {
        0 => Contact::None,
        1 => {
            let x = pts.into_iter().next().expect("one point");
            if p.has_corner(&x) && q.has_corner(&x) {
                Contact::Corner(x)
            } else {
                Contact::PointTouch(x)
            }
        }
        _ => {
            // Interiors are disjoint, so the closed intersection is a segment.
            let u = farthest(&pts[0], &pts).clone();
            let v = farthest(&u, &pts).clone();
            let (a, b) = canonical_segment(&u, &v);
            Contact::PartialSide(a, b)
        }
    }
}

/// Exact axis-aligned bounding box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Bbox<T> {
    lo: Point3<T>,
    hi: Point3<T>,
}

impl<T: ExactScalar> Bbox<T> {
    pub(crate) fn of(pts: &[Point3<T>]) -> Self {
        let mut lo = pts[0].clone();
        let mut hi = pts[0].clone();
        for p in &pts[1..] {
            for (l, h, v) in [
                (&mut lo.x, &mut hi.x, &p.x),
                (&mut lo.y, &mut hi.y, &p.y),
                (&mut lo.z, &mut hi.z, &p.z),
            ] {
                if v < l {
                    *l = v.clone();
                }
                if v > h {
                    *h = v.clone();
                }
            }
        }
        Bbox { lo, hi }
    }

    /// Closed boxes intersect.
    pub(crate) fn meets(&self, o: &Self) -> bool {
        self.lo.x <= o.hi.x
            && o.lo.x <= self.hi.x
            && self.lo.y <= o.hi.y
            && o.lo.y <= self.hi.y
            && self.lo.z <= o.hi.z
            && o.lo.z <= self.hi.z
    }

    pub(crate) fn contains(&self, o: &Self) -> bool {
        self.lo.x <= o.lo.x
            && self.lo.y <= o.lo.y
            && self.lo.z <= o.lo.z
            && o.hi.x <= self.hi.x
            && o.hi.y <= self.hi.y
            && o.hi.z <= self.hi.z
    }
}

/// Which contacts count as adjacency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Side,
    Corner,
    /// Either kind; used for scenes in the middle of the corner-to-side
    /// transform.
    Any,
}

impl Mode {
    pub fn adjacent<T>(self, c: &Contact<T>) -> bool {
        matches!(
            (self, c),
            (Mode::Side | Mode::Any, Contact::Side(..))
                | (Mode::Corner | Mode::Any, Contact::Corner(_))
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Side => "side",
            Mode::Corner => "corner",
            Mode::Any => "any",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairContact<T> {
    pub a: String,
    pub b: String,
    pub contact: Contact<T>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideUse<T> {
    pub segment: (Point3<T>, Point3<T>),
    pub polygons: Vec<String>,
}

/// Every touching or overlapping pair (in id order) and the use count of
/// every distinct side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContactReport<T> {
    pub pairs: Vec<PairContact<T>>,
    pub sides: Vec<SideUse<T>>,
}

impl<T: ExactScalar> ContactReport<T> {
    pub fn compute(polys: &[ConvexPolygon3<T>]) -> Self {
        let mut sorted: Vec<&ConvexPolygon3<T>> = polys.iter().collect();
        sorted.sort_by(|a, b| a.id.cmp(&b.id));
        let boxes: Vec<Bbox<T>> = sorted.iter().map(|p| Bbox::of(&p.corners)).collect();
        let mut pairs = Vec::new();
        for (i, p) in sorted.iter().enumerate() {
            for (j, q) in sorted.iter().enumerate().skip(i + 1) {
                if !boxes[i].meets(&boxes[j]) {
                    continue;
                }
                let contact = detect_contact(p, q);
                if contact != Contact::None {
                    pairs.push(PairContact {
                        a: p.id.clone(),
                        b: q.id.clone(),
                        contact,
                    });
                }
            }
        }
        let mut uses: BTreeMap<(Point3<T>, Point3<T>), Vec<String>> = BTreeMap::new();
        for p in &sorted {
            for (a, b) in p.sides() {
                uses.entry(canonical_segment(a, b))
                    .or_default()
                    .push(p.id.clone());
            }
        }
        let sides = uses
            .into_iter()
            .map(|(segment, polygons)| SideUse { segment, polygons })
            .collect();
        ContactReport { pairs, sides }
    }

    pub fn contact(&self, a: &str, b: &str) -> Option<&Contact<T>> {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        self.pairs
            .iter()
            .find(|pc| pc.a == a && pc.b == b)
            .map(|pc| &pc.contact)
    }

    pub fn count(&self, kind: ContactKind) -> usize {
        self.pairs
            .iter()
            .filter(|pc| pc.contact.kind() == kind)
            .count()
    }

    /// Ids touching `id`, in id order.
    pub fn touching(&self, id: &str) -> Vec<&str> {
        let mut out: Vec<&str> = self
            .pairs
            .iter()
            .filter(|pc| pc.contact.is_touching())
            .filter_map(|pc| {
                if pc.a == id {
                    Some(pc.b.as_str())
                } else if pc.b == id {
                    Some(pc.a.as_str())
                } else {
                    None
                }
            })
            .collect();
        out.sort();
        out
    }
}

/// Simple undirected graph on polygon ids.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ContactGraph {
    pub vertices: BTreeSet<String>,
    pub edges: BTreeSet<(String, String)>,
}

impl ContactGraph {
    pub fn degree(&self, v: &str) -> usize {
        self.edges.iter().filter(|(a, b)| a == v || b == v).count()
    }
}

/// Contact graph of the selected adjacency kind, with the full report.
pub fn contact_graph<T: ExactScalar>(
    polys: &[ConvexPolygon3<T>],
    mode: Mode,
) -> Result<(ContactGraph, ContactReport<T>), SceneError> {
    let report = ContactReport::compute(polys);
    if let Some(pc) = report
        .pairs
        .iter()
        .find(|pc| pc.contact.kind() == ContactKind::InteriorOverlap)
    {
        let w = pc.contact.points()[0];
        return Err(SceneError::InvalidScene {
            a: pc.a.clone(),
            b: pc.b.clone(),
            witness: format!("{w}"),
        });
    }
    Ok((graph_of(polys, &report, mode), report))
}

fn graph_of<T: ExactScalar>(
    polys: &[ConvexPolygon3<T>],
    report: &ContactReport<T>,
    mode: Mode,
) -> ContactGraph {
    ContactGraph {
        vertices: polys.iter().map(|p| p.id.clone()).collect(),
        edges: report
            .pairs
            .iter()
            .filter(|pc| mode.adjacent(&pc.contact))
            .map(|pc| (pc.a.clone(), pc.b.clone()))
            .collect(),
    }
}

/// Closed side of a polygon's plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChosenSide {
    Positive,
    Negative,
}

impl ChosenSide {
    fn of(side: Side) -> Option<ChosenSide> {
        match side {
            Side::Positive => Some(ChosenSide::Positive),
            Side::Negative => Some(ChosenSide::Negative),
            Side::On => None,
        }
    }
}

/// How strictly one-sidedness is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OneSidedness {
    /// All touching polygons of `p` lie in one closed half-space of `p⁼`.
    Global,
    /// Each touching polygon lies in a closed half-space of `p⁼`, possibly
    /// a different one per neighbour.
    PerContact,
}

/// Sign classes of one touching polygon's corners against `p⁼`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighbourSides {
    pub id: String,
    /// `None` when every corner is on the plane.
    pub side: Option<ChosenSide>,
    pub corners: Vec<Side>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolygonSides {
    pub id: String,
    /// The common closed side of all touching corners, `Positive` when they
    /// are all on the plane, `None` when neighbours sit on both sides.
    pub side: Option<ChosenSide>,
    pub neighbours: Vec<NeighbourSides>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OneSidednessCertificate {
    pub semantics: Option<OneSidedness>,
    pub polygons: Vec<PolygonSides>,
}

impl OneSidednessCertificate {
    pub fn side_of(&self, id: &str) -> Option<ChosenSide> {
        self.polygons
            .iter()
            .find(|p| p.id == id)
            .and_then(|p| p.side)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error(
    "polygon {polygon}: corner {corner} of touching polygon {touching} lies on the opposite side"
)]
pub struct OneSidedViolation {
    pub polygon: String,
    pub touching: String,
    pub corner: usize,
}

/// Classifies all touching corners for every polygon and collects every
/// violation under `semantics`, in id order.
pub fn one_sided_analysis<T: ExactScalar>(
    polys: &[ConvexPolygon3<T>],
    report: &ContactReport<T>,
    semantics: OneSidedness,
) -> (Vec<PolygonSides>, Vec<OneSidedViolation>) {
    let by_id: BTreeMap<&str, &ConvexPolygon3<T>> =
        polys.iter().map(|p| (p.id.as_str(), p)).collect();
    let mut out = Vec::new();
    let mut violations = Vec::new();
    for p in by_id.values() {
        let mut global: Option<ChosenSide> = None;
        let mut mixed = false;
        let mut neighbours = Vec::new();
        for other in report.touching(&p.id) {
            let Some(q) = by_id.get(other) else { continue };
            let corners: Vec<Side> = q.corners.iter().map(|c| p.plane.classify(c)).collect();
            let mut side: Option<ChosenSide> = None;
            for (k, s) in corners.iter().enumerate() {
                let Some(s) = ChosenSide::of(*s) else {
                    continue;
                };
                match side {
                    None => side = Some(s),
                    Some(c) if c != s => {
                        violations.push(OneSidedViolation {
                            polygon: p.id.clone(),
                            touching: other.to_string(),
                            corner: k,
                        });
                        break;
                    }
                    _ => {}
                }
            }
            if let Some(s) = side {
                match global {
                    None => global = Some(s),
                    Some(g) if g != s => {
                        if semantics == OneSidedness::Global && !mixed {
                            let corner = corners
                                .iter()
                                .position(|c| ChosenSide::of(*c) == Some(s))
                                .expect("strict corner");
                            violations.push(OneSidedViolation {
                                polygon: p.id.clone(),
                                touching: other.to_string(),
                                corner,
                            });
                        }
                        mixed = true;
                    }
                    _ => {}
                }
            }
            neighbours.push(NeighbourSides {
                id: other.to_string(),
                side,
                corners,
            });
        }
        let side = if mixed {
            None
        } else {
            Some(global.unwrap_or(ChosenSide::Positive))
        };
        out.push(PolygonSides {
            id: p.id.clone(),
            side,
            neighbours,
        });
    }
    (out, violations)
}

/// Certifies one-sidedness under `semantics`, or names the first witness
/// against it.
pub fn check_one_sided<T: ExactScalar>(
    polys: &[ConvexPolygon3<T>],
    report: &ContactReport<T>,
    semantics: OneSidedness,
) -> Result<OneSidednessCertificate, OneSidedViolation> {
    let (polygons, violations) = one_sided_analysis(polys, report, semantics);
    match violations.into_iter().next() {
        Some(v) => Err(v),
        None => Ok(OneSidednessCertificate {
            semantics: Some(semantics),
            polygons,
        }),
    }
}

/// One named verification check with its failure messages.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub failures: Vec<String>,
}

impl Check {
    fn new(name: &'static str, failures: Vec<String>) -> Self {
        Check {
            name,
            passed: failures.is_empty(),
            failures,
        }
    }
}

pub const CHECK_VALIDITY: &str = "polygon_validity";
pub const CHECK_DISJOINT: &str = "interior_disjointness";
pub const CHECK_MULTIPLICITY: &str = "side_multiplicity";
pub const CHECK_GRAPH: &str = "contact_graph";
pub const CHECK_ONE_SIDED: &str = "one_sidedness";

/// Exact point with a decimal rendering alongside.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointText {
    pub exact: [String; 3],
    pub approx: [String; 3],
}

pub const REPORT_PRECISION: usize = 9;

impl PointText {
    pub fn of<T: Scalar>(p: &Point3<T>) -> Self {
        PointText {
            exact: [p.x.to_string(), p.y.to_string(), p.z.to_string()],
            approx: [
                p.x.render_decimal(REPORT_PRECISION),
                p.y.render_decimal(REPORT_PRECISION),
                p.z.render_decimal(REPORT_PRECISION),
            ],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContactEntry {
    pub a: String,
    pub b: String,
    pub kind: ContactKind,
    pub points: Vec<PointText>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct ContactCounts {
    pub side: usize,
    pub corner: usize,
    pub partial_side: usize,
    pub point_touch: usize,
    pub interior_overlap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateEntry {
    pub id: String,
    /// `None` when touching polygons lie on both sides.
    pub side: Option<ChosenSide>,
    pub touching: Vec<NeighbourEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NeighbourEntry {
    pub id: String,
    pub side: Option<ChosenSide>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub mode: Mode,
    pub one_sided: Option<OneSidedness>,
    pub polygons: usize,
    pub checks: Vec<Check>,
    pub counts: ContactCounts,
    pub contacts: Vec<ContactEntry>,
    pub one_sidedness: Option<Vec<CertificateEntry>>,
    pub warnings: Vec<String>,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed_checks(&self) -> Vec<&'static str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name)
            .collect()
    }

    /// Stable JSON rendering (field order is declaration order).
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn fmt_segment<T: Scalar>(s: &(Point3<T>, Point3<T>)) -> String {
    format!("[{}, {}]", s.0, s.1)
}

fn segment_contains<T: ExactScalar>(
    outer: &(Point3<T>, Point3<T>),
    inner: &(Point3<T>, Point3<T>),
) -> bool {
    let d = outer.1.sub(&outer.0);
    let on = |p: &Point3<T>| {
        let v = p.sub(&outer.0);
        if !v.cross(&d).is_zero() {
            return false;
        }
        let t = v.dot(&d);
        t.sign() != crate::scalar::Sign::Negative && t <= d.dot(&d)
    };
    on(&inner.0) && on(&inner.1)
}

fn expected_edges<T: Scalar>(
    scene: &Scene<T>,
    expected: &ExpectedGraph,
    failures: &mut Vec<String>,
) -> BTreeSet<(String, String)> {
    match expected {
        ExpectedGraph::Edges(e) => {
            for (a, b) in e {
                for id in [a, b] {
                    if !scene.polygons.contains_key(id) {
                        failures.push(format!("expected edge names unknown polygon {id}"));
                    }
                }
            }
            e.clone()
        }
        ExpectedGraph::CompleteBipartite { s, t, binding } => {
            let unlabeled: Vec<&String> = scene
                .polygons
                .iter()
                .filter(|(_, p)| p.class.is_none())
                .map(|(id, _)| id)
                .collect();
            if !unlabeled.is_empty() {
                failures.push(format!("polygons without class: {}", join(unlabeled)));
            }
            let reds = scene.ids_of(Class::Red);
            let blues = scene.ids_of(Class::Blue);
            let (s_ids, t_ids) = match binding {
                Some((Class::Red, _)) => (&reds, &blues),
                Some((Class::Blue, _)) => (&blues, &reds),
                None if reds.len() == *s && blues.len() == *t => (&reds, &blues),
                None => (&blues, &reds),
            };
            if s_ids.len() != *s || t_ids.len() != *t {
                failures.push(format!(
                    "class sizes {}+{} do not match K{},{}",
                    s_ids.len(),
                    t_ids.len(),
                    s,
                    t
                ));
            }
            s_ids
                .iter()
                .flat_map(|a| t_ids.iter().map(move |b| ordered(a.clone(), b.clone())))
                .collect()
        }
    }
}

fn join<S: AsRef<str>>(items: impl IntoIterator<Item = S>) -> String {
    items
        .into_iter()
        .map(|s| s.as_ref().to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Runs every check and collects failures as report entries. One-sidedness
/// is read globally when required.
pub fn verify_representation<T: ExactScalar>(
    scene: &Scene<T>,
    mode: Mode,
    require_one_sided: bool,
) -> VerificationReport {
    verify_with(
        scene,
        mode,
        require_one_sided.then_some(OneSidedness::Global),
    )
}

/// [`verify_representation`] with an explicit one-sidedness reading.
pub fn verify_with<T: ExactScalar>(
    scene: &Scene<T>,
    mode: Mode,
    one_sided: Option<OneSidedness>,
) -> VerificationReport {
    verify_detailed(scene, mode, one_sided).0
}

/// [`verify_with`], also returning the valid polygons and the contact report
/// it computed.
pub fn verify_detailed<T: ExactScalar>(
    scene: &Scene<T>,
    mode: Mode,
    one_sided: Option<OneSidedness>,
) -> (VerificationReport, Vec<ConvexPolygon3<T>>, ContactReport<T>) {
    let (polys, invalid) = scene.validate();
    let mut checks = Vec::new();
    let mut warnings = Vec::new();

    checks.push(Check::new(
        CHECK_VALIDITY,
        invalid.iter().map(|(id, e)| format!("{id}: {e}")).collect(),
    ));

    let report = ContactReport::compute(&polys);

    checks.push(Check::new(
        CHECK_DISJOINT,
        report
            .pairs
            .iter()
            .filter(|pc| pc.contact.kind() == ContactKind::InteriorOverlap)
            .map(|pc| {
                format!(
                    "{} and {} overlap at {}",
                    pc.a,
                    pc.b,
                    pc.contact.points()[0]
                )
            })
            .collect(),
    ));

    let mut mult = Vec::new();
    for u in &report.sides {
        if u.polygons.len() > 2 {
            mult.push(format!(
                "side {} belongs to {} polygons: {}",
                fmt_segment(&u.segment),
                u.polygons.len(),
                join(&u.polygons)
            ));
        }
    }
    let side_boxes: Vec<Bbox<T>> = report
        .sides
        .iter()
        .map(|u| Bbox::of(&[u.segment.0.clone(), u.segment.1.clone()]))
        .collect();
    for (u, ub) in report.sides.iter().zip(&side_boxes) {
        for (v, vb) in report.sides.iter().zip(&side_boxes) {
            if u.segment != v.segment && ub.contains(vb) && segment_contains(&u.segment, &v.segment)
            {
                warnings.push(format!(
                    "side {} of {} lies strictly inside side {} of {}",
                    fmt_segment(&v.segment),
                    join(&v.polygons),
                    fmt_segment(&u.segment),
                    join(&u.polygons)
                ));
            }
        }
    }
    checks.push(Check::new(CHECK_MULTIPLICITY, mult));

    let graph = graph_of(&polys, &report, mode);
    let mut graph_failures = Vec::new();
    let expected = scene
        .expected
        .as_ref()
        .map(|e| expected_edges(scene, e, &mut graph_failures));
    if let Some(expected) = &expected {
        for (a, b) in expected {
            if !graph.edges.contains(&(a.clone(), b.clone())) {
                let found = report.contact(a, b).map_or(ContactKind::None, |c| c.kind());
                graph_failures.push(format!(
                    "missing {} contact {a}–{b} (found {})",
                    mode.as_str(),
                    found.as_str()
                ));
            }
        }
        for pc in &report.pairs {
            let pair = (pc.a.clone(), pc.b.clone());
            let adjacency = matches!(pc.contact.kind(), ContactKind::Corner | ContactKind::Side);
            if adjacency && !expected.contains(&pair) {
                graph_failures.push(format!(
                    "unexpected {} contact {}–{}",
                    pc.contact.kind().as_str(),
                    pc.a,
                    pc.b
                ));
            }
        }
    }
    checks.push(Check::new(CHECK_GRAPH, graph_failures));

    for pc in &report.pairs {
        let kind = pc.contact.kind();
        let adjacent = expected
            .as_ref()
            .is_some_and(|e| e.contains(&(pc.a.clone(), pc.b.clone())));
        if matches!(kind, ContactKind::PartialSide | ContactKind::PointTouch) && !adjacent {
            warnings.push(format!(
                "{} contact between {} and {}",
                kind.as_str(),
                pc.a,
                pc.b
            ));
        }
    }

    let mut one_sidedness = None;
    if let Some(semantics) = one_sided {
        let (sides, violations) = one_sided_analysis(&polys, &report, semantics);
        one_sidedness = Some(
            sides
                .into_iter()
                .map(|p| CertificateEntry {
                    id: p.id,
                    side: p.side,
                    touching: p
                        .neighbours
                        .into_iter()
                        .map(|n| NeighbourEntry {
                            id: n.id,
                            side: n.side,
                        })
                        .collect(),
                })
                .collect(),
        );
        checks.push(Check::new(
            CHECK_ONE_SIDED,
            violations.iter().map(|v| v.to_string()).collect(),
        ));
    }

    let counts = ContactCounts {
        side: report.count(ContactKind::Side),
        corner: report.count(ContactKind::Corner),
        partial_side: report.count(ContactKind::PartialSide),
        point_touch: report.count(ContactKind::PointTouch),
        interior_overlap: report.count(ContactKind::InteriorOverlap),
    };
    let contacts = report
        .pairs
        .iter()
        .map(|pc| ContactEntry {
            a: pc.a.clone(),
            b: pc.b.clone(),
            kind: pc.contact.kind(),
            points: pc.contact.points().into_iter().map(PointText::of).collect(),
        })
        .collect();
    let verdict = VerificationReport {
        passed: checks.iter().all(|c| c.passed),
        mode,
        one_sided,
        polygons: scene.polygons.len(),
        checks,
        counts,
        contacts,
        one_sidedness,
        warnings,
    };
    (verdict, polys, report)
}
