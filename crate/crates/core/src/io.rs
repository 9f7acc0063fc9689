//! Scene files and OBJ export.
//!
//! A scene file is JSON:
//!
//! ```text
//! {
//!   "format": "polyside-scene/1",
//!   "field": "Q(sqrt3)",
//!   "polygons": [
//!     {"id": "r1", "class": "red", "corners": [
//!       ["8", ["0", "2"], "-3/5"],
//!       ...
//!     ]}
//!   ],
//!   "expected_graph": {"complete_bipartite": {"s": 3, "t": 8, "s_class": "red", "t_class": "blue"}}
//! }
//! ```
//!
//! A coordinate is either a rational string (`"8"`, `"-3/5"`, `"0.08"`) or a
//! pair `["a", "b"]` meaning `a + b·√3`. `class` and `expected_graph` are
//! optional; the graph may instead be `{"edges": [["a", "b"], ...]}`.

use std::fmt::Write as _;
use std::num::NonZeroUsize;

use serde::Deserialize;
use thiserror::Error;

use crate::exact::{format_rational, parse_rational, ArithError, QScalar};
use crate::geom3d::Point3;
use crate::representation::{Class, ExpectedGraph, Scene, SceneError};
use crate::scalar::Scalar;

pub const SCENE_FORMAT: &str = "polyside-scene/1";
pub const SCENE_FIELD: &str = "Q(sqrt3)";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown format tag {0:?}")]
    UnknownFormat(String),
    #[error("unknown field tag {0:?}")]
    UnknownField(String),
    #[error("polygon {id}, corner {corner}: {source}")]
    BadCoordinate {
        id: String,
        corner: usize,
        source: ArithError,
    },
    #[error("expected graph: {0}")]
    BadExpectation(String),
    #[error(transparent)]
    Scene(#[from] SceneError),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SceneFile {
    format: String,
    field: String,
    polygons: Vec<PolygonFile>,
    #[serde(default)]
    expected_graph: Option<ExpectedFile>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PolygonFile {
    id: String,
    #[serde(default)]
    class: Option<Class>,
    corners: Vec<[Coord; 3]>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Coord {
    Rational(String),
    Pair([String; 2]),
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum ExpectedFile {
    CompleteBipartite {
        s: usize,
        t: usize,
        #[serde(default)]
        s_class: Option<Class>,
        #[serde(default)]
        t_class: Option<Class>,
    },
    Edges(Vec<[String; 2]>),
}

fn coord(c: &Coord) -> Result<QScalar, ArithError> {
    match c {
        Coord::Rational(r) => Ok(QScalar::rational(parse_rational(r)?)),
        Coord::Pair([a, b]) => Ok(QScalar::new(parse_rational(a)?, parse_rational(b)?)),
    }
}

/// Parses a scene exactly. Geometric validity is checked later by the
/// verifier, not here.
pub fn parse_scene(text: &str) -> Result<Scene<QScalar>, FormatError> {
    let file: SceneFile = serde_json::from_str(text).map_err(|e| FormatError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if file.format != SCENE_FORMAT {
        return Err(FormatError::UnknownFormat(file.format));
    }
    if file.field != SCENE_FIELD {
        return Err(FormatError::UnknownField(file.field));
    }
    let mut scene = Scene::new();
    for p in file.polygons {
        let mut corners = Vec::with_capacity(p.corners.len());
        for (k, [x, y, z]) in p.corners.iter().enumerate() {
            let bad = |source| FormatError::BadCoordinate {
                id: p.id.clone(),
                corner: k,
                source,
            };
            corners.push(Point3::new(
                coord(x).map_err(bad)?,
                coord(y).map_err(bad)?,
                coord(z).map_err(bad)?,
            ));
        }
        scene.insert(p.id, p.class, corners)?;
    }
    scene.expected = match file.expected_graph {
        None => None,
        Some(ExpectedFile::CompleteBipartite {
            s,
            t,
            s_class,
            t_class,
        }) => {
            let binding = match (s_class, t_class) {
                (Some(a), Some(b)) if a != b => Some((a, b)),
                (None, None) => None,
                _ => {
                    return Err(FormatError::BadExpectation(
                        "s_class and t_class must be two distinct classes".into(),
                    ))
                }
            };
            Some(ExpectedGraph::CompleteBipartite { s, t, binding })
        }
        Some(ExpectedFile::Edges(edges)) => {
            Some(ExpectedGraph::edges(edges.into_iter().map(|[a, b]| (a, b))))
        }
    };
    Ok(scene)
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn scalar_text(q: &QScalar) -> String {
    if q.is_rational() {
        json_str(&format_rational(&q.rat))
    } else {
        format!(
            "[{}, {}]",
            json_str(&format_rational(&q.rat)),
            json_str(&format_rational(&q.rt3))
        )
    }
}

/// Canonical text: ids sorted, one corner per line, rationals in lowest
/// terms. `parse_scene(&write_scene(s)) == s`.
pub fn write_scene(scene: &Scene<QScalar>) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"format\": {},", json_str(SCENE_FORMAT));
    let _ = writeln!(out, "  \"field\": {},", json_str(SCENE_FIELD));
    if scene.polygons.is_empty() {
        out.push_str("  \"polygons\": []");
    } else {
        out.push_str("  \"polygons\": [\n");
        let n = scene.polygons.len();
        for (k, (id, p)) in scene.polygons.iter().enumerate() {
            let _ = write!(out, "    {{\"id\": {}", json_str(id));
            if let Some(c) = p.class {
                let _ = write!(out, ", \"class\": {}", json_str(c.as_str()));
            }
            out.push_str(", \"corners\": [\n");
            for (i, c) in p.corners.iter().enumerate() {
                let _ = write!(
                    out,
                    "      [{}, {}, {}]",
                    scalar_text(&c.x),
                    scalar_text(&c.y),
                    scalar_text(&c.z)
                );
                out.push_str(if i + 1 < p.corners.len() { ",\n" } else { "\n" });
            }
            out.push_str("    ]}");
            out.push_str(if k + 1 < n { ",\n" } else { "\n" });
        }
        out.push_str("  ]");
    }
    match &scene.expected {
        None => out.push('\n'),
        Some(ExpectedGraph::CompleteBipartite { s, t, binding }) => {
            let _ = write!(
                out,
                ",\n  \"expected_graph\": {{\"complete_bipartite\": {{\"s\": {s}, \"t\": {t}"
            );
            if let Some((a, b)) = binding {
                let _ = write!(
                    out,
                    ", \"s_class\": {}, \"t_class\": {}",
                    json_str(a.as_str()),
                    json_str(b.as_str())
                );
            }
            out.push_str("}}\n");
        }
        Some(ExpectedGraph::Edges(edges)) => {
            let list: Vec<String> = edges
                .iter()
                .map(|(a, b)| format!("[{}, {}]", json_str(a), json_str(b)))
                .collect();
            let _ = writeln!(
                out,
                ",\n  \"expected_graph\": {{\"edges\": [{}]}}",
                list.join(", ")
            );
        }
    }
    out.push_str("}\n");
    out
}

/// Wavefront OBJ with decimal coordinates rounded half to even; one group
/// and one face per polygon, in id order.
pub fn export_obj<T: Scalar>(scene: &Scene<T>, precision: NonZeroUsize) -> String {
    let places = precision.get();
    let mut out = String::from("# polyside scene export\n");
    let mut next = 1;
    for (id, p) in &scene.polygons {
        let _ = writeln!(out, "g {id}");
        for c in &p.corners {
            let _ = writeln!(
                out,
                "v {} {} {}",
                c.x.render_decimal(places),
                c.y.render_decimal(places),
                c.z.render_decimal(places)
            );
        }
        let idx: Vec<String> = (next..next + p.corners.len())
            .map(|i| i.to_string())
            .collect();
        let _ = writeln!(out, "f {}", idx.join(" "));
        next += p.corners.len();
    }
    out
}

/// `"K3,8"` (case-insensitive `k`, optional spaces) as a complete bipartite
/// expectation with classes inferred from their sizes.
pub fn parse_expectation(s: &str) -> Result<ExpectedGraph, FormatError> {
    let bad = || FormatError::BadExpectation(format!("{s:?} is not of the form K<s>,<t>"));
    let body = s.trim().strip_prefix(['K', 'k']).ok_or_else(bad)?;
    let body = body
        .trim_start_matches('_')
        .trim_start_matches('{')
        .trim_end_matches('}');
    let (a, b) = body.split_once(',').ok_or_else(bad)?;
    let s_n = a.trim().parse().map_err(|_| bad())?;
    let t_n = b.trim().parse().map_err(|_| bad())?;
    Ok(ExpectedGraph::complete_bipartite(s_n, t_n))
}
