//! Wedge decomposition of convex polygons.
//!
//! The wedge of a face is the part of the polygon covered by normals starting
//! on that face. A point lies on exactly `n(P, p)` wedges, so the wedge areas
//! sum to `∫ n(P, p) dp` with no sampling error.

use crate::bodies2d::{clip_half_plane, shoelace, Point2, Polygon2};
use crate::error::{GeometryError, Result};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Face {
    Edge(usize),
    Vertex(usize),
}

impl Face {
    /// +1 for edges, −1 for vertices.
    pub fn parity(self) -> i32 {
        match self {
            Face::Edge(_) => 1,
            Face::Vertex(_) => -1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Wedge {
    pub face: Face,
    /// Counterclockwise ring; empty or degenerate when the wedge has no area.
    pub region: Vec<Point2>,
    pub area: f64,
}

/// Points of `poly` whose projection onto the line of edge `i` falls on the edge.
pub fn edge_wedge(poly: &Polygon2, i: usize) -> Wedge {
    let (a, b) = poly.edge(i);
    let e = b - a;
    let ring = clip_half_plane(poly.vertices(), -e, -e.dot(a));
    let ring = clip_half_plane(&ring, e, e.dot(b));
    wedge(Face::Edge(i % poly.len()), ring)
}

/// Points `p` of `poly` with `p − v` in the inward normal cone at vertex `i`.
pub fn vertex_wedge(poly: &Polygon2, i: usize) -> Wedge {
    let n = poly.len();
    let v = poly.vertex(i);
    let next = poly.vertex(i + 1) - v;
    let prev = poly.vertex(i + n - 1) - v;
    let ring = clip_half_plane(poly.vertices(), -next, -next.dot(v));
    let ring = clip_half_plane(&ring, -prev, -prev.dot(v));
    wedge(Face::Vertex(i % n), ring)
}

fn wedge(face: Face, region: Vec<Point2>) -> Wedge {
    let area = shoelace(&region).max(0.0);
    Wedge { face, region, area }
}

/// All edge wedges followed by all vertex wedges.
pub fn all_wedges(poly: &Polygon2) -> Vec<Wedge> {
    (0..poly.len())
        .map(|i| edge_wedge(poly, i))
        .chain((0..poly.len()).map(|i| vertex_wedge(poly, i)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WedgeAverage {
    /// `∫_P n(P, p) dp`.
    pub integral: f64,
    /// `integral / area(P)`.
    pub mean: f64,
}

pub fn exact_average_normals(poly: &Polygon2) -> WedgeAverage {
    let integral: f64 = all_wedges(poly).iter().map(|w| w.area).sum();
    WedgeAverage {
        integral,
        mean: integral / poly.area(),
    }
}

/// `(Σ edge-wedge areas − Σ vertex-wedge areas) / area − 0`; the planar
/// Poincaré–Hopf identity says this vanishes.
pub fn euler_residual(poly: &Polygon2) -> f64 {
    let signed: f64 = all_wedges(poly).iter().map(|w| w.face.parity() as f64 * w.area).sum();
    signed / poly.area()
}

/// `area(2P − P) − area(P) − Σ area(wedges)` for centrally symmetric `P`;
/// zero exactly when `n(P) = 8`.
pub fn wedge_fill_deficiency(poly: &Polygon2) -> Result<f64> {
    if !poly.is_centrally_symmetric(1e-9) {
        return Err(GeometryError::Domain("polygon is not centrally symmetric".into()));
    }
    let big = poly.scaled(2.0).minkowski_sum(&poly.negated());
    Ok(big.area() - poly.area() - exact_average_normals(poly).integral)
}
