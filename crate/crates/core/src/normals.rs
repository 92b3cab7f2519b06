//! Normals of a convex body through an interior point: the boundary points `q`
//! where the segment from `p` meets the body's supporting line at `q`
//! perpendicularly. In the plane these are the critical points of the distance
//! from `p` to the boundary: local minima are stable equilibria, local maxima
//! unstable ones, and the two kinds alternate.

use crate::averaging::Sample;
use crate::bodies2d::{ArcBody2, Body2, Point2, Polygon2, SmoothBody2};
use crate::bodies3d::{Point3, Polytope3};
use crate::error::{GeometryError, Result};
use crate::roots::Scan;
use serde::Serialize;

/// Relative tolerance for wedge-boundary decisions on polytopes.
pub const CONE_TOL: f64 = 1e-9;
/// Relative tolerance for near-degenerate feet of polygons and arc bodies.
const EDGE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FootSource {
    Edge(usize),
    Vertex(usize),
    Arc(usize),
    Corner(usize),
    Smooth { theta: f64 },
    Face { dim: usize, index: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EquilibriumIndex {
    /// Local minimum of the distance (index 0).
    Stable,
    /// Local maximum of the distance (index 1 in the plane).
    Unstable,
    /// Index `k` critical point of a polytope boundary.
    Saddle(u8),
    /// Foot where the distance has a degenerate critical point: `p` sits on
    /// the evolute or on a wedge boundary.
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalFoot {
    pub foot: Point2,
    pub source: FootSource,
    /// Length of the normal segment inside the body, from the foot to where
    /// the normal line leaves the body again.
    pub chord_length: f64,
    pub index: EquilibriumIndex,
}

struct RawFoot {
    foot: Point2,
    source: FootSource,
    index: EquilibriumIndex,
}

/// All feet of normals through `p`, which must lie strictly inside `body`.
pub fn normal_feet2(body: &Body2, p: Point2) -> Result<Vec<NormalFoot>> {
    let raw = match raw_feet(body, p)? {
        Some(raw) => raw,
        None => {
            return Err(GeometryError::DegenerateConfiguration(
                "every point of a boundary arc is a foot: the query point is a centre of curvature of a circular arc".into(),
            ))
        }
    };
    Ok(raw
        .into_iter()
        .map(|r| {
            let dir = (p - r.foot).unit();
            NormalFoot {
                foot: r.foot,
                source: r.source,
                chord_length: ray_exit(body, r.foot, dir),
                index: r.index,
            }
        })
        .collect())
}

/// `n(K, p)`; degenerate feet count once.
pub fn count_normals2(body: &Body2, p: Point2) -> Result<usize> {
    match raw_feet(body, p)? {
        Some(raw) => Ok(raw.len()),
        None => Err(GeometryError::DegenerateConfiguration("infinitely many normals".into())),
    }
}

/// Number of stable feet `u(K, p)`; refuses degenerate configurations.
pub fn stable_count(body: &Body2, p: Point2) -> Result<usize> {
    let feet = raw_feet(body, p)?.ok_or_else(|| GeometryError::DegenerateConfiguration("infinitely many normals".into()))?;
    if feet.iter().any(|f| f.index == EquilibriumIndex::Degenerate) {
        return Err(GeometryError::DegenerateConfiguration("a foot is degenerate".into()));
    }
    let stable = feet.iter().filter(|f| f.index == EquilibriumIndex::Stable).count();
    if 2 * stable != feet.len() {
        return Err(GeometryError::DegenerateConfiguration(format!(
            "{stable} stable of {} feet violates the planar index sum",
            feet.len()
        )));
    }
    Ok(stable)
}

/// Counter used by the estimators: degenerate and infinite configurations are
/// reported rather than raised.
pub(crate) fn sample_normals2(body: &Body2, p: Point2) -> Result<Sample> {
    Ok(match raw_feet(body, p)? {
        None => Sample::Degenerate,
        Some(f) if f.iter().any(|f| f.index == EquilibriumIndex::Degenerate) => Sample::Degenerate,
        Some(f) => Sample::Count(f.len() as u32),
    })
}

/// `None` when the feet form a continuum.
fn raw_feet(body: &Body2, p: Point2) -> Result<Option<Vec<RawFoot>>> {
    match body {
        Body2::Polygon(poly) => polygon_feet(poly, p).map(Some),
        Body2::Smooth(s) => smooth_feet(s, p),
        Body2::Arc(a) => arc_feet(a, p),
    }
}

fn polygon_feet(poly: &Polygon2, p: Point2) -> Result<Vec<RawFoot>> {
    if poly.min_edge_margin(p) <= EDGE_TOL * poly.diameter() {
        return Err(GeometryError::NotInterior);
    }
    let n = poly.len();
    let mut out = Vec::with_capacity(8);
    for i in 0..n {
        let (a, b) = poly.edge(i);
        let e = b - a;
        let t = (p - a).dot(e) / e.norm_sq();
        if t > -EDGE_TOL && t < 1.0 + EDGE_TOL {
            let near_end = t.abs() <= EDGE_TOL || (t - 1.0).abs() <= EDGE_TOL;
            out.push(RawFoot {
                foot: a + e * t.clamp(0.0, 1.0),
                source: FootSource::Edge(i),
                index: if near_end { EquilibriumIndex::Degenerate } else { EquilibriumIndex::Stable },
            });
        }
    }
    for i in 0..n {
        let v = poly.vertex(i);
        let w = p - v;
        let next = poly.vertex(i + 1) - v;
        let prev = poly.vertex(i + n - 1) - v;
        let (s1, s2) = (w.dot(next) / (w.norm() * next.norm()), w.dot(prev) / (w.norm() * prev.norm()));
        // on a cone boundary the vertex foot coincides with a degenerate edge foot
        if s1 > EDGE_TOL && s2 > EDGE_TOL {
            out.push(RawFoot {
                foot: v,
                source: FootSource::Vertex(i),
                index: EquilibriumIndex::Unstable,
            });
        }
    }
    Ok(out)
}

fn smooth_feet(body: &SmoothBody2, p: Point2) -> Result<Option<Vec<RawFoot>>> {
    let roots = match body.normals_family().scan((p.x, p.y)) {
        Scan::Continuum => {
            return if body.support_excess(p) < 0.0 { Ok(None) } else { Err(GeometryError::NotInterior) };
        }
        Scan::Roots(r) => r,
    };
    let tol = 1e-12 * body.a0().abs().max(1.0);
    let mut out = Vec::with_capacity(roots.len());
    for r in roots {
        // distance from p to the supporting line at the foot
        let lambda = body.support(r.theta) - p.dot(Point2::polar(1.0, r.theta));
        if lambda <= tol {
            return Err(GeometryError::NotInterior);
        }
        out.push(RawFoot {
            foot: body.point(r.theta),
            source: FootSource::Smooth { theta: r.theta },
            // slope of the scan is λ − ρ: negative between foot and centre of curvature
            index: if r.degenerate {
                EquilibriumIndex::Degenerate
            } else if r.slope < 0.0 {
                EquilibriumIndex::Stable
            } else {
                EquilibriumIndex::Unstable
            },
        });
    }
    Ok(Some(out))
}

fn arc_feet(body: &ArcBody2, p: Point2) -> Result<Option<Vec<RawFoot>>> {
    let scale = body.arcs().iter().map(|a| a.radius).fold(0.0, f64::max);
    if arc_margin(body, p) <= EDGE_TOL * scale {
        return Err(GeometryError::NotInterior);
    }
    let mut out = Vec::with_capacity(8);
    for (i, arc) in body.arcs().iter().enumerate() {
        let d = p - arc.center;
        if d.norm() <= EDGE_TOL * arc.radius {
            return Ok(None);
        }
        let alpha = d.angle();
        for (t, index) in [(alpha, EquilibriumIndex::Stable), (alpha + std::f64::consts::PI, EquilibriumIndex::Unstable)] {
            let off = (t - arc.start).rem_euclid(std::f64::consts::TAU);
            let span = arc.span();
            if span >= std::f64::consts::TAU || off < span + EDGE_TOL || off > std::f64::consts::TAU - EDGE_TOL {
                let at_end = span < std::f64::consts::TAU
                    && (off <= EDGE_TOL || (off - span).abs() <= EDGE_TOL || off > std::f64::consts::TAU - EDGE_TOL);
                out.push(RawFoot {
                    foot: arc.point(t),
                    source: FootSource::Arc(i),
                    index: if at_end { EquilibriumIndex::Degenerate } else { index },
                });
            }
        }
    }
    for (i, c) in body.corners().iter().enumerate() {
        let beta = (c.point - p).angle();
        let off = (beta - c.start).rem_euclid(std::f64::consts::TAU);
        if off > EDGE_TOL && off < c.span() - EDGE_TOL {
            out.push(RawFoot {
                foot: c.point,
                source: FootSource::Corner(i),
                index: EquilibriumIndex::Unstable,
            });
        }
    }
    Ok(Some(out))
}

/// Smallest slack `R − max_t ⟨p − c, u(t)⟩` over the arcs; positive inside.
fn arc_margin(body: &ArcBody2, p: Point2) -> f64 {
    body.arcs()
        .iter()
        .map(|a| {
            let d = p - a.center;
            let span = a.span();
            let off = (d.angle() - a.start).rem_euclid(std::f64::consts::TAU);
            let dist = if span >= std::f64::consts::TAU || off <= span {
                0.0
            } else {
                (off - span).min(std::f64::consts::TAU - off)
            };
            a.radius - d.norm() * dist.cos()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Distance along `dir` from `origin` (on or inside the boundary) to the far
/// boundary point.
fn ray_exit(body: &Body2, origin: Point2, dir: Point2) -> f64 {
    if let Body2::Polygon(poly) = body {
        return (0..poly.len())
            .filter_map(|i| {
                let n = poly.edge_normal(i);
                let along = dir.dot(n);
                (along > 1e-15).then(|| (n.dot(poly.vertex(i)) - n.dot(origin)) / along)
            })
            .fold(f64::INFINITY, f64::min);
    }
    let (lo, hi) = body.bounding_box();
    let mut outside = 2.0 * (hi - lo).norm();
    let mut inside = 0.0;
    // step off the boundary before bisecting
    let mut probe = 1e-9 * outside;
    while probe < outside && !body.contains(origin + dir * probe) {
        probe *= 2.0;
    }
    if probe < outside {
        inside = probe;
    }
    for _ in 0..200 {
        let mid = 0.5 * (inside + outside);
        if body.contains(origin + dir * mid) {
            inside = mid;
        } else {
            outside = mid;
        }
        if outside - inside < 1e-14 * outside {
            break;
        }
    }
    0.5 * (inside + outside)
}

/// Normals of a polytope through `p`, grouped by the dimension of the face
/// carrying the foot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Count3 {
    pub count: usize,
    /// Feet on vertices, edges and facets (indexed by face dimension).
    pub by_dim: [usize; 3],
    /// Some decision was within tolerance of a wedge boundary; counted with
    /// closed cones.
    pub flagged: bool,
}

/// `n(P, p)`: faces `F` with the projection of `p` onto `aff F` in `relint F`
/// and `p` minus that projection in the inward normal cone of `F`.
pub fn count_normals3(poly: &Polytope3, p: &Point3) -> Result<Count3> {
    let scale = poly.scale();
    if poly.margin(p) <= 1e-12 * scale {
        return Err(GeometryError::NotInterior);
    }
    let tol = CONE_TOL;
    let mut by_dim = [0usize; 3];
    let mut flagged = false;

    for f in poly.facets() {
        let q = p - f.normal * (f.normal.dot(p) - f.offset);
        let m = f
            .edge_planes
            .iter()
            .map(|(n, off)| n.dot(&q) - off)
            .fold(f64::INFINITY, f64::min)
            / scale;
        flagged |= m.abs() <= tol;
        if m >= -tol {
            by_dim[2] += 1;
        }
    }

    let verts = poly.vertices();
    let facets = poly.facets();
    for e in poly.edges() {
        let (a, b) = (verts[e.a], verts[e.b]);
        let ab = b - a;
        let t = (p - a).dot(&ab) / ab.norm_squared();
        if t < -tol || t > 1.0 + tol {
            continue;
        }
        let w = p - (a + ab * t);
        let (n1, n2) = (facets[e.facets[0]].normal, facets[e.facets[1]].normal);
        let coef = e.gram_inv * nalgebra::Vector2::new(-w.dot(&n1), -w.dot(&n2));
        let wn = w.norm().max(f64::MIN_POSITIVE);
        let m = (coef.x.min(coef.y) / wn).min(t * ab.norm() / scale).min((1.0 - t) * ab.norm() / scale);
        flagged |= m.abs() <= tol;
        if m >= -tol {
            by_dim[1] += 1;
        }
    }

    for (vi, cone) in poly.vertex_cones().iter().enumerate() {
        let w = p - verts[vi];
        let wn = w.norm();
        let best = cone
            .triples
            .iter()
            .map(|inv| {
                let l = inv * w;
                l.x.min(l.y).min(l.z) / wn
            })
            .fold(f64::NEG_INFINITY, f64::max);
        let dual = cone.edge_dirs.iter().map(|e| e.dot(&w) / wn).fold(f64::INFINITY, f64::min);
        flagged |= dual.abs() <= tol;
        if best >= -tol {
            by_dim[0] += 1;
        }
    }

    Ok(Count3 {
        count: by_dim.iter().sum(),
        by_dim,
        flagged,
    })
}

pub(crate) fn sample_normals3(poly: &Polytope3, p: &Point3) -> Result<Sample> {
    let c = count_normals3(poly, p)?;
    Ok(if c.flagged { Sample::Degenerate } else { Sample::Count(c.count as u32) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies2d::{ellipse_support, wrap_angle};
    use crate::bodies3d::{standard_polytope, StandardSolid};
    use std::f64::consts::{PI, TAU};

    /// Oracle: critical points of `|r − p|²` along a dense boundary sampling,
    /// found as sign changes of its discrete derivative.
    fn grid_critical_points(boundary: impl Fn(f64) -> Point2, p: Point2, n: usize) -> (usize, usize) {
        let d: Vec<f64> = (0..n).map(|j| (boundary(TAU * j as f64 / n as f64) - p).norm_sq()).collect();
        let (mut minima, mut maxima) = (0, 0);
        for j in 0..n {
            let (a, b, c) = (d[(j + n - 1) % n], d[j], d[(j + 1) % n]);
            if b < a && b <= c {
                minima += 1;
            }
            if b > a && b >= c {
                maxima += 1;
            }
        }
        (minima, maxima)
    }

    fn count_kinds(feet: &[NormalFoot]) -> (usize, usize) {
        let s = feet.iter().filter(|f| f.index == EquilibriumIndex::Stable).count();
        let u = feet.iter().filter(|f| f.index == EquilibriumIndex::Unstable).count();
        (s, u)
    }

    fn unit_square() -> Polygon2 {
        Polygon2::from_points(&[Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(1.0, 1.0), Point2::new(0.0, 1.0)]).unwrap()
    }

    #[test]
    fn square_center() {
        let sq: Body2 = unit_square().into();
        let c = Point2::new(0.5, 0.5);
        let feet = normal_feet2(&sq, c).unwrap();
        assert_eq!(count_kinds(&feet), (4, 4));
        // boundary walk of the square by arc length
        let walk = |t: f64| sq.boundary_at_arc_length(4.0 * t / TAU).0;
        assert_eq!(grid_critical_points(walk, c, 4000), (4, 4));
        assert_eq!(stable_count(&sq, c).unwrap(), 4);
        for f in &feet {
            assert!((f.chord_length - if matches!(f.source, FootSource::Edge(_)) { 1.0 } else { 2f64.sqrt() }).abs() < 1e-12);
        }
        assert!(matches!(count_normals2(&sq, Point2::new(1.5, 0.5)), Err(GeometryError::NotInterior)));
        assert!(matches!(count_normals2(&sq, Point2::new(1.0, 0.5)), Err(GeometryError::NotInterior)));
    }

    #[test]
    fn disk_everywhere_two() {
        let disk: Body2 = SmoothBody2::disk(1.0).into();
        for p in [Point2::new(0.3, 0.1), Point2::new(-0.9, 0.2), Point2::new(0.0, 1e-3)] {
            let feet = normal_feet2(&disk, p).unwrap();
            assert_eq!(count_kinds(&feet), (1, 1));
            assert_eq!(stable_count(&disk, p).unwrap(), 1);
            for f in &feet {
                assert!((f.chord_length - 2.0).abs() < 1e-9);
            }
        }
        assert!(matches!(normal_feet2(&disk, Point2::ORIGIN), Err(GeometryError::DegenerateConfiguration(_))));
        assert_eq!(sample_normals2(&disk, Point2::ORIGIN).unwrap(), Sample::Degenerate);
        assert!(matches!(count_normals2(&disk, Point2::new(1.0, 0.1)), Err(GeometryError::NotInterior)));
        let circle: Body2 = ArcBody2::circle(Point2::ORIGIN, 1.0).unwrap().into();
        assert_eq!(count_normals2(&circle, Point2::new(0.2, -0.4)).unwrap(), 2);
        assert_eq!(sample_normals2(&circle, Point2::ORIGIN).unwrap(), Sample::Degenerate);
    }

    #[test]
    fn reuleaux_centroid() {
        let r = ArcBody2::reuleaux(3, 1.0).unwrap();
        let body: Body2 = r.clone().into();
        let feet = normal_feet2(&body, Point2::ORIGIN).unwrap();
        assert_eq!(count_kinds(&feet), (3, 3));
        let walk = |t: f64| body.boundary_at_arc_length(body.perimeter() * t / TAU).0;
        assert_eq!(grid_critical_points(walk, Point2::ORIGIN, 6000), (3, 3));
        assert_eq!(stable_count(&body, Point2::ORIGIN).unwrap(), 3);
    }

    #[test]
    fn ellipse_inside_and_outside_evolute() {
        let fit = SmoothBody2::fit_ellipse(2.0, 1.0, 24).unwrap();
        let body: Body2 = fit.body.into();
        // evolute cusp on the long axis at ((a² − b²)/a, 0) = (1.5, 0)
        let walk = |t: f64| {
            // exact ellipse boundary point with outer normal angle t
            let h = ellipse_support(2.0, 1.0);
            let (s, c) = t.sin_cos();
            let hv = h(t);
            Point2::new(4.0 * c / hv, s / hv)
        };
        for (x, expect) in [(1.2, 4), (1.45, 4), (1.55, 2), (1.8, 2)] {
            let p = Point2::new(x, 0.01);
            assert_eq!(count_normals2(&body, p).unwrap(), expect, "x = {x}");
            assert_eq!(grid_critical_points(walk, p, 20_000).0 * 2, expect, "oracle x = {x}");
        }
    }

    #[test]
    fn degenerate_flag_at_centres_of_curvature() {
        let body = SmoothBody2::from_coeffs(1.0, &[0.0, 0.2, 0.02], &[0.0, 0.0, 0.03]).unwrap();
        let b: Body2 = body.clone().into();
        let mut checked = 0;
        for j in 0..50 {
            let t = TAU * j as f64 / 50.0 + 0.013;
            let c = body.center_of_curvature(t);
            let u = Point2::polar(1.0, t);
            if !body.contains(c) {
                continue;
            }
            assert_eq!(sample_normals2(&b, c + u * 5e-7).unwrap(), Sample::Degenerate, "θ = {t}");
            let drho = (body.rho(t + 1e-5) - body.rho(t - 1e-5)) / 2e-5;
            if drho.abs() < 0.05 {
                continue; // near an evolute cusp
            }
            checked += 1;
            // the normal line is tangent to the evolute, so cross it sideways
            let side = u.perp();
            let before = count_normals2(&b, c + side * 1e-6).unwrap();
            let after = count_normals2(&b, c - side * 1e-6).unwrap();
            assert_eq!((before as i64 - after as i64).abs(), 2, "θ = {t}");
        }
        assert!(checked > 20, "{checked}");
    }

    #[test]
    fn polygon_feet_match_grid_oracle() {
        let poly = Polygon2::regular(7, 1.0, 0.1).unwrap();
        let body: Body2 = poly.clone().into();
        let walk = |t: f64| body.boundary_at_arc_length(body.perimeter() * t / TAU).0;
        for i in 0..200u64 {
            let p = body.sample_interior_at(5, i);
            let n = count_normals2(&body, p).unwrap();
            let (mn, mx) = grid_critical_points(walk, p, 7 * 1000);
            assert_eq!(n, mn + mx, "{p:?}");
            let feet = normal_feet2(&body, p).unwrap();
            let (s, u) = count_kinds(&feet);
            assert_eq!((s, u), (mn, mx));
        }
    }

    #[test]
    fn feet_lie_on_boundary_with_perpendicular_normals() {
        let bodies: Vec<Body2> = vec![
            SmoothBody2::from_coeffs(1.0, &[0.1, 0.1, -0.02], &[0.0, 0.05]).unwrap().into(),
            ArcBody2::reuleaux(5, 1.0).unwrap().into(),
        ];
        for body in bodies {
            for i in 0..100u64 {
                let p = body.sample_interior_at(3, i);
                for f in normal_feet2(&body, p).unwrap() {
                    let dir = (f.foot - p).unit();
                    // the supporting line at the foot in direction `dir` passes through it
                    let h = body.support(wrap_angle(dir.angle()));
                    assert!((h - f.foot.dot(dir)).abs() < 1e-9, "{f:?}");
                    assert!(f.chord_length > (f.foot - p).norm() - 1e-9);
                }
            }
        }
    }

    #[test]
    fn cube_counts() {
        let cube = standard_polytope(&StandardSolid::Cube).unwrap();
        let c = count_normals3(&cube, &Point3::zeros()).unwrap();
        assert_eq!((c.count, c.by_dim, c.flagged), (26, [8, 12, 6], false));
        let c = count_normals3(&cube, &Point3::new(0.4, 0.0, 0.0)).unwrap();
        assert_eq!(c.count, 26);
        assert!(count_normals3(&cube, &Point3::new(0.6, 0.0, 0.0)).is_err());
    }

    fn regular_tetrahedron() -> Polytope3 {
        Polytope3::hull(&[
            Point3::new(1.0, 1.0, 1.0),
            Point3::new(1.0, -1.0, -1.0),
            Point3::new(-1.0, 1.0, -1.0),
            Point3::new(-1.0, -1.0, 1.0),
        ])
        .unwrap()
    }

    /// Oracle for polytopes: local extrema and saddles are hard to grid-detect in
    /// 3D, so check each face's wedge directly from its definition with the
    /// polar description of the vertex cone (`⟨p − v, e⟩ ≥ 0` for every edge
    /// direction `e` at `v`) and explicit nearest points for edges and facets.
    fn wedge_oracle(poly: &Polytope3, p: &Point3) -> [usize; 3] {
        let mut by_dim = [0; 3];
        for cone in poly.vertex_cones().iter().enumerate() {
            let w = p - poly.vertices()[cone.0];
            if cone.1.edge_dirs.iter().all(|e| e.dot(&w) > 0.0) {
                by_dim[0] += 1;
            }
        }
        for e in poly.edges() {
            let (a, b) = (poly.vertices()[e.a], poly.vertices()[e.b]);
            let t = (p - a).dot(&(b - a)) / (b - a).norm_squared();
            let w = p - (a + (b - a) * t);
            // inward normal cone of an edge: w makes obtuse-or-right angles with
            // the in-facet directions pointing away from the edge
            let inside = poly.facets().iter().enumerate().filter(|(fi, _)| e.facets.contains(fi)).all(|(_, f)| {
                let other = f
                    .vertices
                    .iter()
                    .map(|&i| poly.vertices()[i])
                    .find(|v| (v - a).cross(&(b - a)).norm() > 1e-9)
                    .unwrap();
                let away = (other - a) - (b - a) * ((other - a).dot(&(b - a)) / (b - a).norm_squared());
                w.dot(&away) > 0.0
            });
            if t > 0.0 && t < 1.0 && inside {
                by_dim[1] += 1;
            }
        }
        for f in poly.facets() {
            let q = p - f.normal * (f.normal.dot(p) - f.offset);
            let k = f.vertices.len();
            let inside = (0..k).all(|i| {
                let (a, b) = (poly.vertices()[f.vertices[i]], poly.vertices()[f.vertices[(i + 1) % k]]);
                (b - a).cross(&(q - a)).dot(&f.normal) > 0.0
            });
            if inside {
                by_dim[2] += 1;
            }
        }
        by_dim
    }

    #[test]
    fn tetrahedron_centroid_sees_every_face() {
        let t = regular_tetrahedron();
        let c = count_normals3(&t, &Point3::zeros()).unwrap();
        assert_eq!(c.by_dim, [4, 6, 4]);
        assert_eq!(wedge_oracle(&t, &Point3::zeros()), [4, 6, 4]);
        assert_eq!(c.count, 14);
    }

    #[test]
    fn polytope_counts_match_oracle_and_euler() {
        for solid in [
            StandardSolid::RhombicDodecahedron,
            StandardSolid::ElongatedDodecahedron,
            StandardSolid::TruncatedOctahedron,
        ] {
            let poly = standard_polytope(&solid).unwrap();
            for i in 0..300u64 {
                let p = poly.sample_interior_at(17, i);
                let c = count_normals3(&poly, &p).unwrap();
                if c.flagged {
                    continue;
                }
                assert_eq!(c.by_dim, wedge_oracle(&poly, &p), "{solid:?} {p:?}");
                // facets − edges + vertices = 2 pointwise (index sum on the sphere)
                assert_eq!(c.by_dim[2] as i64 - c.by_dim[1] as i64 + c.by_dim[0] as i64, 2);
            }
        }
        let t = regular_tetrahedron();
        for i in 0..300u64 {
            let p = t.sample_interior_at(2, i);
            let c = count_normals3(&t, &p).unwrap();
            assert_eq!(c.by_dim, wedge_oracle(&t, &p));
        }
    }

    #[test]
    fn rhombic_dodecahedron_centre_is_on_vertex_cone_axes() {
        let rd = standard_polytope(&StandardSolid::RhombicDodecahedron).unwrap();
        let c = count_normals3(&rd, &Point3::zeros()).unwrap();
        assert_eq!(c.by_dim, [14, 24, 12]);
        assert!(!c.flagged || c.count == 50);
        let _ = PI;
    }
}
