//! Affine diameters: chords whose endpoints carry parallel supporting lines.
//!
//! For a strictly convex body the diameters are the chords joining the
//! support points of opposite outer normals, one chord per normal direction in
//! `[0, π)`. The count `d(K, p)` is the number of those chords passing through
//! `p`.

use crate::averaging::{estimate_interior_average, Counter, EstimateReport, Sample};
use crate::bodies2d::{wrap_angle, ArcBody2, Body2, Point2, Polygon2, SmoothBody2};
use crate::error::{GeometryError, Result};
use crate::roots::Scan;
use serde::Serialize;
use std::f64::consts::PI;

/// Relative tolerance for points on the boundary of a diameter region.
const REGION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiameterChord {
    pub endpoints: (Point2, Point2),
    /// Direction of the chord.
    pub direction_angle: f64,
    pub length: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiameterCount {
    Finite(usize),
    /// `p` lies on the degeneracy locus of the count (for example the centre
    /// of a disk, or the boundary of a polygon's diameter triangle).
    Degenerate,
    /// `p` lies between a pair of parallel edges; every chord joining them
    /// through `p` is a diameter.
    Infinite { edges: (usize, usize) },
}

/// The affine diameter whose direction makes angle `theta` with the x-axis.
///
/// For a strictly convex body the direction of `r(φ + π) − r(φ)` turns
/// monotonically through a half turn as `φ` runs over `[0, π)`, so exactly one
/// normal angle `φ` gives a chord parallel to `theta`.
pub fn diameter_chord(body: &SmoothBody2, theta: f64) -> DiameterChord {
    let dir = Point2::polar(1.0, theta);
    let skew = |phi: f64| dir.cross(body.point(phi + PI) - body.point(phi));
    let n = 512;
    let step = PI / n as f64;
    let mut lo = 0.0;
    let mut f_lo = skew(0.0);
    for j in 1..=n {
        let t = step * j as f64;
        let f = skew(t);
        if (f < 0.0) != (f_lo < 0.0) || f == 0.0 {
            break;
        }
        lo = t;
        f_lo = f;
    }
    let mut hi = lo + step;
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if (skew(mid) < 0.0) == (f_lo < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    let phi = 0.5 * (lo + hi);
    let (a, b) = (body.point(phi), body.point(phi + PI));
    let (a, b) = if (b - a).dot(dir) >= 0.0 { (a, b) } else { (b, a) };
    DiameterChord {
        endpoints: (a, b),
        direction_angle: wrap_angle(theta),
        length: (a - b).norm(),
    }
}

/// `(θ, D(θ))` at `steps` equally spaced chord directions in `[0, π)`.
pub fn diameter_lengths(body: &SmoothBody2, steps: usize) -> Vec<(f64, f64)> {
    (0..steps)
        .map(|j| {
            let t = PI * j as f64 / steps as f64;
            (t, diameter_chord(body, t).length)
        })
        .collect()
}

pub fn count_diameters(body: &Body2, p: Point2) -> Result<DiameterCount> {
    match body {
        Body2::Polygon(poly) => count_diameters_polygon(poly, p),
        Body2::Smooth(s) => count_diameters_smooth(s, p),
        Body2::Arc(a) => count_diameters_arc(a, p),
    }
}

/// Roots of `cross(p − r(φ), r(φ + π) − r(φ))` for `φ ∈ [0, π)`.
pub fn count_diameters_smooth(body: &SmoothBody2, p: Point2) -> Result<DiameterCount> {
    if !body.contains(p) {
        return Err(GeometryError::NotInterior);
    }
    Ok(match body.diameters_family().scan((p.x, p.y)) {
        Scan::Continuum => DiameterCount::Degenerate,
        Scan::Roots(r) if r.iter().any(|r| r.degenerate) => DiameterCount::Degenerate,
        Scan::Roots(r) => DiameterCount::Finite(r.len()),
    })
}

/// Sum over antipodal vertex–edge pairs `(v, E)` of `[p ∈ conv(v ∪ E)]`.
pub fn count_diameters_polygon(poly: &Polygon2, p: Point2) -> Result<DiameterCount> {
    let scale = poly.diameter();
    if poly.min_edge_margin(p) <= REGION_TOL * scale {
        return Err(GeometryError::NotInterior);
    }
    let n = poly.len();
    let tol = REGION_TOL * scale * scale;
    let mut count = 0;
    let mut degenerate = false;
    for i in 0..n {
        let normal = poly.edge_normal(i);
        let (a, b) = poly.edge(i);
        // farthest vertices from edge i, in the direction −normal
        let depth = |j: usize| normal.dot(a - poly.vertex(j));
        let far = (0..n).max_by(|&x, &y| depth(x).total_cmp(&depth(y))).expect("polygon has vertices");
        let width = depth(far);
        let twins: Vec<usize> = [far + n - 1, far + 1]
            .iter()
            .map(|j| j % n)
            .filter(|&j| (depth(j) - width).abs() <= 1e-12 * width)
            .collect();
        if let Some(&other) = twins.first() {
            // parallel edge: the other edge starts at whichever of far/other comes first
            let j = if (other + 1) % n == far { other } else { far };
            if i < j {
                let (c, d) = poly.edge(j);
                let trapezoid = [a, b, c, d];
                match strict_location(&trapezoid, p, tol) {
                    Location::Inside => return Ok(DiameterCount::Infinite { edges: (i, j) }),
                    Location::Boundary => degenerate = true,
                    Location::Outside => {}
                }
            }
            continue;
        }
        let v = poly.vertex(far);
        match strict_location(&[a, b, v], p, tol) {
            Location::Inside => count += 1,
            Location::Boundary => degenerate = true,
            Location::Outside => {}
        }
    }
    Ok(if degenerate { DiameterCount::Degenerate } else { DiameterCount::Finite(count) })
}

enum Location {
    Inside,
    Boundary,
    Outside,
}

/// Location of `p` relative to the counterclockwise convex ring `ring`.
fn strict_location(ring: &[Point2], p: Point2, tol: f64) -> Location {
    let k = ring.len();
    let mut min = f64::INFINITY;
    for i in 0..k {
        let (a, b) = (ring[i], ring[(i + 1) % k]);
        min = min.min((b - a).cross(p - a));
    }
    if min > tol {
        Location::Inside
    } else if min >= -tol {
        Location::Boundary
    } else {
        Location::Outside
    }
}

/// Arc bodies are split at the normal angles where either endpoint of the
/// diameter changes arc or corner; on each piece the chord test reduces to
/// `A + ⟨W, u(θ)⟩ = 0`.
pub fn count_diameters_arc(body: &ArcBody2, p: Point2) -> Result<DiameterCount> {
    if !body.contains(p) {
        return Err(GeometryError::NotInterior);
    }
    let mut cuts: Vec<f64> = body
        .arcs()
        .iter()
        .flat_map(|a| [a.start, a.end])
        .map(|t| t.rem_euclid(PI))
        .collect();
    cuts.push(0.0);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    let mut count = 0;
    let scale = body.arcs().iter().map(|a| a.radius).fold(0.0, f64::max);
    for (k, &s) in cuts.iter().enumerate() {
        let e = cuts.get(k + 1).copied().unwrap_or(PI);
        if e - s < 1e-15 {
            continue;
        }
        let mid = 0.5 * (s + e);
        let (c1, r1) = body.piece(mid);
        let (c2, r2) = body.piece(mid + PI);
        let a = p - c1;
        let b = c2 - c1;
        let big_a = a.cross(b);
        let w = (b * r1 - a * (r1 + r2)).perp();
        let wn = w.norm();
        if wn <= REGION_TOL * scale * scale {
            // both endpoints fixed: p on this one chord only on a null set
            if big_a.abs() <= REGION_TOL * scale * scale {
                return Ok(DiameterCount::Degenerate);
            }
            continue;
        }
        let ratio = -big_a / wn;
        if (ratio.abs() - 1.0).abs() <= 1e-12 {
            return Ok(DiameterCount::Degenerate);
        }
        if ratio.abs() > 1.0 {
            continue;
        }
        let phi = w.angle();
        let delta = ratio.acos();
        for t in [phi + delta, phi - delta] {
            let off = (t - s).rem_euclid(2.0 * PI);
            if off < e - s {
                if off.min(e - s - off) <= 1e-12 && r1 * r2 == 0.0 && (r1 + r2) > 0.0 {
                    // chord lands on a corner exactly at a piece boundary
                    return Ok(DiameterCount::Degenerate);
                }
                count += 1;
            }
        }
    }
    Ok(DiameterCount::Finite(count))
}

pub(crate) fn sample_diameters(body: &Body2, p: Point2) -> Result<Sample> {
    match count_diameters(body, p)? {
        DiameterCount::Finite(n) => Ok(Sample::Count(n as u32)),
        DiameterCount::Degenerate => Ok(Sample::Degenerate),
        DiameterCount::Infinite { edges } => Err(GeometryError::InfiniteDiameters(edges.0, edges.1)),
    }
}

/// Monte Carlo `d(K)`; refuses polygons with parallel edge pairs.
pub fn average_diameters(body: &Body2, samples: usize, seed: u64) -> Result<EstimateReport> {
    estimate_interior_average(&body.clone().into(), &Counter::Diameters, samples, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normals::{normal_feet2, stable_count, EquilibriumIndex};
    use std::f64::consts::TAU;

    /// Oracle: for each chord direction `d`, locate the longest chord parallel
    /// to `d` by golden-section search over its offset along `ν = d⊥` (chord
    /// length is concave in the offset), and count the directions where that
    /// chord sweeps across `p`. `chord(ν, s)` returns the length of the chord
    /// on the line `⟨x, ν⟩ = s`.
    fn sweep_count(p: Point2, directions: usize, span: impl Fn(Point2) -> (f64, f64), chord: impl Fn(Point2, f64) -> f64) -> usize {
        let g = (5f64.sqrt() - 1.0) / 2.0;
        let side = |t: f64| {
            let nu = Point2::polar(1.0, t).perp();
            let (mut lo, mut hi) = span(nu);
            let (mut x1, mut x2) = (hi - g * (hi - lo), lo + g * (hi - lo));
            let (mut f1, mut f2) = (chord(nu, x1), chord(nu, x2));
            for _ in 0..60 {
                if f1 < f2 {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + g * (hi - lo);
                    f2 = chord(nu, x2);
                } else {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - g * (hi - lo);
                    f1 = chord(nu, x1);
                }
            }
            p.dot(nu) - 0.5 * (lo + hi)
        };
        let vals: Vec<f64> = (0..directions).map(|j| side(PI * (j as f64 + 0.5) / directions as f64)).collect();
        (0..directions)
            .filter(|&j| {
                // direction π reverses ν, so the wrap compares against −vals[0]
                let b = if j + 1 < directions { vals[j + 1] } else { -vals[0] };
                (vals[j] < 0.0) != (b < 0.0)
            })
            .count()
    }

    fn polygon_sweep(poly: &Polygon2, p: Point2, directions: usize) -> usize {
        let span = |nu: Point2| {
            let offs = poly.vertices().iter().map(|v| v.dot(nu));
            (offs.clone().fold(f64::INFINITY, f64::min), offs.fold(f64::NEG_INFINITY, f64::max))
        };
        let chord = |nu: Point2, s: f64| {
            let d = nu.perp();
            let mut ts = Vec::new();
            for i in 0..poly.len() {
                let (a, b) = poly.edge(i);
                let (fa, fb) = (a.dot(nu) - s, b.dot(nu) - s);
                if (fa <= 0.0) != (fb <= 0.0) {
                    ts.push((a + (b - a) * (fa / (fa - fb))).dot(d));
                }
            }
            ts.iter().copied().fold(f64::NEG_INFINITY, f64::max) - ts.iter().copied().fold(f64::INFINITY, f64::min)
        };
        sweep_count(p, directions, span, chord)
    }

    /// Sweep oracle for a curved body given by its support point `x(φ)` at
    /// outer normal angle `φ`. `⟨x(φ), ν⟩` is monotone on each half turn
    /// between the normals `±ν`, so the two chord ends are found by bisection.
    fn curved_sweep(x: impl Fn(f64) -> Point2, p: Point2, directions: usize) -> usize {
        let span = |nu: Point2| (x(nu.angle() + PI).dot(nu), x(nu.angle()).dot(nu));
        let chord = |nu: Point2, s: f64| {
            let low = nu.angle() + PI;
            // ⟨x(φ), ν⟩ rises on [low, low + π] and falls on [low − π, low]
            let crossing = |mut lo: f64, mut hi: f64, rising: bool| {
                for _ in 0..50 {
                    let mid = 0.5 * (lo + hi);
                    if (x(mid).dot(nu) < s) == rising {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                x(0.5 * (lo + hi))
            };
            (crossing(low, low + PI, true) - crossing(low - PI, low, false)).norm()
        };
        sweep_count(p, directions, span, chord)
    }

    #[test]
    fn triangle_has_three_everywhere() {
        let tri = Polygon2::from_points(&[Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(0.3, 0.8)]).unwrap();
        let c = tri.centroid();
        assert_eq!(count_diameters_polygon(&tri, c).unwrap(), DiameterCount::Finite(3));
        assert_eq!(polygon_sweep(&tri, c, 4000), 3);
        let near_vertex = Point2::new(0.3, 0.78);
        assert_eq!(count_diameters_polygon(&tri, near_vertex).unwrap(), DiameterCount::Finite(3));
        assert_eq!(polygon_sweep(&tri, near_vertex, 4000), 3);
    }

    #[test]
    fn square_is_infinite() {
        let sq = Polygon2::regular(4, 1.0, 0.0).unwrap();
        assert!(matches!(count_diameters_polygon(&sq, Point2::new(0.1, 0.2)).unwrap(), DiameterCount::Infinite { .. }));
        let body: Body2 = sq.into();
        assert!(matches!(
            average_diameters(&body, 200, 1),
            Err(GeometryError::InfiniteDiameters(_, _))
        ));
    }

    #[test]
    fn polygons_match_sweep_oracle() {
        for seed in 0..12 {
            let poly = Polygon2::random(seed, 9).unwrap();
            let body: Body2 = poly.clone().into();
            for i in 0..40u64 {
                let p = body.sample_interior_at(seed + 100, i);
                match count_diameters_polygon(&poly, p).unwrap() {
                    DiameterCount::Finite(d) => {
                        assert!(d >= 1);
                        // close pairs of critical directions need a finer sweep
                        if d != polygon_sweep(&poly, p, 1000) {
                            assert_eq!(d, polygon_sweep(&poly, p, 40_000), "seed {seed} {p:?}");
                        }
                    }
                    other => panic!("{other:?}"),
                }
            }
        }
    }

    #[test]
    fn affine_invariance() {
        let poly = Polygon2::random(3, 10).unwrap();
        let map = |q: Point2| Point2::new(2.0 * q.x + 0.7 * q.y + 0.1, -0.3 * q.x + 0.5 * q.y - 2.0);
        let image = poly.map(map).unwrap();
        let body: Body2 = poly.clone().into();
        for i in 0..300u64 {
            let p = body.sample_interior_at(9, i);
            assert_eq!(count_diameters_polygon(&poly, p).unwrap(), count_diameters_polygon(&image, map(p)).unwrap());
        }
    }

    #[test]
    fn disk_has_one_and_degenerate_centre() {
        let disk = SmoothBody2::disk(1.0);
        for p in [Point2::new(0.3, 0.2), Point2::new(-0.95, 0.0)] {
            assert_eq!(count_diameters_smooth(&disk, p).unwrap(), DiameterCount::Finite(1));
        }
        assert_eq!(count_diameters_smooth(&disk, Point2::ORIGIN).unwrap(), DiameterCount::Degenerate);
        let c = diameter_chord(&disk, 0.4);
        assert!((c.length - 2.0).abs() < 1e-12);
        assert!((c.endpoints.1 - c.endpoints.0).unit().cross(Point2::polar(1.0, 0.4)).abs() < 1e-12);
        assert!(c.endpoints.0.cross(c.endpoints.1).abs() < 1e-12);
    }

    #[test]
    fn ellipse_horizontal_chord() {
        let e = SmoothBody2::fit_ellipse(2.0, 1.0, 24).unwrap().body;
        let c = diameter_chord(&e, 0.0);
        assert!((c.length - 4.0).abs() < 1e-6);
        assert!(c.endpoints.0.y.abs() < 1e-6 && c.endpoints.1.y.abs() < 1e-6);
        // constant width: the diameter is perpendicular to its supporting lines
        let cw = constant_width();
        for t in [0.0, 0.5, 2.0] {
            let c = diameter_chord(&cw, t);
            assert!((c.length - 2.0).abs() < 1e-9);
            let n = Point2::polar(1.0, t);
            assert!((cw.support(t) - c.endpoints.1.dot(n)).abs() < 1e-9);
        }
    }

    #[test]
    fn smooth_bodies_match_sweep_oracle() {
        let body = SmoothBody2::from_coeffs(1.0, &[0.1, 0.05, 0.02], &[0.0, -0.03, 0.01]).unwrap();
        let b: Body2 = body.clone().into();
        let mut checked = 0;
        for i in 0..25u64 {
            let p = b.sample_interior_at(4, i);
            if let DiameterCount::Finite(d) = count_diameters_smooth(&body, p).unwrap() {
                assert!(d >= 1);
                assert_eq!(d, curved_sweep(|t| body.point(t), p, 600), "{p:?}");
                checked += 1;
            }
        }
        assert!(checked > 22);
    }

    /// Smooth constant-width body: odd harmonics only added to a constant.
    fn constant_width() -> SmoothBody2 {
        SmoothBody2::from_coeffs(1.0, &[0.0, 0.0, 0.08, 0.0, 0.01], &[0.0, 0.0, 0.02]).unwrap()
    }

    #[test]
    fn constant_width_pairs_diameters_with_normals() {
        let body = constant_width();
        for j in 0..100 {
            let t = TAU * j as f64 / 100.0;
            assert!((body.support(t) + body.support(t + PI) - 2.0).abs() < 1e-12);
        }
        let b: Body2 = body.clone().into();
        for i in 0..300u64 {
            let p = b.sample_interior_at(11, i);
            let Ok(DiameterCount::Finite(d)) = count_diameters_smooth(&body, p) else { continue };
            let Ok(feet) = normal_feet2(&b, p) else { continue };
            if feet.iter().any(|f| f.index == EquilibriumIndex::Degenerate) {
                continue;
            }
            assert_eq!(feet.len(), 2 * d, "{p:?}");
            assert_eq!(stable_count(&b, p).unwrap(), d);
        }
    }

    #[test]
    fn reuleaux_diameters_are_double_normals() {
        let r = ArcBody2::reuleaux(3, 1.0).unwrap();
        let b: Body2 = r.clone().into();
        for i in 0..200u64 {
            let p = b.sample_interior_at(8, i);
            let DiameterCount::Finite(d) = count_diameters_arc(&r, p).unwrap() else { panic!() };
            assert_eq!(crate::normals::count_normals2(&b, p).unwrap(), 2 * d);
            if i < 20 {
                let support_point = |t: f64| {
                    let (c, radius) = r.piece(t);
                    c + Point2::polar(radius, t)
                };
                assert_eq!(d, curved_sweep(support_point, p, 600), "{p:?}");
            }
        }
    }
}
