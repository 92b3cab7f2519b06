use super::Point2;
use crate::error::{GeometryError, Result};
use crate::rng::{sample_stream, unit};

/// Strictly convex polygon with counterclockwise vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon2 {
    vertices: Vec<Point2>,
}

/// Relative tolerance on edge cross products (scaled by the squared diameter).
pub const CONVEXITY_TOL: f64 = 1e-12;

impl Polygon2 {
    /// Convex hull of `points`; collinear and duplicate points are dropped.
    pub fn from_points(points: &[Point2]) -> Result<Self> {
        if points.iter().any(|p| !p.x.is_finite() || !p.y.is_finite()) {
            return Err(GeometryError::DegenerateBody("non-finite coordinate".into()));
        }
        let hull = convex_hull(points);
        if hull.len() < 3 {
            return Err(GeometryError::DegenerateBody(format!(
                "convex hull has {} vertices",
                hull.len()
            )));
        }
        Ok(Polygon2 { vertices: hull })
    }

    /// Takes `vertices` as given after checking strict convexity and orientation.
    pub fn from_ccw_vertices(vertices: Vec<Point2>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeometryError::DegenerateBody(format!("{n} vertices")));
        }
        let scale = diameter_sq(&vertices);
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            if (b - a).cross(c - b) <= CONVEXITY_TOL * scale {
                return Err(GeometryError::DegenerateBody(format!(
                    "vertex {} is not strictly convex",
                    (i + 1) % n
                )));
            }
        }
        let p = Polygon2 { vertices };
        // a star polygon can pass the local test; total turning must be 2π
        let turning: f64 = (0..n)
            .map(|i| {
                let e0 = p.edge_vector(i);
                let e1 = p.edge_vector((i + 1) % n);
                e0.cross(e1).atan2(e0.dot(e1))
            })
            .sum();
        if (turning - std::f64::consts::TAU).abs() > 1e-6 {
            return Err(GeometryError::DegenerateBody("vertex sequence winds more than once".into()));
        }
        Ok(p)
    }

    pub fn regular(sides: usize, circumradius: f64, phase: f64) -> Result<Self> {
        let pts: Vec<Point2> = (0..sides)
            .map(|j| Point2::polar(circumradius, phase + std::f64::consts::TAU * j as f64 / sides as f64))
            .collect();
        Polygon2::from_ccw_vertices(pts)
    }

    /// Hull of `points` points at uniform random angles with radii in
    /// `[0.6, 1]`; seeded, so the same `seed` always gives the same polygon.
    pub fn random(seed: u64, points: usize) -> Result<Self> {
        let mut rng = sample_stream(seed, u64::MAX);
        let pts: Vec<Point2> = (0..points.max(3))
            .map(|_| {
                let t = std::f64::consts::TAU * unit(&mut rng);
                Point2::polar(0.6 + 0.4 * unit(&mut rng), t)
            })
            .collect();
        Polygon2::from_points(&pts)
    }

    /// Centrally symmetric hull of `half` random points and their negatives.
    pub fn random_symmetric(seed: u64, half: usize) -> Result<Self> {
        let mut rng = sample_stream(seed, u64::MAX - 1);
        let mut pts = Vec::with_capacity(2 * half.max(2));
        for _ in 0..half.max(2) {
            let t = std::f64::consts::PI * unit(&mut rng);
            let q = Point2::polar(0.6 + 0.4 * unit(&mut rng), t);
            pts.push(q);
            pts.push(-q);
        }
        Polygon2::from_points(&pts)
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> Point2 {
        self.vertices[i % self.vertices.len()]
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1`.
    pub fn edge(&self, i: usize) -> (Point2, Point2) {
        (self.vertex(i), self.vertex(i + 1))
    }

    pub fn edge_vector(&self, i: usize) -> Point2 {
        self.vertex(i + 1) - self.vertex(i)
    }

    /// Outer unit normal of edge `i`.
    pub fn edge_normal(&self, i: usize) -> Point2 {
        let e = self.edge_vector(i);
        Point2::new(e.y, -e.x) / e.norm()
    }

    pub fn area(&self) -> f64 {
        shoelace(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        (0..self.len()).map(|i| self.edge_vector(i).norm()).sum()
    }

    pub fn centroid(&self) -> Point2 {
        ring_centroid(&self.vertices)
    }

    pub fn diameter(&self) -> f64 {
        diameter_sq(&self.vertices).sqrt()
    }

    /// Closed containment with a relative boundary tolerance.
    pub fn contains(&self, p: Point2) -> bool {
        self.min_edge_margin(p) >= -1e-12 * self.diameter()
    }

    /// Signed distance of `p` to the nearest edge line, positive inside.
    pub fn min_edge_margin(&self, p: Point2) -> f64 {
        (0..self.len())
            .map(|i| -(p - self.vertex(i)).dot(self.edge_normal(i)))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn support(&self, theta: f64) -> f64 {
        let u = Point2::polar(1.0, theta);
        self.vertices.iter().map(|v| v.dot(u)).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn bounding_box(&self) -> (Point2, Point2) {
        let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in &self.vertices {
            lo = Point2::new(lo.x.min(v.x), lo.y.min(v.y));
            hi = Point2::new(hi.x.max(v.x), hi.y.max(v.y));
        }
        (lo, hi)
    }

    pub fn map(&self, f: impl Fn(Point2) -> Point2) -> Result<Polygon2> {
        Polygon2::from_points(&self.vertices.iter().map(|&v| f(v)).collect::<Vec<_>>())
    }

    pub fn scaled(&self, s: f64) -> Polygon2 {
        Polygon2 {
            vertices: self.vertices.iter().map(|&v| v * s).collect(),
        }
    }

    pub fn negated(&self) -> Polygon2 {
        // −P keeps counterclockwise order (rotation by π)
        Polygon2 {
            vertices: self.vertices.iter().map(|&v| -v).collect(),
        }
    }

    /// Minkowski sum by merging edge sequences sorted by direction.
    pub fn minkowski_sum(&self, other: &Polygon2) -> Polygon2 {
        let a = rotate_to_lowest(&self.vertices);
        let b = rotate_to_lowest(&other.vertices);
        let (n, m) = (a.len(), b.len());
        let mut out = Vec::with_capacity(n + m);
        let (mut i, mut j) = (0usize, 0usize);
        while i < n || j < m {
            out.push(a[i % n] + b[j % m]);
            let ea = a[(i + 1) % n] - a[i % n];
            let eb = b[(j + 1) % m] - b[j % m];
            let c = ea.cross(eb);
            if j >= m || (i < n && c > 0.0) {
                i += 1;
            } else if i >= n || c < 0.0 {
                j += 1;
            } else {
                i += 1;
                j += 1;
            }
        }
        Polygon2::from_points(&out).expect("Minkowski sum of convex polygons is nondegenerate")
    }

    /// Vertex set symmetric about the centroid within `tol` (relative to diameter).
    pub fn is_centrally_symmetric(&self, tol: f64) -> bool {
        let n = self.len();
        if n % 2 == 1 {
            return false;
        }
        let c = self.centroid();
        let eps = tol * self.diameter();
        (0..n).all(|i| (self.vertex(i) - c + (self.vertex(i + n / 2) - c)).norm() <= eps)
    }

    /// All vertices on one circle within `tol` (relative).
    pub fn is_concyclic(&self, tol: f64) -> bool {
        circumcircle(self.vertex(0), self.vertex(1), self.vertex(2))
            .map(|(c, r)| self.vertices.iter().all(|v| ((*v - c).norm() - r).abs() <= tol * r))
            .unwrap_or(false)
    }
}

fn circumcircle(a: Point2, b: Point2, c: Point2) -> Option<(Point2, f64)> {
    let d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    if d.abs() < 1e-300 {
        return None;
    }
    let (a2, b2, c2) = (a.dot(a), b.dot(b), c.dot(c));
    let ux = (a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d;
    let uy = (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d;
    let center = Point2::new(ux, uy);
    Some((center, (a - center).norm()))
}

fn rotate_to_lowest(v: &[Point2]) -> Vec<Point2> {
    let k = (0..v.len())
        .min_by(|&i, &j| (v[i].y, v[i].x).partial_cmp(&(v[j].y, v[j].x)).unwrap())
        .unwrap();
    v[k..].iter().chain(v[..k].iter()).copied().collect()
}

pub(crate) fn diameter_sq(v: &[Point2]) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            d = d.max((v[i] - v[j]).norm_sq());
        }
    }
    d
}

/// Signed area of a closed ring (positive when counterclockwise).
pub fn shoelace(ring: &[Point2]) -> f64 {
    let n = ring.len();
    if n < 3 {
        return 0.0;
    }
    0.5 * (0..n).map(|i| ring[i].cross(ring[(i + 1) % n])).sum::<f64>()
}

pub(crate) fn ring_centroid(ring: &[Point2]) -> Point2 {
    let n = ring.len();
    let (mut cx, mut cy, mut a) = (0.0, 0.0, 0.0);
    for i in 0..n {
        let (p, q) = (ring[i], ring[(i + 1) % n]);
        let w = p.cross(q);
        a += w;
        cx += (p.x + q.x) * w;
        cy += (p.y + q.y) * w;
    }
    Point2::new(cx / (3.0 * a), cy / (3.0 * a))
}

/// Andrew's monotone chain. Output is counterclockwise without collinear points.
pub fn convex_hull(points: &[Point2]) -> Vec<Point2> {
    let mut pts: Vec<Point2> = points.to_vec();
    pts.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let tol = CONVEXITY_TOL * diameter_sq(&[pts[0], pts[pts.len() - 1]]).max(f64::MIN_POSITIVE);
    let mut hull: Vec<Point2> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point2>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 {
                let a = hull[hull.len() - 2];
                let b = hull[hull.len() - 1];
                if (b - a).cross(p - b) <= tol {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Sutherland–Hodgman clip of a convex ring against `⟨normal, x⟩ ≤ offset`.
pub fn clip_half_plane(ring: &[Point2], normal: Point2, offset: f64) -> Vec<Point2> {
    let n = ring.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let p = ring[i];
        let q = ring[(i + 1) % n];
        let dp = normal.dot(p) - offset;
        let dq = normal.dot(q) - offset;
        if dp <= 0.0 {
            out.push(p);
        }
        if (dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0) {
            let t = dp / (dp - dq);
            out.push(p + (q - p) * t);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn pts(v: &[(f64, f64)]) -> Vec<Point2> {
        v.iter().map(|&(x, y)| Point2::new(x, y)).collect()
    }

    #[test]
    fn unit_square_and_collinear_midpoint() {
        let sq = Polygon2::from_points(&pts(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])).unwrap();
        assert_eq!(sq.len(), 4);
        let with_mid = Polygon2::from_points(&pts(&[(0.0, 0.0), (0.5, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])).unwrap();
        assert_eq!(with_mid.len(), 4);
        assert_abs_diff_eq!(sq.area(), 1.0);
        assert_abs_diff_eq!(sq.perimeter(), 4.0);
    }

    #[test]
    fn too_few_hull_vertices() {
        let r = Polygon2::from_points(&pts(&[(0.0, 0.0), (1.0, 1.0), (2.0, 2.0)]));
        assert!(matches!(r, Err(GeometryError::DegenerateBody(_))));
        assert!(Polygon2::from_points(&pts(&[(0.0, 0.0), (1.0, 0.0)])).is_err());
    }

    #[test]
    fn rejects_clockwise_and_reflex_input() {
        let cw = pts(&[(0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 0.0)]);
        assert!(Polygon2::from_ccw_vertices(cw).is_err());
        let reflex = pts(&[(0.0, 0.0), (2.0, 0.0), (1.0, 0.3), (2.0, 2.0), (0.0, 2.0)]);
        assert!(Polygon2::from_ccw_vertices(reflex).is_err());
    }

    #[test]
    fn minkowski_difference_of_square_and_triangle() {
        let sq = Polygon2::from_points(&pts(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])).unwrap();
        let d = sq.minkowski_sum(&sq.negated());
        assert_abs_diff_eq!(d.area(), 4.0, epsilon = 1e-12);
        assert_eq!(d.len(), 4);
        let tri = Polygon2::from_points(&pts(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)])).unwrap();
        // K − K of a triangle is a hexagon of area 6·area(K)
        let d = tri.minkowski_sum(&tri.negated());
        assert_eq!(d.len(), 6);
        assert_abs_diff_eq!(d.area(), 3.0, epsilon = 1e-12);
    }

    #[test]
    fn clipping_keeps_half() {
        let sq = pts(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        let half = clip_half_plane(&sq, Point2::new(1.0, 0.0), 0.5);
        assert_abs_diff_eq!(shoelace(&half), 0.5, epsilon = 1e-15);
        let none = clip_half_plane(&sq, Point2::new(1.0, 0.0), -0.5);
        assert_eq!(shoelace(&none), 0.0);
    }
}
