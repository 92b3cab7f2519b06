//! Planar convex bodies: vertex polygons, circular-arc boundaries and smooth
//! bodies given by a finite Fourier support function.

mod arc;
mod polygon;
mod smooth;

pub use arc::{Arc, ArcBody2, Corner};
pub use polygon::{clip_half_plane, convex_hull, shoelace, Polygon2, CONVEXITY_TOL};
pub use smooth::{ellipse_support, SmoothBody2, SupportFit, CONVEXITY_GRID, MIN_RADIUS_OF_CURVATURE};

use crate::rng::{sample_stream, unit};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn polar(r: f64, theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Point2::new(r * c, r * s)
    }

    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    /// Counterclockwise quarter turn.
    pub fn perp(self) -> Point2 {
        Point2::new(-self.y, self.x)
    }

    pub fn unit(self) -> Point2 {
        self / self.norm()
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

impl Div<f64> for Point2 {
    type Output = Point2;
    fn div(self, s: f64) -> Point2 {
        Point2::new(self.x / s, self.y / s)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

/// Reduces an angle to `[0, 2π)`.
pub fn wrap_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

#[derive(Debug, Clone)]
pub enum Body2 {
    Polygon(Polygon2),
    Smooth(SmoothBody2),
    Arc(ArcBody2),
}

impl From<Polygon2> for Body2 {
    fn from(p: Polygon2) -> Self {
        Body2::Polygon(p)
    }
}

impl From<SmoothBody2> for Body2 {
    fn from(s: SmoothBody2) -> Self {
        Body2::Smooth(s)
    }
}

impl From<ArcBody2> for Body2 {
    fn from(a: ArcBody2) -> Self {
        Body2::Arc(a)
    }
}

/// `(area, perimeter)`
pub fn measure2d(body: &Body2) -> (f64, f64) {
    (body.area(), body.perimeter())
}

pub fn contains2(body: &Body2, p: Point2) -> bool {
    body.contains(p)
}

/// Area of `K + (−K)`.
pub fn difference_body_area(body: &Body2) -> f64 {
    match body {
        Body2::Polygon(p) => p.minkowski_sum(&p.negated()).area(),
        Body2::Smooth(s) => s.difference_body().area(),
        Body2::Arc(a) => a.difference_body_area(),
    }
}

pub fn sample_interior2(body: &Body2, n: usize, seed: u64) -> Vec<Point2> {
    (0..n as u64).map(|i| body.sample_interior_at(seed, i)).collect()
}

/// Arc-length-uniform boundary points with their outer normal angles.
pub fn sample_boundary2(body: &Body2, n: usize, seed: u64) -> Vec<(Point2, f64)> {
    (0..n as u64).map(|i| body.sample_boundary_at(seed, i)).collect()
}

impl Body2 {
    pub fn area(&self) -> f64 {
        match self {
            Body2::Polygon(p) => p.area(),
            Body2::Smooth(s) => s.area(),
            Body2::Arc(a) => a.area(),
        }
    }

    pub fn perimeter(&self) -> f64 {
        match self {
            Body2::Polygon(p) => p.perimeter(),
            Body2::Smooth(s) => s.perimeter(),
            Body2::Arc(a) => a.perimeter(),
        }
    }

    pub fn contains(&self, p: Point2) -> bool {
        match self {
            Body2::Polygon(poly) => poly.contains(p),
            Body2::Smooth(s) => s.contains(p),
            Body2::Arc(a) => a.contains(p),
        }
    }

    pub fn support(&self, theta: f64) -> f64 {
        match self {
            Body2::Polygon(p) => p.support(theta),
            Body2::Smooth(s) => s.support(theta),
            Body2::Arc(a) => a.support(theta),
        }
    }

    pub fn bounding_box(&self) -> (Point2, Point2) {
        match self {
            Body2::Polygon(p) => p.bounding_box(),
            _ => {
                let h = |t: f64| self.support(t);
                (
                    Point2::new(-h(std::f64::consts::PI), -h(1.5 * std::f64::consts::PI)),
                    Point2::new(h(0.0), h(0.5 * std::f64::consts::PI)),
                )
            }
        }
    }

    pub fn scaled(&self, s: f64) -> Body2 {
        match self {
            Body2::Polygon(p) => Body2::Polygon(p.scaled(s)),
            Body2::Smooth(b) => Body2::Smooth(b.scaled(s)),
            Body2::Arc(a) => Body2::Arc(a.scaled(s)),
        }
    }

    /// Uniform interior point number `index` of the stream `seed`, by rejection
    /// from the bounding box.
    pub fn sample_interior_at(&self, seed: u64, index: u64) -> Point2 {
        let mut rng = sample_stream(seed, index);
        let (lo, hi) = self.bounding_box();
        loop {
            let p = Point2::new(lo.x + (hi.x - lo.x) * unit(&mut rng), lo.y + (hi.y - lo.y) * unit(&mut rng));
            if self.contains(p) {
                return p;
            }
        }
    }

    /// Successive accepted points of stream `index`. The first equals
    /// `sample_interior_at(seed, index)`; later ones replace degenerate queries
    /// without touching other indices.
    pub(crate) fn interior_stream(&self, seed: u64, index: u64) -> impl FnMut() -> Point2 + '_ {
        let mut rng = sample_stream(seed, index);
        let (lo, hi) = self.bounding_box();
        move || loop {
            let p = Point2::new(lo.x + (hi.x - lo.x) * unit(&mut rng), lo.y + (hi.y - lo.y) * unit(&mut rng));
            if self.contains(p) {
                return p;
            }
        }
    }

    pub fn sample_boundary_at(&self, seed: u64, index: u64) -> (Point2, f64) {
        let mut rng = sample_stream(seed, index);
        let s = unit(&mut rng) * self.perimeter();
        self.boundary_at_arc_length(s)
    }

    pub(crate) fn boundary_stream(&self, seed: u64, index: u64) -> impl FnMut() -> (Point2, f64) + '_ {
        let mut rng = sample_stream(seed, index);
        let perimeter = self.perimeter();
        move || self.boundary_at_arc_length(unit(&mut rng) * perimeter)
    }

    /// Boundary point at arc length `s` from the body's reference point, with its
    /// outer normal angle.
    pub fn boundary_at_arc_length(&self, s: f64) -> (Point2, f64) {
        match self {
            Body2::Polygon(p) => {
                let mut rest = s;
                let n = p.len();
                for i in 0..n {
                    let len = p.edge_vector(i).norm();
                    if rest < len || i == n - 1 {
                        let t = (rest / len).clamp(0.0, 1.0);
                        let (a, b) = p.edge(i);
                        return (a + (b - a) * t, wrap_angle(p.edge_normal(i).angle()));
                    }
                    rest -= len;
                }
                unreachable!("polygon has at least three edges")
            }
            Body2::Smooth(b) => {
                let theta = b.theta_at_arc_length(s);
                (b.point(theta), theta)
            }
            Body2::Arc(a) => a.boundary_at_arc_length(s),
        }
    }
}
