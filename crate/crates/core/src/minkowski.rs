//! Normality in a normed plane with a centrally symmetric unit ball `M`.
//!
//! A line through a boundary point `q` of `K` is a (Birkhoff) normal when its
//! direction points to the point of `∂M` whose tangent is parallel to the
//! supporting line of `K` at `q`. For the Euclidean disk this is the ordinary
//! normal.

use crate::averaging::Sample;
use crate::bodies2d::{Point2, Polygon2, SmoothBody2};
use crate::error::{GeometryError, Result};
use crate::roots::{LinearFamily, Scan};
use crate::trig::TrigPoly;
use std::f64::consts::{PI, TAU};

/// Tolerance on the symmetry certificate of a norm ball.
pub const SYMMETRY_TOL: f64 = 1e-10;

/// Unit ball of a planar norm: convex, centrally symmetric about the origin.
#[derive(Debug, Clone, PartialEq)]
pub enum NormBall2 {
    Smooth(SmoothBody2),
    Polygon(Polygon2),
}

impl NormBall2 {
    /// Accepts a smooth body whose odd harmonics vanish (`h(θ) = h(θ + π)`).
    pub fn smooth(body: SmoothBody2) -> Result<Self> {
        let h = body.support_poly();
        let a0 = h.a0();
        let odd = (1..=h.degree())
            .step_by(2)
            .map(|k| {
                let (c, s) = h.coeff(k);
                c.abs().max(s.abs())
            })
            .fold(0.0, f64::max);
        if odd > SYMMETRY_TOL * a0.abs() {
            return Err(GeometryError::Domain(format!("norm ball has odd harmonic of size {odd:e}")));
        }
        Ok(NormBall2::Smooth(body))
    }

    /// Accepts a polygon whose vertices are symmetric under negation.
    pub fn polygon(poly: Polygon2) -> Result<Self> {
        let n = poly.len();
        let scale = poly.diameter();
        let symmetric = n % 2 == 0 && (0..n).all(|i| (poly.vertex(i) + poly.vertex(i + n / 2)).norm() <= SYMMETRY_TOL * scale);
        if !symmetric {
            return Err(GeometryError::Domain("norm ball is not symmetric about the origin".into()));
        }
        Ok(NormBall2::Polygon(poly))
    }

    pub fn disk() -> Self {
        NormBall2::Smooth(SmoothBody2::disk(1.0))
    }

    pub fn area(&self) -> f64 {
        match self {
            NormBall2::Smooth(b) => b.area(),
            NormBall2::Polygon(p) => p.area(),
        }
    }

    /// Boundary point in the direction of polar angle `alpha`.
    pub fn radial_point(&self, alpha: f64) -> Point2 {
        let dir = Point2::polar(1.0, alpha);
        match self {
            NormBall2::Polygon(poly) => {
                let t = (0..poly.len())
                    .filter_map(|i| {
                        let n = poly.edge_normal(i);
                        let along = n.dot(dir);
                        (along > 0.0).then(|| n.dot(poly.vertex(i)) / along)
                    })
                    .fold(f64::INFINITY, f64::min);
                dir * t
            }
            NormBall2::Smooth(body) => body.point(normal_angle_at_polar_angle(body, alpha)),
        }
    }

    /// The norm `‖x‖_M`.
    pub fn gauge(&self, x: Point2) -> f64 {
        let r = x.norm();
        if r == 0.0 {
            return 0.0;
        }
        r / self.radial_point(x.angle()).norm()
    }
}

/// Outer normal angle `θ` of the boundary point whose polar angle is `alpha`.
/// The polar angle of `r(θ)` increases with `θ` when the origin is interior.
fn normal_angle_at_polar_angle(body: &SmoothBody2, alpha: f64) -> f64 {
    let offset = |t: f64| {
        let q = body.point(t);
        let d = (q.angle() - alpha).rem_euclid(TAU);
        if d > PI {
            d - TAU
        } else {
            d
        }
    };
    // polar and normal angles differ by less than π/2 for interior origins
    let (mut lo, mut hi) = (alpha - FRAC_PI_2_SAFE, alpha + FRAC_PI_2_SAFE);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if offset(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    0.5 * (lo + hi)
}

const FRAC_PI_2_SAFE: f64 = std::f64::consts::FRAC_PI_2 + 1e-9;

/// Direction of the normal line to a supporting line of direction `phi`: the
/// unit vector toward the boundary point of `M` with outer normal `phi − π/2`.
pub fn birkhoff_direction(m: &SmoothBody2, phi: f64) -> Point2 {
    m.point(phi - std::f64::consts::FRAC_PI_2).unit()
}

/// Scan whose zeros `θ` are the Minkowski normal feet `r_K(θ)` through `p`:
/// `cross(p − r_K(θ), r_M(θ)) = 0`.
#[derive(Debug, Clone)]
pub struct MinkowskiNormals {
    body: SmoothBody2,
    family: LinearFamily,
}

impl MinkowskiNormals {
    pub fn new(m: &NormBall2, body: &SmoothBody2) -> Result<Self> {
        let NormBall2::Smooth(ball) = m else {
            return Err(GeometryError::Unsupported(
                "Birkhoff normals need a smooth strictly convex norm ball".into(),
            ));
        };
        let (kx, ky) = body.boundary_polys();
        let (mx, my) = ball.boundary_polys();
        let b: TrigPoly = kx.mul(&my).sub(&ky.mul(&mx));
        let tol = 1e-6 * body.a0().abs() * ball.a0().abs();
        Ok(MinkowskiNormals {
            body: body.clone(),
            family: LinearFamily::new(my, mx.scale(-1.0), b, false, tol),
        })
    }

    /// Feet `θ` of the normals through `p`; `None` when they form a continuum.
    pub fn feet(&self, p: Point2) -> Result<Option<Vec<(f64, bool)>>> {
        if !self.body.contains(p) {
            return Err(GeometryError::NotInterior);
        }
        Ok(match self.family.scan((p.x, p.y)) {
            Scan::Continuum => None,
            Scan::Roots(r) => Some(r.into_iter().map(|r| (r.theta, r.degenerate)).collect()),
        })
    }

    pub(crate) fn sample(&self, p: Point2) -> Result<Sample> {
        Ok(match self.feet(p)? {
            None => Sample::Degenerate,
            Some(f) if f.iter().any(|&(_, d)| d) => Sample::Degenerate,
            Some(f) => Sample::Count(f.len() as u32),
        })
    }
}

/// `n_M(K, p)`; degenerate configurations are an error.
pub fn count_minkowski_normals(m: &NormBall2, body: &SmoothBody2, p: Point2) -> Result<usize> {
    match MinkowskiNormals::new(m, body)?.sample(p)? {
        Sample::Count(n) => Ok(n as usize),
        Sample::Degenerate => Err(GeometryError::DegenerateConfiguration("a Minkowski normal foot is degenerate".into())),
    }
}

/// Largest area of an affine regular hexagon inscribed in `M`, divided by
/// the area of `M`.
pub fn hexagon_ratio_tau(m: &NormBall2) -> f64 {
    let grid = 720;
    let objective = |beta: f64| inscribed_hexagon_area(m, beta);
    let step = PI / grid as f64;
    let (best, _) = (0..grid)
        .map(|j| {
            let b = step * j as f64;
            (b, objective(b))
        })
        .fold((0.0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
    let (mut lo, mut hi) = (best - step, best + step);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut x1, mut x2) = (hi - g * (hi - lo), lo + g * (hi - lo));
    let (mut f1, mut f2) = (objective(x1), objective(x2));
    while hi - lo > 1e-12 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = objective(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = objective(x1);
        }
    }
    f1.max(f2).max(objective(best)) / m.area()
}

/// Area `3|u × v|` of the hexagon `±u, ±v, ±(v − u)` with `u` the boundary
/// point at polar angle `beta` and `v` the boundary point after `u` with
/// `‖v − u‖ = 1`.
fn inscribed_hexagon_area(m: &NormBall2, beta: f64) -> f64 {
    let u = m.radial_point(beta);
    // ‖v(α) − u‖ rises from 0 at α = β to 2 at α = β + π
    let (mut lo, mut hi) = (beta, beta + PI);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if m.gauge(m.radial_point(mid) - u) < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    let v = m.radial_point(0.5 * (lo + hi));
    3.0 * u.cross(v).abs()
}

/// Upper bound `6 / (3 − 2τ(M))` on the average number of Minkowski normals
/// of bodies of constant `M`-width.
pub fn normed_width_bound(m: &NormBall2) -> f64 {
    6.0 / (3.0 - 2.0 * hexagon_ratio_tau(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies2d::Body2;
    use crate::diameters::{count_diameters_smooth, DiameterCount};
    use crate::normals::count_normals2;
    use approx::assert_abs_diff_eq;

    fn hexagon() -> Polygon2 {
        Polygon2::regular(6, 1.0, 0.2).unwrap()
    }

    /// Oracle for τ of a polygon: for each `u` on an arc-length grid of the
    /// boundary, walk the grid forward until `‖v − u‖` crosses 1 and
    /// interpolate `v` linearly between the bracketing grid points.
    fn tau_oracle(poly: &Polygon2, n: usize) -> f64 {
        let m = NormBall2::polygon(poly.clone()).unwrap();
        let body: Body2 = poly.clone().into();
        let pts: Vec<Point2> = (0..n).map(|j| body.boundary_at_arc_length(body.perimeter() * j as f64 / n as f64).0).collect();
        let mut best: f64 = 0.0;
        for (i, &u) in pts.iter().enumerate() {
            let mut prev = (u, 0.0);
            for k in 1..n {
                let q = pts[(i + k) % n];
                let g = m.gauge(q - u);
                if g >= 1.0 {
                    let s = (1.0 - prev.1) / (g - prev.1);
                    let v = prev.0 + (q - prev.0) * s;
                    best = best.max(3.0 * u.cross(v).abs());
                    break;
                }
                prev = (q, g);
            }
        }
        best / poly.area()
    }

    #[test]
    fn tau_of_disk_hexagon_square() {
        let disk = NormBall2::disk();
        assert_abs_diff_eq!(hexagon_ratio_tau(&disk), 3.0 * 3f64.sqrt() / (2.0 * PI), epsilon = 1e-9);
        assert_abs_diff_eq!(normed_width_bound(&disk), 2.0 * PI / (PI - 3f64.sqrt()), epsilon = 1e-8);
        let hex = NormBall2::polygon(hexagon()).unwrap();
        assert_abs_diff_eq!(hexagon_ratio_tau(&hex), 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(normed_width_bound(&hex), 6.0, epsilon = 1e-8);
        let sq = Polygon2::regular(4, 2f64.sqrt(), PI / 4.0).unwrap();
        let tau = hexagon_ratio_tau(&NormBall2::polygon(sq.clone()).unwrap());
        assert!((tau - tau_oracle(&sq, 800)).abs() < 1e-3);
        assert_abs_diff_eq!(tau, 0.75, epsilon = 1e-9);
        assert_abs_diff_eq!(normed_width_bound(&NormBall2::polygon(sq).unwrap()), 4.0, epsilon = 1e-8);
    }

    #[test]
    fn tau_is_affine_invariant() {
        let map = |q: Point2| Point2::new(1.3 * q.x + 0.4 * q.y, -0.2 * q.x + 0.7 * q.y);
        for poly in [Polygon2::random_symmetric(5, 5).unwrap(), hexagon(), Polygon2::regular(8, 1.0, 0.0).unwrap()] {
            let a = hexagon_ratio_tau(&NormBall2::polygon(poly.clone()).unwrap());
            let b = hexagon_ratio_tau(&NormBall2::polygon(poly.map(map).unwrap()).unwrap());
            assert!((a - b).abs() < 1e-6, "{a} vs {b}");
            assert!(a <= 1.0 + 1e-9);
        }
        let ellipse = SmoothBody2::fit_ellipse(2.0, 1.0, 24).unwrap().body;
        let t = hexagon_ratio_tau(&NormBall2::smooth(ellipse).unwrap());
        assert!((t - 3.0 * 3f64.sqrt() / (2.0 * PI)).abs() < 1e-6);
    }

    #[test]
    fn symmetry_certificate() {
        assert!(NormBall2::smooth(SmoothBody2::from_coeffs(1.0, &[0.0, 0.1], &[]).unwrap()).is_ok());
        assert!(NormBall2::smooth(SmoothBody2::from_coeffs(1.0, &[0.0, 0.0, 0.05], &[]).unwrap()).is_err());
        assert!(NormBall2::polygon(Polygon2::regular(5, 1.0, 0.0).unwrap()).is_err());
    }

    #[test]
    fn birkhoff_directions() {
        let disk = SmoothBody2::disk(1.0);
        for phi in [0.0, 0.7, 2.0] {
            assert!(birkhoff_direction(&disk, phi).dot(Point2::polar(1.0, phi)).abs() < 1e-12);
        }
        let ellipse = SmoothBody2::fit_ellipse(2.0, 1.0, 24).unwrap().body;
        let d = birkhoff_direction(&ellipse, 0.0);
        assert!(d.x.abs() < 1e-6 && (d.y.abs() - 1.0).abs() < 1e-6);
        // the tangent of M at the chosen point is parallel to φ
        for phi in [0.3, 1.1, 2.9] {
            let t = phi - std::f64::consts::FRAC_PI_2;
            let tangent = (ellipse.point(t + 1e-6) - ellipse.point(t - 1e-6)).unit();
            assert!(tangent.cross(Point2::polar(1.0, phi)).abs() < 1e-9);
        }
    }

    #[test]
    fn disk_norm_reproduces_euclidean_counts() {
        let k = SmoothBody2::from_coeffs(1.0, &[0.1, 0.08, 0.03], &[0.0, 0.02, -0.01]).unwrap();
        let mk = MinkowskiNormals::new(&NormBall2::disk(), &k).unwrap();
        let b: Body2 = k.clone().into();
        for i in 0..300u64 {
            let p = b.sample_interior_at(1, i);
            let euclid = crate::normals::normal_feet2(&b, p).unwrap();
            let feet = mk.feet(p).unwrap().unwrap();
            assert_eq!(feet.len(), euclid.len());
            for (theta, _) in feet {
                assert!(euclid.iter().any(|f| matches!(f.source, crate::normals::FootSource::Smooth { theta: t } if (t - theta).abs() < 1e-9)));
            }
            assert_eq!(count_minkowski_normals(&NormBall2::disk(), &k, p).unwrap(), count_normals2(&b, p).unwrap());
        }
    }

    #[test]
    fn homothets_of_the_ball_have_two() {
        let ball = SmoothBody2::from_coeffs(1.0, &[0.0, 0.1, 0.0, 0.02], &[0.0, 0.05]).unwrap();
        let m = NormBall2::smooth(ball.clone()).unwrap();
        let k = ball.scaled(1.7).translated(Point2::new(0.3, -0.2));
        let b: Body2 = k.clone().into();
        for i in 0..200u64 {
            let p = b.sample_interior_at(6, i);
            assert_eq!(count_minkowski_normals(&m, &k, p).unwrap(), 2);
        }
    }

    #[test]
    fn constant_norm_width_pairs_with_diameters() {
        // K − K = 2c·M when h_K = c·h_M plus odd harmonics
        let ball = SmoothBody2::from_coeffs(1.0, &[0.0, 0.08, 0.0, 0.01], &[0.0, 0.03]).unwrap();
        let m = NormBall2::smooth(ball).unwrap();
        let k = SmoothBody2::from_coeffs(1.0, &[0.0, 0.08, 0.03, 0.01], &[0.0, 0.03, 0.01]).unwrap();
        let mk = MinkowskiNormals::new(&m, &k).unwrap();
        let b: Body2 = k.clone().into();
        let mut checked = 0;
        for i in 0..300u64 {
            let p = b.sample_interior_at(2, i);
            let (Ok(Sample::Count(n)), Ok(DiameterCount::Finite(d))) = (mk.sample(p), count_diameters_smooth(&k, p)) else { continue };
            assert_eq!(n as usize, 2 * d, "{p:?}");
            checked += 1;
        }
        assert!(checked > 290);
    }
}
