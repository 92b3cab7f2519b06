use super::Point2;
use crate::error::{GeometryError, Result};
use crate::roots::LinearFamily;
use crate::trig::TrigPoly;
use nalgebra::{DMatrix, DVector};
use std::f64::consts::{PI, TAU};
use std::fmt;
use std::sync::OnceLock;

/// Grid on which `ρ = h + h''` is checked at construction.
pub const CONVEXITY_GRID: usize = 4096;
pub const MIN_RADIUS_OF_CURVATURE: f64 = 1e-9;

/// Number of boundary points in the cached inner/outer polygons used by `contains`.
const OUTLINE_POINTS: usize = 512;

/// Convex body with support function `h(θ) = a0 + Σ (a_k cos kθ + b_k sin kθ)`.
///
/// The boundary point with outer normal `u(θ) = (cos θ, sin θ)` is
/// `r(θ) = h u + h' u'`, the radius of curvature there is `ρ = h + h''` and the
/// centre of curvature is `c(θ) = r − ρ u`.
#[derive(Clone)]
pub struct SmoothBody2 {
    h: TrigPoly,
    rho: TrigPoly,
    outline: OnceLock<Outline>,
    normals: OnceLock<LinearFamily>,
    diameters: OnceLock<LinearFamily>,
}

impl fmt::Debug for SmoothBody2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SmoothBody2").field("support", &self.h).finish()
    }
}

impl PartialEq for SmoothBody2 {
    fn eq(&self, other: &Self) -> bool {
        self.h == other.h
    }
}

/// Least-squares support-function fit together with its residual on the samples.
#[derive(Debug, Clone)]
pub struct SupportFit {
    pub body: SmoothBody2,
    pub max_residual: f64,
    pub rms_residual: f64,
}

/// Support function of the axis-aligned ellipse with semi-axes `a`, `b`.
pub fn ellipse_support(a: f64, b: f64) -> impl Fn(f64) -> f64 {
    move |t: f64| (a * a * t.cos().powi(2) + b * b * t.sin().powi(2)).sqrt()
}

impl SmoothBody2 {
    pub fn new(h: TrigPoly) -> Result<Self> {
        if h.cos_coeffs().iter().chain(h.sin_coeffs()).any(|c| !c.is_finite()) || !h.a0().is_finite() {
            return Err(GeometryError::DegenerateBody("non-finite support coefficient".into()));
        }
        let rho = radius_of_curvature_poly(&h);
        let (theta, min_rho) = grid_min(&rho, CONVEXITY_GRID);
        if min_rho <= MIN_RADIUS_OF_CURVATURE {
            return Err(GeometryError::NonConvex { theta, rho: min_rho });
        }
        Ok(SmoothBody2 {
            h,
            rho,
            outline: OnceLock::new(),
            normals: OnceLock::new(),
            diameters: OnceLock::new(),
        })
    }

    pub fn from_coeffs(a0: f64, cos: &[f64], sin: &[f64]) -> Result<Self> {
        SmoothBody2::new(TrigPoly::new(a0, cos, sin))
    }

    /// Disk of radius `r > 0` centred at the origin.
    pub fn disk(r: f64) -> Self {
        SmoothBody2::new(TrigPoly::constant(r)).expect("disk radius must be positive")
    }

    /// Least-squares Fourier fit of `(θ, h)` samples.
    pub fn fit(samples: &[(f64, f64)], degree: usize) -> Result<SupportFit> {
        let cols = 2 * degree + 1;
        if samples.len() < cols {
            return Err(GeometryError::Domain(format!(
                "{} samples cannot determine {cols} coefficients",
                samples.len()
            )));
        }
        let design = DMatrix::from_fn(samples.len(), cols, |i, j| {
            let t = samples[i].0;
            match j {
                0 => 1.0,
                j if j <= degree => (j as f64 * t).cos(),
                j => ((j - degree) as f64 * t).sin(),
            }
        });
        let rhs = DVector::from_iterator(samples.len(), samples.iter().map(|s| s.1));
        let coeffs = design
            .svd(true, true)
            .solve(&rhs, 1e-14)
            .map_err(|e| GeometryError::Domain(e.to_string()))?;
        let h = TrigPoly::new(coeffs[0], &coeffs.as_slice()[1..=degree], &coeffs.as_slice()[degree + 1..]);
        let body = SmoothBody2::new(h)?;
        let residuals: Vec<f64> = samples.iter().map(|&(t, v)| (body.support(t) - v).abs()).collect();
        Ok(SupportFit {
            max_residual: residuals.iter().copied().fold(0.0, f64::max),
            rms_residual: (residuals.iter().map(|r| r * r).sum::<f64>() / residuals.len() as f64).sqrt(),
            body,
        })
    }

    /// Fit of an arbitrary support function sampled at `4·degree + 64` equispaced angles.
    pub fn fit_function(h: impl Fn(f64) -> f64, degree: usize) -> Result<SupportFit> {
        let m = 4 * degree + 64;
        let samples: Vec<(f64, f64)> = (0..m)
            .map(|j| {
                let t = TAU * j as f64 / m as f64;
                (t, h(t))
            })
            .collect();
        SmoothBody2::fit(&samples, degree)
    }

    pub fn fit_ellipse(a: f64, b: f64, degree: usize) -> Result<SupportFit> {
        SmoothBody2::fit_function(ellipse_support(a, b), degree)
    }

    pub fn support_poly(&self) -> &TrigPoly {
        &self.h
    }

    pub fn rho_poly(&self) -> &TrigPoly {
        &self.rho
    }

    pub fn a0(&self) -> f64 {
        self.h.a0()
    }

    pub fn degree(&self) -> usize {
        self.h.degree()
    }

    pub fn support(&self, theta: f64) -> f64 {
        self.h.eval(theta)
    }

    pub fn rho(&self, theta: f64) -> f64 {
        self.rho.eval(theta)
    }

    pub fn point(&self, theta: f64) -> Point2 {
        let [h, dh, _, _] = self.h.eval_derivs(theta);
        let u = Point2::polar(1.0, theta);
        u * h + u.perp() * dh
    }

    pub fn center_of_curvature(&self, theta: f64) -> Point2 {
        let [_, dh, d2h, _] = self.h.eval_derivs(theta);
        let u = Point2::polar(1.0, theta);
        u * (-d2h) + u.perp() * dh
    }

    pub fn area(&self) -> f64 {
        let mut a = PI * self.h.a0() * self.h.a0();
        for k in 1..=self.h.degree() {
            let (c, s) = self.h.coeff(k);
            a += 0.5 * PI * (1.0 - (k * k) as f64) * (c * c + s * s);
        }
        a
    }

    pub fn perimeter(&self) -> f64 {
        TAU * self.h.a0()
    }

    /// `∫_0^θ ρ`, the boundary length from `r(0)` to `r(θ)`.
    pub fn arc_length(&self, theta: f64) -> f64 {
        let mut s = self.h.a0() * theta;
        for k in 1..=self.h.degree() {
            let (c, sn) = self.h.coeff(k);
            let kf = k as f64;
            let w = 1.0 - kf * kf;
            s += w * (c * (kf * theta).sin() + sn * (1.0 - (kf * theta).cos())) / kf;
        }
        s
    }

    /// Inverse of `arc_length` on `[0, perimeter)`.
    pub fn theta_at_arc_length(&self, s: f64) -> f64 {
        let total = self.perimeter();
        let target = s.rem_euclid(total);
        let (mut lo, mut hi) = (0.0, TAU);
        let mut t = TAU * target / total;
        for _ in 0..200 {
            let f = self.arc_length(t) - target;
            if f > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            let step = t - f / self.rho(t);
            let next = if step > lo && step < hi { step } else { 0.5 * (lo + hi) };
            if (next - t).abs() < 1e-15 || hi - lo < 1e-15 {
                return next;
            }
            t = next;
        }
        t
    }

    /// Minimal radius of curvature: the largest disk rolling freely inside.
    pub fn rolling_ball_radius(&self) -> f64 {
        self.rolling_ball().1
    }

    /// `(θ, ρ(θ))` at the minimum of the radius of curvature.
    pub fn rolling_ball(&self) -> (f64, f64) {
        let (theta, _) = grid_min(&self.rho, CONVEXITY_GRID);
        let d = self.rho.derivative();
        let dd = d.derivative();
        let mut t = theta;
        for _ in 0..20 {
            let (g, gg) = (d.eval(t), dd.eval(t));
            if gg <= 0.0 {
                break;
            }
            let step = g / gg;
            t -= step.clamp(-TAU / CONVEXITY_GRID as f64, TAU / CONVEXITY_GRID as f64);
            if step.abs() < 1e-15 {
                break;
            }
        }
        let best = if self.rho(t) < self.rho(theta) { t } else { theta };
        (best, self.rho(best))
    }

    /// Support function shifted by `t`: the parallel body at distance `t`
    /// (inward for `t < 0`).
    pub fn offset(&self, t: f64) -> Result<SmoothBody2> {
        SmoothBody2::new(self.h.add_constant(t)).map_err(|e| match e {
            GeometryError::NonConvex { theta, rho } => GeometryError::Singularity(format!(
                "offset {t} exceeds the rolling ball radius: radius of curvature {rho:.3e} at theta = {theta:.6}"
            )),
            other => other,
        })
    }

    pub fn scaled(&self, s: f64) -> SmoothBody2 {
        SmoothBody2::new(self.h.scale(s)).expect("scaling by a positive factor keeps convexity")
    }

    pub fn translated(&self, v: Point2) -> SmoothBody2 {
        let shift = TrigPoly::new(0.0, &[v.x], &[v.y]);
        SmoothBody2::new(self.h.add(&shift)).expect("translation keeps convexity")
    }

    /// `K + (−K)`, with support function `h(θ) + h(θ + π)`.
    pub fn difference_body(&self) -> SmoothBody2 {
        SmoothBody2::new(self.h.add(&self.h.shift_half_turn())).expect("difference body of a convex body is convex")
    }

    /// `max_θ ⟨p, u(θ)⟩ − h(θ)`: positive outside, minus the distance to the
    /// boundary inside.
    pub fn support_excess(&self, p: Point2) -> f64 {
        let n = 1024;
        let psi = |t: f64| p.dot(Point2::polar(1.0, t)) - self.h.eval(t);
        let mut best: Vec<(f64, f64)> = (0..n)
            .map(|j| {
                let t = TAU * j as f64 / n as f64;
                (psi(t), t)
            })
            .collect();
        best.sort_by(|a, b| b.0.total_cmp(&a.0));
        best.iter()
            .take(3)
            .map(|&(_, t0)| {
                let step = TAU / n as f64;
                self.maximize_excess(p, t0 - step, t0 + step)
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Maximum of `ψ(θ) = ⟨p, u⟩ − h` on `[lo, hi]`, assuming `ψ` is unimodal there.
    pub(crate) fn maximize_excess(&self, p: Point2, mut lo: f64, mut hi: f64) -> f64 {
        let psi = |t: f64| p.dot(Point2::polar(1.0, t)) - self.h.eval(t);
        let dpsi = |t: f64| p.dot(Point2::polar(1.0, t).perp()) - self.h.derivative_at(t);
        let (dl, dh) = (dpsi(lo), dpsi(hi));
        if dl <= 0.0 {
            return psi(lo).max(if dh >= 0.0 { psi(hi) } else { f64::NEG_INFINITY });
        }
        if dh >= 0.0 {
            return psi(hi);
        }
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if dpsi(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-14 {
                break;
            }
        }
        psi(0.5 * (lo + hi))
    }

    pub fn contains(&self, p: Point2) -> bool {
        let tol = 1e-12 * self.h.a0().abs().max(1.0);
        let o = self.outline();
        let j = o.sector(p);
        let (a, b) = (o.points[j], o.points[j + 1]);
        if (b - a).cross(p - a) >= 0.0 {
            return true;
        }
        let (ta, tb) = (o.thetas[j], o.thetas[j + 1]);
        let psi = |t: f64| p.dot(Point2::polar(1.0, t)) - self.h.eval(t);
        if psi(ta) > tol || psi(tb) > tol {
            return false;
        }
        self.maximize_excess(p, ta, tb) <= tol
    }

    fn outline(&self) -> &Outline {
        self.outline.get_or_init(|| Outline::new(self))
    }

    /// Scan `⟨p, u'(θ)⟩ − h'(θ)` whose zeros are the feet of normals through `p`.
    pub(crate) fn normals_family(&self) -> &LinearFamily {
        self.normals.get_or_init(|| {
            LinearFamily::new(
                TrigPoly::sin1().scale(-1.0),
                TrigPoly::cos1(),
                self.h.derivative(),
                false,
                self.slope_tol(),
            )
        })
    }

    /// Antiperiodic scan `cross(p − r(φ), r(φ + π) − r(φ))` on `[0, π)`, whose
    /// zeros are the affine diameters through `p`.
    pub(crate) fn diameters_family(&self) -> &LinearFamily {
        self.diameters.get_or_init(|| {
            let (rx, ry) = self.boundary_polys();
            let (sx, sy) = (rx.shift_half_turn(), ry.shift_half_turn());
            let (dx, dy) = (sx.sub(&rx), sy.sub(&ry));
            let b = rx.mul(&sy).sub(&ry.mul(&sx));
            let scale = self.h.a0().abs().max(1e-300);
            LinearFamily::new(dy, dx.scale(-1.0), b, true, 1e-6 * scale * scale)
        })
    }

    /// Coordinates of `r(θ)` as trigonometric polynomials.
    pub fn boundary_polys(&self) -> (TrigPoly, TrigPoly) {
        let dh = self.h.derivative();
        let (c, s) = (TrigPoly::cos1(), TrigPoly::sin1());
        let rx = self.h.mul(&c).sub(&dh.mul(&s));
        let ry = self.h.mul(&s).add(&dh.mul(&c));
        (rx, ry)
    }

    /// Absolute tolerance on scan slopes below which a foot is flagged degenerate.
    pub(crate) fn slope_tol(&self) -> f64 {
        1e-6 * self.h.a0().abs()
    }
}

fn radius_of_curvature_poly(h: &TrigPoly) -> TrigPoly {
    h.add(&h.derivative().derivative())
}

fn grid_min(f: &TrigPoly, n: usize) -> (f64, f64) {
    (0..n)
        .map(|j| {
            let t = TAU * j as f64 / n as f64;
            (t, f.eval(t))
        })
        .fold((0.0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a })
}

trait DerivativeAt {
    fn derivative_at(&self, t: f64) -> f64;
}

impl DerivativeAt for TrigPoly {
    fn derivative_at(&self, t: f64) -> f64 {
        self.eval_derivs(t)[1]
    }
}

/// Inscribed polygon on boundary points with equally spaced normal angles,
/// indexed by polar angle around an interior point.
#[derive(Debug, Clone)]
struct Outline {
    center: Point2,
    thetas: Vec<f64>,
    points: Vec<Point2>,
    /// Unwrapped polar angles of `points` around `center`, increasing.
    angles: Vec<f64>,
}

impl Outline {
    fn new(body: &SmoothBody2) -> Self {
        let n = OUTLINE_POINTS;
        let mut thetas: Vec<f64> = (0..n).map(|j| TAU * j as f64 / n as f64).collect();
        let mut points: Vec<Point2> = thetas.iter().map(|&t| body.point(t)).collect();
        let center = points.iter().fold(Point2::ORIGIN, |a, &b| a + b) / n as f64;
        let first = (points[0] - center).angle();
        let mut angles: Vec<f64> = points
            .iter()
            .map(|&q| first + ((q - center).angle() - first).rem_euclid(TAU))
            .collect();
        thetas.push(TAU);
        points.push(points[0]);
        angles.push(first + TAU);
        Outline {
            center,
            thetas,
            points,
            angles,
        }
    }

    /// Index `j` with the ray from the centre through `p` between points `j` and `j + 1`.
    fn sector(&self, p: Point2) -> usize {
        let first = self.angles[0];
        let a = first + ((p - self.center).angle() - first).rem_euclid(TAU);
        let j = self.angles.partition_point(|&x| x <= a);
        j.saturating_sub(1).min(self.angles.len() - 2)
    }
}
