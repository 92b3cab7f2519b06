//! Polygons inscribed in smooth bodies at equal arc-length spacing, and the
//! comparison of their exact `n(P_k)` with a sampled `n(K)`.

use crate::averaging::{estimate_interior_average, Body, Counter, EstimateReport};
use crate::bodies2d::{Body2, Polygon2, SmoothBody2};
use crate::error::{GeometryError, Result};
use crate::wedges::exact_average_normals;
use serde::Serialize;

/// Hull of `r(θ_j)` where `θ_j` sits at arc length `j·L/k` from `r(0)`.
pub fn inscribe_polygon(body: &SmoothBody2, k: usize) -> Result<Polygon2> {
    if k < 3 {
        return Err(GeometryError::Domain(format!("an inscribed polygon needs at least 3 vertices, got {k}")));
    }
    let step = body.perimeter() / k as f64;
    let pts: Vec<_> = (0..k).map(|j| body.point(body.theta_at_arc_length(step * j as f64))).collect();
    Polygon2::from_ccw_vertices(pts)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RaceRow {
    pub k: usize,
    /// Exact `n(P_k)` from the wedge decomposition.
    pub polygon_n: f64,
    pub body_n: EstimateReport,
    /// `n(P_k)` minus the upper 95% bound of `n(K)`.
    pub margin: f64,
}

/// One row per `k`; `n(K)` is estimated once and shared.
pub fn discretization_race(body: &SmoothBody2, ks: &[usize], samples: usize, seed: u64) -> Result<Vec<RaceRow>> {
    let body_n = estimate_interior_average(&Body::Planar(Body2::Smooth(body.clone())), &Counter::Normals, samples, seed)?;
    let rows = ks.iter().map(|&k| {
        let polygon_n = exact_average_normals(&inscribe_polygon(body, k)?).mean;
        Ok(RaceRow {
            k,
            polygon_n,
            body_n,
            margin: polygon_n - body_n.ci95.1,
        })
    });
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let rows: Vec<Result<RaceRow>> = rows.collect::<Vec<_>>();
        rows.into_par_iter().collect()
    }
    #[cfg(not(feature = "parallel"))]
    rows.collect()
}

/// Smallest tested `k` from which every margin is positive.
pub fn empirical_k0(rows: &[RaceRow]) -> Option<usize> {
    let mut sorted: Vec<&RaceRow> = rows.iter().collect();
    sorted.sort_by_key(|r| r.k);
    let tail = sorted.iter().rev().take_while(|r| r.margin > 0.0).count();
    (tail > 0).then(|| sorted[sorted.len() - tail].k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies2d::Point2;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn disk_gives_regular_polygons() {
        let disk = SmoothBody2::disk(1.0);
        let sq = inscribe_polygon(&disk, 4).unwrap();
        let expected = [Point2::new(1.0, 0.0), Point2::new(0.0, 1.0), Point2::new(-1.0, 0.0), Point2::new(0.0, -1.0)];
        for (v, e) in sq.vertices().iter().zip(expected) {
            assert!((*v - e).norm() < 1e-12, "{v:?}");
        }
        assert_abs_diff_eq!(sq.area(), 2.0, epsilon = 1e-12);
        let rows = discretization_race(&disk, &[8, 16, 32], 2000, 1).unwrap();
        for r in &rows {
            assert_abs_diff_eq!(r.polygon_n, 8.0, epsilon = 1e-9);
            assert_eq!(r.body_n.mean, 2.0);
            assert!(r.margin > 5.9);
        }
        assert_eq!(empirical_k0(&rows), Some(8));
        assert!(inscribe_polygon(&disk, 2).is_err());
    }

    #[test]
    fn vertices_on_boundary_at_equal_arc_length() {
        let bodies = [
            SmoothBody2::fit_ellipse(2.0, 1.0, 24).unwrap().body,
            SmoothBody2::from_coeffs(1.0, &[0.0, 0.0, 0.05], &[0.0, 0.02]).unwrap(),
        ];
        for body in &bodies {
            for k in [5, 17, 64] {
                let poly = inscribe_polygon(body, k).unwrap();
                assert_eq!(poly.len(), k);
                let step = body.perimeter() / k as f64;
                let mut thetas = Vec::new();
                for (j, v) in poly.vertices().iter().enumerate() {
                    let theta = body.theta_at_arc_length(step * j as f64);
                    // the vertex is the support point for its normal
                    assert!((v.dot(Point2::polar(1.0, theta)) - body.support(theta)).abs() < 1e-9);
                    assert!(body.support_excess(*v).abs() < 1e-9);
                    thetas.push(theta);
                }
                // arc lengths by independent quadrature of ρ
                for w in thetas.windows(2) {
                    let n = 2000;
                    let h = (w[1] - w[0]) / n as f64;
                    let simpson: f64 = (0..=n)
                        .map(|i| {
                            let c = if i == 0 || i == n { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
                            c * body.rho(w[0] + h * i as f64)
                        })
                        .sum::<f64>()
                        * h
                        / 3.0;
                    assert_abs_diff_eq!(simpson, step, epsilon = 1e-9);
                }
            }
        }
    }

    #[test]
    fn ellipse_polygon_area_converges() {
        let ellipse = SmoothBody2::fit_ellipse(2.0, 1.0, 24).unwrap().body;
        // each cap cut off by a chord of length s has area ≈ κ s³ / 12, so the
        // deficit is ≈ (L/k)² · ∫κ ds / 12 = π L² / (6 k²)
        for k in [64, 128, 256] {
            let area = inscribe_polygon(&ellipse, k).unwrap().area();
            let deficit = ellipse.area() - area;
            let predicted = PI * ellipse.perimeter().powi(2) / (6.0 * (k * k) as f64);
            assert!((deficit / predicted - 1.0).abs() < 0.02, "k = {k}: {deficit} vs {predicted}");
        }
        assert!(inscribe_polygon(&ellipse, 64).unwrap().area() > 0.998 * ellipse.area());
        assert_abs_diff_eq!(ellipse.area(), 2.0 * std::f64::consts::PI, epsilon = 1e-6);
    }

    #[test]
    fn inscribed_polygons_stay_above_four() {
        let body = SmoothBody2::from_coeffs(1.0, &[0.0, 0.0, 0.05], &[]).unwrap();
        for k in [3, 4, 7, 12, 40, 100] {
            let n = exact_average_normals(&inscribe_polygon(&body, k).unwrap()).mean;
            assert!(n > 4.0, "k = {k}: {n}");
        }
        // arc length zero sits at θ = 0
        assert_abs_diff_eq!(body.theta_at_arc_length(0.0), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(body.theta_at_arc_length(body.arc_length(FRAC_PI_2)), FRAC_PI_2, epsilon = 1e-12);
    }

    #[test]
    fn k0_reads_the_tail() {
        let report = EstimateReport {
            mean: 2.0,
            std_error: 0.0,
            ci95: (2.0, 2.0),
            samples_used: 1,
            degenerate_resampled: 0,
            exact: None,
        };
        let row = |k, margin| RaceRow {
            k,
            polygon_n: 0.0,
            body_n: report,
            margin,
        };
        assert_eq!(empirical_k0(&[row(8, 1.0), row(16, -0.1), row(32, 0.2), row(64, 0.3)]), Some(32));
        assert_eq!(empirical_k0(&[row(8, -1.0)]), None);
    }
}
