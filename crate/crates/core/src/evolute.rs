//! Curvature, centres of curvature and the evolute of smooth planar bodies.

use crate::bodies2d::{Point2, SmoothBody2};
use crate::error::{GeometryError, Result};
use crate::rng::{sample_stream, unit};
use serde::Serialize;
use std::f64::consts::TAU;

/// Grid of the containment check; doubled once when the margin is thin.
pub const EVOLUTE_GRID: usize = 4096;
/// Grid of the coarse support-excess table.
const EXCESS_GRID: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvolutePoint {
    pub theta: f64,
    pub rho: f64,
    pub boundary_point: Point2,
    pub center: Point2,
}

pub fn curvature_profile(body: &SmoothBody2, grid: usize) -> Vec<EvolutePoint> {
    (0..grid)
        .map(|j| {
            let theta = TAU * j as f64 / grid as f64;
            EvolutePoint {
                theta,
                rho: body.rho(theta),
                boundary_point: body.point(theta),
                center: body.center_of_curvature(theta),
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvoluteContainment {
    pub contained: bool,
    /// Largest support excess `max_φ ⟨c(θ), u(φ)⟩ − h(φ)` over the grid;
    /// negative values are a containment margin.
    pub worst_violation: f64,
    /// Angle of the worst centre.
    pub worst_theta: f64,
    pub grid: usize,
}

/// Checks that every centre of curvature lies in the body.
pub fn contains_evolute(body: &SmoothBody2) -> EvoluteContainment {
    let table = ExcessTable::new(body);
    let mut grid = EVOLUTE_GRID;
    loop {
        let (worst_violation, worst_theta) = (0..grid)
            .map(|j| {
                let theta = TAU * j as f64 / grid as f64;
                (table.excess(body, body.center_of_curvature(theta)), theta)
            })
            .fold((f64::NEG_INFINITY, 0.0), |a, b| if b.0 > a.0 { b } else { a });
        let tol = 1e-12 * body.a0();
        let thin = worst_violation.abs() < 1e-3 * body.a0();
        if !thin || grid > EVOLUTE_GRID {
            return EvoluteContainment {
                contained: worst_violation <= tol,
                worst_violation,
                worst_theta,
                grid,
            };
        }
        grid *= 2;
    }
}

/// Minimal radius of curvature, `1 / κ_max`.
pub fn rolling_ball_radius(body: &SmoothBody2) -> f64 {
    body.rolling_ball_radius()
}

/// `h(φ)` and `u(φ)` on a fixed grid, so coarse excesses cost one dot product per node.
struct ExcessTable {
    h: Vec<f64>,
    u: Vec<Point2>,
}

impl ExcessTable {
    fn new(body: &SmoothBody2) -> Self {
        let phis = (0..EXCESS_GRID).map(|j| TAU * j as f64 / EXCESS_GRID as f64);
        Self {
            h: phis.clone().map(|t| body.support(t)).collect(),
            u: phis.map(|t| Point2::polar(1.0, t)).collect(),
        }
    }

    fn excess(&self, body: &SmoothBody2, p: Point2) -> f64 {
        let mut top = [(f64::NEG_INFINITY, 0usize); 3];
        for (j, (h, u)) in self.h.iter().zip(&self.u).enumerate() {
            let v = p.dot(*u) - h;
            if v > top[2].0 {
                top[2] = (v, j);
                top.sort_by(|a, b| b.0.total_cmp(&a.0));
            }
        }
        let step = TAU / EXCESS_GRID as f64;
        top.iter()
            .map(|&(_, j)| {
                let t0 = step * j as f64;
                body.maximize_excess(p, t0 - step, t0 + step)
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Random body `1 + Σ_{k=2}^{degree} (a_k cos kθ + b_k sin kθ)` that contains
/// its evolute. Amplitudes are drawn with `Σ (k² + k + 1)|coef| ≤ 1`, which
/// keeps the centres inside; the check is still run and failures redrawn.
pub fn random_evolute_body(seed: u64, degree: usize) -> Result<SmoothBody2> {
    if degree < 2 {
        return Err(GeometryError::Domain("degree must be at least 2".into()));
    }
    for attempt in 0..64u64 {
        let mut rng = sample_stream(seed, u64::MAX - 2 - attempt);
        let raw: Vec<(f64, f64)> = (2..=degree).map(|_| (unit(&mut rng) - 0.5, unit(&mut rng) - 0.5)).collect();
        let weight: f64 = raw
            .iter()
            .enumerate()
            .map(|(i, (c, s))| {
                let k = (i + 2) as f64;
                (k * k + k + 1.0) * (c.abs() + s.abs())
            })
            .sum();
        let budget = 0.5 + 0.45 * unit(&mut rng);
        let f = budget / weight;
        let mut cos = vec![0.0];
        let mut sin = vec![0.0];
        for (c, s) in raw {
            cos.push(c * f);
            sin.push(s * f);
        }
        let body = SmoothBody2::from_coeffs(1.0, &cos, &sin)?;
        if contains_evolute(&body).contained {
            return Ok(body);
        }
    }
    Err(GeometryError::Domain("no evolute-containing body found".into()))
}
