//! Eikonal and curvature-power flows of smooth planar bodies, with `n(K(t))`
//! tracked along the way.
//!
//! In support-function form the eikonal flow is `h ↦ h ± t`, so it is applied
//! exactly. The curvature-power flow `∂h/∂t = ±ρ^r` is stepped explicitly on a
//! θ-grid and projected back onto a fixed Fourier degree after every step.

use crate::averaging::{estimate_boundary_average, estimate_interior_average, Counter, EstimateReport};
use crate::bodies2d::{Body2, SmoothBody2};
use crate::error::{GeometryError, Result};
use crate::trig::TrigPoly;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlowDirection {
    In,
    Out,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlowKind {
    OutwardEikonal,
    InwardEikonal,
    CurvaturePower { exponent: f64, direction: FlowDirection },
}

impl FlowKind {
    /// Parses `outward_eikonal`, `inward_eikonal` and `curvature_power:R[:in|:out]`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut parts = s.split(':');
        match parts.next().unwrap_or("") {
            "outward_eikonal" => Ok(FlowKind::OutwardEikonal),
            "inward_eikonal" => Ok(FlowKind::InwardEikonal),
            "curvature_power" => {
                let exponent = parts
                    .next()
                    .unwrap_or("1")
                    .parse::<f64>()
                    .map_err(|e| GeometryError::Domain(format!("curvature power exponent: {e}")))?;
                let direction = match parts.next().unwrap_or("out") {
                    "out" => FlowDirection::Out,
                    "in" => FlowDirection::In,
                    other => return Err(GeometryError::Domain(format!("unknown flow direction {other:?}"))),
                };
                Ok(FlowKind::CurvaturePower { exponent, direction })
            }
            other => Err(GeometryError::Domain(format!("unknown flow kind {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlowSpec {
    pub kind: FlowKind,
    pub t_end: f64,
    pub steps: usize,
}

impl FlowSpec {
    pub fn new(kind: FlowKind, t_end: f64, steps: usize) -> Result<Self> {
        if steps == 0 {
            return Err(GeometryError::Domain("a flow needs at least one step".into()));
        }
        if !(t_end > 0.0 && t_end.is_finite()) {
            return Err(GeometryError::Domain(format!("t_end must be positive, got {t_end}")));
        }
        if let FlowKind::CurvaturePower { exponent, .. } = kind {
            if !(exponent > 0.0 && exponent.is_finite()) {
                return Err(GeometryError::Domain(format!("curvature power exponent must be positive, got {exponent}")));
            }
        }
        Ok(Self { kind, t_end, steps })
    }

    pub fn times(&self) -> Vec<f64> {
        (0..=self.steps).map(|k| self.t_end * k as f64 / self.steps as f64).collect()
    }
}

#[derive(Debug, Clone)]
pub struct FlowTrace {
    pub times: Vec<f64>,
    pub bodies: Vec<SmoothBody2>,
    pub n_values: Vec<EstimateReport>,
    pub n_surf_values: Vec<EstimateReport>,
    /// Set when convexity was lost before `t_end`; the trace stops at the last valid time.
    pub truncated: bool,
}

/// Parallel body at signed distance `t`. Centres of curvature are unchanged
/// and `ρ` shifts by `t`; both are checked on a grid.
pub fn offset_body(body: &SmoothBody2, t: f64) -> Result<SmoothBody2> {
    let moved = body.offset(t)?;
    let tol = 1e-12 * body.a0().abs().max(t.abs()).max(1.0);
    for j in 0..64 {
        let theta = TAU * j as f64 / 64.0;
        let dc = (moved.center_of_curvature(theta) - body.center_of_curvature(theta)).norm();
        let drho = moved.rho(theta) - body.rho(theta) - t;
        if dc > tol || drho.abs() > tol {
            return Err(GeometryError::Singularity(format!("offset postcondition failed at theta = {theta}")));
        }
    }
    Ok(moved)
}

/// Runs the flow and estimates `n` and `n_surf` at every time with the same seed.
pub fn evolve_flow(body: &SmoothBody2, spec: &FlowSpec, samples: usize, seed: u64) -> Result<FlowTrace> {
    evolve_flow_sampled(body, spec, samples, samples, seed)
}

/// `evolve_flow` with separate interior and boundary sample counts.
pub fn evolve_flow_sampled(body: &SmoothBody2, spec: &FlowSpec, interior: usize, boundary: usize, seed: u64) -> Result<FlowTrace> {
    let spec = FlowSpec::new(spec.kind, spec.t_end, spec.steps)?;
    let times = spec.times();
    let mut trace = FlowTrace {
        times: Vec::new(),
        bodies: Vec::new(),
        n_values: Vec::new(),
        n_surf_values: Vec::new(),
        truncated: false,
    };
    let mut stepper = match spec.kind {
        FlowKind::CurvaturePower { exponent, direction } => Some(PowerFlow::new(body, exponent, direction)),
        _ => None,
    };
    for &t in &times {
        let current = match (spec.kind, stepper.as_mut()) {
            (FlowKind::OutwardEikonal, _) => offset_body(body, t),
            (FlowKind::InwardEikonal, _) => offset_body(body, -t),
            (_, Some(flow)) => flow.advance_to(t),
            (_, None) => unreachable!("curvature power flows always have a stepper"),
        };
        let current = match current {
            Ok(b) => b,
            Err(GeometryError::Singularity(_) | GeometryError::NonConvex { .. }) => {
                trace.truncated = true;
                break;
            }
            Err(e) => return Err(e),
        };
        let planar = crate::averaging::Body::Planar(Body2::Smooth(current.clone()));
        trace.n_values.push(estimate_interior_average(&planar, &Counter::Normals, interior, seed)?);
        trace.n_surf_values.push(estimate_boundary_average(&planar, &Counter::Normals, boundary, seed)?);
        trace.times.push(t);
        trace.bodies.push(current);
    }
    Ok(trace)
}

/// Explicit stepper for `∂h/∂t = ±ρ^r` with Fourier re-projection.
struct PowerFlow {
    degree: usize,
    thetas: Vec<f64>,
    h: TrigPoly,
    time: f64,
    exponent: f64,
    sign: f64,
}

impl PowerFlow {
    fn new(body: &SmoothBody2, exponent: f64, direction: FlowDirection) -> Self {
        let degree = body.degree().max(16);
        let grid = 4 * degree + 4;
        Self {
            degree,
            thetas: (0..grid).map(|j| TAU * j as f64 / grid as f64).collect(),
            h: body.support_poly().clone(),
            time: 0.0,
            exponent,
            sign: if direction == FlowDirection::Out { 1.0 } else { -1.0 },
        }
    }

    fn advance_to(&mut self, t: f64) -> Result<SmoothBody2> {
        while self.time < t - 1e-15 {
            let rho_poly = self.h.add(&self.h.derivative().derivative());
            let rho: Vec<f64> = self.thetas.iter().map(|&th| rho_poly.eval(th)).collect();
            let (min, max) = rho.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &r| (lo.min(r), hi.max(r)));
            if min <= 0.0 {
                return Err(GeometryError::Singularity(format!("convexity lost at t = {:.6}", self.time)));
            }
            // linearised rate of harmonic k is r ρ^{r−1} (k² − 1)
            let stiffness = self.exponent * min.powf(self.exponent - 1.0).max(max.powf(self.exponent - 1.0));
            let limit = 0.2 / (stiffness * (self.degree * self.degree) as f64);
            let dt = limit.min(t - self.time);
            let values: Vec<f64> = self
                .thetas
                .iter()
                .zip(&rho)
                .map(|(&th, &r)| self.h.eval(th) + self.sign * dt * r.powf(self.exponent))
                .collect();
            self.h = project(&self.thetas, &values, self.degree);
            self.time += dt;
        }
        SmoothBody2::new(self.h.clone()).map_err(|e| match e {
            GeometryError::NonConvex { theta, rho } => {
                GeometryError::Singularity(format!("convexity lost at t = {t:.6}: rho {rho:.3e} at theta = {theta:.6}"))
            }
            other => other,
        })
    }
}

/// Discrete Fourier projection of uniform samples onto degree `degree`.
fn project(thetas: &[f64], values: &[f64], degree: usize) -> TrigPoly {
    let m = thetas.len() as f64;
    let a0 = values.iter().sum::<f64>() / m;
    let mut cos = Vec::with_capacity(degree);
    let mut sin = Vec::with_capacity(degree);
    for k in 1..=degree {
        let kf = k as f64;
        let (mut c, mut s) = (0.0, 0.0);
        for (&th, &v) in thetas.iter().zip(values) {
            c += v * (kf * th).cos();
            s += v * (kf * th).sin();
        }
        cos.push(2.0 * c / m);
        sin.push(2.0 * s / m);
    }
    TrigPoly::new(a0, &cos, &sin)
}

/// `sqrt(Σ_{k≥2} a_k² + b_k²) / a0`: distance from a disk, ignoring translation.
pub fn harmonic_ratio(body: &SmoothBody2) -> f64 {
    let h = body.support_poly();
    let energy: f64 = (2..=h.degree())
        .map(|k| {
            let (c, s) = h.coeff(k);
            c * c + s * s
        })
        .sum();
    energy.sqrt() / h.a0()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Trend {
    Increasing,
    Decreasing,
    Constant,
    Undetermined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Monotonicity {
    pub trend: Trend,
    /// Every consecutive pair of intervals is disjoint and ordered along `trend`.
    pub strict: bool,
    /// Pairs `i < j` whose intervals are disjoint against `trend`.
    pub violations: usize,
}

/// CI-aware monotonicity of a sequence of estimates. The trend is read off the
/// first and last intervals; it is undetermined when they overlap.
pub fn monotonicity(reports: &[EstimateReport]) -> Monotonicity {
    let below = |a: &EstimateReport, b: &EstimateReport| a.ci95.1 < b.ci95.0;
    let (Some(first), Some(last)) = (reports.first(), reports.last()) else {
        return Monotonicity {
            trend: Trend::Undetermined,
            strict: false,
            violations: 0,
        };
    };
    if reports.iter().all(|r| r.std_error == 0.0 && r.mean == first.mean) {
        return Monotonicity {
            trend: Trend::Constant,
            strict: false,
            violations: 0,
        };
    }
    let trend = if below(first, last) {
        Trend::Increasing
    } else if below(last, first) {
        Trend::Decreasing
    } else {
        Trend::Undetermined
    };
    let ordered = |a: &EstimateReport, b: &EstimateReport| match trend {
        Trend::Increasing => below(a, b),
        Trend::Decreasing => below(b, a),
        _ => false,
    };
    let against = |a: &EstimateReport, b: &EstimateReport| match trend {
        Trend::Increasing => below(b, a),
        Trend::Decreasing => below(a, b),
        _ => false,
    };
    let strict = reports.windows(2).all(|w| ordered(&w[0], &w[1]));
    let mut violations = 0;
    for i in 0..reports.len() {
        for j in i + 1..reports.len() {
            if against(&reports[i], &reports[j]) {
                violations += 1;
            }
        }
    }
    Monotonicity { trend, strict, violations }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivativeCheck {
    /// `(n(K(dt)) − n(K)) / dt`.
    pub finite_difference: f64,
    /// `(perimeter / area) · (n_surf − n)`.
    pub predicted: f64,
    pub residual: f64,
    /// Sum of the propagated 95% interval widths of both sides.
    pub ci_width: f64,
}

/// Compares the finite-difference rate of `n` under the outward eikonal flow
/// with the surface-term prediction. All estimates share `seed`.
pub fn derivative_residual(body: &Body2, dt: f64, samples: usize, seed: u64) -> Result<DerivativeCheck> {
    let Body2::Smooth(smooth) = body else {
        return Err(GeometryError::Unsupported("derivative residual needs a smooth body".into()));
    };
    if !(dt > 0.0) {
        return Err(GeometryError::Domain(format!("dt must be positive, got {dt}")));
    }
    let start = crate::averaging::Body::Planar(body.clone());
    let moved = crate::averaging::Body::Planar(Body2::Smooth(offset_body(smooth, dt)?));
    let n0 = estimate_interior_average(&start, &Counter::Normals, samples, seed)?;
    let n1 = estimate_interior_average(&moved, &Counter::Normals, samples, seed)?;
    let surf = estimate_boundary_average(&start, &Counter::Normals, samples, seed)?;
    let ratio = smooth.perimeter() / smooth.area();
    let finite_difference = (n1.mean - n0.mean) / dt;
    let predicted = ratio * (surf.mean - n0.mean);
    Ok(DerivativeCheck {
        finite_difference,
        predicted,
        residual: (finite_difference - predicted).abs(),
        ci_width: (n0.ci_width() + n1.ci_width()) / dt + ratio * (surf.ci_width() + n0.ci_width()),
    })
}

/// `area(t) − (area + perimeter·t + π t²)` for the outward offset.
pub fn steiner_residual(body: &SmoothBody2, t: f64) -> Result<f64> {
    let moved = offset_body(body, t)?;
    Ok(moved.area() - (body.area() + body.perimeter() * t + PI * t * t))
}
