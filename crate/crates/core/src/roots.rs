//! Certified root counting for scan functions that are affine in the query point.
//!
//! Every pointwise counter in the crate (Euclidean normals, affine diameters and
//! Birkhoff normals of smooth bodies) reduces to counting the zeros of
//!
//! ```text
//! f(θ; p) = p.x · ax(θ) + p.y · ay(θ) − b(θ)
//! ```
//!
//! over one period, where `ax`, `ay`, `b` are trigonometric polynomials fixed by
//! the body. The body-dependent parts are tabulated once on a uniform grid, so a
//! query costs three multiply-adds per grid node. Each grid interval is then
//! certified with the bound `M2 ≥ sup |f''|` computed from the coefficients:
//!
//! * same sign at both ends and `min |f| > M2 w²/8`: no zero inside;
//! * monotone (`|f'| > M2 w` at an end): at most one zero, located by safeguarded Newton;
//! * otherwise the interval is split, down to a width floor where any remaining
//!   zero is reported as degenerate.

use crate::trig::TrigPoly;
use std::f64::consts::PI;

pub(crate) const GRID: usize = 4096;

/// Grid size for scan functions of the given trigonometric degree. Smaller grids
/// only cost more subdivision; the certification keeps counts exact.
pub(crate) fn grid_for_degree(degree: usize) -> usize {
    (16 * (degree + 1)).next_power_of_two().clamp(64, GRID)
}
const MAX_DEPTH: u32 = 48;
const MIN_WIDTH: f64 = 1e-13;
/// Relative rounding noise assumed when evaluating a scan function.
const NOISE: f64 = 1e-14;
/// Roots closer than this are one (degenerate) root.
const CLUSTER: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Root {
    pub theta: f64,
    pub slope: f64,
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Scan {
    Roots(Vec<Root>),
    /// `f(·; p)` vanishes identically (e.g. the centre of a disk).
    Continuum,
}

#[derive(Debug, Clone)]
pub(crate) struct LinearFamily {
    ax: TrigPoly,
    ay: TrigPoly,
    b: TrigPoly,
    bounds: [f64; 3],
    bounds0: [f64; 3],
    gx: Vec<f64>,
    gy: Vec<f64>,
    gb: Vec<f64>,
    /// Derivatives of `ax`, `ay`, `b` at the grid nodes.
    gd: Vec<[f64; 3]>,
    period: f64,
    antiperiodic: bool,
    /// Absolute slope below which a root is flagged degenerate.
    slope_tol: f64,
}

impl LinearFamily {
    /// `period` is `2π` for periodic scans, or `π` with `antiperiodic = true`
    /// when `f(θ + π) = −f(θ)`.
    pub fn new(ax: TrigPoly, ay: TrigPoly, b: TrigPoly, antiperiodic: bool, slope_tol: f64) -> Self {
        let degree = ax.degree().max(ay.degree()).max(b.degree());
        Self::with_grid(ax, ay, b, antiperiodic, slope_tol, grid_for_degree(degree))
    }

    pub fn with_grid(ax: TrigPoly, ay: TrigPoly, b: TrigPoly, antiperiodic: bool, slope_tol: f64, n: usize) -> Self {
        let period = if antiperiodic { PI } else { 2.0 * PI };
        let nodes = (0..n).map(|j| period * j as f64 / n as f64);
        let gx = nodes.clone().map(|t| ax.eval(t)).collect();
        let gy = nodes.clone().map(|t| ay.eval(t)).collect();
        let gb = nodes.clone().map(|t| b.eval(t)).collect();
        let (dax, day, db) = (ax.derivative(), ay.derivative(), b.derivative());
        let gd = nodes.map(|t| [dax.eval(t), day.eval(t), db.eval(t)]).collect();
        let bounds = [
            ax.derivative_bound(2),
            ay.derivative_bound(2),
            b.derivative_bound(2),
        ];
        let bounds0 = [ax.derivative_bound(0), ay.derivative_bound(0), b.derivative_bound(0)];
        LinearFamily {
            bounds0,
            ax,
            ay,
            b,
            bounds,
            gx,
            gy,
            gb,
            gd,
            period,
            antiperiodic,
            slope_tol,
        }
    }

    /// `f(·; p)` as a single trigonometric polynomial.
    fn at(&self, p: (f64, f64)) -> TrigPoly {
        self.ax.scale(p.0).add(&self.ay.scale(p.1)).sub(&self.b)
    }

    pub fn scan(&self, p: (f64, f64)) -> Scan {
        let n = self.gx.len();
        let w = self.period / n as f64;
        let m2 = p.0.abs() * self.bounds[0] + p.1.abs() * self.bounds[1] + self.bounds[2];
        let reject = m2 * w * w / 8.0;

        let mut vals = Vec::with_capacity(n + 1);
        vals.extend(self.gx.iter().zip(&self.gy).zip(&self.gb).map(|((x, y), b)| p.0 * x + p.1 * y - b));
        let vmax = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        vals.push(if self.antiperiodic { -vals[0] } else { vals[0] });

        let scale = p.0.abs() * self.bounds[0].max(1.0) + p.1.abs() * self.bounds[1].max(1.0) + self.bounds[2].max(1.0);
        if vmax <= 1e-12 * scale {
            return Scan::Continuum;
        }

        let q = self.at(p);
        let mut roots = Vec::new();
        for (j, pair) in vals.windows(2).enumerate() {
            let (fa, fb) = (pair[0], pair[1]);
            // cheap rejection: same strict sign and both far from zero
            if fa * fb > 0.0 && fa.abs().min(fb.abs()) > reject {
                continue;
            }
            let a = w * j as f64;
            if fa == 0.0 {
                self.push_root(&q, a, &mut roots);
            }
            if sign(fa) * sign(fb) >= 0 && fa.abs().min(fb.abs()) > reject {
                continue;
            }
            let slope = |j: usize| {
                let (g, flip) = if j == n { (self.gd[0], self.antiperiodic) } else { (self.gd[j], false) };
                let d = p.0 * g[0] + p.1 * g[1] - g[2];
                if flip { -d } else { d }
            };
            self.resolve(&q, m2, (a, fa, slope(j)), (a + w, fb, slope(j + 1)), 0, &mut roots);
        }

        // Rounding noise in f creates spurious sign changes within
        // sqrt(2·noise/M2) of a double zero, with slopes up to sqrt(2·noise·M2).
        let magnitude = p.0.abs() * self.bounds0[0] + p.1.abs() * self.bounds0[1] + self.bounds0[2];
        let noise_slope = (2.0 * m2 * NOISE * magnitude).sqrt();
        for r in &mut roots {
            if r.slope.abs() <= noise_slope {
                r.degenerate = true;
            }
        }
        Scan::Roots(merge_clusters(roots, self.period))
    }

    /// Isolates the zeros of `q` on `[a, b]`; ends are `(θ, f, f')`.
    fn resolve(&self, q: &TrigPoly, m2: f64, (a, fa, da): (f64, f64, f64), (b, fb, dbv): (f64, f64, f64), depth: u32, out: &mut Vec<Root>) {
        let w = b - a;
        let change = sign(fa) * sign(fb) < 0;
        if !change && fa.abs().min(fb.abs()) > m2 * w * w / 8.0 {
            return;
        }
        let monotone = da.abs() > m2 * w || dbv.abs() > m2 * w;
        if monotone {
            if change {
                let (theta, slope) = self.newton_bisect(q, (a, fa), (b, fb));
                out.push(Root {
                    theta,
                    slope,
                    degenerate: slope.abs() <= self.slope_tol,
                });
            }
            return;
        }
        if depth >= MAX_DEPTH || w < MIN_WIDTH {
            // Unresolvable cluster: a tangential (double) zero or a zero pair
            // closer than the width floor. Either way the query sits on the
            // degeneracy locus.
            let theta = 0.5 * (a + b);
            if change || fa.abs().min(fb.abs()) <= m2 * w * w {
                let (_, slope) = q.value_and_slope(theta);
                out.push(Root {
                    theta,
                    slope,
                    degenerate: true,
                });
            }
            return;
        }
        let mid = 0.5 * (a + b);
        let (fm, dm) = q.value_and_slope(mid);
        if fm == 0.0 {
            self.push_root(q, mid, out);
        }
        self.resolve(q, m2, (a, fa, da), (mid, fm, dm), depth + 1, out);
        self.resolve(q, m2, (mid, fm, dm), (b, fb, dbv), depth + 1, out);
    }

    fn push_root(&self, q: &TrigPoly, theta: f64, out: &mut Vec<Root>) {
        let (_, slope) = q.value_and_slope(theta);
        out.push(Root {
            theta,
            slope,
            degenerate: slope.abs() <= self.slope_tol,
        });
    }

    /// Zero of a monotone sign-changing bracket and the slope there.
    fn newton_bisect(&self, q: &TrigPoly, (mut lo, flo): (f64, f64), (mut hi, fhi): (f64, f64)) -> (f64, f64) {
        let neg_lo = flo < 0.0;
        let mut x = lo + (hi - lo) * flo / (flo - fhi);
        for _ in 0..100 {
            let (f, df) = q.value_and_slope(x);
            if f == 0.0 {
                return (x, df);
            }
            if (f < 0.0) == neg_lo {
                lo = x;
            } else {
                hi = x;
            }
            let newton = x - f / df;
            let next = if df != 0.0 && newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            if (next - x).abs() <= 4.0 * f64::EPSILON * x.abs().max(1.0) || hi - lo < 1e-14 {
                return (next, df);
            }
            x = next;
        }
        let (_, df) = q.value_and_slope(x);
        (x, df)
    }
}

/// Collapses runs of roots closer than `CLUSTER` (cyclically) into one degenerate root.
fn merge_clusters(mut roots: Vec<Root>, period: f64) -> Vec<Root> {
    roots.sort_by(|a, b| a.theta.total_cmp(&b.theta));
    let mut out: Vec<Root> = Vec::with_capacity(roots.len());
    for r in roots {
        match out.last_mut() {
            Some(last) if r.theta - last.theta < CLUSTER => {
                last.degenerate = true;
                if r.slope.abs() < last.slope.abs() {
                    last.slope = r.slope;
                }
            }
            _ => out.push(r),
        }
    }
    if out.len() >= 2 {
        let (first, last) = (out[0], out[out.len() - 1]);
        if first.theta + period - last.theta < CLUSTER {
            out.pop();
            out[0].degenerate = true;
            out[0].slope = if last.slope.abs() < first.slope.abs() { last.slope } else { first.slope };
        }
    }
    out
}

fn sign(v: f64) -> i32 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}
