//! Monte Carlo averages of pointwise counters.
//!
//! Sample `i` is a pure function of `(seed, i)`: its point comes from its own
//! counter-based stream, and a degenerate point is replaced by the next draw
//! from the same stream. Counts are summed as integers, so the report does not
//! depend on how samples are split across threads.

use crate::bodies2d::{Body2, Point2};
use crate::bodies3d::Polytope3;
use crate::diameters::sample_diameters;
use crate::error::{GeometryError, Result};
use crate::minkowski::{MinkowskiNormals, NormBall2};
use crate::normals::{sample_normals2, sample_normals3};
use crate::wedges::exact_average_normals;
use serde::Serialize;

/// Outcome of one pointwise count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sample {
    Count(u32),
    /// The point sits on an evolute or wedge boundary; the estimators resample.
    Degenerate,
}

/// Largest tolerated share of resampled points.
pub const MAX_RESAMPLED_FRACTION: f64 = 0.01;
/// Default inward offset for boundary averages, relative to `area/perimeter`.
pub const BOUNDARY_OFFSET: f64 = 1e-7;
pub const MIN_SAMPLES: usize = 100;

#[derive(Debug, Clone)]
pub enum Body {
    Planar(Body2),
    Polytope(Polytope3),
}

impl From<Body2> for Body {
    fn from(b: Body2) -> Self {
        Body::Planar(b)
    }
}

impl From<Polytope3> for Body {
    fn from(p: Polytope3) -> Self {
        Body::Polytope(p)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Counter {
    Normals,
    Diameters,
    Minkowski(NormBall2),
}

impl Counter {
    pub fn name(&self) -> &'static str {
        match self {
            Counter::Normals => "normals",
            Counter::Diameters => "diameters",
            Counter::Minkowski(_) => "minkowski",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EstimateReport {
    pub mean: f64,
    pub std_error: f64,
    pub ci95: (f64, f64),
    pub samples_used: usize,
    pub degenerate_resampled: usize,
    /// Closed-form value when one exists (wedge sums for polygon normals).
    pub exact: Option<f64>,
}

impl EstimateReport {
    fn from_sums(sum: u64, sum_sq: u64, n: usize, resampled: u64, exact: Option<f64>) -> Self {
        let nf = n as f64;
        let mean = sum as f64 / nf;
        // exact integer centring keeps zero-variance runs at exactly zero
        let centred = sum_sq as f64 - (sum as f64) * (sum as f64) / nf;
        let var = if n > 1 { (centred / (nf - 1.0)).max(0.0) } else { 0.0 };
        let std_error = (var / nf).sqrt();
        EstimateReport {
            mean,
            std_error,
            ci95: (mean - 1.96 * std_error, mean + 1.96 * std_error),
            samples_used: n,
            degenerate_resampled: resampled as usize,
            exact,
        }
    }

    pub fn ci_width(&self) -> f64 {
        self.ci95.1 - self.ci95.0
    }
}

/// Pointwise counter bound to a body, with any per-body setup done once.
enum Prepared<'a> {
    Planar(&'a Body2, PlanarCounter),
    Polytope(&'a Polytope3),
}

enum PlanarCounter {
    Normals,
    Diameters,
    Minkowski(MinkowskiNormals),
}

impl<'a> Prepared<'a> {
    fn new(body: &'a Body, counter: &Counter) -> Result<Self> {
        Ok(match (body, counter) {
            (Body::Polytope(p), Counter::Normals) => Prepared::Polytope(p),
            (Body::Polytope(_), c) => {
                return Err(GeometryError::Unsupported(format!("{} counter on a polytope", c.name())));
            }
            (Body::Planar(b), Counter::Normals) => Prepared::Planar(b, PlanarCounter::Normals),
            (Body::Planar(b), Counter::Diameters) => Prepared::Planar(b, PlanarCounter::Diameters),
            (Body::Planar(b), Counter::Minkowski(m)) => {
                let Body2::Smooth(s) = b else {
                    return Err(GeometryError::Unsupported("minkowski counter needs a smooth body".into()));
                };
                Prepared::Planar(b, PlanarCounter::Minkowski(MinkowskiNormals::new(m, s)?))
            }
        })
    }

    fn count2(&self, p: Point2) -> Result<Sample> {
        match self {
            Prepared::Planar(b, PlanarCounter::Normals) => sample_normals2(b, p),
            Prepared::Planar(b, PlanarCounter::Diameters) => sample_diameters(b, p),
            Prepared::Planar(_, PlanarCounter::Minkowski(m)) => m.sample(p),
            Prepared::Polytope(_) => unreachable!("planar count on a polytope"),
        }
    }
}

/// Per-sample result: `(count, resampled)`.
fn draw(mut next: impl FnMut() -> Result<Sample>, cap: u64) -> Result<(u32, u64)> {
    let mut resampled = 0u64;
    loop {
        match next()? {
            Sample::Count(c) => return Ok((c, resampled)),
            Sample::Degenerate => {
                resampled += 1;
                if resampled > cap {
                    return Err(GeometryError::TooSingular {
                        resampled: resampled as usize,
                        samples: 1,
                    });
                }
            }
        }
    }
}

type Sums = (u64, u64, u64);

fn reduce(samples: usize, f: impl Fn(u64) -> Result<(u32, u64)> + Sync + Send) -> Result<Sums> {
    let map = |i: u64| f(i).map(|(c, r)| (c as u64, (c as u64) * (c as u64), r));
    let add = |a: Sums, b: Sums| (a.0 + b.0, a.1 + b.1, a.2 + b.2);
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..samples as u64).into_par_iter().map(map).try_reduce(|| (0, 0, 0), |a, b| Ok(add(a, b)))
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..samples as u64).map(map).try_fold((0, 0, 0), |a, b| Ok(add(a, b?)))
    }
}

fn finish(sums: Sums, samples: usize, exact: Option<f64>) -> Result<EstimateReport> {
    let (sum, sum_sq, resampled) = sums;
    if resampled as f64 >= MAX_RESAMPLED_FRACTION * samples as f64 && resampled > 0 {
        return Err(GeometryError::TooSingular {
            resampled: resampled as usize,
            samples,
        });
    }
    Ok(EstimateReport::from_sums(sum, sum_sq, samples, resampled, exact))
}

fn check_samples(samples: usize) -> Result<()> {
    if samples < MIN_SAMPLES {
        return Err(GeometryError::Domain(format!("need at least {MIN_SAMPLES} samples, got {samples}")));
    }
    Ok(())
}

/// Cap on resamples of a single sample; reaching it means the body is mostly
/// degenerate for this counter.
fn per_sample_cap(samples: usize) -> u64 {
    ((MAX_RESAMPLED_FRACTION * samples as f64) as u64).max(8)
}

/// Average of `counter` over uniform interior points.
pub fn estimate_interior_average(body: &Body, counter: &Counter, samples: usize, seed: u64) -> Result<EstimateReport> {
    check_samples(samples)?;
    let prepared = Prepared::new(body, counter)?;
    let cap = per_sample_cap(samples);
    let sums = match &prepared {
        Prepared::Polytope(poly) => reduce(samples, |i| {
            let mut stream = poly.interior_stream(seed, i);
            draw(|| sample_normals3(poly, &stream()), cap)
        })?,
        Prepared::Planar(b, _) => reduce(samples, |i| {
            let mut stream = b.interior_stream(seed, i);
            draw(|| prepared.count2(stream()), cap)
        })?,
    };
    let exact = match (body, counter) {
        (Body::Planar(Body2::Polygon(p)), Counter::Normals) => Some(exact_average_normals(p).mean),
        _ => None,
    };
    finish(sums, samples, exact)
}

/// Arc-length average of `counter` at boundary points pushed inward by
/// [`BOUNDARY_OFFSET`]`·area/perimeter`.
pub fn estimate_boundary_average(body: &Body, counter: &Counter, samples: usize, seed: u64) -> Result<EstimateReport> {
    estimate_boundary_average_with_offset(body, counter, samples, seed, BOUNDARY_OFFSET)
}

pub fn estimate_boundary_average_with_offset(
    body: &Body,
    counter: &Counter,
    samples: usize,
    seed: u64,
    relative_offset: f64,
) -> Result<EstimateReport> {
    check_samples(samples)?;
    let Body::Planar(planar) = body else {
        return Err(GeometryError::Unsupported("boundary averages of polytopes".into()));
    };
    let prepared = Prepared::new(body, counter)?;
    let eps = relative_offset * planar.area() / planar.perimeter();
    let cap = per_sample_cap(samples);
    let sums = reduce(samples, |i| {
        let mut stream = planar.boundary_stream(seed, i);
        draw(
            || {
                let (q, theta) = stream();
                prepared.count2(q - Point2::polar(eps, theta))
            },
            cap,
        )
    })?;
    finish(sums, samples, None)
}

/// Counts at the centres of an `nx × ny` grid over the bounding box.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FieldMap {
    pub nx: usize,
    pub ny: usize,
    pub lower: Point2,
    pub upper: Point2,
    /// Row-major, first row at the top (largest `y`). `−1` outside the body,
    /// `−2` at degenerate points.
    pub cells: Vec<i32>,
}

impl FieldMap {
    pub const OUTSIDE: i32 = -1;
    pub const DEGENERATE: i32 = -2;

    pub fn get(&self, col: usize, row: usize) -> i32 {
        self.cells[row * self.nx + col]
    }

    pub fn cell_center(&self, col: usize, row: usize) -> Point2 {
        let dx = (self.upper.x - self.lower.x) / self.nx as f64;
        let dy = (self.upper.y - self.lower.y) / self.ny as f64;
        Point2::new(self.lower.x + (col as f64 + 0.5) * dx, self.upper.y - (row as f64 + 0.5) * dy)
    }
}

pub fn field_map(body: &Body2, nx: usize, ny: usize, counter: &Counter) -> Result<FieldMap> {
    if nx < 2 || ny < 2 {
        return Err(GeometryError::Domain("field grid must be at least 2×2".into()));
    }
    let wrapped = Body::Planar(body.clone());
    let prepared = Prepared::new(&wrapped, counter)?;
    let (lower, upper) = body.bounding_box();
    let mut map = FieldMap {
        nx,
        ny,
        lower,
        upper,
        cells: Vec::new(),
    };
    let cell = |k: usize| -> i32 {
        let p = map.cell_center(k % nx, k / nx);
        match prepared.count2(p) {
            Ok(Sample::Count(c)) => c as i32,
            Ok(Sample::Degenerate) => FieldMap::DEGENERATE,
            Err(GeometryError::NotInterior) => FieldMap::OUTSIDE,
            // a cell inside a parallel-edge region has infinitely many diameters
            Err(_) => FieldMap::DEGENERATE,
        }
    };
    #[cfg(feature = "parallel")]
    let cells = {
        use rayon::prelude::*;
        (0..nx * ny).into_par_iter().map(cell).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let cells = (0..nx * ny).map(cell).collect();
    map.cells = cells;
    Ok(map)
}
