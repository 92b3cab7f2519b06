//! The bound battery behind `validate`: shipped bodies grouped by the upper
//! bound on `n(K)` their class is subject to.

use convex_normals::averaging::{estimate_interior_average, Body, Counter, EstimateReport};
use convex_normals::bodies2d::Body2;
use convex_normals::bodyspec::BodySpec;
use convex_normals::evolute::contains_evolute;
use convex_normals::Result;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BodyClass {
    Planar,
    CentrallySymmetric,
    EvoluteInside,
    ConstantWidth,
    Symmetric3,
}

impl BodyClass {
    pub fn bound(self) -> f64 {
        match self {
            BodyClass::Planar => 12.0,
            BodyClass::CentrallySymmetric => 8.0,
            BodyClass::EvoluteInside => 6.0,
            BodyClass::ConstantWidth => 2.0 * PI / (PI - 3f64.sqrt()),
            BodyClass::Symmetric3 => 26.0,
        }
    }
}

pub const STANDARD: &[(&str, &str, BodyClass)] = &[
    ("triangle", include_str!("../bodies/triangle.json"), BodyClass::Planar),
    ("pentagon", include_str!("../bodies/pentagon.json"), BodyClass::Planar),
    ("square", include_str!("../bodies/square.json"), BodyClass::CentrallySymmetric),
    ("regular_hexagon", include_str!("../bodies/regular_hexagon.json"), BodyClass::CentrallySymmetric),
    ("sheared_hexagon", include_str!("../bodies/sheared_hexagon.json"), BodyClass::CentrallySymmetric),
    ("ellipse", include_str!("../bodies/ellipse.json"), BodyClass::CentrallySymmetric),
    ("disk", include_str!("../bodies/disk.json"), BodyClass::EvoluteInside),
    ("trefoil", include_str!("../bodies/trefoil.json"), BodyClass::EvoluteInside),
    ("rounded_square", include_str!("../bodies/rounded_square.json"), BodyClass::EvoluteInside),
    ("reuleaux_triangle", include_str!("../bodies/reuleaux_triangle.json"), BodyClass::ConstantWidth),
    ("reuleaux_pentagon", include_str!("../bodies/reuleaux_pentagon.json"), BodyClass::ConstantWidth),
    ("smooth_constant_width", include_str!("../bodies/smooth_constant_width.json"), BodyClass::ConstantWidth),
    ("cube", include_str!("../bodies/cube.json"), BodyClass::Symmetric3),
    ("hexagonal_prism", include_str!("../bodies/hexagonal_prism.json"), BodyClass::Symmetric3),
    ("truncated_octahedron", include_str!("../bodies/truncated_octahedron.json"), BodyClass::Symmetric3),
    ("rhombic_dodecahedron", include_str!("../bodies/rhombic_dodecahedron.json"), BodyClass::Symmetric3),
    ("elongated_dodecahedron", include_str!("../bodies/elongated_dodecahedron.json"), BodyClass::Symmetric3),
    ("concyclic_prism", include_str!("../bodies/concyclic_prism.json"), BodyClass::Symmetric3),
];

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub body: String,
    pub class: BodyClass,
    pub bound: f64,
    pub estimate: EstimateReport,
    /// The body really belongs to its class (where that can be checked).
    pub class_verified: bool,
    /// Every planar body is also held to the general planar bound.
    pub within_planar_bound: bool,
    /// The estimate is compatible with the bound: the lower end of its
    /// interval does not exceed it (exact values must not exceed it at all).
    pub ok: bool,
}

pub fn run(samples: usize, seed: u64) -> Result<Vec<Check>> {
    STANDARD
        .iter()
        .map(|&(name, text, class)| {
            let spec = BodySpec::from_json(text)?;
            let body = spec.build()?;
            let estimate = estimate_interior_average(&body, &Counter::Normals, samples, seed)?;
            let class_verified = verify_class(&body, class);
            let value = |bound: f64| match estimate.exact {
                Some(x) => x <= bound + 1e-9,
                None => estimate.ci95.0 <= bound,
            };
            let within_planar_bound = !spec.is_planar() || value(BodyClass::Planar.bound());
            Ok(Check {
                body: name.into(),
                class,
                bound: class.bound(),
                estimate,
                class_verified,
                within_planar_bound,
                ok: class_verified && within_planar_bound && value(class.bound()),
            })
        })
        .collect()
}

fn verify_class(body: &Body, class: BodyClass) -> bool {
    match (class, body) {
        (BodyClass::Planar, Body::Planar(_)) => true,
        (BodyClass::CentrallySymmetric, Body::Planar(Body2::Polygon(p))) => p.is_centrally_symmetric(1e-9),
        (BodyClass::CentrallySymmetric, Body::Planar(Body2::Smooth(s))) => {
            let h = s.support_poly();
            (1..=h.degree()).step_by(2).all(|k| negligible(h.coeff(k), h.a0()))
        }
        (BodyClass::EvoluteInside, Body::Planar(Body2::Smooth(s))) => contains_evolute(s).contained,
        (BodyClass::ConstantWidth, Body::Planar(b)) => {
            let width = |t: f64| b.support(t) + b.support(t + PI);
            let w0 = width(0.0);
            (1..720).all(|j| (width(PI * j as f64 / 720.0) - w0).abs() <= 1e-9 * w0)
        }
        (BodyClass::Symmetric3, Body::Polytope(p)) => p.is_centrally_symmetric(1e-9),
        _ => false,
    }
}

fn negligible((c, s): (f64, f64), scale: f64) -> bool {
    c.abs().max(s.abs()) <= 1e-12 * scale.abs()
}
