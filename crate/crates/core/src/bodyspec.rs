//! JSON body specifications.
//!
//! ```json
//! {"type": "polygon", "vertices": [[0, 0], [1, 0], [0, 1]]}
//! {"type": "support2d", "a0": 1, "cos": [0, 0, 0.05], "sin": []}
//! {"type": "reuleaux", "sides": 3, "width": 1}
//! {"type": "disk", "radius": 1}
//! {"type": "ellipse", "a": 2, "b": 1, "degree": 24}
//! {"type": "polytope3", "vertices": [[x, y, z], ...], "facets": [[0, 1, 2], ...]}
//! {"type": "standard3", "name": "cube"}
//! {"type": "prism", "base": [[x, y], ...], "height": 1}
//! ```
//!
//! `cos[k-1]` and `sin[k-1]` hold the coefficients of `cos kθ` and `sin kθ`.

use crate::averaging::Body;
use crate::bodies2d::{ArcBody2, Body2, Point2, Polygon2, SmoothBody2};
use crate::bodies3d::{prism_over, standard_polytope, Point3, Polytope3, StandardSolid};
use crate::error::{GeometryError, Result};
use crate::minkowski::NormBall2;
use serde::{Deserialize, Serialize};

fn default_degree() -> usize {
    24
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum BodySpec {
    Polygon {
        vertices: Vec<[f64; 2]>,
    },
    Support2d {
        a0: f64,
        #[serde(default)]
        cos: Vec<f64>,
        #[serde(default)]
        sin: Vec<f64>,
    },
    Reuleaux {
        sides: usize,
        width: f64,
    },
    Disk {
        radius: f64,
    },
    Ellipse {
        a: f64,
        b: f64,
        #[serde(default = "default_degree")]
        degree: usize,
    },
    Polytope3 {
        vertices: Vec<[f64; 3]>,
        facets: Vec<Vec<usize>>,
    },
    Standard3 {
        name: String,
    },
    Prism {
        base: Vec<[f64; 2]>,
        height: f64,
    },
}

impl BodySpec {
    /// Parses a spec; errors name the field and its line.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: serde_json::Value = serde_json::from_str(text).map_err(|e| GeometryError::Spec(e.to_string()))?;
        let serde_json::Value::Object(mut fields) = raw else {
            return Err(GeometryError::Spec("a body spec must be a JSON object".into()));
        };
        let kind = match fields.remove("type") {
            Some(serde_json::Value::String(kind)) => kind,
            _ => return Err(GeometryError::Spec(format!("missing string field `type` at line {}", line_of(text, "type")))),
        };
        let tagged = serde_json::Value::Object([(kind, serde_json::Value::Object(fields))].into_iter().collect());
        serde_path_to_error::deserialize(tagged).map_err(|e| {
            let field = e.path().iter().skip(1).find_map(|seg| match seg {
                serde_path_to_error::Segment::Map { key } => Some(key.clone()),
                _ => None,
            });
            match field {
                Some(f) => GeometryError::Spec(format!("field `{f}` at line {}: {}", line_of(text, &f), e.inner())),
                None => GeometryError::Spec(e.inner().to_string()),
            }
        })
    }

    /// Flat form with a `type` tag, as accepted by `from_json`.
    pub fn to_json(&self) -> String {
        let serde_json::Value::Object(outer) = serde_json::to_value(self).expect("body specs always serialize") else {
            unreachable!("struct variants serialize to objects")
        };
        let (kind, inner) = outer.into_iter().next().expect("one variant");
        let mut flat = serde_json::Map::new();
        flat.insert("type".into(), serde_json::Value::String(kind));
        if let serde_json::Value::Object(fields) = inner {
            flat.extend(fields);
        }
        serde_json::Value::Object(flat).to_string()
    }

    pub fn is_planar(&self) -> bool {
        !matches!(self, BodySpec::Polytope3 { .. } | BodySpec::Standard3 { .. } | BodySpec::Prism { .. })
    }

    pub fn build(&self) -> Result<Body> {
        Ok(match self {
            BodySpec::Polytope3 { vertices, facets } => {
                let pts = vertices.iter().map(|v| Point3::new(v[0], v[1], v[2])).collect();
                Body::Polytope(Polytope3::new(pts, facets.clone())?)
            }
            BodySpec::Standard3 { name } => Body::Polytope(standard_polytope(&StandardSolid::from_name(name)?)?),
            BodySpec::Prism { base, height } => Body::Polytope(prism_over(&Polygon2::from_points(&points2(base))?, *height)?),
            planar => Body::Planar(planar.build_planar()?),
        })
    }

    pub fn build_planar(&self) -> Result<Body2> {
        Ok(match self {
            BodySpec::Polygon { vertices } => Polygon2::from_points(&points2(vertices))?.into(),
            BodySpec::Support2d { a0, cos, sin } => SmoothBody2::from_coeffs(*a0, cos, sin)?.into(),
            BodySpec::Reuleaux { sides, width } => ArcBody2::reuleaux(*sides, *width)?.into(),
            BodySpec::Disk { radius } => {
                if !(*radius > 0.0) {
                    return Err(GeometryError::Spec(format!("disk radius must be positive, got {radius}")));
                }
                SmoothBody2::disk(*radius).into()
            }
            BodySpec::Ellipse { a, b, degree } => SmoothBody2::fit_ellipse(*a, *b, *degree)?.body.into(),
            _ => return Err(GeometryError::Unsupported("expected a planar body".into())),
        })
    }

    pub fn build_smooth(&self) -> Result<SmoothBody2> {
        match self.build_planar()? {
            Body2::Smooth(s) => Ok(s),
            _ => Err(GeometryError::Unsupported("expected a smooth body (support2d, disk or ellipse)".into())),
        }
    }

    /// Norm balls must be centred: polygons symmetric about the origin or
    /// support functions without odd harmonics.
    pub fn build_norm(&self) -> Result<NormBall2> {
        match self.build_planar()? {
            Body2::Smooth(s) => NormBall2::smooth(s),
            Body2::Polygon(p) => NormBall2::polygon(p),
            Body2::Arc(_) => Err(GeometryError::Unsupported("arc bodies are not symmetric norm balls".into())),
        }
    }
}

/// 1-based line of the first `"key"` in `text`, or 1.
fn line_of(text: &str, key: &str) -> usize {
    let needle = format!("\"{key}\"");
    text.find(&needle).map_or(1, |i| text[..i].matches('\n').count() + 1)
}

fn points2(v: &[[f64; 2]]) -> Vec<Point2> {
    v.iter().map(|p| Point2::new(p[0], p[1])).collect()
}
