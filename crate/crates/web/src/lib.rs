//! Browser bindings for the demo page in `www/`: count fields with the normals
//! through a clicked point, exact polygon averages, and the hexagon ratio of a
//! norm ball. Every export takes and returns JSON strings.

use convex_normals::averaging::{field_map, Counter};
use convex_normals::bodyspec::BodySpec;
use convex_normals::minkowski::{hexagon_ratio_tau, normed_width_bound};
use convex_normals::normals::normal_feet2;
use convex_normals::wedges::{all_wedges, euler_residual, exact_average_normals, Face};
use convex_normals::{Point2, Polygon2};
use serde_json::json;
use wasm_bindgen::prelude::*;

type Outcome = Result<String, String>;

fn counter(name: &str) -> Result<Counter, String> {
    match name {
        "normals" => Ok(Counter::Normals),
        "diameters" => Ok(Counter::Diameters),
        other => Err(format!("unknown counter {other:?}")),
    }
}

/// `{nx, ny, lower, upper, cells}`; cells are row-major from the top, −1
/// outside and −2 at degenerate points.
pub fn field(spec: &str, nx: usize, ny: usize, counter_name: &str) -> Outcome {
    let body = BodySpec::from_json(spec).and_then(|s| s.build_planar()).map_err(|e| e.to_string())?;
    let map = field_map(&body, nx, ny, &counter(counter_name)?).map_err(|e| e.to_string())?;
    Ok(json!({
        "nx": map.nx,
        "ny": map.ny,
        "lower": [map.lower.x, map.lower.y],
        "upper": [map.upper.x, map.upper.y],
        "cells": map.cells,
    })
    .to_string())
}

/// Feet of the normals through `(x, y)` with their equilibrium type.
pub fn normals_at(spec: &str, x: f64, y: f64) -> Outcome {
    let body = BodySpec::from_json(spec).and_then(|s| s.build_planar()).map_err(|e| e.to_string())?;
    let feet = normal_feet2(&body, Point2::new(x, y)).map_err(|e| e.to_string())?;
    let list: Vec<_> = feet.iter().map(|f| json!({ "x": f.foot.x, "y": f.foot.y, "index": f.index })).collect();
    Ok(json!({ "count": feet.len(), "feet": list }).to_string())
}

/// Exact `n(P)` of the hull of `[x0, y0, x1, y1, ...]` and its wedges.
pub fn polygon_average(coords: &[f64]) -> Outcome {
    if coords.len() % 2 != 0 {
        return Err("coordinates must come in pairs".into());
    }
    let pts: Vec<Point2> = coords.chunks(2).map(|c| Point2::new(c[0], c[1])).collect();
    let poly = Polygon2::from_points(&pts).map_err(|e| e.to_string())?;
    let avg = exact_average_normals(&poly);
    let wedges: Vec<_> = all_wedges(&poly)
        .into_iter()
        .map(|w| {
            let (kind, index) = match w.face {
                Face::Edge(i) => ("edge", i),
                Face::Vertex(i) => ("vertex", i),
            };
            let ring: Vec<[f64; 2]> = w.region.iter().map(|p| [p.x, p.y]).collect();
            json!({ "kind": kind, "index": index, "area": w.area, "region": ring })
        })
        .collect();
    let vertices: Vec<[f64; 2]> = poly.vertices().iter().map(|p| [p.x, p.y]).collect();
    Ok(json!({
        "mean": avg.mean,
        "integral": avg.integral,
        "area": poly.area(),
        "euler_residual": euler_residual(&poly),
        "centrally_symmetric": poly.is_centrally_symmetric(1e-9),
        "vertices": vertices,
        "wedges": wedges,
    })
    .to_string())
}

/// `τ(M)` and the width bound `6 / (3 − 2τ)` for a symmetric norm ball.
pub fn hexagon_ratio(spec: &str) -> Outcome {
    let ball = BodySpec::from_json(spec).and_then(|s| s.build_norm()).map_err(|e| e.to_string())?;
    Ok(json!({ "tau": hexagon_ratio_tau(&ball), "width_bound": normed_width_bound(&ball) }).to_string())
}

fn js(r: Outcome) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = fieldMap)]
pub fn field_map_js(spec: &str, nx: usize, ny: usize, counter_name: &str) -> Result<String, JsValue> {
    js(field(spec, nx, ny, counter_name))
}

#[wasm_bindgen(js_name = normalsAt)]
pub fn normals_at_js(spec: &str, x: f64, y: f64) -> Result<String, JsValue> {
    js(normals_at(spec, x, y))
}

#[wasm_bindgen(js_name = polygonAverage)]
pub fn polygon_average_js(coords: &[f64]) -> Result<String, JsValue> {
    js(polygon_average(coords))
}

#[wasm_bindgen(js_name = hexagonRatio)]
pub fn hexagon_ratio_js(spec: &str) -> Result<String, JsValue> {
    js(hexagon_ratio(spec))
}
