use convex_normals_web::{field, hexagon_ratio, normals_at, polygon_average};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn square_average_and_wedges() {
    let v = parse(polygon_average(&[0.0, 0.0, 2.0, 0.0, 2.0, 2.0, 0.0, 2.0]).unwrap());
    assert!((v["mean"].as_f64().unwrap() - 8.0).abs() < 1e-12);
    assert_eq!(v["wedges"].as_array().unwrap().len(), 8);
    assert_eq!(v["centrally_symmetric"], true);
    assert!(v["euler_residual"].as_f64().unwrap().abs() < 1e-12);
    // interior points are dropped by the hull
    let v = parse(polygon_average(&[0.0, 0.0, 2.0, 0.0, 1.0, 0.5, 2.0, 2.0, 0.0, 2.0]).unwrap());
    assert_eq!(v["vertices"].as_array().unwrap().len(), 4);
    assert!(polygon_average(&[0.0, 0.0, 1.0]).is_err());
    assert!(polygon_average(&[0.0, 0.0, 1.0, 1.0]).is_err());
}

#[test]
fn disk_field_and_normals() {
    let disk = r#"{"type":"disk","radius":1}"#;
    let v = parse(field(disk, 9, 9, "normals").unwrap());
    let cells: Vec<i64> = v["cells"].as_array().unwrap().iter().map(|c| c.as_i64().unwrap()).collect();
    assert_eq!(cells.len(), 81);
    // centre cell is the degenerate centre of the disk
    assert_eq!(cells[40], -2);
    assert!(cells.iter().all(|&c| c == 2 || c == -1 || c == -2));
    let v = parse(normals_at(disk, 0.3, 0.1).unwrap());
    assert_eq!(v["count"], 2);
    assert!(normals_at(disk, 3.0, 0.0).is_err());
    assert!(field(disk, 9, 9, "widths").is_err());
}

#[test]
fn hexagon_ratio_of_disk_and_square() {
    let v = parse(hexagon_ratio(r#"{"type":"disk","radius":1}"#).unwrap());
    let expected = 3.0 * 3f64.sqrt() / (2.0 * std::f64::consts::PI);
    assert!((v["tau"].as_f64().unwrap() - expected).abs() < 1e-9);
    let v = parse(hexagon_ratio(r#"{"type":"polygon","vertices":[[-1,-1],[1,-1],[1,1],[-1,1]]}"#).unwrap());
    assert!((v["tau"].as_f64().unwrap() - 0.75).abs() < 1e-9);
    assert!(hexagon_ratio(r#"{"type":"polygon","vertices":[[0,0],[1,0],[0,1]]}"#).is_err());
}
