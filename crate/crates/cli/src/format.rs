//! Output encodings. Every float is written in scientific notation with 12
//! significant digits so identical runs give byte-identical files.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub fn num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.11e}")
    }
}

/// Compact JSON with sorted keys; non-integer numbers go through `num`,
/// non-finite ones become `null`.
pub fn json<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("report types serialize");
    let mut out = String::new();
    write_value(&value, &mut out);
    out
}

fn write_value(v: &Value, out: &mut String) {
    match v {
        Value::Number(n) => match (n.as_u64(), n.as_i64(), n.as_f64()) {
            (Some(u), _, _) => out.push_str(&u.to_string()),
            (_, Some(i), _) => out.push_str(&i.to_string()),
            (_, _, Some(f)) if f.is_finite() => out.push_str(&num(f)),
            _ => out.push_str("null"),
        },
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_value(item, out);
            }
            out.push(']');
        }
        Value::Object(map) => {
            out.push('{');
            for (i, (k, item)) in map.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&Value::String(k.clone()).to_string());
                out.push(':');
                write_value(item, out);
            }
            out.push('}');
        }
        other => out.push_str(&other.to_string()),
    }
}

/// Header line plus one line per row; cells are already formatted.
pub fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Binary greyscale image of a count field: black outside, counts spread
/// over mid greys, white at degenerate cells.
pub fn pgm(nx: usize, ny: usize, cells: &[i32]) -> Vec<u8> {
    let top = cells.iter().copied().max().unwrap_or(0).max(1) as f64;
    let mut out = format!("P5\n{nx} {ny}\n255\n").into_bytes();
    out.extend(cells.iter().map(|&c| match c {
        c if c >= 0 => (48.0 + 192.0 * c as f64 / top).round() as u8,
        -2 => 255,
        _ => 0,
    }));
    out
}

pub fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_notation() {
        assert_eq!(num(8.0), "8.00000000000e0");
        assert_eq!(num(-0.00123456789012345), "-1.23456789012e-3");
        assert_eq!(json(&serde_json::json!({"b": 2.5, "a": [1, -3, f64::NAN]})), r#"{"a":[1,-3,null],"b":2.50000000000e0}"#);
        let parsed: Value = serde_json::from_str(&json(&serde_json::json!({"x": 1e-300}))).unwrap();
        assert_eq!(parsed["x"].as_f64(), Some(1e-300));
    }

    #[test]
    fn pgm_layout() {
        let img = pgm(2, 2, &[-1, 0, 4, -2]);
        assert!(img.starts_with(b"P5\n2 2\n255\n"));
        assert_eq!(&img[img.len() - 4..], &[0, 48, 240, 255]);
    }
}
