//! Deterministic report and map writers: JSON with 17 significant digits,
//! CSV cell tables and plain (P2) graymaps.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::error::Result;
use crate::osgood::{CellMap, Verdict};

/// Pretty JSON with every float written as `{:.16e}` (17 significant
/// digits); non-finite floats become `null`.
pub fn to_json_string(value: &impl Serialize) -> Result<String> {
    let v = serde_json::to_value(value)?;
    let mut out = String::new();
    write_value(&v, 0, &mut out);
    out.push('\n');
    Ok(out)
}

pub fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    std::fs::write(path, to_json_string(value)?)?;
    Ok(())
}

/// `{:.16e}`, or `nan`/`inf`/`-inf`.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn indent(level: usize, out: &mut String) {
    for _ in 0..level {
        out.push_str("  ");
    }
}

fn write_value(v: &Value, level: usize, out: &mut String) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                write!(out, "{i}").expect("string write");
            } else if let Some(u) = n.as_u64() {
                write!(out, "{u}").expect("string write");
            } else {
                let x = n.as_f64().expect("number");
                out.push_str(&format!("{x:.16e}"));
            }
        }
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                indent(level + 1, out);
                write_value(item, level + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            indent(level, out);
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push_str("{\n");
            for (i, (k, item)) in map.iter().enumerate() {
                indent(level + 1, out);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(item, level + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            indent(level, out);
            out.push('}');
        }
    }
}

/// One row per cell, row-major from the bottom-left cell.
pub fn map_csv(map: &CellMap) -> String {
    let mut out = String::from("ix,iy,center_re,center_im,tail_deviation,reproduction_residual,residual,verdict\n");
    for r in &map.reports {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.ix,
            r.iy,
            format_float(r.center.re),
            format_float(r.center.im),
            format_float(r.tail_deviation),
            format_float(r.reproduction_residual),
            format_float(r.residual),
            r.verdict.label(map.property)
        )
        .expect("string write");
    }
    out
}

pub const PGM_REGULAR: u8 = 255;
pub const PGM_EXCEPTIONAL: u8 = 0;
pub const PGM_UNDETERMINED: u8 = 128;
pub const PGM_OUTSIDE: u8 = 192;

fn shade(v: Verdict) -> u8 {
    match v {
        Verdict::Regular => PGM_REGULAR,
        Verdict::Exceptional => PGM_EXCEPTIONAL,
        Verdict::Undetermined => PGM_UNDETERMINED,
        Verdict::Outside => PGM_OUTSIDE,
    }
}

/// Plain graymap, one pixel per cell, top row = largest imaginary part.
pub fn map_pgm(map: &CellMap) -> String {
    let (nx, ny) = (map.cells.nx, map.cells.ny);
    let mut out = format!("P2\n{nx} {ny}\n255\n");
    for iy in (0..ny).rev() {
        let row: Vec<String> = (0..nx)
            .map(|ix| shade(map.reports[iy * nx + ix].verdict).to_string())
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Writes `map.csv` and `map.pgm` into `dir`.
pub fn write_map(dir: &Path, map: &CellMap) -> Result<()> {
    std::fs::write(dir.join("map.csv"), map_csv(map))?;
    std::fs::write(dir.join("map.pgm"), map_pgm(map))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::CellGrid;
    use crate::osgood::{classify_holomorphy, ClassifierParams};
    use crate::sequence::constant;
    use num_complex::Complex64;

    #[test]
    fn floats_have_seventeen_digits() {
        let s = to_json_string(&serde_json::json!({"a": 0.1, "b": [1, -2.5e-300], "c": "x\"y"})).unwrap();
        assert!(s.contains("\"a\": 1.0000000000000001e-1"));
        assert!(s.contains("-2.5000000000000000e-300"));
        assert!(s.contains("\"x\\\"y\""));
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["a"].as_f64(), Some(0.1));
        assert_eq!(back["b"][0].as_i64(), Some(1));
    }

    #[test]
    fn map_files_have_one_entry_per_cell() {
        let params = ClassifierParams::new(CellGrid::square(0.5, 3).unwrap(), vec![(1, 2)]);
        let map = classify_holomorphy(&constant(Complex64::new(1.0, 0.0), 2).unwrap(), &params).unwrap();
        let csv = map_csv(&map);
        assert_eq!(csv.lines().count(), 10);
        assert!(csv.lines().nth(1).unwrap().ends_with(",holomorphic"));
        let pgm = map_pgm(&map);
        assert!(pgm.starts_with("P2\n3 3\n255\n"));
        assert_eq!(pgm.split_whitespace().filter(|t| *t == "255").count(), 10);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn floats_round_trip(x in prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO) {
                let s = to_json_string(&vec![x]).unwrap();
                let back: Vec<f64> = serde_json::from_str(&s).unwrap();
                prop_assert_eq!(back[0], x);
            }
        }
    }
}
