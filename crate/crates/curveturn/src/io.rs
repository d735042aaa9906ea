//! File formats: the curve CSV exchange format and the JSON curve spec.
//!
//! Curve CSV: a header line `s,x,y`, one row per vertex with the cumulative
//! arc length and the coordinates, and a trailer comment `# closed=true` or
//! `# closed=false`. Both parsers accept untrusted input: every malformed
//! case is a clean error, never a panic.

use std::path::Path;

use crate::curve::SampledCurve;
use crate::error::{Error, Result};
use crate::generate::CurveSpec;
use crate::geom::Point2;

/// Serializes a curve to the CSV exchange format.
pub fn write_curve_csv(curve: &SampledCurve) -> String {
    let mut out = String::from("s,x,y\n");
    for (i, v) in curve.vertices().iter().enumerate() {
        out.push_str(&format!("{},{},{}\n", curve.cum_length()[i], v.x, v.y));
    }
    out.push_str(&format!("# closed={}\n", curve.is_closed()));
    out
}

/// Parses the CSV exchange format back into a curve.
///
/// The arc-length column is validated against the lengths recomputed from
/// the coordinates; the trailer is mandatory.
pub fn parse_curve_csv(text: &str) -> Result<SampledCurve> {
    let mut closed: Option<bool> = None;
    let mut rows: Vec<(f64, Point2)> = Vec::new();
    let mut saw_header = false;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r').trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(value) = comment.strip_prefix("closed=") {
                if closed.is_some() {
                    return Err(Error::CurveCsv("duplicate closed trailer".to_string()));
                }
                closed = Some(match value.trim() {
                    "true" => true,
                    "false" => false,
                    other => {
                        return Err(Error::CurveCsv(format!(
                            "line {}: closed must be true or false, got '{other}'",
                            lineno + 1
                        )))
                    }
                });
            }
            continue;
        }
        if closed.is_some() {
            return Err(Error::CurveCsv(format!(
                "line {}: data after the closed trailer",
                lineno + 1
            )));
        }
        if !saw_header {
            if line != "s,x,y" {
                return Err(Error::CurveCsv(format!(
                    "line {}: expected header 's,x,y', got '{line}'",
                    lineno + 1
                )));
            }
            saw_header = true;
            continue;
        }
        let mut fields = line.split(',');
        let mut next_field = |name: &str| -> Result<f64> {
            let field = fields
                .next()
                .ok_or_else(|| Error::CurveCsv(format!("line {}: missing {name}", lineno + 1)))?;
            field.trim().parse::<f64>().map_err(|_| {
                Error::CurveCsv(format!("line {}: bad {name} '{}'", lineno + 1, field.trim()))
            })
        };
        let s = next_field("s")?;
        let x = next_field("x")?;
        let y = next_field("y")?;
        if fields.next().is_some() {
            return Err(Error::CurveCsv(format!(
                "line {}: too many fields",
                lineno + 1
            )));
        }
        if !s.is_finite() {
            return Err(Error::CurveCsv(format!(
                "line {}: non-finite arc length",
                lineno + 1
            )));
        }
        rows.push((s, Point2::try_new(x, y)?));
    }
    if !saw_header {
        return Err(Error::CurveCsv("missing header 's,x,y'".to_string()));
    }
    let closed =
        closed.ok_or_else(|| Error::CurveCsv("missing '# closed=' trailer".to_string()))?;
    let vertices: Vec<Point2> = rows.iter().map(|&(_, p)| p).collect();
    let curve = if closed {
        SampledCurve::new_closed(vertices)?
    } else {
        SampledCurve::new_open(vertices)?
    };
    // The stored arc-length column must agree with the geometry.
    let tol = (1e-6 * curve.total_length()).max(1e-9);
    for (i, &(s, _)) in rows.iter().enumerate() {
        if (s - curve.cum_length()[i]).abs() > tol {
            return Err(Error::CurveCsv(format!(
                "arc length column mismatch at row {}: file {s}, recomputed {}",
                i + 1,
                curve.cum_length()[i]
            )));
        }
    }
    Ok(curve)
}

pub fn read_curve_csv(path: &Path) -> Result<SampledCurve> {
    parse_curve_csv(&std::fs::read_to_string(path)?)
}

pub fn write_curve_csv_file(curve: &SampledCurve, path: &Path) -> Result<()> {
    Ok(std::fs::write(path, write_curve_csv(curve))?)
}

/// Parses the JSON curve-spec document
/// `{"family": ..., "params": {...}, "samples": n}`.
pub fn parse_curve_spec(text: &str) -> Result<CurveSpec> {
    let spec: CurveSpec =
        serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))?;
    Ok(spec)
}

pub fn read_curve_spec(path: &Path) -> Result<CurveSpec> {
    parse_curve_spec(&std::fs::read_to_string(path)?)
}

/// Turn profile as CSV rows `s,kappa_cum`.
pub fn profile_csv(profile: &[(f64, f64)]) -> String {
    let mut out = String::from("s,kappa_cum\n");
    for (s, k) in profile {
        out.push_str(&format!("{s},{k}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, Family};

    fn circle(n: usize) -> SampledCurve {
        generate(&CurveSpec {
            family: Family::Circle { r: 1.0 },
            samples: n,
        })
        .unwrap()
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let c = circle(257);
        let text = write_curve_csv(&c);
        assert!(text.starts_with("s,x,y\n"));
        assert!(text.ends_with("# closed=true\n"));
        let back = parse_curve_csv(&text).unwrap();
        assert_eq!(back.vertices(), c.vertices());
        assert_eq!(back.cum_length(), c.cum_length());
        assert!(back.is_closed());
    }

    #[test]
    fn csv_open_round_trip() {
        let line = SampledCurve::new_open(vec![
            Point2::new(0.0, 0.0),
            Point2::new(0.5, 0.25),
            Point2::new(1.5, -0.25),
        ])
        .unwrap();
        let back = parse_curve_csv(&write_curve_csv(&line)).unwrap();
        assert!(!back.is_closed());
        assert_eq!(back.vertices(), line.vertices());
    }

    #[test]
    fn csv_rejects_malformed_input() {
        for bad in [
            "",
            "x,y\n0,1\n# closed=true\n",
            "s,x,y\n0,1,0\n",
            "s,x,y\n0,1,0\n1,0,1\n2,-1,0\n# closed=maybe\n",
            "s,x,y\n0,1,0\nnope,0,1\n# closed=false\n",
            "s,x,y\n0,1,0,9\n# closed=false\n",
            "s,x,y\n0,inf,0\n1,0,1\n# closed=false\n",
            "s,x,y\n0,1,0\n5,0,1\n6,-1,0\n# closed=true\n",
            "s,x,y\n0,1,0\n1,0,1\n# closed=true\n0,0,0\n",
        ] {
            assert!(parse_curve_csv(bad).is_err(), "accepted: {bad:?}");
        }
    }

    #[test]
    fn csv_rejects_self_intersecting_closed_rows() {
        let bowtie = "s,x,y\n0,0,0\n1.4142135623730951,1,1\n2.4142135623730951,1,0\n3.82842712474619,0,1\n# closed=true\n";
        assert_eq!(parse_curve_csv(bowtie), Err(Error::NotSimple));
    }

    #[test]
    fn spec_json_parses() {
        let spec =
            parse_curve_spec(r#"{"family":"circle","params":{"r":1.5},"samples":128}"#).unwrap();
        assert_eq!(spec.samples, 128);
        let c = generate(&spec).unwrap();
        assert_eq!(c.vertex_count(), 128);
        assert!(parse_curve_spec("{\"family\":\"nope\"}").is_err());
        assert!(parse_curve_spec("not json").is_err());
    }

    #[test]
    fn profile_csv_shape() {
        let text = profile_csv(&[(0.0, 0.0), (0.5, 0.1)]);
        assert_eq!(text, "s,kappa_cum\n0,0\n0.5,0.1\n");
    }
}
