//! Declarative curve specs and the generators for every family the analyses
//! and the verification harness run on.
//!
//! Generators emit arc-length-tagged polylines with vertices on the analytic
//! curve, approximately equally spaced in arc length. Families built from
//! circle arcs and straight segments (bone, rounded polygon) are sampled
//! through an exact piecewise path, so their vertices carry no quadrature
//! error.

use serde::{Deserialize, Serialize};

use crate::curve::SampledCurve;
use crate::error::{Error, Result};
use crate::geom::Point2;

/// Curve family with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params")]
pub enum Family {
    #[serde(rename = "circle")]
    Circle { r: f64 },
    #[serde(rename = "ellipse")]
    Ellipse { a: f64, b: f64 },
    #[serde(rename = "regular_ngon")]
    RegularNGon { sides: usize, circumradius: f64 },
    #[serde(rename = "rounded_polygon")]
    RoundedPolygon {
        sides: usize,
        circumradius: f64,
        corner_radius: f64,
    },
    #[serde(rename = "bone")]
    Bone {
        r: f64,
        delta: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        w: Option<f64>,
    },
    #[serde(rename = "polyline")]
    Polyline { points: Vec<[f64; 2]> },
}

/// A generator request: a family plus the number of samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSpec {
    #[serde(flatten)]
    pub family: Family,
    pub samples: usize,
}

/// One piece of an exactly parameterizable path.
#[derive(Debug, Clone, Copy)]
enum Piece {
    Segment { a: Point2, b: Point2 },
    /// Circle arc `center + radius (cos phi, sin phi)` for `phi` from
    /// `start_angle` sweeping by `sweep` (signed; negative is clockwise).
    Arc {
        center: Point2,
        radius: f64,
        start_angle: f64,
        sweep: f64,
    },
}

impl Piece {
    fn length(&self) -> f64 {
        match *self {
            Piece::Segment { a, b } => a.distance(b),
            Piece::Arc { radius, sweep, .. } => radius * sweep.abs(),
        }
    }

    fn eval(&self, s: f64) -> Point2 {
        match *self {
            Piece::Segment { a, b } => a.lerp(b, s / self.length()),
            Piece::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => {
                let phi = start_angle + sweep.signum() * s / radius;
                Point2::new(
                    center.x + radius * phi.cos(),
                    center.y + radius * phi.sin(),
                )
            }
        }
    }
}

/// Piecewise segments-and-arcs path, sampled at equal arc length.
pub(crate) struct PiecewisePath {
    pieces: Vec<Piece>,
    total: f64,
}

impl PiecewisePath {
    fn new() -> Self {
        PiecewisePath {
            pieces: Vec::new(),
            total: 0.0,
        }
    }

    fn push_segment(&mut self, a: Point2, b: Point2) {
        let len = a.distance(b);
        if len > 0.0 {
            self.pieces.push(Piece::Segment { a, b });
            self.total += len;
        }
    }

    fn push_arc(&mut self, center: Point2, radius: f64, start_angle: f64, sweep: f64) {
        if radius * sweep.abs() > 0.0 {
            self.pieces.push(Piece::Arc {
                center,
                radius,
                start_angle,
                sweep,
            });
            self.total += radius * sweep.abs();
        }
    }

    fn eval(&self, mut s: f64) -> Point2 {
        for piece in &self.pieces {
            let len = piece.length();
            if s <= len {
                return piece.eval(s);
            }
            s -= len;
        }
        let last = self.pieces.last().expect("empty path");
        last.eval(last.length())
    }

    pub(crate) fn sample_closed(&self, n: usize) -> Result<SampledCurve> {
        let step = self.total / n as f64;
        let pts = (0..n).map(|i| self.eval(i as f64 * step)).collect();
        SampledCurve::new_closed(pts)
    }
}

fn check(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidSpec(msg.to_string()))
    }
}

/// Generates the sampled curve described by `spec`.
pub fn generate(spec: &CurveSpec) -> Result<SampledCurve> {
    check(spec.samples >= 3, "samples must be at least 3")?;
    check(
        spec.samples <= 1_000_000,
        "samples above 1_000_000 unsupported",
    )?;
    let n = spec.samples;
    match &spec.family {
        Family::Circle { r } => {
            check(*r > 0.0 && r.is_finite(), "circle radius must be positive")?;
            let pts = (0..n)
                .map(|i| {
                    let t = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                    Point2::new(r * t.cos(), r * t.sin())
                })
                .collect();
            SampledCurve::new_closed(pts)
        }
        Family::Ellipse { a, b } => {
            check(
                *a > 0.0 && *b > 0.0 && a.is_finite() && b.is_finite(),
                "ellipse semi-axes must be positive",
            )?;
            ellipse(*a, *b, n)
        }
        Family::RegularNGon { sides, circumradius } => {
            check(*sides >= 3, "ngon needs at least 3 sides")?;
            check(*sides <= 1_000_000, "too many sides")?;
            check(
                *circumradius > 0.0 && circumradius.is_finite(),
                "circumradius must be positive",
            )?;
            regular_ngon(*sides, *circumradius, n)
        }
        Family::RoundedPolygon {
            sides,
            circumradius,
            corner_radius,
        } => {
            check(*sides >= 3, "rounded polygon needs at least 3 sides")?;
            check(*sides <= 1_000_000, "too many sides")?;
            check(
                *circumradius > 0.0
                    && circumradius.is_finite()
                    && *corner_radius > 0.0
                    && corner_radius.is_finite(),
                "radii must be positive",
            )?;
            rounded_polygon(*sides, *circumradius, *corner_radius)?.sample_closed(n)
        }
        Family::Bone { r, delta, w } => {
            check(
                *r > 0.0 && r.is_finite() && *delta > 0.0 && delta.is_finite(),
                "bone needs r > 0 and delta > 0",
            )?;
            let w = w.unwrap_or(4.0 * r);
            check(
                w >= 4.0 * r && w.is_finite(),
                "bone column separation w must be at least 4r",
            )?;
            bone_path(*r, *delta, w).sample_closed(n)
        }
        Family::Polyline { points } => {
            let pts: Vec<Point2> = points
                .iter()
                .map(|&[x, y]| Point2::try_new(x, y))
                .collect::<Result<_>>()?;
            let curve = SampledCurve::new_open(pts)?;
            if n > curve.vertex_count() {
                curve.resample(n)
            } else {
                Ok(curve)
            }
        }
    }
}

fn ellipse(a: f64, b: f64, n: usize) -> Result<SampledCurve> {
    let eval = |t: f64| Point2::new(a * t.cos(), b * t.sin());
    // Dense pre-sampling by parameter, then inversion to equal arc length.
    let dense = (8 * n).max(4096);
    let mut ts = Vec::with_capacity(dense + 1);
    let mut cum = Vec::with_capacity(dense + 1);
    let mut acc = 0.0;
    let mut prev = eval(0.0);
    ts.push(0.0);
    cum.push(0.0);
    for i in 1..=dense {
        let t = 2.0 * std::f64::consts::PI * i as f64 / dense as f64;
        let p = eval(t);
        acc += prev.distance(p);
        ts.push(t);
        cum.push(acc);
        prev = p;
    }
    let mut pts = Vec::with_capacity(n);
    let mut j = 0;
    for i in 0..n {
        let target = acc * i as f64 / n as f64;
        while j + 1 < cum.len() && cum[j + 1] < target {
            j += 1;
        }
        let span = cum[j + 1] - cum[j];
        let frac = if span > 0.0 { (target - cum[j]) / span } else { 0.0 };
        let t = ts[j] + frac * (ts[j + 1] - ts[j]);
        pts.push(eval(t));
    }
    SampledCurve::new_closed(pts)
}

fn regular_ngon(sides: usize, circumradius: f64, samples: usize) -> Result<SampledCurve> {
    let corner = |k: usize| {
        let t = 2.0 * std::f64::consts::PI * k as f64 / sides as f64;
        Point2::new(circumradius * t.cos(), circumradius * t.sin())
    };
    if samples <= sides {
        let pts = (0..sides).map(corner).collect();
        return SampledCurve::new_closed(pts);
    }
    // Corners stay vertices; the extra samples subdivide edges evenly.
    let extra = samples - sides;
    let per_edge = extra / sides;
    let remainder = extra % sides;
    let mut pts = Vec::with_capacity(samples);
    for k in 0..sides {
        let a = corner(k);
        let b = corner((k + 1) % sides);
        let m = per_edge + usize::from(k < remainder);
        pts.push(a);
        for j in 1..=m {
            pts.push(a.lerp(b, j as f64 / (m + 1) as f64));
        }
    }
    SampledCurve::new_closed(pts)
}

fn rounded_polygon(sides: usize, circumradius: f64, corner_radius: f64) -> Result<PiecewisePath> {
    let m = sides as f64;
    let half_interior = std::f64::consts::FRAC_PI_2 - std::f64::consts::PI / m;
    let tangent_offset = corner_radius / half_interior.tan();
    let edge = 2.0 * circumradius * (std::f64::consts::PI / m).sin();
    check(
        tangent_offset < edge / 2.0,
        "corner radius too large for the polygon edge",
    )?;
    let center_dist = corner_radius / half_interior.sin();
    let corner = |k: usize| {
        let t = 2.0 * std::f64::consts::PI * k as f64 / m;
        Point2::new(circumradius * t.cos(), circumradius * t.sin())
    };
    let exterior = 2.0 * std::f64::consts::PI / m;
    let mut path = PiecewisePath::new();
    for k in 0..sides {
        let prev = corner((k + sides - 1) % sides);
        let here = corner(k);
        let next = corner((k + 1) % sides);
        let u_in = prev.to(here).normalized()?;
        let u_out = here.to(next).normalized()?;
        // Arc at this corner, then the straight run to the next corner.
        let bisector = Point2::new(0.0, 0.0).to(here).normalized()?.scale(-1.0);
        let arc_center = here.translate(bisector.scale(center_dist));
        let p_in = here.translate(u_in.scale(-tangent_offset));
        let p_out = here.translate(u_out.scale(tangent_offset));
        let a0 = arc_center.to(p_in);
        let start_angle = a0.dy.atan2(a0.dx);
        path.push_arc(arc_center, corner_radius, start_angle, exterior);
        debug_assert!(arc_center.distance(p_out) - corner_radius < 1e-9);
        let q_next = next.translate(u_out.scale(-tangent_offset));
        path.push_segment(p_out, q_next);
    }
    Ok(path)
}

/// The dumbbell curve of half-circles and straight segments, tangent
/// continuous everywhere: two outer columns of two half-circles joined by
/// vertical walls, and inner arcs facing each other across a gap `delta`
/// centered at formed origin. Widening the column separation `w` beyond `4r`
/// splits each inner arc into two quarter-circles joined by a straight run
/// at the gap height, which keeps the curve C^1 and leaves the narrowest gap
/// straddling the origin.
fn bone_path(r: f64, delta: f64, w: f64) -> PiecewisePath {
    use std::f64::consts::PI;
    let h = r + delta / 2.0;
    let c = w / 2.0;
    let g = w - 4.0 * r;
    let mut path = PiecewisePath::new();
    let p = Point2::new;
    // Counterclockwise, starting at the top of the left vertical wall.
    path.push_segment(p(-c - r, h), p(-c - r, -h));
    path.push_arc(p(-c, -h), r, PI, PI);
    path.push_arc(p(-g / 2.0, -h), r, PI, -PI / 2.0);
    path.push_segment(p(-g / 2.0, -delta / 2.0), p(g / 2.0, -delta / 2.0));
    path.push_arc(p(g / 2.0, -h), r, PI / 2.0, -PI / 2.0);
    path.push_arc(p(c, -h), r, PI, PI);
    path.push_segment(p(c + r, -h), p(c + r, h));
    path.push_arc(p(c, h), r, 0.0, PI);
    path.push_arc(p(g / 2.0, h), r, 0.0, -PI / 2.0);
    path.push_segment(p(g / 2.0, delta / 2.0), p(-g / 2.0, delta / 2.0));
    path.push_arc(p(-g / 2.0, h), r, -PI / 2.0, -PI / 2.0);
    path.push_arc(p(-c, h), r, 0.0, PI);
    path
}

/// Analytic length of the bone construction, for use as an oracle: arcs
/// totalling six half-circles, two vertical walls of height `2r + delta`,
/// and two gap runs of `w - 4r` each.
pub fn bone_analytic_length(r: f64, delta: f64, w: f64) -> f64 {
    6.0 * std::f64::consts::PI * r + 2.0 * (2.0 * r + delta) + 2.0 * (w - 4.0 * r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn circle_length_converges() {
        let spec = CurveSpec {
            family: Family::Circle { r: 1.0 },
            samples: 4096,
        };
        let c = generate(&spec).unwrap();
        assert!((c.total_length() - 2.0 * PI).abs() < 1e-5);
        assert_eq!(c.vertex_count(), 4096);
        // Starts at (r, 0) counterclockwise.
        let half = c.point_at(c.total_length() / 2.0).unwrap();
        assert!(half.position.distance(crate::geom::Point2::new(-1.0, 0.0)) < 1e-3);
    }

    #[test]
    fn circle_length_monotone_in_n() {
        let mut last = 0.0;
        for n in [64, 128, 256, 512, 1024, 2048] {
            let c = generate(&CurveSpec {
                family: Family::Circle { r: 1.0 },
                samples: n,
            })
            .unwrap();
            assert!(c.total_length() >= last - 1e-12);
            last = c.total_length();
        }
        // O(1/n^2) convergence: quadrupling n cuts the defect ~16x.
        let err = |n: usize| {
            let c = generate(&CurveSpec {
                family: Family::Circle { r: 1.0 },
                samples: n,
            })
            .unwrap();
            2.0 * PI - c.total_length()
        };
        assert!(err(2048) < err(512) / 10.0);
    }

    #[test]
    fn hexagon_has_exact_vertices() {
        let c = generate(&CurveSpec {
            family: Family::RegularNGon {
                sides: 6,
                circumradius: 1.0,
            },
            samples: 6,
        })
        .unwrap();
        assert_eq!(c.vertex_count(), 6);
        assert!((c.total_length() - 6.0).abs() < 1e-12);
    }

    #[test]
    fn subdivided_ngon_keeps_corners_and_length() {
        let c = generate(&CurveSpec {
            family: Family::RegularNGon {
                sides: 4,
                circumradius: std::f64::consts::SQRT_2 / 2.0,
            },
            samples: 4003,
        })
        .unwrap();
        assert_eq!(c.vertex_count(), 4003);
        assert!((c.total_length() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn bone_length_matches_analytic_summation() {
        let (r, delta) = (1.0, 0.5);
        let spec = CurveSpec {
            family: Family::Bone {
                r,
                delta,
                w: None,
            },
            samples: 8192,
        };
        let c = generate(&spec).unwrap();
        let oracle = bone_analytic_length(r, delta, 4.0 * r);
        assert!(
            (c.total_length() - oracle).abs() < 1e-3,
            "polyline {} vs analytic {}",
            c.total_length(),
            oracle
        );
        assert!(c.total_length() <= oracle);
    }

    #[test]
    fn bone_gap_straddles_origin() {
        let c = generate(&CurveSpec {
            family: Family::Bone {
                r: 1.0,
                delta: 0.5,
                w: None,
            },
            samples: 8192,
        })
        .unwrap();
        let idx = crate::index::SegmentIndex::build(&c);
        let d = idx.nearest(crate::geom::Point2::new(0.0, 0.0)).distance;
        assert!((d - 0.25).abs() < 1e-4, "gap clearance {d}");
    }

    #[test]
    fn bone_wide_waist_inserts_straight_runs() {
        let c = generate(&CurveSpec {
            family: Family::Bone {
                r: 1.0,
                delta: 0.5,
                w: Some(6.0),
            },
            samples: 4096,
        })
        .unwrap();
        let oracle = bone_analytic_length(1.0, 0.5, 6.0);
        assert!((c.total_length() - oracle).abs() < 1e-3);
    }

    #[test]
    fn bone_rejects_overlapping_columns() {
        let bad = CurveSpec {
            family: Family::Bone {
                r: 1.0,
                delta: 0.5,
                w: Some(3.0),
            },
            samples: 512,
        };
        assert!(matches!(generate(&bad), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn ellipse_vertices_lie_on_curve() {
        let (a, b) = (2.0, 1.0);
        let c = generate(&CurveSpec {
            family: Family::Ellipse { a, b },
            samples: 1024,
        })
        .unwrap();
        for v in c.vertices() {
            let implicit = (v.x / a).powi(2) + (v.y / b).powi(2);
            assert!((implicit - 1.0).abs() < 1e-9);
        }
        // Approximately equal spacing.
        let max = c.max_spacing();
        let min = (0..c.segment_count())
            .map(|i| c.segment_length(i))
            .fold(f64::INFINITY, f64::min);
        assert!(max / min < 1.01);
    }

    #[test]
    fn rounded_polygon_is_smooth_and_simple() {
        let c = generate(&CurveSpec {
            family: Family::RoundedPolygon {
                sides: 6,
                circumradius: 1.0,
                corner_radius: 0.3,
            },
            samples: 4096,
        })
        .unwrap();
        // Perimeter oracle: straight runs plus corner arcs.
        let m = 6.0;
        let beta = PI / 2.0 - PI / m;
        let t = 0.3 / beta.tan();
        let edge = 2.0 * (PI / m).sin();
        let oracle = m * (edge - 2.0 * t) + m * 0.3 * (2.0 * PI / m);
        assert!((c.total_length() - oracle).abs() < 1e-3);
    }

    #[test]
    fn rounded_polygon_rejects_fat_corners() {
        let bad = CurveSpec {
            family: Family::RoundedPolygon {
                sides: 3,
                circumradius: 1.0,
                corner_radius: 0.9,
            },
            samples: 512,
        };
        assert!(matches!(generate(&bad), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn spec_json_round_trip() {
        let spec = CurveSpec {
            family: Family::Bone {
                r: 1.0,
                delta: 0.5,
                w: None,
            },
            samples: 2048,
        };
        let text = serde_json::to_string(&spec).unwrap();
        assert!(text.contains("\"family\":\"bone\""));
        let back: CurveSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
        let literal = r#"{"family":"circle","params":{"r":2.0},"samples":64}"#;
        let c: CurveSpec = serde_json::from_str(literal).unwrap();
        assert_eq!(
            c.family,
            Family::Circle { r: 2.0 }
        );
    }
}
