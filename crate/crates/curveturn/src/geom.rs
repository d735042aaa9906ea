//! Planar primitives: points, vectors, disks, angles and the few predicates
//! the analyses need.
//!
//! All angles at this layer are unsigned and live in `[0, pi]`; the turn of a
//! curve is a sum of unsigned exterior angles, so signed angles are never
//! exposed. Predicates are tolerance-based, not exact: the inputs are sampled
//! curves and never hit exact configurations on purpose.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default boundary-band tolerance for point classification, in curve units.
pub const TAU_B: f64 = 1e-9;
/// Default orientation tolerance for the segment predicates.
pub const TAU_O: f64 = 1e-9;

/// A point of the plane. Coordinates are always finite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

/// A direction or displacement. The zero vector is representable; operations
/// that need a direction reject it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vector2 {
    pub dx: f64,
    pub dy: f64,
}

/// A closed disk with strictly positive radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub center: Point2,
    pub radius: f64,
}

impl Point2 {
    /// Panics on non-finite coordinates; use [`Point2::try_new`] for
    /// untrusted input.
    pub fn new(x: f64, y: f64) -> Self {
        assert!(x.is_finite() && y.is_finite(), "non-finite coordinate");
        Point2 { x, y }
    }

    pub fn try_new(x: f64, y: f64) -> Result<Self> {
        if x.is_finite() && y.is_finite() {
            Ok(Point2 { x, y })
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn to(self, other: Point2) -> Vector2 {
        Vector2 {
            dx: other.x - self.x,
            dy: other.y - self.y,
        }
    }

    pub fn distance(self, other: Point2) -> f64 {
        self.to(other).norm()
    }

    pub fn translate(self, v: Vector2) -> Point2 {
        Point2 {
            x: self.x + v.dx,
            y: self.y + v.dy,
        }
    }

    pub fn lerp(self, other: Point2, t: f64) -> Point2 {
        Point2 {
            x: self.x + t * (other.x - self.x),
            y: self.y + t * (other.y - self.y),
        }
    }
}

impl Vector2 {
    pub fn new(dx: f64, dy: f64) -> Self {
        assert!(dx.is_finite() && dy.is_finite(), "non-finite component");
        Vector2 { dx, dy }
    }

    pub fn norm(self) -> f64 {
        self.dx.hypot(self.dy)
    }

    pub fn is_zero(self) -> bool {
        self.dx == 0.0 && self.dy == 0.0
    }

    pub fn dot(self, other: Vector2) -> f64 {
        self.dx * other.dx + self.dy * other.dy
    }

    pub fn cross(self, other: Vector2) -> f64 {
        self.dx * other.dy - self.dy * other.dx
    }

    pub fn scale(self, k: f64) -> Vector2 {
        Vector2 {
            dx: k * self.dx,
            dy: k * self.dy,
        }
    }

    pub fn normalized(self) -> Result<Vector2> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(self.scale(1.0 / n))
    }

    /// Counterclockwise rotation by a quarter turn.
    pub fn perp(self) -> Vector2 {
        Vector2 {
            dx: -self.dy,
            dy: self.dx,
        }
    }

    pub fn rotate(self, theta: f64) -> Vector2 {
        let (s, c) = theta.sin_cos();
        Vector2 {
            dx: c * self.dx - s * self.dy,
            dy: s * self.dx + c * self.dy,
        }
    }
}

impl Disk {
    pub fn new(center: Point2, radius: f64) -> Result<Self> {
        if !radius.is_finite() || radius <= 0.0 {
            return Err(Error::InvalidRadius(radius));
        }
        Ok(Disk { center, radius })
    }

    pub fn contains(self, p: Point2) -> bool {
        self.center.distance(p) <= self.radius
    }
}

/// Unsigned angle between two directions, in `[0, pi]`.
///
/// Computed as `atan2(|u x v|, u . v)`, which stays accurate for nearly
/// parallel and nearly opposite vectors where `acos` of the normalized dot
/// product loses digits. Symmetric in its arguments by construction.
pub fn angle_between(u: Vector2, v: Vector2) -> Result<f64> {
    if u.is_zero() || v.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(u.cross(v).abs().atan2(u.dot(v)))
}

/// Euclidean distance from `p` to the closed segment `[a, b]`.
///
/// `a == b` degenerates to point distance.
pub fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = a.to(b);
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.distance(a);
    }
    let t = (a.to(p).dot(ab) / len2).clamp(0.0, 1.0);
    p.distance(a.lerp(b, t))
}

/// Classification of a point against a closed polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PointLocation {
    Inside,
    Outside,
    OnBoundary,
}

/// Even-odd classification of `p` against the closed polygon `poly` (last
/// vertex implicitly joins the first), with an `OnBoundary` band of width
/// `tau_b`.
///
/// The polygon is assumed simple; callers that know theirs is not pass
/// `simple = false` and get an error instead of a meaningless answer.
pub fn point_in_closed_polygon(
    p: Point2,
    poly: &[Point2],
    tau_b: f64,
    simple: bool,
) -> Result<PointLocation> {
    if poly.len() < 3 {
        return Err(Error::DegeneratePolygon("fewer than 3 vertices"));
    }
    if !simple {
        return Err(Error::DegeneratePolygon("self-intersecting"));
    }
    let n = poly.len();
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        if point_segment_distance(p, a, b) <= tau_b {
            return Ok(PointLocation::OnBoundary);
        }
    }
    // Crossing count with the half-open rule: an edge counts when exactly one
    // endpoint is strictly above the horizontal ray through p.
    let mut inside = false;
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        if (a.y > p.y) != (b.y > p.y) {
            let x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if x_cross > p.x {
                inside = !inside;
            }
        }
    }
    Ok(if inside {
        PointLocation::Inside
    } else {
        PointLocation::Outside
    })
}

/// Orientation sign of the triple `(a, b, c)` with tolerance `tau_o`:
/// `1` for counterclockwise, `-1` for clockwise, `0` within the band.
pub fn orientation(a: Point2, b: Point2, c: Point2, tau_o: f64) -> i8 {
    let v = a.to(b).cross(a.to(c));
    if v > tau_o {
        1
    } else if v < -tau_o {
        -1
    } else {
        0
    }
}

fn on_segment_1d(lo: f64, hi: f64, v: f64) -> bool {
    v >= lo.min(hi) && v <= lo.max(hi)
}

/// Whether the closed segments `[a1,a2]` and `[b1,b2]` share a point.
/// Touching endpoints count. Orientation comparisons use the band `tau_o`
/// scaled by the segment extents.
pub fn segments_intersect(a1: Point2, a2: Point2, b1: Point2, b2: Point2) -> bool {
    let scale = a1
        .distance(a2)
        .max(b1.distance(b2))
        .max(a1.distance(b1))
        .max(1e-300);
    let tau = TAU_O * scale * scale;
    let d1 = orientation(b1, b2, a1, tau);
    let d2 = orientation(b1, b2, a2, tau);
    let d3 = orientation(a1, a2, b1, tau);
    let d4 = orientation(a1, a2, b2, tau);
    // Proper crossing: strict sign opposition on both segments.
    if d1 as i32 * d2 as i32 == -1 && d3 as i32 * d4 as i32 == -1 {
        return true;
    }
    // Collinear or touching cases: an endpoint inside the orientation band
    // counts when it actually lies within tolerance of the other segment.
    for (p, (q1, q2), d) in [
        (a1, (b1, b2), d1),
        (a2, (b1, b2), d2),
        (b1, (a1, a2), d3),
        (b2, (a1, a2), d4),
    ] {
        if d == 0
            && on_segment_1d(q1.x, q2.x, p.x)
            && on_segment_1d(q1.y, q2.y, p.y)
            && point_segment_distance(p, q1, q2) <= TAU_O * scale
        {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn v(dx: f64, dy: f64) -> Vector2 {
        Vector2::new(dx, dy)
    }

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    #[test]
    fn angle_orthogonal() {
        assert_eq!(angle_between(v(1.0, 0.0), v(0.0, 1.0)).unwrap(), PI / 2.0);
    }

    #[test]
    fn angle_identical() {
        assert_eq!(angle_between(v(1.0, 0.0), v(1.0, 0.0)).unwrap(), 0.0);
    }

    #[test]
    fn angle_nearly_opposite() {
        // True value is pi - atan(1e-12) = pi - 1e-12 up to cubic terms; the
        // arccos-of-dot formulation would only get ~1e-8 here.
        let a = angle_between(v(1.0, 0.0), v(-1.0, 1e-12)).unwrap();
        assert!((a - PI).abs() < 1e-9);
        assert!((a - (PI - 1e-12)).abs() < 1e-15);
    }

    #[test]
    fn angle_zero_vector_rejected() {
        assert_eq!(
            angle_between(v(0.0, 0.0), v(1.0, 0.0)),
            Err(Error::ZeroVector)
        );
    }

    #[test]
    fn angle_symmetric_exactly() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 * 4.0 - 2.0
        };
        for _ in 0..1000 {
            let u = v(next(), next());
            let w = v(next(), next());
            if u.is_zero() || w.is_zero() {
                continue;
            }
            assert_eq!(
                angle_between(u, w).unwrap(),
                angle_between(w, u).unwrap()
            );
        }
    }

    #[test]
    fn angle_recovers_rotation() {
        let mut state = 0x123456789abcdefu64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..10_000 {
            let u = v(next() * 20.0 - 10.0, next() * 20.0 - 10.0);
            if u.norm() < 1e-3 {
                continue;
            }
            let theta = next() * 2.0 * PI - PI;
            let got = angle_between(u, u.rotate(theta)).unwrap();
            assert!(
                (got - theta.abs()).abs() < 1e-12,
                "theta={theta} got={got}"
            );
        }
    }

    #[test]
    fn segment_distance_cases() {
        assert_eq!(
            point_segment_distance(p(0.0, 1.0), p(-1.0, 0.0), p(1.0, 0.0)),
            1.0
        );
        assert_eq!(
            point_segment_distance(p(2.0, 0.0), p(-1.0, 0.0), p(1.0, 0.0)),
            1.0
        );
        assert_eq!(
            point_segment_distance(p(3.0, 4.0), p(0.0, 0.0), p(0.0, 0.0)),
            5.0
        );
        // Distance to a segment never beats distance to its endpoints.
        assert!(
            point_segment_distance(p(0.3, 0.9), p(-1.0, 0.2), p(0.5, 0.1))
                <= p(0.3, 0.9).distance(p(-1.0, 0.2))
        );
    }

    fn unit_square() -> Vec<Point2> {
        vec![
            p(-0.5, -0.5),
            p(0.5, -0.5),
            p(0.5, 0.5),
            p(-0.5, 0.5),
        ]
    }

    #[test]
    fn polygon_classification() {
        let sq = unit_square();
        assert_eq!(
            point_in_closed_polygon(p(0.0, 0.0), &sq, TAU_B, true).unwrap(),
            PointLocation::Inside
        );
        assert_eq!(
            point_in_closed_polygon(p(10.0, 10.0), &sq, TAU_B, true).unwrap(),
            PointLocation::Outside
        );
        assert_eq!(
            point_in_closed_polygon(p(0.5, 0.0), &sq, 1e-9, true).unwrap(),
            PointLocation::OnBoundary
        );
    }

    #[test]
    fn polygon_classification_cyclic_invariant() {
        let sq = unit_square();
        let probes = [p(0.1, 0.2), p(0.7, 0.0), p(-0.49, 0.49), p(2.0, -3.0)];
        for k in 0..sq.len() {
            let mut rot = sq.clone();
            rot.rotate_left(k);
            for q in probes {
                assert_eq!(
                    point_in_closed_polygon(q, &sq, TAU_B, true).unwrap(),
                    point_in_closed_polygon(q, &rot, TAU_B, true).unwrap()
                );
            }
        }
    }

    #[test]
    fn degenerate_polygon_rejected() {
        assert!(point_in_closed_polygon(p(0.0, 0.0), &[p(0.0, 0.0), p(1.0, 0.0)], TAU_B, true).is_err());
        assert!(point_in_closed_polygon(p(0.0, 0.0), &unit_square(), TAU_B, false).is_err());
    }

    #[test]
    fn disk_validation_and_membership() {
        let d = Disk::new(p(1.0, 0.0), 0.5).unwrap();
        assert!(d.contains(p(1.3, 0.0)));
        assert!(d.contains(p(1.5, 0.0)));
        assert!(!d.contains(p(1.6, 0.0)));
        assert!(Disk::new(p(0.0, 0.0), 0.0).is_err());
        assert!(Disk::new(p(0.0, 0.0), -1.0).is_err());
        assert!(Disk::new(p(0.0, 0.0), f64::NAN).is_err());
    }

    #[test]
    fn segments_crossing() {
        assert!(segments_intersect(
            p(-1.0, -1.0),
            p(1.0, 1.0),
            p(-1.0, 1.0),
            p(1.0, -1.0)
        ));
    }

    #[test]
    fn segments_parallel_disjoint() {
        assert!(!segments_intersect(
            p(0.0, 0.0),
            p(1.0, 0.0),
            p(0.0, 1.0),
            p(1.0, 1.0)
        ));
    }

    #[test]
    fn segments_shared_endpoint() {
        assert!(segments_intersect(
            p(0.0, 0.0),
            p(1.0, 0.0),
            p(1.0, 0.0),
            p(2.0, 5.0)
        ));
    }

    #[test]
    fn segments_collinear_disjoint() {
        assert!(!segments_intersect(
            p(0.0, 0.0),
            p(1.0, 0.0),
            p(2.0, 0.0),
            p(3.0, 0.0)
        ));
    }
}
