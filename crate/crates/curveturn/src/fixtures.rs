//! Deterministic random fixtures for tests and the verification harness:
//! convex polygons, star-shaped (usually non-convex) polygons, a hairpin
//! counterexample curve, and similarity transforms.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::curve::SampledCurve;
use crate::error::Result;
use crate::geom::{Point2, Vector2};

/// Random convex polygon with `n` vertices (Valtr's construction), centered
/// at the origin and scaled to roughly unit size.
pub fn random_convex_polygon(rng: &mut StdRng, n: usize) -> Vec<Point2> {
    assert!(n >= 3);
    loop {
        let mut xs: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..1.0)).collect();
        let mut ys: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..1.0)).collect();
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ys.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let chain = |vals: &[f64], rng: &mut StdRng| {
            let (lo, hi) = (vals[0], vals[n - 1]);
            let mut deltas = Vec::with_capacity(n);
            let (mut last_a, mut last_b) = (lo, lo);
            for &v in &vals[1..n - 1] {
                if rng.random_bool(0.5) {
                    deltas.push(v - last_a);
                    last_a = v;
                } else {
                    deltas.push(last_b - v);
                    last_b = v;
                }
            }
            deltas.push(hi - last_a);
            deltas.push(last_b - hi);
            deltas
        };
        let dx = chain(&xs, rng);
        let mut dy = chain(&ys, rng);
        dy.shuffle(rng);
        let mut vecs: Vec<Vector2> = dx
            .into_iter()
            .zip(dy)
            .map(|(x, y)| Vector2 { dx: x, dy: y })
            .collect();
        if vecs.iter().any(|v| v.norm() < 1e-9) {
            continue;
        }
        vecs.sort_by(|a, b| {
            a.dy.atan2(a.dx).partial_cmp(&b.dy.atan2(b.dx)).unwrap()
        });
        let mut pts = Vec::with_capacity(n);
        let mut cur = Point2::new(0.0, 0.0);
        for v in &vecs {
            pts.push(cur);
            cur = cur.translate(*v);
        }
        // Recenter and normalize scale.
        let cx = pts.iter().map(|p| p.x).sum::<f64>() / n as f64;
        let cy = pts.iter().map(|p| p.y).sum::<f64>() / n as f64;
        let scale = pts
            .iter()
            .map(|p| (p.x - cx).abs().max((p.y - cy).abs()))
            .fold(0.0, f64::max)
            .max(1e-9);
        let pts: Vec<Point2> = pts
            .iter()
            .map(|p| Point2::new((p.x - cx) / scale, (p.y - cy) / scale))
            .collect();
        if SampledCurve::new_closed(pts.clone()).is_ok() {
            return pts;
        }
    }
}

/// Random star-shaped simple polygon with at least one reflex vertex:
/// sorted random angles with random radii, a few of them pulled inward.
pub fn random_nonconvex_polygon(rng: &mut StdRng, n: usize) -> Vec<Point2> {
    assert!(n >= 5);
    loop {
        let mut angles: Vec<f64> = (0..n)
            .map(|_| rng.random_range(0.0..2.0 * std::f64::consts::PI))
            .collect();
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let min_gap = 0.2 * 2.0 * std::f64::consts::PI / n as f64;
        let mut ok = true;
        for i in 0..n {
            let next = if i + 1 < n {
                angles[i + 1]
            } else {
                angles[0] + 2.0 * std::f64::consts::PI
            };
            if next - angles[i] < min_gap {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        let mut radii: Vec<f64> = (0..n).map(|_| rng.random_range(0.5..1.0)).collect();
        // Pull a few vertices inward to force reflex corners.
        for k in [n / 3, 2 * n / 3] {
            radii[k] *= 0.35;
        }
        let pts: Vec<Point2> = angles
            .iter()
            .zip(&radii)
            .map(|(&a, &r)| Point2::new(r * a.cos(), r * a.sin()))
            .collect();
        if SampledCurve::new_closed(pts.clone()).is_err() {
            continue;
        }
        // Must be genuinely non-convex with a comfortable margin.
        let turn = crate::turn::polygon_turn(&pts).unwrap();
        if turn > 2.0 * std::f64::consts::PI + 0.05 {
            return pts;
        }
    }
}

/// A long thin capsule: two straight walls `length` apart joined by
/// half-circle caps of radius `width / 2`. The go-to hairpin fixture: at
/// scales above `width` the opposite wall is nearby in space but far along
/// the curve.
pub fn stadium(length: f64, width: f64, n: usize) -> Result<SampledCurve> {
    assert!(length > 0.0 && width > 0.0);
    let r = width / 2.0;
    let h = length / 2.0;
    use std::f64::consts::PI;
    let perimeter = 2.0 * length + 2.0 * PI * r;
    let eval = |s: f64| -> Point2 {
        let mut s = s.rem_euclid(perimeter);
        if s < length {
            return Point2::new(-h + s, -r);
        }
        s -= length;
        if s < PI * r {
            let phi = -PI / 2.0 + s / r;
            return Point2::new(h + r * phi.cos(), r * phi.sin());
        }
        s -= PI * r;
        if s < length {
            return Point2::new(h - s, r);
        }
        s -= length;
        let phi = PI / 2.0 + s / r;
        Point2::new(-h + r * phi.cos(), r * phi.sin())
    };
    let pts = (0..n)
        .map(|i| eval(perimeter * i as f64 / n as f64))
        .collect();
    SampledCurve::new_closed(pts)
}

/// Applies the similarity `p -> scale * R(theta) p + t` to every vertex.
pub fn similarity(points: &[Point2], theta: f64, scale: f64, t: Vector2) -> Vec<Point2> {
    points
        .iter()
        .map(|p| {
            let v = Vector2 { dx: p.x, dy: p.y }.rotate(theta).scale(scale);
            Point2::new(v.dx + t.dx, v.dy + t.dy)
        })
        .collect()
}

/// Seeded generator for reproducible fixture streams.
pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}
