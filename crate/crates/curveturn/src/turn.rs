//! Turn (integral curvature) of polylines, polygons and sampled curves.
//!
//! The turn of a polygonal line is the sum of the unsigned exterior angles at
//! its interior vertices; for a polygon the sum runs over the whole vertex
//! ring. The turn of a curve is the supremum over inscribed polygons, which
//! this module estimates by dyadic refinement: nested vertex subsets make the
//! estimate monotone, so every reported value is a certified lower bound.

use serde::{Deserialize, Serialize};

use crate::curve::{ArcRange, CurvePoint, SampledCurve};
use crate::error::{Error, Result};
use crate::geom::{angle_between, Point2};
use crate::index::SegmentIndex;

/// Default refinement stopping tolerance, in radians.
pub const DEFAULT_TURN_TOL: f64 = 1e-4;

/// Result of the refinement-based turn estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TurnReport {
    /// Certified lower bound of the turn (last refinement level).
    pub value: f64,
    /// Number of dyadic levels evaluated.
    pub refinement_levels: usize,
    /// Whether the last increment fell below the tolerance before the stored
    /// resolution was exhausted.
    pub converged: bool,
    pub last_increment: f64,
    /// Turn at each evaluated level; non-decreasing by construction.
    pub level_values: Vec<f64>,
}

/// A vertex whose exterior angle exceeds a detection threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngularPoint {
    pub s: f64,
    pub exterior_angle: f64,
}

/// Turn of an open polygonal line: unsigned exterior angles summed over
/// interior vertices. Two vertices make a segment of turn zero.
pub fn polyline_turn(vertices: &[Point2]) -> Result<f64> {
    if vertices.len() < 2 {
        return Err(Error::TooFewVertices {
            got: vertices.len(),
            need: 2,
        });
    }
    for i in 1..vertices.len() {
        if vertices[i - 1] == vertices[i] {
            return Err(Error::DuplicateVertex(i));
        }
    }
    let mut sum = 0.0;
    for i in 1..vertices.len() - 1 {
        sum += angle_between(
            vertices[i - 1].to(vertices[i]),
            vertices[i].to(vertices[i + 1]),
        )?;
    }
    Ok(sum)
}

/// Turn of a closed polygon: the cyclic sum of unsigned exterior angles.
/// The input ring is assumed simple.
pub fn polygon_turn(vertices: &[Point2]) -> Result<f64> {
    let n = vertices.len();
    if n < 3 {
        return Err(Error::DegeneratePolygon("fewer than 3 vertices"));
    }
    for i in 0..n {
        if vertices[i] == vertices[(i + 1) % n] {
            return Err(Error::DegeneratePolygon("duplicate consecutive vertices"));
        }
    }
    let mut sum = 0.0;
    for i in 0..n {
        let prev = vertices[(i + n - 1) % n];
        let here = vertices[i];
        let next = vertices[(i + 1) % n];
        sum += angle_between(prev.to(here), here.to(next))?;
    }
    Ok(sum)
}

fn strided_turn(curve: &SampledCurve, stride: usize) -> f64 {
    let n = curve.vertex_count();
    let verts = curve.vertices();
    if curve.is_closed() {
        let idx: Vec<usize> = (0..n).step_by(stride).collect();
        let m = idx.len();
        let mut sum = 0.0;
        for k in 0..m {
            let prev = verts[idx[(k + m - 1) % m]];
            let here = verts[idx[k]];
            let next = verts[idx[(k + 1) % m]];
            sum += angle_between(prev.to(here), here.to(next))
                .expect("distinct vertices of a simple curve");
        }
        sum
    } else {
        let mut idx: Vec<usize> = (0..n).step_by(stride).collect();
        if *idx.last().unwrap() != n - 1 {
            idx.push(n - 1);
        }
        let mut sum = 0.0;
        for k in 1..idx.len() - 1 {
            let prev = verts[idx[k - 1]];
            let here = verts[idx[k]];
            let next = verts[idx[k + 1]];
            sum += angle_between(prev.to(here), here.to(next))
                .expect("distinct vertices of a simple curve");
        }
        sum
    }
}

/// Dyadic refinement estimate of the turn of `curve`.
///
/// Levels use nested vertex subsets of the stored polyline (stride halving
/// down to stride one), so the level values are non-decreasing and the final
/// value is a certified lower bound of the true turn. Refinement stops when
/// an increment falls below `tol` or the stored resolution is exhausted; the
/// `converged` flag records which.
pub fn curve_turn(curve: &SampledCurve, tol: f64) -> TurnReport {
    let n = curve.vertex_count();
    let mut max_level = 0usize;
    while n >> (max_level + 1) >= 8 {
        max_level += 1;
    }
    let mut level_values = Vec::with_capacity(max_level + 1);
    let mut last_increment = 0.0;
    let mut converged = true;
    for level in 0..=max_level {
        let stride = 1usize << (max_level - level);
        let value = strided_turn(curve, stride);
        if let Some(&prev) = level_values.last() {
            last_increment = value - prev;
            level_values.push(value);
            if last_increment < tol {
                converged = true;
                break;
            }
            converged = false;
        } else {
            level_values.push(value);
        }
    }
    TurnReport {
        value: *level_values.last().unwrap(),
        refinement_levels: level_values.len(),
        converged,
        last_increment,
        level_values,
    }
}

/// Turn of the subarc selected by `range`, at stored resolution.
pub fn arc_turn(curve: &SampledCurve, range: ArcRange) -> Result<f64> {
    let arc = curve.subarc(range)?;
    polyline_turn(arc.vertices())
}

/// Defect of the turn additivity identity when splitting `range` at the
/// vertex nearest to arc length `c`:
/// `|k(a,b) - k(a,c) - k(c,b) - exterior_angle(c)|`.
pub fn turn_additivity_check(curve: &SampledCurve, range: ArcRange, c: f64) -> Result<f64> {
    let len = curve.range_length(range);
    let tau = curve.degenerate_arc_tol();
    let c = if curve.is_closed() { curve.wrap(c) } else { c };
    let offset = if curve.is_closed() {
        (c - range.start).rem_euclid(curve.total_length())
    } else {
        c - range.start
    };
    if !(offset > tau && offset < len - tau) {
        return Err(Error::DegenerateRange);
    }
    // Snap to the nearest vertex that stays strictly interior to the range.
    let hint = curve.point_at(c)?.index_hint;
    let n = curve.vertex_count();
    let mut candidates = vec![hint, (hint + 1) % n, (hint + n - 1) % n, (hint + 2) % n];
    candidates.dedup();
    let mut snapped = None;
    for &i in &candidates {
        let s = curve.cum_length()[i];
        let off = if curve.is_closed() {
            (s - range.start).rem_euclid(curve.total_length())
        } else {
            s - range.start
        };
        if off > tau && off < len - tau {
            let dist = (off - offset).abs();
            match snapped {
                Some((_, best)) if best <= dist => {}
                _ => snapped = Some((i, dist)),
            }
        }
    }
    let (vi, _) = snapped.ok_or(Error::DegenerateRange)?;
    let sv = curve.cum_length()[vi];
    let k_ab = arc_turn(curve, range)?;
    let k_ac = arc_turn(curve, ArcRange::new(range.start, sv))?;
    let k_cb = arc_turn(curve, ArcRange::new(sv, range.end))?;
    let ext = curve.exterior_angle(vi)?;
    Ok((k_ab - k_ac - k_cb - ext).abs())
}

/// Whether the points form a chain of the curve: their cyclic order along
/// the curve matches their sequence order, up to global reversal. For a
/// curve stored by arc length this is exactly the inscribed-polygon
/// admissibility condition.
pub fn is_chain(points: &[CurvePoint], curve: &SampledCurve) -> Result<bool> {
    if points.len() < 3 {
        return Err(Error::TooFewVertices {
            got: points.len(),
            need: 3,
        });
    }
    let scale = curve.total_length().max(1.0);
    let tau = crate::geom::TAU_B * scale;
    let idx = SegmentIndex::build(curve);
    for p in points {
        if idx.nearest_filtered(p.position, |_| false).map(|n| n.distance).unwrap_or(f64::INFINITY)
            > tau.max(1e-7 * scale)
        {
            return Err(Error::PointNotOnCurve(p.s));
        }
        let at = curve.point_at(p.s)?;
        if at.position.distance(p.position) > tau.max(1e-7 * scale) {
            return Err(Error::PointNotOnCurve(p.s));
        }
    }
    let m = points.len();
    if curve.is_closed() {
        let l = curve.total_length();
        let t: Vec<f64> = points
            .iter()
            .map(|p| (p.s - points[0].s).rem_euclid(l))
            .collect();
        let distinct = |ts: &[f64]| {
            for w in ts.windows(2) {
                if (w[1] - w[0]).abs() < curve.degenerate_arc_tol() {
                    return false;
                }
            }
            true
        };
        let forward = t.windows(2).all(|w| w[0] < w[1]) && distinct(&t);
        let reversed = {
            let mut r: Vec<f64> = points
                .iter()
                .rev()
                .map(|p| (p.s - points[m - 1].s).rem_euclid(l))
                .collect();
            let ok = r.windows(2).all(|w| w[0] < w[1]);
            r.dedup();
            ok && r.len() == m
        };
        Ok(forward || reversed)
    } else {
        let forward = points.windows(2).all(|w| w[0].s < w[1].s);
        let reversed = points.windows(2).all(|w| w[0].s > w[1].s);
        Ok(forward || reversed)
    }
}

/// All vertices whose exterior angle exceeds `threshold`, with their
/// arc-length positions.
pub fn angular_points(curve: &SampledCurve, threshold: f64) -> Vec<AngularPoint> {
    let mut out = Vec::new();
    for i in 0..curve.vertex_count() {
        let a = curve.exterior_angle(i).unwrap_or(0.0);
        if a > threshold {
            out.push(AngularPoint {
                s: curve.cum_length()[i],
                exterior_angle: a,
            });
        }
    }
    out
}

/// Cumulative inscribed turn from vertex 0: entry `i` holds the turn of the
/// polyline `v_0..v_i`. The two ring-closing angles (at vertex 0 and the
/// last vertex) are excluded; adding them to the last entry recovers the
/// polygon turn of a closed curve.
pub fn turn_profile(curve: &SampledCurve) -> Vec<(f64, f64)> {
    let n = curve.vertex_count();
    let mut out = Vec::with_capacity(n);
    let mut acc = 0.0;
    for i in 0..n {
        out.push((curve.cum_length()[i], acc));
        // The angle at vertex i becomes interior once the prefix polyline
        // reaches v_{i+1}; the ring-closing angles never enter.
        if i >= 1 && i + 1 < n {
            acc += curve.exterior_angle(i).unwrap_or(0.0);
        }
    }
    out
}

/// Per-vertex exterior angles with prefix sums, for O(1) turn of arcs
/// between vertices. This is the workhorse behind the pair scans.
#[derive(Debug, Clone)]
pub(crate) struct TurnPrefix {
    angles: Vec<f64>,
    prefix: Vec<f64>,
    closed: bool,
}

impl TurnPrefix {
    pub fn build(curve: &SampledCurve) -> Self {
        let n = curve.vertex_count();
        let mut angles = Vec::with_capacity(n);
        for i in 0..n {
            angles.push(curve.exterior_angle(i).unwrap_or(0.0));
        }
        let mut prefix = Vec::with_capacity(n + 1);
        prefix.push(0.0);
        for &a in &angles {
            prefix.push(prefix.last().unwrap() + a);
        }
        TurnPrefix {
            angles,
            prefix,
            closed: curve.is_closed(),
        }
    }

    pub fn angle(&self, i: usize) -> f64 {
        self.angles[i]
    }

    /// Sum of angles at vertices `i..=j` (no wrap).
    fn span(&self, i: usize, j: usize) -> f64 {
        if i > j {
            0.0
        } else {
            self.prefix[j + 1] - self.prefix[i]
        }
    }

    pub fn total(&self) -> f64 {
        *self.prefix.last().unwrap()
    }

    /// Turn of the forward arc from vertex `i` to vertex `j`: the sum of the
    /// exterior angles strictly between them. Wrapping allowed on closed
    /// curves.
    pub fn arc_turn_vertices(&self, i: usize, j: usize) -> f64 {
        let n = self.angles.len();
        if i == j {
            return 0.0;
        }
        if i < j {
            self.span(i + 1, j.wrapping_sub(1))
        } else {
            debug_assert!(self.closed);
            let tail = self.span(i + 1, n - 1);
            let head = if j == 0 { 0.0 } else { self.span(0, j - 1) };
            tail + head
        }
    }
}
