//! Sampled curves: ordered vertex sequences tagged with cumulative arc
//! length.
//!
//! Every analysis in this crate is defined through inscribed polygons or
//! point pairs, so an arc-length-tagged polyline is the one computational
//! curve representation. Analytic families exist only inside the generators.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Point2;

/// Relative tolerance below which an arc is considered degenerate.
pub const TAU_LEN_REL: f64 = 1e-9;

/// A closed or open curve stored as a polyline with cumulative arc length.
///
/// Invariants enforced at construction: coordinates finite, cumulative
/// length strictly increasing (no duplicate consecutive vertices), and for
/// closed curves at least 3 vertices forming a simple polygon.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve {
    vertices: Vec<Point2>,
    cum: Vec<f64>,
    total: f64,
    closed: bool,
    ccw: bool,
}

/// A point on a curve, tagged with its arc-length parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub s: f64,
    pub position: Point2,
    pub index_hint: usize,
}

/// An oriented arc-length range on a curve. On closed curves the range runs
/// forward from `start` and wraps modulo the total length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArcRange {
    pub start: f64,
    pub end: f64,
}

impl ArcRange {
    pub fn new(start: f64, end: f64) -> Self {
        assert!(start.is_finite() && end.is_finite());
        ArcRange { start, end }
    }
}

fn cumulative(vertices: &[Point2]) -> Result<(Vec<f64>, f64)> {
    let mut cum = Vec::with_capacity(vertices.len());
    let mut acc = 0.0;
    cum.push(0.0);
    for i in 1..vertices.len() {
        let d = vertices[i - 1].distance(vertices[i]);
        if d == 0.0 {
            return Err(Error::DuplicateVertex(i));
        }
        acc += d;
        cum.push(acc);
    }
    Ok((cum, acc))
}

fn signed_area(vertices: &[Point2]) -> f64 {
    let n = vertices.len();
    let mut a = 0.0;
    for i in 0..n {
        let p = vertices[i];
        let q = vertices[(i + 1) % n];
        a += p.x * q.y - q.x * p.y;
    }
    a / 2.0
}

/// Pairwise check that no two non-adjacent edges of the ring intersect.
/// Edges are pre-sorted by their minimal x so the inner loop can stop early.
fn is_simple_ring(vertices: &[Point2]) -> bool {
    let n = vertices.len();
    let edge = |i: usize| (vertices[i], vertices[(i + 1) % n]);
    let mut order: Vec<usize> = (0..n).collect();
    let xmin = |i: usize| {
        let (a, b) = edge(i);
        a.x.min(b.x)
    };
    let xmax = |i: usize| {
        let (a, b) = edge(i);
        a.x.max(b.x)
    };
    order.sort_by(|&i, &j| xmin(i).partial_cmp(&xmin(j)).unwrap());
    for (k, &i) in order.iter().enumerate() {
        let hi = xmax(i);
        for &j in &order[k + 1..] {
            if xmin(j) > hi {
                break;
            }
            let adjacent = (i + 1) % n == j || (j + 1) % n == i;
            if adjacent || i == j {
                continue;
            }
            let (a1, a2) = edge(i);
            let (b1, b2) = edge(j);
            let ylo = a1.y.min(a2.y);
            let yhi = a1.y.max(a2.y);
            if b1.y.min(b2.y) > yhi || b1.y.max(b2.y) < ylo {
                continue;
            }
            if crate::geom::segments_intersect(a1, a2, b1, b2) {
                return false;
            }
        }
    }
    true
}

impl SampledCurve {
    /// Builds a closed curve and validates simplicity of the implied polygon.
    pub fn new_closed(vertices: Vec<Point2>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::TooFewVertices {
                got: vertices.len(),
                need: 3,
            });
        }
        for p in &vertices {
            Point2::try_new(p.x, p.y)?;
        }
        let (cum, open_len) = cumulative(&vertices)?;
        let closing = vertices[vertices.len() - 1].distance(vertices[0]);
        if closing == 0.0 {
            return Err(Error::DuplicateVertex(vertices.len() - 1));
        }
        if !is_simple_ring(&vertices) {
            return Err(Error::NotSimple);
        }
        let ccw = signed_area(&vertices) > 0.0;
        Ok(SampledCurve {
            total: open_len + closing,
            vertices,
            cum,
            closed: true,
            ccw,
        })
    }

    /// Builds an open polyline. No simplicity requirement.
    pub fn new_open(vertices: Vec<Point2>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::TooFewVertices {
                got: vertices.len(),
                need: 2,
            });
        }
        for p in &vertices {
            Point2::try_new(p.x, p.y)?;
        }
        let (cum, total) = cumulative(&vertices)?;
        Ok(SampledCurve {
            vertices,
            cum,
            total,
            closed: false,
            ccw: true,
        })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn cum_length(&self) -> &[f64] {
        &self.cum
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Counterclockwise orientation of the stored ring (closed curves).
    pub fn is_ccw(&self) -> bool {
        self.ccw
    }

    pub fn total_length(&self) -> f64 {
        self.total
    }

    pub fn segment_count(&self) -> usize {
        if self.closed {
            self.vertices.len()
        } else {
            self.vertices.len() - 1
        }
    }

    pub fn segment(&self, i: usize) -> (Point2, Point2) {
        let n = self.vertices.len();
        (self.vertices[i], self.vertices[(i + 1) % n])
    }

    pub fn segment_length(&self, i: usize) -> f64 {
        if i + 1 < self.cum.len() {
            self.cum[i + 1] - self.cum[i]
        } else {
            self.total - self.cum[i]
        }
    }

    pub fn max_spacing(&self) -> f64 {
        (0..self.segment_count())
            .map(|i| self.segment_length(i))
            .fold(0.0, f64::max)
    }

    pub fn vertex_point(&self, i: usize) -> CurvePoint {
        CurvePoint {
            s: self.cum[i],
            position: self.vertices[i],
            index_hint: i,
        }
    }

    /// Reduces `s` into `[0, total)` for closed curves.
    pub fn wrap(&self, s: f64) -> f64 {
        let r = s.rem_euclid(self.total);
        if r == self.total {
            0.0
        } else {
            r
        }
    }

    pub fn degenerate_arc_tol(&self) -> f64 {
        TAU_LEN_REL * self.total
    }

    /// Linear interpolation along the polyline at arc length `s`.
    ///
    /// Closed curves take `s` modulo the total length; open curves reject
    /// parameters outside `[0, total]`.
    pub fn point_at(&self, s: f64) -> Result<CurvePoint> {
        if !s.is_finite() {
            return Err(Error::OutOfRange(s));
        }
        let s = if self.closed {
            self.wrap(s)
        } else {
            if s < 0.0 || s > self.total {
                return Err(Error::OutOfRange(s));
            }
            s
        };
        // Index of the last vertex with cum <= s.
        let idx = match self
            .cum
            .binary_search_by(|c| c.partial_cmp(&s).unwrap())
        {
            Ok(i) => i,
            Err(ins) => ins - 1,
        };
        if idx + 1 == self.vertices.len() && !self.closed {
            return Ok(self.vertex_point(idx));
        }
        let (a, b) = self.segment(idx);
        let seg_len = self.segment_length(idx);
        let t = (s - self.cum[idx]) / seg_len;
        Ok(CurvePoint {
            s,
            position: a.lerp(b, t),
            index_hint: idx,
        })
    }

    /// Forward length of `range` on this curve.
    pub fn range_length(&self, range: ArcRange) -> f64 {
        if self.closed {
            (range.end - range.start).rem_euclid(self.total)
        } else {
            range.end - range.start
        }
    }

    /// The open polyline following the stored orientation from
    /// `range.start` to `range.end`, with interpolated endpoints.
    pub fn subarc(&self, range: ArcRange) -> Result<SampledCurve> {
        let tau = self.degenerate_arc_tol();
        let len = self.range_length(range);
        if len <= tau {
            return Err(Error::DegenerateRange);
        }
        if !self.closed && (range.start < 0.0 || range.end > self.total || len <= 0.0) {
            return Err(Error::OutOfRange(range.start));
        }
        let start = self.point_at(range.start)?;
        let end_s = if self.closed {
            self.wrap(range.end)
        } else {
            range.end
        };
        let end = self.point_at(end_s)?;

        let mut pts = Vec::new();
        pts.push(start.position);
        // Walk vertices strictly inside the forward range.
        let n = self.vertices.len();
        let mut idx = (start.index_hint + 1) % n;
        let mut walked = self.cum_at_wrapped(idx) - range.start;
        if self.closed {
            walked = walked.rem_euclid(self.total);
        }
        let dedupe = 1e-12 * self.total.max(1.0);
        while walked < len {
            if walked > dedupe && (len - walked) > dedupe {
                pts.push(self.vertices[idx]);
            }
            if !self.closed && idx + 1 >= n {
                break;
            }
            walked += self.segment_length(idx);
            idx = (idx + 1) % n;
        }
        pts.push(end.position);
        SampledCurve::new_open(pts)
    }

    fn cum_at_wrapped(&self, i: usize) -> f64 {
        self.cum[i % self.vertices.len()]
    }

    /// The subarc of the complementary range. Together with `subarc` it
    /// covers the whole closed curve, overlapping only at the endpoints.
    pub fn complement_arc(&self, range: ArcRange) -> Result<SampledCurve> {
        if !self.closed {
            return Err(Error::OpenCurve);
        }
        self.subarc(ArcRange::new(range.end, range.start))
    }

    /// Resamples to `n` vertices at equal arc-length spacing of the stored
    /// polyline. The geometric support is preserved within one sample
    /// spacing; for pure polyline input whose corners land on sample
    /// positions the length is preserved exactly.
    pub fn resample(&self, n: usize) -> Result<SampledCurve> {
        let min = if self.closed { 3 } else { 2 };
        if n < min {
            return Err(Error::InvalidN(n));
        }
        let mut pts = Vec::with_capacity(n);
        if self.closed {
            let step = self.total / n as f64;
            for i in 0..n {
                pts.push(self.point_at(i as f64 * step)?.position);
            }
            SampledCurve::new_closed(pts)
        } else {
            let step = self.total / (n - 1) as f64;
            for i in 0..n {
                let s = (i as f64 * step).min(self.total);
                pts.push(self.point_at(s)?.position);
            }
            SampledCurve::new_open(pts)
        }
    }

    /// Exterior angle at vertex `i`: the unsigned angle between the incoming
    /// and outgoing edge directions. Endpoints of open curves have none.
    pub fn exterior_angle(&self, i: usize) -> Result<f64> {
        let n = self.vertices.len();
        if !self.closed && (i == 0 || i + 1 >= n) {
            return Ok(0.0);
        }
        let prev = self.vertices[(i + n - 1) % n];
        let here = self.vertices[i];
        let next = self.vertices[(i + 1) % n];
        crate::geom::angle_between(prev.to(here), here.to(next))
    }
}
