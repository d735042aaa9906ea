//! Bounding-box tree over the segments of a polyline.
//!
//! The tree nodes cover contiguous index ranges, which is a good fit for
//! curves (consecutive segments are spatially coherent). It serves three
//! queries: nearest distance to the curve, first ray hit, and point
//! classification against the closed curve via the nearest feature.

use crate::curve::SampledCurve;
use crate::geom::{Point2, PointLocation, Vector2};

const LEAF_SIZE: usize = 8;

#[derive(Debug, Clone, Copy)]
struct Aabb {
    xmin: f64,
    ymin: f64,
    xmax: f64,
    ymax: f64,
}

impl Aabb {
    fn empty() -> Self {
        Aabb {
            xmin: f64::INFINITY,
            ymin: f64::INFINITY,
            xmax: f64::NEG_INFINITY,
            ymax: f64::NEG_INFINITY,
        }
    }

    fn add(&mut self, p: Point2) {
        self.xmin = self.xmin.min(p.x);
        self.ymin = self.ymin.min(p.y);
        self.xmax = self.xmax.max(p.x);
        self.ymax = self.ymax.max(p.y);
    }

    fn merge(a: Aabb, b: Aabb) -> Aabb {
        Aabb {
            xmin: a.xmin.min(b.xmin),
            ymin: a.ymin.min(b.ymin),
            xmax: a.xmax.max(b.xmax),
            ymax: a.ymax.max(b.ymax),
        }
    }

    fn distance_lower_bound(&self, p: Point2) -> f64 {
        let dx = (self.xmin - p.x).max(0.0).max(p.x - self.xmax);
        let dy = (self.ymin - p.y).max(0.0).max(p.y - self.ymax);
        dx.hypot(dy)
    }

    /// Entry parameter of the ray `o + t d` into the box, if it hits.
    fn ray_entry(&self, o: Point2, d: Vector2) -> Option<f64> {
        let mut tmin = 0.0f64;
        let mut tmax = f64::INFINITY;
        for (lo, hi, oc, dc) in [
            (self.xmin, self.xmax, o.x, d.dx),
            (self.ymin, self.ymax, o.y, d.dy),
        ] {
            if dc == 0.0 {
                if oc < lo || oc > hi {
                    return None;
                }
            } else {
                let mut t1 = (lo - oc) / dc;
                let mut t2 = (hi - oc) / dc;
                if t1 > t2 {
                    std::mem::swap(&mut t1, &mut t2);
                }
                tmin = tmin.max(t1);
                tmax = tmax.min(t2);
                if tmin > tmax {
                    return None;
                }
            }
        }
        Some(tmin)
    }
}

#[derive(Debug, Clone)]
struct Node {
    aabb: Aabb,
    lo: usize,
    hi: usize,
    // children at 2k+1 / 2k+2 in a flat layout would waste space for odd
    // splits; explicit indices keep it simple.
    left: Option<usize>,
    right: Option<usize>,
}

/// Result of a nearest query.
#[derive(Debug, Clone, Copy)]
pub struct Nearest {
    pub distance: f64,
    pub segment: usize,
    pub t: f64,
    pub point: Point2,
}

#[derive(Debug, Clone)]
pub struct SegmentIndex {
    nodes: Vec<Node>,
    vertices: Vec<Point2>,
    nseg: usize,
    closed: bool,
    ccw: bool,
}

impl SegmentIndex {
    pub fn build(curve: &SampledCurve) -> Self {
        let vertices = curve.vertices().to_vec();
        let nseg = curve.segment_count();
        let mut idx = SegmentIndex {
            nodes: Vec::new(),
            vertices,
            nseg,
            closed: curve.is_closed(),
            ccw: curve.is_ccw(),
        };
        idx.build_node(0, nseg);
        idx
    }

    fn seg(&self, i: usize) -> (Point2, Point2) {
        let n = self.vertices.len();
        (self.vertices[i], self.vertices[(i + 1) % n])
    }

    fn build_node(&mut self, lo: usize, hi: usize) -> usize {
        let mut aabb = Aabb::empty();
        for i in lo..hi {
            let (a, b) = self.seg(i);
            aabb.add(a);
            aabb.add(b);
        }
        let me = self.nodes.len();
        self.nodes.push(Node {
            aabb,
            lo,
            hi,
            left: None,
            right: None,
        });
        if hi - lo > LEAF_SIZE {
            let mid = (lo + hi) / 2;
            let l = self.build_node(lo, mid);
            let r = self.build_node(mid, hi);
            let merged = Aabb::merge(self.nodes[l].aabb, self.nodes[r].aabb);
            self.nodes[me].left = Some(l);
            self.nodes[me].right = Some(r);
            self.nodes[me].aabb = merged;
        }
        me
    }

    /// Nearest point of the polyline to `p`. `skip` filters out segment
    /// indices (used to ignore the neighborhood of a known contact point).
    pub fn nearest_filtered<F: Fn(usize) -> bool>(&self, p: Point2, skip: F) -> Option<Nearest> {
        let mut best: Option<Nearest> = None;
        let mut stack = vec![0usize];
        while let Some(ni) = stack.pop() {
            let node = &self.nodes[ni];
            let lb = node.aabb.distance_lower_bound(p);
            if let Some(b) = &best {
                if lb >= b.distance {
                    continue;
                }
            }
            match (node.left, node.right) {
                (Some(l), Some(r)) => {
                    // Visit the closer child first for tighter pruning.
                    let dl = self.nodes[l].aabb.distance_lower_bound(p);
                    let dr = self.nodes[r].aabb.distance_lower_bound(p);
                    if dl <= dr {
                        stack.push(r);
                        stack.push(l);
                    } else {
                        stack.push(l);
                        stack.push(r);
                    }
                }
                _ => {
                    for i in node.lo..node.hi {
                        if skip(i) {
                            continue;
                        }
                        let (a, b) = self.seg(i);
                        let ab = a.to(b);
                        let len2 = ab.dot(ab);
                        let t = if len2 == 0.0 {
                            0.0
                        } else {
                            (a.to(p).dot(ab) / len2).clamp(0.0, 1.0)
                        };
                        let q = a.lerp(b, t);
                        let d = p.distance(q);
                        if best.is_none_or(|bst| d < bst.distance) {
                            best = Some(Nearest {
                                distance: d,
                                segment: i,
                                t,
                                point: q,
                            });
                        }
                    }
                }
            }
        }
        best
    }

    pub fn nearest(&self, p: Point2) -> Nearest {
        self.nearest_filtered(p, |_| false)
            .expect("index over empty curve")
    }

    /// First intersection of the ray `o + t d` (t > eps) with the polyline:
    /// smallest ray parameter, with the segment index and segment parameter.
    pub fn ray_first_hit(&self, o: Point2, d: Vector2, eps: f64) -> Option<(f64, usize, f64)> {
        let mut best: Option<(f64, usize, f64)> = None;
        let mut stack = vec![0usize];
        while let Some(ni) = stack.pop() {
            let node = &self.nodes[ni];
            let entry = match node.aabb.ray_entry(o, d) {
                Some(t) => t,
                None => continue,
            };
            if let Some((t_best, _, _)) = best {
                if entry >= t_best {
                    continue;
                }
            }
            match (node.left, node.right) {
                (Some(l), Some(r)) => {
                    stack.push(l);
                    stack.push(r);
                }
                _ => {
                    for i in node.lo..node.hi {
                        let (a, b) = self.seg(i);
                        let e = a.to(b);
                        let denom = d.cross(e);
                        if denom == 0.0 {
                            continue;
                        }
                        let oa = o.to(a);
                        let t_ray = oa.cross(e) / denom;
                        let t_seg = oa.cross(d) / denom;
                        if t_ray > eps && (-1e-12..=1.0 + 1e-12).contains(&t_seg) {
                            let t_seg = t_seg.clamp(0.0, 1.0);
                            if best.is_none_or(|(tb, _, _)| t_ray < tb) {
                                best = Some((t_ray, i, t_seg));
                            }
                        }
                    }
                }
            }
        }
        best
    }

    /// Classification of `p` against the closed curve using the nearest
    /// feature: the sign of the cross product against the nearest edge (or,
    /// at a vertex, the adjacent edge whose supporting line is farther from
    /// `p`) decides inside/outside given the stored orientation.
    pub fn classify(&self, p: Point2, tau_b: f64) -> PointLocation {
        debug_assert!(self.closed);
        let near = self.nearest(p);
        if near.distance <= tau_b {
            return PointLocation::OnBoundary;
        }
        let side = if near.t > 1e-9 && near.t < 1.0 - 1e-9 {
            let (a, b) = self.seg(near.segment);
            a.to(b).cross(a.to(p))
        } else {
            // Vertex case: compare against both incident edges.
            let vi = if near.t >= 0.5 {
                (near.segment + 1) % self.vertices.len()
            } else {
                near.segment
            };
            let n = self.vertices.len();
            let prev_seg = (vi + n - 1) % n;
            let mut best_abs = 0.0;
            let mut side = 0.0;
            for sidx in [prev_seg, vi] {
                if sidx >= self.nseg {
                    continue;
                }
                let (a, b) = self.seg(sidx);
                let e = a.to(b);
                let len = e.norm();
                if len == 0.0 {
                    continue;
                }
                let c = e.cross(a.to(p)) / len;
                if c.abs() > best_abs {
                    best_abs = c.abs();
                    side = c;
                }
            }
            side
        };
        let inside = if self.ccw { side > 0.0 } else { side < 0.0 };
        if inside {
            PointLocation::Inside
        } else {
            PointLocation::Outside
        }
    }
}
