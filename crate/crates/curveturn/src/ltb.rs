//! Local turn bounds: the largest scale at which every close point pair has
//! a low-turn connecting arc, the straightest arc between nearby points, the
//! Lipschitz-turn constant, and the two structural consequences (local
//! connectivity, distance monotonicity).

use serde::{Deserialize, Serialize};

use crate::curve::{ArcRange, CurvePoint, SampledCurve};
use crate::error::{Error, Result};
use crate::turn::{angular_points, polyline_turn, TurnPrefix};

/// Turn-comparison tolerance, in radians.
pub const DEFAULT_TURN_CMP_TOL: f64 = 1e-3;
/// Guard band for the strict `turn > theta` comparison: prefix sums carry
/// accumulated rounding around exact-threshold configurations (a square
/// corner computes to pi/2 give or take an ulp).
pub const TURN_STRICT_EPS: f64 = 1e-9;
/// Exterior-angle threshold above which a vertex counts as a corner.
pub const DEFAULT_THETA_AP: f64 = 0.1;
/// Relative monotonicity tolerance for the distance walk.
pub const TAU_MONO_REL: f64 = 1e-9;

/// Scan result for the locally-turn-bounded scale estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LtbReport {
    pub theta: f64,
    /// Minimal distance between sampled points for which both connecting
    /// arcs turn more than `theta`; capped at the curve diameter when no
    /// sampled pair violates.
    pub delta: f64,
    pub witness_pair: Option<(CurvePoint, CurvePoint)>,
    pub pairs_scanned: usize,
    /// Vertex count the scan ran at.
    pub resolution: usize,
    /// The scan can miss violations between samples: the true threshold
    /// exceeds `delta - sampling_slack` (two sample spacings).
    pub sampling_slack: f64,
    pub capped_at_diameter: bool,
}

/// Supremum of turn over arc length across subarcs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LipschitzReport {
    /// `f64::INFINITY` when a corner forces the ratio to diverge
    /// (serialized as null in JSON).
    pub k: f64,
    pub witness_range: Option<ArcRange>,
    pub min_arc_length_used: f64,
    /// Vertex count the scan ran at.
    pub resolution: usize,
    /// The corner that forced an infinite constant, if any.
    pub corner: Option<crate::turn::AngularPoint>,
}

impl LipschitzReport {
    pub fn is_finite(&self) -> bool {
        self.k.is_finite()
    }
}

/// The arc of turn at most pi/2 between two nearby points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StraightestArcResult {
    pub range: ArcRange,
    pub turn: f64,
    /// Both arcs qualified (points very close); the shorter one is returned.
    pub ambiguous: bool,
}

/// Of the two arcs delimited by `a` and `b`, returns the one with turn at
/// most `pi/2 + tol`. Requires the pair distance to be below `delta`; when
/// both arcs qualify the shorter is returned and flagged.
pub fn straightest_arc(
    curve: &SampledCurve,
    a: CurvePoint,
    b: CurvePoint,
    delta: f64,
) -> Result<StraightestArcResult> {
    let dist = a.position.distance(b.position);
    if !delta.is_finite() || dist >= delta {
        return Err(Error::DeltaExceeded { dist, delta });
    }
    let limit = std::f64::consts::FRAC_PI_2 + DEFAULT_TURN_CMP_TOL;
    let forward = ArcRange::new(a.s, b.s);
    let turn_of = |range: ArcRange| -> Result<f64> {
        let arc = curve.subarc(range)?;
        polyline_turn(arc.vertices())
    };
    if !curve.is_closed() {
        let range = if a.s <= b.s {
            forward
        } else {
            ArcRange::new(b.s, a.s)
        };
        let turn = turn_of(range)?;
        return if turn <= limit {
            Ok(StraightestArcResult {
                range,
                turn,
                ambiguous: false,
            })
        } else {
            Err(Error::NoStraightArc)
        };
    }
    let backward = ArcRange::new(b.s, a.s);
    let t_f = turn_of(forward)?;
    let t_b = turn_of(backward)?;
    match (t_f <= limit, t_b <= limit) {
        (true, false) => Ok(StraightestArcResult {
            range: forward,
            turn: t_f,
            ambiguous: false,
        }),
        (false, true) => Ok(StraightestArcResult {
            range: backward,
            turn: t_b,
            ambiguous: false,
        }),
        (true, true) => {
            let (range, turn) = if curve.range_length(forward) <= curve.range_length(backward) {
                (forward, t_f)
            } else {
                (backward, t_b)
            };
            Ok(StraightestArcResult {
                range,
                turn,
                ambiguous: true,
            })
        }
        (false, false) => Err(Error::NoStraightArc),
    }
}

/// Scans all sample pairs of a closed curve for the smallest distance at
/// which both connecting arcs turn more than `theta`.
///
/// The result is an upper-resolution estimate: the true threshold is at most
/// the reported delta and at least `delta - sampling_slack`.
pub fn max_delta(curve: &SampledCurve, theta: f64) -> Result<LtbReport> {
    if !curve.is_closed() {
        return Err(Error::OpenCurve);
    }
    let prefix = TurnPrefix::build(curve);
    let verts = curve.vertices();
    let n = verts.len();
    let total_turn = prefix.total();
    let mut best_sq = f64::INFINITY;
    let mut witness = None;
    let mut diameter_sq = 0.0f64;
    let mut pairs = 0usize;
    for i in 0..n {
        for j in (i + 1)..n {
            pairs += 1;
            let dx = verts[j].x - verts[i].x;
            let dy = verts[j].y - verts[i].y;
            let d_sq = dx * dx + dy * dy;
            if d_sq > diameter_sq {
                diameter_sq = d_sq;
            }
            if d_sq >= best_sq {
                continue;
            }
            let t_forward = prefix.arc_turn_vertices(i, j);
            if t_forward <= theta + TURN_STRICT_EPS {
                continue;
            }
            let t_backward = total_turn - t_forward - prefix.angle(i) - prefix.angle(j);
            if t_backward <= theta + TURN_STRICT_EPS {
                continue;
            }
            best_sq = d_sq;
            witness = Some((i, j));
        }
    }
    let slack = 2.0 * curve.max_spacing();
    match witness {
        Some((i, j)) => Ok(LtbReport {
            theta,
            delta: best_sq.sqrt(),
            witness_pair: Some((curve.vertex_point(i), curve.vertex_point(j))),
            pairs_scanned: pairs,
            resolution: n,
            sampling_slack: slack,
            capped_at_diameter: false,
        }),
        None => Ok(LtbReport {
            theta,
            delta: diameter_sq.sqrt(),
            witness_pair: None,
            pairs_scanned: pairs,
            resolution: n,
            sampling_slack: slack,
            capped_at_diameter: true,
        }),
    }
}

/// Supremum of `turn / length` over all vertex-to-vertex subarcs of length
/// at least `min_len`. Reports an infinite constant when the curve has a
/// corner (a vertex angle above the detection threshold), since the ratio
/// diverges on shrinking arcs there.
pub fn lipschitz_constant(curve: &SampledCurve, min_len: f64) -> Result<LipschitzReport> {
    if !min_len.is_finite() || min_len <= 0.0 {
        return Err(Error::InvalidSpec("min_len must be positive".to_string()));
    }
    let corners = angular_points(curve, DEFAULT_THETA_AP);
    if let Some(c) = corners.first() {
        return Ok(LipschitzReport {
            k: f64::INFINITY,
            witness_range: None,
            min_arc_length_used: min_len,
            resolution: curve.vertex_count(),
            corner: Some(*c),
        });
    }
    let prefix = TurnPrefix::build(curve);
    let cum = curve.cum_length();
    let total = curve.total_length();
    let n = curve.vertex_count();
    let mut best = 0.0f64;
    let mut witness = None;
    for i in 0..n {
        for j in 0..n {
            if i == j || (!curve.is_closed() && j < i) {
                continue;
            }
            let len = if curve.is_closed() {
                (cum[j] - cum[i]).rem_euclid(total)
            } else {
                cum[j] - cum[i]
            };
            if len < min_len {
                continue;
            }
            let ratio = prefix.arc_turn_vertices(i, j) / len;
            if ratio > best {
                best = ratio;
                witness = Some(ArcRange::new(cum[i], cum[j]));
            }
        }
    }
    Ok(LipschitzReport {
        k: best,
        witness_range: witness,
        min_arc_length_used: min_len,
        resolution: n,
        corner: None,
    })
}

/// Default `min_len` for the Lipschitz scan: four sample spacings. Ratios
/// over shorter arcs are discretization noise.
pub fn default_min_len(curve: &SampledCurve) -> f64 {
    4.0 * curve.max_spacing()
}

/// Whether the vertices within distance `eps` of `a` form one contiguous
/// run in cyclic vertex order, i.e. the curve meets the disk in a single
/// arc at sample resolution.
pub fn local_connectivity_check(curve: &SampledCurve, a: CurvePoint, eps: f64) -> bool {
    let n = curve.vertex_count();
    let mask: Vec<bool> = curve
        .vertices()
        .iter()
        .map(|v| v.distance(a.position) < eps)
        .collect();
    let mut entering_runs = 0usize;
    for i in 0..n {
        let prev = if i == 0 {
            if curve.is_closed() {
                mask[n - 1]
            } else {
                false
            }
        } else {
            mask[i - 1]
        };
        if mask[i] && !prev {
            entering_runs += 1;
        }
    }
    entering_runs <= 1
}

/// Walks from `a` in both orientations while inside the open disk of radius
/// `delta / 2` and checks that the distance to `a` never decreases (within
/// a relative tolerance).
pub fn distance_monotonicity_check(curve: &SampledCurve, a: CurvePoint, delta: f64) -> bool {
    let radius = delta / 2.0;
    let tau = TAU_MONO_REL * curve.total_length();
    let n = curve.vertex_count();
    let verts = curve.vertices();
    let step = |idx: usize, forward: bool| -> Option<usize> {
        if forward {
            if idx + 1 < n {
                Some(idx + 1)
            } else if curve.is_closed() {
                Some(0)
            } else {
                None
            }
        } else if idx > 0 {
            Some(idx - 1)
        } else if curve.is_closed() {
            Some(n - 1)
        } else {
            None
        }
    };
    let walk = |start: usize, forward: bool| -> bool {
        let mut prev = 0.0f64;
        let mut idx = start;
        for _ in 0..n {
            let d = verts[idx].distance(a.position);
            if d >= radius {
                return true;
            }
            if d < prev - tau {
                return false;
            }
            prev = d;
            match step(idx, forward) {
                Some(next) => idx = next,
                None => return true,
            }
        }
        // Never left the disk over a full loop; any return toward `a`
        // would have tripped the check above.
        true
    };
    let fwd_start = if a.index_hint + 1 < n {
        a.index_hint + 1
    } else if curve.is_closed() {
        0
    } else {
        a.index_hint
    };
    walk(fwd_start, true) && walk(a.index_hint, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::generate::{generate, CurveSpec, Family};
    use std::f64::consts::PI;

    fn circle(r: f64, n: usize) -> SampledCurve {
        generate(&CurveSpec {
            family: Family::Circle { r },
            samples: n,
        })
        .unwrap()
    }

    fn bone(n: usize) -> SampledCurve {
        generate(&CurveSpec {
            family: Family::Bone {
                r: 1.0,
                delta: 0.5,
                w: None,
            },
            samples: n,
        })
        .unwrap()
    }

    fn square() -> SampledCurve {
        SampledCurve::new_closed(vec![
            crate::geom::Point2::new(0.0, 0.0),
            crate::geom::Point2::new(1.0, 0.0),
            crate::geom::Point2::new(1.0, 1.0),
            crate::geom::Point2::new(0.0, 1.0),
        ])
        .unwrap()
    }

    fn point_near(curve: &SampledCurve, target: crate::geom::Point2) -> CurvePoint {
        let idx = crate::index::SegmentIndex::build(curve);
        let near = idx.nearest(target);
        let s = curve.cum_length()[near.segment] + near.t * curve.segment_length(near.segment);
        curve.point_at(s).unwrap()
    }

    #[test]
    fn straightest_arc_short_circle_arc() {
        let c = circle(1.0, 4096);
        let a = c.point_at(0.05).unwrap();
        let b = c.point_at(0.35).unwrap();
        let res = straightest_arc(&c, a, b, 1.0).unwrap();
        assert!((res.turn - 0.3).abs() < 1e-2, "turn {}", res.turn);
        assert!(!res.ambiguous);
    }

    #[test]
    fn straightest_arc_antipodal_fails() {
        let c = circle(1.0, 4096);
        let l = c.total_length();
        let a = c.point_at(0.0).unwrap();
        let b = c.point_at(l / 2.0 - 0.05).unwrap();
        assert_eq!(straightest_arc(&c, a, b, 2.1), Err(Error::NoStraightArc));
        // Chord below sqrt(2): the quarter-arc side qualifies.
        let b = c.point_at(l / 4.0).unwrap();
        let res = straightest_arc(&c, a, b, 1.5).unwrap();
        assert!((res.turn - PI / 2.0).abs() < 1e-2);
    }

    #[test]
    fn straightest_arc_rejects_far_pairs() {
        let c = circle(1.0, 512);
        let a = c.point_at(0.0).unwrap();
        let b = c.point_at(1.0).unwrap();
        assert!(matches!(
            straightest_arc(&c, a, b, 0.1),
            Err(Error::DeltaExceeded { .. })
        ));
    }

    #[test]
    fn straightest_arc_on_square_edge() {
        let sq = square().resample(400).unwrap();
        let a = sq.point_at(0.2).unwrap();
        let b = sq.point_at(0.7).unwrap();
        let res = straightest_arc(&sq, a, b, 1.0).unwrap();
        assert!(res.turn.abs() < 1e-12);
        assert!((sq.range_length(res.range) - 0.5).abs() < 1e-9);
    }

    #[test]
    fn straightest_arc_circle_cross_law() {
        // Closed form on the circle: turn = 2 asin(chord / 2r).
        let r = 2.0;
        let c = circle(r, 4096);
        let l = c.total_length();
        let mut rng_state = 11u64;
        let mut next = move || {
            rng_state = rng_state.wrapping_mul(6364136223846793005).wrapping_add(1);
            (rng_state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..200 {
            let s0 = next() * l;
            let s1 = s0 + (0.02 + 0.23 * next()) * l; // short arc side
            let a = c.point_at(s0).unwrap();
            let b = c.point_at(s1).unwrap();
            let chord = a.position.distance(b.position);
            if chord >= r * std::f64::consts::SQRT_2 * 0.98 {
                continue;
            }
            let res = straightest_arc(&c, a, b, 2.0 * r).unwrap();
            let oracle = 2.0 * (chord / (2.0 * r)).asin();
            assert!(
                (res.turn - oracle).abs() < 0.01 * oracle.max(0.05),
                "turn {} oracle {oracle}",
                res.turn
            );
        }
    }

    #[test]
    fn max_delta_circle_matches_closed_form() {
        let c = circle(1.0, 2048);
        let report = max_delta(&c, PI / 2.0).unwrap();
        let oracle = 2.0 * (PI / 4.0).sin(); // sqrt(2)
        assert!(
            (report.delta - oracle).abs() < 0.02 * oracle,
            "delta {}",
            report.delta
        );
        assert!(!report.capped_at_diameter);
        // The witness chord subtends just over a quarter turn on the short
        // side.
        let (a, b) = report.witness_pair.unwrap();
        let arc = (b.s - a.s).rem_euclid(c.total_length());
        let short = arc.min(c.total_length() - arc);
        assert!((short - PI / 2.0).abs() < 0.02);
    }

    #[test]
    fn max_delta_bone_is_gap_driven() {
        let report = max_delta(&bone(4096), PI / 2.0).unwrap();
        assert!(
            (report.delta - 0.5).abs() < 0.05 * 0.5,
            "delta {}",
            report.delta
        );
        // Doubled-resolution oracle agrees.
        let fine = max_delta(&bone(8192), PI / 2.0).unwrap();
        assert!((report.delta - fine.delta).abs() < report.sampling_slack);
        // Witness straddles the central gap.
        let (a, b) = report.witness_pair.unwrap();
        assert!(a.position.x.abs() < 0.2 && b.position.x.abs() < 0.2);
        assert!((a.position.y + b.position.y).abs() < 0.1);
    }

    #[test]
    fn max_delta_hexagon_is_edge_driven() {
        // Both arcs exceed pi/2 once the short side spans two corners
        // (2pi/3 > pi/2), so the infimum chord is one edge length. A scan at
        // doubled resolution is the oracle.
        let hex = |n: usize| {
            generate(&CurveSpec {
                family: Family::RegularNGon {
                    sides: 6,
                    circumradius: 1.0,
                },
                samples: n,
            })
            .unwrap()
        };
        let coarse = max_delta(&hex(1536), PI / 2.0).unwrap();
        let fine = max_delta(&hex(3072), PI / 2.0).unwrap();
        assert!(!coarse.capped_at_diameter);
        assert!(coarse.delta >= 1.0 - 1e-9);
        assert!(coarse.delta <= 1.0 + 2.0 * coarse.sampling_slack);
        assert!((coarse.delta - fine.delta).abs() <= coarse.sampling_slack);
    }

    #[test]
    fn max_delta_caps_at_diameter_for_theta_pi() {
        // Both arcs can never simultaneously exceed pi of turn around a
        // convex curve's 2pi total.
        let c = circle(1.0, 1024);
        let report = max_delta(&c, PI).unwrap();
        assert!(report.capped_at_diameter);
        assert!((report.delta - 2.0).abs() < 1e-4);
        assert!(report.witness_pair.is_none());
    }

    #[test]
    fn max_delta_consistency_invariant() {
        // For pairs closer than the reported delta, at least one arc turns
        // no more than theta + tol.
        let c = bone(1024);
        let theta = PI / 2.0;
        let report = max_delta(&c, theta).unwrap();
        let prefix = TurnPrefix::build(&c);
        let mut rng_state = 99u64;
        let mut next = move || {
            rng_state = rng_state.wrapping_mul(6364136223846793005).wrapping_add(1);
            (rng_state >> 33) as usize
        };
        let n = c.vertex_count();
        for _ in 0..10_000 {
            let i = next() % n;
            let j = next() % n;
            if i == j {
                continue;
            }
            let d = c.vertices()[i].distance(c.vertices()[j]);
            if d < report.delta {
                let t1 = prefix.arc_turn_vertices(i, j);
                let t2 = prefix.total() - t1 - prefix.angle(i) - prefix.angle(j);
                assert!(
                    t1.min(t2) <= theta + DEFAULT_TURN_CMP_TOL,
                    "pair ({i},{j}) d={d}"
                );
            }
        }
    }

    #[test]
    fn lipschitz_circle() {
        let c = circle(2.0, 4096);
        let rep = lipschitz_constant(&c, default_min_len(&c)).unwrap();
        assert!((rep.k - 0.5).abs() < 0.01 * 0.5, "k {}", rep.k);
    }

    #[test]
    fn lipschitz_square_is_infinite() {
        let rep = lipschitz_constant(&square(), 0.1).unwrap();
        assert!(!rep.is_finite());
        assert!(rep.corner.is_some());
    }

    #[test]
    fn lipschitz_bone() {
        let c = bone(8192);
        let rep = lipschitz_constant(&c, default_min_len(&c)).unwrap();
        assert!((rep.k - 1.0).abs() < 0.02, "k {}", rep.k);
        let range = rep.witness_range.unwrap();
        let turn = crate::turn::arc_turn(&c, range).unwrap();
        let len = c.range_length(range);
        assert!((turn / len - rep.k).abs() < 1e-6 * rep.k);
    }

    #[test]
    fn lipschitz_scaling_law() {
        // Under a similarity with scale lambda the constant scales by
        // 1/lambda.
        let c = bone(2048);
        let rep = lipschitz_constant(&c, default_min_len(&c)).unwrap();
        let scaled_pts = fixtures::similarity(
            c.vertices(),
            0.37,
            2.5,
            crate::geom::Vector2::new(10.0, -3.0),
        );
        let scaled = SampledCurve::new_closed(scaled_pts).unwrap();
        let rep2 = lipschitz_constant(&scaled, default_min_len(&scaled)).unwrap();
        let defect = (rep2.k - rep.k / 2.5).abs() / (rep.k / 2.5);
        assert!(defect < 1e-6, "defect {defect}");
    }

    #[test]
    fn lipschitz_bound_holds_on_scanned_subarcs() {
        let c = circle(1.5, 512);
        let rep = lipschitz_constant(&c, default_min_len(&c)).unwrap();
        let prefix = TurnPrefix::build(&c);
        let cum = c.cum_length();
        let total = c.total_length();
        for i in (0..512).step_by(7) {
            for j in (0..512).step_by(11) {
                if i == j {
                    continue;
                }
                let len = (cum[j] - cum[i]).rem_euclid(total);
                if len < rep.min_arc_length_used {
                    continue;
                }
                let turn = prefix.arc_turn_vertices(i, j);
                assert!(turn <= rep.k * len + DEFAULT_TURN_CMP_TOL);
            }
        }
    }

    #[test]
    fn connectivity_on_circle_and_bone() {
        let c = circle(1.0, 2048);
        let a = c.point_at(1.0).unwrap();
        assert!(local_connectivity_check(&c, a, 0.5));

        let b = bone(4096);
        let a = point_near(&b, crate::geom::Point2::new(0.0, 0.25));
        assert!(a.position.distance(crate::geom::Point2::new(0.0, 0.25)) < 1e-3);
        // Disk larger than the gap sees the opposite wall: two runs.
        assert!(!local_connectivity_check(&b, a, 0.6));
        // Disk smaller than the gap stays on one wall.
        assert!(local_connectivity_check(&b, a, 0.25));
    }

    #[test]
    fn monotonicity_on_circle_convex_and_hairpin() {
        let c = circle(1.0, 2048);
        let a = c.point_at(0.7).unwrap();
        assert!(distance_monotonicity_check(&c, a, 1.0));

        let conv = SampledCurve::new_closed(fixtures::random_convex_polygon(
            &mut fixtures::rng(5),
            24,
        ))
        .unwrap()
        .resample(1024)
        .unwrap();
        let a = conv.point_at(0.3).unwrap();
        assert!(distance_monotonicity_check(&conv, a, 1.0));

        // Hairpin: opposite wall far below the probe scale.
        let hp = fixtures::stadium(10.0, 0.4, 4096).unwrap();
        let a = point_near(&hp, crate::geom::Point2::new(4.0, -0.2));
        assert!(!distance_monotonicity_check(&hp, a, 4.0));
    }
}
