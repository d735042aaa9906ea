//! Osculating-disk regularity and reach estimation.
//!
//! A curve is regular at radius `r` when every point carries an inside and
//! an outside tangent disk of radius `r` meeting the curve only at that
//! point. At sample resolution the "only at that point" clause can only be
//! certified up to a clearance tolerance `tau_osc` (sagitta-scaled, see
//! [`tau_osc`]), which every report carries.

use serde::{Deserialize, Serialize};

use crate::curve::{CurvePoint, SampledCurve};
use crate::error::{Error, Result};
use crate::geom::{Point2, PointLocation, Vector2};
use crate::index::SegmentIndex;
use crate::ltb::DEFAULT_THETA_AP;
use crate::turn::angular_points;

/// Near-tangential rejection threshold for the pairwise reach formula.
pub const DEFAULT_TAU_REACH: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiskSide {
    Inside,
    Outside,
}

/// One failed osculating-disk test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OsculatingFailure {
    pub s: f64,
    pub side: DiskSide,
    /// Distance from the failing disk center to the curve (containment
    /// failures always come with clearance below `r`: the center crossed
    /// the curve on its way to the wrong region).
    pub clearance: f64,
}

/// Outcome of the osculating-disk sweep at one radius.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OsculatingReport {
    pub r: f64,
    pub ok: bool,
    pub failures: Vec<OsculatingFailure>,
    /// Clearance tolerance used (see [`tau_osc`]).
    pub tau_osc: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReachMethod {
    PairwiseFederer,
    OsculatingBisection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ReachWitness {
    Pair(CurvePoint, CurvePoint),
    Center { point: CurvePoint, center: Point2 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReachReport {
    pub reach: f64,
    pub method: ReachMethod,
    pub witness: ReachWitness,
    pub resolution: usize,
}

pub(crate) fn inward_normal_fast(curve: &SampledCurve, i: usize) -> Result<Vector2> {
    let n = curve.vertex_count();
    let prev = curve.vertices()[(i + n - 1) % n];
    let next = curve.vertices()[(i + 1) % n];
    let tangent = prev.to(next);
    if tangent.is_zero() {
        return Err(Error::DegenerateTangent(i));
    }
    let left = tangent.perp().normalized()?;
    Ok(if curve.is_ccw() { left } else { left.scale(-1.0) })
}

/// Unit normal at vertex `i`, oriented toward the interior. The orientation
/// comes from the stored ring orientation and is double-checked by
/// classifying a short probe point.
pub fn normal_at(curve: &SampledCurve, i: usize) -> Result<Vector2> {
    if !curve.is_closed() {
        return Err(Error::OpenCurve);
    }
    let normal = inward_normal_fast(curve, i)?;
    let spacing = curve
        .segment_length(i)
        .min(curve.segment_length((i + curve.vertex_count() - 1) % curve.vertex_count()));
    let probe = curve.vertices()[i].translate(normal.scale(0.25 * spacing));
    match crate::geom::point_in_closed_polygon(
        probe,
        curve.vertices(),
        1e-12 * curve.total_length(),
        true,
    )? {
        PointLocation::Inside => Ok(normal),
        PointLocation::Outside => Ok(normal.scale(-1.0)),
        PointLocation::OnBoundary => Err(Error::DegenerateTangent(i)),
    }
}

/// Clearance tolerance for disks of radius `r`: twice the worst chord
/// sagitta a disk of that radius can see on this sampling.
///
/// A spacing-proportional tolerance is far too lax near smooth tangency:
/// the clearance deficit of a slightly-too-large disk grows only
/// quadratically in the radius excess, so a tolerance of `2 h` would let
/// the bisection overshoot the reach by `O(sqrt(r h))`. The inscribed
/// polyline sags below the analytic curve by at most `h^2 kappa / 8`, and
/// disks that fit have `r <= 1/kappa`, so `2 h^2 / r` safely covers the
/// discretization while staying sharp.
pub fn tau_osc(curve: &SampledCurve, r: f64) -> f64 {
    let h = curve.max_spacing();
    2.0 * h * h / r + 1e-12 * curve.total_length()
}

/// Sweeps every vertex placing inside and outside disk centers of radius
/// `r` along the estimated normal, and verifies that each disk (i) keeps
/// clearance at least `r - tau_osc` from the whole curve and (ii) lies
/// strictly in the correct region. Failures are recorded with their worst
/// clearance.
pub fn par_regular_check(curve: &SampledCurve, r: f64) -> Result<OsculatingReport> {
    if !r.is_finite() || r <= 0.0 {
        return Err(Error::InvalidRadius(r));
    }
    if !curve.is_closed() {
        return Err(Error::OpenCurve);
    }
    let tau = tau_osc(curve, r);
    let index = SegmentIndex::build(curve);
    let tau_b = 1e-12 * curve.total_length();
    let mut failures = Vec::new();
    for i in 0..curve.vertex_count() {
        let a = curve.vertices()[i];
        let normal = inward_normal_fast(curve, i)?;
        for (side, dir) in [(DiskSide::Inside, 1.0), (DiskSide::Outside, -1.0)] {
            let center = a.translate(normal.scale(dir * r));
            let clearance = index.nearest(center).distance;
            let region = index.classify(center, tau_b);
            let wanted = match side {
                DiskSide::Inside => PointLocation::Inside,
                DiskSide::Outside => PointLocation::Outside,
            };
            if clearance < r - tau || region != wanted {
                failures.push(OsculatingFailure {
                    s: curve.cum_length()[i],
                    side,
                    clearance,
                });
            }
        }
    }
    Ok(OsculatingReport {
        r,
        ok: failures.is_empty(),
        failures,
        tau_osc: tau,
    })
}

/// Reach by the point-pair formula `|b - a|^2 / (2 d(b - a, tangent at a))`,
/// scanning all ordered sample pairs. Valid on curves without corners;
/// near-tangential pairs (tiny normal component) are skipped because the
/// formula degenerates there.
pub fn reach_pairwise(curve: &SampledCurve) -> Result<ReachReport> {
    if !curve.is_closed() {
        return Err(Error::OpenCurve);
    }
    if !angular_points(curve, DEFAULT_THETA_AP).is_empty() {
        return Err(Error::CornerPresent);
    }
    let n = curve.vertex_count();
    let verts = curve.vertices();
    let mut tangents = Vec::with_capacity(n);
    for i in 0..n {
        let prev = verts[(i + n - 1) % n];
        let next = verts[(i + 1) % n];
        tangents.push(
            prev.to(next)
                .normalized()
                .map_err(|_| Error::DegenerateTangent(i))?,
        );
    }
    let mut best = f64::INFINITY;
    let mut witness = (0usize, 0usize);
    for i in 0..n {
        let t = tangents[i];
        let a = verts[i];
        for (j, b) in verts.iter().enumerate() {
            if i == j {
                continue;
            }
            let v = a.to(*b);
            let d_perp = t.cross(v).abs();
            if d_perp < DEFAULT_TAU_REACH {
                continue;
            }
            let rho = v.dot(v) / (2.0 * d_perp);
            if rho < best {
                best = rho;
                witness = (i, j);
            }
        }
    }
    if !best.is_finite() {
        return Err(Error::DegenerateTangent(0));
    }
    Ok(ReachReport {
        reach: best,
        method: ReachMethod::PairwiseFederer,
        witness: ReachWitness::Pair(
            curve.vertex_point(witness.0),
            curve.vertex_point(witness.1),
        ),
        resolution: n,
    })
}

/// Reach by bisection of `par_regular_check` between a passing radius
/// `r_lo` and a failing radius `r_hi`.
///
/// When the check already fails at an `r_lo` within the discretization
/// floor (ten sample spacings), the reach is reported as zero: corners
/// kill regularity at every measurable radius.
pub fn reach_bisection(
    curve: &SampledCurve,
    r_lo: f64,
    r_hi: f64,
    tol: f64,
) -> Result<ReachReport> {
    let bracket_valid = r_lo.is_finite() && tol.is_finite() && r_lo > 0.0 && r_hi > r_lo && tol > 0.0;
    if !bracket_valid {
        return Err(Error::BadBracket(format!(
            "need 0 < r_lo < r_hi and tol > 0, got [{r_lo}, {r_hi}], tol {tol}"
        )));
    }
    let n = curve.vertex_count();
    let witness_center = |fail: &OsculatingFailure, r: f64| -> Result<ReachWitness> {
        let point = curve.point_at(fail.s)?;
        let sign = if fail.side == DiskSide::Inside { r } else { -r };
        let center = point
            .position
            .translate(inward_normal_fast(curve, point.index_hint)?.scale(sign));
        Ok(ReachWitness::Center { point, center })
    };
    let low_report = par_regular_check(curve, r_lo)?;
    if !low_report.ok {
        if r_lo <= 10.0 * curve.max_spacing() {
            let witness = witness_center(&low_report.failures[0], r_lo)?;
            return Ok(ReachReport {
                reach: 0.0,
                method: ReachMethod::OsculatingBisection,
                witness,
                resolution: n,
            });
        }
        return Err(Error::BadBracket(format!(
            "check already fails at r_lo = {r_lo}"
        )));
    }
    let hi_report = par_regular_check(curve, r_hi)?;
    if hi_report.ok {
        return Err(Error::BadBracket(format!(
            "check still passes at r_hi = {r_hi}"
        )));
    }
    let mut lo = r_lo;
    let mut hi = r_hi;
    let mut fail = hi_report.failures[0];
    let mut fail_r = r_hi;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let rep = par_regular_check(curve, mid)?;
        if rep.ok {
            lo = mid;
        } else {
            fail = rep.failures[0];
            fail_r = mid;
            hi = mid;
        }
    }
    Ok(ReachReport {
        reach: 0.5 * (lo + hi),
        method: ReachMethod::OsculatingBisection,
        witness: witness_center(&fail, fail_r)?,
        resolution: n,
    })
}

/// Bisection reach with the bracket derived from the pairwise estimate:
/// starts at `[reach/4, 2.5 reach]` and expands each end a few times if the
/// check disagrees.
pub fn reach_bisection_auto(curve: &SampledCurve, tol: f64) -> Result<ReachReport> {
    let pw = reach_pairwise(curve)?;
    let mut lo = 0.25 * pw.reach;
    let mut hi = 2.5 * pw.reach;
    for _ in 0..8 {
        if par_regular_check(curve, lo)?.ok {
            break;
        }
        lo *= 0.5;
    }
    for _ in 0..8 {
        if !par_regular_check(curve, hi)?.ok {
            break;
        }
        hi *= 2.0;
    }
    reach_bisection(curve, lo, hi, tol)
}
