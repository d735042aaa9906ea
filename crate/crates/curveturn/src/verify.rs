//! The verification harness: numerical checks of the inequalities tying
//! turn, local turn bounds, Lipschitz turn, osculating regularity and reach
//! together, each packaged as a claim report with the measured slack and the
//! worst witness.
//!
//! Every check first re-establishes its own hypotheses with the library's
//! estimators and reports a hypothesis failure rather than a vacuous pass.

use serde::{Deserialize, Serialize};

use crate::curve::{ArcRange, CurvePoint, SampledCurve};
use crate::error::{Error, Result};
use crate::geom::{segments_intersect, Point2, PointLocation};
use crate::index::SegmentIndex;
use crate::ltb::{
    default_min_len, lipschitz_constant, max_delta, straightest_arc, DEFAULT_TURN_CMP_TOL,
};
use crate::regularity::{par_regular_check, reach_bisection_auto, reach_pairwise, ReachWitness};
use crate::turn::{is_chain, polyline_turn, TurnPrefix};

/// Default slack tolerance for inequality claims.
pub const DEFAULT_VERIFY_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimStatus {
    Holds,
    Violated,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedValue {
    pub name: String,
    pub value: f64,
}

fn nv(name: &str, value: f64) -> NamedValue {
    NamedValue {
        name: name.to_string(),
        value,
    }
}

/// Worst-case witness of a claim: points involved and named measurements.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct Witness {
    pub description: String,
    pub points: Vec<CurvePoint>,
    pub values: Vec<NamedValue>,
}

/// Resolutions and tolerances a claim ran under.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub samples: usize,
    pub tol: f64,
    pub named: Vec<NamedValue>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: String,
    pub status: ClaimStatus,
    pub holds: bool,
    pub measured_slack: f64,
    pub worst_witness: Witness,
    pub config: VerifyConfig,
}

impl VerificationReport {
    fn new(
        claim: &str,
        status: ClaimStatus,
        slack: f64,
        witness: Witness,
        config: VerifyConfig,
    ) -> Self {
        VerificationReport {
            claim: claim.to_string(),
            status,
            holds: status == ClaimStatus::Holds,
            measured_slack: slack,
            worst_witness: witness,
            config,
        }
    }
}

fn status_of(slack: f64, tol: f64) -> ClaimStatus {
    if slack >= -tol {
        ClaimStatus::Holds
    } else {
        ClaimStatus::Violated
    }
}

/// The radial projection of a convex inner polyline onto the curve arc.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectionChain {
    pub source_vertices: Vec<Point2>,
    /// The chain `[a, q_1, .., q_m, b]` on the arc.
    pub projected: Vec<CurvePoint>,
    pub center: Point2,
}

fn convex_ring(points: &[Point2]) -> bool {
    let n = points.len();
    if n < 3 {
        return false;
    }
    let mut sign = 0.0f64;
    for i in 0..n {
        let a = points[i];
        let b = points[(i + 1) % n];
        let c = points[(i + 2) % n];
        let cross = a.to(b).cross(b.to(c));
        if cross.abs() < 1e-12 {
            continue;
        }
        if sign == 0.0 {
            sign = cross.signum();
        } else if cross.signum() != sign {
            return false;
        }
    }
    true
}

fn chord_clear_of_arc(arc: &SampledCurve, a: Point2, b: Point2) -> bool {
    // Shrink the chord slightly so the shared endpoints do not count.
    let a_in = a.lerp(b, 1e-7);
    let b_in = a.lerp(b, 1.0 - 1e-7);
    for i in 0..arc.segment_count() {
        let (p, q) = arc.segment(i);
        if segments_intersect(a_in, b_in, p, q) {
            return false;
        }
    }
    true
}

/// Projects the interior vertices of `inner` (a convex polyline from the
/// arc's start to its end) onto the arc along rays from `c`, returning the
/// resulting chain `[a, q_1, .., q_m, b]`.
pub fn project_chain(
    arc: &SampledCurve,
    inner: &[Point2],
    c: Point2,
) -> Result<ProjectionChain> {
    if arc.is_closed() {
        return Err(Error::GeometryPreconditionFailed(
            "projection needs an open arc".to_string(),
        ));
    }
    if inner.len() < 2 {
        return Err(Error::GeometryPreconditionFailed(
            "inner polyline needs endpoints".to_string(),
        ));
    }
    let a = arc.vertices()[0];
    let b = *arc.vertices().last().unwrap();
    let scale = arc.total_length().max(1.0);
    if inner[0].distance(a) > 1e-7 * scale || inner.last().unwrap().distance(b) > 1e-7 * scale {
        return Err(Error::GeometryPreconditionFailed(
            "inner polyline endpoints must coincide with the arc endpoints".to_string(),
        ));
    }
    // c strictly interior to (a, b).
    let ab = a.to(b);
    let t = a.to(c).dot(ab) / ab.dot(ab);
    if !(t > 1e-9 && t < 1.0 - 1e-9)
        || crate::geom::point_segment_distance(c, a, b) > 1e-7 * scale
    {
        return Err(Error::GeometryPreconditionFailed(
            "center must lie strictly inside the chord".to_string(),
        ));
    }
    if !chord_clear_of_arc(arc, a, b) {
        return Err(Error::GeometryPreconditionFailed(
            "chord meets the arc away from its endpoints".to_string(),
        ));
    }
    // Two points form the bare chord; nothing to project and nothing to be
    // convex about.
    if inner.len() > 2 && !convex_ring(inner) {
        return Err(Error::NotConvexInner);
    }
    let index = SegmentIndex::build(arc);
    let mut projected = Vec::with_capacity(inner.len());
    projected.push(arc.vertex_point(0));
    for p in &inner[1..inner.len() - 1] {
        let dir = c.to(*p);
        if dir.is_zero() {
            return Err(Error::GeometryPreconditionFailed(
                "inner vertex coincides with the center".to_string(),
            ));
        }
        let (_, seg, t_seg) = index
            .ray_first_hit(c, dir, 1e-12)
            .ok_or(Error::NoIntersection)?;
        let s = arc.cum_length()[seg] + t_seg * arc.segment_length(seg);
        projected.push(arc.point_at(s)?);
    }
    projected.push(arc.vertex_point(arc.vertex_count() - 1));
    if projected.len() >= 3 && !is_chain(&projected, arc)? {
        return Err(Error::ChainViolation);
    }
    Ok(ProjectionChain {
        source_vertices: inner.to_vec(),
        projected,
        center: c,
    })
}

/// Checks that the arc of the curve from `a` to `b` (forward) turns at
/// least as much as an inscribed circle arc of radius `r_circ` through the
/// same endpoints: `slack = turn(arc) - 2 asin(|b-a| / 2 r_circ)`.
pub fn verify_turn_containment(
    curve: &SampledCurve,
    a: CurvePoint,
    b: CurvePoint,
    r_circ: f64,
    tol: f64,
) -> Result<VerificationReport> {
    let d = a.position.distance(b.position);
    if !r_circ.is_finite() || d <= 0.0 || d >= 2.0 * r_circ {
        return Err(Error::GeometryPreconditionFailed(format!(
            "need 0 < chord < 2 r_circ, got chord {d}, r_circ {r_circ}"
        )));
    }
    let arc = curve.subarc(ArcRange::new(a.s, b.s))?;
    let pa = arc.vertices()[0];
    let pb = *arc.vertices().last().unwrap();
    if !chord_clear_of_arc(&arc, pa, pb) {
        return Err(Error::GeometryPreconditionFailed(
            "chord meets the arc away from its endpoints".to_string(),
        ));
    }
    // Inscribed circle arc: minor arc through a, b bulging toward the curve
    // arc's side, center on the opposite side of the chord.
    let mid = pa.lerp(pb, 0.5);
    let half = d / 2.0;
    let h = (r_circ * r_circ - half * half).sqrt();
    let n_hat = pa.to(pb).perp().normalized()?;
    let arc_mid = arc.point_at(arc.total_length() / 2.0)?.position;
    let side = pa.to(pb).cross(pa.to(arc_mid)).signum();
    let center = mid.translate(n_hat.scale(-side * h));
    // Containment of the inner arc in the Jordan region bounded by the arc
    // and the chord, at sample resolution. The inscribed polyline can clip
    // the true analytic arc by up to one chord sagitta, hence the band.
    let ring: Vec<Point2> = arc.vertices().to_vec();
    let band = arc.max_spacing().powi(2) / r_circ + 1e-12 * curve.total_length();
    let start_angle = {
        let v = center.to(pa);
        v.dy.atan2(v.dx)
    };
    let sweep = {
        let v0 = center.to(pa);
        let v1 = center.to(pb);
        let raw = v1.dy.atan2(v1.dx) - v0.dy.atan2(v0.dx);
        // Minor arc: magnitude below pi, oriented from a to b.
        let mut s = raw;
        while s > std::f64::consts::PI {
            s -= 2.0 * std::f64::consts::PI;
        }
        while s < -std::f64::consts::PI {
            s += 2.0 * std::f64::consts::PI;
        }
        s
    };
    for k in 1..128 {
        let phi = start_angle + sweep * k as f64 / 128.0;
        let p = Point2::new(center.x + r_circ * phi.cos(), center.y + r_circ * phi.sin());
        let loc = crate::geom::point_in_closed_polygon(p, &ring, band, true)?;
        if loc == PointLocation::Outside {
            return Err(Error::GeometryPreconditionFailed(format!(
                "inscribed circle arc leaves the Jordan region at sample {k}"
            )));
        }
    }
    let arc_turn = polyline_turn(arc.vertices())?;
    let circ_turn = 2.0 * (d / (2.0 * r_circ)).asin();
    let slack = arc_turn - circ_turn;
    let witness = Witness {
        description: "curve arc turn vs inscribed circle arc turn".to_string(),
        points: vec![a, b],
        values: vec![
            nv("arc_turn", arc_turn),
            nv("circle_arc_turn", circ_turn),
            nv("chord", d),
            nv("r_circ", r_circ),
        ],
    };
    let config = VerifyConfig {
        samples: curve.vertex_count(),
        tol,
        named: vec![nv("containment_band", band)],
    };
    Ok(VerificationReport::new(
        "turn-containment",
        status_of(slack, tol),
        slack,
        witness,
        config,
    ))
}

/// Chord comparison against the reference circle arc of the same length:
/// an arc with turn no faster than `1/r_ref` must end at least as far from
/// its start as the circle arc does.
pub fn verify_schur(curve_arc: &SampledCurve, r_ref: f64, tol: f64) -> Result<VerificationReport> {
    if curve_arc.is_closed() {
        return Err(Error::GeometryPreconditionFailed(
            "schur check needs an open arc".to_string(),
        ));
    }
    let len = curve_arc.total_length();
    if len > std::f64::consts::PI * r_ref * (1.0 + 1e-9) {
        return Err(Error::HypothesisFailed(format!(
            "arc length {len} exceeds pi * r_ref = {}",
            std::f64::consts::PI * r_ref
        )));
    }
    let lip = lipschitz_constant(curve_arc, default_min_len(curve_arc))?;
    if !lip.is_finite() || lip.k > 1.0 / r_ref + tol {
        return Err(Error::LipschitzHypothesisFailed(format!(
            "arc Lipschitz constant {} exceeds 1/r_ref = {}",
            lip.k,
            1.0 / r_ref
        )));
    }
    let a = curve_arc.vertices()[0];
    let b = *curve_arc.vertices().last().unwrap();
    let chord = a.distance(b);
    let reference = 2.0 * r_ref * (len / (2.0 * r_ref)).sin();
    let slack = chord - reference;
    let witness = Witness {
        description: "arc chord vs reference circle arc chord".to_string(),
        points: vec![
            curve_arc.vertex_point(0),
            curve_arc.vertex_point(curve_arc.vertex_count() - 1),
        ],
        values: vec![
            nv("chord", chord),
            nv("reference_chord", reference),
            nv("arc_length", len),
            nv("r_ref", r_ref),
            nv("arc_lipschitz", lip.k),
        ],
    };
    let config = VerifyConfig {
        samples: curve_arc.vertex_count(),
        tol,
        named: vec![nv("min_arc_length", lip.min_arc_length_used)],
    };
    Ok(VerificationReport::new(
        "schur",
        status_of(slack, tol),
        slack,
        witness,
        config,
    ))
}

/// Straightest-arc length bound: for every sampled pair closer than `2r`,
/// the straightest arc is no longer than `2r asin(|b-a| / 2r)`.
pub fn verify_length_bound(
    curve: &SampledCurve,
    r: f64,
    tol: f64,
) -> Result<VerificationReport> {
    let ltb = max_delta(curve, std::f64::consts::FRAC_PI_2)?;
    if ltb.delta < 2.0 * r {
        return Err(Error::HypothesisFailed(format!(
            "need delta >= 2r: measured delta {} < {}",
            ltb.delta,
            2.0 * r
        )));
    }
    let lip = lipschitz_constant(curve, default_min_len(curve))?;
    if !lip.is_finite() || lip.k > 1.0 / r + tol {
        return Err(Error::LipschitzHypothesisFailed(format!(
            "Lipschitz constant {} exceeds 1/r = {}",
            lip.k,
            1.0 / r
        )));
    }
    let prefix = TurnPrefix::build(curve);
    let cum = curve.cum_length();
    let total = curve.total_length();
    let verts = curve.vertices();
    let n = curve.vertex_count();
    let limit = std::f64::consts::FRAC_PI_2 + DEFAULT_TURN_CMP_TOL;
    let mut worst = f64::INFINITY;
    let mut worst_pair = (0usize, 0usize);
    let mut checked = 0usize;
    for i in 0..n {
        for j in (i + 1)..n {
            let d = verts[i].distance(verts[j]);
            if d >= 2.0 * r {
                continue;
            }
            let t_fwd = prefix.arc_turn_vertices(i, j);
            let len_fwd = (cum[j] - cum[i]).rem_euclid(total);
            let (len_sa, ok) = if t_fwd <= limit {
                (len_fwd, true)
            } else {
                let t_bwd = prefix.total() - t_fwd - prefix.angle(i) - prefix.angle(j);
                (total - len_fwd, t_bwd <= limit)
            };
            if !ok {
                // No straightest arc although d < 2r <= delta: the LTB scan
                // at this resolution disagrees; report as a violation.
                worst = f64::NEG_INFINITY;
                worst_pair = (i, j);
                continue;
            }
            checked += 1;
            let bound = 2.0 * r * (d / (2.0 * r)).asin();
            let slack = bound - len_sa;
            if slack < worst {
                worst = slack;
                worst_pair = (i, j);
            }
        }
    }
    if !worst.is_finite() && worst > 0.0 {
        return Err(Error::HypothesisFailed(
            "no pair closer than 2r at this resolution".to_string(),
        ));
    }
    let witness = Witness {
        description: "pair with least slack in the straightest-arc length bound".to_string(),
        points: vec![
            curve.vertex_point(worst_pair.0),
            curve.vertex_point(worst_pair.1),
        ],
        values: vec![
            nv("pairs_checked", checked as f64),
            nv("delta", ltb.delta),
            nv("lipschitz_k", lip.k),
            nv("r", r),
        ],
    };
    let config = VerifyConfig {
        samples: n,
        tol,
        named: vec![nv("sampling_slack", ltb.sampling_slack)],
    };
    Ok(VerificationReport::new(
        "length-bound",
        status_of(worst, tol),
        worst,
        witness,
        config,
    ))
}

/// Forward direction: a curve passing the osculating-disk check at radius
/// `r` must be locally turn bounded at scale `2 r sin(theta/2)` and have
/// Lipschitz turn at most `1/r`.
pub fn verify_forward(
    curve: &SampledCurve,
    r: f64,
    theta: f64,
    tol: f64,
) -> Result<VerificationReport> {
    let reg = par_regular_check(curve, r)?;
    if !reg.ok {
        let f = reg.failures[0];
        return Err(Error::HypothesisFailed(format!(
            "osculating check fails at r = {r} (s = {}, clearance = {})",
            f.s, f.clearance
        )));
    }
    let ltb = max_delta(curve, theta)?;
    let bound = 2.0 * r * (theta / 2.0).sin();
    let delta_margin = ltb.delta - (bound - ltb.sampling_slack);
    let lip = lipschitz_constant(curve, default_min_len(curve))?;
    let k_margin = 1.0 / r + tol - lip.k;
    let slack = delta_margin.min(k_margin);
    let witness = Witness {
        description: "margins of the LTB scale and Lipschitz bounds".to_string(),
        points: ltb
            .witness_pair
            .map(|(a, b)| vec![a, b])
            .unwrap_or_default(),
        values: vec![
            nv("delta", ltb.delta),
            nv("delta_bound", bound),
            nv("delta_margin", delta_margin),
            nv("lipschitz_k", lip.k),
            nv("k_bound", 1.0 / r),
            nv("k_margin", k_margin),
        ],
    };
    let config = VerifyConfig {
        samples: curve.vertex_count(),
        tol,
        named: vec![
            nv("sampling_slack", ltb.sampling_slack),
            nv("theta", theta),
            nv("r", r),
        ],
    };
    Ok(VerificationReport::new(
        "forward",
        status_of(slack, 0.0),
        slack,
        witness,
        config,
    ))
}

/// Converse direction: reach at least `min(delta/2, r)`, and the
/// osculating check passes just below that bound.
pub fn verify_converse(curve: &SampledCurve, tol: f64) -> Result<VerificationReport> {
    let ltb = max_delta(curve, std::f64::consts::FRAC_PI_2)?;
    let lip = lipschitz_constant(curve, default_min_len(curve))?;
    let config_base = |named: Vec<NamedValue>| VerifyConfig {
        samples: curve.vertex_count(),
        tol,
        named,
    };
    if !lip.is_finite() {
        let witness = Witness {
            description: "corner forces an infinite Lipschitz constant; the bound is vacuous"
                .to_string(),
            points: Vec::new(),
            values: vec![nv(
                "corner_s",
                lip.corner.map(|c| c.s).unwrap_or(f64::NAN),
            )],
        };
        return Ok(VerificationReport::new(
            "converse",
            ClaimStatus::NotApplicable,
            0.0,
            witness,
            config_base(vec![nv("delta", ltb.delta)]),
        ));
    }
    let r = 1.0 / lip.k;
    let bound = (ltb.delta / 2.0).min(r);
    let pw = reach_pairwise(curve)?;
    let bis = reach_bisection_auto(curve, 0.005 * bound)?;
    let reach = pw.reach.min(bis.reach);
    let tol_combined = 0.5 * ltb.sampling_slack + 0.02 * reach + tol;
    let slack = reach - bound;
    let mut status = status_of(slack, tol_combined);
    // The claim also asserts regularity at every radius below the bound;
    // probe one ladder point just underneath.
    let r1 = 0.95 * (bound - tol_combined).max(0.5 * bound);
    let reg = par_regular_check(curve, r1)?;
    if !reg.ok && status == ClaimStatus::Holds {
        status = ClaimStatus::Violated;
    }
    let mut points = Vec::new();
    if let ReachWitness::Pair(a, b) = &pw.witness {
        points.push(*a);
        points.push(*b);
    }
    let witness = Witness {
        description: "reach estimates vs min(delta/2, r)".to_string(),
        points,
        values: vec![
            nv("delta", ltb.delta),
            nv("lipschitz_k", lip.k),
            nv("r", r),
            nv("bound", bound),
            nv("reach_pairwise", pw.reach),
            nv("reach_bisection", bis.reach),
            nv("r1_checked", r1),
            nv("r1_ok", if reg.ok { 1.0 } else { 0.0 }),
        ],
    };
    let config = config_base(vec![
        nv("tol_combined", tol_combined),
        nv("sampling_slack", ltb.sampling_slack),
    ]);
    Ok(VerificationReport::new(
        "converse",
        status,
        slack,
        witness,
        config,
    ))
}

/// The two chord inequalities from the reach bound's derivation, measured
/// on a concrete pair: `|b-a| >= 2 r1 sin(L(sa) / 2 r1)` directly, and the
/// empty-disk chain `|b-a| = 2 r' sin(k(circle arc)/2) <= 2 r' sin(k(sa)/2)`
/// when the medial witness makes it constructible (skipped with a reason
/// otherwise).
pub fn verify_eq_bounds(
    curve: &SampledCurve,
    a: CurvePoint,
    b: CurvePoint,
    r1: f64,
    tol: f64,
) -> Result<VerificationReport> {
    let lip = lipschitz_constant(curve, default_min_len(curve))?;
    if !lip.is_finite() || lip.k > 1.0 / r1 + tol {
        return Err(Error::LipschitzHypothesisFailed(format!(
            "Lipschitz constant {} exceeds 1/r1 = {}",
            lip.k,
            1.0 / r1
        )));
    }
    let ltb = max_delta(curve, std::f64::consts::FRAC_PI_2)?;
    let d = a.position.distance(b.position);
    if !r1.is_finite() || d >= 2.0 * r1 {
        return Err(Error::HypothesisFailed(format!(
            "pair distance {d} not below 2 r1 = {}",
            2.0 * r1
        )));
    }
    let sa = straightest_arc(curve, a, b, ltb.delta.min(2.0 * r1)).map_err(|e| match e {
        Error::NoStraightArc | Error::DeltaExceeded { .. } => Error::HypothesisFailed(format!(
            "no straightest arc between the pair at scale {}",
            ltb.delta.min(2.0 * r1)
        )),
        other => other,
    })?;
    let len_sa = curve.range_length(sa.range);
    let arg = (len_sa / (2.0 * r1)).min(std::f64::consts::FRAC_PI_2);
    let eq1_rhs = 2.0 * r1 * arg.sin();
    let slack1 = d - eq1_rhs;
    let mut values = vec![
        nv("chord", d),
        nv("eq1_rhs", eq1_rhs),
        nv("eq1_slack", slack1),
        nv("straightest_len", len_sa),
        nv("straightest_turn", sa.turn),
        nv("r1", r1),
    ];
    let mut slack = slack1;
    let mut description =
        "chord vs 2 r1 sin(L(sa)/2 r1); empty-disk chain skipped (no matching medial witness)"
            .to_string();
    // Empty-disk configuration: the bisection's medial witness snapped onto
    // the perpendicular bisector of the pair, so it is exactly equidistant;
    // usable only when the disk through a and b is actually empty.
    let bis = reach_bisection_auto(curve, 0.01 * r1)?;
    if let ReachWitness::Center { center: o, .. } = &bis.witness {
        let mid = a.position.lerp(b.position, 0.5);
        let bisector = a.position.to(b.position).perp().normalized()?;
        let offset = mid.to(*o).dot(bisector);
        let o_star = mid.translate(bisector.scale(offset));
        let r_prime = o_star.distance(a.position);
        let near = SegmentIndex::build(curve).nearest(o_star);
        // The open disk through a and b must be empty: allow only the
        // inscribed-polyline sagitta, or a grazing contact right at the
        // pair itself.
        let sagitta_band =
            curve.max_spacing().powi(2) / (2.0 * r_prime) + 1e-12 * curve.total_length();
        let touches_pair = near
            .point
            .distance(a.position)
            .min(near.point.distance(b.position))
            <= 3.0 * curve.max_spacing();
        let empty = near.distance >= r_prime - sagitta_band
            || (near.distance >= r_prime - 2.0 * curve.max_spacing() && touches_pair);
        if empty {
            let kappa_bar =
                crate::geom::angle_between(o_star.to(a.position), o_star.to(b.position))?;
            // Chord identity of the isoceles configuration; a defect here
            // means the construction itself went wrong.
            let identity = d - 2.0 * r_prime * (kappa_bar / 2.0).sin();
            debug_assert!(identity.abs() < 1e-9 * d.max(1.0));
            let sa_arg = (sa.turn / 2.0).min(std::f64::consts::FRAC_PI_2);
            let slack2 = 2.0 * r_prime * sa_arg.sin() - d;
            values.push(nv("r_prime", r_prime));
            values.push(nv("circle_arc_turn", kappa_bar));
            values.push(nv("eq2_identity_defect", identity.abs()));
            values.push(nv("eq2_slack", slack2));
            slack = slack.min(slack2);
            description =
                "chord vs 2 r1 sin(L(sa)/2 r1) and the empty-disk chain at the medial witness"
                    .to_string();
        }
    }
    let witness = Witness {
        description,
        points: vec![a, b],
        values,
    };
    let config = VerifyConfig {
        samples: curve.vertex_count(),
        tol,
        named: vec![nv("delta", ltb.delta), nv("lipschitz_k", lip.k)],
    };
    Ok(VerificationReport::new(
        "eq-bounds",
        status_of(slack, tol),
        slack,
        witness,
        config,
    ))
}

/// Claims the `verify all` surface runs, in order.
pub const ALL_CLAIMS: [&str; 6] = [
    "forward",
    "converse",
    "length-bound",
    "schur",
    "turn-containment",
    "eq-bounds",
];

/// Runs one named claim with deterministic fixture-derived defaults.
pub fn verify_claim(
    curve: &SampledCurve,
    claim: &str,
    tol: f64,
) -> Result<VerificationReport> {
    match claim {
        "turn-containment" => {
            let a = curve.point_at(0.0)?;
            let b = curve.point_at(curve.total_length() / 4.0)?;
            // A shallow inscribed arc stays inside the Jordan region on
            // every convex-ish fixture; equality configurations pass an
            // explicit r_circ instead.
            let r_circ = 2.0 * a.position.distance(b.position);
            verify_turn_containment(curve, a, b, r_circ, tol)
        }
        "schur" => {
            let lip = lipschitz_constant(curve, default_min_len(curve))?;
            if !lip.is_finite() {
                return Err(Error::LipschitzHypothesisFailed(
                    "curve has corners; no reference radius exists".to_string(),
                ));
            }
            // 5% headroom: the arc re-measures its own constant on fewer
            // vertices and can land a hair above the whole-curve scan.
            let r_ref = 1.0 / (1.05 * lip.k);
            let len = (0.2 * curve.total_length()).min(0.9 * std::f64::consts::PI * r_ref);
            let start = 0.05 * curve.total_length();
            let arc = curve.subarc(ArcRange::new(start, start + len))?;
            verify_schur(&arc, r_ref, tol)
        }
        "length-bound" => {
            let r = default_length_bound_radius(curve)?;
            verify_length_bound(curve, r, tol)
        }
        "forward" => {
            let r = match reach_pairwise(curve) {
                Ok(rep) => 0.9 * rep.reach,
                // Corners: probe at the LTB half-scale; the osculating
                // check will report the hypothesis failure.
                Err(Error::CornerPresent) => {
                    0.45 * max_delta(curve, std::f64::consts::FRAC_PI_2)?.delta
                }
                Err(e) => return Err(e),
            };
            verify_forward(curve, r, std::f64::consts::FRAC_PI_2, tol)
        }
        "converse" => verify_converse(curve, tol),
        "eq-bounds" => {
            let r1 = default_length_bound_radius(curve)?;
            let (a, b) = default_eq_pair(curve, r1)?;
            verify_eq_bounds(curve, a, b, r1, tol)
        }
        other => Err(Error::InvalidSpec(format!("unknown claim '{other}'"))),
    }
}

fn default_length_bound_radius(curve: &SampledCurve) -> Result<f64> {
    let ltb = max_delta(curve, std::f64::consts::FRAC_PI_2)?;
    let lip = lipschitz_constant(curve, default_min_len(curve))?;
    let r_lip = if lip.is_finite() {
        1.0 / lip.k
    } else {
        f64::INFINITY
    };
    Ok(0.95 * (ltb.delta / 2.0).min(r_lip))
}

fn default_eq_pair(curve: &SampledCurve, r1: f64) -> Result<(CurvePoint, CurvePoint)> {
    let ltb = max_delta(curve, std::f64::consts::FRAC_PI_2)?;
    let cap = ltb.delta.min(2.0 * r1);
    let a = curve.point_at(0.1 * curve.total_length())?;
    let mut offset = 0.2 * curve.total_length();
    for _ in 0..40 {
        let b = curve.point_at(a.s + offset)?;
        if a.position.distance(b.position) < 0.9 * cap {
            return Ok((a, b));
        }
        offset *= 0.5;
    }
    Err(Error::GeometryPreconditionFailed(
        "could not place a pair below the straightest-arc scale".to_string(),
    ))
}

/// Runs every claim; errors (hypothesis failures and the like) are kept per
/// claim rather than aborting the batch.
pub fn verify_all(curve: &SampledCurve, tol: f64) -> Vec<(String, Result<VerificationReport>)> {
    ALL_CLAIMS
        .iter()
        .map(|&claim| (claim.to_string(), verify_claim(curve, claim, tol)))
        .collect()
}
