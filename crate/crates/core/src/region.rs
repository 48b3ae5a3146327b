//! Region classification and grading of individual solutions.
//!
//! Inside a cluster ball a solution is either on the sampled front (grade 3),
//! in the band between the front and its chord or tangent lines (Region 1,
//! grades in `[2, 3]`), or elsewhere in the ball (Region 2, `[1, 2]`).
//! Solutions outside every ball are Region 3 and get a normalized
//! nearest-reference distance grade in `[0, 1]`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::clustering::{Cluster, ClusterGeometry, Partition};
use crate::error::{Error, Result};
use crate::geometry::{
    angle_between, dist, dominates_polyline, dot, line_intersection, norm, point_in_polygon,
    polyline_distance, sub, CurvatureClass, ObjectiveVector, ReferenceSet,
};
use crate::metrics::{GradedEntry, GradedPopulation};

/// Distance within which a solution counts as lying on the sampled front.
pub const FRONT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RegionLabel {
    OnFront,
    Region1,
    Region2,
    Region3,
}

impl RegionLabel {
    pub const ALL: [RegionLabel; 4] = [
        RegionLabel::OnFront,
        RegionLabel::Region1,
        RegionLabel::Region2,
        RegionLabel::Region3,
    ];

    /// Closed grade interval of the region.
    pub fn interval(self) -> (f64, f64) {
        match self {
            RegionLabel::OnFront => (3.0, 3.0),
            RegionLabel::Region1 => (2.0, 3.0),
            RegionLabel::Region2 => (1.0, 2.0),
            RegionLabel::Region3 => (0.0, 1.0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RegionLabel::OnFront => "OnFront",
            RegionLabel::Region1 => "Region1",
            RegionLabel::Region2 => "Region2",
            RegionLabel::Region3 => "Region3",
        }
    }
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Score of one solution. `value` is clamped into the region interval, `raw`
/// keeps the unclamped formula output.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grade {
    pub value: f64,
    pub raw: f64,
    pub region: RegionLabel,
    /// Set when the geometry left the formula undefined and a fallback was used.
    pub degenerate: bool,
}

impl Grade {
    fn clamped(raw: f64, region: RegionLabel) -> Self {
        let (lo, hi) = region.interval();
        Self {
            value: raw.clamp(lo, hi),
            raw,
            region,
            degenerate: false,
        }
    }

    fn on_front() -> Self {
        Self::clamped(3.0, RegionLabel::OnFront)
    }
}

/// Locates a solution inside a 2-objective cluster ball.
///
/// The caller guarantees that `p` lies in the ball.
pub fn classify_region(p: &ObjectiveVector, c: &Cluster) -> RegionLabel {
    let x = p.coords();
    if polyline_distance(x, &c.local_curve) <= FRONT_TOL || dominates_polyline(x, &c.local_curve) {
        return RegionLabel::OnFront;
    }
    match region1_band(c) {
        Some(ring) if point_in_polygon([x[0], x[1]], &ring) => RegionLabel::Region1,
        _ => RegionLabel::Region2,
    }
}

/// Closed ring bounding the Region 1 band of a 2-objective cluster.
///
/// Convex segments: the sampled curve closed by the chord. Concave segments:
/// the curve closed through the intersection of the end tangents. Straight
/// segments have no band.
pub fn region1_band(c: &Cluster) -> Option<Vec<[f64; 2]>> {
    if c.local_curve.first()?.dim() != 2 {
        return None;
    }
    let mut ring: Vec<[f64; 2]> = c.local_curve.iter().map(|p| [p.f1(), p.f2()]).collect();
    match c.curvature {
        CurvatureClass::Linear => return None,
        CurvatureClass::Convex => {}
        CurvatureClass::Concave => {
            let (ta, tb) = c.tangents?;
            let a = ring[0];
            let b = ring[ring.len() - 1];
            ring.push(line_intersection(a, ta, b, tb)?);
        }
    }
    Some(ring)
}

/// Raw Region 1 grade of a convex segment.
///
/// `alpha` is the angle at the first anchor between the front tangent and the
/// ray to the solution, `beta` the angle between the tangent and the chord,
/// `chord` the anchor distance and `d2` the distance from the first anchor to
/// the solution. The intersection length of the ray with the front is
/// approximated by `alpha / beta * chord`.
pub fn region1_convex_formula(alpha: f64, beta: f64, chord: f64, d2: f64) -> f64 {
    let ratio = alpha / beta;
    let d1 = ratio * chord;
    if d2 > d1 / 2.0 {
        if d1 == 0.0 {
            // limit of the first branch as alpha -> 0
            2.0 + 2.0 * d2 / chord
        } else {
            2.0 + (2.0 * d2 - d1) / d1 * ratio
        }
    } else {
        3.0 - 2.0 * d2 / d1 * ratio
    }
}

/// Planar quantities of a solution relative to a cluster's chord.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChordGeometry {
    /// Distance from the solution to the anchor line.
    pub offset: f64,
    pub radius: f64,
    /// Angle at the first anchor between the solution and the chord.
    pub alpha: f64,
    /// Angle at the first anchor between the chord and the midpoint of the
    /// parallel chord through the solution.
    pub beta: f64,
    /// Distance to the first anchor.
    pub d1: f64,
    /// Distance to the second anchor.
    pub d2: f64,
}

/// Measures `e` against the chord of `g`, inside the plane through both
/// anchors and `e`.
pub fn chord_geometry(e: &[f64], g: &ClusterGeometry) -> ChordGeometry {
    let a = g.anchor_a.coords();
    let b = g.anchor_b.coords();
    let ab = sub(b, a);
    let ae = sub(e, a);
    let t = dot(&ae, &ab) / dot(&ab, &ab);
    let perp: Vec<f64> = ae.iter().zip(&ab).map(|(v, w)| v - t * w).collect();
    let offset = norm(&perp);

    // midpoint of the parallel chord: the ball center pushed out by `offset`
    // `perp` already has length `offset` and points from the chord toward `e`
    let apex: Vec<f64> = g.center.iter().zip(&perp).map(|(c, n)| c + n).collect();

    let alpha = angle_between(&ae, &ab).unwrap_or(0.0);
    let beta = if offset > 0.0 {
        angle_between(&sub(&apex, a), &ab).unwrap_or(0.0)
    } else {
        0.0
    };
    ChordGeometry {
        offset,
        radius: g.radius,
        alpha,
        beta,
        d1: dist(e, a),
        d2: dist(e, b),
    }
}

/// Raw Region 2 grade.
///
/// Convex and straight segments take the first expression when the solution
/// is nearer the first anchor; concave segments invert the branch condition.
pub fn region2_formula(g: &ChordGeometry, curvature: CurvatureClass) -> f64 {
    let depth = g.offset / (2.0 * g.radius);
    let first = 2.0 - depth - (FRAC_PI_2 - g.alpha) / (PI - 2.0 * g.beta);
    let swing = if g.beta == 0.0 {
        0.0
    } else {
        (g.beta - g.alpha) / (2.0 * g.beta)
    };
    let second = 1.5 - depth + swing;
    let near_a = g.d1 < g.d2;
    let take_first = match curvature {
        CurvatureClass::Concave => !near_a,
        CurvatureClass::Convex | CurvatureClass::Linear => near_a,
    };
    if take_first {
        first
    } else {
        second
    }
}

pub fn score_region1_convex(d: &ObjectiveVector, c: &Cluster) -> Result<Grade> {
    let (tangent, _) = c
        .tangents
        .ok_or_else(|| Error::domain("Region 1 scoring needs a 2-objective cluster"))?;
    let g = &c.geometry;
    let a = g.anchor_a.coords();
    let ad = sub(d.coords(), a);
    let ab = sub(g.anchor_b.coords(), a);
    let d2 = norm(&ad);
    if d2 == 0.0 {
        return Ok(Grade::clamped(3.0, RegionLabel::Region1));
    }
    let beta = angle_between(&tangent, &ab)?;
    if beta == 0.0 {
        return Ok(Grade {
            degenerate: true,
            ..Grade::clamped(2.0, RegionLabel::Region1)
        });
    }
    let alpha = angle_between(&tangent, &ad)?;
    let raw = region1_convex_formula(alpha, beta, norm(&ab), d2);
    Ok(Grade::clamped(raw, RegionLabel::Region1))
}

pub fn score_region1_concave(d: &ObjectiveVector, c: &Cluster) -> Result<Grade> {
    if c.tangents.is_none() {
        return Err(Error::domain(
            "Region 1 scoring needs a 2-objective cluster",
        ));
    }
    let inner = score_region2(d, c);
    Ok(Grade {
        raw: inner.raw + 1.0,
        degenerate: inner.degenerate,
        ..Grade::clamped(inner.value + 1.0, RegionLabel::Region1)
    })
}

pub fn score_region2(e: &ObjectiveVector, c: &Cluster) -> Grade {
    let g = chord_geometry(e.coords(), &c.geometry);
    let raw = region2_formula(&g, c.curvature);
    Grade::clamped(raw, RegionLabel::Region2)
}

/// Grades unclustered solutions by their min-max normalized distance to the
/// nearest reference point, nearer being better.
pub fn score_region3(
    unclustered: &[ObjectiveVector],
    reference: &ReferenceSet,
) -> Result<Vec<Grade>> {
    if reference.is_empty() {
        return Err(Error::domain("reference set is empty"));
    }
    let gaps: Vec<f64> = unclustered
        .iter()
        .map(|x| reference.nearest_distance(x.coords()))
        .collect();
    let lo = gaps.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = gaps.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(gaps
        .iter()
        .map(|&m| {
            let raw = if hi > lo {
                1.0 - (m - lo) / (hi - lo)
            } else {
                0.5
            };
            Grade::clamped(raw, RegionLabel::Region3)
        })
        .collect())
}

/// Grades every solution of a partition, preserving population order.
pub fn grade_population(
    part: &Partition,
    reference: &ReferenceSet,
    d_objectives: usize,
) -> Result<GradedPopulation> {
    if reference.dim() != d_objectives {
        return Err(Error::domain(format!(
            "reference set has {} objectives, expected {d_objectives}",
            reference.dim()
        )));
    }
    if let Some(p) = part.population.iter().find(|p| p.dim() != d_objectives) {
        return Err(Error::domain(format!(
            "population point has {} objectives, expected {d_objectives}",
            p.dim()
        )));
    }

    let mut slots: Vec<Option<(Grade, Option<usize>)>> = vec![None; part.population.len()];
    for (ci, cluster) in part.clusters.iter().enumerate() {
        for &m in &cluster.members {
            let p = &part.population[m];
            let grade = if d_objectives == 2 {
                grade_planar(p, cluster)?
            } else if reference.nearest_distance(p.coords()) <= FRONT_TOL {
                Grade::on_front()
            } else {
                score_region2(p, cluster)
            };
            slots[m] = Some((grade, Some(ci)));
        }
    }

    let rest: Vec<ObjectiveVector> = part
        .unclustered
        .iter()
        .map(|&i| part.population[i].clone())
        .collect();
    for (&i, grade) in part
        .unclustered
        .iter()
        .zip(score_region3(&rest, reference)?)
    {
        slots[i] = Some((grade, None));
    }

    let entries = part
        .population
        .iter()
        .zip(slots)
        .enumerate()
        .map(|(i, (solution, slot))| {
            let (grade, cluster) =
                slot.ok_or_else(|| Error::domain(format!("solution {i} missing from partition")))?;
            Ok(GradedEntry {
                solution: solution.clone(),
                grade,
                cluster,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(GradedPopulation {
        entries,
        cluster_count: part.clusters.len(),
    })
}

fn grade_planar(p: &ObjectiveVector, c: &Cluster) -> Result<Grade> {
    Ok(match (classify_region(p, c), c.curvature) {
        (RegionLabel::OnFront, _) => Grade::on_front(),
        (RegionLabel::Region1, CurvatureClass::Concave) => score_region1_concave(p, c)?,
        (RegionLabel::Region1, _) => score_region1_convex(p, c)?,
        _ => score_region2(p, c),
    })
}
