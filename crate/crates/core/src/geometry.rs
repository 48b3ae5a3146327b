//! Objective-space primitives: points, reference fronts, angles, tangents and
//! curvature of sampled front segments.

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point in objective space with 2 or 3 finite components (minimization).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct ObjectiveVector(Vec<f64>);

impl ObjectiveVector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if !(2..=3).contains(&coords.len()) {
            return Err(Error::domain(format!(
                "objective vectors need 2 or 3 components, got {}",
                coords.len()
            )));
        }
        if let Some(bad) = coords.iter().find(|c| !c.is_finite()) {
            return Err(Error::domain(format!("non-finite objective value {bad}")));
        }
        Ok(Self(coords))
    }

    /// Shorthand for a 2-objective point.
    pub fn xy(f1: f64, f2: f64) -> Result<Self> {
        Self::new(vec![f1, f2])
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// First objective.
    pub fn f1(&self) -> f64 {
        self.0[0]
    }

    /// Second objective.
    pub fn f2(&self) -> f64 {
        self.0[1]
    }

    pub fn distance(&self, other: &ObjectiveVector) -> f64 {
        dist(&self.0, &other.0)
    }
}

impl TryFrom<Vec<f64>> for ObjectiveVector {
    type Error = Error;

    fn try_from(coords: Vec<f64>) -> Result<Self> {
        Self::new(coords)
    }
}

impl From<ObjectiveVector> for Vec<f64> {
    fn from(v: ObjectiveVector) -> Self {
        v.0
    }
}

impl AsRef<[f64]> for ObjectiveVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// A discrete sample of the true Pareto front.
///
/// Two-objective sets are kept in canonical order (strictly increasing first
/// objective). Three-objective sets keep their input order, since pairing for
/// them is always explicit.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceSet {
    points: Vec<ObjectiveVector>,
}

impl ReferenceSet {
    pub fn new(mut points: Vec<ObjectiveVector>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::domain("reference set is empty"));
        };
        let dim = first.dim();
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::domain(format!(
                "reference set mixes {dim}- and {}-objective points",
                p.dim()
            )));
        }
        if dim == 2 {
            points.sort_by(|a, b| a.f1().total_cmp(&b.f1()));
            if let Some(w) = points.windows(2).find(|w| w[0].f1() >= w[1].f1()) {
                return Err(Error::domain(format!(
                    "reference points must have distinct first objectives (duplicate f1 = {})",
                    w[1].f1()
                )));
            }
        } else {
            for (i, p) in points.iter().enumerate() {
                if points[..i].contains(p) {
                    return Err(Error::domain(format!(
                        "duplicate reference point {:?}",
                        p.coords()
                    )));
                }
            }
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[ObjectiveVector] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    /// Distance from `x` to its nearest reference point.
    pub fn nearest_distance(&self, x: &[f64]) -> f64 {
        self.points
            .iter()
            .map(|r| dist(x, r.coords()))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Shape of a front segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CurvatureClass {
    Convex,
    Concave,
    Linear,
}

/// Angle in `[0, π]` between two nonzero direction vectors of equal length.
pub fn angle_between(u: &[f64], v: &[f64]) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::domain(format!(
            "angle between vectors of dimension {} and {}",
            u.len(),
            v.len()
        )));
    }
    if norm(u) == 0.0 || norm(v) == 0.0 {
        return Err(Error::domain("angle with a zero-length vector"));
    }
    Ok(cross_norm(u, v).atan2(dot(u, v)))
}

/// Unit tangent of a 2-objective reference front at point `i`, oriented
/// toward increasing f1.
///
/// Interior points use the central difference of their neighbours, endpoints
/// a one-sided difference.
pub fn estimate_tangent(reference: &ReferenceSet, i: usize) -> Result<[f64; 2]> {
    if reference.dim() != 2 {
        return Err(Error::domain(
            "tangent estimation needs a 2-objective front",
        ));
    }
    let n = reference.len();
    if n < 2 {
        return Err(Error::domain(
            "tangent estimation needs at least 2 reference points",
        ));
    }
    if i >= n {
        return Err(Error::domain(format!(
            "tangent index {i} out of range for {n} reference points"
        )));
    }
    let pts = reference.points();
    let (lo, hi) = match i {
        0 => (0, 1),
        _ if i == n - 1 => (n - 2, n - 1),
        _ => (i - 1, i + 1),
    };
    let dx = pts[hi].f1() - pts[lo].f1();
    let dy = pts[hi].f2() - pts[lo].f2();
    let len = dx.hypot(dy);
    let sign = if dx < 0.0 { -1.0 } else { 1.0 };
    Ok([sign * dx / len, sign * dy / len])
}

/// Relative threshold on the mean second difference below which a segment
/// counts as straight.
pub const CURVATURE_EPS: f64 = 1e-6;

/// Classifies the front segment `span` by the sign of its mean second
/// divided difference of f2 over f1.
pub fn classify_curvature(
    reference: &ReferenceSet,
    span: RangeInclusive<usize>,
) -> Result<CurvatureClass> {
    if reference.dim() != 2 {
        return Err(Error::domain(
            "curvature classification needs a 2-objective front",
        ));
    }
    let (lo, hi) = (*span.start(), *span.end());
    if hi >= reference.len() || lo > hi || hi - lo < 2 {
        return Err(Error::domain(format!(
            "curvature span {lo}..={hi} must cover at least 3 of {} reference points",
            reference.len()
        )));
    }
    let pts = &reference.points()[lo..=hi];
    let mean = pts
        .windows(3)
        .map(|w| {
            let (x0, x1, x2) = (w[0].f1(), w[1].f1(), w[2].f1());
            let (y0, y1, y2) = (w[0].f2(), w[1].f2(), w[2].f2());
            let left = (y1 - y0) / (x1 - x0);
            let right = (y2 - y1) / (x2 - x1);
            2.0 * (right - left) / (x2 - x0)
        })
        .sum::<f64>()
        / (pts.len() - 2) as f64;

    let (min, max) = pts
        .iter()
        .map(ObjectiveVector::f2)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), y| {
            (lo.min(y), hi.max(y))
        });
    let eps = CURVATURE_EPS * (max - min);
    Ok(if mean > eps {
        CurvatureClass::Convex
    } else if mean < -eps {
        CurvatureClass::Concave
    } else {
        CurvatureClass::Linear
    })
}

pub(crate) fn dot(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

pub(crate) fn norm(u: &[f64]) -> f64 {
    dot(u, u).sqrt()
}

pub(crate) fn sub(u: &[f64], v: &[f64]) -> Vec<f64> {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

pub(crate) fn dist(u: &[f64], v: &[f64]) -> f64 {
    u.iter()
        .zip(v)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

/// Magnitude of the cross product (exact form for 2 and 3 components).
fn cross_norm(u: &[f64], v: &[f64]) -> f64 {
    match (u, v) {
        ([ux, uy], [vx, vy]) => (ux * vy - uy * vx).abs(),
        ([ux, uy, uz], [vx, vy, vz]) => {
            let c = [uy * vz - uz * vy, uz * vx - ux * vz, ux * vy - uy * vx];
            norm(&c)
        }
        _ => {
            let (uu, vv, uv) = (dot(u, u), dot(v, v), dot(u, v));
            (uu * vv - uv * uv).max(0.0).sqrt()
        }
    }
}

/// Euclidean distance from `p` to the segment `a`–`b`.
pub(crate) fn segment_distance(p: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let ab = sub(b, a);
    let len2 = dot(&ab, &ab);
    if len2 == 0.0 {
        return dist(p, a);
    }
    let t = (dot(&sub(p, a), &ab) / len2).clamp(0.0, 1.0);
    let foot: Vec<f64> = a.iter().zip(&ab).map(|(a, d)| a + t * d).collect();
    dist(p, &foot)
}

pub(crate) fn polyline_distance(p: &[f64], curve: &[ObjectiveVector]) -> f64 {
    match curve {
        [] => f64::INFINITY,
        [only] => dist(p, only.coords()),
        _ => curve
            .windows(2)
            .map(|w| segment_distance(p, w[0].coords(), w[1].coords()))
            .fold(f64::INFINITY, f64::min),
    }
}

/// True when `p` weakly dominates some point of the polyline, i.e. `p` sits
/// on the non-dominated side of the sampled front.
pub(crate) fn dominates_polyline(p: &[f64], curve: &[ObjectiveVector]) -> bool {
    curve.windows(2).any(|w| {
        let (u, v) = (w[0].coords(), w[1].coords());
        // feasible t in [0, 1] with u + t (v - u) >= p componentwise
        let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
        for k in 0..p.len() {
            let step = v[k] - u[k];
            let need = p[k] - u[k];
            if step > 0.0 {
                lo = lo.max(need / step);
            } else if step < 0.0 {
                hi = hi.min(need / step);
            } else if need > 0.0 {
                return false;
            }
        }
        lo <= hi
    }) || curve.len() == 1 && p.iter().zip(curve[0].coords()).all(|(a, b)| a <= b)
}

/// Crossing-number point-in-polygon test for a closed 2D ring.
pub(crate) fn point_in_polygon(p: [f64; 2], ring: &[[f64; 2]]) -> bool {
    let mut inside = false;
    let mut j = ring.len().wrapping_sub(1);
    for i in 0..ring.len() {
        let (a, b) = (ring[i], ring[j]);
        if (a[1] > p[1]) != (b[1] > p[1]) {
            let x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1]);
            if p[0] < x {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

/// Intersection of the lines `p + s·u` and `q + t·v`; `None` when parallel.
pub(crate) fn line_intersection(
    p: [f64; 2],
    u: [f64; 2],
    q: [f64; 2],
    v: [f64; 2],
) -> Option<[f64; 2]> {
    let denom = u[0] * v[1] - u[1] * v[0];
    if denom.abs() <= 1e-15 * (u[0].hypot(u[1]) * v[0].hypot(v[1])) {
        return None;
    }
    let w = [q[0] - p[0], q[1] - p[1]];
    let s = (w[0] * v[1] - w[1] * v[0]) / denom;
    Some([p[0] + s * u[0], p[1] + s * u[1]])
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    use super::*;

    fn front(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> ReferenceSet {
        let pts = (0..n)
            .map(|i| {
                let x = lo + (hi - lo) * i as f64 / (n - 1) as f64;
                ObjectiveVector::xy(x, f(x)).unwrap()
            })
            .collect();
        ReferenceSet::new(pts).unwrap()
    }

    #[test]
    fn angle_examples() {
        assert!((angle_between(&[1.0, 0.0], &[0.0, 1.0]).unwrap() - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(angle_between(&[1.0, 0.0], &[2.0, 0.0]).unwrap(), 0.0);
        assert!((angle_between(&[1.0, 0.0], &[1.0, 1.0]).unwrap() - FRAC_PI_4).abs() < 1e-15);
        assert!(angle_between(&[0.0, 0.0], &[1.0, 0.0]).is_err());
        assert!(angle_between(&[1.0, 0.0], &[1.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn angle_in_three_dimensions() {
        let a = angle_between(&[1.0, 0.0, 0.0], &[0.0, 0.0, 3.0]).unwrap();
        assert!((a - FRAC_PI_2).abs() < 1e-15);
        let a = angle_between(&[1.0, 1.0, 0.0], &[-1.0, -1.0, 0.0]).unwrap();
        assert!((a - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn tangent_on_line() {
        let r = front(|x| 1.0 - x, 0.0, 1.0, 11);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for i in 0..r.len() {
            let t = estimate_tangent(&r, i).unwrap();
            assert!(
                (t[0] - s).abs() < 1e-15 && (t[1] + s).abs() < 1e-15,
                "{i}: {t:?}"
            );
        }
    }

    #[test]
    fn tangent_at_endpoint_of_three_point_line() {
        let r = ReferenceSet::new(vec![
            ObjectiveVector::xy(0.0, 1.0).unwrap(),
            ObjectiveVector::xy(0.5, 0.5).unwrap(),
            ObjectiveVector::xy(1.0, 0.0).unwrap(),
        ])
        .unwrap();
        let t = estimate_tangent(&r, 0).unwrap();
        assert!((t[0] + t[1]).abs() < 1e-15 && t[0] > 0.0);
    }

    #[test]
    fn tangent_on_sqrt_front() {
        // d f2 / d f1 = -1 at f1 = 0.25
        let r = front(|x| 1.0 - x.sqrt(), 0.0, 1.0, 401);
        let i = 100;
        assert_eq!(r.points()[i].f1(), 0.25);
        let t = estimate_tangent(&r, i).unwrap();
        assert!((t[1] / t[0] + 1.0).abs() < 1e-4, "{t:?}");
    }

    #[test]
    fn tangent_errors() {
        let r = ReferenceSet::new(vec![ObjectiveVector::xy(0.0, 1.0).unwrap()]).unwrap();
        assert!(estimate_tangent(&r, 0).is_err());
        let r = front(|x| 1.0 - x, 0.0, 1.0, 3);
        assert!(estimate_tangent(&r, 3).is_err());
    }

    // Independent check: second derivative sign from the analytic form.
    #[test]
    fn curvature_examples() {
        let convex = front(|x| 1.0 - x.sqrt(), 0.01, 1.0, 50);
        assert_eq!(
            classify_curvature(&convex, 0..=49).unwrap(),
            CurvatureClass::Convex
        );
        let concave = front(|x| 1.0 - x * x, 0.0, 1.0, 50);
        assert_eq!(
            classify_curvature(&concave, 0..=49).unwrap(),
            CurvatureClass::Concave
        );
        let line = front(|x| 1.0 - x, 0.0, 1.0, 50);
        assert_eq!(
            classify_curvature(&line, 0..=49).unwrap(),
            CurvatureClass::Linear
        );
        assert_eq!(
            classify_curvature(&line, 10..=12).unwrap(),
            CurvatureClass::Linear
        );
    }

    #[test]
    fn curvature_span_too_short() {
        let line = front(|x| 1.0 - x, 0.0, 1.0, 5);
        assert!(classify_curvature(&line, 0..=1).is_err());
        assert!(classify_curvature(&line, 3..=5).is_err());
    }

    #[test]
    fn reference_set_canonical_order() {
        let r = ReferenceSet::new(vec![
            ObjectiveVector::xy(1.0, 0.0).unwrap(),
            ObjectiveVector::xy(0.0, 1.0).unwrap(),
            ObjectiveVector::xy(0.5, 0.5).unwrap(),
        ])
        .unwrap();
        let f1: Vec<f64> = r.points().iter().map(|p| p.f1()).collect();
        assert_eq!(f1, vec![0.0, 0.5, 1.0]);
    }

    #[test]
    fn reference_set_rejects_duplicates() {
        let p = ObjectiveVector::xy(0.2, 0.8).unwrap();
        assert!(ReferenceSet::new(vec![p.clone(), p]).is_err());
        let q = ObjectiveVector::new(vec![0.0, 0.0, 1.0]).unwrap();
        assert!(ReferenceSet::new(vec![q.clone(), q]).is_err());
        assert!(ReferenceSet::new(vec![]).is_err());
    }

    #[test]
    fn objective_vector_validation() {
        assert!(ObjectiveVector::new(vec![1.0]).is_err());
        assert!(ObjectiveVector::new(vec![1.0, 2.0, 3.0, 4.0]).is_err());
        assert!(ObjectiveVector::xy(f64::NAN, 0.0).is_err());
        assert!(ObjectiveVector::xy(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn dominance_against_polyline() {
        let curve = vec![
            ObjectiveVector::xy(0.0, 1.0).unwrap(),
            ObjectiveVector::xy(0.5, 0.5).unwrap(),
            ObjectiveVector::xy(1.0, 0.0).unwrap(),
        ];
        assert!(dominates_polyline(&[0.4, 0.4], &curve));
        assert!(!dominates_polyline(&[0.6, 0.6], &curve));
        // left of the start, below it: dominates (0, 1)
        assert!(dominates_polyline(&[-0.1, 0.9], &curve));
        // left of the start, above it: incomparable
        assert!(!dominates_polyline(&[-0.1, 1.1], &curve));
    }

    #[test]
    fn polygon_membership() {
        let square = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        assert!(point_in_polygon([0.5, 0.5], &square));
        assert!(!point_in_polygon([1.5, 0.5], &square));
        assert!(!point_in_polygon([0.5, -0.1], &square));
    }

    #[test]
    fn lines_meet() {
        let x = line_intersection([0.0, 0.0], [1.0, 0.0], [2.0, -1.0], [0.0, 1.0]).unwrap();
        assert_eq!(x, [2.0, 0.0]);
        assert!(line_intersection([0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [2.0, 2.0]).is_none());
    }
}
