//! Partitioning of a solution set into balls anchored on reference-point pairs.
//!
//! Each cluster is the ball whose diameter joins two reference points. With the
//! default stride-2 pairing the anchors are `(r0, r2), (r2, r4), ...`, so
//! consecutive balls share an anchor and tile the sampled front. A solution is
//! assigned to the first ball (in reference order) that contains it; anything
//! outside every ball is left unclustered.

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    classify_curvature, dist, estimate_tangent, CurvatureClass, ObjectiveVector, ReferenceSet,
};

/// Absolute slack on ball membership.
pub const MEMBERSHIP_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterGeometry {
    pub anchor_a: ObjectiveVector,
    pub anchor_b: ObjectiveVector,
    pub center: Vec<f64>,
    pub radius: f64,
    /// Reference indices of the two anchors, `anchor_a` first.
    pub span: RangeInclusive<usize>,
}

impl ClusterGeometry {
    pub fn contains(&self, p: &[f64]) -> bool {
        dist(p, &self.center) <= self.radius + MEMBERSHIP_TOL
    }
}

/// Ball with diameter `a`–`b`.
pub fn cluster_geometry(a: &ObjectiveVector, b: &ObjectiveVector) -> Result<ClusterGeometry> {
    if a.dim() != b.dim() {
        return Err(Error::domain("cluster anchors differ in dimension"));
    }
    if a == b {
        return Err(Error::DegeneratePair);
    }
    let center = a
        .coords()
        .iter()
        .zip(b.coords())
        .map(|(x, y)| (x + y) / 2.0)
        .collect();
    Ok(ClusterGeometry {
        anchor_a: a.clone(),
        anchor_b: b.clone(),
        center,
        radius: a.distance(b) / 2.0,
        span: 0..=0,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cluster {
    pub geometry: ClusterGeometry,
    pub curvature: CurvatureClass,
    /// Indices into the partitioned population.
    pub members: Vec<usize>,
    /// Reference points between the anchors, sorted by f1 (2-objective), or
    /// just the two anchors (3-objective).
    pub local_curve: Vec<ObjectiveVector>,
    /// Unit front tangents at `anchor_a` and `anchor_b` (2-objective only).
    pub tangents: Option<([f64; 2], [f64; 2])>,
}

/// How reference points are paired into cluster anchors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairingScheme {
    /// `(r0, r2), (r2, r4), ...` over the canonically ordered front.
    Stride2,
    /// Explicit zero-based index pairs, in cluster order.
    Explicit(Vec<(usize, usize)>),
}

/// A population split into clusters plus the unclustered remainder.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    pub population: Vec<ObjectiveVector>,
    pub clusters: Vec<Cluster>,
    /// Indices into `population`.
    pub unclustered: Vec<usize>,
}

impl Partition {
    pub fn dim(&self) -> usize {
        self.clusters[0].geometry.anchor_a.dim()
    }

    /// Cluster index of every solution, `None` for unclustered ones.
    pub fn assignment(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.population.len()];
        for (c, cluster) in self.clusters.iter().enumerate() {
            for &m in &cluster.members {
                out[m] = Some(c);
            }
        }
        out
    }
}

/// Index pairs for the stride-2 tiling of `m` canonically ordered points.
///
/// When `m` is even the last point is not reached by the tiling, so a trailing
/// window `(m - 3, m - 1)` closes the front.
pub fn stride2_pairs(m: usize) -> Result<Vec<(usize, usize)>> {
    if m < 3 {
        return Err(Error::domain(format!(
            "stride-2 pairing needs at least 3 reference points, got {m}"
        )));
    }
    let mut pairs: Vec<(usize, usize)> = (0..m - 2).step_by(2).map(|i| (i, i + 2)).collect();
    if m.is_multiple_of(2) {
        pairs.push((m - 3, m - 1));
    }
    Ok(pairs)
}

pub fn build_clusters(
    pop: &[ObjectiveVector],
    reference: &ReferenceSet,
    pairing: &PairingScheme,
) -> Result<Partition> {
    let dim = reference.dim();
    if let Some(p) = pop.iter().find(|p| p.dim() != dim) {
        return Err(Error::domain(format!(
            "population point has {} objectives but the reference set has {dim}",
            p.dim()
        )));
    }
    let pairs = match pairing {
        PairingScheme::Stride2 if dim != 2 => {
            return Err(Error::domain(
                "3-objective reference sets need an explicit pairing file",
            ))
        }
        PairingScheme::Stride2 => stride2_pairs(reference.len())?,
        PairingScheme::Explicit(pairs) => {
            if pairs.is_empty() {
                return Err(Error::domain("explicit pairing lists no pairs"));
            }
            if let Some(&(i, j)) = pairs
                .iter()
                .find(|&&(i, j)| i >= reference.len() || j >= reference.len())
            {
                return Err(Error::domain(format!(
                    "pair ({i}, {j}) out of range for {} reference points",
                    reference.len()
                )));
            }
            pairs.clone()
        }
    };

    let mut clusters = pairs
        .into_iter()
        .map(|pair| make_cluster(reference, pair))
        .collect::<Result<Vec<_>>>()?;

    let mut unclustered = Vec::new();
    for (i, p) in pop.iter().enumerate() {
        match clusters
            .iter_mut()
            .find(|c| c.geometry.contains(p.coords()))
        {
            Some(c) => c.members.push(i),
            None => unclustered.push(i),
        }
    }

    Ok(Partition {
        population: pop.to_vec(),
        clusters,
        unclustered,
    })
}

fn make_cluster(reference: &ReferenceSet, (i, j): (usize, usize)) -> Result<Cluster> {
    let pts = reference.points();
    if reference.dim() != 2 {
        let mut geometry = cluster_geometry(&pts[i], &pts[j])?;
        geometry.span = i..=j;
        return Ok(Cluster {
            geometry,
            curvature: CurvatureClass::Linear,
            members: Vec::new(),
            local_curve: vec![pts[i].clone(), pts[j].clone()],
            tangents: None,
        });
    }
    let (lo, hi) = (i.min(j), i.max(j));
    let mut geometry = cluster_geometry(&pts[lo], &pts[hi])?;
    geometry.span = lo..=hi;
    let curvature = if hi - lo >= 2 {
        classify_curvature(reference, lo..=hi)?
    } else {
        CurvatureClass::Linear
    };
    let tangents = Some((
        estimate_tangent(reference, lo)?,
        estimate_tangent(reference, hi)?,
    ));
    Ok(Cluster {
        geometry,
        curvature,
        members: Vec::new(),
        local_curve: pts[lo..=hi].to_vec(),
        tangents,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> ObjectiveVector {
        ObjectiveVector::xy(x, y).unwrap()
    }

    fn line(n: usize) -> ReferenceSet {
        ReferenceSet::new(
            (0..n)
                .map(|i| {
                    let x = i as f64 / (n - 1) as f64;
                    p(x, 1.0 - x)
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn geometry_examples() {
        let g = cluster_geometry(&p(0.0, 1.0), &p(1.0, 0.0)).unwrap();
        assert_eq!(g.center, vec![0.5, 0.5]);
        assert_eq!(g.radius, 2.0_f64.sqrt() / 2.0);

        let a = ObjectiveVector::new(vec![0.0, 0.0, 1.0]).unwrap();
        let b = ObjectiveVector::new(vec![0.0, 0.0, 0.0]).unwrap();
        let g = cluster_geometry(&a, &b).unwrap();
        assert_eq!(g.center, vec![0.0, 0.0, 0.5]);
        assert_eq!(g.radius, 0.5);

        assert!(matches!(
            cluster_geometry(&p(0.2, 0.8), &p(0.2, 0.8)),
            Err(Error::DegeneratePair)
        ));
    }

    #[test]
    fn stride2_tiling() {
        assert_eq!(stride2_pairs(3).unwrap(), vec![(0, 2)]);
        assert_eq!(stride2_pairs(5).unwrap(), vec![(0, 2), (2, 4)]);
        assert_eq!(stride2_pairs(4).unwrap(), vec![(0, 2), (1, 3)]);
        assert_eq!(stride2_pairs(6).unwrap(), vec![(0, 2), (2, 4), (3, 5)]);
        assert!(stride2_pairs(2).is_err());
    }

    #[test]
    fn center_is_assigned() {
        let r = line(5);
        let c = ObjectiveVector::new(
            cluster_geometry(&r.points()[0], &r.points()[2])
                .unwrap()
                .center,
        )
        .unwrap();
        let part = build_clusters(&[c], &r, &PairingScheme::Stride2).unwrap();
        assert_eq!(part.clusters[0].members, vec![0]);
        assert!(part.unclustered.is_empty());
    }

    #[test]
    fn far_point_is_unclustered() {
        let r = line(5);
        let part = build_clusters(&[p(10.0, 10.0)], &r, &PairingScheme::Stride2).unwrap();
        assert!(part.clusters.iter().all(|c| c.members.is_empty()));
        assert_eq!(part.unclustered, vec![0]);
    }

    #[test]
    fn shared_anchor_goes_to_first_cluster() {
        let r = line(5);
        let part = build_clusters(&[r.points()[2].clone()], &r, &PairingScheme::Stride2).unwrap();
        assert_eq!(part.clusters[0].members, vec![0]);
        assert!(part.clusters[1].members.is_empty());
    }

    #[test]
    fn local_curve_and_curvature() {
        let r = line(7);
        let part = build_clusters(&[], &r, &PairingScheme::Stride2).unwrap();
        assert_eq!(part.clusters.len(), 3);
        for (k, c) in part.clusters.iter().enumerate() {
            assert_eq!(c.local_curve.len(), 3);
            assert_eq!(c.local_curve[0], r.points()[2 * k]);
            assert_eq!(c.local_curve[2], r.points()[2 * k + 2]);
            assert_eq!(c.curvature, CurvatureClass::Linear);
        }
    }

    #[test]
    fn explicit_pairing() {
        let r = line(5);
        let pairing = PairingScheme::Explicit(vec![(4, 1)]);
        let part = build_clusters(&[], &r, &pairing).unwrap();
        let c = &part.clusters[0];
        assert_eq!(c.geometry.anchor_a, r.points()[1]);
        assert_eq!(c.geometry.span, 1..=4);
        assert_eq!(c.local_curve.len(), 4);

        let bad = PairingScheme::Explicit(vec![(0, 5)]);
        assert!(build_clusters(&[], &r, &bad).is_err());
        let same = PairingScheme::Explicit(vec![(2, 2)]);
        assert!(matches!(
            build_clusters(&[], &r, &same),
            Err(Error::DegeneratePair)
        ));
    }

    #[test]
    fn three_objective_requires_explicit_pairs() {
        let pts = vec![
            ObjectiveVector::new(vec![1.0, 0.0, 0.0]).unwrap(),
            ObjectiveVector::new(vec![0.0, 1.0, 0.0]).unwrap(),
            ObjectiveVector::new(vec![0.0, 0.0, 1.0]).unwrap(),
        ];
        let r = ReferenceSet::new(pts).unwrap();
        assert!(build_clusters(&[], &r, &PairingScheme::Stride2).is_err());
        let part = build_clusters(&[], &r, &PairingScheme::Explicit(vec![(0, 1), (1, 2)])).unwrap();
        assert_eq!(part.clusters.len(), 2);
    }

    #[test]
    fn dimension_mismatch() {
        let r = line(5);
        let q = ObjectiveVector::new(vec![0.0, 0.0, 0.0]).unwrap();
        assert!(build_clusters(&[q], &r, &PairingScheme::Stride2).is_err());
    }

    #[test]
    fn too_few_reference_points() {
        let r = line(2);
        assert!(build_clusters(&[], &r, &PairingScheme::Stride2).is_err());
    }
}
