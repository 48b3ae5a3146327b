//! Equidistant-probe demonstration.
//!
//! Six probes sit on a circle around the first reference point of a dense
//! `f2 = 1 - sqrt(f1)` front, so every probe has exactly the same distance to
//! the reference set and IGD cannot tell them apart. Sweeping the probes from
//! the front tangent toward and past the first cluster's chord moves them
//! steadily away from the front, and their grades must fall accordingly:
//! the first three land in the band under the chord, the last three above it.

use std::f64::consts::PI;

use crate::clustering::PairingScheme;
use crate::error::{Error, Result};
use crate::fronts::{generate_front, FrontShape, FrontSpec};
use crate::geometry::{angle_between, estimate_tangent, ObjectiveVector, ReferenceSet};
use crate::metrics::{evaluate, EvaluationReport};
use crate::region::{Grade, RegionLabel};

/// Reference front density used by the demonstration.
pub const FRONT_POINTS: usize = 101;

/// Probe circle radius as a fraction of the spacing between the first two
/// reference points. Below one half the circle's center stays the nearest
/// reference point for every probe.
const RADIUS_FRACTION: f64 = 0.4;

/// Sweep angles under the chord, as fractions of the tangent-to-chord angle.
const BAND_FRACTIONS: [f64; 3] = [0.1, 0.3, 0.5];

/// Sweep angles past the chord, in radians.
const ABOVE_CHORD: [f64; 3] = [PI / 18.0, PI / 9.0, PI / 6.0];

/// Tolerance on equality of the probes' distances to the reference set.
pub const IGD_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Probe {
    pub solution: ObjectiveVector,
    /// Distance to the nearest reference point, the only quantity IGD sees.
    pub igd_contribution: f64,
    pub grade: Grade,
}

#[derive(Debug, Clone)]
pub struct CaseStudy {
    pub reference: ReferenceSet,
    pub radius: f64,
    pub probes: Vec<Probe>,
    pub report: EvaluationReport,
}

/// Places the six probes around the first reference point, ordered by
/// increasing departure from the front.
pub fn place_probes(reference: &ReferenceSet) -> Result<(Vec<ObjectiveVector>, f64)> {
    if reference.dim() != 2 || reference.len() < 3 {
        return Err(Error::domain(
            "probe placement needs a 2-objective front of 3+ points",
        ));
    }
    let pts = reference.points();
    let (a, m, b) = (&pts[0], &pts[1], &pts[2]);
    let tangent = estimate_tangent(reference, 0)?;
    let chord = [b.f1() - a.f1(), b.f2() - a.f2()];
    let beta = angle_between(&tangent, &chord)?;
    // rotate from the tangent toward the chord side
    let turn = (tangent[0] * chord[1] - tangent[1] * chord[0]).signum();
    let radius = RADIUS_FRACTION * a.distance(m);

    let angles = BAND_FRACTIONS
        .iter()
        .map(|f| f * beta)
        .chain(ABOVE_CHORD.iter().map(|g| beta + g));
    let probes = angles
        .map(|phi| {
            let (s, c) = (turn * phi).sin_cos();
            let dir = [
                c * tangent[0] - s * tangent[1],
                s * tangent[0] + c * tangent[1],
            ];
            ObjectiveVector::xy(a.f1() + radius * dir[0], a.f2() + radius * dir[1])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((probes, radius))
}

pub fn run_case_study() -> Result<CaseStudy> {
    let reference = generate_front(&FrontSpec::new(FrontShape::ConvexSqrt, FRONT_POINTS))?;
    let (solutions, radius) = place_probes(&reference)?;
    let eval = evaluate(&solutions, &reference, &PairingScheme::Stride2, &[])?;
    let probes = eval
        .graded
        .entries
        .iter()
        .map(|e| Probe {
            solution: e.solution.clone(),
            igd_contribution: reference.nearest_distance(e.solution.coords()),
            grade: e.grade,
        })
        .collect();
    Ok(CaseStudy {
        reference,
        radius,
        probes,
        report: eval.report,
    })
}

impl CaseStudy {
    /// Verifies the demonstration's claims, returning the first violation.
    pub fn check(&self) -> std::result::Result<(), String> {
        let first = self.probes[0].igd_contribution;
        for (i, p) in self.probes.iter().enumerate() {
            if (p.igd_contribution - first).abs() > IGD_TOL {
                return Err(format!(
                    "probe {} IGD contribution {} differs from probe 1 ({first})",
                    i + 1,
                    p.igd_contribution
                ));
            }
        }
        for (i, w) in self.probes.windows(2).enumerate() {
            if w[1].grade.value >= w[0].grade.value {
                return Err(format!(
                    "grade of probe {} ({}) is not below probe {} ({})",
                    i + 2,
                    w[1].grade.value,
                    i + 1,
                    w[0].grade.value
                ));
            }
        }
        let half = self.probes.len() / 2;
        for (i, p) in self.probes.iter().enumerate() {
            let want = if i < half {
                RegionLabel::Region1
            } else {
                RegionLabel::Region2
            };
            if p.grade.region != want {
                return Err(format!(
                    "probe {} graded in {} instead of {want}",
                    i + 1,
                    p.grade.region
                ));
            }
        }
        Ok(())
    }
}
