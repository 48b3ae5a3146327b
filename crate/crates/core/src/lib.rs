//! Regionalized scoring of multimodal multi-objective solution sets.
//!
//! A solution set is clustered into balls anchored on pairs of reference
//! points, each solution is graded by the region of its ball it falls in
//! (on the front, the band under the chord or tangents, the rest of the ball,
//! or outside every ball), and the grades are aggregated into a convergence
//! sum, a per-cluster diversity spread and a weighted comparison score.
//! Plain IGD is provided as a baseline.
//!
//! ```
//! use rmf::{evaluate, generate_front, FrontShape, FrontSpec, PairingScheme};
//!
//! let front = generate_front(&FrontSpec::new(FrontShape::ConvexSqrt, 11)).unwrap();
//! let eval = evaluate(front.points(), &front, &PairingScheme::Stride2, &[]).unwrap();
//! assert_eq!(eval.report.convergence, 33.0);
//! assert_eq!(eval.report.diversity, 0.0);
//! ```

pub mod case_study;
pub mod cli;
pub mod clustering;
pub mod error;
pub mod fronts;
pub mod geometry;
pub mod metrics;
pub mod region;

pub use clustering::{
    build_clusters, cluster_geometry, Cluster, ClusterGeometry, PairingScheme, Partition,
};
pub use error::{Error, Result};
pub use fronts::{
    generate_front, load_population, load_reference, save_report, FrontShape, FrontSpec,
};
pub use geometry::{
    angle_between, classify_curvature, estimate_tangent, CurvatureClass, ObjectiveVector,
    ReferenceSet,
};
pub use metrics::{
    combined_score, convergence, diversity, evaluate, igd, local_report, ComparisonResult,
    EvaluationReport, GradedPopulation, RunSummary, Window,
};
pub use region::{classify_region, grade_population, Grade, RegionLabel};
