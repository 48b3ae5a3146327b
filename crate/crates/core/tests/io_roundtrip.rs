mod common;

use std::fs;

use common::{front, p};
use proptest::prelude::*;
use rmf::fronts::{load_report, plot_data_path, save_population};
use rmf::{
    combined_score, evaluate, load_population, save_report, ComparisonResult, EvaluationReport,
    FrontShape, ObjectiveVector, PairingScheme, RunSummary,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn population_survives_save_and_load(
        rows in prop::collection::vec(prop::array::uniform2(-1e6..1e6f64), 1..40),
    ) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pop.csv");
        let pts: Vec<ObjectiveVector> = rows.iter().map(|r| p(r[0], r[1])).collect();
        save_population(&path, &pts).unwrap();
        let back = load_population(&path).unwrap();
        prop_assert_eq!(back, pts);
    }
}

#[test]
fn evaluation_report_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let reference = front(FrontShape::ConvexSqrt, 21);
    let pop = vec![
        p(0.1, 0.7),
        p(0.3, 0.5),
        p(0.2, 0.9),
        p(2.0, 2.0),
        p(1.0 / 3.0, 0.1 + 0.2),
    ];
    let eval = evaluate(&pop, &reference, &PairingScheme::Stride2, &[]).unwrap();
    let path = dir.path().join("report.json");
    save_report(&eval.report, &path).unwrap();
    let back: EvaluationReport = load_report(&path).unwrap();
    assert_eq!(back, eval.report);

    let plot = fs::read_to_string(plot_data_path(&path)).unwrap();
    assert_eq!(plot.lines().count(), pop.len());
    assert!(plot.lines().any(|l| l.ends_with(",Region3")));
}

#[test]
fn perfect_report_echoes_convergence_and_has_no_region3() {
    let dir = tempfile::tempdir().unwrap();
    let reference = front(FrontShape::ConvexSqrt, 401);
    let pop: Vec<ObjectiveVector> = reference.points()[..200].to_vec();
    let eval = evaluate(&pop, &reference, &PairingScheme::Stride2, &[]).unwrap();
    assert_eq!(eval.report.convergence, 600.0);
    let path = dir.path().join("r.json");
    save_report(&eval.report, &path).unwrap();
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(json["convergence"], serde_json::json!(600.0));
    let plot = fs::read_to_string(plot_data_path(&path)).unwrap();
    assert!(!plot.contains("Region3"));
}

#[test]
fn comparison_report_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let result = combined_score(
        &[
            RunSummary::new("a", 482.31, 3.22),
            RunSummary::new("b", 373.83, 3.38),
        ],
        0.5,
        0.5,
    )
    .unwrap();
    let path = dir.path().join("cmp.json");
    save_report(&result, &path).unwrap();
    let back: ComparisonResult = load_report(&path).unwrap();
    assert_eq!(back, result);
    assert!(!plot_data_path(&path).exists());
}

#[test]
fn case_study_plot_has_six_decreasing_rows() {
    let dir = tempfile::tempdir().unwrap();
    let study = rmf::case_study::run_case_study().unwrap();
    let path = dir.path().join("case.json");
    save_report(&study.report, &path).unwrap();
    let plot = fs::read_to_string(plot_data_path(&path)).unwrap();
    let grades: Vec<f64> = plot
        .lines()
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert_eq!(grades.len(), 6);
    assert!(grades.windows(2).all(|w| w[1] < w[0]), "{grades:?}");
}
