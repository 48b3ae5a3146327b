//! Set-level indicators built on top of per-solution grades, plus IGD.

use serde::{Deserialize, Serialize};

use crate::clustering::{build_clusters, PairingScheme, Partition};
use crate::error::{Error, Result};
use crate::geometry::{dist, ObjectiveVector, ReferenceSet};
use crate::region::{grade_population, Grade, RegionLabel};

/// Ideal per-cluster mean grade.
pub const IDEAL_CLUSTER_MEAN: f64 = 3.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GradedEntry {
    pub solution: ObjectiveVector,
    pub grade: Grade,
    pub cluster: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GradedPopulation {
    pub entries: Vec<GradedEntry>,
    pub cluster_count: usize,
}

impl GradedPopulation {
    /// Mean grade per cluster; clusters without members count as 0.
    pub fn cluster_means(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.cluster_count];
        let mut counts = vec![0usize; self.cluster_count];
        for e in &self.entries {
            if let Some(c) = e.cluster {
                sums[c] += e.grade.value;
                counts[c] += 1;
            }
        }
        sums.iter()
            .zip(&counts)
            .map(|(&s, &n)| if n == 0 { 0.0 } else { s / n as f64 })
            .collect()
    }

    pub fn histogram(&self) -> RegionHistogram {
        let mut h = RegionHistogram::default();
        for e in &self.entries {
            *h.slot(e.grade.region) += 1;
        }
        h
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionHistogram {
    pub on_front: usize,
    pub region1: usize,
    pub region2: usize,
    pub region3: usize,
}

impl RegionHistogram {
    fn slot(&mut self, label: RegionLabel) -> &mut usize {
        match label {
            RegionLabel::OnFront => &mut self.on_front,
            RegionLabel::Region1 => &mut self.region1,
            RegionLabel::Region2 => &mut self.region2,
            RegionLabel::Region3 => &mut self.region3,
        }
    }

    pub fn get(&self, label: RegionLabel) -> usize {
        match label {
            RegionLabel::OnFront => self.on_front,
            RegionLabel::Region1 => self.region1,
            RegionLabel::Region2 => self.region2,
            RegionLabel::Region3 => self.region3,
        }
    }
}

/// Sum of all grades. Larger is better; scales with population size.
pub fn convergence(g: &GradedPopulation) -> f64 {
    g.entries
        .iter()
        .map(|e| e.grade.value)
        .fold(0.0, |acc, v| acc + v)
}

/// Mean squared deviation of the per-cluster mean grades from `k`.
/// Smaller is better.
pub fn diversity(g: &GradedPopulation, part: &Partition, k: f64) -> Result<f64> {
    if part.clusters.is_empty() {
        return Err(Error::domain("diversity needs at least one cluster"));
    }
    if g.cluster_count != part.clusters.len() {
        return Err(Error::domain(format!(
            "graded population has {} clusters, partition has {}",
            g.cluster_count,
            part.clusters.len()
        )));
    }
    Ok(spread(&g.cluster_means(), k))
}

fn spread(means: &[f64], k: f64) -> f64 {
    means.iter().map(|c| (c - k) * (c - k)).sum::<f64>() / means.len() as f64
}

/// Mean distance from each reference point to its nearest solution.
pub fn igd(p: &[ObjectiveVector], pstar: &ReferenceSet) -> Result<f64> {
    if p.is_empty() {
        return Err(Error::domain("IGD needs a nonempty solution set"));
    }
    if pstar.is_empty() {
        return Err(Error::domain("IGD needs a nonempty reference set"));
    }
    if let Some(y) = p.iter().find(|y| y.dim() != pstar.dim()) {
        return Err(Error::domain(format!(
            "solution has {} objectives, reference set has {}",
            y.dim(),
            pstar.dim()
        )));
    }
    let total: f64 = pstar
        .points()
        .iter()
        .map(|x| {
            p.iter()
                .map(|y| dist(x.coords(), y.coords()))
                .fold(f64::INFINITY, f64::min)
        })
        .sum();
    Ok(total / pstar.len() as f64)
}

/// An f1 interval of the front used to report a local solution set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub start_f1: f64,
    pub end_f1: f64,
}

impl Window {
    pub fn new(start_f1: f64, end_f1: f64) -> Self {
        Self { start_f1, end_f1 }
    }

    pub fn from_points(start: &ObjectiveVector, end: &ObjectiveVector) -> Self {
        Self::new(start.f1(), end.f1())
    }

    pub fn contains(&self, f1: f64) -> bool {
        self.start_f1 <= f1 && f1 <= self.end_f1
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalStats {
    /// `None` for the catch-all bucket of clusters outside every window.
    pub window: Option<Window>,
    pub clusters: Vec<usize>,
    pub convergence: f64,
    /// Absent when the window holds no cluster.
    pub diversity: Option<f64>,
}

/// Convergence and diversity restricted to the clusters whose center lies in
/// each window. Clusters outside every window are reported in a trailing
/// catch-all entry.
pub fn local_report(
    g: &GradedPopulation,
    part: &Partition,
    windows: &[Window],
) -> Result<Vec<LocalStats>> {
    if windows.is_empty() {
        return Err(Error::domain("no observation windows given"));
    }
    if let Some(w) = windows
        .iter()
        .find(|w| w.start_f1.partial_cmp(&w.end_f1).is_none_or(|o| o.is_gt()))
    {
        return Err(Error::domain(format!(
            "window start {} lies after its end {}",
            w.start_f1, w.end_f1
        )));
    }
    let means = g.cluster_means();
    let mut sums = vec![0.0; part.clusters.len()];
    for e in &g.entries {
        if let Some(c) = e.cluster {
            sums[c] += e.grade.value;
        }
    }
    let stats = |window: Option<Window>, clusters: Vec<usize>| {
        let convergence = clusters
            .iter()
            .map(|&c| sums[c])
            .fold(0.0, |acc, v| acc + v);
        let diversity = if clusters.is_empty() {
            None
        } else {
            let local: Vec<f64> = clusters.iter().map(|&c| means[c]).collect();
            Some(spread(&local, IDEAL_CLUSTER_MEAN))
        };
        LocalStats {
            window,
            clusters,
            convergence,
            diversity,
        }
    };

    let center_f1 = |c: usize| part.clusters[c].geometry.center[0];
    let mut out: Vec<LocalStats> = windows
        .iter()
        .map(|w| {
            let members = (0..part.clusters.len())
                .filter(|&c| w.contains(center_f1(c)))
                .collect();
            stats(Some(*w), members)
        })
        .collect();
    let orphans: Vec<usize> = (0..part.clusters.len())
        .filter(|&c| !windows.iter().any(|w| w.contains(center_f1(c))))
        .collect();
    if !orphans.is_empty() {
        out.push(stats(None, orphans));
    }
    Ok(out)
}

/// Convergence and diversity of one algorithm's run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub name: String,
    pub convergence: f64,
    pub diversity: f64,
}

impl RunSummary {
    pub fn new(name: impl Into<String>, convergence: f64, diversity: f64) -> Self {
        Self {
            name: name.into(),
            convergence,
            diversity,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoredRun {
    pub name: String,
    pub convergence: f64,
    pub diversity: f64,
    pub s1: f64,
    pub s2: f64,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonResult {
    pub alpha: f64,
    pub beta: f64,
    /// In input order.
    pub runs: Vec<ScoredRun>,
    /// Indices into `runs`, best first.
    pub ranking: Vec<usize>,
}

/// Weighted sum of min-max normalized convergence (`s1`) and inverted
/// normalized diversity (`s2`). A span with no spread normalizes to 0.5.
pub fn combined_score(results: &[RunSummary], alpha: f64, beta: f64) -> Result<ComparisonResult> {
    if results.is_empty() {
        return Err(Error::domain("nothing to compare"));
    }
    if !(alpha >= 0.0 && beta >= 0.0) {
        return Err(Error::domain(format!(
            "weights must be non-negative (alpha = {alpha}, beta = {beta})"
        )));
    }
    let range = |f: fn(&RunSummary) -> f64| {
        results
            .iter()
            .map(f)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                (lo.min(v), hi.max(v))
            })
    };
    let (c_lo, c_hi) = range(|r| r.convergence);
    let (d_lo, d_hi) = range(|r| r.diversity);

    let runs: Vec<ScoredRun> = results
        .iter()
        .map(|r| {
            let s1 = if c_hi > c_lo {
                (r.convergence - c_lo) / (c_hi - c_lo)
            } else {
                0.5
            };
            let s2 = if d_hi > d_lo {
                (d_hi - r.diversity) / (d_hi - d_lo)
            } else {
                0.5
            };
            ScoredRun {
                name: r.name.clone(),
                convergence: r.convergence,
                diversity: r.diversity,
                s1,
                s2,
                score: alpha * s1 + beta * s2,
            }
        })
        .collect();

    let mut ranking: Vec<usize> = (0..runs.len()).collect();
    // stable sort keeps input order on full ties
    ranking.sort_by(|&i, &j| {
        runs[j]
            .score
            .total_cmp(&runs[i].score)
            .then(runs[j].s1.total_cmp(&runs[i].s1))
    });
    Ok(ComparisonResult {
        alpha,
        beta,
        runs,
        ranking,
    })
}

/// Per-solution line of a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub solution: ObjectiveVector,
    pub grade: f64,
    pub raw_grade: f64,
    pub region: RegionLabel,
    pub cluster: Option<usize>,
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub convergence: f64,
    pub diversity: f64,
    pub cluster_means: Vec<f64>,
    pub region_histogram: RegionHistogram,
    pub local_windows: Vec<LocalStats>,
    pub solutions: Vec<SolutionRecord>,
}

impl EvaluationReport {
    pub fn new(g: &GradedPopulation, part: &Partition, windows: &[Window]) -> Result<Self> {
        let local_windows = if windows.is_empty() {
            Vec::new()
        } else {
            local_report(g, part, windows)?
        };
        Ok(Self {
            convergence: convergence(g),
            diversity: diversity(g, part, IDEAL_CLUSTER_MEAN)?,
            cluster_means: g.cluster_means(),
            region_histogram: g.histogram(),
            local_windows,
            solutions: g
                .entries
                .iter()
                .map(|e| SolutionRecord {
                    solution: e.solution.clone(),
                    grade: e.grade.value,
                    raw_grade: e.grade.raw,
                    region: e.grade.region,
                    cluster: e.cluster,
                    degenerate: e.grade.degenerate,
                })
                .collect(),
        })
    }
}

/// Result of the full clustering, grading and aggregation pipeline.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub partition: Partition,
    pub graded: GradedPopulation,
    pub report: EvaluationReport,
}

pub fn evaluate(
    pop: &[ObjectiveVector],
    reference: &ReferenceSet,
    pairing: &PairingScheme,
    windows: &[Window],
) -> Result<Evaluation> {
    let partition = build_clusters(pop, reference, pairing)?;
    let graded = grade_population(&partition, reference, reference.dim())?;
    let report = EvaluationReport::new(&graded, &partition, windows)?;
    Ok(Evaluation {
        partition,
        graded,
        report,
    })
}
