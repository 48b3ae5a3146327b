//! Command-line front end.
//!
//! Exit status is 0 on success, 1 when the case study's claims fail, and 2 on
//! usage or input errors. Diagnostics go to standard error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::case_study::run_case_study;
use crate::clustering::PairingScheme;
use crate::error::{Error, Result};
use crate::fronts::{
    generate_front, load_pairs, load_population, load_reference, load_windows, save_population,
    save_report, FrontShape, FrontSpec,
};
use crate::geometry::ReferenceSet;
use crate::metrics::{combined_score, evaluate, igd, LocalStats, RunSummary};
use crate::region::RegionLabel;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "rmf",
    version,
    about = "Region-partitioned scoring of multi-objective solution sets against a reference front"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Grade one population and print its convergence and diversity.
    ///
    /// Convergence is the plain sum of grades, so only compare populations of
    /// equal size.
    Evaluate(RunConfig),
    /// Evaluate several populations and rank them by the weighted score.
    Compare(RunConfig),
    /// Run the equidistant-probe demonstration.
    CaseStudy {
        /// Write the probes' report (JSON) and plot data here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a synthetic reference front as CSV.
    GenFront {
        /// convex-sqrt, concave-quad or linear.
        #[arg(long, default_value = "convex-sqrt")]
        shape: String,
        #[arg(long, default_value_t = 101)]
        n: usize,
        #[arg(long, default_value_t = 0.0)]
        lo: f64,
        #[arg(long, default_value_t = 1.0)]
        hi: f64,
        /// Output CSV; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the IGD of a population against a reference set.
    Igd(RunConfig),
}

#[derive(Debug, Args)]
pub struct RunConfig {
    /// Population CSV file(s).
    #[arg(long = "pop", num_args = 1.., required = true)]
    pub pop: Vec<PathBuf>,
    /// Reference front CSV file.
    #[arg(long = "ref")]
    pub reference: PathBuf,
    /// `stride2` or `file:PATH` with one index pair per line (comma or space separated).
    #[arg(long, default_value = "stride2")]
    pub pairs: String,
    /// Number of objectives (2 or 3); inferred from the reference set when omitted.
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.5)]
    pub beta: f64,
    /// Observation windows, `start_f1,end_f1` per line.
    #[arg(long)]
    pub windows: Option<PathBuf>,
    /// Report output path (JSON).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    fn validate(&self) -> Result<()> {
        if let Some(d) = self.dim {
            if !(2..=3).contains(&d) {
                return Err(Error::domain(format!("--dim must be 2 or 3, got {d}")));
            }
        }
        if !(self.alpha >= 0.0 && self.beta >= 0.0 && self.alpha + self.beta > 0.0) {
            return Err(Error::domain(format!(
                "weights must be non-negative with a positive sum (alpha = {}, beta = {})",
                self.alpha, self.beta
            )));
        }
        Ok(())
    }

    fn load_reference(&self) -> Result<ReferenceSet> {
        let reference = load_reference(&self.reference)?;
        if let Some(d) = self.dim {
            if reference.dim() != d {
                return Err(Error::domain(format!(
                    "{}: reference set has {} objectives but --dim is {d}",
                    self.reference.display(),
                    reference.dim()
                )));
            }
        }
        Ok(reference)
    }

    fn pairing(&self) -> Result<PairingScheme> {
        match self.pairs.as_str() {
            "stride2" => Ok(PairingScheme::Stride2),
            other => match other.strip_prefix("file:") {
                Some(path) => Ok(PairingScheme::Explicit(load_pairs(path)?)),
                None => Err(Error::domain(format!(
                    "--pairs must be 'stride2' or 'file:PATH', got '{other}'"
                ))),
            },
        }
    }
}

/// Parses `args` and runs the selected command, returning the exit status.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let status = match &cli.command {
        Command::Evaluate(cfg) => cmd_evaluate(cfg, out),
        Command::Compare(cfg) => cmd_compare(cfg, out),
        Command::CaseStudy { out: path } => cmd_case_study(path.as_deref(), out, err),
        Command::GenFront {
            shape,
            n,
            lo,
            hi,
            out: path,
        } => cmd_gen_front(shape, *n, *lo, *hi, path.as_deref(), out),
        Command::Igd(cfg) => cmd_igd(cfg, out),
    };
    match status {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn io_out(e: std::io::Error) -> Error {
    Error::io("<stdout>", e)
}

fn single_pop(cfg: &RunConfig) -> Result<&Path> {
    match cfg.pop.as_slice() {
        [one] => Ok(one),
        _ => Err(Error::domain(format!(
            "expected exactly one --pop file, got {}",
            cfg.pop.len()
        ))),
    }
}

pub fn cmd_evaluate(cfg: &RunConfig, out: &mut impl Write) -> Result<i32> {
    cfg.validate()?;
    let pop_path = single_pop(cfg)?;
    let reference = cfg.load_reference()?;
    let pop = load_population(pop_path)?;
    let windows = match &cfg.windows {
        Some(path) => load_windows(path)?,
        None => Vec::new(),
    };
    let eval = evaluate(&pop, &reference, &cfg.pairing()?, &windows)?;
    let report = &eval.report;

    writeln!(out, "convergence: {:.4}", report.convergence).map_err(io_out)?;
    writeln!(out, "diversity: {:.4}", report.diversity).map_err(io_out)?;
    let h = &report.region_histogram;
    let counts: Vec<String> = RegionLabel::ALL
        .iter()
        .map(|&r| format!("{r} {}", h.get(r)))
        .collect();
    writeln!(out, "solutions: {} ({})", pop.len(), counts.join(", ")).map_err(io_out)?;
    for w in &report.local_windows {
        writeln!(out, "{}", window_line(w)).map_err(io_out)?;
    }
    if let Some(path) = &cfg.out {
        save_report(report, path)?;
    }
    Ok(EXIT_OK)
}

fn window_line(w: &LocalStats) -> String {
    let span = match w.window {
        Some(w) => format!("[{}, {}]", w.start_f1, w.end_f1),
        None => "(other)".to_string(),
    };
    let diversity = w
        .diversity
        .map_or_else(|| "-".to_string(), |d| format!("{d:.4}"));
    format!(
        "window {span}: clusters {} convergence {:.4} diversity {diversity}",
        w.clusters.len(),
        w.convergence
    )
}

pub fn cmd_compare(cfg: &RunConfig, out: &mut impl Write) -> Result<i32> {
    cfg.validate()?;
    if cfg.pop.len() < 2 {
        return Err(Error::domain("compare needs at least two --pop files"));
    }
    let reference = cfg.load_reference()?;
    let pairing = cfg.pairing()?;
    let windows = match &cfg.windows {
        Some(path) => load_windows(path)?,
        None => Vec::new(),
    };
    let mut runs = Vec::with_capacity(cfg.pop.len());
    for path in &cfg.pop {
        let pop = load_population(path)?;
        let eval = evaluate(&pop, &reference, &pairing, &windows)?;
        let name = path.file_stem().map_or_else(
            || path.display().to_string(),
            |s| s.to_string_lossy().into_owned(),
        );
        runs.push(RunSummary::new(
            name,
            eval.report.convergence,
            eval.report.diversity,
        ));
    }
    let result = combined_score(&runs, cfg.alpha, cfg.beta)?;

    writeln!(
        out,
        "{:<4} {:<20} {:>12} {:>10} {:>7} {:>7} {:>7}",
        "rank", "name", "convergence", "diversity", "S1", "S2", "score"
    )
    .map_err(io_out)?;
    for (rank, &i) in result.ranking.iter().enumerate() {
        let r = &result.runs[i];
        writeln!(
            out,
            "{:<4} {:<20} {:>12.4} {:>10.4} {:>7.4} {:>7.4} {:>7.4}",
            rank + 1,
            r.name,
            r.convergence,
            r.diversity,
            r.s1,
            r.s2,
            r.score
        )
        .map_err(io_out)?;
    }
    if let Some(path) = &cfg.out {
        save_report(&result, path)?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_case_study(
    path: Option<&Path>,
    out: &mut impl Write,
    err: &mut impl Write,
) -> Result<i32> {
    let study = run_case_study()?;
    writeln!(
        out,
        "{:<5} {:>8} {:>8} {:>8} {:>8}  region",
        "spot", "f1", "f2", "IGD", "score"
    )
    .map_err(io_out)?;
    for (i, p) in study.probes.iter().enumerate() {
        writeln!(
            out,
            "{:<5} {:>8.4} {:>8.4} {:>8.4} {:>8.4}  {}",
            i + 1,
            p.solution.f1(),
            p.solution.f2(),
            p.igd_contribution,
            p.grade.value,
            p.grade.region
        )
        .map_err(io_out)?;
    }
    if let Some(path) = path {
        save_report(&study.report, path)?;
    }
    match study.check() {
        Ok(()) => Ok(EXIT_OK),
        Err(msg) => {
            let _ = writeln!(err, "case study failed: {msg}");
            Ok(EXIT_CHECK_FAILED)
        }
    }
}

pub fn cmd_gen_front(
    shape: &str,
    n: usize,
    lo: f64,
    hi: f64,
    path: Option<&Path>,
    out: &mut impl Write,
) -> Result<i32> {
    let spec = FrontSpec {
        shape: shape.parse::<FrontShape>()?,
        n_points: n,
        f1_range: (lo, hi),
    };
    let front = generate_front(&spec)?;
    match path {
        Some(path) => save_population(path, front.points())?,
        None => {
            for p in front.points() {
                writeln!(out, "{},{}", p.f1(), p.f2()).map_err(io_out)?;
            }
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_igd(cfg: &RunConfig, out: &mut impl Write) -> Result<i32> {
    cfg.validate()?;
    let pop = load_population(single_pop(cfg)?)?;
    let reference = cfg.load_reference()?;
    writeln!(out, "{:.6}", igd(&pop, &reference)?).map_err(io_out)?;
    Ok(EXIT_OK)
}
