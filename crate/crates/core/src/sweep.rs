//! Seeded parameter sweeps over register width and fixture family.
//!
//! Seeding: trial `t` of a sweep seeded with `seed` uses
//! `base = derive_seed(seed + t, n)`; fixture `k` (0-based, in the order
//! given) draws its function from `derive_seed(base, 2k)` and runs the
//! tester with `derive_seed(base, 2k + 1)`. The tested variable is drawn
//! uniformly from the fixture stream before the function itself.

use crate::boolfn::{is_junta_ground_truth, VarIndex};
use crate::generators::{GeneratorRegistry, GeneratorSpec};
use crate::junta::{test_variable, TestConfig, TestReport, Verdict};
use crate::rng::{derive_seed, trial_rng, trial_seed};
use crate::Result;
use rand::Rng;
use rayon::prelude::*;
use std::io::Write;

pub const CSV_HEADER: &str = "n,fixture,verdict_rate,mean_g_queries,mean_f_queries,seed";

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub n_min: usize,
    pub n_max: usize,
    pub fixtures: Vec<GeneratorSpec>,
    pub trials: u64,
    pub seed: u64,
    pub config: TestConfig,
}

/// One tester run on one generated fixture.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialResult {
    pub trial: u64,
    pub report: TestReport,
    /// Brute-force verdict for the tested variable.
    pub truly_junta: bool,
}

impl TrialResult {
    pub fn correct(&self) -> bool {
        (self.report.verdict == Verdict::Junta) == self.truly_junta
    }
}

/// Aggregate for one `(n, fixture)` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub n: usize,
    pub fixture: String,
    /// Fraction of trials whose verdict matches the brute-force ground truth.
    pub verdict_rate: f64,
    pub mean_g_queries: f64,
    pub mean_f_queries: f64,
    pub seed: u64,
}

impl SweepRow {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{:.6},{:.6},{:.6},{}",
            self.n,
            self.fixture,
            self.verdict_rate,
            self.mean_g_queries,
            self.mean_f_queries,
            self.seed
        )
    }
}

/// Runs `trials` seeded trials of fixture number `index` of a sweep at width `n`.
pub fn run_fixture_trials(
    registry: &GeneratorRegistry,
    fixture: &GeneratorSpec,
    index: usize,
    n: usize,
    trials: u64,
    seed: u64,
    config: &TestConfig,
) -> Result<Vec<TrialResult>> {
    registry.get(&fixture.name)?;
    (0..trials)
        .into_par_iter()
        .map(|t| {
            let base = derive_seed(trial_seed(seed, t), n as u64);
            let mut rng = trial_rng(derive_seed(base, 2 * index as u64));
            let var = VarIndex::new(rng.gen_range(0..n));
            let f = registry
                .generate(fixture, n, Some(var), &mut rng)?
                .to_truth_table()?;
            let cfg = TestConfig {
                seed: derive_seed(base, 2 * index as u64 + 1),
                ..*config
            };
            Ok(TrialResult {
                trial: t,
                report: test_variable(&f, var, &cfg)?,
                truly_junta: is_junta_ground_truth(&f, var)?,
            })
        })
        .collect()
}

pub fn summarize(
    n: usize,
    fixture: &GeneratorSpec,
    seed: u64,
    results: &[TrialResult],
) -> SweepRow {
    let count = results.len().max(1) as f64;
    let mean = |f: &dyn Fn(&TrialResult) -> u64| results.iter().map(f).sum::<u64>() as f64 / count;
    SweepRow {
        n,
        fixture: fixture.to_string(),
        verdict_rate: results.iter().filter(|r| r.correct()).count() as f64 / count,
        mean_g_queries: mean(&|r| r.report.g_queries()),
        mean_f_queries: mean(&|r| r.report.f_queries()),
        seed,
    }
}

pub fn run_sweep(registry: &GeneratorRegistry, spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for n in spec.n_min..=spec.n_max {
        for (k, fixture) in spec.fixtures.iter().enumerate() {
            let results = run_fixture_trials(
                registry,
                fixture,
                k,
                n,
                spec.trials,
                spec.seed,
                &spec.config,
            )?;
            rows.push(summarize(n, fixture, spec.seed, &results));
        }
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[SweepRow], mut w: W) -> std::io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(w, "{}", r.csv_line())?;
    }
    Ok(())
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn fit_loglog_exponent(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}
