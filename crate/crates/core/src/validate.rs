//! Self-checks runnable outside the test framework: the closed-form model
//! against the simulator, operator unitarity, and the exhaustive
//! three-variable function algebra.

use crate::analytic::{
    grid_matches, iteration_bound, iteration_count, success_probability, trajectory, SearchParams,
};
use crate::boolfn::{is_junta_ground_truth, AnfFunction, TruthTable, VarIndex};
use crate::golden::{check_against_simulation, GridRow, Violation};
use crate::junta::build_g_oracle;
use crate::rng::trial_rng;
use crate::statevec::{group_amplitudes, matrix, AmplitudeTriple, GroupedAmplitudes, QuantumState};
use crate::Result;
use rand::Rng;

pub const AMPLITUDE_TOLERANCE: f64 = 1e-10;
pub const PROBABILITY_TOLERANCE: f64 = 1e-9;
pub const UNITARITY_TOLERANCE: f64 = 1e-10;
pub const IMAGINARY_TOLERANCE: f64 = 1e-12;

/// Desired set of `M` inputs out of `2^n`, scattered by an odd stride so it
/// is not just a prefix.
pub fn grid_oracle(n: usize, matches: u64) -> Result<TruthTable> {
    let items = 1u64 << n;
    let stride = ((items as f64 * 0.618_033_988_7) as u64) | 1;
    TruthTable::from_fn(n, |x| (x as u64 * stride) % items < matches)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulatedRound {
    pub grouped: GroupedAmplitudes,
    /// Probability mass on desired inputs.
    pub success_mass: f64,
    pub norm_sqr: f64,
}

/// Simulates `q = 0..=q_max` oracle + diffusion rounds on the grid oracle.
pub fn simulate_groups(n: usize, matches: u64, q_max: u64) -> Result<Vec<SimulatedRound>> {
    let g = grid_oracle(n, matches)?;
    let mut state = QuantumState::uniform_superposition(n)?;
    let mut out = Vec::with_capacity(q_max as usize + 1);
    for q in 0..=q_max {
        if q > 0 {
            state.apply_oracle(&g)?;
            state.apply_partial_diffusion();
        }
        let dist = state.exact_distribution();
        out.push(SimulatedRound {
            grouped: group_amplitudes(&state, &g, q)?,
            success_mass: (0..dist.len())
                .filter(|&x| g.get(x as u32))
                .map(|x| dist[x])
                .sum(),
            norm_sqr: state.norm_sqr(),
        });
    }
    Ok(out)
}

/// Largest amplitude difference over the groups that are non-empty for
/// `M` of `2^n` desired inputs.
pub fn group_deviation(
    model: &AmplitudeTriple,
    sim: &AmplitudeTriple,
    n: usize,
    matches: u64,
) -> f64 {
    let mut d: f64 = 0.0;
    if matches < 1u64 << n {
        d = d.max((model.a - sim.a).abs());
    }
    if matches > 0 {
        d = d.max((model.b - sim.b).abs()).max((model.c - sim.c).abs());
    }
    d
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    /// Worst observed deviation (or violation count for exact checks).
    pub worst: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Informational checks never fail the run.
    pub informational: bool,
    pub detail: String,
}

impl CheckResult {
    fn tolerance(name: &'static str, worst: f64, tolerance: f64, detail: String) -> Self {
        CheckResult {
            name,
            worst,
            tolerance,
            passed: worst < tolerance,
            informational: false,
            detail,
        }
    }

    fn exact(name: &'static str, failures: usize, detail: String) -> Self {
        CheckResult {
            name,
            worst: failures as f64,
            tolerance: 0.0,
            passed: failures == 0,
            informational: false,
            detail,
        }
    }
}

/// One `(n, M, q*, P_s(q*))` line of the success-probability table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuccessRow {
    pub n: usize,
    pub matches: u64,
    pub q_star: u64,
    pub p_success: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidateOptions {
    pub max_n: usize,
    pub golden: Option<Vec<GridRow>>,
    pub success_only: bool,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        ValidateOptions {
            max_n: 8,
            golden: None,
            success_only: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
    pub success_table: Vec<SuccessRow>,
    pub golden_violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || c.informational) && self.golden_violations.is_empty()
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub fn success_table(max_n: usize) -> Result<Vec<SuccessRow>> {
    let mut rows = Vec::new();
    for n in 2..=max_n {
        for m in grid_matches(n) {
            let p = SearchParams::for_width(n, m)?;
            let q_star = iteration_count(&p)?;
            rows.push(SuccessRow {
                n,
                matches: m,
                q_star,
                p_success: success_probability(&p, q_star)?,
            });
        }
    }
    Ok(rows)
}

pub fn run_validation(opts: &ValidateOptions) -> Result<ValidationReport> {
    let mut report = ValidationReport {
        success_table: success_table(opts.max_n)?,
        ..Default::default()
    };
    if opts.success_only {
        return Ok(report);
    }
    report.checks.extend(grid_checks(opts.max_n)?);
    report
        .checks
        .push(unitarity_check(opts.max_n.min(matrix::MAX_MATRIX_QUBITS))?);
    report.checks.push(involution_check(opts.max_n)?);
    report.checks.push(junta_equivalence_check()?);
    if let Some(rows) = &opts.golden {
        report.golden_violations = check_against_simulation(rows)?;
        report.checks.push(CheckResult::exact(
            "golden-file",
            report.golden_violations.len(),
            format!("{} rows", rows.len()),
        ));
    }
    Ok(report)
}

fn grid_checks(max_n: usize) -> Result<Vec<CheckResult>> {
    let mut amp_dev: f64 = 0.0;
    let mut amp_at = String::new();
    let mut prob_dev: f64 = 0.0;
    let mut prob_at = String::new();
    let mut norm_dev: f64 = 0.0;
    let mut spread: f64 = 0.0;
    let mut imag: f64 = 0.0;
    let mut bound_failures = Vec::new();
    let mut low_coverage = Vec::new();
    let mut points = 0;

    for n in 2..=max_n {
        for m in grid_matches(n) {
            let p = SearchParams::for_width(n, m)?;
            let q_star = iteration_count(&p)?;
            let model = trajectory(&p, 2 * q_star)?;
            let sim = simulate_groups(n, m, 2 * q_star)?;
            for (t, s) in model.iter().zip(&sim) {
                points += 1;
                let d = group_deviation(t, &s.grouped.triple, n, m).max(s.grouped.max_stray);
                if d > amp_dev {
                    amp_dev = d;
                    amp_at = format!("n={n} M={m} q={}", t.q);
                }
                let ps = success_probability(&p, t.q)?;
                let d = (ps - s.success_mass).abs();
                if d > prob_dev {
                    prob_dev = d;
                    prob_at = format!("n={n} M={m} q={}", t.q);
                }
                norm_dev = norm_dev.max((s.norm_sqr - 1.0).abs());
                spread = spread.max(s.grouped.max_spread);
                imag = imag.max(s.grouped.max_imag);
            }
            if q_star as f64 > iteration_bound(&p)? + 1.0 {
                bound_failures.push(format!("n={n} M={m} q*={q_star}"));
            }
            if success_probability(&p, q_star)? < 0.5 {
                low_coverage.push(format!("n={n} M={m}"));
            }
        }
    }

    Ok(vec![
        CheckResult::tolerance(
            "recurrence-vs-simulator",
            amp_dev,
            AMPLITUDE_TOLERANCE,
            format!("{points} points, worst at {amp_at}"),
        ),
        CheckResult::tolerance(
            "success-probability-vs-simulator",
            prob_dev,
            PROBABILITY_TOLERANCE,
            format!("{points} points, worst at {prob_at}"),
        ),
        CheckResult::exact(
            "iteration-bound",
            bound_failures.len(),
            bound_failures.join("; "),
        ),
        CheckResult::tolerance(
            "norm-preservation",
            norm_dev,
            AMPLITUDE_TOLERANCE,
            String::new(),
        ),
        CheckResult::tolerance(
            "group-structure",
            spread,
            AMPLITUDE_TOLERANCE,
            String::new(),
        ),
        CheckResult::tolerance("real-amplitudes", imag, IMAGINARY_TOLERANCE, String::new()),
        CheckResult {
            name: "coverage-at-q*",
            worst: low_coverage.len() as f64,
            tolerance: 0.0,
            passed: low_coverage.is_empty(),
            informational: true,
            detail: if low_coverage.is_empty() {
                "P_s(q*) >= 0.5 everywhere".into()
            } else {
                format!("P_s(q*) < 0.5 at {}", low_coverage.join("; "))
            },
        },
    ])
}

fn unitarity_check(max_n: usize) -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    let mut at = 0;
    for n in 1..=max_n {
        let d = matrix::partial_diffusion(n)?.unitarity_defect();
        if d > worst {
            worst = d;
            at = n;
        }
    }
    Ok(CheckResult::tolerance(
        "diffusion-unitarity",
        worst,
        UNITARITY_TOLERANCE,
        format!("n=1..={max_n}, worst at n={at}"),
    ))
}

fn involution_check(max_n: usize) -> Result<CheckResult> {
    let mut rng = trial_rng(0x0dd);
    let mut failures = 0;
    for n in 1..=max_n {
        for _ in 0..4 {
            let g = TruthTable::from_fn(n, |_| rng.gen())?;
            let mut state = QuantumState::uniform_superposition(n)?;
            state.apply_oracle(&g)?;
            state.apply_partial_diffusion();
            let before = state.clone();
            state.apply_oracle(&g)?;
            state.apply_oracle(&g)?;
            failures += (state != before) as usize;
        }
    }
    Ok(CheckResult::exact(
        "oracle-involution",
        failures,
        format!("n=1..={max_n}"),
    ))
}

fn junta_equivalence_check() -> Result<CheckResult> {
    let mut failures = 0;
    for code in 0..256u32 {
        let f = TruthTable::from_fn(3, |x| code >> x & 1 == 1)?;
        let anf = AnfFunction::from_truth_table(&f);
        for i in 0..3 {
            let var = VarIndex::new(i);
            let symbolic = anf.derive_g(var)?;
            let table = build_g_oracle(&f, var)?;
            let ok = symbolic.to_truth_table()? == table
                && symbolic.is_zero() == is_junta_ground_truth(&f, var)?
                && symbolic.terms().all(|t| !t.contains(var));
            failures += !ok as usize;
        }
    }
    Ok(CheckResult::exact(
        "junta-equivalence-n3",
        failures,
        "256 functions x 3 variables".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_oracle_has_requested_matches() {
        for n in 1..=8 {
            for m in 0..=(1u64 << n) {
                assert_eq!(grid_oracle(n, m).unwrap().count_ones(), m);
            }
        }
    }

    #[test]
    fn small_grid_passes() {
        let report = run_validation(&ValidateOptions {
            max_n: 5,
            ..Default::default()
        })
        .unwrap();
        for c in &report.checks {
            assert!(c.passed || c.informational, "{c:?}");
        }
        assert!(report.passed());
    }

    #[test]
    fn success_table_all_matches_row() {
        let rows = success_table(4).unwrap();
        let full = rows.iter().find(|r| r.n == 4 && r.matches == 16).unwrap();
        assert_eq!(full.q_star, 1);
        // at θ = π/2, P_s(1) = sin²(π) + sin²(π/2)
        assert!((full.p_success - 1.0).abs() < 1e-12);
    }
}
