//! End-to-end test of one variable of a black-box function.
//!
//! 1. Build `g = f ^ f_{¬x_i}` from two copies of the black box.
//! 2. Evaluate `g` at the all-zeros input; a 1 flags `x_i` as relevant at once.
//! 3. Otherwise run the unknown-`M` search on `g`. A verified solution flags
//!    `x_i` as relevant; an exhausted budget reports it as junta.
//!
//! `g` is identically zero exactly when `x_i` is junta, so a junta variable
//! is never misreported. A `Junta` verdict on a relevant variable is possible
//! and its likelihood is set by the search budget.

use crate::boolfn::{influence, TruthTable, VarIndex};
use crate::oracle::{ComposedOracle, Oracle};
use crate::rng::{derive_seed, trial_rng};
use crate::search::{
    search_unknown_m, QueryCounter, RoundRecord, SearchBudget, SearchStatus,
    DEFAULT_BUDGET_MULTIPLIER,
};
use crate::statevec::check_width;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestConfig {
    /// `c` in the post-warm-up allowance `ceil(c sqrt N)`; must be positive.
    pub budget_multiplier: f64,
    /// Overrides the default warm-up round count when set.
    pub warmup_rounds: Option<u64>,
    pub seed: u64,
    /// Repetitions requested of a harness; [`test_variable`] runs once.
    pub trials: u64,
}

impl Default for TestConfig {
    fn default() -> Self {
        TestConfig {
            budget_multiplier: DEFAULT_BUDGET_MULTIPLIER,
            warmup_rounds: None,
            seed: 0,
            trials: 1,
        }
    }
}

impl TestConfig {
    pub fn with_seed(seed: u64) -> Self {
        TestConfig {
            seed,
            ..Self::default()
        }
    }

    pub fn budget(&self, n: usize) -> Result<SearchBudget> {
        if !(self.budget_multiplier > 0.0 && self.budget_multiplier.is_finite()) {
            return Err(Error::InvalidBudget);
        }
        let mut budget = SearchBudget::for_width(n, self.budget_multiplier);
        if let Some(w) = self.warmup_rounds {
            budget.warmup_rounds = w;
        }
        Ok(budget)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// No solution of `g` was seen before the budget ran out.
    Junta,
    NotJunta,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Junta => "Junta",
            Verdict::NotJunta => "NotJunta",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TestReport {
    pub variable: VarIndex,
    pub verdict: Verdict,
    /// Input with `g(witness) = 1`; all-zeros when the constant-term check fired.
    pub witness: Option<u32>,
    pub shortcut_hit: bool,
    /// `g` queries, including the constant-term check.
    pub queries: QueryCounter,
    pub trace: Vec<RoundRecord>,
    pub seed: u64,
    /// Brute-force influence of the variable, attached by harnesses.
    pub influence: Option<f64>,
}

impl TestReport {
    /// `U_g` applications plus the constant-term query.
    pub fn g_queries(&self) -> u64 {
        self.queries.g_oracle_calls
    }

    /// Two black-box queries per `g` query.
    pub fn f_queries(&self) -> u64 {
        self.queries.base_oracle_calls()
    }

    /// Computes and stores the ground-truth influence.
    pub fn attach_influence(&mut self, f: &TruthTable) -> Result<()> {
        self.influence = Some(influence(f, self.variable)?);
        Ok(())
    }

    pub fn record(&self) -> ReportRecord {
        ReportRecord {
            variable: self.variable.get(),
            verdict: self.verdict,
            witness_hex: self.witness.map(|w| format!("{w:#x}")),
            shortcut_hit: self.shortcut_hit,
            g_queries: self.g_queries(),
            f_queries: self.f_queries(),
            rounds: self.queries.rounds,
            seed: self.seed,
        }
    }
}

/// Serialized form of a [`TestReport`], shared by the JSON and CSV outputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub variable: usize,
    pub verdict: Verdict,
    pub witness_hex: Option<String>,
    pub shortcut_hit: bool,
    pub g_queries: u64,
    pub f_queries: u64,
    pub rounds: u64,
    pub seed: u64,
}

/// Table of `g(x) = f(x) ^ f(x ^ e_i)`.
pub fn build_g_oracle(f: &TruthTable, i: VarIndex) -> Result<TruthTable> {
    f.xor(&f.flip_variable(i)?)
}

/// Tests whether `x_i` is junta in `f`, touching `f` only through queries.
pub fn test_variable(f: &TruthTable, i: VarIndex, config: &TestConfig) -> Result<TestReport> {
    check_width(f.arity())?;
    let g = ComposedOracle::new(f, i)?;
    let budget = config.budget(f.arity())?;

    let mut report = TestReport {
        variable: i,
        verdict: Verdict::NotJunta,
        witness: None,
        shortcut_hit: false,
        queries: QueryCounter {
            g_oracle_calls: 1,
            classical_checks: 1,
            rounds: 0,
        },
        trace: Vec::new(),
        seed: config.seed,
        influence: None,
    };

    if g.evaluate(0) {
        report.shortcut_hit = true;
        report.witness = Some(0);
        return Ok(report);
    }

    let mut rng = trial_rng(config.seed);
    let outcome = search_unknown_m(&g, &mut rng, budget)?;
    report.queries.g_oracle_calls += outcome.queries.g_oracle_calls;
    report.queries.classical_checks += outcome.queries.classical_checks;
    report.queries.rounds = outcome.queries.rounds;
    report.trace = outcome.trace;
    match outcome.status {
        SearchStatus::Found => report.witness = outcome.witness,
        SearchStatus::NotFound => report.verdict = Verdict::Junta,
    }
    Ok(report)
}

/// Tests every variable; variable `i` runs with seed `derive_seed(seed, i)`.
pub fn test_all_variables(f: &TruthTable, config: &TestConfig) -> Result<Vec<TestReport>> {
    (0..f.arity())
        .map(|i| {
            let cfg = TestConfig {
                seed: derive_seed(config.seed, i as u64),
                ..*config
            };
            test_variable(f, VarIndex::new(i), &cfg)
        })
        .collect()
}
