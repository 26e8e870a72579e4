//! Amplitude-amplification search drivers with query accounting.
//!
//! [`search_known_m`] runs the fixed `q*` rounds for a known match count.
//! [`search_unknown_m`] runs the randomized schedule for an unknown count:
//!
//! 1. `m = 1`, `λ = 8/7`.
//! 2. Draw `s` uniformly from `0..=min(ceil(m), floor(sqrt N)) - 1`.
//! 3. Prepare the uniform state afresh and apply `s` oracle + diffusion rounds.
//! 4. Measure `t`; stop if `g(t) = 1`.
//! 5. `m = min(λ m, sqrt N)`; go to 2.
//!
//! The loop never ends on its own when `g` has no solutions, so it runs
//! under a [`SearchBudget`]. Random draws happen in a fixed order per round:
//! first `s`, then the measurement.

use crate::analytic::{iteration_count, SearchParams};
use crate::oracle::Oracle;
use crate::statevec::{check_width, QuantumState};
use crate::{Error, Result};
use rand::Rng;
use serde::Serialize;

/// Growth factor of the iteration range.
pub const GROWTH_FACTOR: f64 = 8.0 / 7.0;

/// Default multiplier `c` in the post-warm-up allowance of `ceil(c sqrt N)` iterations.
pub const DEFAULT_BUDGET_MULTIPLIER: f64 = 3.0;

/// Queries spent by a search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct QueryCounter {
    /// Quantum applications of `U_g`.
    pub g_oracle_calls: u64,
    /// Classical evaluations of `g` (constant-term check, witness checks).
    pub classical_checks: u64,
    /// Prepare-iterate-measure cycles.
    pub rounds: u64,
}

impl QueryCounter {
    /// Every `U_g` is two uses of the base black box `U_f`.
    pub fn base_oracle_calls(&self) -> u64 {
        2 * self.g_oracle_calls
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SearchStatus {
    Found,
    NotFound,
}

/// One round of a search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RoundRecord {
    /// 1-based round number.
    pub round: u64,
    /// Exclusive upper end of the range `s` was drawn from.
    pub m: u64,
    /// Oracle + diffusion rounds applied.
    pub s: u64,
    /// Measured input.
    pub outcome: u32,
    /// `g(outcome)`.
    pub hit: bool,
    /// Iterations applied so far, this round included.
    pub cumulative_iterations: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    /// Classically verified solution, present iff `status` is `Found`.
    pub witness: Option<u32>,
    pub queries: QueryCounter,
    pub trace: Vec<RoundRecord>,
}

/// Termination policy of the unknown-`M` loop.
///
/// The first `warmup_rounds` rounds always run; they are exactly the rounds
/// needed for `m` to grow from 1 to `sqrt N`. After that, at most
/// `post_cap_iterations` further iterations are spent; the round that
/// reaches the allowance has its `s` truncated to fit, and the search ends
/// with `NotFound` once the allowance is used up. For `N < 4`, where every
/// round has `s = 0`, each post-cap round uses one unit of the allowance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    pub warmup_rounds: u64,
    pub post_cap_iterations: u64,
}

impl SearchBudget {
    /// `ceil(log_λ sqrt N)` warm-up rounds and `ceil(c sqrt N)` post-cap
    /// iterations for `N = 2^n`.
    pub fn for_width(n: usize, multiplier: f64) -> Self {
        let root = ((1u64 << n) as f64).sqrt();
        SearchBudget {
            warmup_rounds: (root.ln() / GROWTH_FACTOR.ln()).ceil().max(1.0) as u64,
            post_cap_iterations: (multiplier * root).ceil().max(0.0) as u64,
        }
    }

    /// Largest number of iterations this budget can spend for `N = 2^n`.
    pub fn max_iterations(&self, n: usize) -> u64 {
        let cap = s_cap(1u64 << n);
        let mut m = 1.0f64;
        let mut total = 0;
        for _ in 0..self.warmup_rounds {
            total += range_end(m, cap) - 1;
            m = (GROWTH_FACTOR * m).min(((1u64 << n) as f64).sqrt());
        }
        total + self.post_cap_iterations
    }

    fn validate(&self) -> Result<()> {
        if self.warmup_rounds == 0 || self.post_cap_iterations == 0 {
            Err(Error::InvalidBudget)
        } else {
            Ok(())
        }
    }
}

/// `floor(sqrt N)`, at least 1.
fn s_cap(items: u64) -> u64 {
    ((items as f64).sqrt().floor() as u64).max(1)
}

/// Exclusive end of the `s` range for growth variable `m`.
fn range_end(m: f64, cap: u64) -> u64 {
    (m.ceil() as u64).clamp(1, cap)
}

/// Prepares the uniform state and applies `rounds` oracle + diffusion rounds.
pub fn amplify<O: Oracle + ?Sized>(oracle: &O, rounds: u64) -> Result<QuantumState> {
    let mut state = QuantumState::uniform_superposition(oracle.arity())?;
    for _ in 0..rounds {
        oracle.apply(&mut state)?;
        state.apply_partial_diffusion();
    }
    Ok(state)
}

/// Fixed-iteration search for a known match count `matches`.
pub fn search_known_m<O, R>(oracle: &O, matches: u64, rng: &mut R) -> Result<SearchOutcome>
where
    O: Oracle + ?Sized,
    R: Rng + ?Sized,
{
    check_width(oracle.arity())?;
    let items = 1u64 << oracle.arity();
    if matches == 0 || matches > items {
        return Err(Error::MatchCount { matches, items });
    }
    let rounds = iteration_count(&SearchParams::new(items, matches)?)?;
    let state = amplify(oracle, rounds)?;
    let t = state.measure_input(rng);
    let hit = oracle.evaluate(t);
    Ok(SearchOutcome {
        status: if hit {
            SearchStatus::Found
        } else {
            SearchStatus::NotFound
        },
        witness: hit.then_some(t),
        queries: QueryCounter {
            g_oracle_calls: rounds,
            classical_checks: 1,
            rounds: 1,
        },
        trace: vec![RoundRecord {
            round: 1,
            m: rounds + 1,
            s: rounds,
            outcome: t,
            hit,
            cumulative_iterations: rounds,
        }],
    })
}

/// Randomized search for an unknown number of matches.
pub fn search_unknown_m<O, R>(
    oracle: &O,
    rng: &mut R,
    budget: SearchBudget,
) -> Result<SearchOutcome>
where
    O: Oracle + ?Sized,
    R: Rng + ?Sized,
{
    check_width(oracle.arity())?;
    budget.validate()?;
    let items = 1u64 << oracle.arity();
    let root = (items as f64).sqrt();
    let cap = s_cap(items);

    let mut m = 1.0f64;
    let mut queries = QueryCounter::default();
    let mut trace = Vec::new();
    let mut post_cap_spent = 0u64;

    loop {
        let in_warmup = queries.rounds < budget.warmup_rounds;
        let remaining = budget.post_cap_iterations - post_cap_spent;
        if !in_warmup && remaining == 0 {
            break;
        }

        let end = range_end(m, cap);
        let mut s = rng.gen_range(0..end);
        if !in_warmup {
            s = s.min(remaining);
            // with floor(sqrt N) = 1 no round can iterate; spend one unit per measurement
            post_cap_spent += s.max((cap == 1) as u64);
        }

        let state = amplify(oracle, s)?;
        let t = state.measure_input(rng);
        let hit = oracle.evaluate(t);

        queries.g_oracle_calls += s;
        queries.classical_checks += 1;
        queries.rounds += 1;
        trace.push(RoundRecord {
            round: queries.rounds,
            m: end,
            s,
            outcome: t,
            hit,
            cumulative_iterations: queries.g_oracle_calls,
        });

        if hit {
            return Ok(SearchOutcome {
                status: SearchStatus::Found,
                witness: Some(t),
                queries,
                trace,
            });
        }
        m = (GROWTH_FACTOR * m).min(root);
    }

    Ok(SearchOutcome {
        status: SearchStatus::NotFound,
        witness: None,
        queries,
        trace,
    })
}
