//! Seeded statistical checks of the two search drivers.

use qjunta::analytic::{iteration_count, success_probability, SearchParams};
use qjunta::boolfn::TruthTable;
use qjunta::rng::{trial_rng, trial_seed};
use qjunta::search::{amplify, search_known_m, search_unknown_m, SearchBudget, SearchStatus};
use qjunta::statevec::QuantumState;

const TRIALS: u64 = 10_000;

fn sigma(p: f64, trials: u64) -> f64 {
    (p * (1.0 - p) / trials as f64).sqrt()
}

/// Allowed deviation: 3 sigma, but never below one count.
fn band(p: f64, trials: u64) -> f64 {
    (3.0 * sigma(p, trials)).max(1.0 / trials as f64)
}

fn table(n: usize, pred: impl Fn(u32) -> bool) -> TruthTable {
    TruthTable::from_fn(n, pred).unwrap()
}

#[test]
fn known_m_single_solution_rate_matches_closed_form() {
    let g = table(4, |x| x == 0b1011);
    let p = success_probability(&SearchParams::for_width(4, 1).unwrap(), 4).unwrap();
    assert_eq!(
        iteration_count(&SearchParams::for_width(4, 1).unwrap()).unwrap(),
        4
    );
    let found = (0..TRIALS)
        .filter(|&t| {
            let out = search_known_m(&g, 1, &mut trial_rng(trial_seed(100, t))).unwrap();
            assert_eq!(out.queries.g_oracle_calls, 4);
            out.status == SearchStatus::Found
        })
        .count() as f64
        / TRIALS as f64;
    assert!(
        (found - p).abs() <= band(p, TRIALS),
        "rate {found} vs P_s {p}"
    );
}

#[test]
fn known_m_everything_matches() {
    let g = table(5, |_| true);
    for t in 0..100 {
        let out = search_known_m(&g, 32, &mut trial_rng(t)).unwrap();
        assert_eq!(out.status, SearchStatus::Found);
        assert_eq!(out.queries.g_oracle_calls, 1);
    }
}

#[test]
fn known_m_with_no_solutions_never_finds() {
    let g = table(4, |_| false);
    for t in 0..200 {
        let out = search_known_m(&g, 1, &mut trial_rng(t)).unwrap();
        assert_eq!(out.status, SearchStatus::NotFound);
        assert_eq!(out.witness, None);
    }
}

fn rounds_to_find(g: &TruthTable, seed: u64) -> Option<u64> {
    let out = search_unknown_m(
        g,
        &mut trial_rng(seed),
        SearchBudget::for_width(g.arity(), 3.0),
    )
    .unwrap();
    (out.status == SearchStatus::Found).then_some(out.queries.rounds)
}

#[test]
fn unknown_m_half_matches_found_early() {
    // M = N/2: theta = pi/3, so s = 0 finds with probability 1/2 and s = 1
    // with probability 1. Round 1 draws s from {0}, rounds 2..4 from {0, 1}.
    let g = table(4, |x| x.count_ones() % 2 == 1);
    let rounds: Vec<Option<u64>> = (0..TRIALS)
        .map(|t| rounds_to_find(&g, trial_seed(200, t)))
        .collect();
    let within =
        |k: u64| rounds.iter().filter(|r| r.is_some_and(|r| r <= k)).count() as f64 / TRIALS as f64;

    let two = 1.0 - 0.5 * 0.25;
    let four = 1.0 - 0.5 * 0.25f64.powi(3);
    assert!(
        (within(2) - two).abs() <= band(two, TRIALS),
        "within two rounds {}",
        within(2)
    );
    assert!(
        (within(4) - four).abs() <= band(four, TRIALS),
        "within four rounds {}",
        within(4)
    );
    assert!(within(4) >= 0.99);
}

#[test]
fn unknown_m_no_solution_exhausts_budget() {
    let g = table(4, |_| false);
    let budget = SearchBudget::for_width(4, 3.0);
    for t in 0..500 {
        let out = search_unknown_m(&g, &mut trial_rng(t), budget).unwrap();
        assert_eq!(out.status, SearchStatus::NotFound);
        assert!(out.queries.g_oracle_calls <= budget.max_iterations(4));
        let total: u64 = out.trace.iter().map(|r| r.s).sum();
        assert_eq!(total, out.queries.g_oracle_calls);
        for r in &out.trace {
            assert!(r.s < r.m && r.m <= 4, "{r:?}");
        }
    }
}

#[test]
fn unknown_m_single_solution_mean_cost() {
    let n = 8;
    let g = table(n, |x| x == 0xa5);
    let budget = SearchBudget::for_width(n, 3.0);
    let mut calls = 0u64;
    let mut found = 0u64;
    for t in 0..TRIALS {
        let out = search_unknown_m(&g, &mut trial_rng(trial_seed(300, t)), budget).unwrap();
        calls += out.queries.g_oracle_calls;
        if let Some(w) = out.witness {
            assert_eq!(w, 0xa5);
            found += 1;
        }
    }
    let mean = calls as f64 / TRIALS as f64;
    assert!(mean <= 4.0 * 16.0, "mean g-oracle calls {mean}");
    // pinned for this seed family
    assert!((mean - 25.40).abs() < 0.01, "mean g-oracle calls {mean}");
    assert!(found as f64 / TRIALS as f64 > 0.99);
}

#[test]
fn measurement_frequencies_follow_exact_distribution() {
    let g = table(3, |x| x == 6 || x == 1);
    let state = amplify(&g, 1).unwrap();
    let dist = state.exact_distribution();
    let mut counts = [0u64; 8];
    let mut rng = trial_rng(400);
    for _ in 0..TRIALS {
        counts[state.measure_input(&mut rng) as usize] += 1;
    }
    for (x, &c) in counts.iter().enumerate() {
        let rate = c as f64 / TRIALS as f64;
        assert!(
            (rate - dist[x]).abs() <= band(dist[x], TRIALS),
            "x={x}: {rate} vs {}",
            dist[x]
        );
    }
}

#[test]
fn exact_distribution_at_optimum_matches_closed_form() {
    let g = table(4, |x| x == 3 || x == 12);
    let p = SearchParams::for_width(4, 2).unwrap();
    let q = iteration_count(&p).unwrap();
    let dist = amplify(&g, q).unwrap().exact_distribution();
    let mass = dist[3] + dist[12];
    assert!((mass - success_probability(&p, q).unwrap()).abs() < 1e-9);
}

#[test]
fn sixteen_items_four_matches_beats_half() {
    let p = SearchParams::for_width(4, 4).unwrap();
    let q = iteration_count(&p).unwrap();
    assert_eq!(q, 2);
    // cos theta = 3/4; both the closed form and the recurrence give 61/64
    let ps = success_probability(&p, q).unwrap();
    assert!(ps > 0.5);
    assert!((ps - 61.0 / 64.0).abs() < 1e-12, "{ps}");
}

#[test]
fn two_items_one_match_recurrence_against_simulator() {
    use qjunta::analytic::trajectory;
    use qjunta::statevec::group_amplitudes;
    let g = table(2, |x| x == 2);
    let p = SearchParams::for_width(2, 1).unwrap();
    let model = trajectory(&p, 5).unwrap();
    let mut state = QuantumState::uniform_superposition(2).unwrap();
    for t in &model {
        if t.q > 0 {
            state.apply_oracle(&g).unwrap();
            state.apply_partial_diffusion();
        }
        let sim = group_amplitudes(&state, &g, t.q).unwrap();
        assert!(
            t.max_abs_diff(&sim.triple) < 1e-12,
            "q={}: {t:?} vs {:?}",
            t.q,
            sim.triple
        );
    }
}
