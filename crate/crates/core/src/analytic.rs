//! Closed-form model of the partial-diffusion search.
//!
//! With `N` items, `M` of them desired, the state after `q` oracle +
//! diffusion rounds is described by three amplitudes (see
//! [`AmplitudeTriple`]). Writing `<α> = (1 - M/N) a + (M/N) c`, one round maps
//!
//! ```text
//! a' = 2<α> - a,   b' = 2<α> - c,   c' = -b
//! ```
//!
//! starting from `a = b = 1/sqrt(N)`, `c = 0`. The success probability after
//! `q` rounds is
//!
//! ```text
//! P(q) = (1 - cos θ) (sin²((q+1)θ) + sin²(qθ)) / sin²θ,   cos θ = 1 - M/N
//! ```
//!
//! and the iteration count is `floor(π / 2θ)`.

use crate::statevec::AmplitudeTriple;
use crate::{Error, Result};
use std::f64::consts::{PI, SQRT_2};

/// Search-space size `N` and match count `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchParams {
    items: u64,
    matches: u64,
}

impl SearchParams {
    /// `0 <= matches <= items`, `items >= 1`. `M = 0` is representable but
    /// refused by every angle-dependent operation.
    pub fn new(items: u64, matches: u64) -> Result<Self> {
        if items == 0 || matches > items {
            return Err(Error::MatchCount { matches, items });
        }
        Ok(SearchParams { items, matches })
    }

    /// `N = 2^n`.
    pub fn for_width(n: usize, matches: u64) -> Result<Self> {
        Self::new(1u64 << n, matches)
    }

    pub fn items(&self) -> u64 {
        self.items
    }

    pub fn matches(&self) -> u64 {
        self.matches
    }

    fn require_matches(&self) -> Result<()> {
        if self.matches == 0 {
            Err(Error::MatchCount {
                matches: 0,
                items: self.items,
            })
        } else {
            Ok(())
        }
    }

    /// `θ = arccos(1 - M/N)`, in `(0, π/2]`.
    pub fn theta(&self) -> Result<f64> {
        self.require_matches()?;
        Ok((1.0 - self.matches as f64 / self.items as f64).acos())
    }
}

/// Triple before any round: the uniform state.
pub fn initial_triple(p: &SearchParams) -> AmplitudeTriple {
    let amp = 1.0 / (p.items as f64).sqrt();
    AmplitudeTriple {
        a: amp,
        b: amp,
        c: 0.0,
        q: 0,
    }
}

/// One oracle + partial-diffusion round.
pub fn recurrence_step(t: &AmplitudeTriple, p: &SearchParams) -> Result<AmplitudeTriple> {
    p.require_matches()?;
    let ratio = p.matches as f64 / p.items as f64;
    let mean = (1.0 - ratio) * t.a + ratio * t.c;
    Ok(AmplitudeTriple {
        a: 2.0 * mean - t.a,
        b: 2.0 * mean - t.c,
        c: -t.b,
        q: t.q + 1,
    })
}

/// Triples for `q = 0..=rounds`.
pub fn trajectory(p: &SearchParams, rounds: u64) -> Result<Vec<AmplitudeTriple>> {
    p.require_matches()?;
    let mut out = Vec::with_capacity(rounds as usize + 1);
    let mut t = initial_triple(p);
    out.push(t);
    for _ in 0..rounds {
        t = recurrence_step(&t, p)?;
        out.push(t);
    }
    Ok(out)
}

/// Probability of measuring a desired input after `q` rounds.
pub fn success_probability(p: &SearchParams, q: u64) -> Result<f64> {
    let theta = p.theta()?;
    let sin2 = |x: f64| x.sin().powi(2);
    let q = q as f64;
    Ok((1.0 - theta.cos()) * (sin2((q + 1.0) * theta) + sin2(q * theta)) / sin2(theta))
}

/// `q* = floor(π / 2θ)`.
pub fn iteration_count(p: &SearchParams) -> Result<u64> {
    Ok((PI / (2.0 * p.theta()?)).floor() as u64)
}

/// `(π / (2 sqrt 2)) sqrt(N / M)`, the upper estimate for `q*`.
pub fn iteration_bound(p: &SearchParams) -> Result<f64> {
    p.require_matches()?;
    Ok(PI / (2.0 * SQRT_2) * (p.items as f64 / p.matches as f64).sqrt())
}

/// Match counts probed for a register of `n` qubits:
/// `{1, 2, N/4, N/2, 3N/4, N-1, N}`, deduplicated and clipped to `1..=N`.
pub fn grid_matches(n: usize) -> Vec<u64> {
    let items = 1u64 << n;
    let mut ms = vec![1, 2, items / 4, items / 2, 3 * items / 4, items - 1, items];
    ms.retain(|&m| (1..=items).contains(&m));
    ms.sort_unstable();
    ms.dedup();
    ms
}
