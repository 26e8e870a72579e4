//! Dense state vector of an `n`-qubit input register plus one ancilla.
//!
//! Amplitude index is `2 * x + anc` for basis state `|x>|anc>`. Operators are
//! applied as specialized in-place transforms; [`matrix`] builds the same
//! operators explicitly for small `n` so the two can be checked against each
//! other.

pub mod matrix;

use crate::boolfn::{TruthTable, VarIndex};
use crate::{Error, Result};
use num_complex::Complex64;
use rand::Rng;

/// Largest input-register width the simulator accepts.
pub const MAX_SIM_QUBITS: usize = 14;

/// Tolerance on the squared norm of a state.
pub const NORM_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    n: usize,
    amps: Vec<Complex64>,
}

pub(crate) fn check_width(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::EmptyRegister)
    } else if n > MAX_SIM_QUBITS {
        Err(Error::Capacity {
            arity: n,
            cap: MAX_SIM_QUBITS,
            what: "state-vector simulation",
        })
    } else {
        Ok(())
    }
}

#[inline]
const fn index(x: u32, anc: u32) -> usize {
    ((x as usize) << 1) | anc as usize
}

impl QuantumState {
    /// `(1/sqrt(N)) sum_x |x>|0>`.
    pub fn uniform_superposition(n: usize) -> Result<Self> {
        check_width(n)?;
        let items = 1usize << n;
        let amp = Complex64::new(1.0 / (items as f64).sqrt(), 0.0);
        let mut amps = vec![Complex64::default(); items << 1];
        for x in 0..items {
            amps[x << 1] = amp;
        }
        Ok(QuantumState { n, amps })
    }

    /// Wraps an explicit amplitude vector of length `2^(n+1)`; must be normalized.
    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_width(n)?;
        let expected = 2usize << n;
        if amps.len() != expected {
            return Err(Error::StateLength {
                expected,
                found: amps.len(),
            });
        }
        let state = QuantumState { n, amps };
        let norm_sqr = state.norm_sqr();
        if (norm_sqr - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(state)
    }

    /// Computational basis state `|x>|anc>`.
    pub fn basis(n: usize, x: u32, anc: bool) -> Result<Self> {
        check_width(n)?;
        if (x as usize) >> n != 0 {
            return Err(Error::InputOutOfRange {
                input: x as u64,
                arity: n,
            });
        }
        let mut amps = vec![Complex64::default(); 2 << n];
        amps[index(x, anc as u32)] = Complex64::new(1.0, 0.0);
        Ok(QuantumState { n, amps })
    }

    /// Input-register width `n`.
    pub fn width(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, x: u32, anc: bool) -> Complex64 {
        self.amps[index(x, anc as u32)]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `|<self|other>|`; equals 1 exactly when the states agree up to a global phase.
    pub fn overlap(&self, other: &QuantumState) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            .norm()
    }

    /// Bit-flip oracle `|x>|b> -> |x>|b ^ g(x)>`.
    pub fn apply_oracle(&mut self, g: &TruthTable) -> Result<()> {
        if g.arity() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                found: g.arity(),
            });
        }
        for x in 0..(1u32 << self.n) {
            if g.get(x) {
                self.amps.swap(index(x, 0), index(x, 1));
            }
        }
        Ok(())
    }

    /// Pauli X on input wire `x_i`.
    pub fn apply_x(&mut self, i: VarIndex) -> Result<()> {
        let flip = i.check(self.n)?.bit();
        for x in 0..(1u32 << self.n) {
            if x & flip == 0 {
                for anc in 0..2 {
                    self.amps.swap(index(x, anc), index(x | flip, anc));
                }
            }
        }
        Ok(())
    }

    /// `Y = (H^n ⊗ I)(2|0><0| - I)(H^n ⊗ I)`: inversion about the mean on
    /// the ancilla-0 subspace, negation on the ancilla-1 subspace.
    pub fn apply_partial_diffusion(&mut self) {
        let items = 1usize << self.n;
        let mean = self.amps.iter().step_by(2).sum::<Complex64>() / items as f64;
        let twice_mean = mean * 2.0;
        for pair in self.amps.chunks_exact_mut(2) {
            pair[0] = twice_mean - pair[0];
            pair[1] = -pair[1];
        }
    }

    /// Probability of each input-register outcome, summed over the ancilla.
    pub fn exact_distribution(&self) -> Vec<f64> {
        self.amps
            .chunks_exact(2)
            .map(|p| p[0].norm_sqr() + p[1].norm_sqr())
            .collect()
    }

    /// Samples the input register with one uniform draw from `rng`. The state
    /// is left untouched.
    pub fn measure_input<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        let mut last_nonzero = 0;
        for (x, p) in self.exact_distribution().into_iter().enumerate() {
            if p > 0.0 {
                last_nonzero = x;
            }
            acc += p;
            if u < acc {
                return x as u32;
            }
        }
        // rounding left the cumulative sum just under u
        last_nonzero as u32
    }
}

/// Amplitudes of the three basis-state groups at iteration `q`: undesired
/// inputs with ancilla 0 (`a`), desired inputs with ancilla 0 (`b`) and
/// desired inputs with ancilla 1 (`c`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeTriple {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub q: u64,
}

impl AmplitudeTriple {
    /// `(N - M) a² + M b² + M c²`; 1 for a normalized state.
    pub fn norm_sqr(&self, items: u64, matches: u64) -> f64 {
        let (n, m) = (items as f64, matches as f64);
        (n - m) * self.a * self.a + m * (self.b * self.b + self.c * self.c)
    }

    pub fn max_abs_diff(&self, other: &AmplitudeTriple) -> f64 {
        (self.a - other.a)
            .abs()
            .max((self.b - other.b).abs())
            .max((self.c - other.c).abs())
    }
}

/// A state reduced to its three amplitude groups, with diagnostics on how
/// far it is from having that structure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupedAmplitudes {
    pub triple: AmplitudeTriple,
    /// Largest deviation of any amplitude from its group representative.
    pub max_spread: f64,
    /// Largest imaginary part anywhere in the state.
    pub max_imag: f64,
    /// Largest amplitude magnitude on an undesired input with ancilla 1.
    pub max_stray: f64,
}

/// Groups `state` by the solutions of `g`. Group representatives are the
/// first member of each group; an empty group reports 0.
pub fn group_amplitudes(state: &QuantumState, g: &TruthTable, q: u64) -> Result<GroupedAmplitudes> {
    if g.arity() != state.n {
        return Err(Error::ArityMismatch {
            expected: state.n,
            found: g.arity(),
        });
    }
    let mut reps: [Option<f64>; 3] = [None; 3];
    let mut spread: f64 = 0.0;
    let mut stray: f64 = 0.0;
    let mut imag: f64 = 0.0;
    let mut track = |slot: usize, v: Complex64, reps: &mut [Option<f64>; 3]| {
        imag = imag.max(v.im.abs());
        let r = *reps[slot].get_or_insert(v.re);
        spread = spread.max((v.re - r).abs());
    };
    for x in 0..(1u32 << state.n) {
        let (zero, one) = (state.amplitude(x, false), state.amplitude(x, true));
        if g.get(x) {
            track(1, zero, &mut reps);
            track(2, one, &mut reps);
        } else {
            track(0, zero, &mut reps);
            stray = stray.max(one.norm());
        }
    }
    Ok(GroupedAmplitudes {
        triple: AmplitudeTriple {
            a: reps[0].unwrap_or(0.0),
            b: reps[1].unwrap_or(0.0),
            c: reps[2].unwrap_or(0.0),
            q,
        },
        max_spread: spread,
        max_imag: imag,
        max_stray: stray,
    })
}
