//! Explicit operator matrices for small registers, built from Kronecker
//! products of 2x2 gates. Used to cross-check the in-place transforms.

use super::{check_width, QuantumState};
use crate::boolfn::TruthTable;
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;
use std::io::{self, Write};

/// Largest input width for which explicit matrices are built.
pub const MAX_MATRIX_QUBITS: usize = 6;

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> Self {
        DenseMatrix {
            dim,
            data: vec![Complex64::default(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_real(dim: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), dim * dim);
        DenseMatrix {
            dim,
            data: entries.iter().map(|&r| Complex64::new(r, 0.0)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kron(&self, rhs: &DenseMatrix) -> DenseMatrix {
        let dim = self.dim * rhs.dim;
        let mut out = Self::zeros(dim);
        for (i, j) in (0..self.dim).flat_map(|i| (0..self.dim).map(move |j| (i, j))) {
            let a = self[(i, j)];
            for (k, l) in (0..rhs.dim).flat_map(|k| (0..rhs.dim).map(move |l| (k, l))) {
                out[(i * rhs.dim + k, j * rhs.dim + l)] = a * rhs[(k, l)];
            }
        }
        out
    }

    pub fn mul(&self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.dim, rhs.dim);
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for k in 0..self.dim {
                let a = self[(i, k)];
                if a == Complex64::default() {
                    continue;
                }
                for j in 0..self.dim {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> DenseMatrix {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn max_abs_diff(&self, rhs: &DenseMatrix) -> f64 {
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |(M M† - I)_{ij}|`.
    pub fn unitarity_defect(&self) -> f64 {
        self.mul(&self.adjoint())
            .max_abs_diff(&Self::identity(self.dim))
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// Plain-text dump: one line per row, each entry as `re im`, separated
    /// by single spaces, full round-trip precision.
    pub fn write_text<W: Write>(&self, mut w: W) -> io::Result<()> {
        for row in self.data.chunks_exact(self.dim) {
            let line: Vec<String> = row
                .iter()
                .map(|c| format!("{:e} {:e}", c.re, c.im))
                .collect();
            writeln!(w, "{}", line.join(" "))?;
        }
        Ok(())
    }

    /// Parses the [`DenseMatrix::write_text`] format.
    pub fn read_text(text: &str) -> Result<DenseMatrix> {
        let mut data = Vec::new();
        let mut rows = 0;
        for (ln, line) in text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
        {
            let nums: Vec<f64> = line
                .split_whitespace()
                .map(|t| {
                    t.parse().map_err(|_| Error::Parse {
                        line: ln + 1,
                        column: 1,
                        message: format!("bad number `{t}`"),
                    })
                })
                .collect::<Result<_>>()?;
            if !nums.len().is_multiple_of(2) {
                return Err(Error::Parse {
                    line: ln + 1,
                    column: 1,
                    message: "odd number of reals in row".into(),
                });
            }
            data.extend(nums.chunks_exact(2).map(|p| Complex64::new(p[0], p[1])));
            rows += 1;
        }
        if data.len() != rows * rows {
            return Err(Error::Parse {
                line: rows,
                column: 1,
                message: "matrix is not square".into(),
            });
        }
        Ok(DenseMatrix { dim: rows, data })
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

fn check_matrix_width(n: usize) -> Result<()> {
    check_width(n)?;
    if n > MAX_MATRIX_QUBITS {
        return Err(Error::Capacity {
            arity: n,
            cap: MAX_MATRIX_QUBITS,
            what: "explicit operator matrices",
        });
    }
    Ok(())
}

fn hadamard() -> DenseMatrix {
    DenseMatrix::from_real(
        2,
        &[FRAC_1_SQRT_2, FRAC_1_SQRT_2, FRAC_1_SQRT_2, -FRAC_1_SQRT_2],
    )
}

/// `H^{⊗n} ⊗ I`. Kronecker order puts `x_{n-1}` in the most significant
/// position and the ancilla in the least, matching the state layout.
pub fn hadamard_layer(n: usize) -> Result<DenseMatrix> {
    check_matrix_width(n)?;
    let h = hadamard();
    let mut m = DenseMatrix::identity(1);
    for _ in 0..n {
        m = m.kron(&h);
    }
    Ok(m.kron(&DenseMatrix::identity(2)))
}

/// `2|0><0| - I` on all `n + 1` qubits.
pub fn zero_reflection(n: usize) -> Result<DenseMatrix> {
    check_matrix_width(n)?;
    let mut m = DenseMatrix::identity(2 << n);
    for i in 0..m.dim() {
        m[(i, i)] = Complex64::new(if i == 0 { 1.0 } else { -1.0 }, 0.0);
    }
    Ok(m)
}

/// The partial diffusion operator as an explicit product of three matrices.
pub fn partial_diffusion(n: usize) -> Result<DenseMatrix> {
    let h = hadamard_layer(n)?;
    Ok(h.mul(&zero_reflection(n)?).mul(&h))
}

/// Permutation matrix of `|x>|b> -> |x>|b ^ g(x)>`.
pub fn oracle(g: &TruthTable) -> Result<DenseMatrix> {
    let n = g.arity();
    check_matrix_width(n)?;
    let mut m = DenseMatrix::zeros(2 << n);
    for x in 0..(1u32 << n) {
        for b in 0..2u32 {
            let from = ((x as usize) << 1) | b as usize;
            let to = ((x as usize) << 1) | (b ^ g.get(x) as u32) as usize;
            m[(to, from)] = Complex64::new(1.0, 0.0);
        }
    }
    Ok(m)
}

/// Applies an explicit matrix to a state.
pub fn apply(m: &DenseMatrix, state: &QuantumState) -> Result<QuantumState> {
    QuantumState::from_amplitudes(state.width(), m.apply(state.amplitudes()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::parse_anf;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_state(n: usize, rng: &mut ChaCha8Rng) -> QuantumState {
        let raw: Vec<Complex64> = (0..(2 << n))
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let norm = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        QuantumState::from_amplitudes(n, raw.into_iter().map(|a| a / norm).collect()).unwrap()
    }

    #[test]
    fn diffusion_matrix_matches_in_place_transform() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=4 {
            let y = partial_diffusion(n).unwrap();
            for _ in 0..5 {
                let s = random_state(n, &mut rng);
                let mut fast = s.clone();
                fast.apply_partial_diffusion();
                let slow = apply(&y, &s).unwrap();
                let dev = fast
                    .amplitudes()
                    .iter()
                    .zip(slow.amplitudes())
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0, f64::max);
                assert!(dev < 1e-12, "n={n}: {dev}");
            }
        }
    }

    #[test]
    fn diffusion_on_uniform_at_n2() {
        let y = partial_diffusion(2).unwrap();
        let s = QuantumState::uniform_superposition(2).unwrap();
        assert!((apply(&y, &s).unwrap().overlap(&s) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn diffusion_squares_to_identity_up_to_phase() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=3 {
            let y = partial_diffusion(n).unwrap();
            let yy = y.mul(&y);
            for _ in 0..4 {
                let s = random_state(n, &mut rng);
                assert!((apply(&yy, &s).unwrap().overlap(&s) - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn oracle_matrix_matches_in_place_transform() {
        let g = parse_anf("x0x1 ^ x2", Some(3))
            .unwrap()
            .to_truth_table()
            .unwrap();
        let m = oracle(&g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let s = random_state(3, &mut rng);
        let mut fast = s.clone();
        fast.apply_oracle(&g).unwrap();
        assert_eq!(apply(&m, &s).unwrap(), fast);
    }

    #[test]
    fn text_dump_round_trips() {
        let y = partial_diffusion(1).unwrap();
        let mut buf = Vec::new();
        y.write_text(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 4);
        assert_eq!(DenseMatrix::read_text(&text).unwrap(), y);
        assert!(DenseMatrix::read_text("1 0 0\n").is_err());
    }

    #[test]
    fn matrix_width_capped() {
        assert!(matches!(
            hadamard_layer(MAX_MATRIX_QUBITS + 1),
            Err(Error::Capacity { .. })
        ));
    }
}
