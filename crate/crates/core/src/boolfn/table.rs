use super::anf::check_table_arity;
use super::VarIndex;
use crate::{Error, Result};

/// Dense evaluation table of an `n`-variable function; bit `x` holds `f(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    arity: usize,
    words: Vec<u64>,
}

impl TruthTable {
    pub fn zeros(arity: usize) -> Result<Self> {
        check_table_arity(arity)?;
        let len = 1usize << arity;
        Ok(TruthTable {
            arity,
            words: vec![0; len.div_ceil(64)],
        })
    }

    pub fn from_fn(arity: usize, mut f: impl FnMut(u32) -> bool) -> Result<Self> {
        let mut t = Self::zeros(arity)?;
        for x in 0..t.len() as u32 {
            if f(x) {
                t.set(x, true);
            }
        }
        Ok(t)
    }

    pub fn from_bools(arity: usize, bits: Vec<bool>) -> Result<Self> {
        check_table_arity(arity)?;
        if bits.len() != 1usize << arity {
            return Err(Error::ArityMismatch {
                expected: arity,
                found: bits.len().checked_ilog2().unwrap_or(0) as usize,
            });
        }
        Self::from_fn(arity, |x| bits[x as usize])
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of entries, `2^n`.
    pub fn len(&self) -> usize {
        1 << self.arity
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `f(x)`; `x` must be below `2^n`.
    #[inline]
    pub fn get(&self, x: u32) -> bool {
        debug_assert!((x as usize) < self.len());
        self.words[(x >> 6) as usize] >> (x & 63) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, x: u32, value: bool) {
        let (w, b) = ((x >> 6) as usize, x & 63);
        if value {
            self.words[w] |= 1 << b;
        } else {
            self.words[w] &= !(1 << b);
        }
    }

    /// Number of inputs mapped to 1.
    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len() as u32).map(|x| self.get(x)).collect()
    }

    /// Table of `x -> f(x ^ e_i)`.
    pub fn flip_variable(&self, i: VarIndex) -> Result<Self> {
        let flip = i.check(self.arity)?.bit();
        Self::from_fn(self.arity, |x| self.get(x ^ flip))
    }

    /// Pointwise XOR of two tables of equal arity.
    pub fn xor(&self, other: &TruthTable) -> Result<Self> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            });
        }
        Ok(TruthTable {
            arity: self.arity,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a ^ b)
                .collect(),
        })
    }

    /// Parses a hex string whose integer value has bit `x` equal to `f(x)`,
    /// most significant digit first, with an optional `0x` prefix.
    pub fn from_hex(arity: usize, hex: &str) -> Result<Self> {
        let mut t = Self::zeros(arity)?;
        let offset = if hex.starts_with("0x") || hex.starts_with("0X") {
            2
        } else {
            0
        };
        let digits = &hex[offset..];
        if digits.is_empty() {
            return Err(Error::parse(offset + 1, "expected hex digits"));
        }
        let len = t.len();
        for (pos, ch) in digits.char_indices() {
            let column = offset + pos + 1;
            let value = ch
                .to_digit(16)
                .ok_or_else(|| Error::parse(column, format!("invalid hex digit `{ch}`")))?;
            let nibble = digits.len() - 1 - pos;
            for b in 0..4 {
                if value >> b & 1 == 0 {
                    continue;
                }
                let x = nibble * 4 + b;
                if x >= len {
                    return Err(Error::parse(
                        column,
                        format!("table for n={arity} has only {len} entries"),
                    ));
                }
                t.set(x as u32, true);
            }
        }
        Ok(t)
    }

    /// Full-width hex with `0x` prefix; inverse of [`TruthTable::from_hex`].
    pub fn to_hex(&self) -> String {
        let digits = self.len().div_ceil(4);
        let mut s = String::with_capacity(digits + 2);
        s.push_str("0x");
        for nibble in (0..digits).rev() {
            let mut v = 0u32;
            for b in 0..4 {
                let x = nibble * 4 + b;
                if x < self.len() && self.get(x as u32) {
                    v |= 1 << b;
                }
            }
            s.push(char::from_digit(v, 16).unwrap());
        }
        s
    }
}

/// Binary Möbius transform over GF(2); its own inverse. Maps ANF coefficients
/// to table entries and back.
pub(super) fn mobius(mut v: Vec<bool>, arity: usize) -> Vec<bool> {
    debug_assert_eq!(v.len(), 1 << arity);
    for j in 0..arity {
        let step = 1usize << j;
        for x in 0..v.len() {
            if x & step != 0 {
                v[x] ^= v[x ^ step];
            }
        }
    }
    v
}
