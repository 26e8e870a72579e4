//! Exact classical Boolean functions.
//!
//! [`AnfFunction`] holds a function in positive-polarity Reed-Muller form
//! (XOR of AND-terms over uncomplemented variables); [`TruthTable`] is the
//! dense evaluation table that plays the black box. The two convert into
//! each other through the binary Möbius transform.

mod anf;
mod parse;
mod table;

pub use anf::{AnfFunction, AnfTerm};
pub use parse::parse_anf;
pub use table::TruthTable;

use crate::{Error, Result};
use std::fmt;

/// Largest arity for which a truth table may be materialized (16 Mi entries).
pub const MAX_TABLE_ARITY: usize = 24;

/// Largest arity an [`AnfFunction`] may have; terms are stored as `u32` masks.
pub const MAX_ANF_ARITY: usize = 32;

/// Index `i` of a variable `x_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarIndex(usize);

impl VarIndex {
    pub const fn new(index: usize) -> Self {
        VarIndex(index)
    }

    pub const fn get(self) -> usize {
        self.0
    }

    /// Single-bit mask `e_i`.
    pub const fn bit(self) -> u32 {
        1 << self.0
    }

    /// Fails unless `index < arity`.
    pub fn check(self, arity: usize) -> Result<Self> {
        if self.0 < arity {
            Ok(self)
        } else {
            Err(Error::VarOutOfRange {
                index: self.0,
                arity,
            })
        }
    }
}

impl From<usize> for VarIndex {
    fn from(index: usize) -> Self {
        VarIndex(index)
    }
}

impl fmt::Display for VarIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// Brute-force check that flipping `x_i` never changes `f`.
pub fn is_junta_ground_truth(f: &TruthTable, i: VarIndex) -> Result<bool> {
    Ok(sensitive_inputs(f, i)? == 0)
}

/// Fraction of inputs `x` with `f(x) != f(x ^ e_i)`. Zero iff `x_i` is junta.
pub fn influence(f: &TruthTable, i: VarIndex) -> Result<f64> {
    let count = sensitive_inputs(f, i)?;
    Ok(count as f64 / f.len() as f64)
}

fn sensitive_inputs(f: &TruthTable, i: VarIndex) -> Result<u64> {
    let i = i.check(f.arity())?;
    let flip = i.bit();
    Ok((0..f.len() as u32)
        .filter(|&x| f.get(x) != f.get(x ^ flip))
        .count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(f: &str, n: usize) -> TruthTable {
        parse_anf(f, Some(n)).unwrap().to_truth_table().unwrap()
    }

    #[test]
    fn ground_truth_examples() {
        let f = table("x0x1", 3);
        assert!(is_junta_ground_truth(&f, VarIndex::new(2)).unwrap());
        assert_eq!(influence(&f, VarIndex::new(2)).unwrap(), 0.0);

        let f = table("x0x1", 2);
        assert!(!is_junta_ground_truth(&f, VarIndex::new(0)).unwrap());
        // x0 matters exactly when x1 = 1
        assert_eq!(influence(&f, VarIndex::new(0)).unwrap(), 0.5);

        let f = table("x0", 1);
        assert!(!is_junta_ground_truth(&f, VarIndex::new(0)).unwrap());
        assert_eq!(influence(&f, VarIndex::new(0)).unwrap(), 1.0);
    }

    #[test]
    fn ground_truth_rejects_bad_index() {
        let f = table("x0", 2);
        assert_eq!(
            is_junta_ground_truth(&f, VarIndex::new(2)),
            Err(Error::VarOutOfRange { index: 2, arity: 2 })
        );
    }

    #[test]
    fn majority_influences() {
        let maj = TruthTable::from_fn(3, |x| x.count_ones() >= 2).unwrap();
        for i in 0..3 {
            assert_eq!(influence(&maj, VarIndex::new(i)).unwrap(), 0.5);
        }
    }
}
