use super::{TruthTable, VarIndex, MAX_ANF_ARITY, MAX_TABLE_ARITY};
use crate::{Error, Result};
use std::collections::BTreeSet;
use std::fmt;

/// A product term, stored as the mask of the variables it multiplies.
/// The empty mask is the constant-1 term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AnfTerm(u32);

impl AnfTerm {
    pub const ONE: AnfTerm = AnfTerm(0);

    pub const fn from_mask(mask: u32) -> Self {
        AnfTerm(mask)
    }

    pub fn from_vars(vars: impl IntoIterator<Item = usize>) -> Self {
        AnfTerm(vars.into_iter().fold(0, |m, v| m | (1 << v)))
    }

    pub const fn mask(self) -> u32 {
        self.0
    }

    pub const fn degree(self) -> u32 {
        self.0.count_ones()
    }

    pub const fn contains(self, var: VarIndex) -> bool {
        self.0 & var.bit() != 0
    }

    /// True when every variable of the term is 1 under `x`.
    pub const fn is_satisfied_by(self, x: u32) -> bool {
        x & self.0 == self.0
    }

    pub fn vars(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (0..32).filter(move |j| mask & (1 << j) != 0)
    }
}

impl fmt::Display for AnfTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        for v in self.vars() {
            write!(f, "x{v}")?;
        }
        Ok(())
    }
}

/// Boolean function in positive-polarity Reed-Muller form.
///
/// Terms are kept as a sorted set with XOR cancellation on insertion, so a
/// term is either present once or absent, and the zero function is exactly
/// the empty set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AnfFunction {
    arity: usize,
    terms: BTreeSet<u32>,
}

impl AnfFunction {
    /// The constant-0 function.
    pub fn zero(arity: usize) -> Result<Self> {
        if arity > MAX_ANF_ARITY {
            return Err(Error::Capacity {
                arity,
                cap: MAX_ANF_ARITY,
                what: "algebraic normal form",
            });
        }
        Ok(AnfFunction {
            arity,
            terms: BTreeSet::new(),
        })
    }

    pub fn one(arity: usize) -> Result<Self> {
        let mut f = Self::zero(arity)?;
        f.toggle(AnfTerm::ONE)?;
        Ok(f)
    }

    /// XOR of the given terms; repeated terms cancel in pairs.
    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = AnfTerm>) -> Result<Self> {
        let mut f = Self::zero(arity)?;
        for t in terms {
            f.toggle(t)?;
        }
        Ok(f)
    }

    /// XOR-insert a term.
    pub fn toggle(&mut self, term: AnfTerm) -> Result<()> {
        self.check_term(term)?;
        if !self.terms.remove(&term.0) {
            self.terms.insert(term.0);
        }
        Ok(())
    }

    fn check_term(&self, term: AnfTerm) -> Result<()> {
        let width = 32 - term.0.leading_zeros() as usize;
        if width > self.arity {
            return Err(Error::VarOutOfRange {
                index: width - 1,
                arity: self.arity,
            });
        }
        Ok(())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = AnfTerm> + '_ {
        self.terms.iter().map(|&m| AnfTerm(m))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn contains_term(&self, term: AnfTerm) -> bool {
        self.terms.contains(&term.0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms().map(AnfTerm::degree).max().unwrap_or(0)
    }

    /// Evaluate at the input whose bit `j` is `x_j`.
    pub fn eval(&self, x: u32) -> Result<bool> {
        if self.arity < 32 && x >> self.arity != 0 {
            return Err(Error::InputOutOfRange {
                input: x as u64,
                arity: self.arity,
            });
        }
        Ok(self.eval_unchecked(x))
    }

    /// Evaluate at an explicit assignment `(x_0, .., x_{n-1})`.
    pub fn eval_assignment(&self, assignment: &[bool]) -> Result<bool> {
        if assignment.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: assignment.len(),
            });
        }
        let x = assignment
            .iter()
            .enumerate()
            .fold(0u32, |acc, (j, &b)| acc | ((b as u32) << j));
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: u32) -> bool {
        self.terms
            .iter()
            .filter(|&&m| AnfTerm(m).is_satisfied_by(x))
            .count()
            % 2
            == 1
    }

    /// `f(x_0, .., x_i ^ 1, .., x_{n-1})`, re-expanded in positive polarity.
    ///
    /// Each term containing `x_i` contributes itself and its `x_i`-free
    /// reduction.
    pub fn negate_variable(&self, i: VarIndex) -> Result<Self> {
        let i = i.check(self.arity)?;
        let mut out = Self::zero(self.arity)?;
        for t in self.terms() {
            out.toggle(t)?;
            if t.contains(i) {
                out.toggle(AnfTerm(t.0 & !i.bit()))?;
            }
        }
        Ok(out)
    }

    /// Pointwise XOR; the symmetric difference of the term sets.
    pub fn xor(&self, other: &AnfFunction) -> Result<Self> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            });
        }
        Ok(AnfFunction {
            arity: self.arity,
            terms: self
                .terms
                .symmetric_difference(&other.terms)
                .copied()
                .collect(),
        })
    }

    /// `g = f ^ f_{¬x_i}`. Free of `x_i`, and zero iff `x_i` is junta in `f`.
    pub fn derive_g(&self, i: VarIndex) -> Result<Self> {
        self.xor(&self.negate_variable(i)?)
    }

    /// Drops every term containing `x_i`, leaving a function in which `x_i`
    /// is junta.
    pub fn without_variable(&self, i: VarIndex) -> Result<Self> {
        let i = i.check(self.arity)?;
        Ok(AnfFunction {
            arity: self.arity,
            terms: self
                .terms()
                .filter(|t| !t.contains(i))
                .map(AnfTerm::mask)
                .collect(),
        })
    }

    /// Dense table through the fast Möbius transform.
    pub fn to_truth_table(&self) -> Result<TruthTable> {
        check_table_arity(self.arity)?;
        let mut coeffs = vec![false; 1usize << self.arity];
        for &m in &self.terms {
            coeffs[m as usize] = true;
        }
        TruthTable::from_bools(self.arity, super::table::mobius(coeffs, self.arity))
    }

    /// Dense table by evaluating every input one at a time.
    pub fn to_truth_table_naive(&self) -> Result<TruthTable> {
        check_table_arity(self.arity)?;
        TruthTable::from_fn(self.arity, |x| self.eval_unchecked(x))
    }

    /// Inverse transform from a dense table.
    pub fn from_truth_table(t: &TruthTable) -> Self {
        let coeffs = super::table::mobius(t.to_bools(), t.arity());
        AnfFunction {
            arity: t.arity(),
            terms: coeffs
                .iter()
                .enumerate()
                .filter(|(_, &c)| c)
                .map(|(m, _)| m as u32)
                .collect(),
        }
    }
}

pub(super) fn check_table_arity(arity: usize) -> Result<()> {
    if arity > MAX_TABLE_ARITY {
        Err(Error::Capacity {
            arity,
            cap: MAX_TABLE_ARITY,
            what: "truth tables",
        })
    } else {
        Ok(())
    }
}

impl fmt::Display for AnfFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, t) in self.terms().enumerate() {
            if k > 0 {
                f.write_str(" ^ ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::parse_anf;

    fn anf(s: &str, n: usize) -> AnfFunction {
        parse_anf(s, Some(n)).unwrap()
    }

    /// General two-variable function, coefficients in order
    /// (1, x1, x0, x0x1).
    fn general2(b: [bool; 4]) -> AnfFunction {
        let masks = [0b00, 0b10, 0b01, 0b11];
        AnfFunction::from_terms(
            2,
            masks
                .iter()
                .zip(b)
                .filter(|(_, on)| *on)
                .map(|(&m, _)| AnfTerm::from_mask(m)),
        )
        .unwrap()
    }

    #[test]
    fn eval_examples() {
        assert!(anf("x0x1 ^ x2", 3).eval(0b011).unwrap());
        let zero = AnfFunction::zero(3).unwrap();
        assert!((0..8).all(|x| !zero.eval(x).unwrap()));
        // b = (1, 0, 1, 1) at (x0, x1) = (1, 1): 1 ^ 1 ^ 1
        assert!(general2([true, false, true, true])
            .eval_assignment(&[true, true])
            .unwrap());
    }

    #[test]
    fn eval_rejects_width_mismatch() {
        let f = anf("x0", 2);
        assert_eq!(
            f.eval_assignment(&[true]),
            Err(Error::ArityMismatch {
                expected: 2,
                found: 1
            })
        );
        assert!(matches!(f.eval(0b100), Err(Error::InputOutOfRange { .. })));
    }

    #[test]
    fn negation_matches_hand_expansion() {
        for bits in 0..16u8 {
            let b = [bits & 1 != 0, bits & 2 != 0, bits & 4 != 0, bits & 8 != 0];
            let f = general2(b);
            // b0 ^ b1 x1 ^ b1 ^ b2 x0 ^ b3 x0x1 ^ b3 x0
            let mut expected = AnfFunction::zero(2).unwrap();
            let push = |e: &mut AnfFunction, on: bool, m: u32| {
                if on {
                    e.toggle(AnfTerm::from_mask(m)).unwrap();
                }
            };
            push(&mut expected, b[0], 0b00);
            push(&mut expected, b[1], 0b10);
            push(&mut expected, b[1], 0b00);
            push(&mut expected, b[2], 0b01);
            push(&mut expected, b[3], 0b11);
            push(&mut expected, b[3], 0b01);
            assert_eq!(f.negate_variable(VarIndex::new(1)).unwrap(), expected);
        }
    }

    #[test]
    fn negation_examples() {
        let z = AnfFunction::zero(3).unwrap();
        assert!(z.negate_variable(VarIndex::new(1)).unwrap().is_zero());

        let f = anf("x0x1x2", 3);
        let r = f.negate_variable(VarIndex::new(0)).unwrap();
        assert_eq!(r, anf("x0x1x2 ^ x1x2", 3));
        for x in 0..8 {
            assert_eq!(r.eval(x).unwrap(), f.eval(x ^ 1).unwrap());
        }
        assert!(matches!(
            f.negate_variable(VarIndex::new(3)),
            Err(Error::VarOutOfRange { index: 3, arity: 3 })
        ));
    }

    #[test]
    fn xor_examples() {
        let f = anf("x0x1 ^ x2 ^ 1", 3);
        assert!(f.xor(&f).unwrap().is_zero());
        assert_eq!(anf("x0", 2).xor(&anf("x0 ^ x1", 2)).unwrap(), anf("x1", 2));
        assert!(matches!(
            anf("x0", 2).xor(&anf("x0", 3)),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn derive_g_examples() {
        let g = anf("x1 ^ x2", 3).derive_g(VarIndex::new(0)).unwrap();
        assert!(g.is_zero());

        let f = anf("x0 ^ x0x1", 2);
        let g = f.derive_g(VarIndex::new(0)).unwrap();
        assert_eq!(g, anf("1 ^ x1", 2));
        for x in 0..4 {
            let pointwise = f.eval(x).unwrap() ^ f.eval(x ^ 1).unwrap();
            assert_eq!(g.eval(x).unwrap(), pointwise);
        }
    }

    #[test]
    fn table_examples() {
        assert_eq!(
            anf("x0", 1).to_truth_table().unwrap().to_bools(),
            [false, true]
        );
        assert_eq!(
            anf("1 ^ x0", 1).to_truth_table().unwrap().to_bools(),
            [true, false]
        );
        assert_eq!(
            anf("x0x1", 2).to_truth_table().unwrap().to_bools(),
            [false, false, false, true]
        );
    }

    #[test]
    fn from_table_examples() {
        let t = TruthTable::from_bools(2, vec![false, true, true, false]).unwrap();
        assert_eq!(AnfFunction::from_truth_table(&t), anf("x0 ^ x1", 2));
        let t = TruthTable::zeros(3).unwrap();
        assert!(AnfFunction::from_truth_table(&t).is_zero());
        let t = TruthTable::from_bools(2, vec![true; 4]).unwrap();
        assert_eq!(
            AnfFunction::from_truth_table(&t),
            AnfFunction::one(2).unwrap()
        );
    }

    #[test]
    fn table_cap_enforced() {
        let f = AnfFunction::zero(25).unwrap();
        assert!(matches!(
            f.to_truth_table(),
            Err(Error::Capacity {
                arity: 25,
                cap: 24,
                ..
            })
        ));
        assert!(AnfFunction::zero(33).is_err());
    }

    #[test]
    fn toggle_rejects_foreign_variables() {
        let mut f = AnfFunction::zero(2).unwrap();
        assert!(f.toggle(AnfTerm::from_mask(0b100)).is_err());
    }

    #[test]
    fn display_is_parseable() {
        let f = anf("x2 ^ x0x1 ^ 1", 3);
        assert_eq!(f.to_string(), "1 ^ x0x1 ^ x2");
        assert_eq!(parse_anf(&f.to_string(), Some(3)).unwrap(), f);
        assert_eq!(AnfFunction::zero(2).unwrap().to_string(), "0");
    }
}
