//! Black-box oracles consumed by the search drivers.

use crate::boolfn::{TruthTable, VarIndex};
use crate::statevec::QuantumState;
use crate::Result;

/// A Boolean function available both classically and as a bit-flip unitary.
pub trait Oracle {
    /// Number of input variables.
    fn arity(&self) -> usize;

    /// Classical evaluation at input `x`.
    fn evaluate(&self, x: u32) -> bool;

    /// `|x>|b> -> |x>|b ^ g(x)>`.
    fn apply(&self, state: &mut QuantumState) -> Result<()>;
}

impl Oracle for TruthTable {
    fn arity(&self) -> usize {
        TruthTable::arity(self)
    }

    fn evaluate(&self, x: u32) -> bool {
        self.get(x)
    }

    fn apply(&self, state: &mut QuantumState) -> Result<()> {
        state.apply_oracle(self)
    }
}

/// `U_g` built from two copies of the black box `U_f` with `X` gates on
/// wire `x_i`: `U_f`, `X_i`, `U_f`, `X_i`. Realizes `g(x) = f(x) ^ f(x ^ e_i)`
/// without ever reading `f` except through queries.
#[derive(Debug, Clone, Copy)]
pub struct ComposedOracle<'a> {
    f: &'a TruthTable,
    var: VarIndex,
}

impl<'a> ComposedOracle<'a> {
    pub fn new(f: &'a TruthTable, var: VarIndex) -> Result<Self> {
        let var = var.check(f.arity())?;
        Ok(ComposedOracle { f, var })
    }

    pub fn var(&self) -> VarIndex {
        self.var
    }
}

impl Oracle for ComposedOracle<'_> {
    fn arity(&self) -> usize {
        self.f.arity()
    }

    fn evaluate(&self, x: u32) -> bool {
        self.f.get(x) ^ self.f.get(x ^ self.var.bit())
    }

    fn apply(&self, state: &mut QuantumState) -> Result<()> {
        state.apply_oracle(self.f)?;
        state.apply_x(self.var)?;
        state.apply_oracle(self.f)?;
        state.apply_x(self.var)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::parse_anf;

    #[test]
    fn composed_circuit_equals_table_oracle() {
        let f = parse_anf("x0x1 ^ x2 ^ x1x2x3", Some(4))
            .unwrap()
            .to_truth_table()
            .unwrap();
        for i in 0..4 {
            let var = VarIndex::new(i);
            let composed = ComposedOracle::new(&f, var).unwrap();
            let g = f.xor(&f.flip_variable(var).unwrap()).unwrap();

            let mut a = QuantumState::uniform_superposition(4).unwrap();
            a.apply_partial_diffusion();
            let mut b = a.clone();
            composed.apply(&mut a).unwrap();
            g.apply(&mut b).unwrap();
            assert_eq!(a, b);
            assert!((0..16).all(|x| composed.evaluate(x) == g.get(x)));
        }
    }

    #[test]
    fn composed_oracle_is_identity_for_junta_variable() {
        let f = parse_anf("x1x2", Some(3))
            .unwrap()
            .to_truth_table()
            .unwrap();
        let o = ComposedOracle::new(&f, VarIndex::new(0)).unwrap();
        for x in 0..8 {
            for anc in [false, true] {
                let mut s = QuantumState::basis(3, x, anc).unwrap();
                o.apply(&mut s).unwrap();
                assert_eq!(s, QuantumState::basis(3, x, anc).unwrap());
            }
        }
    }

    #[test]
    fn rejects_out_of_range_variable() {
        let f = TruthTable::zeros(2).unwrap();
        assert!(ComposedOracle::new(&f, VarIndex::new(2)).is_err());
    }
}
