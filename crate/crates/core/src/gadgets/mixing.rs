// Copyright 2026 The dqc1 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Two clean qubits from one: the Toffoli mixing circuit.

use num_complex::Complex64;

use super::GadgetError;
use crate::circuit::{Circuit, Gate, Instruction};
use crate::dense::{qubit_bit, DenseOperator};
use crate::engine::{DenseState, Engine, EngineError};

/// `u` preceded by `2s` Toffoli gates sourcing fresh ancillas `w+1..=w+2s`.
///
/// Step `j` uses ancilla `w + j`: odd steps flip qubit 1 controlled on qubit 2,
/// even steps flip qubit 2 controlled on qubit 1.
pub fn markov_mixing_circuit(u: &Circuit, s: usize) -> Result<Circuit, GadgetError> {
    let w = u.width();
    if w < 2 {
        return Err(GadgetError::InvalidParameter(format!("mixing needs width >= 2, got {w}")));
    }
    if s == 0 {
        return Err(GadgetError::InvalidParameter("mixing needs s >= 1".into()));
    }
    let mut instructions = Vec::with_capacity(2 * s + u.len());
    for j in 1..=2 * s {
        let a = w + j;
        let g = if j % 2 == 1 { Gate::ccx(2, a, 1) } else { Gate::ccx(1, a, 2) };
        instructions.push(Instruction::Gate(g));
    }
    instructions.extend(u.instructions().iter().cloned());
    Ok(Circuit::from_instructions(w + 2 * s, u.input_len(), instructions)?)
}

/// Allowed gap `|β_mix - β_{2,1}/3|` after `s` Toffoli pairs.
pub fn mixing_bound(s: usize) -> f64 {
    1.0 / (3.0 * 4f64.powi(s as i32 - 1))
}

/// `Tr[U P U† Z1] / 2^w` for `P = Z1, Z2, Z1Z2`; their sum is `β_{2,1}`.
pub fn beta21_trace_terms(engine: &Engine, u: &Circuit, x: &[bool]) -> Result<[f64; 3], GadgetError> {
    let w = u.width();
    if w < 2 {
        return Err(GadgetError::InvalidParameter(format!("two clean qubits need width >= 2, got {w}")));
    }
    if w > engine.dense_cap {
        return Err(EngineError::WidthOverCap { width: w, cap: engine.dense_cap }.into());
    }
    let gates = u.resolve(x)?;
    let (b1, b2) = (qubit_bit(w, 1), qubit_bit(w, 2));
    let norm = 1.0 / f64::from(1u32 << w);
    let sign = |k: usize, mask: usize| if (k & mask).count_ones() & 1 == 0 { norm } else { -norm };
    let mut out = [0.0; 3];
    for (slot, mask) in out.iter_mut().zip([b1, b2, b1 | b2]) {
        let mut st = DenseState::from_matrix(DenseOperator::diagonal(w, |k| Complex64::new(sign(k, mask), 0.0)));
        st.evolve(&gates)?;
        *slot = st.z1_expectation().re;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{beta_cd, dense_run, BetaSource};
    use crate::parser::{random_circuit, Alphabet};

    #[test]
    fn empty_u_lands_near_one_third() {
        for s in 1..=3 {
            let c = markov_mixing_circuit(&Circuit::new(2, 0).unwrap(), s).unwrap();
            assert_eq!(c.width(), 2 + 2 * s);
            let beta = dense_run(&c, &[]).unwrap().beta();
            assert!((beta - 1.0 / 3.0).abs() <= mixing_bound(s) + 1e-9, "s={s} beta={beta}");
        }
    }

    #[test]
    fn swap_u_within_bound() {
        let u = Circuit::from_gates(2, vec![Gate::swap(1, 2)]).unwrap();
        let c = markov_mixing_circuit(&u, 3).unwrap();
        let b21 = beta_cd(&u, &[], 2, 1).unwrap();
        let beta = dense_run(&c, &[]).unwrap().beta();
        assert!((beta - b21 / 3.0).abs() <= mixing_bound(3) + 1e-9);
    }

    #[test]
    fn trace_terms_sum_to_beta21() {
        let engine = Engine::default();
        for seed in 0..10 {
            let u = random_circuit(4, 1, 40, Alphabet::Clifford, seed).unwrap();
            for x in [[false], [true]] {
                let t = beta21_trace_terms(&engine, &u, &x).unwrap();
                assert!((t.iter().sum::<f64>() - beta_cd(&u, &x, 2, 1).unwrap()).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn random_clifford_corpus_within_bound() {
        for seed in 0..6 {
            let u = random_circuit(4, 0, 30, Alphabet::Clifford, seed).unwrap();
            let s = 2 + seed as usize % 2;
            let beta = dense_run(&markov_mixing_circuit(&u, s).unwrap(), &[]).unwrap().beta();
            let b21 = beta_cd(&u, &[], 2, 1).unwrap();
            assert!((beta - b21 / 3.0).abs() <= mixing_bound(s) + 1e-9, "seed {seed}");
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(markov_mixing_circuit(&Circuit::new(1, 0).unwrap(), 1).is_err());
        assert!(markov_mixing_circuit(&Circuit::new(2, 0).unwrap(), 0).is_err());
    }
}
