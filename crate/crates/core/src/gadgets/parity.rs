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

//! CNOT-only circuits inside the one-clean-qubit model, and the two-partition reduction.

use super::GadgetError;
use crate::circuit::{
    adjoint_circuit, control_on, reverse_cnot_dual, Circuit, CircuitError, Gate, GateKind, Instruction,
};
use crate::engine::{Engine, EngineKind};

/// `Û† · X1 · Û` with `Û` the control/target-swapped dual of `c`.
///
/// Temporal order: the dual, `X1`, then the adjoint of the dual. On every input the
/// result maps `Z1` to `±Z1`, so `β` is `+1` or `-1` exactly.
pub fn parity_l_compile(c: &Circuit) -> Result<Circuit, GadgetError> {
    let dual = reverse_cnot_dual(c)?;
    let mut instructions = dual.instructions().to_vec();
    instructions.push(Instruction::Gate(Gate::x(1)));
    instructions.extend(adjoint_circuit(&dual).instructions().iter().cloned());
    Ok(Circuit::from_instructions(c.width(), c.input_len(), instructions)?)
}

/// Runs a CNOT-only circuit on a classical bit vector (`bits[q - 1]` is qubit `q`).
pub fn classical_cnot_run(c: &Circuit, x: &[bool], bits: &mut [bool]) -> Result<(), GadgetError> {
    if bits.len() != c.width() {
        return Err(GadgetError::InvalidParameter(format!(
            "bit vector has length {}, circuit width is {}",
            bits.len(),
            c.width()
        )));
    }
    for g in c.resolve(x)? {
        if g.kind != GateKind::CX {
            return Err(CircuitError::NonCnotGate { gate: g.to_string() }.into());
        }
        bits[g.qubits[1] - 1] ^= bits[g.qubits[0] - 1];
    }
    Ok(())
}

/// Bit 1 after running `c` classically on `|1 0 … 0⟩`.
fn first_bit(c: &Circuit, x: &[bool]) -> Result<bool, GadgetError> {
    let mut bits = vec![false; c.width()];
    bits[0] = true;
    classical_cnot_run(c, x, &mut bits)?;
    Ok(bits[0])
}

/// `2C(x) - 1`, where `C(x)` is the probability that `c` leaves qubit 1 of `|1 0 … 0⟩` at `0`.
pub fn parity_oracle_beta(c: &Circuit, x: &[bool]) -> Result<f64, GadgetError> {
    Ok(if first_bit(c, x)? { -1.0 } else { 1.0 })
}

/// Two-partition composition: qubit 1 and `main`'s other qubits form the first
/// partition, qubit 2 is the second clean qubit that receives each derived bit.
///
/// Layout: main qubit 1 stays at 1, main qubits `2..=wm` move to `3..=wm+1`;
/// the derived-bit circuits share one register whose qubit 1 is composed qubit 2
/// and whose remaining qubits follow the main partition. Each selected main
/// instruction is wrapped as compute, controlled gates, uncompute.
pub fn reduction_compose(r_circuits: &[Circuit], main: &Circuit) -> Result<Circuit, GadgetError> {
    if main.input_len() != r_circuits.len() {
        return Err(GadgetError::InvalidParameter(format!(
            "main reads {} input bits but {} derived-bit circuits were given",
            main.input_len(),
            r_circuits.len()
        )));
    }
    let inputs = r_circuits.first().map_or(0, Circuit::input_len);
    if let Some(r) = r_circuits.iter().find(|r| r.input_len() != inputs) {
        return Err(CircuitError::ShapeMismatch(r.width(), r.width(), inputs, r.input_len()).into());
    }
    let wm = main.width();
    let wr = r_circuits.iter().map(Circuit::width).max().unwrap_or(1).max(1);
    let map_main = |q: usize| if q == 1 { 1 } else { q + 1 };
    let map_r = move |q: usize| if q == 1 { 2 } else { wm + q };
    let remap_main = |gates: &[Gate]| -> Vec<Gate> { gates.iter().map(|g| g.remapped(map_main)).collect() };
    let controlled = |gates: &[Gate]| -> Result<Vec<Instruction>, GadgetError> {
        Ok(control_on(&remap_main(gates), 2)?.into_iter().map(Instruction::Gate).collect())
    };

    let mut compute = Vec::with_capacity(r_circuits.len());
    for r in r_circuits {
        let compiled = parity_l_compile(r)?;
        let block: Vec<Instruction> = compiled
            .instructions()
            .iter()
            .flat_map(|ins| ins.map_gates(|gs| gs.iter().map(|g| g.remapped(map_r)).collect()))
            .collect();
        compute.push(block);
    }

    let mut out = Vec::new();
    for ins in main.instructions() {
        match ins {
            Instruction::Gate(g) => out.push(Instruction::Gate(g.remapped(map_main))),
            Instruction::If { bit, gates } => {
                out.extend(compute[bit - 1].iter().cloned());
                out.extend(controlled(gates)?);
                out.extend(compute[bit - 1].iter().cloned());
            }
            Instruction::Pair { bit, zero, one } => {
                out.extend(compute[bit - 1].iter().cloned());
                out.push(Instruction::Gate(Gate::x(2)));
                out.extend(controlled(zero)?);
                out.push(Instruction::Gate(Gate::x(2)));
                out.extend(controlled(one)?);
                out.extend(compute[bit - 1].iter().cloned());
            }
        }
    }
    Ok(Circuit::from_instructions(wm + wr, inputs, out)?)
}

/// `β` of `main` on the derived input `R(x)`, where `R_i(x)` is bit 1 after a
/// classical run of `r_i` on `|1 0 … 0⟩`.
pub fn reduction_oracle(
    engine: &Engine,
    r_circuits: &[Circuit],
    main: &Circuit,
    x: &[bool],
) -> Result<f64, GadgetError> {
    let derived = r_circuits.iter().map(|r| first_bit(r, x)).collect::<Result<Vec<bool>, _>>()?;
    Ok(engine.beta(main, &derived, EngineKind::Dense)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::all_inputs;
    use crate::engine::{beta_cd, dense_run, BetaSource};
    use crate::gadgets::{and_gadget, not_gadget};
    use crate::parser::{parse, random_circuit, Alphabet};

    #[test]
    fn empty_and_single_cnot() {
        let c = Circuit::new(2, 0).unwrap();
        assert_eq!(dense_run(&parity_l_compile(&c).unwrap(), &[]).unwrap().beta(), -1.0);
        assert_eq!(parity_oracle_beta(&c, &[]).unwrap(), -1.0);
        let c = Circuit::from_gates(2, vec![Gate::cx(1, 2)]).unwrap();
        assert!((dense_run(&parity_l_compile(&c).unwrap(), &[]).unwrap().beta() + 1.0).abs() < 1e-12);
        assert_eq!(parity_oracle_beta(&c, &[]).unwrap(), -1.0);
    }

    #[test]
    fn random_cnot_circuits_match_classical_oracle() {
        for seed in 0..40 {
            let w = 2 + seed as usize % 5;
            let c = random_circuit(w, 3, 25, Alphabet::CnotOnly, seed).unwrap();
            for x in all_inputs(3) {
                let beta = dense_run(&parity_l_compile(&c).unwrap(), &x).unwrap().beta();
                assert!((beta - parity_oracle_beta(&c, &x).unwrap()).abs() < 1e-12, "seed {seed} x {x:?}");
            }
        }
    }

    #[test]
    fn rejects_non_cnot() {
        let c = Circuit::from_gates(2, vec![Gate::h(1)]).unwrap();
        assert!(matches!(parity_l_compile(&c), Err(GadgetError::Circuit(CircuitError::NonCnotGate { .. }))));
    }

    // R(x) = x_i on a two-qubit register
    fn copy_bit(inputs: usize, i: usize) -> Circuit {
        parse(&format!("width 2\ninputs {inputs}\npair {i} {{ cx 1 2; cx 2 1 }} {{ }}\n")).unwrap()
    }

    #[test]
    fn identity_reduction_reproduces_and() {
        let rs = vec![copy_bit(2, 1), copy_bit(2, 2)];
        let composed = reduction_compose(&rs, &and_gadget()).unwrap();
        let engine = Engine::default();
        for x in all_inputs(2) {
            let got = beta_cd(&composed, &x, 2, 1).unwrap();
            let want = if x[0] && x[1] { -1.0 } else { 1.0 };
            assert!((got - want).abs() < 1e-10, "x {x:?}");
            assert!((reduction_oracle(&engine, &rs, &and_gadget(), &x).unwrap() - want).abs() < 1e-12);
        }
    }

    #[test]
    fn xor_reduction_into_not() {
        // bit 1 ends as x1 ⊕ x2
        let r = parse("width 2\ninputs 2\npair 1 { cx 1 2; cx 2 1 } { }\nif 2 { cx 1 2; cx 2 1 }\n").unwrap();
        let composed = reduction_compose(&[r], &not_gadget()).unwrap();
        for x in all_inputs(2) {
            let want = if !(x[0] ^ x[1]) { -1.0 } else { 1.0 };
            assert!((beta_cd(&composed, &x, 2, 1).unwrap() - want).abs() < 1e-10, "x {x:?}");
        }
    }

    #[test]
    fn empty_reduction() {
        let main = Circuit::from_gates(2, vec![Gate::h(1), Gate::t(1), Gate::cx(1, 2)]).unwrap();
        let composed = reduction_compose(&[], &main).unwrap();
        let want = dense_run(&main, &[]).unwrap().beta();
        assert!((beta_cd(&composed, &[], 2, 1).unwrap() - want).abs() < 1e-10);
        assert!(reduction_compose(&[copy_bit(1, 1)], &main).is_err());
    }
}
