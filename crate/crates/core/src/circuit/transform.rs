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

//! Circuit-to-circuit transforms: control, adjoint, CNOT reversal, squaring and concatenation.

use super::{Circuit, CircuitError, Gate, GateKind, Instruction, MAX_CTRL_DEPTH};

/// Wraps every gate in a control on `control`.
///
/// `X`, `Z` and `CX` become `CX`, `CZ` and `CCX`; identity gates are kept as is.
pub fn control_on(gates: &[Gate], control: usize) -> Result<Vec<Gate>, CircuitError> {
    if control == 0 {
        return Err(CircuitError::QubitOutOfRange { qubit: 0, width: 0 });
    }
    gates
        .iter()
        .map(|g| {
            if g.qubits.contains(&control) {
                return Err(CircuitError::ControlCollision { control, gate: g.to_string() });
            }
            if g.kind == GateKind::I {
                return Ok(g.clone());
            }
            let kind = match &g.kind {
                GateKind::X => GateKind::CX,
                GateKind::Z => GateKind::CZ,
                GateKind::CX => GateKind::CCX,
                other => GateKind::Ctrl(Box::new(other.clone())),
            };
            if kind.ctrl_depth() > MAX_CTRL_DEPTH {
                return Err(CircuitError::CtrlDepth { gate: g.kind.name() });
            }
            let mut qubits = Vec::with_capacity(g.qubits.len() + 1);
            qubits.push(control);
            qubits.extend_from_slice(&g.qubits);
            Ok(Gate { kind, qubits })
        })
        .collect()
}

/// Reverses the list and inverts each gate.
pub fn adjoint_gates(gates: &[Gate]) -> Vec<Gate> {
    gates.iter().rev().map(Gate::inverse).collect()
}

/// Adjoint of a whole circuit; selectors are kept, so for every input `x`
/// `adjoint_circuit(c).resolve(x) == adjoint_gates(c.resolve(x))`.
pub fn adjoint_circuit(c: &Circuit) -> Circuit {
    let instructions = c
        .instructions
        .iter()
        .rev()
        .map(|ins| match ins {
            Instruction::Gate(g) => Instruction::Gate(g.inverse()),
            Instruction::If { bit, gates } => Instruction::If { bit: *bit, gates: adjoint_gates(gates) },
            Instruction::Pair { bit, zero, one } => {
                Instruction::Pair { bit: *bit, zero: adjoint_gates(zero), one: adjoint_gates(one) }
            }
        })
        .collect();
    Circuit { width: c.width, input_len: c.input_len, instructions }
}

/// Swaps control and target of every CNOT, keeping all classical selectors.
pub fn reverse_cnot_dual(c: &Circuit) -> Result<Circuit, CircuitError> {
    let flip = |gates: &[Gate]| -> Result<Vec<Gate>, CircuitError> {
        gates
            .iter()
            .map(|g| match g.kind {
                GateKind::CX => Ok(Gate::cx(g.qubits[1], g.qubits[0])),
                _ => Err(CircuitError::NonCnotGate { gate: g.to_string() }),
            })
            .collect()
    };
    let mut instructions = Vec::with_capacity(c.instructions.len());
    for ins in &c.instructions {
        instructions.push(match ins {
            Instruction::Gate(g) => Instruction::Gate(flip(std::slice::from_ref(g))?.remove(0)),
            Instruction::If { bit, gates } => Instruction::If { bit: *bit, gates: flip(gates)? },
            Instruction::Pair { bit, zero, one } => Instruction::Pair { bit: *bit, zero: flip(zero)?, one: flip(one)? },
        });
    }
    Ok(Circuit { width: c.width, input_len: c.input_len, instructions })
}

/// Circuit whose resolved unitary is `U(y) · Z1 · U†(y) · Z1` for every input `y`.
///
/// Temporal order: `Z1`, the adjoint of `c`, `Z1`, then `c`.
pub fn square_for_trace(c: &Circuit) -> Circuit {
    let adj = adjoint_circuit(c);
    let mut instructions = Vec::with_capacity(2 * c.len() + 2);
    instructions.push(Instruction::Gate(Gate::z(1)));
    instructions.extend(adj.instructions);
    instructions.push(Instruction::Gate(Gate::z(1)));
    instructions.extend(c.instructions.iter().cloned());
    Circuit { width: c.width, input_len: c.input_len, instructions }
}

/// Temporal concatenation: `a` runs first.
pub fn concat(a: &Circuit, b: &Circuit) -> Result<Circuit, CircuitError> {
    if a.width != b.width || a.input_len != b.input_len {
        return Err(CircuitError::ShapeMismatch(a.width, b.width, a.input_len, b.input_len));
    }
    let mut instructions = a.instructions.clone();
    instructions.extend(b.instructions.iter().cloned());
    Ok(Circuit { width: a.width, input_len: a.input_len, instructions })
}
