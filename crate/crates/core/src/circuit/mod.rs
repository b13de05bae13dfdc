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

//! Circuit intermediate representation with classically selected gates.
//!
//! Qubits and input bits are 1-based; qubit 1 is the clean qubit. Instructions
//! are listed in temporal order, so the unitary of a resolved gate list
//! `[g1, ..., gt]` is `Gt · ... · G1`.

mod gate;
mod transform;

pub use gate::{Gate, GateKind, MAX_CTRL_DEPTH};
pub use transform::{adjoint_circuit, adjoint_gates, concat, control_on, reverse_cnot_dual, square_for_trace};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("input has {found} bits, circuit expects {expected}")]
    InputLength { expected: usize, found: usize },
    #[error("qubit {qubit} out of range for width {width}")]
    QubitOutOfRange { qubit: usize, width: usize },
    #[error("input bit {bit} out of range for {inputs} inputs")]
    BitOutOfRange { bit: usize, inputs: usize },
    #[error("gate {gate} repeats qubit {qubit}")]
    DuplicateQubit { gate: String, qubit: usize },
    #[error("gate {gate} takes {expected} qubits, got {found}")]
    ArityMismatch { gate: String, expected: usize, found: usize },
    #[error("gate {gate} exceeds the control nesting limit")]
    CtrlDepth { gate: String },
    #[error("control qubit {control} is already used by gate {gate}")]
    ControlCollision { control: usize, gate: String },
    #[error("gate {gate} is not a CNOT")]
    NonCnotGate { gate: String },
    #[error("circuits differ in shape: width {0} vs {1}, inputs {2} vs {3}")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("circuit width must be positive")]
    ZeroWidth,
    #[error("invalid bit string {0:?}")]
    InvalidBits(String),
    #[error("{0}")]
    InvalidParameter(String),
}

/// One step of a circuit, selected by at most one classical input bit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Instruction {
    /// Always applied.
    Gate(Gate),
    /// Applied only when input bit `bit` is 1.
    If { bit: usize, gates: Vec<Gate> },
    /// `zero` when the bit is 0, `one` when it is 1.
    Pair { bit: usize, zero: Vec<Gate>, one: Vec<Gate> },
}

impl Instruction {
    pub fn gates(&self) -> impl Iterator<Item = &Gate> {
        let (a, b): (&[Gate], &[Gate]) = match self {
            Instruction::Gate(g) => (std::slice::from_ref(g), &[]),
            Instruction::If { gates, .. } => (gates, &[]),
            Instruction::Pair { zero, one, .. } => (zero, one),
        };
        a.iter().chain(b.iter())
    }

    pub fn selector_bit(&self) -> Option<usize> {
        match self {
            Instruction::Gate(_) => None,
            Instruction::If { bit, .. } | Instruction::Pair { bit, .. } => Some(*bit),
        }
    }

    /// Applies `f` to every gate list, keeping the selector.
    pub fn map_gates(&self, mut f: impl FnMut(&[Gate]) -> Vec<Gate>) -> Vec<Instruction> {
        match self {
            Instruction::Gate(g) => f(std::slice::from_ref(g)).into_iter().map(Instruction::Gate).collect(),
            Instruction::If { bit, gates } => vec![Instruction::If { bit: *bit, gates: f(gates) }],
            Instruction::Pair { bit, zero, one } => {
                vec![Instruction::Pair { bit: *bit, zero: f(zero), one: f(one) }]
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circuit {
    width: usize,
    input_len: usize,
    instructions: Vec<Instruction>,
}

impl Circuit {
    pub fn new(width: usize, input_len: usize) -> Result<Circuit, CircuitError> {
        if width == 0 {
            return Err(CircuitError::ZeroWidth);
        }
        Ok(Circuit { width, input_len, instructions: Vec::new() })
    }

    pub fn from_instructions(
        width: usize,
        input_len: usize,
        instructions: Vec<Instruction>,
    ) -> Result<Circuit, CircuitError> {
        let mut c = Circuit::new(width, input_len)?;
        for ins in instructions {
            c.push(ins)?;
        }
        Ok(c)
    }

    /// Unconditional circuit from a plain gate list.
    pub fn from_gates(width: usize, gates: Vec<Gate>) -> Result<Circuit, CircuitError> {
        Circuit::from_instructions(width, 0, gates.into_iter().map(Instruction::Gate).collect())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn input_len(&self) -> usize {
        self.input_len
    }

    pub fn instructions(&self) -> &[Instruction] {
        &self.instructions
    }

    pub fn len(&self) -> usize {
        self.instructions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instructions.is_empty()
    }

    pub fn gates(&self) -> impl Iterator<Item = &Gate> {
        self.instructions.iter().flat_map(|i| i.gates())
    }

    pub fn push(&mut self, ins: Instruction) -> Result<(), CircuitError> {
        self.check_instruction(&ins)?;
        self.instructions.push(ins);
        Ok(())
    }

    pub fn push_gate(&mut self, gate: Gate) -> Result<(), CircuitError> {
        self.push(Instruction::Gate(gate))
    }

    pub fn check_gate(&self, gate: &Gate) -> Result<(), CircuitError> {
        gate.check_shape().map_err(|e| match e {
            CircuitError::QubitOutOfRange { qubit, .. } => CircuitError::QubitOutOfRange { qubit, width: self.width },
            other => other,
        })?;
        if let Some(&q) = gate.qubits.iter().find(|&&q| q > self.width) {
            return Err(CircuitError::QubitOutOfRange { qubit: q, width: self.width });
        }
        Ok(())
    }

    fn check_instruction(&self, ins: &Instruction) -> Result<(), CircuitError> {
        if let Some(bit) = ins.selector_bit() {
            if bit == 0 || bit > self.input_len {
                return Err(CircuitError::BitOutOfRange { bit, inputs: self.input_len });
            }
        }
        ins.gates().try_for_each(|g| self.check_gate(g))
    }

    /// Flattens the circuit for input `x` into a classical-control-free gate list.
    pub fn resolve(&self, x: &[bool]) -> Result<Vec<Gate>, CircuitError> {
        if x.len() != self.input_len {
            return Err(CircuitError::InputLength { expected: self.input_len, found: x.len() });
        }
        let mut out = Vec::new();
        for ins in &self.instructions {
            match ins {
                Instruction::Gate(g) => out.push(g.clone()),
                Instruction::If { bit, gates } => {
                    if x[bit - 1] {
                        out.extend(gates.iter().cloned());
                    }
                }
                Instruction::Pair { bit, zero, one } => {
                    out.extend(if x[bit - 1] { one } else { zero }.iter().cloned());
                }
            }
        }
        Ok(out)
    }
}

/// Free-function form of [`Circuit::resolve`].
pub fn resolve(c: &Circuit, x: &[bool]) -> Result<Vec<Gate>, CircuitError> {
    c.resolve(x)
}

/// Parses a string of `0`/`1` characters, first character is input bit 1.
pub fn parse_bits(s: &str) -> Result<Vec<bool>, CircuitError> {
    s.chars()
        .map(|ch| match ch {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(CircuitError::InvalidBits(s.to_string())),
        })
        .collect()
}

pub fn format_bits(x: &[bool]) -> String {
    x.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Every bit string of length `n`, in counting order with bit 1 most significant.
pub fn all_inputs(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (0..1u64 << n).map(move |v| (0..n).map(|k| (v >> (n - 1 - k)) & 1 == 1).collect())
}
