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

//! Boolean gadgets and the two-qubit entanglement example.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::GadgetError;
use crate::circuit::{Circuit, Gate, GateKind, Instruction};
use crate::engine::DenseState;
use crate::pauli::{PauliString, PauliSum};

fn pair(bit: usize, zero: Vec<Gate>, one: Vec<Gate>) -> Instruction {
    Instruction::Pair { bit, zero, one }
}

fn fixed(width: usize, inputs: usize, instructions: Vec<Instruction>) -> Circuit {
    Circuit::from_instructions(width, inputs, instructions).expect("gadget circuits are well formed")
}

/// `β = (-1)^{x1 ∧ x2}`: `H1` on `x1`, `Z1` on `x2`, `H1` on `x1`.
pub fn and_gadget() -> Circuit {
    fixed(
        1,
        2,
        vec![pair(1, vec![], vec![Gate::h(1)]), pair(2, vec![], vec![Gate::z(1)]), pair(1, vec![], vec![Gate::h(1)])],
    )
}

/// `β = (-1)^{x1 ⊕ x2}`.
pub fn xor_gadget() -> Circuit {
    fixed(1, 2, vec![pair(1, vec![], vec![Gate::x(1)]), pair(2, vec![], vec![Gate::x(1)])])
}

/// `β = (-1)^{¬x1}`.
pub fn not_gadget() -> Circuit {
    fixed(1, 1, vec![pair(1, vec![Gate::x(1)], vec![])])
}

/// The same circuit on a wider register; the extra qubits stay idle.
pub fn padded(c: &Circuit, width: usize) -> Result<Circuit, GadgetError> {
    if width < c.width() {
        return Err(GadgetError::InvalidParameter(format!("cannot narrow a width-{} circuit to {width}", c.width())));
    }
    Ok(Circuit::from_instructions(width, c.input_len(), c.instructions().to_vec())?)
}

/// Circuit preparing `(2 + X1X2 - Y1Y2 + Z1 - Z2) / 2^{w+1}` from the start state,
/// and that expected state as a Pauli sum.
pub fn entangled_example(width: usize) -> Result<(Circuit, PauliSum), GadgetError> {
    if width < 2 {
        return Err(GadgetError::InvalidParameter(format!("entangled example needs width >= 2, got {width}")));
    }
    let ch = Gate::new(GateKind::Ctrl(Box::new(GateKind::H)), vec![2, 1])?;
    let c = Circuit::from_gates(width, vec![Gate::x(2), ch, Gate::x(2), Gate::cx(1, 2)])?;
    let norm = 1.0 / f64::from(1u32 << (width + 1));
    let mut expected = PauliSum::zero(width)?;
    let xx = PauliString::x(width, 1)?.try_mul(&PauliString::x(width, 2)?)?;
    let yy = PauliString::y(width, 1)?.try_mul(&PauliString::y(width, 2)?)?;
    expected.add_string(&PauliString::identity(width)?, Complex64::new(2.0 * norm, 0.0));
    expected.add_string(&xx, Complex64::new(norm, 0.0));
    expected.add_string(&yy, Complex64::new(-norm, 0.0));
    expected.add_string(&PauliString::z(width, 1)?, Complex64::new(norm, 0.0));
    expected.add_string(&PauliString::z(width, 2)?, Complex64::new(-norm, 0.0));
    Ok((c, expected))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    /// `Tr[ρ (1 - Z1)(1 + Z2)]`.
    pub v1: Complex64,
    /// `Tr[ρ (X1 + iY1)(X2 + iY2)]`.
    pub v2: Complex64,
    pub entangled: bool,
}

const V1_ZERO_TOL: f64 = 1e-10;
const V2_NONZERO_TOL: f64 = 1e-6;

/// Evaluates both witness forms on qubits 1 and 2 of `state`.
pub fn witness_check(state: &DenseState) -> Result<WitnessReport, GadgetError> {
    let w = state.width();
    if w < 2 {
        return Err(GadgetError::InvalidParameter(format!("witness needs width >= 2, got {w}")));
    }
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let (z1, z2) = (PauliString::z(w, 1)?, PauliString::z(w, 2)?);
    let mut f1 = PauliSum::identity(w)?;
    f1.add_string(&z2, one);
    f1.add_string(&z1, -one);
    f1.add_string(&z1.try_mul(&z2)?, -one);
    let mut a = PauliSum::from_string(&PauliString::x(w, 1)?);
    a.add_string(&PauliString::y(w, 1)?, i);
    let mut b = PauliSum::from_string(&PauliString::x(w, 2)?);
    b.add_string(&PauliString::y(w, 2)?, i);
    let f2 = a.mul(&b)?;
    let v1 = state.expectation_sum(&f1);
    let v2 = state.expectation_sum(&f2);
    let entangled = v1.norm() <= V1_ZERO_TOL && v2.norm() >= V2_NONZERO_TOL;
    Ok(WitnessReport { v1, v2, entangled })
}
