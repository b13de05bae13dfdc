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

//! Hadamard-test trace estimation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::GadgetError;
use crate::circuit::{control_on, Circuit, Gate, Instruction};
use crate::dense::DenseOperator;
use crate::engine::{sample_beta, Counts, DenseState, Engine, EngineError, EngineKind};
use crate::pauli::PauliString;
use crate::stats::hoeffding_half_width;

fn controlled_shift(gates: &[Gate]) -> Result<Vec<Gate>, GadgetError> {
    let shifted: Vec<Gate> = gates.iter().map(|g| g.shifted(1)).collect();
    Ok(control_on(&shifted, 1)?)
}

/// `H1 · Λ1(U) · H1` on `w + 1` qubits, with `u` moved to qubits `2..=w+1`.
///
/// Classical selectors of `u` are kept, so the gadget works for every input.
/// Circuits containing `ccx` (or other doubly controlled gates) are rejected.
pub fn trace_estimation_circuit(u: &Circuit) -> Result<Circuit, GadgetError> {
    let mut instructions = Vec::with_capacity(u.len() + 2);
    instructions.push(Instruction::Gate(Gate::h(1)));
    for ins in u.instructions() {
        match ins {
            Instruction::Gate(g) => {
                instructions.extend(controlled_shift(std::slice::from_ref(g))?.into_iter().map(Instruction::Gate))
            }
            Instruction::If { bit, gates } => {
                instructions.push(Instruction::If { bit: *bit, gates: controlled_shift(gates)? })
            }
            Instruction::Pair { bit, zero, one } => instructions.push(Instruction::Pair {
                bit: *bit,
                zero: controlled_shift(zero)?,
                one: controlled_shift(one)?,
            }),
        }
    }
    instructions.push(Instruction::Gate(Gate::h(1)));
    Ok(Circuit::from_instructions(u.width() + 1, u.input_len(), instructions)?)
}

/// How to read `Im Tr[U] / 2^w` off the final state of the trace gadget:
/// `Im Tr[U] / 2^w = sign · Tr[ρ · observable]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ImagReadout {
    pub observable: PauliString,
    pub sign: f64,
}

impl ImagReadout {
    pub fn read(&self, state: &DenseState) -> f64 {
        self.sign * state.expectation(&self.observable).re
    }
}

/// The trace gadget together with the `Y1` readout of the imaginary part.
pub fn imag_trace_circuit(u: &Circuit) -> Result<(Circuit, ImagReadout), GadgetError> {
    let c = trace_estimation_circuit(u)?;
    let observable = PauliString::y(c.width(), 1)?;
    Ok((c, ImagReadout { observable, sign: -1.0 }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TracePart {
    Real,
    Imag,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceEstimate {
    pub part: TracePart,
    /// Sampled estimate of the selected part of `Tr[U] / 2^w`.
    pub re_hat: f64,
    pub shots: u64,
    pub half_width: f64,
    pub confidence: f64,
    pub exact: Option<f64>,
    pub counts: Counts,
}

/// `Tr[U(x)] / 2^w` by dense multiplication.
pub fn normalized_trace(engine: &Engine, u: &Circuit, x: &[bool]) -> Result<Complex64, GadgetError> {
    let w = u.width();
    if w > engine.dense_cap {
        return Err(EngineError::WidthOverCap { width: w, cap: engine.dense_cap }.into());
    }
    let m = DenseOperator::unitary(w, &u.resolve(x)?)?;
    Ok(m.trace() / f64::from(1u32 << w))
}

/// Samples the trace gadget of `u` on input `x` and brackets the estimate with a
/// two-sided Hoeffding interval at `confidence`.
///
/// For [`TracePart::Imag`] the final state is rotated by `sdg 1; h 1` so that the
/// `Y1` expectation lands on the measured `Z1`.
pub fn estimate_trace_with(
    engine: &Engine,
    u: &Circuit,
    x: &[bool],
    part: TracePart,
    shots: u64,
    seed: u64,
    confidence: f64,
) -> Result<TraceEstimate, GadgetError> {
    let half_width = hoeffding_half_width(shots, confidence)?;
    let (circuit, sign) = match part {
        TracePart::Real => (trace_estimation_circuit(u)?, 1.0),
        TracePart::Imag => {
            let (mut c, readout) = imag_trace_circuit(u)?;
            c.push_gate(Gate::sdg(1))?;
            c.push_gate(Gate::h(1))?;
            (c, readout.sign)
        }
    };
    let kind = if circuit.width() <= engine.dense_cap { EngineKind::Dense } else { EngineKind::Pauli };
    let beta = engine.beta(&circuit, x, kind)?;
    let counts = sample_beta(beta, shots, seed)?;
    Ok(TraceEstimate {
        part,
        re_hat: sign * counts.beta_hat(),
        shots,
        half_width,
        confidence,
        exact: Some(sign * beta),
        counts,
    })
}

/// Real-part estimate with the default engine.
pub fn estimate_trace(
    u: &Circuit,
    x: &[bool],
    shots: u64,
    seed: u64,
    confidence: f64,
) -> Result<TraceEstimate, GadgetError> {
    estimate_trace_with(&Engine::default(), u, x, TracePart::Real, shots, seed, confidence)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{dense_run, BetaSource};
    use crate::parser::{random_circuit, Alphabet};
    use std::f64::consts::FRAC_PI_4;

    fn single(w: usize, gates: Vec<Gate>) -> Circuit {
        Circuit::from_gates(w, gates).unwrap()
    }

    #[test]
    fn frozen_trace_values() {
        let e = trace_estimation_circuit(&Circuit::new(2, 0).unwrap()).unwrap();
        assert!((dense_run(&e, &[]).unwrap().beta() - 1.0).abs() < 1e-12);
        let e = trace_estimation_circuit(&single(1, vec![Gate::z(1)])).unwrap();
        assert!(dense_run(&e, &[]).unwrap().beta().abs() < 1e-12);
        let e = trace_estimation_circuit(&single(1, vec![Gate::t(1)])).unwrap();
        let want = (1.0 + FRAC_PI_4.cos()) / 2.0;
        assert!((dense_run(&e, &[]).unwrap().beta() - want).abs() < 1e-12);
    }

    #[test]
    fn imaginary_readout_sign() {
        // Tr[S] = 1 + i and Tr[T] = 1 + e^{-iπ/4} in this gate convention
        for (gate, im) in [(Gate::s(1), 0.5), (Gate::t(1), -FRAC_PI_4.sin() / 2.0)] {
            let (c, readout) = imag_trace_circuit(&single(1, vec![gate])).unwrap();
            let st = dense_run(&c, &[]).unwrap();
            assert!((readout.read(&st) - im).abs() < 1e-12);
            assert!((st.expectation(&readout.observable).re + im).abs() < 1e-12);
        }
        let (c, readout) = imag_trace_circuit(&Circuit::new(2, 0).unwrap()).unwrap();
        assert!(readout.read(&dense_run(&c, &[]).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn gadget_matches_dense_trace_on_random_circuits() {
        let engine = Engine::default();
        for seed in 0..15 {
            let w = 1 + (seed as usize % 4);
            let u = random_circuit(w, 2, 30, Alphabet::CliffordT, seed).unwrap();
            let x = [seed % 2 == 1, seed % 3 == 1];
            let tr = normalized_trace(&engine, &u, &x).unwrap();
            let e = trace_estimation_circuit(&u).unwrap();
            let st = dense_run(&e, &x).unwrap();
            assert!((st.beta() - tr.re).abs() < 1e-10);
            let (_, readout) = imag_trace_circuit(&u).unwrap();
            assert!((readout.read(&st) - tr.im).abs() < 1e-10);
        }
    }

    #[test]
    fn rejects_toffoli() {
        let u = single(3, vec![Gate::ccx(1, 2, 3)]);
        assert!(trace_estimation_circuit(&u).is_err());
    }

    #[test]
    fn sampled_estimates() {
        let id = Circuit::new(2, 0).unwrap();
        let est = estimate_trace(&id, &[], 37, 5, 0.99).unwrap();
        assert_eq!(est.re_hat, 1.0);
        let u = single(1, vec![Gate::t(1)]);
        let est = estimate_trace(&u, &[], 100_000, 9, 0.99).unwrap();
        assert!((est.re_hat - est.exact.unwrap()).abs() <= est.half_width);
        let s = single(1, vec![Gate::s(1)]);
        let est = estimate_trace_with(&Engine::default(), &s, &[], TracePart::Imag, 100_000, 3, 0.99).unwrap();
        assert!((est.exact.unwrap() - 0.5).abs() < 1e-12);
        assert!((est.re_hat - 0.5).abs() <= est.half_width);
    }
}
