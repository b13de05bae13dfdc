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

//! Circuit constructions and their numerical verifiers.
//!
//! Every builder is a pure function returning a [`Circuit`]. The matching
//! `*_check` or `*_experiment` functions evaluate a construction with the
//! dense engine and report the quantities the construction promises.

mod boolean;
mod mixing;
mod oracle;
mod parity;
mod trace;

use thiserror::Error;

use crate::circuit::CircuitError;
use crate::engine::EngineError;
use crate::pauli::PauliError;
use crate::stats::StatsError;

pub use boolean::{and_gadget, entangled_example, not_gadget, padded, witness_check, xor_gadget, WitnessReport};
pub use mixing::{beta21_trace_terms, markov_mixing_circuit, mixing_bound};
pub use oracle::{
    corner_defect, corner_pair_experiment, fourier_lhs, fourier_permutation_experiment, permutation_unitary,
    random_corner_unitary, random_permutation, CornerReport, FourierReport, MAX_FOURIER_WIDTH,
};
pub use parity::{classical_cnot_run, parity_l_compile, parity_oracle_beta, reduction_compose, reduction_oracle};
pub use trace::{
    estimate_trace, estimate_trace_with, imag_trace_circuit, normalized_trace, trace_estimation_circuit, ImagReadout,
    TraceEstimate, TracePart,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GadgetError {
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error("{0}")]
    InvalidParameter(String),
    #[error("unitary does not fix the corner subspace (defect {0:e})")]
    CornerViolated(f64),
    #[error("width {width} exceeds the limit of {cap} qubits for this construction")]
    WidthOverCap { width: usize, cap: usize },
}
