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

//! Simulation engines, circuit IR and gadget builders for the one-clean-qubit model.
//!
//! The model starts every computation from `(1 + Z1) / 2^w`, allows only unitary
//! conjugation, and reads a single number out at the end: the coefficient `β` of
//! `Z1`, so that measuring qubit 1 gives `0` with probability `(1 + β) / 2`.

pub mod circuit;
pub mod dense;
pub mod engine;
pub mod experiments;
pub mod gadgets;
pub mod parser;
pub mod pauli;
pub mod stats;

pub use circuit::{Circuit, CircuitError, Gate, GateKind, Instruction};
pub use dense::{DenseError, DenseOperator, DEFAULT_DENSE_CAP};
pub use engine::{
    beta_of, decide, BetaSource, Counts, Decision, DecisionPolicy, DenseState, Engine, EngineError, EngineKind,
    HeisenbergState, StateDecomposition,
};
pub use experiments::{
    run_experiment, write_report, ExperimentConfig, ExperimentError, ExperimentKind, ExperimentReport, ReportFormat,
};
pub use gadgets::{GadgetError, TraceEstimate, TracePart};
pub use parser::{parse, parse_bytes, print, random_circuit, Alphabet, SourceError, SourceErrorKind};
pub use pauli::{PauliError, PauliString, PauliSum, Phase};
pub use stats::{hoeffding_half_width, shots_required};
