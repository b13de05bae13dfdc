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

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "dqc1", version, about = "One-clean-qubit circuit simulator and experiment workbench")]
pub struct Cli {
    /// Largest register simulated densely (also read from DQC1_DENSE_CAP).
    #[arg(long, global = true, value_name = "QUBITS")]
    pub dense_cap: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a circuit file, then print its canonical form.
    Validate {
        /// Circuit file, or `-` for standard input.
        file: String,
    },
    /// Simulate a circuit and print β, P(0) and the workspace diagnostics.
    Run {
        file: String,
        #[arg(long, default_value = "")]
        input: String,
        #[arg(long, value_enum, default_value_t = EngineArg::Dense)]
        engine: EngineArg,
        #[arg(long)]
        json: bool,
    },
    /// Draw seeded measurement shots of qubit 1.
    Sample {
        file: String,
        #[arg(long, default_value = "")]
        input: String,
        #[arg(long)]
        shots: u64,
        #[arg(long)]
        seed: u64,
        /// Decide on β̂ with threshold 1/Q and set the exit code.
        #[arg(long, value_name = "Q")]
        q: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Estimate the normalised trace of a circuit through the Hadamard test.
    TraceEst(TraceArgs),
    /// Emit a gadget circuit and run its verification contract.
    Gadget {
        #[command(subcommand)]
        which: GadgetCommand,
        /// Print the circuit only.
        #[arg(long, global = true)]
        no_check: bool,
    },
    /// Run a seeded experiment corpus and write its report.
    Experiment {
        /// cross_engine, trace_est, parity_l, mixing, corner, fourier or witness.
        kind: String,
        /// JSON configuration; every field is optional.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Report path; without it the JSON report goes to standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
    },
}

#[derive(Debug, Args)]
pub struct TraceArgs {
    pub file: String,
    #[arg(long, default_value = "")]
    pub input: String,
    #[arg(long)]
    pub shots: u64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.99)]
    pub confidence: f64,
    /// Estimate the imaginary part instead of the real part.
    #[arg(long)]
    pub imag: bool,
    /// Decide on the estimate with threshold 1/Q and set the exit code.
    #[arg(long, value_name = "Q")]
    pub q: Option<f64>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum GadgetCommand {
    And {
        #[arg(long, default_value_t = 1)]
        width: usize,
    },
    Xor {
        #[arg(long, default_value_t = 1)]
        width: usize,
    },
    Not {
        #[arg(long, default_value_t = 1)]
        width: usize,
    },
    Entangle {
        #[arg(long, default_value_t = 2)]
        width: usize,
    },
    /// Compile a CNOT-only circuit into a deterministic one-clean-qubit circuit.
    ParityL { file: String },
    /// Prefix a circuit with 2s Toffoli mixing steps.
    Mixing {
        file: String,
        #[arg(long)]
        s: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum EngineArg {
    Dense,
    Pauli,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}
