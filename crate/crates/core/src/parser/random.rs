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

//! Seeded random circuits for test corpora.

use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, CircuitError, Gate, GateKind, Instruction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Alphabet {
    #[serde(rename = "clifford")]
    Clifford,
    #[serde(rename = "clifford+t")]
    CliffordT,
    #[serde(rename = "cnot-only")]
    CnotOnly,
}

impl Alphabet {
    pub fn kinds(self) -> Vec<GateKind> {
        use GateKind::*;
        match self {
            Alphabet::Clifford => vec![H, X, Y, Z, S, Sdg, CX, CZ, Swap],
            Alphabet::CliffordT => vec![H, X, Y, Z, S, Sdg, T, Tdg, CX, CZ, Swap],
            Alphabet::CnotOnly => vec![CX],
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Alphabet::Clifford => "clifford",
            Alphabet::CliffordT => "clifford+t",
            Alphabet::CnotOnly => "cnot-only",
        })
    }
}

impl FromStr for Alphabet {
    type Err = String;
    fn from_str(s: &str) -> Result<Alphabet, String> {
        match s {
            "clifford" => Ok(Alphabet::Clifford),
            "clifford+t" => Ok(Alphabet::CliffordT),
            "cnot-only" => Ok(Alphabet::CnotOnly),
            other => Err(format!("unknown alphabet {other:?}")),
        }
    }
}

fn random_gate(rng: &mut ChaCha8Rng, kinds: &[GateKind], width: usize) -> Gate {
    let kind = kinds[rng.gen_range(0..kinds.len())].clone();
    let qubits = index::sample(rng, width, kind.arity()).into_iter().map(|q| q + 1).collect();
    Gate { kind, qubits }
}

fn random_list(rng: &mut ChaCha8Rng, kinds: &[GateKind], width: usize, min: usize, max: usize) -> Vec<Gate> {
    let n = rng.gen_range(min..=max);
    (0..n).map(|_| random_gate(rng, kinds, width)).collect()
}

/// `depth` instructions drawn from `alphabet` with uniform in-range qubits.
///
/// With `input_len > 0`, about half of the instructions are classically
/// selected: `if` blocks of one or two gates, or `pair`s of up to two gates per branch.
pub fn random_circuit(
    width: usize,
    input_len: usize,
    depth: usize,
    alphabet: Alphabet,
    seed: u64,
) -> Result<Circuit, CircuitError> {
    let kinds: Vec<GateKind> = alphabet.kinds().into_iter().filter(|k| k.arity() <= width).collect();
    if kinds.is_empty() {
        return Err(CircuitError::InvalidParameter(format!("alphabet {alphabet} needs more than {width} qubit(s)")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = Circuit::new(width, input_len)?;
    for _ in 0..depth {
        let ins = if input_len == 0 || rng.gen_bool(0.5) {
            Instruction::Gate(random_gate(&mut rng, &kinds, width))
        } else {
            let bit = rng.gen_range(1..=input_len);
            if rng.gen_bool(0.5) {
                Instruction::If { bit, gates: random_list(&mut rng, &kinds, width, 1, 2) }
            } else {
                let zero = random_list(&mut rng, &kinds, width, 0, 2);
                let one = random_list(&mut rng, &kinds, width, 0, 2);
                Instruction::Pair { bit, zero, one }
            }
        };
        c.push(ins)?;
    }
    Ok(c)
}
