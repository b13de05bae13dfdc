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

//! Fixtures shared by the benchmarks.

use dqc1_core::{random_circuit, Alphabet, Circuit};

/// Seeded random circuit with no input bits.
pub fn fixture(width: usize, depth: usize, alphabet: Alphabet) -> Circuit {
    random_circuit(width, 0, depth, alphabet, 0x5eed ^ width as u64).expect("fixture parameters are valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_reproducible() {
        let a = fixture(4, 30, Alphabet::CliffordT);
        assert_eq!(a, fixture(4, 30, Alphabet::CliffordT));
        assert_eq!(a.width(), 4);
    }
}
