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

//! Exact arithmetic on Pauli strings and complex sums of them.
//!
//! A [`PauliString`] is `i^k · ∏_j X_j^{x_j} Z_j^{z_j}` with the `X` factor to the
//! left of the `Z` factor on every qubit. `Y` is the derived element `i·X·Z`.

mod conjugate;
mod sum;

pub use conjugate::{conjugate_clifford, conjugate_dense_gate, DEFAULT_TERM_CAP};
pub use sum::PauliSum;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

/// Masks are stored in a `u64`, one bit per qubit (bit `q - 1` for qubit `q`).
pub const MAX_PAULI_WIDTH: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PauliError {
    #[error("width mismatch: {0} vs {1}")]
    WidthMismatch(usize, usize),
    #[error("width {0} is outside 1..={MAX_PAULI_WIDTH}")]
    InvalidWidth(usize),
    #[error("qubit {qubit} out of range for width {width}")]
    QubitOutOfRange { qubit: usize, width: usize },
    #[error("gate {0} is not Clifford")]
    NonClifford(String),
    #[error("gate {gate} acts on {arity} qubits; local expansion supports at most 3")]
    ArityTooLarge { gate: String, arity: usize },
    #[error("expansion reached {terms} terms, above the cap of {cap}")]
    TermBlowup { terms: usize, cap: usize },
    #[error("width {width} exceeds the dense cap of {cap}")]
    WidthOverCap { width: usize, cap: usize },
    #[error("cannot parse Pauli string {0:?}")]
    Parse(String),
}

/// Power of `i`, stored mod 4.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_exponent(k: u32) -> Phase {
        Phase((k % 4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn conj(self) -> Phase {
        Phase((4 - self.0) % 4)
    }

    pub fn to_complex(self) -> Complex64 {
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }
}

impl std::ops::Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["+", "+i", "-", "-i"][self.0 as usize])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    width: usize,
    phase: Phase,
    x: u64,
    z: u64,
}

fn width_mask(width: usize) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

pub(crate) fn check_width(width: usize) -> Result<(), PauliError> {
    if width == 0 || width > MAX_PAULI_WIDTH {
        Err(PauliError::InvalidWidth(width))
    } else {
        Ok(())
    }
}

impl PauliString {
    pub fn new(width: usize, phase: Phase, x_mask: u64, z_mask: u64) -> Result<PauliString, PauliError> {
        check_width(width)?;
        let m = width_mask(width);
        if x_mask & !m != 0 || z_mask & !m != 0 {
            return Err(PauliError::QubitOutOfRange { qubit: 64 - (x_mask | z_mask).leading_zeros() as usize, width });
        }
        Ok(PauliString { width, phase, x: x_mask, z: z_mask })
    }

    pub fn identity(width: usize) -> Result<PauliString, PauliError> {
        PauliString::new(width, Phase::ONE, 0, 0)
    }

    fn single(width: usize, qubit: usize, x: bool, z: bool, phase: Phase) -> Result<PauliString, PauliError> {
        check_width(width)?;
        if qubit == 0 || qubit > width {
            return Err(PauliError::QubitOutOfRange { qubit, width });
        }
        let b = 1u64 << (qubit - 1);
        PauliString::new(width, phase, if x { b } else { 0 }, if z { b } else { 0 })
    }

    pub fn x(width: usize, qubit: usize) -> Result<PauliString, PauliError> {
        PauliString::single(width, qubit, true, false, Phase::ONE)
    }

    pub fn z(width: usize, qubit: usize) -> Result<PauliString, PauliError> {
        PauliString::single(width, qubit, false, true, Phase::ONE)
    }

    /// `Y = i·X·Z`.
    pub fn y(width: usize, qubit: usize) -> Result<PauliString, PauliError> {
        PauliString::single(width, qubit, true, true, Phase::I)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    pub fn with_phase(mut self, phase: Phase) -> PauliString {
        self.phase = phase;
        self
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Number of qubits carrying both an `X` and a `Z` factor.
    pub fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    /// Canonical product `self · rhs`.
    pub fn try_mul(&self, rhs: &PauliString) -> Result<PauliString, PauliError> {
        if self.width != rhs.width {
            return Err(PauliError::WidthMismatch(self.width, rhs.width));
        }
        // Z^a X^b = (-1)^{a·b} X^b Z^a on each qubit.
        let swaps = (self.z & rhs.x).count_ones();
        let phase = self.phase * rhs.phase * Phase::from_exponent(2 * swaps);
        Ok(PauliString { width: self.width, phase, x: self.x ^ rhs.x, z: self.z ^ rhs.z })
    }

    /// `(i^k X^x Z^z)† = i^{-k} Z^z X^x = i^{-k} (-1)^{|x∧z|} X^x Z^z`.
    pub fn adjoint(&self) -> PauliString {
        let phase = self.phase.conj() * Phase::from_exponent(2 * self.y_count());
        PauliString { phase, ..*self }
    }

    pub fn commutes_with(&self, rhs: &PauliString) -> bool {
        ((self.x & rhs.z).count_ones() + (self.z & rhs.x).count_ones()) & 1 == 0
    }

    /// Dense matrix of this string. Basis index bit `w - q` holds qubit `q`.
    pub fn to_dense(&self, cap: usize) -> Result<crate::dense::DenseOperator, PauliError> {
        if self.width > cap {
            return Err(PauliError::WidthOverCap { width: self.width, cap });
        }
        let mut m = crate::dense::DenseOperator::zeros(self.width);
        let coef = self.phase.to_complex();
        let (xi, zi) = (mask_to_index(self.x, self.width), mask_to_index(self.z, self.width));
        for c in 0..m.dim() {
            let sign = if (zi & c).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            m.set(c ^ xi, c, coef * sign);
        }
        Ok(m)
    }
}

/// Reorders a qubit mask (bit `q - 1`) into a basis-index mask (bit `w - q`).
pub(crate) fn mask_to_index(mask: u64, width: usize) -> usize {
    (mask.reverse_bits() >> (64 - width)) as usize
}

/// Free-function form of [`PauliString::try_mul`].
pub fn pauli_multiply(a: &PauliString, b: &PauliString) -> Result<PauliString, PauliError> {
    a.try_mul(b)
}

impl fmt::Display for PauliString {
    /// Written in `IXYZ` letters, qubit 1 first, with the phase adjusted for `Y = iXZ`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // X Z = -i Y on each Y-qubit
        let shown = self.phase * Phase::from_exponent(3 * self.y_count());
        write!(f, "{shown}")?;
        for q in 0..self.width {
            let letter = match ((self.x >> q) & 1, (self.z >> q) & 1) {
                (0, 0) => 'I',
                (1, 0) => 'X',
                (0, _) => 'Z',
                _ => 'Y',
            };
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = PauliError;

    /// Accepts an optional phase (`+`, `-`, `i`, `+i`, `-i`) followed by `I/X/Y/Z` letters.
    fn from_str(s: &str) -> Result<PauliString, PauliError> {
        let err = || PauliError::Parse(s.to_string());
        let t = s.trim();
        let (mut phase, letters) = if let Some(r) = t.strip_prefix("-i") {
            (Phase::MINUS_I, r)
        } else if let Some(r) = t.strip_prefix("+i") {
            (Phase::I, r)
        } else if let Some(r) = t.strip_prefix('i') {
            (Phase::I, r)
        } else if let Some(r) = t.strip_prefix('-') {
            (Phase::MINUS_ONE, r)
        } else if let Some(r) = t.strip_prefix('+') {
            (Phase::ONE, r)
        } else {
            (Phase::ONE, t)
        };
        let width = letters.chars().count();
        check_width(width).map_err(|_| err())?;
        let (mut x, mut z) = (0u64, 0u64);
        for (q, ch) in letters.chars().enumerate() {
            let b = 1u64 << q;
            match ch.to_ascii_uppercase() {
                'I' => {}
                'X' => x |= b,
                'Z' => z |= b,
                'Y' => {
                    x |= b;
                    z |= b;
                    // Y = i X Z
                    phase = phase * Phase::I;
                }
                _ => return Err(err()),
            }
        }
        PauliString::new(width, phase, x, z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn single_qubit_relations() {
        let x = PauliString::x(1, 1).unwrap();
        let z = PauliString::z(1, 1).unwrap();
        let y = PauliString::y(1, 1).unwrap();
        // X·Z = -i·Y
        let xz = x.try_mul(&z).unwrap();
        assert_eq!(xz, y.with_phase(y.phase() * Phase::MINUS_I));
        assert_eq!(xz.phase(), Phase::ONE);
        assert_eq!(z.try_mul(&z).unwrap(), PauliString::identity(1).unwrap());
        assert_eq!(y.try_mul(&y).unwrap(), PauliString::identity(1).unwrap());
        assert_eq!(z.try_mul(&x).unwrap().phase(), Phase::MINUS_ONE);
    }

    #[test]
    fn disjoint_qubits_commute() {
        let x1 = PauliString::x(2, 1).unwrap();
        let z2 = PauliString::z(2, 2).unwrap();
        let prod = x1.try_mul(&z2).unwrap();
        assert_eq!(prod, z2.try_mul(&x1).unwrap());
        assert_eq!(prod, p("XZ"));
    }

    #[test]
    fn width_mismatch_is_an_error() {
        let a = PauliString::x(1, 1).unwrap();
        let b = PauliString::x(2, 1).unwrap();
        assert_eq!(a.try_mul(&b), Err(PauliError::WidthMismatch(1, 2)));
    }

    #[test]
    fn adjoint_examples() {
        let ix = PauliString::x(1, 1).unwrap().with_phase(Phase::I);
        assert_eq!(ix.adjoint().phase(), Phase::MINUS_I);
        // (XZ)† = ZX = -XZ
        let xz = p("X").try_mul(&p("Z")).unwrap();
        assert_eq!(xz.adjoint(), xz.with_phase(Phase::MINUS_ONE));
        assert_eq!(p("Y").adjoint(), p("Y"));
    }

    #[test]
    fn display_and_parse_agree() {
        for s in ["+XYZ", "-iIIY", "+iZ", "-XX"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert!("XQ".parse::<PauliString>().is_err());
        assert!("".parse::<PauliString>().is_err());
    }

    #[test]
    fn dense_of_y_is_standard() {
        let y = p("Y").to_dense(4).unwrap();
        assert_eq!(y.get(0, 1), Complex64::new(0.0, -1.0));
        assert_eq!(y.get(1, 0), Complex64::new(0.0, 1.0));
        let zi = p("ZI").to_dense(4).unwrap();
        // qubit 1 is the most significant index bit
        assert_eq!(zi.get(2, 2), Complex64::new(-1.0, 0.0));
        assert_eq!(zi.get(1, 1), Complex64::new(1.0, 0.0));
    }

    fn arb_pauli(width: usize) -> impl Strategy<Value = PauliString> {
        let m = width_mask(width);
        (0u32..4, any::<u64>(), any::<u64>())
            .prop_map(move |(k, x, z)| PauliString::new(width, Phase::from_exponent(k), x & m, z & m).unwrap())
    }

    proptest! {
        #[test]
        fn multiplication_is_associative(a in arb_pauli(5), b in arb_pauli(5), c in arb_pauli(5)) {
            let left = a.try_mul(&b).unwrap().try_mul(&c).unwrap();
            let right = a.try_mul(&b.try_mul(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn square_is_plus_or_minus_identity(a in arb_pauli(6)) {
            let sq = a.try_mul(&a).unwrap();
            prop_assert!(sq.is_identity_up_to_phase());
            prop_assert!(sq.phase() == Phase::ONE || sq.phase() == Phase::MINUS_ONE);
        }

        #[test]
        fn adjoint_reverses_products(a in arb_pauli(4), b in arb_pauli(4)) {
            let lhs = a.try_mul(&b).unwrap().adjoint();
            let rhs = b.adjoint().try_mul(&a.adjoint()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn product_matches_dense(a in arb_pauli(3), b in arb_pauli(3)) {
            let prod = a.try_mul(&b).unwrap().to_dense(3).unwrap();
            let dense = a.to_dense(3).unwrap().matmul(&b.to_dense(3).unwrap());
            prop_assert!(prod.approx_eq(&dense, 1e-12));
        }

        #[test]
        fn traces_are_orthogonal(a in arb_pauli(4), b in arb_pauli(4)) {
            let tr = a.try_mul(&b).unwrap().to_dense(4).unwrap().trace();
            if a.x_mask() == b.x_mask() && a.z_mask() == b.z_mask() {
                prop_assert!((tr.norm() - 16.0).abs() < 1e-12);
            } else {
                prop_assert!(tr.norm() < 1e-12);
            }
        }
    }
}
