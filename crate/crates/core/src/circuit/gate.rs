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

//! Gate alphabet and the exact local matrices of every gate.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;

use super::CircuitError;

/// Maximum nesting of controls on a single gate. `CCX` already sits at the cap.
pub const MAX_CTRL_DEPTH: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    I,
    H,
    X,
    Y,
    Z,
    S,
    Sdg,
    /// `diag(1, e^{-iπ/4})`, which equals `exp(iZπ/8)` up to a global phase.
    T,
    Tdg,
    CX,
    CZ,
    Swap,
    CCX,
    /// Adds one control qubit (listed first) in front of the inner gate's qubits.
    Ctrl(Box<GateKind>),
}

impl GateKind {
    pub fn arity(&self) -> usize {
        match self {
            GateKind::I
            | GateKind::H
            | GateKind::X
            | GateKind::Y
            | GateKind::Z
            | GateKind::S
            | GateKind::Sdg
            | GateKind::T
            | GateKind::Tdg => 1,
            GateKind::CX | GateKind::CZ | GateKind::Swap => 2,
            GateKind::CCX => 3,
            GateKind::Ctrl(inner) => 1 + inner.arity(),
        }
    }

    /// Number of control qubits built into the gate.
    pub fn ctrl_depth(&self) -> usize {
        match self {
            GateKind::CX | GateKind::CZ => 1,
            GateKind::CCX => 2,
            GateKind::Ctrl(inner) => 1 + inner.ctrl_depth(),
            _ => 0,
        }
    }

    pub fn is_clifford(&self) -> bool {
        matches!(
            self,
            GateKind::I
                | GateKind::H
                | GateKind::X
                | GateKind::Y
                | GateKind::Z
                | GateKind::S
                | GateKind::Sdg
                | GateKind::CX
                | GateKind::CZ
                | GateKind::Swap
        )
    }

    pub fn inverse(&self) -> GateKind {
        match self {
            GateKind::S => GateKind::Sdg,
            GateKind::Sdg => GateKind::S,
            GateKind::T => GateKind::Tdg,
            GateKind::Tdg => GateKind::T,
            GateKind::Ctrl(inner) => GateKind::Ctrl(Box::new(inner.inverse())),
            other => other.clone(),
        }
    }

    /// Lower-case DSL name, e.g. `sdg` or `ctrl-h`.
    pub fn name(&self) -> String {
        match self {
            GateKind::Ctrl(inner) => format!("ctrl-{}", inner.name()),
            other => other.base_name().to_string(),
        }
    }

    fn base_name(&self) -> &'static str {
        match self {
            GateKind::I => "i",
            GateKind::H => "h",
            GateKind::X => "x",
            GateKind::Y => "y",
            GateKind::Z => "z",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::T => "t",
            GateKind::Tdg => "tdg",
            GateKind::CX => "cx",
            GateKind::CZ => "cz",
            GateKind::Swap => "swap",
            GateKind::CCX => "ccx",
            GateKind::Ctrl(_) => "ctrl",
        }
    }

    /// Parses a (case-insensitive) gate name. Returns `None` for unknown names.
    pub fn from_name(name: &str) -> Option<GateKind> {
        let lower = name.to_ascii_lowercase();
        let mut base = lower.as_str();
        let mut controls = 0;
        while let Some(rest) = base.strip_prefix("ctrl-") {
            base = rest;
            controls += 1;
        }
        let mut kind = GateKind::base_from_name(base)?;
        for _ in 0..controls {
            kind = GateKind::Ctrl(Box::new(kind));
        }
        Some(kind)
    }

    fn base_from_name(name: &str) -> Option<GateKind> {
        Some(match name {
            "i" => GateKind::I,
            "h" => GateKind::H,
            "x" => GateKind::X,
            "y" => GateKind::Y,
            "z" => GateKind::Z,
            "s" => GateKind::S,
            "sdg" => GateKind::Sdg,
            "t" => GateKind::T,
            "tdg" => GateKind::Tdg,
            "cx" => GateKind::CX,
            "cz" => GateKind::CZ,
            "swap" => GateKind::Swap,
            "ccx" => GateKind::CCX,
            _ => return None,
        })
    }

    /// The exact `2^k × 2^k` matrix, row-major, first listed qubit most significant.
    pub fn matrix(&self) -> Vec<Complex64> {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let t_phase = Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4);
        match self {
            GateKind::I => vec![one, zero, zero, one],
            GateKind::H => vec![h, h, h, -h],
            GateKind::X => vec![zero, one, one, zero],
            GateKind::Y => vec![zero, -i, i, zero],
            GateKind::Z => vec![one, zero, zero, -one],
            GateKind::S => vec![one, zero, zero, i],
            GateKind::Sdg => vec![one, zero, zero, -i],
            GateKind::T => vec![one, zero, zero, t_phase],
            GateKind::Tdg => vec![one, zero, zero, t_phase.conj()],
            GateKind::CX => GateKind::Ctrl(Box::new(GateKind::X)).matrix(),
            GateKind::CZ => GateKind::Ctrl(Box::new(GateKind::Z)).matrix(),
            GateKind::CCX => GateKind::Ctrl(Box::new(GateKind::CX)).matrix(),
            GateKind::Swap => {
                let mut m = vec![zero; 16];
                m[0] = one;
                m[4 + 2] = one;
                m[8 + 1] = one;
                m[15] = one;
                m
            }
            GateKind::Ctrl(inner) => {
                let inner_m = inner.matrix();
                let d = 1usize << inner.arity();
                let n = 2 * d;
                let mut m = vec![zero; n * n];
                for k in 0..d {
                    m[k * n + k] = one;
                }
                for r in 0..d {
                    for c in 0..d {
                        m[(d + r) * n + d + c] = inner_m[r * d + c];
                    }
                }
                m
            }
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A gate applied to 1-based qubit indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gate {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
}

impl Gate {
    /// Checked constructor: arity, distinctness, 1-based indices and control depth.
    pub fn new(kind: GateKind, qubits: Vec<usize>) -> Result<Gate, CircuitError> {
        let gate = Gate { kind, qubits };
        gate.check_shape()?;
        Ok(gate)
    }

    pub(crate) fn check_shape(&self) -> Result<(), CircuitError> {
        let expected = self.kind.arity();
        if self.qubits.len() != expected {
            return Err(CircuitError::ArityMismatch { gate: self.kind.name(), expected, found: self.qubits.len() });
        }
        if self.kind.ctrl_depth() > MAX_CTRL_DEPTH {
            return Err(CircuitError::CtrlDepth { gate: self.kind.name() });
        }
        for (k, &q) in self.qubits.iter().enumerate() {
            if q == 0 {
                return Err(CircuitError::QubitOutOfRange { qubit: 0, width: 0 });
            }
            if self.qubits[..k].contains(&q) {
                return Err(CircuitError::DuplicateQubit { gate: self.kind.name(), qubit: q });
            }
        }
        Ok(())
    }

    fn single(kind: GateKind, q: usize) -> Gate {
        Gate { kind, qubits: vec![q] }
    }

    pub fn i(q: usize) -> Gate {
        Gate::single(GateKind::I, q)
    }
    pub fn h(q: usize) -> Gate {
        Gate::single(GateKind::H, q)
    }
    pub fn x(q: usize) -> Gate {
        Gate::single(GateKind::X, q)
    }
    pub fn y(q: usize) -> Gate {
        Gate::single(GateKind::Y, q)
    }
    pub fn z(q: usize) -> Gate {
        Gate::single(GateKind::Z, q)
    }
    pub fn s(q: usize) -> Gate {
        Gate::single(GateKind::S, q)
    }
    pub fn sdg(q: usize) -> Gate {
        Gate::single(GateKind::Sdg, q)
    }
    pub fn t(q: usize) -> Gate {
        Gate::single(GateKind::T, q)
    }
    pub fn tdg(q: usize) -> Gate {
        Gate::single(GateKind::Tdg, q)
    }
    pub fn cx(control: usize, target: usize) -> Gate {
        Gate { kind: GateKind::CX, qubits: vec![control, target] }
    }
    pub fn cz(a: usize, b: usize) -> Gate {
        Gate { kind: GateKind::CZ, qubits: vec![a, b] }
    }
    pub fn swap(a: usize, b: usize) -> Gate {
        Gate { kind: GateKind::Swap, qubits: vec![a, b] }
    }
    pub fn ccx(c1: usize, c2: usize, target: usize) -> Gate {
        Gate { kind: GateKind::CCX, qubits: vec![c1, c2, target] }
    }

    pub fn arity(&self) -> usize {
        self.kind.arity()
    }

    pub fn inverse(&self) -> Gate {
        Gate { kind: self.kind.inverse(), qubits: self.qubits.clone() }
    }

    pub fn max_qubit(&self) -> usize {
        self.qubits.iter().copied().max().unwrap_or(0)
    }

    /// Same gate with every qubit index moved by `offset`.
    pub fn shifted(&self, offset: usize) -> Gate {
        Gate { kind: self.kind.clone(), qubits: self.qubits.iter().map(|q| q + offset).collect() }
    }

    /// Same gate with qubits renamed through `map` (1-based in, 1-based out).
    pub fn remapped(&self, map: impl Fn(usize) -> usize) -> Gate {
        Gate { kind: self.kind.clone(), qubits: self.qubits.iter().map(|&q| map(q)).collect() }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.kind.name())?;
        for q in &self.qubits {
            write!(f, " {q}")?;
        }
        Ok(())
    }
}
