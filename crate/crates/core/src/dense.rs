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

//! Dense `2^w × 2^w` complex matrices and in-place gate application.
//!
//! Basis index bit `w - q` holds qubit `q`, so qubit 1 is the most significant bit.

use num_complex::Complex64;
use thiserror::Error;

use crate::circuit::{CircuitError, Gate};

/// Default maximum width for dense simulation.
pub const DEFAULT_DENSE_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DenseError {
    #[error("width {width} exceeds the dense cap of {cap} qubits")]
    WidthOverCap { width: usize, cap: usize },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    width: usize,
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseOperator {
    pub fn zeros(width: usize) -> DenseOperator {
        let dim = 1usize << width;
        DenseOperator { width, dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(width: usize) -> DenseOperator {
        let mut m = DenseOperator::zeros(width);
        for k in 0..m.dim {
            m.data[k * m.dim + k] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn diagonal(width: usize, f: impl Fn(usize) -> Complex64) -> DenseOperator {
        let mut m = DenseOperator::zeros(width);
        for k in 0..m.dim {
            m.data[k * m.dim + k] = f(k);
        }
        m
    }

    /// Wraps row-major data. Panics if the length is not `4^width`.
    pub fn from_vec(width: usize, data: Vec<Complex64>) -> DenseOperator {
        let dim = 1usize << width;
        assert_eq!(data.len(), dim * dim, "matrix data has wrong length");
        DenseOperator { width, dim, data }
    }

    /// Unitary of a gate list in temporal order (`Gt · ... · G1`).
    pub fn unitary(width: usize, gates: &[Gate]) -> Result<DenseOperator, CircuitError> {
        let mut u = DenseOperator::identity(width);
        for g in gates {
            u.apply_left(g)?;
        }
        Ok(u)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.dim + c] = v;
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|k| self.data[k * self.dim + k]).sum()
    }

    pub fn adjoint(&self) -> DenseOperator {
        let mut out = DenseOperator::zeros(self.width);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.data[c * self.dim + r] = self.data[r * self.dim + c].conj();
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &DenseOperator) -> DenseOperator {
        assert_eq!(self.width, rhs.width, "matmul width mismatch");
        let n = self.dim;
        let mut out = DenseOperator::zeros(self.width);
        for r in 0..n {
            let row = &self.data[r * n..(r + 1) * n];
            let out_row = &mut out.data[r * n..(r + 1) * n];
            for (k, &a) in row.iter().enumerate() {
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let rhs_row = &rhs.data[k * n..(k + 1) * n];
                for (o, &b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn scale(&mut self, s: Complex64) {
        self.data.iter_mut().for_each(|v| *v *= s);
    }

    pub fn add_assign(&mut self, rhs: &DenseOperator) {
        assert_eq!(self.width, rhs.width, "add width mismatch");
        self.data.iter_mut().zip(&rhs.data).for_each(|(a, b)| *a += b);
    }

    pub fn sub(&self, rhs: &DenseOperator) -> DenseOperator {
        assert_eq!(self.width, rhs.width, "sub width mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        DenseOperator { width: self.width, dim: self.dim, data }
    }

    /// Entry-wise maximum absolute difference.
    pub fn max_abs_diff(&self, rhs: &DenseOperator) -> f64 {
        assert_eq!(self.width, rhs.width, "comparison width mismatch");
        self.data.iter().zip(&rhs.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, rhs: &DenseOperator, tol: f64) -> bool {
        self.width == rhs.width && self.max_abs_diff(rhs) <= tol
    }

    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for r in 0..n {
            for c in r..n {
                worst = worst.max((self.data[r * n + c] - self.data[c * n + r].conj()).norm());
            }
        }
        worst
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        let n = self.dim;
        let m = nalgebra::DMatrix::from_fn(n, n, |r, c| {
            let a = self.data[r * n + c];
            let b = self.data[c * n + r].conj();
            nalgebra::Complex::new((a.re + b.re) / 2.0, (a.im + b.im) / 2.0)
        });
        m.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
    }

    fn check_gate(&self, g: &Gate) -> Result<(), CircuitError> {
        g.check_shape()?;
        if let Some(&q) = g.qubits.iter().find(|&&q| q > self.width) {
            return Err(CircuitError::QubitOutOfRange { qubit: q, width: self.width });
        }
        Ok(())
    }

    /// `self ← G · self`.
    pub fn apply_left(&mut self, g: &Gate) -> Result<(), CircuitError> {
        self.check_gate(g)?;
        let local = LocalGate::new(g, self.width, false);
        let n = self.dim;
        let mut rows: Vec<Vec<Complex64>> = vec![Vec::new(); local.size];
        for base in 0..n {
            if base & local.mask != 0 {
                continue;
            }
            for (l, row) in rows.iter_mut().enumerate() {
                let r = base | local.offsets[l];
                row.clear();
                row.extend_from_slice(&self.data[r * n..(r + 1) * n]);
            }
            for l in 0..local.size {
                let r = base | local.offsets[l];
                let out = &mut self.data[r * n..(r + 1) * n];
                let entries = &local.rows[l];
                if let [(m, v)] = entries.as_slice() {
                    for (o, &src) in out.iter_mut().zip(&rows[*m]) {
                        *o = v * src;
                    }
                } else {
                    for (c, o) in out.iter_mut().enumerate() {
                        *o = entries.iter().map(|&(m, v)| v * rows[m][c]).sum();
                    }
                }
            }
        }
        Ok(())
    }

    /// `self ← self · G†`.
    pub fn apply_right_adjoint(&mut self, g: &Gate) -> Result<(), CircuitError> {
        self.check_gate(g)?;
        let local = LocalGate::new(g, self.width, true);
        let n = self.dim;
        let mut buf = vec![Complex64::new(0.0, 0.0); local.size];
        for r in 0..n {
            let row = &mut self.data[r * n..(r + 1) * n];
            for base in 0..n {
                if base & local.mask != 0 {
                    continue;
                }
                for (l, b) in buf.iter_mut().enumerate() {
                    *b = row[base | local.offsets[l]];
                }
                for l in 0..local.size {
                    row[base | local.offsets[l]] = local.rows[l].iter().map(|&(m, v)| v * buf[m]).sum();
                }
            }
        }
        Ok(())
    }

    /// `self ← G · self · G†`.
    pub fn conjugate_by(&mut self, g: &Gate) -> Result<(), CircuitError> {
        self.apply_left(g)?;
        self.apply_right_adjoint(g)
    }
}

/// Sparse rows of a local gate matrix plus the global index offsets of its basis states.
struct LocalGate {
    size: usize,
    mask: usize,
    offsets: Vec<usize>,
    rows: Vec<Vec<(usize, Complex64)>>,
}

impl LocalGate {
    /// With `conj` set, the rows hold `conj(G)` so that `row · G†` is a local matrix-vector product.
    fn new(g: &Gate, width: usize, conj: bool) -> LocalGate {
        let k = g.qubits.len();
        let size = 1usize << k;
        let bits: Vec<usize> = g.qubits.iter().map(|&q| 1usize << (width - q)).collect();
        let mask = bits.iter().fold(0, |a, b| a | b);
        let offsets =
            (0..size).map(|l| (0..k).filter(|p| (l >> (k - 1 - p)) & 1 == 1).fold(0, |a, p| a | bits[p])).collect();
        let m = g.kind.matrix();
        let rows = (0..size)
            .map(|r| {
                (0..size)
                    .filter_map(|c| {
                        let v = m[r * size + c];
                        (v.norm() > 0.0).then(|| (c, if conj { v.conj() } else { v }))
                    })
                    .collect()
            })
            .collect();
        LocalGate { size, mask, offsets, rows }
    }
}

/// Index bit of qubit `q` in a width-`w` basis index.
pub fn qubit_bit(width: usize, q: usize) -> usize {
    1usize << (width - q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::GateKind;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Reference: full Kronecker-expanded gate matrix, built independently of `LocalGate`.
    fn embed(g: &Gate, width: usize) -> DenseOperator {
        let k = g.qubits.len();
        let m = g.kind.matrix();
        let dim = 1 << width;
        let mut out = DenseOperator::zeros(width);
        for r in 0..dim {
            for col in 0..dim {
                let mut same = true;
                let (mut lr, mut lc) = (0, 0);
                for q in 1..=width {
                    let rb = (r >> (width - q)) & 1;
                    let cb = (col >> (width - q)) & 1;
                    if let Some(p) = g.qubits.iter().position(|&x| x == q) {
                        lr |= rb << (k - 1 - p);
                        lc |= cb << (k - 1 - p);
                    } else if rb != cb {
                        same = false;
                    }
                }
                if same {
                    out.set(r, col, m[lr * (1 << k) + lc]);
                }
            }
        }
        out
    }

    #[test]
    fn gate_application_matches_kronecker_embedding() {
        let gates = [
            Gate::h(2),
            Gate::cx(3, 1),
            Gate::ccx(2, 3, 1),
            Gate::t(1),
            Gate::swap(1, 3),
            Gate::new(GateKind::Ctrl(Box::new(GateKind::H)), vec![3, 2]).unwrap(),
        ];
        let mut seed = DenseOperator::zeros(3);
        for r in 0..8 {
            for col in 0..8 {
                seed.set(r, col, c((r * 8 + col) as f64 * 0.1, (r as f64 - col as f64) * 0.3));
            }
        }
        for g in &gates {
            let e = embed(g, 3);
            let mut left = seed.clone();
            left.apply_left(g).unwrap();
            assert!(left.approx_eq(&e.matmul(&seed), 1e-12), "left {g}");
            let mut right = seed.clone();
            right.apply_right_adjoint(g).unwrap();
            assert!(right.approx_eq(&seed.matmul(&e.adjoint()), 1e-12), "right {g}");
        }
    }

    #[test]
    fn unitary_uses_temporal_order() {
        // H then S: S·H
        let u = DenseOperator::unitary(1, &[Gate::h(1), Gate::s(1)]).unwrap();
        let s = embed(&Gate::s(1), 1);
        let h = embed(&Gate::h(1), 1);
        assert!(u.approx_eq(&s.matmul(&h), 1e-15));
    }

    #[test]
    fn rejects_out_of_range_gate() {
        let mut m = DenseOperator::identity(2);
        assert!(m.apply_left(&Gate::h(3)).is_err());
    }

    #[test]
    fn min_eigenvalue_of_projector() {
        let p = DenseOperator::diagonal(2, |k| c(if k == 0 { 1.0 } else { 0.0 }, 0.0));
        assert!(p.min_eigenvalue().abs() < 1e-12);
        let m = DenseOperator::diagonal(1, |k| c(if k == 0 { 1.0 } else { -0.5 }, 0.0));
        assert!((m.min_eigenvalue() + 0.5).abs() < 1e-12);
    }
}
