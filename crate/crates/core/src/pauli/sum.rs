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

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use super::{check_width, mask_to_index, PauliError, PauliString, Phase};
use crate::dense::DenseOperator;

/// Coefficients below this magnitude are dropped after arithmetic.
const PRUNE: f64 = 1e-15;

/// Complex linear combination of phaseless strings `X^x Z^z`, keyed by `(x_mask, z_mask)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum {
    width: usize,
    terms: BTreeMap<(u64, u64), Complex64>,
}

impl PauliSum {
    pub fn zero(width: usize) -> Result<PauliSum, PauliError> {
        check_width(width)?;
        Ok(PauliSum { width, terms: BTreeMap::new() })
    }

    pub fn identity(width: usize) -> Result<PauliSum, PauliError> {
        let mut s = PauliSum::zero(width)?;
        s.add_term(0, 0, Complex64::new(1.0, 0.0));
        Ok(s)
    }

    pub fn from_string(p: &PauliString) -> PauliSum {
        let mut s = PauliSum { width: p.width, terms: BTreeMap::new() };
        s.add_term(p.x, p.z, p.phase.to_complex());
        s
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u64, u64), Complex64)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn coefficient(&self, x_mask: u64, z_mask: u64) -> Complex64 {
        self.terms.get(&(x_mask, z_mask)).copied().unwrap_or_default()
    }

    /// Coefficient of the string `p`, accounting for its phase.
    pub fn coefficient_of(&self, p: &PauliString) -> Complex64 {
        self.coefficient(p.x, p.z) / p.phase.to_complex()
    }

    /// The single term as a signed string, if the sum is `±1` or `±i` times one string.
    pub fn as_single_string(&self) -> Option<PauliString> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&(x, z), &c) = self.terms.iter().next()?;
        let phase = [Phase::ONE, Phase::I, Phase::MINUS_ONE, Phase::MINUS_I]
            .into_iter()
            .find(|ph| (ph.to_complex() - c).norm() < 1e-12)?;
        Some(PauliString { width: self.width, phase, x, z })
    }

    pub fn add_term(&mut self, x_mask: u64, z_mask: u64, coef: Complex64) {
        let entry = self.terms.entry((x_mask, z_mask)).or_default();
        *entry += coef;
        if entry.norm() < PRUNE {
            self.terms.remove(&(x_mask, z_mask));
        }
    }

    pub fn add_string(&mut self, p: &PauliString, coef: Complex64) {
        self.add_term(p.x, p.z, coef * p.phase.to_complex());
    }

    pub fn add(&self, rhs: &PauliSum) -> Result<PauliSum, PauliError> {
        if self.width != rhs.width {
            return Err(PauliError::WidthMismatch(self.width, rhs.width));
        }
        let mut out = self.clone();
        for ((x, z), c) in rhs.terms() {
            out.add_term(x, z, c);
        }
        Ok(out)
    }

    pub fn scale(&self, s: Complex64) -> PauliSum {
        let mut out = PauliSum { width: self.width, terms: BTreeMap::new() };
        for ((x, z), c) in self.terms() {
            out.add_term(x, z, c * s);
        }
        out
    }

    pub fn mul(&self, rhs: &PauliSum) -> Result<PauliSum, PauliError> {
        if self.width != rhs.width {
            return Err(PauliError::WidthMismatch(self.width, rhs.width));
        }
        let mut out = PauliSum { width: self.width, terms: BTreeMap::new() };
        for ((ax, az), ac) in self.terms() {
            for ((bx, bz), bc) in rhs.terms() {
                let sign = if (az & bx).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
                out.add_term(ax ^ bx, az ^ bz, ac * bc * sign);
            }
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> PauliSum {
        let mut out = PauliSum { width: self.width, terms: BTreeMap::new() };
        for ((x, z), c) in self.terms() {
            let sign = if (x & z).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            out.add_term(x, z, c.conj() * sign);
        }
        out
    }

    /// `2^w` times the identity coefficient. Only feasible to evaluate exactly for `w < 1024`.
    pub fn trace(&self) -> Complex64 {
        self.coefficient(0, 0) * 2f64.powi(self.width as i32)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let adj = self.adjoint();
        let keys = self.terms.keys().chain(adj.terms.keys());
        keys.into_iter().all(|&(x, z)| (self.coefficient(x, z) - adj.coefficient(x, z)).norm() <= tol)
    }

    pub fn max_abs_diff(&self, rhs: &PauliSum) -> f64 {
        self.terms
            .keys()
            .chain(rhs.terms.keys())
            .map(|&(x, z)| (self.coefficient(x, z) - rhs.coefficient(x, z)).norm())
            .fold(0.0, f64::max)
    }

    pub fn to_dense(&self, cap: usize) -> Result<DenseOperator, PauliError> {
        if self.width > cap {
            return Err(PauliError::WidthOverCap { width: self.width, cap });
        }
        let mut m = DenseOperator::zeros(self.width);
        for ((x, z), coef) in self.terms() {
            let (xi, zi) = (mask_to_index(x, self.width), mask_to_index(z, self.width));
            for c in 0..m.dim() {
                let v = if (zi & c).count_ones() % 2 == 1 { -coef } else { coef };
                let r = c ^ xi;
                m.set(r, c, m.get(r, c) + v);
            }
        }
        Ok(m)
    }

    /// Pauli decomposition `c(x,z) = Tr[(X^x Z^z)† M] / 2^w`. Costs `8^w`.
    pub fn from_dense(m: &DenseOperator) -> Result<PauliSum, PauliError> {
        let w = m.width();
        let mut out = PauliSum::zero(w)?;
        let dim = m.dim();
        let scale = 1.0 / dim as f64;
        for x in 0..dim as u64 {
            for z in 0..dim as u64 {
                let (xi, zi) = (mask_to_index(x, w), mask_to_index(z, w));
                // Tr[Z^z X^x M] = Σ_c (-1)^{z·c} M[c ^ x][c]
                let mut acc = Complex64::new(0.0, 0.0);
                for c in 0..dim {
                    let v = m.get(c ^ xi, c);
                    if (zi & c).count_ones() % 2 == 1 {
                        acc -= v;
                    } else {
                        acc += v;
                    }
                }
                out.add_term(x, z, acc * scale);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, ((x, z), c)) in self.terms().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let p = PauliString { width: self.width, phase: Phase::ONE, x, z };
            write!(f, "({:.6}{:+.6}i)*{}", c.re, c.im, p)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn single(s: &str) -> PauliSum {
        PauliSum::from_string(&s.parse().unwrap())
    }

    #[test]
    fn trace_examples() {
        assert_eq!(PauliSum::identity(3).unwrap().trace(), c(8.0, 0.0));
        let z1 = PauliSum::from_string(&PauliString::z(2, 1).unwrap());
        assert_eq!(z1.trace(), c(0.0, 0.0));
        for w in 1..6 {
            let start = PauliSum::identity(w)
                .unwrap()
                .add(&PauliSum::from_string(&PauliString::z(w, 1).unwrap()))
                .unwrap()
                .scale(c(1.0 / f64::from(1u32 << w), 0.0));
            assert!((start.trace() - 1.0).norm() < 1e-15);
        }
    }

    #[test]
    fn adjoint_examples() {
        let ix = single("iX");
        assert_eq!(ix.adjoint(), single("-iX"));
        let h = PauliSum::identity(1).unwrap().add(&single("Z")).unwrap();
        assert_eq!(h.adjoint(), h);
        assert!(h.is_hermitian(0.0));
        let xz = single("X").mul(&single("Z")).unwrap();
        assert_eq!(xz.adjoint(), xz.scale(c(-1.0, 0.0)));
        assert!(single("Y").is_hermitian(0.0));
        assert!(!xz.is_hermitian(1e-12));
    }

    #[test]
    fn zero_coefficients_are_not_stored() {
        let mut s = single("X");
        s.add_string(&"X".parse().unwrap(), c(-1.0, 0.0));
        assert!(s.is_empty());
        assert_eq!(s.to_string(), "0");
    }

    #[test]
    fn to_dense_examples() {
        let z = single("Z").to_dense(4).unwrap();
        assert_eq!(z.get(0, 0), c(1.0, 0.0));
        assert_eq!(z.get(1, 1), c(-1.0, 0.0));
        let proj = PauliSum::identity(1).unwrap().add(&single("Z")).unwrap().scale(c(0.5, 0.0));
        let m = proj.to_dense(4).unwrap();
        assert_eq!(m.get(0, 0), c(1.0, 0.0));
        assert_eq!(m.get(1, 1), c(0.0, 0.0));
        assert!(single("XYZ").to_dense(2).is_err());
    }

    #[test]
    fn dense_round_trip_recovers_coefficients() {
        let mut s = PauliSum::zero(3).unwrap();
        s.add_string(&"XYZ".parse().unwrap(), c(0.3, -0.2));
        s.add_string(&"IIZ".parse().unwrap(), c(-1.25, 0.0));
        s.add_string(&"YXI".parse().unwrap(), c(0.0, 0.7));
        let m = s.to_dense(3).unwrap();
        assert!((m.trace() - s.trace()).norm() < 1e-12);
        let back = PauliSum::from_dense(&m).unwrap();
        assert!(back.max_abs_diff(&s) < 1e-12);
    }

    #[test]
    fn product_of_sums_matches_dense() {
        let a = single("XI").add(&single("iZY")).unwrap();
        let b = single("YY").add(&single("-ZX")).unwrap().scale(c(0.5, 0.25));
        let prod = a.mul(&b).unwrap().to_dense(2).unwrap();
        let dense = a.to_dense(2).unwrap().matmul(&b.to_dense(2).unwrap());
        assert!(prod.approx_eq(&dense, 1e-12));
    }

    #[test]
    fn single_string_detection() {
        assert_eq!(single("-iXZ").as_single_string(), Some("-iXZ".parse().unwrap()));
        assert_eq!(single("X").scale(c(0.5, 0.0)).as_single_string(), None);
    }
}
