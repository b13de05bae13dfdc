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

//! Oracle experiments: the corner-pair trace gap and the Fourier-permutation sum.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::GadgetError;
use crate::circuit::{Circuit, Gate};
use crate::dense::DenseOperator;

/// Largest width accepted by [`fourier_permutation_experiment`]; the brute sum has `2^{3w}` terms.
pub const MAX_FOURIER_WIDTH: usize = 5;

const CORNER_TOL: f64 = 1e-10;

/// Largest entry of `U e_k - e_k` over `k ∈ {0, 1}`.
pub fn corner_defect(u: &DenseOperator) -> f64 {
    let mut worst: f64 = 0.0;
    for k in 0..2.min(u.dim()) {
        for r in 0..u.dim() {
            let want = if r == k { 1.0 } else { 0.0 };
            worst = worst.max((u.get(r, k) - want).norm());
        }
    }
    worst
}

/// `1 ⊕ Q` with `Q` a Haar-like random unitary on the complement of `|0…00⟩, |0…01⟩`.
pub fn random_corner_unitary(width: usize, seed: u64) -> Result<DenseOperator, GadgetError> {
    if width == 0 || width > MAX_FOURIER_WIDTH + 3 {
        return Err(GadgetError::InvalidParameter(format!("corner unitary width {width} out of range")));
    }
    let dim = 1usize << width;
    let mut out = DenseOperator::identity(width);
    let n = dim - 2;
    if n == 0 {
        return Ok(out);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = DMatrix::<Complex64>::from_fn(n, n, |_, _| {
        Complex64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng))
    });
    let q = g.qr().q();
    for r in 0..n {
        for c in 0..n {
            out.set(r + 2, c + 2, q[(r, c)]);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CornerReport {
    pub t: usize,
    pub trace_u: Complex64,
    pub trace_uprime: Complex64,
    pub diff: f64,
    pub bound: f64,
}

impl CornerReport {
    pub fn holds(&self) -> bool {
        self.diff <= self.bound + 1e-9
    }
}

/// Traces of `A_t U ⋯ A_1 U` and of the same word with `U' = U - 2|−⟩⟨−|`,
/// where `|−⟩ = (|0…00⟩ - |0…01⟩)/√2`.
pub fn corner_pair_experiment(word: &[Circuit], u: &DenseOperator) -> Result<CornerReport, GadgetError> {
    let w = u.width();
    if let Some(a) = word.iter().find(|a| a.width() != w) {
        return Err(GadgetError::InvalidParameter(format!(
            "word circuit has width {}, unitary has width {w}",
            a.width()
        )));
    }
    let defect = corner_defect(u);
    if defect > CORNER_TOL {
        return Err(GadgetError::CornerViolated(defect));
    }
    let mut u_prime = u.clone();
    for (r, c, d) in [(0, 0, -1.0), (0, 1, 1.0), (1, 0, 1.0), (1, 1, -1.0)] {
        u_prime.set(r, c, u_prime.get(r, c) + d);
    }
    let mut v = DenseOperator::identity(w);
    let mut v_prime = DenseOperator::identity(w);
    for a in word {
        let gates = a.resolve(&[])?;
        let step = |m: DenseOperator, oracle: &DenseOperator| -> Result<DenseOperator, GadgetError> {
            let mut m = oracle.matmul(&m);
            gates.iter().try_for_each(|g| m.apply_left(g))?;
            Ok(m)
        };
        v = step(v, u)?;
        v_prime = step(v_prime, &u_prime)?;
    }
    let (trace_u, trace_uprime) = (v.trace(), v_prime.trace());
    Ok(CornerReport {
        t: word.len(),
        trace_u,
        trace_uprime,
        diff: (trace_u - trace_uprime).norm(),
        bound: 2.0 * word.len() as f64,
    })
}

pub fn random_permutation(width: usize, seed: u64) -> Vec<usize> {
    let mut pi: Vec<usize> = (0..1usize << width).collect();
    pi.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    pi
}

fn check_permutation(pi: &[usize], width: usize) -> Result<(), GadgetError> {
    let dim = 1usize << width;
    let mut seen = vec![false; dim];
    if pi.len() != dim {
        return Err(GadgetError::InvalidParameter(format!("permutation has {} entries, need {dim}", pi.len())));
    }
    for &p in pi {
        if p >= dim || std::mem::replace(&mut seen[p], true) {
            return Err(GadgetError::InvalidParameter(format!("not a permutation of 0..{dim}")));
        }
    }
    Ok(())
}

/// `U |k⟩ = |π(k)⟩`.
pub fn permutation_unitary(pi: &[usize], width: usize) -> Result<DenseOperator, GadgetError> {
    check_permutation(pi, width)?;
    let mut u = DenseOperator::zeros(width);
    for (k, &p) in pi.iter().enumerate() {
        u.set(p, k, Complex64::new(1.0, 0.0));
    }
    Ok(u)
}

fn dot(a: usize, b: usize) -> u32 {
    (a & b).count_ones()
}

/// `2^{-5w/2} Σ_{i,k,m} (-1)^{i·π(k) + k·π(m) + m·π(i)}`.
pub fn fourier_lhs(pi: &[usize], width: usize) -> Result<f64, GadgetError> {
    if width > MAX_FOURIER_WIDTH {
        return Err(GadgetError::WidthOverCap { width, cap: MAX_FOURIER_WIDTH });
    }
    check_permutation(pi, width)?;
    let dim = pi.len();
    let mut total: i64 = 0;
    for i in 0..dim {
        for k in 0..dim {
            let ik = dot(i, pi[k]);
            for m in 0..dim {
                if (ik + dot(k, pi[m]) + dot(m, pi[i])) & 1 == 0 {
                    total += 1;
                } else {
                    total -= 1;
                }
            }
        }
    }
    Ok(total as f64 * 2f64.powf(-2.5 * width as f64))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FourierReport {
    pub width: usize,
    pub lhs: f64,
    pub rhs: f64,
}

impl FourierReport {
    pub fn deviation(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }
}

/// Brute sign sum against `Tr[H U H U H U] / 2^w` with `H = H^{⊗w}`.
pub fn fourier_permutation_experiment(pi: &[usize], width: usize) -> Result<FourierReport, GadgetError> {
    let lhs = fourier_lhs(pi, width)?;
    let u = permutation_unitary(pi, width)?;
    let hadamards: Vec<Gate> = (1..=width).map(Gate::h).collect();
    let mut v = u.clone();
    for step in 0..3 {
        if step > 0 {
            v = u.matmul(&v);
        }
        hadamards.iter().try_for_each(|g| v.apply_left(g))?;
    }
    let rhs = v.trace().re / (1usize << width) as f64;
    Ok(FourierReport { width, lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{random_circuit, Alphabet};

    #[test]
    fn identity_word_gives_gap_two() {
        let u = DenseOperator::identity(3);
        let id = Circuit::new(3, 0).unwrap();
        let rep = corner_pair_experiment(std::slice::from_ref(&id), &u).unwrap();
        assert!((rep.trace_u - 8.0).norm() < 1e-12);
        assert!((rep.trace_uprime - 6.0).norm() < 1e-12);
        assert!((rep.diff - 2.0).abs() < 1e-12);
        let r = random_corner_unitary(3, 4).unwrap();
        let rep = corner_pair_experiment(&[id], &r).unwrap();
        assert!((rep.diff - 2.0).abs() < 1e-10);
    }

    #[test]
    fn empty_word_is_vacuous() {
        let rep = corner_pair_experiment(&[], &random_corner_unitary(2, 1).unwrap()).unwrap();
        assert_eq!(rep.diff, 0.0);
        assert_eq!(rep.bound, 0.0);
    }

    #[test]
    fn random_corner_unitary_is_unitary_and_fixes_corner() {
        for w in 1..=4 {
            let u = random_corner_unitary(w, 7).unwrap();
            assert!(corner_defect(&u) < 1e-12);
            assert!(u.adjoint().matmul(&u).approx_eq(&DenseOperator::identity(w), 1e-10));
        }
    }

    #[test]
    fn random_words_respect_bound() {
        for seed in 0..10u64 {
            let w = 2 + seed as usize % 3;
            let t = 1 + seed as usize % 6;
            let word: Vec<Circuit> =
                (0..t).map(|k| random_circuit(w, 0, 12, Alphabet::CliffordT, seed * 31 + k as u64).unwrap()).collect();
            let rep = corner_pair_experiment(&word, &random_corner_unitary(w, seed).unwrap()).unwrap();
            assert!(rep.holds(), "seed {seed}: {} > {}", rep.diff, rep.bound);
        }
    }

    #[test]
    fn corner_violation_detected() {
        let mut u = DenseOperator::identity(2);
        u.apply_left(&Gate::x(2)).unwrap();
        assert!(matches!(corner_pair_experiment(&[], &u), Err(GadgetError::CornerViolated(_))));
    }

    #[test]
    fn fourier_identity_small() {
        for w in 1..=2 {
            let pi: Vec<usize> = (0..1 << w).collect();
            let rep = fourier_permutation_experiment(&pi, w).unwrap();
            assert!(rep.deviation() < 1e-12, "w={w}");
        }
        // w = 1, identity: the eight signs of (-1)^{ik + km + mi} cancel
        assert_eq!(fourier_lhs(&[0, 1], 1).unwrap(), 0.0);
        let swap = fourier_permutation_experiment(&[1, 0], 1).unwrap();
        assert!(swap.deviation() < 1e-12);
    }

    #[test]
    fn fourier_random_permutations() {
        for seed in 0..10 {
            let pi = random_permutation(3, seed);
            assert!(fourier_permutation_experiment(&pi, 3).unwrap().deviation() < 1e-9);
        }
        assert!(fourier_lhs(&[0, 0], 1).is_err());
        assert!(fourier_lhs(&(0..64).collect::<Vec<_>>(), 6).is_err());
    }
}
