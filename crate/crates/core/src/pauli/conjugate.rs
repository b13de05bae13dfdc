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

//! Heisenberg conjugation `P ↦ G · P · G†` of Pauli strings and sums.

use std::collections::HashMap;

use num_complex::Complex64;

use super::{PauliError, PauliString, PauliSum, Phase};
use crate::circuit::{Gate, GateKind};

/// Default term cap for non-Clifford expansion.
pub const DEFAULT_TERM_CAP: usize = 4096;

fn check_qubits(width: usize, g: &Gate) -> Result<(), PauliError> {
    match g.qubits.iter().find(|&&q| q == 0 || q > width) {
        Some(&qubit) => Err(PauliError::QubitOutOfRange { qubit, width }),
        None => Ok(()),
    }
}

fn string(width: usize, phase: Phase, xs: &[usize], zs: &[usize]) -> PauliString {
    let mask = |qs: &[usize]| qs.iter().fold(0u64, |m, q| m | 1u64 << (q - 1));
    PauliString { width, phase, x: mask(xs), z: mask(zs) }
}

/// Images `(G X_q G†, G Z_q G†)` for each qubit touched by a Clifford gate.
fn clifford_images(g: &Gate, width: usize) -> Result<Vec<(usize, PauliString, PauliString)>, PauliError> {
    use Phase as P;
    let s = |ph, xs: &[usize], zs: &[usize]| string(width, ph, xs, zs);
    let q = &g.qubits;
    Ok(match g.kind {
        GateKind::I => vec![(q[0], s(P::ONE, &[q[0]], &[]), s(P::ONE, &[], &[q[0]]))],
        GateKind::H => vec![(q[0], s(P::ONE, &[], &[q[0]]), s(P::ONE, &[q[0]], &[]))],
        GateKind::X => vec![(q[0], s(P::ONE, &[q[0]], &[]), s(P::MINUS_ONE, &[], &[q[0]]))],
        GateKind::Y => vec![(q[0], s(P::MINUS_ONE, &[q[0]], &[]), s(P::MINUS_ONE, &[], &[q[0]]))],
        GateKind::Z => vec![(q[0], s(P::MINUS_ONE, &[q[0]], &[]), s(P::ONE, &[], &[q[0]]))],
        // S X S† = Y = i X Z
        GateKind::S => vec![(q[0], s(P::I, &[q[0]], &[q[0]]), s(P::ONE, &[], &[q[0]]))],
        GateKind::Sdg => vec![(q[0], s(P::MINUS_I, &[q[0]], &[q[0]]), s(P::ONE, &[], &[q[0]]))],
        GateKind::CX => {
            let (c, t) = (q[0], q[1]);
            vec![(c, s(P::ONE, &[c, t], &[]), s(P::ONE, &[], &[c])), (t, s(P::ONE, &[t], &[]), s(P::ONE, &[], &[c, t]))]
        }
        GateKind::CZ => {
            let (a, b) = (q[0], q[1]);
            vec![(a, s(P::ONE, &[a], &[b]), s(P::ONE, &[], &[a])), (b, s(P::ONE, &[b], &[a]), s(P::ONE, &[], &[b]))]
        }
        GateKind::Swap => {
            let (a, b) = (q[0], q[1]);
            vec![(a, s(P::ONE, &[b], &[]), s(P::ONE, &[], &[b])), (b, s(P::ONE, &[a], &[]), s(P::ONE, &[], &[a]))]
        }
        _ => return Err(PauliError::NonClifford(g.to_string())),
    })
}

/// Exact conjugation `G · P · G†` for Clifford gates.
pub fn conjugate_clifford(p: &PauliString, g: &Gate) -> Result<PauliString, PauliError> {
    check_qubits(p.width, g)?;
    let mut images = clifford_images(g, p.width)?;
    images.sort_by_key(|(q, _, _)| *q);
    let local = images.iter().fold(0u64, |m, (q, _, _)| m | 1u64 << (q - 1));
    // The untouched part commutes with every image, so it can be factored out first.
    let mut out = PauliString { width: p.width, phase: p.phase, x: p.x & !local, z: p.z & !local };
    for (q, img_x, img_z) in &images {
        let b = 1u64 << (q - 1);
        if p.x & b != 0 {
            out = out.try_mul(img_x)?;
        }
        if p.z & b != 0 {
            out = out.try_mul(img_z)?;
        }
    }
    Ok(out)
}

/// Expands `G · S · G†` for a gate on at most three qubits by conjugating each
/// term's local factor through the dense gate matrix and projecting back onto
/// the Pauli basis.
pub fn conjugate_dense_gate(s: &PauliSum, g: &Gate, term_cap: usize) -> Result<PauliSum, PauliError> {
    let k = g.qubits.len();
    if k > 3 {
        return Err(PauliError::ArityTooLarge { gate: g.to_string(), arity: k });
    }
    check_qubits(s.width(), g)?;
    let table = LocalConjugation::new(&g.kind, k);
    let local_mask = g.qubits.iter().fold(0u64, |m, q| m | 1u64 << (q - 1));
    let mut out = PauliSum::zero(s.width())?;
    for ((x, z), coef) in s.terms() {
        let (lx, lz) = (gather(x, &g.qubits), gather(z, &g.qubits));
        let (rest_x, rest_z) = (x & !local_mask, z & !local_mask);
        for &(ix, iz, c) in table.image(lx, lz) {
            out.add_term(rest_x | scatter(ix, &g.qubits), rest_z | scatter(iz, &g.qubits), coef * c);
        }
        if out.len() > term_cap {
            return Err(PauliError::TermBlowup { terms: out.len(), cap: term_cap });
        }
    }
    Ok(out)
}

/// Local bit `p` (position in `qubits`) from the global mask.
fn gather(mask: u64, qubits: &[usize]) -> usize {
    qubits.iter().enumerate().fold(0, |acc, (p, q)| acc | (((mask >> (q - 1)) & 1) as usize) << p)
}

fn scatter(local: usize, qubits: &[usize]) -> u64 {
    qubits.iter().enumerate().fold(0, |acc, (p, q)| acc | (((local >> p) & 1) as u64) << (q - 1))
}

type LocalTerm = (usize, usize, Complex64);

/// Decompositions of `G · (X^a Z^b) · G†` for every local `(a, b)`.
struct LocalConjugation {
    images: HashMap<(usize, usize), Vec<LocalTerm>>,
}

impl LocalConjugation {
    fn new(kind: &GateKind, k: usize) -> LocalConjugation {
        let dim = 1usize << k;
        let gm = kind.matrix();
        // matrix index bit (k - 1 - p) holds local position p
        let to_index = |m: usize| (0..k).fold(0, |acc, p| acc | ((m >> p) & 1) << (k - 1 - p));
        let pauli = |a: usize, b: usize| {
            let (ai, bi) = (to_index(a), to_index(b));
            let mut m = vec![Complex64::new(0.0, 0.0); dim * dim];
            for c in 0..dim {
                m[(c ^ ai) * dim + c] = if (bi & c).count_ones() % 2 == 1 { -1.0 } else { 1.0 }.into();
            }
            m
        };
        let mul = |a: &[Complex64], b: &[Complex64]| {
            let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
            for r in 0..dim {
                for t in 0..dim {
                    for c in 0..dim {
                        out[r * dim + c] += a[r * dim + t] * b[t * dim + c];
                    }
                }
            }
            out
        };
        let gdag: Vec<Complex64> = (0..dim * dim).map(|i| gm[(i % dim) * dim + i / dim].conj()).collect();
        let mut images = HashMap::new();
        for a in 0..dim {
            for b in 0..dim {
                let m = mul(&mul(&gm, &pauli(a, b)), &gdag);
                let mut terms = Vec::new();
                for ia in 0..dim {
                    for ib in 0..dim {
                        let (ai, bi) = (to_index(ia), to_index(ib));
                        let mut acc = Complex64::new(0.0, 0.0);
                        for c in 0..dim {
                            let v = m[(c ^ ai) * dim + c];
                            acc += if (bi & c).count_ones() % 2 == 1 { -v } else { v };
                        }
                        let coef = acc / dim as f64;
                        if coef.norm() >= 1e-15 {
                            terms.push((ia, ib, coef));
                        }
                    }
                }
                images.insert((a, b), terms);
            }
        }
        LocalConjugation { images }
    }

    fn image(&self, a: usize, b: usize) -> &[(usize, usize, Complex64)] {
        &self.images[&(a, b)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::DenseOperator;
    use std::f64::consts::FRAC_PI_4;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    fn clifford_gates(width: usize) -> Vec<Gate> {
        let mut gates = Vec::new();
        for q in 1..=width {
            for g in [Gate::i(q), Gate::h(q), Gate::x(q), Gate::y(q), Gate::z(q), Gate::s(q), Gate::sdg(q)] {
                gates.push(g);
            }
            for r in 1..=width {
                if r != q {
                    gates.extend([Gate::cx(q, r), Gate::cz(q, r), Gate::swap(q, r)]);
                }
            }
        }
        gates
    }

    #[test]
    fn clifford_examples() {
        assert_eq!(conjugate_clifford(&p("ZZ"), &Gate::cx(1, 2)).unwrap(), p("IZ"));
        assert_eq!(conjugate_clifford(&p("Z"), &Gate::h(1)).unwrap(), p("X"));
        assert_eq!(conjugate_clifford(&p("XI"), &Gate::cx(1, 2)).unwrap(), p("XX"));
        assert_eq!(conjugate_clifford(&p("IZ"), &Gate::cx(2, 1)).unwrap(), p("IZ"));
        assert_eq!(conjugate_clifford(&p("ZI"), &Gate::cx(2, 1)).unwrap(), p("ZZ"));
        assert!(matches!(conjugate_clifford(&p("Z"), &Gate::t(1)), Err(PauliError::NonClifford(_))));
        assert!(matches!(conjugate_clifford(&p("Z"), &Gate::h(2)), Err(PauliError::QubitOutOfRange { .. })));
    }

    /// Every single- and two-qubit-support string through every supported Clifford gate, w ≤ 3.
    #[test]
    fn clifford_agrees_with_dense_conjugation() {
        for width in 1..=3usize {
            let all = 1u64 << width;
            for x in 0..all {
                for z in 0..all {
                    if (x | z).count_ones() > 2 {
                        continue;
                    }
                    let pauli = PauliString::new(width, Phase::ONE, x, z).unwrap();
                    for g in clifford_gates(width) {
                        let got = conjugate_clifford(&pauli, &g).unwrap().to_dense(3).unwrap();
                        let mut want = pauli.to_dense(3).unwrap();
                        want.conjugate_by(&g).unwrap();
                        assert!(got.approx_eq(&want, 1e-12), "{pauli} under {g}");
                    }
                }
            }
        }
    }

    #[test]
    fn t_gate_fixes_z_and_rotates_x() {
        let z = PauliSum::from_string(&p("Z"));
        assert_eq!(conjugate_dense_gate(&z, &Gate::t(1), DEFAULT_TERM_CAP).unwrap(), z);
        let x = PauliSum::from_string(&p("X"));
        let out = conjugate_dense_gate(&x, &Gate::t(1), DEFAULT_TERM_CAP).unwrap();
        // T = diag(1, e^{-iπ/4}): T X T† = cos(π/4) X - sin(π/4) Y
        let mut want = PauliSum::zero(1).unwrap();
        want.add_string(&p("X"), FRAC_PI_4.cos().into());
        want.add_string(&p("Y"), (-FRAC_PI_4.sin()).into());
        assert!(out.max_abs_diff(&want) < 1e-15, "{out}");
    }

    #[test]
    fn dense_gate_expansion_matches_dense_oracle() {
        let gates = [
            Gate::ccx(1, 2, 3),
            Gate::t(2),
            Gate::tdg(3),
            Gate::new(GateKind::Ctrl(Box::new(GateKind::H)), vec![3, 1]).unwrap(),
            Gate::new(GateKind::Ctrl(Box::new(GateKind::CX)), vec![2, 3, 1]).unwrap(),
            Gate::h(1),
            Gate::cx(2, 1),
        ];
        let mut s = PauliSum::zero(3).unwrap();
        s.add_string(&p("XIZ"), Complex64::new(0.5, 0.0));
        s.add_string(&p("ZYX"), Complex64::new(0.0, -0.3));
        s.add_string(&p("IIZ"), Complex64::new(1.0, 0.0));
        for g in &gates {
            let got = conjugate_dense_gate(&s, g, DEFAULT_TERM_CAP).unwrap().to_dense(3).unwrap();
            let mut want: DenseOperator = s.to_dense(3).unwrap();
            want.conjugate_by(g).unwrap();
            assert!(got.approx_eq(&want, 1e-12), "{g}");
        }
    }

    #[test]
    fn toffoli_on_target_z() {
        let z3 = PauliSum::from_string(&p("IIZ"));
        let out = conjugate_dense_gate(&z3, &Gate::ccx(1, 2, 3), DEFAULT_TERM_CAP).unwrap();
        // Z3 ↦ Z3 (1 - (1 - Z1)(1 - Z2)/2)
        assert_eq!(out.len(), 4);
        assert!((out.coefficient_of(&p("ZZZ")) + 0.5).norm() < 1e-12);
        assert!((out.coefficient_of(&p("IIZ")) - 0.5).norm() < 1e-12);
    }

    #[test]
    fn term_cap_and_arity_errors() {
        let s = PauliSum::from_string(&p("XXX"));
        assert!(matches!(conjugate_dense_gate(&s, &Gate::ccx(1, 2, 3), 1), Err(PauliError::TermBlowup { .. })));
        let big =
            Gate::new(GateKind::Ctrl(Box::new(GateKind::Ctrl(Box::new(GateKind::Swap)))), vec![1, 2, 3, 4]).unwrap();
        let s4 = PauliSum::from_string(&p("XXXX"));
        assert!(matches!(conjugate_dense_gate(&s4, &big, DEFAULT_TERM_CAP), Err(PauliError::ArityTooLarge { .. })));
    }
}
