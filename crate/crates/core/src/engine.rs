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

//! Execution engines for the one-clean-qubit start state.
//!
//! The dense engine evolves the full density matrix `ρ = U (1 + Z1) U† / 2^w`.
//! The Heisenberg engine tracks only the observable `U Z1 U†` as a [`PauliSum`],
//! which stays a single signed string for Clifford circuits.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{Circuit, CircuitError, Gate};
use crate::dense::{qubit_bit, DenseOperator, DEFAULT_DENSE_CAP};
use crate::pauli::{conjugate_clifford, conjugate_dense_gate, PauliError, PauliString, PauliSum, DEFAULT_TERM_CAP};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("width {width} exceeds the dense cap of {cap} qubits")]
    WidthOverCap { width: usize, cap: usize },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error("beta {0} is outside [-1, 1]")]
    InvalidBeta(f64),
    #[error("{0}")]
    InvalidParameter(String),
    #[error("state invariant violated: {0}")]
    Invariant(String),
}

/// Simulation limits shared by every engine entry point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Engine {
    pub dense_cap: usize,
    pub term_cap: usize,
    /// Run the eigenvalue-based PSD check on every dense result.
    pub check_psd: bool,
}

impl Default for Engine {
    fn default() -> Engine {
        Engine { dense_cap: DEFAULT_DENSE_CAP, term_cap: DEFAULT_TERM_CAP, check_psd: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineKind {
    Dense,
    Pauli,
}

/// Density operator of a width-`w` register.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseState {
    matrix: DenseOperator,
}

impl DenseState {
    /// `(1 + Z1) / 2^w`.
    pub fn start(width: usize) -> DenseState {
        DenseState::pure_prefix(width, 1)
    }

    /// `(1 + Z)^{⊗c} / 2^w`: the first `c` qubits pure in `|0⟩`, the rest maximally mixed.
    pub fn pure_prefix(width: usize, c: usize) -> DenseState {
        let weight = 1.0 / f64::from(1u32 << (width - c));
        let pure_mask = (0..c).fold(0usize, |m, q| m | qubit_bit(width, q + 1));
        DenseState {
            matrix: DenseOperator::diagonal(width, |k| {
                Complex64::new(if k & pure_mask == 0 { weight } else { 0.0 }, 0.0)
            }),
        }
    }

    pub fn from_matrix(matrix: DenseOperator) -> DenseState {
        DenseState { matrix }
    }

    pub fn width(&self) -> usize {
        self.matrix.width()
    }

    pub fn matrix(&self) -> &DenseOperator {
        &self.matrix
    }

    pub fn into_matrix(self) -> DenseOperator {
        self.matrix
    }

    pub fn evolve(&mut self, gates: &[Gate]) -> Result<(), CircuitError> {
        gates.iter().try_for_each(|g| self.matrix.conjugate_by(g))
    }

    /// `Tr[ρ P]`.
    pub fn expectation(&self, p: &PauliString) -> Complex64 {
        self.expectation_sum(&PauliSum::from_string(p))
    }

    /// `Tr[ρ S]` for a sum of strings of the same width.
    pub fn expectation_sum(&self, s: &PauliSum) -> Complex64 {
        let w = self.width();
        let dim = self.matrix.dim();
        let mut total = Complex64::new(0.0, 0.0);
        for ((x, z), coef) in s.terms() {
            let to_index = |m: u64| (m.reverse_bits() >> (64 - w)) as usize;
            let (xi, zi) = (to_index(x), to_index(z));
            // (X^x Z^z)[c ^ x][c] = (-1)^{z·c}
            let mut acc = Complex64::new(0.0, 0.0);
            for c in 0..dim {
                let v = self.matrix.get(c, c ^ xi);
                if (zi & c).count_ones() % 2 == 1 {
                    acc -= v;
                } else {
                    acc += v;
                }
            }
            total += coef * acc;
        }
        total
    }

    /// `Tr[ρ Z1]`, kept complex so the imaginary residue can be inspected.
    pub fn z1_expectation(&self) -> Complex64 {
        let bit = qubit_bit(self.width(), 1);
        (0..self.matrix.dim())
            .map(|k| {
                let v = self.matrix.get(k, k);
                if k & bit == 0 {
                    v
                } else {
                    -v
                }
            })
            .sum()
    }

    /// Probability that every one of the first `d` qubits reads `0`.
    pub fn prob_all_zero(&self, d: usize) -> f64 {
        let w = self.width();
        let mask = (1..=d).fold(0usize, |m, q| m | qubit_bit(w, q));
        (0..self.matrix.dim()).filter(|k| k & mask == 0).map(|k| self.matrix.get(k, k).re).sum()
    }

    /// Hermiticity and unit trace to `tol`; with `check_psd`, also `λ_min ≥ -1e-8`.
    pub fn validate(&self, tol: f64, check_psd: bool) -> Result<(), EngineError> {
        let herm = self.matrix.hermiticity_defect();
        if herm > tol {
            return Err(EngineError::Invariant(format!("hermiticity defect {herm:e}")));
        }
        let tr = self.matrix.trace();
        if (tr - 1.0).norm() > tol {
            return Err(EngineError::Invariant(format!("trace {tr}")));
        }
        if check_psd {
            let lmin = self.matrix.min_eigenvalue();
            if lmin < -1e-8 {
                return Err(EngineError::Invariant(format!("min eigenvalue {lmin:e}")));
            }
        }
        Ok(())
    }
}

/// Heisenberg-picture state: the evolved observable `U Z1 U†`.
#[derive(Clone, Debug, PartialEq)]
pub struct HeisenbergState {
    observable: PauliSum,
}

impl HeisenbergState {
    pub fn start(width: usize) -> Result<HeisenbergState, PauliError> {
        Ok(HeisenbergState { observable: PauliSum::from_string(&PauliString::z(width, 1)?) })
    }

    pub fn width(&self) -> usize {
        self.observable.width()
    }

    pub fn observable(&self) -> &PauliSum {
        &self.observable
    }

    /// Density matrix `(1 + O) / 2^w`.
    pub fn to_dense(&self, cap: usize) -> Result<DenseOperator, PauliError> {
        let w = self.width();
        let rho = PauliSum::identity(w)?.add(&self.observable)?.scale(Complex64::new(1.0 / f64::from(1u32 << w), 0.0));
        rho.to_dense(cap)
    }
}

/// Anything that carries a `β` value.
pub trait BetaSource {
    fn beta(&self) -> f64;
}

impl BetaSource for DenseState {
    /// `β = Re Tr[ρ Z1]`.
    fn beta(&self) -> f64 {
        self.z1_expectation().re
    }
}

impl BetaSource for HeisenbergState {
    /// Coefficient of `Z1` in the evolved observable.
    fn beta(&self) -> f64 {
        self.observable.coefficient(0, 1).re
    }
}

pub fn beta_of(state: &impl BetaSource) -> f64 {
    state.beta()
}

/// The traceless workspace part `R` of the generic state.
#[derive(Clone, Debug, PartialEq)]
pub enum Workspace {
    Dense(DenseOperator),
    Pauli(PauliSum),
}

impl Workspace {
    /// `(Tr R, Tr[Z1 R])`, both normalised by `2^w`.
    pub fn normalized_traces(&self) -> (Complex64, Complex64) {
        match self {
            Workspace::Dense(r) => {
                let dim = r.dim() as f64;
                let bit = qubit_bit(r.width(), 1);
                let tr = r.trace() / dim;
                let z1r: Complex64 = (0..r.dim()).map(|k| if k & bit == 0 { r.get(k, k) } else { -r.get(k, k) }).sum();
                (tr, z1r / dim)
            }
            Workspace::Pauli(r) => (r.coefficient(0, 0), r.coefficient(0, 1)),
        }
    }
}

/// `ρ = (1 + β Z1 + sqrt(1 - β²) R) / 2^w`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateDecomposition {
    pub beta: f64,
    /// `None` when `β² = 1`, where `R` is undefined.
    pub r_part: Option<Workspace>,
}

impl StateDecomposition {
    pub fn defined_r(&self) -> bool {
        self.r_part.is_some()
    }
}

const R_UNDEFINED_TOL: f64 = 1e-12;

pub fn decompose(state: &DenseState) -> StateDecomposition {
    let beta = state.beta();
    if beta * beta >= 1.0 - R_UNDEFINED_TOL {
        return StateDecomposition { beta, r_part: None };
    }
    let w = state.width();
    // U Z1 U† = 2^w ρ - 1
    let mut r = state.matrix().clone();
    r.scale(Complex64::new(f64::from(1u32 << w), 0.0));
    let bit = qubit_bit(w, 1);
    for k in 0..r.dim() {
        let z = if k & bit == 0 { beta } else { -beta };
        r.set(k, k, r.get(k, k) - 1.0 - z);
    }
    r.scale(Complex64::new(1.0 / (1.0 - beta * beta).sqrt(), 0.0));
    StateDecomposition { beta, r_part: Some(Workspace::Dense(r)) }
}

pub fn decompose_heisenberg(state: &HeisenbergState) -> StateDecomposition {
    let beta = state.beta();
    if beta * beta >= 1.0 - R_UNDEFINED_TOL {
        return StateDecomposition { beta, r_part: None };
    }
    let mut r = state.observable.clone();
    r.add_term(0, 1, Complex64::new(-beta, 0.0));
    let r = r.scale(Complex64::new(1.0 / (1.0 - beta * beta).sqrt(), 0.0));
    StateDecomposition { beta, r_part: Some(Workspace::Pauli(r)) }
}

/// `P("0") = (1 + β) / 2`.
pub fn probability_zero(beta: f64) -> Result<f64, EngineError> {
    if !beta.is_finite() || beta.abs() > 1.0 + 1e-10 {
        return Err(EngineError::InvalidBeta(beta));
    }
    Ok(((1.0 + beta) / 2.0).clamp(0.0, 1.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub zeros: u64,
    pub ones: u64,
}

impl Counts {
    pub fn shots(&self) -> u64 {
        self.zeros + self.ones
    }

    /// `β̂ = 2 · zeros / shots - 1`.
    pub fn beta_hat(&self) -> f64 {
        2.0 * self.zeros as f64 / self.shots() as f64 - 1.0
    }
}

/// Draws `shots` measurements of qubit 1 for a state with the given `β`.
pub fn sample_beta(beta: f64, shots: u64, seed: u64) -> Result<Counts, EngineError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    draw(beta, shots, &mut rng)
}

fn draw(beta: f64, shots: u64, rng: &mut ChaCha8Rng) -> Result<Counts, EngineError> {
    if shots == 0 {
        return Err(EngineError::InvalidParameter("shots must be at least 1".into()));
    }
    let p = probability_zero(beta)?;
    let zeros = Binomial::new(shots, p).map_err(|e| EngineError::InvalidParameter(e.to_string()))?.sample(rng);
    Ok(Counts { zeros, ones: shots - zeros })
}

/// Splits the shots across `parts` independent ChaCha streams and sums the counts.
/// The result depends only on `(beta, shots, seed, parts)`.
pub fn sample_beta_partitioned(beta: f64, shots: u64, seed: u64, parts: u64) -> Result<Counts, EngineError> {
    if parts == 0 || parts > shots {
        return Err(EngineError::InvalidParameter(format!("cannot split {shots} shots into {parts} parts")));
    }
    let chunks: Vec<Result<Counts, EngineError>> = (0..parts)
        .into_par_iter()
        .map(|k| {
            let n = shots / parts + u64::from(k < shots % parts);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k);
            draw(beta, n, &mut rng)
        })
        .collect();
    chunks.into_iter().try_fold(Counts { zeros: 0, ones: 0 }, |acc, c| {
        let c = c?;
        Ok(Counts { zeros: acc.zeros + c.zeros, ones: acc.ones + c.ones })
    })
}

/// Evaluated bounds of the decision rule: `q_bound` sets the accept/reject
/// thresholds `±1/q`, `p_bound` is the promise `|β| ≥ 1/p` of the instance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecisionPolicy {
    pub q_bound: f64,
    pub p_bound: f64,
}

impl DecisionPolicy {
    pub fn new(q_bound: f64, p_bound: f64) -> Result<DecisionPolicy, EngineError> {
        if q_bound.is_nan() || q_bound < 1.0 || p_bound.is_nan() || p_bound <= 0.0 {
            return Err(EngineError::InvalidParameter(format!(
                "need q_bound >= 1 and p_bound > 0, got {q_bound} and {p_bound}"
            )));
        }
        Ok(DecisionPolicy { q_bound, p_bound })
    }

    /// Policy with only the decision threshold set; the promise bound equals it.
    pub fn with_q(q_bound: f64) -> Result<DecisionPolicy, EngineError> {
        DecisionPolicy::new(q_bound, q_bound)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Accept,
    Reject,
    /// `β̂` fell strictly inside `(-1/q, 1/q)`: the promise is broken.
    Undetermined,
}

pub fn decide(beta_hat: f64, policy: &DecisionPolicy) -> Decision {
    let threshold = 1.0 / policy.q_bound;
    if beta_hat >= threshold {
        Decision::Accept
    } else if beta_hat <= -threshold {
        Decision::Reject
    } else {
        Decision::Undetermined
    }
}

impl Engine {
    fn check_dense(&self, width: usize) -> Result<(), EngineError> {
        if width > self.dense_cap {
            Err(EngineError::WidthOverCap { width, cap: self.dense_cap })
        } else {
            Ok(())
        }
    }

    /// `ρ = U ρ_start U†` for the circuit resolved on `x`.
    pub fn dense_run(&self, c: &Circuit, x: &[bool]) -> Result<DenseState, EngineError> {
        let gates = c.resolve(x)?;
        self.dense_run_gates(c.width(), &gates)
    }

    pub fn dense_run_gates(&self, width: usize, gates: &[Gate]) -> Result<DenseState, EngineError> {
        self.check_dense(width)?;
        let mut state = DenseState::start(width);
        state.evolve(gates)?;
        if self.check_psd {
            state.validate(1e-10, true)?;
        }
        Ok(state)
    }

    /// Heisenberg tracking of `U Z1 U†`.
    pub fn pauli_run(&self, c: &Circuit, x: &[bool]) -> Result<HeisenbergState, EngineError> {
        let gates = c.resolve(x)?;
        self.pauli_run_gates(c.width(), &gates)
    }

    pub fn pauli_run_gates(&self, width: usize, gates: &[Gate]) -> Result<HeisenbergState, EngineError> {
        let mut state = HeisenbergState::start(width)?;
        for g in gates {
            state.observable = if g.kind.is_clifford() {
                let mut next = PauliSum::zero(width)?;
                for ((x, z), coef) in state.observable.terms() {
                    let p = PauliString::new(width, crate::pauli::Phase::ONE, x, z)?;
                    next.add_string(&conjugate_clifford(&p, g)?, coef);
                }
                next
            } else {
                conjugate_dense_gate(&state.observable, g, self.term_cap)?
            };
        }
        Ok(state)
    }

    pub fn beta(&self, c: &Circuit, x: &[bool], kind: EngineKind) -> Result<f64, EngineError> {
        Ok(match kind {
            EngineKind::Dense => self.dense_run(c, x)?.beta(),
            EngineKind::Pauli => self.pauli_run(c, x)?.beta(),
        })
    }

    /// Generalised output with `c_pure` clean inputs and a `d_meas`-qubit all-zeros measurement:
    /// `(1 + β_{c,d}) / 2 = Tr[U (1+Z)^{⊗c}/2^w U† (1+Z)^{⊗d}/2^d]`.
    pub fn beta_cd(&self, c: &Circuit, x: &[bool], c_pure: usize, d_meas: usize) -> Result<f64, EngineError> {
        let w = c.width();
        if c_pure == 0 || c_pure > w || d_meas == 0 || d_meas > w {
            return Err(EngineError::InvalidParameter(format!("c={c_pure} and d={d_meas} must lie in [1, {w}]")));
        }
        self.check_dense(w)?;
        let gates = c.resolve(x)?;
        let mut state = DenseState::pure_prefix(w, c_pure);
        state.evolve(&gates)?;
        Ok(2.0 * state.prob_all_zero(d_meas) - 1.0)
    }

    /// Seeded binomial shot sampling of qubit 1, using the dense engine.
    pub fn sample(&self, c: &Circuit, x: &[bool], shots: u64, seed: u64) -> Result<Counts, EngineError> {
        let beta = self.dense_run(c, x)?.beta();
        sample_beta(beta, shots, seed)
    }
}

/// Default-engine convenience wrappers.
pub fn dense_run(c: &Circuit, x: &[bool]) -> Result<DenseState, EngineError> {
    Engine::default().dense_run(c, x)
}

pub fn pauli_run(c: &Circuit, x: &[bool]) -> Result<HeisenbergState, EngineError> {
    Engine::default().pauli_run(c, x)
}

pub fn beta_cd(c: &Circuit, x: &[bool], c_pure: usize, d_meas: usize) -> Result<f64, EngineError> {
    Engine::default().beta_cd(c, x, c_pure, d_meas)
}

pub fn sample(c: &Circuit, x: &[bool], shots: u64, seed: u64) -> Result<Counts, EngineError> {
    Engine::default().sample(c, x, shots, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{parse_bits, Instruction};

    fn c1(gates: Vec<Gate>) -> Circuit {
        Circuit::from_gates(1, gates).unwrap()
    }

    fn and_gadget(width: usize) -> Circuit {
        Circuit::from_instructions(
            width,
            2,
            vec![
                Instruction::Pair { bit: 1, zero: vec![], one: vec![Gate::h(1)] },
                Instruction::Pair { bit: 2, zero: vec![], one: vec![Gate::z(1)] },
                Instruction::Pair { bit: 1, zero: vec![], one: vec![Gate::h(1)] },
            ],
        )
        .unwrap()
    }

    #[test]
    fn empty_circuit_gives_start_state() {
        let st = dense_run(&Circuit::new(1, 0).unwrap(), &[]).unwrap();
        assert_eq!(st.matrix().get(0, 0), Complex64::new(1.0, 0.0));
        assert_eq!(st.matrix().get(1, 1), Complex64::new(0.0, 0.0));
        assert_eq!(st.beta(), 1.0);
    }

    #[test]
    fn bit_flip_negates_z1() {
        let c = Circuit::from_gates(3, vec![Gate::x(1)]).unwrap();
        let st = dense_run(&c, &[]).unwrap();
        let want = PauliSum::identity(3)
            .unwrap()
            .add(&PauliSum::from_string(&"-ZII".parse().unwrap()))
            .unwrap()
            .scale(Complex64::new(0.125, 0.0))
            .to_dense(3)
            .unwrap();
        assert!(st.matrix().approx_eq(&want, 1e-15));
    }

    #[test]
    fn entangled_example_state() {
        // controlled-on-zero Hadamard, then CX(1,2)
        let ch = Gate::new(crate::GateKind::Ctrl(Box::new(crate::GateKind::H)), vec![2, 1]).unwrap();
        let c = Circuit::from_gates(2, vec![Gate::x(2), ch, Gate::x(2), Gate::cx(1, 2)]).unwrap();
        let st = dense_run(&c, &[]).unwrap();
        let mut want = PauliSum::identity(2).unwrap().scale(Complex64::new(2.0, 0.0));
        for (s, k) in [("XX", 1.0), ("YY", -1.0), ("ZI", 1.0), ("IZ", -1.0)] {
            want.add_string(&s.parse().unwrap(), Complex64::new(k, 0.0));
        }
        let want = want.scale(Complex64::new(0.125, 0.0)).to_dense(2).unwrap();
        assert!(st.matrix().approx_eq(&want, 1e-12));
    }

    #[test]
    fn pauli_run_examples() {
        let h = pauli_run(&c1(vec![Gate::h(1)]), &[]).unwrap();
        assert_eq!(h.observable().as_single_string(), Some("X".parse().unwrap()));
        let cx = pauli_run(&Circuit::from_gates(2, vec![Gate::cx(2, 1)]).unwrap(), &[]).unwrap();
        assert_eq!(cx.observable().as_single_string(), Some("ZZ".parse().unwrap()));
    }

    #[test]
    fn pauli_run_with_t_gates_matches_dense() {
        let c =
            Circuit::from_gates(2, vec![Gate::h(1), Gate::t(1), Gate::cx(1, 2), Gate::h(2), Gate::tdg(1), Gate::h(1)])
                .unwrap();
        let dense = dense_run(&c, &[]).unwrap();
        let heis = pauli_run(&c, &[]).unwrap();
        assert!((dense.beta() - heis.beta()).abs() < 1e-12);
        assert!(heis.to_dense(4).unwrap().approx_eq(dense.matrix(), 1e-12));
    }

    #[test]
    fn term_blowup_is_reported() {
        let mut gates = Vec::new();
        for _ in 0..6 {
            gates.extend([
                Gate::h(1),
                Gate::t(1),
                Gate::h(2),
                Gate::t(2),
                Gate::cx(1, 2),
                Gate::h(3),
                Gate::t(3),
                Gate::cx(2, 3),
            ]);
        }
        let c = Circuit::from_gates(3, gates).unwrap();
        let eng = Engine { term_cap: 4, ..Engine::default() };
        assert!(matches!(eng.pauli_run(&c, &[]), Err(EngineError::Pauli(PauliError::TermBlowup { .. }))));
    }

    #[test]
    fn beta_examples() {
        assert_eq!(dense_run(&c1(vec![]), &[]).unwrap().beta(), 1.0);
        assert!(dense_run(&c1(vec![Gate::h(1)]), &[]).unwrap().beta().abs() < 1e-15);
        let and = and_gadget(1);
        assert!((dense_run(&and, &parse_bits("11").unwrap()).unwrap().beta() + 1.0).abs() < 1e-12);
        assert!((dense_run(&and, &parse_bits("10").unwrap()).unwrap().beta() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn decompose_examples() {
        let start = decompose(&DenseState::start(2));
        assert_eq!(start.beta, 1.0);
        assert!(!start.defined_r());
        let d = decompose(&dense_run(&c1(vec![Gate::h(1)]), &[]).unwrap());
        assert!(d.beta.abs() < 1e-15);
        let Some(Workspace::Dense(r)) = &d.r_part else { panic!("R should be defined") };
        assert!(r.approx_eq(&"X".parse::<PauliString>().unwrap().to_dense(1).unwrap(), 1e-12));
        let c = Circuit::from_gates(2, vec![Gate::h(1), Gate::t(1), Gate::cx(1, 2), Gate::h(1)]).unwrap();
        let d = decompose(&dense_run(&c, &[]).unwrap());
        let (tr, z1r) = d.r_part.as_ref().unwrap().normalized_traces();
        assert!(tr.norm() < 1e-10 && z1r.norm() < 1e-10);
        let dh = decompose_heisenberg(&pauli_run(&c, &[]).unwrap());
        assert!((dh.beta - d.beta).abs() < 1e-12);
        let (tr, z1r) = dh.r_part.unwrap().normalized_traces();
        assert!(tr.norm() < 1e-10 && z1r.norm() < 1e-10);
    }

    #[test]
    fn probability_zero_examples() {
        assert_eq!(probability_zero(1.0).unwrap(), 1.0);
        assert_eq!(probability_zero(-1.0).unwrap(), 0.0);
        assert_eq!(probability_zero(0.0).unwrap(), 0.5);
        assert!(probability_zero(1.5).is_err());
        assert!(probability_zero(f64::NAN).is_err());
    }

    #[test]
    fn sampling_edges_and_reproducibility() {
        assert_eq!(sample_beta(1.0, 1000, 7).unwrap(), Counts { zeros: 1000, ones: 0 });
        assert_eq!(sample_beta(-1.0, 1000, 7).unwrap(), Counts { zeros: 0, ones: 1000 });
        assert_eq!(sample_beta(0.2, 5000, 3).unwrap(), sample_beta(0.2, 5000, 3).unwrap());
        assert!(sample_beta(0.0, 0, 1).is_err());
        let a = sample_beta_partitioned(0.1, 10_001, 9, 4).unwrap();
        assert_eq!(a.shots(), 10_001);
        assert_eq!(a, sample_beta_partitioned(0.1, 10_001, 9, 4).unwrap());
    }

    #[test]
    fn hadamard_sampling_concentrates() {
        let c = c1(vec![Gate::h(1)]);
        let inside = (0..200u64)
            .filter(|&seed| {
                let n = sample(&c, &[], 100_000, seed).unwrap();
                (n.zeros as f64 / 1e5 - 0.5).abs() <= 0.01
            })
            .count();
        assert!(inside >= 198, "{inside}/200");
    }

    #[test]
    fn beta_cd_examples() {
        assert_eq!(beta_cd(&c1(vec![]), &[], 1, 1).unwrap(), 1.0);
        let c = Circuit::from_gates(3, vec![Gate::h(1), Gate::t(1), Gate::cx(1, 3), Gate::h(2)]).unwrap();
        let b11 = beta_cd(&c, &[], 1, 1).unwrap();
        assert!((b11 - dense_run(&c, &[]).unwrap().beta()).abs() < 1e-12);
        assert!(beta_cd(&c, &[], 0, 1).is_err());
        assert!(beta_cd(&c, &[], 1, 4).is_err());
    }

    #[test]
    fn decide_examples() {
        let p = DecisionPolicy::with_q(3.0).unwrap();
        assert_eq!(decide(1.0, &p), Decision::Accept);
        assert_eq!(decide(-1.0, &p), Decision::Reject);
        assert_eq!(decide(0.1, &p), Decision::Undetermined);
        assert!(DecisionPolicy::new(0.5, 1.0).is_err());
    }

    #[test]
    fn dense_cap_is_enforced() {
        let eng = Engine { dense_cap: 2, ..Engine::default() };
        let c = Circuit::new(3, 0).unwrap();
        assert_eq!(eng.dense_run(&c, &[]), Err(EngineError::WidthOverCap { width: 3, cap: 2 }));
    }

    #[test]
    fn states_validate_with_psd_check() {
        let c = Circuit::from_gates(3, vec![Gate::h(1), Gate::t(1), Gate::ccx(1, 2, 3), Gate::h(3)]).unwrap();
        let st = dense_run(&c, &[]).unwrap();
        st.validate(1e-10, true).unwrap();
        assert!(st.z1_expectation().im.abs() < 1e-12);
    }
}
