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

//! Seeded corpus runs over the engines and gadgets, with auditable reports.
//!
//! Case `i` draws everything it needs from a ChaCha stream keyed by
//! `(seed, i)`, so growing `cases` never changes the earlier records.

mod report;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{format_bits, Circuit};
use crate::engine::{Engine, EngineKind};
use crate::gadgets::{
    beta21_trace_terms, corner_pair_experiment, entangled_example, estimate_trace_with, fourier_permutation_experiment,
    markov_mixing_circuit, mixing_bound, normalized_trace, parity_l_compile, parity_oracle_beta, random_corner_unitary,
    random_permutation, trace_estimation_circuit, witness_check, GadgetError, TracePart, MAX_FOURIER_WIDTH,
};
use crate::parser::{random_circuit, Alphabet};

pub use crate::stats::{hoeffding_half_width, shots_required, StatsError};
pub use report::{read_report, write_report, CaseRecord, ExperimentReport, ReportFormat, Summary};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExperimentError {
    #[error("invalid experiment configuration: {0}")]
    Config(String),
    #[error("{}: {message}", path.display())]
    Io { path: PathBuf, message: String },
    #[error("json: {0}")]
    Json(String),
    #[error("csv: {0}")]
    Csv(String),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    #[default]
    CrossEngine,
    TraceEst,
    ParityL,
    Mixing,
    Corner,
    Fourier,
    Witness,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 7] = [
        ExperimentKind::CrossEngine,
        ExperimentKind::TraceEst,
        ExperimentKind::ParityL,
        ExperimentKind::Mixing,
        ExperimentKind::Corner,
        ExperimentKind::Fourier,
        ExperimentKind::Witness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::CrossEngine => "cross_engine",
            ExperimentKind::TraceEst => "trace_est",
            ExperimentKind::ParityL => "parity_l",
            ExperimentKind::Mixing => "mixing",
            ExperimentKind::Corner => "corner",
            ExperimentKind::Fourier => "fourier",
            ExperimentKind::Witness => "witness",
        }
    }

    fn default_tolerance(self) -> f64 {
        match self {
            ExperimentKind::ParityL => 1e-12,
            ExperimentKind::Mixing | ExperimentKind::Corner | ExperimentKind::Fourier => 1e-9,
            _ => 1e-10,
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = String;
    fn from_str(s: &str) -> Result<ExperimentKind, String> {
        let norm = s.to_ascii_lowercase().replace('-', "_");
        ExperimentKind::ALL
            .into_iter()
            .find(|k| k.name() == norm)
            .ok_or_else(|| format!("unknown experiment kind {s:?}"))
    }
}

/// Corpus description. Every field has a default, so `{}` is a valid config.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub seed: u64,
    pub cases: usize,
    pub width_min: usize,
    pub width_max: usize,
    /// Upper bound on circuit depth; each case draws its depth from `1..=depth`.
    pub depth: usize,
    pub inputs: usize,
    /// Shots per case for `trace_est`; `0` checks the exact gadget value instead.
    pub shots: u64,
    pub confidence: f64,
    /// Mixing rounds, cycled over the cases.
    pub s_values: Vec<usize>,
    /// Word lengths for `corner` are drawn from `0..=t_max`.
    pub t_max: usize,
    /// Overrides the per-kind tolerance.
    pub tolerance: Option<f64>,
}

impl Default for ExperimentConfig {
    fn default() -> ExperimentConfig {
        ExperimentConfig {
            kind: ExperimentKind::CrossEngine,
            seed: 0,
            cases: 20,
            width_min: 2,
            width_max: 4,
            depth: 40,
            inputs: 2,
            shots: 0,
            confidence: 0.99,
            s_values: vec![2, 3],
            t_max: 10,
            tolerance: None,
        }
    }
}

const MAX_CASES: usize = 1_000_000;

impl ExperimentConfig {
    pub fn for_kind(kind: ExperimentKind) -> ExperimentConfig {
        ExperimentConfig { kind, ..ExperimentConfig::default() }
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance.unwrap_or_else(|| self.kind.default_tolerance())
    }

    pub fn validate(&self, engine: &Engine) -> Result<(), ExperimentError> {
        let bad = |msg: String| Err(ExperimentError::Config(msg));
        if self.cases > MAX_CASES {
            return bad(format!("at most {MAX_CASES} cases, got {}", self.cases));
        }
        if self.width_min == 0 || self.width_min > self.width_max {
            return bad(format!("need 1 <= width_min <= width_max, got {}..={}", self.width_min, self.width_max));
        }
        if let Some(t) = self.tolerance {
            if !(t >= 0.0 && t.is_finite()) {
                return bad(format!("tolerance must be a finite non-negative number, got {t}"));
            }
        }
        let cap = engine.dense_cap;
        let (min_w, max_w) = match self.kind {
            ExperimentKind::CrossEngine => (1, cap),
            ExperimentKind::TraceEst => (1, cap.saturating_sub(1)),
            ExperimentKind::ParityL => (2, cap),
            ExperimentKind::Mixing => {
                let s_max = self.s_values.iter().copied().max().unwrap_or(0);
                if self.s_values.is_empty() || self.s_values.contains(&0) {
                    return bad("s_values must be non-empty and positive".into());
                }
                (2, cap.saturating_sub(2 * s_max))
            }
            ExperimentKind::Corner => (1, cap.min(8)),
            ExperimentKind::Fourier => (1, MAX_FOURIER_WIDTH),
            ExperimentKind::Witness => (2, cap),
        };
        if self.width_min < min_w || self.width_max > max_w {
            return bad(format!(
                "{} needs widths within {min_w}..={max_w}, got {}..={}",
                self.kind, self.width_min, self.width_max
            ));
        }
        if self.kind == ExperimentKind::TraceEst && self.shots > 0 && !(self.confidence > 0.0 && self.confidence < 1.0)
        {
            return bad(format!("confidence must lie in (0, 1), got {}", self.confidence));
        }
        if matches!(self.kind, ExperimentKind::CrossEngine | ExperimentKind::ParityL) && self.inputs > 64 {
            return bad(format!("at most 64 input bits, got {}", self.inputs));
        }
        Ok(())
    }
}

/// Per-case outcome before serialization.
struct Outcome {
    input: String,
    measured: f64,
    oracle: f64,
    pass: bool,
    deviation: f64,
}

impl Outcome {
    fn within(input: String, measured: f64, oracle: f64, tol: f64) -> Outcome {
        let deviation = (measured - oracle).abs();
        Outcome { input, measured, oracle, pass: deviation <= tol, deviation }
    }
}

fn random_bits(rng: &mut ChaCha8Rng, n: usize) -> Vec<bool> {
    (0..n).map(|_| rng.gen()).collect()
}

fn run_case(engine: &Engine, cfg: &ExperimentConfig, index: usize) -> Result<Outcome, GadgetError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let w = rng.gen_range(cfg.width_min..=cfg.width_max);
    let depth = rng.gen_range(1..=cfg.depth.max(1));
    let seed: u64 = rng.gen();
    let tol = cfg.tolerance();
    let tag = |extra: &str| format!("w={w} depth={depth} seed={seed}{extra}");
    Ok(match cfg.kind {
        ExperimentKind::CrossEngine => {
            let c = random_circuit(w, cfg.inputs, depth, Alphabet::Clifford, seed)?;
            let x = random_bits(&mut rng, cfg.inputs);
            let dense = engine.beta(&c, &x, EngineKind::Dense)?;
            let pauli = engine.beta(&c, &x, EngineKind::Pauli)?;
            Outcome::within(tag(&format!(" x={}", format_bits(&x))), pauli, dense, tol)
        }
        ExperimentKind::TraceEst => {
            let u = random_circuit(w, 0, depth, Alphabet::CliffordT, seed)?;
            let exact = normalized_trace(engine, &u, &[])?.re;
            if cfg.shots == 0 {
                let beta = engine.beta(&trace_estimation_circuit(&u)?, &[], EngineKind::Dense)?;
                Outcome::within(tag(""), beta, exact, tol)
            } else {
                let shot_seed: u64 = rng.gen();
                let est = estimate_trace_with(engine, &u, &[], TracePart::Real, cfg.shots, shot_seed, cfg.confidence)?;
                let deviation = (est.re_hat - exact).abs();
                Outcome {
                    input: tag(&format!(" shots={} shot_seed={shot_seed}", cfg.shots)),
                    measured: est.re_hat,
                    oracle: exact,
                    pass: deviation <= est.half_width,
                    deviation,
                }
            }
        }
        ExperimentKind::ParityL => {
            let c = random_circuit(w, cfg.inputs, depth, Alphabet::CnotOnly, seed)?;
            let x = random_bits(&mut rng, cfg.inputs);
            let beta = engine.beta(&parity_l_compile(&c)?, &x, EngineKind::Dense)?;
            let oracle = parity_oracle_beta(&c, &x)?;
            Outcome::within(tag(&format!(" x={}", format_bits(&x))), beta, oracle, tol)
        }
        ExperimentKind::Mixing => {
            let s = cfg.s_values[index % cfg.s_values.len()];
            let u = random_circuit(w, 0, depth, Alphabet::Clifford, seed)?;
            let mixed = engine.beta(&markov_mixing_circuit(&u, s)?, &[], EngineKind::Dense)?;
            let b21 = engine.beta_cd(&u, &[], 2, 1)?;
            let terms: f64 = beta21_trace_terms(engine, &u, &[])?.iter().sum();
            let mut o = Outcome::within(tag(&format!(" s={s}")), mixed, b21 / 3.0, mixing_bound(s) + tol);
            o.pass &= (terms - b21).abs() <= 1e-10;
            o
        }
        ExperimentKind::Corner => {
            let t = rng.gen_range(0..=cfg.t_max);
            let word = (0..t)
                .map(|k| random_circuit(w, 0, depth, Alphabet::CliffordT, seed.wrapping_add(k as u64 + 1)))
                .collect::<Result<Vec<Circuit>, _>>()?;
            let u = random_corner_unitary(w, seed)?;
            let rep = corner_pair_experiment(&word, &u)?;
            Outcome {
                input: tag(&format!(" t={t}")),
                measured: rep.diff,
                oracle: rep.bound,
                pass: rep.diff <= rep.bound + tol,
                deviation: (rep.diff - rep.bound).max(0.0),
            }
        }
        ExperimentKind::Fourier => {
            let pi = random_permutation(w, seed);
            let rep = fourier_permutation_experiment(&pi, w)?;
            Outcome::within(format!("w={w} seed={seed}"), rep.lhs, rep.rhs, tol)
        }
        ExperimentKind::Witness => {
            let (c, expected) = entangled_example(w)?;
            let st = engine.dense_run(&c, &[])?;
            let rep = witness_check(&st)?;
            let want = expected.to_dense(engine.dense_cap)?;
            let mut o = Outcome::within(format!("w={w}"), rep.v2.re, 1.0, tol);
            o.pass &= rep.v2.im.abs() <= tol && rep.v1.norm() <= tol && rep.entangled;
            o.pass &= st.matrix().max_abs_diff(&want) <= 1e-12;
            o.deviation = o.deviation.max(rep.v1.norm());
            o
        }
    })
}

fn record(index: usize, outcome: Result<Outcome, GadgetError>) -> (CaseRecord, f64) {
    match outcome {
        Ok(o) => (
            CaseRecord {
                index,
                input: o.input,
                measured: Some(o.measured),
                oracle: Some(o.oracle),
                pass: o.pass,
                error: None,
            },
            o.deviation,
        ),
        Err(e) => (
            CaseRecord {
                index,
                input: String::new(),
                measured: None,
                oracle: None,
                pass: false,
                error: Some(e.to_string()),
            },
            0.0,
        ),
    }
}

/// Runs the configured corpus with the default engine limits.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport, ExperimentError> {
    run_experiment_with(&Engine::default(), cfg)
}

/// Runs every case, in parallel, recording failures instead of aborting.
pub fn run_experiment_with(engine: &Engine, cfg: &ExperimentConfig) -> Result<ExperimentReport, ExperimentError> {
    cfg.validate(engine)?;
    let start = Instant::now();
    let outcomes: Vec<(usize, Result<Outcome, GadgetError>)> =
        (0..cfg.cases).into_par_iter().map(|i| (i, run_case(engine, cfg, i))).collect();
    let mut max_dev: f64 = 0.0;
    let mut cases = Vec::with_capacity(outcomes.len());
    for (index, outcome) in outcomes {
        let (record, dev) = record(index, outcome);
        max_dev = max_dev.max(dev);
        cases.push(record);
    }
    cases.sort_by_key(|c| c.index);
    let passed = cases.iter().filter(|c| c.pass).count();
    let summary = Summary { total: cases.len(), passed, max_dev, wall_ms: start.elapsed().as_millis() as u64 };
    Ok(ExperimentReport { config: cfg.clone(), cases, summary })
}
