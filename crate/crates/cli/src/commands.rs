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

use std::fmt;
use std::io::{self, Read, Write};
use std::path::Path;

use dqc1_core::circuit::{all_inputs, parse_bits};
use dqc1_core::engine::{decompose, decompose_heisenberg, probability_zero};
use dqc1_core::experiments::{run_experiment_with, write_report, ExperimentConfig, ExperimentKind, ReportFormat};
use dqc1_core::gadgets::{
    and_gadget, beta21_trace_terms, entangled_example, estimate_trace_with, markov_mixing_circuit, mixing_bound,
    not_gadget, padded, parity_l_compile, parity_oracle_beta, witness_check, xor_gadget, GadgetError, TracePart,
};
use dqc1_core::{
    decide, parse_bytes, print, BetaSource, Circuit, Decision, DecisionPolicy, Engine, EngineError, DEFAULT_DENSE_CAP,
};
use serde_json::json;

use crate::args::{Cli, Command, EngineArg, FormatArg, GadgetCommand, TraceArgs};

/// Largest value accepted for the dense cap.
const MAX_DENSE_CAP: usize = 16;
/// Verification loops enumerate every input up to this many bits.
const MAX_CHECKED_INPUTS: usize = 8;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Input(String),
    Tolerance(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 3,
            Failure::Input(_) => 4,
            Failure::Tolerance(_) => 5,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Input(m) => f.write_str(m),
            Failure::Tolerance(m) => write!(f, "tolerance check failed: {m}"),
        }
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Failure {
        match e {
            EngineError::Invariant(_) => Failure::Tolerance(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<GadgetError> for Failure {
    fn from(e: GadgetError) -> Failure {
        match e {
            GadgetError::Engine(inner) => inner.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn emit(text: &str) {
    let mut out = io::stdout().lock();
    // a closed pipe downstream is not an error for us
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn emit_json(v: &serde_json::Value) {
    emit(&format!("{}\n", serde_json::to_string_pretty(v).expect("json values serialize")));
}

fn engine_from(cli_cap: Option<usize>) -> Result<Engine, Failure> {
    let cap = match cli_cap {
        Some(c) => c,
        None => match std::env::var("DQC1_DENSE_CAP") {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("DQC1_DENSE_CAP must be a positive integer, got {v:?}")))?,
            Err(_) => DEFAULT_DENSE_CAP,
        },
    };
    if cap == 0 || cap > MAX_DENSE_CAP {
        return Err(Failure::Usage(format!("dense cap must lie in 1..={MAX_DENSE_CAP}, got {cap}")));
    }
    Ok(Engine { dense_cap: cap, ..Engine::default() })
}

fn read_circuit(file: &str) -> Result<Circuit, Failure> {
    let (label, bytes) = if file == "-" {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf).map_err(|e| Failure::Input(format!("<stdin>: {e}")))?;
        ("<stdin>", buf)
    } else {
        (file, std::fs::read(file).map_err(|e| Failure::Input(format!("{file}: {e}")))?)
    };
    parse_bytes(&bytes).map_err(|e| Failure::Input(format!("{label}:{e}")))
}

fn input_bits(c: &Circuit, input: &str) -> Result<Vec<bool>, Failure> {
    let x =
        parse_bits(input).map_err(|_| Failure::Usage(format!("--input must be a string of 0 and 1, got {input:?}")))?;
    if x.len() != c.input_len() {
        return Err(Failure::Input(format!("circuit reads {} input bits, --input has {}", c.input_len(), x.len())));
    }
    Ok(x)
}

fn policy(q: f64) -> Result<DecisionPolicy, Failure> {
    DecisionPolicy::with_q(q).map_err(|e| Failure::Usage(e.to_string()))
}

fn decision_code(d: Decision) -> u8 {
    match d {
        Decision::Accept => 0,
        Decision::Reject => 1,
        Decision::Undetermined => 2,
    }
}

fn decision_name(d: Decision) -> &'static str {
    match d {
        Decision::Accept => "accept",
        Decision::Reject => "reject",
        Decision::Undetermined => "undetermined",
    }
}

const R_TRACE_TOL: f64 = 1e-10;

fn run(engine: &Engine, file: &str, input: &str, kind: EngineArg, as_json: bool) -> Result<u8, Failure> {
    let c = read_circuit(file)?;
    let x = input_bits(&c, input)?;
    let d = match kind {
        EngineArg::Dense => decompose(&engine.dense_run(&c, &x)?),
        EngineArg::Pauli => decompose_heisenberg(&engine.pauli_run(&c, &x)?),
    };
    let p0 = probability_zero(d.beta)?;
    let traces = d.r_part.as_ref().map(|r| {
        let (tr, z1r) = r.normalized_traces();
        (tr.norm(), z1r.norm())
    });
    if as_json {
        emit_json(&json!({
            "engine": match kind { EngineArg::Dense => "dense", EngineArg::Pauli => "pauli" },
            "input": input,
            "beta": d.beta,
            "p0": p0,
            "r_defined": d.defined_r(),
            "r_trace": traces.map(|t| t.0),
            "r_z1_trace": traces.map(|t| t.1),
        }));
    } else {
        let mut text = format!("beta = {}\np0 = {}\n", d.beta, p0);
        match traces {
            Some((a, b)) => text.push_str(&format!("R defined, |Tr R|/2^w = {a:e}, |Tr Z1 R|/2^w = {b:e}\n")),
            None => text.push_str("R undefined (beta^2 = 1)\n"),
        }
        emit(&text);
    }
    if let Some((a, b)) = traces {
        if a > R_TRACE_TOL || b > R_TRACE_TOL {
            return Err(Failure::Tolerance(format!("workspace part is not traceless ({a:e}, {b:e})")));
        }
    }
    Ok(0)
}

fn sample(
    engine: &Engine,
    file: &str,
    input: &str,
    shots: u64,
    seed: u64,
    q: Option<f64>,
    as_json: bool,
) -> Result<u8, Failure> {
    let c = read_circuit(file)?;
    let x = input_bits(&c, input)?;
    let pol = q.map(policy).transpose()?;
    let counts = engine.sample(&c, &x, shots, seed)?;
    let beta_hat = counts.beta_hat();
    let decision = pol.map(|p| decide(beta_hat, &p));
    if as_json {
        emit_json(&json!({
            "shots": shots,
            "seed": seed,
            "zeros": counts.zeros,
            "ones": counts.ones,
            "beta_hat": beta_hat,
            "decision": decision.map(decision_name),
        }));
    } else {
        let mut text = format!("zeros = {}\nones = {}\nbeta_hat = {beta_hat}\n", counts.zeros, counts.ones);
        if let Some(d) = decision {
            text.push_str(&format!("decision = {}\n", decision_name(d)));
        }
        emit(&text);
    }
    Ok(decision.map_or(0, decision_code))
}

fn trace_est(engine: &Engine, a: &TraceArgs) -> Result<u8, Failure> {
    let c = read_circuit(&a.file)?;
    let x = input_bits(&c, &a.input)?;
    let pol = a.q.map(policy).transpose()?;
    if !(a.confidence > 0.0 && a.confidence < 1.0) {
        return Err(Failure::Usage(format!("--confidence must lie in (0, 1), got {}", a.confidence)));
    }
    if a.shots == 0 {
        return Err(Failure::Usage("--shots must be at least 1".into()));
    }
    let part = if a.imag { TracePart::Imag } else { TracePart::Real };
    let est = estimate_trace_with(engine, &c, &x, part, a.shots, a.seed, a.confidence)?;
    let decision = pol.map(|p| decide(est.re_hat, &p));
    let label = if a.imag { "im_hat" } else { "re_hat" };
    if a.json {
        emit_json(&json!({
            "part": if a.imag { "imag" } else { "real" },
            "estimate": est.re_hat,
            "half_width": est.half_width,
            "confidence": est.confidence,
            "shots": est.shots,
            "seed": a.seed,
            "exact": est.exact,
            "decision": decision.map(decision_name),
        }));
    } else {
        let mut text = format!(
            "{label} = {} ± {} (confidence {}, {} shots, seed {})\n",
            est.re_hat, est.half_width, est.confidence, est.shots, a.seed
        );
        if let Some(exact) = est.exact {
            text.push_str(&format!("exact = {exact}\n"));
        }
        if let Some(d) = decision {
            text.push_str(&format!("decision = {}\n", decision_name(d)));
        }
        emit(&text);
    }
    Ok(decision.map_or(0, decision_code))
}

fn note(msg: &str) {
    eprintln!("{msg}");
}

fn check_truth_table(engine: &Engine, c: &Circuit, want: impl Fn(&[bool]) -> bool) -> Result<(), Failure> {
    for x in all_inputs(c.input_len()) {
        let beta = engine.dense_run(c, &x)?.beta();
        let expected = if want(&x) { -1.0 } else { 1.0 };
        if (beta - expected).abs() > 1e-12 {
            return Err(Failure::Tolerance(format!("input {x:?}: beta {beta}, expected {expected}")));
        }
    }
    note(&format!("verified: |beta| = 1 with the expected sign on all {} inputs", 1usize << c.input_len()));
    Ok(())
}

fn gadget(engine: &Engine, which: &GadgetCommand, check: bool) -> Result<u8, Failure> {
    let widen = |c: Circuit, w: usize| padded(&c, w).map_err(|e| Failure::Usage(e.to_string()));
    match which {
        GadgetCommand::And { width } => {
            let c = widen(and_gadget(), *width)?;
            emit(&print(&c));
            if check {
                check_truth_table(engine, &c, |x| x[0] && x[1])?;
            }
        }
        GadgetCommand::Xor { width } => {
            let c = widen(xor_gadget(), *width)?;
            emit(&print(&c));
            if check {
                check_truth_table(engine, &c, |x| x[0] ^ x[1])?;
            }
        }
        GadgetCommand::Not { width } => {
            let c = widen(not_gadget(), *width)?;
            emit(&print(&c));
            if check {
                check_truth_table(engine, &c, |x| !x[0])?;
            }
        }
        GadgetCommand::Entangle { width } => {
            let (c, expected) = entangled_example(*width).map_err(|e| Failure::Usage(e.to_string()))?;
            emit(&print(&c));
            if check {
                let st = engine.dense_run(&c, &[])?;
                let want = expected.to_dense(engine.dense_cap).map_err(|e| Failure::Input(e.to_string()))?;
                let dev = st.matrix().max_abs_diff(&want);
                let rep = witness_check(&st)?;
                note(&format!("state deviation {dev:e}, v1 = {:.3e}, v2 = {:.3e}", rep.v1, rep.v2));
                if dev > 1e-12 || !rep.entangled {
                    return Err(Failure::Tolerance("entangled example does not match its expansion".into()));
                }
            }
        }
        GadgetCommand::ParityL { file } => {
            let c = read_circuit(file)?;
            let compiled = parity_l_compile(&c)?;
            emit(&print(&compiled));
            if check {
                if compiled.width() > engine.dense_cap || c.input_len() > MAX_CHECKED_INPUTS {
                    note("check skipped: circuit too large for exhaustive dense verification");
                    return Ok(0);
                }
                for x in all_inputs(c.input_len()) {
                    let beta = engine.dense_run(&compiled, &x)?.beta();
                    let want = parity_oracle_beta(&c, &x)?;
                    if (beta - want).abs() > 1e-12 {
                        return Err(Failure::Tolerance(format!("input {x:?}: beta {beta}, classical oracle {want}")));
                    }
                }
                note(&format!("verified against the classical oracle on {} inputs", 1usize << c.input_len()));
            }
        }
        GadgetCommand::Mixing { file, s } => {
            if *s == 0 {
                return Err(Failure::Usage("--s must be at least 1".into()));
            }
            let u = read_circuit(file)?;
            let m = markov_mixing_circuit(&u, *s)?;
            emit(&print(&m));
            if check {
                if m.width() > engine.dense_cap || u.input_len() > MAX_CHECKED_INPUTS {
                    note("check skipped: circuit too large for exhaustive dense verification");
                    return Ok(0);
                }
                let bound = mixing_bound(*s);
                let mut worst: f64 = 0.0;
                for x in all_inputs(u.input_len()) {
                    let mixed = engine.dense_run(&m, &x)?.beta();
                    let b21: f64 = beta21_trace_terms(engine, &u, &x)?.iter().sum();
                    worst = worst.max((mixed - b21 / 3.0).abs());
                }
                note(&format!("max |beta - beta21/3| = {worst:e}, bound {bound:e}"));
                if worst > bound + 1e-9 {
                    return Err(Failure::Tolerance(format!("mixing gap {worst:e} exceeds {bound:e}")));
                }
            }
        }
    }
    Ok(0)
}

fn experiment(
    engine: &Engine,
    kind: &str,
    config: Option<&Path>,
    seed: Option<u64>,
    out: Option<&Path>,
    format: Option<FormatArg>,
) -> Result<u8, Failure> {
    let kind: ExperimentKind = kind.parse().map_err(Failure::Usage)?;
    let mut cfg = match config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            serde_json::from_str::<ExperimentConfig>(&text)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
        }
        None => ExperimentConfig::default(),
    };
    cfg.kind = kind;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    let format = match format {
        Some(FormatArg::Json) => ReportFormat::Json,
        Some(FormatArg::Csv) => ReportFormat::Csv,
        None if out.is_some_and(|p| p.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"))) => ReportFormat::Csv,
        None => ReportFormat::Json,
    };
    if out.is_none() && format == ReportFormat::Csv {
        return Err(Failure::Usage("CSV reports need --out".into()));
    }
    let report = run_experiment_with(engine, &cfg).map_err(|e| Failure::Input(e.to_string()))?;
    match out {
        Some(path) => {
            write_report(&report, path, format).map_err(|e| Failure::Input(e.to_string()))?;
            emit(&format!(
                "{}: {}/{} passed, max deviation {:e}, seed {}, report {}\n",
                kind,
                report.summary.passed,
                report.summary.total,
                report.summary.max_dev,
                cfg.seed,
                path.display()
            ));
        }
        None => emit(&format!("{}\n", report.to_json().map_err(|e| Failure::Input(e.to_string()))?)),
    }
    if report.all_passed() {
        Ok(0)
    } else {
        Err(Failure::Tolerance(format!(
            "{} of {} cases failed",
            report.summary.total - report.summary.passed,
            report.summary.total
        )))
    }
}

pub fn dispatch(cli: Cli) -> Result<u8, Failure> {
    let engine = engine_from(cli.dense_cap)?;
    match cli.command {
        Command::Validate { file } => {
            let c = read_circuit(&file)?;
            emit(&print(&c));
            Ok(0)
        }
        Command::Run { file, input, engine: kind, json } => run(&engine, &file, &input, kind, json),
        Command::Sample { file, input, shots, seed, q, json } => {
            if shots == 0 {
                return Err(Failure::Usage("--shots must be at least 1".into()));
            }
            sample(&engine, &file, &input, shots, seed, q, json)
        }
        Command::TraceEst(args) => trace_est(&engine, &args),
        Command::Gadget { which, no_check } => gadget(&engine, &which, !no_check),
        Command::Experiment { kind, config, seed, out, format } => {
            experiment(&engine, &kind, config.as_deref(), seed, out.as_deref(), format)
        }
    }
}
