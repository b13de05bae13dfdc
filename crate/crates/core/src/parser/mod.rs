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

//! Line-oriented text format for circuits (`.dqc1` files).
//!
//! ```text
//! # AND of two input bits
//! width 1
//! inputs 2
//! pair 1 { } { h 1 }
//! pair 2 { } { z 1 }
//! pair 1 { } { h 1 }
//! ```
//!
//! Grammar:
//!
//! ```text
//! file   := header stmt*
//! header := "width" INT NL "inputs" INT NL
//! stmt   := gate NL | "if" INT block NL | "pair" INT block block NL
//! block  := "{" (gate (";" gate)*)? "}"
//! gate   := NAME INT+
//! ```
//!
//! `#` starts a comment. Gate names and keywords are case-insensitive. Both LF
//! and CRLF line endings are accepted.

mod random;

pub use random::{random_circuit, Alphabet};

use std::fmt;

use crate::circuit::{Circuit, Gate, GateKind, Instruction, MAX_CTRL_DEPTH};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SourceErrorKind {
    Syntax,
    UnknownGate,
    QubitOutOfRange,
    BitOutOfRange,
    DuplicateQubit,
    ArityMismatch,
}

impl fmt::Display for SourceErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SourceErrorKind::Syntax => "syntax error",
            SourceErrorKind::UnknownGate => "unknown gate",
            SourceErrorKind::QubitOutOfRange => "qubit out of range",
            SourceErrorKind::BitOutOfRange => "input bit out of range",
            SourceErrorKind::DuplicateQubit => "duplicate qubit",
            SourceErrorKind::ArityMismatch => "arity mismatch",
        };
        f.write_str(s)
    }
}

/// A parse or validation failure, positioned at 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceError {
    pub line: usize,
    pub column: usize,
    pub kind: SourceErrorKind,
    pub message: String,
}

impl fmt::Display for SourceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}: {}", self.line, self.column, self.kind, self.message)
    }
}

impl std::error::Error for SourceError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok<'a> {
    Word(&'a str),
    Int(&'a str),
    Open,
    Close,
    Semi,
}

#[derive(Clone, Debug)]
struct Token<'a> {
    tok: Tok<'a>,
    column: usize,
}

fn err(line: usize, column: usize, kind: SourceErrorKind, message: impl Into<String>) -> SourceError {
    SourceError { line, column, kind, message: message.into() }
}

fn tokenize(line_no: usize, text: &str) -> Result<Vec<Token<'_>>, SourceError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    let col = |byte: usize| text[..byte].chars().count() + 1;
    while let Some(&(start, ch)) = chars.peek() {
        match ch {
            '#' => break,
            c if c.is_whitespace() => {
                chars.next();
            }
            '{' | '}' | ';' => {
                chars.next();
                let tok = match ch {
                    '{' => Tok::Open,
                    '}' => Tok::Close,
                    _ => Tok::Semi,
                };
                out.push(Token { tok, column: col(start) });
            }
            c if c.is_ascii_digit() => {
                let mut end = start;
                while let Some(&(i, d)) = chars.peek() {
                    if d.is_ascii_digit() {
                        end = i + d.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                if let Some(&(i, d)) = chars.peek() {
                    if d.is_ascii_alphabetic() || d == '-' || d == '_' {
                        return Err(err(line_no, col(i), SourceErrorKind::Syntax, "malformed integer"));
                    }
                }
                out.push(Token { tok: Tok::Int(&text[start..end]), column: col(start) });
            }
            c if c.is_ascii_alphabetic() => {
                let mut end = start;
                while let Some(&(i, d)) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '-' || d == '_' {
                        end = i + d.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token { tok: Tok::Word(&text[start..end]), column: col(start) });
            }
            other => {
                return Err(err(
                    line_no,
                    col(start),
                    SourceErrorKind::Syntax,
                    format!("unexpected character {other:?}"),
                ));
            }
        }
    }
    Ok(out)
}

struct LineParser<'a, 't> {
    line: usize,
    toks: &'t [Token<'a>],
    pos: usize,
    /// Column just past the end of the line, for "expected more" errors.
    end_column: usize,
    width: usize,
    inputs: usize,
}

impl<'a, 't> LineParser<'a, 't> {
    fn peek(&self) -> Option<&Token<'a>> {
        self.toks.get(self.pos)
    }

    fn column(&self) -> usize {
        self.peek().map_or(self.end_column, |t| t.column)
    }

    fn syntax(&self, message: impl Into<String>) -> SourceError {
        err(self.line, self.column(), SourceErrorKind::Syntax, message)
    }

    fn int(&mut self, what: &str) -> Result<(usize, usize), SourceError> {
        match self.peek() {
            Some(Token { tok: Tok::Int(s), column }) => {
                let column = *column;
                let v = s
                    .parse::<usize>()
                    .map_err(|_| err(self.line, column, SourceErrorKind::Syntax, "integer too large"))?;
                self.pos += 1;
                Ok((v, column))
            }
            _ => Err(self.syntax(format!("expected {what}"))),
        }
    }

    fn expect(&mut self, want: Tok<'static>, what: &str) -> Result<(), SourceError> {
        match self.peek() {
            Some(t) if t.tok == want => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.syntax(format!("expected {what}"))),
        }
    }

    fn finish(&self) -> Result<(), SourceError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.syntax("unexpected trailing tokens")),
        }
    }

    fn bit(&mut self) -> Result<usize, SourceError> {
        let (bit, column) = self.int("input bit index")?;
        if bit == 0 || bit > self.inputs {
            return Err(err(
                self.line,
                column,
                SourceErrorKind::BitOutOfRange,
                format!("bit {bit} not in 1..={}", self.inputs),
            ));
        }
        Ok(bit)
    }

    fn gate(&mut self) -> Result<Gate, SourceError> {
        let (name, name_col) = match self.peek() {
            Some(Token { tok: Tok::Word(w), column }) => (*w, *column),
            _ => return Err(self.syntax("expected gate name")),
        };
        self.pos += 1;
        let mut controls = 0;
        let mut base = name;
        while base.len() > 5 && base[..5].eq_ignore_ascii_case("ctrl-") {
            base = &base[5..];
            controls += 1;
        }
        if controls > MAX_CTRL_DEPTH {
            return Err(err(
                self.line,
                name_col,
                SourceErrorKind::UnknownGate,
                format!("{name} nests more than {MAX_CTRL_DEPTH} controls"),
            ));
        }
        let kind = GateKind::from_name(name)
            .ok_or_else(|| err(self.line, name_col, SourceErrorKind::UnknownGate, format!("unknown gate {name:?}")))?;
        if kind.ctrl_depth() > MAX_CTRL_DEPTH {
            return Err(err(
                self.line,
                name_col,
                SourceErrorKind::UnknownGate,
                format!("{name} nests more than {MAX_CTRL_DEPTH} controls"),
            ));
        }
        let mut qubits = Vec::new();
        while let Some(Token { tok: Tok::Int(_), .. }) = self.peek() {
            let (q, column) = self.int("qubit")?;
            if q == 0 || q > self.width {
                return Err(err(
                    self.line,
                    column,
                    SourceErrorKind::QubitOutOfRange,
                    format!("qubit {q} not in 1..={}", self.width),
                ));
            }
            if qubits.contains(&q) {
                return Err(err(self.line, column, SourceErrorKind::DuplicateQubit, format!("qubit {q} repeated")));
            }
            qubits.push(q);
        }
        if qubits.len() != kind.arity() {
            return Err(err(
                self.line,
                name_col,
                SourceErrorKind::ArityMismatch,
                format!("{} takes {} qubit(s), got {}", kind.name(), kind.arity(), qubits.len()),
            ));
        }
        Ok(Gate { kind, qubits })
    }

    fn block(&mut self) -> Result<Vec<Gate>, SourceError> {
        self.expect(Tok::Open, "'{'")?;
        let mut gates = Vec::new();
        if let Some(Token { tok: Tok::Close, .. }) = self.peek() {
            self.pos += 1;
            return Ok(gates);
        }
        loop {
            gates.push(self.gate()?);
            match self.peek().map(|t| &t.tok) {
                Some(Tok::Semi) => self.pos += 1,
                Some(Tok::Close) => {
                    self.pos += 1;
                    return Ok(gates);
                }
                _ => return Err(self.syntax("expected ';' or '}'")),
            }
        }
    }

    fn statement(&mut self) -> Result<Instruction, SourceError> {
        let ins = match self.peek().map(|t| &t.tok) {
            Some(Tok::Word(w)) if w.eq_ignore_ascii_case("if") => {
                self.pos += 1;
                let bit = self.bit()?;
                Instruction::If { bit, gates: self.block()? }
            }
            Some(Tok::Word(w)) if w.eq_ignore_ascii_case("pair") => {
                self.pos += 1;
                let bit = self.bit()?;
                let zero = self.block()?;
                let one = self.block()?;
                Instruction::Pair { bit, zero, one }
            }
            _ => Instruction::Gate(self.gate()?),
        };
        self.finish()?;
        Ok(ins)
    }
}

fn header_value(line: usize, toks: &[Token<'_>], end_column: usize, keyword: &str) -> Result<usize, SourceError> {
    let mut p = LineParser { line, toks, pos: 0, end_column, width: 0, inputs: 0 };
    match p.peek() {
        Some(Token { tok: Tok::Word(w), .. }) if w.eq_ignore_ascii_case(keyword) => p.pos += 1,
        _ => return Err(p.syntax(format!("expected '{keyword}' header"))),
    }
    let (v, _) = p.int(&format!("{keyword} value"))?;
    p.finish()?;
    Ok(v)
}

/// Parses circuit source text.
pub fn parse(text: &str) -> Result<Circuit, SourceError> {
    let mut width = None;
    let mut inputs = None;
    let mut instructions = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.split('\n').enumerate() {
        let line = idx + 1;
        last_line = line;
        let body = raw.strip_suffix('\r').unwrap_or(raw);
        let toks = tokenize(line, body)?;
        if toks.is_empty() {
            continue;
        }
        let end_column = body.chars().count() + 1;
        match (width, inputs) {
            (None, _) => {
                let w = header_value(line, &toks, end_column, "width")?;
                if w == 0 {
                    return Err(err(line, toks[1].column, SourceErrorKind::Syntax, "width must be positive"));
                }
                width = Some(w);
            }
            (Some(_), None) => inputs = Some(header_value(line, &toks, end_column, "inputs")?),
            (Some(w), Some(n)) => {
                let mut p = LineParser { line, toks: &toks, pos: 0, end_column, width: w, inputs: n };
                instructions.push(p.statement()?);
            }
        }
    }
    let (Some(width), Some(inputs)) = (width, inputs) else {
        let what = if width.is_none() { "width" } else { "inputs" };
        return Err(err(last_line.max(1), 1, SourceErrorKind::Syntax, format!("missing '{what}' header")));
    };
    // Every instruction was range-checked above.
    Circuit::from_instructions(width, inputs, instructions)
        .map_err(|e| err(last_line.max(1), 1, SourceErrorKind::Syntax, e.to_string()))
}

/// Parses raw bytes, reporting invalid UTF-8 as a positioned syntax error.
pub fn parse_bytes(bytes: &[u8]) -> Result<Circuit, SourceError> {
    match std::str::from_utf8(bytes) {
        Ok(text) => parse(text),
        Err(e) => {
            let valid = std::str::from_utf8(&bytes[..e.valid_up_to()]).unwrap_or_default();
            let line = valid.matches('\n').count() + 1;
            let column = valid.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
            Err(err(line, column, SourceErrorKind::Syntax, "invalid UTF-8"))
        }
    }
}

fn gate_list(gates: &[Gate]) -> String {
    if gates.is_empty() {
        return "{ }".to_string();
    }
    let body: Vec<String> = gates.iter().map(Gate::to_string).collect();
    format!("{{ {} }}", body.join("; "))
}

/// Canonical source text; `parse(&print(c)) == Ok(c)`.
pub fn print(c: &Circuit) -> String {
    let mut out = format!("width {}\ninputs {}\n", c.width(), c.input_len());
    for ins in c.instructions() {
        match ins {
            Instruction::Gate(g) => out.push_str(&g.to_string()),
            Instruction::If { bit, gates } => out.push_str(&format!("if {bit} {}", gate_list(gates))),
            Instruction::Pair { bit, zero, one } => {
                out.push_str(&format!("pair {bit} {} {}", gate_list(zero), gate_list(one)))
            }
        }
        out.push('\n');
    }
    out
}
