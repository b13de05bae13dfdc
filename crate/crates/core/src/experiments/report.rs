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

//! Report records and their JSON / CSV persistence.

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{ExperimentConfig, ExperimentError};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub index: usize,
    pub input: String,
    pub measured: Option<f64>,
    pub oracle: Option<f64>,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub max_dev: f64,
    /// Excluded from determinism comparisons.
    pub wall_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub cases: Vec<CaseRecord>,
    pub summary: Summary,
}

impl ExperimentReport {
    pub fn all_passed(&self) -> bool {
        self.summary.passed == self.summary.total
    }

    /// Copy with the wall-time field zeroed, for byte comparisons.
    pub fn without_wall_time(&self) -> ExperimentReport {
        let mut r = self.clone();
        r.summary.wall_ms = 0;
        r
    }

    pub fn to_json(&self) -> Result<String, ExperimentError> {
        serde_json::to_string_pretty(self).map_err(|e| ExperimentError::Json(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<ExperimentReport, ExperimentError> {
        serde_json::from_str(s).map_err(|e| ExperimentError::Json(e.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<ReportFormat, String> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(format!("unknown report format {other:?}")),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Json => "json",
            ReportFormat::Csv => "csv",
        })
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    index: usize,
    input: &'a str,
    measured: Option<f64>,
    oracle: Option<f64>,
    pass: bool,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> ExperimentError + '_ {
    move |e| ExperimentError::Io { path: PathBuf::from(path), message: e.to_string() }
}

/// Writes the report; CSV holds one row per case under an
/// `index,input,measured,oracle,pass` header.
pub fn write_report(r: &ExperimentReport, path: &Path, format: ReportFormat) -> Result<(), ExperimentError> {
    let file = File::create(path).map_err(io_err(path))?;
    match format {
        ReportFormat::Json => {
            let mut out = BufWriter::new(file);
            out.write_all(r.to_json()?.as_bytes()).map_err(io_err(path))?;
            out.write_all(b"\n").map_err(io_err(path))?;
            out.flush().map_err(io_err(path))
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(file);
            if r.cases.is_empty() {
                w.write_record(["index", "input", "measured", "oracle", "pass"])
                    .map_err(|e| ExperimentError::Csv(e.to_string()))?;
            }
            for c in &r.cases {
                w.serialize(CsvRow {
                    index: c.index,
                    input: &c.input,
                    measured: c.measured,
                    oracle: c.oracle,
                    pass: c.pass,
                })
                .map_err(|e| ExperimentError::Csv(e.to_string()))?;
            }
            w.flush().map_err(io_err(path))
        }
    }
}

pub fn read_report(path: &Path) -> Result<ExperimentReport, ExperimentError> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    ExperimentReport::from_json(&text)
}
