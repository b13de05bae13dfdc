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

//! Two-sided Hoeffding bounds for `±1`-valued shot averages.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatsError {
    #[error("{name} must lie in (0, {upper}), got {value}")]
    OutOfRange { name: &'static str, value: f64, upper: f64 },
    #[error("shot count must be at least 1")]
    NoShots,
}

fn open_unit(name: &'static str, value: f64, upper: f64) -> Result<(), StatsError> {
    if value > 0.0 && value <= upper && value.is_finite() {
        Ok(())
    } else {
        Err(StatsError::OutOfRange { name, value, upper })
    }
}

/// Smallest `N` with `2·exp(-N ε² / 2) ≤ δ`.
///
/// Both arguments are accepted up to and including 1.
pub fn shots_required(epsilon: f64, delta: f64) -> Result<u64, StatsError> {
    open_unit("epsilon", epsilon, 1.0)?;
    open_unit("delta", delta, 1.0)?;
    let exact = 2.0 / (epsilon * epsilon) * (2.0 / delta).ln();
    let mut n = exact.ceil().max(1.0) as u64;
    // the float ceiling can land one off in either direction
    while n > 1 && satisfies(n - 1, epsilon, delta) {
        n -= 1;
    }
    while !satisfies(n, epsilon, delta) {
        n += 1;
    }
    Ok(n)
}

fn satisfies(n: u64, epsilon: f64, delta: f64) -> bool {
    2.0 * (-(n as f64) * epsilon * epsilon / 2.0).exp() <= delta
}

/// Half-width `ε` of the interval `β̂ ± ε` holding with probability at least `confidence`.
pub fn hoeffding_half_width(shots: u64, confidence: f64) -> Result<f64, StatsError> {
    if shots == 0 {
        return Err(StatsError::NoShots);
    }
    open_unit("confidence", confidence, 1.0)?;
    if confidence >= 1.0 {
        return Err(StatsError::OutOfRange { name: "confidence", value: confidence, upper: 1.0 });
    }
    let delta = 1.0 - confidence;
    Ok((2.0 * (2.0 / delta).ln() / shots as f64).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frozen_shot_counts() {
        assert_eq!(shots_required(1.0, 1.0).unwrap(), 2);
        assert_eq!(shots_required(0.1, 0.01).unwrap(), 1060);
        assert_eq!(shots_required(0.05, 0.01).unwrap(), 4239);
    }

    #[test]
    fn monotone_in_epsilon() {
        let mut last = 0;
        for k in (1..=100).rev() {
            let n = shots_required(k as f64 / 100.0, 0.05).unwrap();
            assert!(n >= last);
            last = n;
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(shots_required(0.0, 0.5).is_err());
        assert!(shots_required(0.5, 1.5).is_err());
        assert!(shots_required(f64::NAN, 0.5).is_err());
        assert!(hoeffding_half_width(0, 0.9).is_err());
        assert!(hoeffding_half_width(10, 1.0).is_err());
    }

    #[test]
    fn half_width_inverts_shot_count() {
        let n = shots_required(0.05, 0.01).unwrap();
        let hw = hoeffding_half_width(n, 0.99).unwrap();
        assert!(hw <= 0.05 && hw > 0.0499);
    }
}
