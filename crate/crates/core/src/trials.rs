//! Trial records and correlation estimates.
//!
//! A [`TrialRecord`] is the experimental artifact: the long list of +-1 pairs
//! Alice and Bob write down. A [`CorrelationEstimate`] summarizes such a
//! record (or an exact computation) into single-side means, the product mean,
//! and its standard error.
//!
//! Outcome sums are accumulated as integers, so a record's summary is
//! bit-for-bit identical to any estimator that consumed the same outcome
//! stream, regardless of evaluation order.

use std::fmt::Write as _;

use serde::Serialize;

use crate::scalar::Real;
use crate::sign::Sign;
use crate::tensor3::UnitVector3;

/// Expectation values of one settings pair, with sampling metadata.
///
/// For exact computations `n_trials` is 0 and `std_error_ab` is 0.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CorrelationEstimate<T> {
    pub mean_a: T,
    pub mean_b: T,
    pub mean_ab: T,
    pub n_trials: u64,
    pub std_error_ab: T,
}

impl<T: Real> CorrelationEstimate<T> {
    /// An exact (non-sampled) result.
    pub fn exact(mean_a: T, mean_b: T, mean_ab: T) -> Self {
        CorrelationEstimate {
            mean_a,
            mean_b,
            mean_ab,
            n_trials: 0,
            std_error_ab: T::zero(),
        }
    }

    /// Summary of a stream of +-1 outcome pairs.
    pub fn from_sign_pairs<I: IntoIterator<Item = (Sign, Sign)>>(pairs: I) -> Self {
        let mut acc = PairAccumulator::new();
        for pair in pairs {
            acc.push(pair);
        }
        acc.finish()
    }
}

/// Streaming accumulator over +-1 outcome pairs.
///
/// Sums are kept as integers, so the summary of a stream is exact and
/// independent of how the stream was produced or chunked. Since each
/// per-trial product is +-1, the sample variance of the product reduces to
/// `(n - sum^2/n) / (n - 1)`, computed from the integer sums at the end.
#[derive(Clone, Copy, Debug, Default)]
pub struct PairAccumulator {
    sum_a: i64,
    sum_b: i64,
    sum_ab: i64,
    n: u64,
}

impl PairAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, (s, t): (Sign, Sign)) {
        self.sum_a += i64::from(s.value());
        self.sum_b += i64::from(t.value());
        self.sum_ab += i64::from((s * t).value());
        self.n += 1;
    }

    pub fn finish<T: Real>(self) -> CorrelationEstimate<T> {
        if self.n == 0 {
            return CorrelationEstimate::exact(T::zero(), T::zero(), T::zero());
        }
        let nf = T::from_u64(self.n).expect("trial count fits scalar");
        let mean = |sum: i64| T::from_i64(sum).expect("sum fits scalar") / nf;
        let std_error_ab = if self.n > 1 {
            let sum_f = T::from_i64(self.sum_ab).expect("sum fits scalar");
            let variance = (nf - sum_f * sum_f / nf) / (nf - T::one());
            (variance / nf).sqrt()
        } else {
            T::zero()
        };
        CorrelationEstimate {
            mean_a: mean(self.sum_a),
            mean_b: mean(self.sum_b),
            mean_ab: mean(self.sum_ab),
            n_trials: self.n,
            std_error_ab,
        }
    }
}

/// A seeded sequence of +-1 outcome pairs at fixed settings.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialRecord<T> {
    pub a: UnitVector3<T>,
    pub b: UnitVector3<T>,
    pub seed: u64,
    outcomes: Vec<(Sign, Sign)>,
}

impl<T: Real> TrialRecord<T> {
    pub fn new(a: UnitVector3<T>, b: UnitVector3<T>, seed: u64, outcomes: Vec<(Sign, Sign)>) -> Self {
        TrialRecord {
            a,
            b,
            seed,
            outcomes,
        }
    }

    pub fn outcomes(&self) -> &[(Sign, Sign)] {
        &self.outcomes
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    pub fn summary(&self) -> CorrelationEstimate<T> {
        CorrelationEstimate::from_sign_pairs(self.outcomes.iter().copied())
    }

    /// CSV rendering: a header row, then `trial_index,a_outcome,b_outcome`.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(24 + 8 * self.outcomes.len());
        out.push_str("trial_index,a_outcome,b_outcome\n");
        for (i, (s, t)) in self.outcomes.iter().enumerate() {
            let _ = writeln!(out, "{},{},{}", i, s.value(), t.value());
        }
        out
    }
}
