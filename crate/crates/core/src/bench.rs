//! Per-term timing of the `D` backends.
//!
//! Each backend extends a fresh memoized generator from `D_0` to `D_{x_max}`
//! and the time of every single extension is recorded. Runs are repeated and
//! the per-term minimum is kept, which filters most scheduler noise.
//! Backends run one after another so they never compete for a core.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::sequence::{Backend, SequenceGenerator};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub backend: Backend,
    pub x_max: i64,
    pub repeats: usize,
    /// Largest numerator bit length among `D_{-1} ..= D_{x_max}`.
    pub peak_numerator_bits: u64,
    /// Timing fields below are wall-clock measurements.
    pub total_seconds: f64,
    /// Seconds spent computing `D_x`, for `x = 0 ..= x_max`.
    pub per_term_seconds: Vec<f64>,
}

impl BenchReport {
    /// Mean per-term cost of the last quarter minus that of the first
    /// quarter, in seconds: how much more a late term costs than an early one.
    pub fn growth(&self) -> f64 {
        let n = self.per_term_seconds.len();
        if n < 4 {
            return 0.0;
        }
        let q = n / 4;
        let mean = |s: &[f64]| s.iter().sum::<f64>() / s.len() as f64;
        mean(&self.per_term_seconds[n - q..]) - mean(&self.per_term_seconds[..q])
    }
}

fn run_once(backend: Backend, x_max: i64) -> Result<(Vec<f64>, u64)> {
    let mut generator = SequenceGenerator::d(backend);
    let mut per_term = Vec::with_capacity((x_max + 1).max(0) as usize);
    let mut peak = 1;
    while generator.last_index() < x_max {
        let start = Instant::now();
        let value = generator.next_value()?;
        per_term.push(start.elapsed().as_secs_f64());
        peak = peak.max(value.numer_bits());
    }
    Ok((per_term, peak))
}

/// Times one backend; `repeats` is clamped to at least one run.
pub fn bench_backend(backend: Backend, x_max: i64, repeats: usize) -> Result<BenchReport> {
    let repeats = repeats.max(1);
    let mut best: Option<Vec<f64>> = None;
    let mut best_total = f64::INFINITY;
    let mut peak = 0;
    for _ in 0..repeats {
        let (per_term, bits) = run_once(backend, x_max)?;
        peak = bits;
        best_total = best_total.min(per_term.iter().sum());
        best = Some(match best {
            None => per_term,
            Some(prev) => prev.iter().zip(&per_term).map(|(a, b)| a.min(*b)).collect(),
        });
    }
    Ok(BenchReport {
        backend,
        x_max,
        repeats,
        peak_numerator_bits: peak,
        total_seconds: best_total,
        per_term_seconds: best.unwrap_or_default(),
    })
}

/// Times each backend over the same index range, in the order given.
pub fn bench(backends: &[Backend], x_max: i64, repeats: usize) -> Result<Vec<BenchReport>> {
    backends.iter().map(|&b| bench_backend(b, x_max, repeats)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_shape() {
        let reports = bench(&[Backend::LinearUnit, Backend::Nonlinear], 8, 2).unwrap();
        assert_eq!(reports.len(), 2);
        for r in &reports {
            assert_eq!(r.per_term_seconds.len(), 9);
            assert_eq!(r.x_max, 8);
            assert!(r.total_seconds >= 0.0);
            assert!(r.peak_numerator_bits >= 1);
        }
    }

    #[test]
    fn empty_range() {
        let r = bench_backend(Backend::LinearEmpty, -1, 1).unwrap();
        assert!(r.per_term_seconds.is_empty());
        assert_eq!(r.growth(), 0.0);
    }
}
