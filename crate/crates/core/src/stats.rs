//! Counting and sampling experiments on random sequences.
//!
//! `T_n^(k)(m)` is the number of length-`n` sequences over `F_q` with
//! `N^(k) <= m`. Each such sequence is fixed by a feedback polynomial and
//! `m` initial values, so `T_n^(k)(m) <= q^((k+1)^m + m)`; [`exhaustive_count`]
//! checks this by enumerating every sequence. [`monte_carlo_profile`] samples
//! random sequences and tabulates `N_n^(k)` against `log n / log(k+1)`.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::complexity::{Analyzer, ComplexityError};
use crate::field::{Field, FieldError};
use crate::generators::random_values;
use crate::sequence::Sequence;

/// Largest number of sequences [`exhaustive_count`] will enumerate.
pub const COUNT_GUARD: u64 = 1 << 22;

#[derive(Debug, Error)]
pub enum StatsError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Complexity(#[from] ComplexityError),
    #[error("guard: q^n = {q}^{n} exceeds {limit}")]
    CountGuard { q: u32, n: usize, limit: u64 },
    #[error("m = {m} must be at most n - 1 = {max}")]
    BadM { m: usize, max: usize },
    #[error("n must be at least 1")]
    EmptyLength,
    #[error("need at least one sample")]
    NoSamples,
    #[error("empty length grid")]
    EmptyGrid,
    #[error("slope needs at least 3 distinct grid points, got {0}")]
    DegenerateGrid(usize),
}

/// `q^exponent`, printed exactly when it fits in 128 bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PowerBound {
    pub base: u32,
    pub exponent: u64,
}

impl PowerBound {
    pub fn value(self) -> Option<u128> {
        (self.base as u128).checked_pow(u32::try_from(self.exponent).ok()?)
    }

    pub fn admits(self, count: u64) -> bool {
        self.value().is_none_or(|v| count as u128 <= v)
    }
}

impl fmt::Display for PowerBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "{}^{}", self.base, self.exponent),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountResult {
    pub q: u32,
    pub k: u32,
    pub n: usize,
    pub m: usize,
    pub count: u64,
    pub bound: PowerBound,
    pub pass: bool,
}

impl CountResult {
    pub fn csv_row(&self) -> String {
        format!("{},{},{},{},{},{},{}", self.q, self.k, self.n, self.m, self.count, self.bound, self.pass)
    }
}

pub const COUNT_CSV_HEADER: &str = "q,k,n,m,count,bound,pass";

/// `q^((k+1)^m + m)`.
pub fn counting_bound(q: u32, k: u32, m: usize) -> PowerBound {
    let exponent = (k as u64 + 1)
        .checked_pow(m as u32)
        .and_then(|p| p.checked_add(m as u64))
        .unwrap_or(u64::MAX);
    PowerBound { base: q, exponent }
}

fn decode_sequence(mut code: u64, q: u64, n: usize) -> Vec<u32> {
    (0..n)
        .map(|_| {
            let v = (code % q) as u32;
            code /= q;
            v
        })
        .collect()
}

/// `hist[v]` = number of length-`n` sequences with `N^(k) = v`.
///
/// Sequences are enumerated by integer encoding with `s_1` least
/// significant, split into contiguous ranges across workers.
pub fn complexity_histogram(field: &Field, k: u32, n: usize, analyzer: &Analyzer) -> Result<Vec<u64>, StatsError> {
    if n == 0 {
        return Err(StatsError::EmptyLength);
    }
    let q = field.q() as u64;
    let total = q
        .checked_pow(n as u32)
        .filter(|&t| t <= COUNT_GUARD)
        .ok_or(StatsError::CountGuard { q: field.q(), n, limit: COUNT_GUARD })?;
    let analyzer = analyzer.without_witness();
    let chunk = 1024u64;
    let shards: Vec<Result<Vec<u64>, StatsError>> = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|shard| {
            let mut hist = vec![0u64; n + 1];
            for code in shard * chunk..((shard + 1) * chunk).min(total) {
                let s = Sequence::explicit(field, &decode_sequence(code, q, n)).expect("in range");
                hist[analyzer.nonlinear(&s, k)?.value] += 1;
            }
            Ok(hist)
        })
        .collect();
    let mut hist = vec![0u64; n + 1];
    for shard in shards {
        for (h, v) in hist.iter_mut().zip(shard?) {
            *h += v;
        }
    }
    Ok(hist)
}

/// `T_n^(k)(m)` by enumeration, compared with the counting bound.
pub fn exhaustive_count(q: u32, k: u32, n: usize, m: usize, analyzer: &Analyzer) -> Result<CountResult, StatsError> {
    if n == 0 {
        return Err(StatsError::EmptyLength);
    }
    if m > n.saturating_sub(1) {
        return Err(StatsError::BadM { m, max: n - 1 });
    }
    let total = (q as u64).checked_pow(n as u32);
    if total.is_none_or(|t| t > COUNT_GUARD) {
        return Err(StatsError::CountGuard { q, n, limit: COUNT_GUARD });
    }
    let field = Field::of_order(q as u64)?;
    let hist = complexity_histogram(&field, k, n, analyzer)?;
    Ok(count_from_histogram(q, k, n, m, &hist))
}

pub fn count_from_histogram(q: u32, k: u32, n: usize, m: usize, hist: &[u64]) -> CountResult {
    let count = hist.iter().take(m + 1).sum();
    let bound = counting_bound(q, k, m);
    CountResult { q, k, n, m, count, bound, pass: bound.admits(count) }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProfileRow {
    pub n: usize,
    pub mean: f64,
    pub min: usize,
    pub max: usize,
    pub p05: usize,
    pub p50: usize,
    pub p95: usize,
    /// `ln n / ln(k+1)`.
    pub reference: f64,
    /// Fraction of samples with `N_n^(k) < reference - 1`.
    pub below: f64,
}

impl ProfileRow {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{:.6},{},{},{},{},{},{:.6}",
            self.n, self.mean, self.min, self.max, self.p05, self.p50, self.p95, self.reference
        )
    }
}

pub const PROFILE_CSV_HEADER: &str = "n,mean,min,max,p05,p50,p95,ref";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProfileStats {
    pub q: u32,
    pub k: u32,
    pub grid: Vec<usize>,
    pub samples: usize,
    pub seed: u64,
    pub rows: Vec<ProfileRow>,
    /// `values[j][i]`: sample `i` at grid point `j`.
    #[serde(skip)]
    pub values: Vec<Vec<usize>>,
}

impl ProfileStats {
    /// Fraction of samples at grid point `j` strictly below `threshold`.
    pub fn fraction_below(&self, j: usize, threshold: f64) -> f64 {
        let v = &self.values[j];
        v.iter().filter(|&&x| (x as f64) < threshold).count() as f64 / v.len() as f64
    }
}

pub fn reference_curve(n: usize, k: u32) -> f64 {
    (n as f64).ln() / (k as f64 + 1.0).ln()
}

/// Nearest-rank percentile of sorted data.
fn percentile(sorted: &[usize], p: f64) -> usize {
    let rank = ((p / 100.0) * sorted.len() as f64).ceil() as usize;
    sorted[rank.clamp(1, sorted.len()) - 1]
}

/// `N_n^(k)` of `samples` random sequences at each length of `grid`.
/// Sample `i` reads stream `i` of `seed`, so results do not depend on the
/// number of worker threads.
pub fn monte_carlo_profile(
    field: &Field,
    k: u32,
    grid: &[usize],
    samples: usize,
    seed: u64,
    analyzer: &Analyzer,
) -> Result<ProfileStats, StatsError> {
    if samples == 0 {
        return Err(StatsError::NoSamples);
    }
    let mut grid = grid.to_vec();
    grid.sort_unstable();
    grid.dedup();
    if grid.is_empty() {
        return Err(StatsError::EmptyGrid);
    }
    if grid[0] == 0 {
        return Err(StatsError::EmptyLength);
    }
    let len = *grid.last().unwrap();
    let per_sample: Vec<Result<Vec<usize>, StatsError>> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let s = Sequence::explicit(field, &random_values(field, len, seed, i)).expect("in range");
            Ok(analyzer.profile_at(&s, k, crate::complexity::Measure::Nk, &grid)?)
        })
        .collect();
    let mut values = vec![Vec::with_capacity(samples); grid.len()];
    for r in per_sample {
        for (j, v) in r?.into_iter().enumerate() {
            values[j].push(v);
        }
    }
    let rows = grid
        .iter()
        .zip(&values)
        .map(|(&n, vals)| {
            let mut sorted = vals.clone();
            sorted.sort_unstable();
            let reference = reference_curve(n, k);
            ProfileRow {
                n,
                mean: vals.iter().sum::<usize>() as f64 / vals.len() as f64,
                min: sorted[0],
                max: *sorted.last().unwrap(),
                p05: percentile(&sorted, 5.0),
                p50: percentile(&sorted, 50.0),
                p95: percentile(&sorted, 95.0),
                reference,
                below: vals.iter().filter(|&&v| (v as f64) < reference - 1.0).count() as f64 / vals.len() as f64,
            }
        })
        .collect();
    Ok(ProfileStats { q: field.q(), k, grid, samples, seed, rows, values })
}

/// Least-squares slope of the mean profile against `ln n`: an empirical
/// estimate of the growth constant, reported without any claim attached.
pub fn empirical_constant(stats: &ProfileStats) -> Result<f64, StatsError> {
    let pts: Vec<(f64, f64)> = stats.rows.iter().map(|r| ((r.n as f64).ln(), r.mean)).collect();
    if pts.len() < 3 {
        return Err(StatsError::DegenerateGrid(pts.len()));
    }
    let len = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / len;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / len;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(StatsError::DegenerateGrid(pts.len()));
    }
    Ok(sxy / sxx)
}
