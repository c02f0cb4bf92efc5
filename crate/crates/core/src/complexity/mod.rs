//! Exact complexity measures of finite sequences.
//!
//! * `N^(k)`: feedback polynomials of degree at most `k` in each variable.
//! * `L^(k)`: feedback polynomials of total degree at most `k`.
//! * linear complexity: homogeneous linear feedback (Berlekamp-Massey).
//! * maximum-order complexity: arbitrary feedback maps.
//!
//! For a nonzero sequence the nonlinear measures are the least `m >= 1`
//! admitting a feedback polynomial; `m = n - 1` always works, so values lie
//! in `0..=n-1` (a single nonzero term has value 1).

mod linear;
pub mod oracle;
pub mod solver;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::Field;
use crate::sequence::Sequence;

pub use linear::berlekamp_massey;
pub use oracle::brute_force_complexity;
use solver::{eval_monomial, feasible, Feasibility};

/// Default ceiling on the number of monomials in one linear system.
pub const DEFAULT_GUARD: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexityError {
    #[error("degree bound k must be at least 1, got {0}")]
    InvalidK(u32),
    #[error("empty sequence")]
    Empty,
    #[error("cost guard: m = {m} needs {monomials} monomials, limit {limit}")]
    CostGuard { m: usize, monomials: u64, limit: u64 },
    #[error("oracle guard: m = {m} with {monomials} monomials is too large to enumerate")]
    OracleGuard { m: usize, monomials: usize },
    #[error("{0:?} is not supported here")]
    UnsupportedMeasure(Measure),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Measure {
    #[serde(rename = "nk")]
    Nk,
    #[serde(rename = "lk")]
    Lk,
    #[serde(rename = "lin")]
    Linear,
    #[serde(rename = "moc")]
    MaxOrder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegreeMode {
    PerVariable,
    Total,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub exponents: Vec<u32>,
    pub coeff: u32,
}

/// `f(x_1, ..., x_m) = sum coeff * x^exponents`; `x_1` is applied to the
/// oldest symbol of a window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeedbackPolynomial {
    pub m: usize,
    pub mode: DegreeMode,
    pub k: u32,
    pub terms: Vec<Term>,
}

impl FeedbackPolynomial {
    pub fn new(m: usize, mode: DegreeMode, k: u32, terms: Vec<Term>) -> FeedbackPolynomial {
        debug_assert!(terms.iter().all(|t| t.exponents.len() == m
            && match mode {
                DegreeMode::PerVariable => t.exponents.iter().all(|&e| e <= k),
                DegreeMode::Total => t.exponents.iter().sum::<u32>() <= k,
            }));
        FeedbackPolynomial { m, mode, k, terms }
    }

    pub fn eval(&self, field: &Field, window: &[u32]) -> u32 {
        self.terms
            .iter()
            .fold(0, |acc, t| field.add(acc, field.mul(t.coeff, eval_monomial(field, &t.exponents, window))))
    }

    /// Runs the shift register from `initial` until `n` symbols exist.
    pub fn replay(&self, field: &Field, initial: &[u32], n: usize) -> Vec<u32> {
        let mut out = initial.to_vec();
        while out.len() < n {
            let next = self.eval(field, &out[out.len() - self.m..]);
            out.push(next);
        }
        out.truncate(n);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityReport {
    pub kind: Measure,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    pub n: usize,
    pub value: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<FeedbackPolynomial>,
}

/// Analyzer settings: the monomial cost guard and whether to build witnesses.
#[derive(Debug, Clone, Copy)]
pub struct Analyzer {
    pub guard: u64,
    pub witness: bool,
}

impl Default for Analyzer {
    fn default() -> Self {
        Analyzer { guard: DEFAULT_GUARD, witness: true }
    }
}

impl Analyzer {
    pub fn without_witness(self) -> Analyzer {
        Analyzer { witness: false, ..self }
    }

    fn search(&self, s: &Sequence, k: u32, mode: DegreeMode, start: usize) -> Result<(usize, Option<FeedbackPolynomial>), ComplexityError> {
        if k < 1 {
            return Err(ComplexityError::InvalidK(k));
        }
        let v = s.values();
        if v.is_empty() {
            return Err(ComplexityError::Empty);
        }
        if s.is_zero() {
            return Ok((0, None));
        }
        let top = (v.len() - 1).max(1);
        for m in start.max(1)..=top {
            if let Feasibility::Feasible(w) = feasible(s.field(), v, m, mode, k, self.guard, self.witness)? {
                return Ok((m, w));
            }
        }
        unreachable!("m = n - 1 is always feasible")
    }

    fn report(&self, s: &Sequence, k: u32, mode: DegreeMode) -> Result<ComplexityReport, ComplexityError> {
        let (value, witness) = self.search(s, k, mode, 1)?;
        let kind = match mode {
            DegreeMode::PerVariable => Measure::Nk,
            DegreeMode::Total => Measure::Lk,
        };
        Ok(ComplexityReport { kind, k: Some(k), n: s.len(), value, witness })
    }

    /// `N^(k)(s)`.
    pub fn nonlinear(&self, s: &Sequence, k: u32) -> Result<ComplexityReport, ComplexityError> {
        self.report(s, k, DegreeMode::PerVariable)
    }

    /// `L^(k)(s)`.
    pub fn total_degree(&self, s: &Sequence, k: u32) -> Result<ComplexityReport, ComplexityError> {
        self.report(s, k, DegreeMode::Total)
    }

    /// Complexity of every initial segment `s_1..s_n`, `n = 1..=|s|`.
    ///
    /// Each search starts at the previous value, since a feedback polynomial
    /// for a segment also serves every shorter segment.
    pub fn profile(&self, s: &Sequence, k: u32, measure: Measure) -> Result<Vec<usize>, ComplexityError> {
        let this = self.without_witness();
        let mode = match measure {
            Measure::Nk => DegreeMode::PerVariable,
            Measure::Lk => DegreeMode::Total,
            Measure::Linear => return Ok(linear_profile(s)),
            Measure::MaxOrder => return Ok((1..=s.len()).map(|n| max_order_value(&s.values()[..n])).collect()),
        };
        let mut out = Vec::with_capacity(s.len());
        let mut prev = 0;
        for n in 1..=s.len() {
            let (v, _) = this.search(&s.prefix(n), k, mode, prev)?;
            out.push(v);
            prev = v;
        }
        Ok(out)
    }

    /// Complexity of the initial segments at the listed lengths.
    pub fn profile_at(&self, s: &Sequence, k: u32, measure: Measure, lengths: &[usize]) -> Result<Vec<usize>, ComplexityError> {
        let this = self.without_witness();
        let mut prev = 0;
        let mut out = Vec::with_capacity(lengths.len());
        let mut last_n = 0;
        for &n in lengths {
            let seg = s.prefix(n);
            let start = if n >= last_n { prev } else { 0 };
            let v = match measure {
                Measure::Nk => this.search(&seg, k, DegreeMode::PerVariable, start)?.0,
                Measure::Lk => this.search(&seg, k, DegreeMode::Total, start)?.0,
                Measure::Linear => berlekamp_massey(s.field(), seg.values()).0,
                Measure::MaxOrder => max_order_value(seg.values()),
            };
            out.push(v);
            prev = v;
            last_n = n;
        }
        Ok(out)
    }

    pub fn analyze(&self, s: &Sequence, measure: Measure, k: u32) -> Result<ComplexityReport, ComplexityError> {
        match measure {
            Measure::Nk => self.nonlinear(s, k),
            Measure::Lk => self.total_degree(s, k),
            Measure::Linear => linear_complexity(s),
            Measure::MaxOrder => max_order_complexity(s),
        }
    }
}

/// `N^(k)(s)` with default settings.
pub fn nonlinear_complexity(s: &Sequence, k: u32) -> Result<ComplexityReport, ComplexityError> {
    Analyzer::default().nonlinear(s, k)
}

/// `L^(k)(s)` with default settings.
pub fn total_degree_complexity(s: &Sequence, k: u32) -> Result<ComplexityReport, ComplexityError> {
    Analyzer::default().total_degree(s, k)
}

pub fn profile(s: &Sequence, k: u32, measure: Measure) -> Result<Vec<usize>, ComplexityError> {
    Analyzer::default().profile(s, k, measure)
}

/// Linear complexity `L(s)`; the witness is the homogeneous recurrence.
pub fn linear_complexity(s: &Sequence) -> Result<ComplexityReport, ComplexityError> {
    if s.is_empty() {
        return Err(ComplexityError::Empty);
    }
    let field = s.field();
    let (len, c) = berlekamp_massey(field, s.values());
    let witness = (len > 0).then(|| {
        // s_{i+L} = sum_j -c_j s_{i+L-j}; variable x_r holds s_{i+r-1}.
        let terms = (1..=len)
            .filter(|&j| c[j] != 0)
            .map(|j| {
                let mut exponents = vec![0; len];
                exponents[len - j] = 1;
                Term { exponents, coeff: field.neg(c[j]) }
            })
            .collect();
        FeedbackPolynomial::new(len, DegreeMode::Total, 1, terms)
    });
    Ok(ComplexityReport { kind: Measure::Linear, k: None, n: s.len(), value: len, witness })
}

fn linear_profile(s: &Sequence) -> Vec<usize> {
    (1..=s.len()).map(|n| berlekamp_massey(s.field(), &s.values()[..n]).0).collect()
}

/// Least `m` such that equal length-`m` windows always have equal successors.
fn max_order_value(v: &[u32]) -> usize {
    if v.iter().all(|&x| x == 0) {
        return 0;
    }
    let n = v.len();
    (1..n)
        .find(|&m| {
            let mut next: HashMap<&[u32], u32> = HashMap::new();
            (0..n - m).all(|i| *next.entry(&v[i..i + m]).or_insert(v[i + m]) == v[i + m])
        })
        .unwrap_or(1)
}

/// Maximum-order complexity: the shortest shift register with an arbitrary
/// feedback map. Equal to `N^(q-1)(s)`, but decided directly from window
/// collisions, so it is never limited by the cost guard.
pub fn max_order_complexity(s: &Sequence) -> Result<ComplexityReport, ComplexityError> {
    if s.is_empty() {
        return Err(ComplexityError::Empty);
    }
    Ok(ComplexityReport {
        kind: Measure::MaxOrder,
        k: Some(s.field().q() - 1),
        n: s.len(),
        value: max_order_value(s.values()),
        witness: None,
    })
}
