//! Closed-form lower bounds on nonlinear complexity and the sweeps that
//! compare them with computed values.
//!
//! Bounds are exact rationals; a check passes when the computed integer is
//! at least the bound. Bounds `<= 0` are recorded as trivially satisfied.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::complexity::{Analyzer, ComplexityError, Measure};
use crate::field::Field;
use crate::generators::{inversive_finite, inversive_periodic, GeneratorError};
use crate::hermitian::{Hermitian, HermitianError};
use crate::sequence::Sequence;

pub type Rational = Ratio<i64>;

#[derive(Debug, Error)]
pub enum BoundError {
    #[error("n = {n} outside 1..={max}")]
    LengthOutOfRange { n: usize, max: usize },
    #[error("k must be at least 1")]
    ZeroK,
    #[error("d must be at least 1")]
    ZeroPeriod,
    #[error("k = {k} outside the admissible range 1..={max} for {family}")]
    KOutOfRange { k: u32, max: u32, family: &'static str },
    #[error("no lower bound is known for {0:?} on this construction")]
    NoTheorem(Measure),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Hermitian(#[from] HermitianError),
    #[error(transparent)]
    Complexity(#[from] ComplexityError),
}

/// Which bound a check instantiates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BoundFamily {
    #[serde(rename = "inversive-n")]
    InversiveN,
    #[serde(rename = "inversive-l")]
    InversiveL,
    #[serde(rename = "inversive-linear")]
    InversiveLinear,
    #[serde(rename = "periodic-n")]
    PeriodicN,
    #[serde(rename = "periodic-l")]
    PeriodicL,
    #[serde(rename = "periodic-linear")]
    PeriodicLinear,
    #[serde(rename = "hermitian-n")]
    HermitianN,
    #[serde(rename = "hermitian-l")]
    HermitianL,
    #[serde(rename = "hermitian-linear")]
    HermitianLinear,
}

impl BoundFamily {
    pub fn name(self) -> &'static str {
        match self {
            BoundFamily::InversiveN => "inversive-n",
            BoundFamily::InversiveL => "inversive-l",
            BoundFamily::InversiveLinear => "inversive-linear",
            BoundFamily::PeriodicN => "periodic-n",
            BoundFamily::PeriodicL => "periodic-l",
            BoundFamily::PeriodicLinear => "periodic-linear",
            BoundFamily::HermitianN => "hermitian-n",
            BoundFamily::HermitianL => "hermitian-l",
            BoundFamily::HermitianLinear => "hermitian-linear",
        }
    }
}

fn ser_ratio<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub theorem: BoundFamily,
    pub q: u32,
    pub k: u32,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<u32>,
    #[serde(serialize_with = "ser_ratio")]
    pub bound: Rational,
    pub computed: usize,
    pub pass: bool,
    pub trivial: bool,
}

impl BoundCheck {
    fn new(theorem: BoundFamily, q: u32, k: u32, n: usize, bound: Rational, computed: usize) -> BoundCheck {
        BoundCheck {
            theorem,
            q,
            k,
            n,
            d: None,
            ell: None,
            bound,
            computed,
            pass: Rational::from_integer(computed as i64) >= bound,
            trivial: bound <= Rational::from_integer(0),
        }
    }

    /// `theorem,n,k,bound_num,bound_den,computed,pass`
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.theorem.name(),
            self.n,
            self.k,
            self.bound.numer(),
            self.bound.denom(),
            self.computed,
            self.pass
        )
    }
}

pub const CSV_HEADER: &str = "theorem,n,k,bound_num,bound_den,computed,pass";

fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

/// `(n - 1)/(k + 1)` for the explicit inversive sequence, `1 <= n <= q - 2`.
pub fn bound_inversive(q: u32, n: usize, k: u32) -> Result<Rational, BoundError> {
    if k == 0 {
        return Err(BoundError::ZeroK);
    }
    let max = q.saturating_sub(2) as usize;
    if n < 1 || n > max {
        return Err(BoundError::LengthOutOfRange { n, max });
    }
    Ok(ratio(n as i64 - 1, k as i64 + 1))
}

/// `min{(n - 1)/(k + 1), (d - 1)/k}` for the periodic inversive sequence.
pub fn bound_periodic(n: usize, k: u32, d: u32) -> Result<Rational, BoundError> {
    if k == 0 {
        return Err(BoundError::ZeroK);
    }
    if d == 0 {
        return Err(BoundError::ZeroPeriod);
    }
    if n == 0 {
        return Err(BoundError::LengthOutOfRange { n, max: usize::MAX });
    }
    Ok(ratio(n as i64 - 1, k as i64 + 1).min(ratio(d as i64 - 1, k as i64)))
}

fn hermitian_params(ell: u32, n: usize) -> Result<(i64, i64), BoundError> {
    let q1 = (ell as i64) * (ell as i64) - 1;
    let max = (q1 * (ell as i64 - 1)) as usize;
    if n < 1 || n > max {
        return Err(BoundError::LengthOutOfRange { n, max });
    }
    Ok((q1, n as i64 / q1))
}

/// `((q-1) r - 1)/(l(l-1) k + r)` with `r = floor(n/(q-1))`; zero when `r = 0`.
pub fn bound_hermitian_n(ell: u32, n: usize, k: u32) -> Result<Rational, BoundError> {
    if k == 0 {
        return Err(BoundError::ZeroK);
    }
    let (q1, r) = hermitian_params(ell, n)?;
    if r == 0 {
        return Ok(Rational::from_integer(0));
    }
    let ell = ell as i64;
    Ok(ratio(q1 * r - 1, ell * (ell - 1) * k as i64 + r))
}

/// `((q-1) r - (l^2 - l - 1) k - 1)/(k + r)`; may be negative.
pub fn bound_hermitian_l(ell: u32, n: usize, k: u32) -> Result<Rational, BoundError> {
    if k == 0 {
        return Err(BoundError::ZeroK);
    }
    let (q1, r) = hermitian_params(ell, n)?;
    let ell = ell as i64;
    let k = k as i64;
    Ok(ratio(q1 * r - (ell * ell - ell - 1) * k - 1, k + r))
}

/// A sequence family with known lower bounds.
#[derive(Debug, Clone)]
pub enum Construction {
    /// `(a g^i - a)^{-1}`, `1 <= i <= q - 2`.
    Inversive { field: Field, a: u32 },
    /// `(b u^i - c)^{-1}` for `len` terms, `u` of order `d`.
    Periodic { field: Field, d: u32, b: u32, c: u32, len: usize },
    /// Hermitian-curve sequence over `F_{l^2}`.
    Hermitian { ell: u32, primitive: Option<u32>, max_ell: u32 },
}

impl Construction {
    pub fn sequence(&self) -> Result<Sequence, BoundError> {
        Ok(match self {
            Construction::Inversive { field, a } => inversive_finite(field, *a)?,
            Construction::Periodic { field, d, b, c, len } => inversive_periodic(field, *d, *b, *c, *len)?,
            Construction::Hermitian { ell, primitive, max_ell } => Hermitian::build(*ell, *primitive, *max_ell)?.sequence()?,
        })
    }

    fn family(&self, measure: Measure) -> Result<BoundFamily, BoundError> {
        use BoundFamily::*;
        Ok(match (self, measure) {
            (Construction::Inversive { .. }, Measure::Nk) => InversiveN,
            (Construction::Inversive { .. }, Measure::Lk) => InversiveL,
            (Construction::Inversive { .. }, Measure::Linear) => InversiveLinear,
            (Construction::Periodic { .. }, Measure::Nk) => PeriodicN,
            (Construction::Periodic { .. }, Measure::Lk) => PeriodicL,
            (Construction::Periodic { .. }, Measure::Linear) => PeriodicLinear,
            (Construction::Hermitian { .. }, Measure::Nk) => HermitianN,
            (Construction::Hermitian { .. }, Measure::Lk) => HermitianL,
            (Construction::Hermitian { .. }, Measure::Linear) => HermitianLinear,
            (_, m) => return Err(BoundError::NoTheorem(m)),
        })
    }

    fn bound(&self, family: BoundFamily, q: u32, n: usize, k: u32) -> Result<Rational, BoundError> {
        match self {
            Construction::Inversive { .. } => bound_inversive(q, n, k),
            Construction::Periodic { d, .. } => bound_periodic(n, k, *d),
            Construction::Hermitian { ell, .. } => match family {
                BoundFamily::HermitianN => bound_hermitian_n(*ell, n, k),
                _ => bound_hermitian_l(*ell, n, k),
            },
        }
    }
}

/// Compares every initial segment of the construction with its bound, for
/// each `k` and measure. Linear complexity is checked once, against the
/// `k = 1` bound of the total-degree family.
pub fn verify(
    construction: &Construction,
    ks: &[u32],
    measures: &[Measure],
    analyzer: &Analyzer,
) -> Result<Vec<BoundCheck>, BoundError> {
    let s = construction.sequence()?;
    let q = s.field().q();
    let mut jobs: Vec<(Measure, u32)> = Vec::new();
    for &measure in measures {
        let family = construction.family(measure)?;
        if measure == Measure::Linear {
            jobs.push((measure, 1));
            continue;
        }
        for &k in ks {
            if k == 0 {
                return Err(BoundError::ZeroK);
            }
            // The per-variable bounds are stated for k <= q - 1, as are the
            // total-degree bounds for the inversive families.
            if family != BoundFamily::HermitianL && k > q - 1 {
                return Err(BoundError::KOutOfRange { k, max: q - 1, family: family.name() });
            }
            jobs.push((measure, k));
        }
    }
    let results: Vec<Result<Vec<BoundCheck>, BoundError>> = jobs
        .par_iter()
        .map(|&(measure, k)| {
            let family = construction.family(measure)?;
            let values = analyzer.without_witness().profile(&s, k, measure)?;
            values
                .iter()
                .enumerate()
                .map(|(i, &computed)| {
                    let n = i + 1;
                    let bound = construction.bound(family, q, n, k)?;
                    let mut check = BoundCheck::new(family, q, k, n, bound, computed);
                    match construction {
                        Construction::Periodic { d, .. } => check.d = Some(*d),
                        Construction::Hermitian { ell, .. } => check.ell = Some(*ell),
                        _ => {}
                    }
                    Ok(check)
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifySummary {
    pub checks: usize,
    pub failed: usize,
    pub trivial: usize,
    pub pass: bool,
}

pub fn summarize(checks: &[BoundCheck]) -> VerifySummary {
    let failed = checks.iter().filter(|c| !c.pass).count();
    VerifySummary {
        checks: checks.len(),
        failed,
        trivial: checks.iter().filter(|c| c.trivial).count(),
        pass: failed == 0,
    }
}
