//! Brute-force complexity: enumerate every feedback polynomial and replay it.
//!
//! Exponents range over `0..=k` literally (no reduction by `x^q = x`), and
//! the coefficient vectors are walked as base-`q` counters. Only suitable for
//! tiny parameters; it exists to cross-check the solver.

use crate::field::Field;
use crate::sequence::Sequence;

use super::{ComplexityError, Measure};

/// Largest number of coefficient vectors examined for one `m`.
pub const ORACLE_LIMIT: u64 = 1 << 24;

fn exponent_vectors(m: usize, k: u32, total: bool) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=k).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    if total {
        out.retain(|v| v.iter().sum::<u32>() <= k);
    }
    out
}

fn power(field: &Field, x: u32, e: u32) -> u32 {
    (0..e).fold(1, |acc, _| field.mul(acc, x))
}

fn some_polynomial_fits(field: &Field, s: &[u32], m: usize, k: u32, total: bool) -> Result<bool, ComplexityError> {
    let monos = exponent_vectors(m, k, total);
    let q = field.q() as u64;
    let space = q.checked_pow(monos.len() as u32).filter(|&c| c <= ORACLE_LIMIT);
    let Some(space) = space else {
        return Err(ComplexityError::OracleGuard { m, monomials: monos.len() });
    };
    // values[i][j] = monomial j at window i
    let values: Vec<Vec<u32>> = (0..s.len() - m)
        .map(|i| {
            monos
                .iter()
                .map(|exps| (0..m).fold(1, |acc, j| field.mul(acc, power(field, s[i + j], exps[j]))))
                .collect()
        })
        .collect();
    let mut coeffs = vec![0u32; monos.len()];
    for code in 0..space {
        let mut rest = code;
        for c in coeffs.iter_mut() {
            *c = (rest % q) as u32;
            rest /= q;
        }
        let fits = values.iter().enumerate().all(|(i, row)| {
            let v = row.iter().zip(&coeffs).fold(0, |acc, (&x, &c)| field.add(acc, field.mul(x, c)));
            v == s[i + m]
        });
        if fits {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `N^(k)` or `L^(k)` by exhaustive search over feedback polynomials.
pub fn brute_force_complexity(s: &Sequence, k: u32, measure: Measure) -> Result<usize, ComplexityError> {
    let total = match measure {
        Measure::Nk => false,
        Measure::Lk => true,
        other => return Err(ComplexityError::UnsupportedMeasure(other)),
    };
    if k < 1 {
        return Err(ComplexityError::InvalidK(k));
    }
    let v = s.values();
    if v.is_empty() {
        return Err(ComplexityError::Empty);
    }
    if s.is_zero() {
        return Ok(0);
    }
    let n = v.len();
    for m in 1..n.saturating_sub(1) {
        if some_polynomial_fits(s.field(), v, m, k, total)? {
            return Ok(m);
        }
    }
    // m = n - 1: the constant polynomial s_n fits the single window.
    Ok((n - 1).max(1))
}
