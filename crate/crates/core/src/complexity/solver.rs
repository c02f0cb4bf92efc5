//! Feedback-polynomial existence as consistency of a linear system over `F_q`.
//!
//! Unknowns are the coefficients of the admissible monomials, one equation
//! per window `(s_i, ..., s_{i+m-1}) -> s_{i+m}`. Columns are fed one monomial
//! at a time into an echelon basis of the column space, and the right-hand
//! side is reduced alongside; the system is consistent as soon as the
//! residual vanishes.

use std::collections::HashMap;

use crate::field::Field;

use super::{ComplexityError, DegreeMode, FeedbackPolynomial, Term};

/// Exponent vectors with every entry `<= cap` (and sum `<= total` when set),
/// in lexicographic order with the last variable changing fastest.
pub struct Monomials {
    cap: u32,
    total: Option<u32>,
    cur: Option<Vec<u32>>,
}

impl Monomials {
    pub fn new(m: usize, cap: u32, total: Option<u32>) -> Monomials {
        Monomials { cap, total, cur: Some(vec![0; m]) }
    }

    fn advance(&mut self) {
        let Some(cur) = self.cur.as_mut() else { return };
        let mut sum: u32 = cur.iter().sum();
        for j in (0..cur.len()).rev() {
            let fits = cur[j] < self.cap && self.total.is_none_or(|t| sum < t);
            if fits {
                cur[j] += 1;
                return;
            }
            sum -= cur[j];
            cur[j] = 0;
        }
        self.cur = None;
    }
}

impl Iterator for Monomials {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.cur.clone()?;
        self.advance();
        Some(out)
    }
}

/// Per-variable exponent cap: as maps, `x^q = x`, so exponents above `q - 1`
/// never add anything.
pub fn exponent_cap(field: &Field, k: u32) -> u32 {
    k.min(field.q() - 1)
}

/// Number of admissible monomials in `m` variables, saturating at `u64::MAX`.
pub fn monomial_count(m: usize, cap: u32, total: Option<u32>) -> u64 {
    match total {
        None => (cap as u64 + 1).checked_pow(m as u32).unwrap_or(u64::MAX),
        Some(t) => {
            // ways[s] = number of vectors so far with coordinate sum s
            let mut ways = vec![0u64; t as usize + 1];
            ways[0] = 1;
            for _ in 0..m {
                let mut next = vec![0u64; t as usize + 1];
                for (s, &w) in ways.iter().enumerate() {
                    if w == 0 {
                        continue;
                    }
                    for e in 0..=cap as usize {
                        if s + e > t as usize {
                            break;
                        }
                        next[s + e] = next[s + e].saturating_add(w);
                    }
                }
                ways = next;
            }
            ways.iter().fold(0u64, |a, &b| a.saturating_add(b))
        }
    }
}

pub fn eval_monomial(field: &Field, exponents: &[u32], point: &[u32]) -> u32 {
    exponents
        .iter()
        .zip(point)
        .filter(|(&e, _)| e > 0)
        .fold(1, |acc, (&e, &x)| field.mul(acc, field.pow(x, e as i64).unwrap()))
}

pub enum Feasibility {
    Infeasible,
    /// A feedback polynomial exists; the witness is absent when the decision
    /// was made without solving the system.
    Feasible(Option<FeedbackPolynomial>),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

/// Decides whether some `f` with `m` variables in the given degree class
/// satisfies `s_{i+m} = f(s_i, ..., s_{i+m-1})` for every window.
pub fn feasible(
    field: &Field,
    s: &[u32],
    m: usize,
    mode: DegreeMode,
    k: u32,
    guard: u64,
    want_witness: bool,
) -> Result<Feasibility, ComplexityError> {
    let n = s.len();
    debug_assert!(m >= 1 && m <= n.max(1));
    // Distinct windows; equal windows with different successors rule out every f.
    let mut index: HashMap<&[u32], usize> = HashMap::new();
    let mut points: Vec<&[u32]> = Vec::new();
    let mut rhs: Vec<u32> = Vec::new();
    for i in 0..n.saturating_sub(m) {
        let w = &s[i..i + m];
        match index.get(w) {
            Some(&r) if rhs[r] != s[i + m] => return Ok(Feasibility::Infeasible),
            Some(_) => {}
            None => {
                index.insert(w, points.len());
                points.push(w);
                rhs.push(s[i + m]);
            }
        }
    }

    let cap = exponent_cap(field, k);
    let total = match mode {
        DegreeMode::PerVariable => None,
        DegreeMode::Total => Some(k),
    };
    let count = monomial_count(m, cap, total);
    if mode == DegreeMode::PerVariable && cap == field.q() - 1 && !want_witness {
        // Every map F_q^m -> F_q is a polynomial of degree <= q-1 in each
        // variable, so with no collision some f exists.
        return Ok(Feasibility::Feasible(None));
    }

    let rows = points.len();
    let mut residual = rhs.clone();
    let mut basis: Vec<(usize, Vec<u32>)> = Vec::new();
    let mut pivots: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
    let mut consistent = residual.iter().all(|&v| v == 0);
    if !consistent {
        for (seen, exps) in Monomials::new(m, cap, total).enumerate() {
            if seen as u64 >= guard {
                // Undecided after `guard` columns.
                return Err(ComplexityError::CostGuard { m, monomials: count, limit: guard });
            }
            let column: Vec<u32> = points.iter().map(|w| eval_monomial(field, &exps, w)).collect();
            let mut v = column.clone();
            for (p, b) in &basis {
                let c = v[*p];
                if c != 0 {
                    for (x, &y) in v.iter_mut().zip(b) {
                        *x = field.sub(*x, field.mul(c, y));
                    }
                }
            }
            let Some(p) = v.iter().position(|&x| x != 0) else { continue };
            let inv = field.inv(v[p]).unwrap();
            for x in v.iter_mut() {
                *x = field.mul(*x, inv);
            }
            let c = residual[p];
            if c != 0 {
                for (x, &y) in residual.iter_mut().zip(&v) {
                    *x = field.sub(*x, field.mul(c, y));
                }
            }
            basis.push((p, v));
            pivots.push((exps, column));
            if residual.iter().all(|&x| x == 0) {
                consistent = true;
                break;
            }
            if basis.len() == rows {
                break;
            }
        }
    }
    if !consistent {
        return Ok(Feasibility::Infeasible);
    }
    if !want_witness {
        return Ok(Feasibility::Feasible(None));
    }
    let matrix: Vec<Vec<u32>> = (0..rows).map(|r| pivots.iter().map(|(_, col)| col[r]).collect()).collect();
    let coeffs = solve(field, &matrix, &rhs).expect("consistent system has a solution");
    let terms = pivots
        .into_iter()
        .zip(coeffs)
        .filter(|(_, c)| *c != 0)
        .map(|((exponents, _), coeff)| Term { exponents, coeff })
        .collect();
    Ok(Feasibility::Feasible(Some(FeedbackPolynomial::new(m, mode, k, terms))))
}

/// Solves `A x = b` by Gauss-Jordan elimination; free variables are set to
/// zero. Returns `None` for an inconsistent system.
pub fn solve(field: &Field, a: &[Vec<u32>], b: &[u32]) -> Option<Vec<u32>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<u32>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, pr);
        let inv = field.inv(m[r][c]).unwrap();
        for x in m[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                let (src, dst) = if i < r {
                    let (lo, hi) = m.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = m.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (x, &y) in dst.iter_mut().zip(src.iter()) {
                    *x = field.sub(*x, field.mul(f, y));
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| row[cols] != 0) {
        return None;
    }
    let mut x = vec![0; cols];
    for (i, &c) in pivot_cols.iter().enumerate() {
        x[c] = m[i][cols];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_order() {
        let all: Vec<Vec<u32>> = Monomials::new(2, 1, None).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let tot: Vec<Vec<u32>> = Monomials::new(2, 2, Some(2)).collect();
        assert_eq!(tot, vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 0], vec![1, 1], vec![2, 0]]);
        assert_eq!(Monomials::new(0, 3, None).count(), 1);
    }

    #[test]
    fn counts_match_enumeration() {
        for m in 0..5 {
            for cap in 0..4 {
                assert_eq!(Monomials::new(m, cap, None).count() as u64, monomial_count(m, cap, None));
                for t in 0..6 {
                    assert_eq!(Monomials::new(m, cap, Some(t)).count() as u64, monomial_count(m, cap, Some(t)));
                }
            }
        }
        assert_eq!(monomial_count(3, 1, None), 8);
        assert_eq!(monomial_count(80, 2, None), u64::MAX);
    }

    #[test]
    fn gauss_solve() {
        let f = Field::of_order(7).unwrap();
        // x + 2y = 3, 3x + y = 2  ->  x = 3, y = 0
        let a = vec![vec![1, 2], vec![3, 1]];
        let x = solve(&f, &a, &[3, 2]).unwrap();
        assert_eq!(x, vec![3, 0]);
        assert!(solve(&f, &[vec![1, 1], vec![2, 2]], &[1, 1]).is_none());
        // underdetermined: free variable zero
        assert_eq!(solve(&f, &[vec![0, 1, 1]], &[4]).unwrap(), vec![0, 4, 0]);
    }
}
