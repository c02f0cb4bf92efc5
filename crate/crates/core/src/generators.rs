//! Sequence generators: explicit inversive, periodic inversive and seeded
//! uniform random sequences.
//!
//! Random draws use ChaCha20 (`rand_chacha::ChaCha20Rng`) seeded through
//! `seed_from_u64`; sample `i` of an experiment reads stream `i` of the same
//! seed. Each symbol takes the next `u32` masked to the smallest power of two
//! covering `q`, rejecting values `>= q`.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use thiserror::Error;

use crate::field::{Field, FieldError};
use crate::sequence::{Provenance, Sequence};

#[derive(Debug, Error)]
pub enum GeneratorError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("parameter {0} must be nonzero")]
    ZeroParameter(&'static str),
    #[error("the explicit inversive sequence needs q >= 3, got q = {0}")]
    FieldTooSmall(u32),
    #[error("d = {d} must be a proper divisor of q - 1 = {q1}")]
    BadPeriod { d: u32, q1: u32 },
    #[error("c/b = {ratio} lies in the subgroup generated by u = {u}")]
    SubgroupConstraint { u: u32, ratio: u32 },
    #[error("no admissible c exists for d = {0}")]
    NoAdmissibleC(u32),
}

/// `s_i = (a g^i - a)^{-1}` for `1 <= i <= q - 2`, `g` the field's primitive element.
pub fn inversive_finite(field: &Field, a: u32) -> Result<Sequence, GeneratorError> {
    field.element(a as u64)?;
    if a == 0 {
        return Err(GeneratorError::ZeroParameter("a"));
    }
    let q = field.q();
    if q < 3 {
        return Err(GeneratorError::FieldTooSmall(q));
    }
    let values = (1..=(q - 2) as i64)
        .map(|i| {
            let denom = field.sub(field.mul(a, field.exp(i)), a);
            field.inv(denom)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Sequence::new(field.clone(), values, Provenance::Inversive { a }).expect("values in range"))
}

/// `u = g^{(q-1)/d}`, the element of order `d` used by the periodic generator.
pub fn order_d_element(field: &Field, d: u32) -> Result<u32, GeneratorError> {
    let q1 = field.q() - 1;
    if d == 0 || d >= q1 || q1 % d != 0 {
        return Err(GeneratorError::BadPeriod { d, q1 });
    }
    Ok(field.exp((q1 / d) as i64))
}

/// Smallest nonzero `c` with `c/b` outside the subgroup generated by `u`.
pub fn default_c(field: &Field, d: u32, b: u32) -> Result<u32, GeneratorError> {
    let u = order_d_element(field, d)?;
    let b_inv = field.inv(b)?;
    for c in 1..field.q() {
        if !field.in_cyclic_subgroup(u, field.mul(c, b_inv))? {
            return Ok(c);
        }
    }
    Err(GeneratorError::NoAdmissibleC(d))
}

/// First `n` terms of `s_i = (b u^i - c)^{-1}`, `u = g^{(q-1)/d}`; least period `d`.
pub fn inversive_periodic(field: &Field, d: u32, b: u32, c: u32, n: usize) -> Result<Sequence, GeneratorError> {
    field.element(b as u64)?;
    field.element(c as u64)?;
    let u = order_d_element(field, d)?;
    if b == 0 {
        return Err(GeneratorError::ZeroParameter("b"));
    }
    if c == 0 {
        return Err(GeneratorError::ZeroParameter("c"));
    }
    let ratio = field.mul(c, field.inv(b)?);
    if field.in_cyclic_subgroup(u, ratio)? {
        return Err(GeneratorError::SubgroupConstraint { u, ratio });
    }
    let period = (0..d as i64)
        .map(|j| {
            // index i = j + 1
            let ui = field.pow(u, j + 1)?;
            field.inv(field.sub(field.mul(b, ui), c))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let values = period.iter().copied().cycle().take(n).collect();
    Ok(Sequence::new(field.clone(), values, Provenance::Periodic { d, b, c }).expect("values in range"))
}

/// The pinned generator for `(seed, stream)`.
pub fn rng(seed: u64, stream: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform symbol in `[0, q)` by masked rejection sampling.
pub fn draw_symbol(rng: &mut ChaCha20Rng, q: u32) -> u32 {
    let mask = q.next_power_of_two() - 1;
    loop {
        let v = rng.next_u32() & mask;
        if v < q {
            return v;
        }
    }
}

pub fn random_values(field: &Field, n: usize, seed: u64, stream: u64) -> Vec<u32> {
    let mut rng = rng(seed, stream);
    (0..n).map(|_| draw_symbol(&mut rng, field.q())).collect()
}

/// `n` independent uniform symbols from stream 0 of `seed`.
pub fn random_sequence(field: &Field, n: usize, seed: u64) -> Sequence {
    let values = random_values(field, n, seed, 0);
    Sequence::new(field.clone(), values, Provenance::Random { seed }).expect("values in range")
}

/// Least positive shift `t` with `s_{i+t} = s_i` for every valid `i`,
/// or `None` if no shift below the length works.
pub fn least_period(values: &[u32]) -> Option<usize> {
    (1..values.len()).find(|&t| (0..values.len() - t).all(|i| values[i + t] == values[i]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> Field {
        Field::of_order(q).unwrap()
    }

    #[test]
    fn inversive_f5() {
        let field = f(5);
        assert_eq!(field.primitive(), 2);
        assert_eq!(inversive_finite(&field, 1).unwrap().values(), &[1, 2, 3]);
        assert_eq!(inversive_finite(&field, 2).unwrap().values(), &[3, 1, 4]);
        assert_eq!(inversive_finite(&f(4), 3).unwrap().len(), 2);
    }

    #[test]
    fn inversive_errors() {
        assert!(matches!(inversive_finite(&f(5), 0), Err(GeneratorError::ZeroParameter("a"))));
        assert!(matches!(inversive_finite(&f(2), 1), Err(GeneratorError::FieldTooSmall(2))));
    }

    #[test]
    fn inversive_scaling() {
        for q in [5u64, 7, 8, 9, 11, 13, 16, 25, 27, 32] {
            let field = f(q);
            let base = inversive_finite(&field, 1).unwrap();
            for a in 1..field.q() {
                let s = inversive_finite(&field, a).unwrap();
                assert_eq!(s.values(), base.scaled(field.inv(a).unwrap()).values());
            }
        }
    }

    #[test]
    fn periodic_f7() {
        let field = f(7);
        let s = inversive_periodic(&field, 3, 1, 3, 6).unwrap();
        assert_eq!(s.values(), &[6, 1, 3, 6, 1, 3]);
        assert_eq!(inversive_periodic(&field, 3, 1, 3, 3).unwrap().values(), &[6, 1, 3]);
        assert!(matches!(
            inversive_periodic(&field, 3, 1, 2, 6),
            Err(GeneratorError::SubgroupConstraint { .. })
        ));
        assert!(matches!(inversive_periodic(&field, 6, 1, 3, 6), Err(GeneratorError::BadPeriod { .. })));
        assert!(matches!(inversive_periodic(&field, 4, 1, 3, 6), Err(GeneratorError::BadPeriod { .. })));
        assert_eq!(default_c(&field, 3, 1).unwrap(), 3);
    }

    #[test]
    fn periodic_least_period_is_d() {
        for q in [5u64, 7, 9, 13, 16, 25, 31] {
            let field = f(q);
            let q1 = field.q() - 1;
            for d in (1..q1).filter(|d| q1 % d == 0) {
                for b in 1..field.q() {
                    let c = default_c(&field, d, b).unwrap();
                    let s = inversive_periodic(&field, d, b, c, 3 * d as usize + 1).unwrap();
                    let v = s.values();
                    assert!((0..v.len() - d as usize).all(|i| v[i + d as usize] == v[i]));
                    assert_eq!(least_period(v), Some(d as usize), "q={q} d={d} b={b}");
                }
            }
        }
    }

    #[test]
    fn random_is_deterministic() {
        let field = f(9);
        assert!(random_sequence(&field, 0, 1).is_empty());
        assert_eq!(random_sequence(&field, 50, 7), random_sequence(&field, 50, 7));
        assert_ne!(random_sequence(&field, 50, 7), random_sequence(&field, 50, 8));
        assert_ne!(random_values(&field, 50, 7, 0), random_values(&field, 50, 7, 1));
    }

    #[test]
    fn random_binary_frequencies() {
        let n = 10_000usize;
        for seed in [0u64, 1, 42, u64::MAX] {
            let s = random_sequence(&f(2), n, seed);
            let ones = s.values().iter().filter(|&&v| v == 1).count() as f64;
            let sigma = (n as f64 * 0.25).sqrt();
            assert!((ones - n as f64 / 2.0).abs() < 5.0 * sigma);
        }
    }

    #[test]
    fn random_uniform_over_non_power_of_two() {
        let field = f(5);
        let s = random_sequence(&field, 50_000, 3);
        let mut counts = [0usize; 5];
        for &v in s.values() {
            counts[v as usize] += 1;
        }
        let sigma = (50_000.0 * 0.2 * 0.8f64).sqrt();
        for c in counts {
            assert!((c as f64 - 10_000.0).abs() < 5.0 * sigma);
        }
    }
}
