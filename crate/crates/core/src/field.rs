//! Arithmetic in `F_q` for prime powers `q <= 2^16`.
//!
//! Elements are encoded as integers: the coefficient vector of the residue
//! class modulo the defining polynomial, read in base `p` with the constant
//! term least significant. Multiplication, inversion and addition go through
//! exponent, discrete-log and Zech-log tables keyed by the designated
//! primitive element, so every operation is a couple of table lookups.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

const NO_LOG: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {0} exceeds the supported maximum 2^16")]
    TooLarge(u64),
    #[error("modulus must be monic of degree {expected}, got {got:?}")]
    BadModulus { expected: u32, got: Vec<u32> },
    #[error("modulus {0:?} is reducible over the prime field")]
    Reducible(Vec<u32>),
    #[error("element {value} has order {order}, not {expected}")]
    NotPrimitive { value: u32, order: u64, expected: u64 },
    #[error("element encoding {value} out of range for q = {q}")]
    OutOfRange { value: u64, q: u32 },
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("zero has no multiplicative order")]
    ZeroOrder,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("{op:?} expects {expected} operand(s), got {got}")]
    Arity { op: ArithOp, expected: usize, got: usize },
}

/// Compact identity of a field: prime, degree, modulus and primitive element.
///
/// Two `Field` values with the same id are the same field with the same
/// table layout, so elements can move freely between them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldId(u64);

/// An element tagged with the field it belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u32,
    field: FieldId,
}

impl FieldElement {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn field_id(self) -> FieldId {
        self.field
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Inv,
    Neg,
    /// Raise to an integer power; negative exponents invert first.
    Pow(i64),
}

struct Tables {
    p: u32,
    degree: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: u32,
    id: FieldId,
    /// `exp[i] = g^i` for `0 <= i < 2(q-1)`.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    /// `zech[d] = log(1 + g^d)`, or `NO_LOG` when `1 + g^d = 0`.
    zech: Vec<u32>,
}

/// A finite field `F_q`, cheap to clone and safe to share across threads.
#[derive(Clone)]
pub struct Field {
    t: Arc<Tables>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({self})")
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.t.id == other.t.id
    }
}

impl Eq for Field {}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.t.modulus.iter().map(|c| c.to_string()).collect();
        write!(
            f,
            "q={} p={} e={} modulus=[{}] primitive={}",
            self.t.q,
            self.t.p,
            self.t.degree,
            m.join(","),
            self.t.primitive
        )
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, e)` with `q = p^e`.
pub fn prime_power(q: u64) -> Result<(u32, u32), FieldError> {
    if q < 2 {
        return Err(FieldError::NotPrimePower(q));
    }
    let p = (2..=q).find(|d| q % d == 0).unwrap();
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    if rest != 1 {
        return Err(FieldError::NotPrimePower(q));
    }
    Ok((p as u32, e))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Dense polynomial arithmetic over `F_p`, used only while building tables.
mod poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        let (mut r0, mut r1) = (p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let qt = r0 / r1;
            (r0, r1) = (r1, r0 - qt * r1);
            (t0, t1) = (t1, t0 - qt * t1);
        }
        t0.rem_euclid(p as i64) as u32
    }

    /// Remainder of `a` modulo `b` (b nonzero, trimmed).
    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut r = trim(a.to_vec());
        let db = b.len() - 1;
        let lead_inv = inv_mod(b[db], p);
        while r.len() > db {
            let dr = r.len() - 1;
            let c = (r[dr] as u64 * lead_inv as u64 % p as u64) as u32;
            let shift = dr - db;
            for (i, &bi) in b.iter().enumerate() {
                let sub = (c as u64 * bi as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        trim(out.into_iter().map(|c| c as u32).collect())
    }

    /// Irreducibility by trial division with every monic polynomial of
    /// degree at most half the degree of `f`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let n = f.len() - 1;
        for d in 1..=n / 2 {
            let count = (p as u64).pow(d as u32);
            for idx in 0..count {
                let mut g = Vec::with_capacity(d + 1);
                let mut rest = idx;
                for _ in 0..d {
                    g.push((rest % p as u64) as u32);
                    rest /= p as u64;
                }
                g.push(1);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

fn decode(mut value: u32, p: u32, degree: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(degree as usize);
    for _ in 0..degree {
        out.push(value % p);
        value /= p;
    }
    out
}

/// Construction-time arithmetic on encoded residues.
struct Slow<'a> {
    p: u32,
    degree: u32,
    modulus: &'a [u32],
}

impl Slow<'_> {
    fn mul(&self, a: u32, b: u32) -> u32 {
        let pa = poly::trim(decode(a, self.p, self.degree));
        let pb = poly::trim(decode(b, self.p, self.degree));
        let r = poly::rem(&poly::mul(&pa, &pb, self.p), self.modulus, self.p);
        encode(&r, self.p)
    }

    fn pow(&self, a: u32, mut n: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        let da = decode(a, self.p, self.degree);
        let db = decode(b, self.p, self.degree);
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        encode(&s, self.p)
    }

    fn neg(&self, a: u32) -> u32 {
        let d: Vec<u32> = decode(a, self.p, self.degree)
            .into_iter()
            .map(|c| (self.p - c) % self.p)
            .collect();
        encode(&d, self.p)
    }

    fn order(&self, a: u32, q1: u64) -> u64 {
        let mut order = q1;
        for r in prime_factors(q1) {
            while order % r == 0 && self.pow(a, order / r) == 1 {
                order /= r;
            }
        }
        order
    }
}

impl Field {
    /// Builds `F_{p^e}`. When `modulus` is `None` the lexicographically
    /// smallest monic irreducible polynomial (constant term compared first)
    /// is used. The primitive element is the smallest encoding of order `q-1`.
    pub fn new(p: u64, degree: u32, modulus: Option<&[u32]>) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if degree == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = p
            .checked_pow(degree)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(FieldError::TooLarge(p.saturating_pow(degree)))?;
        let p = p as u32;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != degree as usize + 1 || m[degree as usize] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(FieldError::BadModulus { expected: degree, got: m.to_vec() });
                }
                if !poly::is_irreducible(m, p) {
                    return Err(FieldError::Reducible(m.to_vec()));
                }
                m.to_vec()
            }
            None => canonical_modulus(p, degree),
        };
        let slow = Slow { p, degree, modulus: &modulus };
        let q1 = q - 1;
        let primitive = (1..q as u32).find(|&g| slow.order(g, q1) == q1).unwrap();
        Ok(Field::build(p, degree, q as u32, modulus, primitive))
    }

    /// Builds the field of order `q` with the canonical modulus.
    pub fn of_order(q: u64) -> Result<Field, FieldError> {
        let (p, e) = prime_power(q)?;
        if q > MAX_ORDER {
            return Err(FieldError::TooLarge(q));
        }
        Field::new(p as u64, e, None)
    }

    /// Same field, tables rekeyed to a different primitive element.
    pub fn with_primitive(&self, g: u32) -> Result<Field, FieldError> {
        self.check(g as u64)?;
        let order = if g == 0 { 0 } else { self.order(g)? };
        if order != (self.q() - 1) as u64 {
            return Err(FieldError::NotPrimitive { value: g, order, expected: (self.q() - 1) as u64 });
        }
        Ok(Field::build(self.p(), self.degree(), self.q(), self.t.modulus.clone(), g))
    }

    fn build(p: u32, degree: u32, q: u32, modulus: Vec<u32>, primitive: u32) -> Field {
        let slow = Slow { p, degree, modulus: &modulus };
        let q1 = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * q1.max(1)];
        let mut log = vec![NO_LOG; q as usize];
        let mut x = 1u32;
        for i in 0..q1 {
            exp[i] = x;
            log[x as usize] = i as u32;
            x = slow.mul(x, primitive);
        }
        for i in q1..exp.len() {
            exp[i] = exp[i - q1];
        }
        let neg: Vec<u32> = (0..q).map(|a| slow.neg(a)).collect();
        let zech: Vec<u32> = (0..q1)
            .map(|d| {
                let s = slow.add(1, exp[d]);
                if s == 0 {
                    NO_LOG
                } else {
                    log[s as usize]
                }
            })
            .collect();
        let id = FieldId(
            (p as u64) << 37 | (degree as u64) << 32 | (encode(&modulus[..degree as usize], p) as u64) << 16 | primitive as u64,
        );
        Field { t: Arc::new(Tables { p, degree, q, modulus, primitive, id, exp, log, neg, zech }) }
    }

    pub fn p(&self) -> u32 {
        self.t.p
    }

    pub fn degree(&self) -> u32 {
        self.t.degree
    }

    pub fn q(&self) -> u32 {
        self.t.q
    }

    /// Defining polynomial, constant term first, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.t.modulus
    }

    /// Integer encoding of the non-leading modulus coefficients.
    pub fn modulus_code(&self) -> u32 {
        encode(&self.t.modulus[..self.t.degree as usize], self.t.p)
    }

    pub fn primitive(&self) -> u32 {
        self.t.primitive
    }

    pub fn id(&self) -> FieldId {
        self.t.id
    }

    pub fn is_canonical(&self) -> bool {
        self.t.modulus == canonical_modulus(self.p(), self.degree())
            && Field::new(self.p() as u64, self.degree(), None).map(|f| f.primitive()) == Ok(self.primitive())
    }

    fn check(&self, value: u64) -> Result<u32, FieldError> {
        if value < self.q() as u64 {
            Ok(value as u32)
        } else {
            Err(FieldError::OutOfRange { value, q: self.q() })
        }
    }

    pub fn element(&self, value: u64) -> Result<FieldElement, FieldError> {
        Ok(FieldElement { value: self.check(value)?, field: self.id() })
    }

    /// Coefficient vector of an encoded element, constant term first.
    pub fn coefficients(&self, a: u32) -> Vec<u32> {
        decode(a, self.p(), self.degree())
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.t.degree == 1 {
            let s = a + b;
            return if s >= self.t.p { s - self.t.p } else { s };
        }
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let t = &*self.t;
        let la = t.log[a as usize];
        let lb = t.log[b as usize];
        let q1 = t.q - 1;
        let d = if lb >= la { lb - la } else { lb + q1 - la };
        match t.zech[d as usize] {
            NO_LOG => 0,
            z => t.exp[(la + z) as usize],
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.t.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &*self.t;
        t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> Result<u32, FieldError> {
        if a == 0 {
            return Err(FieldError::ZeroInverse);
        }
        let t = &*self.t;
        let l = t.log[a as usize];
        Ok(if l == 0 { 1 } else { t.exp[(t.q - 1 - l) as usize] })
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^n` for any integer `n`; `0^0 = 1`, negative powers of zero fail.
    pub fn pow(&self, a: u32, n: i64) -> Result<u32, FieldError> {
        if a == 0 {
            return match n {
                0 => Ok(1),
                n if n > 0 => Ok(0),
                _ => Err(FieldError::ZeroInverse),
            };
        }
        let q1 = (self.q() - 1) as i64;
        let l = self.t.log[a as usize] as i64;
        let e = (l * n.rem_euclid(q1)).rem_euclid(q1);
        Ok(self.t.exp[e as usize])
    }

    /// `g^n` for the designated primitive element `g`.
    #[inline]
    pub fn exp(&self, n: i64) -> u32 {
        let q1 = (self.q() - 1) as i64;
        self.t.exp[n.rem_euclid(q1) as usize]
    }

    /// Least `t >= 1` with `a^t = 1`.
    pub fn order(&self, a: u32) -> Result<u64, FieldError> {
        if a == 0 {
            return Err(FieldError::ZeroOrder);
        }
        self.check(a as u64)?;
        let q1 = (self.q() - 1) as u64;
        Ok(q1 / gcd(self.t.log[a as usize] as u64, q1))
    }

    /// Whether `c` lies in the cyclic subgroup of `F_q^*` generated by `u`.
    pub fn in_cyclic_subgroup(&self, u: u32, c: u32) -> Result<bool, FieldError> {
        let d = self.order(u)?;
        if c == 0 {
            return Err(FieldError::ZeroOrder);
        }
        Ok(self.pow(c, d as i64)? == 1)
    }

    /// Checked arithmetic on tagged elements.
    pub fn arith(&self, op: ArithOp, operands: &[FieldElement]) -> Result<FieldElement, FieldError> {
        if operands.iter().any(|x| x.field != self.id()) {
            return Err(FieldError::MixedFields);
        }
        let arity = match op {
            ArithOp::Add | ArithOp::Sub | ArithOp::Mul => 2,
            _ => 1,
        };
        if operands.len() != arity {
            return Err(FieldError::Arity { op, expected: arity, got: operands.len() });
        }
        let a = operands[0].value;
        let value = match op {
            ArithOp::Add => self.add(a, operands[1].value),
            ArithOp::Sub => self.sub(a, operands[1].value),
            ArithOp::Mul => self.mul(a, operands[1].value),
            ArithOp::Inv => self.inv(a)?,
            ArithOp::Neg => self.neg(a),
            ArithOp::Pow(n) => self.pow(a, n)?,
        };
        Ok(FieldElement { value, field: self.id() })
    }
}

fn canonical_modulus(p: u32, degree: u32) -> Vec<u32> {
    let count = (p as u64).pow(degree);
    for idx in 0..count {
        // c0 is the most significant digit of the counter.
        let mut coeffs = vec![0u32; degree as usize + 1];
        let mut rest = idx;
        for i in (0..degree as usize).rev() {
            coeffs[i] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        coeffs[degree as usize] = 1;
        if poly::is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_five() {
        let f = Field::new(5, 1, None).unwrap();
        assert_eq!(f.q(), 5);
        assert_eq!(f.primitive(), 2);
        assert_eq!(f.inv(3).unwrap(), 2);
        assert_eq!(f.inv(1).unwrap(), 1);
    }

    #[test]
    fn four_element_field() {
        let f = Field::new(2, 2, Some(&[1, 1, 1])).unwrap();
        let w = f.primitive();
        assert_eq!(w, 2);
        assert_eq!(f.mul(w, w), f.add(w, 1));
        assert_eq!(f.pow(w, 3).unwrap(), 1);
        assert_eq!(Field::of_order(4).unwrap(), f);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::new(4, 1, None).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(Field::new(3, 0, None).unwrap_err(), FieldError::ZeroDegree);
        assert!(matches!(Field::new(2, 2, Some(&[1, 0, 1])), Err(FieldError::Reducible(_))));
        assert!(matches!(Field::new(2, 2, Some(&[1, 1])), Err(FieldError::BadModulus { .. })));
        assert!(matches!(Field::new(2, 17, None), Err(FieldError::TooLarge(_))));
        assert!(matches!(Field::of_order(12), Err(FieldError::NotPrimePower(12))));
    }

    #[test]
    fn orders_and_subgroups() {
        let f = Field::of_order(7).unwrap();
        assert_eq!(f.order(1).unwrap(), 1);
        assert_eq!(f.order(2).unwrap(), 3);
        assert_eq!(f.order(f.primitive()).unwrap(), 6);
        assert!(f.in_cyclic_subgroup(2, 4).unwrap());
        assert!(!f.in_cyclic_subgroup(2, 3).unwrap());
        assert!(f.in_cyclic_subgroup(2, 1).unwrap());
        assert_eq!(f.order(0), Err(FieldError::ZeroOrder));
        assert_eq!(f.inv(0), Err(FieldError::ZeroInverse));
    }

    #[test]
    fn tagged_arith_rejects_mixed_fields() {
        let f5 = Field::of_order(5).unwrap();
        let f7 = Field::of_order(7).unwrap();
        let a = f5.element(3).unwrap();
        let b = f7.element(3).unwrap();
        assert_eq!(f5.arith(ArithOp::Add, &[a, b]), Err(FieldError::MixedFields));
        assert_eq!(f5.arith(ArithOp::Inv, &[a]).unwrap().value(), 2);
        assert_eq!(f5.arith(ArithOp::Pow(-1), &[a]).unwrap().value(), 2);
        assert!(f5.element(5).is_err());
    }

    #[test]
    fn primitive_override() {
        let f = Field::of_order(7).unwrap();
        assert_eq!(f.primitive(), 3);
        let g = f.with_primitive(5).unwrap();
        assert_eq!(g.exp(1), 5);
        assert_ne!(g.id(), f.id());
        assert!(!g.is_canonical());
        assert!(matches!(f.with_primitive(2), Err(FieldError::NotPrimitive { .. })));
    }

    #[test]
    fn exhaustive_small_fields() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64, 81, 121, 128, 243, 256] {
            let f = Field::of_order(q).unwrap();
            let q = q as u32;
            let g = f.primitive();
            let mut seen = vec![false; q as usize];
            let mut x = 1;
            for _ in 0..q - 1 {
                x = f.mul(x, g);
                assert!(!seen[x as usize]);
                seen[x as usize] = true;
            }
            assert!(!seen[0] && seen[1..].iter().all(|&b| b));
            for a in 1..q {
                let ai = f.inv(a).unwrap();
                assert_eq!(f.mul(a, ai), 1);
                assert_eq!(f.inv(ai).unwrap(), a);
                assert_eq!((q as u64 - 1) % f.order(a).unwrap(), 0);
                assert_eq!(f.add(a, f.neg(a)), 0);
            }
        }
    }

    #[test]
    fn addition_matches_coefficientwise() {
        let f = Field::of_order(27).unwrap();
        for a in 0..27 {
            for b in 0..27 {
                let ca = f.coefficients(a);
                let cb = f.coefficients(b);
                let s: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % 3).collect();
                assert_eq!(f.add(a, b), encode(&s, 3));
            }
        }
    }

    #[test]
    fn canonical_moduli() {
        assert_eq!(Field::of_order(4).unwrap().modulus(), &[1, 1, 1]);
        // constant term compared first: x^3 + x^2 + 1 precedes x^3 + x + 1
        assert_eq!(Field::of_order(8).unwrap().modulus(), &[1, 0, 1, 1]);
        assert_eq!(Field::of_order(9).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(Field::of_order(7).unwrap().modulus(), &[0, 1]);
    }

    #[test]
    fn display_format() {
        let f = Field::of_order(4).unwrap();
        assert_eq!(f.to_string(), "q=4 p=2 e=2 modulus=[1,1,1] primitive=2");
    }
}
