//! The Hermitian curve `y^l + y = x^(l+1)` over `F_q`, `q = l^2`.
//!
//! Rational points are the affine solutions plus the point at infinity
//! `P_inf`. The automorphism `phi(x, y) = (g x, g^(l+1) y)`, `g` primitive,
//! fixes `P_inf` and splits the points with `x != 0` into `l` orbits of
//! length `q - 1`.
//!
//! The pole function is
//!
//! ```text
//! h = scale * prod_{i>=2} (y - b_i) / (x - a)
//! ```
//!
//! where `Q = (a, b)` and `b_2, ..., b_l` are the other roots of
//! `y^l + y = a^(l+1)`. It has a simple pole at `Q`, a pole of order
//! `l^2 - l - 1 = 2g - 1` at `P_inf`, and is regular at every other rational
//! point. At `(a, b_i)` the quotient is `0/0`; there `(y - b_i)/(x - a)`
//! takes the value `dy/dx = x^l`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::field::{prime_power, Field, FieldError};
use crate::sequence::{Provenance, Sequence};

/// Largest `l` accepted without raising the limit explicitly.
pub const DEFAULT_MAX_ELL: u32 = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HermitianError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("l = {0} is not a prime power")]
    NotPrimePower(u32),
    #[error("field of order {q} is not the square of l = {ell}")]
    NotSquare { q: u32, ell: u32 },
    #[error("l = {ell} exceeds the limit {limit}")]
    TooLarge { ell: u32, limit: u32 },
    #[error("{0} is not on the curve")]
    NotOnCurve(CurvePoint),
    #[error("{0} is a pole")]
    Pole(CurvePoint),
    #[error("Q must be an affine point with nonzero x, got {0}")]
    BadPoleLocation(CurvePoint),
    #[error("valuation of the zero function")]
    ZeroFunction,
    #[error("orbit decomposition inconsistent: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CurvePoint {
    Affine { x: u32, y: u32 },
    Infinity,
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Affine { x, y } => write!(f, "({x}, {y})"),
            CurvePoint::Infinity => write!(f, "P_inf"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitTable {
    pub ell: u32,
    /// Each orbit starts at its smallest point and follows `phi`.
    pub orbits: Vec<Vec<CurvePoint>>,
    /// Index of the orbit containing `Q`.
    pub q_orbit: usize,
    /// Points with `x = 0`, then `P_inf`.
    pub fixed_and_short: Vec<CurvePoint>,
}

impl OrbitTable {
    /// `Q`, the smallest point with nonzero `x`.
    pub fn q_point(&self) -> CurvePoint {
        self.orbits[self.q_orbit][0]
    }

    /// Representatives `P_1, ..., P_{l-1}` with their orbits, in canonical order.
    pub fn sequence_orbits(&self) -> impl Iterator<Item = &Vec<CurvePoint>> {
        self.orbits.iter().enumerate().filter(move |(i, _)| *i != self.q_orbit).map(|(_, o)| o)
    }
}

/// `scale * prod (y - roots_i) / (x - a)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PoleFunction {
    pub ell: u32,
    pub genus: u32,
    pub a: u32,
    pub b: u32,
    pub roots: Vec<u32>,
    pub scale: u32,
}

impl PoleFunction {
    pub fn pole(&self) -> CurvePoint {
        CurvePoint::Affine { x: self.a, y: self.b }
    }
}

/// Polynomial in `x, y` keyed by `(deg_x, deg_y)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    pub terms: BTreeMap<(u32, u32), u32>,
}

impl BiPoly {
    pub fn monomial(i: u32, j: u32, c: u32) -> BiPoly {
        let mut p = BiPoly::default();
        if c != 0 {
            p.terms.insert((i, j), c);
        }
        p
    }

    fn add_term(&mut self, field: &Field, key: (u32, u32), c: u32) {
        let v = field.add(self.terms.get(&key).copied().unwrap_or(0), c);
        if v == 0 {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, v);
        }
    }

    pub fn add(&self, field: &Field, other: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&k, &c) in &other.terms {
            out.add_term(field, k, c);
        }
        out
    }

    pub fn mul(&self, field: &Field, other: &BiPoly) -> BiPoly {
        let mut out = BiPoly::default();
        for (&(i1, j1), &c1) in &self.terms {
            for (&(i2, j2), &c2) in &other.terms {
                out.add_term(field, (i1 + i2, j1 + j2), field.mul(c1, c2));
            }
        }
        out
    }

    /// Rewrites with `y^l = x^(l+1) - y` until every `y`-degree is below `l`.
    pub fn reduce(&self, field: &Field, ell: u32) -> BiPoly {
        let mut p = self.clone();
        while let Some((&(i, j), &c)) = p.terms.iter().find(|((_, j), _)| *j >= ell) {
            p.terms.remove(&(i, j));
            p.add_term(field, (i + ell + 1, j - ell), c);
            p.add_term(field, (i, j - ell + 1), field.neg(c));
        }
        p
    }

    pub fn eval(&self, field: &Field, x: u32, y: u32) -> u32 {
        self.terms.iter().fold(0, |acc, (&(i, j), &c)| {
            let t = field.mul(c, field.mul(field.pow(x, i as i64).unwrap(), field.pow(y, j as i64).unwrap()));
            field.add(acc, t)
        })
    }
}

/// Curve data over a fixed field: the affine points and the `phi` action.
pub struct Hermitian {
    ell: u32,
    field: Field,
    points: Vec<CurvePoint>,
}

impl Hermitian {
    /// Curve over the canonical `F_{l^2}`, `l <= DEFAULT_MAX_ELL`.
    pub fn new(ell: u32) -> Result<Hermitian, HermitianError> {
        Hermitian::build(ell, None, DEFAULT_MAX_ELL)
    }

    /// Curve over `F_{l^2}` with an optional primitive-element override.
    pub fn build(ell: u32, primitive: Option<u32>, max_ell: u32) -> Result<Hermitian, HermitianError> {
        if ell > max_ell {
            return Err(HermitianError::TooLarge { ell, limit: max_ell });
        }
        prime_power(ell as u64).map_err(|_| HermitianError::NotPrimePower(ell))?;
        let q = (ell as u64) * (ell as u64);
        let mut field = Field::of_order(q)?;
        if let Some(g) = primitive {
            field = field.with_primitive(g)?;
        }
        Hermitian::over(ell, field)
    }

    pub fn over(ell: u32, field: Field) -> Result<Hermitian, HermitianError> {
        if field.q() as u64 != ell as u64 * ell as u64 {
            return Err(HermitianError::NotSquare { q: field.q(), ell });
        }
        // Group y by the value of the trace-like map y^l + y.
        let mut fibres: Vec<Vec<u32>> = vec![Vec::new(); field.q() as usize];
        for y in 0..field.q() {
            let t = field.add(field.pow(y, ell as i64)?, y);
            fibres[t as usize].push(y);
        }
        let mut points = Vec::new();
        for x in 0..field.q() {
            let norm = field.pow(x, ell as i64 + 1)?;
            points.extend(fibres[norm as usize].iter().map(|&y| CurvePoint::Affine { x, y }));
        }
        Ok(Hermitian { ell, field, points })
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn genus(&self) -> u32 {
        self.ell * (self.ell - 1) / 2
    }

    /// Sequence length `(q - 1)(l - 1)`.
    pub fn sequence_length(&self) -> usize {
        (self.field.q() as usize - 1) * (self.ell as usize - 1)
    }

    pub fn on_curve(&self, p: CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => {
                let f = &self.field;
                x < f.q()
                    && y < f.q()
                    && f.add(f.pow(y, self.ell as i64).unwrap(), y) == f.pow(x, self.ell as i64 + 1).unwrap()
            }
        }
    }

    /// All rational points: affine points sorted by `(x, y)`, then `P_inf`.
    pub fn curve_points(&self) -> Vec<CurvePoint> {
        let mut out = self.points.clone();
        out.push(CurvePoint::Infinity);
        out
    }

    /// `phi^t(P)`: `(x, y) -> (g^t x, g^((l+1)t) y)`.
    pub fn phi_apply(&self, p: CurvePoint, t: i64) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => {
                let f = &self.field;
                CurvePoint::Affine {
                    x: f.mul(f.exp(t), x),
                    y: f.mul(f.exp(t * (self.ell as i64 + 1)), y),
                }
            }
        }
    }

    pub fn orbit_decomposition(&self) -> Result<OrbitTable, HermitianError> {
        let q1 = self.field.q() as usize - 1;
        let mut seen = std::collections::HashSet::new();
        let mut orbits = Vec::new();
        let mut fixed_and_short = Vec::new();
        for &p in &self.points {
            let CurvePoint::Affine { x, .. } = p else { continue };
            if x == 0 {
                fixed_and_short.push(p);
                continue;
            }
            if seen.contains(&p) {
                continue;
            }
            let orbit: Vec<CurvePoint> = (0..q1 as i64).map(|t| self.phi_apply(p, t)).collect();
            if self.phi_apply(p, q1 as i64) != p {
                return Err(HermitianError::Inconsistent(format!("orbit of {p} does not close")));
            }
            let mut xs: Vec<u32> = orbit
                .iter()
                .map(|o| match o {
                    CurvePoint::Affine { x, .. } => *x,
                    CurvePoint::Infinity => 0,
                })
                .collect();
            xs.sort_unstable();
            xs.dedup();
            if xs.len() != q1 || xs[0] == 0 {
                return Err(HermitianError::Inconsistent(format!("orbit of {p} has repeated x")));
            }
            for &o in &orbit {
                if !self.on_curve(o) || !seen.insert(o) {
                    return Err(HermitianError::Inconsistent(format!("orbit of {p} leaves the curve or overlaps")));
                }
            }
            // `p` is the smallest point of its orbit since points are scanned in order.
            orbits.push(orbit);
        }
        if orbits.len() != self.ell as usize {
            return Err(HermitianError::Inconsistent(format!("{} orbits, expected {}", orbits.len(), self.ell)));
        }
        fixed_and_short.push(CurvePoint::Infinity);
        Ok(OrbitTable { ell: self.ell, orbits, q_orbit: 0, fixed_and_short })
    }

    fn roots_over(&self, a: u32) -> Vec<u32> {
        let norm = self.field.pow(a, self.ell as i64 + 1).unwrap();
        self.points
            .iter()
            .filter_map(|p| match *p {
                CurvePoint::Affine { x, y } if x == a => Some(y),
                _ => None,
            })
            .inspect(|&y| debug_assert_eq!(self.field.add(self.field.pow(y, self.ell as i64).unwrap(), y), norm))
            .collect()
    }

    /// The pole function for `Q = (a, b)`, `a != 0`.
    pub fn construct_h(&self, q_point: CurvePoint) -> Result<PoleFunction, HermitianError> {
        if !self.on_curve(q_point) {
            return Err(HermitianError::NotOnCurve(q_point));
        }
        let CurvePoint::Affine { x: a, y: b } = q_point else {
            return Err(HermitianError::BadPoleLocation(q_point));
        };
        if a == 0 {
            return Err(HermitianError::BadPoleLocation(q_point));
        }
        let roots: Vec<u32> = self.roots_over(a).into_iter().filter(|&y| y != b).collect();
        debug_assert_eq!(roots.len(), self.ell as usize - 1);
        Ok(PoleFunction { ell: self.ell, genus: self.genus(), a, b, roots, scale: 1 })
    }

    pub fn numerator(&self, h: &PoleFunction) -> BiPoly {
        let f = &self.field;
        h.roots.iter().fold(BiPoly::monomial(0, 0, h.scale), |acc, &r| {
            let lin = BiPoly::monomial(0, 1, 1).add(f, &BiPoly::monomial(0, 0, f.neg(r)));
            acc.mul(f, &lin)
        })
    }

    pub fn denominator(&self, h: &PoleFunction) -> BiPoly {
        BiPoly::monomial(1, 0, 1).add(&self.field, &BiPoly::monomial(0, 0, self.field.neg(h.a)))
    }

    /// `nu_{P_inf}` of a polynomial: `-max(i l + j (l+1))` after reduction.
    pub fn valuation_at_infinity(&self, poly: &BiPoly) -> Result<i64, HermitianError> {
        let ell = self.ell as i64;
        poly.reduce(&self.field, self.ell)
            .terms
            .keys()
            .map(|&(i, j)| -(i as i64 * ell + j as i64 * (ell + 1)))
            .min()
            .ok_or(HermitianError::ZeroFunction)
    }

    /// `nu_{P_inf}(h)`: numerator valuation minus denominator valuation.
    pub fn h_valuation_at_infinity(&self, h: &PoleFunction) -> Result<i64, HermitianError> {
        Ok(self.valuation_at_infinity(&self.numerator(h))? - self.valuation_at_infinity(&self.denominator(h))?)
    }

    /// `h(P)` for affine `P != Q`.
    pub fn eval_h(&self, h: &PoleFunction, p: CurvePoint) -> Result<u32, HermitianError> {
        let CurvePoint::Affine { x, y } = p else {
            return Err(HermitianError::Pole(p));
        };
        if !self.on_curve(p) {
            return Err(HermitianError::NotOnCurve(p));
        }
        if p == h.pole() {
            return Err(HermitianError::Pole(p));
        }
        let f = &self.field;
        if x != h.a {
            let num = h.roots.iter().fold(h.scale, |acc, &r| f.mul(acc, f.sub(y, r)));
            return Ok(f.div(num, f.sub(x, h.a))?);
        }
        // (a, b_i): (y - b_i)/(x - a) -> a^l, the other factors evaluate directly.
        let i = h.roots.iter().position(|&r| r == y).ok_or(HermitianError::NotOnCurve(p))?;
        let rest = h
            .roots
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(h.scale, |acc, (_, &r)| f.mul(acc, f.sub(y, r)));
        Ok(f.mul(rest, f.pow(h.a, self.ell as i64)?))
    }

    /// `phi^t(h)`, the function with `phi^t(h)(phi^t(P)) = h(P)`:
    /// `h(g^-t x, g^-(l+1)t y)`, rewritten in the same closed form.
    pub fn apply_automorphism_to_h(&self, h: &PoleFunction, t: i64) -> PoleFunction {
        let f = &self.field;
        let lam = f.exp(t * (self.ell as i64 + 1));
        let mu = f.exp(t);
        let lam_pow = f.pow(lam, -(self.ell as i64 - 1)).unwrap();
        PoleFunction {
            ell: h.ell,
            genus: h.genus,
            a: f.mul(mu, h.a),
            b: f.mul(lam, h.b),
            roots: h.roots.iter().map(|&r| f.mul(lam, r)).collect(),
            scale: f.mul(h.scale, f.mul(lam_pow, mu)),
        }
    }

    /// Closed form of `h` for display.
    pub fn describe_h(&self, h: &PoleFunction) -> String {
        let factors: Vec<String> = h.roots.iter().map(|r| format!("(y - {r})")).collect();
        let num = if factors.is_empty() { "1".to_string() } else { factors.join("*") };
        let scale = if h.scale == 1 { String::new() } else { format!("{} * ", h.scale) };
        format!("h = {scale}{num} / (x - {}); Q = ({}, {}); g = {}", h.a, h.a, h.b, h.genus)
    }

    /// `(h(P_1), h(phi P_1), ..., h(phi^{q-2} P_{l-1}))`.
    pub fn sequence(&self) -> Result<Sequence, HermitianError> {
        let table = self.orbit_decomposition()?;
        let q_point = table.q_point();
        let h = self.construct_h(q_point)?;
        let mut values = Vec::with_capacity(self.sequence_length());
        for orbit in table.sequence_orbits() {
            for &p in orbit {
                values.push(self.eval_h(&h, p)?);
            }
        }
        let CurvePoint::Affine { x: qx, y: qy } = q_point else { unreachable!() };
        Ok(Sequence::new(self.field.clone(), values, Provenance::Hermitian { ell: self.ell, qx, qy })
            .expect("values in range"))
    }
}

/// Sequence of length `(q-1)(l-1)` for the canonical field and choices.
pub fn hermitian_sequence(ell: u32) -> Result<Sequence, HermitianError> {
    Hermitian::new(ell)?.sequence()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn omega_field() -> Hermitian {
        Hermitian::new(2).unwrap()
    }

    #[test]
    fn point_counts() {
        for ell in [2u32, 3, 4, 5] {
            let h = Hermitian::new(ell).unwrap();
            let pts = h.curve_points();
            assert_eq!(pts.len() as u32, ell.pow(3) + 1);
            assert!(pts.iter().all(|&p| h.on_curve(p)));
        }
        assert!(matches!(Hermitian::new(6), Err(HermitianError::TooLarge { .. })));
        assert!(matches!(Hermitian::build(6, None, 10), Err(HermitianError::NotPrimePower(6))));
        assert!(Hermitian::build(7, None, 8).is_ok());
        assert!(matches!(Hermitian::over(3, Field::of_order(8).unwrap()), Err(HermitianError::NotSquare { .. })));
    }

    #[test]
    fn f4_points_over_one() {
        let h = omega_field();
        let w = h.field().primitive();
        let w2 = h.field().mul(w, w);
        let mut over_one: Vec<CurvePoint> = h
            .curve_points()
            .into_iter()
            .filter(|p| matches!(p, CurvePoint::Affine { x: 1, .. }))
            .collect();
        over_one.sort();
        let mut expected = vec![CurvePoint::Affine { x: 1, y: w }, CurvePoint::Affine { x: 1, y: w2 }];
        expected.sort();
        assert_eq!(over_one, expected);
    }

    #[test]
    fn phi_action() {
        let h = omega_field();
        let w = h.field().primitive();
        let p = CurvePoint::Affine { x: 1, y: w };
        assert_eq!(h.phi_apply(p, 0), p);
        assert_eq!(h.phi_apply(p, 3), p);
        assert_eq!(h.phi_apply(p, 1), CurvePoint::Affine { x: w, y: w });
        assert_eq!(h.phi_apply(CurvePoint::Infinity, 5), CurvePoint::Infinity);
    }

    #[test]
    fn orbits() {
        for ell in [2u32, 3, 4, 5] {
            let h = Hermitian::new(ell).unwrap();
            let t = h.orbit_decomposition().unwrap();
            let q1 = (ell * ell - 1) as usize;
            assert_eq!(t.orbits.len(), ell as usize);
            assert!(t.orbits.iter().all(|o| o.len() == q1));
            let mut all: Vec<CurvePoint> = t.orbits.iter().flatten().copied().collect();
            all.sort();
            all.dedup();
            assert_eq!(all.len(), ell as usize * q1);
            for o in &t.orbits {
                for &p in o {
                    assert!(o.contains(&h.phi_apply(p, 1)));
                }
            }
            assert_eq!(t.fixed_and_short.len(), ell as usize + 1);
            assert_eq!(t.sequence_orbits().count(), ell as usize - 1);
        }
    }

    #[test]
    fn pole_function_f4() {
        let h = omega_field();
        let f = h.field();
        let w = f.primitive();
        let w2 = f.mul(w, w);
        let q = CurvePoint::Affine { x: 1, y: w };
        let pf = h.construct_h(q).unwrap();
        assert_eq!(pf.roots, vec![w2]);
        assert_eq!(h.h_valuation_at_infinity(&pf).unwrap(), -1);
        assert_eq!(h.eval_h(&pf, CurvePoint::Affine { x: w, y: w }).unwrap(), w);
        assert_eq!(h.eval_h(&pf, CurvePoint::Affine { x: 1, y: w2 }).unwrap(), 1);
        assert_eq!(h.eval_h(&pf, q), Err(HermitianError::Pole(q)));
        assert!(h.eval_h(&pf, CurvePoint::Infinity).is_err());
        assert!(h.construct_h(CurvePoint::Infinity).is_err());
        assert!(matches!(h.construct_h(CurvePoint::Affine { x: 0, y: 0 }), Err(HermitianError::BadPoleLocation(_))));
    }

    #[test]
    fn valuations() {
        let h3 = Hermitian::new(3).unwrap();
        assert_eq!(h3.valuation_at_infinity(&BiPoly::monomial(1, 0, 1)).unwrap(), -3);
        assert_eq!(h3.valuation_at_infinity(&BiPoly::monomial(0, 0, 1)).unwrap(), 0);
        assert_eq!(h3.valuation_at_infinity(&BiPoly::monomial(0, 2, 1)).unwrap(), -8);
        // y^3 reduces to x^4 - y: valuation -12 = 3 * -(3 + 1)
        assert_eq!(h3.valuation_at_infinity(&BiPoly::monomial(0, 3, 1)).unwrap(), -12);
        assert_eq!(h3.valuation_at_infinity(&BiPoly::default()), Err(HermitianError::ZeroFunction));
        for ell in [2u32, 3, 4, 5] {
            let h = Hermitian::new(ell).unwrap();
            let t = h.orbit_decomposition().unwrap();
            let pf = h.construct_h(t.q_point()).unwrap();
            assert_eq!(h.valuation_at_infinity(&h.numerator(&pf)).unwrap(), -(ell as i64 * ell as i64 - 1));
            assert_eq!(h.h_valuation_at_infinity(&pf).unwrap(), -(2 * pf.genus as i64 - 1));
        }
    }

    #[test]
    fn reduction_preserves_values_on_curve() {
        let h = Hermitian::new(3).unwrap();
        let f = h.field();
        let p = BiPoly::monomial(2, 5, 4).add(f, &BiPoly::monomial(1, 3, 1));
        let r = p.reduce(f, 3);
        assert!(r.terms.keys().all(|&(_, j)| j < 3));
        for pt in h.curve_points() {
            if let CurvePoint::Affine { x, y } = pt {
                assert_eq!(p.eval(f, x, y), r.eval(f, x, y));
            }
        }
    }

    #[test]
    fn h_regular_except_at_q() {
        for ell in [2u32, 3, 4, 5] {
            let h = Hermitian::new(ell).unwrap();
            let t = h.orbit_decomposition().unwrap();
            for orbit in &t.orbits {
                let pf = h.construct_h(orbit[3 % orbit.len()]).unwrap();
                for p in h.curve_points() {
                    let r = h.eval_h(&pf, p);
                    if p == pf.pole() || p == CurvePoint::Infinity {
                        assert!(r.is_err());
                    } else {
                        r.unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn automorphism_identity() {
        for ell in [2u32, 3, 4] {
            let h = Hermitian::new(ell).unwrap();
            let q1 = h.field().q() as i64 - 1;
            let pf = h.construct_h(h.orbit_decomposition().unwrap().q_point()).unwrap();
            assert_eq!(h.apply_automorphism_to_h(&pf, 0), pf);
            assert_eq!(h.apply_automorphism_to_h(&pf, q1), pf);
            for t in 0..q1 {
                let moved = h.apply_automorphism_to_h(&pf, t);
                assert_eq!(moved.pole(), h.phi_apply(pf.pole(), t));
                for p in h.curve_points() {
                    if p == CurvePoint::Infinity || p == pf.pole() {
                        continue;
                    }
                    assert_eq!(h.eval_h(&moved, h.phi_apply(p, t)).unwrap(), h.eval_h(&pf, p).unwrap());
                }
            }
        }
    }

    #[test]
    fn sequence_lengths() {
        assert_eq!(hermitian_sequence(2).unwrap().len(), 3);
        assert_eq!(hermitian_sequence(3).unwrap().len(), 16);
        assert_eq!(hermitian_sequence(4).unwrap().len(), 45);
        assert_eq!(hermitian_sequence(5).unwrap().len(), 96);
    }

    #[test]
    fn sequence_blocks_nonzero() {
        for ell in [2u32, 3, 4, 5] {
            let s = hermitian_sequence(ell).unwrap();
            let q1 = (ell * ell - 1) as usize;
            for r in 1..ell as usize {
                assert!(!s.prefix(r * q1).is_zero());
            }
        }
    }

    #[test]
    fn describe() {
        let h = omega_field();
        let pf = h.construct_h(h.orbit_decomposition().unwrap().q_point()).unwrap();
        assert_eq!(h.describe_h(&pf), format!("h = (y - {}) / (x - 1); Q = (1, {}); g = 1", pf.roots[0], pf.b));
    }
}
