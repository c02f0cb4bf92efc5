//! Berlekamp-Massey synthesis of the shortest homogeneous linear recurrence.

use crate::field::Field;

/// Shortest LFSR generating `s`: returns `(L, C)` where
/// `C = [1, c_1, ..., c_L]` and `s_t = -(c_1 s_{t-1} + ... + c_L s_{t-L})`
/// for `L <= t < n`.
///
/// A sequence `(0, ..., 0, x)` with `x != 0` gets `L = n`.
pub fn berlekamp_massey(field: &Field, s: &[u32]) -> (usize, Vec<u32>) {
    let mut c = vec![1u32];
    let mut b = vec![1u32];
    let mut len = 0usize;
    let mut shift = 1usize;
    let mut last = 1u32;
    for t in 0..s.len() {
        let mut d = s[t];
        for i in 1..=len.min(c.len() - 1) {
            d = field.add(d, field.mul(c[i], s[t - i]));
        }
        if d == 0 {
            shift += 1;
            continue;
        }
        let coef = field.mul(d, field.inv(last).unwrap());
        let prev = c.clone();
        if c.len() < b.len() + shift {
            c.resize(b.len() + shift, 0);
        }
        for (i, &bi) in b.iter().enumerate() {
            c[i + shift] = field.sub(c[i + shift], field.mul(coef, bi));
        }
        if 2 * len <= t {
            len = t + 1 - len;
            b = prev;
            last = d;
            shift = 1;
        } else {
            shift += 1;
        }
    }
    c.resize(len + 1, 0);
    (len, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let f5 = Field::of_order(5).unwrap();
        assert_eq!(berlekamp_massey(&f5, &[0, 0, 0]).0, 0);
        assert_eq!(berlekamp_massey(&f5, &[1, 2, 3]).0, 2);
        assert_eq!(berlekamp_massey(&f5, &[1, 2, 4, 3, 1]).0, 1);
        let f2 = Field::of_order(2).unwrap();
        assert_eq!(berlekamp_massey(&f2, &[0, 0, 1]).0, 3);
        // Fibonacci mod 2: 1,1,0,1,1,0 has s_t = s_{t-1} + s_{t-2}
        assert_eq!(berlekamp_massey(&f2, &[1, 1, 0, 1, 1, 0]), (2, vec![1, 1, 1]));
    }

    /// Least L such that some homogeneous recurrence of length L fits, by
    /// trying every coefficient vector.
    fn brute_linear(field: &Field, s: &[u32]) -> usize {
        let q = field.q() as u64;
        if s.iter().all(|&v| v == 0) {
            return 0;
        }
        for l in 1..s.len() {
            for code in 0..q.pow(l as u32) {
                let a: Vec<u32> = (0..l).map(|j| ((code / q.pow(j as u32)) % q) as u32).collect();
                let ok = (l..s.len()).all(|t| {
                    let v = (0..l).fold(0, |acc, j| field.add(acc, field.mul(a[j], s[t - 1 - j])));
                    v == s[t]
                });
                if ok {
                    return l;
                }
            }
        }
        s.len()
    }

    #[test]
    fn matches_brute_force() {
        for q in [2u64, 3, 4] {
            let field = Field::of_order(q).unwrap();
            for n in 1..=6usize {
                let total = q.pow(n as u32);
                for code in 0..total {
                    let s: Vec<u32> = (0..n).map(|i| ((code / q.pow(i as u32)) % q) as u32).collect();
                    let (l, c) = berlekamp_massey(&field, &s);
                    assert_eq!(l, brute_linear(&field, &s), "{s:?}");
                    for t in l..n {
                        let v = (1..=l).fold(s[t], |acc, i| field.add(acc, field.mul(c[i], s[t - i])));
                        assert_eq!(v, 0);
                    }
                }
            }
        }
    }
}
