//! Reduction modulo a word-sized prime `p ≡ 1 (mod 4)`.
//!
//! Reduction is a ring homomorphism on elements whose denominators are prime
//! to `p`, so a matrix of full column rank modulo `p` has full column rank
//! over the field itself.

use crate::factor::{is_prime_u64, mul_mod, pow_mod};
use crate::scalar::{Rational, Scalar};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    /// A square root of `-1`.
    i: u64,
}

impl PrimeField {
    /// The `k`-th prime `≡ 1 (mod 4)` below `2^62`, counting down.
    pub fn nth(k: usize) -> Self {
        let mut n = (1u64 << 62) + 1;
        let mut seen = 0;
        loop {
            n -= 4;
            if is_prime_u64(n) {
                if seen == k {
                    return PrimeField::new(n);
                }
                seen += 1;
            }
        }
    }

    fn new(p: u64) -> Self {
        let i = (2..)
            .map(|g| pow_mod(g, (p - 1) / 4, p))
            .find(|&t| mul_mod(t, t, p) == p - 1)
            .expect("p = 1 mod 4 has a square root of -1");
        PrimeField { p, i }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn int(&self, n: &BigInt) -> u64 {
        let r = n % BigInt::from(self.p);
        let r = if r < BigInt::zero() {
            r + BigInt::from(self.p)
        } else {
            r
        };
        r.to_u64().expect("reduced below p")
    }

    fn rational(&self, q: &Rational) -> Option<u64> {
        let d = self.int(q.denom());
        (d != 0).then(|| mul_mod(self.int(q.numer()), self.inv(d), self.p))
    }

    /// Image of `x`, or `None` when a denominator vanishes modulo `p`.
    pub fn reduce<S: Scalar>(&self, x: &S) -> Option<u64> {
        let re = self.rational(&x.re())?;
        let im = self.rational(&x.im())?;
        Some(self.add(re, self.mul(im, self.i)))
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.p as u128) as u64
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.p - b)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.p)
    }

    pub fn inv(&self, a: u64) -> u64 {
        pow_mod(a, self.p - 2, self.p)
    }

    /// Truncated product of two coefficient sequences.
    pub fn series_mul(&self, a: &[u64], b: &[u64], len: usize) -> Vec<u64> {
        (0..len)
            .map(|k| {
                (0..=k)
                    .filter(|&i| i < a.len() && k - i < b.len())
                    .fold(0, |acc, i| self.add(acc, self.mul(a[i], b[k - i])))
            })
            .collect()
    }

    pub fn rank(&self, mut rows: Vec<Vec<u64>>) -> usize {
        let cols = rows.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, p);
            let inv = self.inv(rows[r][c]);
            for i in r + 1..rows.len() {
                let f = self.mul(rows[i][c], inv);
                if f == 0 {
                    continue;
                }
                for j in c..cols {
                    rows[i][j] = self.sub(rows[i][j], self.mul(f, rows[r][j]));
                }
            }
            r += 1;
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{GaussianRational, Ring};

    #[test]
    fn field_setup() {
        let f = PrimeField::nth(0);
        assert_eq!(f.modulus() % 4, 1);
        assert!(is_prime_u64(f.modulus()));
        assert_eq!(f.mul(f.i, f.i), f.modulus() - 1);
        assert_ne!(PrimeField::nth(1), f);
    }

    #[test]
    fn reduction_is_multiplicative() {
        let f = PrimeField::nth(0);
        let a = GaussianRational::new(
            Rational::new(3.into(), 7.into()),
            Rational::new((-5).into(), 2.into()),
        );
        let b = GaussianRational::new(Rational::from_int(11), Rational::new(1.into(), 9.into()));
        let ab = a.clone() * b.clone();
        assert_eq!(
            f.reduce(&ab),
            Some(f.mul(f.reduce(&a).unwrap(), f.reduce(&b).unwrap()))
        );
        let q = Rational::new(1.into(), BigInt::from(f.modulus()));
        assert_eq!(f.reduce(&q), None);
    }

    #[test]
    fn rank_examples() {
        let f = PrimeField::nth(0);
        assert_eq!(f.rank(vec![vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(f.rank(vec![vec![1, 2], vec![3, 4], vec![5, 6]]), 2);
        assert_eq!(f.rank(vec![vec![0, 0]]), 0);
    }
}
