//! Integer and Gaussian-integer factorization at desk scale.
//!
//! Factoring is trial division by every candidate up to [`PRIME_BOUND`]. A
//! leftover cofactor below `PRIME_BOUND²` is prime; a larger one that fits in
//! 64 bits goes through deterministic Miller-Rabin. Anything else is reported
//! as [`Error::FactorizationLimit`].

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub const PRIME_BOUND: u64 = 1_000_000;

/// Prime factorization of `|n|` as ascending `(prime, exponent)` pairs.
pub fn factor_integer(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    if n.is_zero() {
        return Err(Error::Precondition("cannot factor zero".into()));
    }
    let mut rest = n.abs();
    let mut out = Vec::new();
    let push = |rest: &mut BigInt, d: u64, out: &mut Vec<(BigInt, u32)>| {
        let big = BigInt::from(d);
        let mut e = 0;
        while (&*rest % &big).is_zero() {
            *rest /= &big;
            e += 1;
        }
        if e > 0 {
            out.push((big, e));
        }
    };
    push(&mut rest, 2, &mut out);
    let mut d = 3u64;
    while d <= PRIME_BOUND {
        if BigInt::from(d) * BigInt::from(d) > rest {
            break;
        }
        push(&mut rest, d, &mut out);
        d += 2;
    }
    if rest > BigInt::one() {
        let bound_sq = BigInt::from(PRIME_BOUND) * BigInt::from(PRIME_BOUND);
        let certified = rest < bound_sq || rest.to_u64().is_some_and(is_prime_u64);
        if !certified {
            return Err(Error::FactorizationLimit {
                value: n.to_string(),
            });
        }
        out.push((rest, 1));
    }
    Ok(out)
}

/// All positive divisors of the integer whose factorization is given.
pub fn divisors(factors: &[(BigInt, u32)]) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
        for d in &out {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..*e {
                acc *= p;
                next.push(acc.clone());
            }
        }
        out = next;
    }
    out.sort();
    out
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Element of `Z[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussInt {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn one() -> Self {
        GaussInt::new(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn conj(&self) -> Self {
        GaussInt::new(self.re.clone(), -&self.im)
    }

    pub fn mul(&self, o: &Self) -> Self {
        GaussInt::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = GaussInt::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `self / o` when the division is exact in `Z[i]`.
    pub fn exact_div(&self, o: &Self) -> Option<Self> {
        let n = o.norm();
        if n.is_zero() {
            return None;
        }
        let num = self.mul(&o.conj());
        let (qr, rr) = num.re.div_rem(&n);
        let (qi, ri) = num.im.div_rem(&n);
        (rr.is_zero() && ri.is_zero()).then(|| GaussInt::new(qr, qi))
    }

    fn div_round(&self, o: &Self) -> Self {
        let n = o.norm();
        let num = self.mul(&o.conj());
        let round = |x: &BigInt| (BigInt::from(2) * x + &n).div_floor(&(BigInt::from(2) * &n));
        GaussInt::new(round(&num.re), round(&num.im))
    }

    fn sub(&self, o: &Self) -> Self {
        GaussInt::new(&self.re - &o.re, &self.im - &o.im)
    }

    /// Power `k` of `i` with `i^k * self` in the first quadrant (`re > 0, im >= 0`).
    pub fn normalizing_unit(&self) -> u8 {
        (0..4u8)
            .find(|&k| {
                let z = self.mul(&unit(k));
                z.re.is_positive() && !z.im.is_negative()
            })
            .unwrap_or(0)
    }

    pub fn normalized(&self) -> Self {
        self.mul(&unit(self.normalizing_unit()))
    }
}

/// `i^k`.
pub fn unit(k: u8) -> GaussInt {
    match k % 4 {
        0 => GaussInt::new(1, 0),
        1 => GaussInt::new(0, 1),
        2 => GaussInt::new(-1, 0),
        _ => GaussInt::new(0, -1),
    }
}

fn gauss_gcd(a: &GaussInt, b: &GaussInt) -> GaussInt {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let q = a.div_round(&b);
        let r = a.sub(&q.mul(&b));
        a = b;
        b = r;
    }
    a
}

/// Gaussian prime above a rational prime `p ≡ 1 (mod 4)`.
fn split_prime(p: &BigInt) -> GaussInt {
    let pm1 = p - 1;
    let half = &pm1 / 2;
    let quarter = &pm1 / 4;
    let mut c = BigInt::from(2);
    loop {
        if c.modpow(&half, p) == pm1 {
            break;
        }
        c += 1;
    }
    let t = c.modpow(&quarter, p);
    gauss_gcd(&GaussInt::new(p.clone(), 0), &GaussInt::new(t, 1)).normalized()
}

/// Factorization of a nonzero Gaussian integer as `i^unit * prod(prime^e)`,
/// primes normalized to the first quadrant and sorted.
pub fn factor_gaussian(z: &GaussInt) -> Result<(u8, Vec<(GaussInt, u32)>)> {
    if z.is_zero() {
        return Err(Error::Precondition("cannot factor zero".into()));
    }
    let mut rest = z.clone();
    let mut out: Vec<(GaussInt, u32)> = Vec::new();
    let strip = |rest: &mut GaussInt, pi: GaussInt, out: &mut Vec<(GaussInt, u32)>| {
        let mut e = 0;
        while let Some(q) = rest.exact_div(&pi) {
            *rest = q;
            e += 1;
        }
        if e > 0 {
            out.push((pi, e));
        }
    };
    for (p, _) in factor_integer(&z.norm())? {
        if p == BigInt::from(2) {
            strip(&mut rest, GaussInt::new(1, 1), &mut out);
        } else if (&p % 4u32) == BigInt::from(3) {
            strip(&mut rest, GaussInt::new(p.clone(), 0), &mut out);
        } else {
            let pi = split_prime(&p);
            let bar = pi.conj().normalized();
            strip(&mut rest, pi, &mut out);
            strip(&mut rest, bar, &mut out);
        }
    }
    out.sort();
    let k = (0..4u8)
        .find(|&k| unit(k) == rest)
        .expect("cofactor after stripping all primes is a unit");
    Ok((k, out))
}

/// All divisors of a nonzero Gaussian integer; associates included when
/// `with_units` is set, otherwise only first-quadrant representatives.
pub fn gaussian_divisors(z: &GaussInt, with_units: bool) -> Result<Vec<GaussInt>> {
    let (_, factors) = factor_gaussian(z)?;
    let mut out = vec![GaussInt::one()];
    for (pi, e) in &factors {
        let mut next = Vec::new();
        for d in &out {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..*e {
                acc = acc.mul(pi);
                next.push(acc.clone());
            }
        }
        out = next;
    }
    let mut out: Vec<GaussInt> = out.into_iter().map(|d| d.normalized()).collect();
    if with_units {
        out = out
            .iter()
            .flat_map(|d| (0..4u8).map(move |k| d.mul(&unit(k))))
            .collect();
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn small_factorizations() {
        assert_eq!(factor_integer(&big(64)).unwrap(), vec![(big(2), 6)]);
        assert_eq!(
            factor_integer(&big(-360)).unwrap(),
            vec![(big(2), 3), (big(3), 2), (big(5), 1)]
        );
        assert_eq!(factor_integer(&big(1)).unwrap(), vec![]);
    }

    #[test]
    fn large_prime_cofactor() {
        // Both factors lie above the trial bound, so only Miller-Rabin sees it.
        let p = big(1_000_000_007);
        assert_eq!(factor_integer(&p).unwrap(), vec![(p.clone(), 1)]);
        let composite = big(1_000_003) * big(1_000_033);
        assert!(matches!(
            factor_integer(&composite),
            Err(Error::FactorizationLimit { .. })
        ));
    }

    #[test]
    fn divisor_lists() {
        let f = factor_integer(&big(12)).unwrap();
        let d: Vec<i64> = divisors(&f).iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn miller_rabin_agrees_with_sieve() {
        let n = 5000usize;
        let mut sieve = vec![true; n];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..n {
            if sieve[i] {
                for j in (i * i..n).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for (i, &p) in sieve.iter().enumerate() {
            assert_eq!(is_prime_u64(i as u64), p, "{i}");
        }
    }

    #[test]
    fn gaussian_factorization_reassembles() {
        for (a, b) in [(5, 0), (2, 0), (3, 4), (-7, 1), (0, 6), (10, -15), (1, 1)] {
            let z = GaussInt::new(a, b);
            let (k, fs) = factor_gaussian(&z).unwrap();
            let mut acc = unit(k);
            for (pi, e) in &fs {
                assert_eq!(pi, &pi.normalized());
                acc = acc.mul(&pi.pow(*e));
            }
            assert_eq!(acc, z, "{a}+{b}i");
        }
    }

    #[test]
    fn gaussian_divisors_of_five() {
        let d = gaussian_divisors(&GaussInt::new(5, 0), false).unwrap();
        // 1, 1+2i, 2+i, 5
        assert_eq!(d.len(), 4);
        assert!(d.contains(&GaussInt::new(2, 1)));
        assert!(d.contains(&GaussInt::new(1, 2)));
    }
}
