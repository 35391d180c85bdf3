//! Exact scalars over ℚ and ℚ(i).
//!
//! Every algorithm in the crate is generic over [`Scalar`]; the two concrete
//! fields are [`Rational`] and [`GaussianRational`]. Values are always kept in
//! lowest terms with positive denominators, so `==` is structural.

use crate::error::{Error, Result};
use crate::factor::{self, GaussInt};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub type Rational = BigRational;

/// Commutative ring with exact division where it exists.
pub trait Ring:
    Clone
    + PartialEq
    + Eq
    + Hash
    + Debug
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_int(n: i64) -> Self;

    /// `self / rhs` if `rhs` divides `self` exactly, else `None`.
    fn exact_div(&self, rhs: &Self) -> Option<Self>;

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

/// The coefficient field selected for a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Q,
    Qi,
}

impl Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Field::Q => "Q",
            Field::Qi => "Qi",
        })
    }
}

/// Multiplicative decomposition `unit * prod(prime^e)` of a nonzero scalar.
///
/// Units form a cyclic group of order `unit_order` (2 for ℚ, 4 for ℚ(i)); the
/// unit is its generator raised to `unit_exponent`. Primes are keyed by a
/// canonical `(re, im)` representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicativeParts {
    pub unit_order: u32,
    pub unit_exponent: u32,
    pub primes: BTreeMap<(BigInt, BigInt), i64>,
}

/// Exact field element.
pub trait Scalar: Ring + Div<Output = Self> + Display {
    const FIELD: Field;

    fn from_rational(q: Rational) -> Self;

    /// `i`, when the field contains it.
    fn imaginary_unit() -> Option<Self>;

    fn re(&self) -> Rational;
    fn im(&self) -> Rational;

    fn norm_sq(&self) -> Rational {
        let (re, im) = (self.re(), self.im());
        &re * &re + &im * &im
    }

    /// Total bit length of numerators and denominators; pivoting heuristic.
    fn bit_size(&self) -> u64;

    /// Smallest positive integer `d` with `d * self` integral.
    fn denominator_lcm(&self) -> BigInt;

    /// Every `r` in the field with `r^n = self`, in canonical order.
    fn nth_roots(&self, n: u32) -> Result<Vec<Self>>;

    /// Candidate roots `s/t` with `s | constant` and `t | lead`, both integral
    /// and nonzero (rational root theorem in the field's ring of integers).
    fn root_candidates(lead: &Self, constant: &Self) -> Result<Vec<Self>>;

    fn multiplicative_parts(&self) -> Result<MultiplicativeParts>;

    /// Total order used only to make outputs deterministic.
    fn canonical_cmp(&self, other: &Self) -> Ordering;

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.clone() / rhs.clone())
        }
    }

    fn inv(&self) -> Result<Self> {
        Self::one().checked_div(self)
    }

    /// Both real and imaginary parts nonzero; printers parenthesize these.
    fn is_compound(&self) -> bool {
        !self.re().is_zero() && !self.im().is_zero()
    }

    /// A single-part scalar with a leading minus sign when printed.
    fn prints_negative(&self) -> bool {
        !self.is_compound() && (Signed::is_negative(&self.re()) || Signed::is_negative(&self.im()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn scalar_arith<S: Scalar>(a: &S, b: &S, kind: ArithKind) -> Result<S> {
    Ok(match kind {
        ArithKind::Add => a.clone() + b.clone(),
        ArithKind::Sub => a.clone() - b.clone(),
        ArithKind::Mul => a.clone() * b.clone(),
        ArithKind::Div => a.checked_div(b)?,
    })
}

fn bits(n: &BigInt) -> u64 {
    n.bits()
}

fn rational_bits(q: &Rational) -> u64 {
    bits(q.numer()) + bits(q.denom())
}

/// Exact integer n-th root of a nonnegative integer.
fn exact_int_root(a: &BigInt, n: u32) -> Option<BigInt> {
    let r = a.nth_root(n);
    (num_traits::pow(r.clone(), n as usize) == *a).then_some(r)
}

impl Ring for Rational {
    fn from_int(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        (!rhs.is_zero()).then(|| self / rhs)
    }
}

impl Scalar for Rational {
    const FIELD: Field = Field::Q;

    fn from_rational(q: Rational) -> Self {
        q
    }

    fn imaginary_unit() -> Option<Self> {
        None
    }

    fn re(&self) -> Rational {
        self.clone()
    }

    fn im(&self) -> Rational {
        Rational::zero()
    }

    fn bit_size(&self) -> u64 {
        rational_bits(self)
    }

    fn denominator_lcm(&self) -> BigInt {
        self.denom().clone()
    }

    fn nth_roots(&self, n: u32) -> Result<Vec<Self>> {
        if n == 0 {
            return Err(Error::Precondition("root index must be positive".into()));
        }
        if self.is_zero() {
            return Ok(vec![Rational::zero()]);
        }
        let negative = Signed::is_negative(self);
        if negative && n % 2 == 0 {
            return Ok(vec![]);
        }
        let abs = self.abs();
        let (Some(p), Some(q)) = (
            exact_int_root(abs.numer(), n),
            exact_int_root(abs.denom(), n),
        ) else {
            return Ok(vec![]);
        };
        let r = Rational::new(p, q);
        Ok(if negative {
            vec![-r]
        } else if n % 2 == 0 {
            vec![-r.clone(), r]
        } else {
            vec![r]
        })
    }

    fn root_candidates(lead: &Self, constant: &Self) -> Result<Vec<Self>> {
        let ps = factor::divisors(&factor::factor_integer(&constant.to_integer())?);
        let qs = factor::divisors(&factor::factor_integer(&lead.to_integer())?);
        let mut out = Vec::with_capacity(2 * ps.len() * qs.len());
        for p in &ps {
            for q in &qs {
                let r = Rational::new(p.clone(), q.clone());
                out.push(-r.clone());
                out.push(r);
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    fn multiplicative_parts(&self) -> Result<MultiplicativeParts> {
        if self.is_zero() {
            return Err(Error::Precondition("zero has no factorization".into()));
        }
        let mut primes = BTreeMap::new();
        for (p, e) in factor::factor_integer(self.numer())? {
            primes.insert((p, BigInt::zero()), e as i64);
        }
        for (p, e) in factor::factor_integer(self.denom())? {
            primes.insert((p, BigInt::zero()), -(e as i64));
        }
        Ok(MultiplicativeParts {
            unit_order: 2,
            unit_exponent: u32::from(Signed::is_negative(self)),
            primes,
        })
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
}

/// Element of ℚ(i), stored as exact real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianRational {
    re: Rational,
    im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    fn common_denominator(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }

    /// `(integral part, m)` with `self = integral / m`, `m > 0`.
    fn split_integral(&self) -> (GaussInt, BigInt) {
        let m = self.common_denominator();
        let scaled = |q: &Rational| (q * Rational::from_integer(m.clone())).to_integer();
        (GaussInt::new(scaled(&self.re), scaled(&self.im)), m)
    }

    fn from_gauss_int(z: &GaussInt) -> Self {
        GaussianRational::new(
            Rational::from_integer(z.re.clone()),
            Rational::from_integer(z.im.clone()),
        )
    }

    fn integral(&self) -> GaussInt {
        GaussInt::new(self.re.to_integer(), self.im.to_integer())
    }
}

impl Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}

impl Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = |im: &Rational| {
            if im.is_one() {
                "i".to_string()
            } else if *im == -Rational::one() {
                "-i".to_string()
            } else {
                format!("{im}i")
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => f.write_str(&imag(&self.im)),
            (false, false) => {
                let im = imag(&self.im);
                if im.starts_with('-') {
                    write!(f, "{}{}", self.re, im)
                } else {
                    write!(f, "{}+{}", self.re, im)
                }
            }
        }
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        GaussianRational::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        GaussianRational::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        GaussianRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Div for GaussianRational {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let n = o.norm_sq();
        assert!(!n.is_zero(), "division by zero");
        let num = self * o.conj();
        GaussianRational::new(num.re / &n, num.im / n)
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational::new(Rational::one(), Rational::zero())
    }
}

impl From<Rational> for GaussianRational {
    fn from(q: Rational) -> Self {
        GaussianRational::new(q, Rational::zero())
    }
}

impl Ring for GaussianRational {
    fn from_int(n: i64) -> Self {
        Rational::from_int(n).into()
    }

    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        (!rhs.is_zero()).then(|| self.clone() / rhs.clone())
    }
}

impl Scalar for GaussianRational {
    const FIELD: Field = Field::Qi;

    fn from_rational(q: Rational) -> Self {
        q.into()
    }

    fn imaginary_unit() -> Option<Self> {
        Some(GaussianRational::new(Rational::zero(), Rational::one()))
    }

    fn re(&self) -> Rational {
        self.re.clone()
    }

    fn im(&self) -> Rational {
        self.im.clone()
    }

    fn bit_size(&self) -> u64 {
        rational_bits(&self.re) + rational_bits(&self.im)
    }

    fn denominator_lcm(&self) -> BigInt {
        self.common_denominator()
    }

    fn nth_roots(&self, n: u32) -> Result<Vec<Self>> {
        if n == 0 {
            return Err(Error::Precondition("root index must be positive".into()));
        }
        if self.is_zero() {
            return Ok(vec![Self::zero()]);
        }
        // self = a/m, root = s/m with s^n = a * m^(n-1) in Z[i].
        let (a, m) = self.split_integral();
        let target = a.mul(&GaussInt::new(
            num_traits::pow(m.clone(), n as usize - 1),
            0,
        ));
        let (k, primes) = factor::factor_gaussian(&target)?;
        if primes.iter().any(|(_, e)| e % n != 0) {
            return Ok(vec![]);
        }
        let mut base = GaussInt::one();
        for (pi, e) in &primes {
            base = base.mul(&pi.pow(e / n));
        }
        let mut out = Vec::new();
        for j in 0..4u8 {
            if (u32::from(j) * n) % 4 == u32::from(k) {
                let s = base.mul(&factor::unit(j));
                let m_q = Rational::from_integer(m.clone());
                out.push(GaussianRational::from_gauss_int(&s) / GaussianRational::from(m_q));
            }
        }
        out.sort_by(|a, b| a.canonical_cmp(b));
        out.dedup();
        Ok(out)
    }

    fn root_candidates(lead: &Self, constant: &Self) -> Result<Vec<Self>> {
        let ss = factor::gaussian_divisors(&constant.integral(), true)?;
        let ts = factor::gaussian_divisors(&lead.integral(), false)?;
        let mut out = Vec::with_capacity(ss.len() * ts.len());
        for s in &ss {
            for t in &ts {
                out.push(GaussianRational::from_gauss_int(s) / GaussianRational::from_gauss_int(t));
            }
        }
        out.sort_by(|a, b| a.canonical_cmp(b));
        out.dedup();
        Ok(out)
    }

    fn multiplicative_parts(&self) -> Result<MultiplicativeParts> {
        if self.is_zero() {
            return Err(Error::Precondition("zero has no factorization".into()));
        }
        let (a, m) = self.split_integral();
        let (ka, fa) = factor::factor_gaussian(&a)?;
        let (km, fm) = factor::factor_gaussian(&GaussInt::new(m, 0))?;
        let mut primes: BTreeMap<(BigInt, BigInt), i64> = BTreeMap::new();
        for (pi, e) in fa {
            *primes.entry((pi.re, pi.im)).or_default() += e as i64;
        }
        for (pi, e) in fm {
            *primes.entry((pi.re, pi.im)).or_default() -= e as i64;
        }
        primes.retain(|_, e| *e != 0);
        Ok(MultiplicativeParts {
            unit_order: 4,
            unit_exponent: (u32::from(ka) + 4 - u32::from(km)) % 4,
            primes,
        })
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn g(re: Rational, im: Rational) -> GaussianRational {
        GaussianRational::new(re, im)
    }

    #[test]
    fn rational_arithmetic_examples() {
        let r = scalar_arith(&q(1, 2), &q(1, 3), ArithKind::Add).unwrap();
        assert_eq!(r, q(5, 6));
        assert_eq!(
            scalar_arith(&q(2, 3), &Rational::zero(), ArithKind::Div),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn gaussian_norm_product() {
        let a = g(q(1, 1), q(1, 1));
        let b = g(q(1, 1), q(-1, 1));
        assert_eq!(
            scalar_arith(&a, &b, ArithKind::Mul).unwrap(),
            GaussianRational::from_int(2)
        );
    }

    #[test]
    fn display_forms() {
        assert_eq!(g(q(1, 2), q(3, 4)).to_string(), "1/2+3/4i");
        assert_eq!(g(q(1, 2), q(-1, 1)).to_string(), "1/2-i");
        assert_eq!(g(q(0, 1), q(1, 1)).to_string(), "i");
        assert_eq!(g(q(0, 1), q(-2, 3)).to_string(), "-2/3i");
        assert_eq!(q(-7, 3).to_string(), "-7/3");
    }

    #[test]
    fn rational_roots() {
        assert_eq!(q(4, 9).nth_roots(2).unwrap(), vec![q(-2, 3), q(2, 3)]);
        assert_eq!(q(-8, 27).nth_roots(3).unwrap(), vec![q(-2, 3)]);
        assert!(q(1, 2).nth_roots(2).unwrap().is_empty());
        assert!(q(-1, 1).nth_roots(2).unwrap().is_empty());
    }

    #[test]
    fn gaussian_roots() {
        let minus_one = GaussianRational::from_int(-1);
        let roots = minus_one.nth_roots(2).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert_eq!(r.clone() * r.clone(), minus_one);
        }
        // (1+i)^2 = 2i, so 2i/9 has square roots ±(1+i)/3.
        let t = g(q(0, 1), q(2, 9));
        let roots = t.nth_roots(2).unwrap();
        assert!(roots.contains(&g(q(1, 3), q(1, 3))));
        assert_eq!(GaussianRational::one().nth_roots(4).unwrap().len(), 4);
        assert!(GaussianRational::from_int(2)
            .nth_roots(2)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn multiplicative_parts_rational() {
        let p = q(-12, 5).multiplicative_parts().unwrap();
        assert_eq!(p.unit_exponent, 1);
        assert_eq!(p.primes.get(&(BigInt::from(2), BigInt::zero())), Some(&2));
        assert_eq!(p.primes.get(&(BigInt::from(5), BigInt::zero())), Some(&-1));
    }

    #[test]
    fn multiplicative_parts_gaussian() {
        // 2 = -i (1+i)^2
        let p = GaussianRational::from_int(2)
            .multiplicative_parts()
            .unwrap();
        assert_eq!(p.primes.get(&(BigInt::from(1), BigInt::from(1))), Some(&2));
        assert_eq!(p.unit_exponent, 3);
        // (1+i)/2 = i^1 (1+i)^(-1)
        let h = g(q(1, 2), q(1, 2)).multiplicative_parts().unwrap();
        assert_eq!(h.primes.get(&(BigInt::from(1), BigInt::from(1))), Some(&-1));
        assert_eq!(h.unit_exponent, 1);
    }
}
