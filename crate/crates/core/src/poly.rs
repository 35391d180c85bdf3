//! Dense univariate polynomials.
//!
//! `Polynomial<R>` works over any [`Ring`] with exact division, so the same
//! type serves as ℚ[z], as ℚ[x][y] (nested), and as the coefficient ring of
//! resultant computations. Field-only operations (Euclidean division, gcd,
//! square-free decomposition) live in the `Scalar` impl block.

use crate::error::{Error, Result};
use crate::scalar::{Ring, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// Coefficients in ascending degree, trailing zeros stripped.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> Polynomial<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn constant(c: R) -> Self {
        Polynomial::new(vec![c])
    }

    /// `c * z^k`
    pub fn monomial(c: R, k: usize) -> Self {
        let mut coeffs = vec![R::zero(); k + 1];
        coeffs[k] = c;
        Polynomial::new(coeffs)
    }

    /// The variable itself.
    pub fn var() -> Self {
        Polynomial::monomial(R::one(), 1)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> R {
        self.coeffs.last().cloned().unwrap_or_else(R::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Lowest index with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * R::from_int(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &R) -> Self {
        Polynomial::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&R) -> T) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }

    /// `self(inner)`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(Polynomial::zero(), |acc, c| {
            &(&acc * inner) + &Polynomial::constant(c.clone())
        })
    }

    /// `self(z^d)`.
    pub fn substitute_power(&self, d: usize) -> Self {
        let mut coeffs = vec![R::zero(); self.deg() * d + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * d] = c.clone();
        }
        Polynomial::new(coeffs)
    }

    /// Multiply by `z^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![R::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial::new(coeffs)
    }

    /// Pseudo-remainder: `lead(d)^(deg self - deg d + 1) * self mod d`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("pseudo-remainder by zero polynomial");
        let Some(ds) = self.degree() else {
            return self.clone();
        };
        if ds < dd {
            return self.clone();
        }
        let lc = d.lead();
        let mut r = self.clone();
        let mut e = ds - dd + 1;
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let t = Polynomial::monomial(r.lead(), dr - dd);
            r = &r.scale(&lc) - &(&t * d);
            e -= 1;
        }
        r.scale(&lc.pow(e as u32))
    }

    /// Resultant by the subresultant polynomial remainder sequence.
    pub fn resultant(&self, other: &Self) -> R {
        let (Some(da), Some(db)) = (self.degree(), other.degree()) else {
            return R::zero();
        };
        let (mut a, mut b) = (self.clone(), other.clone());
        let mut negate = false;
        if da < db {
            std::mem::swap(&mut a, &mut b);
            negate = (da * db) % 2 == 1;
        }
        if b.deg() == 0 {
            let r = b.lead().pow(a.deg() as u32);
            return if negate { -r } else { r };
        }
        let mut g = R::one();
        let mut h = R::one();
        loop {
            let (deg_a, deg_b) = (a.deg(), b.deg());
            let delta = deg_a - deg_b;
            if deg_a % 2 == 1 && deg_b % 2 == 1 {
                negate = !negate;
            }
            let r = a.pseudo_rem(&b);
            a = b;
            let divisor = g.clone() * h.pow(delta as u32);
            b = r
                .exact_div(&Polynomial::constant(divisor))
                .expect("subresultant division is exact");
            g = a.lead();
            h = if delta == 0 {
                h
            } else {
                g.pow(delta as u32)
                    .exact_div(&h.pow(delta as u32 - 1))
                    .expect("subresultant scaling is exact")
            };
            match b.degree() {
                None => return R::zero(),
                Some(0) => {
                    let deg_a = a.deg() as u32;
                    let num = b.lead().pow(deg_a);
                    let r = if deg_a == 0 {
                        num * h
                    } else {
                        num.exact_div(&h.pow(deg_a - 1))
                            .expect("final subresultant division is exact")
                    };
                    return if negate { -r } else { r };
                }
                Some(_) => {}
            }
        }
    }
}

impl<S: Scalar> Polynomial<S> {
    /// Euclidean division.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let inv = d.lead().inv()?;
        let mut r = self.clone();
        let mut q = vec![S::zero(); self.deg().saturating_sub(dd) + 1];
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let c = r.lead() * inv.clone();
            q[dr - dd] = c.clone();
            r = &r - &(Polynomial::monomial(c, dr - dd) * d.clone());
        }
        Ok((Polynomial::new(q), r))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().inv().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's square-free decomposition of the monic part: `(factor, multiplicity)`
    /// with pairwise coprime monic square-free factors of positive degree.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        if self.deg() == 0 {
            return vec![];
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).expect("gcd divides").0;
        let c = df.div_rem(&a0).expect("gcd divides").0;
        let mut d = &c - &b.derivative();
        let mut out = Vec::new();
        let mut i = 1;
        while b.deg() > 0 {
            let a = b.gcd(&d);
            if a.deg() > 0 {
                out.push((a.clone(), i));
            }
            let nb = b.div_rem(&a).expect("gcd divides").0;
            let nc = d.div_rem(&a).expect("gcd divides").0;
            d = &nc - &nb.derivative();
            b = nb;
            i += 1;
        }
        out
    }

    /// Product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self) -> Self {
        self.squarefree_decomposition()
            .into_iter()
            .fold(Polynomial::constant(S::one()), |acc, (f, _)| acc * f)
    }

    /// Scale to integral coefficients by the lcm of all denominators.
    pub fn clear_denominators(&self) -> Self {
        let m = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator_lcm()));
        self.scale(&S::from_rational(m.into()))
    }

    /// Multiplicity of `x` as a root.
    pub fn root_multiplicity(&self, x: &S) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = Polynomial::new(vec![-x.clone(), S::one()]);
        let mut p = self.clone();
        let mut k = 0;
        while p.eval(x).is_zero() {
            p = p.div_rem(&lin).expect("nonzero divisor").0;
            k += 1;
        }
        k
    }
}

impl<R: Ring> Zero for Polynomial<R> {
    fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<R: Ring> One for Polynomial<R> {
    fn one() -> Self {
        Polynomial::constant(R::one())
    }
}

impl<'a, R: Ring> Add<&'a Polynomial<R>> for &'a Polynomial<R> {
    type Output = Polynomial<R>;
    fn add(self, o: &Polynomial<R>) -> Polynomial<R> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl<'a, R: Ring> Sub<&'a Polynomial<R>> for &'a Polynomial<R> {
    type Output = Polynomial<R>;
    fn sub(self, o: &Polynomial<R>) -> Polynomial<R> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl<'a, R: Ring> Mul<&'a Polynomial<R>> for &'a Polynomial<R> {
    type Output = Polynomial<R>;
    fn mul(self, o: &Polynomial<R>) -> Polynomial<R> {
        if self.is_zero() || o.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                let t = std::mem::replace(&mut out[i + j], R::zero());
                out[i + j] = t + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<R: Ring> Add for Polynomial<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        &self + &o
    }
}

impl<R: Ring> Sub for Polynomial<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        &self - &o
    }
}

impl<R: Ring> Mul for Polynomial<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        &self * &o
    }
}

impl<R: Ring> Neg for Polynomial<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Polynomial::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl<R: Ring> Ring for Polynomial<R> {
    fn from_int(n: i64) -> Self {
        Polynomial::constant(R::from_int(n))
    }

    fn exact_div(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        let Some(ds) = self.degree() else {
            return Some(Polynomial::zero());
        };
        if ds < dd {
            return None;
        }
        let lc = d.lead();
        let mut r = self.clone();
        let mut q = vec![R::zero(); ds - dd + 1];
        while let Some(dr) = r.degree() {
            if dr < dd {
                return None;
            }
            let c = r.lead().exact_div(&lc)?;
            q[dr - dd] = c.clone();
            r = &r - &(&Polynomial::monomial(c, dr - dd) * d);
        }
        Some(Polynomial::new(q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn p(cs: &[i64]) -> Polynomial<Rational> {
        Polynomial::new(cs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    #[test]
    fn trims_and_degrees() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(p(&[0, 0]).degree(), None);
        assert!(p(&[]).is_zero());
    }

    #[test]
    fn division_and_gcd() {
        // (z-1)(z+2) and (z-1)(z-3)
        let a = p(&[-2, 1, 1]);
        let b = p(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let (q, r) = a.div_rem(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[2, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn squarefree_decomposition_of_repeated_roots() {
        // z (z+2)^2 (z-1)^3
        let f = p(&[0, 1]) * p(&[2, 1]) * p(&[2, 1]) * p(&[-1, 1]) * p(&[-1, 1]) * p(&[-1, 1]);
        let dec = f.squarefree_decomposition();
        assert_eq!(
            dec,
            vec![(p(&[0, 1]), 1), (p(&[2, 1]), 2), (p(&[-1, 1]), 3)]
        );
    }

    #[test]
    fn resultant_of_linear_factors() {
        // Res(z - a, g) = g(a)
        let g = p(&[5, -7, 0, 1]);
        assert_eq!(p(&[-3, 1]).resultant(&g), g.eval(&Rational::from_int(3)));
        // Common root gives zero.
        assert!(p(&[-2, 1, 1]).resultant(&p(&[3, -4, 1])).is_zero());
    }

    #[test]
    fn nested_exact_division() {
        type Bi = Polynomial<Polynomial<Rational>>;
        let x = Polynomial::<Rational>::var();
        // (y - x)(y + x) / (y - x)
        let a: Bi = Polynomial::new(vec![
            -(x.clone() * x.clone()),
            Polynomial::zero(),
            Polynomial::one(),
        ]);
        let b: Bi = Polynomial::new(vec![-x.clone(), Polynomial::one()]);
        let q = a.exact_div(&b).unwrap();
        assert_eq!(q, Polynomial::new(vec![x.clone(), Polynomial::one()]));
        assert!(b
            .exact_div(&Polynomial::new(vec![x.clone(), Polynomial::one()]))
            .is_none());
    }
}
