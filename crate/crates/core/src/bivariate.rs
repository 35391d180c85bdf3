//! Polynomials in two variables `x`, `y`.
//!
//! Stored as a polynomial in `y` whose coefficients are polynomials in `x`,
//! so the generic resultant and exact division of [`Polynomial`] apply.

use crate::error::{Error, Result};
use crate::parse::{join_terms, power_string, term_string, ExprTarget};
use crate::poly::Polynomial;
use crate::ratfunc::RationalFunction;
use crate::scalar::Scalar;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use std::cmp::Reverse;
use std::fmt;

pub type Nested<S> = Polynomial<Polynomial<S>>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BivariatePolynomial<S> {
    inner: Nested<S>,
}

/// Sort key of the graded-lex order used for relation columns:
/// `1, x, y, x², xy, y², x³, ...`.
pub fn graded_lex_key(i: usize, j: usize) -> (usize, Reverse<usize>) {
    (i + j, Reverse(i))
}

impl<S: Scalar> BivariatePolynomial<S> {
    pub fn from_nested(inner: Nested<S>) -> Self {
        BivariatePolynomial { inner }
    }

    pub fn nested(&self) -> &Nested<S> {
        &self.inner
    }

    /// Sum of `c · x^i · y^j`.
    pub fn from_terms(terms: impl IntoIterator<Item = (usize, usize, S)>) -> Self {
        let mut rows: Vec<Vec<S>> = Vec::new();
        for (i, j, c) in terms {
            if rows.len() <= j {
                rows.resize(j + 1, Vec::new());
            }
            if rows[j].len() <= i {
                rows[j].resize(i + 1, S::zero());
            }
            rows[j][i] = rows[j][i].clone() + c;
        }
        BivariatePolynomial {
            inner: Polynomial::new(rows.into_iter().map(Polynomial::new).collect()),
        }
    }

    pub fn constant(c: S) -> Self {
        Self::from_terms([(0, 0, c)])
    }

    pub fn x() -> Self {
        Self::from_terms([(1, 0, S::one())])
    }

    pub fn y() -> Self {
        Self::from_terms([(0, 1, S::one())])
    }

    /// Nonzero terms `(i, j, c)` in ascending graded-lex order.
    pub fn terms(&self) -> Vec<(usize, usize, S)> {
        let mut out: Vec<(usize, usize, S)> = self
            .inner
            .coeffs()
            .iter()
            .enumerate()
            .flat_map(|(j, px)| {
                px.coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(move |(i, c)| (i, j, c.clone()))
            })
            .collect();
        out.sort_by_key(|t| graded_lex_key(t.0, t.1));
        out
    }

    pub fn coeff(&self, i: usize, j: usize) -> S {
        self.inner.coeff(j).coeff(i)
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    pub fn deg_x(&self) -> usize {
        self.inner
            .coeffs()
            .iter()
            .map(Polynomial::deg)
            .max()
            .unwrap_or(0)
    }

    pub fn deg_y(&self) -> usize {
        self.inner.deg()
    }

    pub fn add(&self, o: &Self) -> Self {
        BivariatePolynomial {
            inner: &self.inner + &o.inner,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        BivariatePolynomial {
            inner: &self.inner - &o.inner,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        BivariatePolynomial {
            inner: &self.inner * &o.inner,
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        BivariatePolynomial {
            inner: self.inner.map(|px| px.scale(c)),
        }
    }

    /// Exchange the roles of `x` and `y`.
    pub fn swap(&self) -> Self {
        Self::from_terms(self.terms().into_iter().map(|(i, j, c)| (j, i, c)))
    }

    /// Scaled so the first nonzero coefficient in graded-lex order is 1.
    pub fn normalized(&self) -> Self {
        match self.terms().first() {
            Some((_, _, c)) => self.scale(&c.inv().expect("nonzero coefficient")),
            None => self.clone(),
        }
    }

    pub fn partial_y(&self) -> Self {
        BivariatePolynomial {
            inner: self.inner.derivative(),
        }
    }

    /// Exact quotient in `S[x, y]`, if it exists.
    pub fn exact_div(&self, o: &Self) -> Option<Self> {
        use crate::scalar::Ring;
        self.inner
            .exact_div(&o.inner)
            .map(|inner| BivariatePolynomial { inner })
    }

    /// Numerator of `f(X1(t), X2(t))` over the common denominator
    /// `den(X1)^{deg_x f} · den(X2)^{deg_y f}`.
    pub fn substitute_numerator(
        &self,
        x1: &RationalFunction<S>,
        x2: &RationalFunction<S>,
    ) -> Polynomial<S> {
        let (m, n) = (self.deg_x(), self.deg_y());
        let powers = |p: &Polynomial<S>, k: usize| {
            let mut v = vec![Polynomial::one()];
            for e in 1..=k {
                v.push(&v[e - 1] * p);
            }
            v
        };
        let (p1, q1) = (powers(x1.num(), m), powers(x1.den(), m));
        let (p2, q2) = (powers(x2.num(), n), powers(x2.den(), n));
        self.terms()
            .into_iter()
            .fold(Polynomial::zero(), |acc, (i, j, c)| {
                let t = &(&p1[i] * &q1[m - i]) * &(&p2[j] * &q2[n - j]);
                &acc + &t.scale(&c)
            })
    }

    /// Numerator of `f(A1(x), A2(y))` over `den(A1)(x)^{deg_x f} · den(A2)(y)^{deg_y f}`.
    pub fn compose_coordinatewise(
        &self,
        a1: &RationalFunction<S>,
        a2: &RationalFunction<S>,
    ) -> Self {
        let (m, n) = (self.deg_x(), self.deg_y());
        let as_x = |p: &Polynomial<S>| BivariatePolynomial {
            inner: Polynomial::constant(p.clone()),
        };
        let as_y = |p: &Polynomial<S>| BivariatePolynomial {
            inner: p.map(|c| Polynomial::constant(c.clone())),
        };
        let powers = |b: BivariatePolynomial<S>, k: usize| {
            let mut v = vec![BivariatePolynomial::constant(S::one())];
            for e in 1..=k {
                v.push(v[e - 1].mul(&b));
            }
            v
        };
        let (p1, q1) = (powers(as_x(a1.num()), m), powers(as_x(a1.den()), m));
        let (p2, q2) = (powers(as_y(a2.num()), n), powers(as_y(a2.den()), n));
        self.terms().into_iter().fold(
            BivariatePolynomial::constant(S::zero()),
            |acc, (i, j, c)| {
                let t = p1[i].mul(&q1[m - i]).mul(&p2[j].mul(&q2[n - j]));
                acc.add(&t.scale(&c))
            },
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "monomials": self
                .terms()
                .into_iter()
                .map(|(i, j, c)| json!([i, j, c.to_string()]))
                .collect::<Vec<_>>(),
            "text": self.to_string(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad =
            || Error::Precondition("relation JSON: expected monomials [[i, j, coeff]]".into());
        let monos = v
            .get("monomials")
            .and_then(Value::as_array)
            .ok_or_else(bad)?;
        let mut terms = Vec::new();
        for m in monos {
            let a = m.as_array().filter(|a| a.len() == 3).ok_or_else(bad)?;
            let i = a[0].as_u64().ok_or_else(bad)? as usize;
            let j = a[1].as_u64().ok_or_else(bad)? as usize;
            let c = crate::parse::parse_scalar(a[2].as_str().ok_or_else(bad)?)?;
            terms.push((i, j, c));
        }
        Ok(Self::from_terms(terms))
    }
}

impl<S: Scalar> fmt::Display for BivariatePolynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .terms()
            .iter()
            .map(|(i, j, c)| {
                let mono = [power_string("x", *i), power_string("y", *j)]
                    .into_iter()
                    .filter(|s| !s.is_empty())
                    .collect::<Vec<_>>()
                    .join("*");
                term_string(c, &mono)
            })
            .collect();
        f.write_str(&join_terms(&terms))
    }
}

impl<S: Scalar> ExprTarget for BivariatePolynomial<S> {
    type Scalar = S;

    fn variables() -> &'static [char] {
        &['x', 'y']
    }
    fn variable(name: char) -> Self {
        if name == 'x' {
            Self::x()
        } else {
            Self::y()
        }
    }
    fn scalar(c: S) -> Self {
        Self::constant(c)
    }
    fn add(&self, o: &Self) -> Self {
        BivariatePolynomial::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        BivariatePolynomial::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        BivariatePolynomial::mul(self, o)
    }
    fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if o.deg_x() > 0 || o.deg_y() > 0 {
            return Err(Error::Parse {
                position: 0,
                expected: "division by a constant in a polynomial".into(),
            });
        }
        Ok(self.scale(&o.coeff(0, 0).inv()?))
    }
}

/// Content with respect to `y`: monic gcd of the coefficients in `S[x]`.
pub fn content_in_x<S: Scalar>(p: &Nested<S>) -> Polynomial<S> {
    p.coeffs()
        .iter()
        .fold(Polynomial::zero(), |g: Polynomial<S>, c| g.gcd(c))
}

fn primitive_part<S: Scalar>(p: &Nested<S>) -> Nested<S> {
    let c = content_in_x(p);
    if c.is_zero() || c.deg() == 0 {
        return p.clone();
    }
    p.map(|a| a.div_rem(&c).expect("nonzero content").0)
}

/// Gcd in `S[x][y]` by the primitive remainder sequence.
pub fn nested_gcd<S: Scalar>(a: &Nested<S>, b: &Nested<S>) -> Nested<S> {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let c = content_in_x(a).gcd(&content_in_x(b));
    let (mut a, mut b) = (primitive_part(a), primitive_part(b));
    if a.deg() < b.deg() {
        std::mem::swap(&mut a, &mut b);
    }
    let g = loop {
        if b.deg() == 0 {
            break Polynomial::one();
        }
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            break b;
        }
        a = b;
        b = primitive_part(&r);
    };
    g.map(|px| px * &c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_expr, parse_ratfunc};
    use crate::scalar::Rational;

    fn bi(s: &str) -> BivariatePolynomial<Rational> {
        parse_expr(s).unwrap()
    }

    #[test]
    fn graded_lex_printing() {
        assert_eq!(bi("y^2 - x^3").to_string(), "y^2-x^3");
        assert_eq!(bi("-y^2 + x").normalized().to_string(), "x-y^2");
        assert_eq!(bi("x^2 - y").normalized().to_string(), "y-x^2");
        assert_eq!(bi("3 + 2x*y").to_string(), "3+2*x*y");
        assert_eq!(bi("x - x").to_string(), "0");
        assert!(parse_expr::<BivariatePolynomial<Rational>>("x/y").is_err());
        assert_eq!(bi("x/2").to_string(), "1/2*x");
    }

    #[test]
    fn degrees_and_swap() {
        let f = bi("y^2 - x^3 + x*y");
        assert_eq!((f.deg_x(), f.deg_y()), (3, 2));
        assert_eq!(f.swap(), bi("x^2 - y^3 + x*y"));
    }

    #[test]
    fn substitution_vanishes_on_parametrization() {
        let f = bi("y^2 - x^3");
        let x1: RationalFunction<Rational> = parse_ratfunc("z^2").unwrap();
        let x2: RationalFunction<Rational> = parse_ratfunc("z^3").unwrap();
        assert!(f.substitute_numerator(&x1, &x2).is_zero());
        assert!(!f.substitute_numerator(&x2, &x1).is_zero());
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (y - x)(y + 1) and (y - x)(x y - 2)
        let a = bi("(y - x)*(y + 1)");
        let b = bi("(y - x)*(x*y - 2)");
        let g = BivariatePolynomial::from_nested(nested_gcd(a.nested(), b.nested()));
        assert_eq!(g.normalized(), bi("x - y").normalized());
    }

    #[test]
    fn json_round_trip() {
        let f = bi("y - x^2/3");
        let back = BivariatePolynomial::<Rational>::from_json(&f.to_json()).unwrap();
        assert_eq!(back, f);
    }
}
