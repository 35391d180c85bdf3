//! Expression parser and canonical printer.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/')? factor)*
//! factor := '-' factor | '+' factor | atom ('^' digits)?
//! atom   := number | variable | 'i' | '(' expr ')'
//! number := digits ('/' digits)? 'i'?
//! ```
//!
//! Juxtaposition is multiplication, so `2z^2` and `3/4i` both parse.

use crate::error::{Error, Result};
use crate::point::PointP1;
use crate::poly::Polynomial;
use crate::ratfunc::RationalFunction;
use crate::scalar::{Rational, Scalar};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 4096;

/// An algebra the parser can build values in.
pub trait ExprTarget: Sized {
    type Scalar: Scalar;

    /// Variable names accepted by this target.
    fn variables() -> &'static [char];
    fn variable(name: char) -> Self;
    fn scalar(c: Self::Scalar) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Result<Self>;

    fn neg(&self) -> Self {
        Self::scalar(Self::Scalar::zero()).sub(self)
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::scalar(Self::Scalar::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl<S: Scalar> ExprTarget for RationalFunction<S> {
    type Scalar = S;

    fn variables() -> &'static [char] {
        &['z']
    }
    fn variable(_: char) -> Self {
        RationalFunction::identity()
    }
    fn scalar(c: S) -> Self {
        RationalFunction::constant(c)
    }
    fn add(&self, o: &Self) -> Self {
        RationalFunction::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RationalFunction::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RationalFunction::mul(self, o)
    }
    fn div(&self, o: &Self) -> Result<Self> {
        RationalFunction::div(self, o)
    }
    fn pow(&self, e: u32) -> Self {
        RationalFunction::pow(self, e)
    }
}

struct Parser<'a, T: ExprTarget> {
    chars: Vec<(usize, char)>,
    pos: usize,
    end: usize,
    _target: std::marker::PhantomData<&'a T>,
}

impl<T: ExprTarget> Parser<'_, T> {
    fn new(text: &str) -> Self {
        let chars: Vec<(usize, char)> = text
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        Parser {
            end: text.chars().count(),
            chars,
            pos: 0,
            _target: std::marker::PhantomData,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.end, |&(p, _)| p)
    }

    fn fail<V>(&self, expected: &str) -> Result<V> {
        Err(Error::Parse {
            position: self.offset(),
            expected: expected.to_string(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_all(&mut self) -> Result<T> {
        if self.chars.is_empty() {
            return self.fail("expression");
        }
        let v = self.expr()?;
        if self.pos < self.chars.len() {
            return self.fail("operator or end of input");
        }
        Ok(v)
    }

    fn expr(&mut self) -> Result<T> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Some(c) => c.is_ascii_digit() || c == '(' || c == 'i' || T::variables().contains(&c),
            None => false,
        }
    }

    fn term(&mut self) -> Result<T> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.factor()?);
            } else if self.peek() == Some('/') {
                let at = self.offset();
                self.pos += 1;
                let d = self.factor()?;
                acc = acc.div(&d).map_err(|e| match e {
                    Error::Parse { expected, .. } => Error::Parse {
                        position: at,
                        expected,
                    },
                    other => other,
                })?;
            } else if self.starts_atom() {
                acc = acc.mul(&self.factor()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<T> {
        if self.eat('-') {
            return Ok(self.factor()?.neg());
        }
        if self.eat('+') {
            return self.factor();
        }
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.exponent()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos]
            .iter()
            .map(|&(_, c)| c)
            .collect();
        s.parse().ok()
    }

    fn exponent(&mut self) -> Result<u32> {
        let start = self.pos;
        let Some(e) = self.digits() else {
            return self.fail("nonnegative integer exponent");
        };
        match u32::try_from(e) {
            Ok(e) if e <= MAX_EXPONENT => Ok(e),
            _ => {
                self.pos = start;
                self.fail(&format!("exponent at most {MAX_EXPONENT}"))
            }
        }
    }

    fn imaginary(&mut self) -> Result<T::Scalar> {
        match T::Scalar::imaginary_unit() {
            Some(i) => {
                self.pos += 1;
                Ok(i)
            }
            None => self.fail("real scalar (use the Qi field for i)"),
        }
    }

    fn atom(&mut self) -> Result<T> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return self.fail("')'");
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits().expect("digit present");
                let mut q = Rational::from_integer(n);
                if self.peek() == Some('/')
                    && self
                        .chars
                        .get(self.pos + 1)
                        .is_some_and(|&(_, c)| c.is_ascii_digit())
                {
                    self.pos += 1;
                    let at = self.offset();
                    let d = self.digits().expect("digit present");
                    if d.is_zero() {
                        return Err(Error::Parse {
                            position: at,
                            expected: "nonzero denominator".into(),
                        });
                    }
                    q /= Rational::from_integer(d);
                }
                let mut s = T::Scalar::from_rational(q);
                if self.peek() == Some('i') {
                    s = s * self.imaginary()?;
                }
                Ok(T::scalar(s))
            }
            Some('i') => Ok(T::scalar(self.imaginary()?)),
            Some(c) if T::variables().contains(&c) => {
                self.pos += 1;
                Ok(T::variable(c))
            }
            _ => {
                let vars: Vec<String> = T::variables().iter().map(|v| format!("'{v}'")).collect();
                self.fail(&format!("number, {}, or '('", vars.join(", ")))
            }
        }
    }
}

/// Parse an expression into any [`ExprTarget`].
pub fn parse_expr<T: ExprTarget>(text: &str) -> Result<T> {
    Parser::<T>::new(text).parse_all()
}

/// Parse a rational function in `z`.
pub fn parse_ratfunc<S: Scalar>(text: &str) -> Result<RationalFunction<S>> {
    parse_expr(text)
}

/// Parse a scalar literal such as `-3`, `2/5` or `1/2-3/4i`.
pub fn parse_scalar<S: Scalar>(text: &str) -> Result<S> {
    let f: RationalFunction<S> = parse_expr(text)?;
    if !f.is_constant() {
        return Err(Error::Parse {
            position: 0,
            expected: "scalar literal".into(),
        });
    }
    Ok(f.num().coeff(0))
}

/// Parse a point of the sphere: a scalar literal or `inf`.
pub fn parse_point<S: Scalar>(text: &str) -> Result<PointP1<S>> {
    match text.trim() {
        "inf" | "infinity" | "∞" => Ok(PointP1::Infinity),
        t => parse_scalar(t).map(PointP1::Finite),
    }
}

/// Printed form of `c * m` where `m` is a monomial string (empty for 1).
pub(crate) fn term_string<S: Scalar>(c: &S, monomial: &str) -> String {
    if monomial.is_empty() {
        return if c.is_compound() {
            format!("({c})")
        } else {
            c.to_string()
        };
    }
    if c.is_one() {
        monomial.to_string()
    } else if *c == -S::one() {
        format!("-{monomial}")
    } else if c.is_compound() {
        format!("({c})*{monomial}")
    } else {
        format!("{c}*{monomial}")
    }
}

/// Join signed terms; an empty list prints as `0`.
pub(crate) fn join_terms(terms: &[String]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, t) in terms.iter().enumerate() {
        if k > 0 && !t.starts_with('-') {
            out.push('+');
        }
        out.push_str(t);
    }
    out
}

pub(crate) fn power_string(var: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    }
}

impl<S: Scalar> Polynomial<S> {
    /// Canonical text in the given variable, highest degree first.
    pub fn to_string_in(&self, var: &str) -> String {
        let terms: Vec<String> = self
            .coeffs()
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| term_string(c, &power_string(var, k)))
            .collect();
        join_terms(&terms)
    }

    fn term_count(&self) -> usize {
        self.coeffs().iter().filter(|c| !c.is_zero()).count()
    }
}

impl<S: Scalar> fmt::Display for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("z"))
    }
}

impl<S: Scalar> fmt::Display for RationalFunction<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.num().to_string();
        if self.is_polynomial() {
            return f.write_str(&num);
        }
        let num = if self.num().term_count() > 1 {
            format!("({num})")
        } else {
            num
        };
        let den = self.den();
        let den = if den.term_count() == 1 && den.lead().is_one() {
            den.to_string()
        } else {
            format!("({den})")
        };
        write!(f, "{num}/{den}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{GaussianRational, Ring};

    fn rf(s: &str) -> RationalFunction<Rational> {
        parse_ratfunc(s).unwrap()
    }

    fn poly(cs: &[i64]) -> Polynomial<Rational> {
        Polynomial::new(cs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    #[test]
    fn parses_basic_maps() {
        assert_eq!(rf("z^2").num(), &poly(&[0, 0, 1]));
        assert_eq!(rf("z*(2+z)^2").num(), &poly(&[0, 4, 4, 1]));
        assert_eq!(
            rf("(z^2+1)/(z^2+1)"),
            RationalFunction::constant(Rational::one())
        );
        assert_eq!(rf("2z^2 - 1"), rf("2*z^2-1"));
        assert_eq!(rf("-z^2"), RationalFunction::from_poly(poly(&[0, 0, -1])));
    }

    #[test]
    fn denominator_is_made_monic() {
        let f = rf("1/(2z)");
        assert_eq!(f.den(), &poly(&[0, 1]));
        assert_eq!(f.num().coeff(0), Rational::new(1.into(), 2.into()));
    }

    #[test]
    fn parse_errors_report_position() {
        match parse_ratfunc::<Rational>("z^2+") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_ratfunc::<Rational>("z^"),
            Err(Error::Parse { position: 2, .. })
        ));
        assert!(matches!(
            parse_ratfunc::<Rational>("(z"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_ratfunc::<Rational>("z+i"),
            Err(Error::Parse { position: 2, .. })
        ));
        assert!(matches!(
            parse_ratfunc::<Rational>("1/0"),
            Err(Error::Parse { .. })
        ));
        assert_eq!(
            parse_ratfunc::<Rational>("z/(z-z)"),
            Err(Error::ZeroDenominator)
        );
    }

    #[test]
    fn scalars_and_points() {
        let g: GaussianRational = parse_scalar("1/2 + 3/4i").unwrap();
        assert_eq!(g.to_string(), "1/2+3/4i");
        let g: GaussianRational = parse_scalar("-i").unwrap();
        assert_eq!(g.to_string(), "-i");
        assert_eq!(parse_point::<Rational>("inf").unwrap(), PointP1::Infinity);
        assert_eq!(
            parse_point::<Rational>("-2/4").unwrap(),
            PointP1::Finite(Rational::new((-1).into(), 2.into()))
        );
        assert!(parse_scalar::<Rational>("z").is_err());
    }

    #[test]
    fn printer_output() {
        assert_eq!(rf("z*(2+z)^2").to_string(), "z^3+4*z^2+4*z");
        assert_eq!(rf("1/z").to_string(), "1/z");
        assert_eq!(rf("(z+1)/(2z^2-2)").to_string(), "1/2/(z-1)");
        assert_eq!(rf("-z/(z^2+1)").to_string(), "-z/(z^2+1)");
        assert_eq!(rf("0").to_string(), "0");
        let g: RationalFunction<GaussianRational> = parse_ratfunc("(1/2+3/4i)z^2 - i").unwrap();
        assert_eq!(g.to_string(), "(1/2+3/4i)*z^2-i");
    }

    #[test]
    fn print_parse_round_trip() {
        for s in [
            "z^2-6",
            "(z^3+1)/(z^2-3*z+2)",
            "1/2/(z-1)",
            "-3/7*z^5+z",
            "(2*z+1)/z^2",
        ] {
            let f = rf(s);
            assert_eq!(rf(&f.to_string()), f, "{s}");
        }
    }
}
