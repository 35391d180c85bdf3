//! Algebraic relations between series, implicitization of rational curves,
//! and invariant-curve checks.

use crate::bivariate::{content_in_x, graded_lex_key, nested_gcd, BivariatePolynomial, Nested};
use crate::boettcher::LaurentSeries;
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::modp::PrimeField;
use crate::poly::Polynomial;
use crate::ratfunc::RationalFunction;
use crate::scalar::{Ring, Scalar};
use crate::series::TruncatedPowerSeries;
use num_traits::Zero;
use serde_json::{json, Value};

/// Extra orders used to re-verify a detected relation.
pub const VERIFICATION_MARGIN: usize = 10;

/// Primes tried for a modular full-rank certificate before exact elimination.
const MODULAR_ATTEMPTS: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Relation,
    NoRelationUpTo,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Relation => "Relation",
            Verdict::NoRelationUpTo => "NoRelationUpTo",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyCertificate<S> {
    pub verdict: Verdict,
    pub relation: Option<BivariatePolynomial<S>>,
    pub bidegree: (usize, usize),
    /// Number of matched coefficients minus one.
    pub order: usize,
    pub verification_order: usize,
    /// Rescaling `c` applied to the second series, when one was searched.
    pub scale: Option<S>,
}

impl<S: Scalar> DependencyCertificate<S> {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "verdict": self.verdict.as_str(),
            "bidegree": [self.bidegree.0, self.bidegree.1],
            "order": self.order,
            "verification_order": self.verification_order,
            "relation": self.relation.as_ref().map(BivariatePolynomial::to_json),
        });
        if let Some(c) = &self.scale {
            v["scale"] = json!(c.to_string());
        }
        v
    }
}

/// Column monomials `(i, j)` with `i ≤ m`, `j ≤ n`, ascending graded-lex.
pub fn relation_monomials(m: usize, n: usize) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = (0..=m).flat_map(|i| (0..=n).map(move |j| (i, j))).collect();
    out.sort_by_key(|&(i, j)| graded_lex_key(i, j));
    out
}

struct Columns<S> {
    monomials: Vec<(usize, usize)>,
    series: Vec<LaurentSeries<S>>,
    shift: i64,
    /// Coefficients available in every column window.
    available: usize,
}

impl<S: Scalar> Columns<S> {
    fn build(s1: &LaurentSeries<S>, s2: &LaurentSeries<S>, m: usize, n: usize) -> Self {
        let prec = s1.precision().min(s2.precision());
        let powers = |s: &LaurentSeries<S>, k: usize| {
            let mut v = vec![LaurentSeries::one(prec)];
            for e in 1..=k {
                v.push(if e == 1 { s.clone() } else { v[e - 1].mul(s) });
            }
            v
        };
        let (p1, p2) = (powers(s1, m), powers(s2, n));
        let monomials = relation_monomials(m, n);
        let series = monomials
            .iter()
            .map(|&(i, j)| match (i, j) {
                (0, _) => p2[j].clone(),
                (_, 0) => p1[i].clone(),
                _ => p1[i].mul(&p2[j]),
            })
            .collect();

        let shift = m as i64 * (-s1.valuation()).max(0) + n as i64 * (-s2.valuation()).max(0);
        Columns {
            monomials,
            series,
            shift,
            available: prec,
        }
    }

    fn matrix(&self, rows: usize) -> ExactMatrix<S> {
        let windows: Vec<Vec<S>> = self
            .series
            .iter()
            .map(|s| s.shifted_window(self.shift, rows))
            .collect();
        let entries = (0..rows)
            .flat_map(|r| windows.iter().map(move |w| w[r].clone()))
            .collect();
        ExactMatrix::new(rows, self.series.len(), entries).expect("rectangular by construction")
    }

    /// Whether `Σ c_k col_k` vanishes in the first `rows` window coefficients.
    fn vanishes(&self, coeffs: &[S], rows: usize) -> bool {
        let windows: Vec<Vec<S>> = self
            .series
            .iter()
            .map(|s| s.shifted_window(self.shift, rows))
            .collect();
        (0..rows).all(|r| {
            coeffs
                .iter()
                .zip(&windows)
                .fold(S::zero(), |acc, (c, w)| acc + c.clone() * w[r].clone())
                .is_zero()
        })
    }
}

/// Whether the first `rows` window coefficients of the monomial columns have
/// full rank modulo `p`, which certifies full rank over the field.
fn modular_full_rank<S: Scalar>(
    f: &PrimeField,
    s1: &LaurentSeries<S>,
    s2: &LaurentSeries<S>,
    m: usize,
    n: usize,
    rows: usize,
) -> bool {
    let prec = s1.precision().min(s2.precision());
    let reduce = |s: &LaurentSeries<S>| -> Option<Vec<u64>> {
        s.coeffs()[..prec].iter().map(|c| f.reduce(c)).collect()
    };
    let (Some(r1), Some(r2)) = (reduce(s1), reduce(s2)) else {
        return false;
    };
    let powers = |s: &[u64], k: usize| {
        let mut one = vec![0; prec];
        one[0] = 1;
        let mut v = vec![one];
        for e in 1..=k {
            v.push(f.series_mul(&v[e - 1], s, prec));
        }
        v
    };
    let (p1, p2) = (powers(&r1, m), powers(&r2, n));
    let shift = m as i64 * (-s1.valuation()).max(0) + n as i64 * (-s2.valuation()).max(0);
    let columns: Vec<Vec<u64>> = relation_monomials(m, n)
        .iter()
        .map(|&(i, j)| {
            let series = f.series_mul(&p1[i], &p2[j], prec);
            let valuation = i as i64 * s1.valuation() + j as i64 * s2.valuation();
            (0..rows as i64)
                .map(|e| {
                    usize::try_from(e - shift - valuation)
                        .ok()
                        .and_then(|k| series.get(k).copied())
                        .unwrap_or(0)
                })
                .collect()
        })
        .collect();
    let matrix = (0..rows)
        .map(|r| columns.iter().map(|c| c[r]).collect())
        .collect();
    f.rank(matrix) == columns.len()
}

/// Minimal relation `f(s1, s2) = 0` of bidegree at most `(m, n)` matched
/// through order `N`, or a full-rank certificate that none exists to that order.
pub fn find_relation<S: Scalar>(
    s1: &TruncatedPowerSeries<S>,
    s2: &TruncatedPowerSeries<S>,
    m: usize,
    n: usize,
    order: usize,
) -> Result<DependencyCertificate<S>> {
    find_relation_laurent(&s1.into(), &s2.into(), m, n, order)
}

/// As [`find_relation`] for Laurent series; columns are shifted by the
/// largest pole order so every window starts at exponent zero.
pub fn find_relation_laurent<S: Scalar>(
    s1: &LaurentSeries<S>,
    s2: &LaurentSeries<S>,
    m: usize,
    n: usize,
    order: usize,
) -> Result<DependencyCertificate<S>> {
    let columns = (m + 1) * (n + 1);
    if order < columns {
        return Err(Error::InsufficientOrder {
            needed: columns,
            available: order,
        });
    }
    let prec = s1.precision().min(s2.precision());
    if prec > order
        && (0..MODULAR_ATTEMPTS)
            .any(|k| modular_full_rank(&PrimeField::nth(k), s1, s2, m, n, order + 1))
    {
        return Ok(DependencyCertificate {
            verdict: Verdict::NoRelationUpTo,
            relation: None,
            bidegree: (m, n),
            order,
            verification_order: order,
            scale: None,
        });
    }
    let cols = Columns::build(s1, s2, m, n);
    if cols.available < order + 1 {
        return Err(Error::InsufficientOrder {
            needed: order,
            available: cols.available.saturating_sub(1),
        });
    }
    let verification_order = (order + VERIFICATION_MARGIN).min(cols.available - 1);
    let mut rows = order + 1;
    loop {
        let Some((_, kernel)) = cols.matrix(rows).first_dependent_column() else {
            return Ok(DependencyCertificate {
                verdict: Verdict::NoRelationUpTo,
                relation: None,
                bidegree: (m, n),
                order: rows - 1,
                verification_order: rows - 1,
                scale: None,
            });
        };
        if cols.vanishes(&kernel, verification_order + 1) {
            let relation = BivariatePolynomial::from_terms(
                cols.monomials
                    .iter()
                    .zip(kernel)
                    .map(|(&(i, j), c)| (i, j, c)),
            )
            .normalized();
            return Ok(DependencyCertificate {
                verdict: Verdict::Relation,
                relation: Some(relation),
                bidegree: (m, n),
                order: rows - 1,
                verification_order,
                scale: None,
            });
        }
        // The kernel vector was an artifact of truncation; use every
        // verified coefficient as a constraint and try again.
        rows = verification_order + 1;
    }
}

/// Try each rescaling `s2(cz)` in turn and return the first relation found;
/// without a relation the certificate for the first scale is returned.
pub fn find_relation_scaled<S: Scalar>(
    s1: &LaurentSeries<S>,
    s2: &LaurentSeries<S>,
    m: usize,
    n: usize,
    order: usize,
    scales: &[S],
) -> Result<DependencyCertificate<S>> {
    if scales.is_empty() {
        return find_relation_laurent(s1, s2, m, n, order);
    }
    let mut first = None;
    for c in scales {
        let mut cert = find_relation_laurent(s1, &s2.rescale(c)?, m, n, order)?;
        cert.scale = Some(c.clone());
        if cert.verdict == Verdict::Relation {
            return Ok(cert);
        }
        first.get_or_insert(cert);
    }
    Ok(first.expect("at least one scale"))
}

/// Remove the content in `x` (gcd of the coefficients of powers of `y`).
fn strip_content<S: Scalar>(p: &Nested<S>) -> Nested<S> {
    let c = content_in_x(p);
    if c.deg() == 0 {
        return p.clone();
    }
    p.map(|a| a.div_rem(&c).expect("nonzero content").0)
}

/// Curve `f(x, y) = 0` parametrized by `t ↦ (X1(t), X2(t))`.
pub fn implicitize<S: Scalar>(
    x1: &RationalFunction<S>,
    x2: &RationalFunction<S>,
) -> Result<BivariatePolynomial<S>> {
    if x1.is_constant() || x2.is_constant() {
        return Err(Error::DegenerateParametrization(
            "both coordinates must be nonconstant".into(),
        ));
    }
    let n1 = x1.degree();
    let n2 = x2.degree();
    // p1(t) - x q1(t), with coefficients in S[x][y].
    let a: Polynomial<Nested<S>> = Polynomial::new(
        (0..=n1)
            .map(|k| {
                Polynomial::constant(Polynomial::new(vec![x1.num().coeff(k), -x1.den().coeff(k)]))
            })
            .collect(),
    );
    // p2(t) - y q2(t).
    let b: Polynomial<Nested<S>> = Polynomial::new(
        (0..=n2)
            .map(|k| {
                Polynomial::new(vec![
                    Polynomial::constant(x2.num().coeff(k)),
                    Polynomial::constant(-x2.den().coeff(k)),
                ])
            })
            .collect(),
    );
    let r = a.resultant(&b);
    if r.is_zero() {
        return Err(Error::DegenerateParametrization(
            "resultant vanishes identically".into(),
        ));
    }
    let r = strip_content(&r);
    let r = strip_content(BivariatePolynomial::from_nested(r).swap().nested());
    let r = BivariatePolynomial::from_nested(r).swap();
    let g = nested_gcd(r.nested(), r.partial_y().nested());
    let f = r
        .nested()
        .exact_div(&g)
        .ok_or_else(|| Error::DegenerateParametrization("square-free part is not exact".into()))?;
    Ok(BivariatePolynomial::from_nested(f).normalized())
}

/// `(d == 1, d)` where `d` is the generic fiber size of `t ↦ (X1, X2)` onto `f = 0`.
pub fn is_generically_one_to_one<S: Scalar>(
    x1: &RationalFunction<S>,
    x2: &RationalFunction<S>,
    f: &BivariatePolynomial<S>,
) -> Result<(bool, usize)> {
    let (dy, dx) = (f.deg_y(), f.deg_x());
    let (n1, n2) = (x1.degree(), x2.degree());
    if dy == 0 || dx == 0 || n1 % dy != 0 || n2 % dx != 0 || n1 / dy != n2 / dx {
        return Err(Error::InconsistentDegrees(format!(
            "deg X1 = {n1}, deg_y f = {dy}, deg X2 = {n2}, deg_x f = {dx}"
        )));
    }
    let d = n1 / dy;
    Ok((d == 1, d))
}

/// Whether `(A1, A2)` maps the curve `f = 0` into itself.
pub fn verify_invariant_curve<S: Scalar>(
    f: &BivariatePolynomial<S>,
    a1: &RationalFunction<S>,
    a2: &RationalFunction<S>,
    param: Option<(&RationalFunction<S>, &RationalFunction<S>)>,
) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::Precondition("curve equation must be nonzero".into()));
    }
    match param {
        Some((x1, x2)) => {
            if !f.substitute_numerator(x1, x2).is_zero() {
                return Err(Error::ParamMismatch);
            }
            let y1 = a1.compose(x1)?;
            let y2 = a2.compose(x2)?;
            Ok(f.substitute_numerator(&y1, &y2).is_zero())
        }
        None => {
            let image = f.compose_coordinatewise(a1, a2);
            Ok(image.is_zero() || image.exact_div(f).is_some())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_expr, parse_ratfunc};
    use crate::scalar::Rational;
    use num_bigint::BigInt;
    use num_traits::One;

    fn rf(s: &str) -> RationalFunction<Rational> {
        parse_ratfunc(s).unwrap()
    }

    fn bi(s: &str) -> BivariatePolynomial<Rational> {
        parse_expr(s).unwrap()
    }

    /// `c · e^{az}` through order `n`.
    fn exp_series(c: Rational, a: i64, n: usize) -> TruncatedPowerSeries<Rational> {
        let mut coeffs = vec![c];
        for k in 1..=n {
            let prev = coeffs[k - 1].clone();
            coeffs.push(prev * Rational::new(BigInt::from(a), BigInt::from(k)));
        }
        TruncatedPowerSeries::from_coeffs(coeffs).unwrap()
    }

    #[test]
    fn monomial_order() {
        assert_eq!(
            relation_monomials(1, 2),
            vec![(0, 0), (1, 0), (0, 1), (1, 1), (0, 2), (1, 2)]
        );
    }

    #[test]
    fn exp_relation() {
        let quarter = Rational::new(1.into(), 4.into());
        let half = Rational::new(1.into(), 2.into());
        let s1 = exp_series(quarter, 4, 50);
        let s2 = exp_series(half, 2, 50);
        let cert = find_relation(&s1, &s2, 2, 2, 40).unwrap();
        assert_eq!(cert.verdict, Verdict::Relation);
        assert_eq!(cert.relation.unwrap().to_string(), "x-y^2");
        assert_eq!(cert.verification_order, 50);
    }

    #[test]
    fn diagonal_relation() {
        let s = exp_series(Rational::one(), 1, 12);
        let cert = find_relation(&s, &s, 1, 1, 10).unwrap();
        assert_eq!(cert.relation.unwrap().to_string(), "x-y");
    }

    #[test]
    fn no_relation_between_independent_exponentials() {
        let s1 = exp_series(Rational::one(), 1, 30);
        let s2 = exp_series(Rational::one(), 3, 30);
        let cert = find_relation(&s1, &s2, 2, 2, 20).unwrap();
        // e^{3z} = (e^z)^3 needs bidegree (3, 1).
        assert_eq!(cert.verdict, Verdict::NoRelationUpTo);
        let cert = find_relation(&s1, &s2, 3, 1, 20).unwrap();
        assert_eq!(cert.relation.unwrap().to_string(), "y-x^3");
    }

    #[test]
    fn order_preconditions() {
        let s = exp_series(Rational::one(), 1, 10);
        assert_eq!(
            find_relation(&s, &s, 2, 2, 8),
            Err(Error::InsufficientOrder {
                needed: 9,
                available: 8
            })
        );
        assert_eq!(
            find_relation(&s, &s, 2, 2, 12),
            Err(Error::InsufficientOrder {
                needed: 12,
                available: 10
            })
        );
    }

    #[test]
    fn implicitization_examples() {
        assert_eq!(
            implicitize(&rf("z^2"), &rf("z^3")).unwrap().to_string(),
            "y^2-x^3"
        );
        assert_eq!(
            implicitize(&rf("z^2"), &rf("z^2")).unwrap().to_string(),
            "x-y"
        );
        let f = implicitize(&rf("z"), &rf("(z^2+1)/(z-3)")).unwrap();
        assert_eq!(f, bi("x^2 + 1 - y*(x - 3)").normalized());
        assert!(implicitize(&rf("z"), &rf("5")).is_err());
    }

    #[test]
    fn fiber_degree() {
        let f = implicitize(&rf("z^2"), &rf("z^3")).unwrap();
        assert_eq!(
            is_generically_one_to_one(&rf("z^2"), &rf("z^3"), &f).unwrap(),
            (true, 1)
        );
        let f = implicitize(&rf("z^2"), &rf("z^2")).unwrap();
        assert_eq!(
            is_generically_one_to_one(&rf("z^2"), &rf("z^2"), &f).unwrap(),
            (false, 2)
        );
        let f = implicitize(&rf("z"), &rf("2z")).unwrap();
        assert_eq!(
            is_generically_one_to_one(&rf("z"), &rf("2z"), &f).unwrap(),
            (true, 1)
        );
        let f = implicitize(&rf("z^2+z"), &rf("z^4")).unwrap();
        assert!(f.substitute_numerator(&rf("z^2+z"), &rf("z^4")).is_zero());
        assert_eq!(
            is_generically_one_to_one(&rf("z^2+z"), &rf("z^4"), &f).unwrap(),
            (true, 1)
        );
        assert!(matches!(
            is_generically_one_to_one(&rf("z^2"), &rf("z^3"), &bi("x - y")),
            Err(Error::InconsistentDegrees(_))
        ));
    }

    #[test]
    fn invariant_curves() {
        let (x1, x2) = (rf("z"), rf("2z"));
        assert!(
            verify_invariant_curve(&bi("y-2x"), &rf("4z^2"), &rf("2z^2"), Some((&x1, &x2)))
                .unwrap()
        );
        assert!(verify_invariant_curve(&bi("y-2x"), &rf("4z^2"), &rf("2z^2"), None).unwrap());
        assert!(verify_invariant_curve(
            &bi("x-y"),
            &rf("z^3-z+1/(z+2)"),
            &rf("z^3-z+1/(z+2)"),
            None
        )
        .unwrap());
        assert!(!verify_invariant_curve(&bi("y-2x"), &rf("z^2"), &rf("z^2"), None).unwrap());
        assert!(
            !verify_invariant_curve(&bi("y-2x"), &rf("z^2"), &rf("z^2"), Some((&x1, &x2))).unwrap()
        );
        assert_eq!(
            verify_invariant_curve(&bi("y-3x"), &rf("z^2"), &rf("z^2"), Some((&x1, &x2))),
            Err(Error::ParamMismatch)
        );
    }
}
