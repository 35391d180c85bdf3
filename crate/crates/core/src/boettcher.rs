//! Laurent series and the Böttcher functional equation `B(z^n) = A(B(z))`.
//!
//! A Böttcher series `a₋₁ z + a₀ + a₁/z + ...` is handled in the variable
//! `w = 1/z` as `B = w⁻¹ β(w)` with `β(w) = a₋₁ + a₀ w + a₁ w² + ...`.
//! The functional equation becomes `β(w^n) = Σ_j A_j w^{n-j} β(w)^j`.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Scalar;
use crate::series::{ops, TruncatedPowerSeries};
use num_traits::Signed;
use serde_json::{json, Value};

/// `Σ_k c_k t^{v+k}` known through `t^{v+len-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentSeries<S> {
    valuation: i64,
    coeffs: Vec<S>,
}

impl<S: Scalar> LaurentSeries<S> {
    pub fn new(valuation: i64, coeffs: Vec<S>) -> Self {
        LaurentSeries { valuation, coeffs }
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Number of known coefficients counted from the valuation.
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `t^e`.
    pub fn coeff(&self, e: i64) -> S {
        usize::try_from(e - self.valuation)
            .ok()
            .and_then(|k| self.coeffs.get(k).cloned())
            .unwrap_or_else(S::zero)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let len = self.precision().min(o.precision());
        LaurentSeries {
            valuation: self.valuation + o.valuation,
            coeffs: ops::mul(&self.coeffs, &o.coeffs, len),
        }
    }

    pub fn one(precision: usize) -> Self {
        let mut coeffs = vec![S::zero(); precision];
        coeffs[0] = S::one();
        LaurentSeries {
            valuation: 0,
            coeffs,
        }
    }

    /// `t^{-shift}` times the series restricted to exponents `0..len`.
    pub fn shifted_window(&self, shift: i64, len: usize) -> Vec<S> {
        (0..len as i64).map(|e| self.coeff(e - shift)).collect()
    }

    /// `f(ct)`.
    pub fn rescale(&self, c: &S) -> Result<Self> {
        let inv = c.inv()?;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let e = self.valuation + k as i64;
                let f = if e >= 0 {
                    c.pow(e as u32)
                } else {
                    inv.pow((-e) as u32)
                };
                a.clone() * f
            })
            .collect();
        Ok(LaurentSeries {
            valuation: self.valuation,
            coeffs,
        })
    }
}

impl<S: Scalar> From<&TruncatedPowerSeries<S>> for LaurentSeries<S> {
    fn from(s: &TruncatedPowerSeries<S>) -> Self {
        LaurentSeries::new(0, s.coeffs().to_vec())
    }
}

/// Böttcher series `a₋₁ z + a₀ + a₁ z⁻¹ + ... + a_M z^{-M}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoettcherSeries<S> {
    /// `a₋₁, a₀, ..., a_M`, i.e. the coefficients of `β`.
    coeffs: Vec<S>,
}

impl<S: Scalar> BoettcherSeries<S> {
    pub fn new(coeffs: Vec<S>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::Precondition("need at least a₋₁ and a₀".into()));
        }
        if coeffs[0].is_zero() {
            return Err(Error::Precondition(
                "leading Boettcher coefficient must be nonzero".into(),
            ));
        }
        Ok(BoettcherSeries { coeffs })
    }

    /// `a₋₁, a₀, ..., a_M`.
    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn leading(&self) -> &S {
        &self.coeffs[0]
    }

    /// `a_k` for `k ≥ -1`.
    pub fn a(&self, k: i64) -> S {
        usize::try_from(k + 1)
            .ok()
            .and_then(|i| self.coeffs.get(i).cloned())
            .unwrap_or_else(S::zero)
    }

    /// Index `M` of the last computed coefficient.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 2
    }

    /// `B(z^d)` as a Laurent series in `w = 1/z`.
    pub fn to_laurent(&self, d: usize) -> LaurentSeries<S> {
        let mut coeffs = vec![S::zero(); d * self.coeffs.len()];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * d] = c.clone();
        }
        LaurentSeries::new(-(d as i64), coeffs)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "leading_index": -1,
            "order": self.order(),
            "coefficients": self.coeffs.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Precondition(format!("Boettcher JSON: {what}"));
        if v.get("leading_index").and_then(Value::as_i64).unwrap_or(-1) != -1 {
            return Err(bad("leading_index must be -1"));
        }
        let coeffs = v
            .get("coefficients")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing coefficients"))?
            .iter()
            .map(|c| {
                c.as_str()
                    .ok_or_else(|| bad("coefficients must be strings"))
                    .and_then(crate::parse::parse_scalar)
            })
            .collect::<Result<Vec<S>>>()?;
        BoettcherSeries::new(coeffs)
    }
}

/// `Σ_j p_j w^{m-j} β^j` mod `w^len`, where `m = deg p`.
pub(crate) fn homogeneous_compose<S: Scalar>(p: &Polynomial<S>, beta: &[S], len: usize) -> Vec<S> {
    let m = p.deg();
    let mut acc = vec![S::zero(); len];
    acc[0] = p.lead();
    for j in (0..m).rev() {
        acc = ops::mul(&acc, beta, len);
        let e = m - j;
        if e < len {
            acc[e] = acc[e].clone() + p.coeff(j);
        }
    }
    acc
}

/// Candidates for `a₋₁`: roots of `lead(A) a^{n-1} = 1`, preferred first.
fn leading_roots<S: Scalar>(a: &Polynomial<S>) -> Result<Vec<S>> {
    let n = a.deg() as u32;
    let radicand = a.lead().inv()?;
    let mut roots = radicand.nth_roots(n - 1)?;
    let key = |s: &S| (s.re().is_positive(), s.im().is_positive(), s.re(), s.im());
    roots.sort_by(|x, y| key(y).cmp(&key(x)));
    if roots.is_empty() {
        return Err(Error::LeadingCoefficientNotSolvable {
            radicand: radicand.to_string(),
            exponent: n - 1,
        });
    }
    Ok(roots)
}

/// Böttcher series of a polynomial of degree `n ≥ 2` through `a_M`.
pub fn boettcher_series<S: Scalar>(
    a: &Polynomial<S>,
    order: usize,
    leading_choice: Option<&S>,
) -> Result<BoettcherSeries<S>> {
    let n = a.deg();
    if n < 2 {
        return Err(Error::DegreeTooSmall { degree: n });
    }
    let b0 = match leading_choice {
        Some(c) => {
            if a.lead() * c.pow(n as u32 - 1) != S::one() {
                return Err(Error::Precondition(format!(
                    "leading choice {c} does not satisfy lead(A)·a^{} = 1",
                    n - 1
                )));
            }
            c.clone()
        }
        None => leading_roots(a)?.remove(0),
    };
    let len = order + 2;
    let n_inv = S::from_int(n as i64).inv()?;
    let mut beta = vec![b0];
    for k in 1..len {
        beta.push(S::zero());
        let rhs = homogeneous_compose(a, &beta, k + 1);
        let lhs = if k % n == 0 {
            beta[k / n].clone()
        } else {
            S::zero()
        };
        beta[k] = (lhs - rhs[k].clone()) * n_inv.clone();
    }
    BoettcherSeries::new(beta)
}

/// Coefficients of `β(w^n) - Σ_j A_j w^{n-j} β^j` through `w^{M+1}`, i.e. of
/// `B(z^n) - A(B(z))` from `z^n` down to `z^{n-M-1}`.
pub fn boettcher_residual<S: Scalar>(a: &Polynomial<S>, b: &BoettcherSeries<S>) -> Vec<S> {
    let n = a.deg();
    let len = b.coeffs.len();
    let rhs = homogeneous_compose(a, &b.coeffs, len);
    (0..len)
        .map(|k| {
            let lhs = if k % n == 0 {
                b.coeffs[k / n].clone()
            } else {
                S::zero()
            };
            lhs - rhs[k].clone()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ratfunc;
    use crate::scalar::{GaussianRational, Rational, Ring};
    use num_traits::Zero;

    fn poly(s: &str) -> Polynomial<Rational> {
        parse_ratfunc::<Rational>(s).unwrap().num().clone()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn power_map_is_its_own_coordinate() {
        let b = boettcher_series(&poly("z^2"), 4, None).unwrap();
        assert_eq!(
            b.coeffs(),
            &[q(1, 1), q(0, 1), q(0, 1), q(0, 1), q(0, 1), q(0, 1)]
        );
    }

    #[test]
    fn chebyshev_series_terminates() {
        let b = boettcher_series(&poly("2z^2-1"), 4, None).unwrap();
        assert_eq!(
            b.coeffs(),
            &[q(1, 2), q(0, 1), q(1, 2), q(0, 1), q(0, 1), q(0, 1)]
        );
        assert!(boettcher_residual(&poly("2z^2-1"), &b)
            .iter()
            .all(Zero::is_zero));
    }

    #[test]
    fn leading_coefficient_solvability() {
        assert_eq!(
            boettcher_series(&poly("3z^2"), 2, None).unwrap().leading(),
            &q(1, 3)
        );
        match boettcher_series(&poly("2z^3"), 2, None) {
            Err(Error::LeadingCoefficientNotSolvable { radicand, exponent }) => {
                assert_eq!(radicand, "1/2");
                assert_eq!(exponent, 2);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            boettcher_series(&poly("z+1"), 2, None),
            Err(Error::DegreeTooSmall { degree: 1 })
        );
    }

    #[test]
    fn preferred_root_and_explicit_choice() {
        // a^2 = 1: both ±1 work, +1 preferred.
        let b = boettcher_series(&poly("z^3+z"), 6, None).unwrap();
        assert_eq!(b.leading(), &q(1, 1));
        let c = boettcher_series(&poly("z^3+z"), 6, Some(&q(-1, 1))).unwrap();
        assert_eq!(c.leading(), &q(-1, 1));
        assert!(boettcher_residual(&poly("z^3+z"), &c)
            .iter()
            .all(Zero::is_zero));
        assert!(boettcher_series(&poly("z^3+z"), 6, Some(&q(2, 1))).is_err());
        // Over Q(i), -z^3 needs a^2 = -1.
        let a: Polynomial<GaussianRational> = parse_ratfunc::<GaussianRational>("-z^3")
            .unwrap()
            .num()
            .clone();
        let b = boettcher_series(&a, 3, None).unwrap();
        assert_eq!(b.leading().to_string(), "i");
    }

    #[test]
    fn residual_for_generic_cubic() {
        let a = poly("z^3-3z+5");
        let b = boettcher_series(&a, 15, None).unwrap();
        assert!(boettcher_residual(&a, &b).iter().all(Zero::is_zero));
        let mut cs = b.coeffs().to_vec();
        cs[4] = cs[4].clone() + Rational::from_int(1);
        let bad = BoettcherSeries::new(cs).unwrap();
        assert!(!boettcher_residual(&a, &bad).iter().all(Zero::is_zero));
    }

    #[test]
    fn laurent_window_and_json() {
        let b = boettcher_series(&poly("2z^2-1"), 3, None).unwrap();
        let l = b.to_laurent(2);
        assert_eq!(l.valuation(), -2);
        assert_eq!(l.coeff(-2), q(1, 2));
        assert_eq!(l.coeff(2), q(1, 2));
        assert_eq!(
            l.shifted_window(2, 5),
            vec![q(1, 2), q(0, 1), q(0, 1), q(0, 1), q(1, 2)]
        );
        let back = BoettcherSeries::<Rational>::from_json(&b.to_json()).unwrap();
        assert_eq!(back, b);
    }
}
