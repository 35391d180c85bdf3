//! Truncated power series and the Poincaré functional equation.

use crate::error::{Error, Result};
use crate::parse::parse_point;
use crate::point::PointP1;
use crate::poly::Polynomial;
use crate::ratfunc::RationalFunction;
use crate::scalar::Scalar;
use serde_json::{json, Value};

/// `c_0 + c_1 z + ... + c_N z^N + O(z^{N+1})`, expanded around a base point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedPowerSeries<S> {
    base_point: PointP1<S>,
    coeffs: Vec<S>,
}

impl<S: Scalar> TruncatedPowerSeries<S> {
    /// Needs at least two coefficients (order ≥ 1).
    pub fn new(base_point: PointP1<S>, coeffs: Vec<S>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::Precondition(
                "series order must be at least 1".into(),
            ));
        }
        Ok(TruncatedPowerSeries { base_point, coeffs })
    }

    /// Base point is taken from the constant term.
    pub fn from_coeffs(coeffs: Vec<S>) -> Result<Self> {
        let base = PointP1::Finite(coeffs.first().cloned().unwrap_or_else(S::zero));
        TruncatedPowerSeries::new(base, coeffs)
    }

    pub fn base_point(&self) -> &PointP1<S> {
        &self.base_point
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order + 1);
        TruncatedPowerSeries {
            base_point: self.base_point.clone(),
            coeffs,
        }
    }

    /// `S(z^d)`; the result is known through order `d(N+1) - 1`.
    pub fn substitute_power(&self, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::Precondition(
                "substitution power must be positive".into(),
            ));
        }
        let mut coeffs = vec![S::zero(); d * self.coeffs.len()];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * d] = c.clone();
        }
        TruncatedPowerSeries::new(self.base_point.clone(), coeffs)
    }

    /// `S(cz)`.
    pub fn rescale(&self, c: &S) -> Self {
        let mut p = S::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let v = a.clone() * p.clone();
                p = p.clone() * c.clone();
                v
            })
            .collect();
        TruncatedPowerSeries {
            base_point: self.base_point.clone(),
            coeffs,
        }
    }

    /// Smallest `k ≥ 1` with a nonzero coefficient.
    pub fn first_nonconstant(&self) -> Option<usize> {
        (1..self.coeffs.len()).find(|&k| !self.coeffs[k].is_zero())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "base_point": self.base_point.to_string(),
            "order": self.order(),
            "coefficients": self.coeffs.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Precondition(format!("series JSON: {what}"));
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
        let base = match v.get("base_point").and_then(Value::as_str) {
            Some(p) => parse_point(p)?,
            None => PointP1::Finite(coeffs.first().cloned().unwrap_or_else(S::zero)),
        };
        let s = TruncatedPowerSeries::new(base, coeffs)?;
        if let Some(n) = v.get("order").and_then(Value::as_u64) {
            if n as usize != s.order() {
                return Err(bad("order does not match the coefficient count"));
            }
        }
        Ok(s)
    }
}

/// Arithmetic on coefficient vectors truncated to a common length.
pub(crate) mod ops {
    use crate::scalar::Scalar;

    pub fn mul<S: Scalar>(a: &[S], b: &[S], len: usize) -> Vec<S> {
        let mut out = vec![S::zero(); len];
        for (i, x) in a.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(len - i) {
                let t = std::mem::replace(&mut out[i + j], S::zero());
                out[i + j] = t + x.clone() * y.clone();
            }
        }
        out
    }

    /// `p(s)` by Horner's rule.
    pub fn eval_poly<S: Scalar>(p: &[S], s: &[S], len: usize) -> Vec<S> {
        let mut acc = vec![S::zero(); len];
        for c in p.iter().rev() {
            acc = mul(&acc, s, len);
            acc[0] = acc[0].clone() + c.clone();
        }
        acc
    }

    /// `a / b` where `b[0] ≠ 0`.
    pub fn div<S: Scalar>(a: &[S], b: &[S], len: usize) -> Vec<S> {
        let inv0 = S::one() / b[0].clone();
        let mut q = vec![S::zero(); len];
        for k in 0..len {
            let mut acc = a.get(k).cloned().unwrap_or_else(S::zero);
            for j in 1..=k.min(b.len().saturating_sub(1)) {
                acc = acc - b[j].clone() * q[k - j].clone();
            }
            q[k] = acc * inv0.clone();
        }
        q
    }
}

/// Coefficients of `f(s)` through `len` terms; `None` if `f` has a pole at `s(0)`.
fn apply<S: Scalar>(f: &RationalFunction<S>, s: &[S], len: usize) -> Option<Vec<S>> {
    let num = ops::eval_poly(f.num().coeffs(), s, len);
    if f.is_polynomial() {
        let c = f.den().coeff(0);
        return Some(num.into_iter().map(|a| a / c.clone()).collect());
    }
    let den = ops::eval_poly(f.den().coeffs(), s, len);
    if den[0].is_zero() {
        return None;
    }
    Some(ops::div(&num, &den, len))
}

/// `X ∘ P` as a series around `X(P(0))`.
pub fn transport_poincare<S: Scalar>(
    x: &RationalFunction<S>,
    p: &TruncatedPowerSeries<S>,
) -> Result<TruncatedPowerSeries<S>> {
    let z0 = p.base_point().finite().ok_or(Error::PointAtInfinity)?;
    let coeffs = apply(x, p.coeffs(), p.coeffs.len()).ok_or_else(|| Error::PoleAtBasePoint {
        point: z0.to_string(),
    })?;
    TruncatedPowerSeries::from_coeffs(coeffs)
}

/// `A(z0 + Q(z))` built one coefficient at a time, with `Q(0) = 0`.
///
/// The maps are recentred at `z0`, so `[z^k] Q^j` for `j ≥ 2` never involves
/// `q_k`; each new coefficient costs `O(k deg A)`.
struct OnlineComposition<S> {
    num: Vec<S>,
    den: Vec<S>,
    /// `powers[j][k] = [z^k] Q^j`, for `j ≥ 1`.
    powers: Vec<Vec<S>>,
    q: Vec<S>,
    u: Vec<S>,
    v: Vec<S>,
    w: Vec<S>,
}

impl<S: Scalar> OnlineComposition<S> {
    fn new(a: &RationalFunction<S>, z0: &S) -> Self {
        let shift = Polynomial::new(vec![z0.clone(), S::one()]);
        let num = a.num().compose(&shift).coeffs().to_vec();
        let den = a.den().compose(&shift).coeffs().to_vec();
        let top = num.len().max(den.len()).max(2);
        let mut me = OnlineComposition {
            powers: vec![vec![]; top],
            q: vec![],
            u: vec![],
            v: vec![],
            w: vec![],
            num,
            den,
        };
        me.push(S::zero());
        me.push(S::one());
        me
    }

    fn coeff(p: &[S], j: usize) -> S {
        p.get(j).cloned().unwrap_or_else(S::zero)
    }

    /// `[z^k] Q^j` for `j ≥ 2` from the stored lower coefficients.
    fn power_coeff(&self, j: usize, k: usize) -> S {
        (1..k).fold(S::zero(), |acc, i| {
            acc + self.q[i].clone() * self.powers[j - 1][k - i].clone()
        })
    }

    /// `(u_k, v_k, w_k)` given `q_0..q_k` and all power coefficients below `k`.
    fn column(&self, k: usize, qk: &S, high: &[S]) -> (S, S, S) {
        let lin = |p: &[S]| {
            let mut acc = Self::coeff(p, 1) * qk.clone();
            for (j, h) in high.iter().enumerate() {
                acc = acc + Self::coeff(p, j + 2) * h.clone();
            }
            if k == 0 {
                acc = acc + Self::coeff(p, 0);
            }
            acc
        };
        let (u, v) = (lin(&self.num), lin(&self.den));
        let mut acc = u.clone();
        for i in 1..=k {
            let vi = if i == k { v.clone() } else { self.v[i].clone() };
            acc = acc - vi * self.w[k - i].clone();
        }
        let v0 = if k == 0 { v.clone() } else { self.v[0].clone() };
        (u, v, acc / v0)
    }

    fn high_powers(&self, k: usize) -> Vec<S> {
        (2..self.powers.len())
            .map(|j| {
                if k == 0 {
                    S::zero()
                } else {
                    self.power_coeff(j, k)
                }
            })
            .collect()
    }

    /// `[z^k] A(z0 + Q)` with `q_k` taken as zero.
    fn coeff_without_last(&self, k: usize) -> S {
        self.column(k, &S::zero(), &self.high_powers(k)).2
    }

    fn push(&mut self, qk: S) {
        let k = self.q.len();
        let high = self.high_powers(k);
        let (u, v, w) = self.column(k, &qk, &high);
        self.powers[1].push(qk.clone());
        for (j, h) in high.into_iter().enumerate() {
            self.powers[j + 2].push(h);
        }
        self.q.push(qk);
        self.u.push(u);
        self.v.push(v);
        self.w.push(w);
    }
}

/// Finite fixed point, not a pole, with a multiplier usable for the recursion.
fn poincare_multiplier<S: Scalar>(
    a: &RationalFunction<S>,
    z0: &PointP1<S>,
    order: usize,
) -> Result<S> {
    let z = z0.finite().ok_or(Error::PointAtInfinity)?;
    if a.eval_finite(z).is_none() {
        return Err(Error::PoleAtBasePoint {
            point: z.to_string(),
        });
    }
    let lambda = a.multiplier_at(z0)?;
    if lambda.is_zero() {
        return Err(Error::ZeroMultiplier);
    }
    let mut p = lambda.clone();
    for k in 2..=order {
        p = p * lambda.clone();
        if p == lambda {
            return Err(Error::ResonantMultiplier {
                multiplier: lambda.to_string(),
                power: k,
            });
        }
    }
    Ok(lambda)
}

/// Normalized Poincaré series `P(λz) = A(P(z))`, `P(0) = z0`, `P'(0) = 1`,
/// through order `N`.
pub fn poincare_series<S: Scalar>(
    a: &RationalFunction<S>,
    z0: &PointP1<S>,
    order: usize,
) -> Result<TruncatedPowerSeries<S>> {
    if order == 0 {
        return Err(Error::Precondition(
            "series order must be at least 1".into(),
        ));
    }
    let lambda = poincare_multiplier(a, z0, order)?;
    let z = z0.finite().expect("finite base point").clone();
    let mut online = OnlineComposition::new(a, &z);
    let mut lambda_k = lambda.clone();
    for k in 2..=order {
        lambda_k = lambda_k * lambda.clone();
        let mismatch = online.coeff_without_last(k);
        online.push(mismatch / (lambda_k.clone() - lambda.clone()));
    }
    let mut coeffs = vec![z];
    coeffs.extend(online.q.into_iter().skip(1));
    TruncatedPowerSeries::new(z0.clone(), coeffs)
}

/// Coefficients of `A(P(z)) - P(λz)` through the order of `P`.
pub fn poincare_residual<S: Scalar>(
    a: &RationalFunction<S>,
    p: &TruncatedPowerSeries<S>,
    lambda: &S,
) -> Result<Vec<S>> {
    let z0 = p.base_point().finite().ok_or(Error::PointAtInfinity)?;
    let len = p.coeffs.len();
    let image = apply(a, p.coeffs(), len).ok_or_else(|| Error::PoleAtBasePoint {
        point: z0.to_string(),
    })?;
    let scaled = p.rescale(lambda);
    Ok(image
        .into_iter()
        .zip(scaled.coeffs)
        .map(|(u, v)| u - v)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ratfunc;
    use crate::scalar::Rational;
    use num_bigint::BigInt;
    use num_traits::{One, Zero};

    fn rf(s: &str) -> RationalFunction<Rational> {
        parse_ratfunc(s).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn fin(n: i64, d: i64) -> PointP1<Rational> {
        PointP1::Finite(q(n, d))
    }

    fn factorial(n: usize) -> BigInt {
        (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
    }

    #[test]
    fn exp_series_for_z2_at_1() {
        let p = poincare_series(&rf("z^2"), &fin(1, 1), 4).unwrap();
        let expected: Vec<_> = (0..=4)
            .map(|k| Rational::new(1.into(), factorial(k)))
            .collect();
        assert_eq!(p.coeffs(), &expected[..]);
    }

    #[test]
    fn cosh_series_for_chebyshev() {
        let p = poincare_series(&rf("2z^2-1"), &fin(1, 1), 3).unwrap();
        assert_eq!(p.coeffs(), &[q(1, 1), q(1, 1), q(1, 6), q(1, 90)]);
    }

    #[test]
    fn solver_errors() {
        assert_eq!(
            poincare_series(&rf("z^2"), &fin(0, 1), 4),
            Err(Error::ZeroMultiplier)
        );
        assert!(matches!(
            poincare_series(&rf("z^2"), &fin(2, 1), 4),
            Err(Error::NotAFixedPoint { .. })
        ));
        assert!(matches!(
            poincare_series(&rf("-z"), &fin(0, 1), 4),
            Err(Error::ResonantMultiplier { power: 3, .. })
        ));
        assert_eq!(
            poincare_series(&rf("z^2"), &PointP1::Infinity, 4),
            Err(Error::PointAtInfinity)
        );
    }

    #[test]
    fn rational_map_residual_vanishes() {
        let a = rf("(z^2+2z)/(3z+1)");
        // 0 is fixed with multiplier 2.
        let p = poincare_series(&a, &fin(0, 1), 12).unwrap();
        let res = poincare_residual(&a, &p, &q(2, 1)).unwrap();
        assert!(res.iter().all(Zero::is_zero));
    }

    #[test]
    fn perturbation_breaks_residual_at_its_order() {
        let a = rf("z^2");
        let p = poincare_series(&a, &fin(1, 1), 8).unwrap();
        let mut cs = p.coeffs().to_vec();
        cs[5] = cs[5].clone() + q(1, 1000);
        let bad = TruncatedPowerSeries::new(fin(1, 1), cs).unwrap();
        let res = poincare_residual(&a, &bad, &q(2, 1)).unwrap();
        let first = res.iter().position(|c| !c.is_zero());
        assert_eq!(first, Some(5));
    }

    #[test]
    fn substitution_and_rescaling() {
        let s = TruncatedPowerSeries::from_coeffs(vec![q(1, 1), q(1, 1), q(1, 1)]).unwrap();
        let t = s.substitute_power(2).unwrap();
        assert_eq!(
            t.coeffs(),
            &[q(1, 1), q(0, 1), q(1, 1), q(0, 1), q(1, 1), q(0, 1)]
        );
        assert_eq!(s.substitute_power(1).unwrap(), s);
        assert_eq!(s.rescale(&q(2, 1)).coeffs(), &[q(1, 1), q(2, 1), q(4, 1)]);
    }

    #[test]
    fn transport_examples() {
        // 4z^2 at 1/4 (multiplier 2) pushed forward by 2z solves 2z^2 at 1/2.
        let p = poincare_series(&rf("4z^2"), &fin(1, 4), 10).unwrap();
        let t = transport_poincare(&rf("2z"), &p).unwrap();
        assert_eq!(t.base_point(), &fin(1, 2));
        let res = poincare_residual(&rf("2z^2"), &t, &q(2, 1)).unwrap();
        assert!(res.iter().all(Zero::is_zero));
        assert_eq!(
            transport_poincare(&rf("z"), &p).unwrap().coeffs(),
            p.coeffs()
        );
        assert!(matches!(
            transport_poincare(&rf("1/(z-1/4)"), &p),
            Err(Error::PoleAtBasePoint { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let p = poincare_series(&rf("z^2"), &fin(1, 1), 5).unwrap();
        let back = TruncatedPowerSeries::<Rational>::from_json(&p.to_json()).unwrap();
        assert_eq!(back, p);
        assert_eq!(p.to_json()["coefficients"][2], "1/2");
    }
}
