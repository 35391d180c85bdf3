//! Rational functions in canonical form and their dynamics at fixed points.

use crate::error::{Error, Result};
use crate::point::PointP1;
use crate::poly::Polynomial;
use crate::roots::roots_in_field;
use crate::scalar::Scalar;
use num_traits::{One, Zero};
use serde_json::{json, Value};

/// Default cap on `deg(A)^l` for iteration.
pub const DEFAULT_DEGREE_CAP: usize = 4096;

/// Reduced fraction `num / den` with `den` monic and `gcd(num, den) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction<S> {
    num: Polynomial<S>,
    den: Polynomial<S>,
}

impl<S: Scalar> RationalFunction<S> {
    pub fn new(num: Polynomial<S>, den: Polynomial<S>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RationalFunction::from_poly(num));
        }
        let g = num.gcd(&den);
        let num = num.div_rem(&g)?.0;
        let den = den.div_rem(&g)?.0;
        let lc = den.lead().inv()?;
        Ok(RationalFunction {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn from_poly(p: Polynomial<S>) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: S) -> Self {
        RationalFunction::from_poly(Polynomial::constant(c))
    }

    /// `z`
    pub fn identity() -> Self {
        RationalFunction::from_poly(Polynomial::var())
    }

    /// `1/z`
    pub fn inversion() -> Self {
        RationalFunction {
            num: Polynomial::one(),
            den: Polynomial::var(),
        }
    }

    pub fn num(&self) -> &Polynomial<S> {
        &self.num
    }

    pub fn den(&self) -> &Polynomial<S> {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.num.deg().max(self.den.deg())
    }

    pub fn is_constant(&self) -> bool {
        self.num.deg() == 0 && self.den.deg() == 0
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.deg() == 0
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial<S>> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn add(&self, o: &Self) -> Self {
        let num = &(&self.num * &o.den) + &(&o.num * &self.den);
        RationalFunction::new(num, &self.den * &o.den).expect("nonzero denominators")
    }

    pub fn sub(&self, o: &Self) -> Self {
        let num = &(&self.num * &o.den) - &(&o.num * &self.den);
        RationalFunction::new(num, &self.den * &o.den).expect("nonzero denominators")
    }

    pub fn mul(&self, o: &Self) -> Self {
        RationalFunction::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero denominators")
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.num.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        RationalFunction::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(RationalFunction::constant(S::one()), |acc, _| acc.mul(self))
    }

    /// `self ∘ inner`.
    ///
    /// Fails only when `inner` is a constant at which `self` has a pole, since
    /// the constant ∞ is not representable.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        let n = self.degree();
        let (p, q) = (&inner.num, &inner.den);
        let mut p_pows = vec![Polynomial::one()];
        let mut q_pows = vec![Polynomial::one()];
        for k in 1..=n {
            p_pows.push(&p_pows[k - 1] * p);
            q_pows.push(&q_pows[k - 1] * q);
        }
        let homogenize = |f: &Polynomial<S>| {
            (0..=n).fold(Polynomial::zero(), |acc: Polynomial<S>, k| {
                let c = f.coeff(k);
                if c.is_zero() {
                    acc
                } else {
                    &acc + &(&p_pows[k] * &q_pows[n - k]).scale(&c)
                }
            })
        };
        RationalFunction::new(homogenize(&self.num), homogenize(&self.den))
    }

    pub fn iterate(&self, l: usize) -> Result<Self> {
        self.iterate_capped(l, DEFAULT_DEGREE_CAP)
    }

    /// `self^{∘l}`, refusing when `deg^l` would exceed `cap`.
    pub fn iterate_capped(&self, l: usize, cap: usize) -> Result<Self> {
        if l == 0 {
            return Err(Error::Precondition(
                "iteration count must be positive".into(),
            ));
        }
        let degree = (self.degree() as u128).saturating_pow(l as u32);
        if degree > cap as u128 {
            return Err(Error::IterationBudgetExceeded { degree, cap });
        }
        let mut acc = self.clone();
        for _ in 1..l {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RationalFunction::new(num, &self.den * &self.den).expect("nonzero denominator")
    }

    /// `1 / self(1/z)`: the map in the chart at infinity.
    pub fn conjugate_by_inversion(&self) -> Result<Self> {
        RationalFunction::inversion().compose(&self.compose(&RationalFunction::inversion())?)
    }

    /// Value at a finite point, `None` at a pole.
    pub fn eval_finite(&self, z: &S) -> Option<S> {
        let d = self.den.eval(z);
        (!d.is_zero()).then(|| self.num.eval(z) / d)
    }

    pub fn eval(&self, z: &PointP1<S>) -> PointP1<S> {
        match z {
            PointP1::Finite(z) => self
                .eval_finite(z)
                .map_or(PointP1::Infinity, PointP1::Finite),
            PointP1::Infinity => {
                let (dn, dd) = (self.num.deg(), self.den.deg());
                if self.num.is_zero() || dn < dd {
                    PointP1::Finite(S::zero())
                } else if dn > dd {
                    PointP1::Infinity
                } else {
                    PointP1::Finite(self.num.lead() / self.den.lead())
                }
            }
        }
    }

    /// Derivative at a fixed point; at infinity the 1/z chart is used.
    pub fn multiplier_at(&self, z0: &PointP1<S>) -> Result<S> {
        if self.eval(z0) != *z0 {
            return Err(Error::NotAFixedPoint {
                point: z0.to_string(),
            });
        }
        match z0 {
            PointP1::Finite(z) => {
                self.derivative()
                    .eval_finite(z)
                    .ok_or_else(|| Error::PoleAtBasePoint {
                        point: z.to_string(),
                    })
            }
            PointP1::Infinity => self
                .conjugate_by_inversion()?
                .derivative()
                .eval_finite(&S::zero())
                .ok_or(Error::PointAtInfinity),
        }
    }

    /// Multiplicity of `self(z) - self(z0)` at `z0`, with chart changes at
    /// infinity and at poles.
    pub fn local_degree(&self, z0: &PointP1<S>) -> Result<usize> {
        if self.is_constant() {
            return Err(Error::Precondition("local degree of a constant map".into()));
        }
        let (map, t0) = match z0 {
            PointP1::Infinity => (self.compose(&RationalFunction::inversion())?, S::zero()),
            PointP1::Finite(z) => (self.clone(), z.clone()),
        };
        let vanishing = match map.eval(&PointP1::Finite(t0.clone())) {
            PointP1::Infinity => RationalFunction::inversion().compose(&map)?,
            PointP1::Finite(v) => map.sub(&RationalFunction::constant(v)),
        };
        Ok(vanishing.num.root_multiplicity(&t0))
    }

    /// All fixed points with coordinates in the field, plus the factors of
    /// the fixed-point equation that have no roots there.
    pub fn fixed_points(&self) -> Result<FixedPointReport<S>> {
        if self.degree() == 0 {
            return Err(Error::Precondition("fixed points of a constant map".into()));
        }
        let equation = &self.num - &(&Polynomial::var() * &self.den);
        if equation.is_zero() {
            return Err(Error::Precondition(
                "identity map: every point is fixed".into(),
            ));
        }
        let split = roots_in_field(&equation)?;
        let mut records = Vec::new();
        for (z, k) in split.roots {
            let point = PointP1::Finite(z);
            let multiplier = self.multiplier_at(&point)?;
            let mut notes = Vec::new();
            if k > 1 {
                notes.push(format!("multiplicity {k}"));
            }
            records.push(FixedPointRecord::new(point, multiplier, notes));
        }
        if self.num.deg() > self.den.deg() {
            let multiplier = self.multiplier_at(&PointP1::Infinity)?;
            records.push(FixedPointRecord::new(
                PointP1::Infinity,
                multiplier,
                vec!["multiplier computed in the 1/z chart".to_string()],
            ));
        }
        Ok(FixedPointReport {
            records,
            unresolved: split.residual.into_iter().map(|(f, _)| f).collect(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointRecord<S> {
    pub point: PointP1<S>,
    pub multiplier: S,
    pub repelling: bool,
    pub notes: Vec<String>,
}

impl<S: Scalar> FixedPointRecord<S> {
    fn new(point: PointP1<S>, multiplier: S, mut notes: Vec<String>) -> Self {
        let norm = multiplier.norm_sq();
        let one = num_rational::BigRational::one();
        if multiplier.is_zero() {
            notes.push("superattracting".into());
        } else if norm == one {
            notes.push("indifferent".into());
        }
        FixedPointRecord {
            repelling: norm > one,
            point,
            multiplier,
            notes,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "point": self.point.to_string(),
            "multiplier": self.multiplier.to_string(),
            "repelling": self.repelling,
            "local_notes": self.notes,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointReport<S> {
    pub records: Vec<FixedPointRecord<S>>,
    /// Monic factors of `num(A) - z den(A)` with no roots in the field.
    pub unresolved: Vec<Polynomial<S>>,
}

impl<S: Scalar> FixedPointReport<S> {
    pub fn find(&self, z: &PointP1<S>) -> Option<&FixedPointRecord<S>> {
        self.records.iter().find(|r| &r.point == z)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "fixed_points": self.records.iter().map(FixedPointRecord::to_json).collect::<Vec<_>>(),
            "unresolved": self.unresolved.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ratfunc;
    use crate::scalar::{Rational, Ring};

    fn rf(s: &str) -> RationalFunction<Rational> {
        parse_ratfunc(s).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn fin(n: i64, d: i64) -> PointP1<Rational> {
        PointP1::Finite(q(n, d))
    }

    #[test]
    fn composition_examples() {
        assert_eq!(rf("z^2").compose(&rf("z^3")).unwrap(), rf("z^6"));
        assert_eq!(
            rf("z^2").compose(&rf("z(2+z^2)")).unwrap(),
            rf("z^2(2+z^2)^2")
        );
        assert_eq!(rf("1/z").compose(&rf("1/z")).unwrap(), rf("z"));
        assert_eq!(rf("1/z").compose(&rf("0")), Err(Error::ZeroDenominator));
        assert_eq!(rf("z^2+1").compose(&rf("3")).unwrap(), rf("10"));
    }

    #[test]
    fn iteration_examples() {
        assert_eq!(rf("z^2").iterate(3).unwrap(), rf("z^8"));
        assert_eq!(rf("2z^2-1").iterate(2).unwrap(), rf("8z^4-8z^2+1"));
        assert_eq!(rf("z+1").iterate(5).unwrap(), rf("z+5"));
        assert!(matches!(
            rf("z^2").iterate(13),
            Err(Error::IterationBudgetExceeded {
                degree: 8192,
                cap: 4096
            })
        ));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(rf("z^3").derivative(), rf("3z^2"));
        assert_eq!(rf("1/z").derivative(), rf("-1/z^2"));
        assert_eq!(rf("z(2+z)^2").derivative(), rf("(2+z)(2+3z)"));
    }

    #[test]
    fn fixed_points_of_z2() {
        let r = rf("z^2").fixed_points().unwrap();
        let pts: Vec<_> = r
            .records
            .iter()
            .map(|r| (r.point.clone(), r.multiplier.clone(), r.repelling))
            .collect();
        assert_eq!(
            pts,
            vec![
                (fin(0, 1), q(0, 1), false),
                (fin(1, 1), q(2, 1), true),
                (PointP1::Infinity, q(0, 1), false),
            ]
        );
        assert!(r.unresolved.is_empty());
    }

    #[test]
    fn fixed_points_of_quadratics() {
        let r = rf("z^2-6").fixed_points().unwrap();
        assert_eq!(r.find(&fin(3, 1)).unwrap().multiplier, q(6, 1));
        assert_eq!(r.find(&fin(-2, 1)).unwrap().multiplier, q(-4, 1));
        let r = rf("2z^2-1").fixed_points().unwrap();
        assert_eq!(r.find(&fin(1, 1)).unwrap().multiplier, q(4, 1));
        assert_eq!(r.find(&fin(-1, 2)).unwrap().multiplier, q(-2, 1));
        assert!(r
            .records
            .iter()
            .filter(|r| r.point.finite().is_some())
            .all(|r| r.repelling));
        let r = rf("z^2+z+2").fixed_points().unwrap();
        assert_eq!(r.unresolved.len(), 1);
    }

    #[test]
    fn fixed_point_at_infinity_of_rational_map() {
        // z + 1/z has a parabolic fixed point at infinity: chart map w/(1+w^2).
        let r = rf("z+1/z").fixed_points().unwrap();
        assert_eq!(r.find(&PointP1::Infinity).unwrap().multiplier, q(1, 1));
        assert!(rf("z").fixed_points().is_err());
    }

    #[test]
    fn local_degrees() {
        assert_eq!(rf("z^2").local_degree(&fin(0, 1)).unwrap(), 2);
        assert_eq!(rf("z^2").local_degree(&fin(1, 1)).unwrap(), 1);
        assert_eq!(rf("z^2").local_degree(&PointP1::Infinity).unwrap(), 2);
        assert_eq!(rf("z(2+z)^2").local_degree(&fin(-2, 1)).unwrap(), 2);
        assert_eq!(rf("z(2+z)^2").local_degree(&PointP1::Infinity).unwrap(), 3);
        assert_eq!(rf("1/z^3").local_degree(&fin(0, 1)).unwrap(), 3);
        assert_eq!(rf("(z^2+1)/(z-1)^2").local_degree(&fin(1, 1)).unwrap(), 2);
        assert_eq!(
            rf("z^3/(z^2+1)").local_degree(&PointP1::Infinity).unwrap(),
            1
        );
    }

    #[test]
    fn multiplier_rejects_non_fixed_points() {
        assert!(matches!(
            rf("z^2").multiplier_at(&fin(2, 1)),
            Err(Error::NotAFixedPoint { .. })
        ));
        assert_eq!(
            rf("z^2").multiplier_at(&fin(1, 1)).unwrap(),
            Rational::from_int(2)
        );
    }
}
