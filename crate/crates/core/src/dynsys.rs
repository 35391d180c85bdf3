//! Verifiers for semiconjugacy diagrams and the arithmetic criteria that
//! rule out algebraic dependence between Poincaré functions.

use crate::boettcher::{boettcher_series, homogeneous_compose};
use crate::error::{Error, Result};
use crate::factor::factor_integer;
use crate::orbifold::{excludes_lattes, recognize_special, SpecialKind};
use crate::point::PointP1;
use crate::poly::Polynomial;
use crate::ratfunc::{RationalFunction, DEFAULT_DEGREE_CAP};
use crate::scalar::{Rational, Scalar};
use crate::series::{poincare_series, transport_poincare};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde_json::{json, Value};
use std::collections::BTreeMap;

pub const DEFAULT_EXPONENT_BOUND: u64 = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiconjugacyTriple<S> {
    pub a: RationalFunction<S>,
    pub x: RationalFunction<S>,
    pub b: RationalFunction<S>,
    pub verified: bool,
}

impl<S: Scalar> SemiconjugacyTriple<S> {
    pub fn to_json(&self) -> Value {
        json!({
            "A": self.a.to_string(),
            "X": self.x.to_string(),
            "B": self.b.to_string(),
            "verified": self.verified,
        })
    }
}

/// Whether `A ∘ X = X ∘ B`.
pub fn verify_semiconjugacy<S: Scalar>(
    a: &RationalFunction<S>,
    x: &RationalFunction<S>,
    b: &RationalFunction<S>,
) -> Result<SemiconjugacyTriple<S>> {
    let verified = a.compose(x)? == x.compose(b)?;
    Ok(SemiconjugacyTriple {
        a: a.clone(),
        x: x.clone(),
        b: b.clone(),
        verified,
    })
}

pub fn verify_commute<S: Scalar>(a: &RationalFunction<S>, b: &RationalFunction<S>) -> Result<bool> {
    Ok(a.compose(b)? == b.compose(a)?)
}

/// Smallest `(p1, p2)` with `p1 v1 = p2 v2`, for nonzero exponent vectors.
fn proportional_pair<K: Ord>(v1: &BTreeMap<K, i64>, v2: &BTreeMap<K, i64>) -> Option<(u64, u64)> {
    let v1: BTreeMap<_, _> = v1.iter().filter(|(_, e)| **e != 0).collect();
    let v2: BTreeMap<_, _> = v2.iter().filter(|(_, e)| **e != 0).collect();
    if v1.is_empty() || v1.len() != v2.len() || !v1.keys().eq(v2.keys()) {
        return None;
    }
    let (a, b) = (**v1.values().next()?, **v2.values().next()?);
    if a.signum() != b.signum() {
        return None;
    }
    let g = a.abs().gcd(&b.abs());
    let (p1, p2) = ((b.abs() / g) as u64, (a.abs() / g) as u64);
    v1.values()
        .zip(v2.values())
        .all(|(x, y)| **x as i128 * p1 as i128 == **y as i128 * p2 as i128)
        .then_some((p1, p2))
}

fn integer_exponents(n: u64) -> Result<BTreeMap<BigInt, i64>> {
    Ok(factor_integer(&BigInt::from(n))?
        .into_iter()
        .map(|(p, e)| (p, e as i64))
        .collect())
}

/// Minimal positive `(l1, l2)` with `n1^l1 = n2^l2`.
pub fn degree_compatibility(n1: u64, n2: u64) -> Result<Option<(u64, u64)>> {
    if n1 < 2 || n2 < 2 {
        return Err(Error::DegreeTooSmall {
            degree: n1.min(n2) as usize,
        });
    }
    Ok(proportional_pair(
        &integer_exponents(n1)?,
        &integer_exponents(n2)?,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MultiplierDependence {
    /// Minimal pair, within the bound.
    Pair(u64, u64),
    /// A minimal pair exists but exceeds the bound.
    BeyondBound(u64, u64),
    /// No positive pair exists at all.
    Never,
}

impl MultiplierDependence {
    pub fn within_bound(&self) -> Option<(u64, u64)> {
        match self {
            MultiplierDependence::Pair(l1, l2) => Some((*l1, *l2)),
            _ => None,
        }
    }

    pub fn exact(&self) -> Option<(u64, u64)> {
        match self {
            MultiplierDependence::Pair(l1, l2) | MultiplierDependence::BeyondBound(l1, l2) => {
                Some((*l1, *l2))
            }
            MultiplierDependence::Never => None,
        }
    }
}

/// Minimal positive pair with `λ1^l1 = λ2^l2`, by prime factorization and
/// unit matching.
pub fn multiplier_dependence<S: Scalar>(
    lambda1: &S,
    lambda2: &S,
    bound: u64,
) -> Result<MultiplierDependence> {
    for l in [lambda1, lambda2] {
        if l.norm_sq() <= Rational::one() {
            return Err(Error::Precondition(format!(
                "multiplier {l} must have modulus greater than 1"
            )));
        }
    }
    let (m1, m2) = (
        lambda1.multiplicative_parts()?,
        lambda2.multiplicative_parts()?,
    );
    let Some((p1, p2)) = proportional_pair(&m1.primes, &m2.primes) else {
        return Ok(MultiplierDependence::Never);
    };
    // All solutions are t·(p1, p2); the unit parts pick out t.
    let u = m1.unit_order as u64;
    let drift = (m1.unit_exponent as i128 * p1 as i128 - m2.unit_exponent as i128 * p2 as i128)
        .rem_euclid(u as i128);
    let t = (1..=u)
        .find(|t| (drift * *t as i128) % u as i128 == 0)
        .unwrap_or(u);
    let (l1, l2) = (t * p1, t * p2);
    Ok(if l1 <= bound && l2 <= bound {
        MultiplierDependence::Pair(l1, l2)
    } else {
        MultiplierDependence::BeyondBound(l1, l2)
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommonIterate {
    pub pair: Option<(u64, u64)>,
    /// Degree-compatible candidates remained beyond the budget.
    pub budget_exhausted: bool,
    pub candidates_checked: Vec<(u64, u64)>,
}

/// Search `A^{∘l1} = B^{∘l2}` over degree-compatible pairs whose iterate
/// degree stays within `degree_cap`.
pub fn common_iterate_search<S: Scalar>(
    a: &RationalFunction<S>,
    b: &RationalFunction<S>,
    degree_cap: usize,
) -> Result<CommonIterate> {
    let (n1, n2) = (a.degree() as u64, b.degree() as u64);
    let mut out = CommonIterate {
        pair: None,
        budget_exhausted: false,
        candidates_checked: vec![],
    };
    let Some((p1, p2)) = degree_compatibility(n1, n2)? else {
        return Ok(out);
    };
    for t in 1u64.. {
        let (l1, l2) = (t * p1, t * p2);
        let fits = u32::try_from(l1)
            .ok()
            .and_then(|l| n1.checked_pow(l))
            .is_some_and(|d| d <= degree_cap as u64);
        if !fits {
            out.budget_exhausted = true;
            break;
        }
        out.candidates_checked.push((l1, l2));
        if a.iterate_capped(l1 as usize, degree_cap)?
            == b.iterate_capped(l2 as usize, degree_cap)?
        {
            out.pair = Some((l1, l2));
            break;
        }
    }
    Ok(out)
}

pub fn common_iterate<S: Scalar>(
    a: &RationalFunction<S>,
    b: &RationalFunction<S>,
) -> Result<CommonIterate> {
    common_iterate_search(a, b, DEFAULT_DEGREE_CAP)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibilityReport<S> {
    pub degrees: (u64, u64),
    pub multipliers: (S, S),
    pub degree_pair: Option<(u64, u64)>,
    /// Exact minimal pair, with no exponent bound.
    pub multiplier_pair: Option<(u64, u64)>,
    /// Neither map is a power map, a Chebyshev map or a Lattès map.
    pub non_special: bool,
    pub independent: bool,
    pub special: (SpecialKind, SpecialKind),
}

impl<S: Scalar> CompatibilityReport<S> {
    pub fn wording(&self) -> &'static str {
        if self.independent {
            "independent (proved by the criterion)"
        } else if !self.non_special {
            "criterion not applicable (a map may be special)"
        } else {
            "compatibility witnesses found (dependence possible, not established)"
        }
    }

    pub fn to_json(&self) -> Value {
        let pair = |p: Option<(u64, u64)>| p.map(|(a, b)| json!([a, b]));
        json!({
            "degrees": [self.degrees.0, self.degrees.1],
            "multipliers": [self.multipliers.0.to_string(), self.multipliers.1.to_string()],
            "degree_pair": pair(self.degree_pair),
            "multiplier_pair": pair(self.multiplier_pair),
            "independent": self.independent,
            "non_special": self.non_special,
            "verdict": self.wording(),
            "special": [self.special.0.describe(), self.special.1.describe()],
        })
    }
}

fn repelling_multiplier<S: Scalar>(a: &RationalFunction<S>, z: &PointP1<S>) -> Result<S> {
    let lambda = a.multiplier_at(z)?;
    if lambda.norm_sq() <= Rational::one() {
        return Err(Error::Precondition(format!(
            "{z} is not a repelling fixed point (multiplier {lambda})"
        )));
    }
    Ok(lambda)
}

/// Arithmetic test for independence of the Poincaré functions at repelling
/// fixed points `z1` of `A1` and `z2` of `A2`. The criterion only applies
/// to non-special maps; a negative answer means either that both necessary
/// conditions for dependence hold or that a map could not be shown
/// non-special.
pub fn independence_check<S: Scalar>(
    a1: &RationalFunction<S>,
    z1: &PointP1<S>,
    a2: &RationalFunction<S>,
    z2: &PointP1<S>,
) -> Result<CompatibilityReport<S>> {
    let (l1, l2) = (repelling_multiplier(a1, z1)?, repelling_multiplier(a2, z2)?);
    let degrees = (a1.degree() as u64, a2.degree() as u64);
    let degree_pair = degree_compatibility(degrees.0, degrees.1)?;
    let multiplier_pair = multiplier_dependence(&l1, &l2, u64::MAX)?.exact();
    let special = (recognize_special(a1)?, recognize_special(a2)?);
    let non_special = !special.0.is_special()
        && !special.1.is_special()
        && excludes_lattes(a1)?
        && excludes_lattes(a2)?;
    Ok(CompatibilityReport {
        degrees,
        multipliers: (l1, l2),
        degree_pair,
        multiplier_pair,
        non_special,
        independent: non_special && (degree_pair.is_none() || multiplier_pair.is_none()),
        special,
    })
}

/// Data of a holomorphic semiconjugacy diagram over `B`.
#[derive(Debug, Clone)]
pub struct TheoremInput<S> {
    pub x1: RationalFunction<S>,
    pub x2: RationalFunction<S>,
    pub b: RationalFunction<S>,
    pub a1: RationalFunction<S>,
    pub a2: RationalFunction<S>,
    pub z0: PointP1<S>,
    /// Expected images of `z0`; when absent, the images only need to be
    /// repelling fixed points of `A1` and `A2`.
    pub z1: Option<PointP1<S>>,
    pub z2: Option<PointP1<S>>,
    pub l1: usize,
    pub l2: usize,
    pub d1: usize,
    pub d2: usize,
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub diagram_first: bool,
    pub diagram_second: bool,
    pub repelling_fixed_point: bool,
    pub image_points: bool,
    pub local_degrees: bool,
    pub notes: Vec<String>,
}

impl TheoremReport {
    pub fn all(&self) -> bool {
        self.diagram_first
            && self.diagram_second
            && self.repelling_fixed_point
            && self.image_points
            && self.local_degrees
    }

    pub fn to_json(&self) -> Value {
        json!({
            "conditions": {
                "i_diagram_first": self.diagram_first,
                "ii_diagram_second": self.diagram_second,
                "iii_repelling_fixed_point": self.repelling_fixed_point,
                "iv_image_points": self.image_points,
                "v_local_degrees": self.local_degrees,
            },
            "all": self.all(),
            "notes": self.notes,
        })
    }
}

fn is_repelling_fixed<S: Scalar>(f: &RationalFunction<S>, z: &PointP1<S>) -> Result<bool> {
    if f.eval(z) != *z {
        return Ok(false);
    }
    Ok(f.multiplier_at(z)?.norm_sq() > Rational::one())
}

/// Check each condition of the diagram separately.
pub fn verify_theorem_conditions<S: Scalar>(input: &TheoremInput<S>) -> Result<TheoremReport> {
    if input.d1.gcd(&input.d2) != 1 {
        return Err(Error::Precondition(format!(
            "gcd(d1, d2) = gcd({}, {}) must be 1",
            input.d1, input.d2
        )));
    }
    if input.l1 == 0 || input.l2 == 0 || input.k == 0 {
        return Err(Error::Precondition("l1, l2 and k must be positive".into()));
    }
    let mut notes = Vec::new();
    let diagram = |a: &RationalFunction<S>, l: usize, x: &RationalFunction<S>| -> Result<bool> {
        Ok(a.iterate(l)?.compose(x)? == x.compose(&input.b)?)
    };
    let diagram_first = diagram(&input.a1, input.l1, &input.x1)?;
    let diagram_second = diagram(&input.a2, input.l2, &input.x2)?;
    let z0 = &input.z0;
    let repelling_fixed_point = is_repelling_fixed(&input.b, z0)?;
    if !repelling_fixed_point {
        notes.push(format!("{z0} is not a repelling fixed point of B"));
    }
    let mut image_points = true;
    for (x, a, z, name) in [
        (&input.x1, &input.a1, &input.z1, "X1"),
        (&input.x2, &input.a2, &input.z2, "X2"),
    ] {
        let image = x.eval(z0);
        let ok = match z {
            Some(z) => image == *z,
            None => is_repelling_fixed(a, &image)?,
        };
        if !ok {
            notes.push(format!("{name}({z0}) = {image} does not match"));
        }
        image_points &= ok;
    }
    let mut local_degrees = true;
    for (x, d, name) in [(&input.x1, input.d1, "X1"), (&input.x2, input.d2, "X2")] {
        let deg = x.local_degree(z0)?;
        if deg != d * input.k {
            notes.push(format!(
                "local degree of {name} at {z0} is {deg}, expected {}",
                d * input.k
            ));
            local_degrees = false;
        }
    }
    Ok(TheoremReport {
        diagram_first,
        diagram_second,
        repelling_fixed_point,
        image_points,
        local_degrees,
        notes,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoincareTransport<S> {
    pub lambda_b: S,
    pub lambda_a: S,
    pub local_degree: usize,
    pub multiplier_relation: bool,
    /// `c` with `X ∘ P_B(z) = P_A(c z^d)`.
    pub scale: Option<S>,
    pub series_match: bool,
    pub order: usize,
}

impl<S: Scalar> PoincareTransport<S> {
    pub fn holds(&self) -> bool {
        self.multiplier_relation && self.series_match
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lambda_B": self.lambda_b.to_string(),
            "lambda_A": self.lambda_a.to_string(),
            "local_degree": self.local_degree,
            "multiplier_relation": self.multiplier_relation,
            "scale": self.scale.as_ref().map(ToString::to_string),
            "series_match": self.series_match,
            "order": self.order,
            "holds": self.holds(),
        })
    }
}

/// For `A ∘ X = X ∘ B` and a repelling fixed point `z0` of `B`, check
/// `λ_A = λ_B^d` and `X ∘ P_B(z) = P_A(c z^d)` through `order`, where
/// `d = ord_{z0} X` and `c` is read off the first nonzero coefficient.
pub fn check_poincare_transport<S: Scalar>(
    a: &RationalFunction<S>,
    x: &RationalFunction<S>,
    b: &RationalFunction<S>,
    z0: &PointP1<S>,
    order: usize,
) -> Result<PoincareTransport<S>> {
    if !verify_semiconjugacy(a, x, b)?.verified {
        return Err(Error::Precondition("A∘X ≠ X∘B".into()));
    }
    let lambda_b = repelling_multiplier(b, z0)?;
    let d = x.local_degree(z0)?;
    let z1 = x.eval(z0);
    let lambda_a = a.multiplier_at(&z1)?;
    let multiplier_relation = lambda_a == lambda_b.pow(d as u32);
    let p_b = poincare_series(b, z0, order)?;
    let t = transport_poincare(x, &p_b)?;
    let p_a = poincare_series(a, &z1, order.div_ceil(d).max(1))?;
    let c = t.coeff(d);
    let (scale, series_match) = if c.is_zero() {
        (None, false)
    } else {
        let target = p_a.rescale(&c).substitute_power(d)?;
        let ok = (0..=order).all(|k| t.coeff(k) == target.coeff(k));
        (Some(c), ok)
    };
    Ok(PoincareTransport {
        lambda_b,
        lambda_a,
        local_degree: d,
        multiplier_relation,
        scale,
        series_match,
        order,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoettcherTransport<S> {
    pub holds: bool,
    /// Leading coefficient of `ℬ_A` forced by the scale of `X ∘ ℬ_B`.
    pub leading_a: S,
    pub order: usize,
    pub mismatch: Option<usize>,
}

impl<S: Scalar> BoettcherTransport<S> {
    pub fn to_json(&self) -> Value {
        json!({
            "holds": self.holds,
            "leading_A": self.leading_a.to_string(),
            "order": self.order,
            "first_mismatch": self.mismatch,
        })
    }
}

/// Check `X ∘ ℬ_B(z) = ℬ_A(z^{deg X})` through `M` Laurent terms, with the
/// leading coefficient of `ℬ_A` fixed by the left side.
pub fn transport_boettcher_check<S: Scalar>(
    a: &Polynomial<S>,
    x: &Polynomial<S>,
    b: &Polynomial<S>,
    order: usize,
) -> Result<BoettcherTransport<S>> {
    let (af, xf, bf) = (
        RationalFunction::from_poly(a.clone()),
        RationalFunction::from_poly(x.clone()),
        RationalFunction::from_poly(b.clone()),
    );
    if !verify_semiconjugacy(&af, &xf, &bf)?.verified {
        return Err(Error::Precondition("A∘X ≠ X∘B".into()));
    }
    let m = x.deg();
    if m == 0 {
        return Err(Error::Precondition("X must be nonconstant".into()));
    }
    let beta_b = boettcher_series(b, order, None)?;
    let len = order + 2;
    // In w = 1/z: w^m X(ℬ_B) = Σ X_j w^{m-j} β_B^j and w^m ℬ_A(z^m) = β_A(w^m).
    let gamma = homogeneous_compose(x, beta_b.coeffs(), len);
    let leading_a = gamma[0].clone();
    let n = a.deg();
    if n < 2 || a.lead() * leading_a.pow(n as u32 - 1) != S::one() {
        return Ok(BoettcherTransport {
            holds: false,
            leading_a,
            order,
            mismatch: Some(0),
        });
    }
    let beta_a = boettcher_series(a, (len - 1) / m, Some(&leading_a))?;
    let mismatch = (0..len).find(|&k| {
        let expected = if k % m == 0 {
            beta_a.coeffs()[k / m].clone()
        } else {
            S::zero()
        };
        gamma[k] != expected
    });
    Ok(BoettcherTransport {
        holds: mismatch.is_none(),
        leading_a,
        order,
        mismatch,
    })
}
