//! Orbifolds on the Riemann sphere and the map conditions between them.
//!
//! Local conditions are checked exactly. Preimages of ramified points are
//! found by square-free decomposition, so points outside the field are
//! handled through their multiplicities without being located: such points
//! never carry ramification themselves, since supports are field-rational.

use crate::error::{Error, Result};
use crate::parse::parse_point;
use crate::point::PointP1;
use crate::poly::Polynomial;
use crate::ratfunc::RationalFunction;
use crate::roots::roots_in_field;
use crate::scalar::{Rational, Ring, Scalar};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbifold<S> {
    support: Vec<(PointP1<S>, u32)>,
}

impl<S: Scalar> Orbifold<S> {
    /// Points must be distinct and every `ν ≥ 2`; the support is stored in
    /// canonical point order.
    pub fn new(mut support: Vec<(PointP1<S>, u32)>) -> Result<Self> {
        if let Some((z, nu)) = support.iter().find(|(_, nu)| *nu < 2) {
            return Err(Error::Precondition(format!(
                "ramification at {z} must be at least 2, got {nu}"
            )));
        }
        support.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        if let Some(w) = support.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::Precondition(format!(
                "point {} listed twice",
                w[0].0
            )));
        }
        Ok(Orbifold { support })
    }

    pub fn empty() -> Self {
        Orbifold { support: vec![] }
    }

    /// Parse `"0:2,inf:2"`; the empty string is the unramified sphere.
    pub fn parse(text: &str) -> Result<Self> {
        let mut support = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (p, nu) = part.rsplit_once(':').ok_or_else(|| Error::Parse {
                position: 0,
                expected: format!("point:nu in '{part}'"),
            })?;
            let nu: u32 = nu.trim().parse().map_err(|_| Error::Parse {
                position: 0,
                expected: format!("positive integer ramification in '{part}'"),
            })?;
            support.push((parse_point(p)?, nu));
        }
        Orbifold::new(support)
    }

    pub fn support(&self) -> &[(PointP1<S>, u32)] {
        &self.support
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// `ν(z)`, equal to 1 off the support.
    pub fn nu(&self, z: &PointP1<S>) -> u32 {
        self.support
            .iter()
            .find(|(p, _)| p == z)
            .map_or(1, |(_, nu)| *nu)
    }

    /// `χ = 2 + Σ (1/ν - 1)`.
    pub fn euler_char(&self) -> Rational {
        self.support
            .iter()
            .fold(Rational::from_int(2), |acc, (_, nu)| {
                acc + Rational::new(1.into(), (*nu).into()) - Rational::one()
            })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "support": self.support.iter().map(|(p, nu)| json!([p.to_string(), nu])).collect::<Vec<_>>(),
            "euler_char": self.euler_char().to_string(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Precondition("orbifold JSON: expected support [[point, nu]]".into());
        let items = v.get("support").and_then(Value::as_array).ok_or_else(bad)?;
        let mut support = Vec::new();
        for item in items {
            let a = item.as_array().filter(|a| a.len() == 2).ok_or_else(bad)?;
            let p = parse_point(a[0].as_str().ok_or_else(bad)?)?;
            let nu = a[1].as_u64().ok_or_else(bad)? as u32;
            support.push((p, nu));
        }
        Orbifold::new(support)
    }
}

impl<S: Scalar> fmt::Display for Orbifold<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .support
            .iter()
            .map(|(p, nu)| format!("{p}:{nu}"))
            .collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapRule {
    /// `ν₂(f z) = ν₁(z) deg_z f`
    Covering,
    /// `ν₂(f z) = ν₁(z) gcd(deg_z f, ν₂(f z))`
    MinimalHolomorphic,
    /// `ν₂(f z) | ν₁(z) deg_z f`
    Holomorphic,
}

impl MapRule {
    fn holds(self, nu1: u32, deg: usize, nu2: u32) -> bool {
        let deg = deg as u64;
        let (nu1, nu2) = (nu1 as u64, nu2 as u64);
        match self {
            MapRule::Covering => nu2 == nu1 * deg,
            MapRule::MinimalHolomorphic => nu2 == nu1 * deg.gcd(&nu2),
            MapRule::Holomorphic => (nu1 * deg) % nu2 == 0,
        }
    }
}

/// `num(f) - s den(f)`, or `den(f)` for `s = ∞`: its roots are the finite
/// preimages of `s`, with multiplicity equal to the local degree.
pub fn fiber_polynomial<S: Scalar>(f: &RationalFunction<S>, s: &PointP1<S>) -> Polynomial<S> {
    match s {
        PointP1::Finite(s) => f.num() - &f.den().scale(s),
        PointP1::Infinity => f.den().clone(),
    }
}

/// Field-rational preimages of `s` with local degrees.
pub fn preimages<S: Scalar>(
    f: &RationalFunction<S>,
    s: &PointP1<S>,
) -> Result<Vec<(PointP1<S>, usize)>> {
    let split = roots_in_field(&fiber_polynomial(f, s))?;
    if let Some((g, _)) = split.residual.first() {
        return Err(Error::UnresolvedPreimage {
            factor: g.to_string(),
        });
    }
    let mut out: Vec<_> = split
        .roots
        .into_iter()
        .map(|(r, k)| (PointP1::Finite(r), k))
        .collect();
    if f.eval(&PointP1::Infinity) == *s {
        out.push((PointP1::Infinity, f.local_degree(&PointP1::Infinity)?));
    }
    Ok(out)
}

/// Numerator of `f'`: its roots are the finite critical points, multiple
/// poles included.
fn critical_numerator<S: Scalar>(f: &RationalFunction<S>) -> Polynomial<S> {
    &(&f.num().derivative() * f.den()) - &(f.num() * &f.den().derivative())
}

/// First point where `rule` fails, described in words; `None` if it holds
/// everywhere.
pub fn map_condition_failure<S: Scalar>(
    f: &RationalFunction<S>,
    o1: &Orbifold<S>,
    o2: &Orbifold<S>,
    rule: MapRule,
) -> Result<Option<String>> {
    if f.is_constant() {
        return Err(Error::Precondition("map must be nonconstant".into()));
    }
    let fail = |z: &str, nu1: u32, deg: usize, nu2: u32| {
        Some(format!(
            "at {z}: nu1={nu1}, local degree {deg}, nu2(f(z))={nu2}"
        ))
    };
    for (z, nu1) in o1.support() {
        let deg = f.local_degree(z)?;
        let nu2 = o2.nu(&f.eval(z));
        if !rule.holds(*nu1, deg, nu2) {
            return Ok(fail(&z.to_string(), *nu1, deg, nu2));
        }
    }
    for (s, nu2) in o2.support() {
        let split = roots_in_field(&fiber_polynomial(f, s))?;
        for (r, k) in &split.roots {
            let z = PointP1::Finite(r.clone());
            let nu1 = o1.nu(&z);
            if !rule.holds(nu1, *k, *nu2) {
                return Ok(fail(&z.to_string(), nu1, *k, *nu2));
            }
        }
        for (g, k) in &split.residual {
            if !rule.holds(1, *k, *nu2) {
                return Ok(fail(&format!("roots of {g}"), 1, *k, *nu2));
            }
        }
        if f.eval(&PointP1::Infinity) == *s {
            let deg = f.local_degree(&PointP1::Infinity)?;
            let nu1 = o1.nu(&PointP1::Infinity);
            if !rule.holds(nu1, deg, *nu2) {
                return Ok(fail("inf", nu1, deg, *nu2));
            }
        }
    }
    if rule == MapRule::Covering {
        // Critical points with unramified image break the covering rule.
        let mut w = critical_numerator(f);
        for (s, _) in o2.support() {
            let n = fiber_polynomial(f, s);
            loop {
                let g = w.gcd(&n);
                if g.deg() == 0 {
                    break;
                }
                w = w.div_rem(&g)?.0;
            }
        }
        if w.deg() > 0 {
            return Ok(Some(format!(
                "critical points at roots of {} map outside the support",
                w.monic()
            )));
        }
        let deg = f.local_degree(&PointP1::Infinity)?;
        let image = f.eval(&PointP1::Infinity);
        if deg > 1 && o2.nu(&image) == 1 {
            return Ok(fail("inf", o1.nu(&PointP1::Infinity), deg, 1));
        }
    }
    Ok(None)
}

pub fn is_covering_map<S: Scalar>(
    f: &RationalFunction<S>,
    o1: &Orbifold<S>,
    o2: &Orbifold<S>,
) -> Result<bool> {
    Ok(map_condition_failure(f, o1, o2, MapRule::Covering)?.is_none())
}

pub fn is_holomorphic_map<S: Scalar>(
    f: &RationalFunction<S>,
    o1: &Orbifold<S>,
    o2: &Orbifold<S>,
) -> Result<bool> {
    Ok(map_condition_failure(f, o1, o2, MapRule::Holomorphic)?.is_none())
}

/// Minimal holomorphic, with the holomorphic divisibility checked as well.
pub fn is_minimal_holomorphic<S: Scalar>(
    f: &RationalFunction<S>,
    o1: &Orbifold<S>,
    o2: &Orbifold<S>,
) -> Result<bool> {
    Ok(
        map_condition_failure(f, o1, o2, MapRule::MinimalHolomorphic)?.is_none()
            && is_holomorphic_map(f, o1, o2)?,
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LattesCheck {
    pub holds: bool,
    pub euler_char: Rational,
    pub euler_char_nonnegative: bool,
    pub failure: Option<String>,
}

impl LattesCheck {
    pub fn to_json(&self) -> Value {
        json!({
            "holds": self.holds,
            "euler_char": self.euler_char.to_string(),
            "euler_char_nonnegative": self.euler_char_nonnegative,
            "failure": self.failure,
        })
    }
}

/// Whether `A: O → O` is minimal holomorphic.
pub fn check_generalized_lattes<S: Scalar>(
    a: &RationalFunction<S>,
    o: &Orbifold<S>,
) -> Result<LattesCheck> {
    if a.degree() < 2 {
        return Err(Error::DegreeTooSmall { degree: a.degree() });
    }
    if o.is_empty() {
        return Err(Error::Precondition(
            "orbifold must be ramified somewhere".into(),
        ));
    }
    let mut failure = map_condition_failure(a, o, o, MapRule::MinimalHolomorphic)?;
    if failure.is_none() {
        failure = map_condition_failure(a, o, o, MapRule::Holomorphic)?;
    }
    let chi = o.euler_char();
    Ok(LattesCheck {
        holds: failure.is_none(),
        euler_char_nonnegative: chi >= Rational::zero(),
        euler_char: chi,
        failure,
    })
}

/// Field-rational critical values of `f`, infinity included.
pub fn critical_values<S: Scalar>(f: &RationalFunction<S>) -> Result<Vec<PointP1<S>>> {
    Ok(critical_value_data(f)?.0)
}

/// Field-rational critical values and the number of the remaining ones.
fn critical_value_data<S: Scalar>(f: &RationalFunction<S>) -> Result<(Vec<PointP1<S>>, usize)> {
    let w = critical_numerator(f);
    let mut out = Vec::new();
    let mut irrational = 0;
    if w.deg() > 0 {
        // Res_z(W(z), P(z) - v Q(z)) vanishes at the finite critical values.
        let lift = |p: &Polynomial<S>| p.map(|c| Polynomial::constant(c.clone()));
        let fiber: Polynomial<Polynomial<S>> = Polynomial::new(
            (0..=f.degree())
                .map(|k| Polynomial::new(vec![f.num().coeff(k), -f.den().coeff(k)]))
                .collect(),
        );
        let r = lift(&w).resultant(&fiber);
        if !r.is_zero() {
            let split = roots_in_field(&r)?;
            irrational = split.residual.iter().map(|(p, _)| p.deg()).sum();
            for (v, _) in split.roots {
                out.push(PointP1::Finite(v));
            }
        }
        if w.gcd(f.den()).deg() > 0 {
            out.push(PointP1::Infinity);
        }
    }
    if f.local_degree(&PointP1::Infinity)? > 1 {
        out.push(f.eval(&PointP1::Infinity));
    }
    out.sort_by(|a, b| a.canonical_cmp(b));
    out.dedup();
    Ok((out, irrational))
}

/// Forward steps taken along critical orbits by [`excludes_lattes`].
const POSTCRITICAL_STEPS: usize = 8;

/// Whether `a` is certainly not a Lattès map. Polynomials never are; a
/// rational map is excluded once its postcritical set shows more than four
/// points, since that set lies in the support of the orbifold. `false` means
/// undecided.
pub fn excludes_lattes<S: Scalar>(a: &RationalFunction<S>) -> Result<bool> {
    if a.is_polynomial() {
        return Ok(true);
    }
    let (mut seen, irrational) = critical_value_data(a)?;
    let mut frontier = seen.clone();
    for _ in 0..POSTCRITICAL_STEPS {
        if seen.len() + irrational > 4 || frontier.is_empty() {
            break;
        }
        let mut next = Vec::new();
        for z in frontier.iter().map(|z| a.eval(z)) {
            if !seen.contains(&z) {
                seen.push(z.clone());
                next.push(z);
            }
        }
        frontier = next;
    }
    Ok(seen.len() + irrational > 4)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateLog<S> {
    pub orbifold: Orbifold<S>,
    pub accepted: bool,
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LattesDetection<S> {
    pub found: Option<Orbifold<S>>,
    pub candidate_points: Vec<PointP1<S>>,
    pub log: Vec<CandidateLog<S>>,
    pub warnings: Vec<String>,
}

impl<S: Scalar> LattesDetection<S> {
    pub fn to_json(&self) -> Value {
        json!({
            "found": self.found.as_ref().map(Orbifold::to_json),
            "verdict": if self.found.is_some() { "found" } else { "none within bounds" },
            "candidate_points": self.candidate_points.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "candidates": self.log.iter().map(|c| json!({
                "orbifold": c.orbifold.to_string(),
                "accepted": c.accepted,
                "reason": c.reason,
            })).collect::<Vec<_>>(),
            "warnings": self.warnings,
        })
    }
}

/// Ramification signatures with `χ ≥ 0` on `size` points, `ν ≤ nu_max`,
/// excluding one-point supports and unequal two-point supports.
fn signatures(size: usize, nu_max: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![2u32; size];
    loop {
        let chi = cur.iter().fold(Rational::from_int(2), |acc, nu| {
            acc + Rational::new(1.into(), (*nu).into()) - Rational::one()
        });
        let good = size >= 2 && (size != 2 || cur[0] == cur[1]);
        if good && chi >= Rational::zero() {
            out.push(cur.clone());
        }
        let mut k = 0;
        loop {
            if k == size {
                return out;
            }
            if cur[k] < nu_max {
                cur[k] += 1;
                break;
            }
            cur[k] = 2;
            k += 1;
        }
    }
}

fn subsets<T: Clone>(items: &[T], size: usize) -> Vec<Vec<T>> {
    if size == 0 {
        return vec![vec![]];
    }
    if items.len() < size {
        return vec![];
    }
    let mut with: Vec<Vec<T>> = subsets(&items[1..], size - 1)
        .into_iter()
        .map(|mut s| {
            s.insert(0, items[0].clone());
            s
        })
        .collect();
    with.extend(subsets(&items[1..], size));
    with
}

/// Bounded search for an orbifold making `A` a generalized Lattès map.
///
/// Candidate points are the forward orbits of the field-rational critical
/// values, at most `support_budget` of them. Signatures range over
/// `2..=nu_max` with `χ ≥ 0`, tried in order of increasing `χ`, then size.
/// A `None` result is not a proof that `A` is not a generalized Lattès map.
pub fn detect_generalized_lattes<S: Scalar>(
    a: &RationalFunction<S>,
    nu_max: u32,
    support_budget: usize,
) -> Result<LattesDetection<S>> {
    if a.degree() < 2 {
        return Err(Error::DegreeTooSmall { degree: a.degree() });
    }
    // Breadth-first over the critical orbits, so that one escaping orbit
    // cannot use up the budget.
    let mut points: Vec<(PointP1<S>, PointP1<S>)> = Vec::new();
    let mut warnings = Vec::new();
    let mut frontier = critical_values(a)?;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for z in frontier {
            if points.iter().any(|(p, _)| *p == z) {
                continue;
            }
            if points.len() == support_budget {
                warnings.push(format!(
                    "support budget {support_budget} reached while following critical orbits"
                ));
                next.clear();
                break;
            }
            let image = a.eval(&z);
            next.push(image.clone());
            points.push((z, image));
        }
        frontier = next;
    }
    points.sort_by(|x, y| x.0.canonical_cmp(&y.0));
    let image_of = |z: &PointP1<S>| points.iter().find(|(p, _)| p == z).map(|(_, w)| w);
    let mut candidates: Vec<Orbifold<S>> = Vec::new();
    for size in 2..=4.min(points.len()) {
        let sigs = signatures(size, nu_max);
        for pts in subsets(
            &points.iter().map(|(p, _)| p.clone()).collect::<Vec<_>>(),
            size,
        ) {
            for sig in &sigs {
                let support = pts.iter().cloned().zip(sig.iter().copied()).collect();
                candidates.push(Orbifold::new(support)?);
            }
        }
    }
    candidates.sort_by(|x, y| {
        x.euler_char()
            .cmp(&y.euler_char())
            .then(x.support().len().cmp(&y.support().len()))
    });
    let mut log = Vec::new();
    for o in candidates {
        // ν(z) must divide ν(A(z)), so the support is forward invariant.
        let blocked = o.support().iter().find_map(|(z, nu)| {
            let w = image_of(z).expect("support drawn from candidate points");
            let nu_w = o.nu(w);
            (nu_w % nu != 0).then(|| format!("at {z}: nu1={nu} does not divide nu2(f(z))={nu_w}"))
        });
        if let Some(reason) = blocked {
            log.push(CandidateLog {
                orbifold: o,
                accepted: false,
                reason: Some(reason),
            });
            continue;
        }
        match check_generalized_lattes(a, &o) {
            Ok(check) => {
                let accepted = check.holds;
                log.push(CandidateLog {
                    orbifold: o.clone(),
                    accepted,
                    reason: check.failure,
                });
                if accepted {
                    return Ok(LattesDetection {
                        found: Some(o),
                        candidate_points: points.into_iter().map(|(p, _)| p).collect(),
                        log,
                        warnings,
                    });
                }
            }
            Err(e @ Error::UnresolvedPreimage { .. }) => {
                warnings.push(format!("candidate {o} skipped: {e}"))
            }
            Err(e) => return Err(e),
        }
    }
    Ok(LattesDetection {
        found: None,
        candidate_points: points.into_iter().map(|(p, _)| p).collect(),
        log,
        warnings,
    })
}

/// Exceptional families recognized up to conjugacy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialKind {
    /// Conjugate to `z^n` (`inverted = false`) or `z^{-n}`.
    Power {
        degree: usize,
        inverted: bool,
    },
    /// Polynomial affinely conjugate to `sign · T_n`.
    Chebyshev {
        degree: usize,
        sign: i8,
    },
    NotRecognized,
}

impl SpecialKind {
    pub fn is_special(&self) -> bool {
        !matches!(self, SpecialKind::NotRecognized)
    }

    pub fn describe(&self) -> String {
        match self {
            SpecialKind::Power {
                degree,
                inverted: false,
            } => format!("conjugate to z^{degree}"),
            SpecialKind::Power {
                degree,
                inverted: true,
            } => format!("conjugate to z^-{degree}"),
            SpecialKind::Chebyshev { degree, sign } if *sign > 0 => {
                format!("conjugate to T_{degree}")
            }
            SpecialKind::Chebyshev { degree, .. } => format!("conjugate to -T_{degree}"),
            SpecialKind::NotRecognized => "not recognized as special".into(),
        }
    }
}

/// Coefficients of the Chebyshev polynomial `T_n`.
pub fn chebyshev<S: Scalar>(n: usize) -> Polynomial<S> {
    let mut prev = Polynomial::one();
    let mut cur = Polynomial::var();
    if n == 0 {
        return prev;
    }
    let two_z = Polynomial::monomial(S::from_int(2), 1);
    for _ in 1..n {
        let next = &(&two_z * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn power_conjugacy<S: Scalar>(a: &RationalFunction<S>) -> Result<Option<SpecialKind>> {
    let n = a.degree();
    let w = critical_numerator(a);
    let mut rational: Vec<PointP1<S>> = Vec::new();
    let mut residual: Vec<Polynomial<S>> = Vec::new();
    for (g, k) in w.squarefree_decomposition() {
        if k + 1 == n {
            let split = roots_in_field(&g)?;
            rational.extend(split.roots.into_iter().map(|(r, _)| PointP1::Finite(r)));
            residual.extend(split.residual.into_iter().map(|(h, _)| h));
        }
    }
    if a.local_degree(&PointP1::Infinity)? == n {
        rational.push(PointP1::Infinity);
    }
    let count = rational.len() + residual.iter().map(Polynomial::deg).sum::<usize>();
    if count != 2 {
        return Ok(None);
    }
    if let [g] = residual.as_slice() {
        // A conjugate pair: it must be invariant as a set.
        let image = RationalFunction::from_poly(g.clone()).compose(a)?;
        if !image.num().div_rem(g)?.1.is_zero() {
            return Ok(None);
        }
        let fixed = fiber_polynomial(
            &a.sub(&RationalFunction::identity()),
            &PointP1::Finite(S::zero()),
        );
        let inverted = !fixed.div_rem(g)?.1.is_zero();
        return Ok(Some(SpecialKind::Power {
            degree: n,
            inverted,
        }));
    }
    let (c1, c2) = (&rational[0], &rational[1]);
    let (i1, i2) = (a.eval(c1), a.eval(c2));
    if i1 == *c1 && i2 == *c2 {
        Ok(Some(SpecialKind::Power {
            degree: n,
            inverted: false,
        }))
    } else if i1 == *c2 && i2 == *c1 {
        Ok(Some(SpecialKind::Power {
            degree: n,
            inverted: true,
        }))
    } else {
        Ok(None)
    }
}

fn chebyshev_conjugacy<S: Scalar>(p: &Polynomial<S>) -> Result<Option<SpecialKind>> {
    let n = p.deg();
    let lead = p.lead();
    // Move the center -A_{n-1}/(n A_n) to the origin.
    let w = -(p.coeff(n - 1) / (S::from_int(n as i64) * lead.clone()));
    let shifted =
        &p.compose(&Polynomial::new(vec![w.clone(), S::one()])) - &Polynomial::constant(w);
    let c = |k: usize| shifted.coeff(k);
    let t: Polynomial<S> = chebyshev(n);
    if (0..=n).any(|k| (n - k) % 2 == 1 && !c(k).is_zero()) || c(n - 2).is_zero() {
        return Ok(None);
    }
    // Conjugating by z ↦ a z turns c_k into c_k a^{k-1}; the ratio of the two
    // top coefficients fixes u = a².
    let u = t.coeff(n) * c(n - 2) / (t.coeff(n - 2) * c(n));
    let a_top = |sign: &S| -> Option<S> {
        // a^{n-1} from c_n a^{n-1} = sign · t_n.
        let top = sign.clone() * t.coeff(n) / c(n);
        if n % 2 == 1 {
            (top == u.pow((n as u32 - 1) / 2)).then_some(top)
        } else {
            let a = top.clone() / u.pow((n as u32 - 2) / 2);
            (a.clone() * a == u).then_some(top)
        }
    };
    for sign in [1i8, -1] {
        let s = S::from_int(sign as i64);
        let Some(top) = a_top(&s) else { continue };
        let matches = (0..=n).filter(|k| (n - k) % 2 == 0).all(|k| {
            let scale = top.clone() * u.pow(((n - k) / 2) as u32).inv().expect("u is nonzero");
            c(k) * scale == s.clone() * t.coeff(k)
        });
        if matches {
            return Ok(Some(SpecialKind::Chebyshev { degree: n, sign }));
        }
    }
    Ok(None)
}

/// Recognize conjugacy to `z^{±n}` or, for polynomials, to `±T_n`.
pub fn recognize_special<S: Scalar>(a: &RationalFunction<S>) -> Result<SpecialKind> {
    if a.degree() < 2 {
        return Err(Error::DegreeTooSmall { degree: a.degree() });
    }
    if let Some(k) = power_conjugacy(a)? {
        return Ok(k);
    }
    if let Some(p) = a.as_polynomial() {
        if let Some(k) = chebyshev_conjugacy(p)? {
            return Ok(k);
        }
    }
    Ok(SpecialKind::NotRecognized)
}
