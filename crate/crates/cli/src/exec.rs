//! Dispatch of a validated job to the core library.

use crate::error::CliError;
use crate::job::JobSpec;
use holodep_core::algdep::{
    find_relation_scaled, is_generically_one_to_one, verify_invariant_curve, VERIFICATION_MARGIN,
};
use holodep_core::dynsys::{common_iterate_search, TheoremInput, DEFAULT_EXPONENT_BOUND};
use holodep_core::orbifold::{is_covering_map, is_holomorphic_map, is_minimal_holomorphic};
use holodep_core::parse::parse_expr;
use holodep_core::ratfunc::DEFAULT_DEGREE_CAP;
use holodep_core::series::poincare_residual;
use holodep_core::{
    boettcher_series, check_generalized_lattes, check_poincare_transport, degree_compatibility,
    detect_generalized_lattes, implicitize, independence_check, multiplier_dependence, parse_point,
    parse_ratfunc, parse_scalar, poincare_series, transport_boettcher_check, verify_commute,
    verify_semiconjugacy, verify_theorem_conditions, BivariatePolynomial, BoettcherSeries, Field,
    GaussianRational, LaurentSeries, MultiplierDependence, Orbifold, PointP1, Polynomial, Rational,
    RationalFunction, Scalar, TruncatedPowerSeries, Verdict,
};
use serde_json::{json, Value};
use std::path::Path;

pub const DEFAULT_ORDER: usize = 40;
pub const DEFAULT_NU_MAX: u32 = 4;
pub const DEFAULT_SUPPORT_BUDGET: usize = 8;

/// JSON result with the verdict that picks the exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub success: bool,
    pub json: Value,
}

impl Outcome {
    fn done(json: Value) -> Self {
        Outcome {
            success: true,
            json,
        }
    }

    fn verdict(success: bool, json: Value) -> Self {
        Outcome { success, json }
    }
}

/// Run any job except `verify-paper`.
pub fn execute(job: &JobSpec) -> Result<Outcome, CliError> {
    job.validate()?;
    match job.field()? {
        Field::Q => execute_in::<Rational>(job),
        Field::Qi => execute_in::<GaussianRational>(job),
    }
}

fn req<'a, T>(v: &'a Option<T>, name: &str) -> Result<&'a T, CliError> {
    v.as_ref()
        .ok_or_else(|| CliError::Usage(format!("missing parameter {name}")))
}

fn map<S: Scalar>(v: &Option<String>, name: &str) -> Result<RationalFunction<S>, CliError> {
    Ok(parse_ratfunc(req(v, name)?)?)
}

fn poly<S: Scalar>(v: &Option<String>, name: &str) -> Result<Polynomial<S>, CliError> {
    let f: RationalFunction<S> = map(v, name)?;
    f.as_polynomial().cloned().ok_or_else(|| {
        CliError::Core(holodep_core::Error::Precondition(format!(
            "{name} must be a polynomial"
        )))
    })
}

fn point<S: Scalar>(v: &Option<String>, name: &str) -> Result<PointP1<S>, CliError> {
    Ok(parse_point(req(v, name)?)?)
}

fn pair(p: Option<(u64, u64)>) -> Value {
    p.map_or(Value::Null, |(a, b)| json!([a, b]))
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Json {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

/// Series named by `MAP@POINT`, `boettcher:MAP` or `file:PATH`, with `z^d`
/// substituted, carrying at least `len` coefficients.
pub fn load_series<S: Scalar>(
    source: &str,
    d: usize,
    len: usize,
) -> Result<LaurentSeries<S>, CliError> {
    if d == 0 {
        return Err(CliError::Usage(
            "substitution power must be positive".into(),
        ));
    }
    if let Some(m) = source.strip_prefix("boettcher:") {
        let p = poly::<S>(&Some(m.to_string()), "boettcher map")?;
        return Ok(boettcher_series(&p, len, None)?.to_laurent(d));
    }
    if let Some(path) = source.strip_prefix("file:") {
        let v = read_json(Path::new(path))?;
        if v.get("leading_index").is_some() {
            return Ok(BoettcherSeries::<S>::from_json(&v)?.to_laurent(d));
        }
        let s = TruncatedPowerSeries::<S>::from_json(&v)?;
        return Ok((&s.substitute_power(d)?).into());
    }
    let (m, z) = source.rsplit_once('@').ok_or_else(|| {
        CliError::Usage(format!(
            "series source '{source}' is not MAP@POINT, boettcher:MAP or file:PATH"
        ))
    })?;
    let f: RationalFunction<S> = parse_ratfunc(m)?;
    let s = poincare_series(&f, &parse_point(z)?, len)?;
    Ok((&s.substitute_power(d)?).into())
}

fn orbifold<S: Scalar>(v: &Option<String>, name: &str) -> Result<Orbifold<S>, CliError> {
    Ok(Orbifold::parse(req(v, name)?)?)
}

fn execute_in<S: Scalar>(job: &JobSpec) -> Result<Outcome, CliError> {
    let order = job.order.unwrap_or(DEFAULT_ORDER);
    Ok(match job.command.as_str() {
        "parse" => {
            let f: RationalFunction<S> = map(&job.expr, "expr")?;
            Outcome::done(json!({
                "canonical": f.to_string(),
                "numerator": f.num().to_string(),
                "denominator": f.den().to_string(),
                "degree": f.degree(),
                "field": S::FIELD.to_string(),
            }))
        }
        "fixpoints" => {
            let f: RationalFunction<S> = map(&job.map, "map")?;
            Outcome::done(f.fixed_points()?.to_json())
        }
        "poincare" => {
            let f: RationalFunction<S> = map(&job.map, "map")?;
            let z0 = point(&job.point, "point")?;
            let lambda = f.multiplier_at(&z0)?;
            let s = poincare_series(&f, &z0, order)?;
            let residual_vanishes = poincare_residual(&f, &s, &lambda)?
                .iter()
                .all(|c| c.is_zero());
            let mut v = s.to_json();
            v["multiplier"] = json!(lambda.to_string());
            v["residual_vanishes"] = json!(residual_vanishes);
            Outcome::verdict(residual_vanishes, v)
        }
        "boettcher" => {
            let p = poly::<S>(&job.map, "map")?;
            let leading = job.leading.as_deref().map(parse_scalar::<S>).transpose()?;
            let b = boettcher_series(&p, order, leading.as_ref())?;
            let residual_vanishes = holodep_core::boettcher::boettcher_residual(&p, &b)
                .iter()
                .all(|c| c.is_zero());
            let mut v = b.to_json();
            v["residual_vanishes"] = json!(residual_vanishes);
            Outcome::verdict(residual_vanishes, v)
        }
        "algdep" => {
            let [m, n] = *req(&job.bidegree, "bidegree")?;
            let len = order + VERIFICATION_MARGIN + 1;
            let s1 = load_series::<S>(req(&job.s1, "s1")?, job.d1.unwrap_or(1), len)?;
            let s2 = load_series::<S>(req(&job.s2, "s2")?, job.d2.unwrap_or(1), len)?;
            let scales = job
                .scales
                .iter()
                .flatten()
                .map(|c| parse_scalar::<S>(c))
                .collect::<Result<Vec<_>, _>>()?;
            let cert = find_relation_scaled(&s1, &s2, m, n, order, &scales)?;
            Outcome::verdict(cert.verdict == Verdict::Relation, cert.to_json())
        }
        "implicitize" => {
            let f = implicitize::<S>(&map(&job.x1, "x1")?, &map(&job.x2, "x2")?)?;
            Outcome::done(f.to_json())
        }
        "one-to-one" => {
            let (x1, x2) = (map::<S>(&job.x1, "x1")?, map::<S>(&job.x2, "x2")?);
            let f = implicitize(&x1, &x2)?;
            let (one, d) = is_generically_one_to_one(&x1, &x2, &f)?;
            Outcome::verdict(
                one,
                json!({"curve": f.to_string(), "one_to_one": one, "fiber_degree": d}),
            )
        }
        "semiconj" => {
            let t = verify_semiconjugacy::<S>(
                &map(&job.a, "a")?,
                &map(&job.x, "x")?,
                &map(&job.b, "b")?,
            )?;
            Outcome::verdict(t.verified, t.to_json())
        }
        "commute" => {
            let c = verify_commute::<S>(&map(&job.a, "a")?, &map(&job.b, "b")?)?;
            Outcome::verdict(c, json!({"commute": c}))
        }
        "common-iterate" => {
            let r = common_iterate_search::<S>(
                &map(&job.a, "a")?,
                &map(&job.b, "b")?,
                job.cap.unwrap_or(DEFAULT_DEGREE_CAP),
            )?;
            Outcome::verdict(
                r.pair.is_some(),
                json!({
                    "pair": pair(r.pair),
                    "budget_exhausted": r.budget_exhausted,
                    "candidates_checked": r.candidates_checked.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
                }),
            )
        }
        "independence" => {
            let r = independence_check::<S>(
                &map(&job.a1, "a1")?,
                &point(&job.z1, "z1")?,
                &map(&job.a2, "a2")?,
                &point(&job.z2, "z2")?,
            )?;
            Outcome::verdict(r.independent, r.to_json())
        }
        "theorem-check" => {
            let input = TheoremInput {
                x1: map(&job.x1, "x1")?,
                x2: map(&job.x2, "x2")?,
                b: map(&job.b, "b")?,
                a1: map(&job.a1, "a1")?,
                a2: map(&job.a2, "a2")?,
                z0: point(&job.z0, "z0")?,
                z1: job.z1.as_deref().map(parse_point::<S>).transpose()?,
                z2: job.z2.as_deref().map(parse_point::<S>).transpose()?,
                l1: job.l1.unwrap_or(1),
                l2: job.l2.unwrap_or(1),
                d1: *req(&job.d1, "d1")?,
                d2: *req(&job.d2, "d2")?,
                k: job.k.unwrap_or(1),
            };
            let r = verify_theorem_conditions(&input)?;
            Outcome::verdict(r.all(), r.to_json())
        }
        "orbifold-euler" => {
            let o = orbifold::<S>(&job.support, "support")?;
            Outcome::done(
                json!({"orbifold": o.to_string(), "euler_char": o.euler_char().to_string()}),
            )
        }
        "orbifold-check" => {
            let f: RationalFunction<S> = map(&job.map, "map")?;
            let o1 = orbifold::<S>(&job.support, "support")?;
            let o2 = match &job.target {
                Some(_) => orbifold::<S>(&job.target, "target")?,
                None => o1.clone(),
            };
            let mode = job.mode.as_deref().unwrap_or("lattes");
            let (holds, mut v) = match mode {
                "covering" => {
                    let c = is_covering_map(&f, &o1, &o2)?;
                    (c, json!({"covering": c}))
                }
                "minimal" => {
                    let c = is_minimal_holomorphic(&f, &o1, &o2)?;
                    (c, json!({"minimal_holomorphic": c}))
                }
                "holomorphic" => {
                    let c = is_holomorphic_map(&f, &o1, &o2)?;
                    (c, json!({"holomorphic": c}))
                }
                _ => {
                    let c = check_generalized_lattes(&f, &o1)?;
                    (c.holds, c.to_json())
                }
            };
            v["mode"] = json!(mode);
            v["source"] = json!(o1.to_string());
            v["target"] = json!(o2.to_string());
            v["euler_chars"] = json!([o1.euler_char().to_string(), o2.euler_char().to_string()]);
            Outcome::verdict(holds, v)
        }
        "lattes-detect" => {
            let f: RationalFunction<S> = map(&job.map, "map")?;
            let d = detect_generalized_lattes(
                &f,
                job.nu_max.unwrap_or(DEFAULT_NU_MAX),
                job.budget.unwrap_or(DEFAULT_SUPPORT_BUDGET),
            )?;
            Outcome::verdict(d.found.is_some(), d.to_json())
        }
        "transport" => {
            let r = check_poincare_transport::<S>(
                &map(&job.a, "a")?,
                &map(&job.x, "x")?,
                &map(&job.b, "b")?,
                &point(&job.point, "point")?,
                order,
            )?;
            Outcome::verdict(r.holds(), r.to_json())
        }
        "boettcher-transport" => {
            let r = transport_boettcher_check::<S>(
                &poly(&job.a, "a")?,
                &poly(&job.x, "x")?,
                &poly(&job.b, "b")?,
                order,
            )?;
            Outcome::verdict(r.holds, r.to_json())
        }
        "invariant-curve" => {
            let f: BivariatePolynomial<S> = parse_expr(req(&job.curve, "curve")?)?;
            let (a1, a2) = (map::<S>(&job.a1, "a1")?, map::<S>(&job.a2, "a2")?);
            let param = match (&job.x1, &job.x2) {
                (Some(_), Some(_)) => Some((map::<S>(&job.x1, "x1")?, map::<S>(&job.x2, "x2")?)),
                (None, None) => None,
                _ => return Err(CliError::Usage("give both x1 and x2 or neither".into())),
            };
            let ok = verify_invariant_curve(&f, &a1, &a2, param.as_ref().map(|(p, q)| (p, q)))?;
            Outcome::verdict(ok, json!({"curve": f.to_string(), "invariant": ok}))
        }
        "local-degree" => {
            let f: RationalFunction<S> = map(&job.map, "map")?;
            let z = point(&job.point, "point")?;
            Outcome::done(
                json!({"point": z.to_string(), "image": f.eval(&z).to_string(), "local_degree": f.local_degree(&z)?}),
            )
        }
        "multiplier-dependence" => {
            let l1: S = parse_scalar(req(&job.lambda1, "lambda1")?)?;
            let l2: S = parse_scalar(req(&job.lambda2, "lambda2")?)?;
            let bound = job.bound.unwrap_or(DEFAULT_EXPONENT_BOUND);
            let r = multiplier_dependence(&l1, &l2, bound)?;
            let verdict = match r {
                MultiplierDependence::Pair(..) => "pair",
                MultiplierDependence::BeyondBound(..) => "none within bound",
                MultiplierDependence::Never => "none",
            };
            Outcome::verdict(
                r.within_bound().is_some(),
                json!({"pair": pair(r.within_bound()), "minimal_pair": pair(r.exact()), "bound": bound, "verdict": verdict}),
            )
        }
        "degree-compat" => {
            let p = degree_compatibility(*req(&job.n1, "n1")?, *req(&job.n2, "n2")?)?;
            Outcome::verdict(p.is_some(), json!({"pair": pair(p)}))
        }
        other => {
            return Err(CliError::Usage(format!(
                "command '{other}' cannot run as a single job"
            )))
        }
    })
}
