//! Exact root extraction over the active field.
//!
//! Roots are found through square-free decomposition, closed forms for
//! degree one and two, and the rational root theorem in the ring of integers
//! for higher degree. Factors with no roots in the field are returned as
//! residuals rather than dropped.

use crate::error::Result;
use crate::poly::Polynomial;
use crate::scalar::Scalar;
use num_traits::One;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSplit<S> {
    /// Distinct field roots with multiplicities, canonical order.
    pub roots: Vec<(S, usize)>,
    /// Monic factors without roots in the field, each with the multiplicity
    /// shared by all of its roots.
    pub residual: Vec<(Polynomial<S>, usize)>,
}

impl<S: Scalar> RootSplit<S> {
    pub fn is_complete(&self) -> bool {
        self.residual.is_empty()
    }
}

pub fn roots_in_field<S: Scalar>(p: &Polynomial<S>) -> Result<RootSplit<S>> {
    let mut roots = Vec::new();
    let mut residual = Vec::new();
    for (factor, k) in p.squarefree_decomposition() {
        let (rs, rest) = split_squarefree(&factor)?;
        roots.extend(rs.into_iter().map(|r| (r, k)));
        if rest.deg() > 0 {
            residual.push((rest, k));
        }
    }
    roots.sort_by(|a: &(S, usize), b| a.0.canonical_cmp(&b.0));
    Ok(RootSplit { roots, residual })
}

fn linear_root<S: Scalar>(f: &Polynomial<S>) -> S {
    -(f.coeff(0) / f.coeff(1))
}

fn quadratic_roots<S: Scalar>(f: &Polynomial<S>) -> Result<Vec<S>> {
    let (a, b, c) = (f.coeff(2), f.coeff(1), f.coeff(0));
    let disc = b.clone() * b.clone() - S::from_int(4) * a.clone() * c;
    let two_a = S::from_int(2) * a;
    let mut out: Vec<S> = disc
        .nth_roots(2)?
        .into_iter()
        .map(|s| (-b.clone() + s) / two_a.clone())
        .collect();
    out.dedup();
    Ok(out)
}

/// Field roots of a monic square-free polynomial and the cofactor left over.
fn split_squarefree<S: Scalar>(f: &Polynomial<S>) -> Result<(Vec<S>, Polynomial<S>)> {
    let mut rest = f.clone();
    let mut roots = Vec::new();
    let divide = |rest: &mut Polynomial<S>, r: &S| {
        let lin = Polynomial::new(vec![-r.clone(), S::one()]);
        *rest = rest.div_rem(&lin).expect("nonzero divisor").0;
    };
    if rest.deg() > 0 && rest.coeff(0).is_zero() {
        roots.push(S::zero());
        divide(&mut rest, &S::zero());
    }
    if rest.deg() >= 3 {
        let integral = rest.clear_denominators();
        for c in S::root_candidates(&integral.lead(), &integral.coeff(0))? {
            if rest.deg() <= 2 {
                break;
            }
            if rest.eval(&c).is_zero() {
                divide(&mut rest, &c);
                roots.push(c);
            }
        }
    }
    match rest.deg() {
        1 => {
            roots.push(linear_root(&rest));
            rest = Polynomial::one();
        }
        2 => {
            let qs = quadratic_roots(&rest)?;
            if !qs.is_empty() {
                roots.extend(qs);
                rest = Polynomial::one();
            }
        }
        _ => {}
    }
    Ok((roots, rest.monic()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{GaussianRational, Rational, Ring};
    use num_traits::Zero;

    fn p(cs: &[i64]) -> Polynomial<Rational> {
        Polynomial::new(cs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn quadratic_factorizations() {
        let s = roots_in_field(&p(&[-6, -1, 1])).unwrap();
        assert_eq!(s.roots, vec![(q(-2, 1), 1), (q(3, 1), 1)]);
        let s = roots_in_field(&p(&[-1, -1, 2])).unwrap();
        assert_eq!(s.roots, vec![(q(-1, 2), 1), (q(1, 1), 1)]);
    }

    #[test]
    fn residual_factor_is_kept() {
        // (z^2 - 2)(z - 5)^2
        let f = p(&[-2, 0, 1]) * p(&[-5, 1]) * p(&[-5, 1]);
        let s = roots_in_field(&f).unwrap();
        assert_eq!(s.roots, vec![(q(5, 1), 2)]);
        assert_eq!(s.residual, vec![(p(&[-2, 0, 1]), 1)]);
    }

    #[test]
    fn cubic_rational_roots() {
        // 6z^3 - 5z^2 - 2z + 1 = (z - 1)(2z + 1)(3z - 1)
        let s = roots_in_field(&p(&[1, -2, -5, 6])).unwrap();
        let rs: Vec<_> = s.roots.iter().map(|r| r.0.clone()).collect();
        assert_eq!(rs, vec![q(-1, 2), q(1, 3), q(1, 1)]);
        assert!(s.is_complete());
    }

    #[test]
    fn gaussian_roots_of_z2_plus_1() {
        let f: Polynomial<GaussianRational> = Polynomial::new(vec![
            GaussianRational::one(),
            GaussianRational::zero(),
            GaussianRational::one(),
        ]);
        let s = roots_in_field(&f).unwrap();
        assert_eq!(s.roots.len(), 2);
        assert!(s.is_complete());
        // z^3 + z over Q(i): roots 0, ±i via the candidate path.
        let g = f * Polynomial::var();
        assert_eq!(roots_in_field(&g).unwrap().roots.len(), 3);
    }
}
