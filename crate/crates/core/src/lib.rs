//! Exact computer algebra for holomorphic dynamics.
//!
//! Poincaré and Böttcher series of rational maps over ℚ and ℚ(i), detection
//! of algebraic relations between them, verifiers for semiconjugacy diagrams,
//! and orbifold checks for generalized Lattès maps.

pub mod algdep;
pub mod bivariate;
pub mod boettcher;
pub mod dynsys;
pub mod error;
pub mod factor;
pub mod matrix;
pub mod modp;
pub mod orbifold;
pub mod parse;
pub mod point;
pub mod poly;
pub mod ratfunc;
pub mod roots;
pub mod scalar;
pub mod series;

pub use algdep::{
    find_relation, find_relation_scaled, implicitize, DependencyCertificate, Verdict,
};
pub use bivariate::BivariatePolynomial;
pub use boettcher::{boettcher_series, BoettcherSeries, LaurentSeries};
pub use dynsys::{
    check_poincare_transport, common_iterate_search, degree_compatibility, independence_check,
    multiplier_dependence, transport_boettcher_check, verify_commute, verify_semiconjugacy,
    verify_theorem_conditions, CompatibilityReport, MultiplierDependence, SemiconjugacyTriple,
    TheoremInput, TheoremReport,
};
pub use error::{Error, Result};
pub use matrix::ExactMatrix;
pub use orbifold::{
    check_generalized_lattes, detect_generalized_lattes, recognize_special, Orbifold, SpecialKind,
};
pub use parse::{parse_expr, parse_point, parse_ratfunc, parse_scalar};
pub use point::PointP1;
pub use poly::Polynomial;
pub use ratfunc::{FixedPointRecord, FixedPointReport, RationalFunction};
pub use scalar::{scalar_arith, ArithKind, Field, GaussianRational, Rational, Ring, Scalar};
pub use series::{poincare_series, transport_poincare, TruncatedPowerSeries};

pub type QPolynomial = Polynomial<Rational>;
pub type QiPolynomial = Polynomial<GaussianRational>;
pub type QRationalFunction = RationalFunction<Rational>;
pub type QiRationalFunction = RationalFunction<GaussianRational>;
pub type QPoint = PointP1<Rational>;
pub type QiPoint = PointP1<GaussianRational>;
pub type QSeries = TruncatedPowerSeries<Rational>;
pub type QiSeries = TruncatedPowerSeries<GaussianRational>;
pub type QBoettcherSeries = BoettcherSeries<Rational>;
pub type QiBoettcherSeries = BoettcherSeries<GaussianRational>;
pub type QBivariate = BivariatePolynomial<Rational>;
pub type QiBivariate = BivariatePolynomial<GaussianRational>;
pub type QOrbifold = Orbifold<Rational>;
pub type QiOrbifold = Orbifold<GaussianRational>;
