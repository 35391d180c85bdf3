use crate::scalar::Scalar;
use std::cmp::Ordering;
use std::fmt;

/// Point of the Riemann sphere with a field-rational finite coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PointP1<S> {
    Finite(S),
    Infinity,
}

impl<S: Scalar> PointP1<S> {
    pub fn finite(&self) -> Option<&S> {
        match self {
            PointP1::Finite(s) => Some(s),
            PointP1::Infinity => None,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, PointP1::Infinity)
    }

    /// Finite points in canonical scalar order, infinity last.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (PointP1::Finite(a), PointP1::Finite(b)) => a.canonical_cmp(b),
            (PointP1::Finite(_), PointP1::Infinity) => Ordering::Less,
            (PointP1::Infinity, PointP1::Finite(_)) => Ordering::Greater,
            (PointP1::Infinity, PointP1::Infinity) => Ordering::Equal,
        }
    }
}

impl<S: Scalar> From<S> for PointP1<S> {
    fn from(s: S) -> Self {
        PointP1::Finite(s)
    }
}

impl<S: Scalar> fmt::Display for PointP1<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointP1::Finite(s) => write!(f, "{s}"),
            PointP1::Infinity => f.write_str("inf"),
        }
    }
}
