use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::netmodel::GameParams;
use crate::rational::Rational;

/// Parameter regime. `IIIa`/`IIIb` refine `III` for a partition of size `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag")]
pub enum Region {
    /// `p1 < alpha`: flow is never worth sending.
    I,
    /// `p1 > alpha`, `p2 < 1`: attacking is never worth its cost.
    II,
    /// `p1 > alpha`, `p2 > 1`.
    III,
    /// Region III with `p1 < n alpha / (n - 1)` (always, for `n = 1`).
    IIIa { n: usize },
    /// Region III with `p1 > n alpha / (n - 1)`.
    IIIb { n: usize },
    /// Some defining inequality is tight.
    #[serde(rename = "boundary")]
    Boundary { reason: String },
}

impl Region {
    pub fn is_boundary(&self) -> bool {
        matches!(self, Region::Boundary { .. })
    }

    /// True for `III`, `IIIa` and `IIIb`.
    pub fn is_three(&self) -> bool {
        matches!(self, Region::III | Region::IIIa { .. } | Region::IIIb { .. })
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::I => write!(f, "I"),
            Region::II => write!(f, "II"),
            Region::III => write!(f, "III"),
            Region::IIIa { n } => write!(f, "IIIa (n = {n})"),
            Region::IIIb { n } => write!(f, "IIIb (n = {n})"),
            Region::Boundary { reason } => write!(f, "boundary ({reason})"),
        }
    }
}

/// Exact classification; every tight inequality yields `Boundary`.
pub fn classify_region(params: &GameParams, alpha: &Rational, n: Option<usize>) -> Region {
    let GameParams { p1, p2 } = params;
    if p1 == alpha {
        return Region::Boundary { reason: format!("p1 = alpha = {alpha}") };
    }
    if p1 < alpha {
        return Region::I;
    }
    if *p2 == Rational::one() {
        return Region::Boundary { reason: "p2 = 1".into() };
    }
    if *p2 < Rational::one() {
        return Region::II;
    }
    match n {
        None => Region::III,
        Some(n) if n <= 1 => Region::IIIa { n: 1 },
        Some(n) => {
            let threshold = partition_threshold(alpha, n);
            if *p1 == threshold {
                Region::Boundary { reason: format!("p1 = n alpha / (n - 1) = {threshold} for n = {n}") }
            } else if *p1 < threshold {
                Region::IIIa { n }
            } else {
                Region::IIIb { n }
            }
        }
    }
}

/// `n alpha / (n - 1)`, for `n >= 2`.
pub fn partition_threshold(alpha: &Rational, n: usize) -> Rational {
    let n = n as i64;
    alpha * Rational::new(n, n - 1)
}

/// Errors unless `params` lie strictly inside region III.
pub(crate) fn require_region_three(params: &GameParams, alpha: &Rational) -> Result<()> {
    match classify_region(params, alpha, None) {
        Region::III => Ok(()),
        Region::Boundary { reason } => Err(Error::BoundaryParameters(reason)),
        other => Err(Error::WrongRegion(format!("expected region III, got {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn params(p1: &str, p2: &str) -> GameParams {
        GameParams::new(q(p1), q(p2)).unwrap()
    }

    #[test]
    fn basic_regions() {
        assert_eq!(classify_region(&params("2", "5"), &q("3"), None), Region::I);
        assert_eq!(classify_region(&params("6", "1/2"), &q("3"), None), Region::II);
        assert_eq!(classify_region(&params("6", "2"), &q("3"), None), Region::III);
    }

    #[test]
    fn partition_subregions() {
        assert_eq!(classify_region(&params("5", "2"), &q("3"), Some(2)), Region::IIIa { n: 2 });
        assert_eq!(classify_region(&params("12", "2"), &q("3"), Some(2)), Region::IIIb { n: 2 });
        assert_eq!(classify_region(&params("100", "2"), &q("3"), Some(1)), Region::IIIa { n: 1 });
        assert!(classify_region(&params("6", "2"), &q("3"), Some(2)).is_boundary());
        assert!(classify_region(&params("9/2", "2"), &q("3"), Some(3)).is_boundary());
    }

    #[test]
    fn boundaries() {
        assert!(classify_region(&params("3", "2"), &q("3"), None).is_boundary());
        assert!(classify_region(&params("6", "1"), &q("3"), None).is_boundary());
        // p1 = alpha dominates regardless of p2
        assert!(classify_region(&params("3", "1/2"), &q("3"), None).is_boundary());
    }

    #[test]
    fn region_three_guard() {
        assert!(require_region_three(&params("6", "2"), &q("3")).is_ok());
        assert!(matches!(require_region_three(&params("2", "2"), &q("3")), Err(Error::WrongRegion(_))));
        assert!(matches!(require_region_three(&params("6", "1"), &q("3")), Err(Error::BoundaryParameters(_))));
    }
}
