//! Brill-Noether numerics in exact arithmetic.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BnParams {
    pub g: u64,
    pub d: u64,
    pub r: u64,
}

impl BnParams {
    pub fn new(g: u64, d: u64, r: u64) -> Self {
        BnParams { g, d, r }
    }

    pub fn rho(&self) -> i64 {
        rho(self.g, self.d, self.r)
    }

    fn negative_rho(&self) -> Error {
        Error::NegativeRho {
            g: self.g,
            d: self.d,
            r: self.r,
            rho: self.rho(),
        }
    }
}

impl fmt::Display for BnParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(g={}, d={}, r={})", self.g, self.d, self.r)
    }
}

/// `(r + 1)(d - r) - g r`.
pub fn rho(g: u64, d: u64, r: u64) -> i64 {
    let (g, d, r) = (g as i64, d as i64, r as i64);
    (r + 1) * (d - r) - g * r
}

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Upper end of the refinement search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TheoremBound {
    /// `d - g >= r`: every degree-d divisor already has rank at least
    /// `d - g >= r`, so `k = 0` suffices.
    RiemannRochShortcut,
    /// Some `k < B` works.
    Bound(BigUint),
}

impl TheoremBound {
    /// Exclusive upper limit of the refinement indices to search.
    pub fn k_limit(&self) -> BigUint {
        match self {
            TheoremBound::RiemannRochShortcut => BigUint::one(),
            TheoremBound::Bound(b) => b.clone(),
        }
    }

    pub fn is_shortcut(&self) -> bool {
        matches!(self, TheoremBound::RiemannRochShortcut)
    }
}

impl fmt::Display for TheoremBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoremBound::RiemannRochShortcut => write!(f, "shortcut"),
            TheoremBound::Bound(b) => write!(f, "{b}"),
        }
    }
}

/// `g! * prod_{i=0}^{r} i! / (g - d + r + i)!` as an exact rational.
/// Requires `g - d + r >= 0`.
pub fn theorem_formula(g: u64, d: u64, r: u64) -> Result<BigRational> {
    let shift = (g + r)
        .checked_sub(d)
        .ok_or_else(|| Error::PreconditionViolated(format!("g - d + r < 0 for ({g},{d},{r})")))?;
    let big = |n: BigUint| BigInt::from(n);
    let mut value = BigRational::from_integer(big(factorial(g)));
    for i in 0..=r {
        value *= BigRational::new(big(factorial(i)), big(factorial(shift + i)));
    }
    Ok(value)
}

/// The refinement bound: some `k < B` admits a degree-d divisor of rank
/// at least r on `G^(k)`.
pub fn bn_bound(g: u64, d: u64, r: u64) -> Result<TheoremBound> {
    let params = BnParams::new(g, d, r);
    if params.rho() < 0 {
        return Err(params.negative_rho());
    }
    if d >= g + r {
        return Ok(TheoremBound::RiemannRochShortcut);
    }
    let value = theorem_formula(g, d, r)?;
    if !value.is_integer() {
        return Err(Error::NonIntegralBound {
            g,
            d,
            r,
            value: value.to_string(),
        });
    }
    let b = value
        .to_integer()
        .to_biguint()
        .filter(|b| *b >= BigUint::one())
        .ok_or_else(|| Error::NonIntegralBound {
            g,
            d,
            r,
            value: value.to_string(),
        })?;
    Ok(TheoremBound::Bound(b))
}

/// `(m + n^r d)! * d^(m + n^r d)` for a graph with `n` vertices and `m` edges.
pub fn legacy_bound(n: u64, m: u64, d: u64, r: u64) -> Result<BigUint> {
    if n == 0 || d == 0 {
        return Err(Error::PreconditionViolated(format!(
            "legacy bound needs n >= 1 and d >= 1, got n={n}, d={d}"
        )));
    }
    let exponent = BigUint::from(n).pow(r as u32) * d + m;
    let e = exponent.to_u64().ok_or_else(|| {
        Error::PreconditionViolated(format!("legacy bound exponent {exponent} is too large"))
    })?;
    Ok(factorial(e) * BigUint::from(d).pow(e))
}

/// Values along the comparison chain
/// `B < g!(r!)^r < g!(d!)^r < g! d^(dr) < legacy(2, g+1, d, r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundChain {
    pub params: BnParams,
    pub theorem_bound: BigUint,
    pub r_factorial_term: BigUint,
    pub d_factorial_term: BigUint,
    pub d_power_term: BigUint,
    pub legacy_bound: BigUint,
}

impl BoundChain {
    pub fn links(&self) -> [bool; 4] {
        [
            self.theorem_bound < self.r_factorial_term,
            self.r_factorial_term < self.d_factorial_term,
            self.d_factorial_term < self.d_power_term,
            self.d_power_term < self.legacy_bound,
        ]
    }

    pub fn holds(&self) -> bool {
        self.links().iter().all(|&b| b)
    }
}

/// Evaluates the comparison chain against the minimal-for-genus legacy
/// bound (two vertices, `g + 1` edges). Requires `rho >= 0`, `r >= 1`,
/// `d > r` and `d - g < r`; at `d - g >= r` no refinement is needed and
/// the factorial formula is not the bound in use.
pub fn bound_chain_check(g: u64, d: u64, r: u64) -> Result<BoundChain> {
    let params = BnParams::new(g, d, r);
    if params.rho() < 0 || r < 1 || d <= r || d >= g + r {
        return Err(Error::PreconditionViolated(format!(
            "chain check needs rho >= 0, r >= 1, d > r, g - d + r >= 1; got {params}"
        )));
    }
    let theorem_bound = match bn_bound(g, d, r)? {
        TheoremBound::Bound(b) => b,
        TheoremBound::RiemannRochShortcut => unreachable!("excluded above"),
    };
    let gf = factorial(g);
    let r32 = r as u32;
    Ok(BoundChain {
        params,
        theorem_bound,
        r_factorial_term: &gf * factorial(r).pow(r32),
        d_factorial_term: &gf * factorial(d).pow(r32),
        d_power_term: &gf * BigUint::from(d).pow((d * r) as u32),
        legacy_bound: legacy_bound(2, g + 1, d, r)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub params: BnParams,
    pub rho: i64,
    pub theorem_bound: TheoremBound,
    /// Legacy bound for the given vertex and edge counts, when `d >= 1`.
    pub legacy_bound: Option<BigUint>,
    pub legacy_shape: (u64, u64),
}

impl BoundReport {
    /// Inclusive range `[0, B - 1]` of refinement indices to search.
    pub fn k_range(&self) -> (BigUint, BigUint) {
        (BigUint::ZERO, self.theorem_bound.k_limit() - 1u32)
    }
}

/// Bound report for a graph with `n` vertices and `m` edges. Without a
/// graph, use the minimal shape for genus `g`: `n = 2`, `m = g + 1`.
pub fn bound_report(params: BnParams, n: u64, m: u64) -> Result<BoundReport> {
    let theorem_bound = bn_bound(params.g, params.d, params.r)?;
    let legacy = if params.d >= 1 {
        Some(legacy_bound(n, m, params.d, params.r)?)
    } else {
        None
    };
    Ok(BoundReport {
        params,
        rho: params.rho(),
        theorem_bound,
        legacy_bound: legacy,
        legacy_shape: (n, m),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_values() {
        assert_eq!(rho(4, 3, 1), 0);
        assert_eq!(rho(9, 5, 1), -1);
        for g in 0..5 {
            for d in 0..5 {
                assert_eq!(rho(g, d, 0), d as i64);
            }
        }
    }

    #[test]
    fn bound_values() {
        assert_eq!(bn_bound(4, 3, 1).unwrap(), TheoremBound::Bound(2u32.into()));
        assert_eq!(bn_bound(2, 2, 1).unwrap(), TheoremBound::Bound(1u32.into()));
        for g in 1..10 {
            assert_eq!(bn_bound(g, 0, 0).unwrap(), TheoremBound::Bound(1u32.into()));
        }
        assert_eq!(
            bn_bound(0, 0, 0).unwrap(),
            TheoremBound::RiemannRochShortcut
        );
        assert_eq!(
            bn_bound(3, 5, 1).unwrap(),
            TheoremBound::RiemannRochShortcut
        );
        assert!(matches!(
            bn_bound(9, 5, 1),
            Err(Error::NegativeRho { rho: -1, .. })
        ));
    }

    #[test]
    fn formula_at_shortcut_boundary_is_g_factorial() {
        // g - d + r = 0 makes every ratio i!/i!
        assert_eq!(
            theorem_formula(5, 6, 1).unwrap(),
            BigRational::from_integer(120.into())
        );
        assert!(theorem_formula(5, 7, 1).is_err());
    }

    #[test]
    fn legacy_values() {
        let expected = factorial(11) * BigUint::from(3u32).pow(11u32);
        assert_eq!(legacy_bound(2, 5, 3, 1).unwrap(), expected);
        assert_eq!(legacy_bound(4, 6, 1, 2).unwrap(), factorial(6 + 16));
        assert!(legacy_bound(2, 5, 0, 1).is_err());
    }

    #[test]
    fn chain_examples() {
        let chain = bound_chain_check(4, 3, 1).unwrap();
        assert_eq!(chain.theorem_bound, BigUint::from(2u32));
        assert_eq!(chain.r_factorial_term, BigUint::from(24u32));
        assert!(chain.holds());
        assert!(bound_chain_check(6, 4, 1).unwrap().holds());
        assert!(bound_chain_check(4, 5, 1).is_err());
        assert!(bound_chain_check(4, 1, 1).is_err());
    }

    #[test]
    fn report_range() {
        let report = bound_report(BnParams::new(4, 3, 1), 2, 5).unwrap();
        assert_eq!(report.rho, 0);
        assert_eq!(report.k_range(), (BigUint::ZERO, BigUint::one()));
        let shortcut = bound_report(BnParams::new(1, 3, 1), 2, 2).unwrap();
        assert_eq!(shortcut.k_range(), (BigUint::ZERO, BigUint::ZERO));
    }
}
