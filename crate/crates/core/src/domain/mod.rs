//! Exact arithmetic for the supported integral domains.
//!
//! Two domains are provided: arbitrary-precision integers ([`Integer`]) and
//! univariate polynomials with rational coefficients ([`QPoly`]). Both sit
//! behind the [`Domain`] trait, which is all the elimination code needs:
//! ring operations, exact division, a normalized gcd and size measurements.
//! [`Frac`] is the fraction field over either domain and is only used for
//! final outputs and verification.

mod frac;
mod integer;
mod omega;
mod poly;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use thiserror::Error;

pub use frac::Frac;
pub use integer::Integer;
pub use omega::{omega, omega_estimate, OmegaEstimate};
pub use poly::QPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("inexact division: {dividend} is not divisible by {divisor}")]
    InexactDivision { dividend: String, divisor: String },
    #[error("prime factor counting is only supported for integers")]
    FactorCountUnsupported,
    #[error("could not factor cofactor {0} within the trial-division bound")]
    FactorizationTooHard(String),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

impl DomainError {
    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        DomainError::Parse {
            input: input.to_string(),
            reason: reason.into(),
        }
    }

    pub(crate) fn inexact<T: fmt::Display>(dividend: &T, divisor: &T) -> Self {
        DomainError::InexactDivision {
            dividend: dividend.to_string(),
            divisor: divisor.to_string(),
        }
    }
}

/// Tag for the two supported domains, as written in matrix files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DomainKind {
    Int,
    Poly,
}

impl DomainKind {
    pub fn tag(self) -> &'static str {
        match self {
            DomainKind::Int => "int",
            DomainKind::Poly => "poly",
        }
    }
}

impl fmt::Display for DomainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for DomainKind {
    type Err = DomainError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "int" => Ok(DomainKind::Int),
            "poly" => Ok(DomainKind::Poly),
            _ => Err(DomainError::parse(s, "domain must be `int` or `poly`")),
        }
    }
}

/// Size measure used to rank polynomial pivots. Integers always compare by
/// absolute value and ignore it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Measure {
    #[default]
    Degree,
    Height,
}

/// Size of a single element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeMetrics {
    pub digits: u64,
    pub terms: u64,
    pub height: BigUint,
    pub prime_factor_count: Option<u32>,
}

/// Printed-size measurements shared by domain elements and fractions.
pub trait Measurable {
    /// Base-10 digits of the printed form, signs excluded. Zero has one digit.
    fn digits(&self) -> u64;
    /// Number of nonzero terms; 1 for a nonzero integer, 0 for zero.
    fn terms(&self) -> u64;
    fn height(&self) -> BigUint;
}

/// An integral domain with exact division and a canonical gcd.
///
/// Values are immutable; all operations return fresh values.
pub trait Domain:
    Clone + PartialEq + Eq + fmt::Debug + fmt::Display + FromStr<Err = DomainError> + Measurable + Send + Sync + 'static
{
    const KIND: DomainKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;

    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    /// `self / divisor`, failing unless the division is exact.
    fn exact_div(&self, divisor: &Self) -> Result<Self, DomainError>;

    /// Normalized gcd: nonnegative for integers, monic for polynomials,
    /// `gcd(0, 0) = 0`.
    fn gcd(&self, other: &Self) -> Self;

    /// The unit `u` with `self = u * self.normalize()`. The unit of zero is one.
    fn unit_part(&self) -> Self;

    fn normalize(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.exact_div(&self.unit_part())
            .expect("units divide every element")
    }

    /// Orders two nonzero elements by size for pivot selection.
    fn cmp_size(&self, other: &Self, measure: Measure) -> Ordering;

    /// Prime factor count of the element's absolute value, where the domain
    /// supports it (integers only). `None` for polynomials.
    fn omega_estimate(&self) -> Option<OmegaEstimate> {
        None
    }

    /// `(self * a - b * c) / d` in one step; the workhorse of Bareiss updates.
    fn cross_div(a: &Self, w: &Self, b: &Self, v: &Self, p: &Self) -> Result<Self, DomainError> {
        let t = a.mul(w).sub(&b.mul(v));
        if p.is_one() {
            Ok(t)
        } else {
            t.exact_div(p)
        }
    }

    fn size_metrics(&self, want_factors: bool) -> Result<SizeMetrics, DomainError>;
}

/// Gcd of a sequence of elements, normalized. Empty input gives zero.
pub fn gcd_all<'a, T: Domain>(items: impl IntoIterator<Item = &'a T>) -> T {
    let mut g = T::zero();
    for x in items {
        if g.is_one() {
            break;
        }
        g = g.gcd(x);
    }
    g
}

/// Number of base-10 digits of `|n|`, at least 1.
pub(crate) fn decimal_digits(n: &BigUint) -> u64 {
    if n.bits() < 64 {
        let mut v = u64::try_from(n).unwrap_or(0);
        let mut d = 1;
        while v >= 10 {
            v /= 10;
            d += 1;
        }
        d
    } else {
        n.to_str_radix(10).len() as u64
    }
}

pub(crate) fn decimal_digits_signed(n: &BigInt) -> u64 {
    decimal_digits(n.magnitude())
}
