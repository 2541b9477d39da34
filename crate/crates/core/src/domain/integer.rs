use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::{decimal_digits, omega, omega_estimate, Domain, DomainError, DomainKind, Measurable, Measure, OmegaEstimate, SizeMetrics};

/// Arbitrary-precision integer.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Integer(BigInt);

impl Integer {
    pub fn new(v: BigInt) -> Self {
        Integer(v)
    }

    pub fn as_bigint(&self) -> &BigInt {
        &self.0
    }

    pub fn into_bigint(self) -> BigInt {
        self.0
    }

    pub fn magnitude(&self) -> &BigUint {
        self.0.magnitude()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Integer {
        Integer(self.0.abs())
    }
}

impl From<i64> for Integer {
    fn from(v: i64) -> Self {
        Integer(BigInt::from(v))
    }
}

impl From<BigInt> for Integer {
    fn from(v: BigInt) -> Self {
        Integer(v)
    }
}

impl From<BigUint> for Integer {
    fn from(v: BigUint) -> Self {
        Integer(BigInt::from(v))
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for Integer {
    type Err = DomainError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits = s.strip_prefix('-').unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(DomainError::parse(s, "expected a base-10 integer"));
        }
        if digits.len() > 1 && digits.starts_with('0') {
            return Err(DomainError::parse(s, "leading zeros are not canonical"));
        }
        if s.starts_with('-') && digits == "0" {
            return Err(DomainError::parse(s, "negative zero is not canonical"));
        }
        BigInt::from_str(s)
            .map(Integer)
            .map_err(|e| DomainError::parse(s, e.to_string()))
    }
}

impl Measurable for Integer {
    fn digits(&self) -> u64 {
        decimal_digits(self.0.magnitude())
    }

    fn terms(&self) -> u64 {
        u64::from(!self.0.is_zero())
    }

    fn height(&self) -> BigUint {
        self.0.magnitude().clone()
    }
}

impl Domain for Integer {
    const KIND: DomainKind = DomainKind::Int;

    fn zero() -> Self {
        Integer(BigInt::zero())
    }

    fn one() -> Self {
        Integer(BigInt::one())
    }

    fn from_i64(v: i64) -> Self {
        Integer(BigInt::from(v))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_one(&self) -> bool {
        self.0.is_one()
    }

    fn add(&self, other: &Self) -> Self {
        Integer(&self.0 + &other.0)
    }

    fn sub(&self, other: &Self) -> Self {
        Integer(&self.0 - &other.0)
    }

    fn mul(&self, other: &Self) -> Self {
        Integer(&self.0 * &other.0)
    }

    fn neg(&self) -> Self {
        Integer(-&self.0)
    }

    fn exact_div(&self, divisor: &Self) -> Result<Self, DomainError> {
        if divisor.0.is_zero() {
            return Err(DomainError::DivisionByZero);
        }
        if divisor.0.is_one() {
            return Ok(self.clone());
        }
        let (q, r) = self.0.div_rem(&divisor.0);
        if r.is_zero() {
            Ok(Integer(q))
        } else {
            Err(DomainError::inexact(self, divisor))
        }
    }

    fn gcd(&self, other: &Self) -> Self {
        Integer(self.0.gcd(&other.0))
    }

    fn unit_part(&self) -> Self {
        if self.0.sign() == Sign::Minus {
            Integer::from(-1)
        } else {
            Integer::one()
        }
    }

    fn normalize(&self) -> Self {
        self.abs()
    }

    fn cmp_size(&self, other: &Self, _measure: Measure) -> Ordering {
        self.0.magnitude().cmp(other.0.magnitude())
    }

    fn omega_estimate(&self) -> Option<OmegaEstimate> {
        Some(omega_estimate(self.0.magnitude()))
    }

    fn cross_div(a: &Self, w: &Self, b: &Self, v: &Self, p: &Self) -> Result<Self, DomainError> {
        let t = &a.0 * &w.0 - &b.0 * &v.0;
        if p.0.is_one() {
            return Ok(Integer(t));
        }
        if p.0.is_zero() {
            return Err(DomainError::DivisionByZero);
        }
        let (q, r) = t.div_rem(&p.0);
        if r.is_zero() {
            Ok(Integer(q))
        } else {
            Err(DomainError::inexact(&Integer(t), p))
        }
    }

    fn size_metrics(&self, want_factors: bool) -> Result<SizeMetrics, DomainError> {
        let prime_factor_count = if want_factors {
            Some(omega(self.0.magnitude())?)
        } else {
            None
        };
        Ok(SizeMetrics {
            digits: self.digits(),
            terms: self.terms(),
            height: self.height(),
            prime_factor_count,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> Integer {
        Integer::from(v)
    }

    #[test]
    fn gcd_is_positive() {
        assert_eq!(int(-126).gcd(&int(134076)), int(6));
        assert_eq!(int(0).gcd(&int(-7)), int(7));
        assert_eq!(int(0).gcd(&int(0)), int(0));
    }

    #[test]
    fn exact_division_errors() {
        assert_eq!(int(12).exact_div(&int(-4)).unwrap(), int(-3));
        assert_eq!(int(5).exact_div(&int(1)).unwrap(), int(5));
        assert_eq!(int(5).exact_div(&int(0)), Err(DomainError::DivisionByZero));
        assert!(matches!(int(5).exact_div(&int(2)), Err(DomainError::InexactDivision { .. })));
    }

    #[test]
    fn metrics() {
        let m = int(47777897).size_metrics(false).unwrap();
        assert_eq!(m.digits, 8);
        let z = int(0).size_metrics(false).unwrap();
        assert_eq!((z.digits, z.terms), (1, 0));
        assert_eq!(int(12).size_metrics(true).unwrap().prime_factor_count, Some(3));
        assert_eq!(int(-1).size_metrics(true).unwrap().prime_factor_count, Some(0));
        assert_eq!(int(-1000).digits(), 4);
    }

    #[test]
    fn parse_rejects_noncanonical() {
        assert!("007".parse::<Integer>().is_err());
        assert!("-0".parse::<Integer>().is_err());
        assert!("".parse::<Integer>().is_err());
        assert_eq!("-42".parse::<Integer>().unwrap(), int(-42));
    }
}
