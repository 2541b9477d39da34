use std::fmt;

use num_bigint::BigUint;

use super::{Domain, DomainError, DomainKind, Measurable};

/// Element of the fraction field of a domain, kept in lowest terms with a
/// normalized (positive or monic) denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Frac<T> {
    num: T,
    den: T,
}

impl<T: Domain> Frac<T> {
    pub fn new(num: T, den: T) -> Result<Self, DomainError> {
        if den.is_zero() {
            return Err(DomainError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: T, den: T) -> Self {
        if num.is_zero() {
            return Frac::zero();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
        };
        let u = den.unit_part();
        if !u.is_one() {
            num = num.exact_div(&u).expect("unit divides");
            den = den.exact_div(&u).expect("unit divides");
        }
        Frac { num, den }
    }

    pub fn from_elem(v: T) -> Self {
        Frac { num: v, den: T::one() }
    }

    pub fn zero() -> Self {
        Frac::from_elem(T::zero())
    }

    pub fn one() -> Self {
        Frac::from_elem(T::one())
    }

    pub fn numer(&self) -> &T {
        &self.num
    }

    pub fn denom(&self) -> &T {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The element itself when the denominator is one.
    pub fn to_elem(&self) -> Option<T> {
        self.den.is_one().then(|| self.num.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::reduce(self.num.add(&other.num), self.den.clone());
        }
        Self::reduce(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Frac {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::reduce(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &Self) -> Result<Self, DomainError> {
        if other.is_zero() {
            return Err(DomainError::DivisionByZero);
        }
        Ok(Self::reduce(self.num.mul(&other.den), self.den.mul(&other.num)))
    }

    pub fn mul_elem(&self, v: &T) -> Self {
        Self::reduce(self.num.mul(v), self.den.clone())
    }

    pub fn div_elem(&self, v: &T) -> Result<Self, DomainError> {
        if v.is_zero() {
            return Err(DomainError::DivisionByZero);
        }
        Ok(Self::reduce(self.num.clone(), self.den.mul(v)))
    }
}

impl<T: Domain> From<T> for Frac<T> {
    fn from(v: T) -> Self {
        Frac::from_elem(v)
    }
}

impl<T: Domain> Measurable for Frac<T> {
    /// Numerator digits plus denominator digits; integral values count the
    /// numerator only.
    fn digits(&self) -> u64 {
        if self.den.is_one() {
            self.num.digits()
        } else {
            self.num.digits() + self.den.digits()
        }
    }

    fn terms(&self) -> u64 {
        if self.den.is_one() {
            self.num.terms()
        } else {
            self.num.terms() + self.den.terms()
        }
    }

    fn height(&self) -> BigUint {
        self.num.height().max(self.den.height())
    }
}

impl<T: Domain> fmt::Display for Frac<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        match T::KIND {
            DomainKind::Int => write!(f, "{}/{}", self.num, self.den),
            DomainKind::Poly => write!(f, "({})/({})", self.num, self.den),
        }
    }
}

impl<T: Domain> fmt::Debug for Frac<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
