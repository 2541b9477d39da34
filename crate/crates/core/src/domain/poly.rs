use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{decimal_digits_signed, Domain, DomainError, DomainKind, Measurable, Measure, SizeMetrics};

/// Univariate polynomial over the rationals.
///
/// Stored as an integer coefficient vector (lowest degree first) over one
/// positive common denominator. The representation is canonical: no
/// trailing zero coefficients, the zero polynomial has no coefficients and
/// denominator 1, and the denominator is coprime to the content of the
/// numerator coefficients. Equivalently, the denominator is the lcm of the
/// reduced coefficient denominators.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QPoly {
    num: Vec<BigInt>,
    den: BigInt,
}

fn content(coeffs: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in coeffs {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

impl QPoly {
    fn from_parts(mut num: Vec<BigInt>, mut den: BigInt) -> QPoly {
        assert!(!den.is_zero(), "zero denominator");
        trim(&mut num);
        if num.is_empty() {
            return QPoly::zero();
        }
        if den.is_negative() {
            den = -den;
            for c in &mut num {
                *c = -&*c;
            }
        }
        if !den.is_one() {
            let g = content(&num).gcd(&den);
            if !g.is_one() {
                for c in &mut num {
                    *c /= &g;
                }
                den /= &g;
            }
        }
        QPoly { num, den }
    }

    /// Builds a polynomial from integer coefficients, lowest degree first.
    pub fn from_int_coeffs<I: Into<BigInt>>(coeffs: impl IntoIterator<Item = I>) -> QPoly {
        QPoly::from_parts(coeffs.into_iter().map(Into::into).collect(), BigInt::one())
    }

    /// Builds a polynomial from rational coefficients, lowest degree first.
    pub fn from_rational_coeffs(coeffs: &[BigRational]) -> QPoly {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        QPoly::from_parts(num, den)
    }

    pub fn constant(c: BigRational) -> QPoly {
        QPoly::from_rational_coeffs(&[c])
    }

    /// The polynomial `x`.
    pub fn x() -> QPoly {
        QPoly::from_int_coeffs([0, 1])
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.num.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        match self.num.get(k) {
            Some(c) => BigRational::new(c.clone(), self.den.clone()),
            None => BigRational::zero(),
        }
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        (0..self.num.len()).map(|k| self.coeff(k)).collect()
    }

    pub fn leading_coeff(&self) -> BigRational {
        match self.degree() {
            Some(d) => self.coeff(d),
            None => BigRational::zero(),
        }
    }

    fn scale(&self, c: &BigRational) -> QPoly {
        let num = self.num.iter().map(|a| a * c.numer()).collect();
        QPoly::from_parts(num, &self.den * c.denom())
    }

    /// Splits `self` into a rational content and a primitive integer
    /// polynomial with positive leading coefficient.
    fn content_and_primitive(&self) -> (BigRational, Vec<BigInt>) {
        let mut g = content(&self.num);
        if self.num.last().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        let prim = self.num.iter().map(|c| c / &g).collect();
        (BigRational::new(g, self.den.clone()), prim)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.num.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc / BigRational::from_integer(self.den.clone())
    }
}

/// Exact division of integer polynomials, `None` if the quotient is not an
/// integer polynomial.
fn divide_int_poly(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let lead = b.last().expect("nonzero divisor");
    let mut rem = a.to_vec();
    let qlen = a.len() - b.len() + 1;
    let mut q = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let top = &rem[i + b.len() - 1];
        if top.is_zero() {
            continue;
        }
        let (c, r) = top.div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    if rem.iter().all(Zero::is_zero) {
        Some(q)
    } else {
        None
    }
}

/// Pseudo-remainder of integer polynomials, `deg b >= 1` or constant.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem = a.to_vec();
    let lead = b.last().expect("nonzero divisor");
    while rem.len() >= b.len() {
        let top = rem.last().unwrap().clone();
        let shift = rem.len() - b.len();
        for c in rem.iter_mut() {
            *c *= lead;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[shift + j] -= &top * bj;
        }
        trim(&mut rem);
    }
    rem
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = content(&v);
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|c| c / &g).collect()
}

fn mul_coeffs(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn add_scaled(a: &[BigInt], sa: &BigInt, b: &[BigInt], sb: &BigInt, negate_b: bool) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let x = a.get(k).map(|c| c * sa).unwrap_or_default();
        let y = b.get(k).map(|c| c * sb).unwrap_or_default();
        out.push(if negate_b { x - y } else { x + y });
    }
    out
}

impl Measurable for QPoly {
    /// Numerator plus denominator digits of every nonzero coefficient, with
    /// integral coefficients contributing numerator digits only.
    fn digits(&self) -> u64 {
        if self.num.is_empty() {
            return 1;
        }
        self.num
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| {
                let g = c.gcd(&self.den);
                let d = &self.den / &g;
                let n = decimal_digits_signed(&(c / &g));
                if d.is_one() {
                    n
                } else {
                    n + decimal_digits_signed(&d)
                }
            })
            .sum()
    }

    fn terms(&self) -> u64 {
        self.num.iter().filter(|c| !c.is_zero()).count() as u64
    }

    /// Maximum over coefficients of `max(|numerator|, denominator)`.
    fn height(&self) -> BigUint {
        let mut h = BigUint::zero();
        for c in self.num.iter().filter(|c| !c.is_zero()) {
            let g = c.gcd(&self.den);
            let n = (c / &g).magnitude().clone();
            let d = (&self.den / &g).magnitude().clone();
            h = h.max(n).max(d);
        }
        h
    }
}

impl Domain for QPoly {
    const KIND: DomainKind = DomainKind::Poly;

    fn zero() -> Self {
        QPoly {
            num: Vec::new(),
            den: BigInt::one(),
        }
    }

    fn one() -> Self {
        QPoly {
            num: vec![BigInt::one()],
            den: BigInt::one(),
        }
    }

    fn from_i64(v: i64) -> Self {
        QPoly::from_int_coeffs([v])
    }

    fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    fn is_one(&self) -> bool {
        self.num.len() == 1 && self.num[0].is_one() && self.den.is_one()
    }

    fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            let one = BigInt::one();
            return QPoly::from_parts(add_scaled(&self.num, &one, &other.num, &one, false), self.den.clone());
        }
        QPoly::from_parts(
            add_scaled(&self.num, &other.den, &other.num, &self.den, false),
            &self.den * &other.den,
        )
    }

    fn sub(&self, other: &Self) -> Self {
        if self.den == other.den {
            let one = BigInt::one();
            return QPoly::from_parts(add_scaled(&self.num, &one, &other.num, &one, true), self.den.clone());
        }
        QPoly::from_parts(
            add_scaled(&self.num, &other.den, &other.num, &self.den, true),
            &self.den * &other.den,
        )
    }

    fn mul(&self, other: &Self) -> Self {
        QPoly::from_parts(mul_coeffs(&self.num, &other.num), &self.den * &other.den)
    }

    fn neg(&self) -> Self {
        QPoly {
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    fn exact_div(&self, divisor: &Self) -> Result<Self, DomainError> {
        if divisor.is_zero() {
            return Err(DomainError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(QPoly::zero());
        }
        if divisor.num.len() == 1 {
            let c = divisor.coeff(0);
            return Ok(self.scale(&c.recip()));
        }
        let (ca, pa) = self.content_and_primitive();
        let (cb, pb) = divisor.content_and_primitive();
        // quotient of primitive integer polynomials is primitive by Gauss's lemma
        match divide_int_poly(&pa, &pb) {
            Some(q) => Ok(QPoly::from_parts(q, BigInt::one()).scale(&(ca / cb))),
            None => Err(DomainError::inexact(self, divisor)),
        }
    }

    fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalize();
        }
        if other.is_zero() {
            return self.normalize();
        }
        let (_, mut a) = self.content_and_primitive();
        let (_, mut b) = other.content_and_primitive();
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            if b.len() == 1 {
                return QPoly::one();
            }
            let r = primitive(pseudo_rem(&a, &b));
            a = b;
            b = r;
        }
        QPoly::from_parts(a, BigInt::one()).normalize()
    }

    fn unit_part(&self) -> Self {
        if self.is_zero() {
            return QPoly::one();
        }
        QPoly::constant(self.leading_coeff())
    }

    fn normalize(&self) -> Self {
        if self.is_zero() {
            return QPoly::zero();
        }
        self.scale(&self.leading_coeff().recip())
    }

    fn cmp_size(&self, other: &Self, measure: Measure) -> Ordering {
        match measure {
            Measure::Degree => self.degree().cmp(&other.degree()),
            Measure::Height => self.height().cmp(&other.height()),
        }
    }

    fn cross_div(a: &Self, w: &Self, b: &Self, v: &Self, p: &Self) -> Result<Self, DomainError> {
        // all-integer fast path: skips the rational normalizations
        if a.den.is_one() && w.den.is_one() && b.den.is_one() && v.den.is_one() && p.den.is_one() {
            let minus_one = -BigInt::one();
            let one = BigInt::one();
            let t = add_scaled(&mul_coeffs(&a.num, &w.num), &one, &mul_coeffs(&b.num, &v.num), &minus_one, false);
            let t = QPoly::from_parts(t, one);
            return if p.is_one() { Ok(t) } else { t.exact_div(p) };
        }
        let t = a.mul(w).sub(&b.mul(v));
        if p.is_one() {
            Ok(t)
        } else {
            t.exact_div(p)
        }
    }

    fn size_metrics(&self, want_factors: bool) -> Result<SizeMetrics, DomainError> {
        if want_factors {
            return Err(DomainError::FactorCountUnsupported);
        }
        Ok(SizeMetrics {
            digits: self.digits(),
            terms: self.terms(),
            height: self.height(),
            prime_factor_count: None,
        })
    }
}

fn fmt_rational(c: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if c.denom().is_one() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for k in (0..self.num.len()).rev() {
            if self.num[k].is_zero() {
                continue;
            }
            let c = self.coeff(k);
            let negative = c.is_negative();
            if negative {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            let mag = c.abs();
            if k == 0 {
                fmt_rational(&mag, f)?;
            } else {
                if !mag.is_one() {
                    fmt_rational(&mag, f)?;
                    f.write_str("*")?;
                }
                f.write_str("x")?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_unsigned_int(s: &str, whole: &str) -> Result<BigInt, DomainError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(DomainError::parse(whole, format!("bad number {s:?}")));
    }
    BigInt::from_str(s).map_err(|e| DomainError::parse(whole, e.to_string()))
}

fn parse_term(term: &str, whole: &str) -> Result<(BigRational, usize), DomainError> {
    let (coeff_part, power) = match term.find('x') {
        None => (term, None),
        Some(pos) => {
            let head = &term[..pos];
            let tail = &term[pos + 1..];
            let power = if tail.is_empty() {
                1
            } else if let Some(e) = tail.strip_prefix('^') {
                parse_unsigned_int(e, whole)?
                    .try_into()
                    .map_err(|_| DomainError::parse(whole, "exponent too large"))?
            } else {
                return Err(DomainError::parse(whole, format!("unexpected {tail:?} after x")));
            };
            let head = if head.is_empty() {
                None
            } else {
                Some(
                    head.strip_suffix('*')
                        .ok_or_else(|| DomainError::parse(whole, "expected `*` before x"))?,
                )
            };
            (head.unwrap_or(""), Some(power))
        }
    };
    let coeff = if coeff_part.is_empty() {
        if power.is_none() {
            return Err(DomainError::parse(whole, "empty term"));
        }
        BigRational::one()
    } else if let Some((n, d)) = coeff_part.split_once('/') {
        let d = parse_unsigned_int(d, whole)?;
        if d.is_zero() {
            return Err(DomainError::parse(whole, "zero denominator"));
        }
        BigRational::new(parse_unsigned_int(n, whole)?, d)
    } else {
        BigRational::from_integer(parse_unsigned_int(coeff_part, whole)?)
    };
    Ok((coeff, power.unwrap_or(0)))
}

impl FromStr for QPoly {
    type Err = DomainError;

    /// Accepts `c_k*x^k` terms joined by `+`/`-`, e.g. `-3/2*x^3+5*x^2-1/2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() || s.chars().any(char::is_whitespace) {
            return Err(DomainError::parse(s, "empty or contains whitespace"));
        }
        let mut coeffs: Vec<BigRational> = Vec::new();
        let bytes = s.as_bytes();
        let mut start = 0;
        while start < bytes.len() {
            let mut sign = Sign::Plus;
            let mut i = start;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                if bytes[i] == b'-' {
                    sign = Sign::Minus;
                } else if start == 0 {
                    return Err(DomainError::parse(s, "leading `+`"));
                }
                i += 1;
            } else if start != 0 {
                return Err(DomainError::parse(s, "missing operator"));
            }
            let mut end = i;
            while end < bytes.len() && bytes[end] != b'+' && bytes[end] != b'-' {
                end += 1;
            }
            let (mut c, k) = parse_term(&s[i..end], s)?;
            if sign == Sign::Minus {
                c = -c;
            }
            if coeffs.len() <= k {
                coeffs.resize(k + 1, BigRational::zero());
            }
            coeffs[k] += c;
            start = end;
        }
        Ok(QPoly::from_rational_coeffs(&coeffs))
    }
}
