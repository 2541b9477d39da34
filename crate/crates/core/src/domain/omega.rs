//! Prime factor counting with multiplicity (Ω).
//!
//! Trial division by small primes, then deterministic Miller-Rabin and
//! Pollard-Brent on anything that fits in 64 bits. Larger cofactors are
//! tested for primality and split with a bounded Pollard-Brent search;
//! a composite that survives the search cannot be counted exactly.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};

use super::DomainError;

const TRIAL_BOUND: u32 = 1000;
const EXACT_TRIAL_BOUND: u32 = 1 << 16;
const BIG_RHO_ITERATIONS: u64 = 1 << 15;
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn primes_below(bound: u32) -> Vec<u32> {
    let n = bound as usize;
    let mut sieve = vec![true; n];
    sieve[0] = false;
    if n > 1 {
        sieve[1] = false;
    }
    let mut i = 2;
    while i * i < n {
        if sieve[i] {
            let mut j = i * i;
            while j < n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (0..n).filter(|&i| sieve[i]).map(|i| i as u32).collect()
}

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_below(EXACT_TRIAL_BOUND))
}

/// Result of a bounded-effort factor count.
///
/// `count` is exact when `exact` is set; otherwise it is a proven lower
/// bound (each unsplit composite cofactor contributes 2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaEstimate {
    pub count: u32,
    pub exact: bool,
    pending: Vec<BigUint>,
    refined: bool,
}

impl OmegaEstimate {
    fn exact(count: u32) -> Self {
        OmegaEstimate {
            count,
            exact: true,
            pending: Vec::new(),
            refined: true,
        }
    }

    /// Whether more work could still change the count.
    pub fn is_settled(&self) -> bool {
        self.exact || self.refined
    }

    /// Spend a bounded Pollard-Brent search on the unresolved cofactors.
    pub fn refine(self) -> OmegaEstimate {
        if self.is_settled() {
            return self;
        }
        let base = self.count - 2 * self.pending.len() as u32;
        let mut count = base;
        let mut exact = true;
        for c in &self.pending {
            match omega_big(c, BIG_RHO_ITERATIONS) {
                Ok(k) => count += k,
                Err(lower) => {
                    count += lower;
                    exact = false;
                }
            }
        }
        OmegaEstimate {
            count,
            exact,
            pending: Vec::new(),
            refined: true,
        }
    }
}

/// Exact Ω(n) with Ω(0) = Ω(1) = 0. Fails when a cofactor above 2^64
/// cannot be split within the search budget.
pub fn omega(n: &BigUint) -> Result<u32, DomainError> {
    if n.is_zero() {
        return Ok(0);
    }
    let (found, cofactor) = trial_divide(n, EXACT_TRIAL_BOUND);
    if cofactor.is_one() {
        return Ok(found);
    }
    if let Some(small) = cofactor.to_u64() {
        return Ok(found + omega_u64(small));
    }
    omega_big(&cofactor, BIG_RHO_ITERATIONS)
        .map(|k| found + k)
        .map_err(|_| DomainError::FactorizationTooHard(cofactor.to_string()))
}

/// Cheap Ω estimate used where exactness can be traded for speed; see
/// [`OmegaEstimate::refine`]. Zero is reported as exact 0.
pub fn omega_estimate(n: &BigUint) -> OmegaEstimate {
    if n.is_zero() {
        return OmegaEstimate::exact(0);
    }
    let (found, cofactor) = trial_divide(n, TRIAL_BOUND);
    if cofactor.is_one() {
        return OmegaEstimate::exact(found);
    }
    if let Some(small) = cofactor.to_u64() {
        if small < u64::from(TRIAL_BOUND) * u64::from(TRIAL_BOUND) {
            return OmegaEstimate::exact(found + 1);
        }
        return OmegaEstimate::exact(found + omega_u64(small));
    }
    if is_probable_prime_big(&cofactor) {
        return OmegaEstimate::exact(found + 1);
    }
    OmegaEstimate {
        count: found + 2,
        exact: false,
        pending: vec![cofactor],
        refined: false,
    }
}

fn trial_divide(n: &BigUint, bound: u32) -> (u32, BigUint) {
    if let Some(mut v) = n.to_u64() {
        let mut count = 0;
        for &p in small_primes().iter().take_while(|&&p| p < bound) {
            let p = u64::from(p);
            if p * p > v {
                break;
            }
            while v % p == 0 {
                v /= p;
                count += 1;
            }
        }
        return (count, BigUint::from(v));
    }
    let mut v = n.clone();
    let mut count = 0;
    for &p in small_primes().iter().take_while(|&&p| p < bound) {
        while (&v % p).is_zero() {
            v /= p;
            count += 1;
        }
        if let Some(small) = v.to_u64() {
            // hand the rest to the fast path
            let (k, rest) = trial_divide(&BigUint::from(small), bound);
            return (count + k, rest);
        }
    }
    (count, v)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic for all 64-bit inputs.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn rho_u64(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q, m) = (2u64, 1u64, 1u64, 128u64);
        let mut g = 1;
        let mut x = y;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn omega_u64(n: u64) -> u32 {
    if n < 2 {
        return 0;
    }
    if is_prime_u64(n) {
        return 1;
    }
    let d = rho_u64(n);
    omega_u64(d) + omega_u64(n / d)
}

fn is_probable_prime_big(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'bases: for &a in &MR_BASES {
        let a = BigUint::from(a);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn rho_big(n: &BigUint, budget: u64) -> Option<BigUint> {
    let one = BigUint::one();
    for c in 1u32..4 {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut q = one.clone();
        let mut g = one.clone();
        let mut r = 1u64;
        let m = 64u64;
        let mut spent = 0u64;
        while g == one && spent < budget {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            spent += r;
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            spent += r;
            r *= 2;
        }
        if g == *n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if g != one && g != *n {
            return Some(g);
        }
        if spent >= budget {
            return None;
        }
    }
    None
}

/// Ω of a cofactor with no small prime factors. `Err` carries the proven
/// lower bound when some composite part could not be split.
fn omega_big(n: &BigUint, budget: u64) -> Result<u32, u32> {
    if n.is_one() {
        return Ok(0);
    }
    if let Some(small) = n.to_u64() {
        return Ok(omega_u64(small));
    }
    if is_probable_prime_big(n) {
        return Ok(1);
    }
    match rho_big(n, budget) {
        Some(d) => {
            let other = n / &d;
            match (omega_big(&d, budget), omega_big(&other, budget)) {
                (Ok(a), Ok(b)) => Ok(a + b),
                (Ok(a), Err(b)) | (Err(a), Ok(b)) | (Err(a), Err(b)) => Err(a + b),
            }
        }
        None => Err(2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_omega(mut n: u64) -> u32 {
        let mut count = 0;
        let mut p = 2;
        while p * p <= n {
            while n % p == 0 {
                n /= p;
                count += 1;
            }
            p += 1;
        }
        if n > 1 {
            count += 1;
        }
        count
    }

    #[test]
    fn small_values_match_brute_force() {
        for n in 0u64..5000 {
            let expected = if n < 2 { 0 } else { brute_omega(n) };
            assert_eq!(omega(&BigUint::from(n)).unwrap(), expected, "n = {n}");
            let est = omega_estimate(&BigUint::from(n));
            assert!(est.exact);
            assert_eq!(est.count, expected);
        }
    }

    #[test]
    fn u64_semiprimes() {
        let p = 4_294_967_291u64;
        let q = 4_294_967_279u64;
        assert_eq!(omega(&BigUint::from(p * q)).unwrap(), 2);
        assert_eq!(omega(&BigUint::from(p)).unwrap(), 1);
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(!is_prime_u64(3_215_031_751));
    }

    #[test]
    fn big_cofactors() {
        // (2^61 - 1) * (2^31 - 1) * 12
        let m61 = (BigUint::one() << 61u32) - 1u32;
        let m31 = BigUint::from(2_147_483_647u32);
        let n = &m61 * &m31 * 12u32;
        assert_eq!(omega(&n).unwrap(), 5);
        let est = omega_estimate(&n).refine();
        assert!(est.exact);
        assert_eq!(est.count, 5);
        // prime above 2^64
        let m89 = (BigUint::one() << 89u32) - 1u32;
        assert_eq!(omega(&m89).unwrap(), 1);
        assert!(omega_estimate(&m89).exact);
    }

    #[test]
    fn unsplit_composite_gives_lower_bound() {
        // product of two ~2^89 primes is out of reach for the bounded search
        let m89 = (BigUint::one() << 89u32) - 1u32;
        let m107 = (BigUint::one() << 107u32) - 1u32;
        let n = &m89 * &m107;
        let est = omega_estimate(&n);
        assert!(!est.exact);
        assert_eq!(est.count, 2);
        let refined = est.refine();
        assert!(refined.is_settled());
        assert_eq!(refined.count, 2);
        assert!(matches!(omega(&n), Err(DomainError::FactorizationTooHard(_))));
    }
}
