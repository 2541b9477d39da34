//! Common row and column factors of LD⁻¹U output.
//!
//! Three tools: a cheap predictor for the factor that cross-multiplication
//! leaves in each new row of `U`, the determinantal divisors (gcds of all
//! `k×k` minors) which always divide row `k` of `U` and column `k` of `L`,
//! and post hoc cancellation of row factors from `U` and column factors
//! from `L`, adjusting `D` so the product is unchanged.

use rayon::prelude::*;
use thiserror::Error;

use crate::domain::{gcd_all, Domain, DomainError};
use crate::ldu::LduDecomposition;
use crate::matrix::{Matrix, MatrixError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorsError {
    #[error("decomposition has no usable pivot log")]
    MissingPivotLog,
    #[error("{count} minors exceed the budget of {budget}")]
    TooLarge { count: u128, budget: u128 },
    #[error("order {k} exceeds min(m, n) = {max}")]
    OrderTooLarge { k: usize, max: usize },
    #[error("{divisor} does not divide the gcd of row {row} of U")]
    NotADivisor { row: usize, divisor: String },
    #[error("expected {expected} divisors, got {got}")]
    DivisorCount { expected: usize, got: usize },
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Default cap on the number of minors enumerated by
/// [`determinantal_divisors`]; a 6×6 matrix needs 923.
pub const DEFAULT_MINOR_BUDGET: u128 = 1000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowFactor<T> {
    pub row: usize,
    /// `gcd(a,b)/gcd(a,b,p)`; absent for the first row.
    pub predicted: Option<T>,
    pub actual_gcd: T,
    pub predicted_primes: Option<u32>,
    pub actual_primes: Option<u32>,
    pub is_last_row: bool,
}

impl<T: Domain> RowFactor<T> {
    /// Whether the prediction divides the actual row gcd.
    pub fn prediction_divides(&self) -> bool {
        match &self.predicted {
            None => true,
            Some(g) => divides(g, &self.actual_gcd),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowFactorReport<T> {
    pub rows: Vec<RowFactor<T>>,
}

impl<T: Domain> RowFactorReport<T> {
    pub fn all_predictions_divide(&self) -> bool {
        self.rows.iter().all(RowFactor::prediction_divides)
    }

    /// `(predicted, actual)` prime counts summed over all rows but the last.
    /// `None` for polynomial domains.
    pub fn prime_totals(&self) -> Option<(u64, u64)> {
        let mut predicted = 0u64;
        let mut actual = 0u64;
        for r in self.rows.iter().filter(|r| !r.is_last_row) {
            actual += u64::from(r.actual_primes?);
            if r.predicted.is_some() {
                predicted += u64::from(r.predicted_primes?);
            }
        }
        Some((predicted, actual))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("row,predicted,actual_gcd,predicted_primes,actual_primes,last_row\n");
        let opt = |v: Option<u32>| v.map_or(String::new(), |v| v.to_string());
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.row,
                r.predicted.as_ref().map_or(String::new(), ToString::to_string),
                r.actual_gcd,
                opt(r.predicted_primes),
                opt(r.actual_primes),
                r.is_last_row
            ));
        }
        out
    }
}

pub(crate) fn divides<T: Domain>(d: &T, x: &T) -> bool {
    if d.is_zero() {
        return x.is_zero();
    }
    x.exact_div(d).is_ok()
}

fn prime_count<T: Domain>(x: &T) -> Option<u32> {
    x.omega_estimate().map(|e| e.refine().count)
}

/// Predicts a factor of each row `k+1` of `U` from `p = L_{k−1,k−1}`,
/// `a = L_{k,k}` and `b = L_{k+1,k}` (with `p = 1` for the first step).
pub fn predict_row_factors<T: Domain>(dec: &LduDecomposition<T>) -> Result<RowFactorReport<T>, FactorsError> {
    let r = dec.rank();
    let log = dec.pivot_log();
    if log.len() != r || (0..r).any(|k| &log[k].value != dec.l().get(k, k)) {
        return Err(FactorsError::MissingPivotLog);
    }
    let l = dec.l();
    let u = dec.u();
    let rows = (0..r)
        .map(|row| {
            let predicted = (row > 0).then(|| {
                let k = row - 1;
                let p = if k == 0 { T::one() } else { l.get(k - 1, k - 1).clone() };
                let a = l.get(k, k);
                let b = l.get(k + 1, k);
                let g = a.gcd(b);
                g.exact_div(&g.gcd(&p)).expect("gcd divides")
            });
            let actual_gcd = gcd_all(u.row(row));
            RowFactor {
                row,
                predicted_primes: predicted.as_ref().and_then(prime_count),
                actual_primes: prime_count(&actual_gcd),
                predicted,
                actual_gcd,
                is_last_row: row + 1 == r,
            }
        })
        .collect();
    Ok(RowFactorReport { rows })
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] != i + n - k) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

/// `d*_1..d*_upto`, each the gcd of all `j×j` minors, by enumeration.
pub fn determinantal_divisors<T: Domain>(a: &Matrix<T>, upto: usize) -> Result<Vec<T>, FactorsError> {
    determinantal_divisors_with_budget(a, upto, DEFAULT_MINOR_BUDGET)
}

pub fn determinantal_divisors_with_budget<T: Domain>(a: &Matrix<T>, upto: usize, budget: u128) -> Result<Vec<T>, FactorsError> {
    let (m, n) = (a.rows(), a.cols());
    if upto > m.min(n) {
        return Err(FactorsError::OrderTooLarge { k: upto, max: m.min(n) });
    }
    let count: u128 = (1..=upto).map(|j| binomial(m, j) * binomial(n, j)).sum();
    if count > budget {
        return Err(FactorsError::TooLarge { count, budget });
    }
    (1..=upto)
        .map(|j| {
            let row_sets = combinations(m, j);
            let col_sets = combinations(n, j);
            let minors: Vec<T> = row_sets
                .par_iter()
                .flat_map_iter(|rs| col_sets.iter().map(move |cs| (rs, cs)))
                .map(|(rs, cs)| a.submatrix(rs, cs).determinant())
                .collect::<Result<_, _>>()?;
            Ok(gcd_all(&minors))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithCheck<T> {
    pub k: usize,
    pub divisor: T,
    pub divides_u_row: bool,
    pub divides_l_col: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithReport<T> {
    pub checks: Vec<SmithCheck<T>>,
}

impl<T> SmithReport<T> {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.divides_u_row && c.divides_l_col)
    }
}

/// Checks that `d*_k` divides row `k` of `U` and column `k` of `L` for
/// every `k` up to the rank.
pub fn check_smith_divisibility<T: Domain>(a: &Matrix<T>, dec: &LduDecomposition<T>) -> Result<SmithReport<T>, FactorsError> {
    if !a.is_square() {
        return Err(MatrixError::DimensionMismatch("Smith divisibility needs a square matrix".into()).into());
    }
    let r = dec.rank();
    let divisors = determinantal_divisors(a, r)?;
    let checks = divisors
        .into_iter()
        .enumerate()
        .map(|(k, d)| SmithCheck {
            k,
            divides_u_row: dec.u().row(k).iter().all(|x| divides(&d, x)),
            divides_l_col: (0..dec.l().rows()).all(|i| divides(&d, dec.l().get(i, k))),
            divisor: d,
        })
        .collect();
    Ok(SmithReport { checks })
}

/// Cancels `d_k` from row `k` of `U` and from `D_k`. With `None`, each
/// `d_k` is the normalized gcd of the row.
pub fn remove_row_factors<T: Domain>(dec: &LduDecomposition<T>, divisors: Option<&[T]>) -> Result<LduDecomposition<T>, FactorsError> {
    let r = dec.rank();
    let ds: Vec<T> = match divisors {
        Some(ds) if ds.len() != r => {
            return Err(FactorsError::DivisorCount {
                expected: r,
                got: ds.len(),
            })
        }
        Some(ds) => ds.to_vec(),
        None => (0..r).map(|k| gcd_all(dec.u().row(k))).collect(),
    };
    let mut u = dec.u().to_rows();
    let mut d = dec.d().to_vec();
    for k in 0..r {
        let dk = &ds[k];
        if dk.is_one() {
            continue;
        }
        let row_gcd = gcd_all(&u[k]);
        if dk.is_zero() || !divides(dk, &row_gcd) {
            return Err(FactorsError::NotADivisor {
                row: k,
                divisor: dk.to_string(),
            });
        }
        for x in u[k].iter_mut() {
            *x = x.exact_div(dk)?;
        }
        // U_kk divides D_k, so any factor of row k divides D_k as well
        d[k] = d[k].exact_div(dk)?;
    }
    let mut out = dec.clone();
    out.u = Matrix::from_vec(r, dec.u().cols(), u.into_iter().flatten().collect())?;
    out.d = d;
    Ok(out)
}

/// Cancels `gcd(gcd(L_{*,k}), D_k)` from column `k` of `L` and from `D_k`.
pub fn remove_column_factors<T: Domain>(dec: &LduDecomposition<T>) -> Result<LduDecomposition<T>, FactorsError> {
    let r = dec.rank();
    let m = dec.l().rows();
    let mut l = dec.l().to_rows();
    let mut d = dec.d().to_vec();
    for k in 0..r {
        let col_gcd = gcd_all((0..m).map(|i| &l[i][k]));
        let c = col_gcd.gcd(&d[k]);
        if c.is_one() || c.is_zero() {
            continue;
        }
        for row in l.iter_mut() {
            row[k] = row[k].exact_div(&c)?;
        }
        d[k] = d[k].exact_div(&c)?;
    }
    let mut out = dec.clone();
    out.l = Matrix::from_fn(m, r, |i, k| l[i][k].clone());
    out.d = d;
    Ok(out)
}
