//! Fraction-free QR decomposition `A = Θ · D⁻¹ · R`.
//!
//! Eliminating the partitioned matrix `(AᵗA | Aᵗ)` without pivoting yields
//! `R` as the left block of the upper factor and `Θᵗ` as the right block;
//! `ΘᵗΘ = D` exactly. The last column of `Θ` carries a factor `det A`
//! which [`qr_reduce`] divides out together with the last row of `R`.

use thiserror::Error;

use crate::domain::{Domain, DomainError, Frac};
use crate::ldu::{eliminate, PivotChoice};
use crate::matrix::{Matrix, MatrixError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QrError {
    #[error("QR needs a square matrix, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("matrix is rank deficient (zero pivot at step {0})")]
    RankDeficient(usize),
    #[error("decomposition is already reduced")]
    AlreadyReduced,
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QrDecomposition<T> {
    pub theta: Matrix<T>,
    /// Diagonal of `D`.
    pub d: Vec<T>,
    pub r: Matrix<T>,
    pub reduced: bool,
    /// Signed determinant of the input.
    pub det: T,
}

impl<T: Domain> QrDecomposition<T> {
    /// `Θ · D⁻¹ · R` over the fraction field.
    pub fn reconstruct(&self) -> Matrix<Frac<T>> {
        let n = self.theta.rows();
        let scaled: Matrix<Frac<T>> = Matrix::from_fn(n, n, |i, k| {
            Frac::new(self.theta.get(i, k).clone(), self.d[k].clone()).expect("nonzero D")
        });
        scaled.mul_frac(&self.r.to_frac()).expect("square")
    }

    /// `ΘᵗΘ == diag(D)`, checked exactly.
    pub fn is_left_orthogonal(&self) -> bool {
        let gram = self.theta.transpose().mul(&self.theta).expect("square");
        gram == Matrix::diagonal(&self.d)
    }
}

/// Unreduced fraction-free QR of a square full-rank matrix.
pub fn qr_decompose<T: Domain>(a: &Matrix<T>) -> Result<QrDecomposition<T>, QrError> {
    let (m, n) = (a.rows(), a.cols());
    if m != n || n == 0 {
        return Err(QrError::NotSquare(m, n));
    }
    let at = a.transpose();
    let gram = at.mul(a)?;
    let work = gram.hcat(&at)?.to_rows();
    let mut failed_at = None;
    let e = eliminate(work, n, |w: &[Vec<T>], k| {
        if w[k][k].is_zero() {
            failed_at = Some(k);
            PivotChoice::Done
        } else {
            PivotChoice::At(k, k)
        }
    })?;
    if let Some(k) = failed_at {
        return Err(QrError::RankDeficient(k));
    }
    let r = Matrix::from_fn(n, n, |i, j| if j >= i { e.work[i][j].clone() } else { T::zero() });
    let theta = Matrix::from_fn(n, n, |i, j| e.work[j][n + i].clone());
    let mut d = Vec::with_capacity(n);
    let mut prev = T::one();
    for k in 0..n {
        d.push(prev.mul(e.pivot(k)));
        prev = e.pivot(k).clone();
    }
    let det = a.determinant()?;
    Ok(QrDecomposition {
        theta,
        d,
        r,
        reduced: false,
        det,
    })
}

/// Divides `det A` out of the last column of `Θ` and the last row of `R`,
/// and `(det A)²` out of the last entry of `D`. The signed determinant is
/// used as is, so both `Θ` and `R` absorb its sign.
pub fn qr_reduce<T: Domain>(q: &QrDecomposition<T>) -> Result<QrDecomposition<T>, QrError> {
    if q.reduced {
        return Err(QrError::AlreadyReduced);
    }
    let n = q.theta.rows();
    let last = n - 1;
    let det = &q.det;
    let mut theta = q.theta.to_rows();
    for row in theta.iter_mut() {
        row[last] = row[last].exact_div(det)?;
    }
    let mut r = q.r.to_rows();
    for entry in r[last].iter_mut() {
        *entry = entry.exact_div(det)?;
    }
    let mut d = q.d.clone();
    d[last] = d[last].exact_div(det)?.exact_div(det)?;
    Ok(QrDecomposition {
        theta: Matrix::from_rows(theta)?,
        d,
        r: Matrix::from_rows(r)?,
        reduced: true,
        det: det.clone(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LastColumnCheck<T> {
    pub row: usize,
    pub expected: T,
    pub actual: T,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LastColumnReport<T> {
    pub rows: Vec<LastColumnCheck<T>>,
}

impl<T> LastColumnReport<T> {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

/// Checks `Θ_{i,n} = (−1)^{n+i} · minor(A, i, n) · det A` for every row.
pub fn verify_last_column<T: Domain>(a: &Matrix<T>, q: &QrDecomposition<T>) -> Result<LastColumnReport<T>, QrError> {
    if q.reduced {
        return Err(QrError::AlreadyReduced);
    }
    let n = a.rows();
    let last = n - 1;
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let minor = if n == 1 { T::one() } else { a.minor(i, last)? };
        let mut expected = minor.mul(&q.det);
        // (-1)^{n+i} with 1-based i is (-1)^{last+i} with 0-based i
        if (last + i) % 2 == 1 {
            expected = expected.neg();
        }
        let actual = q.theta.get(i, last).clone();
        rows.push(LastColumnCheck {
            row: i,
            pass: expected == actual,
            expected,
            actual,
        });
    }
    Ok(LastColumnReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Integer;

    type M = Matrix<Integer>;

    #[test]
    fn identity() {
        let q = qr_decompose(&M::identity(3)).unwrap();
        assert_eq!(q.theta, M::identity(3));
        assert_eq!(q.r, M::identity(3));
        assert!(q.d.iter().all(Domain::is_one));
        let red = qr_reduce(&q).unwrap();
        assert_eq!(red.theta, q.theta);
        assert_eq!(red.r, q.r);
        assert!(verify_last_column(&M::identity(2), &qr_decompose(&M::identity(2)).unwrap()).unwrap().all_pass());
    }

    #[test]
    fn errors() {
        let sing = M::from_i64_rows(&[&[1, 2], &[2, 4]]).unwrap();
        assert!(matches!(qr_decompose(&sing), Err(QrError::RankDeficient(1))));
        let rect = M::from_i64_rows(&[&[1, 2, 3]]).unwrap();
        assert!(matches!(qr_decompose(&rect), Err(QrError::NotSquare(1, 3))));
        let q = qr_reduce(&qr_decompose(&M::identity(2)).unwrap()).unwrap();
        assert!(matches!(qr_reduce(&q), Err(QrError::AlreadyReduced)));
    }

    #[test]
    fn one_by_one() {
        let a = M::from_i64_rows(&[&[-5]]).unwrap();
        let q = qr_decompose(&a).unwrap();
        assert_eq!(q.theta.get(0, 0), &Integer::from(-5));
        assert_eq!(q.r.get(0, 0), &Integer::from(25));
        assert!(verify_last_column(&a, &q).unwrap().all_pass());
        let red = qr_reduce(&q).unwrap();
        assert_eq!(red.reconstruct(), a.to_frac());
    }
}
