//! Fraction-free solving of `A x = b`.
//!
//! A kit `(W, S, K, Δ̃)` is built once from `A`. Afterwards `A x = b` is
//! solvable iff `W b = 0`, with particular solution `Δ̃⁻¹ S b` and nullspace
//! spanned by the columns of `Δ̃⁻¹ K`. Only the final answer has fractions.
//!
//! The row transformation `D L⁻¹ P_wᵗ` is obtained by eliminating `[A | I]`
//! with pivots restricted to the `A` block. Columns follow the orientation
//! `D L⁻¹ P_wᵗ A = [U B; 0 0] P_c`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::domain::{gcd_all, Domain, DomainError, DomainKind, Frac};
use crate::ldu::{eliminate, strategy_selector, LduDecomposition, LduError, PivotChoice, PivotStrategy};
use crate::matrix::{Matrix, MatrixError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("matrix has an empty dimension {0}x{1}")]
    Empty(usize, usize),
    #[error("U is singular or not upper triangular")]
    SingularU,
    #[error("right-hand side has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("bad kit: {0}")]
    Format(String),
    #[error(transparent)]
    Ldu(#[from] LduError),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Everything the solver needs about `A`, independent of `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverKit<T> {
    /// `(m−r)×m` compatibility matrix.
    pub w: Matrix<T>,
    /// `n×m`.
    pub s: Matrix<T>,
    /// `n×(n−r)`.
    pub k: Matrix<T>,
    /// Diagonal of `Δ̃`.
    pub delta_tilde: Vec<T>,
    pub rank: usize,
}

/// Intermediate matrices of the kit construction, kept for inspection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverFactors<T> {
    pub decomposition: LduDecomposition<T>,
    /// Top `r` rows of `D L⁻¹ P_wᵗ`.
    pub v: Matrix<T>,
    pub w: Matrix<T>,
    /// `r×(n−r)` block right of `U`.
    pub b: Matrix<T>,
    pub x: Matrix<T>,
    pub delta: Vec<T>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult<T: Domain> {
    pub compatible: bool,
    /// `W b`.
    pub residual: Vec<T>,
    /// `Δ̃⁻¹ S b`, present when compatible.
    pub particular: Option<Vec<Frac<T>>>,
    /// `Δ̃⁻¹ K`, one basis vector per column.
    pub nullspace: Matrix<Frac<T>>,
}

/// Backward elimination of an upper triangular `U`: returns `X` over the
/// domain and `Δ` with `X U = diag(Δ)`.
///
/// Reversing rows and columns turns `U` into a lower triangular matrix,
/// which ordinary elimination of `[ΠUΠ | I]` brings to diagonal form.
pub fn backward_ldu<T: Domain>(u: &Matrix<T>) -> Result<(Matrix<T>, Vec<T>), SolverError> {
    let r = u.rows();
    if u.cols() != r || (0..r).any(|i| u.get(i, i).is_zero() || (0..i).any(|j| !u.get(i, j).is_zero())) {
        return Err(SolverError::SingularU);
    }
    let rev = |i: usize| r - 1 - i;
    let work: Vec<Vec<T>> = (0..r)
        .map(|i| {
            (0..2 * r)
                .map(|j| {
                    if j < r {
                        u.get(rev(i), rev(j)).clone()
                    } else if j - r == i {
                        T::one()
                    } else {
                        T::zero()
                    }
                })
                .collect()
        })
        .collect();
    let e = eliminate(work, r, |w: &[Vec<T>], k| {
        if w[k][k].is_zero() {
            PivotChoice::Done
        } else {
            PivotChoice::At(k, k)
        }
    })?;
    if e.rank != r {
        return Err(SolverError::SingularU);
    }
    let x = Matrix::from_fn(r, r, |i, j| e.work[rev(i)][r + rev(j)].clone());
    let delta = (0..r).map(|i| e.pivot(rev(i)).clone()).collect();
    Ok((x, delta))
}

/// Divides a compatibility row by the largest common factor it shares with
/// the last pivot, with the sign (or leading coefficient) of that pivot.
fn normalize_w_row<T: Domain>(row: &mut [T], last_pivot: &T) -> Result<(), DomainError> {
    let g = gcd_all(row.iter()).gcd(last_pivot);
    if g.is_zero() {
        return Ok(());
    }
    let g = g.mul(&last_pivot.unit_part());
    if g.is_one() {
        return Ok(());
    }
    for x in row.iter_mut() {
        *x = x.exact_div(&g)?;
    }
    Ok(())
}

/// Runs all steps of the kit construction, keeping intermediate matrices.
pub fn factor_system<T: Domain>(a: &Matrix<T>, strategy: PivotStrategy) -> Result<SolverFactors<T>, SolverError> {
    let (m, n) = (a.rows(), a.cols());
    if m == 0 || n == 0 {
        return Err(SolverError::Empty(m, n));
    }
    if strategy == PivotStrategy::Factors && T::KIND != DomainKind::Int {
        return Err(LduError::UnsupportedStrategy(strategy).into());
    }
    let work = a.hcat(&Matrix::identity(m))?.to_rows();
    let e = eliminate(work, n, strategy_selector(strategy, n))?;
    let r = e.rank;
    let decomposition = LduDecomposition::from_elimination(&e, n);
    let v = Matrix::from_fn(r, m, |i, j| e.work[i][n + j].clone());
    let last_pivot = if r == 0 { T::one() } else { e.pivot(r - 1).clone() };
    let mut w_rows: Vec<Vec<T>> = e.work[r..].iter().map(|row| row[n..].to_vec()).collect();
    for row in w_rows.iter_mut() {
        normalize_w_row(row, &last_pivot)?;
    }
    let w = Matrix::from_fn(m - r, m, |i, j| w_rows[i][j].clone());
    let u_block = Matrix::from_fn(r, r, |i, j| decomposition.u().get(i, j).clone());
    let b = Matrix::from_fn(r, n - r, |i, j| decomposition.u().get(i, r + j).clone());
    let (x, delta) = backward_ldu(&u_block)?;
    Ok(SolverFactors {
        decomposition,
        v,
        w,
        b,
        x,
        delta,
    })
}

impl<T: Domain> SolverFactors<T> {
    pub fn kit(&self) -> Result<SolverKit<T>, SolverError> {
        let r = self.x.rows();
        let m = self.v.cols();
        let n = r + self.b.cols();
        let perm = self.decomposition.col_perm();
        let xv = self.x.mul(&self.v)?;
        let xb = self.x.mul(&self.b)?;
        // stacked row j belongs to original unknown perm[j]
        let stacked_s: Vec<Vec<T>> = (0..n)
            .map(|j| if j < r { xv.row(j).to_vec() } else { vec![T::zero(); m] })
            .collect();
        let stacked_k: Vec<Vec<T>> = (0..n)
            .map(|j| {
                (0..n - r)
                    .map(|c| {
                        if j < r {
                            xb.get(j, c).neg()
                        } else if j - r == c {
                            T::one()
                        } else {
                            T::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let stacked_delta: Vec<T> = (0..n)
            .map(|j| if j < r { self.delta[j].clone() } else { T::one() })
            .collect();
        let s_rows = perm.scatter(&stacked_s);
        let k_rows = perm.scatter(&stacked_k);
        Ok(SolverKit {
            w: self.w.clone(),
            s: Matrix::from_fn(n, m, |i, j| s_rows[i][j].clone()),
            k: Matrix::from_fn(n, n - r, |i, j| k_rows[i][j].clone()),
            delta_tilde: perm.scatter(&stacked_delta),
            rank: r,
        })
    }
}

/// Builds a kit with the default smallest-pivot strategy.
pub fn build_solver_kit<T: Domain>(a: &Matrix<T>) -> Result<SolverKit<T>, SolverError> {
    build_solver_kit_with(a, PivotStrategy::SMALLEST)
}

pub fn build_solver_kit_with<T: Domain>(a: &Matrix<T>, strategy: PivotStrategy) -> Result<SolverKit<T>, SolverError> {
    factor_system(a, strategy)?.kit()
}

impl<T: Domain> SolverKit<T> {
    pub fn rows(&self) -> usize {
        self.s.cols()
    }

    pub fn cols(&self) -> usize {
        self.s.rows()
    }

    pub fn solve(&self, b: &[T]) -> Result<SolveResult<T>, SolverError> {
        solve(self, b)
    }

    /// `Δ̃⁻¹ K`.
    pub fn nullspace(&self) -> Matrix<Frac<T>> {
        Matrix::from_fn(self.k.rows(), self.k.cols(), |i, j| {
            Frac::new(self.k.get(i, j).clone(), self.delta_tilde[i].clone()).expect("nonzero diagonal")
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&KitRecord::from(self)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, SolverError> {
        let rec: KitRecord = serde_json::from_str(text).map_err(|e| SolverError::Format(e.to_string()))?;
        rec.try_into()
    }
}

pub fn solve<T: Domain>(kit: &SolverKit<T>, b: &[T]) -> Result<SolveResult<T>, SolverError> {
    let m = kit.rows();
    if b.len() != m {
        return Err(SolverError::DimensionMismatch {
            expected: m,
            got: b.len(),
        });
    }
    let residual = kit.w.mul_vec(b)?;
    let compatible = residual.iter().all(Domain::is_zero);
    let particular = if compatible {
        let sb = kit.s.mul_vec(b)?;
        Some(
            sb.into_iter()
                .zip(&kit.delta_tilde)
                .map(|(x, d)| Frac::new(x, d.clone()))
                .collect::<Result<Vec<_>, _>>()?,
        )
    } else {
        None
    };
    Ok(SolveResult {
        compatible,
        residual,
        particular,
        nullspace: kit.nullspace(),
    })
}

#[derive(Serialize, Deserialize)]
struct KitRecord {
    domain: DomainKind,
    rank: usize,
    #[serde(rename = "W")]
    w: String,
    #[serde(rename = "S")]
    s: String,
    #[serde(rename = "K")]
    k: String,
    delta_tilde: Vec<String>,
}

impl<T: Domain> From<&SolverKit<T>> for KitRecord {
    fn from(kit: &SolverKit<T>) -> Self {
        KitRecord {
            domain: T::KIND,
            rank: kit.rank,
            w: kit.w.to_text(),
            s: kit.s.to_text(),
            k: kit.k.to_text(),
            delta_tilde: kit.delta_tilde.iter().map(ToString::to_string).collect(),
        }
    }
}

impl<T: Domain> TryFrom<KitRecord> for SolverKit<T> {
    type Error = SolverError;

    fn try_from(rec: KitRecord) -> Result<Self, SolverError> {
        if rec.domain != T::KIND {
            return Err(MatrixError::DomainMismatch {
                expected: T::KIND,
                found: rec.domain,
            }
            .into());
        }
        let w = Matrix::<T>::parse_text(&rec.w)?;
        let s = Matrix::<T>::parse_text(&rec.s)?;
        let k = Matrix::<T>::parse_text(&rec.k)?;
        let delta_tilde = rec.delta_tilde.iter().map(|x| x.parse::<T>()).collect::<Result<Vec<_>, _>>()?;
        let (n, m, r) = (s.rows(), s.cols(), rec.rank);
        if r > m.min(n) || w.rows() != m - r || w.cols() != m || k.rows() != n || k.cols() != n - r || delta_tilde.len() != n {
            return Err(SolverError::Format("inconsistent dimensions".into()));
        }
        if delta_tilde.iter().any(Domain::is_zero) {
            return Err(SolverError::Format("zero entry in delta_tilde".into()));
        }
        Ok(SolverKit {
            w,
            s,
            k,
            delta_tilde,
            rank: r,
        })
    }
}
