//! Fraction-free LD⁻¹U decomposition by Bareiss elimination with full
//! pivoting: `A = P_w · L · D⁻¹ · U · P_c`.
//!
//! Step `k` picks a pivot in the active submatrix, swaps it to `(k, k)` and
//! replaces every entry below and to the right by
//! `(p_k · a_ij − a_ik · a_kj) / p_{k−1}`, a division that is always exact.
//! The pivot column entries stay in place as the `k`-th column of `L`, so
//! row swaps carry them along for free.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::domain::{Domain, DomainError, DomainKind, Frac, Measure, OmegaEstimate};
use crate::matrix::{Matrix, MatrixError, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LduError {
    #[error("pivot strategy `{0}` is only available for integer matrices")]
    UnsupportedStrategy(PivotStrategy),
    #[error("empty matrix ({0}x{1})")]
    Empty(usize, usize),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("malformed decomposition: {0}")]
    Format(String),
}

/// How the next pivot is chosen from the active submatrix.
///
/// Ties are broken in favor of the first candidate in row-major order;
/// zero is never a candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PivotStrategy {
    /// The first nonzero entry in row-major order.
    First,
    /// Smallest absolute value (integers) or smallest degree/height.
    Smallest(Measure),
    /// Largest absolute value (integers) or largest degree/height.
    Largest(Measure),
    /// Fewest prime factors counted with multiplicity. Integers only.
    Factors,
}

impl PivotStrategy {
    pub const SMALLEST: PivotStrategy = PivotStrategy::Smallest(Measure::Degree);
    pub const LARGEST: PivotStrategy = PivotStrategy::Largest(Measure::Degree);

    pub fn name(&self) -> &'static str {
        match self {
            PivotStrategy::First => "first",
            PivotStrategy::Smallest(Measure::Degree) => "smallest",
            PivotStrategy::Smallest(Measure::Height) => "smallest-height",
            PivotStrategy::Largest(Measure::Degree) => "largest",
            PivotStrategy::Largest(Measure::Height) => "largest-height",
            PivotStrategy::Factors => "factors",
        }
    }
}

impl fmt::Display for PivotStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PivotStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "first" => PivotStrategy::First,
            "smallest" | "smallest-degree" => PivotStrategy::Smallest(Measure::Degree),
            "smallest-height" | "height" => PivotStrategy::Smallest(Measure::Height),
            "largest" | "largest-degree" => PivotStrategy::Largest(Measure::Degree),
            "largest-height" => PivotStrategy::Largest(Measure::Height),
            "factors" => PivotStrategy::Factors,
            _ => return Err(format!("unknown pivot strategy {s:?}")),
        })
    }
}

/// One elimination step: the pivot's original row and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotRecord<T> {
    pub step: usize,
    pub row: usize,
    pub col: usize,
    pub value: T,
}

/// Returned by pivot selection when the active submatrix is all zero,
/// which means elimination is complete.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("active submatrix is zero")]
pub struct AllZero;

/// Picks the pivot among the nonzero entries of `active` according to
/// `strategy`, returning its (row, col) in `active`.
pub fn select_pivot<T: Domain>(active: &Matrix<T>, strategy: PivotStrategy) -> Result<(usize, usize), AllZero> {
    let rows = active.to_rows();
    select_in(&rows, 0, 0, active.cols(), strategy).ok_or(AllZero)
}

fn candidates<T: Domain>(work: &[Vec<T>], k0: usize, c0: usize, c1: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
    (k0..work.len()).flat_map(move |i| (c0..c1).map(move |j| (i, j))).filter(move |&(i, j)| !work[i][j].is_zero())
}

fn select_by_size<T: Domain>(work: &[Vec<T>], k0: usize, c0: usize, c1: usize, measure: Measure, want: Ordering) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, j) in candidates(work, k0, c0, c1) {
        match best {
            None => best = Some((i, j)),
            Some((bi, bj)) => {
                if work[i][j].cmp_size(&work[bi][bj], measure) == want {
                    best = Some((i, j));
                }
            }
        }
    }
    best
}

fn select_by_factors<T: Domain>(work: &[Vec<T>], k0: usize, c0: usize, c1: usize) -> Option<(usize, usize)> {
    let mut cands: Vec<((usize, usize), OmegaEstimate)> = candidates(work, k0, c0, c1)
        .map(|(i, j)| ((i, j), work[i][j].omega_estimate().expect("factor counts need integers")))
        .collect();
    if cands.is_empty() {
        return None;
    }
    // Cheap estimates are lower bounds; refine only the candidates that could
    // still win, walking row-major so ties resolve to the first entry.
    loop {
        let min = cands.iter().map(|(_, e)| e.count).min().expect("nonempty");
        let (idx, settled) = cands
            .iter()
            .enumerate()
            .find(|(_, (_, e))| e.count == min)
            .map(|(idx, (_, e))| (idx, e.is_settled()))
            .expect("minimum exists");
        if settled {
            return Some(cands[idx].0);
        }
        cands[idx].1 = cands[idx].1.clone().refine();
    }
}

fn select_in<T: Domain>(work: &[Vec<T>], k0: usize, c0: usize, c1: usize, strategy: PivotStrategy) -> Option<(usize, usize)> {
    match strategy {
        PivotStrategy::First => candidates(work, k0, c0, c1).next(),
        PivotStrategy::Smallest(m) => select_by_size(work, k0, c0, c1, m, Ordering::Less),
        PivotStrategy::Largest(m) => select_by_size(work, k0, c0, c1, m, Ordering::Greater),
        PivotStrategy::Factors => select_by_factors(work, k0, c0, c1),
    }
}

/// Raw output of the elimination engine, shared by the LD⁻¹U, QR and
/// solver code.
#[derive(Debug, Clone)]
pub(crate) struct Elimination<T> {
    /// Final workspace: rows are in pivot order; columns `< search_cols`
    /// are in pivot order too.
    pub work: Vec<Vec<T>>,
    pub row_perm: Permutation,
    pub col_perm: Permutation,
    pub rank: usize,
    pub log: Vec<PivotRecord<T>>,
}

impl<T: Domain> Elimination<T> {
    pub fn pivot(&self, k: usize) -> &T {
        &self.work[k][k]
    }
}

/// Why elimination stopped at a given step.
pub(crate) enum PivotChoice {
    At(usize, usize),
    Done,
}

/// Bareiss elimination with pivots searched in columns `0..search_cols`.
/// Columns at or beyond `search_cols` are carried along (augmented blocks).
pub(crate) fn eliminate<T: Domain>(
    mut work: Vec<Vec<T>>,
    search_cols: usize,
    mut select: impl FnMut(&[Vec<T>], usize) -> PivotChoice,
) -> Result<Elimination<T>, DomainError> {
    let m = work.len();
    let mut row_perm = Permutation::identity(m);
    let mut col_perm = Permutation::identity(search_cols);
    let mut log = Vec::new();
    let mut prev = T::one();
    let mut rank = 0;
    for k in 0..m.min(search_cols) {
        let (pi, pj) = match select(&work, k) {
            PivotChoice::At(i, j) => (i, j),
            PivotChoice::Done => break,
        };
        debug_assert!(pi >= k && pj >= k && pj < search_cols && !work[pi][pj].is_zero());
        work.swap(k, pi);
        row_perm.swap(k, pi);
        if pj != k {
            for row in work.iter_mut() {
                row.swap(k, pj);
            }
            col_perm.swap(k, pj);
        }
        log.push(PivotRecord {
            step: k,
            row: row_perm.image()[k],
            col: col_perm.image()[k],
            value: work[k][k].clone(),
        });
        let (top, bottom) = work.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let p = &pivot_row[k];
        for row in bottom.iter_mut() {
            let (head, tail) = row.split_at_mut(k + 1);
            let lead = &head[k];
            for (j, entry) in tail.iter_mut().enumerate() {
                let above = &pivot_row[k + 1 + j];
                *entry = T::cross_div(p, entry, lead, above, &prev)?;
            }
        }
        prev = work[k][k].clone();
        rank = k + 1;
    }
    Ok(Elimination {
        work,
        row_perm,
        col_perm,
        rank,
        log,
    })
}

pub(crate) fn strategy_selector<T: Domain>(strategy: PivotStrategy, search_cols: usize) -> impl FnMut(&[Vec<T>], usize) -> PivotChoice {
    move |work: &[Vec<T>], k: usize| match select_in(work, k, k, search_cols, strategy) {
        Some((i, j)) => PivotChoice::At(i, j),
        None => PivotChoice::Done,
    }
}

/// Full-rank decomposition `A = P_w · L · D⁻¹ · U · P_c` over the domain.
///
/// `L` is `m×r` lower trapezoidal, `U` is `r×n` upper trapezoidal, and the
/// diagonal `D` is stored as a vector. Straight out of elimination
/// `L_kk = U_kk = p_k` and `D_k = p_{k−1}·p_k` with `p_0 = 1`; factor removal
/// rescales rows of `U`, columns of `L` and `D` while keeping the product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LduDecomposition<T> {
    pub(crate) row_perm: Permutation,
    pub(crate) l: Matrix<T>,
    pub(crate) d: Vec<T>,
    pub(crate) u: Matrix<T>,
    pub(crate) col_perm: Permutation,
    pub(crate) rank: usize,
    pub(crate) pivot_log: Vec<PivotRecord<T>>,
}

impl<T: Domain> LduDecomposition<T> {
    pub(crate) fn from_elimination(e: &Elimination<T>, cols: usize) -> Self {
        let m = e.work.len();
        let r = e.rank;
        let l = Matrix::from_fn(m, r, |i, k| if i >= k { e.work[i][k].clone() } else { T::zero() });
        let u = Matrix::from_fn(r, cols, |k, j| if j >= k { e.work[k][j].clone() } else { T::zero() });
        let mut d = Vec::with_capacity(r);
        let mut prev = T::one();
        for k in 0..r {
            d.push(prev.mul(e.pivot(k)));
            prev = e.pivot(k).clone();
        }
        LduDecomposition {
            row_perm: e.row_perm.clone(),
            l,
            d,
            u,
            col_perm: e.col_perm.clone(),
            rank: r,
            pivot_log: e.log.clone(),
        }
    }

    pub fn row_perm(&self) -> &Permutation {
        &self.row_perm
    }

    pub fn col_perm(&self) -> &Permutation {
        &self.col_perm
    }

    pub fn l(&self) -> &Matrix<T> {
        &self.l
    }

    pub fn d(&self) -> &[T] {
        &self.d
    }

    pub fn u(&self) -> &Matrix<T> {
        &self.u
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn pivot_log(&self) -> &[PivotRecord<T>] {
        &self.pivot_log
    }

    /// Pivots `p_1..p_r` in elimination order.
    pub fn pivots(&self) -> Vec<T> {
        self.pivot_log.iter().map(|r| r.value.clone()).collect()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.l.rows(), self.u.cols())
    }

    /// `L · D⁻¹ · U`, i.e. `A` with rows and columns in pivot order.
    pub fn permuted_product(&self) -> Matrix<Frac<T>> {
        let (m, n) = self.shape();
        let scaled_l: Vec<Vec<Frac<T>>> = (0..m)
            .map(|i| {
                (0..self.rank)
                    .map(|k| {
                        Frac::new(self.l.get(i, k).clone(), self.d[k].clone()).expect("D has no zero entries")
                    })
                    .collect()
            })
            .collect();
        Matrix::from_fn(m, n, |i, j| {
            let mut acc = Frac::zero();
            for (k, lk) in scaled_l[i].iter().enumerate() {
                let ukj = self.u.get(k, j);
                if !lk.is_zero() && !ukj.is_zero() {
                    acc = acc.add(&lk.mul_elem(ukj));
                }
            }
            acc
        })
    }

    /// `P_w · L · D⁻¹ · U · P_c` over the fraction field.
    pub fn reconstruct(&self) -> Matrix<Frac<T>> {
        let p = self.permuted_product();
        let rinv = self.row_perm.inverse();
        let cinv = self.col_perm.inverse();
        p.permuted(&rinv, &cinv).expect("sizes agree")
    }

    /// Exact reconstruction check against the original matrix.
    pub fn reconstructs(&self, a: &Matrix<T>) -> bool {
        if (a.rows(), a.cols()) != self.shape() {
            return false;
        }
        self.reconstruct() == a.to_frac()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&LduRecord::from(self)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, LduError> {
        let rec: LduRecord = serde_json::from_str(text).map_err(|e| LduError::Format(e.to_string()))?;
        rec.try_into()
    }
}

#[derive(Serialize, Deserialize)]
struct PivotEntry {
    step: usize,
    row: usize,
    col: usize,
    pivot: String,
}

/// JSON layout of a decomposition. Matrices use the matrix text format;
/// indices are zero-based.
#[derive(Serialize, Deserialize)]
struct LduRecord {
    domain: DomainKind,
    rank: usize,
    row_perm: Vec<usize>,
    col_perm: Vec<usize>,
    #[serde(rename = "L")]
    l: String,
    #[serde(rename = "D")]
    d: Vec<String>,
    #[serde(rename = "U")]
    u: String,
    pivot_log: Vec<PivotEntry>,
}

impl<T: Domain> From<&LduDecomposition<T>> for LduRecord {
    fn from(dec: &LduDecomposition<T>) -> Self {
        LduRecord {
            domain: T::KIND,
            rank: dec.rank,
            row_perm: dec.row_perm.image().to_vec(),
            col_perm: dec.col_perm.image().to_vec(),
            l: dec.l.to_text(),
            d: dec.d.iter().map(ToString::to_string).collect(),
            u: dec.u.to_text(),
            pivot_log: dec
                .pivot_log
                .iter()
                .map(|p| PivotEntry {
                    step: p.step,
                    row: p.row,
                    col: p.col,
                    pivot: p.value.to_string(),
                })
                .collect(),
        }
    }
}

impl<T: Domain> TryFrom<LduRecord> for LduDecomposition<T> {
    type Error = LduError;

    fn try_from(rec: LduRecord) -> Result<Self, LduError> {
        if rec.domain != T::KIND {
            return Err(MatrixError::DomainMismatch {
                expected: T::KIND,
                found: rec.domain,
            }
            .into());
        }
        let l = Matrix::<T>::parse_text(&rec.l)?;
        let u = Matrix::<T>::parse_text(&rec.u)?;
        let d = rec
            .d
            .iter()
            .map(|s| s.parse::<T>())
            .collect::<Result<Vec<_>, _>>()?;
        let r = rec.rank;
        if l.cols() != r || u.rows() != r || d.len() != r || rec.row_perm.len() != l.rows() || rec.col_perm.len() != u.cols() {
            return Err(LduError::Format("inconsistent dimensions".into()));
        }
        let pivot_log = rec
            .pivot_log
            .into_iter()
            .map(|p| {
                Ok(PivotRecord {
                    step: p.step,
                    row: p.row,
                    col: p.col,
                    value: p.pivot.parse::<T>()?,
                })
            })
            .collect::<Result<Vec<_>, DomainError>>()?;
        Ok(LduDecomposition {
            row_perm: Permutation::from_image(rec.row_perm)?,
            l,
            d,
            u,
            col_perm: Permutation::from_image(rec.col_perm)?,
            rank: r,
            pivot_log,
        })
    }
}

/// Fraction-free LD⁻¹U decomposition of `a` with full pivoting.
pub fn decompose<T: Domain>(a: &Matrix<T>, strategy: PivotStrategy) -> Result<LduDecomposition<T>, LduError> {
    if a.rows() == 0 || a.cols() == 0 {
        return Err(LduError::Empty(a.rows(), a.cols()));
    }
    if strategy == PivotStrategy::Factors && T::KIND != DomainKind::Int {
        return Err(LduError::UnsupportedStrategy(strategy));
    }
    let e = eliminate(a.to_rows(), a.cols(), strategy_selector(strategy, a.cols()))?;
    Ok(LduDecomposition::from_elimination(&e, a.cols()))
}

/// Classical Gaussian elimination over the fraction field with unit
/// lower-diagonal `L`: `A = P_w · L · U · P_c`. First-nonzero full pivoting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionLu<T: Domain> {
    pub row_perm: Permutation,
    pub l: Matrix<Frac<T>>,
    pub u: Matrix<Frac<T>>,
    pub col_perm: Permutation,
    pub rank: usize,
}

impl<T: Domain> FractionLu<T> {
    pub fn reconstruct(&self) -> Matrix<Frac<T>> {
        let p = self.l.mul_frac(&self.u).expect("conformable");
        p.permuted(&self.row_perm.inverse(), &self.col_perm.inverse())
            .expect("sizes agree")
    }
}

pub fn fraction_gauss_baseline<T: Domain>(a: &Matrix<T>) -> Result<FractionLu<T>, LduError> {
    let (m, n) = (a.rows(), a.cols());
    if m == 0 || n == 0 {
        return Err(LduError::Empty(m, n));
    }
    let mut work: Vec<Vec<Frac<T>>> = a.to_frac().to_rows();
    let mut row_perm = Permutation::identity(m);
    let mut col_perm = Permutation::identity(n);
    let mut rank = 0;
    for k in 0..m.min(n) {
        let Some((pi, pj)) = (k..m).flat_map(|i| (k..n).map(move |j| (i, j))).find(|&(i, j)| !work[i][j].is_zero()) else {
            break;
        };
        work.swap(k, pi);
        row_perm.swap(k, pi);
        if pj != k {
            for row in work.iter_mut() {
                row.swap(k, pj);
            }
            col_perm.swap(k, pj);
        }
        let (top, bottom) = work.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            if row[k].is_zero() {
                continue;
            }
            let factor = row[k].div(&pivot_row[k])?;
            for j in k + 1..n {
                if !pivot_row[j].is_zero() {
                    row[j] = row[j].sub(&factor.mul(&pivot_row[j]));
                }
            }
            // multiplier lives where the eliminated entry was
            row[k] = factor;
        }
        rank = k + 1;
    }
    let l = Matrix::from_fn(m, rank, |i, k| match i.cmp(&k) {
        Ordering::Less => Frac::zero(),
        Ordering::Equal => Frac::one(),
        Ordering::Greater => work[i][k].clone(),
    });
    let u = Matrix::from_fn(rank, n, |k, j| if j >= k { work[k][j].clone() } else { Frac::zero() });
    Ok(FractionLu {
        row_perm,
        l,
        u,
        col_perm,
        rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{Integer, QPoly};

    type M = Matrix<Integer>;

    fn m(rows: &[&[i64]]) -> M {
        M::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn pivot_selection_examples() {
        let a = m(&[&[4, -9], &[2, 6]]);
        assert_eq!(select_pivot(&a, PivotStrategy::SMALLEST), Ok((1, 0)));
        assert_eq!(select_pivot(&a, PivotStrategy::LARGEST), Ok((0, 1)));
        assert_eq!(select_pivot(&a, PivotStrategy::First), Ok((0, 0)));
        let b = m(&[&[12, 7], &[30, 7]]);
        assert_eq!(select_pivot(&b, PivotStrategy::Factors), Ok((0, 1)));
        assert_eq!(select_pivot(&M::zeros(2, 2), PivotStrategy::First), Err(AllZero));
        let c = m(&[&[0, 3], &[-3, 1]]);
        assert_eq!(select_pivot(&c, PivotStrategy::LARGEST), Ok((0, 1)));
        assert_eq!(select_pivot(&c, PivotStrategy::Factors), Ok((1, 1)));
    }

    #[test]
    fn polynomial_pivot_measures() {
        let a: Matrix<QPoly> = Matrix::parse_text("2 2 poly\nx^3+1 2*x\n100*x^2 -1\n").unwrap();
        assert_eq!(select_pivot(&a, PivotStrategy::Smallest(Measure::Degree)), Ok((1, 1)));
        assert_eq!(select_pivot(&a, PivotStrategy::Largest(Measure::Degree)), Ok((0, 0)));
        assert_eq!(select_pivot(&a, PivotStrategy::Largest(Measure::Height)), Ok((1, 0)));
        assert_eq!(select_pivot(&a, PivotStrategy::Smallest(Measure::Height)), Ok((0, 0)));
        assert!(matches!(decompose(&a, PivotStrategy::Factors), Err(LduError::UnsupportedStrategy(_))));
    }

    #[test]
    fn identity_decomposes_trivially() {
        for s in [PivotStrategy::First, PivotStrategy::SMALLEST, PivotStrategy::LARGEST, PivotStrategy::Factors] {
            let dec = decompose(&M::identity(4), s).unwrap();
            assert_eq!(dec.l(), &M::identity(4));
            assert_eq!(dec.u(), &M::identity(4));
            assert!(dec.d().iter().all(|d| d.is_one()));
            assert!(dec.row_perm().is_identity() && dec.col_perm().is_identity());
        }
    }

    #[test]
    fn rank_deficient_and_rectangular() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]]);
        let dec = decompose(&a, PivotStrategy::First).unwrap();
        assert_eq!(dec.rank(), 2);
        assert!(dec.reconstructs(&a));
        let zero_col = m(&[&[0, 1], &[0, 2]]);
        let dec = decompose(&zero_col, PivotStrategy::First).unwrap();
        assert_eq!(dec.rank(), 1);
        assert_eq!(dec.col_perm().image(), &[1, 0]);
        assert!(dec.reconstructs(&zero_col));
        let zero = M::zeros(2, 3);
        let dec = decompose(&zero, PivotStrategy::First).unwrap();
        assert_eq!(dec.rank(), 0);
        assert!(dec.reconstructs(&zero));
        assert!(matches!(decompose(&M::zeros(0, 2), PivotStrategy::First), Err(LduError::Empty(0, 2))));
    }

    #[test]
    fn d_holds_consecutive_pivot_products() {
        let a = m(&[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5]]);
        let dec = decompose(&a, PivotStrategy::First).unwrap();
        let p = dec.pivots();
        assert_eq!(dec.d()[0], p[0]);
        assert_eq!(dec.d()[1], p[0].mul(&p[1]));
        assert_eq!(dec.d()[2], p[1].mul(&p[2]));
        assert_eq!(p[2], a.determinant().unwrap());
    }

    #[test]
    fn json_round_trip() {
        let a = m(&[&[0, 2, 1], &[3, 1, 4], &[6, 2, 8]]);
        let dec = decompose(&a, PivotStrategy::SMALLEST).unwrap();
        let back = LduDecomposition::<Integer>::from_json(&dec.to_json()).unwrap();
        assert_eq!(back, dec);
        assert!(LduDecomposition::<QPoly>::from_json(&dec.to_json()).is_err());
    }

    #[test]
    fn fraction_baseline_small() {
        let a = m(&[&[2, 1], &[4, 1]]);
        let lu = fraction_gauss_baseline(&a).unwrap();
        assert_eq!(lu.l, m(&[&[1, 0], &[2, 1]]).to_frac());
        assert_eq!(lu.u, m(&[&[2, 1], &[0, -1]]).to_frac());
        let id = fraction_gauss_baseline(&M::identity(3)).unwrap();
        assert_eq!(id.l, M::identity(3).to_frac());
        assert_eq!(id.u, M::identity(3).to_frac());
        assert_eq!(id.rank, 3);
    }
}
