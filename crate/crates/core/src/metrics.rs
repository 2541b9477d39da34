//! Size measurements of matrices and decompositions: digits, terms, height
//! and the number of prime factors in the row gcds.

use num_bigint::BigUint;

use crate::domain::{gcd_all, Domain, DomainError, Frac, Measurable};
use crate::ldu::{FractionLu, LduDecomposition};
use crate::matrix::Matrix;
use crate::qr::QrDecomposition;

/// Which rows contribute to the row-factor count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorCount {
    Skip,
    AllRows,
    /// The last row of `U` holds only the determinant.
    ExcludeLastRow,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixMetrics<T> {
    pub total_digits: u64,
    pub total_terms: u64,
    pub max_height: BigUint,
    /// Σ Ω(gcd(row)); `None` when not requested.
    pub row_factor_count: Option<u64>,
    pub per_row_gcds: Vec<T>,
}

/// Sums of entry sizes, without gcds.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SizeTotals {
    pub digits: u64,
    pub terms: u64,
    pub max_height: BigUint,
}

impl SizeTotals {
    pub fn of<'a, E: Measurable + 'a>(items: impl IntoIterator<Item = &'a E>) -> Self {
        let mut t = SizeTotals::default();
        for x in items {
            t.add_entry(x);
        }
        t
    }

    fn add_entry<E: Measurable>(&mut self, x: &E) {
        self.digits += x.digits();
        self.terms += x.terms();
        let h = x.height();
        if h > self.max_height {
            self.max_height = h;
        }
    }

    pub fn combine(mut self, other: &SizeTotals) -> Self {
        self.digits += other.digits;
        self.terms += other.terms;
        if other.max_height > self.max_height {
            self.max_height = other.max_height.clone();
        }
        self
    }
}

pub fn measure<T: Domain>(m: &Matrix<T>, factors: FactorCount) -> Result<MatrixMetrics<T>, DomainError> {
    let totals = SizeTotals::of(m.entries());
    let per_row_gcds: Vec<T> = (0..m.rows()).map(|i| gcd_all(m.row(i))).collect();
    let counted = match factors {
        FactorCount::Skip => 0,
        FactorCount::AllRows => per_row_gcds.len(),
        FactorCount::ExcludeLastRow => per_row_gcds.len().saturating_sub(1),
    };
    let row_factor_count = if factors == FactorCount::Skip {
        None
    } else {
        let mut total = 0u64;
        for g in &per_row_gcds[..counted] {
            // a zero row has no meaningful factor count
            if g.is_zero() {
                continue;
            }
            total += u64::from(g.size_metrics(true)?.prime_factor_count.unwrap_or(0));
        }
        Some(total)
    };
    Ok(MatrixMetrics {
        total_digits: totals.digits,
        total_terms: totals.terms,
        max_height: totals.max_height,
        row_factor_count,
        per_row_gcds,
    })
}

/// Anything made of matrices and vectors whose total size can be measured.
pub trait MeasureOutput {
    /// Size of each part, in a fixed order.
    fn parts(&self) -> Vec<(&'static str, SizeTotals)>;

    fn totals(&self) -> SizeTotals {
        self.parts().iter().fold(SizeTotals::default(), |acc, (_, t)| acc.combine(t))
    }
}

impl<T: Domain> MeasureOutput for LduDecomposition<T> {
    fn parts(&self) -> Vec<(&'static str, SizeTotals)> {
        vec![
            ("L", SizeTotals::of(self.l().entries())),
            ("D", SizeTotals::of(self.d())),
            ("U", SizeTotals::of(self.u().entries())),
        ]
    }
}

impl<T: Domain> MeasureOutput for QrDecomposition<T> {
    fn parts(&self) -> Vec<(&'static str, SizeTotals)> {
        vec![
            ("Theta", SizeTotals::of(self.theta.entries())),
            ("D", SizeTotals::of(&self.d)),
            ("R", SizeTotals::of(self.r.entries())),
        ]
    }
}

impl<T: Domain> MeasureOutput for FractionLu<T> {
    fn parts(&self) -> Vec<(&'static str, SizeTotals)> {
        vec![
            ("L", SizeTotals::of::<Frac<T>>(self.l.entries())),
            ("U", SizeTotals::of::<Frac<T>>(self.u.entries())),
        ]
    }
}

pub fn measure_decomposition<D: MeasureOutput>(dec: &D) -> SizeTotals {
    dec.totals()
}

fn lower_digits<E: Measurable + Clone>(m: &Matrix<E>) -> u64 {
    let cols = m.cols();
    (0..m.rows())
        .flat_map(|i| (0..cols.min(i + 1)).map(move |j| (i, j)))
        .map(|(i, j)| m.get(i, j).digits())
        .sum()
}

fn upper_digits<E: Measurable + Clone>(m: &Matrix<E>) -> u64 {
    (0..m.rows())
        .flat_map(|i| (i..m.cols()).map(move |j| (i, j)))
        .map(|(i, j)| m.get(i, j).digits())
        .sum()
}

/// Digits of the triangular parts of `L` and `U`. `D` is left out since
/// it is determined by the pivots on the diagonal of `L`.
pub fn ldu_output_digits<T: Domain>(dec: &LduDecomposition<T>) -> u64 {
    lower_digits(dec.l()) + upper_digits(dec.u())
}

/// Digits of the triangular parts of the fraction baseline, unit diagonal
/// of `L` included.
pub fn baseline_output_digits<T: Domain>(lu: &FractionLu<T>) -> u64 {
    lower_digits(&lu.l) + upper_digits(&lu.u)
}
