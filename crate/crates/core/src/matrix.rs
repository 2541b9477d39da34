//! Dense matrices over a [`Domain`], permutations, and the matrix file format.

use std::fmt;

use thiserror::Error;

use crate::domain::{Domain, DomainError, DomainKind, Frac, Integer, QPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index ({row}, {col}) out of range for a {rows}x{cols} matrix")]
    IndexOutOfRange { row: usize, col: usize, rows: usize, cols: usize },
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("expected a {expected} matrix, found {found}")]
    DomainMismatch { expected: DomainKind, found: DomainKind },
    #[error("malformed matrix text: {0}")]
    Format(String),
    #[error(transparent)]
    Domain(#[from] DomainError),
}

/// Immutable row-major matrix.
///
/// Zero rows or columns are allowed; they occur as degenerate blocks (an
/// empty compatibility matrix, an empty nullspace basis).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, MatrixError> {
        if data.len() != rows * cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds from row vectors, which must all have the same length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, MatrixError> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(MatrixError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: m,
            cols: n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// `[self | other]`.
    pub fn hcat(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.rows != other.rows {
            return Err(MatrixError::DimensionMismatch(format!(
                "cannot join {} rows with {} rows",
                self.rows, other.rows
            )));
        }
        Ok(Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    /// The matrix with entry `(i, j)` taken from `(rows[i], cols[j])`.
    pub fn permuted(&self, rows: &Permutation, cols: &Permutation) -> Result<Self, MatrixError> {
        if rows.len() != self.rows || cols.len() != self.cols {
            return Err(MatrixError::DimensionMismatch("permutation size".into()));
        }
        Ok(self.submatrix(rows.image(), cols.image()))
    }
}

impl<T: Domain> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diagonal(d: &[T]) -> Self {
        let n = d.len();
        Matrix::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { T::zero() })
    }

    pub fn column_vector(v: &[T]) -> Self {
        Matrix::from_fn(v.len(), 1, |i, _| v[i].clone())
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, MatrixError> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| T::from_i64(v)).collect()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Domain::is_zero)
    }

    /// Exact product `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = other.get(k, j);
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
            acc
        }))
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>, MatrixError> {
        if self.cols != v.len() {
            return Err(MatrixError::DimensionMismatch(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(T::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect())
    }

    pub fn to_frac(&self) -> Matrix<Frac<T>> {
        self.map(|v| Frac::from_elem(v.clone()))
    }

    /// Determinant by fraction-free elimination, tracking swap signs.
    pub fn determinant(&self) -> Result<T, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::DimensionMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut a = self.to_rows();
        let mut negate = false;
        let mut prev = T::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(T::zero());
            };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = T::cross_div(&a[k][k], &a[i][j], &a[i][k], &a[k][j], &prev)?;
                }
                a[i][k] = T::zero();
            }
            prev = a[k][k].clone();
        }
        Ok(if negate { prev.neg() } else { prev })
    }

    /// Determinant of the matrix with row `i` and column `j` removed.
    pub fn minor(&self, i: usize, j: usize) -> Result<T, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::DimensionMismatch("minor of a non-square matrix".into()));
        }
        if i >= self.rows || j >= self.cols {
            return Err(MatrixError::IndexOutOfRange {
                row: i,
                col: j,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let rows: Vec<usize> = (0..self.rows).filter(|&r| r != i).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&c| c != j).collect();
        self.submatrix(&rows, &cols).determinant()
    }

    /// Writes the matrix file format: a `m n domain` header line followed by
    /// one line per row of space-separated entries.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.rows, self.cols, T::KIND);
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self, MatrixError> {
        let (rows, cols, kind, body) = parse_header(text)?;
        if kind != T::KIND {
            return Err(MatrixError::DomainMismatch {
                expected: T::KIND,
                found: kind,
            });
        }
        parse_body(rows, cols, body)
    }
}

impl<T: Domain> Matrix<Frac<T>> {
    pub fn mul_frac(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch("fraction product".into()));
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(Frac::zero(), |acc, k| {
                let a = self.get(i, k);
                let b = other.get(k, j);
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    acc.add(&a.mul(b))
                }
            })
        }))
    }
}

fn parse_header(text: &str) -> Result<(usize, usize, DomainKind, std::str::Lines<'_>), MatrixError> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| MatrixError::Format("missing header".into()))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    let [m, n, kind] = parts[..] else {
        return Err(MatrixError::Format(format!("bad header {header:?}")));
    };
    let m = m
        .parse()
        .map_err(|_| MatrixError::Format(format!("bad row count {m:?}")))?;
    let n = n
        .parse()
        .map_err(|_| MatrixError::Format(format!("bad column count {n:?}")))?;
    Ok((m, n, kind.parse()?, lines))
}

fn parse_body<'a, T: Domain>(rows: usize, cols: usize, lines: impl Iterator<Item = &'a str>) -> Result<Matrix<T>, MatrixError> {
    let mut data = Vec::with_capacity(rows * cols);
    let mut seen = 0;
    for line in lines {
        if line.trim().is_empty() {
            continue;
        }
        seen += 1;
        if seen > rows || cols == 0 {
            return Err(MatrixError::Format("too many rows".into()));
        }
        let before = data.len();
        for tok in line.split_whitespace() {
            data.push(tok.parse::<T>()?);
        }
        if data.len() - before != cols {
            return Err(MatrixError::Format(format!(
                "row {seen} has {} entries, expected {cols}",
                data.len() - before
            )));
        }
    }
    // rows of a zero-column matrix are blank lines
    if seen != rows && cols > 0 {
        return Err(MatrixError::Format(format!("expected {rows} rows, found {seen}")));
    }
    Matrix::from_vec(rows, cols, data)
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.data[i * self.cols..(i + 1) * self.cols].iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}", self.rows, self.cols)?;
        f.debug_list()
            .entries((0..self.rows).map(|i| &self.data[i * self.cols..(i + 1) * self.cols]))
            .finish()
    }
}

/// A matrix read from a file whose domain is only known at runtime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyMatrix {
    Int(Matrix<Integer>),
    Poly(Matrix<QPoly>),
}

impl AnyMatrix {
    pub fn parse_text(text: &str) -> Result<Self, MatrixError> {
        let (rows, cols, kind, body) = parse_header(text)?;
        Ok(match kind {
            DomainKind::Int => AnyMatrix::Int(parse_body(rows, cols, body)?),
            DomainKind::Poly => AnyMatrix::Poly(parse_body(rows, cols, body)?),
        })
    }

    pub fn kind(&self) -> DomainKind {
        match self {
            AnyMatrix::Int(_) => DomainKind::Int,
            AnyMatrix::Poly(_) => DomainKind::Poly,
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            AnyMatrix::Int(m) => m.to_text(),
            AnyMatrix::Poly(m) => m.to_text(),
        }
    }
}

/// Permutation of `0..n`, stored as its image: position `i` holds `image[i]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    image: Vec<usize>,
    negative: bool,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
            negative: false,
        }
    }

    pub fn from_image(image: Vec<usize>) -> Result<Self, MatrixError> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v >= n || seen[v] {
                return Err(MatrixError::NotAPermutation(image));
            }
            seen[v] = true;
        }
        // parity from the cycle decomposition
        let mut visited = vec![false; n];
        let mut transpositions = 0;
        for start in 0..n {
            let mut len = 0;
            let mut i = start;
            while !visited[i] {
                visited[i] = true;
                i = image[i];
                len += 1;
            }
            if len > 0 {
                transpositions += len - 1;
            }
        }
        Ok(Permutation {
            image,
            negative: transpositions % 2 == 1,
        })
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// +1 or -1.
    pub fn sign(&self) -> i64 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub(crate) fn swap(&mut self, i: usize, j: usize) {
        if i != j {
            self.image.swap(i, j);
            self.negative = !self.negative;
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.image.len()];
        for (i, &v) in self.image.iter().enumerate() {
            inv[v] = i;
        }
        Permutation {
            image: inv,
            negative: self.negative,
        }
    }

    /// `out[i] = items[image[i]]`.
    pub fn gather<T: Clone>(&self, items: &[T]) -> Vec<T> {
        self.image.iter().map(|&k| items[k].clone()).collect()
    }

    /// `out[image[i]] = items[i]`; the inverse of [`Permutation::gather`].
    pub fn scatter<T: Clone>(&self, items: &[T]) -> Vec<T> {
        let mut out: Vec<Option<T>> = vec![None; items.len()];
        for (i, &k) in self.image.iter().enumerate() {
            out[k] = Some(items[i].clone());
        }
        out.into_iter().map(|v| v.expect("bijection")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = Matrix<Integer>;

    fn m(rows: &[&[i64]]) -> M {
        M::from_i64_rows(rows).unwrap()
    }

    pub(crate) fn example_qr_matrix() -> M {
        m(&[&[-62, 21, 64, -96], &[38, 18, 31, 56], &[-59, -86, 19, 2], &[40, -91, -62, 9]])
    }

    #[test]
    fn products() {
        let a = example_qr_matrix();
        assert_eq!(M::identity(4).mul(&a).unwrap(), a);
        assert_eq!(m(&[&[2]]).mul(&m(&[&[3]])).unwrap(), m(&[&[6]]));
        assert!(matches!(a.mul(&m(&[&[1, 2]])), Err(MatrixError::DimensionMismatch(_))));
    }

    #[test]
    fn determinants_and_minors() {
        let a = example_qr_matrix();
        assert_eq!(a.determinant().unwrap(), Integer::from(47777897));
        assert_eq!(M::identity(5).determinant().unwrap(), Integer::from(1));
        assert_eq!(M::identity(3).minor(0, 0).unwrap(), Integer::from(1));
        assert_eq!(m(&[&[1, 2], &[3, 4]]).minor(0, 0).unwrap(), Integer::from(4));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).determinant().unwrap(), Integer::from(0));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant().unwrap(), Integer::from(-1));
        assert!(matches!(a.minor(4, 0), Err(MatrixError::IndexOutOfRange { .. })));
        // last entry of the fraction-free Q factor equals minor * det
        let t44 = a.minor(3, 3).unwrap().mul(&a.determinant().unwrap());
        assert_eq!(t44, Integer::from(-18215371009147));
    }

    #[test]
    fn text_format() {
        let a = example_qr_matrix();
        let text = a.to_text();
        assert!(text.starts_with("4 4 int\n-62 21 64 -96\n"));
        assert_eq!(M::parse_text(&text).unwrap(), a);
        let p: Matrix<QPoly> = Matrix::parse_text("1 2 poly\n-3/2*x^3+5*x^2-1/2 x\n").unwrap();
        assert_eq!(p.to_text(), "1 2 poly\n-3/2*x^3+5*x^2-1/2 x\n");
        assert!(matches!(M::parse_text("1 2 poly\nx 1\n"), Err(MatrixError::DomainMismatch { .. })));
        assert!(M::parse_text("2 2 int\n1 2\n").is_err());
        assert!(M::parse_text("1 2 int\n1 2 3\n").is_err());
        let empty = M::zeros(0, 3);
        assert_eq!(M::parse_text(&empty.to_text()).unwrap(), empty);
        assert!(matches!(AnyMatrix::parse_text("1 1 poly\nx\n").unwrap(), AnyMatrix::Poly(_)));
    }

    #[test]
    fn permutation_sign_and_inverse() {
        let p = Permutation::from_image(vec![1, 2, 0]).unwrap();
        assert_eq!(p.sign(), 1);
        let q = Permutation::from_image(vec![3, 1, 2, 0]).unwrap();
        assert_eq!(q.sign(), -1);
        assert_eq!(p.inverse().gather(&p.gather(&[10, 20, 30])), vec![10, 20, 30]);
        assert_eq!(p.scatter(&p.gather(&[1, 2, 3])), vec![1, 2, 3]);
        assert!(Permutation::from_image(vec![0, 0]).is_err());
    }
}
