//! Fraction-free LD⁻¹U and QR decompositions over the integers and `Q[x]`,
//! with tools for removing common row and column factors, a fraction-free
//! linear system solver, size metrics and a reproducible benchmark harness.

pub mod bench;
pub mod domain;
pub mod factors;
pub mod ldu;
pub mod matrix;
pub mod metrics;
pub mod qr;
pub mod solver;

pub use domain::{Domain, DomainError, DomainKind, Frac, Integer, Measure, QPoly};
pub use ldu::{decompose, LduDecomposition, PivotStrategy};
pub use matrix::{AnyMatrix, Matrix, MatrixError, Permutation};
