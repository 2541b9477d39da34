#![allow(dead_code)]

use ffmatrix::{Integer, Matrix, QPoly};

pub type IntMatrix = Matrix<Integer>;
pub type PolyMatrix = Matrix<QPoly>;

pub fn int(v: i64) -> Integer {
    Integer::from(v)
}

pub fn big(s: &str) -> Integer {
    s.parse().expect("integer literal")
}

pub fn ints(v: &[i64]) -> Vec<Integer> {
    v.iter().map(|&x| int(x)).collect()
}

pub fn poly(s: &str) -> QPoly {
    s.parse().expect("polynomial literal")
}

pub fn qr_example() -> IntMatrix {
    Matrix::from_i64_rows(&[
        &[-62, 21, 64, -96],
        &[38, 18, 31, 56],
        &[-59, -86, 19, 2],
        &[40, -91, -62, 9],
    ])
    .unwrap()
}

pub fn ldu_example() -> IntMatrix {
    Matrix::from_i64_rows(&[
        &[0, -18, -92, -25, -60],
        &[49, -77, 66, 45, 8],
        &[18, 31, 69, -81, 51],
        &[-58, 41, 22, 37, -97],
        &[-77, -52, 48, -19, -10],
    ])
    .unwrap()
}

pub fn smith_example() -> PolyMatrix {
    let rows = [
        ["-3/2", "-x^3+5*x^2+3*x-9/2", "x^2+x", "1/2*x^3-x^2"],
        ["-3", "-2*x^3+10*x^2+5*x-9", "2*x^2+2*x", "x^3-2*x^2"],
        ["1/2", "x^3+3/2", "0", "-1/2*x^3"],
        ["-1/2", "-x-3/2", "0", "1/2*x"],
    ];
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|s| poly(s)).collect()).collect()).unwrap()
}

pub fn solver_example() -> IntMatrix {
    Matrix::from_i64_rows(&[
        &[-370, -62, -101, -3],
        &[-708, -120, -193, -5],
        &[-304, -50, -83, -3],
        &[-1962, -336, -534, -12],
    ])
    .unwrap()
}
