mod common;

use common::*;
use ffmatrix::bench::{gcd_probability_exact, gcd_probability_limit, predictor_nontrivial};
use ffmatrix::domain::{gcd_all, omega};
use ffmatrix::ldu::{decompose, PivotStrategy};
use ffmatrix::solver::{build_solver_kit, SolverKit};
use ffmatrix::{AnyMatrix, Domain, Frac, Integer, Matrix, QPoly};
use num_bigint::BigUint;
use proptest::prelude::*;

fn int_strategy() -> impl Strategy<Value = Integer> {
    (-10_000i64..=10_000).prop_map(Integer::from)
}

fn poly_strategy() -> impl Strategy<Value = QPoly> {
    (prop::collection::vec(-20i64..=20, 0..5), 1i64..=6).prop_map(|(c, d)| {
        QPoly::from_int_coeffs(c).mul(&QPoly::from_int_coeffs([1]).exact_div(&QPoly::from_i64(d)).unwrap())
    })
}

fn int_matrix(rows: std::ops::RangeInclusive<usize>, cols: std::ops::RangeInclusive<usize>, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (rows, cols).prop_flat_map(move |(m, n)| {
        prop::collection::vec(-bound..=bound, m * n).prop_map(move |v| Matrix::from_vec(m, n, v.into_iter().map(Integer::from).collect()).unwrap())
    })
}

fn poly_matrix(max: usize) -> impl Strategy<Value = PolyMatrix> {
    (1..=max, 1..=max).prop_flat_map(poly_matrix_of)
}

fn poly_matrix_of((m, n): (usize, usize)) -> impl Strategy<Value = PolyMatrix> {
    prop::collection::vec(prop::collection::vec(-5i64..=5, 0..3), m * n)
        .prop_map(move |v| Matrix::from_vec(m, n, v.into_iter().map(QPoly::from_int_coeffs).collect()).unwrap())
}

fn ring_axioms<T: Domain>(a: &T, b: &T, c: &T) -> Result<(), TestCaseError> {
    prop_assert_eq!(a.add(b), b.add(a));
    prop_assert_eq!(a.mul(b), b.mul(a));
    prop_assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
    prop_assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
    prop_assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
    prop_assert_eq!(a.sub(a), T::zero());
    prop_assert_eq!(a.mul(&T::one()), a.clone());
    if !b.is_zero() {
        prop_assert_eq!(a.mul(b).exact_div(b).unwrap(), a.clone());
    }
    let g = a.gcd(b);
    if !g.is_zero() {
        prop_assert!(a.exact_div(&g).is_ok());
        prop_assert!(b.exact_div(&g).is_ok());
        prop_assert_eq!(g.normalize(), g.clone());
    }
    Ok(())
}

/// Leibniz expansion over all permutations.
fn leibniz<T: Domain>(a: &Matrix<T>) -> T {
    fn go<T: Domain>(a: &Matrix<T>, row: usize, used: &mut Vec<bool>, sign: bool, acc: T, out: &mut T) {
        let n = a.rows();
        if row == n {
            *out = if sign { out.sub(&acc) } else { out.add(&acc) };
            return;
        }
        // parity of a permutation built left to right: count used columns to the right
        for j in 0..n {
            if used[j] {
                continue;
            }
            let inversions = used[j + 1..].iter().filter(|&&u| u).count();
            used[j] = true;
            go(a, row + 1, used, sign ^ (inversions % 2 == 1), acc.mul(a.get(row, j)), out);
            used[j] = false;
        }
    }
    let mut out = T::zero();
    go(a, 0, &mut vec![false; a.rows()], false, T::one(), &mut out);
    out
}

fn minor_of<T: Domain>(p: &Matrix<T>, rows: Vec<usize>, cols: Vec<usize>) -> T {
    p.submatrix(&rows, &cols).determinant().unwrap()
}

/// U and L entries equal minors of the pivoted matrix.
fn check_minors<T: Domain>(a: &Matrix<T>, s: PivotStrategy) -> Result<(), TestCaseError> {
    let dec = decompose(a, s).unwrap();
    let p = a.permuted(dec.row_perm(), dec.col_perm()).unwrap();
    let (m, n) = (a.rows(), a.cols());
    for k in 0..dec.rank() {
        for j in k..n {
            let cols: Vec<usize> = (0..k).chain([j]).collect();
            prop_assert_eq!(dec.u().get(k, j), &minor_of(&p, (0..=k).collect(), cols), "U[{}][{}]", k, j);
        }
        for i in k..m {
            let rows: Vec<usize> = (0..k).chain([i]).collect();
            prop_assert_eq!(dec.l().get(i, k), &minor_of(&p, rows, (0..=k).collect()), "L[{}][{}]", i, k);
        }
    }
    Ok(())
}

fn frac_mul_vec<T: Domain>(a: &Matrix<T>, x: &[Frac<T>]) -> Vec<Frac<T>> {
    (0..a.rows())
        .map(|i| (0..a.cols()).fold(Frac::zero(), |acc, j| acc.add(&x[j].mul_elem(a.get(i, j)))))
        .collect()
}

fn check_solve<T: Domain>(a: &Matrix<T>, b: &[T]) -> Result<(), TestCaseError> {
    let kit = build_solver_kit(a).unwrap();
    let rank = decompose(a, PivotStrategy::First).unwrap().rank();
    let aug = a.hcat(&Matrix::column_vector(b)).unwrap();
    let aug_rank = decompose(&aug, PivotStrategy::First).unwrap().rank();
    let res = kit.solve(b).unwrap();
    prop_assert_eq!(res.compatible, rank == aug_rank);
    prop_assert_eq!(res.nullspace.cols(), a.cols() - rank);
    for j in 0..res.nullspace.cols() {
        let v = res.nullspace.column(j);
        prop_assert!(frac_mul_vec(a, &v).iter().all(Frac::is_zero));
    }
    if let Some(x) = &res.particular {
        let bf: Vec<Frac<T>> = b.iter().cloned().map(Frac::from_elem).collect();
        prop_assert_eq!(frac_mul_vec(a, x), bf);
    } else {
        prop_assert!(!res.compatible);
    }
    let reloaded = SolverKit::<T>::from_json(&kit.to_json()).unwrap();
    prop_assert_eq!(&reloaded, &kit);
    prop_assert_eq!(reloaded.solve(b).unwrap(), res);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn integer_ring_axioms(a in int_strategy(), b in int_strategy(), c in int_strategy()) {
        ring_axioms(&a, &b, &c)?;
    }

    #[test]
    fn polynomial_ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        ring_axioms(&a, &b, &c)?;
    }

    #[test]
    fn parse_print_round_trip(a in poly_strategy(), n in int_strategy()) {
        prop_assert_eq!(a.to_string().parse::<QPoly>().unwrap(), a);
        prop_assert_eq!(n.to_string().parse::<Integer>().unwrap(), n);
    }

    #[test]
    fn matrix_text_round_trip(a in int_matrix(1..=4, 1..=4, 1000), p in poly_matrix(3)) {
        let back = AnyMatrix::parse_text(&a.to_text()).unwrap();
        prop_assert!(matches!(&back, AnyMatrix::Int(b) if b == &a));
        let back = AnyMatrix::parse_text(&p.to_text()).unwrap();
        prop_assert!(matches!(&back, AnyMatrix::Poly(q) if q == &p));
    }

    #[test]
    fn determinant_matches_leibniz(a in (1usize..=5).prop_flat_map(|n| int_matrix(n..=n, n..=n, 50))) {
        prop_assert_eq!(a.determinant().unwrap(), leibniz(&a));
    }

    #[test]
    fn polynomial_determinant_matches_leibniz(a in (1usize..=3).prop_flat_map(|n| poly_matrix_of((n, n)))) {
        prop_assert_eq!(a.determinant().unwrap(), leibniz(&a));
    }

    #[test]
    fn ldu_entries_are_minors(a in int_matrix(1..=5, 1..=5, 20), s in 0usize..4) {
        let strategies = [PivotStrategy::First, PivotStrategy::SMALLEST, PivotStrategy::LARGEST, PivotStrategy::Factors];
        check_minors(&a, strategies[s])?;
    }

    #[test]
    fn polynomial_ldu_entries_are_minors(a in poly_matrix(3)) {
        check_minors(&a, PivotStrategy::SMALLEST)?;
    }

    #[test]
    fn solver_agrees_with_rank_oracle(a in int_matrix(1..=4, 1..=5, 6), seed in 0i64..1000, consistent in any::<bool>()) {
        let b: Vec<Integer> = if consistent {
            let x: Vec<Integer> = (0..a.cols() as i64).map(|j| Integer::from((seed + 7 * j) % 11 - 5)).collect();
            a.mul_vec(&x).unwrap()
        } else {
            (0..a.rows() as i64).map(|i| Integer::from((seed * (i + 3)) % 13 - 6)).collect()
        };
        check_solve(&a, &b)?;
    }

    #[test]
    fn rank_deficient_solver(left in int_matrix(2..=4, 1..=2, 5), seed in 0i64..1000) {
        let r = left.cols();
        let right = Matrix::from_fn(r, 4, |i, j| Integer::from((seed + 3 * i as i64 + 5 * j as i64) % 7 - 3));
        let a = left.mul(&right).unwrap();
        let b: Vec<Integer> = (0..a.rows() as i64).map(|i| Integer::from((seed + i) % 5)).collect();
        check_solve(&a, &b)?;
        check_solve(&a, &a.column(0))?;
    }

    #[test]
    fn polynomial_solver(a in poly_matrix(3), consistent in any::<bool>()) {
        let b: Vec<QPoly> = if consistent {
            a.column(a.cols() - 1)
        } else {
            (0..a.rows()).map(|i| QPoly::from_int_coeffs([1, i as i64])).collect()
        };
        check_solve(&a, &b)?;
    }

    #[test]
    fn row_gcd_divides_every_entry(a in int_matrix(1..=4, 1..=4, 100)) {
        for i in 0..a.rows() {
            let g = gcd_all(a.row(i));
            if !g.is_zero() {
                prop_assert!(a.row(i).iter().all(|x| x.exact_div(&g).is_ok()));
            }
        }
    }

    #[test]
    fn omega_is_additive(x in 1u64..100_000, y in 1u64..100_000) {
        let o = |v: u64| omega(&BigUint::from(v)).unwrap();
        prop_assert_eq!(o(x * y), o(x) + o(y));
    }
}

#[test]
fn gcd_probability_enumeration() {
    let range = 100u64;
    let mut hits = 0u64;
    for a in 1..=range {
        for b in 1..=range {
            for p in 1..=range {
                hits += u64::from(predictor_nontrivial(a, b, p));
            }
        }
    }
    let brute = hits as f64 / (range as f64).powi(3);
    assert_eq!(gcd_probability_exact(range), brute);
    assert!((brute - gcd_probability_limit()).abs() < 0.02, "{brute}");
}

#[test]
fn omega_of_known_values() {
    let cases: [(&str, u32); 5] = [("1", 0), ("12", 3), ("1024", 10), ("18446744073709551557", 1), ("4951775010116142595269584002957891", 3)];
    for (n, k) in cases {
        assert_eq!(omega(&n.parse().unwrap()).unwrap(), k, "{n}");
    }
}

#[test]
fn all_strategies_share_rank_and_determinant() {
    let a = ldu_example();
    let det = a.determinant().unwrap();
    for s in [PivotStrategy::First, PivotStrategy::SMALLEST, PivotStrategy::LARGEST, PivotStrategy::Factors] {
        let dec = decompose(&a, s).unwrap();
        let last = dec.u().get(4, 4).clone();
        let sign = dec.row_perm().sign() * dec.col_perm().sign();
        assert_eq!(if sign < 0 { last.neg() } else { last }, det, "{s}");
    }
}
