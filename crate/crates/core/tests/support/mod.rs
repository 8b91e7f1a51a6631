//! Strategies and property checks shared by the property and acceptance suites.

#![allow(dead_code, clippy::needless_range_loop)]

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use quiverstokes::algebra::{rational, Matrix, Monomial, PolyMatrix, RatMatrix, Ring, TruncatedPoly};
use quiverstokes::braid::{beta, beta_inv};
use quiverstokes::goodness::epsilon_solutions;
use quiverstokes::quiver::Quiver;
use quiverstokes::stokes::factor_product;

pub const CASES: u32 = 128;

pub fn config() -> Config {
    Config { cases: CASES, failure_persistence: None, ..Config::default() }
}

/// Upper unipotent integer matrix from its strictly upper entries, row by row.
pub fn unipotent(n: usize, upper: &[i64]) -> RatMatrix {
    let mut rows = vec![vec![0i64; n]; n];
    let mut it = upper.iter();
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = 1;
        for x in row.iter_mut().skip(i + 1) {
            *x = *it.next().unwrap();
        }
    }
    RatMatrix::from_i64_rows(&rows).unwrap()
}

/// Unipotent integer matrices of one fixed dimension.
pub fn unipotent_of(n: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(-4i64..=4, n * (n - 1) / 2).prop_map(move |v| unipotent(n, &v))
}

pub fn unipotent_strategy() -> impl Strategy<Value = RatMatrix> {
    (2usize..=6).prop_flat_map(unipotent_of)
}

fn chain(ops: &[usize], a: &RatMatrix) -> RatMatrix {
    ops.iter().fold(a.clone(), |m, &i| beta(i, &m).unwrap())
}

pub fn check_braid_relations(a: &RatMatrix) -> Result<(), TestCaseError> {
    let n = a.dim();
    for i in 1..n {
        for j in 1..n {
            if j == i + 1 {
                prop_assert_eq!(chain(&[i, j, i], a), chain(&[j, i, j], a));
            } else if i.abs_diff(j) >= 2 {
                prop_assert_eq!(chain(&[i, j], a), chain(&[j, i], a));
            }
        }
    }
    Ok(())
}

pub fn check_beta_round_trip(a: &RatMatrix) -> Result<(), TestCaseError> {
    for i in 1..a.dim() {
        let b = beta(i, a).unwrap();
        prop_assert!(b.is_upper_unipotent());
        prop_assert_eq!(&beta_inv(i, &b).unwrap(), a);
        prop_assert_eq!(&beta(i, &beta_inv(i, a).unwrap()).unwrap(), a);
    }
    Ok(())
}

/// One orientation and multiplicity per unordered pair.
pub fn quiver_strategy() -> impl Strategy<Value = Quiver> {
    (2usize..=6).prop_flat_map(|n| {
        prop::collection::vec(-3i32..=3, n * (n - 1) / 2).prop_map(move |v| {
            let mut arrows = vec![vec![0u32; n]; n];
            let mut it = v.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    let c = it.next().unwrap();
                    if c > 0 {
                        arrows[i][j] = c as u32;
                    } else {
                        arrows[j][i] = (-c) as u32;
                    }
                }
            }
            Quiver::new(arrows).unwrap()
        })
    })
}

fn loop_and_cycle_free(q: &Quiver) -> bool {
    let a = q.arrows();
    (0..q.n()).all(|i| a[i][i] == 0 && (0..q.n()).all(|j| a[i][j] == 0 || a[j][i] == 0))
}

pub fn check_mutation(q: &Quiver, k: usize) -> Result<(), TestCaseError> {
    let k = (k - 1) % q.n() + 1;
    let m = q.mutate(k).unwrap();
    prop_assert!(loop_and_cycle_free(&m));
    prop_assert_eq!(&m.mutate(k).unwrap(), q);
    // Arrows at k are exactly reversed.
    for j in 0..q.n() {
        prop_assert_eq!(m.count(k - 1, j), q.count(j, k - 1));
    }
    Ok(())
}

/// Every tensor returned for the full domain satisfies the triple identity,
/// and their number agrees with a brute-force count.
pub fn check_epsilon_tensors(max_n: usize) -> Result<usize, String> {
    let mut total = 0;
    for n in 2..=max_n {
        let domain: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let solutions = epsilon_solutions(n, &domain);
        for t in &solutions {
            let e = |i: usize, j: usize| i64::from(t.get(i, j).unwrap());
            for i in 0..n {
                for j in i + 1..n {
                    if e(i, j) != -e(j, i) {
                        return Err(format!("n = {n}: not antisymmetric at ({i}, {j})"));
                    }
                    for k in j + 1..n {
                        if 1 + e(i, j) * e(j, k) + e(j, i) * e(i, k) + e(i, k) * e(k, j) != 0 {
                            return Err(format!("n = {n}: identity fails at ({i}, {j}, {k})"));
                        }
                    }
                }
            }
        }
        let m = domain.len();
        let brute = (0u32..1 << m)
            .filter(|mask| {
                let s = |a: usize, b: usize| {
                    let (lo, hi, sg) = if a < b { (a, b, 1) } else { (b, a, -1) };
                    let t = domain.iter().position(|&p| p == (lo, hi)).unwrap();
                    sg * if mask >> t & 1 == 1 { 1 } else { -1 }
                };
                (0..n).all(|i| {
                    (i + 1..n).all(|j| {
                        (j + 1..n).all(|k| 1 + s(i, j) * s(j, k) + s(j, i) * s(i, k) + s(i, k) * s(k, j) == 0)
                    })
                })
            })
            .count();
        if brute != solutions.len() {
            return Err(format!("n = {n}: {} tensors, brute force finds {brute}", solutions.len()));
        }
        total += solutions.len();
    }
    Ok(total)
}

pub fn poly_strategy(nvars: usize) -> impl Strategy<Value = TruncatedPoly> {
    prop::collection::vec((prop::collection::vec(0u32..=3, nvars), -5i64..=5, 1i64..=3), 0..6).prop_map(
        move |terms| {
            terms.into_iter().fold(TruncatedPoly::zero(nvars), |acc, (e, num, den)| {
                acc.add_ref(&TruncatedPoly::term(Monomial::new(e), rational(num) / rational(den)))
            })
        },
    )
}

pub fn poly_pair_strategy() -> impl Strategy<Value = (TruncatedPoly, TruncatedPoly, u32)> {
    (1usize..=3).prop_flat_map(|k| (poly_strategy(k), poly_strategy(k), 1u32..=6))
}

pub fn check_truncation(a: &TruncatedPoly, b: &TruncatedPoly, p: u32) -> Result<(), TestCaseError> {
    let sum = a.add_ref(b).truncate(p);
    prop_assert_eq!(a.truncate(p).add_ref(&b.truncate(p)).truncate(p).exact(), sum.exact());
    let prod = a.mul_ref(b).truncate(p);
    prop_assert_eq!(a.truncate(p).mul_ref(&b.truncate(p)).truncate(p).exact(), prod.exact());
    let one = TruncatedPoly::one(a.nvars()).truncate(p);
    prop_assert_eq!(a.truncate(p).mul_ref(&one).exact(), a.truncate(p).exact());
    Ok(())
}

fn upper_positions(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

fn product(n: usize, nvars: usize, positions: &[(usize, usize)], coeffs: &[TruncatedPoly]) -> PolyMatrix {
    let mut t: PolyMatrix = Matrix::identity_like(n, &TruncatedPoly::zero(nvars));
    for (&(a, b), c) in positions.iter().zip(coeffs) {
        t = t.mul(&Matrix::elementary(n, a, b, c.clone())).unwrap();
    }
    t
}

pub fn coefficient_strategy() -> impl Strategy<Value = (usize, Vec<TruncatedPoly>, bool)> {
    (2usize..=5).prop_flat_map(|n| (Just(n), prop::collection::vec(poly_strategy(2), n * (n - 1) / 2), any::<bool>()))
}

/// Multiplying factors and solving for them again returns the coefficients.
pub fn check_factor_round_trip(n: usize, coeffs: &[TruncatedPoly], reverse: bool) -> Result<(), TestCaseError> {
    let mut positions = upper_positions(n);
    if reverse {
        positions.reverse();
    }
    let t = product(n, 2, &positions, coeffs);
    prop_assert!(t.is_upper_unipotent());
    prop_assert_eq!(factor_product(&t, &positions).unwrap(), coeffs.to_vec());
    Ok(())
}

pub fn upper_strategy() -> impl Strategy<Value = (usize, Vec<TruncatedPoly>)> {
    (2usize..=5).prop_flat_map(|n| (Just(n), prop::collection::vec(poly_strategy(3), n * (n - 1) / 2)))
}

/// Factoring a unipotent matrix and multiplying back returns the matrix.
pub fn check_matrix_round_trip(n: usize, upper: &[TruncatedPoly]) -> Result<(), TestCaseError> {
    let positions = upper_positions(n);
    let mut t: PolyMatrix = Matrix::identity_like(n, &TruncatedPoly::zero(3));
    for (&(i, j), c) in positions.iter().zip(upper) {
        t.set(i, j, c.clone());
    }
    let solved = factor_product(&t, &positions).unwrap();
    prop_assert_eq!(product(n, 3, &positions, &solved), t);
    Ok(())
}

/// Runs every suite with its own runner; one entry per suite.
pub fn run_all() -> Vec<(&'static str, Result<(), String>)> {
    fn go<S: Strategy>(s: S, f: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
        TestRunner::new(config()).run(&s, f).map_err(|e| e.to_string())
    }
    let mut out = Vec::new();
    let relations = (2..=6).try_for_each(|n| go(unipotent_of(n), |a| check_braid_relations(&a)));
    out.push(("(a) braid relations, dimensions 2-6", relations));
    out.push(("(b) beta round trips", go(unipotent_strategy(), |a| check_beta_round_trip(&a))));
    out.push(("(c) mutation involution", go((quiver_strategy(), 1usize..=6), |(q, k)| check_mutation(&q, k))));
    out.push(("(d) epsilon triple identity", check_epsilon_tensors(5).map(|_| ())));
    let factors = go(coefficient_strategy(), |(n, c, r)| check_factor_round_trip(n, &c, r))
        .and_then(|_| go(upper_strategy(), |(n, u)| check_matrix_round_trip(n, &u)));
    out.push(("(e) factorization round trips", factors));
    out.push(("(f) truncation homomorphism", go(poly_pair_strategy(), |(a, b, p)| check_truncation(&a, &b, p))));
    out
}
