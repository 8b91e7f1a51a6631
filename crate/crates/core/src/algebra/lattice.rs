//! Integer classes in the Grothendieck group and ordered bases.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{Monomial, TruncatedPoly};
use super::ring::Rational;
use crate::error::{Error, Result};

/// Coefficients of a class in the basis of simple classes `[S_1], …, [S_n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(Vec<i64>);

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticeVector(coords)
    }

    pub fn zero(n: usize) -> Self {
        LatticeVector(vec![0; n])
    }

    /// The class `[S_{i+1}]` (0-based index).
    pub fn simple(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        LatticeVector(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// Sum of absolute values of the coordinates.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> u64 {
        self.0.iter().map(|a| a.unsigned_abs()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn positive_part(&self) -> Self {
        LatticeVector(self.0.iter().map(|&a| a.max(0)).collect())
    }

    pub fn negative_part(&self) -> Self {
        LatticeVector(self.0.iter().map(|&a| (-a).max(0)).collect())
    }

    /// Nonzero with all coordinates nonnegative.
    pub fn is_effective(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&a| a >= 0)
    }

    /// `±[S_k]` for some k.
    pub fn is_signed_simple(&self) -> bool {
        self.len() == 1
    }

    /// Indices with nonzero coordinate.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] != 0).collect()
    }

    /// The monomial with exponents `|a_i|` and coefficient one.
    pub fn monomial(&self) -> TruncatedPoly {
        let exps = self.0.iter().map(|a| a.unsigned_abs() as u32).collect();
        TruncatedPoly::term(Monomial::new(exps), Rational::one())
    }

    /// Comma-separated coordinates, the key format used in JSON tables.
    pub fn key(&self) -> String {
        self.0.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
    }

    pub fn parse_key(s: &str) -> Result<Self> {
        s.split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(LatticeVector)
            .map_err(|_| Error::Parse(format!("bad class key {s:?}")))
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.key())
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch");
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch");
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }
}

/// An ordered basis `α_1, …, α_n`, stored as the rows of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Basis {
    rows: Vec<LatticeVector>,
}

#[derive(Deserialize)]
struct BasisJson {
    rows: Vec<Vec<i64>>,
}

impl<'de> Deserialize<'de> for Basis {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = BasisJson::deserialize(d)?;
        Basis::from_rows(raw.rows).map_err(serde::de::Error::custom)
    }
}

impl Basis {
    pub fn new(rows: Vec<LatticeVector>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidBasis("empty basis".into()));
        }
        if let Some(r) = rows.iter().find(|r| r.rank() != n) {
            return Err(Error::InvalidBasis(format!("row {r} does not have rank {n}")));
        }
        let b = Basis { rows };
        if b.determinant().is_zero() {
            return Err(Error::InvalidBasis("rows are linearly dependent".into()));
        }
        Ok(b)
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        Self::new(rows.into_iter().map(LatticeVector).collect())
    }

    /// `α_i = Σ_{r ≥ i} [S_r]`.
    pub fn triangular(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| LatticeVector((0..n).map(|j| i64::from(j >= i)).collect()))
            .collect();
        Basis { rows }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[LatticeVector] {
        &self.rows
    }

    /// `α_{i+1}` (0-based index).
    pub fn row(&self, i: usize) -> &LatticeVector {
        &self.rows[i]
    }

    /// `α_i − α_j` (0-based indices).
    pub fn difference(&self, i: usize, j: usize) -> LatticeVector {
        &self.rows[i] - &self.rows[j]
    }

    /// Exact determinant by fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        let n = self.rows.len();
        let mut m: Vec<Vec<BigInt>> = self
            .rows
            .iter()
            .map(|r| r.0.iter().map(|&a| BigInt::from(a)).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }

    /// The inverse of the row matrix over the rationals, by Gauss-Jordan
    /// elimination.
    pub fn inverse(&self) -> Vec<Vec<Rational>> {
        let n = self.rows.len();
        let mut m: Vec<Vec<Rational>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row: Vec<Rational> =
                    r.0.iter().map(|&a| Rational::from_integer(BigInt::from(a))).collect();
                row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
                row
            })
            .collect();
        for k in 0..n {
            let piv = (k..n).find(|&r| !m[r][k].is_zero()).expect("basis is invertible");
            m.swap(k, piv);
            let inv = m[k][k].recip();
            for x in m[k].iter_mut() {
                *x *= &inv;
            }
            for r in 0..n {
                if r != k && !m[r][k].is_zero() {
                    let f = m[r][k].clone();
                    for c in 0..2 * n {
                        let v = &f * &m[k][c];
                        m[r][c] -= v;
                    }
                }
            }
        }
        m.into_iter().map(|r| r[n..].to_vec()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "rows": self.rows.iter().map(|r| r.0.clone()).collect::<Vec<_>>() })
    }
}
