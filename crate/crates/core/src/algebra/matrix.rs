//! Square matrices over a [`Ring`], with the unipotent operations used for
//! Stokes matrices.

use serde_json::{json, Value};

use super::poly::TruncatedPoly;
use super::ring::{format_rational, parse_rational, Rational, Ring};
use crate::error::{Error, Result};

/// A dense square matrix, row-major. Indices are 0-based.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

/// Matrices of truncated polynomials in `s_1, …, s_n`.
pub type PolyMatrix = Matrix<TruncatedPoly>;

/// Matrices of exact rationals.
pub type RatMatrix = Matrix<Rational>;

impl<T: Ring> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::Dimension { left: n, right: r.len() });
        }
        Ok(Matrix { n, data: rows.into_iter().flatten().collect() })
    }

    /// The identity built from a template element (which fixes variable count
    /// and truncation for polynomial entries).
    pub fn identity_like(n: usize, template: &T) -> Self {
        let zero = template.zero_like();
        let one = template.one_like();
        let mut data = vec![zero; n * n];
        for i in 0..n {
            data[i * n + i] = one.clone();
        }
        Matrix { n, data }
    }

    /// `I + c·E_{ij}` (0-based indices).
    pub fn elementary(n: usize, i: usize, j: usize, c: T) -> Self {
        let mut m = Self::identity_like(n, &c);
        let v = m.get(i, j).add_ref(&c);
        m.set(i, j, v);
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix { n: self.n, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U, F: Fn(&T) -> Result<U>>(&self, f: F) -> Result<Matrix<U>> {
        Ok(Matrix { n: self.n, data: self.data.iter().map(f).collect::<Result<_>>()? })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Dimension { left: self.n, right: other.n });
        }
        let n = self.n;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.get(i, 0).zero_like();
                for k in 0..n {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if a.is_zero_elem() || b.is_zero_elem() {
                        continue;
                    }
                    acc = acc.add_ref(&a.mul_ref(b));
                }
                data.push(acc);
            }
        }
        Ok(Matrix { n, data })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Dimension { left: self.n, right: other.n });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add_ref(b)).collect();
        Ok(Matrix { n: self.n, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Dimension { left: self.n, right: other.n });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.sub_ref(b)).collect();
        Ok(Matrix { n: self.n, data })
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(self.get(j, i).clone());
            }
        }
        Matrix { n, data }
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let v = self.get(i, j);
                if i == j {
                    v.is_one_elem()
                } else {
                    v.is_zero_elem()
                }
            })
        })
    }

    /// Unit diagonal and zero below the diagonal.
    pub fn is_upper_unipotent(&self) -> bool {
        (0..self.n).all(|i| {
            self.get(i, i).is_one_elem() && (0..i).all(|j| self.get(i, j).is_zero_elem())
        })
    }

    /// Unit diagonal, and entry `(a, b)` vanishes whenever `a` comes after `b`
    /// in `order` (a list of 0-based indices).
    pub fn is_unipotent_wrt(&self, order: &[usize]) -> bool {
        if order.len() != self.n {
            return false;
        }
        let mut pos = vec![usize::MAX; self.n];
        for (p, &v) in order.iter().enumerate() {
            if v >= self.n || pos[v] != usize::MAX {
                return false;
            }
            pos[v] = p;
        }
        (0..self.n).all(|a| {
            self.get(a, a).is_one_elem()
                && (0..self.n).all(|b| a == b || pos[a] < pos[b] || self.get(a, b).is_zero_elem())
        })
    }

    /// Inverse of a unipotent matrix through the finite Neumann series
    /// `Σ (−N)^k` with `N = A − I` nilpotent.
    pub fn inverse_unipotent(&self) -> Result<Self> {
        let n = self.n;
        if n == 0 {
            return Ok(self.clone());
        }
        let id = Self::identity_like(n, self.get(0, 0));
        let neg_n = id.sub(self)?;
        let mut term = id.clone();
        let mut sum = id.clone();
        for _ in 1..n {
            term = term.mul(&neg_n)?;
            sum = sum.add(&term)?;
        }
        if !term.mul(&neg_n)?.data.iter().all(Ring::is_zero_elem) {
            return Err(Error::NotUnipotent("off-diagonal part is not nilpotent".into()));
        }
        Ok(sum)
    }

    /// Nonzero off-diagonal positions as (row, column) pairs.
    pub fn support(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j && !self.get(i, j).is_zero_elem() {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

impl PolyMatrix {
    /// The identity with `nvars` variables and an optional truncation bound.
    pub fn identity(n: usize, nvars: usize, bound: Option<u32>) -> Self {
        let one = match bound {
            Some(p) => TruncatedPoly::one(nvars).truncate(p),
            None => TruncatedPoly::one(nvars),
        };
        Self::identity_like(n, &one)
    }

    pub fn nvars(&self) -> usize {
        self.data.first().map_or(0, TruncatedPoly::nvars)
    }

    pub fn truncate(&self, p: u32) -> Self {
        self.map(|e| e.truncate(p))
    }

    pub fn exact(&self) -> Self {
        self.map(TruncatedPoly::exact)
    }

    /// Substitutes a rational point into every entry.
    pub fn evaluate(&self, point: &[Rational]) -> Result<RatMatrix> {
        self.try_map(|e| e.evaluate(point))
    }

    /// Evaluation at `s = (1, …, 1)`.
    pub fn evaluate_joyce(&self) -> Result<RatMatrix> {
        let point = vec![Rational::from_integer(1.into()); self.nvars()];
        self.evaluate(&point)
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .data
            .chunks(self.n)
            .map(|r| Value::Array(r.iter().map(TruncatedPoly::to_json).collect()))
            .collect();
        json!({ "n": self.n, "entries": rows })
    }

    pub fn from_json(v: &Value, nvars: usize) -> Result<Self> {
        let rows = json_rows(v)?;
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|e| TruncatedPoly::from_json(e, nvars)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        Self::from_rows(rows)
    }

    /// Parses rows of polynomial strings such as `[["1","-s1"],["0","1"]]`.
    pub fn parse_rows(rows: &[Vec<String>], nvars: usize) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|e| TruncatedPoly::parse(e, nvars)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        Self::from_rows(rows)
    }

    /// Rows of polynomial strings, the layout used for text output.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.rows().iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect()
    }
}

impl RatMatrix {
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .data
            .chunks(self.n)
            .map(|r| Value::Array(r.iter().map(|q| Value::String(format_rational(q))).collect()))
            .collect();
        json!({ "n": self.n, "entries": rows })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let rows = json_rows(v)?;
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| match e {
                        Value::String(s) => parse_rational(s),
                        Value::Number(n) => parse_rational(&n.to_string()),
                        _ => Err(Error::Parse("matrix entry must be a string or integer".into())),
                    })
                    .collect()
            })
            .collect::<Result<Vec<Vec<_>>>>()?;
        Self::from_rows(rows)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.rows().iter().map(|r| r.iter().map(format_rational).collect()).collect()
    }
}

fn json_rows(v: &Value) -> Result<Vec<Vec<Value>>> {
    let entries = v
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("matrix needs an \"entries\" array".into()))?;
    let rows: Vec<Vec<Value>> = entries
        .iter()
        .map(|r| r.as_array().cloned().ok_or_else(|| Error::Parse("row must be an array".into())))
        .collect::<Result<_>>()?;
    if let Some(n) = v.get("n").and_then(Value::as_u64) {
        if n as usize != rows.len() {
            return Err(Error::Dimension { left: n as usize, right: rows.len() });
        }
    }
    Ok(rows)
}

/// Renders rows of strings as an aligned text block.
pub fn render_rows(rows: &[Vec<String>]) -> String {
    let n = rows.len();
    let widths: Vec<usize> = (0..n)
        .map(|j| rows.iter().map(|r| r[j].chars().count()).max().unwrap_or(1))
        .collect();
    let mut out = String::new();
    for r in rows {
        out.push_str("[ ");
        for (j, e) in r.iter().enumerate() {
            out.push_str(&format!("{:>w$}", e, w = widths[j]));
            out.push_str(if j + 1 == n { " ]" } else { "  " });
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::rational;

    fn pm(rows: &[&[&str]], nvars: usize) -> PolyMatrix {
        let rows: Vec<Vec<String>> =
            rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
        PolyMatrix::parse_rows(&rows, nvars).unwrap()
    }

    #[test]
    fn unstable_extension_product() {
        let a = pm(&[&["1", "0", "0"], &["0", "1", "-s2"], &["0", "0", "1"]], 3);
        let b = pm(&[&["1", "-s1", "0"], &["0", "1", "0"], &["0", "0", "1"]], 3);
        let expected = pm(&[&["1", "-s1", "0"], &["0", "1", "-s2"], &["0", "0", "1"]], 3);
        assert_eq!(a.mul(&b).unwrap(), expected);
    }

    #[test]
    fn stable_extension_product() {
        let f12 = pm(&[&["1", "-s1", "0"], &["0", "1", "0"], &["0", "0", "1"]], 3);
        let f13 = pm(&[&["1", "0", "-s1*s2"], &["0", "1", "0"], &["0", "0", "1"]], 3);
        let f23 = pm(&[&["1", "0", "0"], &["0", "1", "-s2"], &["0", "0", "1"]], 3);
        let expected = pm(&[&["1", "-s1", "0"], &["0", "1", "-s2"], &["0", "0", "1"]], 3);
        assert_eq!(f12.mul(&f13).unwrap().mul(&f23).unwrap(), expected);
    }

    #[test]
    fn identity_is_neutral() {
        let a = pm(&[&["1", "s1 - s2"], &["0", "1"]], 2);
        let id = PolyMatrix::identity(2, 2, None);
        assert_eq!(id.mul(&a).unwrap(), a);
    }

    #[test]
    fn joyce_evaluation_of_listed_matrix() {
        let a = pm(
            &[
                &["1", "s1", "-s1*s2*s3", "-s1*s2"],
                &["0", "1", "-s2*s3", "-s2"],
                &["0", "0", "1", "0"],
                &["0", "0", "s3", "1"],
            ],
            4,
        );
        let expected = RatMatrix::from_i64_rows(&[
            vec![1, 1, -1, -1],
            vec![0, 1, -1, -1],
            vec![0, 0, 1, 0],
            vec![0, 0, 1, 1],
        ])
        .unwrap();
        assert_eq!(a.evaluate_joyce().unwrap(), expected);
        let zero = vec![rational(0); 4];
        assert!(a.evaluate(&zero).unwrap().is_identity());
    }

    #[test]
    fn unipotent_inverse() {
        let a = pm(&[&["1", "0", "s1"], &["0", "1", "0"], &["0", "s2", "1"]], 2);
        assert!(a.is_unipotent_wrt(&[0, 2, 1]));
        assert!(!a.is_upper_unipotent());
        let inv = a.inverse_unipotent().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        let cyclic = pm(&[&["1", "s1"], &["s2", "1"]], 2);
        assert!(cyclic.inverse_unipotent().is_err());
    }

    #[test]
    fn json_shapes() {
        let a = pm(&[&["1", "-s1"], &["0", "1"]], 1);
        assert_eq!(
            a.to_json().to_string(),
            r#"{"n":2,"entries":[[{"0":"1"},{"1":"-1"}],[{},{"0":"1"}]]}"#
        );
        assert_eq!(PolyMatrix::from_json(&a.to_json(), 1).unwrap(), a);
        let r = a.evaluate_joyce().unwrap();
        assert_eq!(r.to_json().to_string(), r#"{"n":2,"entries":[["1","-1"],["0","1"]]}"#);
        assert_eq!(RatMatrix::from_json(&r.to_json()).unwrap(), r);
    }
}
