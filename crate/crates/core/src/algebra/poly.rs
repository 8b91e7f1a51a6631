//! Sparse multivariate polynomials with exact rational coefficients and an
//! optional total-degree truncation.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde_json::{Map, Value};

use super::ring::{format_rational, parse_rational, Rational, Ring};
use crate::error::{Error, Result};

/// An exponent vector, ordered graded-lexicographically: lower total degree
/// first, then larger powers of earlier variables first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn key(&self) -> String {
        self.0.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `s_1, …, s_n`, optionally reduced modulo `(s)^p`.
///
/// Equality compares variable count and stored terms; the bound is metadata
/// about how the value was produced.
#[derive(Clone, Debug)]
pub struct TruncatedPoly {
    nvars: usize,
    bound: Option<u32>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for TruncatedPoly {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.terms == other.terms
    }
}

impl Eq for TruncatedPoly {}

fn min_bound(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl TruncatedPoly {
    pub fn zero(nvars: usize) -> Self {
        TruncatedPoly { nvars, bound: None, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    /// The variable `s_{i+1}` (0-based index).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::term(Monomial(e), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let nvars = m.0.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        TruncatedPoly { nvars, bound: None, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn bound(&self) -> Option<u32> {
        self.bound
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.nvars))
    }

    /// Highest total degree of a stored term, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Reduces modulo `(s)^p`; the result carries the tighter of the two bounds.
    pub fn truncate(&self, p: u32) -> Self {
        let bound = min_bound(self.bound, Some(p));
        let cut = bound.unwrap();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() < cut)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        TruncatedPoly { nvars: self.nvars, bound, terms }
    }

    /// The same terms with no bound attached.
    pub fn exact(&self) -> Self {
        TruncatedPoly { bound: None, ..self.clone() }
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCount { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    fn insert(&mut self, m: Monomial, c: Rational) {
        if let Some(b) = self.bound {
            if m.degree() >= b {
                return;
            }
        }
        let sum = self.coefficient(&m) + c;
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        out.bound = min_bound(self.bound, other.bound);
        if out.bound != self.bound {
            out = out.truncate(out.bound.unwrap());
        }
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let bound = min_bound(self.bound, other.bound);
        let mut out = TruncatedPoly { nvars: self.nvars, bound, terms: BTreeMap::new() };
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.times(mb);
                if bound.is_some_and(|b| m.degree() >= b) {
                    continue;
                }
                *out.terms.entry(m).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        out.terms.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        if c.is_zero() {
            out.terms.clear();
        } else {
            for v in out.terms.values_mut() {
                *v *= c;
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = self.one_like();
        for _ in 0..e {
            out = out.mul_ref(self);
        }
        out
    }

    /// Substitutes a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::VariableCount { left: self.nvars, right: point.len() });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    v *= x;
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// JSON object mapping `"e1,…,en"` to coefficient strings, in canonical order.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (m, c) in &self.terms {
            map.insert(m.key(), Value::String(format_rational(c)));
        }
        Value::Object(map)
    }

    pub fn from_json(v: &Value, nvars: usize) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("polynomial must be a JSON object".into()))?;
        let mut out = Self::zero(nvars);
        for (k, c) in obj {
            let exps: Vec<u32> = if k.is_empty() {
                Vec::new()
            } else {
                k.split(',')
                    .map(|e| e.trim().parse::<u32>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| Error::Parse(format!("bad exponent key {k:?}")))?
            };
            if exps.len() != nvars {
                return Err(Error::VariableCount { left: nvars, right: exps.len() });
            }
            let c = c
                .as_str()
                .ok_or_else(|| Error::Parse("coefficient must be a string".into()))?;
            out.insert(Monomial(exps), parse_rational(c)?);
        }
        Ok(out)
    }

    /// Parses expressions such as `"1 - s1*s2 + 1/2*s3^2"`. A bare `s` denotes
    /// `s1` when there is a single variable.
    pub fn parse(s: &str, nvars: usize) -> Result<Self> {
        Self::parse_with(s, nvars, |name| {
            if name == "s" && nvars == 1 {
                return Some(0);
            }
            let k: usize = name.strip_prefix('s')?.parse().ok()?;
            (1..=nvars).contains(&k).then(|| k - 1)
        })
    }

    /// Parses a sum of monomials with a caller-supplied variable lookup.
    pub fn parse_with(
        s: &str,
        nvars: usize,
        lookup: impl Fn(&str) -> Option<usize>,
    ) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = Self::zero(nvars);
        let mut pieces = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > start {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        pieces.push(&compact[start..]);
        for piece in pieces {
            let (sign, body) = match piece.as_bytes()[0] {
                b'+' => (Rational::one(), &piece[1..]),
                b'-' => (-Rational::one(), &piece[1..]),
                _ => (Rational::one(), piece),
            };
            if body.is_empty() {
                return Err(Error::Parse(format!("dangling sign in {s:?}")));
            }
            let mut coeff = sign;
            let mut exps = vec![0u32; nvars];
            for factor in body.split('*') {
                if factor.starts_with(|c: char| c.is_ascii_digit()) {
                    coeff *= parse_rational(factor)?;
                    continue;
                }
                let (name, e) = match factor.split_once('^') {
                    Some((n, e)) => (
                        n,
                        e.parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?,
                    ),
                    None => (factor, 1),
                };
                let k = lookup(name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                exps[k] += e;
            }
            out.insert(Monomial(exps), coeff);
        }
        Ok(out)
    }

    /// Renders with caller-supplied variable names.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            if factors.is_empty() {
                out.push_str(&format_rational(&abs));
            } else {
                if !abs.is_one() {
                    out.push_str(&format_rational(&abs));
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for TruncatedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("s{i}")).collect();
        f.write_str(&self.display_with(&names))
    }
}

impl Ring for TruncatedPoly {
    fn zero_like(&self) -> Self {
        TruncatedPoly { nvars: self.nvars, bound: self.bound, terms: BTreeMap::new() }
    }
    fn one_like(&self) -> Self {
        let mut one = Self::one(self.nvars);
        one.bound = self.bound;
        if self.bound == Some(0) {
            one.terms.clear();
        }
        one
    }
    fn is_zero_elem(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.try_add(other).expect("variable count mismatch")
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.try_add(&other.neg_ref()).expect("variable count mismatch")
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.try_mul(other).expect("variable count mismatch")
    }
    fn neg_ref(&self) -> Self {
        self.scale(&-Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::rational;

    fn p(s: &str, n: usize) -> TruncatedPoly {
        TruncatedPoly::parse(s, n).unwrap()
    }

    #[test]
    fn difference_of_squares_mod_three() {
        let a = p("1 - s1", 2).truncate(3);
        let b = p("1 + s1", 2);
        assert_eq!(a.mul_ref(&b), p("1 - s1^2", 2));
        assert_eq!(a.mul_ref(&b).bound(), Some(3));
    }

    #[test]
    fn degree_three_product_truncates_to_zero() {
        let a = p("s1*s2", 3).truncate(3);
        let b = p("s3", 3);
        assert!(a.mul_ref(&b).is_zero_elem());
    }

    #[test]
    fn binomial_square_exact() {
        let a = p("s1 + s2", 2);
        assert_eq!(a.mul_ref(&a), p("s1^2 + 2*s1*s2 + s2^2", 2));
    }

    #[test]
    fn mismatched_variable_counts_error() {
        assert!(p("s1", 1).try_mul(&p("s1", 2)).is_err());
    }

    #[test]
    fn canonical_order_and_display() {
        let a = p("s2^2 + s1*s2 - 3 + s1^2 - 1/2*s2", 2);
        assert_eq!(a.to_string(), "-3 - 1/2*s2 + s1^2 + s1*s2 + s2^2");
        let keys: Vec<String> = a.to_json().as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ["0,0", "0,1", "2,0", "1,1", "0,2"]);
    }

    #[test]
    fn json_round_trip() {
        let a = p("1 - s1*s2 + 2/3*s3", 3);
        assert_eq!(TruncatedPoly::from_json(&a.to_json(), 3).unwrap(), a);
        assert_eq!(TruncatedPoly::zero(3).to_json(), serde_json::json!({}));
    }

    #[test]
    fn evaluation() {
        let a = p("1 - s1*s2 + s3^2", 3);
        let pt = vec![rational(2), rational(3), rational(-1)];
        assert_eq!(a.evaluate(&pt).unwrap(), rational(-4));
    }

    #[test]
    fn single_variable_shorthand() {
        assert_eq!(p("-s", 1), p("-s1", 1));
    }
}
