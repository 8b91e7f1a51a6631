//! Good bases: the quadratic and vanishing conditions, the sign tensor they
//! reduce to, the search for quivers compatible with a basis, and the
//! distinguished bases for quivers mutation equivalent to `A_n`.

use std::collections::{BTreeSet, VecDeque};

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{format_rational, rational, to_i64, Basis, LatticeVector, Rational, Ring, TruncatedPoly};
use crate::error::{Error, Result};
use crate::quiver::{EulerForm, Quiver};

/// Signs `ε_ij = −ε_ji` on a set of unordered pairs, with the scale `λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonTensor {
    n: usize,
    eps: Vec<Vec<i8>>,
    domain: Vec<(usize, usize)>,
    lambda: i64,
}

impl EpsilonTensor {
    /// `signs[t]` is `ε` on `domain[t] = (i, j)` with `i < j` (0-based).
    pub fn new(n: usize, domain: &[(usize, usize)], signs: &[i8], lambda: i64) -> Result<Self> {
        if domain.len() != signs.len() {
            return Err(Error::Dimension { left: domain.len(), right: signs.len() });
        }
        let mut eps = vec![vec![0i8; n]; n];
        let mut pairs = Vec::new();
        for (&(a, b), &s) in domain.iter().zip(signs) {
            if a == b || a >= n || b >= n || s.abs() != 1 {
                return Err(Error::Parse(format!("bad sign entry at ({}, {})", a + 1, b + 1)));
            }
            let (i, j) = (a.min(b), a.max(b));
            let s = if a < b { s } else { -s };
            eps[i][j] = s;
            eps[j][i] = -s;
            pairs.push((i, j));
        }
        pairs.sort_unstable();
        pairs.dedup();
        Ok(EpsilonTensor { n, eps, domain: pairs, lambda })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> i64 {
        self.lambda
    }

    pub fn domain(&self) -> &[(usize, usize)] {
        &self.domain
    }

    /// `ε_ij` when `{i, j}` is in the domain.
    pub fn get(&self, i: usize, j: usize) -> Option<i8> {
        (self.eps[i][j] != 0).then_some(self.eps[i][j])
    }

    pub fn negated(&self) -> Self {
        let eps = self.eps.iter().map(|r| r.iter().map(|s| -s).collect()).collect();
        EpsilonTensor { eps, ..self.clone() }
    }

    /// Ordered triples `(i, j, k)` with all three pairs in the domain where
    /// `1 + ε_ij ε_jk + ε_ji ε_ik + ε_ik ε_kj ≠ 0`.
    pub fn violations(&self) -> Vec<(usize, usize, usize)> {
        let e = &self.eps;
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                for k in 0..self.n {
                    if i == j || j == k || i == k || e[i][j] == 0 || e[j][k] == 0 || e[i][k] == 0 {
                        continue;
                    }
                    let v = 1 + e[i][j] * e[j][k] + e[j][i] * e[i][k] + e[i][k] * e[k][j];
                    if v != 0 {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }

    pub fn is_consistent(&self) -> bool {
        self.violations().is_empty()
    }

    pub fn to_json(&self) -> Value {
        let domain: Vec<Value> = self.domain.iter().map(|&(i, j)| json!([i + 1, j + 1])).collect();
        let signs: Vec<i8> = self.domain.iter().map(|&(i, j)| self.eps[i][j]).collect();
        json!({ "n": self.n, "lambda": self.lambda, "domain": domain, "signs": signs })
    }
}

/// Every sign assignment on `domain` (0-based pairs) satisfying the triple
/// identity, in binary counting order with `−1` before `+1`.
pub fn epsilon_solutions(n: usize, domain: &[(usize, usize)]) -> Vec<EpsilonTensor> {
    let mut pairs: Vec<(usize, usize)> = domain.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    pairs.sort_unstable();
    pairs.dedup();
    let m = pairs.len();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << m) {
        let signs: Vec<i8> = (0..m).map(|t| if mask >> (m - 1 - t) & 1 == 1 { 1 } else { -1 }).collect();
        let tensor = EpsilonTensor::new(n, &pairs, &signs, 1).expect("pairs are valid");
        if tensor.is_consistent() {
            out.push(tensor);
        }
    }
    out
}

/// A failed condition, with 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Violation {
    Quadratic { triple: [usize; 3], lhs: i64, rhs: i64 },
    Vanishing { pair: [usize; 2], difference: LatticeVector },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoodnessReport {
    pub quadratic_ok: bool,
    pub vanishing_ok: bool,
    /// Whether the vanishing condition was evaluated; it is only defined at
    /// order three.
    pub vanishing_checked: bool,
    pub violations: Vec<Violation>,
}

impl GoodnessReport {
    pub fn ok(&self) -> bool {
        self.quadratic_ok && self.vanishing_ok
    }

    fn from_violations(violations: Vec<Violation>, vanishing_checked: bool) -> Self {
        let quadratic_ok = !violations.iter().any(|v| matches!(v, Violation::Quadratic { .. }));
        let vanishing_ok = !violations.iter().any(|v| matches!(v, Violation::Vanishing { .. }));
        GoodnessReport { quadratic_ok, vanishing_ok, vanishing_checked, violations }
    }

    pub fn merge(self, other: GoodnessReport) -> GoodnessReport {
        let checked = self.vanishing_checked || other.vanishing_checked;
        let mut v = self.violations;
        v.extend(other.violations);
        Self::from_violations(v, checked)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Checks `⟨α_j,α_i⟩⟨α_j−α_k, α_k−α_i⟩ = ⟨α_j,α_k⟩⟨α_k,α_i⟩` for all distinct
/// `i, j, k` with `len(α_j − α_i) < p`.
pub fn check_quadratic(basis: &Basis, e: &EulerForm, p: u32) -> GoodnessReport {
    let n = basis.rank();
    let a = basis.rows();
    let mut violations = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || basis.difference(j, i).len() >= u64::from(p) {
                continue;
            }
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                let lhs = e.pair(&a[j], &a[i]) * e.pair(&(&a[j] - &a[k]), &(&a[k] - &a[i]));
                let rhs = e.pair(&a[j], &a[k]) * e.pair(&a[k], &a[i]);
                if lhs != rhs {
                    violations.push(Violation::Quadratic { triple: [i + 1, j + 1, k + 1], lhs, rhs });
                }
            }
        }
    }
    GoodnessReport::from_violations(violations, false)
}

/// Order-three vanishing: each `α_j − α_i` is a signed simple class, or has
/// length two and splits as `(α_j − α_k) + (α_k − α_i)` into signed simples,
/// or has length at least three.
pub fn check_vanishing_p3(basis: &Basis) -> GoodnessReport {
    let n = basis.rank();
    let mut violations = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let d = basis.difference(j, i);
            if d.len() != 2 {
                continue;
            }
            let split = (0..n).any(|k| {
                k != i
                    && k != j
                    && basis.difference(j, k).is_signed_simple()
                    && basis.difference(k, i).is_signed_simple()
            });
            if !split {
                violations.push(Violation::Vanishing { pair: [i + 1, j + 1], difference: d });
            }
        }
    }
    GoodnessReport::from_violations(violations, true)
}

/// Quadratic conditions at order `p`, plus the vanishing conditions when
/// `p = 3`.
pub fn check_good(basis: &Basis, e: &EulerForm, p: u32) -> GoodnessReport {
    let report = check_quadratic(basis, e, p);
    if p == 3 {
        report.merge(check_vanishing_p3(basis))
    } else {
        report
    }
}

/// A skew form compatible with a basis and a sign tensor. Pairs outside the
/// domain carry a free integer parameter `k_ij = ⟨α_j, α_i⟩` (`i < j`).
#[derive(Clone, Debug, PartialEq)]
pub struct GoodQuiver {
    pub epsilon: EpsilonTensor,
    /// Pairs `(i, j)`, `i < j`, 0-based, one per parameter.
    pub parameters: Vec<(usize, usize)>,
    /// `form[u][v] = ⟨[S_u], [S_v]⟩` as a polynomial in the parameters.
    pub form: Vec<Vec<TruncatedPoly>>,
    /// Nonzero residuals of the quadratic conditions; the form satisfies them
    /// exactly at parameter values where all of these vanish.
    pub constraints: Vec<TruncatedPoly>,
}

impl GoodQuiver {
    pub fn n(&self) -> usize {
        self.form.len()
    }

    pub fn parameter_names(&self) -> Vec<String> {
        self.parameters.iter().map(|&(i, j)| format!("k{}{}", i + 1, j + 1)).collect()
    }

    /// `(from, to, multiplicity)` with 1-based vertices. Constant entries are
    /// oriented by sign; symbolic ones point from the lower index.
    pub fn arrows(&self) -> Vec<(usize, usize, TruncatedPoly)> {
        let n = self.n();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let e = &self.form[u][v];
                if e.is_zero_elem() {
                    continue;
                }
                if e.degree() == Some(0) && e.constant_term().is_positive() {
                    out.push((v + 1, u + 1, e.clone()));
                } else {
                    out.push((u + 1, v + 1, e.neg_ref()));
                }
            }
        }
        out.sort_by_key(|a| (a.0, a.1));
        out
    }

    /// The arrows as text, e.g. `{1->2, 1->3 (1 - k14), 4=2=>2}`.
    pub fn describe(&self) -> String {
        let names = self.parameter_names();
        let parts: Vec<String> = self
            .arrows()
            .into_iter()
            .map(|(u, v, m)| match (m.degree(), to_i64(&m.constant_term())) {
                (Some(0), Some(1)) => format!("{u}->{v}"),
                (Some(0), Some(c)) => format!("{u}={c}=>{v}"),
                _ => format!("{u}->{v} ({})", m.display_with(&names)),
            })
            .collect();
        format!("{{{}}}", parts.join(", "))
    }

    /// The form at integer parameter values.
    pub fn form_at(&self, values: &[i64]) -> Result<EulerForm> {
        if values.len() != self.parameters.len() {
            return Err(Error::VariableCount { left: self.parameters.len(), right: values.len() });
        }
        let point: Vec<Rational> = values.iter().map(|&v| rational(v)).collect();
        let mut m = vec![vec![0i64; self.n()]; self.n()];
        for (u, row) in self.form.iter().enumerate() {
            for (v, e) in row.iter().enumerate() {
                let x = e.evaluate(&point)?;
                m[u][v] = to_i64(&x).ok_or_else(|| Error::Parse(format!("non-integer form entry {x}")))?;
            }
        }
        EulerForm::new(m)
    }

    /// The quiver at integer parameter values.
    pub fn instantiate(&self, values: &[i64]) -> Result<Quiver> {
        Ok(self.form_at(values)?.quiver())
    }

    /// The quiver when there are no free parameters.
    pub fn quiver(&self) -> Option<Quiver> {
        self.parameters.is_empty().then(|| self.instantiate(&[]).ok()).flatten()
    }

    pub fn constraints_hold_at(&self, values: &[i64]) -> Result<bool> {
        let point: Vec<Rational> = values.iter().map(|&v| rational(v)).collect();
        for c in &self.constraints {
            if !c.evaluate(&point)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> Value {
        let names = self.parameter_names();
        let arrows: Vec<Value> = self
            .arrows()
            .into_iter()
            .map(|(u, v, m)| json!([u, v, m.display_with(&names)]))
            .collect();
        let constraints: Vec<String> = self.constraints.iter().map(|c| c.display_with(&names)).collect();
        json!({
            "epsilon": self.epsilon.to_json(),
            "parameters": names,
            "arrows": arrows,
            "quiver": self.describe(),
            "parameter_constraints": constraints,
        })
    }
}

/// Solves `⟨α_i, α_j⟩ = ε_ij λ` over pairs with `len(α_j − α_i) < p` for each
/// sign tensor and keeps the forms whose entries are integral, i.e. realizable
/// by a quiver.
pub fn find_good_quivers(basis: &Basis, lambda: i64, p: u32) -> Vec<GoodQuiver> {
    let n = basis.rank();
    let mut domain = Vec::new();
    let mut parameters = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if basis.difference(j, i).len() < u64::from(p) {
                domain.push((i, j));
            } else {
                parameters.push((i, j));
            }
        }
    }
    let m = parameters.len();
    let inv = basis.inverse();
    let zero = TruncatedPoly::zero(m);
    let mut out = Vec::new();
    for eps in epsilon_solutions(n, &domain) {
        let eps = EpsilonTensor { lambda, ..eps };
        let mut g = vec![vec![zero.clone(); n]; n];
        for &(i, j) in &domain {
            let c = rational(i64::from(eps.eps[i][j]) * lambda);
            g[i][j] = TruncatedPoly::constant(m, c.clone());
            g[j][i] = TruncatedPoly::constant(m, -c);
        }
        for (t, &(i, j)) in parameters.iter().enumerate() {
            let k = TruncatedPoly::var(m, t);
            g[i][j] = k.neg_ref();
            g[j][i] = k;
        }
        let form = conjugate(&inv, &g);
        let integral = form.iter().flatten().all(|e| e.terms().all(|(_, c)| c.is_integer()));
        if !integral {
            continue;
        }
        let constraints = quadratic_residuals(basis, &g, p);
        out.push(GoodQuiver { epsilon: eps, parameters: parameters.clone(), form, constraints });
    }
    out
}

/// `M g Mᵀ` with rational `M`.
fn conjugate(mat: &[Vec<Rational>], g: &[Vec<TruncatedPoly>]) -> Vec<Vec<TruncatedPoly>> {
    let n = mat.len();
    let mut out = vec![vec![g[0][0].zero_like(); n]; n];
    for u in 0..n {
        for v in 0..n {
            let mut acc = g[0][0].zero_like();
            for i in 0..n {
                if mat[u][i].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if mat[v][j].is_zero() || g[i][j].is_zero_elem() {
                        continue;
                    }
                    acc = acc.add_ref(&g[i][j].scale(&(&mat[u][i] * &mat[v][j])));
                }
            }
            out[u][v] = acc;
        }
    }
    out
}

fn quadratic_residuals(basis: &Basis, g: &[Vec<TruncatedPoly>], p: u32) -> Vec<TruncatedPoly> {
    let n = basis.rank();
    let mut found: BTreeSet<String> = BTreeSet::new();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || basis.difference(j, i).len() >= u64::from(p) {
                continue;
            }
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                // ⟨α_j − α_k, α_k − α_i⟩ = g_jk − g_ji + g_ki, since g_kk = 0.
                let mixed = g[j][k].sub_ref(&g[j][i]).add_ref(&g[k][i]);
                let r = g[j][i].mul_ref(&mixed).sub_ref(&g[j][k].mul_ref(&g[k][i]));
                if r.is_zero_elem() {
                    continue;
                }
                let r = normalize_sign(r);
                if found.insert(r.to_json().to_string()) {
                    out.push(r);
                }
            }
        }
    }
    out
}

fn normalize_sign(r: TruncatedPoly) -> TruncatedPoly {
    let lead_negative = r.terms().last().is_some_and(|(_, c)| c.is_negative());
    if lead_negative {
        r.neg_ref()
    } else {
        r
    }
}

/// The basis attached to a quiver in the mutation class of `A_n`.
///
/// The underlying graph of such a quiver is a tree of edges and oriented
/// triangles. A root `r` gets `α_r = [S_r]`. In each triangle let `c` be the
/// vertex nearest the root, `a → c` and `c → b` its arrows; the edge `a − b`
/// is dropped and `b` gets sign `−1`. The rest follows the tree:
/// `α_v = ±[S_v] + α_parent(v)`. An acyclic triangle drops the edge between
/// its source and middle vertex and gives the middle vertex sign `−1`.
///
/// Roots are tried from vertex `n` downward; the first basis that is good at
/// order three with determinant `±1` is returned.
pub fn mutation_basis(target: &Quiver) -> Result<Basis> {
    let n = target.n();
    let unrecognized = |msg: &str| Error::UnrecognizedConfiguration(format!("{target}: {msg}"));
    if n == 0 {
        return Err(unrecognized("empty quiver"));
    }
    if !target.is_connected() {
        return Err(unrecognized("not connected"));
    }
    if target.arrow_list().iter().any(|&(_, _, m)| m > 1) {
        return Err(unrecognized("multiple arrows"));
    }
    let form = target.euler_form();
    for root in (0..n).rev() {
        let Some(basis) = rooted_basis(target, root) else {
            continue;
        };
        if basis.determinant().abs().is_one() && check_good(&basis, &form, 3).ok() {
            return Ok(basis);
        }
    }
    Err(unrecognized("no tree of triangles gives a good basis"))
}

fn rooted_basis(target: &Quiver, root: usize) -> Option<Basis> {
    let n = target.n();
    let mut adj = vec![vec![false; n]; n];
    for (u, v, _) in target.arrow_list() {
        adj[u - 1][v - 1] = true;
        adj[v - 1][u - 1] = true;
    }
    let dist = distances(&adj, root);
    let arrow = |u: usize, v: usize| target.count(u, v) > 0;
    let mut sign = vec![1i64; n];
    for u in 0..n {
        for v in u + 1..n {
            for w in v + 1..n {
                if !(adj[u][v] && adj[v][w] && adj[u][w]) {
                    continue;
                }
                let tri = [u, v, w];
                let outs = |x: usize| tri.iter().filter(|&&y| y != x && arrow(x, y)).count();
                let (cut, minus) = if tri.iter().all(|&x| outs(x) == 1) {
                    let c = *tri.iter().min_by_key(|&&x| (dist[x], x)).unwrap();
                    let a = *tri.iter().find(|&&x| x != c && arrow(x, c)).unwrap();
                    let b = *tri.iter().find(|&&x| x != c && arrow(c, x)).unwrap();
                    ((a, b), b)
                } else {
                    let source = *tri.iter().find(|&&x| outs(x) == 2).unwrap();
                    let middle = *tri.iter().find(|&&x| outs(x) == 1).unwrap();
                    ((source, middle), middle)
                };
                adj[cut.0][cut.1] = false;
                adj[cut.1][cut.0] = false;
                sign[minus] = -1;
            }
        }
    }
    let edges: usize = (0..n).map(|u| (u + 1..n).filter(|&v| adj[u][v]).count()).sum();
    let tree_dist = distances(&adj, root);
    if edges != n - 1 || tree_dist.contains(&usize::MAX) {
        return None;
    }
    let mut rows = vec![vec![0i64; n]; n];
    rows[root][root] = 1;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| tree_dist[v]);
    for &v in order.iter().skip(1) {
        let parent = (0..n).find(|&w| adj[v][w] && tree_dist[w] + 1 == tree_dist[v])?;
        rows[v] = rows[parent].clone();
        rows[v][v] = sign[v];
    }
    Basis::from_rows(rows).ok()
}

fn distances(adj: &[Vec<bool>], root: usize) -> Vec<usize> {
    let n = adj.len();
    let mut dist = vec![usize::MAX; n];
    dist[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for w in 0..n {
            if adj[v][w] && dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Renders a polynomial whose variables are named parameters.
pub fn display_parametric(p: &TruncatedPoly, names: &[String]) -> String {
    if p.is_zero_elem() {
        return "0".into();
    }
    match p.degree() {
        Some(0) => format_rational(&p.constant_term()),
        _ => p.display_with(names),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form_from_pairings(basis: &Basis, g: &[Vec<i64>]) -> EulerForm {
        let inv = basis.inverse();
        let n = basis.rank();
        let mut m = vec![vec![0i64; n]; n];
        for u in 0..n {
            for v in 0..n {
                let mut acc = Rational::zero();
                for i in 0..n {
                    for j in 0..n {
                        acc += &inv[u][i] * rational(g[i][j]) * &inv[v][j];
                    }
                }
                m[u][v] = to_i64(&acc).unwrap();
            }
        }
        EulerForm::new(m).unwrap()
    }

    #[test]
    fn rank_two_is_vacuous() {
        let b = Basis::from_rows(vec![vec![1, 1], vec![0, 1]]).unwrap();
        let e = Quiver::kronecker(5).euler_form();
        assert!(check_quadratic(&b, &e, 3).quadratic_ok);
    }

    #[test]
    fn a3_triangular_passes() {
        let b = Basis::triangular(3);
        let e = Quiver::linear_a(3).euler_form();
        for i in 0..3 {
            for j in i + 1..3 {
                assert_eq!(e.pair(b.row(i), b.row(j)), -1);
            }
        }
        assert!(check_good(&b, &e, 3).ok());
    }

    #[test]
    fn bad_signs_fail_at_first_triple() {
        let b = Basis::triangular(3);
        let g = vec![vec![0, 1, -1], vec![-1, 0, 1], vec![1, -1, 0]];
        let e = form_from_pairings(&b, &g);
        let r = check_quadratic(&b, &e, 10);
        assert!(!r.quadratic_ok);
        assert!(r.violations.iter().any(|v| matches!(v, Violation::Quadratic { triple: [1, 2, 3], .. })));
    }

    #[test]
    fn epsilon_counts() {
        let full = |n: usize| -> Vec<(usize, usize)> {
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
        };
        assert_eq!(epsilon_solutions(2, &full(2)).len(), 2);
        let three = epsilon_solutions(3, &full(3));
        assert_eq!(three.len(), 6);
        for t in &three {
            assert!(three.contains(&t.negated()));
        }
        let all_minus = EpsilonTensor::new(4, &full(4), &[-1; 6], 1).unwrap();
        assert!(epsilon_solutions(4, &full(4)).contains(&all_minus));
    }

    #[test]
    fn vanishing_examples() {
        for n in 2..=6 {
            assert!(check_vanishing_p3(&Basis::triangular(n)).vanishing_ok);
        }
        let delta = Basis::from_rows(vec![vec![1, 0, 1], vec![0, -1, 1], vec![0, 0, 1]]).unwrap();
        assert!(check_vanishing_p3(&delta).vanishing_ok);
        let bad = Basis::from_rows(vec![vec![1, 0, 1], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let r = check_vanishing_p3(&bad);
        assert_eq!(r.violations.len(), 1);
        assert!(matches!(r.violations[0], Violation::Vanishing { pair: [2, 3], .. }));
    }

    #[test]
    fn small_tables() {
        let t2 = find_good_quivers(&Basis::triangular(2), 1, 3);
        let q: BTreeSet<Quiver> = t2.iter().map(|g| g.quiver().unwrap()).collect();
        assert_eq!(q.len(), 2);
        assert!(q.contains(&Quiver::linear_a(2)));
        let t3 = find_good_quivers(&Basis::triangular(3), 1, 3);
        assert_eq!(t3.len(), 6);
        for g in &t3 {
            let q = g.quiver().unwrap();
            assert!(check_quadratic(&Basis::triangular(3), &q.euler_form(), 3).quadratic_ok);
        }
    }

    #[test]
    fn tau4_has_one_parameter() {
        let t4 = find_good_quivers(&Basis::triangular(4), 1, 3);
        assert_eq!(t4.len(), 18);
        assert!(t4.iter().all(|g| g.parameter_names() == ["k14"]));
    }

    #[test]
    fn linear_basis_is_triangular() {
        for n in 1..=6 {
            assert_eq!(mutation_basis(&Quiver::linear_a(n)).unwrap(), Basis::triangular(n));
        }
    }

    #[test]
    fn triangle_block() {
        // 1 -> 3 -> 2 -> 1, 3 -> 4
        let q = Quiver::from_arrows(4, &[(1, 3, 1), (3, 2, 1), (2, 1, 1), (3, 4, 1)]).unwrap();
        let b = mutation_basis(&q).unwrap();
        let expected =
            Basis::from_rows(vec![vec![1, 0, 1, 1], vec![0, -1, 1, 1], vec![0, 0, 1, 1], vec![0, 0, 0, 1]]).unwrap();
        assert_eq!(b, expected);
    }

    #[test]
    fn annulus_basis() {
        let q = Quiver::from_arrows(3, &[(1, 2, 1), (1, 3, 1), (2, 3, 1)]).unwrap();
        let expected = Basis::from_rows(vec![vec![1, 0, 1], vec![0, -1, 1], vec![0, 0, 1]]).unwrap();
        assert_eq!(mutation_basis(&q).unwrap(), expected);
    }

    #[test]
    fn whole_mutation_classes() {
        for n in 2..=5 {
            for (q, word) in Quiver::linear_a(n).mutation_class(10_000).unwrap() {
                let b = mutation_basis(&q).unwrap_or_else(|e| panic!("{word:?}: {e}"));
                assert!(b.determinant().abs().is_one());
            }
        }
    }

    #[test]
    fn rejects_double_arrows() {
        assert!(matches!(
            mutation_basis(&Quiver::kronecker(2)),
            Err(Error::UnrecognizedConfiguration(_))
        ));
    }
}
