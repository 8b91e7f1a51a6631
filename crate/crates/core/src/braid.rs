//! Braid, permutation and sign actions on unipotent matrices, and a bounded
//! orbit search producing replayable equivalence certificates.
//!
//! Braid and sign indices here are 1-based, matching the move notation.

use std::collections::{HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::{first_topological_order, to_i64, topological_orders, Matrix, RatMatrix, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Plus,
    Minus,
}

/// One step of a word acting on matrices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    /// `β_{i,i+1}` or its inverse.
    Braid { i: usize, dir: Direction },
    /// `A ↦ PAP⁻¹` where `P` sends basis vector `k` to `perm[k]` (1-based images).
    Perm(Vec<usize>),
    /// `A ↦ DAD` with `D = diag(signs)`.
    Sign(Vec<i8>),
}

impl Move {
    pub fn apply<T: Ring>(&self, a: &Matrix<T>) -> Result<Matrix<T>> {
        match self {
            Move::Braid { i, dir: Direction::Plus } => beta(*i, a),
            Move::Braid { i, dir: Direction::Minus } => beta_inv(*i, a),
            Move::Perm(p) => perm_conj(p, a),
            Move::Sign(s) => sign_vector_conj(s, a),
        }
    }

    pub fn inverse(&self) -> Move {
        match self {
            Move::Braid { i, dir } => {
                let dir = if *dir == Direction::Plus { Direction::Minus } else { Direction::Plus };
                Move::Braid { i: *i, dir }
            }
            Move::Perm(p) => Move::Perm(inverse_perm(p)),
            Move::Sign(s) => Move::Sign(s.clone()),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Move::Braid { i, dir } => json!({ "braid": i, "dir": if *dir == Direction::Plus { "+" } else { "-" } }),
            Move::Perm(p) => json!({ "perm": p }),
            Move::Sign(s) => json!({ "sign": s }),
        }
    }

    pub fn from_json(v: &Value) -> Result<Move> {
        let bad = || Error::Parse(format!("bad move {v}"));
        if let Some(i) = v.get("braid").and_then(Value::as_u64) {
            let dir = match v.get("dir").and_then(Value::as_str).unwrap_or("+") {
                "+" => Direction::Plus,
                "-" => Direction::Minus,
                _ => return Err(bad()),
            };
            return Ok(Move::Braid { i: i as usize, dir });
        }
        if let Some(p) = v.get("perm") {
            return Ok(Move::Perm(serde_json::from_value(p.clone()).map_err(|_| bad())?));
        }
        if let Some(s) = v.get("sign") {
            return Ok(Move::Sign(serde_json::from_value(s.clone()).map_err(|_| bad())?));
        }
        Err(bad())
    }
}

/// A sequence of moves applied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BraidWord {
    pub moves: Vec<Move>,
}

impl BraidWord {
    pub fn new(moves: Vec<Move>) -> Self {
        BraidWord { moves }
    }

    pub fn apply<T: Ring>(&self, a: &Matrix<T>) -> Result<Matrix<T>> {
        self.moves.iter().try_fold(a.clone(), |m, mv| mv.apply(&m))
    }

    /// Inverse moves in reverse order.
    pub fn inverse(&self) -> BraidWord {
        BraidWord { moves: self.moves.iter().rev().map(Move::inverse).collect() }
    }

    pub fn braid_count(&self) -> usize {
        self.moves.iter().filter(|m| matches!(m, Move::Braid { .. })).count()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.moves.iter().map(Move::to_json).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| Error::Parse("word must be an array".into()))?;
        Ok(BraidWord { moves: arr.iter().map(Move::from_json).collect::<Result<_>>()? })
    }
}

fn check_braid_input<T: Ring>(i: usize, a: &Matrix<T>) -> Result<()> {
    if i == 0 || i >= a.dim() {
        return Err(Error::VertexOutOfRange { vertex: i, n: a.dim().saturating_sub(1) });
    }
    if !adjacent_unipotent(a, i - 1) {
        return Err(Error::NotUnipotent(format!(
            "braid move {i} needs a unipotent matrix, triangular in an order where {i} is directly followed by {}",
            i + 1
        )));
    }
    Ok(())
}

/// Unit diagonal, and triangular for some order placing `k` immediately
/// before `k + 1` (0-based). Upper triangular matrices always qualify.
fn adjacent_unipotent<T: Ring>(a: &Matrix<T>, k: usize) -> bool {
    let n = a.dim();
    if (0..n).any(|i| !a.get(i, i).is_one_elem()) || !a.get(k + 1, k).is_zero_elem() {
        return false;
    }
    // Merge k + 1 into k and ask for an order of the contracted support.
    let node = |v: usize| if v == k + 1 { k } else { v };
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && !a.get(i, j).is_zero_elem() && node(i) != node(j) {
                edges.push((node(i), node(j)));
            }
        }
    }
    first_topological_order(n, &edges).is_some()
}

/// Left multiplication by the block `[[p, q], [r, t]]` on rows `k, k+1`
/// followed by right multiplication by the same block on columns `k, k+1`.
fn block_conj<T: Ring>(a: &Matrix<T>, k: usize, block: [[T; 2]; 2]) -> Matrix<T> {
    let n = a.dim();
    let mut m = a.clone();
    for c in 0..n {
        let (x, y) = (a.get(k, c), a.get(k + 1, c));
        m.set(k, c, block[0][0].mul_ref(x).add_ref(&block[0][1].mul_ref(y)));
        m.set(k + 1, c, block[1][0].mul_ref(x).add_ref(&block[1][1].mul_ref(y)));
    }
    let left = m.clone();
    for r in 0..n {
        let (x, y) = (left.get(r, k), left.get(r, k + 1));
        m.set(r, k, x.mul_ref(&block[0][0]).add_ref(&y.mul_ref(&block[1][0])));
        m.set(r, k + 1, x.mul_ref(&block[0][1]).add_ref(&y.mul_ref(&block[1][1])));
    }
    m
}

/// `β_{i,i+1}.A = β(A)·A·β(A)` with block `[[0, 1], [1, −A_{i,i+1}]]`.
pub fn beta<T: Ring>(i: usize, a: &Matrix<T>) -> Result<Matrix<T>> {
    check_braid_input(i, a)?;
    let k = i - 1;
    let x = a.get(k, k + 1);
    let (zero, one) = (x.zero_like(), x.one_like());
    Ok(block_conj(a, k, [[zero, one.clone()], [one, x.neg_ref()]]))
}

/// The inverse action, with block `[[−A_{i,i+1}, 1], [1, 0]]`.
pub fn beta_inv<T: Ring>(i: usize, a: &Matrix<T>) -> Result<Matrix<T>> {
    check_braid_input(i, a)?;
    let k = i - 1;
    let x = a.get(k, k + 1);
    let (zero, one) = (x.zero_like(), x.one_like());
    Ok(block_conj(a, k, [[x.neg_ref(), one.clone()], [one, zero]]))
}

fn check_perm(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(Error::Dimension { left: n, right: perm.len() });
    }
    for &p in perm {
        if p == 0 || p > n || seen[p - 1] {
            return Err(Error::Parse(format!("not a permutation of 1..={n}: {perm:?}")));
        }
        seen[p - 1] = true;
    }
    Ok(())
}

/// `PAP⁻¹`: entry `(i, j)` moves to `(perm[i], perm[j])`.
pub fn perm_conj<T: Ring>(perm: &[usize], a: &Matrix<T>) -> Result<Matrix<T>> {
    let n = a.dim();
    check_perm(perm, n)?;
    let mut m = a.clone();
    for i in 0..n {
        for j in 0..n {
            m.set(perm[i] - 1, perm[j] - 1, a.get(i, j).clone());
        }
    }
    Ok(m)
}

/// `I_k A I_k`: negates row and column `k` off the diagonal (1-based `k`).
pub fn sign_conj<T: Ring>(k: usize, a: &Matrix<T>) -> Result<Matrix<T>> {
    let n = a.dim();
    if k == 0 || k > n {
        return Err(Error::VertexOutOfRange { vertex: k, n });
    }
    let mut signs = vec![1i8; n];
    signs[k - 1] = -1;
    sign_vector_conj(&signs, a)
}

/// `DAD` for `D = diag(signs)`, signs in `{±1}`.
pub fn sign_vector_conj<T: Ring>(signs: &[i8], a: &Matrix<T>) -> Result<Matrix<T>> {
    let n = a.dim();
    if signs.len() != n || signs.iter().any(|s| s.abs() != 1) {
        return Err(Error::Parse(format!("bad sign vector {signs:?}")));
    }
    let mut m = a.clone();
    for i in 0..n {
        for j in 0..n {
            if signs[i] != signs[j] {
                m.set(i, j, a.get(i, j).neg_ref());
            }
        }
    }
    Ok(m)
}

/// `(q ∘ p)(k) = q(p(k))`, so that conjugating by `p` then by `q` equals
/// conjugating by the composite.
pub fn compose_perm(q: &[usize], p: &[usize]) -> Vec<usize> {
    p.iter().map(|&k| q[k - 1]).collect()
}

pub fn inverse_perm(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (k, &v) in p.iter().enumerate() {
        inv[v - 1] = k + 1;
    }
    inv
}

/// A word carrying `source` to `target`; `verified` is recomputed by replay.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceCertificate {
    pub source: RatMatrix,
    pub target: RatMatrix,
    pub word: BraidWord,
    pub verified: bool,
}

impl EquivalenceCertificate {
    pub fn new(source: RatMatrix, target: RatMatrix, word: BraidWord) -> Self {
        let verified = word.apply(&source).is_ok_and(|m| m == target);
        EquivalenceCertificate { source, target, word, verified }
    }

    /// Replays the word and checks the result again.
    pub fn replay(&self) -> bool {
        self.word.apply(&self.source).is_ok_and(|m| m == self.target)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "word": self.word.to_json(),
            "verified": self.verified,
        })
    }

    /// Reads a certificate; the stored `verified` flag is ignored and recomputed.
    pub fn from_json(v: &Value) -> Result<Self> {
        let field = |k: &str| v.get(k).ok_or_else(|| Error::Parse(format!("certificate needs {k:?}")));
        let source = RatMatrix::from_json(field("source")?)?;
        let target = RatMatrix::from_json(field("target")?)?;
        let word = BraidWord::from_json(field("word")?)?;
        Ok(Self::new(source, target, word))
    }
}

/// Bounds for [`equivalent`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Maximum number of braid moves.
    pub depth: usize,
    /// Largest absolute value allowed for any entry along the way.
    pub entry_bound: i64,
    /// Number of distinct visited states after which the search gives up
    /// with an error.
    pub max_states: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { depth: 12, entry_bound: 64, max_states: 2_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SearchOutcome {
    Found(EquivalenceCertificate),
    /// Nothing within the bounds; says nothing about inequivalence.
    Inconclusive { states: usize },
}

type Key = Vec<i64>;

struct Int {
    n: usize,
    a: Vec<i64>,
}

impl Int {
    fn from_rat(m: &RatMatrix) -> Result<Self> {
        let n = m.dim();
        let mut a = Vec::with_capacity(n * n);
        for e in m.entries() {
            a.push(to_i64(e).ok_or_else(|| Error::Parse(format!("orbit search needs integer entries, got {e}")))?);
        }
        Ok(Int { n, a })
    }

    #[cfg(test)]
    fn to_rat(&self) -> RatMatrix {
        let rows: Vec<Vec<i64>> = self.a.chunks(self.n).map(<[i64]>::to_vec).collect();
        RatMatrix::from_i64_rows(&rows).expect("square")
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        let mut e = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && self.a[i * n + j] != 0 {
                    e.push((i, j));
                }
            }
        }
        e
    }
}

/// Row-major braid action on a flat integer matrix.
fn int_braid(a: &[i64], n: usize, k: usize, dir: Direction) -> Vec<i64> {
    let x = a[k * n + k + 1];
    let block = match dir {
        Direction::Plus => [[0, 1], [1, -x]],
        Direction::Minus => [[-x, 1], [1, 0]],
    };
    let mut m = a.to_vec();
    for c in 0..n {
        let (p, q) = (a[k * n + c], a[(k + 1) * n + c]);
        m[k * n + c] = block[0][0] * p + block[0][1] * q;
        m[(k + 1) * n + c] = block[1][0] * p + block[1][1] * q;
    }
    let left = m.clone();
    for r in 0..n {
        let (p, q) = (left[r * n + k], left[r * n + k + 1]);
        m[r * n + k] = p * block[0][0] + q * block[1][0];
        m[r * n + k + 1] = p * block[0][1] + q * block[1][1];
    }
    m
}

/// Canonical representative of the sign-conjugation class and the signs
/// reaching it. Entries are visited in row-major order; whenever the sign of
/// an entry is still free it is made negative.
fn canonical_signs(a: &[i64], n: usize) -> (Key, Vec<i8>) {
    // Union-find with parity relative to the root.
    let mut parent: Vec<usize> = (0..n).collect();
    let mut parity = vec![0u8; n];
    fn find(parent: &mut [usize], parity: &mut [u8], x: usize) -> (usize, u8) {
        if parent[x] == x {
            return (x, 0);
        }
        let (r, p) = find(parent, parity, parent[x]);
        parity[x] ^= p;
        parent[x] = r;
        (r, parity[x])
    }
    for i in 0..n {
        for j in i + 1..n {
            let v = a[i * n + j];
            if v == 0 {
                continue;
            }
            let (ri, pi) = find(&mut parent, &mut parity, i);
            let (rj, pj) = find(&mut parent, &mut parity, j);
            if ri != rj {
                // d_i d_j sign(v) = −1  ⇔  parity_i ⊕ parity_j = [v > 0].
                let want = u8::from(v > 0);
                parent[rj] = ri;
                parity[rj] = pi ^ pj ^ want;
            }
        }
    }
    let mut signs = vec![1i8; n];
    for (x, s) in signs.iter_mut().enumerate() {
        let (_, p) = find(&mut parent, &mut parity, x);
        if p == 1 {
            *s = -1;
        }
    }
    let mut m = a.to_vec();
    for i in 0..n {
        for j in 0..n {
            if signs[i] != signs[j] {
                m[i * n + j] = -m[i * n + j];
            }
        }
    }
    (m, signs)
}

fn order_to_perm(order: &[usize]) -> Vec<usize> {
    let mut perm = vec![0; order.len()];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos + 1;
    }
    perm
}

fn push_nontrivial(moves: &mut Vec<Move>, mv: Move) {
    let trivial = match &mv {
        Move::Perm(p) => p.iter().enumerate().all(|(k, &v)| v == k + 1),
        Move::Sign(s) => s.iter().all(|&x| x == 1),
        Move::Braid { .. } => false,
    };
    if !trivial {
        moves.push(mv);
    }
}

/// Breadth-first search for a word carrying `s1` to `s2`.
///
/// The source is conjugated into upper triangular form by the first
/// permutation that achieves it; the target set holds every triangular
/// permutation conjugate of `s2`. States are identified up to sign
/// conjugation. Braid moves are tried as `β_1 … β_{n−1}`, then their
/// inverses, so the first certificate found is deterministic and uses as few
/// braid moves as possible.
pub fn equivalent(s1: &RatMatrix, s2: &RatMatrix, limits: SearchLimits) -> Result<SearchOutcome> {
    let n = s1.dim();
    if s2.dim() != n {
        return Err(Error::Dimension { left: n, right: s2.dim() });
    }
    let src = Int::from_rat(s1)?;
    let dst = Int::from_rat(s2)?;
    for m in [&src, &dst] {
        if (0..n).any(|i| m.a[i * n + i] != 1) {
            return Err(Error::NotUnipotent("diagonal entries must be 1".into()));
        }
    }
    let start_order = first_topological_order(n, &src.edges())
        .ok_or_else(|| Error::NotUnipotent("source is not triangular in any order".into()))?;
    let start_perm = order_to_perm(&start_order);
    let start = Int::from_rat(&perm_conj(&start_perm, s1)?)?;

    let mut targets: HashMap<Key, (Vec<usize>, Vec<i8>)> = HashMap::new();
    for order in topological_orders(n, &dst.edges()) {
        let perm = order_to_perm(&order);
        let t = Int::from_rat(&perm_conj(&perm, s2)?)?;
        let (key, signs) = canonical_signs(&t.a, n);
        targets.entry(key).or_insert((perm, signs));
    }
    if targets.is_empty() {
        return Err(Error::NotUnipotent("target is not triangular in any order".into()));
    }

    let (key0, signs0) = canonical_signs(&start.a, n);
    // Per state: (parent index, braid index k 0-based, direction, signs after the move).
    let mut nodes: Vec<(Key, usize, usize, Direction, Vec<i8>)> = vec![(key0.clone(), usize::MAX, 0, Direction::Plus, signs0)];
    let mut seen: HashMap<Key, usize> = HashMap::from([(key0, 0)]);
    let mut depth_of = vec![0usize];
    let mut queue = VecDeque::from([0usize]);
    let dirs = [Direction::Plus, Direction::Minus];
    let mut hit = None;
    while let Some(idx) = queue.pop_front() {
        if targets.contains_key(&nodes[idx].0) {
            hit = Some(idx);
            break;
        }
        if depth_of[idx] >= limits.depth {
            continue;
        }
        for dir in dirs {
            for k in 0..n.saturating_sub(1) {
                let next = int_braid(&nodes[idx].0, n, k, dir);
                if next.iter().any(|v| v.abs() > limits.entry_bound) {
                    continue;
                }
                let (key, signs) = canonical_signs(&next, n);
                if seen.contains_key(&key) {
                    continue;
                }
                if seen.len() >= limits.max_states {
                    return Err(Error::BudgetExhausted { states: seen.len() });
                }
                seen.insert(key.clone(), nodes.len());
                depth_of.push(depth_of[idx] + 1);
                queue.push_back(nodes.len());
                nodes.push((key, idx, k, dir, signs));
            }
        }
    }
    let Some(end) = hit else {
        return Ok(SearchOutcome::Inconclusive { states: seen.len() });
    };
    let mut path = Vec::new();
    let mut cur = end;
    while cur != 0 {
        path.push(cur);
        cur = nodes[cur].1;
    }
    path.reverse();
    let mut moves = Vec::new();
    push_nontrivial(&mut moves, Move::Perm(start_perm));
    push_nontrivial(&mut moves, Move::Sign(nodes[0].4.clone()));
    for &p in &path {
        let (_, _, k, dir, ref signs) = nodes[p];
        moves.push(Move::Braid { i: k + 1, dir });
        push_nontrivial(&mut moves, Move::Sign(signs.clone()));
    }
    let (perm, signs) = targets[&nodes[end].0].clone();
    push_nontrivial(&mut moves, Move::Sign(signs));
    push_nontrivial(&mut moves, Move::Perm(inverse_perm(&perm)));
    let cert = EquivalenceCertificate::new(s1.clone(), s2.clone(), BraidWord::new(moves));
    Ok(SearchOutcome::Found(cert))
}

/// Result of sampling the braid relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub n: usize,
    pub samples: usize,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl RelationReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A random upper triangular unipotent integer matrix with entries in
/// `[−bound, bound]`.
pub fn random_unipotent(n: usize, bound: i64, rng: &mut impl Rng) -> RatMatrix {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match j.cmp(&i) {
                    std::cmp::Ordering::Less => 0,
                    std::cmp::Ordering::Equal => 1,
                    std::cmp::Ordering::Greater => rng.gen_range(-bound..=bound),
                })
                .collect()
        })
        .collect();
    RatMatrix::from_i64_rows(&rows).expect("square")
}

/// Checks `β_iβ_{i+1}β_i = β_{i+1}β_iβ_{i+1}` and `β_iβ_j = β_jβ_i` for
/// `|i − j| ≥ 2` as actions on random unipotent integer matrices.
pub fn verify_braid_group_relations(n: usize, samples: usize, seed: u64) -> Result<RelationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = 0;
    let mut failures = Vec::new();
    let word = |a: &RatMatrix, idx: &[usize]| -> Result<RatMatrix> { idx.iter().try_fold(a.clone(), |m, &i| beta(i, &m)) };
    for s in 0..samples {
        let a = random_unipotent(n, 3, &mut rng);
        for i in 1..n {
            for j in i + 1..n {
                let (l, r) = if j == i + 1 {
                    (word(&a, &[i, j, i])?, word(&a, &[j, i, j])?)
                } else {
                    (word(&a, &[i, j])?, word(&a, &[j, i])?)
                };
                checks += 1;
                if l != r {
                    failures.push(format!("sample {s}: relation between beta{i} and beta{j}"));
                }
            }
        }
    }
    Ok(RelationReport { n, samples, checks, failures })
}

/// The rational matrix with `a[i][j] = rows[i][j]`.
pub fn int_matrix(rows: &[Vec<i64>]) -> RatMatrix {
    RatMatrix::from_i64_rows(rows).expect("square")
}

/// Is `b` obtained from `a` by a sign conjugation?
pub fn sign_equivalent(a: &RatMatrix, b: &RatMatrix) -> bool {
    let (Ok(x), Ok(y)) = (Int::from_rat(a), Int::from_rat(b)) else {
        return false;
    };
    x.n == y.n && canonical_signs(&x.a, x.n).0 == canonical_signs(&y.a, y.n).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PolyMatrix, TruncatedPoly};

    fn m(rows: &[&[i64]]) -> RatMatrix {
        int_matrix(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn two_by_two() {
        for a in [-3, 0, 2, 5] {
            assert_eq!(beta(1, &m(&[&[1, a], &[0, 1]])).unwrap(), m(&[&[1, -a], &[0, 1]]));
            assert_eq!(beta_inv(1, &m(&[&[1, a], &[0, 1]])).unwrap(), m(&[&[1, -a], &[0, 1]]));
        }
    }

    #[test]
    fn polynomial_a2() {
        let s = PolyMatrix::parse_rows(&[vec!["1".into(), "-s".into()], vec!["0".into(), "1".into()]], 1).unwrap();
        let t = beta(1, &s).unwrap();
        assert_eq!(t.get(0, 1), &TruncatedPoly::parse("s", 1).unwrap());
    }

    #[test]
    fn rejects_non_triangular() {
        assert!(beta(1, &m(&[&[1, 0], &[1, 1]])).is_err());
        assert!(beta(2, &m(&[&[1, 0], &[0, 1]])).is_err());
    }

    #[test]
    fn sign_and_perm() {
        assert_eq!(sign_conj(2, &m(&[&[1, -1], &[0, 1]])).unwrap(), m(&[&[1, 1], &[0, 1]]));
        let a = m(&[&[1, 2, 3], &[0, 1, 4], &[0, 0, 1]]);
        assert_eq!(perm_conj(&[1, 2, 3], &a).unwrap(), a);
        assert_eq!(perm_conj(&[1, 3, 2], &a).unwrap(), m(&[&[1, 3, 2], &[0, 1, 0], &[0, 4, 1]]));
        assert!(perm_conj(&[1, 1, 2], &a).is_err());
    }

    #[test]
    fn relations_small() {
        for n in 3..=5 {
            assert!(verify_braid_group_relations(n, 20, 1).unwrap().pass());
        }
        let id = m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(beta(1, &id).unwrap(), id);
        assert_eq!(beta(2, &id).unwrap(), id);
    }

    #[test]
    fn canonical_signs_are_class_invariant() {
        let a = m(&[&[1, 2, -1], &[0, 1, 3], &[0, 0, 1]]);
        let (k, s) = canonical_signs(&Int::from_rat(&a).unwrap().a, 3);
        assert_eq!(sign_vector_conj(&s, &a).unwrap(), Int { n: 3, a: k.clone() }.to_rat());
        for signs in [[1, -1, 1], [-1, 1, 1], [1, 1, -1]] {
            let b = sign_vector_conj(&signs, &a).unwrap();
            assert_eq!(canonical_signs(&Int::from_rat(&b).unwrap().a, 3).0, k);
        }
    }

    #[test]
    fn trivial_search() {
        let a = m(&[&[1, -1, 0], &[0, 1, -1], &[0, 0, 1]]);
        match equivalent(&a, &a, SearchLimits::default()).unwrap() {
            SearchOutcome::Found(c) => {
                assert!(c.verified);
                assert!(c.word.moves.is_empty());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn depth_zero_is_inconclusive() {
        let a = m(&[&[1, -1, 0], &[0, 1, -1], &[0, 0, 1]]);
        let b = m(&[&[1, 1, -1], &[0, 1, -1], &[0, 0, 1]]);
        let limits = SearchLimits { depth: 0, ..SearchLimits::default() };
        assert!(matches!(equivalent(&a, &b, limits).unwrap(), SearchOutcome::Inconclusive { .. }));
        match equivalent(&a, &b, SearchLimits::default()).unwrap() {
            SearchOutcome::Found(c) => assert!(c.verified && c.replay()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn budget_error() {
        let a = m(&[&[1, -1, 0, 0], &[0, 1, -1, 0], &[0, 0, 1, -1], &[0, 0, 0, 1]]);
        let b = m(&[&[1, 5, 0, 0], &[0, 1, 7, 0], &[0, 0, 1, 3], &[0, 0, 0, 1]]);
        let limits = SearchLimits { depth: 12, entry_bound: 64, max_states: 3 };
        assert!(matches!(equivalent(&a, &b, limits), Err(Error::BudgetExhausted { .. })));
    }

    #[test]
    fn certificate_json() {
        let a = m(&[&[1, -1], &[0, 1]]);
        let b = m(&[&[1, 1], &[0, 1]]);
        let c = EquivalenceCertificate::new(a, b, BraidWord::new(vec![Move::Sign(vec![1, -1])]));
        assert!(c.verified);
        let v = c.to_json();
        assert_eq!(v["word"], json!([{ "sign": [1, -1] }]));
        assert_eq!(EquivalenceCertificate::from_json(&v).unwrap(), c);
    }
}
