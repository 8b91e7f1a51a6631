//! Quivers without loops or 2-cycles, mutation, and the induced Euler form.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::LatticeVector;
use crate::error::{Error, Result};

/// Arrow multiplicities between vertices `1..=n`; `arrows[i][j]` counts arrows
/// `i+1 → j+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Quiver {
    n: usize,
    arrows: Vec<Vec<u32>>,
}

#[derive(Deserialize)]
struct QuiverJson {
    n: usize,
    arrows: Vec<Vec<u32>>,
}

impl<'de> Deserialize<'de> for Quiver {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = QuiverJson::deserialize(d)?;
        if raw.arrows.len() != raw.n {
            return Err(serde::de::Error::custom("arrow matrix size differs from n"));
        }
        Quiver::new(raw.arrows).map_err(serde::de::Error::custom)
    }
}

impl Quiver {
    pub fn new(arrows: Vec<Vec<u32>>) -> Result<Self> {
        let n = arrows.len();
        for (i, row) in arrows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidQuiver(format!("row {} has length {}", i + 1, row.len())));
            }
            if row[i] != 0 {
                return Err(Error::InvalidQuiver(format!("loop at vertex {}", i + 1)));
            }
            for (j, &a) in row.iter().enumerate() {
                if a != 0 && arrows[j][i] != 0 {
                    return Err(Error::InvalidQuiver(format!("2-cycle between {} and {}", i + 1, j + 1)));
                }
            }
        }
        Ok(Quiver { n, arrows })
    }

    /// Builds from `(from, to, multiplicity)` triples with 1-based vertices.
    pub fn from_arrows(n: usize, list: &[(usize, usize, u32)]) -> Result<Self> {
        let mut arrows = vec![vec![0; n]; n];
        for &(i, j, m) in list {
            for v in [i, j] {
                if v == 0 || v > n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            arrows[i - 1][j - 1] += m;
        }
        Self::new(arrows)
    }

    /// The linearly oriented `A_n`: `1 → 2 → ⋯ → n`.
    pub fn linear_a(n: usize) -> Self {
        let mut arrows = vec![vec![0; n]; n];
        for i in 0..n.saturating_sub(1) {
            arrows[i][i + 1] = 1;
        }
        Quiver { n, arrows }
    }

    /// The generalized Kronecker quiver with `lambda` arrows `1 → 2`.
    pub fn kronecker(lambda: u32) -> Self {
        Quiver { n: 2, arrows: vec![vec![0, lambda], vec![0, 0]] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of arrows `i+1 → j+1` (0-based indices).
    pub fn count(&self, i: usize, j: usize) -> u32 {
        self.arrows[i][j]
    }

    pub fn arrows(&self) -> &[Vec<u32>] {
        &self.arrows
    }

    /// `(from, to, multiplicity)` with 1-based vertices, in row-major order.
    pub fn arrow_list(&self) -> Vec<(usize, usize, u32)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.arrows[i][j] > 0 {
                    out.push((i + 1, j + 1, self.arrows[i][j]));
                }
            }
        }
        out
    }

    /// All arrows reversed.
    pub fn opposite(&self) -> Self {
        let mut arrows = vec![vec![0; self.n]; self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                arrows[j][i] = self.arrows[i][j];
            }
        }
        Quiver { n: self.n, arrows }
    }

    fn skew(&self, i: usize, j: usize) -> i64 {
        i64::from(self.arrows[i][j]) - i64::from(self.arrows[j][i])
    }

    /// Mutation at vertex `k` (1-based).
    pub fn mutate(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.n {
            return Err(Error::VertexOutOfRange { vertex: k, n: self.n });
        }
        let k = k - 1;
        let n = self.n;
        let mut arrows = vec![vec![0u32; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let b = if i == k || j == k {
                    -self.skew(i, j)
                } else {
                    let (bik, bkj) = (self.skew(i, k), self.skew(k, j));
                    self.skew(i, j) + bik.signum() * (bik * bkj).max(0)
                };
                if b > 0 {
                    arrows[i][j] = b as u32;
                }
            }
        }
        Ok(Quiver { n, arrows })
    }

    /// Applies a word of 1-based vertices left to right.
    pub fn mutate_word(&self, word: &[usize]) -> Result<Self> {
        word.iter().try_fold(self.clone(), |q, &k| q.mutate(k))
    }

    pub fn euler_form(&self) -> EulerForm {
        let n = self.n;
        let matrix = (0..n).map(|i| (0..n).map(|j| -self.skew(i, j)).collect()).collect();
        EulerForm { matrix }
    }

    /// Underlying undirected adjacency (vertices joined by at least one arrow).
    pub fn neighbours(&self, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| self.arrows[i][j] + self.arrows[j][i] > 0).collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for w in self.neighbours(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Breadth-first closure under mutation at every vertex. Each quiver is
    /// paired with a shortest mutation word reaching it; output is sorted by
    /// word length, then word.
    pub fn mutation_class(&self, max_size: usize) -> Result<Vec<(Quiver, Vec<usize>)>> {
        let mut found: BTreeMap<Quiver, Vec<usize>> = BTreeMap::new();
        let mut queue = VecDeque::new();
        found.insert(self.clone(), Vec::new());
        queue.push_back(self.clone());
        if found.len() > max_size {
            return Err(Error::ClassBudget { limit: max_size });
        }
        while let Some(q) = queue.pop_front() {
            let word = found[&q].clone();
            for k in 1..=self.n {
                let next = q.mutate(k)?;
                if found.contains_key(&next) {
                    continue;
                }
                let mut w = word.clone();
                w.push(k);
                found.insert(next.clone(), w);
                if found.len() > max_size {
                    return Err(Error::ClassBudget { limit: max_size });
                }
                queue.push_back(next);
            }
        }
        let mut out: Vec<_> = found.into_iter().collect();
        out.sort_by(|a, b| a.1.len().cmp(&b.1.len()).then_with(|| a.1.cmp(&b.1)));
        Ok(out)
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .arrow_list()
            .into_iter()
            .map(|(i, j, m)| if m == 1 { format!("{i}->{j}") } else { format!("{i}={m}=>{j}") })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// The skew-symmetric form `⟨−,−⟩` on classes, `e[i][j] = ⟨[S_i],[S_j]⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerForm {
    pub matrix: Vec<Vec<i64>>,
}

impl EulerForm {
    pub fn new(matrix: Vec<Vec<i64>>) -> Result<Self> {
        let n = matrix.len();
        for i in 0..n {
            if matrix[i].len() != n {
                return Err(Error::Dimension { left: n, right: matrix[i].len() });
            }
            for j in 0..n {
                if matrix[i][j] != -matrix[j][i] {
                    return Err(Error::InvalidQuiver("form is not skew-symmetric".into()));
                }
            }
        }
        Ok(EulerForm { matrix })
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    /// Bilinear extension to classes.
    pub fn pair(&self, v: &LatticeVector, w: &LatticeVector) -> i64 {
        let (v, w) = (v.coords(), w.coords());
        let mut total = 0;
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in w.iter().enumerate() {
                total += a * self.matrix[i][j] * b;
            }
        }
        total
    }

    /// The quiver realizing this form: a negative entry `e[i][j]` gives
    /// `|e[i][j]|` arrows `i → j`.
    pub fn quiver(&self) -> Quiver {
        let n = self.rank();
        let mut arrows = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                if self.matrix[i][j] < 0 {
                    arrows[i][j] = self.matrix[i][j].unsigned_abs() as u32;
                }
            }
        }
        Quiver { n, arrows }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mutate_a3_at_middle() {
        let q = Quiver::linear_a(3).mutate(2).unwrap();
        let expected = Quiver::from_arrows(3, &[(2, 1, 1), (1, 3, 1), (3, 2, 1)]).unwrap();
        assert_eq!(q, expected);
    }

    #[test]
    fn mutate_acyclic_triangle() {
        let t = Quiver::from_arrows(3, &[(1, 2, 1), (1, 3, 1), (2, 3, 1)]).unwrap();
        let expected = Quiver::from_arrows(3, &[(2, 1, 1), (1, 3, 2), (3, 2, 1)]).unwrap();
        assert_eq!(t.mutate(2).unwrap(), expected);
    }

    #[test]
    fn mutation_out_of_range() {
        assert!(Quiver::linear_a(3).mutate(0).is_err());
        assert!(Quiver::linear_a(3).mutate(4).is_err());
    }

    #[test]
    fn euler_forms() {
        let e = Quiver::linear_a(4).euler_form();
        for i in 0..4 {
            for j in 0..4 {
                let expected = if j == i + 1 {
                    -1
                } else if i == j + 1 {
                    1
                } else {
                    0
                };
                assert_eq!(e.entry(i, j), expected);
            }
        }
        assert!(Quiver::new(vec![vec![0; 3]; 3]).unwrap().euler_form().matrix.iter().flatten().all(|&x| x == 0));
        assert_eq!(Quiver::kronecker(3).euler_form().entry(0, 1), -3);
        assert_eq!(Quiver::kronecker(3).euler_form().quiver(), Quiver::kronecker(3));
    }

    #[test]
    fn invariants_rejected() {
        assert!(Quiver::new(vec![vec![1, 0], vec![0, 0]]).is_err());
        assert!(Quiver::new(vec![vec![0, 1], vec![1, 0]]).is_err());
        assert!(serde_json::from_str::<Quiver>(r#"{"n":2,"arrows":[[0,1],[1,0]]}"#).is_err());
    }

    #[test]
    fn class_sizes() {
        assert_eq!(Quiver::linear_a(2).mutation_class(100).unwrap().len(), 2);
        assert_eq!(Quiver::linear_a(1).mutation_class(100).unwrap().len(), 1);
        assert!(Quiver::linear_a(4).mutation_class(5).is_err());
        assert_eq!(Quiver::kronecker(3).mutation_class(5).unwrap().len(), 2);
    }

    #[test]
    fn a3_class_contains_listed_quivers() {
        let class: Vec<Quiver> =
            Quiver::linear_a(3).mutation_class(1000).unwrap().into_iter().map(|x| x.0).collect();
        let listed = [
            vec![(1, 2, 1), (2, 3, 1)],
            vec![(1, 2, 1), (3, 2, 1)],
            vec![(2, 1, 1), (3, 2, 1)],
            vec![(2, 1, 1), (2, 3, 1)],
            vec![(1, 3, 1), (3, 2, 1), (2, 1, 1)],
            vec![(1, 2, 1), (2, 3, 1), (3, 1, 1)],
        ];
        for arrows in listed {
            assert!(class.contains(&Quiver::from_arrows(3, &arrows).unwrap()));
        }
    }

    #[test]
    fn json_form() {
        let q = Quiver::linear_a(3);
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, r#"{"n":3,"arrows":[[0,1,0],[0,0,1],[0,0,0]]}"#);
        assert_eq!(serde_json::from_str::<Quiver>(&s).unwrap(), q);
    }
}
