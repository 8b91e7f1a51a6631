//! Permutations in lexicographic order.

/// All permutations of `0..n`, lexicographically.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
}

/// Topological orders of the digraph on `0..n` with the given edges, in
/// lexicographic order. Empty when the graph has a cycle.
pub fn topological_orders(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    permutations(n)
        .into_iter()
        .filter(|p| {
            let mut pos = vec![0; n];
            for (k, &v) in p.iter().enumerate() {
                pos[v] = k;
            }
            edges.iter().all(|&(a, b)| pos[a] < pos[b])
        })
        .collect()
}

/// The lexicographically first topological order, found greedily.
pub fn first_topological_order(n: usize, edges: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut indegree = vec![0usize; n];
    for &(_, b) in edges {
        indegree[b] += 1;
    }
    let mut done = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).find(|&v| !done[v] && indegree[v] == 0)?;
        done[v] = true;
        out.push(v);
        for &(a, b) in edges {
            if a == v {
                indegree[b] -= 1;
            }
        }
    }
    Some(out)
}
