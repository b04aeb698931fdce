//! Independent reference computations shared by the integration tests. These
//! avoid the library's tree metric, LCA index and convolution code paths.

#![allow(dead_code)]

use std::collections::VecDeque;

use homometric::Graph;

/// Sorted pairwise BFS distances of `set`.
pub fn naive_profile(g: &Graph, set: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    for (i, &u) in set.iter().enumerate() {
        let dist = bfs(g, u);
        out.extend(set[i + 1..].iter().map(|&v| dist[v]));
    }
    out.sort_unstable();
    out
}

pub fn bfs(g: &Graph, src: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[src] = 0;
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

pub fn naive_homometric(g: &Graph, a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len() && a.iter().all(|x| !b.contains(x)) && naive_profile(g, a) == naive_profile(g, b)
}

/// Height in vertices and the pairing value, straight from the recursive
/// definition (children sorted by height, longest first).
pub fn naive_f(g: &Graph, root: usize) -> (usize, usize) {
    fn go(g: &Graph, u: usize, parent: usize) -> (usize, usize) {
        let mut kids: Vec<(usize, usize)> = g
            .neighbors(u)
            .iter()
            .filter(|&&v| v != parent)
            .map(|&v| go(g, v, u))
            .collect();
        kids.sort_by(|x, y| y.0.cmp(&x.0));
        let h = 1 + kids.first().map_or(0, |k| k.0);
        let sum: usize = kids.iter().map(|k| k.1).sum();
        let paired: usize = kids.iter().skip(1).step_by(2).map(|k| k.0).sum();
        (h, sum.max(paired))
    }
    go(g, root, usize::MAX)
}

/// Overlap at every shift from all (even rank, odd rank) leg pairs.
pub fn naive_overlaps(lengths: &[usize]) -> std::collections::BTreeMap<isize, u64> {
    let s = lengths.len();
    let mut order: Vec<usize> = (0..s).collect();
    order.sort_by(|&a, &b| lengths[b].cmp(&lengths[a]).then(a.cmp(&b)));
    let mut rank = vec![0; s];
    for (r, &p) in order.iter().enumerate() {
        rank[p] = r + 1;
    }
    let mut out = std::collections::BTreeMap::new();
    for p in 0..s {
        for q in 0..s {
            if rank[p] % 2 == 0 && rank[q] % 2 == 1 {
                *out.entry(p as isize - q as isize).or_insert(0) += lengths[p].min(lengths[q]) as u64;
            }
        }
    }
    out
}
