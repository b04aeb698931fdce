//! Pairing of equal-length downward paths that start at sibling vertices.
//!
//! For a rooted tree with children `v1, v2, ...` of the root sorted by height
//! (descending), the pairing value is
//!
//! ```text
//! f(T) = 0                                         if T has at most one vertex
//! f(T) = max( sum_i f(T_vi), sum_i h(T_v(2i)) )    otherwise
//! ```
//!
//! where an odd child count is padded with an empty child of height 0. The
//! second term pairs the longest downward path from `v(2i)` with the prefix of
//! the same length of the longest downward path from `v(2i-1)`. Any family of
//! such pairs in which no root-to-leaf path meets two paths yields two
//! homometric sets, one per side.
//!
//! Everything here runs on explicit stacks and BFS orders so that path-shaped
//! inputs with a million vertices do not recurse.

use crate::error::{Error, Result};
use crate::graph::Tree;
use crate::path::{longest_path, split_in};
use crate::profile::{HomometricPair, TreeMetric};

const NO_PARENT: usize = usize::MAX;

/// A tree with a designated root, children sorted by subtree height
/// (descending, ties by ascending id) and per-vertex heights.
#[derive(Debug, Clone)]
pub struct RootedTree {
    tree: Tree,
    root: usize,
    parent: Vec<usize>,
    /// Children of `v` are `child_list[child_start[v]..child_start[v + 1]]`.
    child_start: Vec<usize>,
    child_list: Vec<usize>,
    height: Vec<usize>,
    /// BFS order from the root; parents precede children.
    order: Vec<usize>,
    /// Preorder index and subtree size, for ancestor tests.
    tin: Vec<usize>,
    size: Vec<usize>,
}

/// Roots a copy of `t` at `r`.
pub fn root_at(t: &Tree, r: usize) -> Result<RootedTree> {
    RootedTree::new(t.clone(), r)
}

impl RootedTree {
    pub fn new(tree: Tree, root: usize) -> Result<Self> {
        tree.graph().check_vertex(root)?;
        let n = tree.n();
        let mut parent = vec![NO_PARENT; n];
        let mut order = Vec::with_capacity(n);
        order.push(root);
        let mut i = 0;
        while i < order.len() {
            let u = order[i];
            for &v in tree.neighbors(u) {
                if v != root && parent[v] == NO_PARENT {
                    parent[v] = u;
                    order.push(v);
                }
            }
            i += 1;
        }
        let mut height = vec![1usize; n];
        let mut size = vec![1usize; n];
        for &u in order.iter().rev() {
            let p = parent[u];
            if p != NO_PARENT {
                height[p] = height[p].max(height[u] + 1);
                size[p] += size[u];
            }
        }
        let mut child_start = vec![0usize; n + 1];
        for &u in &order[1..] {
            child_start[parent[u] + 1] += 1;
        }
        for v in 0..n {
            child_start[v + 1] += child_start[v];
        }
        let mut fill = child_start.clone();
        let mut child_list = vec![0usize; n.saturating_sub(1)];
        for &u in &order[1..] {
            child_list[fill[parent[u]]] = u;
            fill[parent[u]] += 1;
        }
        for v in 0..n {
            child_list[child_start[v]..child_start[v + 1]]
                .sort_unstable_by(|&a, &b| height[b].cmp(&height[a]).then(a.cmp(&b)));
        }
        let mut tin = vec![0usize; n];
        let mut stack = vec![root];
        let mut clock = 0;
        while let Some(u) = stack.pop() {
            tin[u] = clock;
            clock += 1;
            stack.extend(child_list[child_start[u]..child_start[u + 1]].iter().rev());
        }
        Ok(RootedTree {
            tree,
            root,
            parent,
            child_start,
            child_list,
            height,
            order,
            tin,
            size,
        })
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn n(&self) -> usize {
        self.tree.n()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        Some(self.parent[v]).filter(|&p| p != NO_PARENT)
    }

    /// Children of `v`, tallest subtree first.
    pub fn children(&self, v: usize) -> &[usize] {
        &self.child_list[self.child_start[v]..self.child_start[v + 1]]
    }

    /// Vertex count of the longest downward path starting at `v`.
    pub fn height(&self, v: usize) -> usize {
        self.height[v]
    }

    /// Vertex count of the subtree rooted at `v`.
    pub fn subtree_size(&self, v: usize) -> usize {
        self.size[v]
    }

    /// Whether `x` lies on the root path of `y` (inclusive).
    pub fn is_ancestor_or_self(&self, x: usize, y: usize) -> bool {
        self.tin[x] <= self.tin[y] && self.tin[y] < self.tin[x] + self.size[x]
    }

    /// The longest downward path from `v`, always stepping to the tallest child.
    pub fn longest_down_path(&self, v: usize) -> DownPath {
        self.down_path(v, self.height[v])
    }

    fn down_path(&self, top: usize, len: usize) -> DownPath {
        let mut vertices = Vec::with_capacity(len);
        let mut v = top;
        vertices.push(v);
        while vertices.len() < len {
            v = self.children(v)[0];
            vertices.push(v);
        }
        DownPath { vertices }
    }

    fn pairing_table(&self) -> PairingTable {
        let n = self.n();
        let mut value = vec![0usize; n];
        let mut pairs = vec![false; n];
        for &u in self.order.iter().rev() {
            let kids = self.children(u);
            if kids.is_empty() {
                continue;
            }
            let sum_children: usize = kids.iter().map(|&c| value[c]).sum();
            let sum_pairs: usize = kids.iter().skip(1).step_by(2).map(|&c| self.height[c]).sum();
            // ties go to the pairing branch
            if sum_pairs >= sum_children {
                value[u] = sum_pairs;
                pairs[u] = true;
            } else {
                value[u] = sum_children;
            }
        }
        PairingTable { value, pairs }
    }
}

struct PairingTable {
    value: Vec<usize>,
    /// Whether the pairing branch realizes the value at each vertex.
    pairs: Vec<bool>,
}

/// A nonempty path in which each vertex is a child of the previous one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DownPath {
    vertices: Vec<usize>,
}

impl DownPath {
    pub fn new(rt: &RootedTree, vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::NotDescending("path is empty".into()));
        }
        rt.tree.graph().check_set(&vertices)?;
        if let Some(w) = vertices.windows(2).find(|w| rt.parent(w[1]) != Some(w[0])) {
            return Err(Error::NotDescending(format!("{} is not a child of {}", w[1], w[0])));
        }
        Ok(DownPath { vertices })
    }

    pub fn top(&self) -> usize {
        self.vertices[0]
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Matched path pairs; the first path of each pair goes to side A.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PairingPlan {
    pub matched: Vec<(DownPath, DownPath)>,
    /// Vertices per side.
    pub value: usize,
}

impl PairingPlan {
    pub fn sides(&self) -> (Vec<usize>, Vec<usize>) {
        let mut a = Vec::with_capacity(self.value);
        let mut b = Vec::with_capacity(self.value);
        for (p, q) in &self.matched {
            a.extend_from_slice(p.vertices());
            b.extend_from_slice(q.vertices());
        }
        (a, b)
    }
}

/// The pairing value of the whole rooted tree.
pub fn compute_f(rt: &RootedTree) -> usize {
    rt.pairing_table().value[rt.root]
}

/// Realizes the maximizing branch at every vertex and returns the plan
/// together with the verified pair. The pair size always equals
/// [`compute_f`].
pub fn construct_pairing(rt: &RootedTree) -> Result<(PairingPlan, HomometricPair)> {
    let plan = pairing_plan(rt);
    let (a, b) = plan.sides();
    let pair = HomometricPair::verify_in(&TreeMetric::of(&rt.tree), a, b)?;
    Ok((plan, pair))
}

pub(crate) fn pairing_plan(rt: &RootedTree) -> PairingPlan {
    let table = rt.pairing_table();
    let mut plan = PairingPlan::default();
    let mut stack = vec![rt.root];
    while let Some(u) = stack.pop() {
        let kids = rt.children(u);
        if kids.is_empty() {
            continue;
        }
        if table.pairs[u] {
            for chunk in kids.chunks_exact(2) {
                let (long, short) = (chunk[0], chunk[1]);
                let len = rt.height[short];
                let first = rt.down_path(long, len);
                let second = rt.down_path(short, len);
                plan.value += len;
                plan.matched.push((first, second));
            }
        } else {
            stack.extend(kids.iter().rev());
        }
    }
    debug_assert_eq!(plan.value, table.value[rt.root]);
    plan
}

/// True iff no root-to-leaf path meets both `p` and `q`. For descending paths
/// this means no vertex of either is an ancestor-or-self of the other's top.
pub fn paths_independent(rt: &RootedTree, p: &DownPath, q: &DownPath) -> Result<bool> {
    for path in [p, q] {
        DownPath::new(rt, path.vertices.clone())?;
    }
    let blocks = |x: &DownPath, y: &DownPath| x.vertices.iter().any(|&v| rt.is_ancestor_or_self(v, y.top()));
    Ok(!blocks(p, q) && !blocks(q, p))
}

/// Result of the tree search with both candidate sizes.
#[derive(Debug, Clone)]
pub struct TreeSearch {
    pub pair: HomometricPair,
    /// Vertex count of the longest path found.
    pub longest_path: usize,
    pub path_candidate: usize,
    pub pairing_candidate: usize,
}

/// Disjoint homometric sets of size `k` with `(2k + 1)^2 >= 2n` in any tree
/// on `n >= 2` vertices.
pub fn tree_find(t: &Tree) -> Result<HomometricPair> {
    Ok(tree_search(t)?.pair)
}

/// Computes both candidates: the halves of a longest path, and the pairing
/// plan rooted at the first vertex of the second half. Returns the larger,
/// preferring the path halves on ties.
pub fn tree_search(t: &Tree) -> Result<TreeSearch> {
    let n = t.n();
    if n < 2 {
        return Err(Error::TooSmall(n));
    }
    let metric = TreeMetric::of(t);
    let path = longest_path(t);
    let g = path.len();
    let half = g / 2;
    let rt = RootedTree::new(t.clone(), path.vertices()[half])?;
    let plan = pairing_plan(&rt);
    let pair = if half >= plan.value {
        split_in(&metric, path.vertices())?
    } else {
        let (a, b) = plan.sides();
        HomometricPair::verify_in(&metric, a, b)?
    };
    Ok(TreeSearch {
        pair,
        longest_path: g,
        path_candidate: half,
        pairing_candidate: plan.value,
    })
}

/// Integer form of `f >= ceil(n / h - 1)` for binary trees: `h * (f + 1) >= n`.
pub fn binary_bound_holds(rt: &RootedTree) -> Result<bool> {
    if let Some(v) = (0..rt.n()).find(|&v| rt.children(v).len() > 2) {
        return Err(Error::NotBinary {
            vertex: v,
            children: rt.children(v).len(),
        });
    }
    let h = rt.height[rt.root];
    Ok(h * (compute_f(rt) + 1) >= rt.n())
}

struct Builder {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    fn edge(&mut self, u: usize, v: usize) {
        self.edges.push((u, v));
    }

    fn finish(self, root: usize) -> Result<RootedTree> {
        RootedTree::new(Tree::from_edges(self.n, &self.edges)?, root)
    }
}

/// `H_i`: a chain of `i` vertices in which every vertex but the last also has a leaf child.
fn push_h(i: usize, b: &mut Builder) -> usize {
    let root = b.vertex();
    let mut cur = root;
    for _ in 1..i {
        let next = b.vertex();
        b.edge(cur, next);
        let leaf = b.vertex();
        b.edge(cur, leaf);
        cur = next;
    }
    root
}

/// `H_1` is one vertex; `H_i` is a root with a leaf child and `H_(i-1)`.
pub fn gen_h(i: usize) -> Result<RootedTree> {
    if i == 0 {
        return Err(Error::ZeroIndex);
    }
    let mut b = Builder { n: 0, edges: Vec::new() };
    let root = push_h(i, &mut b);
    b.finish(root)
}

/// `R_1` is one vertex; `R_i` is a root with children `R_(i-1)` and `H_(i-1)`.
pub fn gen_r(i: usize) -> Result<RootedTree> {
    if i == 0 {
        return Err(Error::ZeroIndex);
    }
    let mut b = Builder { n: 0, edges: Vec::new() };
    let root = b.vertex();
    let mut cur = root;
    for j in (2..=i).rev() {
        let next = b.vertex();
        b.edge(cur, next);
        let h = push_h(j - 1, &mut b);
        b.edge(cur, h);
        cur = next;
    }
    b.finish(root)
}
