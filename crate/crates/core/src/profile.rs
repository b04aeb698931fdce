//! Distance profiles and homometric verification.
//!
//! A profile is the multiset of pairwise hop distances of a vertex set. It is
//! kept as a histogram `counts[d]` (number of pairs at distance `d`), which is
//! in one-to-one correspondence with the sorted distance list.
//!
//! On general graphs the profile is computed by one BFS per member of the set.
//! On trees two routes are available through [`TreeMetric`]: pairwise
//! distances through an LCA index (cheap for small sets), and a centroid
//! decomposition that convolves depth histograms (cheap for large sets).

use std::fmt;
use std::sync::OnceLock;

use sha2::{Digest, Sha256};

use crate::convolve::Convolver;
use crate::error::{Error, Result};
use crate::graph::{bfs_distances, Graph, Tree, UNREACHABLE};

/// Multiset of pairwise distances, stored as a histogram without trailing zeros.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile {
    counts: Vec<u64>,
}

impl Profile {
    pub fn from_counts(mut counts: Vec<u64>) -> Self {
        if let Some(c) = counts.first_mut() {
            // distance 0 never occurs between distinct vertices
            *c = 0;
        }
        while counts.last() == Some(&0) {
            counts.pop();
        }
        Profile { counts }
    }

    pub fn from_distances<I: IntoIterator<Item = usize>>(distances: I) -> Self {
        let mut counts = Vec::new();
        for d in distances {
            if d >= counts.len() {
                counts.resize(d + 1, 0);
            }
            counts[d] += 1;
        }
        Profile::from_counts(counts)
    }

    /// Number of distances in the multiset.
    pub fn len(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// How many pairs lie at distance `d`.
    pub fn count(&self, d: usize) -> u64 {
        self.counts.get(d).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Distances in ascending order, with multiplicity.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(d, &c)| std::iter::repeat_n(d, c as usize))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Canonical byte encoding: for each distance with a nonzero count, in
    /// ascending order, the distance then the count as little-endian `u64`.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut bytes = Vec::new();
        for (d, &c) in self.counts.iter().enumerate().filter(|(_, &c)| c > 0) {
            bytes.extend_from_slice(&(d as u64).to_le_bytes());
            bytes.extend_from_slice(&c.to_le_bytes());
        }
        bytes
    }

    /// Hex SHA-256 of [`Profile::canonical_bytes`].
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_bytes()))
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Profile of `set` in `g`. Sets of fewer than two vertices have the empty
/// profile. Trees are routed through [`TreeMetric`]; other graphs use one BFS
/// per member, and a set spanning two components is an error.
pub fn distance_profile(g: &Graph, set: &[usize]) -> Result<Profile> {
    g.check_set(set)?;
    if set.len() < 2 {
        return Ok(Profile::default());
    }
    if g.is_tree() {
        return TreeMetric::new(g).profile_unchecked(set);
    }
    bfs_profile(g, set)
}

fn bfs_profile(g: &Graph, set: &[usize]) -> Result<Profile> {
    let mut counts = Vec::new();
    for (i, &u) in set.iter().enumerate().take(set.len() - 1) {
        let dist = bfs_distances(g, u)?;
        for &v in &set[i + 1..] {
            let d = dist[v];
            if d == UNREACHABLE {
                return Err(Error::Disconnected(u, v));
            }
            if d >= counts.len() {
                counts.resize(d + 1, 0);
            }
            counts[d] += 1;
        }
    }
    Ok(Profile::from_counts(counts))
}

/// Outcome of comparing two vertex sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Homometric,
    SizesDiffer,
    /// The sets share a vertex; `profiles_equal` records whether the profiles
    /// would otherwise have matched.
    Intersecting { profiles_equal: bool },
    ProfilesDiffer,
}

impl Verdict {
    pub fn is_homometric(self) -> bool {
        self == Verdict::Homometric
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Homometric => "homometric",
            Verdict::SizesDiffer => "sets differ in size",
            Verdict::Intersecting { profiles_equal: true } => "profiles equal but sets intersect",
            Verdict::Intersecting { profiles_equal: false } => "sets intersect and profiles differ",
            Verdict::ProfilesDiffer => "profiles differ",
        })
    }
}

/// Compares two sets and returns both profiles together with the verdict.
pub fn compare_sets(g: &Graph, a: &[usize], b: &[usize]) -> Result<(Verdict, Profile, Profile)> {
    g.check_set(a)?;
    g.check_set(b)?;
    if g.is_tree() {
        let metric = TreeMetric::new(g);
        let (pa, pb) = metric.profile_pair(a, b);
        return Ok((verdict(g.n(), a, b, &pa, &pb), pa, pb));
    }
    let pa = distance_profile(g, a)?;
    let pb = distance_profile(g, b)?;
    Ok((verdict(g.n(), a, b, &pa, &pb), pa, pb))
}

fn verdict(n: usize, a: &[usize], b: &[usize], pa: &Profile, pb: &Profile) -> Verdict {
    let mut in_a = vec![false; n];
    for &v in a {
        in_a[v] = true;
    }
    let intersect = b.iter().any(|&v| in_a[v]);
    if intersect {
        Verdict::Intersecting { profiles_equal: pa == pb }
    } else if a.len() != b.len() {
        Verdict::SizesDiffer
    } else if pa != pb {
        Verdict::ProfilesDiffer
    } else {
        Verdict::Homometric
    }
}

/// True iff `a` and `b` are disjoint, equally sized and share a profile.
pub fn is_homometric(g: &Graph, a: &[usize], b: &[usize]) -> Result<bool> {
    Ok(compare_sets(g, a, b)?.0.is_homometric())
}

/// Two disjoint vertex sets of equal size whose profiles were checked equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomometricPair {
    a: Vec<usize>,
    b: Vec<usize>,
    profile: Profile,
}

impl HomometricPair {
    /// Verifies `a` and `b` in `g`. The stored vertex lists are sorted.
    pub fn verify(g: &Graph, a: Vec<usize>, b: Vec<usize>) -> Result<Self> {
        let (verdict, profile, _) = compare_sets(g, &a, &b)?;
        Self::from_verdict(verdict, a, b, profile)
    }

    /// Verification against a prebuilt tree metric.
    pub fn verify_in(metric: &TreeMetric<'_>, a: Vec<usize>, b: Vec<usize>) -> Result<Self> {
        let g = metric.graph();
        g.check_set(&a)?;
        g.check_set(&b)?;
        let (pa, pb) = metric.profile_pair(&a, &b);
        let verdict = verdict(g.n(), &a, &b, &pa, &pb);
        Self::from_verdict(verdict, a, b, pa)
    }

    fn from_verdict(verdict: Verdict, mut a: Vec<usize>, mut b: Vec<usize>, profile: Profile) -> Result<Self> {
        if !verdict.is_homometric() {
            return Err(Error::Verification(verdict.to_string()));
        }
        a.sort_unstable();
        b.sort_unstable();
        Ok(HomometricPair { a, b, profile })
    }

    pub fn size(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[usize] {
        &self.a
    }

    pub fn b(&self) -> &[usize] {
        &self.b
    }

    /// The common profile of both sets.
    pub fn profile(&self) -> &Profile {
        &self.profile
    }
}

/// Distance queries and profile computation on a tree.
///
/// The LCA index is built on first use.
pub struct TreeMetric<'a> {
    g: &'a Graph,
    lca: OnceLock<LcaIndex>,
}

/// Profile route selection for [`TreeMetric::profile_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileRoute {
    Auto,
    Pairwise,
    Centroid,
}

impl<'a> TreeMetric<'a> {
    fn new(g: &'a Graph) -> Self {
        debug_assert!(g.is_tree());
        TreeMetric {
            g,
            lca: OnceLock::new(),
        }
    }

    pub fn of(tree: &'a Tree) -> Self {
        TreeMetric::new(tree.graph())
    }

    pub fn graph(&self) -> &'a Graph {
        self.g
    }

    fn lca(&self) -> &LcaIndex {
        self.lca.get_or_init(|| LcaIndex::new(self.g))
    }

    pub fn distance(&self, u: usize, v: usize) -> Result<usize> {
        self.g.check_vertex(u)?;
        self.g.check_vertex(v)?;
        Ok(self.lca().distance(u, v))
    }

    pub fn profile(&self, set: &[usize]) -> Result<Profile> {
        self.profile_with(set, ProfileRoute::Auto)
    }

    pub fn profile_with(&self, set: &[usize], route: ProfileRoute) -> Result<Profile> {
        self.g.check_set(set)?;
        Ok(self.route(set, route))
    }

    fn profile_unchecked(&self, set: &[usize]) -> Result<Profile> {
        Ok(self.route(set, ProfileRoute::Auto))
    }

    fn pick(&self, set: &[usize], route: ProfileRoute) -> ProfileRoute {
        match route {
            ProfileRoute::Auto if prefer_pairwise(self.g.n(), set.len()) => ProfileRoute::Pairwise,
            ProfileRoute::Auto => ProfileRoute::Centroid,
            r => r,
        }
    }

    fn route(&self, set: &[usize], route: ProfileRoute) -> Profile {
        if set.len() < 2 {
            return Profile::default();
        }
        match self.pick(set, route) {
            ProfileRoute::Pairwise => self.pairwise_profile(set),
            _ => centroid_profiles(self.g, &[set]).pop().unwrap(),
        }
    }

    /// Profiles of two sets; large sets share one decomposition.
    fn profile_pair(&self, a: &[usize], b: &[usize]) -> (Profile, Profile) {
        let big = |s: &[usize]| s.len() >= 2 && self.pick(s, ProfileRoute::Auto) == ProfileRoute::Centroid;
        if big(a) && big(b) {
            let mut both = centroid_profiles(self.g, &[a, b]);
            let pb = both.pop().unwrap();
            (both.pop().unwrap(), pb)
        } else {
            (self.route(a, ProfileRoute::Auto), self.route(b, ProfileRoute::Auto))
        }
    }

    pub fn is_homometric(&self, a: &[usize], b: &[usize]) -> Result<bool> {
        self.g.check_set(a)?;
        self.g.check_set(b)?;
        let (pa, pb) = self.profile_pair(a, b);
        Ok(verdict(self.g.n(), a, b, &pa, &pb).is_homometric())
    }

    fn pairwise_profile(&self, set: &[usize]) -> Profile {
        let lca = self.lca();
        let mut sorted: Vec<usize> = set.to_vec();
        sorted.sort_unstable_by_key(|&v| lca.tin[v]);
        let mut counts = vec![0u64; 2 * lca.max_depth as usize + 1];
        for (i, &u) in sorted.iter().enumerate() {
            for &v in &sorted[i + 1..] {
                counts[lca.distance_ordered(u, v)] += 1;
            }
        }
        Profile::from_counts(counts)
    }
}

fn prefer_pairwise(n: usize, k: usize) -> bool {
    let pairs = (k as f64) * (k as f64 - 1.0) / 2.0;
    let log = (n.max(2) as f64).log2();
    pairs <= 2.0 * n as f64 * log
}

/// LCA depths via range-minimum over the DFS preorder.
///
/// For `tin[u] < tin[v]`, the minimum depth over preorder positions
/// `tin[u] + 1 ..= tin[v]` is one more than the depth of `lca(u, v)`.
struct LcaIndex {
    tin: Vec<u32>,
    depth: Vec<u32>,
    max_depth: u32,
    sparse: Vec<Vec<u32>>,
}

impl LcaIndex {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut tin = vec![0u32; n];
        let mut depth = vec![0u32; n];
        let mut order_depth = Vec::with_capacity(n);
        let mut visited = vec![false; n];
        let mut stack = vec![0usize];
        visited[0] = true;
        while let Some(u) = stack.pop() {
            tin[u] = order_depth.len() as u32;
            order_depth.push(depth[u]);
            for &v in g.neighbors(u).iter().rev() {
                if !visited[v] {
                    visited[v] = true;
                    depth[v] = depth[u] + 1;
                    stack.push(v);
                }
            }
        }
        let max_depth = depth.iter().copied().max().unwrap_or(0);
        let mut sparse = vec![order_depth];
        let mut width = 1;
        while 2 * width <= n {
            let prev = sparse.last().unwrap();
            let next: Vec<u32> = (0..=n - 2 * width)
                .map(|i| prev[i].min(prev[i + width]))
                .collect();
            sparse.push(next);
            width *= 2;
        }
        LcaIndex {
            tin,
            depth,
            max_depth,
            sparse,
        }
    }

    fn distance(&self, u: usize, v: usize) -> usize {
        if self.tin[u] <= self.tin[v] {
            self.distance_ordered(u, v)
        } else {
            self.distance_ordered(v, u)
        }
    }

    /// Requires `tin[u] <= tin[v]`.
    #[inline]
    fn distance_ordered(&self, u: usize, v: usize) -> usize {
        if u == v {
            return 0;
        }
        let lo = self.tin[u] as usize + 1;
        let hi = self.tin[v] as usize + 1;
        let level = (usize::BITS - 1 - (hi - lo).leading_zeros()) as usize;
        let row = &self.sparse[level];
        let min = row[lo].min(row[hi - (1 << level)]);
        (self.depth[u] + self.depth[v] + 2 - 2 * min) as usize
    }
}

/// Profiles via centroid decomposition, one per set, sharing the traversal.
/// At each centroid the depth histograms of each set's marked vertices in
/// its branches are convolved pairwise, so every marked pair whose path
/// passes through the centroid is counted exactly once.
fn centroid_profiles(g: &Graph, sets: &[&[usize]]) -> Vec<Profile> {
    const NONE: u32 = u32::MAX;
    let n = g.n();
    let k = sets.len();
    debug_assert!(k <= 8);
    // flat adjacency
    let mut start = Vec::with_capacity(n + 1);
    let mut adj = Vec::with_capacity(2 * n);
    start.push(0u32);
    for u in 0..n {
        adj.extend(g.neighbors(u).iter().map(|&v| v as u32));
        start.push(adj.len() as u32);
    }
    let nbrs = |u: u32| &adj[start[u as usize] as usize..start[u as usize + 1] as usize];

    let mut marks = vec![0u8; n];
    for (i, set) in sets.iter().enumerate() {
        for &v in set.iter() {
            marks[v] |= 1 << i;
        }
    }
    let mut removed = vec![false; n];
    let mut parent = vec![NONE; n];
    let mut size = vec![0u32; n];
    let mut counts = vec![vec![0u64; n]; k];
    let mut conv = Convolver::new();
    let mut order: Vec<u32> = Vec::with_capacity(n);
    let mut branch: Vec<(u32, u32)> = Vec::new();
    let mut accs: Vec<Vec<u64>> = vec![Vec::new(); k];
    let mut hists: Vec<(u32, Vec<Vec<u64>>)> = Vec::new();
    let Some(first) = sets.iter().find_map(|s| s.first()) else {
        return vec![Profile::default(); k];
    };
    let mut stack = vec![*first as u32];

    while let Some(root) = stack.pop() {
        order.clear();
        order.push(root);
        parent[root as usize] = NONE;
        let mut i = 0;
        while i < order.len() {
            let u = order[i];
            size[u as usize] = 1;
            for &v in nbrs(u) {
                if !removed[v as usize] && v != parent[u as usize] {
                    parent[v as usize] = u;
                    order.push(v);
                }
            }
            i += 1;
        }
        for &u in order[1..].iter().rev() {
            size[parent[u as usize] as usize] += size[u as usize];
        }
        let total = order.len() as u32;
        let mut centroid = root;
        'descend: loop {
            for &v in nbrs(centroid) {
                if !removed[v as usize] && v != parent[centroid as usize] && size[v as usize] * 2 > total {
                    centroid = v;
                    continue 'descend;
                }
            }
            break;
        }
        removed[centroid as usize] = true;

        hists.clear();
        for &b in nbrs(centroid) {
            if removed[b as usize] {
                continue;
            }
            let mut hist: Vec<Vec<u64>> = vec![Vec::new(); k];
            branch.clear();
            branch.push((b, centroid));
            let mut depth = 1;
            let mut level_start = 0;
            while level_start < branch.len() {
                let level_end = branch.len();
                for j in level_start..level_end {
                    let (u, from) = branch[j];
                    let m = marks[u as usize];
                    if m != 0 {
                        for (s, h) in hist.iter_mut().enumerate() {
                            if m >> s & 1 == 1 {
                                if depth >= h.len() {
                                    h.resize(depth + 1, 0);
                                }
                                h[depth] += 1;
                            }
                        }
                    }
                    for &v in nbrs(u) {
                        if v != from && !removed[v as usize] {
                            branch.push((v, u));
                        }
                    }
                }
                level_start = level_end;
                depth += 1;
            }
            if hist.iter().any(|h| !h.is_empty()) {
                hists.push((b, hist));
            }
        }
        for s in 0..k {
            let acc = &mut accs[s];
            acc.clear();
            acc.push(u64::from(marks[centroid as usize] >> s & 1));
            let mut mine: Vec<&Vec<u64>> = hists.iter().map(|(_, h)| &h[s]).filter(|h| !h.is_empty()).collect();
            mine.sort_by_key(|h| h.len());
            for hist in mine {
                conv.accumulate(acc, hist, &mut counts[s]);
                if acc.len() < hist.len() {
                    acc.resize(hist.len(), 0);
                }
                for (x, &y) in acc.iter_mut().zip(hist) {
                    *x += y;
                }
            }
        }
        for (b, hist) in &hists {
            if hist.iter().any(|h| h.iter().sum::<u64>() >= 2) {
                stack.push(*b);
            }
        }
    }
    counts.into_iter().map(Profile::from_counts).collect()
}
