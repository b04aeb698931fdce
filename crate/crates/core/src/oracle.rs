//! Brute-force ground truth and instance generators.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{bfs_with_parents, Tree};
use crate::haircomb::{build_haircomb, Haircomb};
use crate::pairing::{gen_h, gen_r};
use crate::profile::HomometricPair;

pub const DEFAULT_ORACLE_LIMIT: usize = 14;
/// Largest tree the oracle accepts whatever limit is asked for.
pub const ORACLE_HARD_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub max_size: usize,
    pub witness: Option<HomometricPair>,
}

/// Histogram of a subset's pairwise distances packed 8 bits per distance.
/// Counts stay below `C(20, 2) = 190`, so the packing is exact.
type Key = [u64; 3];

fn bump(key: &mut Key, d: usize) {
    let bit = 8 * (d - 1);
    key[bit / 64] += 1 << (bit % 64);
}

/// Exact maximum size of a disjoint homometric pair in `t`, by enumerating
/// all `2^n` subsets.
pub fn oracle_max_homometric(t: &Tree, limit: usize) -> Result<OracleResult> {
    let n = t.n();
    let cap = limit.min(ORACLE_HARD_CAP);
    if n > cap {
        return Err(Error::OracleLimit { n, limit: cap });
    }
    let dist: Vec<Vec<usize>> = (0..n).map(|v| bfs_with_parents(t.graph(), v).0).collect();
    let total = 1usize << n;
    let mut keys: Vec<Key> = vec![[0; 3]; total];
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); n / 2 + 1];
    for mask in 1..total {
        let top = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
        let rest = mask ^ (1 << top);
        let mut key = keys[rest];
        let mut bits = rest;
        while bits != 0 {
            let u = bits.trailing_zeros() as usize;
            bump(&mut key, dist[top][u]);
            bits &= bits - 1;
        }
        keys[mask] = key;
        let k = mask.count_ones() as usize;
        if k <= n / 2 {
            by_size[k].push(mask as u32);
        }
    }
    for k in (1..=n / 2).rev() {
        let bucket = &mut by_size[k];
        bucket.sort_unstable_by_key(|&m| (keys[m as usize], m));
        for group in bucket.chunk_by(|&x, &y| keys[x as usize] == keys[y as usize]) {
            if let Some((a, b)) = disjoint_pair(group) {
                let witness = HomometricPair::verify(t.graph(), members(a), members(b))?;
                return Ok(OracleResult { max_size: k, witness: Some(witness) });
            }
        }
    }
    Ok(OracleResult { max_size: 0, witness: None })
}

fn disjoint_pair(group: &[u32]) -> Option<(u32, u32)> {
    for (i, &a) in group.iter().enumerate() {
        if let Some(&b) = group[i + 1..].iter().find(|&&b| a & b == 0) {
            return Some((a, b));
        }
    }
    None
}

fn members(mask: u32) -> Vec<usize> {
    (0..32).filter(|&v| mask >> v & 1 == 1).collect()
}

/// Decodes a sequence of `n - 2` labels in `0..n` into the tree it encodes.
pub fn decode_sequence(n: usize, seq: &[usize]) -> Result<Tree> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n < 3 {
        return Tree::path(n);
    }
    if seq.len() != n - 2 {
        return Err(Error::InvalidGenerator(format!("sequence of length {} for n = {n}", seq.len())));
    }
    if let Some(&v) = seq.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = degree.iter().position(|&d| d == 1).unwrap();
    let mut leaf = ptr;
    for &v in seq {
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 && v < ptr {
            leaf = v;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    Tree::from_edges(n, &edges)
}

/// Every labeled tree on `n` vertices, once each, in sequence order.
pub fn enumerate_labeled_trees(n: usize) -> Result<LabeledTrees> {
    if !(1..=9).contains(&n) {
        return Err(Error::InvalidGenerator(format!("enumeration needs 1 <= n <= 9, got {n}")));
    }
    Ok(LabeledTrees {
        n,
        seq: vec![0; n.saturating_sub(2)],
        done: false,
    })
}

pub struct LabeledTrees {
    n: usize,
    seq: Vec<usize>,
    done: bool,
}

impl Iterator for LabeledTrees {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        if self.done {
            return None;
        }
        let tree = decode_sequence(self.n, &self.seq).expect("valid sequence");
        // odometer step; finished once every digit wraps
        self.done = true;
        for digit in self.seq.iter_mut().rev() {
            *digit += 1;
            if *digit < self.n {
                self.done = false;
                break;
            }
            *digit = 0;
        }
        Some(tree)
    }
}

/// Uniform labeled tree on `n` vertices.
pub fn random_tree(n: usize, seed: u64) -> Tree {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_tree_with(n.max(1), &mut rng)
}

fn random_tree_with(n: usize, rng: &mut ChaCha8Rng) -> Tree {
    let seq: Vec<usize> = (0..n.saturating_sub(2)).map(|_| rng.gen_range(0..n)).collect();
    decode_sequence(n, &seq).expect("valid sequence")
}

/// Binary tree rooted at 0, grown by attaching each new vertex to a uniform
/// vertex that has fewer than two children.
pub fn random_binary_tree(n: usize, seed: u64) -> Tree {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_binary_tree_with(n.max(1), &mut rng)
}

fn random_binary_tree_with(n: usize, rng: &mut ChaCha8Rng) -> Tree {
    let mut open = vec![0usize];
    let mut children = vec![0u8; n];
    let mut edges = Vec::with_capacity(n - 1);
    for v in 1..n {
        let i = rng.gen_range(0..open.len());
        let p = open[i];
        edges.push((p, v));
        children[p] += 1;
        if children[p] == 2 {
            open.swap_remove(i);
        }
        open.push(v);
    }
    Tree::from_edges(n, &edges).expect("valid tree")
}

/// Haircomb on `n` vertices: spine length uniform in `[2, 2 * ceil(sqrt n)]`
/// (capped at `n`), leg lengths a uniform composition of `n` into that many
/// positive parts.
pub fn random_haircomb(n: usize, seed: u64) -> Result<Haircomb> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_haircomb_with(n, &mut rng)
}

fn random_haircomb_with(n: usize, rng: &mut ChaCha8Rng) -> Result<Haircomb> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let root = (n as f64).sqrt().ceil() as usize;
    let hi = (2 * root).min(n);
    let s = if hi < 2 { 1 } else { rng.gen_range(2..=hi) };
    let mut cuts = sample(rng, n - 1, s - 1).into_vec();
    cuts.sort_unstable();
    let mut lengths = Vec::with_capacity(s);
    let mut prev = 0;
    for c in cuts.into_iter().map(|c| c + 1).chain([n]) {
        lengths.push(c - prev);
        prev = c;
    }
    build_haircomb(&lengths)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    RandomTree,
    RandomBinaryTree,
    RandomHaircomb,
    Path,
    Star,
    FamilyR,
    FamilyH,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 7] = [
        GeneratorKind::RandomTree,
        GeneratorKind::RandomBinaryTree,
        GeneratorKind::RandomHaircomb,
        GeneratorKind::Path,
        GeneratorKind::Star,
        GeneratorKind::FamilyR,
        GeneratorKind::FamilyH,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::RandomTree => "random-tree",
            GeneratorKind::RandomBinaryTree => "random-binary-tree",
            GeneratorKind::RandomHaircomb => "random-haircomb",
            GeneratorKind::Path => "path",
            GeneratorKind::Star => "star",
            GeneratorKind::FamilyR => "family-R",
            GeneratorKind::FamilyH => "family-H",
        }
    }

    /// Families take an index; everything else takes a vertex count.
    pub fn is_family(self) -> bool {
        matches!(self, GeneratorKind::FamilyR | GeneratorKind::FamilyH)
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GeneratorKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidGenerator(format!("unknown kind '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    /// Vertex count for the non-family kinds, index for the families.
    pub size: usize,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub tree: Tree,
    /// Present for haircomb-shaped kinds.
    pub haircomb: Option<Haircomb>,
    /// Root for the rooted kinds (binary trees and families).
    pub root: Option<usize>,
}

pub fn generate(spec: &GeneratorSpec) -> Result<Instance> {
    let GeneratorSpec { kind, size, seed } = *spec;
    if size == 0 {
        let what = if kind.is_family() { "index" } else { "n" };
        return Err(Error::InvalidGenerator(format!("{kind} needs {what} >= 1")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let plain = |tree| Instance { tree, haircomb: None, root: None };
    Ok(match kind {
        GeneratorKind::RandomTree => plain(random_tree_with(size, &mut rng)),
        GeneratorKind::RandomBinaryTree => Instance {
            tree: random_binary_tree_with(size, &mut rng),
            haircomb: None,
            root: Some(0),
        },
        GeneratorKind::RandomHaircomb => {
            let h = random_haircomb_with(size, &mut rng)?;
            Instance { tree: h.tree().clone(), haircomb: Some(h), root: None }
        }
        GeneratorKind::Path => {
            let h = build_haircomb(&vec![1; size])?;
            Instance { tree: h.tree().clone(), haircomb: Some(h), root: None }
        }
        GeneratorKind::Star => plain(Tree::star(size)?),
        GeneratorKind::FamilyR | GeneratorKind::FamilyH => {
            let rt = if kind == GeneratorKind::FamilyR { gen_r(size)? } else { gen_h(size)? };
            Instance { tree: rt.tree().clone(), haircomb: None, root: Some(rt.root()) }
        }
    })
}
