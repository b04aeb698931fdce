//! Haircomb trees and the shift-overlap construction.
//!
//! A haircomb is a spine path `v1 .. vs` with a leg (a path) hanging from each
//! spine vertex; the leg at position `i` has `m_i >= 1` vertices including
//! `v_i` itself. Rank the legs from longest to shortest and split them by
//! rank parity. Shifting the even-rank legs by `d` spine positions against
//! the odd-rank legs, every even-rank leg at position `p` that lands on an
//! odd-rank leg at `p - d` overlaps it in `min(m_p, m_(p-d))` vertices. The
//! overlapped vertices of the even legs and their images on the odd legs are
//! translates of each other along the spine, hence homometric.

use crate::convolve::Convolver;
use crate::error::{Error, Result};
use crate::graph::{bfs_with_parents, Tree};
use crate::path::split_in;
use crate::profile::{HomometricPair, TreeMetric};

/// A haircomb view of a tree: `legs[i][j]` is the vertex at spine position
/// `i` and height `j` (height 0 is the spine vertex).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Haircomb {
    tree: Tree,
    legs: Vec<Vec<usize>>,
}

impl Haircomb {
    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    /// Spine length, i.e. the number of legs.
    pub fn s(&self) -> usize {
        self.legs.len()
    }

    pub fn n(&self) -> usize {
        self.tree.n()
    }

    pub fn leg_lengths(&self) -> Vec<usize> {
        self.legs.iter().map(Vec::len).collect()
    }

    pub fn leg(&self, position: usize) -> &[usize] {
        &self.legs[position]
    }

    pub fn vertex(&self, position: usize, height: usize) -> Option<usize> {
        self.legs.get(position)?.get(height).copied()
    }

    pub fn spine(&self) -> Vec<usize> {
        self.legs.iter().map(|leg| leg[0]).collect()
    }

    /// Length of the longest leg.
    pub fn longest_leg(&self) -> usize {
        self.legs.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// Builds the haircomb with the given leg lengths. Spine vertices get ids
/// `0..s` in spine order; the remaining leg vertices follow leg by leg, top
/// to bottom.
pub fn build_haircomb(lengths: &[usize]) -> Result<Haircomb> {
    if lengths.is_empty() {
        return Err(Error::InvalidHaircomb("no legs".into()));
    }
    if let Some(i) = lengths.iter().position(|&m| m == 0) {
        return Err(Error::InvalidHaircomb(format!("leg {i} has length 0")));
    }
    let s = lengths.len();
    let n: usize = lengths.iter().sum();
    let mut edges: Vec<(usize, usize)> = (1..s).map(|i| (i - 1, i)).collect();
    let mut legs = Vec::with_capacity(s);
    let mut next = s;
    for (i, &m) in lengths.iter().enumerate() {
        let mut leg = Vec::with_capacity(m);
        leg.push(i);
        for _ in 1..m {
            edges.push((*leg.last().unwrap(), next));
            leg.push(next);
            next += 1;
        }
        legs.push(leg);
    }
    Ok(Haircomb {
        tree: Tree::from_edges(n, &edges)?,
        legs,
    })
}

/// Finds a haircomb decomposition of `t`, or `None` when there is none.
///
/// A tree is a haircomb iff it has no vertex of degree 4 or more and all of
/// its degree-3 vertices lie on one path `M`. Valid spines are `M` extended at
/// each end into one of the hanging branches there. The canonical spine is
/// the longest one; remaining ties go to the lexicographically largest leg
/// sequence, then to the lexicographically smallest spine vertex sequence.
pub fn recognize_haircomb(t: &Tree) -> Option<Haircomb> {
    let n = t.n();
    if n == 1 {
        return Some(Haircomb {
            tree: t.clone(),
            legs: vec![vec![0]],
        });
    }
    if (0..n).any(|v| t.degree(v) > 3) {
        return None;
    }
    let branching: Vec<usize> = (0..n).filter(|&v| t.degree(v) == 3).collect();
    let candidates = if branching.is_empty() {
        let ends: Vec<usize> = (0..n).filter(|&v| t.degree(v) == 1).collect();
        vec![walk(t, ends[0], usize::MAX)]
    } else {
        spine_candidates(t, &branching)?
    };
    candidates
        .into_iter()
        .flat_map(|spine| {
            let mut reversed = spine.clone();
            reversed.reverse();
            [spine, reversed]
        })
        .filter_map(|spine| legs_along(t, &spine))
        .max_by(|a, b| {
            let la: Vec<usize> = a.iter().map(Vec::len).collect();
            let lb: Vec<usize> = b.iter().map(Vec::len).collect();
            la.len()
                .cmp(&lb.len())
                .then_with(|| la.cmp(&lb))
                .then_with(|| b.iter().map(|l| l[0]).cmp(a.iter().map(|l| l[0])))
        })
        .map(|legs| Haircomb { tree: t.clone(), legs })
}

/// Vertices from `start` onward along a path, never stepping back to `from`.
fn walk(t: &Tree, start: usize, from: usize) -> Vec<usize> {
    let mut out = vec![start];
    let (mut prev, mut cur) = (from, start);
    while let Some(&next) = t.neighbors(cur).iter().find(|&&v| v != prev) {
        out.push(next);
        prev = cur;
        cur = next;
    }
    out
}

fn spine_candidates(t: &Tree, branching: &[usize]) -> Option<Vec<Vec<usize>>> {
    let g = t.graph();
    let farthest_branching = |dist: &[usize]| {
        *branching
            .iter()
            .max_by(|&&a, &&b| dist[a].cmp(&dist[b]).then(b.cmp(&a)))
            .unwrap()
    };
    let (d0, _) = bfs_with_parents(g, branching[0]);
    let x = farthest_branching(&d0);
    let (dx, parent) = bfs_with_parents(g, x);
    let y = farthest_branching(&dx);
    let mut core = vec![y];
    while *core.last().unwrap() != x {
        core.push(parent[*core.last().unwrap()]);
    }
    core.reverse();
    let mut on_core = vec![false; t.n()];
    for &v in &core {
        on_core[v] = true;
    }
    if branching.iter().any(|&b| !on_core[b]) {
        return None;
    }
    // branches hanging off an end of the core, each walked away from the core
    let branches = |end: usize| -> Vec<Vec<usize>> {
        t.neighbors(end)
            .iter()
            .filter(|&&v| !on_core[v])
            .map(|&v| walk(t, v, end))
            .collect()
    };
    let assemble = |head: &[usize], tail: &[usize]| {
        let mut spine: Vec<usize> = head.iter().rev().copied().collect();
        spine.extend_from_slice(&core);
        spine.extend_from_slice(tail);
        spine
    };
    let mut out = Vec::new();
    if core.len() == 1 {
        let hanging = branches(x);
        for (i, head) in hanging.iter().enumerate() {
            for (j, tail) in hanging.iter().enumerate() {
                if i != j {
                    out.push(assemble(head, tail));
                }
            }
        }
    } else {
        for head in branches(x) {
            for tail in branches(y) {
                out.push(assemble(&head, &tail));
            }
        }
    }
    Some(out)
}

/// Legs along a proposed spine, or `None` if the spine is not valid.
fn legs_along(t: &Tree, spine: &[usize]) -> Option<Vec<Vec<usize>>> {
    let mut on_spine = vec![false; t.n()];
    for &v in spine {
        on_spine[v] = true;
    }
    let mut covered = spine.len();
    let mut legs = Vec::with_capacity(spine.len());
    for &v in spine {
        let off: Vec<usize> = t.neighbors(v).iter().copied().filter(|&w| !on_spine[w]).collect();
        let mut leg = vec![v];
        match off.as_slice() {
            [] => {}
            [w] => {
                let rest = walk(t, *w, v);
                if rest.iter().any(|&u| t.degree(u) > 2) {
                    return None;
                }
                leg.extend(rest);
            }
            _ => return None,
        }
        covered += leg.len() - 1;
        legs.push(leg);
    }
    (covered == t.n()).then_some(legs)
}

/// Rank of each spine position (1 = longest leg); ties by position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LegRanking {
    rank: Vec<usize>,
    by_rank: Vec<usize>,
}

impl LegRanking {
    /// Rank of the leg at `position`, starting from 1.
    pub fn rank(&self, position: usize) -> usize {
        self.rank[position]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    /// Spine position of the leg with the given rank (1-based).
    pub fn position(&self, rank: usize) -> usize {
        self.by_rank[rank - 1]
    }

    pub fn is_even(&self, position: usize) -> bool {
        self.rank[position] % 2 == 0
    }
}

pub fn rank_legs(h: &Haircomb) -> LegRanking {
    let lengths = h.leg_lengths();
    let mut by_rank: Vec<usize> = (0..lengths.len()).collect();
    by_rank.sort_by(|&a, &b| lengths[b].cmp(&lengths[a]).then(a.cmp(&b)));
    let mut rank = vec![0; lengths.len()];
    for (r, &p) in by_rank.iter().enumerate() {
        rank[p] = r + 1;
    }
    LegRanking { rank, by_rank }
}

/// Overlap counts for every spine shift `d` in `-s..=s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapTable {
    s: usize,
    values: Vec<u64>,
    total: u64,
}

impl OverlapTable {
    /// Overlap at shift `d`; zero outside `-s..=s` and at `d = 0`.
    pub fn get(&self, d: isize) -> u64 {
        let idx = d + self.s as isize;
        if d == 0 || idx < 0 {
            return 0;
        }
        self.values.get(idx as usize).copied().unwrap_or(0)
    }

    /// `(d, overlap(d))` for every nonzero shift.
    pub fn iter(&self) -> impl Iterator<Item = (isize, u64)> + '_ {
        let s = self.s as isize;
        (-s..=s).filter(|&d| d != 0).map(move |d| (d, self.get(d)))
    }

    /// Sum of overlaps over all shifts.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// The largest positive overlap; ties go to the smallest `|d|`, then to
    /// positive `d`.
    pub fn best(&self) -> Option<(isize, u64)> {
        self.iter()
            .filter(|&(_, v)| v > 0)
            .max_by(|&(da, va), &(db, vb)| va.cmp(&vb).then(db.abs().cmp(&da.abs())).then(da.cmp(&db)))
    }
}

/// Strategy used by [`overlap_table_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OverlapRoute {
    Auto,
    /// Every (even, odd) leg pair directly.
    Pairs,
    /// Layered by leg-length thresholds, one convolution per distinct length.
    Layers,
}

pub fn overlap_table(h: &Haircomb, rk: &LegRanking) -> OverlapTable {
    overlap_table_with(h, rk, OverlapRoute::Auto)
}

pub fn overlap_table_with(h: &Haircomb, rk: &LegRanking, route: OverlapRoute) -> OverlapTable {
    let lengths = h.leg_lengths();
    let s = lengths.len();
    let (even, odd): (Vec<usize>, Vec<usize>) = (0..s).partition(|&p| rk.is_even(p));
    let mut distinct = lengths.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let route = match route {
        OverlapRoute::Auto => {
            let pairs = even.len() as f64 * odd.len() as f64;
            let layered = distinct.len() as f64 * 24.0 * s as f64 * (2.0 * s as f64).log2().max(1.0);
            if pairs <= layered {
                OverlapRoute::Pairs
            } else {
                OverlapRoute::Layers
            }
        }
        r => r,
    };
    let mut values = vec![0u64; 2 * s + 1];
    if route == OverlapRoute::Pairs {
        for &p in &even {
            for &q in &odd {
                values[p + s - q] += lengths[p].min(lengths[q]) as u64;
            }
        }
    } else if s > 1 {
        // conv(E, reversed O)[i] counts pairs with p - q = i - (s - 1)
        let mut conv = Convolver::new();
        let mut layer = vec![0u64; 2 * s - 1];
        let mut below = 0;
        for &t in &distinct {
            let level = |ps: &[usize], reverse: bool| {
                let mut ind = vec![0u64; s];
                for &p in ps.iter().filter(|&&p| lengths[p] >= t) {
                    ind[if reverse { s - 1 - p } else { p }] = 1;
                }
                ind
            };
            layer.iter_mut().for_each(|x| *x = 0);
            conv.accumulate(&level(&even, false), &level(&odd, true), &mut layer);
            let weight = (t - below) as u64;
            for (i, &c) in layer.iter().enumerate() {
                values[i + 1] += weight * c;
            }
            below = t;
        }
    }
    let total = values.iter().sum();
    OverlapTable { s, values, total }
}

/// The overlapped vertices at shift `d`: for each even-rank leg at `p` with
/// an odd-rank leg at `p - d`, the top `min(m_p, m_(p-d))` vertices of both.
pub fn overlap_pair(h: &Haircomb, rk: &LegRanking, d: isize) -> Result<HomometricPair> {
    let (a, b) = overlap_sets(h, rk, d);
    if d == 0 || a.is_empty() {
        return Err(Error::EmptyOverlap(d));
    }
    HomometricPair::verify_in(&TreeMetric::of(&h.tree), a, b)
}

fn overlap_sets(h: &Haircomb, rk: &LegRanking, d: isize) -> (Vec<usize>, Vec<usize>) {
    let (mut a, mut b) = (Vec::new(), Vec::new());
    if d == 0 {
        return (a, b);
    }
    let s = h.s() as isize;
    for p in 0..s {
        let q = p - d;
        if !(0..s).contains(&q) || !rk.is_even(p as usize) || rk.is_even(q as usize) {
            continue;
        }
        let (lp, lq) = (h.leg(p as usize), h.leg(q as usize));
        let k = lp.len().min(lq.len());
        a.extend_from_slice(&lp[..k]);
        b.extend_from_slice(&lq[..k]);
    }
    (a, b)
}

/// Which construction produced a haircomb pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HaircombMethod {
    Overlap { shift: isize },
    SpineHalves,
    LegHalves,
}

#[derive(Debug, Clone)]
pub struct HaircombSearch {
    pub pair: HomometricPair,
    pub method: HaircombMethod,
    pub s: usize,
    /// Longest leg length.
    pub l: usize,
    pub best_overlap: u64,
    /// `max(s/2, l/2, n^2 / (32 l s))`, all floored.
    pub guarantee: u64,
}

/// `max(floor(s/2), floor(l/2), floor(n^2 / (32 l s)))`.
pub fn haircomb_guarantee(n: usize, s: usize, l: usize) -> u64 {
    let (n, s, l) = (n as u128, s as u128, l as u128);
    let shifted = (n * n) / (32 * l * s);
    (s / 2).max(l / 2).max(shifted) as u64
}

pub fn haircomb_find(h: &Haircomb) -> Result<HomometricPair> {
    Ok(haircomb_search(h)?.pair)
}

/// Evaluates the best overlap, the spine halves and the longest-leg halves,
/// and returns the largest (that order on ties), verified.
pub fn haircomb_search(h: &Haircomb) -> Result<HaircombSearch> {
    let n = h.n();
    if n < 2 {
        return Err(Error::TooSmall(n));
    }
    let rk = rank_legs(h);
    let table = overlap_table(h, &rk);
    let (s, l) = (h.s(), h.longest_leg());
    let best = table.best();
    let best_overlap = best.map_or(0, |(_, v)| v);
    let metric = TreeMetric::of(&h.tree);
    let (spine_half, leg_half) = ((s / 2) as u64, (l / 2) as u64);
    let (pair, method) = match best {
        Some((d, v)) if v >= spine_half && v >= leg_half => {
            let (a, b) = overlap_sets(h, &rk, d);
            (HomometricPair::verify_in(&metric, a, b)?, HaircombMethod::Overlap { shift: d })
        }
        _ if spine_half >= leg_half => (split_in(&metric, &h.spine())?, HaircombMethod::SpineHalves),
        _ => (split_in(&metric, h.leg(rk.position(1)))?, HaircombMethod::LegHalves),
    };
    Ok(HaircombSearch {
        pair,
        method,
        s,
        l,
        best_overlap,
        guarantee: haircomb_guarantee(n, s, l),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::distance_profile;

    const LEGS: [usize; 9] = [5, 3, 2, 4, 1, 4, 6, 2, 2];

    #[test]
    fn build_small() {
        let h = build_haircomb(&[1]).unwrap();
        assert_eq!(h.n(), 1);
        let h = build_haircomb(&[2, 2]).unwrap();
        assert_eq!(h.n(), 4);
        assert_eq!(h.tree().edges().count(), 3);
        assert!((0..4).all(|v| h.tree().degree(v) <= 2));
        assert_eq!(build_haircomb(&LEGS).unwrap().n(), 29);
        assert!(build_haircomb(&[]).is_err());
        assert!(build_haircomb(&[2, 0]).is_err());
    }

    #[test]
    fn ranks_of_the_example() {
        let h = build_haircomb(&LEGS).unwrap();
        assert_eq!(rank_legs(&h).ranks(), &[2, 5, 6, 3, 9, 4, 1, 7, 8]);
        let equal = build_haircomb(&[3, 3, 3]).unwrap();
        assert_eq!(rank_legs(&equal).ranks(), &[1, 2, 3]);
        let decreasing = build_haircomb(&[4, 3, 2, 1]).unwrap();
        assert_eq!(rank_legs(&decreasing).ranks(), &[1, 2, 3, 4]);
    }

    #[test]
    fn example_overlaps() {
        let h = build_haircomb(&LEGS).unwrap();
        let rk = rank_legs(&h);
        let table = overlap_table(&h, &rk);
        assert_eq!(table.get(2), 6);
        assert_eq!(table.best(), Some((-1, 9)));
        let pair = overlap_pair(&h, &rk, 2).unwrap();
        assert_eq!(pair.size(), 6);
        let pair = overlap_pair(&h, &rk, -1).unwrap();
        assert_eq!(pair.size(), 9);
    }

    #[test]
    fn single_leg_has_no_shifts() {
        let h = build_haircomb(&[4]).unwrap();
        let rk = rank_legs(&h);
        let table = overlap_table(&h, &rk);
        assert_eq!(table.iter().filter(|&(_, v)| v > 0).count(), 0);
        assert_eq!(table.best(), None);
        assert_eq!(overlap_pair(&h, &rk, 1), Err(Error::EmptyOverlap(1)));
    }

    #[test]
    fn two_equal_legs_mirror() {
        let h = build_haircomb(&[3, 3]).unwrap();
        let rk = rank_legs(&h);
        // rank 1 at position 0 (odd), rank 2 at position 1 (even): d = 1
        let pair = overlap_pair(&h, &rk, 1).unwrap();
        assert_eq!(pair.size(), 3);
        let mut leg = h.leg(1).to_vec();
        leg.sort_unstable();
        assert_eq!(pair.a(), &leg[..]);
    }

    #[test]
    fn recognizes_path_and_claw() {
        let p5 = Tree::path(5).unwrap();
        let h = recognize_haircomb(&p5).unwrap();
        assert_eq!(h.leg_lengths(), vec![1; 5]);
        let claw = Tree::star(4).unwrap();
        let h = recognize_haircomb(&claw).unwrap();
        assert_eq!(h.leg_lengths(), vec![1, 2, 1]);
        assert_eq!(h.spine()[1], 0);
    }

    #[test]
    fn binary_trees_and_haircombs() {
        let complete = |n: usize| Tree::from_edges(n, &(1..n).map(|v| ((v - 1) / 2, v)).collect::<Vec<_>>()).unwrap();
        // 15 vertices: four degree-3 vertices at depth 2 cannot share a path
        assert!(recognize_haircomb(&complete(15)).is_none());
        // 7 vertices: leaf - 1 - 0 - 2 - leaf with one extra leaf on 1 and on 2
        let h = recognize_haircomb(&complete(7)).unwrap();
        assert_eq!(h.leg_lengths(), vec![1, 2, 1, 2, 1]);
        assert!(recognize_haircomb(&Tree::star(5).unwrap()).is_none());
    }

    #[test]
    fn diametral_paths_are_not_enough() {
        // long middle leg: every longest path leaves a degree-3 vertex off the spine
        let h = build_haircomb(&[1, 2, 9, 2, 1]).unwrap();
        let r = recognize_haircomb(h.tree()).unwrap();
        assert_eq!(r.n(), 15);
        assert_eq!(r.leg_lengths().iter().sum::<usize>(), 15);
    }

    #[test]
    fn find_on_degenerate_shapes() {
        let path = build_haircomb(&[1; 10]).unwrap();
        assert_eq!(haircomb_find(&path).unwrap().size(), 5);
        let leg = build_haircomb(&[10]).unwrap();
        let s = haircomb_search(&leg).unwrap();
        assert_eq!(s.method, HaircombMethod::LegHalves);
        assert_eq!(s.pair.size(), 5);
        assert_eq!(haircomb_find(&build_haircomb(&[1]).unwrap()), Err(Error::TooSmall(1)));
    }

    #[test]
    fn find_on_the_example() {
        let h = build_haircomb(&LEGS).unwrap();
        let s = haircomb_search(&h).unwrap();
        assert_eq!(s.guarantee, 4);
        assert_eq!(s.pair.size(), 9);
        assert_eq!(s.method, HaircombMethod::Overlap { shift: -1 });
        let g = h.tree().graph();
        assert_eq!(distance_profile(g, s.pair.a()).unwrap(), distance_profile(g, s.pair.b()).unwrap());
    }

    #[test]
    fn overlap_routes_agree() {
        let h = build_haircomb(&LEGS).unwrap();
        let rk = rank_legs(&h);
        assert_eq!(
            overlap_table_with(&h, &rk, OverlapRoute::Pairs),
            overlap_table_with(&h, &rk, OverlapRoute::Layers)
        );
    }
}
