mod common;

use std::collections::BTreeMap;

use homometric::haircomb::{
    haircomb_guarantee, overlap_pair, overlap_table, overlap_table_with, rank_legs, OverlapRoute,
};
use homometric::oracle::{enumerate_labeled_trees, random_haircomb};
use homometric::{build_haircomb, haircomb_search, recognize_haircomb, Haircomb, Tree};
use proptest::prelude::*;

fn legs(max_s: usize, max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(1..=max_len, 1..=max_s)
}

/// Spine position and height of every vertex.
fn coordinates(h: &Haircomb) -> Vec<(usize, usize)> {
    let mut at = vec![(0, 0); h.n()];
    for p in 0..h.s() {
        for (j, &v) in h.leg(p).iter().enumerate() {
            at[v] = (p, j);
        }
    }
    at
}

/// Every valid haircomb decomposition, by trying all vertex pairs as spine ends.
fn all_decompositions(t: &Tree) -> Vec<Vec<usize>> {
    let n = t.n();
    let mut out = Vec::new();
    for u in 0..n {
        for v in 0..n {
            // path u .. v through parent pointers of a BFS from v
            let dist = common::bfs(t.graph(), v);
            let mut spine = vec![u];
            while *spine.last().unwrap() != v {
                let x = *spine.last().unwrap();
                let next = *t.neighbors(x).iter().find(|&&y| dist[y] + 1 == dist[x]).unwrap();
                spine.push(next);
            }
            if let Some(lengths) = leg_lengths_along(t, &spine) {
                out.push(lengths);
            }
        }
    }
    out
}

fn leg_lengths_along(t: &Tree, spine: &[usize]) -> Option<Vec<usize>> {
    let mut on_spine = vec![false; t.n()];
    for &v in spine {
        on_spine[v] = true;
    }
    let mut lengths = Vec::new();
    for &v in spine {
        let off: Vec<usize> = t.neighbors(v).iter().copied().filter(|&w| !on_spine[w]).collect();
        if off.len() > 1 {
            return None;
        }
        let mut len = 1;
        let (mut prev, mut cur) = (v, off.first().copied());
        while let Some(c) = cur {
            let rest: Vec<usize> = t.neighbors(c).iter().copied().filter(|&w| w != prev).collect();
            if rest.len() > 1 {
                return None;
            }
            len += 1;
            prev = c;
            cur = rest.first().copied();
        }
        lengths.push(len);
    }
    (lengths.iter().sum::<usize>() == t.n()).then_some(lengths)
}

proptest! {
    #[test]
    fn tables_match_pair_sums(m in legs(40, 12)) {
        let h = build_haircomb(&m).unwrap();
        let rk = rank_legs(&h);
        let reference = common::naive_overlaps(&m);
        let pairs = overlap_table_with(&h, &rk, OverlapRoute::Pairs);
        let layers = overlap_table_with(&h, &rk, OverlapRoute::Layers);
        prop_assert_eq!(&pairs, &layers);
        let got: BTreeMap<isize, u64> = pairs.iter().filter(|&(_, v)| v > 0).collect();
        let want: BTreeMap<isize, u64> = reference.into_iter().filter(|&(_, v)| v > 0).collect();
        prop_assert_eq!(got, want);
        // each (even, odd) pair lands in exactly one shift
        let mut total = 0u64;
        for p in 0..m.len() {
            for q in 0..m.len() {
                if rk.is_even(p) && !rk.is_even(q) {
                    total += m[p].min(m[q]) as u64;
                }
            }
        }
        prop_assert_eq!(pairs.total(), total);
    }

    #[test]
    fn weighted_bound_and_averaging(m in legs(60, 30)) {
        let h = build_haircomb(&m).unwrap();
        let rk = rank_legs(&h);
        let table = overlap_table(&h, &rk);
        let s = m.len();
        let weighted: u64 = (1..=s / 2).map(|j| (j * m[rk.position(2 * j)]) as u64).sum();
        prop_assert!(table.total() >= weighted);
        let best = table.best().map_or(0, |(_, v)| v);
        prop_assert!(best + 1 >= table.total().div_ceil(2 * s as u64 + 1));
    }

    #[test]
    fn overlap_pairs_are_translates(m in legs(25, 10)) {
        let h = build_haircomb(&m).unwrap();
        let rk = rank_legs(&h);
        let table = overlap_table(&h, &rk);
        let at = coordinates(&h);
        for (d, v) in table.iter().filter(|&(_, v)| v > 0) {
            let pair = overlap_pair(&h, &rk, d).unwrap();
            prop_assert_eq!(pair.size() as u64, v);
            prop_assert!(common::naive_homometric(h.tree().graph(), pair.a(), pair.b()));
            let mut shifted: Vec<(isize, usize)> =
                pair.a().iter().map(|&x| (at[x].0 as isize - d, at[x].1)).collect();
            let mut images: Vec<(isize, usize)> = pair.b().iter().map(|&x| (at[x].0 as isize, at[x].1)).collect();
            shifted.sort_unstable();
            images.sort_unstable();
            prop_assert_eq!(shifted, images);
        }
    }

    #[test]
    fn search_meets_the_guarantee(n in 2..=3000usize, seed in any::<u64>()) {
        let h = random_haircomb(n, seed).unwrap();
        let s = haircomb_search(&h).unwrap();
        prop_assert!(s.pair.size() as u64 >= haircomb_guarantee(n, h.s(), h.longest_leg()));
        prop_assert_eq!(s.guarantee, haircomb_guarantee(n, h.s(), h.longest_leg()));
        prop_assert!(common::naive_homometric(h.tree().graph(), s.pair.a(), s.pair.b()));
    }

    #[test]
    fn recognition_of_built_combs(m in legs(20, 8)) {
        let h = build_haircomb(&m).unwrap();
        let r = recognize_haircomb(h.tree()).unwrap();
        prop_assert_eq!(r.n(), h.n());
        prop_assert!(r.s() >= h.s());
        let lengths = r.leg_lengths();
        prop_assert!(leg_lengths_along(h.tree(), &r.spine()) == Some(lengths.clone()));
        // recognizing the canonical form again is a fixed point
        let again = recognize_haircomb(build_haircomb(&lengths).unwrap().tree()).unwrap();
        prop_assert_eq!(again.leg_lengths(), lengths);
    }
}

#[test]
fn shift_bound_of_the_overlap_candidate() {
    // the overlap candidate alone reaches n^2 / (32 l s) whenever l < n / 2
    for seed in 0..400 {
        let n = 50 + (seed as usize * 7919) % 20_000;
        let h = random_haircomb(n, seed).unwrap();
        let (s, l) = (h.s(), h.longest_leg());
        if 2 * l >= n {
            continue;
        }
        let rk = rank_legs(&h);
        let best = overlap_table(&h, &rk).best().map_or(0, |(_, v)| v) as u128;
        let shifted = (n as u128).pow(2) / (32 * l as u128 * s as u128);
        assert!(best >= shifted, "n={n} s={s} l={l}: {best} < {shifted}");
    }
}

#[test]
fn recognition_matches_exhaustive_spines() {
    for n in 1..=7 {
        for t in enumerate_labeled_trees(n).unwrap() {
            let all = all_decompositions(&t);
            let got = recognize_haircomb(&t);
            assert_eq!(got.is_some(), !all.is_empty(), "{:?}", t.edges().collect::<Vec<_>>());
            if let Some(h) = got {
                let best = all.iter().max_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b))).unwrap();
                assert_eq!(&h.leg_lengths(), best);
            }
        }
    }
}

#[test]
fn long_middle_leg_is_not_on_a_longest_path() {
    // every longest path runs down the 9-vertex leg and misses vertex 1 or 3
    let h = build_haircomb(&[1, 2, 9, 2, 1]).unwrap();
    let r = recognize_haircomb(h.tree()).unwrap();
    let spine = r.spine();
    for v in 0..h.n() {
        if h.tree().degree(v) == 3 {
            assert!(spine.contains(&v));
        }
    }
    assert_eq!(r.leg_lengths(), vec![1, 2, 9, 2, 1]);
    assert!(homometric::longest_path(h.tree()).len() > r.s());
}
