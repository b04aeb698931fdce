mod common;

use homometric::oracle::random_tree;
use homometric::profile::ProfileRoute;
use homometric::{distance_profile, is_homometric, longest_path, split_path_halves, Graph, Profile, Tree, TreeMetric};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn tree_and_set(max_n: usize) -> impl Strategy<Value = (Tree, Vec<usize>)> {
    (1..=max_n, any::<u64>()).prop_flat_map(|(n, seed)| {
        let t = random_tree(n, seed);
        (Just(t), subsequence((0..n).collect::<Vec<_>>(), 0..=n))
    })
}

fn disjoint_sets(max_n: usize) -> impl Strategy<Value = (Tree, Vec<usize>, Vec<usize>)> {
    (2..=max_n, any::<u64>()).prop_flat_map(|(n, seed)| {
        let t = random_tree(n, seed);
        (Just(t), proptest::collection::vec(0..3u8, n)).prop_map(|(t, colors)| {
            let a = (0..colors.len()).filter(|&v| colors[v] == 1).collect();
            let b = (0..colors.len()).filter(|&v| colors[v] == 2).collect();
            (t, a, b)
        })
    })
}

proptest! {
    #[test]
    fn profile_counts_every_pair((t, set) in tree_and_set(60)) {
        let p = distance_profile(t.graph(), &set).unwrap();
        let k = set.len() as u64;
        prop_assert_eq!(p.len(), k * k.saturating_sub(1) / 2);
    }

    #[test]
    fn routes_match_bfs_reference((t, set) in tree_and_set(300)) {
        let reference = common::naive_profile(t.graph(), &set);
        let metric = TreeMetric::of(&t);
        for route in [ProfileRoute::Auto, ProfileRoute::Pairwise, ProfileRoute::Centroid] {
            let p = metric.profile_with(&set, route).unwrap();
            prop_assert_eq!(&p.to_vec(), &reference, "{:?}", route);
        }
    }

    #[test]
    fn homometric_is_symmetric((t, a, b) in disjoint_sets(40)) {
        let g = t.graph();
        prop_assert_eq!(is_homometric(g, &a, &b).unwrap(), is_homometric(g, &b, &a).unwrap());
        prop_assert_eq!(is_homometric(g, &a, &b).unwrap(), common::naive_homometric(g, &a, &b));
    }

    #[test]
    fn longest_path_is_a_diameter(n in 1..=200usize, seed in any::<u64>()) {
        let t = random_tree(n, seed);
        let p = longest_path(&t);
        let diameter = (0..n).map(|v| *common::bfs(t.graph(), v).iter().max().unwrap()).max().unwrap();
        prop_assert_eq!(p.len(), diameter + 1);
        for w in p.vertices().windows(2) {
            prop_assert!(t.graph().has_edge(w[0], w[1]));
        }
    }

    #[test]
    fn profile_digest_tracks_equality(xs in proptest::collection::vec(1..20usize, 0..30), ys in proptest::collection::vec(1..20usize, 0..30)) {
        let (p, q) = (Profile::from_distances(xs), Profile::from_distances(ys));
        prop_assert_eq!(p == q, p.digest() == q.digest());
    }

    #[test]
    fn cycle_profiles_match_reference(n in 3..=40usize, mask in any::<u64>()) {
        let g = Graph::cycle(n).unwrap();
        let set: Vec<usize> = (0..n).filter(|&v| mask >> (v % 64) & 1 == 1).collect();
        let p = distance_profile(&g, &set).unwrap();
        prop_assert_eq!(p.to_vec(), common::naive_profile(&g, &set));
    }
}

#[test]
fn path_halves_for_every_length() {
    for g in 2..=200 {
        let t = Tree::path(g).unwrap();
        let pair = split_path_halves(&t, &longest_path(&t)).unwrap();
        assert_eq!(pair.size(), g / 2);
        assert!(common::naive_homometric(t.graph(), pair.a(), pair.b()), "P{g}");
    }
}

#[test]
fn every_balanced_partition_of_c12() {
    let g = Graph::cycle(12).unwrap();
    let mut count = 0;
    for mask in 0u32..1 << 12 {
        if mask.count_ones() == 6 && mask & 1 == 1 {
            let a: Vec<usize> = (0..12).filter(|&v| mask >> v & 1 == 1).collect();
            let b: Vec<usize> = (0..12).filter(|&v| mask >> v & 1 == 0).collect();
            assert_eq!(common::naive_profile(&g, &a), common::naive_profile(&g, &b));
            assert!(is_homometric(&g, &a, &b).unwrap());
            count += 1;
        }
    }
    assert_eq!(count, 462);
}

#[test]
fn large_set_routes_agree() {
    let t = random_tree(3000, 11);
    let metric = TreeMetric::of(&t);
    let set: Vec<usize> = (0..3000).filter(|v| v % 3 != 0).collect();
    let a = metric.profile_with(&set, ProfileRoute::Pairwise).unwrap();
    let b = metric.profile_with(&set, ProfileRoute::Centroid).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.len(), 2000 * 1999 / 2);
}
