//! Disjoint homometric vertex sets in trees.
//!
//! Two vertex sets are homometric when their multisets of pairwise distances
//! agree. The crate builds large disjoint homometric pairs in arbitrary trees
//! (longest-path halves and a recursive pairing of down paths) and in
//! haircombs (shifted leg overlaps), checks them, and provides a brute-force
//! oracle and generators for testing.

mod convolve;
pub mod error;
pub mod format;
pub mod graph;
pub mod haircomb;
pub mod oracle;
pub mod pairing;
pub mod path;
pub mod profile;

pub use error::{Error, Result};
pub use format::{ParseError, ParseErrorKind, PairRecord, TreeDocument};
pub use graph::{bfs_distances, Graph, Tree};
pub use haircomb::{
    build_haircomb, haircomb_find, haircomb_search, overlap_pair, overlap_table, rank_legs, recognize_haircomb,
    Haircomb, HaircombSearch, LegRanking, OverlapTable,
};
pub use oracle::{enumerate_labeled_trees, generate, oracle_max_homometric, GeneratorKind, GeneratorSpec, OracleResult};
pub use pairing::{
    compute_f, construct_pairing, gen_h, gen_r, root_at, tree_find, tree_search, RootedTree, TreeSearch,
};
pub use path::{longest_path, split_path_halves, VertexPath};
pub use profile::{compare_sets, distance_profile, is_homometric, HomometricPair, Profile, TreeMetric, Verdict};
