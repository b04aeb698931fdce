//! Diametral paths and the path-halves construction.

use crate::error::{Error, Result};
use crate::graph::{bfs_with_parents, Graph, Tree};
use crate::profile::{HomometricPair, TreeMetric};

/// Distinct vertices, consecutive ones adjacent in the host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPath(Vec<usize>);

impl VertexPath {
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Self> {
        g.check_set(&vertices)?;
        if let Some(w) = vertices.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
            return Err(Error::NotAPath(format!("{} and {} are not adjacent", w[0], w[1])));
        }
        Ok(VertexPath(vertices))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    /// Number of vertices on the path.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A longest path by double sweep: farthest vertex `a` from vertex 0, then the
/// farthest vertex `b` from `a`, smallest id on ties. Returned as `a .. b`.
pub fn longest_path(t: &Tree) -> VertexPath {
    let g = t.graph();
    let (d0, _) = bfs_with_parents(g, 0);
    let a = farthest(&d0);
    let (da, parent) = bfs_with_parents(g, a);
    let b = farthest(&da);
    let mut vertices = vec![b];
    let mut v = b;
    while v != a {
        v = parent[v];
        vertices.push(v);
    }
    vertices.reverse();
    VertexPath(vertices)
}

fn farthest(dist: &[usize]) -> usize {
    let max = dist.iter().copied().max().unwrap_or(0);
    dist.iter().position(|&d| d == max).unwrap_or(0)
}

/// First and second halves of the path, dropping the last vertex when the
/// vertex count is odd. Each half is a translate of the other along the path.
pub fn split_path_halves(t: &Tree, p: &VertexPath) -> Result<HomometricPair> {
    split_in(&TreeMetric::of(t), p.vertices())
}

pub(crate) fn split_in(metric: &TreeMetric<'_>, vertices: &[usize]) -> Result<HomometricPair> {
    let g = vertices.len();
    if g < 2 {
        return Err(Error::PathTooShort(g));
    }
    let half = g / 2;
    HomometricPair::verify_in(
        metric,
        vertices[..half].to_vec(),
        vertices[half..2 * half].to_vec(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_is_its_own_longest_path() {
        let t = Tree::path(5).unwrap();
        assert_eq!(longest_path(&t).vertices(), &[4, 3, 2, 1, 0]);
    }

    #[test]
    fn star_longest_path_has_three_vertices() {
        let t = Tree::star(5).unwrap();
        let p = longest_path(&t);
        assert_eq!(p.len(), 3);
        assert_eq!(p.vertices()[1], 0);
        assert_eq!(p.vertices(), &[1, 0, 2]);
    }

    #[test]
    fn halves_of_p9() {
        let t = Tree::path(9).unwrap();
        let p = longest_path(&t);
        let pair = split_path_halves(&t, &p).unwrap();
        assert_eq!(pair.size(), 4);
        // the sweep runs 8 -> 0, so vertex 0 is the dropped one
        assert_eq!(pair.a(), &[5, 6, 7, 8]);
        assert_eq!(pair.b(), &[1, 2, 3, 4]);
    }

    #[test]
    fn halves_of_p2_and_p6() {
        let t = Tree::path(2).unwrap();
        let pair = split_path_halves(&t, &longest_path(&t)).unwrap();
        assert_eq!((pair.a(), pair.b()), (&[1][..], &[0][..]));

        let t = Tree::path(6).unwrap();
        let pair = split_path_halves(&t, &longest_path(&t)).unwrap();
        assert_eq!(pair.size(), 3);
        assert_eq!(pair.profile().to_vec(), vec![1, 1, 2]);
    }

    #[test]
    fn too_short() {
        let t = Tree::path(1).unwrap();
        let p = longest_path(&t);
        assert_eq!(p.len(), 1);
        assert_eq!(split_path_halves(&t, &p), Err(Error::PathTooShort(1)));
    }

    #[test]
    fn vertex_path_validation() {
        let t = Tree::star(4).unwrap();
        assert!(VertexPath::new(t.graph(), vec![1, 0, 2]).is_ok());
        assert!(VertexPath::new(t.graph(), vec![1, 2]).is_err());
        assert!(VertexPath::new(t.graph(), vec![1, 0, 1]).is_err());
    }
}
