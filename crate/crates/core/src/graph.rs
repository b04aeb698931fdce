//! Simple undirected graphs and trees on vertices `0..n`.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Marker returned by [`bfs_distances`] for vertices not reachable from the source.
pub const UNREACHABLE: usize = usize::MAX;

/// Simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
    connected: bool,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting self-loops, duplicate edges
    /// and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (u.min(w[0]), u.max(w[0]));
                return Err(Error::DuplicateEdge(a, b));
            }
        }
        let mut g = Graph {
            adj,
            edge_count: edges.len(),
            connected: false,
        };
        g.connected = bfs_distances(&g, 0)?.iter().all(|&d| d != UNREACHABLE);
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn is_tree(&self) -> bool {
        self.connected && self.edge_count + 1 == self.n()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    /// Validates a vertex set: every id in range, no repeats.
    pub fn check_set(&self, set: &[usize]) -> Result<()> {
        let mut seen = vec![false; self.n()];
        for &v in set {
            self.check_vertex(v)?;
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::DuplicateVertex(v));
            }
        }
        Ok(())
    }

    /// Cycle on `n >= 3` vertices, `i` adjacent to `i + 1 mod n`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::NotAPath(format!("a simple cycle needs 3 vertices, got {n}")));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }
}

/// A connected graph with exactly `n - 1` edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree(Graph);

impl Tree {
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > 0 && edges.len() + 1 != n {
            return Err(Error::NotATree(format!(
                "{} edges on {n} vertices, expected {}",
                edges.len(),
                n - 1
            )));
        }
        Tree::try_from(Graph::from_edges(n, edges)?)
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Tree::from_edges(n, &edges)
    }

    /// Star with center 0 and leaves `1..n`.
    pub fn star(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Tree::from_edges(n, &edges)
    }

    pub fn graph(&self) -> &Graph {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        self.0.neighbors(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.0.degree(v)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.edges()
    }
}

impl TryFrom<Graph> for Tree {
    type Error = Error;

    fn try_from(g: Graph) -> Result<Self> {
        if g.edge_count + 1 != g.n() {
            return Err(Error::NotATree(format!(
                "{} edges on {} vertices, expected {}",
                g.edge_count,
                g.n(),
                g.n() - 1
            )));
        }
        if !g.connected {
            return Err(Error::NotATree("graph is not connected".into()));
        }
        Ok(Tree(g))
    }
}

impl AsRef<Graph> for Tree {
    fn as_ref(&self) -> &Graph {
        &self.0
    }
}

/// Hop distances from `src`; unreachable vertices hold [`UNREACHABLE`].
pub fn bfs_distances(g: &Graph, src: usize) -> Result<Vec<usize>> {
    g.check_vertex(src)?;
    Ok(bfs_with_parents(g, src).0)
}

/// BFS returning distances and BFS-tree parents (`parent[src] == src`).
pub(crate) fn bfs_with_parents(g: &Graph, src: usize) -> (Vec<usize>, Vec<usize>) {
    let n = g.n();
    let mut dist = vec![UNREACHABLE; n];
    let mut parent = vec![UNREACHABLE; n];
    let mut queue = VecDeque::with_capacity(n);
    dist[src] = 0;
    parent[src] = src;
    queue.push_back(src);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if dist[v] == UNREACHABLE {
                dist[v] = dist[u] + 1;
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    (dist, parent)
}
