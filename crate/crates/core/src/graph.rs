//! Undirected simple graphs: construction, BFS traversal, exact-distance
//! shells, and bipartiteness testing.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// An immutable undirected simple graph on vertices `0..n`.
///
/// Neighbour lists are kept sorted, so iteration order — and everything
/// derived from it — is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Build a graph from an explicit edge list.
    ///
    /// Rejects out-of-range endpoints, self-loops, and duplicate edges (in
    /// either orientation).
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        Ok(g)
    }

    fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidParameter(format!(
                "edge ({u}, {v}) out of range for {} vertices",
                self.n
            )));
        }
        if u == v {
            return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
        }
        if self.adj[u].contains(&v) {
            return Err(Error::InvalidParameter(format!("duplicate edge ({u}, {v})")));
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.edge_count += 1;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(|list| list.len()).collect()
    }

    /// Sorted neighbour list of `i`.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges as (u, v) with u < v, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// BFS distances from `source`; `None` marks unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        assert!(source < self.n, "vertex out of range");
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].expect("queued vertices have distances");
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.bfs_distances(0).iter().all(|d| d.is_some())
    }

    /// Vertices at exactly shortest-path distance `distance` ∈ {1, 2, 3}
    /// from `center`; an empty shell is a valid result.
    pub fn shell(&self, center: usize, distance: usize) -> Result<NeighborhoodShell> {
        if center >= self.n {
            return Err(Error::InvalidParameter(format!(
                "vertex {center} out of range for {} vertices",
                self.n
            )));
        }
        if !(1..=3).contains(&distance) {
            return Err(Error::InvalidParameter(format!(
                "shell distance must be 1, 2, or 3, got {distance}"
            )));
        }
        let dist = self.bfs_distances(center);
        let members = (0..self.n).filter(|&j| dist[j] == Some(distance)).collect();
        Ok(NeighborhoodShell {
            center,
            distance,
            members,
        })
    }

    /// Two-coloring with classes ±1 when the graph has no odd cycle.
    ///
    /// Disconnected graphs are bipartite iff every component is; coloring is
    /// produced per component by BFS.
    pub fn bipartition(&self) -> Option<Vec<i8>> {
        let mut color = vec![0i8; self.n];
        for start in 0..self.n {
            if color[start] != 0 {
                continue;
            }
            color[start] = 1;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if color[w] == 0 {
                        color[w] = -color[u];
                        queue.push_back(w);
                    } else if color[w] == color[u] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }
}

/// Vertices at an exact shortest-path distance from a center vertex.
///
/// Shells of one center at different distances are disjoint and never
/// contain the center itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodShell {
    pub center: usize,
    pub distance: usize,
    /// Sorted member ids.
    pub members: Vec<usize>,
}

impl NeighborhoodShell {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}
