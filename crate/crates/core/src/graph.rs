//! Graph topologies and the vertex-set neighbourhoods used by the locality analysis.
//!
//! Vertices are 0-based everywhere. Graphs are simple and unweighted: the
//! adjacency matrix is symmetric, binary, and has a zero diagonal.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simple undirected graph on `m` vertices.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    m: usize,
    adj: Vec<bool>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges are idempotent.
    pub fn from_edges(m: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if m == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut adj = vec![false; m * m];
        for &(i, j) in edges {
            for v in [i, j] {
                if v >= m {
                    return Err(Error::VertexOutOfRange { index: v, m });
                }
            }
            if i == j {
                return Err(Error::SelfLoop(i));
            }
            adj[i * m + j] = true;
            adj[j * m + i] = true;
        }
        Ok(Self { m, adj })
    }

    /// Graph with `m` vertices and no edges.
    pub fn empty(m: usize) -> Result<Self> {
        Self::from_edges(m, &[])
    }

    /// Path `0 - 1 - ... - (m-1)`.
    pub fn path(m: usize) -> Result<Self> {
        let edges: Vec<_> = (1..m).map(|k| (k - 1, k)).collect();
        Self::from_edges(m, &edges)
    }

    /// Cycle on `m >= 3` vertices; smaller `m` degenerates to a path.
    pub fn cycle(m: usize) -> Result<Self> {
        let mut edges: Vec<_> = (1..m).map(|k| (k - 1, k)).collect();
        if m >= 3 {
            edges.push((m - 1, 0));
        }
        Self::from_edges(m, &edges)
    }

    pub fn complete(m: usize) -> Result<Self> {
        let edges: Vec<_> = (0..m).flat_map(|i| ((i + 1)..m).map(move |j| (i, j))).collect();
        Self::from_edges(m, &edges)
    }

    /// Triangular tiling of a `rows x cols` grid.
    ///
    /// Vertex `(r, c)` has index `r * cols + c`. Every unit cell carries the
    /// square grid edges plus the diagonal from its top-left to its
    /// bottom-right corner.
    pub fn triangular_lattice(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyGraph);
        }
        let idx = |r: usize, c: usize| r * cols + c;
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                if c + 1 < cols {
                    edges.push((idx(r, c), idx(r, c + 1)));
                }
                if r + 1 < rows {
                    edges.push((idx(r, c), idx(r + 1, c)));
                }
                if r + 1 < rows && c + 1 < cols {
                    edges.push((idx(r, c), idx(r + 1, c + 1)));
                }
            }
        }
        Self::from_edges(rows * cols, &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn is_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.m + j]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&a| a).count() / 2
    }

    /// Edges as `(i, j)` pairs with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.m)
            .flat_map(|i| ((i + 1)..self.m).map(move |j| (i, j)))
            .filter(|&(i, j)| self.is_edge(i, j))
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).count()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.m).filter(move |&k| self.is_edge(v, k))
    }

    /// Adjacency matrix as a dense real matrix.
    pub fn adjacency_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.m, self.m, |i, j| if self.is_edge(i, j) { 1.0 } else { 0.0 })
    }

    /// Vertices outside `x` adjacent to at least one member of `x`.
    pub fn neighborhood(&self, x: &VertexSet) -> Result<VertexSet> {
        x.check(self.m)?;
        let members: BTreeSet<usize> = (0..self.m)
            .filter(|k| !x.contains(*k))
            .filter(|&k| x.iter().any(|l| self.is_edge(k, l)))
            .collect();
        Ok(VertexSet(members))
    }

    /// `x ∪ N(x) ∪ N(N(x))`.
    pub fn closed_two_neighborhood(&self, x: &VertexSet) -> Result<VertexSet> {
        let n1 = self.neighborhood(x)?;
        let n2 = self.neighborhood(&n1)?;
        Ok(x.union(&n1).union(&n2))
    }

    /// Breadth-first distance from the set `x` to every vertex; `None` when unreachable.
    pub fn distances_from(&self, x: &VertexSet) -> Result<Vec<Option<usize>>> {
        x.check(self.m)?;
        let mut dist = vec![None; self.m];
        let mut queue = VecDeque::new();
        for v in x.iter() {
            dist[v] = Some(0);
            queue.push_back(v);
        }
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap_or(0);
            for w in self.neighbors(v) {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    pub fn is_connected(&self) -> bool {
        self.distances_from(&VertexSet::single(0))
            .map(|d| d.iter().all(Option::is_some))
            .unwrap_or(false)
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet((0..self.m).collect())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("m", &self.m)
            .field("edges", &self.edges())
            .finish()
    }
}

/// Edge-list form of a graph, `{"m": 3, "edges": [[0, 1], [1, 2]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeList {
    pub m: usize,
    pub edges: Vec<[usize; 2]>,
}

impl EdgeList {
    pub fn to_graph(&self) -> Result<Graph> {
        let edges: Vec<_> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(self.m, &edges)
    }
}

impl From<&Graph> for EdgeList {
    fn from(g: &Graph) -> Self {
        Self {
            m: g.m,
            edges: g.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }
}

/// Ordered set of vertex labels; iteration is always ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(BTreeSet<usize>);

impl VertexSet {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Self {
        Self(members.into_iter().collect())
    }

    pub fn single(v: usize) -> Self {
        Self::new([v])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        Self(self.0.union(&other.0).copied().collect())
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Errors if any member is not a vertex of an `m`-vertex graph.
    pub fn check(&self, m: usize) -> Result<()> {
        match self.0.iter().find(|&&v| v >= m) {
            Some(&index) => Err(Error::VertexOutOfRange { index, m }),
            None => Ok(()),
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::new(iter)
    }
}
