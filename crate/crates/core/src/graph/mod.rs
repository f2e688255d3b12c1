//! Undirected simple graphs on dense vertex ids `0..n`.
//!
//! Edges are stored once, as `(u, v)` with `u < v`, sorted lexicographically;
//! an edge's position in that order is its *edge id*. The canonical arc of an
//! edge is `u -> v`; the opposite arc carries sign `-1` in cycle vectors.

mod circuits;
pub mod families;
mod theta;
mod tree;

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

pub use circuits::{
    enumerate_circuits, enumerate_circuits_capped, triangles_and_squares, Circuit,
    DEFAULT_CIRCUIT_CAP,
};
pub use theta::{theta_decomposition, theta_third_circuit, ThetaDecomposition};
pub use tree::{spanning_tree, SpanningTree};

use crate::{Error, Result};

/// A directed arc `tail -> head` along an edge of the graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrientedEdge {
    pub tail: usize,
    pub head: usize,
}

impl OrientedEdge {
    pub const fn new(tail: usize, head: usize) -> Self {
        OrientedEdge { tail, head }
    }

    pub const fn reverse(self) -> Self {
        OrientedEdge {
            tail: self.head,
            head: self.tail,
        }
    }

    /// `true` when the arc runs from the smaller to the larger endpoint.
    pub const fn is_canonical(self) -> bool {
        self.tail < self.head
    }

    pub fn canonical(self) -> Self {
        if self.is_canonical() {
            self
        } else {
            self.reverse()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    index: BTreeMap<(usize, usize), usize>,
}

impl Graph {
    /// Builds a graph on `n` vertices. Rejects self-loops, repeated edges and
    /// out-of-range endpoints; `(u, v)` and `(v, u)` count as the same edge.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange(u));
            }
            if v >= n {
                return Err(Error::VertexOutOfRange(v));
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        for w in normalized.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateEdge(w[0].0, w[0].1));
            }
        }
        let mut adjacency = vec![Vec::new(); n];
        let mut index = BTreeMap::new();
        for (id, &(u, v)) in normalized.iter().enumerate() {
            adjacency[u].push(v);
            adjacency[v].push(u);
            index.insert((u, v), id);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: normalized,
            adjacency,
            index,
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph::from_edges(n, &[]).expect("edgeless graph is valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, indexed by edge id.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_id(u, v).is_some()
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.index.get(&(u.min(v), u.max(v))).copied()
    }

    /// Edge id together with the sign of the arc `tail -> head` relative to
    /// the edge's canonical orientation.
    pub fn arc(&self, tail: usize, head: usize) -> Option<(usize, i8)> {
        self.edge_id(tail, head)
            .map(|id| (id, if tail < head { 1 } else { -1 }))
    }

    /// Both arcs of every edge, sorted.
    pub fn oriented_edges(&self) -> Vec<OrientedEdge> {
        let mut arcs: Vec<OrientedEdge> = self
            .edges
            .iter()
            .flat_map(|&(u, v)| [OrientedEdge::new(u, v), OrientedEdge::new(v, u)])
            .collect();
        arcs.sort_unstable();
        arcs
    }

    /// Component label per vertex (labels are `0..c` in order of smallest vertex).
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adjacency[v] {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn component_count(&self) -> usize {
        self.component_labels().1
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.component_count() == 1
    }

    /// Fails with `DisconnectedGraph` (or `EmptyGraph`) unless the graph is connected.
    pub fn require_connected(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::EmptyGraph);
        }
        let c = self.component_count();
        if c != 1 {
            return Err(Error::DisconnectedGraph { components: c });
        }
        Ok(())
    }

    /// `|E| - |V| + c`, the dimension of the cycle space.
    pub fn cyclomatic_number(&self) -> usize {
        self.edges.len() + self.component_count() - self.n
    }

    /// BFS distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for &w in &self.adjacency[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn diameter(&self) -> Result<usize> {
        self.require_connected()?;
        Ok((0..self.n)
            .map(|s| {
                self.distances_from(s)
                    .into_iter()
                    .map(|d| d.unwrap())
                    .max()
                    .unwrap_or(0)
            })
            .max()
            .unwrap_or(0))
    }

    /// Vertices at distance exactly 1 and exactly 2 from `x`, each sorted.
    pub fn spheres(&self, x: usize) -> (Vec<usize>, Vec<usize>) {
        let dist = self.distances_from(x);
        let s1 = (0..self.n).filter(|&v| dist[v] == Some(1)).collect();
        let s2 = (0..self.n).filter(|&v| dist[v] == Some(2)).collect();
        (s1, s2)
    }

    /// Disjoint union, with `other`'s vertices shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Graph::from_edges(self.n + other.n, &edges).expect("union of simple graphs is simple")
    }
}
