use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::{Circuit, Graph};
use crate::Result;

/// A spanning tree rooted at vertex 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
    in_tree: Vec<bool>,
}

/// Breadth-first spanning tree from vertex 0, neighbours taken in ascending order.
pub fn spanning_tree(g: &Graph) -> Result<SpanningTree> {
    SpanningTree::bfs(g)
}

impl SpanningTree {
    pub fn bfs(g: &Graph) -> Result<Self> {
        g.require_connected()?;
        let n = g.vertex_count();
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    depth[w] = depth[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        Ok(Self::from_parents(g, parent, depth))
    }

    /// Depth-first spanning tree from vertex 0 (ascending neighbour order).
    /// Used as the alternative tree in tree-independence checks.
    pub fn dfs(g: &Graph) -> Result<Self> {
        g.require_connected()?;
        let n = g.vertex_count();
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut seen = vec![false; n];
        let mut stack = vec![(0usize, 0usize)];
        seen[0] = true;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            let nbrs = g.neighbors(v);
            if *next == nbrs.len() {
                stack.pop();
                continue;
            }
            let w = nbrs[*next];
            *next += 1;
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(v);
                depth[w] = depth[v] + 1;
                stack.push((w, 0));
            }
        }
        Ok(Self::from_parents(g, parent, depth))
    }

    /// Tree given by an explicit edge-id set; `None` unless it is a spanning tree.
    pub fn from_edge_ids(g: &Graph, ids: &[usize]) -> Option<Self> {
        let n = g.vertex_count();
        if n == 0 || ids.len() + 1 != n {
            return None;
        }
        let mut adj = vec![Vec::new(); n];
        for &id in ids {
            let &(u, v) = g.edges().get(id)?;
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    parent[w] = Some(v);
                    depth[w] = depth[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        (reached == n).then(|| Self::from_parents(g, parent, depth))
    }

    fn from_parents(g: &Graph, parent: Vec<Option<usize>>, depth: Vec<usize>) -> Self {
        let mut in_tree = vec![false; g.edge_count()];
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                in_tree[g.edge_id(v, p).unwrap()] = true;
            }
        }
        SpanningTree {
            parent,
            depth,
            in_tree,
        }
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn is_tree_edge(&self, edge_id: usize) -> bool {
        self.in_tree[edge_id]
    }

    /// Tree edge ids, ascending.
    pub fn edge_ids(&self) -> Vec<usize> {
        (0..self.in_tree.len())
            .filter(|&e| self.in_tree[e])
            .collect()
    }

    /// Non-tree edge ids, ascending. Their count is the cyclomatic number.
    pub fn non_tree_edge_ids(&self) -> Vec<usize> {
        (0..self.in_tree.len())
            .filter(|&e| !self.in_tree[e])
            .collect()
    }

    pub fn edges(&self, g: &Graph) -> Vec<(usize, usize)> {
        self.edge_ids().into_iter().map(|e| g.edges()[e]).collect()
    }

    /// Unique tree path from `u` to `v`, both endpoints included.
    pub fn path(&self, u: usize, v: usize) -> Vec<usize> {
        let (mut a, mut b) = (u, v);
        let mut left = vec![a];
        let mut right = vec![b];
        while self.depth[a] > self.depth[b] {
            a = self.parent[a].unwrap();
            left.push(a);
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b].unwrap();
            right.push(b);
        }
        while a != b {
            a = self.parent[a].unwrap();
            b = self.parent[b].unwrap();
            left.push(a);
            right.push(b);
        }
        right.pop();
        left.extend(right.into_iter().rev());
        left
    }

    /// The circuit closed by non-tree edge `edge_id`, oriented along the
    /// edge's canonical arc `u -> v` and then back through the tree.
    pub fn fundamental_circuit(&self, g: &Graph, edge_id: usize) -> Circuit {
        debug_assert!(!self.in_tree[edge_id]);
        let (u, v) = g.edges()[edge_id];
        let mut vertices = self.path(v, u);
        vertices.rotate_right(1);
        Circuit::new(vertices).expect("fundamental cycle is simple")
    }

    pub fn fundamental_circuits(&self, g: &Graph) -> Vec<Circuit> {
        self.non_tree_edge_ids()
            .into_iter()
            .map(|e| self.fundamental_circuit(g, e))
            .collect()
    }
}
