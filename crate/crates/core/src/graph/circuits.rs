use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use super::{Graph, OrientedEdge};
use crate::{Error, Result};

/// Default cap on the number of circuits a single enumeration may produce.
pub const DEFAULT_CIRCUIT_CAP: usize = 1_000_000;

/// A simple closed walk `(x_1, ..., x_n)`, `n >= 3`, with an orientation.
///
/// The stored sequence keeps the orientation it was built with, so a circuit
/// and its reverse are different values that map to opposite cycle vectors.
/// [`Circuit::canonical`] gives the representative used when circuits are
/// compared as unoriented sets: minimum vertex first, then the smaller of the
/// two neighbours of that vertex second.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Circuit {
    vertices: Vec<usize>,
}

impl Circuit {
    /// Validates length and distinctness only; use [`Circuit::check_in`] to
    /// verify the edges against a graph.
    pub fn new(vertices: Vec<usize>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidCircuit(format!(
                "{} vertices, need at least 3",
                vertices.len()
            )));
        }
        let distinct: BTreeSet<_> = vertices.iter().collect();
        if distinct.len() != vertices.len() {
            return Err(Error::InvalidCircuit(format!(
                "repeated vertex in {vertices:?}"
            )));
        }
        Ok(Circuit { vertices })
    }

    /// Builds a circuit and checks that every step is an edge of `g`.
    pub fn in_graph(g: &Graph, vertices: Vec<usize>) -> Result<Self> {
        let c = Circuit::new(vertices)?;
        c.check_in(g)?;
        Ok(c)
    }

    pub fn check_in(&self, g: &Graph) -> Result<()> {
        for arc in self.arcs() {
            if arc.tail >= g.vertex_count() || arc.head >= g.vertex_count() {
                return Err(Error::VertexOutOfRange(arc.tail.max(arc.head)));
            }
            if !g.has_edge(arc.tail, arc.head) {
                return Err(Error::InvalidCircuit(format!(
                    "{}-{} is not an edge",
                    arc.tail, arc.head
                )));
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    /// Arcs `x_1 x_2, ..., x_n x_1` in traversal order.
    pub fn arcs(&self) -> impl Iterator<Item = OrientedEdge> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| OrientedEdge::new(self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Sorted edge ids of the circuit in `g`. Panics if an arc is missing.
    pub fn edge_ids(&self, g: &Graph) -> Vec<usize> {
        let mut ids: Vec<usize> = self
            .arcs()
            .map(|a| g.edge_id(a.tail, a.head).expect("circuit arc is an edge"))
            .collect();
        ids.sort_unstable();
        ids
    }

    pub fn reversed(&self) -> Self {
        let mut v = self.vertices.clone();
        v[1..].reverse();
        Circuit { vertices: v }
    }

    /// Rotation starting at position `k`, same orientation.
    pub fn rotated(&self, k: usize) -> Self {
        let mut v = self.vertices.clone();
        let len = v.len();
        v.rotate_left(k % len);
        Circuit { vertices: v }
    }

    pub fn canonical(&self) -> Self {
        let n = self.vertices.len();
        let start = (0..n).min_by_key(|&i| self.vertices[i]).unwrap();
        let rotated = self.rotated(start);
        if rotated.vertices[1] > rotated.vertices[n - 1] {
            rotated.reversed()
        } else {
            rotated
        }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }

    /// Same underlying cycle, ignoring rotation and orientation.
    pub fn same_cycle(&self, other: &Circuit) -> bool {
        self.canonical() == other.canonical()
    }

    /// `+1` if `other` traverses this cycle in the same direction, `-1` if in
    /// the opposite one, `None` if it is a different cycle.
    pub fn relative_orientation(&self, other: &Circuit) -> Option<i8> {
        if !self.same_cycle(other) {
            return None;
        }
        let first = self.arcs().next().unwrap();
        if other.arcs().any(|a| a == first) {
            Some(1)
        } else {
            Some(-1)
        }
    }
}

/// All simple cycles of length `<= max_len`, each once in canonical form, sorted.
pub fn enumerate_circuits(g: &Graph, max_len: usize) -> Result<Vec<Circuit>> {
    enumerate_circuits_capped(g, max_len, DEFAULT_CIRCUIT_CAP)
}

/// As [`enumerate_circuits`] with an explicit cap on the number of circuits.
///
/// Each cycle is found exactly once: rooted at its minimum vertex, grown
/// through larger vertices only, and kept in the orientation whose second
/// vertex is smaller than its last.
pub fn enumerate_circuits_capped(g: &Graph, max_len: usize, cap: usize) -> Result<Vec<Circuit>> {
    if max_len < 3 {
        return Err(Error::InvalidCircuit(format!("max_len {max_len} < 3")));
    }
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut on_path = alloc::vec![false; n];
    let mut path = Vec::with_capacity(max_len);
    for root in 0..n {
        path.clear();
        path.push(root);
        on_path[root] = true;
        extend(g, root, max_len, cap, &mut path, &mut on_path, &mut out)?;
        on_path[root] = false;
    }
    out.sort();
    Ok(out)
}

fn extend(
    g: &Graph,
    root: usize,
    max_len: usize,
    cap: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Circuit>,
) -> Result<()> {
    let last = *path.last().unwrap();
    for &w in g.neighbors(last) {
        if w == root && path.len() >= 3 && path[1] < last {
            if out.len() == cap {
                return Err(Error::BudgetExceeded {
                    what: "circuit enumeration",
                    limit: cap as u64,
                });
            }
            out.push(Circuit {
                vertices: path.clone(),
            });
        } else if w > root && !on_path[w] && path.len() < max_len {
            on_path[w] = true;
            path.push(w);
            extend(g, root, max_len, cap, path, on_path, out)?;
            path.pop();
            on_path[w] = false;
        }
    }
    Ok(())
}

/// Triangles and squares of `g` (circuits of length 3 or 4).
pub fn triangles_and_squares(g: &Graph) -> Vec<Circuit> {
    enumerate_circuits(g, 4).expect("length-4 enumeration stays far below the cap on simple graphs")
}
