use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::Circuit;

/// Three internally disjoint simple paths between `a` and `b`. Every path
/// starts at `a` and ends at `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaDecomposition {
    pub a: usize,
    pub b: usize,
    pub paths: [Vec<usize>; 3],
}

impl ThetaDecomposition {
    /// The circuit formed by paths `i` and `j`, canonicalized.
    pub fn circuit(&self, i: usize, j: usize) -> Circuit {
        let mut v = self.paths[i].clone();
        let back = &self.paths[j];
        v.extend(back[1..back.len() - 1].iter().rev());
        Circuit::new(v)
            .expect("two internally disjoint paths close a circuit")
            .canonical()
    }
}

fn edge_set(c: &Circuit) -> BTreeSet<(usize, usize)> {
    c.arcs()
        .map(|a| (a.tail.min(a.head), a.tail.max(a.head)))
        .collect()
}

/// Walk `c` from `from` away from the shared edges until `to` is reached.
fn private_path(
    c: &Circuit,
    shared: &BTreeSet<(usize, usize)>,
    from: usize,
    to: usize,
) -> Vec<usize> {
    let v = c.vertices();
    let n = v.len();
    let i = v.iter().position(|&x| x == from).unwrap();
    let fwd = v[(i + 1) % n];
    let step: isize = if shared.contains(&(from.min(fwd), from.max(fwd))) {
        -1
    } else {
        1
    };
    let mut path = Vec::new();
    let mut k = i as isize;
    loop {
        let x = v[k.rem_euclid(n as isize) as usize];
        path.push(x);
        if x == to {
            return path;
        }
        k += step;
    }
}

/// Decomposes `c1 ∪ c2` as a theta graph having `c1` and `c2` among its
/// three circuits. The shared part of `c1` and `c2` ends up as `paths[2]`.
pub fn theta_decomposition(c1: &Circuit, c2: &Circuit) -> Option<ThetaDecomposition> {
    let e1 = edge_set(c1);
    let e2 = edge_set(c2);
    if e1 == e2 {
        return None;
    }
    let shared: BTreeSet<_> = e1.intersection(&e2).copied().collect();
    if shared.is_empty() {
        return None;
    }
    let mut degree: BTreeMap<usize, usize> = BTreeMap::new();
    for &(u, v) in &shared {
        *degree.entry(u).or_default() += 1;
        *degree.entry(v).or_default() += 1;
    }
    let ends: Vec<usize> = degree
        .iter()
        .filter(|&(_, &d)| d == 1)
        .map(|(&v, _)| v)
        .collect();
    if ends.len() != 2 || degree.values().any(|&d| d > 2) {
        return None;
    }
    // A union of disjoint paths and cycles with exactly two odd vertices and
    // |E| = |V| - 1 is a single path.
    if shared.len() + 1 != degree.len() {
        return None;
    }
    let v1: BTreeSet<_> = c1.vertices().iter().copied().collect();
    let v2: BTreeSet<_> = c2.vertices().iter().copied().collect();
    if v1.intersection(&v2).count() != degree.len()
        || v1.intersection(&v2).any(|v| !degree.contains_key(v))
    {
        return None;
    }
    let (a, b) = (ends[0], ends[1]);
    let p1 = private_path(c1, &shared, a, b);
    let p2 = private_path(c2, &shared, a, b);
    // The shared path: walk c1 from a along the shared edge.
    let mut p3 = Vec::new();
    {
        let v = c1.vertices();
        let n = v.len();
        let i = v.iter().position(|&x| x == a).unwrap();
        let fwd = v[(i + 1) % n];
        let step: isize = if shared.contains(&(a.min(fwd), a.max(fwd))) {
            1
        } else {
            -1
        };
        let mut k = i as isize;
        loop {
            let x = v[k.rem_euclid(n as isize) as usize];
            p3.push(x);
            if x == b {
                break;
            }
            k += step;
        }
    }
    Some(ThetaDecomposition {
        a,
        b,
        paths: [p1, p2, p3],
    })
}

/// `c1 ⊕ c2`: the third circuit of the theta graph `c1 ∪ c2`, canonicalized,
/// or `None` when the union is not a theta graph with `c1`, `c2` among its circuits.
pub fn theta_third_circuit(c1: &Circuit, c2: &Circuit) -> Option<Circuit> {
    theta_decomposition(c1, c2).map(|t| t.circuit(0, 1))
}
