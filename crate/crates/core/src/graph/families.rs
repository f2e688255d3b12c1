//! Standard graph families and exhaustive small-graph generation.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::Graph;

fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges).expect("family constructions are simple graphs")
}

/// `C_n` on `0..n` in cyclic order, `n >= 3`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least 3 vertices");
    let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    build(n, &e)
}

/// The path `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Graph {
    let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    build(n, &e)
}

pub fn complete(n: usize) -> Graph {
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            e.push((u, v));
        }
    }
    build(n, &e)
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut e = Vec::new();
    for u in 0..a {
        for v in a..a + b {
            e.push((u, v));
        }
    }
    build(a + b, &e)
}

/// Centre 0 joined to `1..=leaves`.
pub fn star(leaves: usize) -> Graph {
    let e: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    build(leaves + 1, &e)
}

/// `Q_d` on bit strings, adjacent when they differ in one bit.
pub fn hypercube(d: usize) -> Graph {
    let n = 1usize << d;
    let mut e = Vec::new();
    for u in 0..n {
        for b in 0..d {
            let v = u ^ (1 << b);
            if u < v {
                e.push((u, v));
            }
        }
    }
    build(n, &e)
}

/// `C_n x K_2`: inner cycle `0..n`, outer cycle `n..2n`, spokes `i - (n + i)`.
pub fn prism(n: usize) -> Graph {
    build(2 * n, &prism_edges(n))
}

fn prism_edges(n: usize) -> Vec<(usize, usize)> {
    let mut e = Vec::new();
    for i in 0..n {
        e.push((i, (i + 1) % n));
        e.push((n + i, n + (i + 1) % n));
        e.push((i, n + i));
    }
    e
}

/// The pentagonal prism with one extra chord `0 - 2` across the inner cycle.
pub fn pentagonal_prism_with_chord() -> Graph {
    let mut e = prism_edges(5);
    e.push((0, 2));
    build(10, &e)
}

/// `K_6` minus the perfect matching `i - (i + 3)`.
pub fn octahedron() -> Graph {
    let mut e = Vec::new();
    for u in 0..6 {
        for v in u + 1..6 {
            if v != u + 3 {
                e.push((u, v));
            }
        }
    }
    build(6, &e)
}

/// Hub 0 joined to every vertex of the rim cycle `1..=rim`.
pub fn wheel(rim: usize) -> Graph {
    assert!(rim >= 3, "a wheel needs a rim of at least 3 vertices");
    let mut e: Vec<_> = (1..=rim).map(|i| (0, i)).collect();
    e.extend((1..=rim).map(|i| (i, i % rim + 1)));
    build(rim + 1, &e)
}

pub fn petersen() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((5 + i, 5 + (i + 2) % 5));
        e.push((i, 5 + i));
    }
    build(10, &e)
}

/// One representative of every isomorphism class of connected graphs on
/// exactly `n` vertices (`n <= 7`), ordered by edge count and then by a
/// canonical edge mask.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 7, "exhaustive generation is limited to 7 vertices");
    if n == 0 {
        return Vec::new();
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut pair_index = [[0usize; 7]; 7];
    for (k, &(u, v)) in pairs.iter().enumerate() {
        pair_index[u][v] = k;
        pair_index[v][u] = k;
    }
    let mut classes: BTreeSet<(u32, u64)> = BTreeSet::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        if n > 1 && !mask_connected(n, &pairs, mask) {
            continue;
        }
        let canon = canonical_mask(n, &pairs, &pair_index, mask);
        if canon == mask {
            classes.insert((mask.count_ones(), mask));
        }
    }
    classes
        .into_iter()
        .map(|(_, mask)| {
            let e: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            build(n, &e)
        })
        .collect()
}

/// [`connected_graphs`] for every order `1..=n`.
pub fn connected_graphs_up_to(n: usize) -> Vec<Graph> {
    (1..=n).flat_map(connected_graphs).collect()
}

fn mask_connected(n: usize, pairs: &[(usize, usize)], mask: u64) -> bool {
    let mut reached = 1u32;
    loop {
        let before = reached;
        for (k, &(u, v)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 && (reached >> u & 1) != (reached >> v & 1) {
                reached |= (1 << u) | (1 << v);
            }
        }
        if reached == before {
            return reached.count_ones() as usize == n;
        }
    }
}

/// Minimum relabelled mask over the relabellings that sort vertices by
/// degree; isomorphic graphs share this set of relabellings' images.
fn canonical_mask(
    n: usize,
    pairs: &[(usize, usize)],
    pair_index: &[[usize; 7]; 7],
    mask: u64,
) -> u64 {
    let mut degree = [0usize; 7];
    for (k, &(u, v)) in pairs.iter().enumerate() {
        if mask >> k & 1 == 1 {
            degree[u] += 1;
            degree[v] += 1;
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (degree[v], v));
    // blocks of equal degree, permuted independently
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match blocks.last_mut() {
            Some(b) if degree[b[0]] == degree[v] => b.push(v),
            _ => blocks.push(alloc::vec![v]),
        }
    }
    let mut best = u64::MAX;
    let mut label = [0usize; 7];
    permute_blocks(&mut blocks, 0, 0, &mut label, &mut |label| {
        let mut m = 0u64;
        for (k, &(u, v)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                m |= 1 << pair_index[label[u]][label[v]];
            }
        }
        best = best.min(m);
    });
    best
}

fn permute_blocks(
    blocks: &mut [Vec<usize>],
    block: usize,
    next_label: usize,
    label: &mut [usize; 7],
    visit: &mut dyn FnMut(&[usize; 7]),
) {
    if block == blocks.len() {
        visit(label);
        return;
    }
    let len = blocks[block].len();
    heap_permutations(blocks, block, len, next_label, label, visit);
}

fn heap_permutations(
    blocks: &mut [Vec<usize>],
    block: usize,
    k: usize,
    next_label: usize,
    label: &mut [usize; 7],
    visit: &mut dyn FnMut(&[usize; 7]),
) {
    if k <= 1 {
        let len = blocks[block].len();
        for i in 0..len {
            label[blocks[block][i]] = next_label + i;
        }
        permute_blocks(blocks, block + 1, next_label + len, label, visit);
        return;
    }
    for i in 0..k {
        heap_permutations(blocks, block, k - 1, next_label, label, visit);
        let j = if k % 2 == 0 { i } else { 0 };
        blocks[block].swap(j, k - 1);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 6, 21, 112]);
        assert_eq!(connected_graphs_up_to(6).len(), 143);
    }

    #[test]
    fn family_sizes() {
        assert_eq!(hypercube(3).edge_count(), 12);
        assert_eq!(octahedron().edge_count(), 12);
        assert_eq!(wheel(5).edge_count(), 10);
        assert_eq!(prism(5).edge_count(), 15);
        assert_eq!(pentagonal_prism_with_chord().edge_count(), 16);
        assert_eq!(petersen().edge_count(), 15);
        assert!(petersen().neighbors(0).len() == 3);
        assert_eq!(complete(5).edge_count(), 10);
        assert_eq!(complete_bipartite(2, 3).edge_count(), 6);
        assert_eq!(star(3).degree(0), 3);
        assert_eq!(path(4).edge_count(), 3);
    }
}
