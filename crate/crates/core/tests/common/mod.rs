#![allow(dead_code)]

use gaincurv_core::graph::{Circuit, Graph};
use proptest::prelude::*;

pub fn random_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut e = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        e.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, &e).unwrap()
        })
    })
}

pub fn random_connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    random_graph(max_n).prop_filter("connected", |g| g.is_connected())
}

/// Every `k`-subset of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// All cyclomatic subsets of `circuits` when there are at most `limit`,
/// otherwise `limit` subsets picked by a fixed linear congruential walk.
pub fn cyclomatic_sets(circuits: &[Circuit], r: usize, limit: usize) -> Vec<Vec<Circuit>> {
    let pick = |idx: &[usize]| idx.iter().map(|&i| circuits[i].clone()).collect::<Vec<_>>();
    if binomial(circuits.len(), r) <= limit as u128 {
        return combinations(circuits.len(), r)
            .iter()
            .map(|c| pick(c))
            .collect();
    }
    let mut state = 0x9e37_79b9_7f4a_7c15u64;
    let mut out = Vec::with_capacity(limit);
    for _ in 0..limit {
        let mut idx: Vec<usize> = Vec::with_capacity(r);
        while idx.len() < r {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let i = (state >> 33) as usize % circuits.len();
            if !idx.contains(&i) {
                idx.push(i);
            }
        }
        idx.sort_unstable();
        out.push(pick(&idx));
    }
    out
}
