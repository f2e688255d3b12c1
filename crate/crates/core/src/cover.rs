//! Coverings of graphs: ordinary and permutation derived graphs, covering
//! validation, circuit lifting and triviality.
//!
//! A covering with `m` sheets stores the total graph and the vertex
//! projection. Derived graphs number the vertex `(u, i)` as `u * m + i`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::gain::GainFunction;
use crate::graph::{spanning_tree, Circuit, Graph};
use crate::group::{GroupElement, GroupSpec, Order, Permutation};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Covering {
    base: Graph,
    total: Graph,
    projection: Vec<usize>,
    sheets: usize,
}

impl Covering {
    /// Validates that `projection` is a surjective, locally bijective graph
    /// homomorphism `total -> base` with constant fiber size.
    pub fn new(base: Graph, total: Graph, projection: Vec<usize>) -> Result<Self> {
        if projection.len() != total.vertex_count() {
            return Err(Error::InvalidCovering(format!(
                "projection has {} entries for {} vertices",
                projection.len(),
                total.vertex_count()
            )));
        }
        let n = base.vertex_count();
        let mut fiber = vec![0usize; n];
        for &p in &projection {
            if p >= n {
                return Err(Error::InvalidCovering(format!(
                    "projection target {p} is not a base vertex"
                )));
            }
            fiber[p] += 1;
        }
        let sheets = fiber.first().copied().unwrap_or(0);
        if sheets == 0 || fiber.iter().any(|&f| f != sheets) {
            return Err(Error::InvalidCovering(format!(
                "fiber sizes are not constant and positive: {fiber:?}"
            )));
        }
        for x in 0..total.vertex_count() {
            let px = projection[x];
            let mut images: Vec<usize> =
                total.neighbors(x).iter().map(|&y| projection[y]).collect();
            images.sort_unstable();
            if images != base.neighbors(px) {
                return Err(Error::InvalidCovering(format!(
                    "vertex {x} over {px}: neighbours map to {images:?}, expected {:?}",
                    base.neighbors(px)
                )));
            }
        }
        Ok(Covering {
            base,
            total,
            projection,
            sheets,
        })
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn total(&self) -> &Graph {
        &self.total
    }

    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    pub fn sheets(&self) -> usize {
        self.sheets
    }

    /// Total vertices over `v`, ascending.
    pub fn fiber(&self, v: usize) -> Vec<usize> {
        (0..self.total.vertex_count())
            .filter(|&x| self.projection[x] == v)
            .collect()
    }

    /// The unique neighbour of total vertex `x` lying over base vertex `v`.
    pub fn lift_step(&self, x: usize, v: usize) -> Option<usize> {
        self.total
            .neighbors(x)
            .iter()
            .copied()
            .find(|&y| self.projection[y] == v)
    }
}

/// Ordinary derived graph `{(u, g), (v, g phi(uv))}`; vertex `(u, g)` is
/// `u * |G| + k` with `g` the `k`-th element of [`GroupSpec::elements`].
pub fn ordinary_derived_graph(phi: &GainFunction) -> Result<Covering> {
    let group = phi.group();
    let Some(elements) = group.elements() else {
        return Err(Error::InfiniteGroup);
    };
    let index: BTreeMap<&GroupElement, usize> =
        elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let m = elements.len();
    let g = phi.graph();
    let mut edges = Vec::with_capacity(g.edge_count() * m);
    for (&(u, v), val) in g.edges().iter().zip(phi.values()) {
        for (k, e) in elements.iter().enumerate() {
            let target = index[&group.multiply(e, val)];
            edges.push((u * m + k, v * m + target));
        }
    }
    derived(g, m, &edges)
}

/// Permutation derived graph `{(u, i), (v, sigma_uv(i))}` for gains in `S_m`.
pub fn permutation_derived_graph(sigma: &GainFunction) -> Result<Covering> {
    let GroupSpec::Symmetric(m) = *sigma.group() else {
        return Err(Error::GroupMismatch(format!(
            "permutation derived graph needs S_m gains, got {}",
            sigma.group()
        )));
    };
    let g = sigma.graph();
    let mut edges = Vec::with_capacity(g.edge_count() * m);
    for (&(u, v), val) in g.edges().iter().zip(sigma.values()) {
        let GroupElement::Permutation(p) = val else {
            unreachable!("validated by GainFunction")
        };
        for i in 0..m {
            edges.push((u * m + i, v * m + p.apply(i)));
        }
    }
    derived(g, m, &edges)
}

/// Permutation derived graph for `S_m` gains, ordinary derived graph otherwise.
pub fn derived_graph(phi: &GainFunction) -> Result<Covering> {
    match phi.group() {
        GroupSpec::Symmetric(_) => permutation_derived_graph(phi),
        GroupSpec::Abelian(_) => ordinary_derived_graph(phi),
    }
}

fn derived(base: &Graph, m: usize, edges: &[(usize, usize)]) -> Result<Covering> {
    let total = Graph::from_edges(base.vertex_count() * m, edges)?;
    let projection = (0..base.vertex_count() * m).map(|x| x / m).collect();
    Covering::new(base.clone(), total, projection)
}

/// The preimage of a base circuit, split into its lifted circuits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftReport {
    pub base: Circuit,
    /// Lifted circuits in the total graph, each starting over `base`'s first vertex.
    pub lifts: Vec<Circuit>,
    pub lengths: Vec<usize>,
    /// Number of turns around the base circuit each lift makes.
    pub orders: Vec<usize>,
}

impl LiftReport {
    /// Every lift of the circuit has the base length.
    pub fn preserved(&self) -> bool {
        self.orders.iter().all(|&o| o == 1)
    }
}

/// Walks every fiber point over the first vertex of `c` around `c` until it closes.
pub fn lift_circuit(cov: &Covering, c: &Circuit) -> Result<LiftReport> {
    c.check_in(&cov.base)?;
    let base = c.vertices();
    let n = base.len();
    let mut used = vec![false; cov.total.vertex_count()];
    let mut lifts = Vec::new();
    let mut orders = Vec::new();
    for start in cov.fiber(base[0]) {
        if used[start] {
            continue;
        }
        let mut walk = vec![start];
        let mut x = start;
        let mut k = 0;
        loop {
            let next = cov
                .lift_step(x, base[(k + 1) % n])
                .expect("covering is locally bijective");
            k += 1;
            if next == start && k % n == 0 {
                break;
            }
            walk.push(next);
            x = next;
        }
        for &y in &walk {
            if used[y] {
                return Err(Error::InvalidCovering(format!(
                    "lifts of {:?} are not vertex-disjoint",
                    base
                )));
            }
            used[y] = true;
        }
        orders.push(walk.len() / n);
        lifts.push(Circuit::new(walk)?);
    }
    let lengths = lifts.iter().map(Circuit::len).collect();
    Ok(LiftReport {
        base: c.clone(),
        lifts,
        lengths,
        orders,
    })
}

/// Every listed circuit lifts only to circuits of its own length.
pub fn preserves_circuits(cov: &Covering, circuits: &[Circuit]) -> Result<bool> {
    for c in circuits {
        if !lift_circuit(cov, c)?.preserved() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The projection is injective on each connected component of the total graph.
pub fn is_trivial_covering(cov: &Covering) -> bool {
    let (labels, count) = cov.total.component_labels();
    let mut seen = vec![vec![false; cov.base.vertex_count()]; count];
    for (x, &comp) in labels.iter().enumerate() {
        let p = cov.projection[x];
        if seen[comp][p] {
            return false;
        }
        seen[comp][p] = true;
    }
    true
}

/// Re-encodes a covering of a connected base as `S_m` gains. Fibers are
/// numbered by carrying the numbering of the fiber over vertex 0 along the
/// breadth-first tree, so the tree edges get the identity; the permutation
/// derived graph of the result is isomorphic to the total graph via the
/// returned labelling (`labels[x]` is the sheet of total vertex `x`).
pub fn to_permutation_gain(cov: &Covering) -> Result<(GainFunction, Vec<usize>)> {
    let base = &cov.base;
    let tree = spanning_tree(base)?;
    let m = cov.sheets;
    let mut labels = vec![usize::MAX; cov.total.vertex_count()];
    for (i, x) in cov.fiber(0).into_iter().enumerate() {
        labels[x] = i;
    }
    // Breadth-first order guarantees parents are labelled first.
    let mut order: Vec<usize> = (0..base.vertex_count()).collect();
    let depth = base.distances_from(0);
    order.sort_by_key(|&v| depth[v]);
    for &v in &order[1..] {
        let p = tree.parent(v).unwrap();
        for x in cov.fiber(p) {
            let y = cov.lift_step(x, v).unwrap();
            labels[y] = labels[x];
        }
    }
    let mut by_label = vec![vec![0usize; m]; base.vertex_count()];
    for (x, &l) in labels.iter().enumerate() {
        by_label[cov.projection[x]][l] = x;
    }
    let mut values = Vec::with_capacity(base.edge_count());
    for &(u, v) in base.edges() {
        let images = (0..m)
            .map(|i| labels[cov.lift_step(by_label[u][i], v).unwrap()])
            .collect();
        values.push(GroupElement::Permutation(Permutation::from_images(images)?));
    }
    Ok((
        GainFunction::new(base.clone(), GroupSpec::Symmetric(m), values)?,
        labels,
    ))
}

/// Orders per sheet index of the lifted walk, read off a permutation gain:
/// the orbit length of `i` under `sigma_C`.
pub fn permutation_orders(sigma: &GainFunction, c: &Circuit) -> Result<Vec<usize>> {
    let GroupElement::Permutation(p) = sigma.circuit_gain(c)? else {
        return Err(Error::GroupMismatch(format!(
            "expected S_m gains, got {}",
            sigma.group()
        )));
    };
    Ok((0..p.degree()).map(|i| p.orbit_len(i)).collect())
}

/// Lift lengths predicted by a gain: `o_phi(C) * n`, or `None` if infinite.
pub fn predicted_lift_length(phi: &GainFunction, c: &Circuit) -> Result<Option<usize>> {
    Ok(match phi.circuit_order(c)? {
        Order::Finite(o) => Some(o as usize * c.len()),
        Order::Infinite => None,
    })
}
