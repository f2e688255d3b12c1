//! Gain functions on oriented edges, circuit gains, orders and balance, plus
//! exhaustive enumeration of gains for brute-force checks.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::graph::{theta_decomposition, Circuit, Graph, SpanningTree};
use crate::group::{GroupElement, GroupSpec, Order};
use crate::{Error, Result};

/// Default cap on the number of gain configurations an enumeration visits.
pub const DEFAULT_GAIN_CAP: u64 = 10_000_000;

/// `phi: E -> G` with `phi(yx) = phi(xy)^-1`, stored on the canonical arc
/// `u -> v` (`u < v`) of each edge, indexed by edge id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GainFunction {
    graph: Graph,
    group: GroupSpec,
    values: Vec<GroupElement>,
}

impl GainFunction {
    pub fn new(graph: Graph, group: GroupSpec, values: Vec<GroupElement>) -> Result<Self> {
        if values.len() != graph.edge_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} gain values for {} edges",
                values.len(),
                graph.edge_count()
            )));
        }
        for v in &values {
            group.validate(v)?;
        }
        Ok(GainFunction {
            graph,
            group,
            values,
        })
    }

    pub fn identity(graph: Graph, group: GroupSpec) -> Self {
        let values = alloc::vec![group.identity(); graph.edge_count()];
        GainFunction {
            graph,
            group,
            values,
        }
    }

    /// Builds a gain from arc assignments; unlisted edges get the identity.
    /// An arc given as `v -> u` with `u < v` stores the inverse on `u -> v`.
    pub fn from_arcs(
        graph: Graph,
        group: GroupSpec,
        arcs: &[(usize, usize, GroupElement)],
    ) -> Result<Self> {
        let mut values = alloc::vec![group.identity(); graph.edge_count()];
        let mut set = BTreeSet::new();
        for (tail, head, g) in arcs {
            let elem = group.normalize(g.clone());
            group.validate(&elem)?;
            let Some((id, sign)) = graph.arc(*tail, *head) else {
                return Err(Error::InvalidCircuit(format!(
                    "{tail}-{head} is not an edge"
                )));
            };
            if !set.insert(id) {
                return Err(Error::DuplicateEdge(*tail.min(head), *tail.max(head)));
            }
            values[id] = if sign > 0 { elem } else { group.inverse(&elem) };
        }
        Ok(GainFunction {
            graph,
            group,
            values,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    /// Values on canonical arcs, by edge id.
    pub fn values(&self) -> &[GroupElement] {
        &self.values
    }

    /// `phi(tail -> head)`, or `None` if the pair is not an edge.
    pub fn arc_gain(&self, tail: usize, head: usize) -> Option<GroupElement> {
        let (id, sign) = self.graph.arc(tail, head)?;
        Some(if sign > 0 {
            self.values[id].clone()
        } else {
            self.group.inverse(&self.values[id])
        })
    }

    /// Ordered product `phi(x1 x2) phi(x2 x3) ... phi(xn x1)`.
    pub fn circuit_gain(&self, c: &Circuit) -> Result<GroupElement> {
        c.check_in(&self.graph)?;
        Ok(self.walk_gain(c.vertices(), true))
    }

    /// Product along a vertex walk; `closed` appends the arc back to the start.
    /// Repeated consecutive vertices contribute the identity.
    pub fn walk_gain(&self, walk: &[usize], closed: bool) -> GroupElement {
        let mut acc = self.group.identity();
        let n = walk.len();
        let steps = if closed { n } else { n.saturating_sub(1) };
        for i in 0..steps {
            let (a, b) = (walk[i], walk[(i + 1) % n]);
            if a == b {
                continue;
            }
            let g = self.arc_gain(a, b).expect("walk steps along edges");
            acc = self.group.multiply(&acc, &g);
        }
        acc
    }

    pub fn circuit_order(&self, c: &Circuit) -> Result<Order> {
        Ok(self.group.element_order(&self.circuit_gain(c)?))
    }

    pub fn is_balanced_on(&self, c: &Circuit) -> Result<bool> {
        Ok(self.group.is_identity(&self.circuit_gain(c)?))
    }

    /// Switching by a vertex potential `eta`: `phi'(uv) = eta(u)^-1 phi(uv) eta(v)`.
    /// Circuit gains change by conjugation only.
    pub fn switched(&self, eta: &[GroupElement]) -> GainFunction {
        let values = self
            .graph
            .edges()
            .iter()
            .zip(&self.values)
            .map(|(&(u, v), g)| {
                let left = self.group.multiply(&self.group.inverse(&eta[u]), g);
                self.group.multiply(&left, &eta[v])
            })
            .collect();
        GainFunction {
            graph: self.graph.clone(),
            group: self.group.clone(),
            values,
        }
    }
}

/// `o_phi(C)` for `phi` on `c`.
pub fn circuit_order(phi: &GainFunction, c: &Circuit) -> Result<Order> {
    phi.circuit_order(c)
}

/// `phi(C)`, the ordered gain product around `c`.
pub fn circuit_gain(phi: &GainFunction, c: &Circuit) -> Result<GroupElement> {
    phi.circuit_gain(c)
}

/// The circuits of `circuits` on which `phi` is balanced, in input order.
pub fn balanced_set(phi: &GainFunction, circuits: &[Circuit]) -> Result<Vec<Circuit>> {
    let mut out = Vec::new();
    for c in circuits {
        if phi.is_balanced_on(c)? {
            out.push(c.clone());
        }
    }
    debug_assert!(is_linear_subclass(&out, circuits));
    Ok(out)
}

/// Whether `sub` is closed under theta completion inside `universe`: when two
/// circuits of `sub` make a theta graph whose third circuit is in `universe`,
/// that third circuit is in `sub` too.
pub fn is_linear_subclass(sub: &[Circuit], universe: &[Circuit]) -> bool {
    let members: BTreeSet<Circuit> = sub.iter().map(Circuit::canonical).collect();
    let all: BTreeSet<Circuit> = universe.iter().map(Circuit::canonical).collect();
    for (i, a) in sub.iter().enumerate() {
        for b in &sub[i + 1..] {
            if let Some(t) = theta_decomposition(a, b) {
                let third = t.circuit(0, 1);
                if all.contains(&third) && !members.contains(&third) {
                    return false;
                }
            }
        }
    }
    true
}

/// Iterates over gain functions that are the identity on a chosen set of
/// fixed edges and range over `choices` on the remaining ones.
///
/// With the tree edges of a spanning tree fixed, every gain is switching
/// equivalent to exactly one visited configuration, and switching preserves
/// every circuit order.
#[derive(Debug, Clone)]
pub struct GainEnumerator {
    graph: Graph,
    group: GroupSpec,
    free_edges: Vec<usize>,
    choices: Vec<GroupElement>,
    counter: Vec<usize>,
    done: bool,
}

impl GainEnumerator {
    /// All assignments on every edge. Fails if `|choices|^|E|` exceeds `cap`.
    pub fn all_edges(
        graph: &Graph,
        group: &GroupSpec,
        choices: Vec<GroupElement>,
        cap: u64,
    ) -> Result<Self> {
        let free: Vec<usize> = (0..graph.edge_count()).collect();
        Self::with_free_edges(graph, group, choices, free, cap)
    }

    /// Assignments on non-tree edges only, tree edges fixed to the identity.
    pub fn gauge_fixed(
        graph: &Graph,
        group: &GroupSpec,
        tree: &SpanningTree,
        choices: Vec<GroupElement>,
        cap: u64,
    ) -> Result<Self> {
        Self::with_free_edges(graph, group, choices, tree.non_tree_edge_ids(), cap)
    }

    fn with_free_edges(
        graph: &Graph,
        group: &GroupSpec,
        choices: Vec<GroupElement>,
        free_edges: Vec<usize>,
        cap: u64,
    ) -> Result<Self> {
        let count = configuration_count(choices.len(), free_edges.len());
        if count.is_none_or(|c| c > cap) {
            return Err(Error::BudgetExceeded {
                what: "gain enumeration",
                limit: cap,
            });
        }
        for c in &choices {
            group.validate(c)?;
        }
        Ok(GainEnumerator {
            graph: graph.clone(),
            group: group.clone(),
            counter: alloc::vec![0; free_edges.len()],
            done: choices.is_empty() && !free_edges.is_empty(),
            free_edges,
            choices,
        })
    }

    /// Number of configurations this enumerator yields.
    pub fn len(&self) -> u64 {
        configuration_count(self.choices.len(), self.free_edges.len()).unwrap_or(u64::MAX)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn configuration_count(choices: usize, free: usize) -> Option<u64> {
    (0..free).try_fold(1u64, |acc, _| acc.checked_mul(choices as u64))
}

impl Iterator for GainEnumerator {
    type Item = GainFunction;

    fn next(&mut self) -> Option<GainFunction> {
        if self.done {
            return None;
        }
        let mut values = alloc::vec![self.group.identity(); self.graph.edge_count()];
        for (k, &e) in self.free_edges.iter().enumerate() {
            values[e] = self.choices[self.counter[k]].clone();
        }
        // odometer step
        let mut k = 0;
        loop {
            if k == self.counter.len() {
                self.done = true;
                break;
            }
            self.counter[k] += 1;
            if self.counter[k] < self.choices.len() {
                break;
            }
            self.counter[k] = 0;
            k += 1;
        }
        Some(GainFunction {
            graph: self.graph.clone(),
            group: self.group.clone(),
            values,
        })
    }
}

/// Bitmask of the circuits (by position in `circuits`, at most 128) on which
/// `phi` is balanced.
pub fn balance_mask(phi: &GainFunction, circuits: &[Circuit]) -> Result<u128> {
    if circuits.len() > 128 {
        return Err(Error::BudgetExceeded {
            what: "balance mask circuits",
            limit: 128,
        });
    }
    let mut mask = 0u128;
    for (i, c) in circuits.iter().enumerate() {
        if phi.is_balanced_on(c)? {
            mask |= 1 << i;
        }
    }
    Ok(mask)
}

/// Searches the given configurations for a gain balanced on every circuit of
/// `b` but unbalanced on some circuit of `universe`.
pub fn find_unbalanced_extension(
    configs: impl IntoIterator<Item = GainFunction>,
    b: &[Circuit],
    universe: &[Circuit],
) -> Result<Option<GainFunction>> {
    for phi in configs {
        let mut ok = true;
        for c in b {
            if !phi.is_balanced_on(c)? {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        for c in universe {
            if !phi.is_balanced_on(c)? {
                return Ok(Some(phi));
            }
        }
    }
    Ok(None)
}

/// Distinct balance masks over `circuits` of every gauge-fixed gain with
/// non-tree values drawn from `choices`. Since switching preserves balance,
/// this covers every gain with values in `choices` up to switching when the
/// choices form a group.
pub fn balance_masks(
    graph: &Graph,
    group: &GroupSpec,
    choices: Vec<GroupElement>,
    circuits: &[Circuit],
    cap: u64,
) -> Result<BTreeSet<u128>> {
    let tree = SpanningTree::bfs(graph)?;
    let mut out = BTreeSet::new();
    for phi in GainEnumerator::gauge_fixed(graph, group, &tree, choices, cap)? {
        out.insert(balance_mask(&phi, circuits)?);
    }
    Ok(out)
}

/// `{a & b}` over all pairs: the masks of gains into a direct product.
pub fn product_masks(a: &BTreeSet<u128>, b: &BTreeSet<u128>) -> BTreeSet<u128> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x & y))
        .collect()
}

/// Positions of `b` inside `circuits` (compared as unoriented cycles) as a mask.
pub fn circuit_set_mask(b: &[Circuit], circuits: &[Circuit]) -> Option<u128> {
    let mut mask = 0u128;
    for c in b {
        let i = circuits.iter().position(|d| d.same_cycle(c))?;
        if i >= 128 {
            return None;
        }
        mask |= 1 << i;
    }
    Some(mask)
}

/// No recorded gain is balanced on all of `required` yet unbalanced somewhere in `full`.
pub fn masks_force_balance(masks: &BTreeSet<u128>, required: u128, full: u128) -> bool {
    masks
        .iter()
        .all(|&m| m & required != required || m & full == full)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::enumerate_circuits;
    use crate::group::{AbelianGroupSpec, Permutation};
    use alloc::vec;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn z(q: u64) -> GroupSpec {
        GroupSpec::Abelian(AbelianGroupSpec::cyclic(q))
    }

    #[test]
    fn c3_over_z2() {
        let g = cycle(3);
        let phi =
            GainFunction::from_arcs(g, z(2), &[(0, 1, GroupElement::Abelian(vec![1]))]).unwrap();
        let c = Circuit::new(vec![0, 1, 2]).unwrap();
        assert_eq!(
            phi.circuit_gain(&c).unwrap(),
            GroupElement::Abelian(vec![1])
        );
        assert_eq!(phi.circuit_order(&c).unwrap(), Order::Finite(2));
    }

    #[test]
    fn c4_over_s3_two_transpositions() {
        let g = cycle(4);
        let t = GroupElement::Permutation(Permutation::from_cycles(3, &[vec![0, 1]]).unwrap());
        let phi =
            GainFunction::from_arcs(g, GroupSpec::Symmetric(3), &[(0, 1, t.clone()), (2, 3, t)])
                .unwrap();
        let c = Circuit::new(vec![0, 1, 2, 3]).unwrap();
        assert!(phi.is_balanced_on(&c).unwrap());
    }

    #[test]
    fn orders_z_and_z6() {
        let g = cycle(3);
        let c = Circuit::new(vec![0, 1, 2]).unwrap();
        let zz = GroupSpec::Abelian(AbelianGroupSpec::integers());
        let phi = GainFunction::from_arcs(g.clone(), zz, &[(0, 1, GroupElement::Abelian(vec![2]))])
            .unwrap();
        assert_eq!(phi.circuit_order(&c).unwrap(), Order::Infinite);
        let phi =
            GainFunction::from_arcs(g, z(6), &[(0, 1, GroupElement::Abelian(vec![4]))]).unwrap();
        assert_eq!(phi.circuit_order(&c).unwrap(), Order::Finite(3));
    }

    #[test]
    fn reversed_arc_stores_inverse() {
        let g = cycle(3);
        let phi =
            GainFunction::from_arcs(g, z(5), &[(1, 0, GroupElement::Abelian(vec![2]))]).unwrap();
        assert_eq!(phi.values()[0], GroupElement::Abelian(vec![3]));
        assert_eq!(phi.arc_gain(1, 0), Some(GroupElement::Abelian(vec![2])));
    }

    #[test]
    fn k4_one_edge_balanced_set() {
        let mut edges = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                edges.push((i, j));
            }
        }
        let k4 = Graph::from_edges(4, &edges).unwrap();
        let all = enumerate_circuits(&k4, 4).unwrap();
        let phi =
            GainFunction::from_arcs(k4.clone(), z(2), &[(0, 1, GroupElement::Abelian(vec![1]))])
                .unwrap();
        let bal = balanced_set(&phi, &all).unwrap();
        let e01 = k4.edge_id(0, 1).unwrap();
        assert_eq!(
            bal.len(),
            all.iter()
                .filter(|c| !c.edge_ids(&k4).contains(&e01))
                .count()
        );
        assert_eq!(bal.len(), 3);
        assert!(is_linear_subclass(&bal, &all));
    }

    #[test]
    fn gauge_fixed_enumeration_counts() {
        let g = cycle(4);
        let t = crate::graph::spanning_tree(&g).unwrap();
        let e = GainEnumerator::gauge_fixed(&g, &z(3), &t, z(3).elements().unwrap(), 100).unwrap();
        assert_eq!(e.len(), 3);
        assert_eq!(e.count(), 3);
        let e = GainEnumerator::all_edges(&g, &z(3), z(3).elements().unwrap(), 100).unwrap();
        assert_eq!(e.count(), 81);
        assert!(GainEnumerator::all_edges(&g, &z(3), z(3).elements().unwrap(), 80).is_err());
    }

    #[test]
    fn switching_preserves_orders() {
        let g = cycle(5);
        let s = GroupSpec::Symmetric(3);
        let a = GroupElement::Permutation(Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap());
        let b = GroupElement::Permutation(Permutation::from_cycles(3, &[vec![1, 2]]).unwrap());
        let phi =
            GainFunction::from_arcs(g, s.clone(), &[(0, 1, a.clone()), (3, 4, b.clone())]).unwrap();
        let eta = vec![b.clone(), a.clone(), s.identity(), b, a];
        let c = Circuit::new(vec![0, 1, 2, 3, 4]).unwrap();
        assert_eq!(
            phi.circuit_order(&c).unwrap(),
            phi.switched(&eta).circuit_order(&c).unwrap()
        );
    }
}
