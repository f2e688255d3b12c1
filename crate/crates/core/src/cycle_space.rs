//! Cycle vectors, cycle matrices, determinants of circuit sets and the
//! usual classes of cycle bases.
//!
//! A circuit set `B = {C_1, ..., C_k}` is represented by its incidence matrix
//! `M(B)`: one row per edge id, one column per circuit, entry `+1` when the
//! circuit runs along the edge's canonical arc, `-1` against it, `0` off it.
//! Restricting to the rows of non-tree edges of a spanning tree gives the
//! square matrix whose absolute determinant is `det B`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::algebra::{FieldSpec, IntMatrix, Matrix, Scalar};
use crate::graph::{
    enumerate_circuits_capped, spanning_tree, theta_third_circuit, Circuit, Graph, SpanningTree,
    DEFAULT_CIRCUIT_CAP,
};
use crate::group::AbelianGroupSpec;
use crate::{Error, Result};

/// Default bound on `|B|` for the totally-unimodular minor check.
pub const DEFAULT_TU_CAP: usize = 8;

/// `m - n + c`.
pub fn cycle_space_dimension(g: &Graph) -> usize {
    g.edge_count() + g.component_count() - g.vertex_count()
}

/// An antisymmetric edge function, stored by its value on each canonical arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleVector {
    field: FieldSpec,
    values: Vec<Scalar>,
}

impl CycleVector {
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Values on canonical arcs, indexed by edge id.
    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    /// Value on the arc `tail -> head`.
    pub fn value(&self, g: &Graph, tail: usize, head: usize) -> Option<Scalar> {
        let (id, sign) = g.arc(tail, head)?;
        Some(if sign > 0 {
            self.values[id].clone()
        } else {
            -&self.values[id]
        })
    }

    /// Zero net outflow at every vertex.
    pub fn is_conserved(&self, g: &Graph) -> bool {
        (0..g.vertex_count()).all(|x| {
            let mut acc = self.field.zero();
            for &y in g.neighbors(x) {
                acc = &acc + &self.value(g, x, y).unwrap();
            }
            acc.is_zero()
        })
    }
}

/// `+1` along the circuit's arcs, `0` elsewhere.
pub fn circuit_to_vector(g: &Graph, c: &Circuit, field: FieldSpec) -> Result<CycleVector> {
    c.check_in(g)?;
    let mut values = vec![field.zero(); g.edge_count()];
    for arc in c.arcs() {
        let (id, sign) = g.arc(arc.tail, arc.head).unwrap();
        values[id] = field.from_i64(sign as i64);
    }
    Ok(CycleVector { field, values })
}

/// Signed incidence matrix `M(B)` over the integers, `|E|` rows by `|B|` columns.
pub fn incidence_matrix(g: &Graph, b: &[Circuit]) -> Result<IntMatrix> {
    let mut m = IntMatrix::zeros(g.edge_count(), b.len());
    for (j, c) in b.iter().enumerate() {
        c.check_in(g)?;
        for arc in c.arcs() {
            let (id, sign) = g.arc(arc.tail, arc.head).unwrap();
            m.set(id, j, BigInt::from(sign));
        }
    }
    Ok(m)
}

/// `M(B)` over a field, with the optional square restriction to non-tree rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleMatrix {
    pub matrix: Matrix,
    pub tree: Option<SpanningTree>,
}

impl CycleMatrix {
    pub fn new(
        g: &Graph,
        b: &[Circuit],
        field: FieldSpec,
        tree: Option<SpanningTree>,
    ) -> Result<Self> {
        let m = incidence_matrix(g, b)?;
        Ok(CycleMatrix {
            matrix: Matrix::from_int_matrix(field, &m),
            tree,
        })
    }

    /// Rows of the non-tree edges, or `None` when no tree was given.
    pub fn tree_submatrix(&self) -> Option<Matrix> {
        let t = self.tree.as_ref()?;
        Some(self.matrix.select_rows(&t.non_tree_edge_ids()))
    }
}

fn require_cyclomatic(g: &Graph, b: &[Circuit]) -> Result<()> {
    let r = cycle_space_dimension(g);
    if b.len() != r {
        return Err(Error::WrongCardinality {
            expected: r,
            got: b.len(),
        });
    }
    Ok(())
}

/// `|det M(B, Q, T)|` for the breadth-first spanning tree.
pub fn det_of_circuit_set(b: &[Circuit], g: &Graph) -> Result<BigInt> {
    let t = spanning_tree(g)?;
    det_of_circuit_set_with_tree(b, g, &t)
}

/// `|det M(B, Q, T)|` for a given spanning tree.
pub fn det_of_circuit_set_with_tree(
    b: &[Circuit],
    g: &Graph,
    tree: &SpanningTree,
) -> Result<BigInt> {
    g.require_connected()?;
    require_cyclomatic(g, b)?;
    let m = incidence_matrix(g, b)?;
    let rows = tree.non_tree_edge_ids();
    let mut sq = IntMatrix::zeros(rows.len(), b.len());
    for (i, &e) in rows.iter().enumerate() {
        for j in 0..b.len() {
            sq.set(i, j, m.get(e, j).clone());
        }
    }
    Ok(sq.det()?.abs())
}

/// Determinant criterion: `det B` is nonzero in the field.
pub fn is_f_cycle_basis(b: &[Circuit], g: &Graph, field: FieldSpec) -> Result<bool> {
    let d = det_of_circuit_set(b, g)?;
    Ok(!field.from_bigint(&d).is_zero())
}

/// Direct criterion: `M(B)` has full column rank `r` over the field.
pub fn is_f_cycle_basis_by_rank(b: &[Circuit], g: &Graph, field: FieldSpec) -> Result<bool> {
    require_cyclomatic(g, b)?;
    let m = CycleMatrix::new(g, b, field, None)?;
    Ok(m.matrix.rank() == b.len())
}

/// Circuits of the breadth-first tree's fundamental basis, in non-tree edge order.
pub fn fundamental_basis(g: &Graph) -> Result<Vec<Circuit>> {
    Ok(spanning_tree(g)?.fundamental_circuits(g))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisClassification {
    pub det_value: BigInt,
    pub is_basis_over: BTreeMap<FieldSpec, bool>,
    pub integral: bool,
    /// `None` when `|B|` exceeds the minor-enumeration cap.
    pub totally_unimodular: Option<bool>,
    pub weakly_fundamental: bool,
    pub strictly_fundamental: bool,
}

/// Fields reported in [`BasisClassification::is_basis_over`].
pub const CLASSIFICATION_FIELDS: [FieldSpec; 4] = [
    FieldSpec::Rationals,
    FieldSpec::Prime(2),
    FieldSpec::Prime(3),
    FieldSpec::Prime(5),
];

pub fn classify_basis(b: &[Circuit], g: &Graph) -> Result<BasisClassification> {
    classify_basis_with_cap(b, g, DEFAULT_TU_CAP)
}

pub fn classify_basis_with_cap(
    b: &[Circuit],
    g: &Graph,
    tu_cap: usize,
) -> Result<BasisClassification> {
    let det_value = det_of_circuit_set(b, g)?;
    let is_basis_over = CLASSIFICATION_FIELDS
        .iter()
        .map(|&f| (f, !f.from_bigint(&det_value).is_zero()))
        .collect();
    let m = incidence_matrix(g, b)?;
    let totally_unimodular = (b.len() <= tu_cap).then(|| is_totally_unimodular(&m));
    Ok(BasisClassification {
        integral: det_value == BigInt::from(1),
        totally_unimodular,
        weakly_fundamental: is_weakly_fundamental(b, g)?,
        strictly_fundamental: is_strictly_fundamental(b, g)?,
        is_basis_over,
        det_value,
    })
}

/// Every square minor of `m` is `0` or `+-1`.
pub fn is_totally_unimodular(m: &IntMatrix) -> bool {
    let (rows, cols) = (m.rows(), m.cols());
    let small: Vec<i64> = m
        .data()
        .iter()
        .map(|x| i64::try_from(x).unwrap_or(i64::MAX))
        .collect();
    if small.iter().any(|&x| !(-1..=1).contains(&x)) {
        return false;
    }
    for k in 2..=rows.min(cols) {
        let mut rs: Vec<usize> = (0..k).collect();
        loop {
            let mut cs: Vec<usize> = (0..k).collect();
            loop {
                let mut sub = Vec::with_capacity(k * k);
                for &r in &rs {
                    for &c in &cs {
                        sub.push(small[r * cols + c] as i128);
                    }
                }
                if small_det(k, &mut sub).abs() > 1 {
                    return false;
                }
                if !next_combination(&mut cs, cols) {
                    break;
                }
            }
            if !next_combination(&mut rs, rows) {
                break;
            }
        }
    }
    true
}

/// Bareiss on a small integer matrix; exact for entries of moderate size.
fn small_det(n: usize, m: &mut [i128]) -> i128 {
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k * n + k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i * n + k] != 0) else {
                return 0;
            };
            for j in 0..n {
                m.swap(p * n + j, k * n + j);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i * n + j] = (m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j]) / prev;
            }
        }
        prev = m[k * n + k];
    }
    sign * m[n * n - 1]
}

/// Advances a sorted k-subset of `0..n`; `false` after the last one.
pub(crate) fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
        return false;
    };
    c[i] += 1;
    for j in i + 1..k {
        c[j] = c[j - 1] + 1;
    }
    true
}

/// Some ordering gives every circuit after the first an edge missing from
/// all earlier ones. Peels from the back: a circuit with an edge used by no
/// other remaining circuit can go last.
pub fn is_weakly_fundamental(b: &[Circuit], g: &Graph) -> Result<bool> {
    require_cyclomatic(g, b)?;
    let mut sets: Vec<BTreeSet<usize>> = Vec::with_capacity(b.len());
    for c in b {
        c.check_in(g)?;
        sets.push(c.edge_ids(g).into_iter().collect());
    }
    while sets.len() > 1 {
        let pos = (0..sets.len()).find(|&i| {
            sets[i].iter().any(|e| {
                sets.iter()
                    .enumerate()
                    .all(|(j, s)| j == i || !s.contains(e))
            })
        });
        match pos {
            Some(i) => {
                sets.swap_remove(i);
            }
            None => return Ok(false),
        }
    }
    Ok(true)
}

/// `B` is the fundamental basis of some spanning tree. Equivalent to every
/// circuit owning an edge that no other circuit of `B` uses: deleting one
/// such edge per circuit leaves each circuit's other edges in place, so the
/// graph stays connected and the rest is a tree whose fundamental circuits
/// are exactly `B`.
pub fn is_strictly_fundamental(b: &[Circuit], g: &Graph) -> Result<bool> {
    require_cyclomatic(g, b)?;
    g.require_connected()?;
    let mut sets: Vec<BTreeSet<usize>> = Vec::with_capacity(b.len());
    for c in b {
        c.check_in(g)?;
        sets.push(c.edge_ids(g).into_iter().collect());
    }
    Ok((0..sets.len()).all(|i| {
        sets[i].iter().any(|e| {
            sets.iter()
                .enumerate()
                .all(|(j, s)| j == i || !s.contains(e))
        })
    }))
}

/// A spanning tree witnessing [`is_strictly_fundamental`], if any.
pub fn strictly_fundamental_tree(b: &[Circuit], g: &Graph) -> Result<Option<SpanningTree>> {
    if !is_strictly_fundamental(b, g)? {
        return Ok(None);
    }
    let sets: Vec<BTreeSet<usize>> = b
        .iter()
        .map(|c| c.edge_ids(g).into_iter().collect())
        .collect();
    let mut removed = BTreeSet::new();
    for (i, s) in sets.iter().enumerate() {
        let e = *s
            .iter()
            .find(|e| {
                sets.iter()
                    .enumerate()
                    .all(|(j, t)| j == i || !t.contains(e))
            })
            .unwrap();
        removed.insert(e);
    }
    let keep: Vec<usize> = (0..g.edge_count())
        .filter(|e| !removed.contains(e))
        .collect();
    Ok(SpanningTree::from_edge_ids(g, &keep))
}

/// Closure of `b` under theta completion, canonicalized and sorted.
pub fn theta_closure(b: &[Circuit]) -> Vec<Circuit> {
    let mut set: BTreeSet<Circuit> = b.iter().map(Circuit::canonical).collect();
    let mut list: Vec<Circuit> = set.iter().cloned().collect();
    let mut i = 0;
    while i < list.len() {
        let c = list[i].clone();
        for j in 0..i {
            if let Some(t) = theta_third_circuit(&c, &list[j]) {
                if set.insert(t.clone()) {
                    list.push(t);
                }
            }
        }
        i += 1;
    }
    set.into_iter().collect()
}

/// The theta closure of `b` is every circuit of `g`. `max_len` must reach
/// the longest circuit of `g`.
pub fn is_combinatorial_generator(b: &[Circuit], g: &Graph, max_len: usize) -> Result<bool> {
    is_combinatorial_generator_capped(b, g, max_len, DEFAULT_CIRCUIT_CAP)
}

pub fn is_combinatorial_generator_capped(
    b: &[Circuit],
    g: &Graph,
    max_len: usize,
    cap: usize,
) -> Result<bool> {
    for c in b {
        c.check_in(g)?;
    }
    let all = enumerate_circuits_capped(g, g.vertex_count().max(3), cap)?;
    let longest = all.iter().map(Circuit::len).max().unwrap_or(0);
    if longest > max_len {
        return Err(Error::MaxLenTooShort { max_len, longest });
    }
    Ok(theta_closure(b) == all)
}

/// Determinant criterion for abelian `Z^n + Z_q1 + ... + Z_qt`: no nonidentity
/// element is killed by `det B`.
pub fn is_abelian_circuit_generator(
    b: &[Circuit],
    g: &Graph,
    group: &AbelianGroupSpec,
) -> Result<bool> {
    let d = det_of_circuit_set(b, g)?;
    Ok(abelian_generator_from_det(&d, group))
}

/// `g^d != e` for every `g != e` in the group.
pub fn abelian_generator_from_det(d: &BigInt, group: &AbelianGroupSpec) -> bool {
    let nontrivial = group.moduli.iter().any(|&q| q != 1);
    if d.is_zero() {
        return !nontrivial;
    }
    group
        .moduli
        .iter()
        .all(|&q| q == 0 || d.gcd(&BigInt::from(q)) == BigInt::from(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::enumerate_circuits;

    fn k(n: usize) -> Graph {
        let mut e = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                e.push((i, j));
            }
        }
        Graph::from_edges(n, &e).unwrap()
    }

    fn c(v: &[usize]) -> Circuit {
        Circuit::new(v.to_vec()).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(
            cycle_space_dimension(&Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()),
            0
        );
        assert_eq!(cycle_space_dimension(&k(4)), 3);
        let two = k(3).disjoint_union(&k(3));
        assert_eq!(cycle_space_dimension(&two), 2);
    }

    #[test]
    fn vectors() {
        let g = k(3);
        let f = FieldSpec::Rationals;
        let v = circuit_to_vector(&g, &c(&[0, 1, 2]), f).unwrap();
        assert_eq!(v.value(&g, 0, 1), Some(f.one()));
        assert_eq!(v.value(&g, 1, 2), Some(f.one()));
        assert_eq!(v.value(&g, 2, 0), Some(f.one()));
        assert!(v.is_conserved(&g));
        let r = circuit_to_vector(&g, &c(&[0, 2, 1]), f).unwrap();
        assert!(v.values().iter().zip(r.values()).all(|(a, b)| *a == -b));
        let f2 = FieldSpec::Prime(2);
        assert_eq!(
            circuit_to_vector(&g, &c(&[0, 1, 2]), f2).unwrap(),
            circuit_to_vector(&g, &c(&[0, 2, 1]), f2).unwrap()
        );
    }

    #[test]
    fn k4_triangles_through_zero() {
        let g = k(4);
        let b = [c(&[0, 1, 2]), c(&[0, 1, 3]), c(&[0, 2, 3])];
        let cls = classify_basis(&b, &g).unwrap();
        assert_eq!(cls.det_value, BigInt::from(1));
        assert!(cls.integral && cls.weakly_fundamental);
        assert_eq!(cls.totally_unimodular, Some(true));
        // edge 12, 13, 23 are each private; this is the fundamental basis of the star at 0
        assert!(cls.strictly_fundamental);
        assert!(is_combinatorial_generator(&b, &g, 4).unwrap());
        assert!(matches!(
            is_combinatorial_generator(&b, &g, 3),
            Err(Error::MaxLenTooShort {
                max_len: 3,
                longest: 4
            })
        ));
    }

    #[test]
    fn fundamental_basis_is_strict() {
        for n in 3..6 {
            let g = k(n);
            let b = fundamental_basis(&g).unwrap();
            let cls = classify_basis(&b, &g).unwrap();
            assert_eq!(cls.det_value, BigInt::from(1));
            assert!(cls.strictly_fundamental && cls.weakly_fundamental && cls.integral);
            assert!(strictly_fundamental_tree(&b, &g).unwrap().is_some());
        }
    }

    #[test]
    fn repeated_circuit_has_zero_det() {
        let g = k(4);
        let b = [c(&[0, 1, 2]), c(&[0, 1, 2]), c(&[0, 2, 3])];
        assert_eq!(det_of_circuit_set(&b, &g).unwrap(), BigInt::zero());
        assert!(!is_f_cycle_basis(&b, &g, FieldSpec::Rationals).unwrap());
        assert!(!is_f_cycle_basis_by_rank(&b, &g, FieldSpec::Rationals).unwrap());
    }

    #[test]
    fn k4_squares_have_det_two() {
        // The three squares of K4: twice their sum vanishes mod 2 structure.
        let g = k(4);
        let squares: Vec<Circuit> = enumerate_circuits(&g, 4)
            .unwrap()
            .into_iter()
            .filter(|c| c.len() == 4)
            .collect();
        let d = det_of_circuit_set(&squares, &g).unwrap();
        assert_eq!(d, BigInt::from(2));
        assert!(is_f_cycle_basis(&squares, &g, FieldSpec::Rationals).unwrap());
        assert!(!is_f_cycle_basis(&squares, &g, FieldSpec::Prime(2)).unwrap());
        assert!(!is_f_cycle_basis_by_rank(&squares, &g, FieldSpec::Prime(2)).unwrap());
        let cls = classify_basis(&squares, &g).unwrap();
        assert!(!cls.integral && !cls.weakly_fundamental && !cls.strictly_fundamental);
        assert_eq!(cls.totally_unimodular, Some(false));
        assert!(!is_abelian_circuit_generator(&squares, &g, &AbelianGroupSpec::cyclic(2)).unwrap());
        assert!(is_abelian_circuit_generator(&squares, &g, &AbelianGroupSpec::cyclic(3)).unwrap());
        assert!(is_abelian_circuit_generator(&squares, &g, &AbelianGroupSpec::integers()).unwrap());
    }

    #[test]
    fn det_zero_over_z() {
        assert!(!abelian_generator_from_det(
            &BigInt::zero(),
            &AbelianGroupSpec::integers()
        ));
        assert!(abelian_generator_from_det(
            &BigInt::zero(),
            &AbelianGroupSpec::new(vec![])
        ));
        assert!(abelian_generator_from_det(
            &BigInt::from(1),
            &AbelianGroupSpec::new(vec![0, 6])
        ));
        assert!(!abelian_generator_from_det(
            &BigInt::from(4),
            &AbelianGroupSpec::new(vec![0, 6])
        ));
    }

    #[test]
    fn generators_trivial_cases() {
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        assert!(!is_combinatorial_generator(&[], &c5, 5).unwrap());
        let tree = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(is_combinatorial_generator(&[], &tree, 3).unwrap());
    }

    #[test]
    fn wrong_cardinality() {
        let g = k(4);
        assert_eq!(
            det_of_circuit_set(&[c(&[0, 1, 2])], &g),
            Err(Error::WrongCardinality {
                expected: 3,
                got: 1
            })
        );
    }

    #[test]
    fn combinations() {
        let mut c = vec![0, 1];
        let mut n = 1;
        while next_combination(&mut c, 4) {
            n += 1;
        }
        assert_eq!(n, 6);
    }
}
