//! Path homology of the digraph that carries both arcs of every edge, its
//! low-degree Omega spaces, and the cycle-space quotients that compute H1.
//!
//! The allowed `m`-paths of the doubled digraph are the walks `i_0 ... i_m`
//! along edges; they are enumerated in lexicographic order. Faces of an
//! allowed path that repeat a vertex consecutively are dropped; faces that
//! are regular but not walks land in the "outside" coordinates, and `Omega_m`
//! is the kernel of the boundary's outside part.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{FieldSpec, IntMatrix, Matrix};
use crate::cycle_space::{circuit_to_vector, cycle_space_dimension};
use crate::graph::{enumerate_circuits, spanning_tree, triangles_and_squares, Circuit, Graph};
use crate::{Error, Result};

/// Highest degree for which boundary matrices and Omega spaces are built.
pub const MAX_DEGREE: usize = 3;

/// Allowed `m`-paths (walks with `m` steps), lexicographic.
pub fn allowed_paths(g: &Graph, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m + 1);
    for v in 0..g.vertex_count() {
        cur.push(v);
        extend_walks(g, m, &mut cur, &mut out);
        cur.pop();
    }
    out
}

fn extend_walks(g: &Graph, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == m + 1 {
        out.push(cur.clone());
        return;
    }
    let last = *cur.last().unwrap();
    for &w in g.neighbors(last) {
        cur.push(w);
        extend_walks(g, m, cur, out);
        cur.pop();
    }
}

fn is_walk(g: &Graph, p: &[usize]) -> bool {
    p.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

/// The boundary of allowed `m`-paths, split into allowed and outside faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Boundary {
    pub domain: Vec<Vec<usize>>,
    pub allowed_faces: Vec<Vec<usize>>,
    pub outside_faces: Vec<Vec<usize>>,
    /// Rows indexed by `allowed_faces`.
    pub allowed: Matrix,
    /// Rows indexed by `outside_faces`.
    pub outside: Matrix,
}

pub fn boundary(g: &Graph, m: usize, field: FieldSpec) -> Result<Boundary> {
    if m == 0 || m > MAX_DEGREE {
        return Err(Error::DegreeUnsupported(m));
    }
    let domain = allowed_paths(g, m);
    let allowed_faces = allowed_paths(g, m - 1);
    let allowed_index: BTreeMap<&[usize], usize> = allowed_faces
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_slice(), i))
        .collect();
    let mut outside_index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut entries: Vec<(bool, usize, usize, i64)> = Vec::new();
    for (j, p) in domain.iter().enumerate() {
        for k in 0..=m {
            if k > 0 && k < m && p[k - 1] == p[k + 1] {
                continue;
            }
            let mut face = p.clone();
            face.remove(k);
            let sign = if k % 2 == 0 { 1 } else { -1 };
            if let Some(&i) = allowed_index.get(face.as_slice()) {
                entries.push((true, i, j, sign));
            } else {
                debug_assert!(!is_walk(g, &face));
                let next = outside_index.len();
                let i = *outside_index.entry(face).or_insert(next);
                entries.push((false, i, j, sign));
            }
        }
    }
    let mut outside_faces = vec![Vec::new(); outside_index.len()];
    // Renumber outside faces lexicographically.
    let order: BTreeMap<usize, usize> = outside_index
        .values()
        .enumerate()
        .map(|(pos, &i)| (i, pos))
        .collect();
    for (pos, (face, _)) in outside_index.into_iter().enumerate() {
        outside_faces[pos] = face;
    }
    let mut allowed = Matrix::zeros(field, allowed_faces.len(), domain.len());
    let mut outside = Matrix::zeros(field, outside_faces.len(), domain.len());
    for (is_allowed, i, j, s) in entries {
        let target = if is_allowed {
            &mut allowed
        } else {
            &mut outside
        };
        let i = if is_allowed { i } else { order[&i] };
        let v = &target.get(i, j) + &field.from_i64(s);
        target.set(i, j, v);
    }
    Ok(Boundary {
        domain,
        allowed_faces,
        outside_faces,
        allowed,
        outside,
    })
}

/// Matrix of the boundary from allowed `m`-paths to allowed `(m-1)`-paths,
/// dropping faces that are not allowed. `m` in `1..=3`.
pub fn boundary_matrix(g: &Graph, m: usize, field: FieldSpec) -> Result<Matrix> {
    Ok(boundary(g, m, field)?.allowed)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaSpace {
    pub degree: usize,
    /// Allowed `degree`-paths indexing the rows of `basis`.
    pub paths: Vec<Vec<usize>>,
    /// Columns form a basis of `Omega_degree`.
    pub basis: Matrix,
}

impl OmegaSpace {
    pub fn dimension(&self) -> usize {
        self.basis.cols()
    }
}

pub fn omega_space(g: &Graph, m: usize, field: FieldSpec) -> Result<OmegaSpace> {
    match m {
        0 | 1 => {
            let paths = allowed_paths(g, m);
            let basis = Matrix::identity(field, paths.len());
            Ok(OmegaSpace {
                degree: m,
                paths,
                basis,
            })
        }
        2 | 3 => {
            let b = boundary(g, m, field)?;
            let basis = if b.outside_faces.is_empty() {
                Matrix::identity(field, b.domain.len())
            } else {
                b.outside.kernel()
            };
            Ok(OmegaSpace {
                degree: m,
                paths: b.domain,
                basis,
            })
        }
        _ => Err(Error::DegreeUnsupported(m)),
    }
}

/// Boundary restricted to `Omega_m`, as a matrix from Omega coordinates to
/// allowed `(m-1)`-paths.
pub fn restricted_boundary(g: &Graph, m: usize, field: FieldSpec) -> Result<Matrix> {
    let b = boundary(g, m, field)?;
    let omega = omega_space(g, m, field)?;
    b.allowed.mul(&omega.basis)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyReport {
    pub field: FieldSpec,
    pub h0: usize,
    pub h1: usize,
    pub ker_d1: usize,
    pub im_d2: usize,
    pub invariant_factors: Option<Vec<BigInt>>,
}

/// `dim H_0` and `dim H_1` from the Omega chain complex.
pub fn homology(g: &Graph, field: FieldSpec) -> Result<HomologyReport> {
    let d1 = boundary_matrix(g, 1, field)?;
    let rank_d1 = d1.rank();
    let ker_d1 = d1.cols() - rank_d1;
    let im_d2 = restricted_boundary(g, 2, field)?.rank();
    Ok(HomologyReport {
        field,
        h0: g.vertex_count() - rank_d1,
        h1: ker_d1 - im_d2,
        ker_d1,
        im_d2,
        invariant_factors: None,
    })
}

/// Which short circuits are divided out of the cycle space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuotientMode {
    /// Triangles and squares.
    Path,
    /// Triangles only.
    Clique,
}

fn quotient_circuits(g: &Graph, mode: QuotientMode) -> Vec<Circuit> {
    match mode {
        QuotientMode::Path => triangles_and_squares(g),
        QuotientMode::Clique => enumerate_circuits(g, 3).expect("max_len 3 is valid"),
    }
}

/// `dim C(G) - rank` of the span of triangle-and-square (or triangle) vectors.
pub fn h1_via_cycle_quotient(g: &Graph, field: FieldSpec, mode: QuotientMode) -> Result<usize> {
    if field.characteristic() == 2 {
        return Err(Error::CharacteristicTwo);
    }
    Ok(cycle_space_dimension(g) - span_rank(g, &quotient_circuits(g, mode), field)?)
}

/// Rank of the cycle vectors of `circuits` over `field`.
pub fn span_rank(g: &Graph, circuits: &[Circuit], field: FieldSpec) -> Result<usize> {
    let mut cols = Vec::with_capacity(circuits.len());
    for c in circuits {
        cols.push(circuit_to_vector(g, c, field)?.values().to_vec());
    }
    Ok(Matrix::from_columns(field, g.edge_count(), &cols)?.rank())
}

/// Invariant factors of `C(G, Z) / <triangles, squares>`: each torsion
/// factor `d > 1`, then one `0` per free summand.
///
/// Cycle vectors are written in the fundamental basis of the breadth-first
/// tree, where a vector's coordinates are its values on the non-tree edges.
pub fn h1_integer(g: &Graph) -> Result<Vec<BigInt>> {
    h1_integer_of(g, &triangles_and_squares(g))
}

/// As [`h1_integer`] for an arbitrary relator set.
pub fn h1_integer_of(g: &Graph, circuits: &[Circuit]) -> Result<Vec<BigInt>> {
    let tree = spanning_tree(g)?;
    let rows = tree.non_tree_edge_ids();
    let mut m = IntMatrix::zeros(rows.len(), circuits.len());
    for (j, c) in circuits.iter().enumerate() {
        c.check_in(g)?;
        for arc in c.arcs() {
            let (id, sign) = g.arc(arc.tail, arc.head).unwrap();
            if let Ok(i) = rows.binary_search(&id) {
                m.set(i, j, BigInt::from(sign));
            }
        }
    }
    Ok(cokernel_factors(&m))
}

/// Invariant factors of `Z^rows / column span`: torsion `d > 1` then zeros.
pub fn cokernel_factors(m: &IntMatrix) -> Vec<BigInt> {
    let snf = m.smith_normal_form();
    let mut out: Vec<BigInt> = snf
        .diagonal
        .iter()
        .filter(|d| **d > BigInt::one())
        .cloned()
        .collect();
    out.extend(core::iter::repeat_n(BigInt::zero(), m.rows() - snf.rank));
    out
}

/// Path homology report over `field` with integer invariant factors attached.
pub fn homology_with_integer(g: &Graph, field: FieldSpec) -> Result<HomologyReport> {
    let mut r = homology(g, field)?;
    r.invariant_factors = Some(h1_integer(g)?);
    Ok(r)
}

/// `dim H_1` of the clique (flag) complex from simplicial boundary matrices.
pub fn clique_homology(g: &Graph, field: FieldSpec) -> Result<usize> {
    let m = g.edge_count();
    let mut d1 = Matrix::zeros(field, g.vertex_count(), m);
    for (id, &(u, v)) in g.edges().iter().enumerate() {
        d1.set(v, id, field.one());
        d1.set(u, id, -&field.one());
    }
    let triangles = enumerate_circuits(g, 3)?;
    let mut d2 = Matrix::zeros(field, m, triangles.len());
    for (j, t) in triangles.iter().enumerate() {
        let mut s = t.vertices().to_vec();
        s.sort_unstable();
        let (a, b, c) = (s[0], s[1], s[2]);
        d2.set(g.edge_id(b, c).unwrap(), j, field.one());
        d2.set(g.edge_id(a, c).unwrap(), j, -&field.one());
        d2.set(g.edge_id(a, b).unwrap(), j, field.one());
    }
    Ok(m - d1.rank() - d2.rank())
}
