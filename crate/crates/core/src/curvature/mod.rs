//! Bakry-Emery curvature of the unnormalized graph Laplacian.
//!
//! `K(x)` is the largest `K` with `Gamma_2(f)(x) >= K Gamma(f)(x)` for every
//! `f`. Both forms ignore constants, so `f(x)` is pinned to zero and the
//! unknowns are `g` on the unit sphere and `h` on the sphere of radius 2. The
//! `h`-block of `Gamma_2` is diagonal with entries `d_-(z) / 4 > 0`, where
//! `d_-(z)` counts the neighbours of `z` on the unit sphere, so `h` is
//! eliminated exactly by a Schur complement `S`. Since `Gamma(f)(x) = |g|^2 / 2`,
//! `K(x) = 2 lambda_min(S)`.

mod eigen;
mod forms;

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

pub use eigen::{symmetric_eigen, SymmetricEigen};
pub use forms::{gamma2_form, gamma2_pointwise, gamma_form, gamma_pointwise, QuadraticFormAt};

use crate::graph::Graph;
use crate::{Error, Result};

/// Tolerance used by [`satisfies_cd`].
pub const CD_TOLERANCE: f64 = 1e-9;

/// The reduced form `S` at `x` and the map from unit-sphere values to the
/// minimizing values on the sphere of radius 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedForm {
    pub center: usize,
    pub sphere1: Vec<usize>,
    pub sphere2: Vec<usize>,
    /// `S`, row-major over `sphere1`.
    pub schur: Vec<BigRational>,
    /// `-C^-1 B^T`, row-major `|sphere2| x |sphere1|`.
    pub extension: Vec<BigRational>,
}

/// Exact Schur reduction of `Gamma_2` at `x`.
pub fn reduced_form(g: &Graph, x: usize) -> Result<ReducedForm> {
    if x >= g.vertex_count() {
        return Err(Error::VertexOutOfRange(x));
    }
    if g.degree(x) == 0 {
        return Err(Error::IsolatedVertex(x));
    }
    let form = gamma2_form(g, x);
    let n1 = forms::sphere1_len(g, x);
    let n2 = form.dim() - 1 - n1;
    let at = |i: usize, j: usize| form.entry(1 + i, 1 + j).clone();
    let mut c_inv = Vec::with_capacity(n2);
    for k in 0..n2 {
        let d = at(n1 + k, n1 + k);
        assert!(
            d > BigRational::zero(),
            "outer block of Gamma_2 is positive diagonal"
        );
        debug_assert!((0..n2).all(|l| l == k || at(n1 + k, n1 + l).is_zero()));
        c_inv.push(d.recip());
    }
    let mut extension = vec![BigRational::zero(); n2 * n1];
    for k in 0..n2 {
        for i in 0..n1 {
            extension[k * n1 + i] = -(&c_inv[k] * at(i, n1 + k));
        }
    }
    let mut schur = vec![BigRational::zero(); n1 * n1];
    for i in 0..n1 {
        for j in 0..n1 {
            let mut s = at(i, j);
            for k in 0..n2 {
                let b = at(i, n1 + k);
                if !b.is_zero() {
                    s -= &b * &c_inv[k] * at(j, n1 + k);
                }
            }
            schur[i * n1 + j] = s;
        }
    }
    let sphere1 = form.support[1..1 + n1].to_vec();
    let sphere2 = form.support[1 + n1..].to_vec();
    Ok(ReducedForm {
        center: x,
        sphere1,
        sphere2,
        schur,
        extension,
    })
}

/// Minimizer and value of the curvature quotient at one vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureCertificate {
    pub center: usize,
    pub curvature: f64,
    /// A minimizing function on all vertices, zero outside the 2-ball.
    pub f: Vec<f64>,
    pub gamma: f64,
    pub gamma2: f64,
}

fn solve(g: &Graph, x: usize, dimension: Option<f64>) -> Result<(ReducedForm, SymmetricEigen)> {
    let red = reduced_form(g, x)?;
    let n1 = red.sphere1.len();
    let mut s: Vec<f64> = red
        .schur
        .iter()
        .map(|v| v.to_f64().unwrap_or(f64::NAN))
        .collect();
    if let Some(n) = dimension {
        // (Lf(x))^2 = (sum_i g_i)^2
        for v in s.iter_mut() {
            *v -= 1.0 / n;
        }
    }
    // symmetrize against rounding
    for i in 0..n1 {
        for j in 0..i {
            let avg = 0.5 * (s[i * n1 + j] + s[j * n1 + i]);
            s[i * n1 + j] = avg;
            s[j * n1 + i] = avg;
        }
    }
    Ok((red, symmetric_eigen(n1, &s)))
}

/// `K(x)` for `CD(K, infinity)`.
pub fn curvature_at(g: &Graph, x: usize) -> Result<f64> {
    curvature_at_dimension(g, x, None)
}

/// `K(x)` for `CD(K, n)`; `None` means `n = infinity`.
pub fn curvature_at_dimension(g: &Graph, x: usize, dimension: Option<f64>) -> Result<f64> {
    let (_, eig) = solve(g, x, dimension)?;
    Ok(2.0 * eig.values[0])
}

/// Curvature at `x` with a minimizing function (the Rayleigh certificate).
pub fn certificate(g: &Graph, x: usize) -> Result<CurvatureCertificate> {
    let (red, eig) = solve(g, x, None)?;
    let gvec = eig.vector(0);
    let n1 = red.sphere1.len();
    let mut f = vec![0.0; g.vertex_count()];
    for (i, &v) in red.sphere1.iter().enumerate() {
        f[v] = gvec[i];
    }
    for (k, &v) in red.sphere2.iter().enumerate() {
        f[v] = (0..n1)
            .map(|i| red.extension[k * n1 + i].to_f64().unwrap_or(f64::NAN) * gvec[i])
            .sum();
    }
    let gamma = gamma_form(g, x).evaluate(&f);
    let gamma2 = gamma2_form(g, x).evaluate(&f);
    Ok(CurvatureCertificate {
        center: x,
        curvature: 2.0 * eig.values[0],
        f,
        gamma,
        gamma2,
    })
}

/// `(Gamma(f)(x), Gamma_2(f)(x))` in floating point.
pub fn forms_at(g: &Graph, x: usize, f: &[f64]) -> (f64, f64) {
    (gamma_form(g, x).evaluate(f), gamma2_form(g, x).evaluate(f))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureReport {
    /// `None` for isolated vertices.
    pub per_vertex: Vec<Option<f64>>,
    pub min: Option<f64>,
    pub argmin: Option<usize>,
    pub degrees: Vec<usize>,
    pub max_degree: usize,
    /// `None` for disconnected graphs.
    pub diameter: Option<usize>,
    /// `2 Deg_max / K` when `K = min > 0`.
    pub diameter_bound: Option<f64>,
}

/// Assembles a report from per-vertex values computed elsewhere (possibly in parallel).
pub fn report_from_values(g: &Graph, per_vertex: Vec<Option<f64>>) -> CurvatureReport {
    let mut min: Option<f64> = None;
    let mut argmin = None;
    for (v, k) in per_vertex.iter().enumerate() {
        if let Some(k) = *k {
            if min.is_none_or(|m| k < m) {
                min = Some(k);
                argmin = Some(v);
            }
        }
    }
    let max_degree = g.max_degree();
    let diameter = g.diameter().ok();
    let diameter_bound = min
        .filter(|&k| k > 0.0)
        .map(|k| 2.0 * max_degree as f64 / k);
    CurvatureReport {
        per_vertex,
        min,
        argmin,
        degrees: (0..g.vertex_count()).map(|v| g.degree(v)).collect(),
        max_degree,
        diameter,
        diameter_bound,
    }
}

pub fn curvature_report(g: &Graph) -> Result<CurvatureReport> {
    let mut values = Vec::with_capacity(g.vertex_count());
    for x in 0..g.vertex_count() {
        values.push(match curvature_at(g, x) {
            Ok(k) => Some(k),
            Err(Error::IsolatedVertex(_)) => None,
            Err(e) => return Err(e),
        });
    }
    Ok(report_from_values(g, values))
}

/// `min_x K(x) >= k - 1e-9`. Isolated vertices impose no condition.
pub fn satisfies_cd(g: &Graph, k: f64) -> Result<bool> {
    satisfies_cd_with_tolerance(g, k, CD_TOLERANCE)
}

pub fn satisfies_cd_with_tolerance(g: &Graph, k: f64, tol: f64) -> Result<bool> {
    let r = curvature_report(g)?;
    Ok(r.min.is_none_or(|m| m >= k - tol))
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiameterBoundReport {
    pub diameter: usize,
    pub max_degree: usize,
    pub min_curvature: f64,
    /// `2 Deg_max / K` when `K > 0`; `None` means the bound does not apply.
    pub bound: Option<f64>,
    pub holds: Option<bool>,
    /// `bound - diameter`.
    pub slack: Option<f64>,
}

pub fn diameter_bound_check(g: &Graph) -> Result<DiameterBoundReport> {
    diameter_bound_from_report(g, &curvature_report(g)?)
}

pub fn diameter_bound_from_report(g: &Graph, r: &CurvatureReport) -> Result<DiameterBoundReport> {
    let diameter = g.diameter()?;
    let min_curvature = r.min.ok_or(Error::IsolatedVertex(0))?;
    let bound = r.diameter_bound;
    // A tiny relative allowance keeps equality cases such as K2 (1 <= 1) exact.
    let holds = bound.map(|b| diameter as f64 <= b * (1.0 + 1e-12));
    Ok(DiameterBoundReport {
        diameter,
        max_degree: r.max_degree,
        min_curvature,
        bound,
        holds,
        slack: bound.map(|b| b - diameter as f64),
    })
}

/// Exact `Gamma_2(f)(x) - k Gamma(f)(x)` at a rational `f`.
pub fn defect_exact(g: &Graph, x: usize, f: &[BigRational], k: &BigRational) -> BigRational {
    gamma2_form(g, x).evaluate_exact(f) - k * gamma_form(g, x).evaluate_exact(f)
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> Graph {
        let mut e = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                e.push((i, j));
            }
        }
        Graph::from_edges(n, &e).unwrap()
    }

    fn cube(d: usize) -> Graph {
        let n = 1 << d;
        let mut e = Vec::new();
        for v in 0..n {
            for b in 0..d {
                let w = v ^ (1 << b);
                if v < w {
                    e.push((v, w));
                }
            }
        }
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn k2_is_two() {
        let g = k(2);
        assert!((curvature_at(&g, 0).unwrap() - 2.0).abs() < 1e-12);
        // one-dimensional Rayleigh check on a grid: f = (0, t), Gamma = t^2/2
        for t in [-2.0, -0.5, 0.25, 1.0, 3.0] {
            let (ga, g2) = forms_at(&g, 0, &[0.0, t]);
            assert!((g2 / ga - 2.0).abs() < 1e-12);
        }
        let d = diameter_bound_check(&g).unwrap();
        assert_eq!(d.diameter, 1);
        assert!((d.bound.unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(d.holds, Some(true));
    }

    #[test]
    fn complete_graphs() {
        for n in 3..7 {
            let g = k(n);
            for x in 0..n {
                let kx = curvature_at(&g, x).unwrap();
                assert!(
                    (kx - (1.0 + n as f64 / 2.0)).abs() < 1e-9,
                    "K{n} at {x}: {kx}"
                );
            }
        }
    }

    #[test]
    fn hypercubes_are_two() {
        for d in 2..5 {
            let g = cube(d);
            let r = curvature_report(&g).unwrap();
            assert!((r.min.unwrap() - 2.0).abs() < 1e-9);
        }
    }

    #[test]
    fn cycles_are_flat_or_negative() {
        let c6 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]).unwrap();
        assert!(curvature_at(&c6, 0).unwrap().abs() < 1e-9);
        assert!(!satisfies_cd(&c6, 0.1).unwrap());
        assert!(satisfies_cd(&c6, -0.1).unwrap());
    }

    #[test]
    fn certificate_attains_minimum() {
        let g = Graph::from_edges(
            6,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (0, 5),
                (0, 3),
                (1, 4),
            ],
        )
        .unwrap();
        for x in 0..6 {
            let c = certificate(&g, x).unwrap();
            assert!((c.gamma - 0.5).abs() < 1e-12);
            assert!((c.gamma2 / c.gamma - c.curvature).abs() < 1e-9);
        }
    }

    #[test]
    fn isolated_vertex() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(curvature_at(&g, 2), Err(Error::IsolatedVertex(2)));
        let r = curvature_report(&g).unwrap();
        assert_eq!(r.per_vertex[2], None);
        assert_eq!(r.diameter, None);
    }

    #[test]
    fn dimension_term_lowers_curvature() {
        let g = k(4);
        let inf = curvature_at(&g, 0).unwrap();
        let fin = curvature_at_dimension(&g, 0, Some(2.0)).unwrap();
        assert!(fin < inf);
    }
}
