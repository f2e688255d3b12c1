//! Exact rational assembly of the Gamma and Gamma_2 quadratic forms at a vertex.
//!
//! With the unnormalized Laplacian `Lf(y) = sum_{z ~ y} (f(z) - f(y))`,
//! `Gamma(f)(y) = 1/2 sum_{z ~ y} (f(z) - f(y))^2` and
//! `Gamma_2(f)(x) = 1/2 L Gamma(f)(x) - Gamma(f, Lf)(x)`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::graph::Graph;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A quadratic form `f -> f_S^T M f_S` in the values of `f` on `support`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticFormAt {
    pub center: usize,
    /// Center first, then the unit sphere ascending, then (for Gamma_2) the
    /// sphere of radius 2 ascending.
    pub support: Vec<usize>,
    /// Row-major symmetric matrix indexed like `support`.
    pub matrix: Vec<BigRational>,
}

impl QuadraticFormAt {
    pub fn dim(&self) -> usize {
        self.support.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        &self.matrix[i * self.support.len() + j]
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..i).all(|j| self.entry(i, j) == self.entry(j, i)))
    }

    /// Value at `f`, given on every vertex of the graph.
    pub fn evaluate(&self, f: &[f64]) -> f64 {
        let x: Vec<f64> = self.support.iter().map(|&v| f[v]).collect();
        let n = x.len();
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += self.entry(i, j).to_f64().unwrap_or(f64::NAN) * x[i] * x[j];
            }
        }
        acc
    }

    /// Exact value at `f`, given on every vertex of the graph.
    pub fn evaluate_exact(&self, f: &[BigRational]) -> BigRational {
        let n = self.dim();
        let mut acc = BigRational::zero();
        for i in 0..n {
            for j in 0..n {
                let e = self.entry(i, j);
                if !e.is_zero() {
                    acc += e * &f[self.support[i]] * &f[self.support[j]];
                }
            }
        }
        acc
    }
}

/// Local coordinates on the closed ball of radius `radius` around `x`.
pub(crate) struct Ball {
    pub vertices: Vec<usize>,
    pub index: BTreeMap<usize, usize>,
    pub sphere1: usize,
}

impl Ball {
    pub fn new(g: &Graph, x: usize, radius: usize) -> Ball {
        let (s1, s2) = g.spheres(x);
        let mut vertices = vec![x];
        vertices.extend(&s1);
        if radius >= 2 {
            vertices.extend(&s2);
        }
        let index = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        Ball {
            vertices,
            index,
            sphere1: s1.len(),
        }
    }

    fn len(&self) -> usize {
        self.vertices.len()
    }
}

/// Adds `c * a b^T` (local indices) to `m`.
fn add_outer(
    m: &mut [BigRational],
    n: usize,
    c: &BigRational,
    a: &[(usize, i64)],
    b: &[(usize, i64)],
) {
    for &(i, ai) in a {
        for &(j, bj) in b {
            m[i * n + j] += c * BigRational::from_integer(BigInt::from(ai * bj));
        }
    }
}

/// `f(z) - f(y)` as a sparse linear form.
fn diff(ball: &Ball, y: usize, z: usize) -> [(usize, i64); 2] {
    [(ball.index[&z], 1), (ball.index[&y], -1)]
}

/// `Lf(y)` as a sparse linear form.
fn laplacian(g: &Graph, ball: &Ball, y: usize) -> Vec<(usize, i64)> {
    let mut out: Vec<(usize, i64)> = g.neighbors(y).iter().map(|z| (ball.index[z], 1)).collect();
    out.push((ball.index[&y], -(g.degree(y) as i64)));
    out
}

/// Adds `c * Gamma(f)(y)` to `m`.
fn add_gamma(g: &Graph, ball: &Ball, m: &mut [BigRational], c: &BigRational, y: usize) {
    let n = ball.len();
    let half = c * q(1, 2);
    for &z in g.neighbors(y) {
        let d = diff(ball, y, z);
        add_outer(m, n, &half, &d, &d);
    }
}

/// Matrix of `f -> Gamma(f)(x)` on the closed unit ball.
pub fn gamma_form(g: &Graph, x: usize) -> QuadraticFormAt {
    let ball = Ball::new(g, x, 1);
    let n = ball.len();
    let mut m = vec![BigRational::zero(); n * n];
    add_gamma(g, &ball, &mut m, &q(1, 1), x);
    QuadraticFormAt {
        center: x,
        support: ball.vertices,
        matrix: m,
    }
}

/// Matrix of `f -> Gamma_2(f)(x)` on the closed ball of radius 2.
pub fn gamma2_form(g: &Graph, x: usize) -> QuadraticFormAt {
    let ball = Ball::new(g, x, 2);
    let n = ball.len();
    let mut m = vec![BigRational::zero(); n * n];
    // 1/2 L Gamma(f)(x) = 1/2 sum_{y ~ x} (Gamma(f)(y) - Gamma(f)(x))
    let half = q(1, 2);
    for &y in g.neighbors(x) {
        add_gamma(g, &ball, &mut m, &half, y);
    }
    add_gamma(
        g,
        &ball,
        &mut m,
        &(-&half * BigRational::from_integer(BigInt::from(g.degree(x)))),
        x,
    );
    // - Gamma(f, Lf)(x) = -1/2 sum_{y ~ x} (f(y) - f(x)) (Lf(y) - Lf(x)), symmetrized
    let lx = laplacian(g, &ball, x);
    let quarter = q(-1, 4);
    for &y in g.neighbors(x) {
        let d = diff(&ball, x, y);
        let mut dl = laplacian(g, &ball, y);
        dl.extend(lx.iter().map(|&(i, c)| (i, -c)));
        add_outer(&mut m, n, &quarter, &d, &dl);
        add_outer(&mut m, n, &quarter, &dl, &d);
    }
    QuadraticFormAt {
        center: x,
        support: ball.vertices,
        matrix: m,
    }
}

/// Number of unit-sphere vertices in the support of [`gamma2_form`].
pub(crate) fn sphere1_len(g: &Graph, x: usize) -> usize {
    Ball::new(g, x, 1).sphere1
}

/// Direct evaluation of `Gamma_2(f)(x)` from its defining expression, used
/// as an independent check of [`gamma2_form`].
pub fn gamma2_pointwise(g: &Graph, f: &[BigRational], x: usize) -> BigRational {
    let lap = |h: &dyn Fn(usize) -> BigRational, y: usize| -> BigRational {
        g.neighbors(y)
            .iter()
            .fold(BigRational::zero(), |acc, &z| acc + h(z) - h(y))
    };
    let gamma_fg = |a: &dyn Fn(usize) -> BigRational,
                    b: &dyn Fn(usize) -> BigRational,
                    y: usize|
     -> BigRational {
        g.neighbors(y).iter().fold(BigRational::zero(), |acc, &z| {
            acc + (a(z) - a(y)) * (b(z) - b(y))
        }) * q(1, 2)
    };
    let fv = |v: usize| f[v].clone();
    let lf: Vec<BigRational> = (0..g.vertex_count()).map(|v| lap(&fv, v)).collect();
    let lfv = |v: usize| lf[v].clone();
    let gamma_f: Vec<BigRational> = (0..g.vertex_count())
        .map(|v| gamma_fg(&fv, &fv, v))
        .collect();
    let gv = |v: usize| gamma_f[v].clone();
    lap(&gv, x) * q(1, 2) - gamma_fg(&fv, &lfv, x)
}

/// Direct evaluation of `Gamma(f)(x)`.
pub fn gamma_pointwise(g: &Graph, f: &[BigRational], x: usize) -> BigRational {
    g.neighbors(x).iter().fold(BigRational::zero(), |acc, &z| {
        let d = &f[z] - &f[x];
        acc + &d * &d
    }) * q(1, 2)
}
