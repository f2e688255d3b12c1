use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scalar::{mod_inv, reduce_bigint, FieldSpec, Scalar};
use super::IntMatrix;
use crate::{Error, Result};

/// Element arithmetic used by the elimination kernels.
trait Arith {
    type T: Clone + PartialEq;
    fn zero(&self) -> Self::T;
    fn one(&self) -> Self::T;
    fn add(&self, a: &Self::T, b: &Self::T) -> Self::T;
    fn sub(&self, a: &Self::T, b: &Self::T) -> Self::T;
    fn mul(&self, a: &Self::T, b: &Self::T) -> Self::T;
    fn inv(&self, a: &Self::T) -> Self::T;
    fn is_zero(&self, a: &Self::T) -> bool;
}

struct QArith;
struct PArith(u64);

impl Arith for QArith {
    type T = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}

impl Arith for PArith {
    type T = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.0 as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.0 as u128 - *b as u128) % self.0 as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.0 as u128) as u64
    }
    fn inv(&self, a: &u64) -> u64 {
        mod_inv(*a, self.0)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Entries {
    Q(Vec<BigRational>),
    P(u64, Vec<u64>),
}

/// Dense row-major matrix over a single [`FieldSpec`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Entries,
}

/// Output of [`Matrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

fn rref_in_place<A: Arith>(a: &A, rows: usize, cols: usize, m: &mut [A::T]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a.is_zero(&m[i * cols + c])) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = a.inv(&m[r * cols + c]);
        for j in c..cols {
            m[r * cols + j] = a.mul(&m[r * cols + j], &inv);
        }
        for i in 0..rows {
            if i == r || a.is_zero(&m[i * cols + c]) {
                continue;
            }
            let f = m[i * cols + c].clone();
            for j in c..cols {
                let t = a.mul(&f, &m[r * cols + j]);
                m[i * cols + j] = a.sub(&m[i * cols + j], &t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Fraction-free Bareiss elimination; exact over any field.
fn bareiss_det<A: Arith>(a: &A, n: usize, m: &mut [A::T]) -> A::T {
    let mut sign_flip = false;
    let mut prev = a.one();
    for k in 0..n {
        if a.is_zero(&m[k * n + k]) {
            let Some(p) = (k + 1..n).find(|&i| !a.is_zero(&m[i * n + k])) else {
                return a.zero();
            };
            for j in 0..n {
                m.swap(p * n + j, k * n + j);
            }
            sign_flip = !sign_flip;
        }
        let prev_inv = a.inv(&prev);
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a.sub(
                    &a.mul(&m[i * n + j], &m[k * n + k]),
                    &a.mul(&m[i * n + k], &m[k * n + j]),
                );
                m[i * n + j] = a.mul(&t, &prev_inv);
            }
        }
        prev = m[k * n + k].clone();
    }
    let det = if n == 0 {
        a.one()
    } else {
        m[n * n - 1].clone()
    };
    if sign_flip {
        a.sub(&a.zero(), &det)
    } else {
        det
    }
}

macro_rules! with_arith {
    ($entries:expr, |$a:ident, $data:ident| $body:expr) => {
        match $entries {
            Entries::Q($data) => {
                let $a = QArith;
                $body
            }
            Entries::P(p, $data) => {
                let $a = PArith(*p);
                $body
            }
        }
    };
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        let entries = match field {
            FieldSpec::Rationals => Entries::Q(vec![BigRational::zero(); rows * cols]),
            FieldSpec::Prime(p) => Entries::P(p, vec![0; rows * cols]),
        };
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Row-major integer data mapped into `field`.
    pub fn from_i64(field: FieldSpec, rows: usize, cols: usize, data: &[i64]) -> Self {
        assert_eq!(data.len(), rows * cols, "data length must be rows * cols");
        let entries = match field {
            FieldSpec::Rationals => Entries::Q(
                data.iter()
                    .map(|&v| BigRational::from_integer(v.into()))
                    .collect(),
            ),
            FieldSpec::Prime(p) => Entries::P(
                p,
                data.iter()
                    .map(|&v| reduce_bigint(&BigInt::from(v), p))
                    .collect(),
            ),
        };
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_int_matrix(field: FieldSpec, m: &IntMatrix) -> Self {
        let entries = match field {
            FieldSpec::Rationals => Entries::Q(
                m.data()
                    .iter()
                    .map(|v| BigRational::from_integer(v.clone()))
                    .collect(),
            ),
            FieldSpec::Prime(p) => {
                Entries::P(p, m.data().iter().map(|v| reduce_bigint(v, p)).collect())
            }
        };
        Matrix {
            rows: m.rows(),
            cols: m.cols(),
            entries,
        }
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column {j} has length {}, expected {rows}",
                    col.len()
                )));
            }
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> FieldSpec {
        match &self.entries {
            Entries::Q(_) => FieldSpec::Rationals,
            Entries::P(p, _) => FieldSpec::Prime(*p),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        assert!(i < self.rows && j < self.cols);
        let k = i * self.cols + j;
        match &self.entries {
            Entries::Q(d) => Scalar::Rational(d[k].clone()),
            Entries::P(p, d) => Scalar::Residue {
                value: d[k],
                modulus: *p,
            },
        }
    }

    /// Panics if `v` belongs to a different field.
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert!(i < self.rows && j < self.cols);
        let k = i * self.cols + j;
        match (&mut self.entries, v) {
            (Entries::Q(d), Scalar::Rational(q)) => d[k] = q,
            (Entries::P(p, d), Scalar::Residue { value, modulus }) if *p == modulus => d[k] = value,
            (_, v) => panic!(
                "scalar from {:?} stored in a matrix over {:?}",
                v.field(),
                self.field()
            ),
        }
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        with_arith!(&self.entries, |a, d| d.iter().all(|x| a.is_zero(x)))
    }

    pub fn transpose(&self) -> Matrix {
        let (r, c) = (self.rows, self.cols);
        let entries = match &self.entries {
            Entries::Q(d) => {
                Entries::Q((0..r * c).map(|k| d[(k % r) * c + k / r].clone()).collect())
            }
            Entries::P(p, d) => {
                Entries::P(*p, (0..r * c).map(|k| d[(k % r) * c + k / r]).collect())
            }
        };
        Matrix {
            rows: c,
            cols: r,
            entries,
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.rows, cols.len());
        for (jj, &j) in cols.iter().enumerate() {
            for i in 0..self.rows {
                m.set(i, jj, self.get(i, j));
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field(), rows.len(), self.cols);
        for (ii, &i) in rows.iter().enumerate() {
            for j in 0..self.cols {
                m.set(ii, j, self.get(i, j));
            }
        }
        m
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows || self.field() != rhs.field() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} over {} times {}x{} over {}",
                self.rows,
                self.cols,
                self.field(),
                rhs.rows,
                rhs.cols,
                rhs.field()
            )));
        }
        let (n, k, m) = (self.rows, self.cols, rhs.cols);
        let entries = match (&self.entries, &rhs.entries) {
            (Entries::Q(x), Entries::Q(y)) => Entries::Q(matmul(&QArith, n, k, m, x, y)),
            (Entries::P(p, x), Entries::P(_, y)) => {
                Entries::P(*p, matmul(&PArith(*p), n, k, m, x, y))
            }
            _ => unreachable!(),
        };
        Ok(Matrix {
            rows: n,
            cols: m,
            entries,
        })
    }

    /// Reduced row echelon form, exact.
    pub fn rref(&self) -> Rref {
        let mut out = self.clone();
        let (rows, cols) = (self.rows, self.cols);
        let pivots = with_arith!(&mut out.entries, |a, d| rref_in_place(&a, rows, cols, d));
        let rank = pivots.len();
        Rref {
            matrix: out,
            pivots,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn det(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut work = self.entries.clone();
        Ok(match &mut work {
            Entries::Q(d) => Scalar::Rational(bareiss_det(&QArith, n, d)),
            Entries::P(p, d) => Scalar::Residue {
                value: bareiss_det(&PArith(*p), n, d),
                modulus: *p,
            },
        })
    }

    /// Basis of the right null space, as the columns of the result.
    pub fn kernel(&self) -> Matrix {
        let Rref { matrix, pivots, .. } = self.rref();
        let field = self.field();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(field, self.cols, free.len());
        for (jj, &f) in free.iter().enumerate() {
            k.set(f, jj, field.one());
            for (r, &pc) in pivots.iter().enumerate() {
                k.set(pc, jj, -&matrix.get(r, f));
            }
        }
        k
    }

    /// Coordinates `x` with `self * x = target`, or `None` if `target` is not
    /// in the column span. Free variables are set to zero.
    pub fn solve_in_span(&self, target: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if target.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "target has length {}, expected {}",
                target.len(),
                self.rows
            )));
        }
        let field = self.field();
        let mut aug = Matrix::zeros(field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, target[i].clone());
        }
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![field.zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = matrix.get(r, self.cols);
        }
        Ok(Some(x))
    }
}

fn matmul<A: Arith>(a: &A, n: usize, k: usize, m: usize, x: &[A::T], y: &[A::T]) -> Vec<A::T> {
    let mut out = vec![a.zero(); n * m];
    for i in 0..n {
        for l in 0..k {
            let xv = &x[i * k + l];
            if a.is_zero(xv) {
                continue;
            }
            for j in 0..m {
                let t = a.mul(xv, &y[l * m + j]);
                out[i * m + j] = a.add(&out[i * m + j], &t);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn cofactor_det(n: usize, m: &[i64]) -> i64 {
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor: Vec<i64> = (1..n)
                    .flat_map(|i| (0..n).filter(move |&c| c != j).map(move |c| (i, c)))
                    .map(|(i, c)| m[i * n + c])
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[j] * cofactor_det(n - 1, &minor)
            })
            .sum()
    }

    #[test]
    fn rref_examples() {
        let id = Matrix::identity(Q, 3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);
        assert_eq!(Matrix::from_i64(Q, 2, 2, &[1, 2, 2, 4]).rank(), 1);
        assert_eq!(
            Matrix::from_i64(FieldSpec::Prime(2), 2, 2, &[1, 1, 1, 1]).rank(),
            1
        );
        assert_eq!(
            Matrix::from_i64(FieldSpec::Prime(2), 2, 2, &[1, 1, 1, -1]).rank(),
            1
        );
        assert_eq!(Matrix::from_i64(Q, 2, 2, &[1, 1, 1, -1]).rank(), 2);
    }

    #[test]
    fn det_examples() {
        assert_eq!(
            Matrix::from_i64(Q, 2, 2, &[2, 0, 0, 3]).det().unwrap(),
            Q.from_i64(6)
        );
        assert!(Matrix::from_i64(Q, 2, 2, &[1, 2, 2, 4])
            .det()
            .unwrap()
            .is_zero());
        let inc = [1, -1, 0, 0, 1, 1, 1, 0, -1];
        assert_eq!(
            Matrix::from_i64(Q, 3, 3, &inc).det().unwrap(),
            Q.from_i64(cofactor_det(3, &inc))
        );
        assert_eq!(
            Matrix::from_i64(Q, 2, 3, &[0; 6]).det(),
            Err(Error::NonSquare { rows: 2, cols: 3 })
        );
        assert_eq!(
            Matrix::from_i64(FieldSpec::Prime(5), 2, 2, &[2, 0, 0, 3])
                .det()
                .unwrap(),
            FieldSpec::Prime(5).one()
        );
    }

    #[test]
    fn det_needs_row_swap() {
        let m = [0, 1, 0, 1, 0, 0, 0, 0, 1];
        assert_eq!(Matrix::from_i64(Q, 3, 3, &m).det().unwrap(), Q.from_i64(-1));
    }

    #[test]
    fn kernel_and_solve() {
        let m = Matrix::from_i64(Q, 2, 3, &[1, 1, 0, 0, 1, 1]);
        let k = m.kernel();
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).unwrap().is_zero());

        let basis = Matrix::from_i64(Q, 3, 2, &[1, 0, 0, 1, 0, 0]);
        let e3 = [Q.zero(), Q.zero(), Q.one()];
        assert_eq!(basis.solve_in_span(&e3).unwrap(), None);
        let two_e1 = [Q.from_i64(2), Q.zero(), Q.zero()];
        assert_eq!(
            basis.solve_in_span(&two_e1).unwrap(),
            Some(vec![Q.from_i64(2), Q.zero()])
        );
    }

    #[test]
    fn transpose_roundtrip() {
        let m = Matrix::from_i64(FieldSpec::Prime(7), 2, 3, &[1, 2, 3, 4, 5, 6]);
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(m.transpose().get(2, 1), FieldSpec::Prime(7).from_i64(6));
    }

    #[test]
    fn cofactor_oracle_sanity() {
        assert_eq!(cofactor_det(2, &[1, 2, 3, 4]), -2);
    }
}
