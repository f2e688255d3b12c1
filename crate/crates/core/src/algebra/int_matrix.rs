use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// Smith normal form `U * A * V = D`.
///
/// `diagonal` has `min(rows, cols)` entries, all non-negative, with
/// `d_1 | d_2 | ...` and zeros trailing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithNormalForm {
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    pub left: Option<IntMatrix>,
    pub right: Option<IntMatrix>,
}

impl SmithNormalForm {
    /// Invariant factors greater than one (the torsion part of the cokernel).
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal
            .iter()
            .filter(|d| *d > &BigInt::one())
            .cloned()
            .collect()
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        assert_eq!(data.len(), rows * cols, "data length must be rows * cols");
        IntMatrix {
            rows,
            cols,
            data: data.iter().map(|&v| BigInt::from(v)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[BigInt] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut m = self.data.clone();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[i * n + k].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                for j in 0..n {
                    m.swap(p * n + j, k * n + j);
                }
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j];
                    m[i * n + j] = t / &prev;
                }
            }
            prev = m[k * n + k].clone();
        }
        let det = if n == 0 {
            BigInt::one()
        } else {
            m[n * n - 1].clone()
        };
        Ok(if negate { -det } else { det })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.cols {
            let t = f * &self.data[src * self.cols + j];
            self.data[dst * self.cols + j] += t;
        }
    }

    /// col[dst] += f * col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        for i in 0..self.rows {
            let t = f * &self.data[i * self.cols + src];
            self.data[i * self.cols + dst] += t;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let k = r * self.cols + j;
            self.data[k] = -&self.data[k];
        }
    }

    pub fn smith_normal_form(&self) -> SmithNormalForm {
        self.snf(false)
    }

    /// Smith normal form together with unimodular `U`, `V` such that `U * self * V = D`.
    pub fn smith_normal_form_with_transforms(&self) -> SmithNormalForm {
        self.snf(true)
    }

    // Pivot is the smallest nonzero |entry| of the trailing block; a pivot
    // that does not divide the block gets a row added and is reduced again.
    fn snf(&self, track: bool) -> SmithNormalForm {
        let (rows, cols) = (self.rows, self.cols);
        let mut a = self.clone();
        let mut u = track.then(|| IntMatrix::identity(rows));
        let mut v = track.then(|| IntMatrix::identity(cols));
        let steps = rows.min(cols);
        let mut rank = 0;
        't: for t in 0..steps {
            loop {
                let mut best: Option<(usize, usize)> = None;
                for i in t..rows {
                    for j in t..cols {
                        let x = a.get(i, j);
                        if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a.get(bi, bj).abs())
                        {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((pi, pj)) = best else { break 't };
                a.swap_rows(t, pi);
                a.swap_cols(t, pj);
                if let Some(u) = u.as_mut() {
                    u.swap_rows(t, pi);
                }
                if let Some(v) = v.as_mut() {
                    v.swap_cols(t, pj);
                }
                let pivot = a.get(t, t).clone();
                let mut clean = true;
                for i in t + 1..rows {
                    let q = a.get(i, t).div_floor(&pivot);
                    if !q.is_zero() {
                        let nq = -q;
                        a.add_row(i, t, &nq);
                        if let Some(u) = u.as_mut() {
                            u.add_row(i, t, &nq);
                        }
                    }
                    clean &= a.get(i, t).is_zero();
                }
                for j in t + 1..cols {
                    let q = a.get(t, j).div_floor(&pivot);
                    if !q.is_zero() {
                        let nq = -q;
                        a.add_col(j, t, &nq);
                        if let Some(v) = v.as_mut() {
                            v.add_col(j, t, &nq);
                        }
                    }
                    clean &= a.get(t, j).is_zero();
                }
                if !clean {
                    continue;
                }
                let offender = (t + 1..rows)
                    .find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&pivot)));
                match offender {
                    Some(i) => {
                        let one = BigInt::one();
                        a.add_row(t, i, &one);
                        if let Some(u) = u.as_mut() {
                            u.add_row(t, i, &one);
                        }
                    }
                    None => break,
                }
            }
            if a.get(t, t).is_negative() {
                a.negate_row(t);
                if let Some(u) = u.as_mut() {
                    u.negate_row(t);
                }
            }
            rank += 1;
        }
        let diagonal = (0..steps).map(|i| a.get(i, i).clone()).collect();
        SmithNormalForm {
            diagonal,
            rank,
            left: u,
            right: v,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_examples() {
        assert_eq!(
            IntMatrix::from_i64(2, 2, &[2, 0, 0, 3])
                .smith_normal_form()
                .diagonal,
            d(&[1, 6])
        );
        let z = IntMatrix::zeros(2, 3).smith_normal_form();
        assert_eq!((z.diagonal, z.rank), (d(&[0, 0]), 0));
        assert_eq!(
            IntMatrix::identity(3).smith_normal_form().diagonal,
            d(&[1, 1, 1])
        );
        assert_eq!(
            IntMatrix::from_i64(1, 1, &[-4])
                .smith_normal_form()
                .diagonal,
            d(&[4])
        );
    }

    #[test]
    fn snf_transforms_reconstruct() {
        let m = IntMatrix::from_i64(3, 4, &[2, 4, 4, 6, -6, 6, 12, 0, 10, -4, -16, 8]);
        let s = m.smith_normal_form_with_transforms();
        let (u, v) = (s.left.clone().unwrap(), s.right.clone().unwrap());
        let prod = u.mul(&m).mul(&v);
        for i in 0..3 {
            for j in 0..4 {
                let expect = if i == j {
                    s.diagonal[i].clone()
                } else {
                    BigInt::zero()
                };
                assert_eq!(prod.get(i, j), &expect);
            }
        }
        assert!(u.det().unwrap().abs().is_one());
        assert!(v.det().unwrap().abs().is_one());
        assert!(s
            .diagonal
            .windows(2)
            .all(|w| w[0].is_zero() && w[1].is_zero()
                || (!w[0].is_zero() && w[1].is_multiple_of(&w[0]))));
    }

    #[test]
    fn bareiss_matches_known() {
        assert_eq!(
            IntMatrix::from_i64(3, 3, &[2, -3, 1, 2, 0, -1, 1, 4, 5])
                .det()
                .unwrap(),
            BigInt::from(49)
        );
        assert_eq!(
            IntMatrix::from_i64(2, 2, &[0, 1, 1, 0]).det().unwrap(),
            BigInt::from(-1)
        );
        assert!(IntMatrix::from_i64(2, 3, &[0; 6]).det().is_err());
    }
}
