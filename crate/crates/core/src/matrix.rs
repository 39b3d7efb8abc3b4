//! Minimal dense matrices over any [`Scalar`] backend.
//!
//! The braid matrices here are very sparse (identity plus a rank-one
//! block), so multiplication skips zero entries of both factors; for the
//! exact backends that turns the N^3 x N^3 braid-equation products into
//! a few thousand ring multiplications.

use num_complex::Complex64;

use crate::scalar::Scalar;

/// Dense row-major `rows x cols` matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    /// Zero matrix; `proto` supplies the ring context.
    pub fn zeros(rows: usize, cols: usize, proto: &T) -> Self {
        let z = proto.zero_like();
        Mat {
            rows,
            cols,
            data: vec![z; rows * cols],
        }
    }

    /// Identity; `proto` supplies the ring context.
    pub fn identity(n: usize, proto: &T) -> Self {
        let mut m = Self::zeros(n, n, proto);
        let one = proto.one_like();
        for i in 0..n {
            m[(i, i)] = one.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn proto(&self) -> &T {
        &self.data[0]
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols, self.proto());
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(i, j)] = out[(i, j)].add_ref(&a.mul_ref(b));
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].add_ref(&rhs[(i, j)])
        })
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].sub_ref(&rhs[(i, j)])
        })
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].neg_ref())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| c.mul_ref(&self[(i, j)]))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn trace(&self) -> T {
        assert!(self.is_square());
        let mut acc = self.proto().zero_like();
        for i in 0..self.rows {
            acc = acc.add_ref(&self[(i, i)]);
        }
        acc
    }

    /// Kronecker product: `(A (x) B)[(i*p+k, j*q+l)] = A[i,j] * B[k,l]`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (p, q) = (rhs.rows, rhs.cols);
        Mat::from_fn(self.rows * p, self.cols * q, |r, c| {
            let (i, k) = (r / p, r % p);
            let (j, l) = (c / q, c % q);
            let a = &self[(i, j)];
            if a.is_zero() {
                a.zero_like()
            } else {
                a.mul_ref(&rhs[(k, l)])
            }
        })
    }

    /// Partial trace over the second tensor factor: input is
    /// `(n1*n2) x (n1*n2)`, output `n1 x n1` with
    /// `out[i,j] = sum_k M[(i,k),(j,k)]`.
    pub fn partial_trace_second(&self, n1: usize, n2: usize) -> Self {
        assert_eq!(self.rows, n1 * n2);
        assert_eq!(self.cols, n1 * n2);
        Mat::from_fn(n1, n1, |i, j| {
            let mut acc = self.proto().zero_like();
            for k in 0..n2 {
                acc = acc.add_ref(&self[(i * n2 + k, j * n2 + k)]);
            }
            acc
        })
    }

    /// Extract the `nr x nc` block whose top-left corner is `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        Mat::from_fn(nr, nc, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }

    pub fn map<U: Scalar>(&self, mut f: impl FnMut(&T) -> U) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(&mut f).collect(),
        }
    }

    /// Fallible element-wise map (used to evaluate exact matrices).
    pub fn try_map<U: Scalar, E>(
        &self,
        mut f: impl FnMut(&T) -> Result<U, E>,
    ) -> Result<Mat<U>, E> {
        let mut data = Vec::with_capacity(self.data.len());
        for x in &self.data {
            data.push(f(x)?);
        }
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }
}

impl Mat<Complex64> {
    /// Largest entry magnitude (max norm).
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max |self - rhs|`.
    pub fn max_diff(&self, rhs: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.data
            .iter()
            .zip(rhs.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl<T> std::ops::Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}
