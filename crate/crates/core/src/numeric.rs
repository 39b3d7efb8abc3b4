#![allow(clippy::needless_range_loop)]

//! Dense complex linear algebra used by the numeric checks: a general
//! eigensolver (Hessenberg reduction plus shifted QR), Gauss-Jordan
//! inverse, LU determinant and a tolerance-based rank.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::Mat;

type C = Complex64;

fn czero() -> C {
    C::new(0.0, 0.0)
}

/// Householder reduction to upper Hessenberg form (in place on a copy).
fn hessenberg(m: &Mat<C>) -> Vec<Vec<C>> {
    let n = m.rows();
    let mut h: Vec<Vec<C>> = (0..n)
        .map(|i| (0..n).map(|j| m[(i, j)]).collect())
        .collect();
    for k in 0..n.saturating_sub(2) {
        // reflector annihilating h[k+2.., k]
        let norm_x: f64 = (k + 1..n).map(|i| h[i][k].norm_sqr()).sum::<f64>().sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let x0 = h[k + 1][k];
        let phase = if x0.norm() == 0.0 {
            C::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * norm_x;
        let mut v: Vec<C> = (k + 1..n).map(|i| h[i][k]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm2;
        // left: H <- (I - beta v v^H) H on rows k+1..
        for j in k..n {
            let dot: C = (0..v.len()).map(|i| v[i].conj() * h[k + 1 + i][j]).sum();
            let f = beta * dot;
            for i in 0..v.len() {
                h[k + 1 + i][j] -= f * v[i];
            }
        }
        // right: H <- H (I - beta v v^H) on cols k+1..
        for r in 0..n {
            let dot: C = (0..v.len()).map(|i| h[r][k + 1 + i] * v[i]).sum();
            let f = beta * dot;
            for i in 0..v.len() {
                h[r][k + 1 + i] -= f * v[i].conj();
            }
        }
        for i in k + 2..n {
            h[i][k] = czero();
        }
    }
    h
}

/// Complex Givens rotation `[c s; -conj(s) c]` (c real) with
/// `G * [f; g] = [r; 0]`.
fn givens(f: C, g: C) -> (f64, C) {
    if g.norm() == 0.0 {
        return (1.0, czero());
    }
    if f.norm() == 0.0 {
        return (0.0, g.conj() / g.norm());
    }
    let denom = (f.norm_sqr() + g.norm_sqr()).sqrt();
    let c = f.norm() / denom;
    let s = (f / f.norm()) * g.conj() / denom;
    (c, s)
}

/// All eigenvalues of a square complex matrix via the shifted QR
/// algorithm on the Hessenberg form.
pub fn eigenvalues(m: &Mat<C>) -> Result<Vec<C>> {
    assert!(m.is_square(), "eigenvalues need a square matrix");
    let n = m.rows();
    if n == 0 {
        return Ok(vec![]);
    }
    let mut h = hessenberg(m);
    let mut eigs = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut stuck = 0usize;
    let mut total = 0usize;
    let budget = 60 * n + 200;
    let eps = 1e-14;

    loop {
        // deflate fully converged trailing 1x1 blocks
        loop {
            if hi == 0 {
                eigs.push(h[0][0]);
                eigs.reverse();
                return Ok(eigs);
            }
            let small = h[hi][hi - 1].norm()
                <= eps * (h[hi - 1][hi - 1].norm() + h[hi][hi].norm()).max(1e-300);
            if small {
                eigs.push(h[hi][hi]);
                hi -= 1;
                stuck = 0;
            } else {
                break;
            }
        }
        total += 1;
        if total > budget {
            return Err(Error::NonConvergence(format!(
                "QR iteration exceeded {} sweeps at block size {}",
                budget,
                hi + 1
            )));
        }
        // start of the active unreduced block
        let mut lo = hi;
        while lo > 0
            && h[lo][lo - 1].norm()
                > eps * (h[lo - 1][lo - 1].norm() + h[lo][lo].norm()).max(1e-300)
        {
            lo -= 1;
        }
        // Wilkinson shift from the trailing 2x2 of the active block
        stuck += 1;
        let mu = if stuck.is_multiple_of(12) {
            // exceptional shift to break symmetry-induced cycling
            h[hi][hi] + h[hi][hi - 1] * 0.75
        } else {
            let a = h[hi - 1][hi - 1];
            let b = h[hi - 1][hi];
            let c2 = h[hi][hi - 1];
            let d = h[hi][hi];
            let tr = a + d;
            let disc = (tr * tr - 4.0 * (a * d - b * c2)).sqrt();
            let r1 = (tr + disc) / 2.0;
            let r2 = (tr - disc) / 2.0;
            if (r1 - d).norm() < (r2 - d).norm() {
                r1
            } else {
                r2
            }
        };
        // QR sweep on [lo..=hi]
        for i in lo..=hi {
            h[i][i] -= mu;
        }
        let mut rots = Vec::with_capacity(hi - lo);
        for i in lo..hi {
            let (c, s) = givens(h[i][i], h[i + 1][i]);
            for j in i..=hi {
                let (x, y) = (h[i][j], h[i + 1][j]);
                h[i][j] = c * x + s * y;
                h[i + 1][j] = -s.conj() * x + c * y;
            }
            rots.push((c, s));
        }
        for (idx, &(c, s)) in rots.iter().enumerate() {
            let i = lo + idx;
            let top = (i + 2).min(hi + 1);
            for r in lo..top {
                let (x, y) = (h[r][i], h[r][i + 1]);
                h[r][i] = c * x + s.conj() * y;
                h[r][i + 1] = -s * x + c * y;
            }
        }
        for i in lo..=hi {
            h[i][i] += mu;
        }
    }
}

/// Inverse by Gauss-Jordan elimination with partial pivoting.
pub fn inverse(m: &Mat<C>) -> Result<Mat<C>> {
    assert!(m.is_square());
    let n = m.rows();
    let mut a: Vec<Vec<C>> = (0..n)
        .map(|i| {
            let mut row: Vec<C> = (0..n).map(|j| m[(i, j)]).collect();
            row.extend((0..n).map(|j| if i == j { C::new(1.0, 0.0) } else { czero() }));
            row
        })
        .collect();
    for col in 0..n {
        let (pivot, pnorm) = (col..n)
            .map(|r| (r, a[r][col].norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        if pnorm < 1e-300 {
            return Err(Error::DimensionMismatch(
                "singular matrix in inverse".into(),
            ));
        }
        a.swap(col, pivot);
        let p = a[col][col];
        for j in 0..2 * n {
            a[col][j] /= p;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = a[r][col];
            if f.norm() == 0.0 {
                continue;
            }
            for j in 0..2 * n {
                let x = a[col][j];
                a[r][j] -= f * x;
            }
        }
    }
    Ok(Mat::from_fn(n, n, |i, j| a[i][n + j]))
}

/// Determinant via LU with partial pivoting.
pub fn determinant(m: &Mat<C>) -> C {
    assert!(m.is_square());
    let n = m.rows();
    let mut a: Vec<Vec<C>> = (0..n)
        .map(|i| (0..n).map(|j| m[(i, j)]).collect())
        .collect();
    let mut det = C::new(1.0, 0.0);
    for col in 0..n {
        let (pivot, pnorm) = (col..n)
            .map(|r| (r, a[r][col].norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        if pnorm == 0.0 {
            return czero();
        }
        if pivot != col {
            a.swap(col, pivot);
            det = -det;
        }
        det *= a[col][col];
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            if f.norm() == 0.0 {
                continue;
            }
            for j in col..n {
                let x = a[col][j];
                a[r][j] -= f * x;
            }
        }
    }
    det
}

/// Numerical rank: number of nonzero pivots in row echelon form, with
/// pivots compared against `tol * max_norm`.
pub fn rank(m: &Mat<C>, tol: f64) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let scale = m.max_norm().max(1e-300);
    let mut a: Vec<Vec<C>> = (0..rows)
        .map(|i| (0..cols).map(|j| m[(i, j)]).collect())
        .collect();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let (pivot, pnorm) = (row..rows)
            .map(|r| (r, a[r][col].norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap_or((row, 0.0));
        if pnorm <= tol * scale {
            continue;
        }
        a.swap(row, pivot);
        for r in row + 1..rows {
            let f = a[r][col] / a[row][col];
            for j in col..cols {
                let x = a[row][j];
                a[r][j] -= f * x;
            }
        }
        rank += 1;
        row += 1;
        if row == rows {
            break;
        }
    }
    rank
}
