//! L-operator representations and their algebra: the fundamental
//! `L^{+-} = R^{+-1} P` blocks, RLL constraints, the quadratic sets
//! `S1`/`S2` (annihilated) and `S3` (2N central group-like elements
//! constrained to equality), coproducts, the block conjugation analysis
//! of the 9x9 coproduct generators, the `A + lambda B` decomposition and
//! the spectral-parameter operator `L(theta)`.

use num_complex::Complex64;

use crate::algebra::AlgebraSpec;
use crate::braid::{baxterized, braid_matrix, braid_matrix_at, permutation_p};
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::{LambdaExt, LaurentPoly, Scalar};

type C = Complex64;

/// Which member of the operator family the blocks realize.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Variant {
    Plus,
    Minus,
    Spectral(f64),
}

/// An L-operator: an `N x N` grid of `d x d` blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct LOperator<S> {
    n: usize,
    d: usize,
    blocks: Vec<Mat<S>>,
    variant: Variant,
}

impl<S: Scalar> LOperator<S> {
    pub fn aux_dim(&self) -> usize {
        self.n
    }

    pub fn block_dim(&self) -> usize {
        self.d
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Block `L_{ij}`, 1-indexed.
    pub fn block(&self, i: usize, j: usize) -> &Mat<S> {
        &self.blocks[(i - 1) * self.n + (j - 1)]
    }

    /// Assemble the full `(N d) x (N d)` matrix with block `(i,j)` at
    /// rows `(i-1)d..`, columns `(j-1)d..`.
    pub fn to_big(&self) -> Mat<S> {
        let (n, d) = (self.n, self.d);
        let mut out = Mat::zeros(n * d, n * d, self.blocks[0].proto());
        for i in 0..n {
            for j in 0..n {
                out.set_block(i * d, j * d, &self.blocks[i * n + j]);
            }
        }
        out
    }

    /// Slice a full matrix into an operator.
    pub fn from_big(m: &Mat<S>, n: usize, variant: Variant) -> Self {
        let d = m.rows() / n;
        assert_eq!(m.rows(), n * d);
        let mut blocks = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                blocks.push(m.block(i * d, j * d, d, d));
            }
        }
        LOperator {
            n,
            d,
            blocks,
            variant,
        }
    }

    /// Sum of the diagonal blocks.
    pub fn sum_lii(&self) -> Mat<S> {
        let mut acc = self.block(1, 1).clone();
        for i in 2..=self.n {
            acc = acc.add(self.block(i, i));
        }
        acc
    }

    /// Coproduct: block `(i,j)` becomes `sum_k L_{ik} (x) L_{kj}`;
    /// the block dimension squares.
    pub fn coproduct(&self) -> Self {
        let n = self.n;
        let mut blocks = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                let mut acc: Option<Mat<S>> = None;
                for k in 1..=n {
                    let term = self.block(i, k).kron(self.block(k, j));
                    acc = Some(match acc {
                        None => term,
                        Some(a) => a.add(&term),
                    });
                }
                blocks.push(acc.unwrap());
            }
        }
        LOperator {
            n,
            d: self.d * self.d,
            blocks,
            variant: self.variant,
        }
    }

    /// `L2 L'1` as an `(N^2 d) x (N^2 d)` matrix: the block at auxiliary
    /// row `(i,k)`, column `(j,l)` is the product `L_{kl} L'_{ij}`.
    pub fn l2_l1(&self, lp: &LOperator<S>) -> Mat<S> {
        assert_eq!(self.n, lp.n);
        assert_eq!(self.d, lp.d);
        let (n, d) = (self.n, self.d);
        let mut out = Mat::zeros(n * n * d, n * n * d, self.blocks[0].proto());
        for i in 1..=n {
            for k in 1..=n {
                for j in 1..=n {
                    for l in 1..=n {
                        let prod = self.block(k, l).mul(lp.block(i, j));
                        out.set_block(
                            ((i - 1) * n + (k - 1)) * d,
                            ((j - 1) * n + (l - 1)) * d,
                            &prod,
                        );
                    }
                }
            }
        }
        out
    }
}

impl LOperator<LambdaExt> {
    /// Evaluate at `s = s0` substituting the `lambda_+` root for the
    /// formal generator (which turns `-T - lambda` into `lambda_-`).
    pub fn eval_at(&self, spec: &AlgebraSpec, s0: C) -> Result<LOperator<C>> {
        let roots = crate::scalar::lambda_numeric_roots(spec.t().eval_s(s0)?);
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for b in &self.blocks {
            blocks.push(b.try_map(|x| x.eval_s(s0, roots.plus))?);
        }
        Ok(LOperator {
            n: self.n,
            d: self.d,
            blocks,
            variant: self.variant,
        })
    }
}

/// Fundamental representation `L^{+-} = R^{+-1} P`, sliced into `N x N`
/// blocks of `N x N` matrices over the lambda-extension ring.
pub fn fundamental(spec: &AlgebraSpec, variant: Variant) -> LOperator<LambdaExt> {
    let n = spec.dim();
    let sign = match variant {
        Variant::Plus => 1,
        Variant::Minus => -1,
        Variant::Spectral(_) => panic!("spectral operator is numeric; use spectral_l"),
    };
    let r = braid_matrix(spec, sign).mat;
    let p = permutation_p(n, &spec.ext_one());
    LOperator::from_big(&r.mul(&p), n, variant)
}

/// Numeric fundamental `L(theta) = R(theta) P` at `q0`.
pub fn spectral_l(
    spec: &AlgebraSpec,
    theta: f64,
    q0: C,
    allow_complex_eta: bool,
) -> Result<LOperator<C>> {
    let n = spec.dim();
    let r = baxterized(spec, theta, q0, allow_complex_eta)?.mat;
    let p = permutation_p(n, &C::new(0.0, 0.0));
    Ok(LOperator::from_big(&r.mul(&p), n, Variant::Spectral(theta)))
}

/// Embed a Laurent-polynomial matrix into the lambda-extension ring.
pub fn embed_mat(m: &Mat<LaurentPoly>, spec: &AlgebraSpec) -> Mat<LambdaExt> {
    m.map(|p| LambdaExt::scalar(p.clone(), spec.t()))
}

fn p0_big(spec: &AlgebraSpec, d: usize) -> Mat<LambdaExt> {
    let p0 = embed_mat(&crate::braid::projector_p0prime(spec), spec);
    p0.kron(&Mat::identity(d, &spec.ext_one()))
}

/// Exact same-sign RLL check in the coefficient-free form
/// `P0' L2 L1 = L2 L1 P0'` (equivalent to `R L2 L1 = L2 L1 R`).
pub fn rll_same_sign_exact(spec: &AlgebraSpec, l: &LOperator<LambdaExt>) -> bool {
    let m = l.l2_l1(l);
    let p0 = p0_big(spec, l.block_dim());
    p0.mul(&m) == m.mul(&p0)
}

/// Exact mixed RLL check
/// `(I + lambda P0') L2^+ L1^- = L2^- L1^+ (I + lambda P0')` together
/// with its `lambda^{-1}` companion.
pub fn rll_mixed_exact(
    spec: &AlgebraSpec,
    lplus: &LOperator<LambdaExt>,
    lminus: &LOperator<LambdaExt>,
) -> bool {
    let d = lplus.block_dim();
    let m_pm = lplus.l2_l1(lminus);
    let m_mp = lminus.l2_l1(lplus);
    let p0 = p0_big(spec, d);
    let eye = Mat::identity(p0.rows(), &spec.ext_one());
    let r_plus = eye.add(&p0.scale(&spec.ext_lambda()));
    if r_plus.mul(&m_pm) != m_mp.mul(&r_plus) {
        return false;
    }
    let r_minus = eye.add(&p0.scale(&spec.ext_lambda_inv()));
    r_minus.mul(&m_mp) == m_pm.mul(&r_minus)
}

/// Numeric same-sign RLL residual `max|R L2 L1 - L2 L1 R|` at `q0`.
pub fn rll_same_sign_residual(spec: &AlgebraSpec, l: &LOperator<C>, q0: C) -> Result<f64> {
    let sign = match l.variant() {
        Variant::Plus => 1,
        Variant::Minus => -1,
        Variant::Spectral(_) => {
            return Err(Error::UnsupportedSpec(
                "use rll_spectral_residual for L(theta)".into(),
            ))
        }
    };
    let m = l.l2_l1(l);
    let r = braid_matrix_at(spec, sign, q0)?
        .mat
        .kron(&Mat::identity(l.block_dim(), &C::new(0.0, 0.0)));
    Ok(r.mul(&m).max_diff(&m.mul(&r)))
}

/// Residual of the spectral RLL relation
/// `R(a-b) L2(a) L1(b) = L2(b) L1(a) R(a-b)` at `q0`.
pub fn rll_spectral_residual(
    spec: &AlgebraSpec,
    theta_a: f64,
    theta_b: f64,
    q0: C,
    allow_complex_eta: bool,
) -> Result<f64> {
    let la = spectral_l(spec, theta_a, q0, allow_complex_eta)?;
    let lb = spectral_l(spec, theta_b, q0, allow_complex_eta)?;
    let r = baxterized(spec, theta_a - theta_b, q0, allow_complex_eta)?
        .mat
        .kron(&Mat::identity(spec.dim(), &C::new(0.0, 0.0)));
    let lhs = r.mul(&la.l2_l1(&lb));
    let rhs = lb.l2_l1(&la).mul(&r);
    Ok(lhs.max_diff(&rhs))
}

/// `L^{+-} (P L^{-+} P) = I`: the inverse relation between the two
/// fundamental operators.
pub fn check_inverse_relation(
    spec: &AlgebraSpec,
    lp: &LOperator<LambdaExt>,
    lm: &LOperator<LambdaExt>,
) -> bool {
    let p = permutation_p(spec.dim(), &spec.ext_one());
    let big_p = lp.to_big();
    let big_m = lm.to_big();
    let eye = Mat::identity(big_p.rows(), &spec.ext_one());
    big_p.mul(&p.mul(&big_m).mul(&p)) == eye && big_m.mul(&p.mul(&big_p).mul(&p)) == eye
}

// ---------------------------------------------------------------------------
// The quadratic sets S1, S2, S3
// ---------------------------------------------------------------------------

fn signed<S: Scalar>(x: S, eps: i64) -> S {
    if eps >= 0 {
        x
    } else {
        x.neg_ref()
    }
}

/// `S^{(1)}_{lk} = sum_j eps_j q^{-rho_j} L_{j'l} L_{jk}` for a
/// same-variant operator; `qpow(k)` must return `s^k` in the backend.
/// (All `eps_j = 1` for the orthogonal family.)
pub fn s1_matrix<S: Scalar>(
    spec: &AlgebraSpec,
    l: &LOperator<S>,
    li: usize,
    k: usize,
    qpow: &dyn Fn(i64) -> S,
) -> Mat<S> {
    let n = spec.dim();
    let mut acc = Mat::zeros(l.block_dim(), l.block_dim(), l.block(1, 1).proto());
    for j in 1..=n {
        let jj = spec.conj_index(j);
        let coeff = signed(qpow(-spec.rho2(j)), spec.eps(j));
        acc = acc.add(&l.block(jj, li).mul(l.block(j, k)).scale(&coeff));
    }
    acc
}

/// `S^{(2)}_{lk} = sum_j eps_j q^{-rho_j} L_{lj'} L_{kj}`.
pub fn s2_matrix<S: Scalar>(
    spec: &AlgebraSpec,
    l: &LOperator<S>,
    li: usize,
    k: usize,
    qpow: &dyn Fn(i64) -> S,
) -> Mat<S> {
    let n = spec.dim();
    let mut acc = Mat::zeros(l.block_dim(), l.block_dim(), l.block(1, 1).proto());
    for j in 1..=n {
        let jj = spec.conj_index(j);
        let coeff = signed(qpow(-spec.rho2(j)), spec.eps(j));
        acc = acc.add(&l.block(li, jj).mul(l.block(k, j)).scale(&coeff));
    }
    acc
}

/// The `s^k` provider for the lambda-extension backend.
pub fn ext_qpow(spec: &AlgebraSpec) -> impl Fn(i64) -> LambdaExt + '_ {
    move |k| LambdaExt::scalar(LaurentPoly::s_pow(k), spec.t())
}

/// The `s^k` provider for the numeric backend at `s0`.
pub fn num_qpow(s0: C) -> impl Fn(i64) -> C {
    move |k| s0.powi(k as i32)
}

/// All `2 N(N-1)` members of the annihilation sets: `S^{(1)}_{lk}` and
/// `S^{(2)}_{lk}` over `l + k != N + 1`.
pub fn s1_s2_members<S: Scalar>(
    spec: &AlgebraSpec,
    l: &LOperator<S>,
    qpow: &dyn Fn(i64) -> S,
) -> Vec<Mat<S>> {
    let n = spec.dim();
    let mut out = Vec::new();
    for li in 1..=n {
        for k in 1..=n {
            if li + k != n + 1 {
                out.push(s1_matrix(spec, l, li, k, qpow));
            }
        }
    }
    for li in 1..=n {
        for k in 1..=n {
            if li + k != n + 1 {
                out.push(s2_matrix(spec, l, li, k, qpow));
            }
        }
    }
    out
}

/// The 2N members of the central set: `eps_i q^{-rho_i} S^{(1)}_{i i'}`
/// then `eps_j q^{-rho_j} S^{(2)}_{j j'}`.
#[derive(Debug, Clone)]
pub struct CentralReport<S> {
    pub members: Vec<Mat<S>>,
}

pub fn central_elements<S: Scalar>(
    spec: &AlgebraSpec,
    l: &LOperator<S>,
    qpow: &dyn Fn(i64) -> S,
) -> CentralReport<S> {
    let n = spec.dim();
    let mut members = Vec::with_capacity(2 * n);
    for i in 1..=n {
        let ii = spec.conj_index(i);
        let coeff = signed(qpow(-spec.rho2(i)), spec.eps(i));
        members.push(s1_matrix(spec, l, i, ii, qpow).scale(&coeff));
    }
    for j in 1..=n {
        let jj = spec.conj_index(j);
        let coeff = signed(qpow(-spec.rho2(j)), spec.eps(j));
        members.push(s2_matrix(spec, l, j, jj, qpow).scale(&coeff));
    }
    CentralReport { members }
}

impl<S: Scalar> CentralReport<S> {
    /// All members exactly equal.
    pub fn all_equal(&self) -> bool {
        self.members.iter().all(|m| *m == self.members[0])
    }

    /// If the common member is `c * I`, return `c`.
    pub fn scalar_value(&self) -> Option<S> {
        let m = &self.members[0];
        let c = m[(0, 0)].clone();
        let eye = Mat::identity(m.rows(), m.proto());
        if *m == eye.scale(&c) {
            Some(c)
        } else {
            None
        }
    }

    /// Exact centrality: each member commutes with every block.
    pub fn commutes_with_all_blocks(&self, l: &LOperator<S>) -> bool {
        let n = l.aux_dim();
        self.members.iter().all(|m| {
            (1..=n).all(|i| {
                (1..=n).all(|j| {
                    let b = l.block(i, j);
                    m.mul(b) == b.mul(m)
                })
            })
        })
    }
}

impl CentralReport<C> {
    /// Max pairwise difference between members.
    pub fn equality_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for m in &self.members[1..] {
            worst = worst.max(m.max_diff(&self.members[0]));
        }
        worst
    }

    /// `max |member_0 - c I|`.
    pub fn scalar_residual(&self, c: C) -> f64 {
        let m = &self.members[0];
        let eye = Mat::identity(m.rows(), &C::new(0.0, 0.0));
        m.max_diff(&eye.scale(&c))
    }

    pub fn centrality_residual(&self, l: &LOperator<C>) -> f64 {
        let n = l.aux_dim();
        let mut worst = 0.0f64;
        for m in &self.members {
            for i in 1..=n {
                for j in 1..=n {
                    let b = l.block(i, j);
                    worst = worst.max(m.mul(b).max_diff(&b.mul(m)));
                }
            }
        }
        worst
    }
}

// ---------------------------------------------------------------------------
// Coproduct symmetries (reflection + q-inversion)
// ---------------------------------------------------------------------------

/// The map `f`: rotate the matrix by 180 degrees and send
/// `q -> q^{-1}` (`lambda` is invariant).
pub fn f_map(m: &Mat<LambdaExt>) -> Mat<LambdaExt> {
    let (r, c) = (m.rows(), m.cols());
    Mat::from_fn(r, c, |i, j| m[(r - 1 - i, c - 1 - j)].bar())
}

/// `f(Delta L_{ij}) = Delta L_{i'j'}` for every block, exactly.
pub fn check_coproduct_f_symmetry(spec: &AlgebraSpec, delta: &LOperator<LambdaExt>) -> bool {
    let n = spec.dim();
    (1..=n).all(|i| {
        (1..=n).all(|j| {
            f_map(delta.block(i, j)) == *delta.block(spec.conj_index(i), spec.conj_index(j))
        })
    })
}

// ---------------------------------------------------------------------------
// Mixed-sector identities for the fundamental blocks
// ---------------------------------------------------------------------------

/// The explicit mixed-sector relation of S3 type (N = 3), exact:
/// `lam (q L'31 L13 + q^{1/2} L'32 L12 + L'33 L11
///       - q L13 L'31 - q^{1/2} L23 L'21 - L33 L'11)
///  = q (L33 L'11 - L'33 L11)` with `L = L^+`, `L' = L^-`.
pub fn check_mixed_s3_instance(
    spec: &AlgebraSpec,
    lp: &LOperator<LambdaExt>,
    lm: &LOperator<LambdaExt>,
) -> bool {
    assert_eq!(spec.dim(), 3);
    let q = |k: i64| LambdaExt::scalar(LaurentPoly::s_pow(k), spec.t());
    let lam = spec.ext_lambda();
    let first = lm
        .block(3, 1)
        .mul(lp.block(1, 3))
        .scale(&q(2))
        .add(&lm.block(3, 2).mul(lp.block(1, 2)).scale(&q(1)))
        .add(&lm.block(3, 3).mul(lp.block(1, 1)));
    let second = lp
        .block(1, 3)
        .mul(lm.block(3, 1))
        .scale(&q(2))
        .add(&lp.block(2, 3).mul(lm.block(2, 1)).scale(&q(1)))
        .add(&lp.block(3, 3).mul(lm.block(1, 1)));
    let lhs = first.sub(&second).scale(&lam);
    let rhs = lp
        .block(3, 3)
        .mul(lm.block(1, 1))
        .sub(&lm.block(3, 3).mul(lp.block(1, 1)))
        .scale(&q(2));
    lhs == rhs
}

/// The mixed-sector relation of S1 type (N = 3), exact:
/// `lam (q^{-1/2} L31 L'11 + L21 L'21 + q^{1/2} L11 L'31)` equals each
/// of `q^{1/2}(L'31 L11 - L31 L'11)`, `(L'21 L21 - L21 L'21)` and
/// `q^{-1/2}(L'11 L31 - L11 L'31)`, with `L = L^+`, `L' = L^-`.
pub fn check_mixed_s1_instance(
    spec: &AlgebraSpec,
    lp: &LOperator<LambdaExt>,
    lm: &LOperator<LambdaExt>,
) -> bool {
    assert_eq!(spec.dim(), 3);
    let q = |k: i64| LambdaExt::scalar(LaurentPoly::s_pow(k), spec.t());
    let lam = spec.ext_lambda();
    let lhs = lp
        .block(3, 1)
        .mul(lm.block(1, 1))
        .scale(&q(-1))
        .add(&lp.block(2, 1).mul(lm.block(2, 1)))
        .add(&lp.block(1, 1).mul(lm.block(3, 1)).scale(&q(1)))
        .scale(&lam);
    let rhs1 = lm
        .block(3, 1)
        .mul(lp.block(1, 1))
        .sub(&lp.block(3, 1).mul(lm.block(1, 1)))
        .scale(&q(1));
    let rhs2 = lm
        .block(2, 1)
        .mul(lp.block(2, 1))
        .sub(&lp.block(2, 1).mul(lm.block(2, 1)));
    let rhs3 = lm
        .block(1, 1)
        .mul(lp.block(3, 1))
        .sub(&lp.block(1, 1).mul(lm.block(3, 1)))
        .scale(&q(-1));
    lhs == rhs1 && lhs == rhs2 && lhs == rhs3
}

// ---------------------------------------------------------------------------
// A + lambda B decomposition
// ---------------------------------------------------------------------------

/// The `(A, B)` block grids of the `A + lambda B` parametrization.
pub type AbBlocks = (Vec<Mat<LaurentPoly>>, Vec<Mat<LaurentPoly>>);

/// Split the fundamental pair into `L^{+-}_{ij} = A_{ij} + lambda_{+-} B_{ij}`
/// by reading coefficients off `L^+` and verifying against `L^-`
/// (`lambda_- = -T - lambda` exactly). Errors if the pair is
/// inconsistent.
pub fn decompose_ab(
    spec: &AlgebraSpec,
    lp: &LOperator<LambdaExt>,
    lm: &LOperator<LambdaExt>,
) -> Result<AbBlocks> {
    let n = spec.dim();
    let mut a_blocks = Vec::with_capacity(n * n);
    let mut b_blocks = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            let a = lp.block(i, j).map(|x| x.scalar_part().clone());
            let b = lp.block(i, j).map(|x| x.lambda_part().clone());
            // L^- must be (A - T B) - lambda B
            let am = lm.block(i, j).map(|x| x.scalar_part().clone());
            let bm = lm.block(i, j).map(|x| x.lambda_part().clone());
            if am != a.sub(&b.scale(spec.t())) || bm != b.neg() {
                return Err(Error::DimensionMismatch(
                    "L^+ and L^- do not share an A + lambda B parametrization".into(),
                ));
            }
            a_blocks.push(a);
            b_blocks.push(b);
        }
    }
    Ok((a_blocks, b_blocks))
}

/// Exact reduced-sector commutation `A_{ab} B_{cd} = B_{ab} A_{cd}` for
/// all block pairs with row indices `a + c != N+1` and column indices
/// `b + d != N+1`.
pub fn check_ab_reduced_commute(
    spec: &AlgebraSpec,
    a_blocks: &[Mat<LaurentPoly>],
    b_blocks: &[Mat<LaurentPoly>],
) -> bool {
    let n = spec.dim();
    for a in 1..=n {
        for b in 1..=n {
            for cc in 1..=n {
                for dd in 1..=n {
                    if a + cc == n + 1 || b + dd == n + 1 {
                        continue;
                    }
                    let ab = &a_blocks[(a - 1) * n + (b - 1)];
                    let bb = &b_blocks[(a - 1) * n + (b - 1)];
                    let acd = &a_blocks[(cc - 1) * n + (dd - 1)];
                    let bcd = &b_blocks[(cc - 1) * n + (dd - 1)];
                    if ab.mul(bcd) != bb.mul(acd) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Conjugation analysis of the 9x9 coproduct generators (N = 3)
// ---------------------------------------------------------------------------

/// The explicit orthogonal conjugator (N = 3 only), built from
/// `z = q^{1/2} + q^{-1/2}` and `k = (q + 4 + q^{-1})^{-1/2}` at real
/// `q0 > 0`.
pub fn conjugator(q0: f64) -> Mat<C> {
    assert!(q0 > 0.0, "conjugator needs real positive q");
    let sq = q0.sqrt();
    let z = sq + 1.0 / sq;
    let k = (q0 + 4.0 + 1.0 / q0).powf(-0.5);
    let s2 = std::f64::consts::SQRT_2;
    let rows: [[f64; 9]; 9] = [
        [0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, -1.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0],
        [0.0, 0.0, z * k, 0.0, 2.0 * k, 0.0, z * k, 0.0, 0.0],
        [0.0, 0.0, s2 * k, 0.0, -s2 * z * k, 0.0, s2 * k, 0.0, 0.0],
        [s2, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, s2],
    ];
    Mat::from_fn(9, 9, |i, j| C::new(rows[i][j] / s2, 0.0))
}

/// Everything the conjugation analysis checks, as residuals.
#[derive(Debug, Clone)]
pub struct ConjugationReport {
    /// `max |W W^T - I|`.
    pub orthogonality: f64,
    /// `max |W (sum_i Delta L_ii) W^T - lambda diag(-y,y,y,-y,3,3,-y,-y,-y)|`.
    pub sum_diagonal: f64,
    /// Worst off-block entry of the conjugated `Delta L_ii`.
    pub block_leakage: f64,
    /// Worst mismatch against the tabulated alpha, beta, gamma, delta blocks.
    pub tabulated_blocks: f64,
    /// `max(|alpha_1^2|, |alpha_3^2|, |beta_1^2|, |beta_3^2|)`.
    pub nilpotency: f64,
    /// Every conjugated `Delta L_ij` (i != j) vanishes on the
    /// diagonal-block support and is nonzero outside it.
    pub offdiag_outside_blocks: bool,
}

/// Block layout of the conjugated diagonal generators: 2+2+3+2.
const BLOCK_RANGES: [(usize, usize); 4] = [(0, 2), (2, 2), (4, 3), (7, 2)];

fn block_support(i: usize, j: usize) -> bool {
    BLOCK_RANGES
        .iter()
        .any(|&(s, len)| i >= s && i < s + len && j >= s && j < s + len)
}

/// Run the conjugation analysis for `ohat(3)` at real `q0 > 0`.
pub fn conjugate_sum_lii(spec: &AlgebraSpec, q0: f64) -> Result<ConjugationReport> {
    if spec.dim() != 3 || spec.family() != crate::algebra::Family::OHat {
        return Err(Error::UnsupportedSpec(
            "the explicit conjugator is built for ohat(3) only".into(),
        ));
    }
    let qc = C::new(q0, 0.0);
    let delta = fundamental(spec, Variant::Plus)
        .coproduct()
        .eval_at(spec, qc.sqrt())?;
    let w = conjugator(q0);
    let wt = w.transpose();
    let eye9 = Mat::identity(9, &C::new(0.0, 0.0));
    let orthogonality = w.mul(&wt).max_diff(&eye9);

    let lam = spec.lambda_roots_at(qc)?.plus;
    let y = q0 + 1.0 + 1.0 / q0;
    let diag_vals = [-y, y, y, -y, 3.0, 3.0, -y, -y, -y];
    let diag = Mat::from_fn(9, 9, |i, j| {
        if i == j {
            lam * diag_vals[i]
        } else {
            C::new(0.0, 0.0)
        }
    });
    let sum_conj = w.mul(&delta.sum_lii()).mul(&wt);
    let sum_diagonal = sum_conj.max_diff(&diag);

    let mut conj_ii = Vec::new();
    for i in 1..=3 {
        conj_ii.push(w.mul(delta.block(i, i)).mul(&wt));
    }
    let mut block_leakage = 0.0f64;
    for m in &conj_ii {
        for i in 0..9 {
            for j in 0..9 {
                if !block_support(i, j) {
                    block_leakage = block_leakage.max(m[(i, j)].norm());
                }
            }
        }
    }

    // tabulated closed forms
    let sq = q0.sqrt();
    let mu = sq - 1.0 / sq;
    let z = sq + 1.0 / sq;
    let k = (q0 + 4.0 + 1.0 / q0).powf(-0.5);
    let s2 = std::f64::consts::SQRT_2;
    let l2 = lam * lam;
    let re = |x: f64| C::new(x, 0.0);
    let alpha: [[[C; 2]; 2]; 3] = [
        [[re(0.5), re(0.5)], [re(-0.5), re(-0.5)]],
        [
            [(l2 + 1.0) * 0.5, (l2 - 1.0) * 0.5],
            [(-l2 + 1.0) * 0.5, (-l2 - 1.0) * 0.5],
        ],
        [[l2 * 0.5, -l2 * 0.5], [l2 * 0.5, -l2 * 0.5]],
    ];
    let beta: [[[C; 2]; 2]; 3] = [
        [[-l2 * 0.5, -l2 * 0.5], [l2 * 0.5, l2 * 0.5]],
        [
            [(-l2 - 1.0) * 0.5, (l2 - 1.0) * 0.5],
            [(-l2 + 1.0) * 0.5, (l2 + 1.0) * 0.5],
        ],
        [[re(-0.5), re(0.5)], [re(-0.5), re(0.5)]],
    ];
    let delta_blocks: [[[C; 2]; 2]; 3] = [
        [[re(1.0), re(0.0)], [re(0.0), l2]],
        [[re(0.0), re(0.0)], [re(0.0), re(0.0)]],
        [[l2, re(0.0)], [re(0.0), re(1.0)]],
    ];
    let gamma: [[[f64; 3]; 3]; 3] = [
        [
            [3.0, mu * k, s2 * (2.0 + 1.0 / q0) * k],
            [
                mu * k,
                3.0 * z * z * k * k,
                s2 * (2.0 + 1.0 / q0) * mu * k * k,
            ],
            [
                -s2 * (2.0 + q0) * k,
                -s2 * (2.0 + q0) * mu * k * k,
                -2.0 * (z * z - 1.0) * k * k,
            ],
        ],
        [
            [0.0, -2.0 * mu * k, s2 * mu * z * k],
            [-2.0 * mu * k, 12.0 * k * k, s2 * mu * mu * z * k * k],
            [
                s2 * mu * z * k,
                s2 * mu * mu * z * k * k,
                -2.0 * (z * z - 1.0) * z * z * k * k,
            ],
        ],
        [
            [3.0, mu * k, -s2 * (2.0 + q0) * k],
            [
                mu * k,
                3.0 * (1.0 - 2.0 * k * k),
                -s2 * (2.0 + q0) * mu * k * k,
            ],
            [
                s2 * (2.0 + 1.0 / q0) * k,
                s2 * (2.0 + 1.0 / q0) * mu * k * k,
                -2.0 * (1.0 - 3.0 * k * k),
            ],
        ],
    ];

    let mut tabulated_blocks = 0.0f64;
    for (idx, m) in conj_ii.iter().enumerate() {
        let a = m.block(0, 0, 2, 2);
        let b = m.block(2, 2, 2, 2);
        let g = m.block(4, 4, 3, 3);
        let dl = m.block(7, 7, 2, 2);
        let a_want = Mat::from_fn(2, 2, |i, j| alpha[idx][i][j]);
        let b_want = Mat::from_fn(2, 2, |i, j| beta[idx][i][j]);
        let d_want = Mat::from_fn(2, 2, |i, j| delta_blocks[idx][i][j]);
        let g_want = Mat::from_fn(3, 3, |i, j| lam * 0.5 * gamma[idx][i][j]);
        tabulated_blocks = tabulated_blocks
            .max(a.max_diff(&a_want))
            .max(b.max_diff(&b_want))
            .max(dl.max_diff(&d_want))
            .max(g.max_diff(&g_want));
    }

    let sq_norm = |m: &Mat<C>| m.mul(m).max_norm();
    let a1 = conj_ii[0].block(0, 0, 2, 2);
    let a3 = conj_ii[2].block(0, 0, 2, 2);
    let b1 = conj_ii[0].block(2, 2, 2, 2);
    let b3 = conj_ii[2].block(2, 2, 2, 2);
    let nilpotency = sq_norm(&a1)
        .max(sq_norm(&a3))
        .max(sq_norm(&b1))
        .max(sq_norm(&b3));

    let mut offdiag_outside_blocks = true;
    for i in 1..=3 {
        for j in 1..=3 {
            if i == j {
                continue;
            }
            let m = w.mul(delta.block(i, j)).mul(&wt);
            let mut inside = 0.0f64;
            let mut outside = 0.0f64;
            for r in 0..9 {
                for c2 in 0..9 {
                    if block_support(r, c2) {
                        inside = inside.max(m[(r, c2)].norm());
                    } else {
                        outside = outside.max(m[(r, c2)].norm());
                    }
                }
            }
            if inside > 1e-9 || outside < 1e-9 {
                offdiag_outside_blocks = false;
            }
        }
    }

    Ok(ConjugationReport {
        orthogonality,
        sum_diagonal,
        block_leakage,
        tabulated_blocks,
        nilpotency,
        offdiag_outside_blocks,
    })
}
