//! The rank-one projector `P0'`, the braid matrices `R = I + lambda P0'`,
//! their Baxterized family `R(theta)`, and the identity checks (braid
//! equation, Hecke relation, spectrum).
//!
//! Index convention, used by every module: the matrix unit
//! `(ij) (x) (kl)` occupies row `(i-1)N + k`, column `(j-1)N + l`
//! (1-indexed in formulas, 0-indexed in code).

use num_complex::Complex64;

use crate::algebra::AlgebraSpec;
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::{LambdaExt, LaurentPoly, Scalar};

/// Provenance tag for a braid matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BraidTag {
    RHatPlus,
    RHatMinus,
    Baxterized(f64),
    Custom,
}

/// A dense `N^2 x N^2` matrix over one of the scalar backends, tagged
/// with how it was built.
#[derive(Debug, Clone, PartialEq)]
pub struct BraidMatrix<S> {
    pub n: usize,
    pub mat: Mat<S>,
    pub tag: BraidTag,
}

/// `P0' = sum_{ij} eps_i eps_j q^{rho_{i'} - rho_j} (ij) (x) (i'j')`,
/// exact over Laurent polynomials. Rank one, `P0'^2 = T P0'`,
/// `tr P0' = T`.
pub fn projector_p0prime(spec: &AlgebraSpec) -> Mat<LaurentPoly> {
    let n = spec.dim();
    let mut m = Mat::zeros(n * n, n * n, &LaurentPoly::zero());
    for i in 1..=n {
        for j in 1..=n {
            let ii = spec.conj_index(i);
            let jj = spec.conj_index(j);
            // q^{rho_{i'} - rho_j} = s^{-rho2_i - rho2_j}
            let exp = -spec.rho2(i) - spec.rho2(j);
            let coeff = spec.eps(i) * spec.eps(j);
            let val = LaurentPoly::monomial(exp, num::BigRational::from_integer(coeff.into()));
            m[((i - 1) * n + (ii - 1), (j - 1) * n + (jj - 1))] = val;
        }
    }
    m
}

/// Numeric `P0'` at `q0`.
pub fn projector_p0prime_at(spec: &AlgebraSpec, q0: Complex64) -> Result<Mat<Complex64>> {
    projector_p0prime(spec).try_map(|p| p.eval_q(q0))
}

/// The flip `P = sum (ij) (x) (ji)`, `P^2 = I`, over any backend.
pub fn permutation_p<S: Scalar>(n: usize, proto: &S) -> Mat<S> {
    let mut m = Mat::zeros(n * n, n * n, proto);
    let one = proto.one_like();
    for i in 0..n {
        for j in 0..n {
            m[(i * n + j, j * n + i)] = one.clone();
        }
    }
    m
}

/// `R^{+1} = I + lambda P0'` or `R^{-1} = I + lambda^{-1} P0'` over the
/// lambda-extension ring, where `lambda` is the formal generator.
pub fn braid_matrix(spec: &AlgebraSpec, sign: i32) -> BraidMatrix<LambdaExt> {
    let n = spec.dim();
    let p0 = projector_p0prime(spec);
    let coeff = if sign >= 0 {
        spec.ext_lambda()
    } else {
        spec.ext_lambda_inv()
    };
    let mut m = Mat::identity(n * n, &spec.ext_one());
    for r in 0..n * n {
        for c in 0..n * n {
            if !p0[(r, c)].is_zero() {
                let add = &coeff * &LambdaExt::scalar(p0[(r, c)].clone(), spec.t());
                m[(r, c)] = m[(r, c)].add_ref(&add);
            }
        }
    }
    BraidMatrix {
        n,
        mat: m,
        tag: if sign >= 0 {
            BraidTag::RHatPlus
        } else {
            BraidTag::RHatMinus
        },
    }
}

/// Numeric `R^{+-1}` at `q0`, with `lambda_{+-}` on the branch fixed by
/// [`crate::scalar::lambda_numeric_roots`].
pub fn braid_matrix_at(
    spec: &AlgebraSpec,
    sign: i32,
    q0: Complex64,
) -> Result<BraidMatrix<Complex64>> {
    let roots = spec.lambda_roots_at(q0)?;
    let lam = if sign >= 0 { roots.plus } else { roots.minus };
    let p0 = projector_p0prime_at(spec, q0)?;
    let nn = spec.dim() * spec.dim();
    let mut m = Mat::identity(nn, &Complex64::new(0.0, 0.0));
    for r in 0..nn {
        for c in 0..nn {
            m[(r, c)] += lam * p0[(r, c)];
        }
    }
    Ok(BraidMatrix {
        n: spec.dim(),
        mat: m,
        tag: if sign >= 0 {
            BraidTag::RHatPlus
        } else {
            BraidTag::RHatMinus
        },
    })
}

/// `e^{eta}` at `q0`, requiring `T(q0)` real with `|T| > 2` unless
/// `allow_complex_eta` is set.
pub fn exp_eta_at(spec: &AlgebraSpec, q0: Complex64, allow_complex_eta: bool) -> Result<Complex64> {
    let t0 = spec.t_at(q0)?;
    let real_eta = t0.im.abs() < 1e-12 && t0.re.abs() > 2.0;
    if !real_eta && !allow_complex_eta {
        return Err(Error::NoRealEta {
            t_re: t0.re,
            t_im: t0.im,
        });
    }
    Ok(crate::scalar::lambda_numeric_roots(t0).exp_eta)
}

/// Baxterized braid matrix `R(theta) = I - sinh(theta)/sinh(eta+theta) P0'`.
///
/// `R(0) = I`, `R(-theta) = R(theta)^{-1}`, and `theta -> +-inf`
/// reproduces `R^{+-1}`.
pub fn baxterized(
    spec: &AlgebraSpec,
    theta: f64,
    q0: Complex64,
    allow_complex_eta: bool,
) -> Result<BraidMatrix<Complex64>> {
    let exp_eta = exp_eta_at(spec, q0, allow_complex_eta)?;
    let eta = exp_eta.ln();
    let th = Complex64::new(theta, 0.0);
    let denom = (eta + th).sinh();
    if denom.norm() < 1e-14 {
        return Err(Error::PoleAtTheta { theta });
    }
    let w = th.sinh() / denom;
    let p0 = projector_p0prime_at(spec, q0)?;
    let nn = spec.dim() * spec.dim();
    let mut m = Mat::identity(nn, &Complex64::new(0.0, 0.0));
    for r in 0..nn {
        for c in 0..nn {
            m[(r, c)] -= w * p0[(r, c)];
        }
    }
    Ok(BraidMatrix {
        n: spec.dim(),
        mat: m,
        tag: BraidTag::Baxterized(theta),
    })
}

/// Lift an `N^2`-dim matrix to `m (x) I_N` and `I_N (x) m`, then return
/// the braid-equation difference `R12 R23 R12 - R23 R12 R23`.
pub fn braid_equation_difference<S: Scalar>(m: &Mat<S>, n: usize) -> Result<Mat<S>> {
    if m.rows() != n * n || m.cols() != n * n {
        return Err(Error::DimensionMismatch(format!(
            "braid matrix must be {0}x{0}, got {1}x{2}",
            n * n,
            m.rows(),
            m.cols()
        )));
    }
    let eye_n = Mat::identity(n, m.proto());
    let r12 = m.kron(&eye_n);
    let r23 = eye_n.kron(m);
    let lhs = r12.mul(&r23).mul(&r12);
    let rhs = r23.mul(&r12).mul(&r23);
    Ok(lhs.sub(&rhs))
}

/// Exact braid-equation check over a symbolic backend.
pub fn check_braid_equation_exact<S: Scalar>(m: &BraidMatrix<S>) -> Result<bool> {
    Ok(braid_equation_difference(&m.mat, m.n)?.is_zero())
}

/// Max-norm braid-equation residual for a numeric matrix.
pub fn check_braid_equation_numeric(m: &BraidMatrix<Complex64>) -> Result<f64> {
    Ok(braid_equation_difference(&m.mat, m.n)?.max_norm())
}

/// Residual of the Baxterized braid equation
/// `R12(a) R23(a+b) R12(b) = R23(b) R12(a+b) R23(a)`.
pub fn check_baxterized_braid(
    spec: &AlgebraSpec,
    theta: f64,
    theta_p: f64,
    q0: Complex64,
    allow_complex_eta: bool,
) -> Result<f64> {
    let n = spec.dim();
    let eye_n = Mat::identity(n, &Complex64::new(0.0, 0.0));
    let lift12 = |m: &Mat<Complex64>| m.kron(&eye_n);
    let lift23 = |m: &Mat<Complex64>| eye_n.kron(m);
    let ra = baxterized(spec, theta, q0, allow_complex_eta)?.mat;
    let rab = baxterized(spec, theta + theta_p, q0, allow_complex_eta)?.mat;
    let rb = baxterized(spec, theta_p, q0, allow_complex_eta)?.mat;
    let lhs = lift12(&ra).mul(&lift23(&rab)).mul(&lift12(&rb));
    let rhs = lift23(&rb).mul(&lift12(&rab)).mul(&lift23(&ra));
    Ok(lhs.sub(&rhs).max_norm())
}

/// Exact Hecke check `(R - I)(R + lambda^2 I) = 0` over the extension
/// ring.
pub fn check_hecke_exact(spec: &AlgebraSpec) -> bool {
    let r = braid_matrix(spec, 1).mat;
    let nn = spec.dim() * spec.dim();
    let eye = Mat::identity(nn, &spec.ext_one());
    let lam2 = &spec.ext_lambda() * &spec.ext_lambda();
    let left = r.sub(&eye);
    let right = r.add(&eye.scale(&lam2));
    left.mul(&right).is_zero()
}

/// Exact `P0'^2 = T P0'` check.
pub fn check_projector_square(spec: &AlgebraSpec) -> bool {
    let p0 = projector_p0prime(spec);
    p0.mul(&p0) == p0.scale(spec.t())
}

/// Eigenvalue multiset of numeric `R^{+-1}` at `q0`: expected
/// `{-e^{-+2 eta}}` once and `{1}` with multiplicity `N^2 - 1`.
pub fn spectrum(spec: &AlgebraSpec, sign: i32, q0: Complex64) -> Result<Vec<Complex64>> {
    let r = braid_matrix_at(spec, sign, q0)?;
    let mut eigs = crate::numeric::eigenvalues(&r.mat)?;
    // order: the isolated eigenvalue first, then the ones
    eigs.sort_by(|a, b| {
        let da = (a - Complex64::new(1.0, 0.0)).norm();
        let db = (b - Complex64::new(1.0, 0.0)).norm();
        db.total_cmp(&da)
    });
    Ok(eigs)
}

/// All nonzero rows of `P0'` are proportional (rank one). Exact check:
/// every 2x2 minor of the nonzero rows vanishes.
pub fn check_rank_one(spec: &AlgebraSpec) -> bool {
    let p0 = projector_p0prime(spec);
    let nn = p0.rows();
    let nonzero_rows: Vec<usize> = (0..nn)
        .filter(|&r| (0..nn).any(|c| !p0[(r, c)].is_zero()))
        .collect();
    for w in nonzero_rows.windows(2) {
        let (r1, r2) = (w[0], w[1]);
        for c1 in 0..nn {
            for c2 in c1 + 1..nn {
                let det = &(&p0[(r1, c1)] * &p0[(r2, c2)]) - &(&p0[(r1, c2)] * &p0[(r2, c1)]);
                if !det.is_zero() {
                    return false;
                }
            }
        }
    }
    !nonzero_rows.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Family;
    use crate::close;

    fn c(x: f64, y: f64) -> Complex64 {
        Complex64::new(x, y)
    }

    fn ohat3() -> AlgebraSpec {
        AlgebraSpec::new(Family::OHat, 3).unwrap()
    }

    #[test]
    fn p0prime_ohat3_matches_tabulated_matrix() {
        // nonzero rows/cols {3,5,7} (1-indexed) with the q-pattern
        // [[q^-1, q^-1/2, 1], [q^-1/2, 1, q^1/2], [1, q^1/2, q]]
        let p0 = projector_p0prime(&ohat3());
        let nz = [2usize, 4, 6]; // 0-indexed
        for r in 0..9 {
            for cidx in 0..9 {
                let expect_nonzero = nz.contains(&r) && nz.contains(&cidx);
                assert_eq!(!p0[(r, cidx)].is_zero(), expect_nonzero, "({},{})", r, cidx);
            }
        }
        assert_eq!(p0[(2, 2)], LaurentPoly::q_pow(-1));
        assert_eq!(p0[(2, 4)], LaurentPoly::s_pow(-1));
        assert_eq!(p0[(2, 6)], LaurentPoly::one());
        assert_eq!(p0[(4, 4)], LaurentPoly::one());
        assert_eq!(p0[(4, 6)], LaurentPoly::s_pow(1));
        assert_eq!(p0[(6, 6)], LaurentPoly::q_pow(1));
    }

    #[test]
    fn p0prime_trace_is_t() {
        for (fam, dims) in [(Family::OHat, vec![3, 4, 5, 6]), (Family::PHat, vec![4, 6])] {
            for n in dims {
                let spec = AlgebraSpec::new(fam, n).unwrap();
                assert_eq!(&projector_p0prime(&spec).trace(), spec.t());
            }
        }
    }

    #[test]
    fn phat4_sign_pattern() {
        // the (i,j) = (1,4) summand carries eps_1 eps_4 = -1
        let spec = AlgebraSpec::new(Family::PHat, 4).unwrap();
        let p0 = projector_p0prime(&spec);
        // (i,j) = (1,4): row (1-1)*4 + i' = 4 -> index 3; col (4-1)*4 + j' = 13 -> index 12
        // value: eps_1 eps_4 q^{rho_4 - rho_4} = -1
        assert_eq!(p0[(3, 12)], -&LaurentPoly::one());
        // same sign on the (4,1) summand, exponent rho_1 - rho_1 = 0
        assert_eq!(p0[(12, 3)], -&LaurentPoly::one());
    }

    #[test]
    fn projector_square_and_rank_one() {
        for (fam, dims) in [(Family::OHat, vec![3, 4, 5, 6]), (Family::PHat, vec![4, 6])] {
            for n in dims {
                let spec = AlgebraSpec::new(fam, n).unwrap();
                assert!(check_projector_square(&spec), "{}", spec);
                assert!(check_rank_one(&spec), "{}", spec);
            }
        }
    }

    #[test]
    fn rhat_times_inverse_is_identity_exactly() {
        let spec = ohat3();
        let r = braid_matrix(&spec, 1).mat;
        let rinv = braid_matrix(&spec, -1).mat;
        let eye = Mat::identity(9, &spec.ext_one());
        assert_eq!(r.mul(&rinv), eye);
    }

    #[test]
    fn braid_equation_exact_ohat3() {
        let spec = ohat3();
        assert!(check_braid_equation_exact(&braid_matrix(&spec, 1)).unwrap());
        assert!(check_braid_equation_exact(&braid_matrix(&spec, -1)).unwrap());
    }

    #[test]
    fn braid_equation_exact_phat4() {
        let spec = AlgebraSpec::new(Family::PHat, 4).unwrap();
        assert!(check_braid_equation_exact(&braid_matrix(&spec, 1)).unwrap());
    }

    #[test]
    fn hecke_exact() {
        for (fam, n) in [(Family::OHat, 3), (Family::OHat, 4), (Family::PHat, 4)] {
            let spec = AlgebraSpec::new(fam, n).unwrap();
            assert!(check_hecke_exact(&spec), "{}", spec);
        }
    }

    #[test]
    fn hecke_numeric_value_q1() {
        // 1 + e^{-2 eta} = 2N / (N + sqrt(N^2-4)) at q = 1, N = 3
        let spec = ohat3();
        let roots = spec.lambda_roots_at(c(1.0, 0.0)).unwrap();
        let e2 = roots.exp_eta.powi(-2);
        let expect = 6.0 / (3.0 + 5.0f64.sqrt());
        assert!((1.0 + e2.re - expect).abs() < 1e-9);
        assert!((1.0 + e2.re - 1.1458980).abs() < 1e-7);
    }

    #[test]
    fn permutation_flip() {
        let p = permutation_p(3, &c(0.0, 0.0));
        let eye = Mat::identity(9, &c(0.0, 0.0));
        assert!(p.mul(&p).max_diff(&eye) < 1e-15);
        // N=3: P interchanges rows 2 and 4 (1-indexed)
        assert!((p[(1, 3)] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((p[(3, 1)] - c(1.0, 0.0)).norm() < 1e-15);
        assert!(p[(1, 1)].norm() < 1e-15);
        // P(x (x) y) = y (x) x on random vectors
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let x: Vec<Complex64> = (0..3).map(|_| c(rng.gen(), rng.gen())).collect();
        let y: Vec<Complex64> = (0..3).map(|_| c(rng.gen(), rng.gen())).collect();
        for i in 0..3 {
            for k in 0..3 {
                let mut acc = c(0.0, 0.0);
                for j in 0..3 {
                    for l in 0..3 {
                        acc += p[(i * 3 + k, j * 3 + l)] * x[j] * y[l];
                    }
                }
                assert!((acc - y[i] * x[k]).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn baxterized_at_zero_is_identity() {
        let spec = ohat3();
        let r = baxterized(&spec, 0.0, c(2.0, 0.0), false).unwrap();
        let eye = Mat::identity(9, &c(0.0, 0.0));
        assert!(r.mat.max_diff(&eye) < 1e-14);
    }

    #[test]
    fn baxterized_inverse_pair() {
        let spec = ohat3();
        let r = baxterized(&spec, 0.7, c(1.5, 0.0), false).unwrap();
        let rneg = baxterized(&spec, -0.7, c(1.5, 0.0), false).unwrap();
        let eye = Mat::identity(9, &c(0.0, 0.0));
        assert!(r.mat.mul(&rneg.mat).max_diff(&eye) < 1e-9);
    }

    #[test]
    fn baxterized_limits_reach_rhat() {
        let spec = ohat3();
        let q0 = c(2.0, 0.0);
        let rplus = braid_matrix_at(&spec, 1, q0).unwrap();
        let far = baxterized(&spec, 20.0, q0, false).unwrap();
        assert!(far.mat.max_diff(&rplus.mat) < 1e-8);
        let rminus = braid_matrix_at(&spec, -1, q0).unwrap();
        let far_neg = baxterized(&spec, -20.0, q0, false).unwrap();
        assert!(far_neg.mat.max_diff(&rminus.mat) < 1e-8);
    }

    #[test]
    fn baxterized_braid_equation_numeric() {
        let spec = ohat3();
        let res = check_baxterized_braid(&spec, 0.3, 0.7, c(1.5, 0.0), false).unwrap();
        assert!(res < 1e-9, "residual {}", res);
    }

    #[test]
    fn baxterized_pole_and_no_real_eta() {
        let spec = ohat3();
        // T(e^{i pi/3}) = 2: no real eta
        let q_root = Complex64::from_polar(1.0, std::f64::consts::PI / 3.0);
        assert!(matches!(
            baxterized(&spec, 0.5, q_root, false),
            Err(Error::NoRealEta { .. })
        ));
        // behind the flag it evaluates
        assert!(baxterized(&spec, 0.5, q_root, true).is_ok());
        // pole at theta = -eta
        let q0 = c(2.0, 0.0);
        let eta = exp_eta_at(&spec, q0, false).unwrap().ln().re;
        assert!(matches!(
            baxterized(&spec, -eta, q0, false),
            Err(Error::PoleAtTheta { .. })
        ));
    }

    #[test]
    fn spectrum_structure_q1() {
        let spec = ohat3();
        let eigs = spectrum(&spec, 1, c(1.0, 0.0)).unwrap();
        // {-e^{-2 eta}} u {1 x 8}; at q=1, -e^{-2 eta} = -0.1458980
        assert!((eigs[0] - c(-0.1458980337503155, 0.0)).norm() < 1e-8);
        for e in &eigs[1..] {
            assert!((e - c(1.0, 0.0)).norm() < 1e-8);
        }
    }

    #[test]
    fn spectrum_at_triangular_root() {
        // q = e^{i pi/3}: spectrum is (-1, 1 x 8)
        let spec = ohat3();
        let q_root = Complex64::from_polar(1.0, std::f64::consts::PI / 3.0);
        let eigs = spectrum(&spec, 1, q_root).unwrap();
        assert!(close(eigs[0], c(-1.0, 0.0)));
        for e in &eigs[1..] {
            assert!(close(*e, c(1.0, 0.0)));
        }
    }

    #[test]
    fn spectrum_ohat4_q1() {
        // e^{eta} + e^{-eta} = 4 at q=1 for N=4
        let spec = AlgebraSpec::new(Family::OHat, 4).unwrap();
        let eigs = spectrum(&spec, 1, c(1.0, 0.0)).unwrap();
        let ee = (4.0 + 12.0f64.sqrt()) / 2.0;
        assert!((eigs[0] - c(-ee.powi(-2), 0.0)).norm() < 1e-8);
        assert_eq!(eigs.len(), 16);
        for e in &eigs[1..] {
            assert!((e - c(1.0, 0.0)).norm() < 1e-8);
        }
    }

    #[test]
    fn positivity_window_for_ohat() {
        // real q > 0 and theta in (-eta, 0): all entries of R(theta) >= 0
        for n in [3usize, 4, 5] {
            let spec = AlgebraSpec::new(Family::OHat, n).unwrap();
            for q in [0.3, 1.0, 1.7, 4.0] {
                let q0 = c(q, 0.0);
                let eta = exp_eta_at(&spec, q0, false).unwrap().ln().re;
                for frac in [0.15, 0.5, 0.85] {
                    let theta = -eta * frac;
                    let r = baxterized(&spec, theta, q0, false).unwrap();
                    for z in r.mat.iter() {
                        assert!(z.im.abs() < 1e-12);
                        assert!(
                            z.re >= -1e-12,
                            "negative entry {} at q={} theta={}",
                            z.re,
                            q,
                            theta
                        );
                    }
                }
            }
        }
    }
}
