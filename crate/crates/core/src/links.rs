//! Oriented-link invariants from braid closures: the enhanced operator
//! `(R, f, a, b = 1)`, braid-word representations on `V^{(x) m}`, the
//! trace invariant `P(beta) = a^{-writhe} tr(rho_m(beta) f^{(x) m})`,
//! the skein relation it satisfies, and Markov-move invariance.
//!
//! Conventions: the braid generator with exponent `+1` (an overcrossing)
//! acts as `R` (not `R^{-1}`) and raises the writhe by one. With `P`
//! normalized by `a^{-writhe}`, the Hecke relation
//! `e^eta R - e^{-eta} R^{-1} = (e^eta - e^{-eta}) I` turns into the
//! skein relation
//! `e^{2 eta} P(L+) - e^{-2 eta} P(L-) = (e^eta - e^{-eta}) P(L0)`;
//! the writhe normalization contributes one factor `a^{-+1} = e^{-+eta}`
//! on each side relative to the bare trace functional.

use num_complex::Complex64;

use crate::algebra::AlgebraSpec;
use crate::braid::{exp_eta_at, projector_p0prime, projector_p0prime_at};
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::{LambdaExt, LaurentPoly};

type C = Complex64;

/// Default cap on the representation dimension `N^m`.
pub const DEFAULT_DIM_CAP: usize = 4096;

// ---------------------------------------------------------------------------
// Braid words
// ---------------------------------------------------------------------------

/// A word in the braid group on `strands` strands: a sequence of signed
/// generator indices, `+-i` with `1 <= i <= strands - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidInput("need at least one strand".into()));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize > strands - 1 {
                return Err(Error::InvalidInput(format!(
                    "generator {} out of range for {} strands",
                    l, strands
                )));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Parse whitespace-separated signed integers, e.g. `"+1 +1 -2"`.
    pub fn parse(text: &str, strands: usize) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let v: i32 = tok
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad braid letter {:?}", tok)))?;
            letters.push(v);
        }
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// The writhe: sum of generator exponents.
    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|&l| l.signum() as i64).sum()
    }

    /// The inverse word (reversed, signs flipped).
    pub fn inverse(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    /// Concatenation.
    pub fn concat(&self, rhs: &BraidWord) -> Result<Self> {
        if self.strands != rhs.strands {
            return Err(Error::DimensionMismatch("strand counts differ".into()));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&rhs.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    /// Reinterpret on more strands (for stabilization).
    pub fn widen(&self, strands: usize) -> Result<Self> {
        Self::new(strands, self.letters.clone())
    }
}

/// Split a skein triple: `plus = u sigma_i v`, `minus = u sigma_i^{-1} v`,
/// `zero = u v` for some position and positive generator index `i`.
/// Returns the position in `plus`.
pub fn validate_skein_triple(
    plus: &BraidWord,
    minus: &BraidWord,
    zero: &BraidWord,
) -> Result<usize> {
    if plus.strands != minus.strands || plus.strands != zero.strands {
        return Err(Error::WordsNotSkeinTriple("strand counts differ".into()));
    }
    let lp = &plus.letters;
    let lm = &minus.letters;
    let lz = &zero.letters;
    if lp.len() != lm.len() || lp.len() != lz.len() + 1 {
        return Err(Error::WordsNotSkeinTriple(
            "lengths must be (k+1, k+1, k)".into(),
        ));
    }
    for p in 0..lp.len() {
        if lp[p] > 0
            && lm[p] == -lp[p]
            && lp[..p] == lm[..p]
            && lp[p + 1..] == lm[p + 1..]
            && lp[..p] == lz[..p]
            && lp[p + 1..] == lz[p..]
        {
            return Ok(p);
        }
    }
    Err(Error::WordsNotSkeinTriple(
        "no position differs by (sigma, sigma^{-1}, nothing)".into(),
    ))
}

// ---------------------------------------------------------------------------
// Enhanced operator
// ---------------------------------------------------------------------------

/// The symbolic enhancement data: the diagonal `f` together with
/// `a = e^{eta} = -lambda_-` and `b = 1`, exact over the extension ring.
#[derive(Debug, Clone)]
pub struct EnhancedOperator {
    pub spec: AlgebraSpec,
    /// Diagonal entries of `f`: the nonzero diagonal of `P0'`, i.e.
    /// `f_i = q^{-2 rho_i}`.
    pub f: Vec<LaurentPoly>,
}

impl EnhancedOperator {
    pub fn new(spec: &AlgebraSpec) -> Self {
        let f = (1..=spec.dim())
            .map(|i| LaurentPoly::s_pow(-2 * spec.rho2(i)))
            .collect();
        EnhancedOperator {
            spec: spec.clone(),
            f,
        }
    }

    /// `a = e^{eta} = -lambda_- = T + lambda` in the extension ring.
    pub fn a_symbolic(&self) -> LambdaExt {
        &LambdaExt::scalar(self.spec.t().clone(), self.spec.t()) + &self.spec.ext_lambda()
    }

    /// `a^{-1} = e^{-eta} = -lambda_+ = -lambda`.
    pub fn a_inv_symbolic(&self) -> LambdaExt {
        -&self.spec.ext_lambda()
    }

    /// `f (x) f` as a diagonal matrix over Laurent polynomials.
    fn ff_diag(&self) -> Mat<LaurentPoly> {
        let n = self.spec.dim();
        Mat::from_fn(n * n, n * n, |r, c| {
            if r == c {
                &self.f[r / n] * &self.f[r % n]
            } else {
                LaurentPoly::zero()
            }
        })
    }

    /// Exact checks of the defining relations:
    /// (1) `P0' (f x f) = (f x f) P0'` and `tr_2(P0' f x f) = f`,
    /// (2) `R^{+-1} (f x f) = (f x f) R^{+-1}`,
    /// (3) `tr_2(R^{+-1} f x f) = a^{+-1} f`,
    /// plus `a a^{-1} = 1` and `a + a^{-1} = T` in the ring.
    pub fn check_exact(&self) -> bool {
        let spec = &self.spec;
        let n = spec.dim();
        let ff = self.ff_diag();
        let p0 = projector_p0prime(spec);
        if p0.mul(&ff) != ff.mul(&p0) {
            return false;
        }
        let f_mat = Mat::from_fn(n, n, |r, c| {
            if r == c {
                self.f[r].clone()
            } else {
                LaurentPoly::zero()
            }
        });
        if p0.mul(&ff).partial_trace_second(n, n) != f_mat {
            return false;
        }
        let ff_ext = crate::lalg::embed_mat(&ff, spec);
        let f_ext = crate::lalg::embed_mat(&f_mat, spec);
        for sign in [1, -1] {
            let r = crate::braid::braid_matrix(spec, sign).mat;
            if r.mul(&ff_ext) != ff_ext.mul(&r) {
                return false;
            }
            let a_pm = if sign > 0 {
                self.a_symbolic()
            } else {
                self.a_inv_symbolic()
            };
            if r.mul(&ff_ext).partial_trace_second(n, n) != f_ext.scale(&a_pm) {
                return false;
            }
        }
        let a = self.a_symbolic();
        let ai = self.a_inv_symbolic();
        &a * &ai == spec.ext_one() && &a + &ai == LambdaExt::scalar(spec.t().clone(), spec.t())
    }

    /// Numeric instantiation at `q0`.
    pub fn at(&self, q0: C, allow_complex_eta: bool) -> Result<EnhancedNumeric> {
        let spec = &self.spec;
        let exp_eta = exp_eta_at(spec, q0, allow_complex_eta)?;
        let p0 = projector_p0prime_at(spec, q0)?;
        let nn = spec.dim() * spec.dim();
        let mut rhat = Mat::identity(nn, &C::new(0.0, 0.0));
        let mut rhat_inv = rhat.clone();
        for i in 0..nn {
            for j in 0..nn {
                rhat[(i, j)] -= p0[(i, j)] / exp_eta;
                rhat_inv[(i, j)] -= p0[(i, j)] * exp_eta;
            }
        }
        let f = self
            .f
            .iter()
            .map(|p| p.eval_q(q0))
            .collect::<Result<Vec<C>>>()?;
        Ok(EnhancedNumeric {
            n: spec.dim(),
            rhat,
            rhat_inv,
            f,
            a: exp_eta,
        })
    }
}

/// The numeric enhanced operator at a fixed `q0`.
#[derive(Debug, Clone)]
pub struct EnhancedNumeric {
    pub n: usize,
    pub rhat: Mat<C>,
    pub rhat_inv: Mat<C>,
    pub f: Vec<C>,
    /// `a = e^{eta}`.
    pub a: C,
}

/// Residuals of the defining relations for a numeric operator.
#[derive(Debug, Clone, Copy)]
pub struct EybResiduals {
    pub commute: f64,
    pub partial_trace: f64,
}

impl EnhancedNumeric {
    pub fn check(&self) -> EybResiduals {
        let n = self.n;
        let ff = Mat::from_fn(n * n, n * n, |r, c| {
            if r == c {
                self.f[r / n] * self.f[r % n]
            } else {
                C::new(0.0, 0.0)
            }
        });
        let f_mat = Mat::from_fn(
            n,
            n,
            |r, c| if r == c { self.f[r] } else { C::new(0.0, 0.0) },
        );
        let mut commute = 0.0f64;
        let mut partial_trace = 0.0f64;
        for (r, apow) in [(&self.rhat, self.a), (&self.rhat_inv, 1.0 / self.a)] {
            commute = commute.max(r.mul(&ff).max_diff(&ff.mul(r)));
            let tr2 = r.mul(&ff).partial_trace_second(n, n);
            partial_trace = partial_trace.max(tr2.max_diff(&f_mat.scale(&apow)));
        }
        EybResiduals {
            commute,
            partial_trace,
        }
    }
}

// ---------------------------------------------------------------------------
// Braid representation and the invariant
// ---------------------------------------------------------------------------

/// Multiply `m` on the right by
/// `I^{(x) pos} (x) r (x) I^{(x)(strands-pos-2)}` without materializing
/// the Kronecker factor.
fn apply_letter_right(m: &Mat<C>, r: &Mat<C>, pos: usize, n: usize, strands: usize) -> Mat<C> {
    let dim = m.cols();
    let lo = n.pow((strands - 2 - pos) as u32);
    let hi = lo * n;
    let mut out = Mat::zeros(m.rows(), dim, &C::new(0.0, 0.0));
    for c in 0..dim {
        let da = (c / hi) % n;
        let db = (c / lo) % n;
        let base = c - da * hi - db * lo;
        let col_pair = da * n + db;
        for ap in 0..n {
            for bp in 0..n {
                let rv = r[(ap * n + bp, col_pair)];
                if rv.re == 0.0 && rv.im == 0.0 {
                    continue;
                }
                let cp = base + ap * hi + bp * lo;
                for row in 0..m.rows() {
                    let mv = m[(row, cp)];
                    if mv.re != 0.0 || mv.im != 0.0 {
                        out[(row, c)] += mv * rv;
                    }
                }
            }
        }
    }
    out
}

/// The representation `rho_m(beta)` on `V^{(x) m}` as a dense matrix.
/// The empty word gives the identity.
pub fn braid_rep(e: &EnhancedNumeric, word: &BraidWord, cap: usize) -> Result<Mat<C>> {
    let n = e.n;
    let m = word.strands();
    let dim = n
        .checked_pow(m as u32)
        .filter(|&d| d <= cap)
        .ok_or(Error::CapExceeded {
            dim: n.saturating_pow(m.min(12) as u32),
            cap,
        })?;
    let mut rep = Mat::identity(dim, &C::new(0.0, 0.0));
    for &letter in word.letters() {
        let r = if letter > 0 { &e.rhat } else { &e.rhat_inv };
        rep = apply_letter_right(&rep, r, (letter.unsigned_abs() as usize) - 1, n, m);
    }
    Ok(rep)
}

/// The link invariant
/// `P(beta) = a^{-writhe(beta)} tr(rho_m(beta) f^{(x) m})`, contracting
/// the `f` weights as a diagonal vector.
pub fn link_invariant(e: &EnhancedNumeric, word: &BraidWord, cap: usize) -> Result<C> {
    let rep = braid_rep(e, word, cap)?;
    let n = e.n;
    let m = word.strands();
    let mut tr = C::new(0.0, 0.0);
    for c in 0..rep.rows() {
        let mut weight = C::new(1.0, 0.0);
        let mut idx = c;
        for _ in 0..m {
            weight *= e.f[idx % n];
            idx /= n;
        }
        tr += rep[(c, c)] * weight;
    }
    Ok(e.a.powi(-(word.writhe() as i32)) * tr)
}

/// Residual of the skein relation
/// `e^{2 eta} P(L+) - e^{-2 eta} P(L-) = (e^{eta} - e^{-eta}) P(L0)`
/// on a validated skein triple.
pub fn check_skein(
    e: &EnhancedNumeric,
    plus: &BraidWord,
    minus: &BraidWord,
    zero: &BraidWord,
    cap: usize,
) -> Result<f64> {
    validate_skein_triple(plus, minus, zero)?;
    let pp = link_invariant(e, plus, cap)?;
    let pm = link_invariant(e, minus, cap)?;
    let pz = link_invariant(e, zero, cap)?;
    let a2 = e.a * e.a;
    let lhs = a2 * pp - pm / a2;
    let rhs = (e.a - 1.0 / e.a) * pz;
    Ok((lhs - rhs).norm())
}

/// Markov move I: `|P(gamma beta gamma^{-1}) - P(beta)|`.
pub fn markov_conjugation(
    e: &EnhancedNumeric,
    beta: &BraidWord,
    gamma: &BraidWord,
    cap: usize,
) -> Result<f64> {
    let conj = gamma.concat(beta)?.concat(&gamma.inverse())?;
    let a = link_invariant(e, &conj, cap)?;
    let b = link_invariant(e, beta, cap)?;
    Ok((a - b).norm())
}

/// Markov move II: `|P(beta sigma_m^{+-1}) - P(beta)|`, the first word
/// on `m+1` strands.
pub fn markov_stabilization(
    e: &EnhancedNumeric,
    beta: &BraidWord,
    sign: i32,
    cap: usize,
) -> Result<f64> {
    let m = beta.strands();
    let widened = beta.widen(m + 1)?;
    let stab = widened.concat(&BraidWord::new(m + 1, vec![sign.signum() * m as i32])?)?;
    let a = link_invariant(e, &stab, cap)?;
    let b = link_invariant(e, beta, cap)?;
    Ok((a - b).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Family;

    fn ohat3() -> AlgebraSpec {
        AlgebraSpec::new(Family::OHat, 3).unwrap()
    }

    fn num(q: f64) -> EnhancedNumeric {
        EnhancedOperator::new(&ohat3())
            .at(C::new(q, 0.0), false)
            .unwrap()
    }

    #[test]
    fn f_diagonals_per_family() {
        let e3 = EnhancedOperator::new(&ohat3());
        assert_eq!(
            e3.f,
            vec![
                LaurentPoly::q_pow(-1),
                LaurentPoly::one(),
                LaurentPoly::q_pow(1)
            ]
        );
        let p4 = AlgebraSpec::new(Family::PHat, 4).unwrap();
        let e4 = EnhancedOperator::new(&p4);
        assert_eq!(
            e4.f,
            vec![
                LaurentPoly::q_pow(-4),
                LaurentPoly::q_pow(-2),
                LaurentPoly::q_pow(2),
                LaurentPoly::q_pow(4)
            ]
        );
        let o4 = AlgebraSpec::new(Family::OHat, 4).unwrap();
        let e = EnhancedOperator::new(&o4);
        assert_eq!(
            e.f,
            vec![
                LaurentPoly::q_pow(-2),
                LaurentPoly::one(),
                LaurentPoly::one(),
                LaurentPoly::q_pow(2)
            ]
        );
        // tr f = T
        let sum = e3.f.iter().fold(LaurentPoly::zero(), |a, b| &a + b);
        assert_eq!(&sum, ohat3().t());
    }

    #[test]
    fn enhancement_exact_for_three_specs() {
        for (fam, n) in [(Family::OHat, 3), (Family::OHat, 4), (Family::PHat, 4)] {
            let spec = AlgebraSpec::new(fam, n).unwrap();
            assert!(EnhancedOperator::new(&spec).check_exact(), "{}", spec);
        }
    }

    #[test]
    fn a_at_q1() {
        let e = num(1.0);
        let expect = (3.0 + 5.0f64.sqrt()) / 2.0;
        assert!((e.a.re - expect).abs() < 1e-12);
        assert!(e.a.im.abs() < 1e-14);
        let res = e.check();
        assert!(res.commute < 1e-12);
        assert!(res.partial_trace < 1e-12);
    }

    #[test]
    fn braid_rep_identity_and_inverse_pair() {
        let e = num(1.3);
        let eye = Mat::identity(9, &C::new(0.0, 0.0));
        let empty = BraidWord::new(2, vec![]).unwrap();
        assert!(
            braid_rep(&e, &empty, DEFAULT_DIM_CAP)
                .unwrap()
                .max_diff(&eye)
                < 1e-14
        );
        let pair = BraidWord::new(2, vec![1, -1]).unwrap();
        assert!(
            braid_rep(&e, &pair, DEFAULT_DIM_CAP)
                .unwrap()
                .max_diff(&eye)
                < 1e-12
        );
    }

    #[test]
    fn braid_relation_in_rep() {
        let e = num(1.6);
        let lhs = braid_rep(
            &e,
            &BraidWord::new(3, vec![1, 2, 1]).unwrap(),
            DEFAULT_DIM_CAP,
        )
        .unwrap();
        let rhs = braid_rep(
            &e,
            &BraidWord::new(3, vec![2, 1, 2]).unwrap(),
            DEFAULT_DIM_CAP,
        )
        .unwrap();
        assert!(lhs.max_diff(&rhs) < 1e-12);
    }

    #[test]
    fn rep_matches_plain_kron_products() {
        // oracle: materialize the Kronecker factors and multiply densely
        let e = num(1.4);
        let eye3 = Mat::identity(3, &C::new(0.0, 0.0));
        let g1 = e.rhat.kron(&eye3);
        let g2 = eye3.kron(&e.rhat_inv);
        let want = g1.mul(&g2).mul(&g1);
        let got = braid_rep(
            &e,
            &BraidWord::new(3, vec![1, -2, 1]).unwrap(),
            DEFAULT_DIM_CAP,
        )
        .unwrap();
        assert!(got.max_diff(&want) < 1e-12);
    }

    #[test]
    fn unknot_and_unlink_invariants() {
        let q0 = C::new(1.0, 0.0);
        let e = num(1.0);
        let t = ohat3().t().eval_q(q0).unwrap();
        let one_strand = BraidWord::new(1, vec![]).unwrap();
        let p1 = link_invariant(&e, &one_strand, DEFAULT_DIM_CAP).unwrap();
        assert!((p1 - t).norm() < 1e-12);
        let two_unlink = BraidWord::new(2, vec![]).unwrap();
        let p2 = link_invariant(&e, &two_unlink, DEFAULT_DIM_CAP).unwrap();
        assert!((p2 - t * t).norm() < 1e-12);
        // stabilized unknot stays T
        let stab = BraidWord::new(2, vec![1]).unwrap();
        let ps = link_invariant(&e, &stab, DEFAULT_DIM_CAP).unwrap();
        assert!((ps - t).norm() < 1e-12);
    }

    #[test]
    fn hopf_link_against_trace_oracle_and_closed_form() {
        // oracle: direct 9x9 matrix square and weighted trace
        let e = num(1.0);
        let spec = ohat3();
        let q0 = C::new(1.0, 0.0);
        let word = BraidWord::new(2, vec![1, 1]).unwrap();
        let p = link_invariant(&e, &word, DEFAULT_DIM_CAP).unwrap();

        let rsq = e.rhat.mul(&e.rhat);
        let mut tr = C::new(0.0, 0.0);
        for i in 0..3 {
            for k in 0..3 {
                tr += rsq[(i * 3 + k, i * 3 + k)] * e.f[i] * e.f[k];
            }
        }
        let oracle = e.a.powi(-2) * tr;
        assert!((p - oracle).norm() < 1e-12);

        // closed form a^{-2}(T^2 + lambda_+(1 - lambda_+^2) T) from
        // R^2 = I + lambda_+(1 - lambda_+^2) P0'
        let t = spec.t().eval_q(q0).unwrap();
        let lam = spec.lambda_roots_at(q0).unwrap().plus;
        let closed = e.a.powi(-2) * (t * t + lam * (1.0 - lam * lam) * t);
        assert!((p - closed).norm() < 1e-12);
        // frozen value at q = 1: 189 - 84 sqrt(5) = 1.1702898...
        assert!((p.re - (189.0 - 84.0 * 5.0f64.sqrt())).abs() < 1e-9);
        assert!(p.im.abs() < 1e-12);
        // nontrivial at q = 1: differs from the unlink value T^2
        assert!((p - t * t).norm() > 1.0);
    }

    #[test]
    fn skein_triples() {
        let e = num(1.2);
        let trefoil = BraidWord::new(2, vec![1, 1, 1]).unwrap();
        let unknot = BraidWord::new(2, vec![1, -1, 1]).unwrap();
        let hopf = BraidWord::new(2, vec![1, 1]).unwrap();
        let res = check_skein(&e, &trefoil, &unknot, &hopf, DEFAULT_DIM_CAP).unwrap();
        assert!(res < 1e-9, "residual {}", res);

        let plus = BraidWord::new(2, vec![1]).unwrap();
        let minus = BraidWord::new(2, vec![-1]).unwrap();
        let zero = BraidWord::new(2, vec![]).unwrap();
        let res = check_skein(&e, &plus, &minus, &zero, DEFAULT_DIM_CAP).unwrap();
        assert!(res < 1e-9, "residual {}", res);

        // not a triple: generator mismatch
        let bad = BraidWord::new(3, vec![2]).unwrap();
        let m3 = BraidWord::new(3, vec![-1]).unwrap();
        let z3 = BraidWord::new(3, vec![]).unwrap();
        assert!(matches!(
            check_skein(&e, &bad, &m3, &z3, DEFAULT_DIM_CAP),
            Err(Error::WordsNotSkeinTriple(_))
        ));
    }

    #[test]
    fn skein_degenerates_at_triangular_root() {
        // q = e^{i pi/3}: eta = 0, overcrossing equals undercrossing
        let spec = ohat3();
        let q_root = C::from_polar(1.0, std::f64::consts::PI / 3.0);
        let e = EnhancedOperator::new(&spec).at(q_root, true).unwrap();
        assert!((e.a - C::new(1.0, 0.0)).norm() < 1e-9);
        let plus = BraidWord::new(2, vec![1, 1, 1]).unwrap();
        let minus = BraidWord::new(2, vec![1, -1, 1]).unwrap();
        let pp = link_invariant(&e, &plus, DEFAULT_DIM_CAP).unwrap();
        let pm = link_invariant(&e, &minus, DEFAULT_DIM_CAP).unwrap();
        assert!((pp - pm).norm() < 1e-9);
    }

    #[test]
    fn markov_moves() {
        let e = num(1.5);
        // conjugation: beta = T1^2, gamma = T1
        let beta = BraidWord::new(2, vec![1, 1]).unwrap();
        let gamma = BraidWord::new(2, vec![1]).unwrap();
        assert!(markov_conjugation(&e, &beta, &gamma, DEFAULT_DIM_CAP).unwrap() < 1e-9);
        // stabilization of the empty 1-braid stays T
        let empty1 = BraidWord::new(1, vec![]).unwrap();
        assert!(markov_stabilization(&e, &empty1, 1, DEFAULT_DIM_CAP).unwrap() < 1e-9);
        // trefoil stabilized with T2^{-1} on 3 strands
        let tre = BraidWord::new(2, vec![1, 1, 1]).unwrap();
        assert!(markov_stabilization(&e, &tre, -1, DEFAULT_DIM_CAP).unwrap() < 1e-9);
    }

    #[test]
    fn cap_is_enforced() {
        let e = num(1.1);
        let word = BraidWord::new(8, vec![1]).unwrap();
        assert!(matches!(
            braid_rep(&e, &word, 4096),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn word_validation() {
        assert!(BraidWord::new(2, vec![2]).is_err());
        assert!(BraidWord::new(2, vec![0]).is_err());
        assert!(BraidWord::parse("+1 -1 +1", 2).is_ok());
        assert!(BraidWord::parse("x", 2).is_err());
        assert_eq!(BraidWord::parse("+1 +1 -2", 3).unwrap().writhe(), 1);
    }
}
