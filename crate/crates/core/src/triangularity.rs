//! The triangularity condition `R^2 = I`, reached exactly when
//! `eta = 0`, i.e. `T(q) = 2`. Written out this is a Laurent-polynomial
//! equation for `q` whose degree drops after the substitution
//! `Y = q^2 + q^{-2}` (even orthogonal and symplectic cases) or
//! `z = q + q^{-1}` (odd orthogonal case). This module builds the
//! reduced integer polynomials, solves them numerically and classifies
//! the lifted `q` values.

use std::fmt;

use num::bigint::BigInt;
use num::{BigRational, One, Signed, ToPrimitive, Zero};
use num_complex::Complex64;

use crate::algebra::{AlgebraSpec, Family};
use crate::braid::projector_p0prime_at;
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::LaurentPoly;

type C = Complex64;

// ---------------------------------------------------------------------------
// Integer polynomials in the reduced variable
// ---------------------------------------------------------------------------

/// Dense univariate polynomial with integer coefficients, ascending
/// degree order, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly::default()
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn shift_const(&self, c: i64) -> Self {
        let mut coeffs = self.coeffs.clone();
        if coeffs.is_empty() {
            coeffs.push(BigInt::from(c));
        } else {
            coeffs[0] += BigInt::from(c);
        }
        Self::new(coeffs)
    }

    /// Evaluate at a complex point (Horner).
    pub fn eval(&self, x: C) -> C {
        let mut acc = C::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + C::new(c.to_f64().expect("coefficient out of range"), 0.0);
        }
        acc
    }

    /// Compose with a Laurent polynomial: `self(sub)`.
    pub fn compose_laurent(&self, sub: &LaurentPoly) -> LaurentPoly {
        let mut acc = LaurentPoly::zero();
        for c in self.coeffs.iter().rev() {
            let c = LaurentPoly::monomial(0, BigRational::from_integer(c.clone()));
            acc = &(&acc * sub) + &c;
        }
        acc
    }

    /// Complex coefficient vector, ascending.
    pub fn to_complex(&self) -> Vec<C> {
        self.coeffs
            .iter()
            .map(|c| C::new(c.to_f64().expect("coefficient out of range"), 0.0))
            .collect()
    }

    /// Render with a chosen variable name.
    pub fn display_with(&self, var: &str) -> String {
        format!("{}", self).replace('x', var)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if !mag.is_one() || k == 0 {
                write!(f, "{}", mag)?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{}", k)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

// ---------------------------------------------------------------------------
// Reduction polynomials
// ---------------------------------------------------------------------------

fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `S_n(Y)` by the closed binomial form: coefficients
/// `(-1)^r C(n-r, r)` on `Y^{n-2r}` and `(-1)^r C(n-r-1, r)` on
/// `Y^{n-2r-1}`, with the tail replaced by `c_1 Y + c_0` where
/// `c_0 = -2` iff `n = 2,3 (mod 4)` (else 0) and
/// `c_1 = (-1)^{s-1} s` for `n = 2s`, `(-1)^s (s+1)` for `n = 2s+1`.
pub fn sn_polynomial(n: usize) -> IntPoly {
    assert!(n >= 1);
    if n == 1 {
        return IntPoly::from_i64(&[0, 1]);
    }
    let n_i = n as i64;
    let mut coeffs = vec![BigInt::zero(); n + 1];
    let mut r = 0i64;
    loop {
        let sign = if r % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        let e1 = n_i - 2 * r;
        if e1 >= 2 {
            coeffs[e1 as usize] = &sign * binomial(n_i - r, r);
        }
        let e2 = n_i - 2 * r - 1;
        if e2 >= 2 {
            coeffs[e2 as usize] = &sign * binomial(n_i - r - 1, r);
        }
        if e1 < 2 && e2 < 2 {
            break;
        }
        r += 1;
    }
    coeffs[1] = if n_i % 2 == 0 {
        let s = n_i / 2;
        BigInt::from(if s % 2 == 1 { s } else { -s })
    } else {
        let s = (n_i - 1) / 2;
        BigInt::from(if s % 2 == 0 { s + 1 } else { -(s + 1) })
    };
    coeffs[0] = if n_i % 4 == 2 || n_i % 4 == 3 {
        BigInt::from(-2)
    } else {
        BigInt::zero()
    };
    IntPoly::new(coeffs)
}

/// `S_n(Y)` via the recursion `S_{n+1} = Y S_n - S_{n-1} + Y - 2`,
/// `S_0 = 0`, `S_1 = Y`.
pub fn sn_polynomial_by_recursion(n: usize) -> IntPoly {
    let y = IntPoly::from_i64(&[0, 1]);
    let y_minus_2 = IntPoly::from_i64(&[-2, 1]);
    let mut prev = IntPoly::zero();
    let mut cur = y.clone();
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = y.mul(&cur).sub(&prev).add(&y_minus_2);
        prev = cur;
        cur = next;
    }
    cur
}

/// `Sigma_{2m-1}(z)`: the odd-power sum
/// `sum_{j=1}^{m} (q^{2j-1} + q^{-2j+1})` rewritten in `z = q + q^{-1}`,
/// by the closed binomial form `sum_r (-1)^r C(2m-r-1, r) z^{2m-2r-1}`.
pub fn sigma_polynomial(m: usize) -> IntPoly {
    assert!(m >= 1);
    let mm = m as i64;
    let mut coeffs = vec![BigInt::zero(); 2 * m];
    for r in 0..=(mm - 1) {
        let sign = if r % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        let e = 2 * mm - 2 * r - 1;
        coeffs[e as usize] = &sign * binomial(2 * mm - r - 1, r);
    }
    IntPoly::new(coeffs)
}

/// `Sigma_{2m-1}(z)` via the two-term recursion for `C_k = q^k + q^{-k}`.
pub fn sigma_polynomial_by_recursion(m: usize) -> IntPoly {
    let z = IntPoly::from_i64(&[0, 1]);
    let mut c_prev = IntPoly::from_i64(&[2]); // C_0
    let mut c_cur = z.clone(); // C_1
    let mut acc = IntPoly::zero();
    for k in 1..=(2 * m - 1) {
        if k % 2 == 1 {
            acc = acc.add(&c_cur);
        }
        let next = z.mul(&c_cur).sub(&c_prev);
        c_prev = c_cur;
        c_cur = next;
    }
    acc
}

// ---------------------------------------------------------------------------
// The triangularity problem
// ---------------------------------------------------------------------------

/// Which reduction applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionCase {
    /// `ohat(2n+2)`: `S_n(Y) = 0`.
    EvenOrtho { n: usize },
    /// `ohat(2m+1)`: `Sigma_{2m-1}(z) = 1`.
    OddOrtho { m: usize },
    /// `phat(2n)`: `S_n(Y) = 2`.
    Symplectic { n: usize },
}

impl ReductionCase {
    pub fn variable(&self) -> &'static str {
        match self {
            ReductionCase::OddOrtho { .. } => "z",
            _ => "Y",
        }
    }
}

/// The `T(q) = 2` equation for one spec: the raw Laurent-polynomial form
/// and its reduced univariate form.
#[derive(Debug, Clone)]
pub struct TriangularityProblem {
    pub spec: AlgebraSpec,
    /// `LHS - RHS` of the defining equation as a Laurent polynomial in
    /// `q` (equal to `T(q) - 2`).
    pub raw: LaurentPoly,
    /// Reduced polynomial in `Y` or `z`.
    pub reduced: IntPoly,
    /// The reduced equation is `reduced = target`.
    pub target: i64,
    pub case: ReductionCase,
}

/// Build the raw and reduced triangularity equations for a spec.
pub fn build_problem(spec: &AlgebraSpec) -> TriangularityProblem {
    let n = spec.dim();
    let raw = match spec.family() {
        // q^{N-2} + q^{N-4} + ... + q^{-N+2} - 1
        Family::OHat => {
            let mut acc = LaurentPoly::zero();
            let top = n as i64 - 2;
            let mut k = top;
            while k >= -top {
                acc = &acc + &LaurentPoly::q_pow(k);
                k -= 2;
            }
            &acc - &LaurentPoly::one()
        }
        // q^N + q^{N-2} + ... + q^{-N} - 3
        Family::PHat => {
            let mut acc = LaurentPoly::zero();
            let mut k = n as i64;
            while k >= -(n as i64) {
                acc = &acc + &LaurentPoly::q_pow(k);
                k -= 2;
            }
            &acc - &LaurentPoly::int(3)
        }
    };
    let (case, reduced, target) = match spec.family() {
        Family::OHat if n.is_multiple_of(2) => {
            let half = (n - 2) / 2;
            (ReductionCase::EvenOrtho { n: half }, sn_polynomial(half), 0)
        }
        Family::OHat => {
            let m = (n - 1) / 2;
            (ReductionCase::OddOrtho { m }, sigma_polynomial(m), 1)
        }
        Family::PHat => {
            let half = n / 2;
            (
                ReductionCase::Symplectic { n: half },
                sn_polynomial(half),
                2,
            )
        }
    };
    TriangularityProblem {
        spec: spec.clone(),
        raw,
        reduced,
        target,
        case,
    }
}

impl TriangularityProblem {
    /// The substituted variable as a Laurent polynomial in `q`.
    pub fn variable_in_q(&self) -> LaurentPoly {
        match self.case {
            // Y = q^2 + q^{-2}
            ReductionCase::EvenOrtho { .. } | ReductionCase::Symplectic { .. } => {
                &LaurentPoly::q_pow(2) + &LaurentPoly::q_pow(-2)
            }
            // z = q + q^{-1}
            ReductionCase::OddOrtho { .. } => &LaurentPoly::q_pow(1) + &LaurentPoly::q_pow(-1),
        }
    }

    /// `reduced(variable(q)) - target`, which must equal `raw` exactly.
    pub fn back_substitute(&self) -> LaurentPoly {
        let sub = self.variable_in_q();
        &self.reduced.compose_laurent(&sub) - &LaurentPoly::int(self.target)
    }

    /// Exact check that the reduction is faithful.
    pub fn reduction_is_exact(&self) -> bool {
        self.back_substitute() == self.raw
    }
}

// ---------------------------------------------------------------------------
// Root finding (Aberth simultaneous iteration + companion cross-check)
// ---------------------------------------------------------------------------

fn horner_both(coeffs: &[C], x: C) -> (C, C) {
    let mut p = C::new(0.0, 0.0);
    let mut dp = C::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

/// All complex roots by Aberth-Ehrlich simultaneous iteration.
/// `coeffs` ascending with nonzero leading coefficient, degree >= 1.
pub fn aberth_roots(coeffs: &[C]) -> Result<Vec<C>> {
    let deg = coeffs.len() - 1;
    assert!(deg >= 1 && coeffs[deg].norm() > 0.0);
    let lead = coeffs[deg];
    let radius = 1.0
        + coeffs[..deg]
            .iter()
            .map(|c| (c / lead).norm())
            .fold(0.0, f64::max);
    let mut z: Vec<C> = (0..deg)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / deg as f64 + 0.43;
            C::from_polar(radius * 0.7, angle)
        })
        .collect();
    for _ in 0..400 {
        let mut max_step = 0.0f64;
        let mut next = z.clone();
        for k in 0..deg {
            let (p, dp) = horner_both(coeffs, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = if dp.norm() > 0.0 { p / dp } else { p };
            let mut sum = C::new(0.0, 0.0);
            for (j, zj) in z.iter().enumerate() {
                if j != k {
                    sum += 1.0 / (z[k] - zj);
                }
            }
            let denom = C::new(1.0, 0.0) - ratio * sum;
            let step = if denom.norm() > 1e-300 {
                ratio / denom
            } else {
                ratio
            };
            next[k] = z[k] - step;
            max_step = max_step.max(step.norm());
        }
        z = next;
        if max_step < 1e-14 * (1.0 + radius) {
            return Ok(z);
        }
    }
    Err(Error::NonConvergence(
        "Aberth iteration budget exhausted".into(),
    ))
}

/// Newton-polish a root of `coeffs`.
fn newton_polish(coeffs: &[C], mut z: C) -> C {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max).max(1.0);
    for _ in 0..50 {
        let (p, dp) = horner_both(coeffs, z);
        if p.norm() < 1e-13 * scale || dp.norm() == 0.0 {
            break;
        }
        z -= p / dp;
    }
    z
}

/// Roots as eigenvalues of the companion matrix (independent route).
pub fn companion_roots(coeffs: &[C]) -> Result<Vec<C>> {
    let deg = coeffs.len() - 1;
    let lead = coeffs[deg];
    let m = Mat::from_fn(deg, deg, |i, j| {
        if j == deg - 1 {
            -coeffs[i] / lead
        } else if i == j + 1 {
            C::new(1.0, 0.0)
        } else {
            C::new(0.0, 0.0)
        }
    });
    crate::numeric::eigenvalues(&m)
}

/// Worst distance between two root multisets under greedy matching.
fn multiset_gap(a: &[C], b: &[C]) -> f64 {
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for x in a {
        let mut best = f64::INFINITY;
        let mut best_j = 0;
        for (j, y) in b.iter().enumerate() {
            if !used[j] && (x - y).norm() < best {
                best = (x - y).norm();
                best_j = j;
            }
        }
        used[best_j] = true;
        worst = worst.max(best);
    }
    worst
}

/// Classification of a lifted `q` root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootKind {
    /// `q^k = 1` for minimal `k` below the search bound.
    RootOfUnity(u32),
    /// On the unit circle but no small order found.
    UnitModulus,
    OffCircle,
}

impl fmt::Display for RootKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootKind::RootOfUnity(k) => write!(f, "root of unity (order {})", k),
            RootKind::UnitModulus => write!(f, "unit modulus"),
            RootKind::OffCircle => write!(f, "off circle"),
        }
    }
}

/// A `q` value solving the triangularity equation.
#[derive(Debug, Clone, PartialEq)]
pub struct RootClass {
    pub value: C,
    pub kind: RootKind,
    /// `|raw(q)| = |T(q) - 2|` at the root.
    pub residual: f64,
}

/// Minimal `k <= bound` with `q^k = 1` within `tol`.
pub fn unity_order(q: C, bound: u32, tol: f64) -> Option<u32> {
    let mut p = C::new(1.0, 0.0);
    for k in 1..=bound {
        p *= q;
        if (p - C::new(1.0, 0.0)).norm() < tol {
            return Some(k);
        }
    }
    None
}

pub fn classify_root(q: C, raw_residual: f64) -> RootClass {
    let kind = match unity_order(q, 1024, 1e-8) {
        Some(k) => RootKind::RootOfUnity(k),
        None if (q.norm() - 1.0).abs() < 1e-8 => RootKind::UnitModulus,
        None => RootKind::OffCircle,
    };
    RootClass {
        value: q,
        kind,
        residual: raw_residual,
    }
}

/// Full root report for one triangularity problem.
#[derive(Debug, Clone)]
pub struct SolveReport {
    /// Roots of the reduced polynomial (in `Y` or `z`).
    pub reduced_roots: Vec<C>,
    /// Worst distance between the Aberth roots and the companion-matrix
    /// eigenvalues.
    pub companion_gap: f64,
    /// Lifted and classified `q` roots.
    pub roots: Vec<RootClass>,
}

/// Solve `reduced = target`, lift every reduced root to `q` through the
/// quadratic change of variables (both branches), and classify.
pub fn solve_roots(problem: &TriangularityProblem) -> Result<SolveReport> {
    let poly = problem.reduced.shift_const(-problem.target);
    let coeffs = poly.to_complex();
    if coeffs.len() < 2 {
        return Err(Error::NonConvergence(
            "reduced polynomial is constant".into(),
        ));
    }
    let mut reduced_roots = aberth_roots(&coeffs)?;
    for r in reduced_roots.iter_mut() {
        *r = newton_polish(&coeffs, *r);
    }
    reduced_roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let companion = companion_roots(&coeffs)?;
    let companion_gap = multiset_gap(&reduced_roots, &companion);
    if companion_gap > 1e-6 {
        return Err(Error::NonConvergence(format!(
            "companion cross-check disagrees by {companion_gap:e}"
        )));
    }

    let mut qs: Vec<C> = Vec::new();
    let push_unique = |q: C, qs: &mut Vec<C>| {
        if !qs.iter().any(|x| (x - q).norm() < 1e-8) {
            qs.push(q);
        }
    };
    for &v in &reduced_roots {
        let disc = (v * v - 4.0).sqrt();
        match problem.case {
            // Y = p + 1/p with p = q^2: q = +-sqrt(p), both p branches
            ReductionCase::EvenOrtho { .. } | ReductionCase::Symplectic { .. } => {
                for p in [(v + disc) / 2.0, (v - disc) / 2.0] {
                    let q = p.sqrt();
                    push_unique(q, &mut qs);
                    push_unique(-q, &mut qs);
                }
            }
            // z = q + 1/q: q = (z +- sqrt(z^2-4))/2
            ReductionCase::OddOrtho { .. } => {
                push_unique((v + disc) / 2.0, &mut qs);
                push_unique((v - disc) / 2.0, &mut qs);
            }
        }
    }
    qs.sort_by(|a, b| b.im.total_cmp(&a.im).then(a.re.total_cmp(&b.re)));
    let roots = qs
        .into_iter()
        .map(|q| {
            let res = problem
                .raw
                .eval_q(q)
                .map(|v| v.norm())
                .unwrap_or(f64::INFINITY);
            classify_root(q, res)
        })
        .collect();
    Ok(SolveReport {
        reduced_roots,
        companion_gap,
        roots,
    })
}

// ---------------------------------------------------------------------------
// Direct verification of R^2 = I at a given q
// ---------------------------------------------------------------------------

/// Residuals of the triangular braid matrix at `q0`: builds
/// `R = I - P0'(q0)` (the `lambda = -1` matrix that the root condition
/// makes both involutive and braid-compatible) and returns
/// `(max|R^2 - I|, braid-equation residual)`.
pub fn verify_triangular(spec: &AlgebraSpec, q0: C) -> Result<(f64, f64)> {
    let nn = spec.dim() * spec.dim();
    let p0 = projector_p0prime_at(spec, q0)?;
    let mut r = Mat::identity(nn, &C::new(0.0, 0.0));
    for i in 0..nn {
        for j in 0..nn {
            r[(i, j)] -= p0[(i, j)];
        }
    }
    let eye = Mat::identity(nn, &C::new(0.0, 0.0));
    let rsq = r.mul(&r).max_diff(&eye);
    let braid = crate::braid::braid_equation_difference(&r, spec.dim())?.max_norm();
    Ok((rsq, braid))
}
