//! The quadratic extension ring adjoining `lambda` with
//! `lambda^2 = -T*lambda - 1`.
//!
//! `lambda` stands for the root `lambda_+ = -e^{-eta}` of
//! `lambda + lambda^{-1} + T = 0`; the other root is
//! `lambda_- = lambda^{-1} = -T - lambda`. Every element is `a + b*lambda`
//! with Laurent-polynomial `a`, `b`; the modulus `T` travels with the
//! element, so values from different algebra specs cannot be mixed
//! silently.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::{LaurentPoly, Scalar};
use crate::error::Result;

/// `a + b*lambda` over [`LaurentPoly`], with modulus `T` attached.
#[derive(Clone, PartialEq)]
pub struct LambdaExt {
    a: LaurentPoly,
    b: LaurentPoly,
    t: LaurentPoly,
}

impl LambdaExt {
    pub fn new(a: LaurentPoly, b: LaurentPoly, t: LaurentPoly) -> Self {
        LambdaExt { a, b, t }
    }

    /// Embed a plain Laurent polynomial.
    pub fn scalar(a: LaurentPoly, t: &LaurentPoly) -> Self {
        LambdaExt {
            a,
            b: LaurentPoly::zero(),
            t: t.clone(),
        }
    }

    pub fn zero(t: &LaurentPoly) -> Self {
        Self::scalar(LaurentPoly::zero(), t)
    }

    pub fn one(t: &LaurentPoly) -> Self {
        Self::scalar(LaurentPoly::one(), t)
    }

    /// The formal generator `lambda` (the root `lambda_+`).
    pub fn lambda(t: &LaurentPoly) -> Self {
        LambdaExt {
            a: LaurentPoly::zero(),
            b: LaurentPoly::one(),
            t: t.clone(),
        }
    }

    /// `lambda^{-1} = -T - lambda` (the root `lambda_-`).
    pub fn lambda_inv(t: &LaurentPoly) -> Self {
        LambdaExt {
            a: -t,
            b: LaurentPoly::int(-1),
            t: t.clone(),
        }
    }

    pub fn scalar_part(&self) -> &LaurentPoly {
        &self.a
    }

    pub fn lambda_part(&self) -> &LaurentPoly {
        &self.b
    }

    pub fn modulus(&self) -> &LaurentPoly {
        &self.t
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// The involutive ring map `lambda -> lambda^{-1}`:
    /// `a + b*lambda -> (a - b*T) - b*lambda`.
    pub fn conj_swap(&self) -> Self {
        LambdaExt {
            a: &self.a - &(&self.b * &self.t),
            b: -&self.b,
            t: self.t.clone(),
        }
    }

    /// Apply `q -> q^{-1}` to the coefficients (`lambda` is invariant;
    /// the modulus of this class is palindromic so it is unchanged).
    pub fn bar(&self) -> Self {
        LambdaExt {
            a: self.a.bar(),
            b: self.b.bar(),
            t: self.t.bar(),
        }
    }

    /// Numeric value at `s = s0` with `lambda -> lambda_val`.
    pub fn eval_s(&self, s0: Complex64, lambda_val: Complex64) -> Result<Complex64> {
        Ok(self.a.eval_s(s0)? + self.b.eval_s(s0)? * lambda_val)
    }

    fn assert_same_modulus(&self, rhs: &Self) {
        debug_assert!(
            self.t == rhs.t
                || self.b.is_zero() && self.a.is_zero()
                || rhs.b.is_zero() && rhs.a.is_zero(),
            "mixed lambda moduli: {} vs {}",
            self.t,
            rhs.t
        );
    }
}

impl Add for &LambdaExt {
    type Output = LambdaExt;
    fn add(self, rhs: &LambdaExt) -> LambdaExt {
        self.assert_same_modulus(rhs);
        LambdaExt {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            t: self.t.clone(),
        }
    }
}

impl Sub for &LambdaExt {
    type Output = LambdaExt;
    fn sub(self, rhs: &LambdaExt) -> LambdaExt {
        self.assert_same_modulus(rhs);
        LambdaExt {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            t: self.t.clone(),
        }
    }
}

impl Mul for &LambdaExt {
    type Output = LambdaExt;
    fn mul(self, rhs: &LambdaExt) -> LambdaExt {
        self.assert_same_modulus(rhs);
        // (a + b*l)(a' + b'*l) with l^2 = -T*l - 1
        let bb = &self.b * &rhs.b;
        LambdaExt {
            a: &(&self.a * &rhs.a) - &bb,
            b: &(&(&self.a * &rhs.b) + &(&self.b * &rhs.a)) - &(&bb * &self.t),
            t: self.t.clone(),
        }
    }
}

impl Neg for &LambdaExt {
    type Output = LambdaExt;
    fn neg(self) -> LambdaExt {
        LambdaExt {
            a: -&self.a,
            b: -&self.b,
            t: self.t.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for LambdaExt {
            type Output = LambdaExt;
            fn $method(self, rhs: LambdaExt) -> LambdaExt {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LambdaExt {
    type Output = LambdaExt;
    fn neg(self) -> LambdaExt {
        -&self
    }
}

impl Scalar for LambdaExt {
    fn zero_like(&self) -> Self {
        LambdaExt::zero(&self.t)
    }
    fn one_like(&self) -> Self {
        LambdaExt::one(&self.t)
    }
    fn is_zero(&self) -> bool {
        LambdaExt::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl fmt::Display for LambdaExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "({})*L", self.b),
            (false, false) => write!(f, "{} + ({})*L", self.a, self.b),
        }
    }
}

impl fmt::Debug for LambdaExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Numeric roots of `lambda + lambda^{-1} + T = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaRoots {
    /// `lambda_+ = -e^{-eta}` (magnitude <= 1 branch).
    pub plus: Complex64,
    /// `lambda_- = -e^{eta}` (magnitude >= 1 branch).
    pub minus: Complex64,
    /// `e^{eta} = (T + sqrt(T^2-4))/2` on the `|e^eta| >= 1` branch.
    pub exp_eta: Complex64,
    /// `T^2 = 4`: the roots coincide.
    pub degenerate: bool,
}

/// Solve `lambda^2 + T*lambda + 1 = 0` numerically.
///
/// The branch is fixed so that `e^{eta} = (T + sqrt(T^2-4))/2` has
/// `|e^{eta}| >= 1`; for real `T >= 2` this makes `eta` real and
/// non-negative. `lambda_+ * lambda_- = 1` and
/// `lambda_+ + lambda_- = -T` hold by construction.
pub fn lambda_numeric_roots(t_value: Complex64) -> LambdaRoots {
    let disc = t_value * t_value - 4.0;
    let root = disc.sqrt();
    let mut exp_eta = (t_value + root) / 2.0;
    let mut other = (t_value - root) / 2.0;
    if exp_eta.norm() < other.norm() {
        std::mem::swap(&mut exp_eta, &mut other);
    }
    let degenerate = disc.norm() < 1e-12;
    LambdaRoots {
        plus: -1.0 / exp_eta,
        minus: -exp_eta,
        exp_eta,
        degenerate,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t_ohat3() -> LaurentPoly {
        // q + 1 + q^{-1}
        &(&LaurentPoly::q_pow(1) + &LaurentPoly::one()) + &LaurentPoly::q_pow(-1)
    }

    #[test]
    fn lambda_times_inverse_is_one() {
        let t = t_ohat3();
        let l = LambdaExt::lambda(&t);
        let linv = LambdaExt::lambda_inv(&t);
        assert_eq!(&l * &linv, LambdaExt::one(&t));
    }

    #[test]
    fn conj_swap_is_involutive_ring_map() {
        let t = t_ohat3();
        let x = LambdaExt::new(LaurentPoly::s_pow(1), LaurentPoly::int(2), t.clone());
        let y = LambdaExt::new(LaurentPoly::int(-3), LaurentPoly::s_pow(-2), t.clone());
        assert_eq!(x.conj_swap().conj_swap(), x);
        // ring homomorphism on a product
        assert_eq!((&x * &y).conj_swap(), &x.conj_swap() * &y.conj_swap());
        // lambda maps to lambda^{-1}
        assert_eq!(LambdaExt::lambda(&t).conj_swap(), LambdaExt::lambda_inv(&t));
    }

    #[test]
    fn numeric_roots_at_t3() {
        // a^{+-1} = 3/2 +- sqrt(5)/2, lambda_+- = -a^{-+1}
        let r = lambda_numeric_roots(Complex64::new(3.0, 0.0));
        assert!(!r.degenerate);
        assert!((r.plus.re - (-0.3819660113)).abs() < 1e-9);
        assert!((r.minus.re - (-2.6180339887)).abs() < 1e-9);
        assert!((r.plus * r.minus - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((r.plus + r.minus + 3.0).norm() < 1e-12);
    }

    #[test]
    fn numeric_roots_degenerate_t2() {
        let r = lambda_numeric_roots(Complex64::new(2.0, 0.0));
        assert!(r.degenerate);
        assert!((r.plus - Complex64::new(-1.0, 0.0)).norm() < 1e-6);
        assert!((r.minus - Complex64::new(-1.0, 0.0)).norm() < 1e-6);
    }

    #[test]
    fn numeric_roots_q1_general_n() {
        // at q = 1, T = N: lambda_+ = -(N - sqrt(N^2-4))/2
        for n in 3..=8 {
            let nf = n as f64;
            let r = lambda_numeric_roots(Complex64::new(nf, 0.0));
            let expect = -(nf - (nf * nf - 4.0).sqrt()) / 2.0;
            assert!((r.plus.re - expect).abs() < 1e-12, "N={}", n);
            assert!((r.exp_eta.re + r.exp_eta.re.recip() - nf).abs() < 1e-12);
        }
    }

    #[test]
    fn eval_is_ring_homomorphism() {
        let t = t_ohat3();
        let s0 = Complex64::new(1.3, 0.0);
        let t0 = t.eval_s(s0).unwrap();
        let roots = lambda_numeric_roots(t0);
        let x = LambdaExt::new(LaurentPoly::s_pow(2), LaurentPoly::int(3), t.clone());
        let y = LambdaExt::new(
            LaurentPoly::rational(1, 2),
            LaurentPoly::s_pow(-1),
            t.clone(),
        );
        let lhs = (&x * &y).eval_s(s0, roots.plus).unwrap();
        let rhs = x.eval_s(s0, roots.plus).unwrap() * y.eval_s(s0, roots.plus).unwrap();
        assert!((lhs - rhs).norm() < 1e-10);
    }

    mod props {
        use super::*;
        use num::BigRational;
        use proptest::prelude::*;

        fn arb_ext() -> impl Strategy<Value = LambdaExt> {
            let poly = || {
                proptest::collection::vec((-6i64..=6, -7i64..=7, 1i64..=7), 0..4).prop_map(
                    |terms| {
                        terms
                            .into_iter()
                            .fold(LaurentPoly::zero(), |acc, (e, n, d)| {
                                &acc + &LaurentPoly::monomial(
                                    e,
                                    BigRational::new(n.into(), d.into()),
                                )
                            })
                    },
                )
            };
            (poly(), poly()).prop_map(|(a, b)| LambdaExt::new(a, b, t_ohat3()))
        }

        proptest! {
            #[test]
            fn ring_axioms(x in arb_ext(), y in arb_ext(), z in arb_ext()) {
                prop_assert_eq!(&x + &y, &y + &x);
                prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
                prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
                prop_assert_eq!(&x * &y, &y * &x);
            }

            #[test]
            fn conj_swap_respects_products(x in arb_ext(), y in arb_ext()) {
                prop_assert_eq!((&x * &y).conj_swap(), &x.conj_swap() * &y.conj_swap());
            }
        }
    }
}
