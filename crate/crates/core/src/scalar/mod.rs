//! Scalar backends: exact Laurent polynomials in `s = q^{1/2}`, the
//! quadratic extension adjoining `lambda`, and double-precision complex
//! numbers.
//!
//! The base variable is `s = q^{1/2}` with integer exponents, so every
//! half-integer power of `q` that the projector exponents produce is an
//! integer power of `s`. `lambda` is adjoined as a formal ring element
//! with modulus `lambda^2 = -T*lambda - 1`, which keeps every identity
//! involving the roots `lambda_{+-} = -e^{-+eta}` exact.

mod lambda;
mod laurent;

pub use lambda::{lambda_numeric_roots, LambdaExt, LambdaRoots};
pub use laurent::LaurentPoly;

pub use num_complex::Complex64;

/// Ring operations needed by the generic dense matrix.
///
/// `zero_like`/`one_like` derive any ambient context (for [`LambdaExt`],
/// the modulus `T`) from an existing element, so matrices can be built
/// without a separate ring handle.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
}

impl Scalar for Complex64 {
    fn zero_like(&self) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one_like(&self) -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
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
