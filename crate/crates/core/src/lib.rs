//! Braid matrices of the form `R = I + lambda*P0'` built from rank-one
//! projectors, together with everything their algebra supports:
//!
//! * exact verification of the braid and Hecke relations over a quadratic
//!   extension ring in which `lambda` is a formal root of
//!   `lambda + lambda^{-1} + T = 0`,
//! * the triangularity condition `R^2 = I` reduced to integer polynomial
//!   equations in `Y = q^2 + q^{-2}` or `z = q + q^{-1}` and solved
//!   numerically with root-of-unity classification,
//! * L-operator representations, their RLL constraints, central group-like
//!   quadratic elements and coproducts,
//! * Turaev-style enhanced operators and Markov-invariant link invariants
//!   for closed braids, with the associated skein relation,
//! * noncommutative coordinate towers grown from a commutative base
//!   surface by transfer-matrix iteration.
//!
//! Exact arithmetic lives in [`scalar`]: Laurent polynomials in
//! `s = q^{1/2}` with rational coefficients, and the quadratic extension
//! adjoining `lambda`. Numeric work uses `Complex64` with the dense
//! helpers in [`numeric`].
//!
//! ```
//! use braidq::{AlgebraSpec, Family, Complex64};
//! use braidq::braid::{braid_matrix, check_braid_equation_exact};
//! use braidq::links::{BraidWord, EnhancedOperator, link_invariant, DEFAULT_DIM_CAP};
//!
//! // exact braid equation over the lambda ring
//! let spec = AlgebraSpec::new(Family::OHat, 3)?;
//! assert!(check_braid_equation_exact(&braid_matrix(&spec, 1))?);
//!
//! // a link invariant at q = 1 (where the braid matrix stays nontrivial):
//! // the unknot closes to tr f = T = 3
//! let e = EnhancedOperator::new(&spec).at(Complex64::new(1.0, 0.0), false)?;
//! let unknot = BraidWord::new(1, vec![])?;
//! let p = link_invariant(&e, &unknot, DEFAULT_DIM_CAP)?;
//! assert!((p.re - 3.0).abs() < 1e-12);
//! # Ok::<(), braidq::Error>(())
//! ```

pub mod algebra;
pub mod braid;
pub mod config;
pub mod error;
pub mod lalg;
pub mod links;
pub mod matrix;
pub mod ncspace;
pub mod numeric;
pub mod report;
pub mod scalar;
pub mod triangularity;

pub use algebra::{AlgebraSpec, Family};
pub use error::Error;
pub use matrix::Mat;
pub use scalar::{Complex64, LambdaExt, LaurentPoly, Scalar};

/// Relative tolerance for floating-point assertions.
pub const REL_TOL: f64 = 1e-9;
/// Absolute tolerance for floating-point assertions near zero.
pub const ABS_TOL: f64 = 1e-12;

/// `true` when `x` is within `REL_TOL` of `y` (or `ABS_TOL` near zero).
pub fn close(x: Complex64, y: Complex64) -> bool {
    let d = (x - y).norm();
    d <= ABS_TOL + REL_TOL * x.norm().max(y.norm())
}
