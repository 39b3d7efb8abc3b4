//! Algebra descriptors: the `(family, N)` data fixing the projector
//! exponents, signs and the trace scalar `T`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::{lambda_numeric_roots, LambdaExt, LambdaRoots, LaurentPoly};

/// Which standard projector family the rank-one projector is taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Orthogonal-type projectors, any `N >= 3`.
    OHat,
    /// Symplectic-type projectors, even `N >= 4`.
    PHat,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::OHat => "ohat",
            Family::PHat => "phat",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// The quantum bracket `[n] = (q^n - q^{-n})/(q - q^{-1})`, expanded as
/// `q^{n-1} + q^{n-3} + ... + q^{-n+1}`. `[0] = 0`, `[1] = 1`.
pub fn quantum_bracket(n: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    let n = n as i64;
    let mut k = n - 1;
    while k > -n {
        acc = &acc + &LaurentPoly::q_pow(k);
        k -= 2;
    }
    acc
}

/// The `(family, N)` descriptor with its derived data: the weight tuple
/// `rho` (stored doubled so half-integers stay integral), the sign tuple
/// `eps`, and `T = tr P0' = [N-+1]+-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraSpec {
    family: Family,
    n: usize,
    /// `2*rho_i`, 1-indexed conceptually; `rho2[i-1]` is `2 rho_i`.
    rho2: Vec<i64>,
    eps: Vec<i64>,
    t: LaurentPoly,
}

impl AlgebraSpec {
    /// Build the descriptor. `OHat` admits `N >= 3`; `PHat` requires
    /// even `N >= 4`.
    ///
    /// ```
    /// use braidq::{AlgebraSpec, Family};
    /// use braidq::scalar::LaurentPoly;
    ///
    /// // T for ohat(3) is q + 1 + q^{-1}
    /// let spec = AlgebraSpec::new(Family::OHat, 3).unwrap();
    /// let t = &(&LaurentPoly::q_pow(1) + &LaurentPoly::one()) + &LaurentPoly::q_pow(-1);
    /// assert_eq!(spec.t(), &t);
    /// assert!(AlgebraSpec::new(Family::PHat, 5).is_err());
    /// ```
    pub fn new(family: Family, n: usize) -> Result<Self> {
        let rho2: Vec<i64> = match family {
            Family::OHat if n >= 3 && !n.is_multiple_of(2) => {
                // (n'-1/2, ..., 1/2, 0, -1/2, ..., -n'+1/2), n' = (N-1)/2
                let half = (n as i64 - 1) / 2;
                let mut v: Vec<i64> = (1..=half).rev().map(|k| 2 * k - 1).collect();
                v.push(0);
                v.extend((1..=half).map(|k| -(2 * k - 1)));
                v
            }
            Family::OHat if n >= 4 && n.is_multiple_of(2) => {
                // (n'-1, ..., 1, 0, 0, -1, ..., -n'+1), n' = N/2
                let half = n as i64 / 2;
                let mut v: Vec<i64> = (1..half).rev().map(|k| 2 * k).collect();
                v.push(0);
                v.push(0);
                v.extend((1..half).map(|k| -2 * k));
                v
            }
            Family::PHat if n >= 4 && n.is_multiple_of(2) => {
                // (n', ..., 1, -1, ..., -n'), n' = N/2
                let half = n as i64 / 2;
                let mut v: Vec<i64> = (1..=half).rev().map(|k| 2 * k).collect();
                v.extend((1..=half).map(|k| -2 * k));
                v
            }
            _ => {
                return Err(Error::InvalidDimension {
                    family: family.name(),
                    n,
                });
            }
        };
        let eps: Vec<i64> = match family {
            Family::OHat => vec![1; n],
            Family::PHat => (0..n).map(|i| if i < n / 2 { 1 } else { -1 }).collect(),
        };
        let t = match family {
            Family::OHat => &quantum_bracket(n - 1) + &LaurentPoly::one(),
            Family::PHat => &quantum_bracket(n + 1) - &LaurentPoly::one(),
        };
        debug_assert_eq!(
            t,
            rho2.iter().fold(LaurentPoly::zero(), |acc, &r2| {
                &acc + &LaurentPoly::s_pow(-2 * r2)
            }),
            "bracket form of T disagrees with sum of q^(-2 rho_i)"
        );
        Ok(AlgebraSpec {
            family,
            n,
            rho2,
            eps,
            t,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `2 * rho_i` for 1-indexed `i`.
    pub fn rho2(&self, i: usize) -> i64 {
        self.rho2[i - 1]
    }

    /// `eps_i` for 1-indexed `i`.
    pub fn eps(&self, i: usize) -> i64 {
        self.eps[i - 1]
    }

    /// The conjugate index `i' = N + 1 - i`.
    pub fn conj_index(&self, i: usize) -> usize {
        self.n + 1 - i
    }

    /// `T = tr P0' = [N-+1]+-1` as an exact Laurent polynomial.
    pub fn t(&self) -> &LaurentPoly {
        &self.t
    }

    /// `q^{rho_i}` as a Laurent polynomial in `s`.
    pub fn q_rho(&self, i: usize) -> LaurentPoly {
        LaurentPoly::s_pow(self.rho2(i))
    }

    /// `q^{-rho_i}`.
    pub fn q_rho_inv(&self, i: usize) -> LaurentPoly {
        LaurentPoly::s_pow(-self.rho2(i))
    }

    /// `T(q0)`.
    pub fn t_at(&self, q0: Complex64) -> Result<Complex64> {
        self.t.eval_q(q0)
    }

    /// Numeric lambda roots at `q0`.
    pub fn lambda_roots_at(&self, q0: Complex64) -> Result<LambdaRoots> {
        Ok(lambda_numeric_roots(self.t_at(q0)?))
    }

    /// Zero of the lambda-extension ring with this spec's modulus.
    pub fn ext_zero(&self) -> LambdaExt {
        LambdaExt::zero(&self.t)
    }

    /// One of the lambda-extension ring with this spec's modulus.
    pub fn ext_one(&self) -> LambdaExt {
        LambdaExt::one(&self.t)
    }

    /// The formal generator `lambda` over this spec's modulus.
    pub fn ext_lambda(&self) -> LambdaExt {
        LambdaExt::lambda(&self.t)
    }

    /// `lambda^{-1} = -T - lambda` over this spec's modulus.
    pub fn ext_lambda_inv(&self) -> LambdaExt {
        LambdaExt::lambda_inv(&self.t)
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.family, self.n)
    }
}
