//! Exact Laurent polynomials in `s = q^{1/2}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use num_complex::Complex64;

use super::Scalar;
use crate::error::{Error, Result};

/// A Laurent polynomial in `s = q^{1/2}` with exact rational coefficients.
///
/// Canonical form: no stored coefficient is zero. Exponents are powers of
/// `s`, so `q^k` is the exponent `2k` and `q^{1/2}` the exponent `1`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::int(1)
    }

    /// Constant polynomial with integer value `c`.
    pub fn int(c: i64) -> Self {
        Self::monomial(0, BigRational::from_integer(BigInt::from(c)))
    }

    /// Constant polynomial `num/den`.
    pub fn rational(num: i64, den: i64) -> Self {
        Self::monomial(0, BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `coeff * s^exp`.
    pub fn monomial(exp: i64, coeff: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(exp, coeff);
        }
        LaurentPoly { coeffs }
    }

    /// `s^k`.
    pub fn s_pow(k: i64) -> Self {
        Self::monomial(k, BigRational::one())
    }

    /// `q^k = s^{2k}`.
    pub fn q_pow(k: i64) -> Self {
        Self::s_pow(2 * k)
    }

    /// `q^{k/2} = s^k`; accepts odd `k` for half-integer powers of `q`.
    pub fn q_half_pow(k: i64) -> Self {
        Self::s_pow(k)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).map(|c| c.is_one()).unwrap_or(false)
    }

    /// Coefficient of `s^exp` (zero if absent).
    pub fn coeff(&self, exp: i64) -> BigRational {
        self.coeffs
            .get(&exp)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Iterate `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    fn insert_add(coeffs: &mut BTreeMap<i64, BigRational>, exp: i64, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        match coeffs.get_mut(&exp) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    coeffs.remove(&exp);
                }
            }
            None => {
                coeffs.insert(exp, c.clone());
            }
        }
    }

    /// Substitute `s -> s^{-1}` (equivalently `q -> q^{-1}`).
    pub fn bar(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect();
        LaurentPoly { coeffs }
    }

    /// All exponents even, i.e. the polynomial is actually in `q`.
    pub fn is_in_q(&self) -> bool {
        self.coeffs.keys().all(|e| e % 2 == 0)
    }

    /// Evaluate at `s = s0`, Horner-style over the split positive and
    /// negative exponent parts.
    pub fn eval_s(&self, s0: Complex64) -> Result<Complex64> {
        if s0.re == 0.0 && s0.im == 0.0 {
            return Err(Error::ZeroBase);
        }
        let mut pos = Complex64::new(0.0, 0.0);
        let mut prev_exp = 0i64;
        // descending positive/zero exponents
        for (&e, c) in self.coeffs.range(0..).rev() {
            pos *= s0.powi((prev_exp - e) as i32);
            pos += to_c64(c);
            prev_exp = e;
        }
        pos *= s0.powi(prev_exp as i32);

        let inv = Complex64::new(1.0, 0.0) / s0;
        let mut neg = Complex64::new(0.0, 0.0);
        let mut prev_exp = 0i64;
        // ascending negative exponents, in powers of 1/s
        for (&e, c) in self.coeffs.range(..0) {
            neg *= inv.powi((e - prev_exp) as i32);
            neg += to_c64(c);
            prev_exp = e;
        }
        neg *= inv.powi((-prev_exp) as i32);

        Ok(pos + neg)
    }

    /// Evaluate at `q = q0`. Uses `s0 = sqrt(q0)` (principal branch) when
    /// odd powers of `s` are present; exact in `q0` otherwise.
    pub fn eval_q(&self, q0: Complex64) -> Result<Complex64> {
        if self.is_in_q() {
            if q0.re == 0.0 && q0.im == 0.0 {
                return Err(Error::ZeroBase);
            }
            let mut acc = Complex64::new(0.0, 0.0);
            for (&e, c) in self.coeffs.iter() {
                acc += to_c64(c) * q0.powi((e / 2) as i32);
            }
            Ok(acc)
        } else {
            self.eval_s(q0.sqrt())
        }
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }
}

fn to_c64(c: &BigRational) -> Complex64 {
    Complex64::new(c.to_f64().expect("rational out of f64 range"), 0.0)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut coeffs = self.coeffs.clone();
        for (e, c) in rhs.coeffs.iter() {
            LaurentPoly::insert_add(&mut coeffs, *e, c);
        }
        LaurentPoly { coeffs }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut coeffs = self.coeffs.clone();
        for (e, c) in rhs.coeffs.iter() {
            LaurentPoly::insert_add(&mut coeffs, *e, &(-c.clone()));
        }
        LaurentPoly { coeffs }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut coeffs = BTreeMap::new();
        for (e1, c1) in self.coeffs.iter() {
            for (e2, c2) in rhs.coeffs.iter() {
                LaurentPoly::insert_add(&mut coeffs, e1 + e2, &(c1 * c2));
            }
        }
        LaurentPoly { coeffs }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let coeffs = self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect();
        LaurentPoly { coeffs }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Scalar for LaurentPoly {
    fn zero_like(&self) -> Self {
        LaurentPoly::zero()
    }
    fn one_like(&self) -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
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

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in self.coeffs.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !mag.is_one() || e == 0;
            if show_coeff {
                write!(f, "{}", mag)?;
            }
            if e != 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if e == 1 {
                    write!(f, "s")?;
                } else {
                    write!(f, "s^{}", e)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: (q^n - q^{-n}) / (q - q^{-1}) by explicit
    /// polynomial long division in s.
    fn bracket_by_division(n: i64) -> LaurentPoly {
        let num = &LaurentPoly::q_pow(n) - &LaurentPoly::q_pow(-n);
        let den = &LaurentPoly::q_pow(1) - &LaurentPoly::q_pow(-1);
        // divide exactly: repeatedly cancel the leading term
        let mut rem = num;
        let mut quot = LaurentPoly::zero();
        let den_lead = den.max_exp().unwrap();
        let den_lead_coeff = den.coeff(den_lead);
        while !rem.is_zero() {
            let e = rem.max_exp().unwrap();
            let c = rem.coeff(e);
            let term = LaurentPoly::monomial(e - den_lead, c / den_lead_coeff.clone());
            quot = &quot + &term;
            rem = &rem - &(&term * &den);
        }
        quot
    }

    #[test]
    fn quantum_bracket_small() {
        use crate::algebra::quantum_bracket;
        assert!(quantum_bracket(0).is_zero());
        assert!(quantum_bracket(1).is_one());
        // [2] = q + q^{-1} = s^2 + s^{-2}
        let expect = &LaurentPoly::q_pow(1) + &LaurentPoly::q_pow(-1);
        assert_eq!(quantum_bracket(2), expect);
    }

    #[test]
    fn quantum_bracket_matches_division_oracle() {
        use crate::algebra::quantum_bracket;
        for n in 1..=9 {
            assert_eq!(quantum_bracket(n), bracket_by_division(n as i64), "n={}", n);
        }
        // frozen from the oracle: [4] = q^3 + q + q^-1 + q^-3
        let b4: LaurentPoly = [3, 1, -1, -3]
            .iter()
            .map(|&k| LaurentPoly::q_pow(k))
            .fold(LaurentPoly::zero(), |a, b| &a + &b);
        assert_eq!(quantum_bracket(4), b4);
    }

    #[test]
    fn eval_splits_positive_negative() {
        // p = s^2 + 1 + s^-2 at s = e^{i pi/6}: q + 1 + q^{-1} with
        // q = e^{i pi/3}, so the value is 2.
        let p = &(&LaurentPoly::s_pow(2) + &LaurentPoly::one()) + &LaurentPoly::s_pow(-2);
        let s0 = Complex64::from_polar(1.0, std::f64::consts::PI / 6.0);
        let v = p.eval_s(s0).unwrap();
        assert!((v - Complex64::new(2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn eval_constant_and_zero_base() {
        let one = LaurentPoly::one();
        assert_eq!(
            one.eval_s(Complex64::new(2.5, -1.0)).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        let p = LaurentPoly::s_pow(-1);
        assert_eq!(p.eval_s(Complex64::new(0.0, 0.0)), Err(Error::ZeroBase));
    }

    #[test]
    fn eval_s4_plus_2_plus_sm4() {
        // direct complex arithmetic oracle: at s0 = e^{i pi/8},
        // s^4 + s^-4 = 2 cos(pi/2) = 0, so the value is 2.
        let p = &(&LaurentPoly::s_pow(4) + &LaurentPoly::int(2)) + &LaurentPoly::s_pow(-4);
        let s0 = Complex64::from_polar(1.0, std::f64::consts::PI / 8.0);
        let direct = s0.powi(4) + 2.0 + s0.powi(-4);
        let v = p.eval_s(s0).unwrap();
        assert!((v - direct).norm() < 1e-12);
        assert!((v - Complex64::new(2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn eval_agrees_with_termwise_sum() {
        let p = LaurentPoly::monomial(5, BigRational::new(BigInt::from(3), BigInt::from(7)))
            + LaurentPoly::s_pow(-3)
            + LaurentPoly::int(-2);
        let s0 = Complex64::new(0.7, 0.4);
        let termwise: Complex64 = p
            .terms()
            .map(|(&e, c)| Complex64::new(c.to_f64().unwrap(), 0.0) * s0.powi(e as i32))
            .sum();
        assert!((p.eval_s(s0).unwrap() - termwise).norm() < 1e-12);
    }

    #[test]
    fn eval_q_handles_odd_s_powers() {
        // p = s = q^{1/2}: evaluating at q needs the principal square root
        let p = LaurentPoly::s_pow(1);
        let v = p.eval_q(Complex64::new(4.0, 0.0)).unwrap();
        assert!((v - Complex64::new(2.0, 0.0)).norm() < 1e-14);
        // even powers evaluate directly in q
        let p2 = &LaurentPoly::q_pow(2) + &LaurentPoly::q_pow(-1);
        let q0 = Complex64::new(0.5, 0.25);
        let direct = q0.powi(2) + 1.0 / q0;
        assert!((p2.eval_q(q0).unwrap() - direct).norm() < 1e-13);
    }

    #[test]
    fn bar_is_involutive() {
        let p = LaurentPoly::s_pow(3) + LaurentPoly::int(4) + LaurentPoly::s_pow(-1);
        assert_eq!(p.bar().bar(), p);
        assert_eq!(p.bar().coeff(-3), BigRational::one());
    }

    #[test]
    fn canonical_no_zero_coeffs() {
        let p = &LaurentPoly::s_pow(2) - &LaurentPoly::s_pow(2);
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
            proptest::collection::vec((-8i64..=8, -9i64..=9, 1i64..=9), 0..5).prop_map(|terms| {
                terms
                    .into_iter()
                    .fold(LaurentPoly::zero(), |acc, (e, n, d)| {
                        &acc + &LaurentPoly::monomial(e, BigRational::new(n.into(), d.into()))
                    })
            })
        }

        proptest! {
            #[test]
            fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
                prop_assert_eq!(&a + &b, &b + &a);
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a - &a, LaurentPoly::zero());
                prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
            }

            #[test]
            fn bar_is_multiplicative(a in arb_poly(), b in arb_poly()) {
                prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
            }
        }
    }
}
