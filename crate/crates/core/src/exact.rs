//! Exact rational scalars and power-sum polynomials.
//!
//! [`Rational`] wraps a [`BigRational`], which is kept in canonical form
//! (reduced, positive denominator, zero as `0/1`) after every operation.
//! [`PowerSumPoly`] stores `S_m(n)` densely by exponent with an explicit zero
//! constant slot, so `coefficient(k)` is the coefficient of `n^k`.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

/// Builds the canonical rational `num/den`.
pub fn normalize(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rational> {
    let den = den.into();
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Rational(BigRational::new(num.into(), den)))
}

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        normalize(num, den)
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn pow(&self, exp: u32) -> Self {
        Rational(num_traits::Pow::pow(&self.0, exp))
    }

    /// `(-1)^k` as a rational.
    pub fn sign_power(k: i64) -> Self {
        if k.rem_euclid(2) == 0 {
            Self::one()
        } else {
            -Self::one()
        }
    }

    /// Bit length of the numerator's magnitude.
    pub fn numer_bits(&self) -> u64 {
        self.numer().bits()
    }

    /// Checks the canonical-form invariant independently of the backing type.
    pub fn is_canonical(&self) -> bool {
        let d = self.denom();
        d.sign() == Sign::Plus && num_integer::Integer::gcd(&self.numer().abs(), d).is_one()
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            f.pad(&self.0.numer().to_string())
        } else {
            f.pad(&format!("{}/{}", self.0.numer(), self.0.denom()))
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse = |t: &str| t.trim().parse::<BigInt>().map_err(|_| Error::Parse(s.to_string()));
        match s.split_once('/') {
            Some((n, d)) => normalize(parse(n)?, parse(d)?),
            None => Ok(Rational::from_integer(parse(s)?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(&self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

// Panics on a zero divisor, like the integer operators; use `checked_div`
// where the divisor is data-dependent.
forward_binop!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl SubAssign for Rational {
    fn sub_assign(&mut self, rhs: Rational) {
        self.0 -= rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

/// Horner evaluation of a dense ascending coefficient list (index = exponent).
pub fn eval_dense(coeffs: &[Rational], n: &Rational) -> Rational {
    coeffs
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * n + c)
}

/// The polynomial `S_m(n)` of degree `m + 1` with zero constant term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PowerSumPoly {
    order: usize,
    /// Indexed by exponent; slot 0 is the constant term and is always zero.
    coeffs: Vec<Rational>,
}

impl PowerSumPoly {
    /// Builds `S_m` from the coefficients of `n^1 ..= n^(m+1)`, in that order.
    pub fn new(order: usize, nonconstant: Vec<Rational>) -> Result<Self> {
        if nonconstant.len() != order + 1 {
            return Err(Error::Precondition(format!(
                "S_{order} needs {} coefficients, got {}",
                order + 1,
                nonconstant.len()
            )));
        }
        if !nonconstant[order].is_positive() {
            return Err(Error::InvariantFailure(format!(
                "leading coefficient of S_{order} is {}, expected positive",
                nonconstant[order]
            )));
        }
        let mut coeffs = Vec::with_capacity(order + 2);
        coeffs.push(Rational::zero());
        coeffs.extend(nonconstant);
        Ok(PowerSumPoly { order, coeffs })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.order + 1
    }

    /// Coefficient of `n^exponent`; zero outside `1..=m+1`.
    pub fn coefficient(&self, exponent: usize) -> Rational {
        self.coeffs.get(exponent).cloned().unwrap_or_default()
    }

    /// Dense coefficients including the zero constant slot.
    pub fn dense(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficients of `n^1 ..= n^(m+1)`.
    pub fn nonconstant(&self) -> &[Rational] {
        &self.coeffs[1..]
    }

    pub fn eval(&self, n: &Rational) -> Rational {
        poly_eval(self, n)
    }
}

/// Exact value of `p` at `n`.
pub fn poly_eval(p: &PowerSumPoly, n: &Rational) -> Rational {
    eval_dense(&p.coeffs, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn normalize_reduces_and_fixes_sign() {
        assert_eq!(normalize(2, 4).unwrap().to_string(), "1/2");
        assert_eq!(normalize(-3, -6).unwrap().to_string(), "1/2");
        let z = normalize(0, 5).unwrap();
        assert_eq!((z.numer().clone(), z.denom().clone()), (BigInt::zero(), BigInt::one()));
        assert_eq!(normalize(3, -6).unwrap().to_string(), "-1/2");
    }

    #[test]
    fn normalize_rejects_zero_denominator() {
        assert_eq!(normalize(1, 0), Err(Error::ZeroDenominator));
    }

    #[test]
    fn text_form() {
        assert_eq!(r(-691, 2730).to_string(), "-691/2730");
        assert_eq!(r(14, 1).to_string(), "14");
        assert_eq!("-691/2730".parse::<Rational>().unwrap(), r(-691, 2730));
        assert_eq!("4/-8".parse::<Rational>().unwrap(), r(-1, 2));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn checked_division() {
        assert_eq!(r(1, 2).checked_div(&Rational::zero()), Err(Error::DivisionByZero));
        assert_eq!(r(1, 2).checked_div(&r(1, 4)).unwrap(), Rational::from(2));
        assert!(Rational::zero().recip().is_err());
    }

    #[test]
    fn eval_small_sums() {
        let s0 = PowerSumPoly::new(0, vec![Rational::one()]).unwrap();
        assert_eq!(poly_eval(&s0, &Rational::from(7)), Rational::from(7));

        let s1 = PowerSumPoly::new(1, vec![r(1, 2), r(1, 2)]).unwrap();
        assert_eq!(poly_eval(&s1, &Rational::from(4)), Rational::from(10));

        let s2 = PowerSumPoly::new(2, vec![r(1, 6), r(1, 2), r(1, 3)]).unwrap();
        assert_eq!(poly_eval(&s2, &Rational::from(-1)), Rational::zero());
        assert_eq!(s2.coefficient(0), Rational::zero());
        assert_eq!(s2.coefficient(9), Rational::zero());
    }

    #[test]
    fn poly_shape_is_checked() {
        assert!(matches!(PowerSumPoly::new(1, vec![r(1, 2)]), Err(Error::Precondition(_))));
        assert!(matches!(
            PowerSumPoly::new(1, vec![r(1, 2), r(-1, 2)]),
            Err(Error::InvariantFailure(_))
        ));
    }
}
