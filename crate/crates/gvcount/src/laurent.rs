//! Bivariate Laurent polynomials in `(y, w)` over an exact coefficient ring.
//!
//! Exponents may be half-integral (the odd powers of the rank-1 theta
//! function carry `w^{1/2}`), so every exponent is stored doubled. A value
//! whose doubled exponents are all even is called *integral*; extraction
//! into integral-exponent contexts checks this and reports
//! [`Error::HalfIntegerLeak`] otherwise.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A half-integer, stored as twice its value.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct HalfInt(i64);

impl HalfInt {
    /// The half-integer `n/2`.
    pub const fn halves(n: i64) -> Self {
        HalfInt(n)
    }

    /// The integer `n`.
    pub const fn int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    /// Twice the value (always an integer).
    pub const fn doubled(self) -> i64 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// The value as an integer, if it is one.
    pub fn as_integer(self) -> Option<i64> {
        if self.is_integer() {
            Some(self.0 / 2)
        } else {
            None
        }
    }
}

impl From<i64> for HalfInt {
    fn from(n: i64) -> Self {
        HalfInt::int(n)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Mul<i64> for HalfInt {
    type Output = HalfInt;
    fn mul(self, rhs: i64) -> HalfInt {
        HalfInt(self.0 * rhs)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Exact coefficient ring: implemented for [`BigInt`] and [`BigRational`].
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Add<Output = Self>
{
    fn mul_ref(a: &Self, b: &Self) -> Self;
    fn add_assign_ref(&mut self, other: &Self);
    /// Is this a unit of the ring?
    fn is_unit(&self) -> bool;
    /// Multiplicative inverse; callers must check [`Coeff::is_unit`] first.
    fn inv_unit(&self) -> Self;
    fn from_i64(n: i64) -> Self;
}

impl Coeff for BigInt {
    fn mul_ref(a: &Self, b: &Self) -> Self {
        a * b
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn inv_unit(&self) -> Self {
        // 1 and -1 are their own inverses.
        self.clone()
    }
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
}

impl Coeff for BigRational {
    fn mul_ref(a: &Self, b: &Self) -> Self {
        a * b
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn is_unit(&self) -> bool {
        !self.is_zero()
    }
    fn inv_unit(&self) -> Self {
        self.recip()
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

/// A bivariate Laurent polynomial `sum c_{a,b} y^{a/2} w^{b/2}`.
///
/// Keys are `(doubled y exponent, doubled w exponent)`; zero coefficients
/// are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Laurent2<C: Coeff> {
    terms: BTreeMap<(i64, i64), C>,
}

impl<C: Coeff> Laurent2<C> {
    pub fn zero() -> Self {
        Laurent2 {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0), c);
        }
        Laurent2 { terms }
    }

    /// The monomial `c * y^y_exp * w^w_exp` with half-integer exponents.
    pub fn monomial(y_exp: HalfInt, w_exp: HalfInt, c: C) -> Self {
        Self::monomial_x2(y_exp.doubled(), w_exp.doubled(), c)
    }

    /// The monomial with raw doubled exponents.
    pub fn monomial_x2(y_x2: i64, w_x2: i64, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((y_x2, w_x2), c);
        }
        Laurent2 { terms }
    }

    /// `psi_y = 2 + y + 1/y`.
    pub fn psi_y() -> Self {
        let mut p = Self::zero();
        p.insert_x2(0, 0, C::from_i64(2));
        p.insert_x2(2, 0, C::one());
        p.insert_x2(-2, 0, C::one());
        p
    }

    /// `psi_w = 2 + w + 1/w`.
    pub fn psi_w() -> Self {
        let mut p = Self::zero();
        p.insert_x2(0, 0, C::from_i64(2));
        p.insert_x2(0, 2, C::one());
        p.insert_x2(0, -2, C::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Add `c` to the coefficient at raw doubled exponents.
    pub fn insert_x2(&mut self, y_x2: i64, w_x2: i64, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((y_x2, w_x2)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Coefficient at raw doubled exponents (zero if absent).
    pub fn coeff_x2(&self, y_x2: i64, w_x2: i64) -> C {
        self.terms
            .get(&(y_x2, w_x2))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    /// Coefficient at integer exponents.
    pub fn coeff(&self, y_exp: i64, w_exp: i64) -> C {
        self.coeff_x2(2 * y_exp, 2 * w_exp)
    }

    /// Iterate over `(y_x2, w_x2, coeff)` in key order.
    pub fn iter_x2(&self) -> impl Iterator<Item = (i64, i64, &C)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    /// Terms with integer exponents, or [`Error::HalfIntegerLeak`] if any
    /// doubled exponent is odd.
    pub fn integer_terms(&self) -> Result<Vec<(i64, i64, C)>> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (&(a, b), c) in &self.terms {
            if a % 2 != 0 || b % 2 != 0 {
                return Err(Error::HalfIntegerLeak);
            }
            out.push((a / 2, b / 2, c.clone()));
        }
        Ok(out)
    }

    pub fn has_integral_exponents(&self) -> bool {
        self.terms.keys().all(|&(a, b)| a % 2 == 0 && b % 2 == 0)
    }

    pub fn is_y_free(&self) -> bool {
        self.terms.keys().all(|&(a, _)| a == 0)
    }

    pub fn is_w_free(&self) -> bool {
        self.terms.keys().all(|&(_, b)| b == 0)
    }

    /// Invariant under `y <-> 1/y`?
    pub fn is_symmetric_y(&self) -> bool {
        self.terms
            .iter()
            .all(|(&(a, b), c)| self.terms.get(&(-a, b)) == Some(c))
    }

    /// Invariant under `w <-> 1/w`?
    pub fn is_symmetric_w(&self) -> bool {
        self.terms
            .iter()
            .all(|(&(a, b), c)| self.terms.get(&(a, -b)) == Some(c))
    }

    /// Largest doubled y-exponent with a nonzero coefficient.
    pub fn max_y_x2(&self) -> Option<i64> {
        self.terms.keys().map(|&(a, _)| a).max()
    }

    /// Largest doubled w-exponent within the top y-layer `y_x2`.
    pub fn max_w_x2_in_y_layer(&self, y_x2: i64) -> Option<i64> {
        self.terms
            .keys()
            .filter(|&&(a, _)| a == y_x2)
            .map(|&(_, b)| b)
            .max()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, b), c) in &other.terms {
            out.insert_x2(a, b, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, b), c) in &other.terms {
            out.insert_x2(a, b, c.clone().neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Laurent2 {
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (k, c.clone().neg()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &other.terms {
                out.insert_x2(a1 + a2, b1 + b2, C::mul_ref(c1, c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Laurent2 {
            terms: self
                .terms
                .iter()
                .map(|(&k, v)| (k, C::mul_ref(v, c)))
                .collect(),
        }
    }

    pub fn scale_i64(&self, n: i64) -> Self {
        self.scale(&C::from_i64(n))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut base = self.clone();
        let mut e = e;
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exchange the roles of `y` and `w`.
    pub fn swap_vars(&self) -> Self {
        Laurent2 {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((b, a), c.clone()))
                .collect(),
        }
    }

    /// Substitute `y = 1` or `y = -1`; requires integral y-exponents.
    pub fn eval_y(&self, sign: i64) -> Result<Self> {
        assert!(sign == 1 || sign == -1);
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            if a % 2 != 0 {
                return Err(Error::HalfIntegerLeak);
            }
            let s = if sign == 1 || (a / 2) % 2 == 0 { 1 } else { -1 };
            let v = if s == 1 { c.clone() } else { c.clone().neg() };
            out.insert_x2(0, b, v);
        }
        Ok(out)
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Laurent2<D> {
        Laurent2 {
            terms: self
                .terms
                .iter()
                .filter_map(|(&k, c)| {
                    let d = f(c);
                    if d.is_zero() {
                        None
                    } else {
                        Some((k, d))
                    }
                })
                .collect(),
        }
    }
}

impl Laurent2<BigInt> {
    pub fn to_rational(&self) -> Laurent2<BigRational> {
        self.map_coeffs(|c| BigRational::from_integer(c.clone()))
    }
}

impl Laurent2<BigRational> {
    /// Convert back to integer coefficients, checking that every
    /// denominator is 1.
    pub fn to_integral(&self) -> Result<Laurent2<BigInt>> {
        let mut out = Laurent2::zero();
        for (&(a, b), c) in &self.terms {
            if !c.denom().is_one() {
                return Err(Error::NotIntegral(format!(
                    "coefficient {c} at y^({}) w^({})",
                    HalfInt::halves(a),
                    HalfInt::halves(b)
                )));
            }
            out.insert_x2(a, b, c.numer().clone());
        }
        Ok(out)
    }
}

impl<C: Coeff> fmt::Display for Laurent2<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            if a != 0 {
                write!(f, "*y^({})", HalfInt::halves(a))?;
            }
            if b != 0 {
                write!(f, "*w^({})", HalfInt::halves(b))?;
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for Laurent2<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Z = Laurent2<BigInt>;

    #[test]
    fn psi_squares() {
        // psi_y^2 = y^2 + 4y + 6 + 4/y + 1/y^2
        let p = Z::psi_y().pow(2);
        assert_eq!(p.coeff(2, 0), BigInt::from(1));
        assert_eq!(p.coeff(1, 0), BigInt::from(4));
        assert_eq!(p.coeff(0, 0), BigInt::from(6));
        assert_eq!(p.coeff(-1, 0), BigInt::from(4));
        assert_eq!(p.coeff(-2, 0), BigInt::from(1));
        assert_eq!(p.num_terms(), 5);
        assert!(p.is_symmetric_y() && p.is_symmetric_w());
    }

    #[test]
    fn psi_w_squared_minus_three_psi_w() {
        // psi_w^2 - 3 psi_w = w^2 + w + 1/w + 1/w^2
        let p = Z::psi_w().pow(2).sub(&Z::psi_w().scale_i64(3));
        assert_eq!(p.coeff(0, 2), BigInt::from(1));
        assert_eq!(p.coeff(0, 1), BigInt::from(1));
        assert_eq!(p.coeff(0, 0), BigInt::from(0));
        assert_eq!(p.coeff(0, -1), BigInt::from(1));
        assert_eq!(p.coeff(0, -2), BigInt::from(1));
    }

    #[test]
    fn half_integer_leak_detected() {
        let p = Z::monomial(HalfInt::halves(1), HalfInt::int(0), BigInt::one());
        assert_eq!(p.integer_terms(), Err(Error::HalfIntegerLeak));
        assert!(!p.has_integral_exponents());
    }

    #[test]
    fn eval_y_at_minus_one() {
        // psi_{-1} = 2 - 1 - 1 = 0
        let p = Z::psi_y().eval_y(-1).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn rational_roundtrip() {
        let p = Z::psi_y().mul(&Z::psi_w());
        let q = p.to_rational().to_integral().unwrap();
        assert_eq!(p, q);
    }
}
