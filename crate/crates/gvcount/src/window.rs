//! Windowed Laurent series in `y` whose coefficients are exact Laurent
//! polynomials in `w`.
//!
//! These arise wherever a negative power of `psi_y` has to be expanded:
//! the coefficient of each curve-class power in a log partition function
//! is such a series. The window `[lead, order]` is exact; `lead` is a hard
//! floor (nothing exists below it), `order` an inclusive truncation.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::laurent::{Coeff, Laurent2};

/// A univariate Laurent polynomial in `w` with integer exponents.
#[derive(Clone, PartialEq, Eq)]
pub struct WPoly<C: Coeff> {
    terms: BTreeMap<i64, C>,
}

impl<C: Coeff> WPoly<C> {
    pub fn zero() -> Self {
        WPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(0, c);
        }
        WPoly { terms }
    }

    pub fn monomial(exp: i64, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        WPoly { terms }
    }

    /// `(2 + w^k + w^{-k})^e`, the k-dilated power of `psi_w`.
    pub fn psi_w_pow(k: i64, e: u32) -> Self {
        assert!(k >= 1);
        let mut base = Self::zero();
        base.insert(0, C::from_i64(2));
        base.insert(k, C::one());
        base.insert(-k, C::one());
        base.pow(e)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn insert(&mut self, exp: i64, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(en) => {
                en.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut en) => {
                en.get_mut().add_assign_ref(&c);
                if en.get().is_zero() {
                    en.remove();
                }
            }
        }
    }

    pub fn coeff(&self, exp: i64) -> C {
        self.terms.get(&exp).cloned().unwrap_or_else(C::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &C)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.insert(e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.insert(e, c.clone().neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        WPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, c.clone().neg())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &other.terms {
                out.insert(e1 + e2, C::mul_ref(c1, c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        WPoly {
            terms: self
                .terms
                .iter()
                .map(|(&e, v)| (e, C::mul_ref(v, c)))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// View as a [`Laurent2`] supported on `y^0`.
    pub fn to_laurent2(&self) -> Laurent2<C> {
        let mut p = Laurent2::zero();
        for (&e, c) in &self.terms {
            p.insert_x2(0, 2 * e, c.clone());
        }
        p
    }

    /// Extract from a y-free [`Laurent2`] with integral w-exponents.
    pub fn from_laurent2(p: &Laurent2<C>) -> Result<Self> {
        let mut out = Self::zero();
        for (y_x2, w_x2, c) in p.iter_x2() {
            if y_x2 != 0 {
                return Err(Error::NotPolynomial(
                    "coefficient carries a y-dependence".into(),
                ));
            }
            if w_x2 % 2 != 0 {
                return Err(Error::HalfIntegerLeak);
            }
            out.insert(w_x2 / 2, c.clone());
        }
        Ok(out)
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> WPoly<D> {
        WPoly {
            terms: self
                .terms
                .iter()
                .filter_map(|(&e, c)| {
                    let d = f(c);
                    if d.is_zero() {
                        None
                    } else {
                        Some((e, d))
                    }
                })
                .collect(),
        }
    }
}

impl WPoly<BigInt> {
    pub fn to_rational(&self) -> WPoly<BigRational> {
        self.map_coeffs(|c| BigRational::from_integer(c.clone()))
    }
}

impl<C: Coeff> fmt::Display for WPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if e == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*w^({e})")?;
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for WPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A Laurent series in `y`, exact on `[lead, order]`, with [`WPoly`]
/// coefficients. `lead` is a hard floor.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WindowSeries<C: Coeff> {
    lead: i64,
    coeffs: Vec<WPoly<C>>,
}

impl<C: Coeff> WindowSeries<C> {
    /// A zero series vanishes everywhere up to `order`, so a nominal
    /// `lead > order` collapses to the single-slot window `[order, order]`.
    pub fn zero_window(lead: i64, order: i64) -> Self {
        let lead = lead.min(order);
        let len = (order - lead + 1) as usize;
        WindowSeries {
            lead,
            coeffs: vec![WPoly::zero(); len],
        }
    }

    /// The exact constant 1 viewed on the window `[0, order]`.
    pub fn one(order: i64) -> Self {
        let mut s = Self::zero_window(0, order);
        if !s.coeffs.is_empty() {
            s.coeffs[0] = WPoly::one();
        }
        s
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lead(&self) -> i64 {
        self.lead
    }

    pub fn order(&self) -> i64 {
        self.lead + self.coeffs.len() as i64 - 1
    }

    /// Coefficient of `y^e`: `None` above the window, zero below the floor.
    pub fn coeff(&self, e: i64) -> Option<WPoly<C>> {
        if self.is_empty() || e > self.order() {
            return None;
        }
        if e < self.lead {
            return Some(WPoly::zero());
        }
        Some(self.coeffs[(e - self.lead) as usize].clone())
    }

    pub fn set_coeff(&mut self, e: i64, p: WPoly<C>) {
        assert!(e >= self.lead && e <= self.order(), "outside window");
        self.coeffs[(e - self.lead) as usize] = p;
    }

    pub fn add_to_coeff(&mut self, e: i64, p: &WPoly<C>) {
        assert!(e >= self.lead && e <= self.order(), "outside window");
        let i = (e - self.lead) as usize;
        self.coeffs[i] = self.coeffs[i].add(p);
    }

    pub fn neg(&self) -> Self {
        WindowSeries {
            lead: self.lead,
            coeffs: self.coeffs.iter().map(|p| p.neg()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_empty() || other.is_empty() {
            return WindowSeries {
                lead: 0,
                coeffs: Vec::new(),
            };
        }
        let lead = self.lead.min(other.lead);
        let order = self.order().min(other.order());
        let mut out = Self::zero_window(lead, order);
        for e in lead..=order {
            let a = self.coeff(e).unwrap();
            let b = other.coeff(e).unwrap();
            out.set_coeff(e, a.add(&b));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_empty() || other.is_empty() {
            return WindowSeries {
                lead: 0,
                coeffs: Vec::new(),
            };
        }
        let lead = self.lead + other.lead;
        let order = (self.lead + other.order()).min(other.lead + self.order());
        if order < lead {
            return WindowSeries {
                lead: 0,
                coeffs: Vec::new(),
            };
        }
        let mut out = Self::zero_window(lead, order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ea = self.lead + i as i64;
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let e = ea + other.lead + j as i64;
                if e > order {
                    break;
                }
                out.add_to_coeff(e, &a.mul(b));
            }
        }
        out
    }

    /// Multiply by an exact w-polynomial; the window is unchanged.
    pub fn mul_wpoly(&self, p: &WPoly<C>) -> Self {
        WindowSeries {
            lead: self.lead,
            coeffs: self.coeffs.iter().map(|c| c.mul(p)).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        WindowSeries {
            lead: self.lead,
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Multiply by an exact Laurent object in `y` given as
    /// `(y-exponent, w-polynomial)` pairs. The result is exact on
    /// `[lead + min_exp, order + min_exp]`.
    pub fn mul_y_laurent(&self, factors: &[(i64, WPoly<C>)]) -> Self {
        assert!(!factors.is_empty());
        if self.is_empty() {
            return self.clone();
        }
        let pmin = factors.iter().map(|&(e, _)| e).min().unwrap();
        let lead = self.lead + pmin;
        let order = self.order() + pmin;
        let mut out = Self::zero_window(lead, order);
        for &(pe, ref pc) in factors {
            if pc.is_zero() {
                continue;
            }
            for (i, a) in self.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let e = self.lead + i as i64 + pe;
                if e > order {
                    break;
                }
                out.add_to_coeff(e, &a.mul(pc));
            }
        }
        out
    }

    /// Multiply by `psi_y = 2 + y + 1/y`.
    pub fn mul_psi_y(&self) -> Self {
        self.mul_y_laurent(&[
            (-1, WPoly::one()),
            (0, WPoly::constant(C::from_i64(2))),
            (1, WPoly::one()),
        ])
    }

    /// Certify that the series is a Laurent polynomial and return it.
    ///
    /// The floor makes the lowest nonzero exponent `d_min` exact. For a
    /// nonzero series that is secretly a `y <-> 1/y`-symmetric Laurent
    /// polynomial, the top degree must be `-d_min`; everything in the
    /// window above `-d_min` has to vanish, with at least one certified
    /// zero of margin. A nonzero tail (or a series supported only in
    /// positive degrees) is exactly what an uncancelled expansion of
    /// `1/psi_y` looks like, and is rejected.
    pub fn certify_polynomial(&self) -> Result<Laurent2<C>> {
        if self.is_empty() {
            return Err(Error::NotPolynomial("empty window".into()));
        }
        let dmin = (0..self.coeffs.len())
            .find(|&i| !self.coeffs[i].is_zero())
            .map(|i| self.lead + i as i64);
        let Some(dmin) = dmin else {
            // Identically zero on the whole window.
            return Ok(Laurent2::zero());
        };
        if dmin > 0 {
            return Err(Error::NotPolynomial(format!(
                "support starts at positive degree y^{dmin}"
            )));
        }
        let top = -dmin;
        if self.order() < top + 1 {
            return Err(Error::NotPolynomial(format!(
                "window top {} leaves no margin above expected degree {top}",
                self.order()
            )));
        }
        for e in (top + 1)..=self.order() {
            if !self.coeff(e).unwrap().is_zero() {
                return Err(Error::NotPolynomial(format!(
                    "nonzero coefficient at y^{e} beyond expected degree {top}"
                )));
            }
        }
        let mut out = Laurent2::zero();
        for e in dmin..=top {
            for (we, c) in self.coeff(e).unwrap().iter() {
                out.insert_x2(2 * e, 2 * we, c.clone());
            }
        }
        Ok(out)
    }

    /// Compare on every exponent up to `upto`. Both windows must reach
    /// `upto`; returns the first mismatch.
    pub fn agrees_with(&self, other: &Self, upto: i64) -> std::result::Result<(), String> {
        if self.is_empty() || other.is_empty() || self.order() < upto || other.order() < upto {
            return Err(format!(
                "windows end at {} and {}, cannot certify through {upto}",
                self.order(),
                other.order()
            ));
        }
        let lo = self.lead.min(other.lead);
        for e in lo..=upto {
            let a = self.coeff(e).unwrap();
            let b = other.coeff(e).unwrap();
            if a != b {
                return Err(format!("mismatch at y^{e}: left {a}, right {b}"));
            }
        }
        Ok(())
    }
}

impl WindowSeries<BigInt> {
    pub fn to_rational(&self) -> WindowSeries<BigRational> {
        WindowSeries {
            lead: self.lead,
            coeffs: self.coeffs.iter().map(|p| p.to_rational()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type W = WPoly<BigInt>;
    type S = WindowSeries<BigInt>;

    #[test]
    fn psi_w_pow_expands() {
        let p = W::psi_w_pow(1, 3);
        // psi_w^3 = w^3 + 6w^2 + 15w + 20 + 15/w + 6/w^2 + 1/w^3
        for (e, c) in [(3, 1), (2, 6), (1, 15), (0, 20), (-1, 15), (-2, 6), (-3, 1)] {
            assert_eq!(p.coeff(e), BigInt::from(c));
        }
    }

    #[test]
    fn certify_accepts_embedded_polynomial() {
        // psi_y embedded in window [-1, 4]
        let mut s = S::zero_window(-1, 4);
        s.set_coeff(-1, W::one());
        s.set_coeff(0, W::constant(BigInt::from(2)));
        s.set_coeff(1, W::one());
        let p = s.certify_polynomial().unwrap();
        assert_eq!(p, Laurent2::psi_y());
    }

    #[test]
    fn certify_rejects_positive_tail() {
        // y - 2y^2 + 3y^3: the shape of an uncancelled 1/psi_y expansion
        let mut s = S::zero_window(1, 3);
        s.set_coeff(1, W::one());
        s.set_coeff(2, W::constant(BigInt::from(-2)));
        s.set_coeff(3, W::constant(BigInt::from(3)));
        assert!(matches!(
            s.certify_polynomial(),
            Err(Error::NotPolynomial(_))
        ));
    }

    #[test]
    fn certify_rejects_tail_beyond_degree() {
        let mut s = S::zero_window(-1, 4);
        s.set_coeff(-1, W::one());
        s.set_coeff(1, W::one());
        s.set_coeff(3, W::one());
        assert!(matches!(
            s.certify_polynomial(),
            Err(Error::NotPolynomial(_))
        ));
    }

    #[test]
    fn mul_psi_y_times_inverse_window_is_one() {
        // (y - 2y^2 + 3y^3 - ...) * psi_y = 1 within the window
        let order = 8;
        let mut s = S::zero_window(1, order);
        for e in 1..=order {
            let sign = if e % 2 == 1 { 1 } else { -1 };
            s.set_coeff(e, W::constant(BigInt::from(sign * e)));
        }
        let p = s.mul_psi_y();
        assert_eq!(p.lead(), 0);
        assert_eq!(p.order(), order - 1);
        assert_eq!(p.coeff(0).unwrap(), W::one());
        for e in 1..p.order() {
            assert!(p.coeff(e).unwrap().is_zero(), "coefficient at y^{e}");
        }
    }

    #[test]
    fn window_arithmetic_tracks_floors() {
        let mut a = S::zero_window(0, 5);
        a.set_coeff(0, W::one());
        let mut b = S::zero_window(2, 4);
        b.set_coeff(2, W::one());
        let s = a.add(&b);
        assert_eq!(s.lead(), 0);
        assert_eq!(s.order(), 4);
        let p = a.mul(&b);
        assert_eq!(p.lead(), 2);
        assert_eq!(p.order(), 4);
        assert_eq!(p.coeff(2).unwrap(), W::one());
    }
}
