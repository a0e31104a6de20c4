//! The `psi` basis for symmetric Laurent polynomials.
//!
//! `psi_x = 2 + x + 1/x`, and the products `psi_y^h psi_w^m` with
//! `h, m >= 0` form an integral basis of the Laurent polynomials invariant
//! under `y <-> 1/y` and `w <-> 1/w`. Decomposition peels the maximal
//! y-degree first, then the maximal w-degree within each y-layer; the basis
//! is triangular against the monomials, so the decomposition is unique.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::laurent::Laurent2;
use crate::window::{WPoly, WindowSeries};

/// A finite integer combination `sum c_{h,m} psi_y^h psi_w^m`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PsiExpansion {
    entries: BTreeMap<(u32, u32), BigInt>,
}

impl PsiExpansion {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, h: u32, m: u32, c: BigInt) {
        use num_traits::Zero;
        if c.is_zero() {
            return;
        }
        match self.entries.entry((h, m)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn get(&self, h: u32, m: u32) -> Option<&BigInt> {
        self.entries.get(&(h, m))
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> {
        self.entries.iter().map(|(&(h, m), c)| (h, m, c))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Expand back into the monomial basis.
    pub fn reconstruct(&self) -> Laurent2<BigInt> {
        let mut out = Laurent2::zero();
        for (&(h, m), c) in &self.entries {
            let term = Laurent2::psi_y()
                .pow(h)
                .mul(&Laurent2::psi_w().pow(m))
                .scale(c);
            out = out.add(&term);
        }
        out
    }
}

/// Decompose a symmetric integral Laurent polynomial over the psi basis.
pub fn psi_decompose(p: &Laurent2<BigInt>) -> Result<PsiExpansion> {
    if !p.has_integral_exponents() {
        return Err(Error::HalfIntegerLeak);
    }
    if !p.is_symmetric_y() {
        return Err(Error::NotSymmetric { var: 'y' });
    }
    if !p.is_symmetric_w() {
        return Err(Error::NotSymmetric { var: 'w' });
    }
    let mut rest = p.clone();
    let mut out = PsiExpansion::new();
    while !rest.is_zero() {
        let y_x2 = rest.max_y_x2().unwrap();
        let w_x2 = rest.max_w_x2_in_y_layer(y_x2).unwrap();
        // Symmetry puts the top monomial in non-negative degrees.
        debug_assert!(y_x2 >= 0 && w_x2 >= 0);
        let h = (y_x2 / 2) as u32;
        let m = (w_x2 / 2) as u32;
        let c = rest.coeff_x2(y_x2, w_x2);
        let term = Laurent2::psi_y()
            .pow(h)
            .mul(&Laurent2::psi_w().pow(m))
            .scale(&c);
        rest = rest.sub(&term);
        out.insert(h, m, c);
    }
    Ok(out)
}

/// Decompose a rational polynomial, checking integrality first.
pub fn psi_decompose_rational(p: &Laurent2<BigRational>) -> Result<PsiExpansion> {
    psi_decompose(&p.to_integral()?)
}

/// The exact Laurent polynomial `psi_u^g` with `u = -(-y)^k`, for `g >= 0`.
///
/// `u = y^k` for odd `k` and `-y^k` for even `k`; at `k = 1` this is just
/// `psi_y^g`.
pub fn psi_twisted(k: u32, g: u32) -> Laurent2<BigInt> {
    assert!(k >= 1);
    let k = k as i64;
    let s: i64 = if k % 2 == 1 { 1 } else { -1 };
    let mut base = Laurent2::zero();
    base.insert_x2(0, 0, BigInt::from(2));
    base.insert_x2(2 * k, 0, BigInt::from(s));
    base.insert_x2(-2 * k, 0, BigInt::from(s));
    base.pow(g)
}

/// Window expansion of `psi_u^g` with `u = -(-y)^k`, valid for any `g`.
///
/// For `g >= 0` the exact polynomial is embedded on `[-k*g, y_order]`.
/// For `g < 0` the expansion `u^{|g|} (1+u)^{-2|g|}` is materialized on
/// `[k*|g|, y_order]`.
pub fn psi_twisted_window(k: u32, g: i64, y_order: i64) -> Result<WindowSeries<BigInt>> {
    assert!(k >= 1);
    let ki = k as i64;
    if g >= 0 {
        if y_order < ki * g {
            return Err(Error::WindowTooSmall(format!(
                "need y-order >= {} to hold psi^{g} at cover degree {k}",
                ki * g
            )));
        }
        let poly = psi_twisted(k, g as u32);
        let mut out = WindowSeries::zero_window(-ki * g, y_order);
        for (y_x2, _, c) in poly.iter_x2() {
            out.add_to_coeff(y_x2 / 2, &WPoly::constant(c.clone()));
        }
        return Ok(out);
    }
    let big_g = -g; // g = -G with G > 0
    if y_order < ki * big_g {
        return Err(Error::WindowTooSmall(format!(
            "need y-order >= {} to hold the expansion of psi^{g} at cover degree {k}",
            ki * big_g
        )));
    }
    // psi_u^{-G} = u^G (1+u)^{-2G} = sum_j (-1)^j C(2G+j-1, j) u^{G+j},
    // u = s y^k with s = -(-1)^k.
    let s: i64 = if k % 2 == 1 { 1 } else { -1 };
    let mut out = WindowSeries::zero_window(ki * big_g, y_order);
    let mut j = 0i64;
    loop {
        let e = ki * (big_g + j);
        if e > y_order {
            break;
        }
        let mut c = binomial(2 * big_g + j - 1, j);
        if j % 2 == 1 {
            c = -c;
        }
        if s == -1 && (big_g + j) % 2 == 1 {
            c = -c;
        }
        out.add_to_coeff(e, &WPoly::constant(c));
        j += 1;
    }
    Ok(out)
}

/// Binomial coefficient `C(n, k)` for `n, k >= 0`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    assert!(n >= 0 && k >= 0);
    if k > n {
        return BigInt::from(0);
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::HalfInt;

    #[test]
    fn decompose_constant() {
        let one = Laurent2::one();
        let e = psi_decompose(&one).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e.get(0, 0), Some(&BigInt::from(1)));
    }

    #[test]
    fn decompose_psi_y_itself() {
        let e = psi_decompose(&Laurent2::psi_y()).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e.get(1, 0), Some(&BigInt::from(1)));
    }

    #[test]
    fn decompose_psi_y_squared_from_monomials() {
        // y^2 + 4y + 6 + 4/y + 1/y^2 = psi_y^2
        let mut p = Laurent2::zero();
        for (e, c) in [(2i64, 1i64), (1, 4), (0, 6), (-1, 4), (-2, 1)] {
            p.insert_x2(2 * e, 0, BigInt::from(c));
        }
        let e = psi_decompose(&p).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e.get(2, 0), Some(&BigInt::from(1)));
    }

    #[test]
    fn decompose_rejects_asymmetric() {
        let p = Laurent2::monomial(HalfInt::int(1), HalfInt::int(0), BigInt::one());
        assert_eq!(psi_decompose(&p), Err(Error::NotSymmetric { var: 'y' }));
    }

    #[test]
    fn decompose_rejects_half_integer_exponents() {
        let mut p = Laurent2::zero();
        p.insert_x2(1, 0, BigInt::one());
        p.insert_x2(-1, 0, BigInt::one());
        assert_eq!(psi_decompose(&p), Err(Error::HalfIntegerLeak));
    }

    #[test]
    fn reconstruct_is_inverse() {
        let mut e = PsiExpansion::new();
        e.insert(2, 1, BigInt::from(3));
        e.insert(0, 4, BigInt::from(-7));
        e.insert(1, 0, BigInt::from(11));
        let p = e.reconstruct();
        assert_eq!(psi_decompose(&p).unwrap(), e);
    }

    #[test]
    fn twisted_k1_is_psi_y() {
        assert_eq!(psi_twisted(1, 1), Laurent2::psi_y());
    }

    #[test]
    fn twisted_k2_flips_sign() {
        // 2 - y^2 - 1/y^2
        let p = psi_twisted(2, 1);
        assert_eq!(p.coeff(0, 0), BigInt::from(2));
        assert_eq!(p.coeff(2, 0), BigInt::from(-1));
        assert_eq!(p.coeff(-2, 0), BigInt::from(-1));
        assert_eq!(p.num_terms(), 3);
    }

    #[test]
    fn twisted_inverse_window() {
        // psi_y^{-1} on [1, 6]: y - 2y^2 + 3y^3 - 4y^4 + 5y^5 - 6y^6
        let s = psi_twisted_window(1, -1, 6).unwrap();
        assert_eq!(s.lead(), 1);
        for e in 1..=6i64 {
            let sign = if e % 2 == 1 { 1 } else { -1 };
            assert_eq!(s.coeff(e).unwrap(), WPoly::constant(BigInt::from(sign * e)));
        }
    }

    #[test]
    fn twisted_inverse_even_cover() {
        // psi^{-1} at u = -y^2: -y^2 - 2y^4 - 3y^6 - ...
        let s = psi_twisted_window(2, -1, 8).unwrap();
        assert_eq!(s.lead(), 2);
        for (e, c) in [(2i64, -1i64), (4, -2), (6, -3), (8, -4)] {
            assert_eq!(s.coeff(e).unwrap(), WPoly::constant(BigInt::from(c)));
        }
        for e in [3i64, 5, 7] {
            assert!(s.coeff(e).unwrap().is_zero());
        }
    }

    #[test]
    fn twisted_symmetry_for_positive_powers() {
        for k in 1..=3u32 {
            for g in 1..=4u32 {
                assert!(psi_twisted(k, g).is_symmetric_y());
            }
        }
    }

    #[test]
    fn psi_times_twisted_inverse_is_one() {
        let s = psi_twisted_window(1, -1, 7).unwrap();
        let p = s.mul_psi_y();
        assert_eq!(p.coeff(0).unwrap(), WPoly::one());
        for e in 1..=p.order() {
            assert!(p.coeff(e).unwrap().is_zero());
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(3, 5), BigInt::from(0));
    }
}
