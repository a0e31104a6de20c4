//! Three closed-form situations rebuilt from first principles as
//! executable cross-checks: the rigid local curve with involution, the
//! fiber class of an elliptically fibered threefold with a fiberwise
//! involution, and the local football (the conifold with its base
//! involution).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cover::{gv_extract, gv_forward, ClassTable, CoverSeries};
use crate::error::Result;
use crate::forms::macmahon_inverse;
use crate::psi::{binomial, psi_decompose, psi_twisted_window};
use crate::window::{WPoly, WindowSeries};

/// A rigid curve of genus `g` with an involution whose quotient has genus
/// `h`; the involution then has `2m = 2(g + 1 - 2h)` fixed points.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct LocalCurveParams {
    pub g: i64,
    pub h: i64,
}

impl LocalCurveParams {
    pub fn new(g: i64, h: i64) -> Self {
        assert!(g >= 0 && h >= 0 && g + 1 - 2 * h >= 0, "need m = g+1-2h >= 0");
        LocalCurveParams { g, h }
    }

    /// Half the number of fixed points.
    pub fn fixed_half_count(&self) -> i64 {
        self.g + 1 - 2 * self.h
    }
}

/// The degree-one coefficient of the local-curve partition function,
/// computed two ways.
///
/// The computed side enumerates pair moduli directly: a sum of
/// `binom(2m, k) w^{k-m}` over fixed-point subsets against the symmetric
/// powers of the quotient curve with `e(Sym^d) = [t^d](1-t)^{2h-2}`
/// (MacDonald's formula), signed by `(-y)^d` and shifted by `y^{1-h}`.
/// The expected side is `psi_y^{h-1} psi_w^{g+1-2h}` (a window expansion
/// when `h = 0`). Both are returned for comparison.
pub fn local_curve_sides(
    p: LocalCurveParams,
    y_order: i64,
) -> Result<(WindowSeries<BigInt>, WindowSeries<BigInt>)> {
    let m = p.fixed_half_count();
    let h = p.h;

    let mut binom_w = WPoly::zero();
    for k in 0..=(2 * m) {
        binom_w.insert(k - m, binomial(2 * m, k));
    }

    // sum_d e(Sym^d(C/i)) (-y)^d with e(Sym^d) = [t^d](1-t)^{2h-2}
    let inner_order = y_order + h;
    let mut sym = WindowSeries::zero_window(0, inner_order);
    for d in 0..=inner_order {
        let e_sym = if h >= 1 {
            if d <= 2 * h - 2 {
                let b = binomial(2 * h - 2, d);
                if d % 2 == 1 {
                    -b
                } else {
                    b
                }
            } else {
                BigInt::zero()
            }
        } else {
            BigInt::from(d + 1)
        };
        let signed = if d % 2 == 1 { -e_sym } else { e_sym };
        sym.set_coeff(d, WPoly::constant(signed));
    }
    let computed = sym
        .mul_y_laurent(&[(1 - h, WPoly::one())])
        .mul_wpoly(&binom_w);

    let expected =
        psi_twisted_window(1, h - 1, y_order)?.mul_wpoly(&WPoly::psi_w_pow(1, m as u32));
    Ok((computed, expected))
}

/// Euler characteristics of the fixed curve `C0` (the section) and of the
/// 2-torsion triple cover `C1` in the elliptic-fibration example.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct EllipticFiberParams {
    pub e_c0: i64,
    pub e_c1: i64,
}

/// The fiber-class coefficient of the partition function:
/// `sum_{n>=1} (-1)^n n y^n ((w^{-2}+w^{-1}+w+w^2) e(C0) + (w^{-1}+2+w) e(C1))`.
pub fn elliptic_fiber_series(p: EllipticFiberParams, order: i64) -> WindowSeries<BigInt> {
    let mut s = WindowSeries::zero_window(1, order);
    for n in 1..=order {
        let c = if n % 2 == 1 { -n } else { n };
        s.set_coeff(n, WPoly::constant(BigInt::from(c)));
    }
    let mut wp = WPoly::zero();
    for e in [-2i64, -1, 1, 2] {
        wp.insert(e, BigInt::from(p.e_c0));
    }
    for (e, c) in [(-1i64, 1), (0, 2), (1, 1)] {
        wp.insert(e, BigInt::from(c * p.e_c1));
    }
    s.mul_wpoly(&wp)
}

/// Extract the fiber-class invariants `(g, h) -> n`: the series times
/// `psi_y` closes up to a polynomial, which decomposes to
/// `{(1,0): -e(C0), (0,0): 3 e(C0) - e(C1)}` with any zero entries
/// dropped.
pub fn elliptic_fiber_invariants(
    p: EllipticFiberParams,
    order: i64,
) -> Result<BTreeMap<(i64, i64), BigInt>> {
    assert!(order >= 4);
    let cleared = elliptic_fiber_series(p, order).mul_psi_y();
    let poly = cleared.certify_polynomial()?;
    let exp = psi_decompose(&poly)?;
    let mut out = BTreeMap::new();
    for (h, m, c) in exp.iter() {
        let (h, m) = (h as i64, m as i64);
        out.insert((m + 2 * h - 1, h), c.clone());
    }
    Ok(out)
}

/// The reciprocal MacMahon factor `M(Q w^s, -y)^{-1}` as a series in `Q`:
/// the `Q^j` coefficient is `w^{sj}` times the `x^j` row of `M(x, q)^{-1}`
/// evaluated at `q = -y`, exact on the y-window `[0, y_order]`.
pub fn macmahon_factor(s: i64, q_order: i64, y_order: i64) -> CoverSeries {
    let rows = macmahon_inverse(q_order as usize, y_order);
    let mut f = CoverSeries::zero(q_order, y_order);
    for j in 0..=q_order {
        let row = rows.x_coeff(j as usize);
        let mut t = WindowSeries::zero_window(0, y_order);
        for e in 0..=y_order {
            let c = row.coeff_int(e).unwrap().coeff(0, 0);
            if c.is_zero() {
                continue;
            }
            let signed = if e % 2 == 1 { -c } else { c };
            t.set_coeff(e, WPoly::monomial(s * j, BigRational::from_integer(signed)));
        }
        f.set_term(j, t);
    }
    f
}

/// The local-football partition function
/// `Z = M(Q w^{-1}, -y)^{-1} M(Q, -y)^{-2} M(Q w, -y)^{-1}`
/// assembled from the reciprocal MacMahon rows, exact through
/// `Q^{q_order}` on the y-window `[0, y_order]`.
pub fn football_partition(q_order: i64, y_order: i64) -> CoverSeries {
    assert!(q_order >= 1);
    let middle = macmahon_factor(0, q_order, y_order);
    macmahon_factor(-1, q_order, y_order)
        .mul(&middle)
        .mul(&middle)
        .mul(&macmahon_factor(1, q_order, y_order))
}

/// The closed form of `log Z` for the football:
/// `sum_k (1/k) Q^k psi^{-1}_{-(-y)^k} psi_{w^k}` -- the forward transform
/// of the single invariant `n_{0,0}(1) = 1`.
pub fn football_log_closed_form(q_order: i64, y_order: i64) -> Result<CoverSeries> {
    let mut seed = ClassTable::new();
    seed.insert(1, 0, 0, BigInt::one());
    gv_forward(&seed, q_order as u32, q_order, y_order)
}

/// Invariants of the football through degree `q_order`; the expected
/// table is `{(1, 0, 0): 1}` with every other entry zero.
pub fn football_invariants(q_order: i64) -> Result<ClassTable> {
    let y_order = 2 * q_order + 4;
    let z = football_partition(q_order, y_order);
    let log_z = z.log()?;
    gv_extract(&log_z, q_order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn local_curve_g2_h1_is_psi_w() {
        // e(Sym^d) vanishes for d >= 1 at h = 1; both sides equal psi_w
        let (computed, expected) = local_curve_sides(LocalCurveParams::new(2, 1), 8).unwrap();
        computed.agrees_with(&expected, 8).unwrap();
        assert_eq!(computed.coeff(0).unwrap(), WPoly::psi_w_pow(1, 1));
        for e in 1..=6 {
            assert!(computed.coeff(e).unwrap().is_zero());
        }
    }

    #[test]
    fn local_curve_g0_h0_window() {
        // both sides equal psi_w * (y - 2y^2 + 3y^3 - ...)
        let (computed, expected) = local_curve_sides(LocalCurveParams::new(0, 0), 8).unwrap();
        computed.agrees_with(&expected, 8).unwrap();
        assert_eq!(
            computed.coeff(1).unwrap(),
            WPoly::psi_w_pow(1, 1)
        );
        assert_eq!(
            computed.coeff(2).unwrap(),
            WPoly::psi_w_pow(1, 1).scale(&n(-2))
        );
    }

    #[test]
    fn local_curve_g3_h2_no_w_dependence() {
        // m = 0: a single empty subset; Sym series for h = 2 is (1-t)^2
        let (computed, expected) = local_curve_sides(LocalCurveParams::new(3, 2), 8).unwrap();
        computed.agrees_with(&expected, 8).unwrap();
        // equals psi_y exactly
        let p = computed.certify_polynomial().unwrap();
        assert_eq!(p, crate::laurent::Laurent2::psi_y());
    }

    #[test]
    fn local_curve_all_small_genera() {
        for g in 0..=8 {
            for h in 0..=((g + 1) / 2) {
                let (computed, expected) =
                    local_curve_sides(LocalCurveParams::new(g, h), 12).unwrap();
                computed
                    .agrees_with(&expected, 12)
                    .unwrap_or_else(|e| panic!("(g, h) = ({g}, {h}): {e}"));
            }
        }
    }

    #[test]
    fn elliptic_fiber_examples() {
        let cases = [
            ((2, 6), vec![((1, 0), -2)]),
            ((0, 0), vec![]),
            ((-2, -2), vec![((1, 0), 2), ((0, 0), -4)]),
        ];
        for ((e0, e1), expected) in cases {
            let got = elliptic_fiber_invariants(
                EllipticFiberParams { e_c0: e0, e_c1: e1 },
                8,
            )
            .unwrap();
            let want: BTreeMap<(i64, i64), BigInt> = expected
                .into_iter()
                .map(|(k, v)| (k, n(v)))
                .collect();
            assert_eq!(got, want, "e(C0) = {e0}, e(C1) = {e1}");
        }
    }

    #[test]
    fn elliptic_series_is_minus_inverse_psi() {
        // sum (-1)^n n y^n = -1 * window expansion of 1/psi_y
        let p = EllipticFiberParams { e_c0: 1, e_c1: 0 };
        let s = elliptic_fiber_series(p, 10);
        let psi_inv = psi_twisted_window(1, -1, 10).unwrap();
        let wp = {
            let mut w = WPoly::zero();
            for e in [-2i64, -1, 1, 2] {
                w.insert(e, BigInt::one());
            }
            w
        };
        let closed = psi_inv.neg().mul_wpoly(&wp);
        s.agrees_with(&closed, 10).unwrap();
    }

    #[test]
    fn log_of_macmahon_factor_is_twisted_psi_sum() {
        // log M(Q, -y)^{-1} = sum_k (Q^k / k) psi^{-1}_{-(-y)^k}; in
        // particular [Q^2] is half the expansion of -y^2/(1 - y^2)^2.
        let (q_order, y_order) = (4, 9);
        let log_m = macmahon_factor(0, q_order, y_order).log().unwrap();
        for k in 1..=q_order {
            let expect = psi_twisted_window(k as u32, -1, y_order)
                .unwrap()
                .to_rational()
                .scale(&BigRational::new(BigInt::one(), BigInt::from(k)));
            log_m
                .term(k)
                .agrees_with(&expect, y_order)
                .unwrap_or_else(|e| panic!("Q^{k}: {e}"));
        }
        // frozen k = 2 coefficients: (1/2)(-y^2 - 2y^4 - 3y^6 - ...)
        let t2 = log_m.term(2);
        for (e, num, den) in [(2i64, -1i64, 2i64), (4, -1, 1), (6, -3, 2), (8, -2, 1)] {
            assert_eq!(
                t2.coeff(e).unwrap(),
                WPoly::constant(BigRational::new(BigInt::from(num), BigInt::from(den))),
                "y^{e}"
            );
        }
    }

    #[test]
    fn football_log_matches_closed_form() {
        let q_order = 4;
        let y_order = 10;
        let z = football_partition(q_order, y_order);
        let log_z = z.log().unwrap();
        let closed = football_log_closed_form(q_order, y_order).unwrap();
        for m in 1..=q_order {
            log_z
                .term(m)
                .agrees_with(closed.term(m), y_order)
                .unwrap_or_else(|e| panic!("Q^{m}: {e}"));
        }
    }

    #[test]
    fn football_single_invariant() {
        let t = football_invariants(4).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.get(1, 0, 0), Some(&n(1)));
    }
}
