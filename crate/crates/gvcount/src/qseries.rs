//! Truncated Laurent series in `q` with [`Laurent2`] coefficients.
//!
//! A [`QSeries`] is exact on an inclusive window `[lead, order]` of
//! half-integer q-exponents: coefficients below `lead` are zero, the window
//! coefficients are exact, and everything above `order` is unknown.
//! Operations compute the tightest provable window and never extend it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::laurent::{Coeff, HalfInt, Laurent2};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QSeries<C: Coeff> {
    lead_x2: i64,
    /// Exact coefficients on the half-integer grid; index `i` holds the
    /// coefficient of `q^{(lead_x2 + i)/2}`. Empty means an empty window.
    coeffs: Vec<Laurent2<C>>,
}

impl<C: Coeff> QSeries<C> {
    /// A series of known zeros on the window `[lead, order]`.
    ///
    /// A zero series is known to vanish everywhere up to `order`, so a
    /// nominal `lead > order` collapses to the single-slot window
    /// `[order, order]` rather than to an empty one.
    pub fn zero_window(lead: HalfInt, order: HalfInt) -> Self {
        let mut lead_x2 = lead.doubled();
        let order_x2 = order.doubled();
        if lead_x2 > order_x2 {
            lead_x2 = order_x2;
        }
        let len = (order_x2 - lead_x2 + 1) as usize;
        QSeries {
            lead_x2,
            coeffs: vec![Laurent2::zero(); len],
        }
    }

    /// The constant series 1, exact up to `order`.
    pub fn one(order: HalfInt) -> Self {
        Self::monomial(HalfInt::int(0), Laurent2::one(), order)
    }

    /// The series `poly * q^exp`, exact up to `order`; if the monomial
    /// sits above the window the result is a known-zero window.
    pub fn monomial(exp: HalfInt, poly: Laurent2<C>, order: HalfInt) -> Self {
        let mut s = Self::zero_window(exp, order);
        if exp.doubled() <= order.doubled() {
            s.coeffs[0] = poly;
        }
        s
    }

    pub fn empty() -> Self {
        QSeries {
            lead_x2: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lead(&self) -> HalfInt {
        HalfInt::halves(self.lead_x2)
    }

    pub fn order(&self) -> HalfInt {
        HalfInt::halves(self.order_x2())
    }

    pub(crate) fn lead_x2(&self) -> i64 {
        self.lead_x2
    }

    pub(crate) fn order_x2(&self) -> i64 {
        self.lead_x2 + self.coeffs.len() as i64 - 1
    }

    /// The coefficient of `q^e`. Returns `None` above the window (unknown);
    /// below the window the coefficient is known to be zero.
    pub fn coeff(&self, e: HalfInt) -> Option<Laurent2<C>> {
        self.coeff_x2(e.doubled())
    }

    /// Known coefficient at an integer exponent.
    pub fn coeff_int(&self, e: i64) -> Option<Laurent2<C>> {
        self.coeff_x2(2 * e)
    }

    pub(crate) fn coeff_x2(&self, e_x2: i64) -> Option<Laurent2<C>> {
        if self.is_empty() || e_x2 > self.order_x2() {
            return None;
        }
        if e_x2 < self.lead_x2 {
            return Some(Laurent2::zero());
        }
        Some(self.coeffs[(e_x2 - self.lead_x2) as usize].clone())
    }

    /// Overwrite the coefficient of `q^e`; panics outside the window.
    pub fn set_coeff(&mut self, e: HalfInt, p: Laurent2<C>) {
        self.set_coeff_x2(e.doubled(), p);
    }

    pub(crate) fn set_coeff_x2(&mut self, e_x2: i64, p: Laurent2<C>) {
        assert!(
            !self.is_empty() && e_x2 >= self.lead_x2 && e_x2 <= self.order_x2(),
            "coefficient outside window"
        );
        self.coeffs[(e_x2 - self.lead_x2) as usize] = p;
    }

    /// Iterate `(e_x2, coeff)` over nonzero window entries.
    pub fn iter_nonzero(&self) -> impl Iterator<Item = (HalfInt, &Laurent2<C>)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(move |(i, p)| (HalfInt::halves(self.lead_x2 + i as i64), p))
    }

    /// Drop known-zero coefficients at the bottom of the window.
    pub fn trim_lead(&self) -> Self {
        let mut i = 0;
        while i < self.coeffs.len() && self.coeffs[i].is_zero() {
            i += 1;
        }
        QSeries {
            lead_x2: self.lead_x2 + i as i64,
            coeffs: self.coeffs[i..].to_vec(),
        }
    }

    /// Restrict the window to `[lead, new_order]`. Truncating below the
    /// lead leaves a known-zero window.
    pub fn truncate(&self, new_order: HalfInt) -> Self {
        let new_order_x2 = new_order.doubled();
        if self.is_empty() {
            return Self::empty();
        }
        if new_order_x2 < self.lead_x2 {
            return Self::zero_window(new_order, new_order);
        }
        let len = ((new_order_x2 - self.lead_x2 + 1) as usize).min(self.coeffs.len());
        QSeries {
            lead_x2: self.lead_x2,
            coeffs: self.coeffs[..len].to_vec(),
        }
    }

    pub fn neg(&self) -> Self {
        QSeries {
            lead_x2: self.lead_x2,
            coeffs: self.coeffs.iter().map(|p| p.neg()).collect(),
        }
    }

    /// Sum; exact on the intersection of what both sides know.
    pub fn add(&self, other: &Self) -> Self {
        if self.is_empty() || other.is_empty() {
            return Self::empty();
        }
        let lead_x2 = self.lead_x2.min(other.lead_x2);
        let order_x2 = self.order_x2().min(other.order_x2());
        if order_x2 < lead_x2 {
            return Self::empty();
        }
        let mut out = Self::zero_window(HalfInt::halves(lead_x2), HalfInt::halves(order_x2));
        for e in lead_x2..=order_x2 {
            let a = self.coeff_x2(e).unwrap();
            let b = other.coeff_x2(e).unwrap();
            out.set_coeff_x2(e, a.add(&b));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Product. The window is `[a.lead + b.lead, min(a.lead + b.order,
    /// b.lead + a.order)]`; all retained coefficients are exact.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_empty() || other.is_empty() {
            return Self::empty();
        }
        let lead_x2 = self.lead_x2 + other.lead_x2;
        let order_x2 = (self.lead_x2 + other.order_x2()).min(other.lead_x2 + self.order_x2());
        if order_x2 < lead_x2 {
            return Self::empty();
        }
        let mut out = Self::zero_window(HalfInt::halves(lead_x2), HalfInt::halves(order_x2));
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ea = self.lead_x2 + i as i64;
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let e = ea + other.lead_x2 + j as i64;
                if e > order_x2 {
                    break;
                }
                let idx = (e - lead_x2) as usize;
                out.coeffs[idx] = out.coeffs[idx].add(&a.mul(b));
            }
        }
        out
    }

    /// Multiply in place by the sparse factor `1 + poly * q^exp` (`exp > 0`).
    /// The factor is exact everywhere, so the window is unchanged.
    pub fn mul_one_plus_monomial(&mut self, exp: HalfInt, poly: &Laurent2<C>) {
        let exp_x2 = exp.doubled();
        assert!(exp_x2 > 0, "factor exponent must be positive");
        if self.is_empty() {
            return;
        }
        let n = self.coeffs.len();
        for i in (0..n).rev() {
            let j = i as i64 - exp_x2;
            if j >= 0 {
                let add = self.coeffs[j as usize].mul(poly);
                self.coeffs[i] = self.coeffs[i].add(&add);
            }
        }
    }

    /// Multiply every coefficient by an exact Laurent polynomial; the
    /// window is unchanged.
    pub fn mul_poly(&self, poly: &Laurent2<C>) -> Self {
        QSeries {
            lead_x2: self.lead_x2,
            coeffs: self.coeffs.iter().map(|p| p.mul(poly)).collect(),
        }
    }

    pub fn scale_i64(&self, n: i64) -> Self {
        self.mul_poly(&Laurent2::constant(C::from_i64(n)))
    }

    /// Multiply by `q^shift`.
    pub fn shift_q(&self, shift: HalfInt) -> Self {
        QSeries {
            lead_x2: self.lead_x2 + shift.doubled(),
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        assert!(e >= 1, "use an explicit window for the empty product");
        let mut base = self.clone();
        let mut e = e;
        let mut acc: Option<Self> = None;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc.unwrap()
    }

    /// Apply a transform to every window coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&Laurent2<C>) -> Laurent2<C>) -> Self {
        QSeries {
            lead_x2: self.lead_x2,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Substitute `q -> q^k`.
    pub fn dilate(&self, k: u32) -> Self {
        assert!(k >= 1);
        let k = k as i64;
        if self.is_empty() {
            return Self::empty();
        }
        let len = (self.coeffs.len() as i64 - 1) * k + 1;
        let mut coeffs = vec![Laurent2::zero(); len as usize];
        for (i, p) in self.coeffs.iter().enumerate() {
            coeffs[i * k as usize] = p.clone();
        }
        QSeries {
            lead_x2: self.lead_x2 * k,
            coeffs,
        }
    }

    /// Multiplicative inverse. Requires the leading coefficient to be a
    /// unit monomial `c * y^a * w^b` of the coefficient ring; the result
    /// has lead `-self.lead` and the same window width.
    pub fn invert(&self) -> Result<Self> {
        let s = self.trim_lead();
        if s.is_empty() {
            return Err(Error::NonUnitLeading);
        }
        let lead_poly = &s.coeffs[0];
        let mut it = lead_poly.iter_x2();
        let (ya, wa, c) = match (it.next(), it.next()) {
            (Some(t), None) => t,
            _ => return Err(Error::NonUnitLeading),
        };
        if !c.is_unit() {
            return Err(Error::NonUnitLeading);
        }
        let lead_inv = Laurent2::monomial_x2(-ya, -wa, c.inv_unit());

        // Normalize to 1 + t with t of positive lead, invert by the
        // standard recurrence, then shift back.
        let width = s.coeffs.len();
        let mut inv: Vec<Laurent2<C>> = Vec::with_capacity(width);
        inv.push(Laurent2::one());
        for n in 1..width {
            // r_n = -sum_{k=1..n} t_k * r_{n-k}, with t_k = a_k * lead_inv.
            let mut acc = Laurent2::zero();
            for k in 1..=n {
                if s.coeffs[k].is_zero() || inv[n - k].is_zero() {
                    continue;
                }
                let t_k = s.coeffs[k].mul(&lead_inv);
                acc = acc.add(&t_k.mul(&inv[n - k]));
            }
            inv.push(acc.neg());
        }
        let coeffs = inv.into_iter().map(|p| p.mul(&lead_inv)).collect();
        Ok(QSeries {
            lead_x2: -s.lead_x2,
            coeffs,
        })
    }

    /// Compare against `other` on every exponent up to `upto`. Both
    /// windows must reach `upto`; returns the first mismatch.
    pub fn agrees_with(&self, other: &Self, upto: HalfInt) -> std::result::Result<(), String> {
        let hi = upto.doubled();
        if self.is_empty() || other.is_empty() || self.order_x2() < hi || other.order_x2() < hi
        {
            return Err(format!(
                "windows end at {} and {}, cannot certify through {}",
                HalfInt::halves(self.order_x2()),
                HalfInt::halves(other.order_x2()),
                upto
            ));
        }
        let lo = self.lead_x2.min(other.lead_x2);
        for e in lo..=hi {
            let a = self.coeff_x2(e).unwrap();
            let b = other.coeff_x2(e).unwrap();
            if a != b {
                return Err(format!(
                    "mismatch at q^({}): left {a}, right {b}",
                    HalfInt::halves(e)
                ));
            }
        }
        Ok(())
    }
}

impl QSeries<BigInt> {
    pub fn to_rational(&self) -> QSeries<BigRational> {
        QSeries {
            lead_x2: self.lead_x2,
            coeffs: self.coeffs.iter().map(|p| p.to_rational()).collect(),
        }
    }
}

impl QSeries<BigRational> {
    pub fn to_integral(&self) -> Result<QSeries<BigInt>> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|p| p.to_integral())
            .collect::<Result<Vec<_>>>()?;
        Ok(QSeries {
            lead_x2: self.lead_x2,
            coeffs,
        })
    }

    /// Logarithm of a series starting with constant term 1, via the
    /// derivative recurrence `e b_e = e a_e - sum_{0<j<e} j b_j a_{e-j}`.
    pub fn log(&self) -> Result<Self> {
        let s = self.trim_lead();
        if s.is_empty() || s.lead_x2 != 0 || s.coeffs[0] != Laurent2::one() {
            return Err(Error::BadConstantTerm);
        }
        let width = s.coeffs.len();
        let mut out: Vec<Laurent2<BigRational>> = Vec::with_capacity(width);
        out.push(Laurent2::zero());
        for e in 1..width {
            let mut acc = s.coeffs[e].scale(&BigRational::from_integer(BigInt::from(e as i64)));
            for (j, b_j) in out.iter().enumerate().skip(1) {
                if b_j.is_zero() || s.coeffs[e - j].is_zero() {
                    continue;
                }
                let term = b_j
                    .mul(&s.coeffs[e - j])
                    .scale(&BigRational::from_integer(BigInt::from(j as i64)));
                acc = acc.sub(&term);
            }
            out.push(acc.scale(&BigRational::new(BigInt::one(), BigInt::from(e as i64))));
        }
        Ok(QSeries {
            lead_x2: 0,
            coeffs: out,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type ZS = QSeries<BigInt>;
    type ZP = Laurent2<BigInt>;

    fn int_series(lead: i64, cs: &[i64], order: i64) -> ZS {
        let mut s = ZS::zero_window(HalfInt::int(lead), HalfInt::int(order));
        for (i, &c) in cs.iter().enumerate() {
            s.set_coeff_x2(2 * (lead + i as i64), ZP::constant(BigInt::from(c)));
        }
        s
    }

    #[test]
    fn difference_of_squares() {
        // (1 + q)(1 - q) = 1 - q^2
        let a = int_series(0, &[1, 1], 5);
        let b = int_series(0, &[1, -1], 5);
        let p = a.mul(&b);
        assert_eq!(p.lead(), HalfInt::int(0));
        assert_eq!(p.order(), HalfInt::int(5));
        assert_eq!(p.coeff_int(0).unwrap(), ZP::one());
        assert!(p.coeff_int(1).unwrap().is_zero());
        assert_eq!(p.coeff_int(2).unwrap(), ZP::constant(BigInt::from(-1)));
        assert!(p.coeff_int(3).unwrap().is_zero());
    }

    #[test]
    fn inverse_monomials_cancel() {
        // q^{-1} * q = 1
        let a = ZS::monomial(HalfInt::int(-1), ZP::one(), HalfInt::int(3));
        let b = ZS::monomial(HalfInt::int(1), ZP::one(), HalfInt::int(3));
        let p = a.mul(&b);
        assert_eq!(p.coeff_int(0).unwrap(), ZP::one());
        assert_eq!(p.lead(), HalfInt::int(0));
    }

    #[test]
    fn geometric_series_inverse() {
        // 1/(1 - q) = 1 + q + q^2 + ...
        let a = int_series(0, &[1, -1, 0, 0, 0, 0], 5);
        let inv = a.invert().unwrap();
        for e in 0..=5 {
            assert_eq!(inv.coeff_int(e).unwrap(), ZP::one());
        }
    }

    #[test]
    fn invert_rejects_non_unit_leading() {
        // -psi_y * q^2 has a non-monomial leading coefficient
        let s = ZS::monomial(HalfInt::int(2), ZP::psi_y().neg(), HalfInt::int(6));
        assert_eq!(s.invert(), Err(Error::NonUnitLeading));
    }

    #[test]
    fn invert_unit_monomial_leading() {
        // (-y q^2)^{-1} = -y^{-1} q^{-2}
        let s = ZS::monomial(
            HalfInt::int(2),
            ZP::monomial(HalfInt::int(1), HalfInt::int(0), BigInt::from(-1)),
            HalfInt::int(6),
        );
        let inv = s.invert().unwrap();
        assert_eq!(inv.lead(), HalfInt::int(-2));
        assert_eq!(
            inv.coeff_int(-2).unwrap(),
            ZP::monomial(HalfInt::int(-1), HalfInt::int(0), BigInt::from(-1))
        );
    }

    #[test]
    fn mercator_series() {
        // log(1 + q) = q - q^2/2 + q^3/3 - ...
        let a = int_series(0, &[1, 1, 0, 0, 0, 0], 5).to_rational();
        let l = a.log().unwrap();
        for e in 1..=5i64 {
            let expect = BigRational::new(BigInt::from(if e % 2 == 1 { 1 } else { -1 }), BigInt::from(e));
            assert_eq!(l.coeff_int(e).unwrap(), Laurent2::constant(expect));
        }
    }

    #[test]
    fn log_of_geometric() {
        // log(1/(1-q)) = sum q^k / k
        let a = int_series(0, &[1, -1, 0, 0, 0, 0, 0, 0], 7);
        let inv = a.invert().unwrap().to_rational();
        let l = inv.log().unwrap();
        for e in 1..=7i64 {
            let expect = BigRational::new(BigInt::one(), BigInt::from(e));
            assert_eq!(l.coeff_int(e).unwrap(), Laurent2::constant(expect));
        }
    }

    #[test]
    fn log_rejects_bad_constant_term() {
        let a = int_series(0, &[2, 1], 1).to_rational();
        assert_eq!(a.log(), Err(Error::BadConstantTerm));
    }

    #[test]
    fn dilate_shifts_exponents() {
        let a = int_series(0, &[1, 1], 1);
        let d = a.dilate(2);
        assert_eq!(d.order(), HalfInt::int(2));
        assert_eq!(d.coeff_int(0).unwrap(), ZP::one());
        assert!(d.coeff_int(1).unwrap().is_zero());
        assert_eq!(d.coeff_int(2).unwrap(), ZP::one());
        // dilate by 1 is the identity
        assert_eq!(a.dilate(1), a);
    }

    #[test]
    fn window_tightness() {
        // [0,3] x [1,2]: lead 1, order min(0+2, 1+3) = 2
        let a = int_series(0, &[1, 1, 1, 1], 3);
        let b = int_series(1, &[1, 1], 2);
        let p = a.mul(&b);
        assert_eq!(p.lead(), HalfInt::int(1));
        assert_eq!(p.order(), HalfInt::int(2));
    }
}
