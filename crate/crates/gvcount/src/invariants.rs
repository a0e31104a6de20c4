//! Extraction of the invariant tables: the KKV series of a local K3, the
//! refined counts `n_{g,h}(d; type)` for the five surface types, the
//! independent infinite-product pipeline for the odd types, and the
//! hyperelliptic specialization.
//!
//! Everything is extracted in `psi_y`-cleared form: the defining quotient
//! `Theta_T(q^2, w) / phi_{10,1}(q^2, -y)` equals `-Theta_T R / psi_y`
//! with `R` the reduced KKV kernel, so the polynomial
//! `P_d = -[Theta_T(q^2, w) R(q^2, y)]_{q^d}` decomposes as
//! `sum n_{g,h} psi_y^h psi_w^{g+1-2h}` and never leaves the polynomial
//! ring.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::Result;
use crate::forms::{apply_product, reduced_kkv};
use crate::laurent::{HalfInt, Laurent2};
use crate::lattice::{theta_from_cosets, LatticeTag};
use crate::psi::psi_decompose;
use crate::qseries::QSeries;

type ZP = Laurent2<BigInt>;
type ZS = QSeries<BigInt>;

/// The five surface/divisibility combinations.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum SurfaceType {
    /// Abelian surface, even divisibility.
    AEv,
    /// Abelian surface, odd divisibility.
    AOdd,
    /// Type (I) Nikulin surface, even divisibility.
    NIEv,
    /// Type (I) Nikulin surface, odd divisibility.
    NIOdd,
    /// Type (II) Nikulin surface (any divisibility).
    NII,
}

impl SurfaceType {
    pub const ALL: [SurfaceType; 5] = [
        SurfaceType::AEv,
        SurfaceType::AOdd,
        SurfaceType::NIEv,
        SurfaceType::NIOdd,
        SurfaceType::NII,
    ];

    /// The theta lattice the type selects.
    pub fn lattice_tag(self) -> LatticeTag {
        match self {
            SurfaceType::AEv => LatticeTag::K,
            SurfaceType::AOdd => LatticeTag::KSh,
            SurfaceType::NIEv => LatticeTag::N,
            SurfaceType::NIOdd => LatticeTag::NSh,
            SurfaceType::NII => LatticeTag::N,
        }
    }

    /// Divisibility constraint on `d = beta^2 / 2`: an even-divisibility
    /// class has square divisible by 8, so `d` must be divisible by 4;
    /// a Type (II) Nikulin class always has even `d`.
    pub fn admissible_d(self, d: i64) -> bool {
        match self {
            SurfaceType::AEv | SurfaceType::NIEv => d % 4 == 0,
            SurfaceType::NII => d % 2 == 0,
            SurfaceType::AOdd | SurfaceType::NIOdd => true,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SurfaceType::AEv => "Aev",
            SurfaceType::AOdd => "Aodd",
            SurfaceType::NIEv => "NIev",
            SurfaceType::NIOdd => "NIodd",
            SurfaceType::NII => "NII",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "Aev" => Some(SurfaceType::AEv),
            "Aodd" => Some(SurfaceType::AOdd),
            "NIev" => Some(SurfaceType::NIEv),
            "NIodd" => Some(SurfaceType::NIOdd),
            "NII" => Some(SurfaceType::NII),
            _ => None,
        }
    }
}

/// Refined invariants keyed by `(d, g, h)`, nonzero values only, plus the
/// inadmissible `d` values that were skipped rather than silently zeroed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InvariantTable {
    pub surface: SurfaceType,
    entries: BTreeMap<(i64, i64, i64), BigInt>,
    skipped: Vec<i64>,
}

impl InvariantTable {
    pub fn new(surface: SurfaceType) -> Self {
        InvariantTable {
            surface,
            entries: BTreeMap::new(),
            skipped: Vec::new(),
        }
    }

    pub fn insert(&mut self, d: i64, g: i64, h: i64, n: BigInt) {
        use num_traits::Zero;
        assert!(h >= 0 && g + 1 - 2 * h >= 0, "invalid (g, h) = ({g}, {h})");
        if !n.is_zero() {
            self.entries.insert((d, g, h), n);
        }
    }

    pub fn get(&self, d: i64, g: i64, h: i64) -> Option<&BigInt> {
        self.entries.get(&(d, g, h))
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, i64, i64, &BigInt)> {
        self.entries.iter().map(|(&(d, g, h), n)| (d, g, h, n))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries of a single degree.
    pub fn slice_d(&self, d: i64) -> BTreeMap<(i64, i64), BigInt> {
        self.entries
            .range((d, i64::MIN, i64::MIN)..=(d, i64::MAX, i64::MAX))
            .map(|(&(_, g, h), n)| ((g, h), n.clone()))
            .collect()
    }

    pub fn skipped_d(&self) -> &[i64] {
        &self.skipped
    }

    pub fn mark_skipped(&mut self, d: i64) {
        self.skipped.push(d);
    }

    /// Same nonzero entries (ignores the skip list).
    pub fn same_entries(&self, other: &InvariantTable) -> bool {
        self.entries == other.entries
    }
}

/// KKV invariants `n_h(d)` keyed by `(d, h)`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct KkvTable {
    entries: BTreeMap<(i64, i64), BigInt>,
}

impl KkvTable {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, d: i64, h: i64) -> Option<&BigInt> {
        self.entries.get(&(d, h))
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, i64, &BigInt)> {
        self.entries.iter().map(|(&(d, h), n)| (d, h, n))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }
}

/// The KKV invariants of a single degree: `sum_h n_h(d) psi_y^h` is minus
/// the `q^d` coefficient of the reduced kernel `R(q, y)`.
pub fn kkv_invariants(d: i64) -> Result<BTreeMap<i64, BigInt>> {
    assert!(d >= -1);
    let r = reduced_kkv(d);
    kkv_from_kernel(&r, d)
}

/// All KKV invariants with `d <= d_max`, computed from one kernel window.
pub fn kkv_table(d_max: i64) -> Result<KkvTable> {
    assert!(d_max >= -1);
    let r = reduced_kkv(d_max);
    let mut out = KkvTable::default();
    for d in -1..=d_max {
        for (h, n) in kkv_from_kernel(&r, d)? {
            out.entries.insert((d, h), n);
        }
    }
    Ok(out)
}

fn kkv_from_kernel(r: &ZS, d: i64) -> Result<BTreeMap<i64, BigInt>> {
    let p = r.coeff_int(d).expect("kernel window too small").neg();
    let exp = psi_decompose(&p)?;
    let mut out = BTreeMap::new();
    for (h, m, c) in exp.iter() {
        debug_assert_eq!(m, 0, "KKV coefficient carries a w-dependence");
        out.insert(h as i64, c.clone());
    }
    Ok(out)
}

/// The psi-cleared degree-`d` polynomial
/// `P_d = -[Theta_T(q^2, w) * R(q^2, y)]_{q^d}`, whose decomposition
/// `sum c_{h,m} psi_y^h psi_w^m` stores `n = c` at `(d, g = m + 2h - 1, h)`.
pub fn ngh_polynomial(surface: SurfaceType, d: i64) -> Result<ZP> {
    let prod = theta_kernel_product(surface, d)?;
    Ok(prod.coeff_int(d).expect("window too small").neg())
}

fn theta_kernel_product(surface: SurfaceType, d_max: i64) -> Result<ZS> {
    let tag = surface.lattice_tag();
    let theta = theta_from_cosets(&tag.cosets(), d_max + 2)?;
    let r2 = reduced_kkv((d_max + 1) / 2).dilate(2);
    Ok(theta.mul(&r2))
}

/// The invariant table of a surface type for all admissible `d <= d_max`.
pub fn ngh_table(surface: SurfaceType, d_max: i64) -> Result<InvariantTable> {
    assert!(d_max >= 0);
    let prod = theta_kernel_product(surface, d_max)?;
    let mut table = InvariantTable::new(surface);
    let decomposed: Vec<_> = (0..=d_max)
        .into_par_iter()
        .filter(|&d| surface.admissible_d(d))
        .map(|d| {
            let p = prod.coeff_int(d).expect("window too small").neg();
            psi_decompose(&p).map(|e| (d, e))
        })
        .collect::<Result<Vec<_>>>()?;
    for d in 0..=d_max {
        if !surface.admissible_d(d) {
            table.mark_skipped(d);
        }
    }
    for (d, exp) in decomposed {
        for (h, m, c) in exp.iter() {
            let (h, m) = (h as i64, m as i64);
            table.insert(d, m + 2 * h - 1, h, c.clone());
        }
    }
    Ok(table)
}

/// The two types with an infinite-product formula.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum OddType {
    AOdd,
    NIOdd,
}

impl OddType {
    pub fn surface(self) -> SurfaceType {
        match self {
            OddType::AOdd => SurfaceType::AOdd,
            OddType::NIOdd => SurfaceType::NIOdd,
        }
    }
}

/// The invariant table of an odd type recomputed through its infinite
/// product -- an independent pipeline from [`ngh_table`].
///
/// For the Abelian case the `q^d` coefficient of
/// `-4 prod (1+q^n)^8 (1+wq^n)^4 (1+w^{-1}q^n)^4 /
/// [(1-q^{2n})^4 (1+yq^{2n})^2 (1+y^{-1}q^{2n})^2]`
/// decomposes with exponents `(h, g - 1 - 2h)`; the Nikulin-I case uses
/// the analogous product, exponents `(h, g - 2h)`, and a `q^{d+1}` shift.
pub fn product_side_table(which: OddType, d_max: i64) -> Result<InvariantTable> {
    assert!(d_max >= 0);
    let (series, shift, g_of) = match which {
        OddType::AOdd => (
            aodd_product(d_max),
            0i64,
            (|h: i64, m: i64| m + 1 + 2 * h) as fn(i64, i64) -> i64,
        ),
        OddType::NIOdd => (
            niodd_product(d_max + 1),
            1i64,
            (|h: i64, m: i64| m + 2 * h) as fn(i64, i64) -> i64,
        ),
    };
    let mut table = InvariantTable::new(which.surface());
    for d in 0..=d_max {
        let p = series.coeff_int(d + shift).expect("window too small");
        let exp = psi_decompose(&p)?;
        for (h, m, c) in exp.iter() {
            let (h, m) = (h as i64, m as i64);
            table.insert(d, g_of(h, m), h, c.clone());
        }
    }
    Ok(table)
}

fn aodd_product(order: i64) -> ZS {
    let horder = HalfInt::int(order);
    let mut num = ZS::one(horder);
    for _ in 0..8 {
        apply_product(&mut num, HalfInt::int, |_| ZP::one());
    }
    for _ in 0..4 {
        apply_product(&mut num, HalfInt::int, |_| {
            ZP::monomial_x2(0, 2, BigInt::from(1))
        });
        apply_product(&mut num, HalfInt::int, |_| {
            ZP::monomial_x2(0, -2, BigInt::from(1))
        });
    }
    let den = common_denominator(order, 4);
    num.mul(&den.invert().expect("unit leading coefficient"))
        .scale_i64(-4)
}

fn niodd_product(order: i64) -> ZS {
    let horder = HalfInt::int(order);
    let mut num = ZS::one(horder);
    for _ in 0..4 {
        apply_product(&mut num, HalfInt::int, |_| ZP::one());
    }
    for _ in 0..2 {
        apply_product(&mut num, HalfInt::int, |_| {
            ZP::monomial_x2(0, 2, BigInt::from(1))
        });
        apply_product(&mut num, HalfInt::int, |_| {
            ZP::monomial_x2(0, -2, BigInt::from(1))
        });
    }
    let den = common_denominator(order, 12);
    num.mul(&den.invert().expect("unit leading coefficient"))
        .scale_i64(-1)
}

/// `prod (1-q^{2n})^{e} (1+yq^{2n})^2 (1+y^{-1}q^{2n})^2`.
fn common_denominator(order: i64, e: u32) -> ZS {
    let horder = HalfInt::int(order);
    let mut den = ZS::one(horder);
    for _ in 0..e {
        apply_product(&mut den, |n| HalfInt::int(2 * n), |_| {
            ZP::constant(BigInt::from(-1))
        });
    }
    for _ in 0..2 {
        apply_product(&mut den, |n| HalfInt::int(2 * n), |_| {
            ZP::monomial_x2(2, 0, BigInt::from(1))
        });
        apply_product(&mut den, |n| HalfInt::int(2 * n), |_| {
            ZP::monomial_x2(-2, 0, BigInt::from(1))
        });
    }
    den
}

/// Both sides of the hyperelliptic (h = 0) specialization: the series
/// `sum_d sum_g n_{g,0}(d; Aodd) psi_w^{g-1} q^d` assembled from the
/// computed table, and the closed product
/// `-4 prod (1+wq^n)^4 (1+w^{-1}q^n)^4 / (1-q^n)^8`.
pub fn hyperelliptic_series(d_max: i64) -> Result<(ZS, ZS)> {
    let table = ngh_table(SurfaceType::AOdd, d_max)?;
    let horder = HalfInt::int(d_max);
    let mut left = ZS::zero_window(HalfInt::int(0), horder);
    for (d, g, h, n) in table.iter() {
        if h != 0 {
            continue;
        }
        assert!(g >= 1, "h = 0 entry with non-positive genus");
        let term = Laurent2::psi_w().pow((g - 1) as u32).scale(n);
        let cur = left.coeff_int(d).unwrap();
        left.set_coeff_x2(2 * d, cur.add(&term));
    }

    let mut num = ZS::one(horder);
    for _ in 0..4 {
        apply_product(&mut num, HalfInt::int, |_| {
            ZP::monomial_x2(0, 2, BigInt::from(1))
        });
        apply_product(&mut num, HalfInt::int, |_| {
            ZP::monomial_x2(0, -2, BigInt::from(1))
        });
    }
    let mut den = ZS::one(horder);
    for _ in 0..8 {
        apply_product(&mut den, HalfInt::int, |_| ZP::constant(BigInt::from(-1)));
    }
    let right = num
        .mul(&den.invert().expect("unit leading coefficient"))
        .scale_i64(-4);
    Ok((left, right))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn kkv_degree_minus_one() {
        let m = kkv_invariants(-1).unwrap();
        assert_eq!(m, BTreeMap::from([(0, n(-1))]));
    }

    #[test]
    fn kkv_degree_zero() {
        let m = kkv_invariants(0).unwrap();
        assert_eq!(m, BTreeMap::from([(0, n(-24)), (1, n(2))]));
    }

    #[test]
    fn kkv_genus_zero_specialization() {
        // n_0(d) = -(coefficient of q^{d+1} in prod (1-q^n)^{-24});
        // that series is 1 + 24q + 324q^2 + 3200q^3 + ...
        let t = kkv_table(2).unwrap();
        assert_eq!(t.get(-1, 0), Some(&n(-1)));
        assert_eq!(t.get(0, 0), Some(&n(-24)));
        assert_eq!(t.get(1, 0), Some(&n(-324)));
        assert_eq!(t.get(2, 0), Some(&n(-3200)));
    }

    #[test]
    fn aodd_degree_zero_and_one() {
        let t = ngh_table(SurfaceType::AOdd, 1).unwrap();
        assert_eq!(t.slice_d(0), BTreeMap::from([((1, 0), n(-4))]));
        assert_eq!(t.slice_d(1), BTreeMap::from([((2, 0), n(-16))]));
    }

    #[test]
    fn aodd_degree_two() {
        let t = ngh_table(SurfaceType::AOdd, 2).unwrap();
        assert_eq!(
            t.slice_d(2),
            BTreeMap::from([((2, 0), n(-48)), ((3, 0), n(-24)), ((3, 1), n(8))])
        );
    }

    #[test]
    fn even_types_skip_inadmissible_degrees() {
        let t = ngh_table(SurfaceType::AEv, 3).unwrap();
        assert_eq!(t.skipped_d(), &[1, 2, 3]);
        // d = 0 carries n_{1,1} = 2, n_{0,0} = -16, n_{-1,0} = 8
        assert_eq!(
            t.slice_d(0),
            BTreeMap::from([((1, 1), n(2)), ((0, 0), n(-16)), ((-1, 0), n(8))])
        );
    }

    #[test]
    fn product_side_matches_theta_side_small() {
        let a1 = product_side_table(OddType::AOdd, 4).unwrap();
        let a2 = ngh_table(SurfaceType::AOdd, 4).unwrap();
        assert!(a1.same_entries(&a2));
        let b1 = product_side_table(OddType::NIOdd, 4).unwrap();
        let b2 = ngh_table(SurfaceType::NIOdd, 4).unwrap();
        assert!(b1.same_entries(&b2));
    }

    #[test]
    fn hyperelliptic_sides_agree_small() {
        let (left, right) = hyperelliptic_series(5).unwrap();
        left.agrees_with(&right, HalfInt::int(5)).unwrap();
        // [q^0] = -4, [q^1] = -16 psi_w
        assert_eq!(left.coeff_int(0).unwrap(), ZP::constant(n(-4)));
        assert_eq!(left.coeff_int(1).unwrap(), ZP::psi_w().scale_i64(-16));
    }

    #[test]
    fn nii_table_small() {
        let t = ngh_table(SurfaceType::NII, 2).unwrap();
        assert_eq!(t.skipped_d(), &[1]);
        // d = 0: P_0 = -(24 - 2 psi_y + 8 psi_w - 16)
        assert_eq!(
            t.slice_d(0),
            BTreeMap::from([((1, 1), n(2)), ((0, 0), n(-8)), ((-1, 0), n(-8))])
        );
    }
}
