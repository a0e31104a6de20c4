//! Coset enumeration for the Kummer and Nikulin lattices and their shifted
//! variants, with theta-series evaluation two independent ways.
//!
//! Both lattices sit between the exceptional lattice `Lambda = (+) Z<E_i>`
//! (with `E_i^2 = -2`) and its dual `Lambda^v = Lambda/2`, so every glue
//! class is `rho = (1/2) sum rho_i E_i` with `rho_i in {0, 1}` -- a bit
//! vector. The coset method evaluates `Theta_T(q^2, w)` as
//! `sum_rho theta_0^{c0(rho)} theta_1^{c1(rho)}`; the brute-force oracle
//! enumerates lattice vectors directly.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::forms::theta_rank1;
use crate::laurent::HalfInt;
use crate::qseries::QSeries;

type ZS = QSeries<BigInt>;

/// A glue-group representative `rho = (1/2) sum rho_i E_i`, stored as the
/// bit vector `rho_i` over the lattice rank (8 or 16).
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct CosetRep {
    bits: u16,
    rank: u8,
}

impl CosetRep {
    pub fn new(bits: u16, rank: u8) -> Self {
        assert!(rank == 8 || rank == 16);
        assert!(rank == 16 || bits < (1 << 8));
        CosetRep { bits, rank }
    }

    pub fn bits(&self) -> u16 {
        self.bits
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    /// Number of half-integer coordinates.
    pub fn c1(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Number of integer coordinates.
    pub fn c0(&self) -> u32 {
        self.rank as u32 - self.c1()
    }

    pub fn bit(&self, i: u8) -> bool {
        (self.bits >> i) & 1 == 1
    }
}

/// Index of a point of `F_2^4` in lexicographic coordinate order: the
/// point `(p1, p2, p3, p4)` sits at `8 p1 + 4 p2 + 2 p3 + p4`.
fn point_coords(index: u8) -> [u8; 4] {
    [
        (index >> 3) & 1,
        (index >> 2) & 1,
        (index >> 1) & 1,
        index & 1,
    ]
}

/// The 32 glue classes of the Kummer lattice: the affine linear maps
/// `F_2^4 -> F_2` (including the two constants), evaluated pointwise into
/// bit vectors of length 16.
pub fn kummer_cosets() -> Vec<CosetRep> {
    let mut out = Vec::with_capacity(32);
    for a in 0u8..16 {
        for c in 0u8..2 {
            let av = point_coords(a);
            let mut bits: u16 = 0;
            for p in 0u8..16 {
                let pv = point_coords(p);
                let mut v = c;
                for i in 0..4 {
                    v ^= av[i] & pv[i];
                }
                if v == 1 {
                    bits |= 1 << p;
                }
            }
            out.push(CosetRep::new(bits, 16));
        }
    }
    out
}

/// Characteristic bit vector of the plane `P1 = span(e1, e2)`.
fn plane_p1_bits() -> u16 {
    let mut bits: u16 = 0;
    for p in 0u8..16 {
        let pv = point_coords(p);
        if pv[2] == 0 && pv[3] == 0 {
            bits |= 1 << p;
        }
    }
    bits
}

/// Characteristic bit vector of the symmetric difference `P1 (delta) P2`
/// with `P2 = span(e3, e4)`.
fn plane_p1_delta_p2_bits() -> u16 {
    let mut bits: u16 = 0;
    for p in 0u8..16 {
        let pv = point_coords(p);
        let in_p1 = pv[2] == 0 && pv[3] == 0;
        let in_p2 = pv[0] == 0 && pv[1] == 0;
        if in_p1 != in_p2 {
            bits |= 1 << p;
        }
    }
    bits
}

/// The two halves of the shifted Kummer classes: `K + r0` (shift by the
/// characteristic function of `P1`) and `K + r1` (shift by that of
/// `P1 (delta) P2`), 32 classes each.
pub fn kummer_shifted_parts() -> (Vec<CosetRep>, Vec<CosetRep>) {
    let r0 = plane_p1_bits();
    let r1 = plane_p1_delta_p2_bits();
    let base = kummer_cosets();
    let part0 = base
        .iter()
        .map(|r| CosetRep::new(r.bits ^ r0, 16))
        .collect();
    let part1 = base
        .iter()
        .map(|r| CosetRep::new(r.bits ^ r1, 16))
        .collect();
    (part0, part1)
}

/// All 64 glue classes of the shifted Kummer lattice.
pub fn kummer_shifted_cosets() -> Vec<CosetRep> {
    let (mut a, mut b) = kummer_shifted_parts();
    a.append(&mut b);
    a
}

/// The 2 glue classes of the Nikulin lattice: `0` and
/// `(1/2)(E_1 + ... + E_8)`.
pub fn nikulin_cosets() -> Vec<CosetRep> {
    vec![CosetRep::new(0x00, 8), CosetRep::new(0xff, 8)]
}

/// The 4 glue classes of the shifted Nikulin lattice:
/// `(1/2)(E_1+E_2)`, `(1/2)(E_3+...+E_8)`, `(1/2)(E_1+...+E_4)`,
/// `(1/2)(E_5+...+E_8)`.
pub fn nikulin_shifted_cosets() -> Vec<CosetRep> {
    vec![
        CosetRep::new(0b0000_0011, 8),
        CosetRep::new(0b1111_1100, 8),
        CosetRep::new(0b0000_1111, 8),
        CosetRep::new(0b1111_0000, 8),
    ]
}

/// The four theta inputs appearing in the classification of integral
/// classes.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum LatticeTag {
    K,
    KSh,
    N,
    NSh,
}

impl LatticeTag {
    pub fn cosets(self) -> Vec<CosetRep> {
        match self {
            LatticeTag::K => kummer_cosets(),
            LatticeTag::KSh => kummer_shifted_cosets(),
            LatticeTag::N => nikulin_cosets(),
            LatticeTag::NSh => nikulin_shifted_cosets(),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            LatticeTag::K => "K",
            LatticeTag::KSh => "Ksh",
            LatticeTag::N => "N",
            LatticeTag::NSh => "Nsh",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "K" => Some(LatticeTag::K),
            "Ksh" => Some(LatticeTag::KSh),
            "N" => Some(LatticeTag::N),
            "Nsh" => Some(LatticeTag::NSh),
            _ => None,
        }
    }
}

/// Surface kind entering the lattice selection.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Surface {
    Abelian,
    NikulinI,
    NikulinII,
}

/// Parity of the divisibility of the curve class.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Parity {
    Even,
    Odd,
}

/// Selector for the theta lattice of a surface/parity combination.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct GammaSelector {
    pub surface: Surface,
    pub parity: Parity,
}

/// Which (shifted) lattice carries the integral classes: a Type (II)
/// Nikulin surface always selects `N`; otherwise even multiples see the
/// plain lattice and odd multiples the shifted one.
pub fn gamma_select(sel: GammaSelector) -> LatticeTag {
    match (sel.surface, sel.parity) {
        (Surface::NikulinII, _) => LatticeTag::N,
        (Surface::NikulinI, Parity::Even) => LatticeTag::N,
        (Surface::NikulinI, Parity::Odd) => LatticeTag::NSh,
        (Surface::Abelian, Parity::Even) => LatticeTag::K,
        (Surface::Abelian, Parity::Odd) => LatticeTag::KSh,
    }
}

/// Evaluate `Theta_T(q^2, w) = sum_rho theta_0^{c0} theta_1^{c1}` over the
/// given glue classes. Fails with [`Error::HalfIntegerLeak`] if the result
/// does not close up to integral exponents.
pub fn theta_from_cosets(cosets: &[CosetRep], order: i64) -> Result<ZS> {
    if cosets.is_empty() {
        return Ok(ZS::zero_window(HalfInt::int(0), HalfInt::int(order)));
    }
    let rank = cosets[0].rank();
    assert!(cosets.iter().all(|r| r.rank() == rank));

    // Histogram of c1 values; each power pair is computed once.
    let mut mult = std::collections::BTreeMap::<u32, i64>::new();
    for r in cosets {
        *mult.entry(r.c1()).or_insert(0) += 1;
    }
    let horder = HalfInt::int(order);
    let t0 = theta_rank1(0, horder);
    let t1 = theta_rank1(1, horder);
    let mut acc = ZS::zero_window(HalfInt::int(0), horder);
    for (&c1, &count) in &mult {
        let c0 = rank as u32 - c1;
        let mut term = ZS::one(horder);
        if c0 > 0 {
            term = term.mul(&t0.pow(c0));
        }
        if c1 > 0 {
            term = term.mul(&t1.pow(c1));
        }
        acc = acc.add(&term.scale_i64(count));
    }
    let acc = acc.truncate(horder);
    for (_, p) in acc.iter_nonzero() {
        if !p.has_integral_exponents() {
            return Err(Error::HalfIntegerLeak);
        }
    }
    // Exponent grid check in q as well.
    if acc.lead_x2() % 2 != 0 {
        return Err(Error::HalfIntegerLeak);
    }
    Ok(acc)
}

/// Brute-force evaluation of the same theta series by direct enumeration
/// of lattice vectors `v = rho + (integer vector)` with norm inside the
/// window.
///
/// Coordinates are doubled (`u_i = 2 v_i`, with `u_i` odd exactly on the
/// support of `rho`), so the doubled q-exponent of `q^{2 sum v_i^2}` is
/// `sum u_i^2` and the doubled w-exponent of `w^{sum v_i}` is `sum u_i`.
pub fn theta_bruteforce(cosets: &[CosetRep], order: i64) -> ZS {
    let horder = HalfInt::int(order);
    if cosets.is_empty() {
        return ZS::zero_window(HalfInt::int(0), horder);
    }
    let rank = cosets[0].rank();
    assert!(cosets.iter().all(|r| r.rank() == rank));
    let norm_cap = 2 * order; // sum u_i^2 <= 2 * order
    if norm_cap < 0 {
        return ZS::zero_window(HalfInt::int(0), horder);
    }

    // |sum u_i| <= sqrt(rank * norm_cap)
    let wspan = ((rank as i64 * norm_cap) as f64).sqrt() as i64 + 1;
    let hists: Vec<Vec<Vec<i64>>> = cosets
        .par_iter()
        .map(|rho| {
            let mut hist =
                vec![vec![0i64; (2 * wspan + 1) as usize]; (norm_cap + 1) as usize];
            enumerate_coset(*rho, norm_cap, wspan, &mut hist);
            hist
        })
        .collect();

    let mut acc = ZS::zero_window(HalfInt::int(0), horder);
    for hist in &hists {
        for (norm, row) in hist.iter().enumerate() {
            let mut p = acc.coeff_x2(norm as i64).unwrap();
            for (si, &count) in row.iter().enumerate() {
                if count != 0 {
                    p.insert_x2(0, si as i64 - wspan, BigInt::from(count));
                }
            }
            acc.set_coeff_x2(norm as i64, p);
        }
    }
    acc
}

/// Depth-first enumeration over doubled coordinates with norm pruning.
/// Offsets per coordinate are bounded by `|u_i| <= 2*(ceil(sqrt(order/2)) + 1)`,
/// which the norm bound `u_i^2 <= norm_cap` subsumes.
fn enumerate_coset(rho: CosetRep, norm_cap: i64, wspan: i64, hist: &mut [Vec<i64>]) {
    let rank = rho.rank();
    // Minimal remaining norm: each half-integer coordinate costs at least 1.
    let mut suffix_min = vec![0i64; rank as usize + 1];
    for i in (0..rank).rev() {
        suffix_min[i as usize] = suffix_min[i as usize + 1] + if rho.bit(i) { 1 } else { 0 };
    }
    let mut walker = CosetWalker {
        rho,
        norm_cap,
        wspan,
        suffix_min,
        hist,
    };
    walker.descend(0, 0, 0);
}

struct CosetWalker<'a> {
    rho: CosetRep,
    norm_cap: i64,
    wspan: i64,
    suffix_min: Vec<i64>,
    hist: &'a mut [Vec<i64>],
}

impl CosetWalker<'_> {
    fn descend(&mut self, i: u8, norm: i64, sum: i64) {
        if i == self.rho.rank() {
            self.hist[norm as usize][(sum + self.wspan) as usize] += 1;
            return;
        }
        let rem = self.norm_cap - norm - self.suffix_min[i as usize + 1];
        let odd = self.rho.bit(i);
        if !odd && rem >= 0 {
            self.descend(i + 1, norm, sum);
        }
        let mut u = if odd { 1 } else { 2 };
        while u * u <= rem {
            let n2 = norm + u * u;
            self.descend(i + 1, n2, sum + u);
            self.descend(i + 1, n2, sum - u);
            u += 2;
        }
    }
}
