//! Constructors for the named q-series: the rank-1 theta functions, the
//! discriminant cusp form and its square root at `q^2`, the weight-10
//! Jacobi cusp form, the reduced KKV kernel, and MacMahon's generating
//! function for plane partitions.
//!
//! Infinite products are truncated at `n <= order`; every omitted factor
//! only contributes exponents above the window, so the retained
//! coefficients are exact.

use num_bigint::BigInt;
use num_traits::One;

use crate::laurent::{HalfInt, Laurent2};
use crate::psi::binomial;
use crate::qseries::QSeries;

type ZP = Laurent2<BigInt>;
type ZS = QSeries<BigInt>;

/// Multiply `acc` by `prod_{n=1..} (1 + poly(n) * q^{exp(n)})` for all `n`
/// with `exp(n)` inside the window.
pub(crate) fn apply_product(acc: &mut ZS, exp: impl Fn(i64) -> HalfInt, poly: impl Fn(i64) -> ZP) {
    let order_x2 = acc.order_x2();
    let mut n = 1i64;
    loop {
        let e = exp(n);
        if e.doubled() > order_x2 {
            break;
        }
        acc.mul_one_plus_monomial(e, &poly(n));
        n += 1;
    }
}

/// `prod (1 - q^n)` up to the given order.
fn euler_product(order: i64) -> ZS {
    let mut acc = ZS::one(HalfInt::int(order));
    apply_product(&mut acc, HalfInt::int, |_| ZP::constant(BigInt::from(-1)));
    acc
}

/// The rank-1 theta function `theta_i(q^2, w) = sum_{k in Z + i/2}
/// q^{2k^2} w^k`, by direct summation.
///
/// `theta_0` has integral exponents; `theta_1` lives on the half-integer
/// grid in both `q` and `w`.
pub fn theta_rank1(i: u8, order: HalfInt) -> ZS {
    assert!(i == 0 || i == 1, "only theta_0 and theta_1 exist in rank 1");
    let order_x2 = order.doubled();
    let lead = if i == 0 {
        HalfInt::int(0)
    } else {
        HalfInt::halves(1)
    };
    let mut s = ZS::zero_window(lead, order);
    // k = j + i/2; q-exponent 2k^2 doubles to (2j + i)^2, w doubles to 2j + i.
    let mut j = 0i64;
    loop {
        let t = 2 * j + i as i64;
        let q_x2 = t * t;
        if q_x2 > order_x2 {
            break;
        }
        let mut p = ZP::monomial_x2(0, t, BigInt::one());
        if t != 0 {
            p.insert_x2(0, -t, BigInt::one());
        }
        let cur = s.coeff_x2(q_x2).unwrap();
        s.set_coeff_x2(q_x2, cur.add(&p));
        j += 1;
    }
    s
}

/// The same theta functions through the Jacobi triple product:
/// `theta_0 = prod (1-q^{4n})(1+wq^{4n-2})(1+w^{-1}q^{4n-2})` and
/// `theta_1 = q^{1/2}(w^{1/2}+w^{-1/2}) prod (1-q^{4n})(1+wq^{4n})(1+w^{-1}q^{4n})`.
pub fn theta_rank1_product(i: u8, order: HalfInt) -> ZS {
    assert!(i == 0 || i == 1);
    if i == 0 {
        let mut acc = ZS::one(order);
        apply_product(&mut acc, |n| HalfInt::int(4 * n), |_| ZP::constant(BigInt::from(-1)));
        apply_product(
            &mut acc,
            |n| HalfInt::int(4 * n - 2),
            |_| ZP::monomial_x2(0, 2, BigInt::one()),
        );
        apply_product(
            &mut acc,
            |n| HalfInt::int(4 * n - 2),
            |_| ZP::monomial_x2(0, -2, BigInt::one()),
        );
        acc
    } else {
        let mut pre = ZP::monomial_x2(0, 1, BigInt::one());
        pre.insert_x2(0, -1, BigInt::one());
        let mut acc = ZS::monomial(HalfInt::halves(1), pre, order);
        apply_product(&mut acc, |n| HalfInt::int(4 * n), |_| ZP::constant(BigInt::from(-1)));
        apply_product(
            &mut acc,
            |n| HalfInt::int(4 * n),
            |_| ZP::monomial_x2(0, 2, BigInt::one()),
        );
        apply_product(
            &mut acc,
            |n| HalfInt::int(4 * n),
            |_| ZP::monomial_x2(0, -2, BigInt::one()),
        );
        acc
    }
}

/// The discriminant form `Delta(q) = q prod (1-q^n)^24`.
pub fn delta(order: i64) -> ZS {
    assert!(order >= 1);
    euler_product(order - 1)
        .pow(24)
        .shift_q(HalfInt::int(1))
}

/// The square root `q prod (1-q^{2n})^12` of `Delta(q^2)`, normalized with
/// positive leading coefficient. Its square is `Delta(q^2)` on the window.
pub fn delta_half_at_q2(order: i64) -> ZS {
    assert!(order >= 1);
    let mut acc = ZS::one(HalfInt::int(order - 1));
    apply_product(&mut acc, |n| HalfInt::int(2 * n), |_| ZP::constant(BigInt::from(-1)));
    acc.pow(12).shift_q(HalfInt::int(1))
}

/// Which sign convention to build `phi_{10,1}` in.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum PhiSign {
    /// `phi_{10,1}(q, y)` itself.
    AsIs,
    /// `phi_{10,1}(q, -y)`, the form entering the KKV kernel.
    YNegated,
}

/// The unique weight-10 index-1 Jacobi cusp form
/// `phi_{10,1}(q, y) = -psi_{-y} q prod (1-yq^n)^2 (1-y^{-1}q^n)^2 (1-q^n)^20`.
///
/// With `sign = YNegated` every `-y` becomes `+y` and the prefactor is
/// `-psi_y`.
pub fn phi_10_1(order: i64, sign: PhiSign) -> ZS {
    assert!(order >= 1);
    let s: i64 = match sign {
        PhiSign::AsIs => -1,
        PhiSign::YNegated => 1,
    };
    // prefactor: -psi_{-y} = y - 2 + 1/y for AsIs, -psi_y for YNegated.
    let mut pre = ZP::zero();
    pre.insert_x2(0, 0, BigInt::from(-2));
    pre.insert_x2(2, 0, BigInt::from(-s));
    pre.insert_x2(-2, 0, BigInt::from(-s));
    let inner = order - 1;
    let mut acc = ZS::one(HalfInt::int(inner));
    apply_product(&mut acc, HalfInt::int, |_| {
        ZP::monomial_x2(2, 0, BigInt::from(s))
    });
    apply_product(&mut acc, HalfInt::int, |_| {
        ZP::monomial_x2(2, 0, BigInt::from(s))
    });
    apply_product(&mut acc, HalfInt::int, |_| {
        ZP::monomial_x2(-2, 0, BigInt::from(s))
    });
    apply_product(&mut acc, HalfInt::int, |_| {
        ZP::monomial_x2(-2, 0, BigInt::from(s))
    });
    let e20 = euler_product(inner).pow(20);
    acc.mul(&e20).mul_poly(&pre).shift_q(HalfInt::int(1))
}

/// The reduced KKV kernel
/// `R(q, y) = [q prod (1+yq^n)^2 (1+y^{-1}q^n)^2 (1-q^n)^20]^{-1}`,
/// so that `1/phi_{10,1}(q, -y) = -R/psi_y`. The lead is `q^{-1}`.
pub fn reduced_kkv(order: i64) -> ZS {
    assert!(order >= -1);
    let inner = order + 1;
    let mut acc = ZS::one(HalfInt::int(inner));
    apply_product(&mut acc, HalfInt::int, |_| {
        ZP::monomial_x2(2, 0, BigInt::one())
    });
    apply_product(&mut acc, HalfInt::int, |_| {
        ZP::monomial_x2(2, 0, BigInt::one())
    });
    apply_product(&mut acc, HalfInt::int, |_| {
        ZP::monomial_x2(-2, 0, BigInt::one())
    });
    apply_product(&mut acc, HalfInt::int, |_| {
        ZP::monomial_x2(-2, 0, BigInt::one())
    });
    let e20 = euler_product(inner).pow(20);
    let bracket = acc.mul(&e20).shift_q(HalfInt::int(1));
    bracket.invert().expect("bracket has unit leading coefficient")
}

/// MacMahon's function `M(x, q) = prod (1 - x q^n)^{-n}` on a rectangular
/// window, stored as q-series rows indexed by the power of `x`.
pub struct MacMahon {
    rows: Vec<ZS>,
    q_order: i64,
}

/// Build `M(x, q)` exactly for x-degrees up to `x_order` and q-degrees up
/// to `q_order`.
pub fn macmahon(x_order: usize, q_order: i64) -> MacMahon {
    macmahon_grid(x_order, q_order, false)
}

/// The reciprocal `M(x, q)^{-1} = prod (1 - x q^n)^n` on the same window.
pub fn macmahon_inverse(x_order: usize, q_order: i64) -> MacMahon {
    macmahon_grid(x_order, q_order, true)
}

fn macmahon_grid(x_order: usize, q_order: i64, inverse: bool) -> MacMahon {
    assert!(q_order >= 0);
    let qn = q_order as usize;
    let mut grid = vec![vec![BigInt::from(0); qn + 1]; x_order + 1];
    grid[0][0] = BigInt::one();
    for n in 1..=q_order {
        // (1 - x q^n)^{-n} = sum_j C(n+j-1, j) x^j q^{nj};
        // (1 - x q^n)^{n}  = sum_{j<=n} (-1)^j C(n, j) x^j q^{nj}.
        let mut next = vec![vec![BigInt::from(0); qn + 1]; x_order + 1];
        for j in 0..=(x_order as i64) {
            if n * j > q_order || (inverse && j > n) {
                break;
            }
            let c = if inverse {
                let b = binomial(n, j);
                if j % 2 == 1 {
                    -b
                } else {
                    b
                }
            } else {
                binomial(n + j - 1, j)
            };
            for a in 0..=(x_order - j as usize) {
                for b in 0..=(qn - (n * j) as usize) {
                    if grid[a][b] != BigInt::from(0) {
                        let add = &grid[a][b] * &c;
                        next[a + j as usize][b + (n * j) as usize] += add;
                    }
                }
            }
        }
        grid = next;
    }
    let rows = grid
        .into_iter()
        .map(|row| {
            let mut s = ZS::zero_window(HalfInt::int(0), HalfInt::int(q_order));
            for (b, c) in row.into_iter().enumerate() {
                s.set_coeff_x2(2 * b as i64, ZP::constant(c));
            }
            s
        })
        .collect();
    MacMahon { rows, q_order }
}

impl MacMahon {
    /// The q-series coefficient of `x^j`.
    pub fn x_coeff(&self, j: usize) -> &ZS {
        &self.rows[j]
    }

    pub fn x_order(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn q_order(&self) -> i64 {
        self.q_order
    }

    /// `M(1, q)`, the plane-partition generating function; requires the
    /// x-window to cover the q-window.
    pub fn eval_x_one(&self) -> ZS {
        assert!(
            self.x_order() as i64 >= self.q_order,
            "x-window too small for an exact evaluation at x = 1"
        );
        let mut acc = ZS::zero_window(HalfInt::int(0), HalfInt::int(self.q_order));
        for row in &self.rows {
            acc = acc.add(row);
        }
        acc
    }

    /// View with `x` carried in the `w` slot of the coefficients.
    pub fn as_qseries(&self) -> ZS {
        let mut acc = ZS::zero_window(HalfInt::int(0), HalfInt::int(self.q_order));
        for e in 0..=self.q_order {
            let mut p = ZP::zero();
            for (j, row) in self.rows.iter().enumerate() {
                let c = row.coeff_int(e).unwrap();
                for (_, _, v) in c.iter_x2() {
                    p.insert_x2(0, 2 * j as i64, v.clone());
                }
            }
            acc.set_coeff_x2(2 * e, p);
        }
        acc
    }
}

/// Names for the q-series this module can build.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum FormName {
    Theta0,
    Theta1,
    Delta,
    DeltaHalfAtQ2,
    Phi10_1,
    ReducedKkv,
    MacMahon,
}

impl FormName {
    /// The lowest q-exponent of the named form.
    pub fn min_lead(self) -> HalfInt {
        match self {
            FormName::Theta0 | FormName::MacMahon => HalfInt::int(0),
            FormName::Theta1 => HalfInt::halves(1),
            FormName::Delta | FormName::DeltaHalfAtQ2 | FormName::Phi10_1 => HalfInt::int(1),
            FormName::ReducedKkv => HalfInt::int(-1),
        }
    }
}

/// A named form together with a truncation order.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct FormSpec {
    pub name: FormName,
    pub order: HalfInt,
}

impl FormSpec {
    pub fn new(name: FormName, order: HalfInt) -> Self {
        assert!(
            order >= name.min_lead(),
            "order below the minimal lead of the form"
        );
        FormSpec { name, order }
    }

    /// Build the named series. MacMahon's function is returned with `x`
    /// carried in the `w` slot on a square window.
    pub fn build(&self) -> ZS {
        let int_order = self.order.doubled() / 2;
        match self.name {
            FormName::Theta0 => theta_rank1(0, self.order),
            FormName::Theta1 => theta_rank1(1, self.order),
            FormName::Delta => delta(int_order),
            FormName::DeltaHalfAtQ2 => delta_half_at_q2(int_order),
            FormName::Phi10_1 => phi_10_1(int_order, PhiSign::AsIs),
            FormName::ReducedKkv => reduced_kkv(int_order),
            FormName::MacMahon => macmahon(int_order.max(0) as usize, int_order).as_qseries(),
        }
    }
}
