//! Verification suites: every closed-form identity, oracle equivalence,
//! worked example and reference table in the crate, run as named checks
//! with pass/fail outcomes and a first-failure diagnostic.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::cover::{gv_extract, gv_forward, ClassTable};
use crate::fixtures::{aodd_reference, AODD_REFERENCE_DMAX};
use crate::forms::{
    apply_product, delta, delta_half_at_q2, phi_10_1, theta_rank1, theta_rank1_product, PhiSign,
};
use crate::invariants::{hyperelliptic_series, ngh_table, product_side_table, OddType, SurfaceType};
use crate::laurent::{HalfInt, Laurent2};
use crate::lattice::{
    kummer_cosets, kummer_shifted_parts, nikulin_cosets, nikulin_shifted_cosets,
    theta_bruteforce, theta_from_cosets, LatticeTag,
};
use crate::qseries::QSeries;
use crate::worked::{
    elliptic_fiber_invariants, football_invariants, football_log_closed_form,
    football_partition, local_curve_sides, EllipticFiberParams, LocalCurveParams,
};

type ZP = Laurent2<BigInt>;
type ZS = QSeries<BigInt>;

/// One named check with its outcome; `Err` carries the first failing
/// coefficient or a short diagnostic.
pub struct Check {
    pub name: String,
    pub outcome: Result<(), String>,
}

impl Check {
    fn run(name: impl Into<String>, f: impl FnOnce() -> Result<(), String>) -> Check {
        Check {
            name: name.into(),
            outcome: f(),
        }
    }

    pub fn passed(&self) -> bool {
        self.outcome.is_ok()
    }
}

/// The outcome of a suite run.
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Suite {
    Identities,
    Lattices,
    Examples,
    Appendix,
    All,
}

impl Suite {
    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Lattices => "lattices",
            Suite::Examples => "examples",
            Suite::Appendix => "appendix",
            Suite::All => "all",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "identities" => Some(Suite::Identities),
            "lattices" => Some(Suite::Lattices),
            "examples" => Some(Suite::Examples),
            "appendix" => Some(Suite::Appendix),
            "all" => Some(Suite::All),
            _ => None,
        }
    }
}

/// Run a suite; `order` overrides the default q-order where one applies
/// (40 for the identity suite, 20 for the lattice oracle suite).
pub fn run_suite(suite: Suite, order: Option<i64>) -> Vec<SuiteReport> {
    match suite {
        Suite::Identities => vec![SuiteReport {
            suite,
            checks: identity_checks(order.unwrap_or(40)),
        }],
        Suite::Lattices => vec![SuiteReport {
            suite,
            checks: lattice_checks(order.unwrap_or(20)),
        }],
        Suite::Examples => vec![SuiteReport {
            suite,
            checks: example_checks(),
        }],
        Suite::Appendix => vec![SuiteReport {
            suite,
            checks: appendix_checks(),
        }],
        Suite::All => {
            let mut reports = Vec::new();
            for s in [Suite::Identities, Suite::Lattices, Suite::Examples, Suite::Appendix] {
                reports.extend(run_suite(s, order));
            }
            reports
        }
    }
}

fn series_eq(a: &ZS, b: &ZS, upto: i64) -> Result<(), String> {
    a.agrees_with(b, HalfInt::int(upto))
}

/// `prod (1-q^{2n})^2 (1+q^{2n-1})^2 (1+wq^{2n-1}) (1+w^{-1}q^{2n-1})`.
fn quadratic_identity_rhs(order: i64) -> ZS {
    let horder = HalfInt::int(order);
    let mut acc = ZS::one(horder);
    for _ in 0..2 {
        apply_product(&mut acc, |n| HalfInt::int(2 * n), |_| {
            ZP::constant(BigInt::from(-1))
        });
        apply_product(&mut acc, |n| HalfInt::int(2 * n - 1), |_| ZP::one());
    }
    apply_product(&mut acc, |n| HalfInt::int(2 * n - 1), |_| {
        ZP::monomial_x2(0, 2, BigInt::from(1))
    });
    apply_product(&mut acc, |n| HalfInt::int(2 * n - 1), |_| {
        ZP::monomial_x2(0, -2, BigInt::from(1))
    });
    acc
}

/// `psi_w * q * prod (1+q^n)^12 (1-q^n)^8 (1+wq^n)^2 (1+w^{-1}q^n)^2`.
fn ksh_identity_rhs(order: i64) -> ZS {
    let mut acc = ZS::one(HalfInt::int(order - 1));
    for _ in 0..12 {
        apply_product(&mut acc, HalfInt::int, |_| ZP::one());
    }
    for _ in 0..8 {
        apply_product(&mut acc, HalfInt::int, |_| ZP::constant(BigInt::from(-1)));
    }
    for _ in 0..2 {
        apply_product(&mut acc, HalfInt::int, |_| {
            ZP::monomial_x2(0, 2, BigInt::from(1))
        });
        apply_product(&mut acc, HalfInt::int, |_| {
            ZP::monomial_x2(0, -2, BigInt::from(1))
        });
    }
    acc.mul_poly(&ZP::psi_w()).shift_q(HalfInt::int(1))
}

/// `phi_{10,1}(q, -w)`: the y-negated form with the symbol moved to the
/// w slot.
fn phi_in_w(order: i64) -> ZS {
    phi_10_1(order, PhiSign::YNegated).map_coeffs(Laurent2::swap_vars)
}

fn identity_checks(order: i64) -> Vec<Check> {
    let horder = HalfInt::int(order);
    let t0 = theta_rank1(0, horder);
    let t1 = theta_rank1(1, horder);
    let t0sq = t0.mul(&t0);
    let t1sq = t1.mul(&t1);
    let sum_sq = t0sq.add(&t1sq);

    let mut checks = Vec::new();

    checks.push(Check::run(
        format!("theta0 summation = triple product (order {order})"),
        || series_eq(&theta_rank1(0, horder), &theta_rank1_product(0, horder), order),
    ));
    checks.push(Check::run(
        format!("theta1 summation = triple product (order {order})"),
        || series_eq(&theta_rank1(1, horder), &theta_rank1_product(1, horder), order),
    ));
    checks.push(Check::run(
        format!("theta0^2 + theta1^2 product identity (order {order})"),
        || series_eq(&sum_sq, &quadratic_identity_rhs(order), order),
    ));

    let nsh_factored = t0sq.mul(&t1sq).mul(&sum_sq.mul(&sum_sq));
    checks.push(Check::run(
        format!("theta0^2 theta1^2 (theta0^2+theta1^2)^2 = shifted product (order {order})"),
        || series_eq(&nsh_factored, &ksh_identity_rhs(order), order),
    ));

    let theta_nsh = match theta_from_cosets(&nikulin_shifted_cosets(), order) {
        Ok(t) => t,
        Err(e) => {
            checks.push(Check {
                name: "Theta_Nsh coset evaluation".into(),
                outcome: Err(e.to_string()),
            });
            return checks;
        }
    };
    let theta_ksh = match theta_from_cosets(&crate::lattice::kummer_shifted_cosets(), order) {
        Ok(t) => t,
        Err(e) => {
            checks.push(Check {
                name: "Theta_Ksh coset evaluation".into(),
                outcome: Err(e.to_string()),
            });
            return checks;
        }
    };

    checks.push(Check::run(
        format!("Theta_Nsh = theta0^2 theta1^6 + 2 theta0^4 theta1^4 + theta0^6 theta1^2 (order {order})"),
        || {
            let rhs = t0
                .pow(2)
                .mul(&t1.pow(6))
                .add(&t0.pow(4).mul(&t1.pow(4)).scale_i64(2))
                .add(&t0.pow(6).mul(&t1.pow(2)));
            series_eq(&theta_nsh, &rhs, order)
        },
    ));
    checks.push(Check::run(
        format!("Theta_Ksh = 5-term theta monomial sum (order {order})"),
        || {
            let term = |a: u32, b: u32, c: i64| t0.pow(a).mul(&t1.pow(b)).scale_i64(c);
            let rhs = term(4, 12, 4)
                .add(&term(6, 10, 16))
                .add(&term(8, 8, 24))
                .add(&term(10, 6, 16))
                .add(&term(12, 4, 4));
            series_eq(&theta_ksh, &rhs, order)
        },
    ));
    checks.push(Check::run(
        format!("Theta_Nsh = theta0^2 theta1^2 (theta0^2+theta1^2)^2 (order {order})"),
        || series_eq(&theta_nsh, &nsh_factored, order),
    ));
    let ksh_factored = nsh_factored.mul(&nsh_factored).scale_i64(4);
    checks.push(Check::run(
        format!("Theta_Ksh = 4 theta0^4 theta1^4 (theta0^2+theta1^2)^4 (order {order})"),
        || series_eq(&theta_ksh, &ksh_factored, order),
    ));
    checks.push(Check::run(
        format!("Theta_Ksh = 4 Theta_Nsh^2 (order {order})"),
        || series_eq(&theta_ksh, &theta_nsh.mul(&theta_nsh).scale_i64(4), order),
    ));

    // The four closed forms against the coset evaluation.
    checks.push(Check::run(
        format!("Theta_K = theta0^16 + 30 theta0^8 theta1^8 + theta1^16 (order {order})"),
        || {
            let lhs = theta_from_cosets(&kummer_cosets(), order).map_err(|e| e.to_string())?;
            let rhs = t0
                .pow(16)
                .add(&t0.pow(8).mul(&t1.pow(8)).scale_i64(30))
                .add(&t1.pow(16));
            series_eq(&lhs, &rhs, order)
        },
    ));
    checks.push(Check::run(
        format!("Theta_N = theta0^8 + theta1^8 (order {order})"),
        || {
            let lhs = theta_from_cosets(&nikulin_cosets(), order).map_err(|e| e.to_string())?;
            series_eq(&lhs, &t0.pow(8).add(&t1.pow(8)), order)
        },
    ));
    checks.push(Check::run(
        format!("Theta_Ksh = 4 Delta(q^2) Delta(q)^-2 phi_10_1(q,-w)^2 (order {order})"),
        || {
            let d2 = delta(order / 2 + 2).dilate(2);
            let dinv2 = delta(order + 4)
                .pow(2)
                .invert()
                .map_err(|e| e.to_string())?;
            let phi = phi_in_w(order + 2);
            let rhs = d2.mul(&dinv2).mul(&phi.pow(2)).scale_i64(4);
            series_eq(&theta_ksh, &rhs, order)
        },
    ));
    checks.push(Check::run(
        format!("Theta_Nsh = -Delta(q^2)^(1/2) Delta(q)^-1 phi_10_1(q,-w) (order {order})"),
        || {
            let dh = delta_half_at_q2(order + 2);
            let dinv = delta(order + 4).invert().map_err(|e| e.to_string())?;
            let rhs = dh.mul(&dinv).mul(&phi_in_w(order + 2)).neg();
            series_eq(&theta_nsh, &rhs, order)
        },
    ));

    checks.push(Check::run(
        "reduced kernel inverts the Jacobi-form bracket (order 14)",
        || {
            let r = crate::forms::reduced_kkv(14);
            let phi = phi_10_1(15, PhiSign::YNegated);
            // bracket = -phi/psi_y, so R * phi must be -psi_y exactly
            let prod = r.mul(&phi);
            let expect = ZS::monomial(HalfInt::int(0), ZP::psi_y().neg(), prod.order());
            series_eq(&prod, &expect, 14)
        },
    ));

    // Table-level identities: the two independent derivations of the odd
    // types, and the h = 0 hyperelliptic specialization.
    checks.push(Check::run(
        "product pipeline = theta pipeline, type Aodd (d <= 10)",
        || {
            let a = product_side_table(OddType::AOdd, 10).map_err(|e| e.to_string())?;
            let b = ngh_table(SurfaceType::AOdd, 10).map_err(|e| e.to_string())?;
            if a.same_entries(&b) {
                Ok(())
            } else {
                Err(first_table_mismatch(&a, &b))
            }
        },
    ));
    checks.push(Check::run(
        "product pipeline = theta pipeline, type NIodd (d <= 10)",
        || {
            let a = product_side_table(OddType::NIOdd, 10).map_err(|e| e.to_string())?;
            let b = ngh_table(SurfaceType::NIOdd, 10).map_err(|e| e.to_string())?;
            if a.same_entries(&b) {
                Ok(())
            } else {
                Err(first_table_mismatch(&a, &b))
            }
        },
    ));
    checks.push(Check::run(
        "hyperelliptic h = 0 series = closed product (order 10)",
        || {
            let (left, right) = hyperelliptic_series(10).map_err(|e| e.to_string())?;
            series_eq(&left, &right, 10)
        },
    ));

    checks
}

fn first_table_mismatch(
    a: &crate::invariants::InvariantTable,
    b: &crate::invariants::InvariantTable,
) -> String {
    for (d, g, h, n) in a.iter() {
        if b.get(d, g, h) != Some(n) {
            return format!(
                "first mismatch at (d, g, h) = ({d}, {g}, {h}): {n} vs {:?}",
                b.get(d, g, h)
            );
        }
    }
    for (d, g, h, n) in b.iter() {
        if a.get(d, g, h) != Some(n) {
            return format!("extra entry (d, g, h) = ({d}, {g}, {h}) = {n} on one side");
        }
    }
    "tables differ".into()
}

fn c1_multiset(reps: &[crate::lattice::CosetRep]) -> BTreeMap<u32, usize> {
    let mut m = BTreeMap::new();
    for r in reps {
        *m.entry(r.c1()).or_insert(0) += 1;
    }
    m
}

fn lattice_checks(order: i64) -> Vec<Check> {
    let mut checks = Vec::new();
    for tag in [LatticeTag::K, LatticeTag::KSh, LatticeTag::N, LatticeTag::NSh] {
        checks.push(Check::run(
            format!("coset method = brute force for {} (order {order})", tag.as_str()),
            || {
                let cosets = tag.cosets();
                let a = theta_from_cosets(&cosets, order).map_err(|e| e.to_string())?;
                let b = theta_bruteforce(&cosets, order);
                series_eq(&a, &b, order)
            },
        ));
    }
    checks.push(Check::run("glue-class c1 multisets", || {
        let k = c1_multiset(&kummer_cosets());
        if k != BTreeMap::from([(0, 1), (8, 30), (16, 1)]) {
            return Err(format!("K multiset {k:?}"));
        }
        let (p0, p1) = kummer_shifted_parts();
        let m0 = c1_multiset(&p0);
        let m1 = c1_multiset(&p1);
        if m0 != BTreeMap::from([(4, 4), (8, 24), (12, 4)]) {
            return Err(format!("K+r0 multiset {m0:?}"));
        }
        if m1 != BTreeMap::from([(6, 16), (10, 16)]) {
            return Err(format!("K+r1 multiset {m1:?}"));
        }
        let n: Vec<u32> = nikulin_cosets().iter().map(|r| r.c1()).collect();
        if n != vec![0, 8] {
            return Err(format!("N c1 values {n:?}"));
        }
        let nsh: Vec<u32> = nikulin_shifted_cosets().iter().map(|r| r.c1()).collect();
        if nsh != vec![2, 6, 4, 4] {
            return Err(format!("Nsh c1 values {nsh:?}"));
        }
        Ok(())
    }));
    checks
}

fn example_checks() -> Vec<Check> {
    let mut checks = Vec::new();

    checks.push(Check::run(
        "local curve: moduli count = psi form for g <= 8 (y-order 12)",
        || {
            for g in 0..=8 {
                for h in 0..=((g + 1) / 2) {
                    let (computed, expected) =
                        local_curve_sides(LocalCurveParams::new(g, h), 12)
                            .map_err(|e| e.to_string())?;
                    computed
                        .agrees_with(&expected, 12)
                        .map_err(|e| format!("(g, h) = ({g}, {h}): {e}"))?;
                }
            }
            Ok(())
        },
    ));

    checks.push(Check::run(
        "elliptic fiber class: {(1,0): -e(C0), (0,0): 3e(C0) - e(C1)}",
        || {
            let pairs = [(2, 6), (0, 0), (-2, -2), (1, 3), (-4, 10)];
            for (e0, e1) in pairs {
                let got = elliptic_fiber_invariants(
                    EllipticFiberParams { e_c0: e0, e_c1: e1 },
                    8,
                )
                .map_err(|e| e.to_string())?;
                let mut want = BTreeMap::new();
                if e0 != 0 {
                    want.insert((1i64, 0i64), BigInt::from(-e0));
                }
                if 3 * e0 - e1 != 0 {
                    want.insert((0, 0), BigInt::from(3 * e0 - e1));
                }
                if got != want {
                    return Err(format!(
                        "e(C0) = {e0}, e(C1) = {e1}: got {got:?}, want {want:?}"
                    ));
                }
            }
            Ok(())
        },
    ));

    checks.push(Check::run("football: log Z matches closed form (Q <= 4)", || {
        let (q_order, y_order) = (4, 12);
        let z = football_partition(q_order, y_order);
        let log_z = z.log().map_err(|e| e.to_string())?;
        let closed = football_log_closed_form(q_order, y_order).map_err(|e| e.to_string())?;
        for m in 1..=q_order {
            log_z
                .term(m)
                .agrees_with(closed.term(m), y_order)
                .map_err(|e| format!("Q^{m}: {e}"))?;
        }
        Ok(())
    }));

    checks.push(Check::run(
        "football: single invariant (d, g, h) = (1, 0, 0)",
        || {
            let t = football_invariants(4).map_err(|e| e.to_string())?;
            let mut want = ClassTable::new();
            want.insert(1, 0, 0, BigInt::from(1));
            if t == want {
                Ok(())
            } else {
                Err(format!("got {t:?}"))
            }
        },
    ));

    checks.push(Check::run(
        "multi-cover round trip on the table of a primitive Abelian class",
        || {
            // multiples of a primitive square-2 class: m beta has square
            // 2 m^2, odd multiples are odd type, even multiples even type
            let aodd = ngh_table(SurfaceType::AOdd, 9).map_err(|e| e.to_string())?;
            let aev = ngh_table(SurfaceType::AEv, 4).map_err(|e| e.to_string())?;
            let mut t = ClassTable::new();
            for (m, d) in [(1i64, 1i64), (3, 9)] {
                for ((g, h), n) in aodd.slice_d(d) {
                    t.insert(m, g, h, n);
                }
            }
            for ((g, h), n) in aev.slice_d(4) {
                t.insert(2, g, h, n);
            }
            let log_z = gv_forward(&t, 3, 3, 14).map_err(|e| e.to_string())?;
            let back = gv_extract(&log_z, 3).map_err(|e| e.to_string())?;
            if back == t {
                Ok(())
            } else {
                Err(format!("round trip changed the table: {back:?}"))
            }
        },
    ));

    checks
}

fn appendix_checks() -> Vec<Check> {
    vec![Check::run(
        format!("recomputed Aodd table matches the reference (d <= {AODD_REFERENCE_DMAX})"),
        || {
            let computed =
                ngh_table(SurfaceType::AOdd, AODD_REFERENCE_DMAX).map_err(|e| e.to_string())?;
            let reference = aodd_reference();
            if computed.same_entries(&reference) {
                Ok(())
            } else {
                Err(first_table_mismatch(&computed, &reference))
            }
        },
    )]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_identity_suite_passes() {
        for c in identity_checks(12) {
            assert!(c.passed(), "{}: {:?}", c.name, c.outcome);
        }
    }

    #[test]
    fn small_lattice_suite_passes() {
        for c in lattice_checks(8) {
            assert!(c.passed(), "{}: {:?}", c.name, c.outcome);
        }
    }

    #[test]
    fn appendix_suite_passes() {
        for c in appendix_checks() {
            assert!(c.passed(), "{}: {:?}", c.name, c.outcome);
        }
    }

    #[test]
    fn example_suite_passes() {
        for c in example_checks() {
            assert!(c.passed(), "{}: {:?}", c.name, c.outcome);
        }
    }
}
