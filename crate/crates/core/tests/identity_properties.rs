mod common;

use common::families;
use floorlab_core::exact::parse_rational;
use floorlab_core::identity::{
    check_condition, check_condition_pair, check_identity, r_of, scan_identity, Beta, IdentityCase, Variant,
};
use floorlab_core::{AlgebraicReal, FieldElement};
use floorlab_oracle::{chain_floor, root_in, Decimal, DIGITS};
use num_bigint::BigInt;
use proptest::prelude::*;

fn golden() -> AlgebraicReal {
    "root([-1,-1,1],1,2)".parse().unwrap()
}

#[test]
fn characterised_families_never_fail() {
    let mut failures = Vec::new();
    for f in families() {
        let cond = check_condition(&f.alpha, f.l, f.k, f.m);
        let case = IdentityCase::new(Variant::MVar { l: f.l, k: f.k, m: f.m }, f.alpha.clone());
        let scan = scan_identity(&case, -10_000, 10_000).unwrap();
        if !cond.holds() || !scan.holds() || scan.checked != 20_000 {
            failures.push((f.l, f.k, f.m, f.big_m, cond.holds(), scan.violation_count));
        }
    }
    assert!(failures.is_empty(), "{failures:?}");
}

#[test]
fn admissible_shifts_include_zero() {
    for delta in ["62/100", "7/10", "99/100"] {
        let v = Variant::Delta { l: 1, k: 1, delta: parse_rational(delta).unwrap() };
        let scan = scan_identity(&IdentityCase::new(v, golden()), -10_000, 10_000).unwrap();
        assert!(scan.holds(), "delta = {delta}: {:?}", scan.first_violation);
        assert_eq!((scan.checked, scan.skipped), (20_001, 0));
    }
}

#[test]
fn pair_reproduces_mvar() {
    for f in families().into_iter().filter(|f| f.l == 1 && f.k == 1) {
        let beta = FieldElement::generator(&f.alpha).pow(2);
        let pair = IdentityCase::new(Variant::Pair { m: f.m }, f.alpha.clone()).with_beta(Beta::InField(beta.clone()));
        let mvar = IdentityCase::new(Variant::MVar { l: 1, k: 1, m: f.m }, f.alpha.clone());
        let (sp, sm) = (scan_identity(&pair, -2000, 2000).unwrap(), scan_identity(&mvar, -2000, 2000).unwrap());
        assert_eq!(sp.violation_count, sm.violation_count);
        assert!(sp.holds());
        let cond = check_condition_pair(&f.alpha, &Beta::InField(beta), f.m);
        assert_eq!(cond.holds(), check_condition(&f.alpha, 1, 1, f.m).holds());
    }
    // Off the characterised set both sides fail together too.
    let s2: AlgebraicReal = "root([-2,0,1],1,2)".parse().unwrap();
    let beta = FieldElement::generator(&s2).pow(2);
    let pair = IdentityCase::new(Variant::Pair { m: 1 }, s2.clone()).with_beta(Beta::InField(beta));
    let mvar = IdentityCase::new(Variant::MVar { l: 1, k: 1, m: 1 }, s2);
    for n in -300..=300 {
        let (p, m) = (check_identity(&pair, n).unwrap(), check_identity(&mvar, n).unwrap());
        assert_eq!(p.is_violation(), m.is_violation(), "n = {n}");
    }
}

#[test]
fn negating_n_swaps_the_two_forms() {
    // The swap needs n a^2 irrational, so square roots of integers are out.
    for a in ["root([-1,-1,1],1,2)", "root([-1,-2,1],2,3)", "root([-2,0,0,1],1,2)", "root([-1,-1,0,1],1,2)"] {
        let a: AlgebraicReal = a.parse().unwrap();
        let z1 = IdentityCase::new(Variant::Z1, a.clone()).prepare().unwrap();
        let z2 = IdentityCase::new(Variant::Z2, a).prepare().unwrap();
        for n in 1..=1000 {
            assert_eq!(z1.check(-n).is_violation(), z2.check(n).is_violation(), "n = {n}");
        }
    }
}

proptest! {
    #[test]
    fn r_stays_in_range(fi in 0usize..1000, n in -1_000_000i64..=1_000_000) {
        let fams = families_cached();
        let f = &fams[fi % fams.len()];
        prop_assume!(n != 0);
        let r = r_of(n, &f.alpha, f.m).unwrap();
        prop_assert!((1..=f.m).contains(&r));
    }
}

fn families_cached() -> &'static [common::Family] {
    static CELL: std::sync::OnceLock<Vec<common::Family>> = std::sync::OnceLock::new();
    CELL.get_or_init(families)
}

/// `[[[n a] a] a] + 1` against `[n a^3]` in decimal.
fn triple_residual(a: &Decimal, n: i64) -> BigInt {
    let zero = Decimal::from_int(0, DIGITS);
    let lhs = chain_floor(n, &[a.clone(), a.clone(), a.clone()], &[zero.clone(), zero.clone(), zero]).unwrap() + 1;
    lhs - a.pow(3).mul_int(n).floor().unwrap()
}

#[test]
fn triple_fails_for_known_units() {
    for (poly, coeffs, n_first) in [
        ("root([-1,-1,1],1,2)", vec![-1, -1, 1], 1),
        ("root([-1,-1,0,1],1,2)", vec![-1, -1, 0, 1], 2),
        ("root([-1,-1,-1,1],1,2)", vec![-1, -1, -1, 1], 1),
    ] {
        let alpha: AlgebraicReal = poly.parse().unwrap();
        let scan = scan_identity(&IdentityCase::new(Variant::Triple, alpha), -100, 100).unwrap();
        let first = scan.first_violation.expect("triple should fail");
        assert_eq!(first.n, n_first, "{poly}");
        let a = root_in(&coeffs, "1", "2", DIGITS);
        assert_ne!(triple_residual(&a, first.n), BigInt::from(0));
        for n in -n_first + 1..n_first {
            if n != 0 {
                assert_eq!(triple_residual(&a, n), BigInt::from(0), "{poly} at {n}");
            }
        }
    }
}
