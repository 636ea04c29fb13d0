mod common;

use common::{brute_force_m, families};
use floorlab_core::exact::{
    admissible_m_values, isolate_positive_roots, lemma_samedenom_check, power_in_field, rationality_of, sign_of,
};
use floorlab_core::{AlgebraicReal, FieldElement, IntPolynomial, Rational};
use floorlab_oracle::{sqrt_int, Decimal};
use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

#[test]
fn characteristic_roots_are_certified() {
    for f in families() {
        let a = &f.alpha;
        assert_eq!(a.sturm_root_count(), 1, "{f:?}");
        let x = FieldElement::generator(a);
        let rel = &(&x.pow(f.l + f.k) - &x.pow(f.l).scale_int(&BigInt::from(f.m))) - &FieldElement::from_integer(a, f.big_m);
        assert_eq!(sign_of(&rel), 0, "{f:?}");
        let ak = x.pow(f.k);
        assert_eq!(sign_of(&ak.add_rational(&Rational::from_integer((-(f.m as i64)).into()))), 1);
        assert_eq!(sign_of(&ak.add_rational(&Rational::from_integer((-(f.m as i64) - 1).into()))), -1);
        assert_eq!(rationality_of(&power_in_field(a, f.l)), None, "{f:?}");
        assert_eq!(rationality_of(&power_in_field(a, f.k)), None, "{f:?}");
    }
}

#[test]
fn admissible_values_match_brute_force() {
    for l in 1..=3 {
        for k in 1..=3 {
            for m in 1..=3 {
                assert_eq!(admissible_m_values(l, k, m), brute_force_m(l, k, m), "l={l} k={k} m={m}");
            }
        }
    }
    assert_eq!(admissible_m_values(1, 1, 1), vec![1]);
    assert_eq!(admissible_m_values(2, 1, 1), vec![1, 2, 3]);
}

fn decimal_of(r: &Rational, digits: u32) -> Decimal {
    Decimal::from_ratio(r.numer().clone(), r.denom().clone(), digits)
}

/// Sums `coords[i] * a^i` in decimal.
fn eval_coords(coords: &[Rational], a: &Decimal, digits: u32) -> Decimal {
    let mut acc = Decimal::from_int(0, digits);
    let mut pow = Decimal::from_int(1, digits);
    for c in coords {
        acc = acc.add(&decimal_of(c, digits).mul(&pow));
        pow = pow.mul(a);
    }
    acc
}

proptest! {
    #[test]
    fn field_powers_match_decimal_powers(b in 1u64..30, c in 1u64..30, e in 1u32..=8) {
        const D: u32 = 120;
        // Positive root of x^2 - b x - c, computed independently.
        let disc = sqrt_int(b * b + 4 * c, D);
        let a_dec = disc.add(&Decimal::from_int(b, D)).mul(&Decimal::from_ratio(1, 2, D));
        let roots = isolate_positive_roots(&IntPolynomial::from_i64s(&[-(c as i64), -(b as i64), 1])).unwrap();
        prop_assert_eq!(roots.len(), 1);
        let a = &roots[0];
        prop_assert!(a.is_rational() || a.sturm_root_count() == 1);
        let pe = power_in_field(a, e);
        let via_coords = eval_coords(pe.coords(), &a_dec, D);
        let direct = a_dec.pow(e);
        let tolerance = num_traits::pow(BigInt::from(10), (D - 80) as usize);
        prop_assert!((via_coords.scaled() - direct.scaled()).abs() < tolerance);
    }

    #[test]
    fn cubic_roots_are_certified(c0 in -20i64..20, c1 in -20i64..20, c2 in -20i64..20) {
        let p = IntPolynomial::from_i64s(&[c0, c1, c2, 1]);
        for r in isolate_positive_roots(&p).unwrap() {
            prop_assert!(r.is_rational() || r.sturm_root_count() == 1);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn samedenom_on_consistent_pairs(p in 1i64..200, q in 1i64..200, l0 in 1u32..4, k0 in 1u32..4, g in 1u32..3) {
        let r = Rational::new(p.into(), q.into());
        let (l, k) = (g * l0, g * k0);
        let pq = num_traits::pow(r.clone(), l0 as usize);
        let pq2 = num_traits::pow(r, k0 as usize);
        let report = lemma_samedenom_check(&pq, &pq2, l, k).unwrap();
        prop_assert!(report.verdict);
    }
}

#[test]
fn rational_inputs_demote_to_degree_one() {
    let a: AlgebraicReal = "root([-9,0,4],1,2)".parse().unwrap();
    assert_eq!(a.as_rational(), Some(&Rational::new(3.into(), 2.into())));
    assert_eq!(a.degree(), 1);
}
