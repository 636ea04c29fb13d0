mod common;

use std::sync::OnceLock;

use common::{families, family_decimal, Family};
use floorlab_core::exact::sign_of;
use floorlab_core::floor::{certified_floor, floor_mul, Exactness, LinearForm};
use floorlab_core::{AlgebraicReal, FieldElement, Rational};
use floorlab_oracle::Decimal;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

struct Prepared {
    family: Family,
    /// `(element, decimal twin)` for a^l, a^k, a^(l+k) and m a^l.
    elems: Vec<(FieldElement, Decimal)>,
}

fn prepared() -> &'static [Prepared] {
    static CELL: OnceLock<Vec<Prepared>> = OnceLock::new();
    CELL.get_or_init(|| {
        families()
            .into_iter()
            .map(|f| {
                let d = family_decimal(&f);
                let a = FieldElement::generator(&f.alpha);
                let elems = vec![
                    (a.pow(f.l), d.pow(f.l)),
                    (a.pow(f.k), d.pow(f.k)),
                    (a.pow(f.l + f.k), d.pow(f.l + f.k)),
                    (a.pow(f.l).scale_int(&BigInt::from(f.m)), d.pow(f.l).mul_int(f.m)),
                ];
                Prepared { family: f, elems }
            })
            .collect()
    })
}

#[test]
fn agrees_with_decimal_oracle() {
    let mut rng = StdRng::seed_from_u64(0x5eed_f100);
    let fams = prepared();
    let mut disagreements = Vec::new();
    for _ in 0..10_000 {
        let p = &fams[rng.gen_range(0..fams.len())];
        let (e, d) = &p.elems[rng.gen_range(0..p.elems.len())];
        let n: i64 = rng.gen_range(-1_000_000..=1_000_000);
        let want = d.mul_int(n).floor();
        let got = floor_mul(&BigInt::from(n), e);
        match want {
            Ok(w) if w == got => {}
            // n = 0 is the only exact integer among these products.
            Err(_) if n == 0 && got == BigInt::from(0) => {}
            other => disagreements.push((p.family.l, p.family.k, p.family.m, p.family.big_m, n, other, got)),
        }
    }
    assert!(disagreements.is_empty(), "{disagreements:?}");
}

/// `value <= floor < value + 1`, both decided by exact signs.
fn floor_law_holds(n: i64, e: &FieldElement) -> bool {
    let r = certified_floor(&LinearForm::new(n, e));
    let diff = e.scale_int(&BigInt::from(n)).add_rational(&-Rational::from_integer(r.value.clone()));
    sign_of(&diff) >= 0 && sign_of(&diff.add_rational(&Rational::from_integer((-1).into()))) < 0
}

fn rational_elem(p: i64, q: i64) -> FieldElement {
    let r = Rational::new(p.into(), q.into());
    FieldElement::from_rational(&AlgebraicReal::from_rational(r.clone()), r)
}

proptest! {
    #[test]
    fn floor_law_on_families(fi in 0usize..1000, ei in 0usize..4, n in -1_000_000i64..=1_000_000) {
        let p = &prepared()[fi % prepared().len()];
        prop_assert!(floor_law_holds(n, &p.elems[ei].0));
    }

    #[test]
    fn floor_law_on_rationals(p in -500i64..500, q in 1i64..60, n in -100_000i64..=100_000) {
        let e = rational_elem(p, q);
        prop_assert!(floor_law_holds(n, &e));
        let r = certified_floor(&LinearForm::new(n, &e));
        prop_assert_eq!(r.exactness, Exactness::ExactRational);
    }

    #[test]
    fn monotone_on_ranges(fi in 0usize..1000, start in -1_000_000i64..1_000_000) {
        let p = &prepared()[fi % prepared().len()];
        let a = FieldElement::generator(&p.family.alpha);
        let floors: Vec<BigInt> = (start..start + 300).map(|n| floor_mul(&BigInt::from(n), &a)).collect();
        prop_assert!(floors.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn negation_of_irrational_products(fi in 0usize..1000, ei in 0usize..4, n in 1i64..=1_000_000) {
        let p = &prepared()[fi % prepared().len()];
        let e = &p.elems[ei].0;
        let pos = floor_mul(&BigInt::from(n), e);
        let neg = floor_mul(&BigInt::from(-n), e);
        prop_assert_eq!(neg, -pos - 1);
    }
}
