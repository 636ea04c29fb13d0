use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::exact::{AlgebraicReal, FieldElement, Rational, ENCLOSURE_PREC};

/// Whether the element `e` (over some base) equals the algebraic number `x`.
pub(crate) fn field_element_equals(e: &FieldElement, x: &AlgebraicReal) -> bool {
    if let Some(r) = x.as_rational() {
        return e.as_rational().as_ref() == Some(r);
    }
    // e is a root of x's minimal polynomial ...
    let mut acc = FieldElement::zero(e.base());
    for c in x.poly().coeffs().iter().rev() {
        acc = (&acc * e).add_rational(&Rational::from_integer(c.clone()));
    }
    if !acc.is_zero() {
        return false;
    }
    // ... and the one inside x's isolating interval.
    let (lo, hi) = x.interval();
    e.add_rational(&-lo).sign().is_ge() && e.add_rational(&-hi).sign().is_le()
}

/// `[b * beta / alpha]` for positive `alpha`, `beta` over unrelated bases.
pub(crate) struct MixedQuotient {
    a: FieldElement,
    b: FieldElement,
}

impl MixedQuotient {
    pub(crate) fn new(alpha: &AlgebraicReal, beta: &AlgebraicReal) -> Self {
        MixedQuotient { a: FieldElement::generator(alpha), b: FieldElement::generator(beta) }
    }

    /// Whether `b * beta = j * alpha` exactly.
    fn hits(&self, j: &BigInt, b: &BigInt) -> bool {
        let c = Rational::new(j.clone(), b.clone());
        let beta = self.b.base();
        field_element_equals(&self.a.scale(&c), beta)
    }

    pub(crate) fn floor_mul(&self, b: &BigInt) -> BigInt {
        if b.is_zero() {
            return BigInt::zero();
        }
        let mut tested: Option<BigInt> = None;
        let mut prec = ENCLOSURE_PREC;
        loop {
            let (ea, eb) = if prec == ENCLOSURE_PREC {
                (self.a.enclosure().clone(), self.b.enclosure().clone())
            } else {
                (self.a.enclosure_at(prec), self.b.enclosure_at(prec))
            };
            if ea.lo().is_positive() {
                let x = eb.mul_int(b);
                let lo = x.lo().div_floor(if x.lo().is_negative() { ea.lo() } else { ea.hi() });
                let hi = x.hi().div_floor(if x.hi().is_negative() { ea.hi() } else { ea.lo() });
                if lo == hi {
                    return lo;
                }
                if &hi - &lo == BigInt::from(1) && tested.as_ref() != Some(&hi) {
                    if self.hits(&hi, b) {
                        return hi;
                    }
                    tested = Some(hi);
                }
            }
            prec *= 2;
        }
    }
}
