//! Certified floors and fractional parts.
//!
//! `[x]` is the floor for every real `x`, negatives included, and
//! `{x} = x - [x]` lies in `[0, 1)`. A floor is either computed by exact
//! rational arithmetic or read off a dyadic enclosure that contains no
//! integer; undecided enclosures are refined with doubling precision.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::exact::{DyadicInterval, FieldElement, Rational, ENCLOSURE_PREC};

/// The exact real number `n * elem + shift`.
#[derive(Clone, Debug)]
pub struct LinearForm {
    pub n: BigInt,
    pub elem: FieldElement,
    pub shift: Rational,
}

impl LinearForm {
    pub fn new(n: impl Into<BigInt>, elem: &FieldElement) -> Self {
        LinearForm { n: n.into(), elem: elem.clone(), shift: Rational::zero() }
    }

    pub fn with_shift(mut self, shift: Rational) -> Self {
        self.shift = shift;
        self
    }

    /// Exact value as a single field element.
    pub fn value(&self) -> FieldElement {
        self.elem.scale_int(&self.n).add_rational(&self.shift)
    }

    /// Enclosure from the cached enclosure of `elem`.
    pub fn enclosure(&self) -> DyadicInterval {
        let base = self.elem.enclosure().mul_int(&self.n);
        if self.shift.is_zero() {
            base
        } else {
            base.add(&DyadicInterval::from_rational(&self.shift, base.prec()))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exactness {
    ExactRational,
    IntervalCertified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FloorResult {
    pub value: BigInt,
    pub exactness: Exactness,
    /// Width of the enclosure that decided the floor; zero when exact.
    pub final_interval_width: Rational,
}

fn rational_floor(r: &Rational) -> BigInt {
    r.numer().div_floor(r.denom())
}

/// Floor of the real number enclosed by `approx`, whose exact value is
/// produced by `exact` if the enclosure is not decisive.
pub fn certified_floor_of(approx: &DyadicInterval, exact: impl FnOnce() -> FieldElement) -> FloorResult {
    if let Some(value) = approx.floor() {
        return FloorResult {
            value,
            exactness: Exactness::IntervalCertified,
            final_interval_width: approx.width(),
        };
    }
    floor_of_element(&exact())
}

/// Floor of an exact field element.
pub fn floor_of_element(x: &FieldElement) -> FloorResult {
    if let Some(r) = x.as_rational() {
        return FloorResult {
            value: rational_floor(&r),
            exactness: Exactness::ExactRational,
            final_interval_width: Rational::zero(),
        };
    }
    // Irrational, so never an integer: refinement terminates.
    let mut prec = ENCLOSURE_PREC;
    loop {
        let enc = if prec == ENCLOSURE_PREC { x.enclosure().clone() } else { x.enclosure_at(prec) };
        if let Some(value) = enc.floor() {
            return FloorResult {
                value,
                exactness: Exactness::IntervalCertified,
                final_interval_width: enc.width(),
            };
        }
        prec *= 2;
    }
}

/// `[n * e]`, the hot path of every range scan.
pub fn floor_mul(n: &BigInt, e: &FieldElement) -> BigInt {
    if let Some(r) = e.as_rational() {
        return rational_floor(&(r * Rational::from_integer(n.clone())));
    }
    certified_floor_of(&e.enclosure().mul_int(n), || e.scale_int(n)).value
}

/// `[n * e + shift]`.
pub fn floor_mul_shift(n: &BigInt, e: &FieldElement, shift: &Rational) -> BigInt {
    if shift.is_zero() {
        return floor_mul(n, e);
    }
    certified_floor(&LinearForm { n: n.clone(), elem: e.clone(), shift: shift.clone() }).value
}

/// Exact floor of `n * elem + shift`.
pub fn certified_floor(f: &LinearForm) -> FloorResult {
    if let Some(r) = f.elem.as_rational() {
        let v = r * Rational::from_integer(f.n.clone()) + &f.shift;
        return FloorResult {
            value: rational_floor(&v),
            exactness: Exactness::ExactRational,
            final_interval_width: Rational::zero(),
        };
    }
    certified_floor_of(&f.enclosure(), || f.value())
}

/// Fractional part `{f} = f - [f]`, kept symbolic.
#[derive(Clone, Debug)]
pub struct FracPart {
    pub form: LinearForm,
    pub floor: BigInt,
}

impl FracPart {
    /// Exact value as a field element.
    pub fn value(&self) -> FieldElement {
        self.form.value().add_rational(&Rational::from_integer(-self.floor.clone()))
    }

    /// Enclosure from cached data, without building the exact element.
    pub fn enclosure(&self) -> DyadicInterval {
        self.form.enclosure().add_int(&-&self.floor)
    }

    /// Enclosure with grid `2^-prec`, refined from the exact value.
    pub fn enclosure_at(&self, prec: u64) -> DyadicInterval {
        self.value().enclosure_at(prec)
    }

    pub fn is_zero(&self) -> bool {
        self.value().is_zero()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.value().as_rational()
    }

    pub fn to_f64(&self) -> f64 {
        self.enclosure().mid_f64()
    }
}

pub fn certified_frac(f: &LinearForm) -> (FloorResult, FracPart) {
    let fl = certified_floor(f);
    let frac = FracPart { form: f.clone(), floor: fl.value.clone() };
    (fl, frac)
}

/// `b_0 = n`, `b_i = [b_{i-1} * multipliers[i] + shifts[i]]`; returns the
/// last `b`. Evaluated strictly left to right.
pub fn eval_bracket_chain(n: impl Into<BigInt>, multipliers: &[FieldElement], shifts: &[Rational]) -> BigInt {
    assert!(!multipliers.is_empty(), "bracket chain needs at least one multiplier");
    assert_eq!(multipliers.len(), shifts.len(), "one shift per multiplier");
    let mut b = n.into();
    for (m, s) in multipliers.iter().zip(shifts) {
        let form = LinearForm { n: b, elem: m.clone(), shift: s.clone() };
        b = certified_floor(&form).value;
    }
    b
}

/// Exact comparison of a symbolic value against zero, used by region tests.
pub fn certified_sign_of(approx: &DyadicInterval, exact: impl FnOnce() -> FieldElement) -> Ordering {
    match approx.sign() {
        Some(s) if s != Ordering::Equal => s,
        _ => exact().sign(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::AlgebraicReal;

    fn golden() -> FieldElement {
        FieldElement::generator(&"root([-1,-1,1],1,2)".parse::<AlgebraicReal>().unwrap())
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn golden_floors() {
        let a = golden();
        assert_eq!(certified_floor(&LinearForm::new(1, &a)).value, BigInt::from(1));
        let neg = certified_floor(&LinearForm::new(-1, &a));
        assert_eq!(neg.value, BigInt::from(-2));
        assert_eq!(neg.exactness, Exactness::IntervalCertified);
    }

    #[test]
    fn rational_branch() {
        let r = FieldElement::generator(&AlgebraicReal::from_rational(q(3, 2)));
        let res = certified_floor(&LinearForm::new(2, &r));
        assert_eq!(res.value, BigInt::from(3));
        assert_eq!(res.exactness, Exactness::ExactRational);
        let (_, frac) = certified_frac(&LinearForm::new(2, &r));
        assert!(frac.is_zero());
    }

    #[test]
    fn frac_enclosures() {
        let a = golden();
        let (fl, frac) = certified_frac(&LinearForm::new(1, &a));
        assert_eq!(fl.value, BigInt::from(1));
        let v = frac.to_f64();
        assert!(0.618 < v && v < 0.619);
        let (fl, frac) = certified_frac(&LinearForm::new(2, &a.pow(2)));
        assert_eq!(fl.value, BigInt::from(5));
        let v = frac.to_f64();
        assert!(0.236 < v && v < 0.237);
        assert_eq!(frac.value().coords(), &[q(-3, 1), q(2, 1)]);
    }

    #[test]
    fn chains() {
        let a = golden();
        let two = [a.clone(), a.clone()];
        let z = [q(0, 1), q(0, 1)];
        assert_eq!(eval_bracket_chain(1, &two, &z), BigInt::from(1));
        assert_eq!(eval_bracket_chain(7, &two, &z), BigInt::from(17));
        let three = [a.clone(), a.clone(), a.clone()];
        assert_eq!(eval_bracket_chain(1, &three, &[q(0, 1), q(0, 1), q(0, 1)]), BigInt::from(1));
    }

    #[test]
    fn escalates_near_integers() {
        // F_40 * phi is within 1e-8 of an integer; at n = F_80 even closer.
        let a = golden();
        let f80: BigInt = "23416728348467685".parse().unwrap();
        let res = certified_floor(&LinearForm::new(f80.clone(), &a));
        // F_81 = 37889062373143906, and F_80 * phi = F_81 - tiny for even index.
        assert_eq!(res.value, "37889062373143905".parse::<BigInt>().unwrap());
    }
}
