use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Closed interval `[lo, hi] / 2^prec` with integer endpoints. All
/// operations round outward, so the interval always contains the exact
/// result of the corresponding real operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicInterval {
    lo: BigInt,
    hi: BigInt,
    prec: u64,
}

fn floor_shift(x: &BigInt, bits: u64) -> BigInt {
    // BigInt >> rounds toward negative infinity.
    x >> bits
}

fn ceil_shift(x: &BigInt, bits: u64) -> BigInt {
    -((-x) >> bits)
}

impl DyadicInterval {
    pub fn new(lo: BigInt, hi: BigInt, prec: u64) -> Self {
        debug_assert!(lo <= hi);
        DyadicInterval { lo, hi, prec }
    }

    pub fn point(n: &BigInt, prec: u64) -> Self {
        let v = n << prec;
        DyadicInterval { lo: v.clone(), hi: v, prec }
    }

    pub fn from_rational(r: &BigRational, prec: u64) -> Self {
        let scaled = r.numer() << prec;
        let (lo, hi) = if r.denom() == &BigInt::from(1) {
            (scaled.clone(), scaled)
        } else {
            (scaled.div_floor(r.denom()), scaled.div_ceil(r.denom()))
        };
        DyadicInterval { lo, hi, prec }
    }

    /// Outward enclosure of the rational interval `[lo, hi]`.
    pub fn enclosing(lo: &BigRational, hi: &BigRational, prec: u64) -> Self {
        let a = Self::from_rational(lo, prec);
        let b = Self::from_rational(hi, prec);
        DyadicInterval { lo: a.lo, hi: b.hi, prec }
    }

    pub fn prec(&self) -> u64 {
        self.prec
    }

    pub fn lo(&self) -> &BigInt {
        &self.lo
    }

    pub fn hi(&self) -> &BigInt {
        &self.hi
    }

    /// Re-expresses at another precision, rounding outward when coarsening.
    pub fn with_prec(&self, prec: u64) -> Self {
        match prec.cmp(&self.prec) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let s = prec - self.prec;
                DyadicInterval { lo: &self.lo << s, hi: &self.hi << s, prec }
            }
            Ordering::Less => {
                let s = self.prec - prec;
                DyadicInterval { lo: floor_shift(&self.lo, s), hi: ceil_shift(&self.hi, s), prec }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.prec, other.prec);
        DyadicInterval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi, prec: self.prec }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.prec, other.prec);
        DyadicInterval { lo: &self.lo - &other.hi, hi: &self.hi - &other.lo, prec: self.prec }
    }

    pub fn neg(&self) -> Self {
        DyadicInterval { lo: -&self.hi, hi: -&self.lo, prec: self.prec }
    }

    pub fn add_int(&self, n: &BigInt) -> Self {
        let v = n << self.prec;
        DyadicInterval { lo: &self.lo + &v, hi: &self.hi + &v, prec: self.prec }
    }

    pub fn mul_int(&self, n: &BigInt) -> Self {
        if n.is_negative() {
            DyadicInterval { lo: &self.hi * n, hi: &self.lo * n, prec: self.prec }
        } else {
            DyadicInterval { lo: &self.lo * n, hi: &self.hi * n, prec: self.prec }
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.prec, other.prec);
        let (lo, hi) = if !self.lo.is_negative() && !other.lo.is_negative() {
            (&self.lo * &other.lo, &self.hi * &other.hi)
        } else {
            let products = [
                &self.lo * &other.lo,
                &self.lo * &other.hi,
                &self.hi * &other.lo,
                &self.hi * &other.hi,
            ];
            let lo = products.iter().min().unwrap().clone();
            let hi = products.iter().max().unwrap().clone();
            (lo, hi)
        };
        DyadicInterval {
            lo: floor_shift(&lo, self.prec),
            hi: ceil_shift(&hi, self.prec),
            prec: self.prec,
        }
    }

    /// The common floor of every point in the interval, if there is one.
    pub fn floor(&self) -> Option<BigInt> {
        let a = floor_shift(&self.lo, self.prec);
        let b = floor_shift(&self.hi, self.prec);
        (a == b).then_some(a)
    }

    /// The common sign of every point in the interval, if there is one.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn width(&self) -> BigRational {
        BigRational::new(&self.hi - &self.lo, BigInt::from(1) << self.prec)
    }

    pub fn lo_rational(&self) -> BigRational {
        BigRational::new(self.lo.clone(), BigInt::from(1) << self.prec)
    }

    pub fn hi_rational(&self) -> BigRational {
        BigRational::new(self.hi.clone(), BigInt::from(1) << self.prec)
    }

    /// Midpoint as a float; diagnostic use only.
    pub fn mid_f64(&self) -> f64 {
        let sum: BigInt = &self.lo + &self.hi;
        scaled_to_f64(&sum, self.prec + 1)
    }
}

/// `v / 2^bits` as the nearest-ish `f64`.
pub(crate) fn scaled_to_f64(v: &BigInt, bits: u64) -> f64 {
    let len = v.bits();
    if len <= 60 {
        return v.to_f64().unwrap_or(0.0) * (-(bits as f64)).exp2();
    }
    let drop = len - 60;
    let top = (v >> drop).to_f64().unwrap_or(0.0);
    top * ((drop as f64) - (bits as f64)).exp2()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn negative_shift_floors() {
        assert_eq!(floor_shift(&BigInt::from(-3), 1), BigInt::from(-2));
        assert_eq!(ceil_shift(&BigInt::from(-3), 1), BigInt::from(-1));
        assert_eq!(ceil_shift(&BigInt::from(3), 1), BigInt::from(2));
    }

    #[test]
    fn encloses_thirds() {
        let t = DyadicInterval::from_rational(&q(-1, 3), 10);
        assert!(t.lo_rational() <= q(-1, 3) && q(-1, 3) <= t.hi_rational());
        assert_eq!(t.floor(), Some(BigInt::from(-1)));
        let p = t.mul(&t);
        assert!(p.lo_rational() <= q(1, 9) && q(1, 9) <= p.hi_rational());
    }

    #[test]
    fn floor_undecided_across_integer() {
        let t = DyadicInterval::enclosing(&q(99, 100), &q(101, 100), 20);
        assert_eq!(t.floor(), None);
        assert_eq!(t.sign(), Some(Ordering::Greater));
    }
}
