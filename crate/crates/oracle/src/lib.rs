//! Fixed-point decimal oracle for test suites.
//!
//! Everything here is deliberately naive: values are integers scaled by
//! `10^digits`, roots are found by decimal bisection on integer-scaled
//! polynomial evaluations, and floors are refused when the approximation sits
//! too close to an integer. None of it shares code with the certified
//! arithmetic in `floorlab-core`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Working precision used by the suites. Comfortably above the 200 digits
/// the acceptance criteria ask for.
pub const DIGITS: u32 = 240;

/// Decimals closer than `10^-GUARD` to an integer are reported as ambiguous.
pub const GUARD: u32 = 150;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decimal {
    scaled: BigInt,
    digits: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NearInteger;

fn pow10(d: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u8), d as usize)
}

impl Decimal {
    pub fn from_int(v: impl Into<BigInt>, digits: u32) -> Self {
        Decimal { scaled: v.into() * pow10(digits), digits }
    }

    pub fn from_ratio(num: impl Into<BigInt>, den: impl Into<BigInt>, digits: u32) -> Self {
        let den = den.into();
        assert!(!den.is_zero());
        Decimal { scaled: (num.into() * pow10(digits)).div_floor(&den), digits }
    }

    /// Parses a decimal literal such as `-1.25` exactly (up to `digits`).
    pub fn parse(text: &str, digits: u32) -> Self {
        let (neg, body) = match text.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, text),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        let mut frac = frac_part.to_string();
        assert!(frac.len() <= digits as usize);
        while frac.len() < digits as usize {
            frac.push('0');
        }
        let mut scaled: BigInt = format!("{int_part}{frac}").parse().unwrap();
        if neg {
            scaled = -scaled;
        }
        Decimal { scaled, digits }
    }

    pub fn scaled(&self) -> &BigInt {
        &self.scaled
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn add(&self, other: &Decimal) -> Decimal {
        assert_eq!(self.digits, other.digits);
        Decimal { scaled: &self.scaled + &other.scaled, digits: self.digits }
    }

    pub fn sub(&self, other: &Decimal) -> Decimal {
        assert_eq!(self.digits, other.digits);
        Decimal { scaled: &self.scaled - &other.scaled, digits: self.digits }
    }

    pub fn mul(&self, other: &Decimal) -> Decimal {
        assert_eq!(self.digits, other.digits);
        Decimal {
            scaled: (&self.scaled * &other.scaled).div_floor(&pow10(self.digits)),
            digits: self.digits,
        }
    }

    pub fn mul_int(&self, n: impl Into<BigInt>) -> Decimal {
        Decimal { scaled: &self.scaled * n.into(), digits: self.digits }
    }

    pub fn add_ratio(&self, num: i64, den: i64) -> Decimal {
        self.add(&Decimal::from_ratio(num, den, self.digits))
    }

    pub fn pow(&self, e: u32) -> Decimal {
        let mut acc = Decimal::from_int(1, self.digits);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Floor of the represented value, refusing answers within `10^-GUARD`
    /// of an integer.
    pub fn floor(&self) -> Result<BigInt, NearInteger> {
        let unit = pow10(self.digits);
        let (q, r) = self.scaled.div_mod_floor(&unit);
        let guard = pow10(self.digits - GUARD);
        if r < guard || &unit - &r < guard {
            return Err(NearInteger);
        }
        Ok(q)
    }

    /// Fractional part as `f64`, for plotting-style comparisons.
    pub fn frac_f64(&self) -> f64 {
        let unit = pow10(self.digits);
        let r = self.scaled.mod_floor(&unit);
        let top = r / pow10(self.digits - 17);
        top.to_string().parse::<f64>().unwrap() / 1e17
    }

    pub fn to_f64(&self) -> f64 {
        let top = &self.scaled / pow10(self.digits - 17);
        top.to_string().parse::<f64>().unwrap() / 1e17
    }
}

/// Sign of `sum c_i (x/10^d)^i` scaled by `10^{d*deg}`.
fn sign_at(coeffs: &[BigInt], x: &BigInt, d: u32) -> i32 {
    let deg = coeffs.len() - 1;
    let unit = pow10(d);
    let mut acc = BigInt::zero();
    // Horner on the homogenised form: acc = acc * x + c_i * unit^(deg - i)
    let mut unit_pows = vec![BigInt::one(); deg + 1];
    for i in 1..=deg {
        unit_pows[i] = &unit_pows[i - 1] * &unit;
    }
    for i in (0..=deg).rev() {
        acc = acc * x + &coeffs[i] * &unit_pows[deg - i];
    }
    if acc.is_positive() {
        1
    } else if acc.is_negative() {
        -1
    } else {
        0
    }
}

/// The root of `sum coeffs[i] x^i` in `[lo, hi]` (decimal literals), to
/// `digits` digits, by plain decimal bisection. The polynomial must change
/// sign across the bracket.
pub fn root_in(coeffs: &[i64], lo: &str, hi: &str, digits: u32) -> Decimal {
    let c: Vec<BigInt> = coeffs.iter().map(|&v| BigInt::from(v)).collect();
    root_in_big(&c, lo, hi, digits)
}

pub fn root_in_big(coeffs: &[BigInt], lo: &str, hi: &str, digits: u32) -> Decimal {
    let mut a = Decimal::parse(lo, digits).scaled;
    let mut b = Decimal::parse(hi, digits).scaled;
    let sa = sign_at(coeffs, &a, digits);
    let sb = sign_at(coeffs, &b, digits);
    if sa == 0 {
        return Decimal { scaled: a, digits };
    }
    if sb == 0 {
        return Decimal { scaled: b, digits };
    }
    assert!(sa != sb, "bracket does not change sign");
    while &b - &a > BigInt::one() {
        let mid: BigInt = (&a + &b) >> 1;
        let sm = sign_at(coeffs, &mid, digits);
        if sm == 0 {
            return Decimal { scaled: mid, digits };
        }
        if sm == sa {
            a = mid;
        } else {
            b = mid;
        }
    }
    Decimal { scaled: a, digits }
}

/// Square root of a non-negative integer to `digits` digits.
pub fn sqrt_int(v: u64, digits: u32) -> Decimal {
    let scaled = (BigInt::from(v) * pow10(2 * digits)).sqrt();
    Decimal { scaled, digits }
}

/// Floor of the nested chain `b_0 = n, b_i = floor(b_{i-1} * m_i + s_i)`.
pub fn chain_floor(n: i64, multipliers: &[Decimal], shifts: &[Decimal]) -> Result<BigInt, NearInteger> {
    let mut b = BigInt::from(n);
    for (m, s) in multipliers.iter().zip(shifts) {
        b = m.mul_int(b).add(s).floor()?;
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_ratio_digits() {
        let phi = root_in(&[-1, -1, 1], "1", "2", 60);
        let via_sqrt = sqrt_int(5, 60).add(&Decimal::from_int(1, 60));
        let half = Decimal::from_ratio(1, 2, 60);
        let phi2 = via_sqrt.mul(&half);
        let diff = (phi.scaled() - phi2.scaled()).abs();
        assert!(diff <= BigInt::from(2));
        assert!(phi.to_f64() - 1.618_033_988_749_895 < 1e-15);
    }

    #[test]
    fn floor_refuses_integers() {
        let three = Decimal::from_int(3, 200);
        assert_eq!(three.floor(), Err(NearInteger));
        let x = Decimal::parse("-1.5", 200);
        assert_eq!(x.floor(), Ok(BigInt::from(-2)));
    }
}
