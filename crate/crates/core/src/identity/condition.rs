use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{field_element_equals, need, powers, r_value, Beta, IdentityError};
use crate::exact::{AlgebraicReal, FieldElement, Rational};

/// Height bound of the search for `beta = s*alpha + t` with rational `s, t`.
pub const PAIR_SEARCH_HEIGHT: u32 = 64;

/// The algebraic side of a characterisation: the value whose integrality
/// and range decide it.
#[derive(Clone, Debug)]
pub struct ConditionReport {
    /// `a^(l+k) - m a^l`, or `beta - m alpha`.
    pub value: FieldElement,
    pub is_integer: bool,
    pub big_m: Option<BigInt>,
    pub in_range: bool,
    pub range: String,
    /// The theorems concern positive numbers only.
    pub inputs_positive: bool,
    /// For pairs: whether `alpha > 1` is irrational.
    pub alpha_irrational: Option<bool>,
}

impl ConditionReport {
    pub fn holds(&self) -> bool {
        self.inputs_positive && self.in_range && self.alpha_irrational.unwrap_or(true)
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.big_m {
            Some(m) => write!(f, "value = {m}, in {}: {}", self.range, self.in_range)?,
            None => write!(f, "value = {} is not an integer", self.value)?,
        }
        if let Some(irr) = self.alpha_irrational {
            write!(f, ", alpha > 1 irrational: {irr}")?;
        }
        if !self.inputs_positive {
            write!(f, ", inputs not positive")?;
        }
        Ok(())
    }
}

fn integer_of(value: &FieldElement) -> Option<BigInt> {
    value.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
}

fn positive(a: &AlgebraicReal) -> bool {
    a.cmp_rational(&Rational::zero()).is_gt()
}

/// Decides `a^(l+k) - m a^l` in `Z ∩ [1, (m+1)^(l/k))` exactly.
pub fn check_condition(alpha: &AlgebraicReal, l: u32, k: u32, m: u32) -> ConditionReport {
    let (al, _, alk) = powers(alpha, l, k);
    let value = &alk - &al.scale_int(&BigInt::from(m));
    let big_m = integer_of(&value);
    let in_range = big_m.as_ref().is_some_and(|bm| {
        bm >= &BigInt::one() && num_traits::pow(bm.clone(), k as usize) < num_traits::pow(BigInt::from(m) + 1, l as usize)
    });
    ConditionReport {
        is_integer: big_m.is_some(),
        big_m,
        in_range,
        range: format!("[1, {}^({l}/{k}))", m + 1),
        value,
        inputs_positive: positive(alpha),
        alpha_irrational: None,
    }
}

/// Outcome of the pair condition: `beta` outside `Q alpha + Q` fails it by
/// definition.
#[derive(Clone, Debug)]
pub enum PairCondition {
    InField(ConditionReport),
    NotInField,
}

impl PairCondition {
    pub fn holds(&self) -> bool {
        matches!(self, PairCondition::InField(r) if r.holds())
    }
}

/// Looks for `beta = s*alpha + t` with rationals of height at most `height`,
/// confirming any candidate exactly.
pub fn embed_in_field(beta: &AlgebraicReal, alpha: &AlgebraicReal, height: u32) -> Option<FieldElement> {
    if let Some(r) = beta.as_rational() {
        return Some(FieldElement::from_rational(alpha, r.clone()));
    }
    if alpha.is_rational() || alpha.degree() != beta.degree() {
        return None;
    }
    let a = FieldElement::generator(alpha);
    let (af, bf) = (alpha.to_f64(), beta.to_f64());
    let h = height as i64;
    for q in 1..=h {
        for p in -h..=h {
            if p == 0 || p.gcd(&q) != 1 {
                continue;
            }
            let s = p as f64 / q as f64;
            let t = bf - s * af;
            for d in 1..=h {
                let td = t * d as f64;
                let near = td.round();
                if (td - near).abs() > 1e-6 * td.abs().max(1.0) {
                    continue;
                }
                let num = BigInt::from(near as i64);
                let s = Rational::new(p.into(), q.into());
                let t = Rational::new(num, d.into());
                let e = a.scale(&s).add_rational(&t);
                if field_element_equals(&e, beta) {
                    return Some(e);
                }
            }
        }
    }
    None
}

fn beta_over(alpha: &AlgebraicReal, beta: &Beta) -> Option<FieldElement> {
    match beta {
        Beta::InField(e) if e.base().same_number(alpha) => Some(e.clone()),
        Beta::InField(e) => e.rebase_rational(alpha),
        Beta::Independent(b) => embed_in_field(b, alpha, PAIR_SEARCH_HEIGHT),
    }
}

/// Decides `alpha > 1` irrational and `beta - m alpha` in `Z ∩ [1, alpha)`.
pub fn check_condition_pair(alpha: &AlgebraicReal, beta: &Beta, m: u32) -> PairCondition {
    let Some(b) = beta_over(alpha, beta) else {
        return PairCondition::NotInField;
    };
    let a = FieldElement::generator(alpha);
    let value = &b - &a.scale_int(&BigInt::from(m));
    let big_m = integer_of(&value);
    let in_range = big_m.as_ref().is_some_and(|bm| {
        bm >= &BigInt::one() && a.add_rational(&Rational::from_integer(-bm.clone())).sign().is_gt()
    });
    let irrational = !alpha.is_rational() && alpha.cmp_rational(&Rational::one()).is_gt();
    PairCondition::InField(ConditionReport {
        is_integer: big_m.is_some(),
        big_m,
        in_range,
        range: "[1, alpha)".to_string(),
        value,
        inputs_positive: positive(alpha) && b.sign().is_gt(),
        alpha_irrational: Some(irrational),
    })
}

/// The half-open interval `[a^k - 1, 1)` of admissible shifts.
#[derive(Clone, Debug)]
pub struct DeltaInterval {
    pub lower: FieldElement,
    pub upper: Rational,
}

impl DeltaInterval {
    pub fn contains(&self, delta: &Rational) -> bool {
        delta < &self.upper && self.lower.add_rational(&-delta).sign().is_le()
    }
}

impl fmt::Display for DeltaInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} (~{:.6}), {})", self.lower, self.lower.to_f64(), self.upper)
    }
}

/// Requires `a` in `(0,1) ∪ (1, 2^(1/k))`, decided exactly.
pub fn admissible_delta_interval(alpha: &AlgebraicReal, k: u32) -> Result<DeltaInterval, IdentityError> {
    need(k, "k")?;
    let one = Rational::one();
    let ak = FieldElement::generator(alpha).pow(k);
    let inside = positive(alpha)
        && alpha.cmp_rational(&one).is_ne()
        && (alpha.cmp_rational(&one).is_lt() || ak.add_rational(&Rational::from_integer(BigInt::from(-2))).sign().is_lt());
    if !inside {
        return Err(IdentityError::AlphaOutOfHypothesis);
    }
    Ok(DeltaInterval { lower: ak.add_rational(&-one.clone()), upper: one })
}

/// `r(n) = [nm a] + 1 - m[n a]`, always in `{1..m}`.
pub fn r_of(n: i64, alpha: &AlgebraicReal, m: u32) -> Result<u32, IdentityError> {
    need(m, "m")?;
    if alpha.is_rational() {
        return Err(IdentityError::RationalAlpha);
    }
    if n == 0 {
        return Err(IdentityError::ZeroN);
    }
    let a = FieldElement::generator(alpha);
    let mb = BigInt::from(m);
    let r = r_value(&BigInt::from(n), &a, &a.scale_int(&mb), &mb);
    let r = r.to_u32().filter(|r| (1..=m).contains(r));
    Ok(r.expect("r(n) outside {1..m} for irrational alpha"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_rational;

    fn golden() -> AlgebraicReal {
        "root([-1,-1,1],1,2)".parse().unwrap()
    }

    fn silver() -> AlgebraicReal {
        "root([-1,-2,1],2,3)".parse().unwrap()
    }

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn main_conditions() {
        let c = check_condition(&golden(), 1, 1, 1);
        assert!(c.is_integer && c.in_range && c.holds());
        assert_eq!(c.big_m, Some(BigInt::one()));
        let c = check_condition(&AlgebraicReal::from_rational(q("3/2")), 1, 1, 1);
        assert!(!c.is_integer && !c.holds());
        assert_eq!(c.value.as_rational(), Some(q("3/4")));
        let c = check_condition(&silver(), 1, 1, 2);
        assert!(c.holds());
        assert_eq!(c.big_m, Some(BigInt::one()));
    }

    #[test]
    fn pair_conditions() {
        let g = golden();
        let a = FieldElement::generator(&g);
        let c = check_condition_pair(&g, &Beta::InField(a.add_rational(&q("1"))), 1);
        assert!(c.holds());
        let c = check_condition_pair(&g, &Beta::InField(a.scale(&q("2")).add_rational(&q("3"))), 2);
        let PairCondition::InField(r) = &c else { panic!() };
        assert_eq!(r.big_m, Some(BigInt::from(3)));
        assert!(!r.in_range);
        let r32 = AlgebraicReal::from_rational(q("3/2"));
        let c = check_condition_pair(&r32, &Beta::Independent(AlgebraicReal::from_rational(q("5/2"))), 1);
        let PairCondition::InField(r) = &c else { panic!() };
        assert_eq!(r.alpha_irrational, Some(false));
        assert!(!c.holds());
    }

    #[test]
    fn pair_search_finds_independent_beta() {
        let g = golden();
        // 2 alpha + 3 = 6.236..., root of x^2 - 8x + 11.
        let beta: AlgebraicReal = "root([11,-8,1],6,7)".parse().unwrap();
        let e = embed_in_field(&beta, &g, PAIR_SEARCH_HEIGHT).unwrap();
        assert_eq!(e.coords(), &[q("3"), q("2")]);
        let cube: AlgebraicReal = "root([-2,0,0,1],1,2)".parse().unwrap();
        assert!(embed_in_field(&cube, &g, PAIR_SEARCH_HEIGHT).is_none());
        assert!(matches!(check_condition_pair(&g, &Beta::Independent(cube), 1), PairCondition::NotInField));
    }

    #[test]
    fn delta_intervals() {
        let d = admissible_delta_interval(&golden(), 1).unwrap();
        assert!(d.contains(&q("7/10")));
        assert!(!d.contains(&q("1/2")));
        assert!(!d.contains(&q("1")));
        let d = admissible_delta_interval(&AlgebraicReal::from_rational(q("1/2")), 1).unwrap();
        assert!(d.contains(&q("0")));
        assert_eq!(d.lower.as_rational(), Some(q("-1/2")));
        assert!(matches!(
            admissible_delta_interval(&silver(), 1),
            Err(IdentityError::AlphaOutOfHypothesis)
        ));
        assert!(admissible_delta_interval(&AlgebraicReal::from_integer(1), 1).is_err());
    }

    #[test]
    fn r_values() {
        assert_eq!(r_of(1, &silver(), 2).unwrap(), 1);
        assert_eq!(r_of(2, &silver(), 2).unwrap(), 2);
        for n in 1..50 {
            assert_eq!(r_of(n, &golden(), 1).unwrap(), 1);
        }
        assert!(matches!(r_of(0, &golden(), 1), Err(IdentityError::ZeroN)));
        assert!(matches!(
            r_of(1, &AlgebraicReal::from_rational(q("3/2")), 1),
            Err(IdentityError::RationalAlpha)
        ));
    }
}
