//! Exact numbers: rationals, integer polynomials, real algebraic numbers and
//! elements of `Q[a]`.
//!
//! Rationals are `num_rational::BigRational`. Everything algebraic is built
//! here: Sturm-sequence root isolation, factorisation of defining polynomials
//! down to minimal polynomials, canonical field arithmetic and exact signs.

mod algebraic;
mod dyadic;
mod factor;
mod field;
mod poly;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
pub use num_rational::BigRational as Rational;
use num_traits::Signed;
use thiserror::Error;

pub use algebraic::{
    admissible_m_values, construct_characteristic_alpha, isolate_positive_roots, parse_rational,
    AlgebraicReal,
};
pub use dyadic::DyadicInterval;
pub use factor::irreducible_factors;
pub use field::{FieldElement, ENCLOSURE_PREC};
pub use poly::IntPolynomial;

#[derive(Debug, Error)]
pub enum ExactError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("empty interval")]
    EmptyInterval,
    #[error("interval [{lo}, {hi}] does not isolate exactly one root of {poly}")]
    NotIsolating { poly: String, lo: Rational, hi: Rational },
    #[error("M = {big_m} is outside [1, (m+1)^(l/k)) for l={l}, k={k}, m={m}")]
    MOutOfRange { l: u32, k: u32, m: u32, big_m: i64 },
    #[error("characteristic polynomial root failed certification")]
    NonUniqueRoot,
    #[error("field elements over different algebraic bases")]
    MixedBase,
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial values too large to factor by trial division")]
    FactorizationLimit,
    #[error("inconsistent rational power pair: ({pq})^{k} != ({pq2})^{l}")]
    InconsistentPair { pq: Rational, pq2: Rational, l: u32, k: u32 },
    #[error("parse error: {0}")]
    Parse(String),
}

/// `a^e` reduced modulo the minimal polynomial of `a`.
pub fn power_in_field(a: &AlgebraicReal, e: u32) -> FieldElement {
    FieldElement::generator(a).pow(e)
}

/// The rational value of `x`, if it has one.
pub fn rationality_of(x: &FieldElement) -> Option<Rational> {
    x.as_rational()
}

/// Exact sign of `x` as `-1`, `0` or `1`.
pub fn sign_of(x: &FieldElement) -> i8 {
    match x.sign() {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// Isolating interval of width at most `target_width`.
pub fn refine(a: &AlgebraicReal, target_width: &Rational) -> (Rational, Rational) {
    a.refine(target_width)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SameDenomReport {
    pub gcd: BigInt,
    /// `gcd(q, q') != 1` unless `q = q' = 1`.
    pub verdict: bool,
}

/// Checks the common-denominator property of a consistent pair
/// `a^l = p/q`, `a^k = p'/q'` of positive rational powers.
pub fn lemma_samedenom_check(pq: &Rational, pq2: &Rational, l: u32, k: u32) -> Result<SameDenomReport, ExactError> {
    let consistent = pq.is_positive()
        && pq2.is_positive()
        && num_traits::pow(pq.clone(), k as usize) == num_traits::pow(pq2.clone(), l as usize);
    if !consistent {
        return Err(ExactError::InconsistentPair { pq: pq.clone(), pq2: pq2.clone(), l, k });
    }
    let (q, q2) = (pq.denom(), pq2.denom());
    let gcd = q.gcd(q2);
    let one = BigInt::from(1);
    let verdict = gcd != one || (q == &one && q2 == &one);
    Ok(SameDenomReport { gcd, verdict })
}
